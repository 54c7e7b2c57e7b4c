//! Identifying an unknown spectrum by admissible questions.
//!
//! A question is a finite list of values; the answer is the smallest value
//! of the spectrum once the list is removed from it. The list is a
//! multiset: excluding a value `k` times removes up to `k` occurrences.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::spectrum::{isospectral_compare, LengthSpectrum};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdmissibleQuestion {
    pub exclusions: Vec<f64>,
}

impl AdmissibleQuestion {
    pub fn new(exclusions: Vec<f64>) -> Result<Self> {
        if let Some(v) = exclusions.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
            return Err(domain(format!("excluded values must be finite and positive, got {v}")));
        }
        Ok(Self { exclusions })
    }
}

/// Answers questions about a certified spectrum and counts them.
#[derive(Clone, Debug)]
pub struct SpectrumOracle {
    truth: LengthSpectrum,
    match_tolerance: f64,
    asked: u64,
}

impl SpectrumOracle {
    /// Matching tolerance defaults to the spectrum's merge tolerance.
    pub fn new(truth: LengthSpectrum) -> Result<Self> {
        let tol = truth.merge_tolerance;
        Self::with_tolerance(truth, tol)
    }

    pub fn with_tolerance(truth: LengthSpectrum, match_tolerance: f64) -> Result<Self> {
        if !truth.certified {
            return Err(Error::Uncertified);
        }
        if !(match_tolerance > 0.0) {
            return Err(domain("match tolerance must be positive"));
        }
        Ok(Self {
            truth,
            match_tolerance,
            asked: 0,
        })
    }

    pub fn questions_asked(&self) -> u64 {
        self.asked
    }

    pub fn cutoff(&self) -> f64 {
        self.truth.cutoff
    }

    pub fn match_tolerance(&self) -> f64 {
        self.match_tolerance
    }

    /// Smallest value of the spectrum minus the exclusions. Each excluded
    /// value cancels one occurrence of the nearest entry within tolerance.
    /// Only answered questions are counted.
    pub fn ask(&mut self, q: &AdmissibleQuestion) -> Result<f64> {
        let answer = first_remaining(&self.truth, &q.exclusions, self.match_tolerance)
            .ok_or(Error::CutoffExceeded {
                cutoff: self.truth.cutoff,
            })?;
        self.asked += 1;
        Ok(answer)
    }
}

fn first_remaining(s: &LengthSpectrum, exclusions: &[f64], tol: f64) -> Option<f64> {
    let entries = &s.entries;
    let mut removed = vec![0u64; entries.len()];
    for &v in exclusions {
        let i = entries.partition_point(|e| e.length < v);
        let nearest = [i.checked_sub(1), (i < entries.len()).then_some(i)]
            .into_iter()
            .flatten()
            .filter(|&j| (entries[j].length - v).abs() <= tol)
            .min_by(|&a, &b| {
                (entries[a].length - v).abs().total_cmp(&(entries[b].length - v).abs())
            });
        if let Some(j) = nearest {
            removed[j] += 1;
        }
    }
    entries
        .iter()
        .zip(&removed)
        .find(|(e, r)| e.multiplicity > **r)
        .map(|(e, _)| e.length)
}

/// The first `n` values, each question excluding everything revealed so far.
pub fn initial_sweep(oracle: &mut SpectrumOracle, n: usize) -> Result<Vec<f64>> {
    let mut revealed = Vec::with_capacity(n);
    for _ in 0..n {
        let v = oracle.ask(&AdmissibleQuestion::new(revealed.clone())?)?;
        revealed.push(v);
    }
    Ok(revealed)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairOutcome {
    /// 1-based index of the first entry where the two spectra differ.
    pub discrepancy: usize,
    pub exclusions_count: usize,
    pub answer: f64,
    pub first_ruled_out: bool,
    pub second_ruled_out: bool,
}

/// What a candidate predicts for its `m`-th expanded entry, up to `cutoff`.
fn contradicts(expanded: &[f64], m: usize, answer: f64, cutoff: f64, tol: f64) -> bool {
    match expanded.get(m - 1) {
        Some(x) => (x - answer).abs() > tol,
        None => answer <= cutoff,
    }
}

/// Asks one question separating `sx` from `sy`: the first value of the
/// spectrum after removing the entries of `sx` before their first
/// discrepancy.
pub fn eliminate_pair(
    oracle: &mut SpectrumOracle,
    sx: &LengthSpectrum,
    sy: &LengthSpectrum,
) -> Result<PairOutcome> {
    let cutoff = sx.cutoff.min(sy.cutoff);
    let tol = oracle.match_tolerance;
    let cmp = isospectral_compare(sx, sy, cutoff, tol)?;
    let m = cmp.first_discrepancy.ok_or(Error::Indistinguishable { cutoff })?;
    let (ex, ey) = (sx.expanded(cutoff), sy.expanded(cutoff));
    let exclusions = ex[..m - 1].to_vec();
    let exclusions_count = exclusions.len();
    let answer = oracle.ask(&AdmissibleQuestion::new(exclusions)?)?;
    Ok(PairOutcome {
        discrepancy: m,
        exclusions_count,
        answer,
        first_ruled_out: contradicts(&ex, m, answer, cutoff, tol),
        second_ruled_out: contradicts(&ey, m, answer, cutoff, tol),
    })
}

/// Labelled spectra certified to a common cutoff.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CandidateFamily {
    pub members: Vec<(String, LengthSpectrum)>,
}

impl CandidateFamily {
    pub fn new(members: Vec<(String, LengthSpectrum)>) -> Result<Self> {
        let Some((_, first)) = members.first() else {
            return Err(domain("candidate family is empty"));
        };
        let cutoff = first.cutoff;
        for (label, s) in &members {
            if !s.certified {
                return Err(Error::Uncertified);
            }
            if (s.cutoff - cutoff).abs() > 1e-12 * cutoff.abs().max(1.0) {
                return Err(Error::IncomparableCutoffs {
                    available: s.cutoff.min(cutoff),
                    requested: s.cutoff.max(cutoff),
                });
            }
            if members.iter().filter(|(l, _)| l == label).count() > 1 {
                return Err(domain(format!("duplicate candidate label {label}")));
            }
        }
        Ok(Self { members })
    }

    pub fn cutoff(&self) -> f64 {
        self.members[0].1.cutoff
    }

    /// Members grouped by spectrum, in order of first appearance.
    pub fn groups(&self, tol: f64) -> Result<Vec<Vec<usize>>> {
        let cutoff = self.cutoff();
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for (i, (_, s)) in self.members.iter().enumerate() {
            let mut placed = false;
            for g in groups.iter_mut() {
                if isospectral_compare(&self.members[g[0]].1, s, cutoff, tol)?.isospectral {
                    g.push(i);
                    placed = true;
                    break;
                }
            }
            if !placed {
                groups.push(vec![i]);
            }
        }
        Ok(groups)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuestionRecord {
    pub exclusions_count: usize,
    pub answer: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EliminationRecord {
    /// Representative labels of the two spectra probed.
    pub pair: [String; 2],
    pub discrepancy: usize,
    pub exclusions_count: usize,
    pub answer: f64,
    /// Every member label ruled out by this question.
    pub ruled_out: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Transcript {
    pub questions: Vec<QuestionRecord>,
    /// Labels inconsistent with the sweep.
    pub sweep_ruled_out: Vec<String>,
    pub eliminations: Vec<EliminationRecord>,
    pub winner: String,
    /// Every member isospectral to the winner.
    pub winners: Vec<String>,
    pub distinct_spectra: usize,
    pub total_questions: u64,
}

fn consistent_with_sweep(s: &LengthSpectrum, revealed: &[f64], cutoff: f64, tol: f64) -> bool {
    let ex = s.expanded(cutoff);
    revealed
        .iter()
        .enumerate()
        .all(|(i, &v)| !contradicts(&ex, i + 1, v, cutoff, tol))
}

/// Sweeps the first `sweep` values, groups the family by spectrum, and
/// eliminates groups pairwise in an order shuffled by `seed`.
///
/// Uses at most `sweep + (distinct spectra − 1)` questions.
pub fn identify(
    oracle: &mut SpectrumOracle,
    family: &CandidateFamily,
    sweep: usize,
    seed: u64,
) -> Result<Transcript> {
    let tol = oracle.match_tolerance;
    let cutoff = family.cutoff();
    let start = oracle.questions_asked();
    let groups = family.groups(tol)?;
    let distinct_spectra = groups.len();
    let mut questions = Vec::new();

    let revealed = initial_sweep(oracle, sweep)?;
    for (i, &answer) in revealed.iter().enumerate() {
        questions.push(QuestionRecord {
            exclusions_count: i,
            answer,
        });
    }
    let label = |i: usize| family.members[i].0.clone();
    let (mut alive, dead): (Vec<Vec<usize>>, Vec<Vec<usize>>) = groups
        .into_iter()
        .partition(|g| consistent_with_sweep(&family.members[g[0]].1, &revealed, cutoff, tol));
    let sweep_ruled_out = dead.iter().flatten().map(|&i| label(i)).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    alive.shuffle(&mut rng);
    let mut eliminations = Vec::new();
    while alive.len() > 1 {
        let (x, y) = (alive[0].clone(), alive[1].clone());
        let out = eliminate_pair(oracle, &family.members[x[0]].1, &family.members[y[0]].1)?;
        questions.push(QuestionRecord {
            exclusions_count: out.exclusions_count,
            answer: out.answer,
        });
        let mut ruled_out = Vec::new();
        if out.first_ruled_out {
            ruled_out.extend(x.iter().map(|&i| label(i)));
        }
        if out.second_ruled_out {
            ruled_out.extend(y.iter().map(|&i| label(i)));
        }
        eliminations.push(EliminationRecord {
            pair: [label(x[0]), label(y[0])],
            discrepancy: out.discrepancy,
            exclusions_count: out.exclusions_count,
            answer: out.answer,
            ruled_out,
        });
        match (out.first_ruled_out, out.second_ruled_out) {
            (true, true) => {
                alive.drain(..2);
            }
            (true, false) => {
                alive.remove(0);
            }
            _ => {
                alive.remove(1);
            }
        }
    }
    let winner_group = alive.pop().ok_or(Error::NoCandidateMatches)?;
    Ok(Transcript {
        questions,
        sweep_ruled_out,
        eliminations,
        winner: label(winner_group[0]),
        winners: winner_group.iter().map(|&i| label(i)).collect(),
        distinct_spectra,
        total_questions: oracle.questions_asked() - start,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::SpectrumEntry;

    fn spectrum_of(entries: &[(f64, u64)]) -> LengthSpectrum {
        LengthSpectrum {
            cutoff: 10.0,
            merge_tolerance: 1e-6,
            certified: true,
            entries: entries
                .iter()
                .map(|&(length, multiplicity)| SpectrumEntry { length, multiplicity })
                .collect(),
        }
    }

    #[test]
    fn multiset_exclusion() {
        let mut o = SpectrumOracle::new(spectrum_of(&[(1.0, 2), (2.0, 1), (3.0, 4)])).unwrap();
        let q = |v: &[f64]| AdmissibleQuestion::new(v.to_vec()).unwrap();
        assert_eq!(o.ask(&q(&[])).unwrap(), 1.0);
        assert_eq!(o.ask(&q(&[1.0])).unwrap(), 1.0);
        assert_eq!(o.ask(&q(&[1.0, 1.0 + 1e-7])).unwrap(), 2.0);
        assert_eq!(o.ask(&q(&[1.5, 7.0])).unwrap(), 1.0);
        assert_eq!(o.ask(&q(&[2.0, 1.0, 1.0])).unwrap(), 3.0);
        assert_eq!(o.questions_asked(), 5);
        let all = q(&[1.0, 1.0, 2.0, 3.0, 3.0, 3.0, 3.0]);
        assert_eq!(o.ask(&all), Err(Error::CutoffExceeded { cutoff: 10.0 }));
        assert_eq!(o.questions_asked(), 5);
        assert!(AdmissibleQuestion::new(vec![0.0]).is_err());
        assert!(AdmissibleQuestion::new(vec![f64::NAN]).is_err());
    }

    #[test]
    fn sweep_reveals_expanded_entries() {
        let s = spectrum_of(&[(1.0, 2), (2.0, 1), (3.0, 4)]);
        let mut o = SpectrumOracle::new(s.clone()).unwrap();
        assert_eq!(initial_sweep(&mut o, 5).unwrap(), s.expanded(10.0)[..5].to_vec());
        assert_eq!(o.questions_asked(), 5);
    }

    #[test]
    fn pair_elimination() {
        let truth = spectrum_of(&[(1.0, 1), (2.0, 1)]);
        let mut o = SpectrumOracle::new(truth.clone()).unwrap();
        let other = spectrum_of(&[(1.5, 1), (2.0, 1)]);
        let r = eliminate_pair(&mut o, &truth, &other).unwrap();
        assert!(!r.first_ruled_out && r.second_ruled_out);
        assert_eq!((r.discrepancy, o.questions_asked()), (1, 1));

        let a = spectrum_of(&[(1.0, 1), (2.5, 1)]);
        let b = spectrum_of(&[(1.0, 1), (3.0, 1)]);
        let r = eliminate_pair(&mut o, &a, &b).unwrap();
        assert!(r.first_ruled_out && r.second_ruled_out);
        assert_eq!(r.exclusions_count, 1);

        assert_eq!(
            eliminate_pair(&mut o, &truth, &truth.clone()),
            Err(Error::Indistinguishable { cutoff: 10.0 })
        );
        assert_eq!(o.questions_asked(), 2);
    }

    #[test]
    fn shorter_spectrum_predicts_nothing_below_cutoff() {
        let truth = spectrum_of(&[(1.0, 1), (2.0, 1)]);
        let mut o = SpectrumOracle::new(truth.clone()).unwrap();
        let r = eliminate_pair(&mut o, &spectrum_of(&[(1.0, 1)]), &truth).unwrap();
        assert!(r.first_ruled_out && !r.second_ruled_out);
    }

    #[test]
    fn identify_small_families() {
        let truth = spectrum_of(&[(1.0, 1), (2.0, 1)]);
        let family = CandidateFamily::new(vec![("only".into(), truth.clone())]).unwrap();
        let mut o = SpectrumOracle::new(truth.clone()).unwrap();
        let t = identify(&mut o, &family, 0, 7).unwrap();
        assert_eq!((t.winner.as_str(), t.total_questions), ("only", 0));

        let family = CandidateFamily::new(vec![
            ("a".into(), spectrum_of(&[(0.5, 1), (2.0, 1)])),
            ("b".into(), truth.clone()),
            ("c".into(), truth.clone()),
        ])
        .unwrap();
        let mut o = SpectrumOracle::new(truth.clone()).unwrap();
        let t = identify(&mut o, &family, 0, 7).unwrap();
        assert_eq!(t.winner, "b");
        assert_eq!(t.winners, vec!["b".to_string(), "c".to_string()]);
        assert_eq!((t.total_questions, t.distinct_spectra), (1, 2));
        assert_eq!(o.questions_asked() as usize, t.questions.len());

        let family = CandidateFamily::new(vec![("x".into(), spectrum_of(&[(0.5, 1)]))]).unwrap();
        let mut o = SpectrumOracle::new(truth).unwrap();
        assert_eq!(identify(&mut o, &family, 1, 0), Err(Error::NoCandidateMatches));
    }
}
