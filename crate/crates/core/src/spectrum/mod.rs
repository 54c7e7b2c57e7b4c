//! Length spectra: enumeration, comparison and counting checks.
//!
//! Enumeration first certifies a Dirichlet domain `F` of radius `r` around
//! a base point `p` (for a one-holed torus, a domain for the convex core).
//! A closed geodesic of length `ℓ` has a lift crossing `F`, and the element
//! translating along that lift moves `p` by at most `ℓ + 2r`. The elements
//! moving `p` that far are found by walking tile to tile through side
//! pairings, pruned at `ℓ + 3r` so every tile on a path to them is kept.
//! Free groups are then deduplicated exactly by cyclic words; genus-2
//! classes are assembled from the lifts crossing `F`.

mod ball;
mod classes;
mod domain;

use std::cmp::Ordering;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain as domain_error, Error, Result};
use crate::hypgeom::model::{recentering, to_upper_half_plane, Axis};
use crate::hypgeom::MobiusTransform;
use crate::surface::{perpendicular_foot, FuchsianGroup, Presentation};
use crate::word::Word;

use self::ball::search;
use self::domain::{dirichlet, translated_axis, Domain, Element};

pub const DEFAULT_MERGE_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub length: f64,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LengthSpectrum {
    pub cutoff: f64,
    pub merge_tolerance: f64,
    pub certified: bool,
    pub entries: Vec<SpectrumEntry>,
}

/// A primitive unoriented conjugacy class.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeodesicClass {
    pub word: Word,
    pub length: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnumerationBudget {
    /// Depth limit, in side-pairing steps, of the search over tiles; in
    /// generator letters when no domain can be certified.
    pub max_word_length: usize,
    pub length_cutoff: f64,
    /// Fail with [`Error::BudgetExhausted`] rather than return an
    /// uncertified result.
    pub certified: bool,
    pub merge_tolerance: f64,
}

impl EnumerationBudget {
    pub fn new(length_cutoff: f64) -> Self {
        Self {
            max_word_length: 64,
            length_cutoff,
            certified: true,
            merge_tolerance: DEFAULT_MERGE_TOLERANCE,
        }
    }

    pub fn with_max_word_length(mut self, n: usize) -> Self {
        self.max_word_length = n;
        self
    }

    pub fn allow_uncertified(mut self) -> Self {
        self.certified = false;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.max_word_length < 1 {
            return Err(domain_error("max_word_length must be at least 1"));
        }
        if !(self.length_cutoff >= 0.0 && self.length_cutoff.is_finite()) {
            return Err(domain_error(format!("bad cutoff {}", self.length_cutoff)));
        }
        if !(self.merge_tolerance > 0.0) {
            return Err(domain_error("merge tolerance must be positive"));
        }
        Ok(())
    }
}

/// Classes found by an enumeration, shortest first.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassEnumeration {
    pub classes: Vec<GeodesicClass>,
    pub certified: bool,
    /// Radius of the certified fundamental domain, if any.
    pub domain_radius: Option<f64>,
}

const DOMAIN_RADII: [f64; 9] = [4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0, 11.0, 12.0];

/// Points offered as domain centres, in upper half-plane coordinates.
/// Offsets are irrational multiples so that no vertex is accidentally
/// more than trivalent.
fn base_points(group: &FuchsianGroup) -> Result<Vec<Complex64>> {
    let g = &group.generators;
    let fractions = [0.1180, 0.3819, 0.6180, 0.8541];
    let mut out = Vec::new();
    match group.presentation {
        Presentation::Free2 => {
            let axis = Axis::of(&g[0])?;
            let len = crate::hypgeom::trace_to_length(&g[0])?;
            let start = crate::hypgeom::model::from_upper_half_plane(Complex64::new(0.0, 1.0));
            let start = axis.line()?.project(&start)?;
            for f in fractions {
                out.push(to_upper_half_plane(&axis.advance(&start, f * len)?));
            }
        }
        Presentation::Genus2Standard => {
            let k1 = MobiusTransform::commutator(&g[0], &g[1]);
            let seam = perpendicular_foot(&k1, &(g[1] * g[0] * g[1].inverse()))?;
            let axis = Axis::of(&k1)?;
            let len = crate::hypgeom::trace_to_length(&k1)?;
            for f in fractions {
                let q = axis.advance(&seam, f * len)?;
                let z = to_upper_half_plane(&q);
                // Small steps off the axis, oblique to it so that no base
                // point sits on a symmetry line of the construction.
                for (dx, dy) in [(0.0137, 0.0071), (-0.173, 0.0419)] {
                    out.push(Complex64::new(z.re + dx * z.im, z.im * (1.0 + dy)));
                }
            }
        }
    }
    Ok(out)
}

fn expected_area(p: Presentation) -> f64 {
    match p {
        Presentation::Free2 => 2.0 * std::f64::consts::PI,
        Presentation::Genus2Standard => 4.0 * std::f64::consts::PI,
    }
}

/// Certified Dirichlet domain for `gens` (already centred at the base
/// point), growing the set of candidate sides until it closes up.
fn certify_domain(gens: &[MobiusTransform], presentation: Presentation) -> Option<Domain> {
    let mut steps: Vec<MobiusTransform> = gens.to_vec();
    steps.extend(gens.iter().map(|g| g.inverse()));
    let letters: Vec<Word> = (0..gens.len())
        .map(Word::generator)
        .chain((0..gens.len()).map(|k| Word::generator(k).inverse()))
        .collect();
    let boundary_axis = match presentation {
        Presentation::Free2 => Axis::of(&MobiusTransform::commutator(&gens[0], &gens[1])).ok(),
        Presentation::Genus2Standard => None,
    };
    for rho in DOMAIN_RADII {
        let ball = search(&steps, rho, 200, 400_000);
        let elements: Vec<Element> = (1..ball.nodes.len())
            .map(|id| Element {
                m: ball.nodes[id].m,
                word: ball.word(id as u32, &letters),
            })
            .collect();
        let boundary: Vec<_> = match &boundary_axis {
            Some(axis) => ball
                .nodes
                .iter()
                .filter_map(|n| translated_axis(&n.m, axis))
                .collect(),
            None => Vec::new(),
        };
        if let Some(d) = dirichlet(&elements, &boundary, expected_area(presentation)) {
            return Some(d);
        }
        if elements.len() > 200_000 {
            break;
        }
    }
    None
}

/// Primitive closed geodesics of length at most the cutoff.
pub fn enumerate_classes(group: &FuchsianGroup, budget: &EnumerationBudget) -> Result<ClassEnumeration> {
    budget.validate()?;
    let cutoff = budget.length_cutoff;

    let mut best: Option<(Domain, Vec<MobiusTransform>)> = None;
    for z in base_points(group)? {
        let r = recentering(z);
        let gens: Vec<MobiusTransform> = group
            .generators
            .iter()
            .map(|g| (r * *g * r.inverse()).renormalized())
            .collect();
        if let Some(d) = certify_domain(&gens, group.presentation) {
            if best.as_ref().map_or(true, |(b, _)| d.radius < b.radius) {
                best = Some((d, gens));
            }
        }
    }

    let Some((dom, _)) = best else {
        if budget.certified {
            return Err(Error::BudgetExhausted {
                max_word_length: budget.max_word_length,
                cutoff,
            });
        }
        return Ok(ClassEnumeration {
            classes: classes::word_classes(
                &group.generators,
                cutoff,
                budget.max_word_length,
                budget.merge_tolerance,
            ),
            certified: false,
            domain_radius: None,
        });
    };

    let area = match group.presentation {
        Presentation::Free2 => None,
        Presentation::Genus2Standard => Some(expected_area(group.presentation)),
    };
    let ball = classes::ball_for(&dom, cutoff, budget.max_word_length, area);
    let steps: Vec<Word> = dom.pairings.iter().map(|e| e.word.clone()).collect();
    let (classes, complete) = match group.presentation {
        Presentation::Free2 => (classes::free_group_classes(&ball, &steps, cutoff), true),
        Presentation::Genus2Standard => {
            let c = classes::closed_surface_classes(&ball, &steps, &dom, cutoff);
            (c.classes, c.complete)
        }
    };
    let certified = complete && !ball.truncated;
    if budget.certified && !certified {
        return Err(Error::BudgetExhausted {
            max_word_length: budget.max_word_length,
            cutoff,
        });
    }
    Ok(ClassEnumeration {
        classes,
        certified,
        domain_radius: Some(dom.radius),
    })
}

/// Runs `f` on a dedicated pool of `workers` threads.
pub fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| domain_error(e.to_string()))?;
    Ok(pool.install(f))
}

pub fn enumerate_spectrum(group: &FuchsianGroup, budget: &EnumerationBudget) -> Result<LengthSpectrum> {
    let found = enumerate_classes(group, budget)?;
    Ok(spectrum_from_classes(
        &found.classes,
        budget.length_cutoff,
        budget.merge_tolerance,
        found.certified,
    ))
}

pub fn enumerate_spectrum_with_workers(
    group: &FuchsianGroup,
    budget: &EnumerationBudget,
    workers: usize,
) -> Result<LengthSpectrum> {
    with_workers(workers, || enumerate_spectrum(group, budget))?
}

/// Collects class lengths into a spectrum, merging lengths closer than
/// `merge_tolerance` to their predecessor.
pub fn spectrum_from_classes(
    classes: &[GeodesicClass],
    cutoff: f64,
    merge_tolerance: f64,
    certified: bool,
) -> LengthSpectrum {
    let mut lengths: Vec<f64> = classes
        .iter()
        .map(|c| c.length.min(cutoff))
        .collect();
    lengths.sort_by(f64::total_cmp);
    let mut entries: Vec<SpectrumEntry> = Vec::new();
    let mut sum = 0.0;
    let mut last = f64::NEG_INFINITY;
    for l in lengths {
        match entries.last_mut() {
            Some(e) if l - last <= merge_tolerance => {
                sum += l;
                e.multiplicity += 1;
                e.length = sum / e.multiplicity as f64;
            }
            _ => {
                sum = l;
                entries.push(SpectrumEntry {
                    length: l,
                    multiplicity: 1,
                });
            }
        }
        last = l;
    }
    LengthSpectrum {
        cutoff,
        merge_tolerance,
        certified,
        entries,
    }
}

/// Drops classes that are proper powers, by word or, for lengths `n`
/// times a shorter class's, by being that class's `n`-th power.
pub fn primitive_filter(classes: &[GeodesicClass], merge_tolerance: f64) -> Vec<GeodesicClass> {
    let keep: Vec<bool> = classes
        .iter()
        .map(|c| {
            if c.word.is_proper_power() {
                return false;
            }
            let key = c.word.canonical_cyclic();
            !classes.iter().any(|s| {
                if s.length <= 0.0 || s.length >= c.length {
                    return false;
                }
                let n = (c.length / s.length).round();
                n >= 2.0
                    && (c.length - n * s.length).abs() <= merge_tolerance
                    && s.word.pow(n as usize).canonical_cyclic() == key
            })
        })
        .collect();
    classes
        .iter()
        .zip(keep)
        .filter_map(|(c, k)| k.then(|| c.clone()))
        .collect()
}

impl LengthSpectrum {
    /// Lengths up to `cutoff`, each repeated by its multiplicity.
    pub fn expanded(&self, cutoff: f64) -> Vec<f64> {
        self.entries
            .iter()
            .filter(|e| e.length <= cutoff)
            .flat_map(|e| std::iter::repeat(e.length).take(e.multiplicity as usize))
            .collect()
    }

    pub fn total_multiplicity(&self, cutoff: f64) -> u64 {
        self.entries
            .iter()
            .filter(|e| e.length <= cutoff)
            .map(|e| e.multiplicity)
            .sum()
    }

    pub fn systole(&self) -> Option<f64> {
        self.entries.first().map(|e| e.length)
    }

    /// The spectrum restricted to `cutoff`, which must not exceed its own.
    pub fn truncated(&self, cutoff: f64) -> Result<LengthSpectrum> {
        if cutoff > self.cutoff {
            return Err(Error::IncomparableCutoffs {
                available: self.cutoff,
                requested: cutoff,
            });
        }
        Ok(LengthSpectrum {
            cutoff,
            merge_tolerance: self.merge_tolerance,
            certified: self.certified,
            entries: self.entries.iter().filter(|e| e.length <= cutoff).copied().collect(),
        })
    }
}

/// Result of comparing two spectra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub isospectral: bool,
    /// 1-based index of the first differing multiplicity-expanded entry.
    pub first_discrepancy: Option<usize>,
}

pub fn isospectral_compare(
    s1: &LengthSpectrum,
    s2: &LengthSpectrum,
    cutoff: f64,
    tol: f64,
) -> Result<Comparison> {
    for s in [s1, s2] {
        if s.cutoff < cutoff {
            return Err(Error::IncomparableCutoffs {
                available: s.cutoff,
                requested: cutoff,
            });
        }
        if !s.certified {
            return Err(Error::Uncertified);
        }
    }
    let (a, b) = (s1.expanded(cutoff), s2.expanded(cutoff));
    let first = (0..a.len().max(b.len())).find(|&i| match (a.get(i), b.get(i)) {
        (Some(x), Some(y)) => (x - y).abs() > tol,
        _ => true,
    });
    Ok(Comparison {
        isospectral: first.is_none(),
        first_discrepancy: first.map(|i| i + 1),
    })
}

/// `(g − 1)·e^{L+6}`, the bound on primitive closed geodesics of length at most `L`.
pub fn count_bound(g: u64, l: f64) -> f64 {
    (g as f64 - 1.0) * (l + 6.0).exp()
}

pub fn count_bound_check(s: &LengthSpectrum, g: u64, l: f64) -> bool {
    s.total_multiplicity(l) as f64 <= count_bound(g, l)
}

/// Orders spectra entry by entry; used to sort candidate families.
pub fn spectrum_order(a: &LengthSpectrum, b: &LengthSpectrum) -> Ordering {
    for (x, y) in a.entries.iter().zip(&b.entries) {
        let o = x.length.total_cmp(&y.length).then(y.multiplicity.cmp(&x.multiplicity));
        if o != Ordering::Equal {
            return o;
        }
    }
    a.entries.len().cmp(&b.entries.len())
}
