//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use spectrakit::hypgeom::{trace_to_length, MobiusTransform};
use spectrakit::{FuchsianGroup, LengthSpectrum, Word};

/// Every freely reduced word of length `1..=max_len`, with its matrix.
pub fn all_words(gens: &[MobiusTransform], max_len: usize, mut visit: impl FnMut(&[i8], &MobiusTransform)) {
    let n = gens.len() as i8;
    let letters: Vec<i8> = (1..=n).chain((1..=n).map(|k| -k)).collect();
    let mats: Vec<MobiusTransform> = letters
        .iter()
        .map(|&l| if l > 0 { gens[(l - 1) as usize] } else { gens[(-l - 1) as usize].inverse() })
        .collect();
    fn rec(
        word: &mut Vec<i8>,
        m: MobiusTransform,
        letters: &[i8],
        mats: &[MobiusTransform],
        max_len: usize,
        visit: &mut dyn FnMut(&[i8], &MobiusTransform),
    ) {
        for (k, &l) in letters.iter().enumerate() {
            if word.last() == Some(&-l) {
                continue;
            }
            let m2 = m * mats[k];
            word.push(l);
            visit(word, &m2);
            if word.len() < max_len {
                rec(word, m2, letters, mats, max_len, visit);
            }
            word.pop();
        }
    }
    rec(&mut Vec::new(), MobiusTransform::IDENTITY, &letters, &mats, max_len, &mut visit);
}

/// Lengths with multiplicity for a free group: exact dedup of cyclic words
/// up to rotation and inversion, computed by listing every rotation.
pub fn free_group_oracle(group: &FuchsianGroup, max_len: usize, cutoff: f64) -> Vec<f64> {
    let mut seen: HashMap<Vec<i8>, f64> = HashMap::new();
    all_words(&group.generators, max_len, |w, m| {
        let Ok(len) = trace_to_length(m) else { return };
        if len > cutoff {
            return;
        }
        // Cyclically reduced only; conjugates appear as rotations.
        if w.first() == w.last().map(|l| -l).as_ref() {
            return;
        }
        let n = w.len();
        if (1..n).any(|p| n % p == 0 && (p..n).all(|i| w[i] == w[i - p])) {
            return;
        }
        let inv: Vec<i8> = w.iter().rev().map(|l| -l).collect();
        let mut rots = Vec::new();
        for r in 0..n {
            rots.push([&w[r..], &w[..r]].concat());
            rots.push([&inv[r..], &inv[..r]].concat());
        }
        let key = rots.into_iter().min().unwrap();
        seen.insert(key, len);
    });
    let mut v: Vec<f64> = seen.into_values().collect();
    v.sort_by(f64::total_cmp);
    v
}

fn same_projective(a: &MobiusTransform, b: &MobiusTransform) -> bool {
    a.projective_distance(b) < 1e-7 * (1.0 + a.a.abs() + a.b.abs() + a.c.abs() + a.d.abs())
}

/// Lengths with multiplicity for a genus-2 group. Hyperbolic elements
/// from cyclically reduced words of length `≤ max_len` are merged when a
/// conjugator of word length `≤ conj_len` carries one to the other or to
/// its inverse; each remaining group is one class.
pub fn closed_group_oracle(group: &FuchsianGroup, max_len: usize, conj_len: usize, cutoff: f64) -> Vec<f64> {
    let mut reps: Vec<(MobiusTransform, f64, Vec<i8>)> = Vec::new();
    let mut by_trace: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    let key = |m: &MobiusTransform| (m.trace().abs() * 1e6).round() as i64;
    let find = |reps: &Vec<(MobiusTransform, f64, Vec<i8>)>, idx: &BTreeMap<i64, Vec<usize>>, m: &MobiusTransform| {
        let k = key(m);
        for kk in [k - 1, k, k + 1] {
            if let Some(ids) = idx.get(&kk) {
                for &i in ids {
                    if same_projective(&reps[i].0, m) || same_projective(&reps[i].0, &m.inverse()) {
                        return Some(i);
                    }
                }
            }
        }
        None
    };
    all_words(&group.generators, max_len, |w, m| {
        if w.first() == w.last().map(|l| -l).as_ref() {
            return;
        }
        // Words trivial through the relator evaluate to ±I up to rounding.
        if same_projective(m, &MobiusTransform::IDENTITY) {
            return;
        }
        let Ok(len) = trace_to_length(m) else { return };
        if len > cutoff {
            return;
        }
        if find(&reps, &by_trace, m).is_none() {
            by_trace.entry(key(m)).or_default().push(reps.len());
            reps.push((*m, len, w.to_vec()));
        }
    });
    let mut conj: Vec<MobiusTransform> = vec![MobiusTransform::IDENTITY];
    all_words(&group.generators, conj_len, |_, m| conj.push(*m));
    let mut parent: Vec<usize> = (0..reps.len()).collect();
    fn root(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for i in 0..reps.len() {
        for c in &conj {
            let img = *c * reps[i].0 * c.inverse();
            if let Some(j) = find(&reps, &by_trace, &img) {
                let (a, b) = (root(&mut parent, i), root(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..reps.len() {
        let r = root(&mut parent, i);
        comps.entry(r).or_default().push(i);
    }
    // Drop proper powers: a class whose element is a power of a shorter one.
    let mut out = Vec::new();
    for members in comps.values() {
        let m = reps[members[0]].0;
        let len = reps[members[0]].1;
        let is_power = reps.iter().any(|(s, sl, _)| {
            let n = (len / sl).round();
            if n < 2.0 || (len - n * sl).abs() > 1e-6 {
                return false;
            }
            let mut p = MobiusTransform::IDENTITY;
            for _ in 0..n as usize {
                p = p * *s;
            }
            conj.iter().any(|c| {
                let img = *c * p * c.inverse();
                same_projective(&img, &m) || same_projective(&img, &m.inverse())
            })
        });
        if !is_power {
            out.push(len);
        }
    }
    out.sort_by(f64::total_cmp);
    out
}

pub fn expanded(s: &LengthSpectrum) -> Vec<f64> {
    s.expanded(s.cutoff)
}

pub fn word(s: &str) -> Word {
    s.parse().unwrap()
}
