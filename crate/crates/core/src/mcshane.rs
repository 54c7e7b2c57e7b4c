//! Gap functions and the boundary McShane identity on one-holed tori.
//!
//! Simple closed geodesics on a one-holed torus are the regions of the
//! Farey tessellation. A triangle is a triple of generators `(X, Y, XY)`;
//! flipping one corner replaces its trace by the Vieta partner:
//!
//! * `(X, Y) → (XY, Y)` drops `X` for `XY²`, of trace `tr Y · tr XY − tr X`,
//! * `(X, Y) → (X, XY)` drops `Y` for `X²Y`, of trace `tr X · tr XY − tr Y`,
//! * `(X, Y) → (X, Y⁻¹)` drops `XY` for `XY⁻¹`, of trace `tr X · tr Y − tr XY`.
//!
//! Away from the triangle where no flip lowers a trace, every flip raises
//! the trace it introduces, so a region whose trace exceeds the cutoff
//! ends its branch.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::hypgeom::length_to_trace;
use crate::surface::{FuchsianGroup, Presentation};
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapInputs {
    /// Length of the distinguished boundary.
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl GapInputs {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        for (name, v) in [("x", x), ("y", y), ("z", z)] {
            if !(v > 0.0) || v.is_nan() {
                return Err(domain(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(Self { x, y, z })
    }
}

/// `μ(x,y,z) = (4/x)·artanh(sinh(x/2) / (cosh(x/2) + e^{(y+z)/2}))`.
pub fn mu(inp: &GapInputs) -> Result<f64> {
    let GapInputs { x, y, z } = GapInputs::new(inp.x, inp.y, inp.z)?;
    let arg = (x / 2.0).sinh() / ((x / 2.0).cosh() + ((y + z) / 2.0).exp());
    Ok(4.0 / x * arg.atanh())
}

/// `η(x,y,z) = 1 − (2/x)·artanh(sinh(x/2)sinh(y/2) / (cosh(z/2) + cosh(x/2)cosh(y/2)))`.
pub fn eta(inp: &GapInputs) -> Result<f64> {
    let GapInputs { x, y, z } = GapInputs::new(inp.x, inp.y, inp.z)?;
    let num = (x / 2.0).sinh() * (y / 2.0).sinh();
    let den = (z / 2.0).cosh() + (x / 2.0).cosh() * (y / 2.0).cosh();
    Ok(1.0 - 2.0 / x * (num / den).atanh())
}

/// Traces of `X`, `Y` and `XY` for a one-holed torus group.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MarkovTriple {
    pub ta: f64,
    pub tb: f64,
    pub tab: f64,
}

impl MarkovTriple {
    /// `ta² + tb² + tab² − ta·tb·tab`, which equals `2 − β` for boundary trace `β`.
    pub fn invariant(&self) -> f64 {
        self.ta * self.ta + self.tb * self.tb + self.tab * self.tab - self.ta * self.tb * self.tab
    }

    pub fn flip(&self, corner: usize) -> MarkovTriple {
        let MarkovTriple { ta, tb, tab } = *self;
        match corner {
            0 => MarkovTriple { ta: tb * tab - ta, tb, tab },
            1 => MarkovTriple { ta, tb: ta * tab - tb, tab },
            _ => MarkovTriple { ta, tb, tab: ta * tb - tab },
        }
    }

    fn get(&self, corner: usize) -> f64 {
        [self.ta, self.tb, self.tab][corner]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimpleGeodesic {
    pub word: Word,
    pub length: f64,
}

#[derive(Clone, Debug)]
struct Triangle {
    x: Word,
    y: Word,
    traces: MarkovTriple,
}

impl Triangle {
    fn words(&self) -> [Word; 3] {
        [self.x.clone(), self.y.clone(), self.x.concat(&self.y)]
    }

    /// Replaces the region at `corner`; the new region is the product slot.
    fn flip(&self, corner: usize) -> Triangle {
        let MarkovTriple { ta: x, tb: y, tab: z } = self.traces;
        let (px, py, traces) = match corner {
            0 => (self.x.concat(&self.y), self.y.clone(), MarkovTriple { ta: z, tb: y, tab: y * z - x }),
            1 => (self.x.clone(), self.x.concat(&self.y), MarkovTriple { ta: x, tb: z, tab: x * z - y }),
            _ => (self.x.clone(), self.y.inverse(), MarkovTriple { ta: x, tb: y, tab: x * y - z }),
        };
        Triangle { x: px, y: py, traces }
    }
}

/// `(p, q)` exponent sums up to sign: the slope of a simple curve.
fn slope(w: &Word) -> (i64, i64) {
    let v = w.abelianization(2);
    let (p, q) = (v[0], v[1]);
    if p < 0 || (p == 0 && q < 0) {
        (-p, -q)
    } else {
        (p, q)
    }
}

fn triangle_key(t: &Triangle) -> [(i64, i64); 3] {
    let mut k = t.words().map(|w| slope(&w));
    k.sort_unstable();
    k
}

/// Simple closed geodesics of length at most `cutoff`, shortest first,
/// together with the largest drift of the trace invariant seen, relative
/// to the size of the product `ta·tb·tab` it is computed from.
pub fn enumerate_simple_torus_with_drift(
    group: &FuchsianGroup,
    cutoff: f64,
) -> Result<(Vec<SimpleGeodesic>, f64)> {
    if group.presentation != Presentation::Free2 {
        return Err(domain("simple geodesic enumeration needs a one-holed torus group"));
    }
    let (a, b) = (group.generators[0], group.generators[1]);
    let mut t = Triangle {
        x: Word::generator(0),
        y: Word::generator(1),
        traces: MarkovTriple {
            ta: a.trace(),
            tb: b.trace(),
            tab: (a * b).trace(),
        },
    };
    // Positive traces keep every flip's trace positive.
    if t.traces.ta < 0.0 {
        t.traces.ta = -t.traces.ta;
        t.traces.tab = -t.traces.tab;
    }
    if t.traces.tb < 0.0 {
        t.traces.tb = -t.traces.tb;
        t.traces.tab = -t.traces.tab;
    }
    let invariant = t.traces.invariant();

    // Descend to the triangle where no flip lowers a trace.
    loop {
        let corner = (0..3)
            .max_by(|&i, &j| t.traces.get(i).total_cmp(&t.traces.get(j)))
            .expect("three corners");
        let flipped = t.flip(corner);
        if flipped.traces.tab < t.traces.get(corner) * (1.0 - 1e-12) {
            t = flipped;
        } else {
            break;
        }
    }
    if (0..3).any(|i| !(t.traces.get(i) > 2.0)) {
        return Err(Error::DegenerateSurface("a simple curve is not hyperbolic".into()));
    }

    let bound = length_to_trace(cutoff);
    let length = |tr: f64| 2.0 * (tr / 2.0).acosh();
    let mut out: Vec<SimpleGeodesic> = Vec::new();
    let mut found: HashSet<(i64, i64)> = HashSet::new();
    let mut seen: HashSet<[(i64, i64); 3]> = HashSet::new();
    let mut drift = 0.0f64;
    let mut queue = VecDeque::new();
    seen.insert(triangle_key(&t));
    queue.push_back(t);
    while let Some(t) = queue.pop_front() {
        let scale = t.traces.ta * t.traces.tb * t.traces.tab;
        drift = drift.max((t.traces.invariant() - invariant).abs() / scale.max(invariant.abs()));
        for (k, w) in t.words().into_iter().enumerate() {
            let tr = t.traces.get(k);
            if tr <= bound && found.insert(slope(&w)) {
                out.push(SimpleGeodesic {
                    word: w,
                    length: length(tr),
                });
            }
        }
        for corner in 0..3 {
            let next = t.flip(corner);
            if next.traces.tab > bound || !seen.insert(triangle_key(&next)) {
                continue;
            }
            queue.push_back(next);
        }
    }
    out.sort_by(|x, y| x.length.total_cmp(&y.length).then_with(|| x.word.cmp(&y.word)));
    Ok((out, drift))
}

pub fn enumerate_simple_torus(group: &FuchsianGroup, cutoff: f64) -> Result<Vec<SimpleGeodesic>> {
    Ok(enumerate_simple_torus_with_drift(group, cutoff)?.0)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct McShaneReport {
    pub boundary_length: f64,
    pub cutoff: f64,
    pub terms: usize,
    pub partial_sum: f64,
    pub deficit: f64,
}

/// `1 − Σ μ(x, ℓ(γ), ℓ(γ))` over simple closed geodesics `γ` with `ℓ(γ) ≤ cutoff`.
pub fn verify_identity(group: &FuchsianGroup, boundary_length: f64, cutoff: f64) -> Result<McShaneReport> {
    let simple = enumerate_simple_torus(group, cutoff)?;
    let mut sum = 0.0;
    for g in &simple {
        sum += mu(&GapInputs::new(boundary_length, g.length, g.length)?)?;
    }
    Ok(McShaneReport {
        boundary_length,
        cutoff,
        terms: simple.len(),
        partial_sum: sum,
        deficit: 1.0 - sum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::build_one_holed_torus;
    use approx::assert_abs_diff_eq;

    #[test]
    fn gap_function_limits() {
        let m = mu(&GapInputs::new(1.0, 50.0, 50.0).unwrap()).unwrap();
        assert!(m > 0.0 && m < 1e-20);
        let e = eta(&GapInputs::new(1.0, 1.0, 200.0).unwrap()).unwrap();
        assert_abs_diff_eq!(e, 1.0, epsilon = 1e-15);
        let small = mu(&GapInputs::new(1e-6, 1.0, 2.0).unwrap()).unwrap();
        assert_abs_diff_eq!(small, 2.0 / (1.0 + 1.5f64.exp()), epsilon = 1e-10);
        let p = GapInputs::new(1.0, 1.0, 1.0).unwrap();
        assert!(eta(&p).unwrap() > mu(&p).unwrap());
        assert!(GapInputs::new(-1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn markov_flips_preserve_invariant() {
        let t = MarkovTriple { ta: 3.0, tb: 3.0, tab: 4.5 };
        for c in 0..3 {
            assert_abs_diff_eq!(t.flip(c).invariant(), t.invariant(), epsilon = 1e-12);
            assert_eq!(t.flip(c).flip(c), t);
        }
    }

    #[test]
    fn simple_traces_match_word_traces() {
        let g = build_one_holed_torus(1.1, 0.37, 2.3).unwrap();
        let (simple, drift) = enumerate_simple_torus_with_drift(&g, 9.0).unwrap();
        assert!(drift < 1e-9);
        assert!(simple.len() > 10);
        for s in &simple {
            let m = g.evaluate(&s.word).unwrap();
            let len = crate::hypgeom::trace_to_length(&m).unwrap();
            assert_abs_diff_eq!(len, s.length, epsilon = 1e-8 * s.length.max(1.0));
        }
        assert!(enumerate_simple_torus(&g, 1.0).unwrap().is_empty());
    }
}
