//! Closed-form hyperbolic trigonometry.

mod mobius;
pub mod model;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

pub use mobius::{MobiusTransform, DET_TOLERANCE, HYPERBOLIC_MARGIN};

use crate::error::{domain, Error, Result};

/// `2·arcsinh(1)`: below this length closed geodesics are simple and pairwise disjoint.
pub fn short_curve_threshold() -> f64 {
    2.0 * 1f64.asinh()
}

fn require_positive(name: &str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("{name} must be positive and finite, got {x}")))
    }
}

/// Length of the closed geodesic of a hyperbolic element, `2·arccosh(|tr|/2)`.
pub fn trace_to_length(m: &MobiusTransform) -> Result<f64> {
    let t = m.trace().abs();
    if t <= 2.0 + HYPERBOLIC_MARGIN {
        return Err(Error::NotHyperbolic { trace: t });
    }
    Ok(2.0 * (t / 2.0).acosh())
}

/// `2·cosh(len/2)`, the inverse of [`trace_to_length`] on absolute traces.
pub fn length_to_trace(len: f64) -> f64 {
    2.0 * (len / 2.0).cosh()
}

/// Width of the embedded collar around a simple closed geodesic.
pub fn collar_width(len: f64) -> Result<f64> {
    require_positive("length", len)?;
    Ok((1.0 / (len / 2.0).sinh()).asinh())
}

/// Length of each boundary curve of the standard collar, `len·coth(len/2)`.
pub fn collar_boundary_length(len: f64) -> Result<f64> {
    require_positive("length", len)?;
    Ok(len / (len / 2.0).tanh())
}

/// Upper bound `log(sinh(len/2))` on the distance from a simple geodesic
/// loop to the collar of its geodesic representative.
pub fn loop_collar_distance_bound(loop_len: f64) -> Result<f64> {
    require_positive("loop length", loop_len)?;
    Ok((loop_len / 2.0).sinh().ln())
}

/// Three pairwise non-adjacent sides of a right-angled hexagon.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HexagonAlternatingSides {
    pub s1: f64,
    pub s2: f64,
    pub s3: f64,
}

impl HexagonAlternatingSides {
    pub fn new(s1: f64, s2: f64, s3: f64) -> Result<Self> {
        for (i, s) in [s1, s2, s3].into_iter().enumerate() {
            require_positive(&format!("side s{}", i + 1), s)?;
        }
        Ok(Self { s1, s2, s3 })
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.s1, self.s2, self.s3]
    }
}

/// The other three sides; entry `k` is the side opposite `s_{k+1}`.
///
/// Uses `cosh t₃ = (cosh s₃ + cosh s₁ cosh s₂) / (sinh s₁ sinh s₂)` and its
/// cyclic shifts.
pub fn hexagon_complete(sides: &HexagonAlternatingSides) -> Result<[f64; 3]> {
    let s = sides.as_array();
    for x in s {
        require_positive("hexagon side", x)?;
    }
    let opposite = |k: usize| {
        let (i, j) = ((k + 1) % 3, (k + 2) % 3);
        let num = s[k].cosh() + s[i].cosh() * s[j].cosh();
        (num / (s[i].sinh() * s[j].sinh())).acosh()
    };
    Ok([opposite(0), opposite(1), opposite(2)])
}

/// Length of the orthogeodesic joining the first two cuffs of a pair of
/// pants with boundary lengths `(cuff1, cuff2, chain_len)`.
pub fn arc_length_from_chain(cuff1: f64, cuff2: f64, chain_len: f64) -> Result<f64> {
    require_positive("cuff length", cuff1)?;
    require_positive("cuff length", cuff2)?;
    require_positive("chain length", chain_len)?;
    let halves = HexagonAlternatingSides::new(cuff1 / 2.0, cuff2 / 2.0, chain_len / 2.0)?;
    Ok(hexagon_complete(&halves)?[2])
}

/// `R_g = arccosh(1 / (2 sin(π/(12g−6))))`, the radius bounding the
/// shortest geodesic loop through any point of a genus `g` surface.
pub fn bavard_radius(g: u64) -> Result<f64> {
    if g < 2 {
        return Err(domain(format!("genus must be at least 2, got {g}")));
    }
    let angle = PI / (12.0 * g as f64 - 6.0);
    Ok((1.0 / (2.0 * angle.sin())).acosh())
}
