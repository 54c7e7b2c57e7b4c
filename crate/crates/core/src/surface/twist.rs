//! Solving for twists that give a transversal curve a prescribed length.

use serde::{Deserialize, Serialize};

use super::{build_surface, curve_length, FenchelNielsenSurface};
use crate::error::{domain, Error, Result};
use crate::word::Word;

/// A surface with one twist left free.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwistFamily {
    pub base: FenchelNielsenSurface,
    pub free_twist: usize,
    /// Start of the searched period; `0` when absent.
    #[serde(default)]
    pub window_start: Option<f64>,
}

impl TwistFamily {
    pub fn new(base: FenchelNielsenSurface, free_twist: usize) -> Result<Self> {
        base.validate()?;
        if free_twist >= base.twists.len() {
            return Err(domain(format!(
                "twist index {free_twist} out of range for {} twists",
                base.twists.len()
            )));
        }
        Ok(Self {
            base,
            free_twist,
            window_start: None,
        })
    }

    pub fn with_window_start(mut self, start: f64) -> Self {
        self.window_start = Some(start);
        self
    }

    pub fn period(&self) -> f64 {
        self.base.cuff_lengths[self.free_twist]
    }

    pub fn window(&self) -> (f64, f64) {
        let s = self.window_start.unwrap_or(0.0);
        (s, s + self.period())
    }

    pub fn at(&self, twist: f64) -> FenchelNielsenSurface {
        let mut s = self.base.clone();
        s.twists[self.free_twist] = twist;
        s
    }

    pub fn length(&self, word: &Word, twist: f64) -> Result<f64> {
        curve_length(&build_surface(&self.at(twist))?, word)
    }
}

const GOLDEN: f64 = 0.618_033_988_749_894_9;

/// Twists in `[start, start + period)` at which `word` has length `target`.
///
/// Length is convex along the twist, so the window splits at the minimizer
/// into two monotone branches and each holds at most one solution.
pub fn twist_solutions(family: &TwistFamily, word: &Word, target: f64) -> Result<Vec<f64>> {
    let f = |t: f64| family.length(word, t);
    let (lo, hi) = family.window();

    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - GOLDEN * (b - a);
    let mut x2 = a + GOLDEN * (b - a);
    let (mut f1, mut f2) = (f(x1)?, f(x2)?);
    while b - a > 1e-12 * (1.0 + hi.abs().max(lo.abs())) {
        if f1 <= f2 {
            b = x2;
            (x2, f2) = (x1, f1);
            x1 = b - GOLDEN * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            (x1, f1) = (x2, f2);
            x2 = a + GOLDEN * (b - a);
            f2 = f(x2)?;
        }
    }
    let (f_lo, f_hi) = (f(lo)?, f(hi)?);
    let (mut t_min, mut f_min) = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    for (t, v) in [(lo, f_lo), (hi, f_hi)] {
        if v < f_min {
            (t_min, f_min) = (t, v);
        }
    }
    if (f_lo.max(f_hi) - f_min) <= 1e-12 * f_min.max(1.0) {
        return Err(domain(format!("length of {word} does not vary with the twist")));
    }

    let tol = 1e-10 * f_min.max(1.0);
    if target < f_min - tol {
        return Err(Error::NoSolution {
            target,
            minimum: f_min,
        });
    }
    if target <= f_min + tol {
        return Ok(vec![t_min]);
    }

    // On [from, to] the length moves monotonically away from the minimum at `from`.
    let branch = |from: f64, to: f64, f_to: f64| -> Result<Option<f64>> {
        if f_to < target {
            return Ok(None);
        }
        let (mut near, mut far) = (from, to);
        for _ in 0..200 {
            let mid = 0.5 * (near + far);
            if mid == near || mid == far {
                break;
            }
            if f(mid)? < target {
                near = mid;
            } else {
                far = mid;
            }
        }
        Ok(Some(0.5 * (near + far)))
    };
    let mut out = Vec::with_capacity(2);
    if let Some(t) = branch(t_min, lo, f_lo)? {
        out.push(t);
    }
    if let Some(t) = branch(t_min, hi, f_hi)? {
        // The window is half-open.
        if t < hi {
            out.push(t);
        }
    }
    Ok(out)
}
