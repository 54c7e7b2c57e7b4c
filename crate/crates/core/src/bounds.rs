//! Counting bounds for isospectral families, as natural logarithms.
//!
//! Every quantity here overflows `f64` for moderate genus, so products are
//! summed term by term in log space. Where a bound is stated both exactly
//! and through a rounded envelope, both are returned and compared.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypgeom::{bavard_radius, collar_boundary_length};

/// Exponent in the `g^{154 g}` envelope.
pub const MAINCOUNT_EXPONENT: f64 = 154.0;
/// Exponent `B` of the simplified envelope `(8/e⁶) A^{g−1} g^{B(g−1)}`.
pub const SIMPLIFIED_EXPONENT: f64 = 114.0;

/// `ln A` for `A = 3⁶ 2⁷⁵ e⁶⁷`.
pub fn ln_simplified_constant() -> f64 {
    6.0 * 3f64.ln() + 75.0 * 2f64.ln() + 67.0
}

fn check_genus(g: u32) -> Result<f64> {
    if g < 2 {
        return Err(Error::InvalidContext(format!("genus must be at least 2, got {g}")));
    }
    Ok(f64::from(g))
}

/// `ln(e^a + e^b)`.
pub fn log_add(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if lo == f64::NEG_INFINITY {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}

/// Curve-and-chain cardinalities for one configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundContext {
    pub g: u32,
    pub k: u32,
    pub k0: u32,
    pub k1: u32,
}

impl BoundContext {
    pub fn new(g: u32, k: u32, k0: u32, k1: u32) -> Result<Self> {
        check_genus(g)?;
        if k0 + k1 != k {
            return Err(Error::InvalidContext(format!("k0 + k1 = {} differs from k = {k}", k0 + k1)));
        }
        if k > 3 * g - 3 {
            return Err(Error::InvalidContext(format!("k = {k} exceeds 3g − 3 = {}", 3 * g - 3)));
        }
        Ok(Self { g, k, k0, k1 })
    }

    /// Every admissible context of genus `g`.
    pub fn all(g: u32) -> Result<Vec<BoundContext>> {
        check_genus(g)?;
        let mut out = Vec::new();
        for k in 0..=3 * g - 3 {
            for k1 in 0..=k {
                out.push(BoundContext { g, k, k0: k - k1, k1 });
            }
        }
        Ok(out)
    }
}

/// `ln N_cc(g)` with `N_cc(g) ≤ e⁻⁶ (12⁶/e⁵)^{g−1} (g−1)^{6g−6}`.
pub fn ncc_bound(g: u32) -> Result<f64> {
    let gf = check_genus(g)?;
    Ok(-6.0 + (gf - 1.0) * (6.0 * 12f64.ln() - 5.0) + (6.0 * gf - 6.0) * (gf - 1.0).ln())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CcLengthBounds {
    /// `2 ln(4g)`.
    pub curve: f64,
    /// `8 ln(4g)`.
    pub chain: f64,
    /// `14 ln(4g)`.
    pub transversal: f64,
    /// `6 ln(8g)`.
    pub nextgeom: f64,
    /// `6 ln(4g) + arsinh(1) + 2√2 ln(1+√2)`, which should stay below `nextgeom`.
    pub nextgeom_raw: f64,
}

pub fn cc_length_bounds(g: u32) -> Result<CcLengthBounds> {
    let gf = check_genus(g)?;
    let l4 = (4.0 * gf).ln();
    Ok(CcLengthBounds {
        curve: 2.0 * l4,
        chain: 8.0 * l4,
        transversal: 14.0 * l4,
        nextgeom: 6.0 * (8.0 * gf).ln(),
        nextgeom_raw: 6.0 * l4 + 1f64.asinh() + collar_boundary_length(2.0 * 1f64.asinh())?,
    })
}

/// `2|χ|(|χ|+1)` arc classes, as a plain count.
pub fn przytycki(abs_euler: u64) -> u64 {
    2 * abs_euler * (abs_euler + 1)
}

/// Log-values of the thin-part bounds, with the stated envelopes kept
/// next to the expressions they are claimed to bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThinBounds {
    /// `2|χ|(|χ|+1)` at `|χ| = 2g − 2`.
    pub przytycki: f64,
    /// `(8g−8)(2g−1)` type (I) curves.
    pub type_i_curves: f64,
    /// `16(g−1)²`, stated as an upper bound for `type_i_curves`.
    pub type_i_curves_envelope: f64,
    /// `2(8g−8)(2g−1)` isometry classes.
    pub type_i: f64,
    /// `32(g−1)²`, stated as an upper bound for `type_i`.
    pub type_i_envelope: f64,
    pub type_i_envelope_holds: bool,
    /// `4(8g)¹²`.
    pub type_ii: f64,
    /// `8^{k₀+1} g^{12k₀}`.
    pub thin: f64,
    /// `(8·(8g)¹²)^{k₀}`, the product of the per-curve estimates.
    pub thin_stepwise: f64,
}

pub fn thin_bounds(ctx: &BoundContext) -> Result<ThinBounds> {
    let ctx = BoundContext::new(ctx.g, ctx.k, ctx.k0, ctx.k1)?;
    let g = f64::from(ctx.g);
    let chi = 2.0 * g - 2.0;
    let lg = g.ln();
    let type_i = 2f64.ln() + (8.0 * g - 8.0).ln() + (2.0 * g - 1.0).ln();
    let type_i_envelope = 32f64.ln() + 2.0 * (g - 1.0).ln();
    let k0 = f64::from(ctx.k0);
    Ok(ThinBounds {
        przytycki: 2f64.ln() + chi.ln() + (chi + 1.0).ln(),
        type_i_curves: (8.0 * g - 8.0).ln() + (2.0 * g - 1.0).ln(),
        type_i_curves_envelope: 16f64.ln() + 2.0 * (g - 1.0).ln(),
        type_i,
        type_i_envelope,
        type_i_envelope_holds: type_i < type_i_envelope,
        type_ii: 4f64.ln() + 12.0 * (8.0 * g).ln(),
        thin: (k0 + 1.0) * 8f64.ln() + 12.0 * k0 * lg,
        thin_stepwise: k0 * (8f64.ln() + 12.0 * (8.0 * g).ln()),
    })
}

/// `ln` of the isometry-type count
/// `N_cc · (16e⁶(g−1)g²)^k · (16e⁶(g−1)g⁸)^{6g−6} · (16e⁶(g−1)g¹⁴)^{k₁} · 2^{k₁} · 8^{k₀+1} g^{12k₀}`.
pub fn bigcount(ctx: &BoundContext) -> Result<f64> {
    let ctx = BoundContext::new(ctx.g, ctx.k, ctx.k0, ctx.k1)?;
    let g = f64::from(ctx.g);
    let lg = g.ln();
    let base = 16f64.ln() + 6.0 + (g - 1.0).ln();
    let (k, k0, k1) = (f64::from(ctx.k), f64::from(ctx.k0), f64::from(ctx.k1));
    Ok(ncc_bound(ctx.g)?
        + k * (base + 2.0 * lg)
        + (6.0 * g - 6.0) * (base + 8.0 * lg)
        + k1 * (base + 14.0 * lg)
        + k1 * 2f64.ln()
        + (k0 + 1.0) * 8f64.ln()
        + 12.0 * k0 * lg)
}

/// Largest `bigcount` over admissible contexts, with the context attaining it.
///
/// `bigcount` is affine in `(k, k₁)` over the triangle
/// `0 ≤ k₁ ≤ k ≤ 3g − 3`, so the maximum sits at a corner.
pub fn bigcount_max(g: u32) -> Result<(f64, BoundContext)> {
    check_genus(g)?;
    let top = 3 * g - 3;
    let corners = [
        BoundContext::new(g, 0, 0, 0)?,
        BoundContext::new(g, top, top, 0)?,
        BoundContext::new(g, top, 0, top)?,
    ];
    let mut best: Option<(f64, BoundContext)> = None;
    for ctx in corners {
        let v = bigcount(&ctx)?;
        if best.map_or(true, |(b, _)| v > b) {
            best = Some((v, ctx));
        }
    }
    Ok(best.expect("three corners"))
}

/// `ln((8/e⁶) A^{g−1} g^{B(g−1)})`.
pub fn simplified_envelope(g: u32) -> Result<f64> {
    let gf = check_genus(g)?;
    Ok(8f64.ln() - 6.0 + (gf - 1.0) * (ln_simplified_constant() + SIMPLIFIED_EXPONENT * gf.ln()))
}

/// `ln g^{154 g}`.
pub fn maincount_bound(g: u32) -> Result<f64> {
    let gf = check_genus(g)?;
    Ok(MAINCOUNT_EXPONENT * gf * gf.ln())
}

/// `ln(16e⁶(g−1)g¹⁴)`, the number of lengths read by the initial sweep.
pub fn initial_sweep_size(g: u32) -> Result<f64> {
    let gf = check_genus(g)?;
    Ok(16f64.ln() + 6.0 + (gf - 1.0).ln() + 14.0 * gf.ln())
}

/// `ln(M − 1 + 16e⁶(g−1)g¹⁴ + 3g − 3)` for a family of `M = e^{ln_m}` spectra.
pub fn question_budget(g: u32, ln_m: f64) -> Result<f64> {
    let gf = check_genus(g)?;
    if !(ln_m >= 0.0) {
        return Err(Error::InvalidContext(format!("family size must be at least 1, got e^{ln_m}")));
    }
    let sweep = initial_sweep_size(g)?;
    Ok(log_add(log_add(ln_m, sweep), (3.0 * gf - 4.0).ln()))
}

/// Every named bound at one genus, for reporting.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundTable {
    pub genus: u32,
    pub ncc: f64,
    pub cc_length: CcLengthBounds,
    pub nextgeom_holds: bool,
    pub bavard_radius: f64,
    pub bavard_radius_below_log4g: bool,
    pub log_sinh_bavard_below_log2g: bool,
    /// Thin bounds at the context maximizing `bigcount`.
    pub thin: ThinBounds,
    pub bigcount_max: f64,
    pub bigcount_argmax: BoundContext,
    pub simplified_envelope: f64,
    pub bigcount_below_simplified: bool,
    pub maincount: f64,
    pub bigcount_below_maincount: bool,
    pub initial_sweep_size: f64,
    /// Question budget with the family size set to the simplified envelope.
    pub question_budget: f64,
    pub question_budget_below_maincount: bool,
}

pub fn table(g: u32) -> Result<BoundTable> {
    let gf = check_genus(g)?;
    let cc = cc_length_bounds(g)?;
    let r = bavard_radius(u64::from(g))?;
    let (big, argmax) = bigcount_max(g)?;
    let simplified = simplified_envelope(g)?;
    let main = maincount_bound(g)?;
    let budget = question_budget(g, simplified)?;
    Ok(BoundTable {
        genus: g,
        ncc: ncc_bound(g)?,
        cc_length: cc,
        nextgeom_holds: cc.nextgeom_raw < cc.nextgeom,
        bavard_radius: r,
        bavard_radius_below_log4g: r < (4.0 * gf).ln(),
        log_sinh_bavard_below_log2g: r.sinh().ln() < (2.0 * gf).ln(),
        thin: thin_bounds(&argmax)?,
        bigcount_max: big,
        bigcount_argmax: argmax,
        simplified_envelope: simplified,
        bigcount_below_simplified: big <= simplified,
        maincount: main,
        bigcount_below_maincount: big <= main,
        initial_sweep_size: initial_sweep_size(g)?,
        question_budget: budget,
        question_budget_below_maincount: budget <= main,
    })
}
