//! Surfaces from Fenchel–Nielsen data.
//!
//! # One-holed torus
//!
//! With `x = 2cosh(L/2)` for the interior curve and `β = 2cosh(b/2)` for the
//! boundary, `A = diag(e^{L/2}, e^{-L/2})` and `B₀` is the symmetric
//! translation through `i` whose trace `y` satisfies
//! `y²(x²/4 − 1) = x² − 2 + β`. Then `tr AB₀ = xy/2` and `tr[A,B₀] = −β`.
//! Twisting by `t` right-multiplies `B₀` by the translation of length `t`
//! along the axis of `A`, which leaves `[A,B]` unchanged; a full twist sends
//! `B` to `BA` and so does not change the group.
//!
//! # Closed genus 2
//!
//! Two one-holed tori with interior curves `α₁`, `α₂` and common boundary
//! `δ` are glued along `δ`. Cuffs are ordered `[α₁, δ, α₂]` with words
//! `A`, `ABab`, `C`, and the relator is `[A,B][C,D] = 1`. The second torus
//! is moved so that its commutator becomes `[A,B]⁻¹`, with the seam from `δ`
//! towards `D C D⁻¹` landing on the seam from `δ` towards `B A B⁻¹`, and is
//! then slid along the axis of `[A,B]` by the twist.

mod chain;
mod twist;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::hypgeom::model::{act, to_upper_half_plane, Axis, Vec3};
use crate::hypgeom::{length_to_trace, trace_to_length, MobiusTransform};
use crate::word::Word;

pub use chain::{cc_reconstruct, measure_curve_chains, ArcRecord, CurveChainSystem};
pub use twist::{twist_solutions, TwistFamily};

/// Relator tolerance for closed surface groups.
pub const RELATOR_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Topology {
    OneHoledTorus,
    #[serde(rename = "closed_genus2")]
    ClosedGenus2,
}

impl Topology {
    pub fn arity(self) -> usize {
        match self {
            Topology::OneHoledTorus => 1,
            Topology::ClosedGenus2 => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FenchelNielsenSurface {
    pub topology: Topology,
    pub cuff_lengths: Vec<f64>,
    pub twists: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary_length: Option<f64>,
}

impl FenchelNielsenSurface {
    pub fn one_holed_torus(interior_length: f64, twist: f64, boundary_length: f64) -> Result<Self> {
        let s = Self {
            topology: Topology::OneHoledTorus,
            cuff_lengths: vec![interior_length],
            twists: vec![twist],
            boundary_length: Some(boundary_length),
        };
        s.validate()?;
        Ok(s)
    }

    /// Cuffs `[α₁, δ, α₂]` and twists in the same order.
    pub fn genus2(cuff_lengths: [f64; 3], twists: [f64; 3]) -> Result<Self> {
        let s = Self {
            topology: Topology::ClosedGenus2,
            cuff_lengths: cuff_lengths.to_vec(),
            twists: twists.to_vec(),
            boundary_length: None,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.topology.arity();
        if self.cuff_lengths.len() != n || self.twists.len() != n {
            return Err(domain(format!(
                "{:?} needs {n} cuff lengths and {n} twists, got {} and {}",
                self.topology,
                self.cuff_lengths.len(),
                self.twists.len()
            )));
        }
        for &l in &self.cuff_lengths {
            if !(l > 0.0 && l.is_finite()) {
                return Err(domain(format!("cuff length {l} is not positive")));
            }
        }
        if let Some(t) = self.twists.iter().find(|t| !t.is_finite()) {
            return Err(domain(format!("twist {t} is not finite")));
        }
        match (self.topology, self.boundary_length) {
            (Topology::OneHoledTorus, Some(b)) if b > 0.0 && b.is_finite() => Ok(()),
            (Topology::OneHoledTorus, b) => Err(domain(format!(
                "one-holed torus needs a positive boundary_length, got {b:?}"
            ))),
            (Topology::ClosedGenus2, None) => Ok(()),
            (Topology::ClosedGenus2, Some(_)) => {
                Err(domain("closed genus 2 surface takes no boundary_length"))
            }
        }
    }

    /// The same surface with every twist negated.
    pub fn mirrored(&self) -> Self {
        let mut s = self.clone();
        for t in &mut s.twists {
            *t = -*t;
        }
        s
    }

    /// The same surface with twist `i` shifted by one full turn.
    pub fn full_twist(&self, i: usize) -> Self {
        let mut s = self.clone();
        s.twists[i] += s.cuff_lengths[i];
        s
    }

    pub fn genus(&self) -> u64 {
        match self.topology {
            Topology::OneHoledTorus => 1,
            Topology::ClosedGenus2 => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Presentation {
    Free2,
    #[serde(rename = "genus2_standard")]
    Genus2Standard,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FuchsianGroup {
    pub generators: Vec<MobiusTransform>,
    pub presentation: Presentation,
}

impl FuchsianGroup {
    pub fn new(generators: Vec<MobiusTransform>, presentation: Presentation) -> Result<Self> {
        let g = Self {
            generators,
            presentation,
        };
        g.check()?;
        Ok(g)
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn evaluate(&self, w: &Word) -> Result<MobiusTransform> {
        w.evaluate(&self.generators)
    }

    /// Words of the pants-decomposition cuffs, in Fenchel–Nielsen order.
    pub fn cuff_words(&self) -> Vec<Word> {
        let names: &[&str] = match self.presentation {
            Presentation::Free2 => &["A"],
            Presentation::Genus2Standard => &["A", "ABab", "C"],
        };
        names.iter().map(|s| s.parse().expect("static word")).collect()
    }

    /// `[A,B]` for the torus, `[A,B][C,D]` for genus 2.
    pub fn relator(&self) -> MobiusTransform {
        let g = &self.generators;
        let k = MobiusTransform::commutator(&g[0], &g[1]);
        match self.presentation {
            Presentation::Free2 => k,
            Presentation::Genus2Standard => k * MobiusTransform::commutator(&g[2], &g[3]),
        }
    }

    pub fn relator_error(&self) -> f64 {
        self.relator().projective_distance(&MobiusTransform::IDENTITY)
    }

    fn check(&self) -> Result<()> {
        let want = match self.presentation {
            Presentation::Free2 => 2,
            Presentation::Genus2Standard => 4,
        };
        if self.generators.len() != want {
            return Err(Error::DegenerateSurface(format!(
                "{:?} needs {want} generators, got {}",
                self.presentation,
                self.generators.len()
            )));
        }
        if let Some(g) = self.generators.iter().find(|g| !g.is_hyperbolic()) {
            return Err(Error::DegenerateSurface(format!(
                "generator with trace {} is not hyperbolic",
                g.trace()
            )));
        }
        match self.presentation {
            Presentation::Free2 if !self.relator().is_hyperbolic() => Err(
                Error::DegenerateSurface("boundary commutator is not hyperbolic".into()),
            ),
            Presentation::Genus2Standard if !(self.relator_error() <= RELATOR_TOLERANCE) => {
                Err(Error::DegenerateSurface(format!(
                    "relator misses the identity by {:e}",
                    self.relator_error()
                )))
            }
            _ => Ok(()),
        }
    }
}

/// One-holed torus generators `A`, `B` with `ℓ(A) = interior_length`,
/// `ℓ([A,B]) = boundary_length` and twist `twist` along `A`.
pub fn build_one_holed_torus(
    interior_length: f64,
    twist: f64,
    boundary_length: f64,
) -> Result<FuchsianGroup> {
    FenchelNielsenSurface::one_holed_torus(interior_length, twist, boundary_length)?;
    let x = length_to_trace(interior_length);
    let beta = length_to_trace(boundary_length);
    let y2 = (beta + x * x - 2.0) / (x * x / 4.0 - 1.0);
    let half = y2.sqrt() / 2.0;
    let off = (half * half - 1.0).sqrt();
    if !off.is_finite() || !(x > 2.0) {
        return Err(Error::DegenerateSurface(format!(
            "no torus with interior length {interior_length} and boundary {boundary_length} in double precision"
        )));
    }
    let a = MobiusTransform::imaginary_translation(interior_length);
    let b0 = MobiusTransform {
        a: half,
        b: off,
        c: off,
        d: half,
    };
    let b = (b0 * MobiusTransform::imaginary_translation(twist)).renormalized();
    FuchsianGroup::new(vec![a, b], Presentation::Free2)
}

/// Foot on the axis of `k` of the common perpendicular with the axis of `other`.
pub(crate) fn perpendicular_foot(k: &MobiusTransform, other: &MobiusTransform) -> Result<Vec3> {
    Axis::of(k)?.line()?.perpendicular_foot(&Axis::of(other)?.line()?)
}

fn conj(m: &MobiusTransform, x: &MobiusTransform) -> MobiusTransform {
    (*m * *x * m.inverse()).renormalized()
}

pub fn build_genus2(fns: &FenchelNielsenSurface) -> Result<FuchsianGroup> {
    if fns.topology != Topology::ClosedGenus2 {
        return Err(domain("build_genus2 needs a closed genus 2 surface"));
    }
    fns.validate()?;
    let (l, t) = (&fns.cuff_lengths, &fns.twists);
    let t1 = build_one_holed_torus(l[0], t[0], l[1])?;
    let t2 = build_one_holed_torus(l[2], t[2], l[1])?;
    let (a, b) = (t1.generators[0], t1.generators[1]);
    let (c0, d0) = (t2.generators[0], t2.generators[1]);
    let k1 = MobiusTransform::commutator(&a, &b);
    let k2 = MobiusTransform::commutator(&c0, &d0);

    let f1 = perpendicular_foot(&k1, &conj(&b, &a))?;
    let f2 = perpendicular_foot(&k2, &conj(&d0, &c0))?;
    let n1 = k1.inverse().axis_normalizer()?;
    let n2 = k2.axis_normalizer()?;
    let h1 = to_upper_half_plane(&act(&n1, &f1)).im;
    let h2 = to_upper_half_plane(&act(&n2, &f2)).im;
    // Both tori are moved so that `δ` runs along the imaginary axis with the
    // first seam at `i`; each is conjugated only as far as its own collar,
    // which keeps the entries, and the rounding, small.
    let left = (MobiusTransform::diagonal(h1.sqrt().recip()) * n1).renormalized();
    let right = (MobiusTransform::imaginary_translation(-t[1])
        * MobiusTransform::diagonal(h2.sqrt().recip())
        * n2)
        .renormalized();

    let group = FuchsianGroup::new(
        vec![conj(&left, &a), conj(&left, &b), conj(&right, &c0), conj(&right, &d0)],
        Presentation::Genus2Standard,
    )?;
    for (w, &want) in group.cuff_words().iter().zip(l) {
        let got = trace_to_length(&group.evaluate(w)?)?;
        if (got - want).abs() > 1e-8 * want.max(1.0) {
            return Err(Error::DegenerateSurface(format!(
                "cuff {w} has length {got}, expected {want}"
            )));
        }
    }
    Ok(group)
}

pub fn build_surface(fns: &FenchelNielsenSurface) -> Result<FuchsianGroup> {
    fns.validate()?;
    match fns.topology {
        Topology::OneHoledTorus => build_one_holed_torus(
            fns.cuff_lengths[0],
            fns.twists[0],
            fns.boundary_length.expect("validated"),
        ),
        Topology::ClosedGenus2 => build_genus2(fns),
    }
}

pub fn curve_length(group: &FuchsianGroup, word: &Word) -> Result<f64> {
    if word.is_empty() {
        return Err(Error::Word("empty word has no geodesic".into()));
    }
    trace_to_length(&group.evaluate(word)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn tr3_torus_traces() {
        let l = 2.0 * 1.5f64.acosh();
        let b = 2.0 * 2.125f64.acosh();
        let g = build_one_holed_torus(l, 0.0, b).unwrap();
        assert_abs_diff_eq!(g.generators[0].trace(), 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(g.generators[1].trace(), 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(g.evaluate(&w("AB")).unwrap().trace(), 4.5, epsilon = 1e-12);
        assert_abs_diff_eq!(g.relator().trace(), -4.25, epsilon = 1e-12);
    }

    #[test]
    fn torus_boundary_is_twist_invariant() {
        for t in [-2.0, -0.3, 0.0, 0.7, 3.1] {
            let g = build_one_holed_torus(1.3, t, 2.2).unwrap();
            assert_abs_diff_eq!(curve_length(&g, &w("A")).unwrap(), 1.3, epsilon = 1e-12);
            assert_abs_diff_eq!(curve_length(&g, &w("ABab")).unwrap(), 2.2, epsilon = 1e-9);
        }
    }

    #[test]
    fn b_is_shortest_at_zero_twist() {
        let len = |t: f64| curve_length(&build_one_holed_torus(1.0, t, 1.5).unwrap(), &w("B")).unwrap();
        let at0 = len(0.0);
        for k in 1..200 {
            let t = -0.5 + k as f64 / 200.0;
            assert!(len(t) >= at0 - 1e-12);
        }
    }

    #[test]
    fn genus2_relator_and_cuffs() {
        let c = 2.0 * 2f64.acosh();
        let fns = FenchelNielsenSurface::genus2([c, c, c], [0.0; 3]).unwrap();
        let g = build_genus2(&fns).unwrap();
        assert!(g.relator_error() < 1e-6);
        for wd in g.cuff_words() {
            assert_abs_diff_eq!(curve_length(&g, &wd).unwrap(), c, epsilon = 1e-8);
        }
        let fns = FenchelNielsenSurface::genus2([0.7, 2.5, 1.4], [0.3, -1.1, 0.9]).unwrap();
        let g = build_genus2(&fns).unwrap();
        assert!(g.relator_error() < 1e-6);
        let lens: Vec<f64> = g.cuff_words().iter().map(|wd| curve_length(&g, wd).unwrap()).collect();
        for (got, want) in lens.iter().zip([0.7, 2.5, 1.4]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-8);
        }
    }

    #[test]
    fn length_is_inversion_and_rotation_invariant() {
        let g = build_one_holed_torus(1.1, 0.4, 1.9).unwrap();
        let a = curve_length(&g, &w("AABab")).unwrap();
        assert_abs_diff_eq!(curve_length(&g, &w("BABAa").cyclically_reduced()).unwrap(), curve_length(&g, &w("BAB")).unwrap(), epsilon = 1e-10);
        assert_abs_diff_eq!(curve_length(&g, &w("AABab").inverse()).unwrap(), a, epsilon = 1e-10);
        assert_abs_diff_eq!(curve_length(&g, &w("ABabA")).unwrap(), a, epsilon = 1e-10);
    }

    #[test]
    fn surface_json_field_names() {
        let s = FenchelNielsenSurface::genus2([1.0, 2.0, 3.0], [0.0, 0.5, -0.5]).unwrap();
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(
            j,
            r#"{"topology":"closed_genus2","cuff_lengths":[1.0,2.0,3.0],"twists":[0.0,0.5,-0.5]}"#
        );
        let t: FenchelNielsenSurface = serde_json::from_str(
            r#"{"topology":"one_holed_torus","cuff_lengths":[1.0],"twists":[0.0],"boundary_length":2.0}"#,
        )
        .unwrap();
        assert_eq!(t.boundary_length, Some(2.0));
        assert!(FenchelNielsenSurface::genus2([1.0, -1.0, 1.0], [0.0; 3]).is_err());
    }
}
