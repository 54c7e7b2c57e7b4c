//! Curve and chain systems for the genus-2 pants decomposition.
//!
//! The first pants is bounded by `X₁ = A`, `X₂ = B A⁻¹ B⁻¹` and
//! `X₃ = [A,B]⁻¹`; the second by `Y₁ = C`, `Y₂ = D C⁻¹ D⁻¹` and
//! `Y₃ = [A,B]`. In each, `X₁X₂X₃ = 1`, so the chain `Xᵢ·a·Xⱼ·a⁻¹` of the
//! seam between `Xᵢ` and `Xⱼ` is freely homotopic to the remaining cuff.
//!
//! Twists are measured on the marked seams ending on the lower-labelled
//! cuff: along `α₁` from the seam of `X₂` (pulled back by `B`) to the seam
//! of `X₁`, and along `δ` from the seam of the first pants to that of the
//! second.

use serde::{Deserialize, Serialize};

use super::{curve_length, perpendicular_foot, FenchelNielsenSurface, FuchsianGroup, Presentation};
use crate::error::{domain, Error, Result};
use crate::hypgeom::model::{act, Axis};
use crate::hypgeom::{arc_length_from_chain, MobiusTransform};
use crate::word::Word;

/// Relative agreement required between a chain and the cuff it must equal.
const CHAIN_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArcRecord {
    pub label: String,
    /// Indices into `curves` of the two cuffs the arc joins.
    pub endpoints: (usize, usize),
    /// Index of the cuff the chain is homotopic to.
    pub opposite: usize,
    pub pants: usize,
    pub chain: Word,
    pub length: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveChainSystem {
    pub curves: Vec<Word>,
    pub arcs: Vec<ArcRecord>,
    pub curve_lengths: Vec<f64>,
    pub twist_params: Vec<f64>,
    pub chain_lengths: Vec<f64>,
}

/// `(pants, boundary words, cuff index of each boundary)`.
fn pants_boundaries() -> [(usize, [&'static str; 3], [usize; 3]); 2] {
    [
        (1, ["A", "Bab", "BAba"], [0, 0, 1]),
        (2, ["C", "Dcd", "ABab"], [2, 2, 1]),
    ]
}

fn parse(s: &str) -> Word {
    s.parse().expect("static word")
}

/// Measures the curve and chain data of a surface from [`super::build_genus2`].
pub fn measure_curve_chains(group: &FuchsianGroup) -> Result<CurveChainSystem> {
    if group.presentation != Presentation::Genus2Standard {
        return Err(domain("curve and chain data is defined for closed genus 2 groups"));
    }
    let curves = group.cuff_words();
    let curve_lengths = curves
        .iter()
        .map(|w| curve_length(group, w))
        .collect::<Result<Vec<_>>>()?;

    let mut arcs = Vec::with_capacity(6);
    let mut chain_lengths = Vec::with_capacity(6);
    for (pants, words, cuffs) in pants_boundaries() {
        let x: Vec<Word> = words.iter().map(|s| parse(s)).collect();
        for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
            let chain = x[i].concat(&x[j]);
            let len = curve_length(group, &chain)?;
            chain_lengths.push(len);
            arcs.push(ArcRecord {
                label: format!("p{pants}:{}-{}", words[i], words[j]),
                endpoints: (cuffs[i], cuffs[j]),
                opposite: cuffs[k],
                pants,
                chain,
                length: arc_length_from_chain(curve_lengths[cuffs[i]], curve_lengths[cuffs[j]], len)?,
            });
        }
    }

    let g = |w: &str| group.evaluate(&parse(w));
    let (a, b, c, d) = (g("A")?, g("B")?, g("C")?, g("D")?);
    let k1 = g("ABab")?;
    let twist_on = |cuff: &MobiusTransform, mover: &MobiusTransform| -> Result<f64> {
        let image = (*mover * *cuff * mover.inverse()).renormalized();
        let foot = perpendicular_foot(cuff, &image)?;
        let far = perpendicular_foot(&image, cuff)?;
        let pulled = act(&mover.inverse(), &far);
        Ok(Axis::of(cuff)?.signed_distance(&pulled, &foot))
    };
    let t1 = twist_on(&a, &b)?;
    let t3 = twist_on(&c, &d)?;
    let seam1 = perpendicular_foot(&k1, &(b * a * b.inverse()))?;
    let seam2 = perpendicular_foot(&k1, &(d * c * d.inverse()))?;
    let td = Axis::of(&k1)?.signed_distance(&seam1, &seam2);

    Ok(CurveChainSystem {
        curves,
        arcs,
        curve_lengths,
        twist_params: vec![t1, td, t3],
        chain_lengths,
    })
}

/// Recovers Fenchel–Nielsen coordinates from curve and chain data.
///
/// Cuff lengths and twists are read off directly; every chain must be
/// homotopic to the cuff opposite its seam, and the seam lengths are
/// recomputed from the hexagon relation.
pub fn cc_reconstruct(cc: &CurveChainSystem) -> Result<FenchelNielsenSurface> {
    if cc.curve_lengths.len() != 3 || cc.twist_params.len() != 3 {
        return Err(Error::InconsistentData(
            "expected three cuffs with one twist each".into(),
        ));
    }
    if cc.arcs.len() != 6 || cc.chain_lengths.len() != 6 {
        return Err(Error::InconsistentData(format!(
            "expected 6 arcs with one chain each, got {} and {}",
            cc.arcs.len(),
            cc.chain_lengths.len()
        )));
    }
    for (arc, &chain) in cc.arcs.iter().zip(&cc.chain_lengths) {
        let (i, j) = arc.endpoints;
        let want = cc.curve_lengths[arc.opposite];
        if !(chain > 0.0) || (chain - want).abs() > CHAIN_TOLERANCE * want.max(1.0) {
            return Err(Error::InconsistentData(format!(
                "chain of {} has length {chain}, but its pants need {want}",
                arc.label
            )));
        }
        arc_length_from_chain(cc.curve_lengths[i], cc.curve_lengths[j], chain)
            .map_err(|e| Error::InconsistentData(e.to_string()))?;
    }
    let c = &cc.curve_lengths;
    let t = &cc.twist_params;
    FenchelNielsenSurface::genus2([c[0], c[1], c[2]], [t[0], t[1], t[2]])
        .map_err(|e| Error::InconsistentData(e.to_string()))
}
