//! Dirichlet domains centred at the hyperboloid origin.
//!
//! Half-planes `⟨n, X⟩ ≥ 0` are straight in the Klein model, so the domain
//! is cut out of a square by Euclidean convex clipping. For a one-holed
//! torus the domain is also clipped by lifts of the boundary geodesic,
//! leaving a fundamental domain for the convex core.
//!
//! A clipped polygon is accepted only if it is compact, its area equals the
//! area of the surface, and every side pairing maps its side onto the side
//! of the inverse element. Clipping with too few elements can only leave a
//! larger polygon, so the area test rules out missing sides.

use std::f64::consts::PI;

use crate::hypgeom::model::{act, distance, from_klein, mink, Axis, Vec3, ORIGIN};
use crate::hypgeom::MobiusTransform;
use crate::word::Word;

/// Tolerance on the area defect.
const CERTIFY_TOLERANCE: f64 = 1e-6;
/// Tolerance on side-pairing images; vertices far from the centre carry
/// more rounding than the area does.
const PAIRING_TOLERANCE: f64 = 1e-5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Edge {
    Outer,
    /// Bisector of the origin and its image under pairing element `k`.
    Pairing(usize),
    /// A lift of the boundary geodesic.
    Boundary,
}

#[derive(Clone, Debug)]
pub(crate) struct Element {
    pub m: MobiusTransform,
    pub word: Word,
}

#[derive(Clone, Debug)]
pub(crate) struct Domain {
    /// Vertices in Klein coordinates, counter-clockwise; edge `i` runs from
    /// vertex `i` to vertex `i + 1`.
    pub klein: Vec<[f64; 2]>,
    pub vertices: Vec<Vec3>,
    /// Elements whose bisectors are sides of the domain.
    pub pairings: Vec<Element>,
    pub radius: f64,
}

#[derive(Clone, Copy)]
struct HalfPlane {
    normal: Vec3,
    edge: Edge,
}

impl HalfPlane {
    fn eval(&self, k: [f64; 2]) -> f64 {
        -self.normal[0] + self.normal[1] * k[0] + self.normal[2] * k[1]
    }
}

fn unit(n: Vec3) -> Option<Vec3> {
    let q = mink(&n, &n);
    (q > 0.0 && q.is_finite()).then(|| {
        let s = q.sqrt();
        [n[0] / s, n[1] / s, n[2] / s]
    })
}

fn clip(poly: &[([f64; 2], Edge)], h: &HalfPlane) -> Vec<([f64; 2], Edge)> {
    let n = poly.len();
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let (p, e) = poly[i];
        let (q, _) = poly[(i + 1) % n];
        let (fp, fq) = (h.eval(p), h.eval(q));
        let cross = || {
            let t = fp / (fp - fq);
            [p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])]
        };
        if fp >= 0.0 {
            out.push((p, e));
            if fq < 0.0 {
                out.push((cross(), h.edge));
            }
        } else if fq >= 0.0 {
            out.push((cross(), e));
        }
    }
    out
}

/// Normal of the half-plane on the origin's side of the bisector between
/// the origin and `g(origin)`.
fn bisector(g: &MobiusTransform) -> Option<Vec3> {
    let q = act(g, &ORIGIN);
    unit([ORIGIN[0] - q[0], ORIGIN[1] - q[1], ORIGIN[2] - q[2]])
}

/// Normal of the geodesic `line` oriented so the origin is inside.
fn facing_origin(line: Vec3) -> Option<Vec3> {
    let n = unit(line)?;
    Some(if mink(&n, &ORIGIN) >= 0.0 { n } else { [-n[0], -n[1], -n[2]] })
}

/// Clips the Dirichlet polygon for `elements` (and boundary lifts
/// `boundary`, given as geodesic normals) and certifies it.
pub(crate) fn dirichlet(
    elements: &[Element],
    boundary: &[Vec3],
    expected_area: f64,
) -> Option<Domain> {
    let mut poly: Vec<([f64; 2], Edge)> = vec![
        ([-2.0, -2.0], Edge::Outer),
        ([2.0, -2.0], Edge::Outer),
        ([2.0, 2.0], Edge::Outer),
        ([-2.0, 2.0], Edge::Outer),
    ];
    let mut planes: Vec<HalfPlane> = Vec::new();
    for (k, e) in elements.iter().enumerate() {
        if let Some(normal) = bisector(&e.m) {
            planes.push(HalfPlane {
                normal,
                edge: Edge::Pairing(k),
            });
        }
    }
    for &b in boundary {
        if let Some(normal) = facing_origin(b) {
            planes.push(HalfPlane {
                normal,
                edge: Edge::Boundary,
            });
        }
    }
    for h in &planes {
        poly = clip(&poly, h);
        if poly.len() < 3 {
            return None;
        }
    }
    if poly.iter().any(|(k, e)| *e == Edge::Outer || k[0] * k[0] + k[1] * k[1] >= 1.0 - 1e-12) {
        return None;
    }

    let edges: Vec<Edge> = poly.iter().map(|(_, e)| *e).collect();
    let klein: Vec<[f64; 2]> = poly.iter().map(|(k, _)| *k).collect();
    let vertices: Vec<Vec3> = klein.iter().map(|&k| from_klein(k)).collect();
    let normal_of = |e: Edge, i: usize| -> Option<Vec3> {
        match e {
            Edge::Pairing(k) => bisector(&elements[k].m),
            // Recover the boundary line from its two vertices.
            _ => {
                let a = vertices[i];
                let b = vertices[(i + 1) % vertices.len()];
                facing_origin(crate::hypgeom::model::mink_cross(&a, &b))
            }
        }
    };
    let normals = edges
        .iter()
        .enumerate()
        .map(|(i, &e)| normal_of(e, i))
        .collect::<Option<Vec<_>>>()?;

    let n = poly.len();
    let mut angle_sum = 0.0;
    for i in 0..n {
        let (a, b) = (&normals[(i + n - 1) % n], &normals[i]);
        angle_sum += (-mink(a, b)).clamp(-1.0, 1.0).acos();
    }
    let area = (n as f64 - 2.0) * PI - angle_sum;
    if (area - expected_area).abs() > CERTIFY_TOLERANCE {
        return None;
    }

    // Renumber pairing sides densely and check each maps onto its partner.
    let used: Vec<usize> = {
        let mut v: Vec<usize> = edges
            .iter()
            .filter_map(|e| match e {
                Edge::Pairing(k) => Some(*k),
                _ => None,
            })
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    if used.len() != edges.iter().filter(|e| matches!(e, Edge::Pairing(_))).count() {
        return None;
    }
    let pairings: Vec<Element> = used.iter().map(|&k| elements[k].clone()).collect();
    let edges: Vec<Edge> = edges
        .into_iter()
        .map(|e| match e {
            Edge::Pairing(k) => Edge::Pairing(used.binary_search(&k).expect("listed")),
            other => other,
        })
        .collect();
    let side_of = |k: usize| edges.iter().position(|&e| e == Edge::Pairing(k));
    for (k, g) in pairings.iter().enumerate() {
        let inv = g.m.inverse();
        let partner = pairings
            .iter()
            .position(|h| h.m.projective_distance(&inv) <= 1e-9 * (1.0 + inv.a.abs().max(inv.d.abs())))?;
        let (i, j) = (side_of(k)?, side_of(partner)?);
        let ends = |s: usize| (vertices[s], vertices[(s + 1) % n]);
        let (a, b) = ends(i);
        let (c, d) = ends(j);
        let (ga, gb) = (act(&inv, &a), act(&inv, &b));
        let direct = distance(&ga, &c).max(distance(&gb, &d));
        let swapped = distance(&ga, &d).max(distance(&gb, &c));
        if direct.min(swapped) > PAIRING_TOLERANCE {
            return None;
        }
    }

    let radius = vertices.iter().map(|v| distance(&ORIGIN, v)).fold(0.0, f64::max);
    Some(Domain {
        klein,
        vertices,
        pairings,
        radius,
    })
}

impl Domain {
    /// Signs of `⟨n, V⟩` over the vertices decide whether a geodesic with
    /// normal `n` meets the closed polygon.
    pub fn meets(&self, normal: &Vec3) -> bool {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for v in &self.vertices {
            let s = mink(normal, v) / v[0];
            lo = lo.min(s);
            hi = hi.max(s);
        }
        lo <= 1e-12 && hi >= -1e-12
    }

    /// Hyperbolic length of the part of the geodesic with normal `n` inside the polygon.
    pub fn chord(&self, normal: &Vec3) -> f64 {
        let n = self.klein.len();
        let f = |k: [f64; 2]| -normal[0] + normal[1] * k[0] + normal[2] * k[1];
        let mut pts: Vec<[f64; 2]> = Vec::with_capacity(2);
        for i in 0..n {
            let (p, q) = (self.klein[i], self.klein[(i + 1) % n]);
            let (fp, fq) = (f(p), f(q));
            if fp == 0.0 {
                pts.push(p);
            } else if fp * fq < 0.0 {
                let t = fp / (fp - fq);
                pts.push([p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])]);
            }
        }
        let mut best = 0.0f64;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                best = best.max(distance(&from_klein(pts[i]), &from_klein(pts[j])));
            }
        }
        best
    }
}

/// Normal of the axis of a hyperbolic element, or `None` near parabolic.
pub(crate) fn axis_normal(m: &MobiusTransform) -> Option<Vec3> {
    let axis = Axis::of(m).ok()?;
    axis.line().ok().map(|l| l.normal)
}

/// Normal of the geodesic `g · axis(k)`.
pub(crate) fn translated_axis(g: &MobiusTransform, axis: &Axis) -> Option<Vec3> {
    let a = act(g, &axis.attracting);
    let r = act(g, &axis.repelling);
    unit(crate::hypgeom::model::mink_cross(&r, &a))
}
