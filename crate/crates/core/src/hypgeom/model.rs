//! Hyperboloid-model helpers.
//!
//! Points are unit timelike vectors `X` with `X0 > 0` and `⟨X, X⟩ = -1`
//! for the form `⟨x, y⟩ = -x0 y0 + x1 y1 + x2 y2`. Geodesics are stored
//! through unit spacelike normals. The upper half-plane point `i` is the
//! hyperboloid vertex `(1, 0, 0)`, so Klein coordinates are centred there.

use num_complex::Complex64;

use super::mobius::MobiusTransform;
use crate::error::{domain, Result};

pub type Vec3 = [f64; 3];

pub const ORIGIN: Vec3 = [1.0, 0.0, 0.0];

#[inline]
pub fn mink(x: &Vec3, y: &Vec3) -> f64 {
    -x[0] * y[0] + x[1] * y[1] + x[2] * y[2]
}

/// Vector orthogonal to both arguments for the Minkowski form.
#[inline]
pub fn mink_cross(x: &Vec3, y: &Vec3) -> Vec3 {
    let c = [
        x[1] * y[2] - x[2] * y[1],
        x[2] * y[0] - x[0] * y[2],
        x[0] * y[1] - x[1] * y[0],
    ];
    [-c[0], c[1], c[2]]
}

fn scale(v: &Vec3, s: f64) -> Vec3 {
    [v[0] * s, v[1] * s, v[2] * s]
}

/// Rescales a timelike vector onto the upper sheet.
pub fn normalize_point(v: &Vec3) -> Result<Vec3> {
    let q = -mink(v, v);
    if !(q > 0.0) || !q.is_finite() {
        return Err(domain("vector is not timelike"));
    }
    let s = q.sqrt() * v[0].signum();
    Ok(scale(v, 1.0 / s))
}

pub fn from_upper_half_plane(z: Complex64) -> Vec3 {
    let (x, y) = (z.re, z.im);
    let r2 = x * x + y * y;
    [(r2 + 1.0) / (2.0 * y), (r2 - 1.0) / (2.0 * y), x / y]
}

pub fn to_upper_half_plane(p: &Vec3) -> Complex64 {
    let y = 1.0 / (p[0] - p[1]);
    Complex64::new(p[2] * y, y)
}

/// Null vector of the boundary point with homogeneous coordinates `(x, y)`.
pub fn ideal_point(h: [f64; 2]) -> Vec3 {
    let (x, y) = (h[0], h[1]);
    [x * x + y * y, x * x - y * y, 2.0 * x * y]
}

/// Linear action of a Möbius transformation on Minkowski space.
///
/// Uses the identification `X ↔ [[X0+X1, X2], [X2, X0-X1]]` under which
/// the transformation acts by `S ↦ M S Mᵀ`.
pub fn act(m: &MobiusTransform, v: &Vec3) -> Vec3 {
    let (s00, s01, s11) = (v[0] + v[1], v[2], v[0] - v[1]);
    // M S
    let t00 = m.a * s00 + m.b * s01;
    let t01 = m.a * s01 + m.b * s11;
    let t10 = m.c * s00 + m.d * s01;
    let t11 = m.c * s01 + m.d * s11;
    // (M S) Mᵀ
    let r00 = t00 * m.a + t01 * m.b;
    let r01 = t00 * m.c + t01 * m.d;
    let r11 = t10 * m.c + t11 * m.d;
    [(r00 + r11) / 2.0, (r00 - r11) / 2.0, r01]
}

pub fn distance(x: &Vec3, y: &Vec3) -> f64 {
    (-mink(x, y)).max(1.0).acosh()
}

pub fn klein(p: &Vec3) -> [f64; 2] {
    [p[1] / p[0], p[2] / p[0]]
}

pub fn from_klein(k: [f64; 2]) -> Vec3 {
    let s = (1.0 - k[0] * k[0] - k[1] * k[1]).sqrt();
    [1.0 / s, k[0] / s, k[1] / s]
}

/// Moves `p` a hyperbolic distance `d` along the unit tangent `dir` (`⟨dir, p⟩ = 0`).
pub fn travel(p: &Vec3, dir: &Vec3, d: f64) -> Vec3 {
    let (c, s) = (d.cosh(), d.sinh());
    [
        c * p[0] + s * dir[0],
        c * p[1] + s * dir[1],
        c * p[2] + s * dir[2],
    ]
}

/// A geodesic, stored by a unit spacelike normal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Line {
    pub normal: Vec3,
}

impl Line {
    pub fn from_normal(n: &Vec3) -> Result<Self> {
        let q = mink(n, n);
        if !(q > 0.0) || !q.is_finite() {
            return Err(domain("normal is not spacelike"));
        }
        Ok(Self {
            normal: scale(n, 1.0 / q.sqrt()),
        })
    }

    pub fn through_ideal(u: &Vec3, v: &Vec3) -> Result<Self> {
        Self::from_normal(&mink_cross(u, v))
    }

    /// Signed value `⟨n, X⟩`; its arcsinh is the signed distance from `X` to the line.
    pub fn side(&self, x: &Vec3) -> f64 {
        mink(&self.normal, x)
    }

    pub fn distance_to_point(&self, x: &Vec3) -> f64 {
        self.side(x).abs().asinh()
    }

    /// Distance between two lines; zero when they meet or are asymptotic.
    pub fn distance_to_line(&self, other: &Line) -> f64 {
        mink(&self.normal, &other.normal).abs().max(1.0).acosh()
    }

    /// Foot on `self` of the common perpendicular with an ultraparallel `other`.
    pub fn perpendicular_foot(&self, other: &Line) -> Result<Vec3> {
        if mink(&self.normal, &other.normal).abs() <= 1.0 {
            return Err(domain("lines are not ultraparallel"));
        }
        let perp = mink_cross(&self.normal, &other.normal);
        normalize_point(&mink_cross(&self.normal, &perp))
    }

    /// Nearest point of the line to `x`.
    pub fn project(&self, x: &Vec3) -> Result<Vec3> {
        let s = self.side(x);
        let n = &self.normal;
        normalize_point(&[x[0] - s * n[0], x[1] - s * n[1], x[2] - s * n[2]])
    }

    pub fn flipped(&self) -> Line {
        Line {
            normal: scale(&self.normal, -1.0),
        }
    }
}

/// The oriented axis of a hyperbolic element, from repelling to attracting end.
#[derive(Clone, Copy, Debug)]
pub struct Axis {
    pub attracting: Vec3,
    pub repelling: Vec3,
}

impl Axis {
    pub fn of(m: &MobiusTransform) -> Result<Self> {
        let (att, rep) = m.eigenvalues()?;
        Ok(Self {
            attracting: ideal_point(m.eigenvector(att)),
            repelling: ideal_point(m.eigenvector(rep)),
        })
    }

    pub fn line(&self) -> Result<Line> {
        Line::through_ideal(&self.repelling, &self.attracting)
    }

    /// Arc-length coordinate of a point on the axis, increasing towards
    /// the attracting end. Only differences are meaningful.
    pub fn coordinate(&self, x: &Vec3) -> f64 {
        0.5 * (mink(x, &self.repelling) / mink(x, &self.attracting)).ln()
    }

    /// Signed distance from `x` to `y` along the axis.
    pub fn signed_distance(&self, x: &Vec3, y: &Vec3) -> f64 {
        self.coordinate(y) - self.coordinate(x)
    }

    /// The point at signed offset `t` from the axis point `x`.
    pub fn advance(&self, x: &Vec3, t: f64) -> Result<Vec3> {
        // Tangent at x towards the attracting end.
        let a = self.attracting;
        let dir = [
            a[0] / (-mink(x, &a)) - x[0],
            a[1] / (-mink(x, &a)) - x[1],
            a[2] / (-mink(x, &a)) - x[2],
        ];
        let n = mink(&dir, &dir).sqrt();
        normalize_point(&travel(x, &scale(&dir, 1.0 / n), t))
    }
}

/// Element mapping the upper half-plane point `z` to `i`.
pub fn recentering(z: Complex64) -> MobiusTransform {
    let s = z.im.sqrt();
    MobiusTransform {
        a: 1.0 / s,
        b: -z.re / s,
        c: 0.0,
        d: s,
    }
}
