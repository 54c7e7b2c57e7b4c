use std::ops::{Mul, Neg};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Unit-determinant tolerance accepted before renormalization is considered
/// a repair of a genuinely broken matrix.
pub const DET_TOLERANCE: f64 = 1e-9;

/// Elements with `|trace| <= 2 + HYPERBOLIC_MARGIN` are treated as
/// elliptic or parabolic.
pub const HYPERBOLIC_MARGIN: f64 = 1e-12;

/// A real 2×2 matrix of determinant one, acting on the upper half-plane by
/// `z ↦ (az + b) / (cz + d)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MobiusTransform {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl MobiusTransform {
    pub const IDENTITY: MobiusTransform = MobiusTransform {
        a: 1.0,
        b: 0.0,
        c: 0.0,
        d: 1.0,
    };

    /// Builds a transform, rescaling the entries so the determinant is one.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if !det.is_finite() || det <= 0.0 {
            return Err(domain(format!("determinant {det} is not positive")));
        }
        let s = det.sqrt();
        Ok(Self {
            a: a / s,
            b: b / s,
            c: c / s,
            d: d / s,
        })
    }

    /// `diag(λ, 1/λ)`.
    pub fn diagonal(lambda: f64) -> Self {
        Self {
            a: lambda,
            b: 0.0,
            c: 0.0,
            d: 1.0 / lambda,
        }
    }

    /// Translation by signed distance `t` along the imaginary axis, towards ∞.
    pub fn imaginary_translation(t: f64) -> Self {
        Self::diagonal((t / 2.0).exp())
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn inverse(&self) -> Self {
        Self {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.trace().abs() > 2.0 + HYPERBOLIC_MARGIN
    }

    /// Divides out any determinant drift accumulated by long products.
    pub fn renormalized(&self) -> Self {
        let s = self.det().sqrt();
        Self {
            a: self.a / s,
            b: self.b / s,
            c: self.c / s,
            d: self.d / s,
        }
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        (z * self.a + self.b) / (z * self.c + self.d)
    }

    /// Commutator `x y x⁻¹ y⁻¹`.
    pub fn commutator(x: &Self, y: &Self) -> Self {
        *x * *y * x.inverse() * y.inverse()
    }

    /// Largest entry-wise distance to `other` or to `-other` (equality in PSL(2,R)).
    pub fn projective_distance(&self, other: &Self) -> f64 {
        let plus = (self.a - other.a)
            .abs()
            .max((self.b - other.b).abs())
            .max((self.c - other.c).abs())
            .max((self.d - other.d).abs());
        let minus = (self.a + other.a)
            .abs()
            .max((self.b + other.b).abs())
            .max((self.c + other.c).abs())
            .max((self.d + other.d).abs());
        plus.min(minus)
    }

    /// Eigenvalues `(attracting, repelling)` of a hyperbolic element, the
    /// attracting one having modulus greater than one.
    pub fn eigenvalues(&self) -> Result<(f64, f64)> {
        let t = self.trace();
        if t.abs() <= 2.0 + HYPERBOLIC_MARGIN {
            return Err(Error::NotHyperbolic { trace: t.abs() });
        }
        let disc = (t * t - 4.0).sqrt();
        let big = (t + t.signum() * disc) / 2.0;
        Ok((big, 1.0 / big))
    }

    /// Homogeneous eigenvector `(x, y)` for eigenvalue `lambda`; the fixed
    /// point on the boundary of the upper half-plane is `x / y`.
    pub(crate) fn eigenvector(&self, lambda: f64) -> [f64; 2] {
        let v1 = [self.b, lambda - self.a];
        let v2 = [lambda - self.d, self.c];
        let n1 = v1[0].hypot(v1[1]);
        let n2 = v2[0].hypot(v2[1]);
        if n1 >= n2 {
            [v1[0] / n1, v1[1] / n1]
        } else {
            [v2[0] / n2, v2[1] / n2]
        }
    }

    /// An element of SL(2,R) conjugating `self` to a diagonal matrix whose
    /// attracting fixed point is ∞ and repelling fixed point is 0.
    pub fn axis_normalizer(&self) -> Result<Self> {
        let (att, rep) = self.eigenvalues()?;
        let va = self.eigenvector(att);
        let mut vr = self.eigenvector(rep);
        let mut det = va[0] * vr[1] - vr[0] * va[1];
        if det < 0.0 {
            vr = [-vr[0], -vr[1]];
            det = -det;
        }
        if det < 1e-300 {
            return Err(Error::NotHyperbolic {
                trace: self.trace().abs(),
            });
        }
        // P = [va | vr]; the normalizer is P⁻¹.
        let p = Self::new(va[0], vr[0], va[1], vr[1])?;
        Ok(p.inverse())
    }
}

impl Mul for MobiusTransform {
    type Output = MobiusTransform;

    fn mul(self, o: MobiusTransform) -> MobiusTransform {
        MobiusTransform {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }
}

impl Neg for MobiusTransform {
    type Output = MobiusTransform;

    fn neg(self) -> MobiusTransform {
        MobiusTransform {
            a: -self.a,
            b: -self.b,
            c: -self.c,
            d: -self.d,
        }
    }
}
