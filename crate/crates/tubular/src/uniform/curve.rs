//! Weierstrass curves `y² = x³ + Ax + B` over ℂ, their points, and the
//! chord-tangent group law.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::Result;

/// Relative discriminant floor below which a curve is rejected as singular.
pub const SMOOTHNESS_TOL: f64 = 1e-12;
/// Default relative on-curve tolerance for supplied points.
pub const ON_CURVE_TOL: f64 = 1e-9;
/// Default chordal separation below which configuration points collide.
pub const SEPARATION_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeierstrassCurve {
    pub a: Complex64,
    pub b: Complex64,
}

impl WeierstrassCurve {
    pub fn new(a: Complex64, b: Complex64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) {
            return Err(Error::NonFinite {
                op: "WeierstrassCurve::new",
            });
        }
        let curve = WeierstrassCurve { a, b };
        let rel = curve.relative_discriminant();
        if !(rel > SMOOTHNESS_TOL) {
            return Err(Error::SingularCurve { disc: rel });
        }
        Ok(curve)
    }

    pub fn discriminant(&self) -> Complex64 {
        (self.a * self.a * self.a * 4.0 + self.b * self.b * 27.0) * -16.0
    }

    /// `|4A³ + 27B²|` relative to `max(|A|³, |B|²)` (1 when both vanish is
    /// impossible: that case returns 0 and is rejected).
    pub fn relative_discriminant(&self) -> f64 {
        let num = (self.a.powu(3) * 4.0 + self.b.powu(2) * 27.0).norm();
        let scale = self.a.norm().powi(3).max(self.b.norm().powi(2));
        if scale == 0.0 {
            0.0
        } else {
            num / scale
        }
    }

    /// Right-hand side `x³ + Ax + B`.
    pub fn rhs(&self, x: Complex64) -> Complex64 {
        ((x * x) + self.a) * x + self.b
    }

    /// Relative on-curve residual of an affine pair.
    pub fn residual(&self, x: Complex64, y: Complex64) -> f64 {
        let scale = 1.0f64
            .max(x.norm().powi(3))
            .max(y.norm().powi(2))
            .max(self.a.norm() * x.norm())
            .max(self.b.norm());
        (y * y - self.rhs(x)).norm() / scale
    }

    pub fn contains(&self, p: &CurvePoint, tol: f64) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => self.residual(*x, *y) <= tol,
        }
    }

    pub fn check_point(&self, p: &CurvePoint) -> Result<()> {
        match p {
            CurvePoint::Infinity => Ok(()),
            CurvePoint::Affine { x, y } => {
                let residual = self.residual(*x, *y);
                if residual <= ON_CURVE_TOL {
                    Ok(())
                } else {
                    Err(Error::PointOffCurve { residual })
                }
            }
        }
    }

    /// Point with the given x-coordinate and `y = +√(x³ + Ax + B)`
    /// (principal branch).
    pub fn lift_x(&self, x: Complex64) -> CurvePoint {
        CurvePoint::Affine {
            x,
            y: self.rhs(x).sqrt(),
        }
    }

    /// Chord-tangent addition with the point at infinity as identity.
    /// Vertical chords yield infinity; coincidence decisions are made with a
    /// relative tolerance.
    pub fn group_add(&self, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
        let (x1, y1) = match p {
            CurvePoint::Infinity => return q.clone(),
            CurvePoint::Affine { x, y } => (*x, *y),
        };
        let (x2, y2) = match q {
            CurvePoint::Infinity => return p.clone(),
            CurvePoint::Affine { x, y } => (*x, *y),
        };
        let xs = 1.0f64.max(x1.norm()).max(x2.norm());
        let ys = 1.0f64.max(y1.norm()).max(y2.norm());
        let slope = if (x1 - x2).norm() <= 1e-12 * xs {
            if (y1 + y2).norm() <= 1e-10 * ys {
                // Vertical chord (includes doubling a 2-torsion point).
                return CurvePoint::Infinity;
            }
            // Tangent line at the (coinciding) point.
            (x1 * x1 * 3.0 + self.a) / (y1 * 2.0)
        } else {
            (y2 - y1) / (x2 - x1)
        };
        let x3 = slope * slope - x1 - x2;
        let y3 = slope * (x1 - x3) - y1;
        CurvePoint::Affine { x: x3, y: y3 }
    }

    pub fn negate(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::Affine { x: *x, y: -y },
        }
    }

    /// `k`-fold sum by double-and-add (`k` may be negative).
    pub fn multiply(&self, p: &CurvePoint, k: i64) -> CurvePoint {
        if k == 0 {
            return CurvePoint::Infinity;
        }
        let base = if k < 0 { self.negate(p) } else { p.clone() };
        let mut acc = CurvePoint::Infinity;
        let mut cur = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.group_add(&acc, &cur);
            }
            cur = self.group_add(&cur, &cur);
            e >>= 1;
        }
        acc
    }
}

/// A point of the projective cubic: affine `(x, y)` or the flex at infinity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CurvePoint {
    /// Serialized as the string "O".
    Infinity,
    Affine {
        #[serde(with = "crate::cli::complex_pair")]
        x: Complex64,
        #[serde(with = "crate::cli::complex_pair")]
        y: Complex64,
    },
}

impl CurvePoint {
    /// Homogeneous coordinates `[x : y : 1]`, infinity as `[0 : 1 : 0]`.
    pub fn homogeneous(&self) -> [Complex64; 3] {
        match self {
            CurvePoint::Infinity => [Complex64::ZERO, Complex64::ONE, Complex64::ZERO],
            CurvePoint::Affine { x, y } => [*x, *y, Complex64::ONE],
        }
    }

    /// Chordal (projective-angle) distance between homogeneous
    /// representatives: `‖v ∧ w‖ / (‖v‖ ‖w‖)`.
    pub fn chordal_distance(&self, other: &CurvePoint) -> f64 {
        let v = self.homogeneous();
        let w = other.homogeneous();
        let cross = [
            v[1] * w[2] - v[2] * w[1],
            v[2] * w[0] - v[0] * w[2],
            v[0] * w[1] - v[1] * w[0],
        ];
        let c2: f64 = cross.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        let nv = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        let nw = w.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        c2 / (nv * nw)
    }
}

/// Nine pairwise-distinct points on one curve.
#[derive(Clone, Debug)]
pub struct NineConfig {
    points: [CurvePoint; 9],
}

impl NineConfig {
    pub fn new(curve: &WeierstrassCurve, points: [CurvePoint; 9]) -> Result<Self> {
        Self::new_with_tol(curve, points, ON_CURVE_TOL, SEPARATION_TOL)
    }

    pub fn new_with_tol(
        curve: &WeierstrassCurve,
        points: [CurvePoint; 9],
        on_curve_tol: f64,
        separation_tol: f64,
    ) -> Result<Self> {
        for p in &points {
            match p {
                CurvePoint::Infinity => {}
                CurvePoint::Affine { x, y } => {
                    let residual = curve.residual(*x, *y);
                    if residual > on_curve_tol {
                        return Err(Error::PointOffCurve { residual });
                    }
                }
            }
        }
        let mut min_sep = f64::INFINITY;
        for i in 0..9 {
            for j in (i + 1)..9 {
                min_sep = min_sep.min(points[i].chordal_distance(&points[j]));
            }
        }
        if !(min_sep > separation_tol) {
            return Err(Error::PointsNotDistinct { sep: min_sep });
        }
        Ok(NineConfig { points })
    }

    pub fn points(&self) -> &[CurvePoint; 9] {
        &self.points
    }
}
