//! Weierstrass ℘ and ℘′ by `q`-series, and the inverse of the elliptic
//! logarithm.
//!
//! These run on the multiplicative model `u = e^{2πiz}`, `q = e^{2πiτ}`, and
//! converge geometrically once `z` is reduced to the centered cell. They form
//! a computational path independent of the path-integration in
//! [`super::elog`], which makes the pair usable as mutual cross-checks, and
//! they let a caller manufacture a curve point with a prescribed logarithm.

use num_complex::Complex64;
use std::f64::consts::{PI, TAU};

use super::curve::{CurvePoint, WeierstrassCurve};
use super::lattice::LatticeTau;
use super::pic::lattice_coords;
use crate::error::Error;
use crate::Result;

fn reduce_centered(z: Complex64, tau: Complex64) -> Complex64 {
    let (x, y) = lattice_coords(z, tau);
    Complex64::new(x - x.round(), 0.0) + tau * (y - y.round())
}

/// ℘ for the lattice `ℤ + τℤ`.
pub fn weierstrass_p(tau: Complex64, z: Complex64) -> Result<Complex64> {
    let z = reduce_centered(z, tau);
    if z.norm() < 1e-14 {
        return Err(Error::Invalid("weierstrass_p at a lattice point".into()));
    }
    let q = (Complex64::new(0.0, TAU) * tau).exp();
    let u = (Complex64::new(0.0, TAU) * z).exp();
    let sq = |w: Complex64| {
        let d = Complex64::ONE - w;
        w / (d * d)
    };
    let mut acc = Complex64::new(1.0 / 12.0, 0.0) + sq(u);
    let mut qn = Complex64::ONE;
    for _ in 1..=200 {
        qn *= q;
        let term = sq(qn * u) + sq(qn / u) - sq(qn) * 2.0;
        acc += term;
        if term.norm() < 1e-17 * (1.0 + acc.norm()) {
            break;
        }
    }
    let two_pi_i = Complex64::new(0.0, TAU);
    Ok(acc * two_pi_i * two_pi_i)
}

/// ℘′ for the lattice `ℤ + τℤ`.
pub fn weierstrass_p_prime(tau: Complex64, z: Complex64) -> Result<Complex64> {
    let z = reduce_centered(z, tau);
    if z.norm() < 1e-14 {
        return Err(Error::Invalid(
            "weierstrass_p_prime at a lattice point".into(),
        ));
    }
    let q = (Complex64::new(0.0, TAU) * tau).exp();
    let u = (Complex64::new(0.0, TAU) * z).exp();
    let cb = |w: Complex64| {
        let d = Complex64::ONE - w;
        w * (Complex64::ONE + w) / (d * d * d)
    };
    let mut acc = cb(u);
    let mut qn = Complex64::ONE;
    for _ in 1..=200 {
        qn *= q;
        let term = cb(qn * u) - cb(qn / u);
        acc += term;
        if term.norm() < 1e-17 * (1.0 + acc.norm()) {
            break;
        }
    }
    let two_pi_i = Complex64::new(0.0, TAU);
    Ok(acc * two_pi_i * two_pi_i * two_pi_i)
}

/// Invariants `g₂, g₃` of `ℤ + τℤ`.
pub fn lattice_invariants(tau: Complex64) -> (Complex64, Complex64) {
    let q = (Complex64::new(0.0, TAU) * tau).exp();
    let g2 = super::lattice::eisenstein_e4(q) * (4.0 * PI.powi(4) / 3.0);
    let g3 = super::lattice::eisenstein_e6(q) * (8.0 * PI.powi(6) / 27.0);
    (g2, g3)
}

/// The curve point with a prescribed normalized logarithm: the inverse of
/// [`super::elog::elliptic_log`] on the fundamental cell.
pub fn point_from_log(
    curve: &WeierstrassCurve,
    lattice: &LatticeTau,
    u: Complex64,
) -> Result<CurvePoint> {
    let z = reduce_centered(u, lattice.tau);
    if z.norm() < 1e-13 {
        return Ok(CurvePoint::Infinity);
    }
    let scale = 2.0 / lattice.omega1;
    let x = weierstrass_p(lattice.tau, z)? * scale * scale;
    let y = weierstrass_p_prime(lattice.tau, z)? * scale * scale * scale / 2.0;
    let residual = curve.residual(x, y);
    if residual > 1e-6 {
        return Err(Error::PeriodValidation { residual });
    }
    Ok(CurvePoint::Affine { x, y })
}
