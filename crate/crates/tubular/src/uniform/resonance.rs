//! Small-divisor arithmetic on the multiplier pair `(λ, q)`.
//!
//! The divisor at order `n` and Laurent exponent `k` is `λⁿ qᵏ − 1`. Only two
//! values of `k` can make its modulus small: `|λⁿ qᵏ| = 1` forces
//! `k = −n·log|λ|/log|q|`, so the floor and ceiling of that ratio are the only
//! candidates at each order. All quantities are evaluated through reduced
//! logarithms so that `λⁿ qᵏ` near `1` never loses the cancellation digits.

use num_complex::Complex64;
use std::f64::consts::TAU;

/// `λⁿ qᵏ − 1` computed in log space with the angle reduced mod 2π before
/// exponentiating, exact to roundoff even when the result is ~1e-15.
pub fn divisor(lambda: Complex64, q: Complex64, n: u32, k: i64) -> Complex64 {
    let log = lambda.ln() * n as f64 + q.ln() * k as f64;
    let re = log.re;
    let im = log.im - TAU * (log.im / TAU).round();
    // exp(re + i·im) − 1 with both parts small-safe.
    let expm1_re = re.exp_m1();
    let (sin, cos) = im.sin_cos();
    let re_out = expm1_re * cos - 2.0 * (im / 2.0).sin().powi(2);
    let im_out = (1.0 + expm1_re) * sin;
    Complex64::new(re_out, im_out)
}

/// The only Laurent exponents at which the order-`n` divisor can be small:
/// floor and ceiling of `−n·log|λ|/log|q|`.
pub fn candidate_exponents(lambda: Complex64, q: Complex64, n: u32) -> (i64, i64) {
    let ratio = -(n as f64) * lambda.norm().ln() / q.norm().ln();
    (ratio.floor() as i64, ratio.ceil() as i64)
}

/// Minimum divisor modulus over the order-`n` candidates, with its exponent.
pub fn min_candidate_divisor(lambda: Complex64, q: Complex64, n: u32) -> (f64, i64) {
    let (k0, k1) = candidate_exponents(lambda, q, n);
    let d0 = divisor(lambda, q, n, k0).norm();
    if k1 == k0 {
        return (d0, k0);
    }
    let d1 = divisor(lambda, q, n, k1).norm();
    if d1 < d0 {
        (d1, k1)
    } else {
        (d0, k0)
    }
}

/// Smallest `ℓ ≤ n_max` with `λ^ℓ qᵏ = 1` (within `tol`) for some integer
/// `k`, searched over the candidate exponents only.
pub fn torsion_order_lq(
    lambda: Complex64,
    q: Complex64,
    n_max: u32,
    tol: f64,
) -> Option<(u32, i64)> {
    for ell in 1..=n_max {
        let (d, k) = min_candidate_divisor(lambda, q, ell);
        if d < tol {
            return Some((ell, k));
        }
    }
    None
}
