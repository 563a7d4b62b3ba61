//! Shared oracles for the integration suites. Everything here is independent
//! of the library paths it is used to check: plain quadrature, continued
//! fractions, and brute-force enumeration only.

#![allow(dead_code)]

use num_complex::Complex64;

/// Adaptive Simpson quadrature for a smooth real integrand.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: usize,
    ) -> f64 {
        let m = (a + b) / 2.0;
        let (lm, rm) = ((a + m) / 2.0, (m + b) / 2.0);
        let (flm, frm) = (f(lm), f(rm));
        let left = simpson(a, m, fa, flm, fm);
        let right = simpson(m, b, fm, frm, fb);
        if depth > 40 || (left + right - whole).abs() <= 15.0 * tol {
            return left + right + (left + right - whole) / 15.0;
        }
        recurse(f, a, m, fa, flm, fm, left, tol / 2.0, depth + 1)
            + recurse(f, m, b, fm, frm, fb, right, tol / 2.0, depth + 1)
    }
    let m = (a + b) / 2.0;
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(a, b, fa, fm, fb);
    recurse(f, a, b, fa, fm, fb, whole, tol, 0)
}

/// Real period of `y² = x³ - x` by quadrature alone:
/// `2 ∫_1^∞ dx/√(x³ - x) = 4 ∫_0^1 dt/√(1 - t⁴)` (substituting `x = 1/t²`),
/// desingularized at `t = 1` by `t = 1 - s²`.
pub fn lemniscatic_real_period_by_quadrature() -> f64 {
    let integrand = |s: f64| {
        let t = 1.0 - s * s;
        // dt = -2 s ds and 1 - t⁴ = (1-t)(1+t)(1+t²) with 1 - t = s².
        4.0 * 2.0 / ((1.0 + t) * (1.0 + t * t)).sqrt()
    };
    adaptive_simpson(&integrand, 0.0, 1.0, 1e-13)
}

/// `min_{1 ≤ ℓ ≤ n} distance(ℓ·x, ℤ)` via continued-fraction convergents:
/// the running minimum is attained at the largest convergent denominator
/// `≤ n`, and between denominators the record stands.
pub fn best_approximation_distance(x: f64, n: u64) -> f64 {
    // Convergent denominators of x by the standard recurrence.
    let mut a = x.fract();
    let (mut q_prev, mut q_cur) = (0u64, 1u64);
    let mut best_q = 1u64;
    for _ in 0..64 {
        if a.abs() < 1e-15 {
            break;
        }
        a = 1.0 / a;
        let digit = a.floor();
        a -= digit;
        let q_next = (digit as u64)
            .saturating_mul(q_cur)
            .saturating_add(q_prev);
        if q_next > n {
            break;
        }
        q_prev = q_cur;
        q_cur = q_next;
        best_q = q_cur;
    }
    let v = best_q as f64 * x;
    (v - v.round()).abs()
}

/// Brute-force comparison value: `min_{1 ≤ ℓ ≤ n} ‖ℓ x‖` by enumeration.
pub fn brute_force_distance(x: f64, n: u64) -> f64 {
    (1..=n)
        .map(|ell| {
            let v = ell as f64 * x;
            (v - v.round()).abs()
        })
        .fold(f64::INFINITY, f64::min)
}

/// Brjuno partial sum for a real rotation-number-like coordinate on the
/// square lattice, from the continued-fraction oracle.
pub fn brjuno_oracle(x: f64, k_max: u32) -> f64 {
    let mut acc = 0.0;
    for k in 1..=k_max {
        let omega = best_approximation_distance(x, 2u64.pow(k));
        acc += -omega.ln() / 2f64.powi(k as i32);
    }
    acc
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Max-norm distance of two complex numbers relative to their size.
pub fn rel_err(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / (1.0 + a.norm().max(b.norm()))
}
