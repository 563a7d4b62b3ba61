//! Deterministic seeded generation of gluing data, multipliers, curves and
//! points. Every consumer (CLI, scans, tests, examples) derives its stream
//! from a `(seed, stream)` pair, so results are reproducible independently of
//! thread count or call order.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

use crate::fibered::FiberedMap;
use crate::series::BiSeries;
use crate::uniform::curve::WeierstrassCurve;
use crate::uniform::resonance::torsion_order_lq;

/// Independent generator for a given seed and stream index.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&stream.to_le_bytes());
    key[16..24].copy_from_slice(b"tubular.");
    key[24..32].copy_from_slice(b"datagen.");
    ChaCha8Rng::from_seed(key)
}

fn unit_box(rng: &mut ChaCha8Rng, scale: f64) -> Complex64 {
    if scale == 0.0 {
        return Complex64::ZERO;
    }
    Complex64::new(
        rng.gen_range(-scale..scale),
        rng.gen_range(-scale..scale),
    )
}

/// `q` with modulus uniform in `[r_min, r_max]` and uniform argument.
pub fn random_q(rng: &mut ChaCha8Rng, r_min: f64, r_max: f64) -> Complex64 {
    let r = rng.gen_range(r_min..=r_max);
    let theta = rng.gen_range(0.0..TAU);
    Complex64::from_polar(r, theta)
}

/// A multiplier `λ = e^{2πit}` with `t` uniform in the fundamental cell of
/// `ℤ + τℤ` (τ from `q`), resampled until the pair `(λ, q)` passes a torsion
/// scan through `n_max` at tolerance `tol`.
pub fn random_nontorsion_lambda(
    rng: &mut ChaCha8Rng,
    q: Complex64,
    n_max: u32,
    tol: f64,
) -> Complex64 {
    let log_q = q.ln();
    loop {
        let x: f64 = rng.gen_range(0.0..1.0);
        let y: f64 = rng.gen_range(0.0..1.0);
        // t = x + y·τ with 2πiτ = log q, so 2πi t = 2πi x + y·log q.
        let lambda = (Complex64::new(0.0, TAU * x) + log_q * y).exp();
        if torsion_order_lq(lambda, q, n_max, tol).is_none() {
            return lambda;
        }
    }
}

/// Perturbation series with dense bands `|k| ≤ band` at orders `1..=orders`,
/// coefficients with components uniform in `[−scale, scale]`.
pub fn random_band_series(
    rng: &mut ChaCha8Rng,
    orders: usize,
    band: i64,
    scale: f64,
) -> BiSeries {
    let mut terms = Vec::new();
    for n in 1..=orders {
        for k in -band..=band {
            terms.push((n, k, unit_box(rng, scale)));
        }
    }
    BiSeries::from_terms(orders, &terms).expect("finite terms")
}

/// Gluing-form map with seeded perturbation data.
pub fn random_gluing_map(
    rng: &mut ChaCha8Rng,
    q: Complex64,
    lambda: Complex64,
    orders: usize,
    band: i64,
    scale: f64,
) -> FiberedMap {
    let r_pert = random_band_series(rng, orders, band, scale);
    let z_pert = random_band_series(rng, orders, band, scale);
    FiberedMap::gluing(q, lambda, z_pert, r_pert).expect("valid multipliers")
}

/// Smooth random curve with coefficients in the unit box, resampled until
/// comfortably nonsingular.
pub fn random_curve(rng: &mut ChaCha8Rng) -> WeierstrassCurve {
    loop {
        let a = unit_box(rng, 1.5);
        let b = unit_box(rng, 1.5);
        if let Ok(curve) = WeierstrassCurve::new(a, b) {
            if curve.relative_discriminant() > 1e-3 {
                return curve;
            }
        }
    }
}

/// Random affine point: random `x`, `y` a square root of the right-hand side
/// with a random sign. Exactly on the curve up to rounding.
pub fn random_point_on(
    rng: &mut ChaCha8Rng,
    curve: &WeierstrassCurve,
) -> crate::uniform::curve::CurvePoint {
    let x = unit_box(rng, 2.0);
    let mut y = curve.rhs(x).sqrt();
    if rng.gen_bool(0.5) {
        y = -y;
    }
    crate::uniform::curve::CurvePoint::Affine { x, y }
}
