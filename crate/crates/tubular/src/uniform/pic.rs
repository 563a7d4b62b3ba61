//! Degree-zero line bundle classes on a uniformized curve and their
//! arithmetic diagnostics.
//!
//! A class is a point of `ℂ/(ℤ + τℤ)` in the logarithm coordinate `t`, with
//! multiplier `λ = e^{2πit}` canonicalized to `|q| < |λ| ≤ 1`. All distances
//! are taken in the flat translation-invariant metric of that torus; any
//! other choice only rescales the small divisors.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use super::curve::{NineConfig, WeierstrassCurve};
use super::elog::elliptic_log;
use super::lattice::LatticeTau;
use super::resonance::{divisor, torsion_order_lq};
use crate::Result;

/// Coefficients below this count as an exact zero in torsion-sensitive sums.
pub const ZERO_TOL: f64 = 1e-13;

/// A degree-zero class, stored by its reduced logarithm coordinate.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Pic0Element {
    /// Reduced representative `t = x + yτ` with `x, y ∈ [0, 1)`.
    #[serde(with = "crate::cli::complex_pair")]
    pub t: Complex64,
    /// `e^{2πit}`, canonically `|q| < |λ| ≤ 1`.
    #[serde(with = "crate::cli::complex_pair")]
    pub lambda: Complex64,
    /// Lattice coordinates of the representative.
    pub coords: (f64, f64),
}

/// Coordinates of `v` in the basis `(1, τ)`.
pub fn lattice_coords(v: Complex64, tau: Complex64) -> (f64, f64) {
    let y = v.im / tau.im;
    let x = v.re - y * tau.re;
    (x, y)
}

fn frac(x: f64) -> f64 {
    let f = x - x.floor();
    // floor can land exactly on 1.0 after rounding for tiny negatives
    if f >= 1.0 {
        0.0
    } else {
        f
    }
}

/// Flat distance from `v` to the lattice `ℤ + τℤ`.
pub fn dist_to_lattice(v: Complex64, tau: Complex64) -> f64 {
    let (x, y) = lattice_coords(v, tau);
    dist_from_coords(frac(x), frac(y), tau)
}

fn dist_from_coords(x: f64, y: f64, tau: Complex64) -> f64 {
    debug_assert!((0.0..1.0).contains(&x) && (0.0..1.0).contains(&y));
    let mut best = f64::INFINITY;
    for mx in [-1.0, 0.0, 1.0] {
        for my in [-1.0, 0.0, 1.0] {
            let d = Complex64::new(x - mx, 0.0) + tau * (y - my);
            best = best.min(d.norm());
        }
    }
    best
}

impl Pic0Element {
    /// Reduce an arbitrary logarithm coordinate into the fundamental cell.
    pub fn from_t(t: Complex64, lattice: &LatticeTau) -> Self {
        let (x, y) = lattice_coords(t, lattice.tau);
        Self::from_coords(frac(x), frac(y), lattice)
    }

    /// Element from fundamental-cell coordinates; `t` and `λ` are derived.
    pub fn from_coords(x: f64, y: f64, lattice: &LatticeTau) -> Self {
        let t_red = Complex64::new(x, 0.0) + lattice.tau * y;
        let lambda = (Complex64::new(0.0, TAU) * t_red).exp();
        Pic0Element {
            t: t_red,
            lambda,
            coords: (x, y),
        }
    }

    /// Re-canonicalize. For coordinates already in `[0, 1)` the fractional
    /// part is the identity, so reducing twice is bit-identical.
    pub fn reduced(&self, lattice: &LatticeTau) -> Self {
        Pic0Element::from_coords(frac(self.coords.0), frac(self.coords.1), lattice)
    }

    /// The class of the `ℓ`-th tensor power.
    pub fn power(&self, ell: i64, lattice: &LatticeTau) -> Self {
        Pic0Element::from_t(self.t * ell as f64, lattice)
    }

    /// Inverse class.
    pub fn inverse(&self, lattice: &LatticeTau) -> Self {
        Pic0Element::from_t(-self.t, lattice)
    }
}

/// Class map of a nine-point configuration: the normal-bundle class of the
/// induced neighborhood, `t ≡ −Σ u(p_j)` with the flex at infinity as the
/// Abel–Jacobi base point.
pub fn chi(
    curve: &WeierstrassCurve,
    lattice: &LatticeTau,
    config: &NineConfig,
) -> Result<Pic0Element> {
    let mut sum = Complex64::ZERO;
    for p in config.points() {
        sum += elliptic_log(curve, lattice, p)?;
    }
    Ok(Pic0Element::from_t(-sum, lattice))
}

/// Smallest torsion order of the class, searched through `n_max` with the
/// floor/ceil candidate trick; `None` for no hit.
pub fn torsion_order(
    class: &Pic0Element,
    lattice: &LatticeTau,
    n_max: u32,
    tol: f64,
) -> Option<(u32, i64)> {
    torsion_order_lq(class.lambda, lattice.q, n_max, tol)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ResonanceEntry {
    pub order: u32,
    pub exponent: i64,
    pub divisor_modulus: f64,
}

/// Pointwise resonance report at a fixed parameter: all candidate hits below
/// `tol` through order `n_max`, plus the effective (minimum) divisor at every
/// order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ResonanceReport {
    pub entries: Vec<ResonanceEntry>,
    pub torsion: Option<(u32, i64)>,
    /// `per_order_min[n-1]` is the minimum candidate divisor modulus at
    /// order `n`.
    pub per_order_min: Vec<f64>,
}

pub fn resonance_scan(
    lambda: Complex64,
    q: Complex64,
    n_max: u32,
    tol: f64,
) -> ResonanceReport {
    let mut entries = Vec::new();
    let mut per_order_min = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let (k0, k1) = super::resonance::candidate_exponents(lambda, q, n);
        let mut order_min = f64::INFINITY;
        let mut ks = vec![k0];
        if k1 != k0 {
            ks.push(k1);
        }
        for k in ks {
            let d = divisor(lambda, q, n, k).norm();
            order_min = order_min.min(d);
            if d < tol {
                entries.push(ResonanceEntry {
                    order: n,
                    exponent: k,
                    divisor_modulus: d,
                });
            }
        }
        per_order_min.push(order_min);
    }
    entries.sort_by_key(|e| (e.order, e.exponent));
    ResonanceReport {
        entries,
        torsion: torsion_order_lq(lambda, q, n_max, tol),
        per_order_min,
    }
}

/// `Ω_n`: minimum flat distance from the trivial class to the first `n`
/// powers of the class. Nonincreasing in `n`; zero exactly on torsion.
pub fn small_divisors(class: &Pic0Element, lattice: &LatticeTau, n: u32) -> f64 {
    small_divisors_table(class, lattice, n)
        .last()
        .copied()
        .unwrap_or(f64::INFINITY)
}

/// The whole table `Ω_1, …, Ω_{n_max}` in one pass.
pub fn small_divisors_table(class: &Pic0Element, lattice: &LatticeTau, n_max: u32) -> Vec<f64> {
    let (x, y) = class.coords;
    let mut out = Vec::with_capacity(n_max as usize);
    let mut running = f64::INFINITY;
    for ell in 1..=n_max as u64 {
        let vx = frac(x * ell as f64);
        let vy = frac(y * ell as f64);
        running = running.min(dist_from_coords(vx, vy, lattice.tau));
        out.push(running);
    }
    out
}

/// Partial Brjuno sum `Σ_{k=1}^{k_max} (−log Ω_{2^k})/2^k`, flagged divergent
/// as soon as some `Ω_{2^k}` hits an exact zero (torsion).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum BrjunoSum {
    Finite { value: f64, terms: Vec<f64> },
    Divergent { at_k: u32 },
}

pub fn brjuno_sum(class: &Pic0Element, lattice: &LatticeTau, k_max: u32) -> BrjunoSum {
    let (x, y) = class.coords;
    let mut running = f64::INFINITY;
    let mut value = 0.0;
    let mut terms = Vec::with_capacity(k_max as usize);
    let mut next_power = 2u64;
    let mut k = 1u32;
    let limit = 2u64.pow(k_max);
    for ell in 1..=limit {
        let vx = frac(x * ell as f64);
        let vy = frac(y * ell as f64);
        running = running.min(dist_from_coords(vx, vy, lattice.tau));
        if ell == next_power {
            if running < ZERO_TOL {
                return BrjunoSum::Divergent { at_k: k };
            }
            let term = -running.ln() / 2f64.powi(k as i32);
            value += term;
            terms.push(term);
            next_power *= 2;
            k += 1;
        }
    }
    BrjunoSum::Finite { value, terms }
}

/// Least-squares fit of the lower envelope `Ω_n ≈ A·n^{−B}` on a log-log
/// scale, with `A` lowered to the largest constant satisfying the bound on
/// the whole sample. `satisfied` is false exactly when an effective zero was
/// hit (the class is torsion within resolution).
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct DiophantineFit {
    pub a_fit: f64,
    pub b_fit: f64,
    pub satisfied: bool,
}

pub fn diophantine_fit(class: &Pic0Element, lattice: &LatticeTau, n_max: u32) -> DiophantineFit {
    let omegas = small_divisors_table(class, lattice, n_max);
    let clean: Vec<(f64, f64)> = omegas
        .iter()
        .enumerate()
        .filter(|(_, &w)| w > ZERO_TOL)
        .map(|(i, &w)| ((i as f64 + 1.0).ln(), w.ln()))
        .collect();
    let hit_zero = clean.len() < omegas.len();
    if clean.len() < 2 {
        return DiophantineFit {
            a_fit: 0.0,
            b_fit: 0.0,
            satisfied: false,
        };
    }
    let n = clean.len() as f64;
    let sx: f64 = clean.iter().map(|p| p.0).sum();
    let sy: f64 = clean.iter().map(|p| p.1).sum();
    let sxx: f64 = clean.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = clean.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    let slope = if denom.abs() > 0.0 {
        (n * sxy - sx * sy) / denom
    } else {
        0.0
    };
    let b_fit = -slope;
    // Largest A with Ω_n ≥ A·n^{−B} over the sample.
    let a_fit = omegas
        .iter()
        .enumerate()
        .filter(|(_, &w)| w > ZERO_TOL)
        .map(|(i, &w)| w * (i as f64 + 1.0).powf(b_fit))
        .fold(f64::INFINITY, f64::min);
    DiophantineFit {
        a_fit: if hit_zero { 0.0 } else { a_fit },
        b_fit,
        satisfied: !hit_zero,
    }
}
