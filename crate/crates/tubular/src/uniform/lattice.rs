//! Period lattices of Weierstrass curves via the complex AGM.
//!
//! The candidate periods come from the classical AGM formulas on the three
//! root differences; branch ambiguities of the square roots and of the AGM
//! iteration are resolved by brute candidate search, gated by a
//! scale-sensitive validation: the reduced `(τ, ω₁)` must reproduce the curve
//! coefficients through the Eisenstein series `E₄`, `E₆`. That check pins the
//! lattice itself, not only its shape, so a wrong pairing cannot slip
//! through.

use num_complex::Complex64;
use std::f64::consts::{PI, TAU};

use super::curve::WeierstrassCurve;
use crate::error::Error;
use crate::Result;

/// A period lattice presented by a reduced basis: `τ = ω₂/ω₁` lies in the
/// standard fundamental domain and `q = e^{2πiτ}`. Bundle coordinates and
/// elliptic logarithms live in `ℂ/(ℤ + τℤ)` after division by `ω₁`.
#[derive(Clone, Copy, Debug)]
pub struct LatticeTau {
    pub tau: Complex64,
    pub q: Complex64,
    pub omega1: Complex64,
    pub omega2: Complex64,
}

impl LatticeTau {
    /// Lattice `ℤ + τℤ` from a given modulus (reduced first).
    pub fn from_tau(tau: Complex64) -> Result<Self> {
        if !(tau.im > 0.0) {
            return Err(Error::Invalid(
                "tau must lie in the upper half-plane".into(),
            ));
        }
        let (tau_red, omega1, omega2) = reduce_tau(Complex64::ONE, tau);
        Ok(LatticeTau {
            tau: tau_red,
            q: q_from_tau(tau_red),
            omega1,
            omega2,
        })
    }

    /// Is `v` (in the `ω₁`-normalized coordinate) a lattice point of
    /// `ℤ + τℤ` within `tol`?
    pub fn contains_normalized(&self, v: Complex64, tol: f64) -> bool {
        crate::uniform::pic::dist_to_lattice(v, self.tau) < tol
    }
}

pub fn q_from_tau(tau: Complex64) -> Complex64 {
    (Complex64::new(0.0, TAU) * tau).exp()
}

/// Arithmetic-geometric mean with the standard "right choice" of square
/// root branch at each step: pick the root with `|a' − b'| ≤ |a' + b'|`,
/// breaking ties toward `Im(b'/a') > 0`.
pub fn agm(mut a: Complex64, mut b: Complex64) -> Result<Complex64> {
    if a == Complex64::ZERO || b == Complex64::ZERO {
        return Err(Error::AgmDiverged { iters: 0 });
    }
    for _ in 0..64 {
        let am = (a + b) / 2.0;
        let mut gm = (a * b).sqrt();
        let (diff, sum) = ((am - gm).norm(), (am + gm).norm());
        if diff > sum || (diff == sum && (gm / am).im <= 0.0) {
            gm = -gm;
        }
        a = am;
        b = gm;
        if (a - b).norm() <= 1e-15 * a.norm().max(b.norm()) {
            return Ok((a + b) / 2.0);
        }
    }
    Err(Error::AgmDiverged { iters: 64 })
}

/// Roots of the depressed cubic `x³ + a x + b` by Durand–Kerner iteration
/// with Newton polish.
pub fn cubic_roots(a: Complex64, b: Complex64) -> [Complex64; 3] {
    let bound = 1.0 + a.norm().max(b.norm());
    let seed = Complex64::new(0.4, 0.9);
    let mut r = [seed * bound, seed * seed * bound, seed * seed * seed * bound];
    let p = |x: Complex64| (x * x + a) * x + b;
    for _ in 0..200 {
        let mut delta: f64 = 0.0;
        for i in 0..3 {
            let mut denom = Complex64::ONE;
            for j in 0..3 {
                if i != j {
                    denom *= r[i] - r[j];
                }
            }
            let step = p(r[i]) / denom;
            r[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 * bound {
            break;
        }
    }
    // One Newton step each to sharpen.
    for root in &mut r {
        let dp = *root * *root * 3.0 + a;
        if dp.norm() > 0.0 {
            *root -= p(*root) / dp;
        }
    }
    r
}

// --- Eisenstein series -----------------------------------------------------

fn divisor_power_sum(n: usize, e: u32) -> f64 {
    let mut acc = 0.0;
    for d in 1..=n {
        if n % d == 0 {
            acc += (d as f64).powi(e as i32);
        }
    }
    acc
}

/// `E₄(q) = 1 + 240 Σ σ₃(n) qⁿ`.
pub fn eisenstein_e4(q: Complex64) -> Complex64 {
    let mut acc = Complex64::ONE;
    let mut qn = Complex64::ONE;
    for n in 1..=64 {
        qn *= q;
        let term = qn * (240.0 * divisor_power_sum(n, 3));
        acc += term;
        if term.norm() < 1e-18 * acc.norm() {
            break;
        }
    }
    acc
}

/// `E₆(q) = 1 − 504 Σ σ₅(n) qⁿ`.
pub fn eisenstein_e6(q: Complex64) -> Complex64 {
    let mut acc = Complex64::ONE;
    let mut qn = Complex64::ONE;
    for n in 1..=64 {
        qn *= q;
        let term = qn * (504.0 * divisor_power_sum(n, 5));
        acc -= term;
        if term.norm() < 1e-18 * acc.norm() {
            break;
        }
    }
    acc
}

/// Modular `j` from the reduced modulus.
pub fn j_from_tau(tau: Complex64) -> Complex64 {
    let q = q_from_tau(tau);
    let e4 = eisenstein_e4(q);
    let e6 = eisenstein_e6(q);
    let e4c = e4 * e4 * e4;
    e4c * 1728.0 / (e4c - e6 * e6)
}

/// Reduce `τ = ω₂/ω₁` into the fundamental domain, carrying the basis along.
fn reduce_tau(
    mut omega1: Complex64,
    mut omega2: Complex64,
) -> (Complex64, Complex64, Complex64) {
    let mut tau = omega2 / omega1;
    if tau.im < 0.0 {
        omega2 = -omega2;
        tau = -tau;
    }
    for _ in 0..256 {
        let n = tau.re.round();
        if n != 0.0 {
            tau -= Complex64::new(n, 0.0);
            omega2 -= omega1 * n;
        }
        if tau.norm() < 1.0 - 1e-15 {
            // S-move: (ω₁, ω₂) ← (ω₂, −ω₁).
            let t = omega1;
            omega1 = omega2;
            omega2 = -t;
            tau = omega2 / omega1;
        } else {
            break;
        }
    }
    (tau, omega1, omega2)
}

/// Relative defect of the Eisenstein identities for the candidate basis:
/// `(ω₁/2)⁻⁴ · (4π⁴/3) E₄(τ) = −4A` and `(ω₁/2)⁻⁶ · (8π⁶/27) E₆(τ) = −4B`.
fn lattice_defect(curve: &WeierstrassCurve, tau: Complex64, omega1: Complex64) -> f64 {
    let q = q_from_tau(tau);
    let half = omega1 / 2.0;
    let g2 = eisenstein_e4(q) * (4.0 * PI.powi(4) / 3.0) / half.powu(4);
    let g3 = eisenstein_e6(q) * (8.0 * PI.powi(6) / 27.0) / half.powu(6);
    let want_g2 = curve.a * -4.0;
    let want_g3 = curve.b * -4.0;
    let d2 = (g2 - want_g2).norm() / (1.0 + g2.norm() + want_g2.norm());
    let d3 = (g3 - want_g3).norm() / (1.0 + g3.norm() + want_g3.norm());
    d2.max(d3)
}

/// Period lattice of `dx/y` on a smooth Weierstrass curve.
pub fn periods(curve: &WeierstrassCurve) -> Result<LatticeTau> {
    // Normalize the coefficient scale first: (A, B) → (A/s⁴, B/s⁶) scales
    // the periods by s.
    let s = curve
        .a
        .norm()
        .powf(0.25)
        .max(curve.b.norm().powf(1.0 / 6.0))
        .max(1e-8);
    let norm_curve = WeierstrassCurve {
        a: curve.a / s.powi(4),
        b: curve.b / s.powi(6),
    };
    let roots = cubic_roots(norm_curve.a, norm_curve.b);

    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    // AGM candidates over root labelings and square-root branches, each
    // followed by index-2 basis repairs: with conjugate root pairs the naive
    // pairing can produce a half-period or miss a half-sum generator, and the
    // Eisenstein gate decides which repaired basis is the true lattice.
    let mut best_defect = f64::INFINITY;
    let mut best: Option<(Complex64, Complex64, Complex64)> = None;
    'search: for perm in perms {
        let (e1, e2, e3) = (roots[perm[0]], roots[perm[1]], roots[perm[2]]);
        let a = (e1 - e3).sqrt();
        for sign_b in [1.0, -1.0] {
            let b = (e1 - e2).sqrt() * sign_b;
            for sign_c in [1.0, -1.0] {
                let c = (e2 - e3).sqrt() * sign_c;
                let m_re = match agm(a, c) {
                    Ok(m) if m.norm() > 0.0 => m,
                    _ => continue,
                };
                let m_im = match agm(a, b) {
                    Ok(m) if m.norm() > 0.0 => m,
                    _ => continue,
                };
                let w1 = Complex64::new(TAU, 0.0) / m_re;
                let w2 = Complex64::new(0.0, TAU) / m_im;
                let half_sum = (w1 + w2) / 2.0;
                let half_diff = (w1 - w2) / 2.0;
                let variants = [
                    (w1, w2),
                    (half_sum, w2),
                    (w1, half_sum),
                    (half_diff, w2),
                    (w1, half_diff),
                    (w1 / 2.0, w2),
                    (w1, w2 / 2.0),
                    (w1 * 2.0, w2),
                    (w1, w2 * 2.0),
                ];
                for (v1, v2) in variants {
                    if (v2 / v1).im.abs() < 1e-12 {
                        continue;
                    }
                    let (tau, o1, o2) = reduce_tau(v1, v2);
                    let defect = lattice_defect(&norm_curve, tau, o1);
                    if defect < best_defect {
                        best_defect = defect;
                        best = Some((tau, o1, o2));
                        if defect < 1e-12 {
                            break 'search;
                        }
                    }
                }
            }
        }
    }
    // Fallback: the principal-branch AGM can land on a non-principal period
    // combination (observed for conjugate root pairs). Two branch-pair cycle
    // integrals always generate the lattice; compute them directly and gate
    // the same way.
    if best_defect > 1e-8 {
        let p12 =
            super::elog::period_between(&norm_curve, &roots, roots[0], roots[1], 1e-13)?;
        let p23 =
            super::elog::period_between(&norm_curve, &roots, roots[1], roots[2], 1e-13)?;
        let half_sum = (p12 + p23) / 2.0;
        let half_diff = (p12 - p23) / 2.0;
        for (v1, v2) in [
            (p12, p23),
            (half_sum, p23),
            (p12, half_sum),
            (half_diff, p23),
            (p12, half_diff),
        ] {
            if (v2 / v1).im.abs() < 1e-12 {
                continue;
            }
            let (tau, o1, o2) = reduce_tau(v1, v2);
            let defect = lattice_defect(&norm_curve, tau, o1);
            if defect < best_defect {
                best_defect = defect;
                best = Some((tau, o1, o2));
                if defect < 1e-12 {
                    break;
                }
            }
        }
    }

    let (tau, o1, o2) = best.ok_or(Error::PeriodValidation {
        residual: f64::INFINITY,
    })?;
    if best_defect > 1e-8 {
        return Err(Error::PeriodValidation {
            residual: best_defect,
        });
    }
    Ok(LatticeTau {
        tau,
        q: q_from_tau(tau),
        omega1: o1 / s,
        omega2: o2 / s,
    })
}
