//! Order-by-order formal linearization of a gluing-form map.
//!
//! At each order `n` the two coefficient equations
//! `(λⁿqᵏ − 1)·c_{n,k} = −a_{n,k}` and `(λⁿqᵏ − 1)·d_{n,k} = −b_{n,k}`
//! are solved on the stored bands. A divisor below the floor with a
//! non-negligible numerator is an obstruction, reported structurally rather
//! than as a failure; a resonant index with vanishing numerator gets the
//! coefficient 0. Each elimination step conjugates the full map exactly
//! through the global truncation order, so stabilization of low orders can be
//! asserted as an equality rather than an estimate.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::fibered::{compose, invert, FiberedMap, MapForm};
use crate::series::{BiSeries, LaurentPoly};
use crate::uniform::resonance::{divisor, min_candidate_divisor};
use crate::Result;

/// Solver thresholds. All CLI-overridable.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SolverOptions {
    /// Divisors below this modulus count as resonant.
    pub divisor_floor: f64,
    /// Numerators below this modulus count as zero (resonant but
    /// unobstructed).
    pub zero_tol: f64,
    /// Divisors below this modulus (but above the floor) flag the order as
    /// numerically delicate without aborting.
    pub warn_threshold: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            divisor_floor: 1e-12,
            zero_tol: 1e-13,
            warn_threshold: 1e-8,
        }
    }
}

/// A resonant index blocking the order-`n` step.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Obstruction {
    pub order: usize,
    pub exponent: i64,
    pub numerator_abs: f64,
    pub divisor_abs: f64,
}

/// Per-order diagnostics of a linearization run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrderDiagnostics {
    pub order: usize,
    /// Smallest divisor modulus over the candidate exponents at this order.
    pub min_divisor: f64,
    /// Union support hull of the solved slices, if the order was solved.
    pub band: Option<(i64, i64)>,
    /// Largest solved coefficient modulus at this order.
    pub max_coeff: f64,
    pub near_resonant: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LinearizationResult {
    /// The accumulated normalized change of variable (partial when
    /// obstructed).
    pub map: FiberedMapDto,
    pub per_order: Vec<OrderDiagnostics>,
    pub obstructions: Vec<Obstruction>,
    pub orders_solved: usize,
    #[serde(skip)]
    pub steps: Vec<FiberedMap>,
}

// The composite map is exposed both as a typed value and in the JSON result.
// FiberedMapDto is the serialization face of FiberedMap; conversion is exact.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FiberedMapDto {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub q: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lambda: Option<[f64; 2]>,
    pub z_pert: BiSeries,
    pub r_pert: BiSeries,
}

impl FiberedMapDto {
    pub fn from_map(m: &FiberedMap) -> Self {
        let (kind, q, lambda) = match m.form() {
            MapForm::Normalized => ("normalized".to_string(), None, None),
            MapForm::Gluing { q, lambda } => (
                "gluing".to_string(),
                Some([q.re, q.im]),
                Some([lambda.re, lambda.im]),
            ),
        };
        FiberedMapDto {
            kind,
            q,
            lambda,
            z_pert: m.z_pert().clone(),
            r_pert: m.r_pert().clone(),
        }
    }

    pub fn to_map(&self) -> Result<FiberedMap> {
        match self.kind.as_str() {
            "normalized" => FiberedMap::normalized(self.z_pert.clone(), self.r_pert.clone()),
            "gluing" => {
                let q = self
                    .q
                    .ok_or_else(|| Error::Invalid("gluing map requires q".into()))?;
                let l = self
                    .lambda
                    .ok_or_else(|| Error::Invalid("gluing map requires lambda".into()))?;
                FiberedMap::gluing(
                    Complex64::new(q[0], q[1]),
                    Complex64::new(l[0], l[1]),
                    self.z_pert.clone(),
                    self.r_pert.clone(),
                )
            }
            other => Err(Error::Invalid(format!("unknown map kind `{other}`"))),
        }
    }
}

impl LinearizationResult {
    pub fn composite(&self) -> Result<FiberedMap> {
        self.map.to_map()
    }

    pub fn fully_solved(&self) -> bool {
        self.obstructions.is_empty()
    }
}

/// Outcome of one homological solve.
pub enum HomologicalSolution {
    /// Slices solving the order-`n` equations: `(r-side, z-side)`.
    Solved {
        r_slice: LaurentPoly,
        z_slice: LaurentPoly,
    },
    Obstructed(Vec<Obstruction>),
}

/// Solve the order-`n` coefficient equations on the bands of the right-hand
/// sides. `rhs_r` is the order-`n` slice of the r-side perturbation, `rhs_z`
/// of the z-side.
pub fn solve_homological(
    rhs_r: &LaurentPoly,
    rhs_z: &LaurentPoly,
    lambda: Complex64,
    q: Complex64,
    n: usize,
    opts: &SolverOptions,
) -> Result<HomologicalSolution> {
    if !(rhs_r.is_finite() && rhs_z.is_finite()) || !(lambda.is_finite() && q.is_finite()) {
        return Err(Error::NonFinite {
            op: "solve_homological",
        });
    }
    let mut obstructions = Vec::new();
    let mut solve_slice = |rhs: &LaurentPoly| -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (k, num) in rhs.iter() {
            if num == Complex64::ZERO {
                continue;
            }
            let div = divisor(lambda, q, n as u32, k);
            let div_abs = div.norm();
            if div_abs < opts.divisor_floor {
                if num.norm() > opts.zero_tol {
                    obstructions.push(Obstruction {
                        order: n,
                        exponent: k,
                        numerator_abs: num.norm(),
                        divisor_abs: div_abs,
                    });
                }
                // Resonant index with vanishing numerator: any value solves
                // the equation; take 0.
                continue;
            }
            out = out.add(&LaurentPoly::monomial(k, -num / div));
        }
        out
    };
    let r_slice = solve_slice(rhs_r);
    let z_slice = solve_slice(rhs_z);
    if obstructions.is_empty() {
        Ok(HomologicalSolution::Solved { r_slice, z_slice })
    } else {
        obstructions.sort_by_key(|o| (o.order, o.exponent));
        Ok(HomologicalSolution::Obstructed(obstructions))
    }
}

/// Outcome of one elimination step.
pub enum StepOutcome {
    Step {
        /// The order-`n` change of variable (support only at `r`-order `n`).
        change: FiberedMap,
        /// The conjugated map, linear through order `n`, exact through the
        /// global truncation order.
        next: FiberedMap,
    },
    Obstructed(Vec<Obstruction>),
}

/// Kill the order-`n` slice of a gluing-form map: extract the order-`n`
/// right-hand sides, solve, and conjugate by the resulting change of
/// variable.
///
/// Precondition: the map is already linear through order `n − 1` (slices
/// `1..n` of both perturbations vanish below `1e-10 ·` coefficient scale).
pub fn eliminate_order(f: &FiberedMap, n: usize, opts: &SolverOptions) -> Result<StepOutcome> {
    let (q, lambda) = match f.form() {
        MapForm::Gluing { q, lambda } => (q, lambda),
        MapForm::Normalized => {
            return Err(Error::NotNormalized {
                op: "eliminate_order (expects gluing form)",
            })
        }
    };
    let n_max = f.n_max();
    let scale = f.max_abs().max(1.0);
    for m in 1..n {
        let mag = f.z_pert().slice(m).max_abs().max(f.r_pert().slice(m).max_abs());
        if mag > 1e-10 * scale {
            return Err(Error::NotLinearBelow {
                order: n,
                found: m,
                magnitude: mag,
            });
        }
    }

    let rhs_r = f.r_pert().slice(n);
    let rhs_z = f.z_pert().slice(n);
    let (r_slice, z_slice) = match solve_homological(rhs_r, rhs_z, lambda, q, n, opts)? {
        HomologicalSolution::Solved { r_slice, z_slice } => (r_slice, z_slice),
        HomologicalSolution::Obstructed(o) => return Ok(StepOutcome::Obstructed(o)),
    };

    let mut z_pert = BiSeries::zero(n_max);
    let mut r_pert = BiSeries::zero(n_max);
    z_pert.set_slice(n, z_slice);
    r_pert.set_slice(n, r_slice);
    let change = FiberedMap::normalized(z_pert, r_pert)?;

    let conj = compose(&compose(&change, f, n_max)?, &invert(&change, n_max)?, n_max)?;
    // Orders ≤ n of the conjugated map vanish identically in exact
    // arithmetic; verify the rounding residue and pin them to zero so band
    // bookkeeping stays exact for later orders.
    let mut next = conj;
    {
        let mut zp = next.z_pert().clone();
        let mut rp = next.r_pert().clone();
        for m in 1..=n {
            let mag = zp.slice(m).max_abs().max(rp.slice(m).max_abs());
            if mag > 1e-8 * scale.powi(3).max(1.0) {
                return Err(Error::NotLinearBelow {
                    order: n + 1,
                    found: m,
                    magnitude: mag,
                });
            }
            zp.set_slice(m, LaurentPoly::zero());
            rp.set_slice(m, LaurentPoly::zero());
        }
        next = FiberedMap::gluing(q, lambda, zp, rp)?;
    }
    Ok(StepOutcome::Step { change, next })
}

/// Run the elimination through order `n_max` and accumulate the composite
/// change of variable. Obstructed runs return the partial composite through
/// the last solved order together with the obstruction list.
pub fn linearize(f: &FiberedMap, n_max: usize, opts: &SolverOptions) -> Result<LinearizationResult> {
    let (q, lambda) = match f.form() {
        MapForm::Gluing { q, lambda } => (q, lambda),
        MapForm::Normalized => {
            return Err(Error::NotNormalized {
                op: "linearize (expects gluing form)",
            })
        }
    };
    let mut current = f.truncated(n_max);
    let mut steps: Vec<FiberedMap> = Vec::new();
    let mut composite = FiberedMap::identity(n_max);
    let mut per_order = Vec::with_capacity(n_max);
    let mut obstructions = Vec::new();
    let mut orders_solved = 0;

    for n in 1..=n_max {
        let (min_div, _) = min_candidate_divisor(lambda, q, n as u32);
        if !obstructions.is_empty() {
            // Already blocked; report the candidate divisor diagnostics only.
            per_order.push(OrderDiagnostics {
                order: n,
                min_divisor: min_div,
                band: None,
                max_coeff: 0.0,
                near_resonant: min_div < opts.warn_threshold,
            });
            continue;
        }
        match eliminate_order(&current, n, opts)? {
            StepOutcome::Step { change, next } => {
                let band_z = change.z_pert().band(n);
                let band_r = change.r_pert().band(n);
                let band = match (band_z, band_r) {
                    (Some((a, b)), Some((c, d))) => Some((a.min(c), b.max(d))),
                    (Some(b), None) | (None, Some(b)) => Some(b),
                    (None, None) => None,
                };
                let max_coeff = change.max_abs();
                composite = compose(&change, &composite, n_max)?;
                steps.push(change);
                current = next;
                orders_solved = n;
                per_order.push(OrderDiagnostics {
                    order: n,
                    min_divisor: min_div,
                    band,
                    max_coeff,
                    near_resonant: min_div < opts.warn_threshold,
                });
            }
            StepOutcome::Obstructed(mut o) => {
                obstructions.append(&mut o);
                per_order.push(OrderDiagnostics {
                    order: n,
                    min_divisor: min_div,
                    band: None,
                    max_coeff: 0.0,
                    near_resonant: min_div < opts.warn_threshold,
                });
            }
        }
    }

    Ok(LinearizationResult {
        map: FiberedMapDto::from_map(&composite),
        per_order,
        obstructions,
        orders_solved,
        steps,
    })
}

/// Conjugacy defect of a candidate change of variable: conjugate `f` by `g`,
/// subtract the linear map, and return the largest coefficient modulus of the
/// difference on the full components (so z-side terms carry the factor `q`
/// and r-side terms the factor `λ`) over `r`-orders `1..=n_max`.
pub fn conjugacy_residual(f: &FiberedMap, g: &FiberedMap, n_max: usize) -> Result<f64> {
    if !g.is_normalized() {
        return Err(Error::NotNormalized {
            op: "conjugacy_residual",
        });
    }
    let (q, lambda) = match f.form() {
        MapForm::Gluing { q, lambda } => (q, lambda),
        MapForm::Normalized => {
            return Err(Error::NotNormalized {
                op: "conjugacy_residual (expects gluing form f)",
            })
        }
    };
    let h = compose(&compose(g, f, n_max)?, &invert(g, n_max)?, n_max)?;
    let mut worst: f64 = 0.0;
    for n in 1..=n_max {
        worst = worst.max(q.norm() * h.z_pert().slice(n).max_abs());
        worst = worst.max(lambda.norm() * h.r_pert().slice(n).max_abs());
    }
    Ok(worst)
}

/// Stabilization / uniqueness report: the composite is rebuilt under two
/// bracketings of the step composition and re-derived with over-computation
/// to `n_max + 2`; all order-`≤ n_max` coefficients must agree.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StabilizationReport {
    pub ok: bool,
    pub schedule_diff: f64,
    pub overcompute_diff: f64,
    pub tolerance: f64,
    /// Where the worst disagreement sits: (series, r-order).
    pub worst_at: Option<(String, usize)>,
}

pub fn stabilization_check(
    f: &FiberedMap,
    n_max: usize,
    opts: &SolverOptions,
) -> Result<StabilizationReport> {
    let tolerance = 1e-11;
    let base = linearize(f, n_max, opts)?;
    let g_fold_left = base.composite()?;

    // Right-to-left refold of the same steps: ((g_N ∘ g_{N-1}) ∘ …) ∘ g_1.
    let mut g_fold_right = FiberedMap::identity(n_max);
    for step in base.steps.iter().rev() {
        g_fold_right = compose(&g_fold_right, step, n_max)?;
    }

    // Over-computation: run to n_max + 2 and compare the low orders.
    let extended = linearize(&f.truncated(n_max + 2), n_max + 2, opts)?;
    let g_ext = extended.composite()?.truncated(n_max);

    let mut worst_at = None;
    let mut schedule_diff: f64 = 0.0;
    let mut overcompute_diff: f64 = 0.0;
    for n in 1..=n_max {
        let cases = [
            (
                "z_pert",
                g_fold_left.z_pert().slice(n),
                g_fold_right.z_pert().slice(n),
                true,
            ),
            (
                "r_pert",
                g_fold_left.r_pert().slice(n),
                g_fold_right.r_pert().slice(n),
                true,
            ),
            (
                "z_pert",
                g_fold_left.z_pert().slice(n),
                g_ext.z_pert().slice(n),
                false,
            ),
            (
                "r_pert",
                g_fold_left.r_pert().slice(n),
                g_ext.r_pert().slice(n),
                false,
            ),
        ];
        for (name, a, b, is_schedule) in cases {
            let d = a.sub(b).max_abs();
            let acc = if is_schedule {
                &mut schedule_diff
            } else {
                &mut overcompute_diff
            };
            if d > *acc {
                *acc = d;
                if d > tolerance {
                    worst_at = Some((name.to_string(), n));
                }
            }
        }
    }
    Ok(StabilizationReport {
        ok: schedule_diff <= tolerance && overcompute_diff <= tolerance,
        schedule_diff,
        overcompute_diff,
        tolerance,
        worst_at,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn opts() -> SolverOptions {
        SolverOptions::default()
    }

    #[test]
    fn zero_rhs_solves_to_zero() {
        let sol = solve_homological(
            &LaurentPoly::zero(),
            &LaurentPoly::zero(),
            c(3.0, 0.0),
            c(0.5, 0.0),
            1,
            &opts(),
        )
        .unwrap();
        match sol {
            HomologicalSolution::Solved { r_slice, z_slice } => {
                assert!(r_slice.is_zero() && z_slice.is_zero());
            }
            _ => panic!("expected solution"),
        }
    }

    #[test]
    fn hand_coefficient() {
        // λ = 3, q = 0.5, n = 1, a₁ = z: c₁,₁ = −1/(3·0.5 − 1) = −2.
        let rhs = LaurentPoly::monomial(1, Complex64::ONE);
        let sol = solve_homological(
            &rhs,
            &LaurentPoly::zero(),
            c(3.0, 0.0),
            c(0.5, 0.0),
            1,
            &opts(),
        )
        .unwrap();
        match sol {
            HomologicalSolution::Solved { r_slice, z_slice } => {
                assert!((r_slice.coeff(1) - c(-2.0, 0.0)).norm() < 1e-15);
                assert!(z_slice.is_zero());
                assert_eq!(r_slice.band(), rhs.band());
            }
            _ => panic!("expected solution"),
        }
    }

    #[test]
    fn exact_resonance_obstructs() {
        // λ = q³: divisor at (n, k) = (1, −3) is exactly zero.
        let q = c(0.5, 0.2);
        let lambda = q * q * q;
        let rhs = LaurentPoly::monomial(-3, Complex64::ONE);
        let sol = solve_homological(
            &rhs,
            &LaurentPoly::zero(),
            lambda,
            q,
            1,
            &opts(),
        )
        .unwrap();
        match sol {
            HomologicalSolution::Obstructed(list) => {
                assert_eq!(list.len(), 1);
                assert_eq!(list[0].order, 1);
                assert_eq!(list[0].exponent, -3);
                assert!(list[0].divisor_abs < 1e-13);
            }
            _ => panic!("expected obstruction"),
        }
    }

    #[test]
    fn resonant_zero_numerator_is_unobstructed() {
        let q = c(0.5, 0.2);
        let lambda = q * q * q;
        // Numerator at the resonant index is below zero_tol.
        let rhs = LaurentPoly::monomial(-3, c(1e-15, 0.0))
            .add(&LaurentPoly::monomial(1, Complex64::ONE));
        let sol =
            solve_homological(&rhs, &LaurentPoly::zero(), lambda, q, 1, &opts()).unwrap();
        match sol {
            HomologicalSolution::Solved { r_slice, .. } => {
                assert_eq!(r_slice.coeff(-3), Complex64::ZERO);
                assert!(r_slice.coeff(1).norm() > 0.0);
            }
            _ => panic!("zero numerator at resonance must not obstruct"),
        }
    }

    fn single_term_map(n_max: usize) -> FiberedMap {
        // a₁ = z on the r side, b = 0, λ = 3, q = 0.5.
        let a = BiSeries::monomial(n_max, 1, 1, Complex64::ONE).unwrap();
        FiberedMap::gluing(c(0.5, 0.0), c(3.0, 0.0), BiSeries::zero(n_max), a).unwrap()
    }

    #[test]
    fn eliminate_order_kills_the_slice() {
        let f = single_term_map(3);
        match eliminate_order(&f, 1, &opts()).unwrap() {
            StepOutcome::Step { change, next } => {
                assert!((change.r_pert().slice(1).coeff(1) - c(-2.0, 0.0)).norm() < 1e-14);
                assert!(change.z_pert().is_zero());
                assert!(next.r_pert().slice(1).max_abs() < 1e-12);
                assert!(next.z_pert().slice(1).max_abs() < 1e-12);
                // The change of variable has support only at its own order.
                for m in 0..=3usize {
                    if m != 1 {
                        assert!(change.r_pert().slice(m).is_zero());
                        assert!(change.z_pert().slice(m).is_zero());
                    }
                }
            }
            _ => panic!("expected step"),
        }
    }

    #[test]
    fn eliminate_order_rejects_unreduced_input() {
        // Slice 1 still alive: asking for the order-2 step is inconsistent.
        let f = single_term_map(3);
        assert!(matches!(
            eliminate_order(&f, 2, &opts()),
            Err(Error::NotLinearBelow { found: 1, .. })
        ));
    }

    #[test]
    fn already_linear_map_gives_identity_steps() {
        let f = FiberedMap::linear(c(0.5, 0.1), c(1.2, -0.3), 4).unwrap();
        let res = linearize(&f, 4, &opts()).unwrap();
        assert!(res.fully_solved());
        assert_eq!(res.orders_solved, 4);
        let g = res.composite().unwrap();
        assert!(g.max_abs() == 0.0);
        assert!(res.per_order.iter().all(|d| d.max_coeff == 0.0));
        assert_eq!(res.per_order.len(), 4);
    }

    #[test]
    fn single_term_run_stabilizes_and_conjugates() {
        let f = single_term_map(4);
        let res = linearize(&f, 4, &opts()).unwrap();
        assert!(res.fully_solved());
        let g = res.composite().unwrap();
        // The order-1 slice of the composite equals the first step's exactly.
        assert_eq!(
            g.r_pert().slice(1),
            res.steps[0].r_pert().slice(1)
        );
        let resid = conjugacy_residual(&f, &g, 4).unwrap();
        assert!(resid < 1e-10, "residual {resid}");
    }

    #[test]
    fn residual_of_identity_change() {
        // h = f itself; subtracting the linear part leaves q·b and λ·a terms.
        // With b₁ = z and a = 0 the worst coefficient is |q|.
        let q = c(0.5, 0.0);
        let b = BiSeries::monomial(3, 1, 1, Complex64::ONE).unwrap();
        let f = FiberedMap::gluing(q, c(3.0, 0.0), b, BiSeries::zero(3)).unwrap();
        let r = conjugacy_residual(&f, &FiberedMap::identity(3), 3).unwrap();
        assert!((r - q.norm()).abs() < 1e-14);

        let f_lin = FiberedMap::linear(q, c(3.0, 0.0), 3).unwrap();
        let r0 = conjugacy_residual(&f_lin, &FiberedMap::identity(3), 3).unwrap();
        assert_eq!(r0, 0.0);
    }

    #[test]
    fn five_torsion_obstructs_at_order_five() {
        use std::f64::consts::TAU;
        let tau = c(0.1, 1.2);
        let q = (Complex64::new(0.0, TAU) * tau).exp();
        let t = (c(2.0, 0.0) + tau * 3.0) / 5.0;
        let lambda = (Complex64::new(0.0, TAU) * t).exp();
        // Dense generic bands |k| ≤ 3 at every order.
        let n_max = 6;
        let mut terms_a = Vec::new();
        let mut terms_b = Vec::new();
        for n in 1..=n_max {
            for k in -3..=3 {
                let phase = (n * 7 + (k + 3) as usize) as f64;
                terms_a.push((n, k, c(0.3 + 0.05 * phase.sin(), 0.1 * phase.cos())));
                terms_b.push((n, k, c(0.2 * phase.cos(), -0.15 + 0.04 * phase.sin())));
            }
        }
        let a = BiSeries::from_terms(n_max, &terms_a).unwrap();
        let b = BiSeries::from_terms(n_max, &terms_b).unwrap();
        let f = FiberedMap::gluing(q, lambda, b, a).unwrap();
        let res = linearize(&f, n_max, &opts()).unwrap();
        assert!(!res.fully_solved());
        assert_eq!(res.orders_solved, 4);
        assert_eq!(res.obstructions[0].order, 5);
        assert_eq!(res.obstructions[0].exponent, -3);
        assert!(res.obstructions[0].divisor_abs < 1e-12);
        // Diagnostics keep one entry per requested order even past the
        // obstruction.
        assert_eq!(res.per_order.len(), n_max);
        assert!(res.per_order[5].band.is_none());
    }

    #[test]
    fn functional_equation_pointwise() {
        // λⁿ c̃ₙ(q z) − c̃ₙ(z) + aₙ(z) = 0 sampled on a circle.
        let lambda = c(1.7, 0.6);
        let q = c(0.35, 0.15);
        let n = 3;
        let rhs = LaurentPoly::monomial(-2, c(0.7, -0.3))
            .add(&LaurentPoly::monomial(0, c(-1.1, 0.2)))
            .add(&LaurentPoly::monomial(2, c(0.4, 0.9)));
        let sol = solve_homological(&rhs, &LaurentPoly::zero(), lambda, q, n, &opts()).unwrap();
        let slice = match sol {
            HomologicalSolution::Solved { r_slice, .. } => r_slice,
            _ => panic!(),
        };
        let lam_n = lambda.powi(n as i32);
        for idx in 0..64 {
            let theta = TAU_SAMPLE * idx as f64 / 64.0;
            let z = Complex64::from_polar(1.0, theta);
            let lhs = lam_n * slice.eval(q * z).unwrap() - slice.eval(z).unwrap()
                + rhs.eval(z).unwrap();
            assert!(lhs.norm() < 1e-10, "defect {}", lhs.norm());
        }
    }

    const TAU_SAMPLE: f64 = std::f64::consts::TAU;
}
