//! Fibered maps of `ℂ^× × disk` preserving the `r = 0` curve.
//!
//! Two shapes occur. A *normalized* map fixes the curve pointwise:
//! `(z, r) ↦ (z(1 + U(z,r)), r(1 + V(z,r)))`. A *gluing* map carries the
//! linear part `(qz, λr)`: `(z, r) ↦ (qz(1 + U(z,r)), λr(1 + V(z,r)))`.
//! In both cases the perturbations `U`, `V` are [`BiSeries`] whose order-0
//! slice vanishes, so the order-`n` slice of the stored series is exactly the
//! order-`n` perturbation, with no off-by-one between the map and its series.
//!
//! Composition substitutes one map into the other exactly through a requested
//! `r`-order: powers `(base·z·(1+U))^k` are expanded with generalized binomial
//! weights (equivalently, a finite Taylor expansion in `z`), and only finitely
//! many terms contribute per `r`-order because the perturbations carry a
//! factor of `r`.

use num_complex::Complex64;

use crate::error::Error;
use crate::series::{powi, BiSeries};
use crate::Result;

/// Linear part of a fibered map.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MapForm {
    /// Identity linear part; the map fixes the central curve pointwise.
    Normalized,
    /// Linear part `(qz, λr)` with `0 < |q| < 1`, `λ ≠ 0`.
    Gluing { q: Complex64, lambda: Complex64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct FiberedMap {
    form: MapForm,
    /// Perturbation of the z-component: z-part is `scale_z · z · (1 + z_pert)`.
    z_pert: BiSeries,
    /// Perturbation of the r-component: r-part is `scale_r · r · (1 + r_pert)`.
    r_pert: BiSeries,
}

impl FiberedMap {
    pub fn identity(n_max: usize) -> Self {
        FiberedMap {
            form: MapForm::Normalized,
            z_pert: BiSeries::zero(n_max),
            r_pert: BiSeries::zero(n_max),
        }
    }

    pub fn linear(q: Complex64, lambda: Complex64, n_max: usize) -> Result<Self> {
        Self::gluing(q, lambda, BiSeries::zero(n_max), BiSeries::zero(n_max))
    }

    /// Normalized-form map from its two perturbation series.
    pub fn normalized(z_pert: BiSeries, r_pert: BiSeries) -> Result<Self> {
        validate_perts(&z_pert, &r_pert)?;
        Ok(FiberedMap {
            form: MapForm::Normalized,
            z_pert,
            r_pert,
        })
    }

    /// Gluing-form map `(qz(1 + z_pert), λr(1 + r_pert))`.
    ///
    /// In gluing data terms, `r_pert` holds `Σ_{n≥1} a_n(z) rⁿ` and `z_pert`
    /// holds `Σ_{n≥1} b_n(z) rⁿ`.
    pub fn gluing(
        q: Complex64,
        lambda: Complex64,
        z_pert: BiSeries,
        r_pert: BiSeries,
    ) -> Result<Self> {
        if !(q.norm() > 0.0 && q.norm() < 1.0) {
            return Err(Error::Invalid(format!(
                "gluing multiplier q must satisfy 0 < |q| < 1, got |q| = {}",
                q.norm()
            )));
        }
        if lambda == Complex64::ZERO || !lambda.is_finite() {
            return Err(Error::Invalid("lambda must be nonzero and finite".into()));
        }
        validate_perts(&z_pert, &r_pert)?;
        Ok(FiberedMap {
            form: MapForm::Gluing { q, lambda },
            z_pert,
            r_pert,
        })
    }

    pub fn form(&self) -> MapForm {
        self.form
    }

    pub fn is_normalized(&self) -> bool {
        matches!(self.form, MapForm::Normalized)
    }

    /// Multipliers of the linear part, `(1, 1)` for normalized maps.
    pub fn scales(&self) -> (Complex64, Complex64) {
        match self.form {
            MapForm::Normalized => (Complex64::ONE, Complex64::ONE),
            MapForm::Gluing { q, lambda } => (q, lambda),
        }
    }

    pub fn z_pert(&self) -> &BiSeries {
        &self.z_pert
    }

    pub fn r_pert(&self) -> &BiSeries {
        &self.r_pert
    }

    pub fn n_max(&self) -> usize {
        self.z_pert.n_max().min(self.r_pert.n_max())
    }

    pub fn truncated(&self, n_max: usize) -> FiberedMap {
        FiberedMap {
            form: self.form,
            z_pert: self.z_pert.truncated(n_max),
            r_pert: self.r_pert.truncated(n_max),
        }
    }

    /// Largest perturbation coefficient modulus.
    pub fn max_abs(&self) -> f64 {
        self.z_pert.max_abs().max(self.r_pert.max_abs())
    }

    /// Apply the truncated map at a point.
    pub fn apply(&self, z: Complex64, r: Complex64) -> Result<(Complex64, Complex64)> {
        let (sz, sr) = self.scales();
        let zv = sz * z * (Complex64::ONE + self.z_pert.eval(z, r)?);
        let rv = sr * r * (Complex64::ONE + self.r_pert.eval(z, r)?);
        Ok((zv, rv))
    }
}

fn validate_perts(z_pert: &BiSeries, r_pert: &BiSeries) -> Result<()> {
    if !z_pert.slice(0).is_zero() || !r_pert.slice(0).is_zero() {
        return Err(Error::Invalid(
            "perturbation series must have an empty order-0 slice".into(),
        ));
    }
    if !(z_pert.is_finite() && r_pert.is_finite()) {
        return Err(Error::NonFinite { op: "fibered map" });
    }
    Ok(())
}

/// `outer ∘ inner` through `r`-order `n_max`, exact at the level of stored
/// coefficients. Exactly one of the maps may be in gluing form (the composite
/// inherits its multipliers); gluing ∘ gluing is not supported.
pub fn compose(outer: &FiberedMap, inner: &FiberedMap, n_max: usize) -> Result<FiberedMap> {
    let form = match (outer.form, inner.form) {
        (MapForm::Normalized, MapForm::Normalized) => MapForm::Normalized,
        (MapForm::Normalized, g @ MapForm::Gluing { .. }) => g,
        (g @ MapForm::Gluing { .. }, MapForm::Normalized) => g,
        (MapForm::Gluing { .. }, MapForm::Gluing { .. }) => return Err(Error::GluingCompose),
    };
    let (ci, ei) = inner.scales();

    // Powers of the inner perturbations, truncated at n_max. Both have empty
    // order-0 slices, so the j-th power has r-order at least j.
    let p = inner.z_pert.truncated(n_max);
    let q = inner.r_pert.truncated(n_max);
    let mut p_pow = Vec::with_capacity(n_max + 1);
    p_pow.push(BiSeries::one(n_max));
    for j in 1..=n_max {
        let next = p_pow[j - 1].mul(&p, n_max)?;
        p_pow.push(next);
    }
    let one_plus_q = BiSeries::one(n_max).add(&q);
    let mut opq_pow = Vec::with_capacity(n_max + 1);
    opq_pow.push(BiSeries::one(n_max));
    for n in 1..=n_max {
        let next = opq_pow[n - 1].mul(&one_plus_q, n_max)?;
        opq_pow.push(next);
    }

    let s_sub = substitute(&outer.z_pert, ci, ei, &p_pow, &opq_pow, n_max)?;
    let t_sub = substitute(&outer.r_pert, ci, ei, &p_pow, &opq_pow, n_max)?;

    // 1 + new_pert = (1 + inner_pert)(1 + substituted outer pert).
    let z_pert = p.add(&s_sub).add(&p.mul(&s_sub, n_max)?);
    let r_pert = q.add(&t_sub).add(&q.mul(&t_sub, n_max)?);
    if !(z_pert.is_finite() && r_pert.is_finite()) {
        return Err(Error::NonFinite { op: "compose" });
    }
    Ok(FiberedMap {
        form,
        z_pert,
        r_pert,
    })
}

/// Evaluate a stored perturbation series `S` at the image point of the inner
/// map: `S(c_i z (1 + P), e_i r (1 + Q))` through `r`-order `n_max`.
fn substitute(
    s: &BiSeries,
    ci: Complex64,
    ei: Complex64,
    p_pow: &[BiSeries],
    opq_pow: &[BiSeries],
    n_max: usize,
) -> Result<BiSeries> {
    let mut acc = BiSeries::zero(n_max);
    for n in 0..=s.n_max().min(n_max) {
        let sn = s.slice(n);
        if sn.is_zero() {
            continue;
        }
        let e_n = powi(ei, n as i64);
        for j in 0..=(n_max - n) {
            let w = sn.binomial_weighted(j, ci);
            if w.is_zero() {
                continue;
            }
            // term = W_{n,j}(z) · P^j · (1 + Q)^n · e_i^n · r^n
            let mut term = p_pow[j].mul_poly(&w);
            if n > 0 {
                term = term.mul(&opq_pow[n], n_max)?;
                term = term.shift_r(n, n_max);
            }
            acc = acc.add(&term.scale(e_n));
        }
    }
    Ok(acc)
}

/// Compositional inverse of a normalized-form map through `r`-order `n_max`,
/// solved order by order; `compose(m, invert(m), N)` is the identity through
/// order `N` up to rounding, and the truncated-jet group structure makes the
/// result two-sided.
pub fn invert(m: &FiberedMap, n_max: usize) -> Result<FiberedMap> {
    if !m.is_normalized() {
        return Err(Error::NotNormalized { op: "invert" });
    }
    let mut inv = FiberedMap::identity(n_max);
    for n in 1..=n_max {
        // With slices < n already correct, the order-n defect of m ∘ inv
        // depends on the order-n slice of inv with unit coefficient.
        let comp = compose(m, &inv, n)?;
        let dz = comp.z_pert.slice(n).clone();
        let dr = comp.r_pert.slice(n).clone();
        if !dz.is_zero() {
            inv.z_pert.set_slice(n, inv.z_pert.slice(n).sub(&dz));
        }
        if !dr.is_zero() {
            inv.r_pert.set_slice(n, inv.r_pert.slice(n).sub(&dr));
        }
    }
    Ok(inv)
}
