//! Sup-based truncated radius estimates for a linearization, annulus
//! handling, upper-semicontinuous grid envelopes, and a demonstrator family
//! separating the sup-based radius from the radius of convergence.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::linearize::LinearizationResult;
use crate::series::SupMode;
use crate::Result;

/// Closed annulus `r_in ≤ |z| ≤ r_out`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Annulus {
    pub r_in: f64,
    pub r_out: f64,
}

impl Annulus {
    pub fn new(r_in: f64, r_out: f64) -> Result<Self> {
        if !(r_in > 0.0 && r_in <= r_out && r_out.is_finite()) {
            return Err(Error::Invalid(format!(
                "invalid annulus [{r_in}, {r_out}]"
            )));
        }
        Ok(Annulus { r_in, r_out })
    }

    pub fn contains_radius(&self, r: f64) -> bool {
        self.r_in <= r && r <= self.r_out
    }
}

/// The working annulus `[|q|/(1+δ), 1+δ]`: contains `|q| ≤ |z| ≤ 1` strictly
/// in its interior for any `δ > 0`.
pub fn default_annulus(q: Complex64, delta: f64) -> Result<Annulus> {
    let qn = q.norm();
    if !(qn > 0.0 && qn < 1.0) {
        return Err(Error::Invalid("default_annulus requires 0 < |q| < 1".into()));
    }
    if !(delta > 0.0) {
        return Err(Error::Invalid(
            "annulus margin delta must be strictly positive".into(),
        ));
    }
    Annulus::new(qn / (1.0 + delta), 1.0 + delta)
}

/// Extended value of the truncated radius: all-zero solved coefficients give
/// an infinite radius.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "RadiusValueRepr", try_from = "RadiusValueRepr")]
pub enum RadiusValue {
    Finite(f64),
    Infinite,
}

impl RadiusValue {
    pub fn as_f64(&self) -> f64 {
        match self {
            RadiusValue::Finite(v) => *v,
            RadiusValue::Infinite => f64::INFINITY,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, RadiusValue::Infinite)
    }

    /// Total order with `Infinite` on top.
    pub fn cmp_value(&self, other: &RadiusValue) -> std::cmp::Ordering {
        self.as_f64().total_cmp(&other.as_f64())
    }
}

impl std::fmt::Display for RadiusValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RadiusValue::Finite(v) => write!(f, "{v:.16e}"),
            RadiusValue::Infinite => write!(f, "inf"),
        }
    }
}

// JSON face: a float, or the string "inf". Never a bare IEEE infinity.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RadiusValueRepr {
    Num(f64),
    Text(String),
}

impl From<RadiusValue> for RadiusValueRepr {
    fn from(v: RadiusValue) -> Self {
        match v {
            RadiusValue::Finite(x) => RadiusValueRepr::Num(x),
            RadiusValue::Infinite => RadiusValueRepr::Text("inf".into()),
        }
    }
}

impl TryFrom<RadiusValueRepr> for RadiusValue {
    type Error = String;
    fn try_from(r: RadiusValueRepr) -> std::result::Result<Self, String> {
        match r {
            RadiusValueRepr::Num(x) if x.is_finite() => Ok(RadiusValue::Finite(x)),
            RadiusValueRepr::Num(_) => Err("non-finite numeric radius".into()),
            RadiusValueRepr::Text(s) if s == "inf" => Ok(RadiusValue::Infinite),
            RadiusValueRepr::Text(s) => Err(format!("unknown radius literal `{s}`")),
        }
    }
}

/// Per-order boundary sups feeding the radius formula.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct OrderSup {
    pub order: usize,
    pub sup_r_pert: f64,
    pub sup_z_pert: f64,
}

/// Truncated sup-based radius: `ρ_N = min over the two series of
/// (sup_{1≤n≤N} sup_{z∈A} |slice_n|^{1/n})⁻¹`, recomputable exactly from the
/// stored per-order sups.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RadiusEstimate {
    pub rho: RadiusValue,
    pub orders_used: usize,
    pub mode: String,
    pub annulus: Annulus,
    pub per_order_sups: Vec<OrderSup>,
}

fn mode_name(mode: SupMode) -> String {
    match mode {
        SupMode::Sample(m) => format!("sample({m})"),
        SupMode::Bound => "bound".to_string(),
    }
}

/// Sup of one slice over the annulus: by the maximum principle for functions
/// holomorphic on the annulus, the two boundary circles suffice.
fn annulus_sup(slice: &crate::series::LaurentPoly, annulus: &Annulus, mode: SupMode) -> f64 {
    slice
        .sup_on_circle(annulus.r_in, mode)
        .max(slice.sup_on_circle(annulus.r_out, mode))
}

/// Recompute the radius from stored per-order sups.
pub fn rho_from_sups(per_order_sups: &[OrderSup]) -> RadiusValue {
    let mut growth: f64 = 0.0;
    for s in per_order_sups {
        let e = 1.0 / s.order as f64;
        growth = growth.max(s.sup_r_pert.powf(e)).max(s.sup_z_pert.powf(e));
    }
    if growth == 0.0 {
        RadiusValue::Infinite
    } else {
        RadiusValue::Finite(1.0 / growth)
    }
}

/// Truncated radius of a (possibly partial) linearization over an annulus.
pub fn truncated_radius(
    result: &LinearizationResult,
    annulus: &Annulus,
    mode: SupMode,
) -> Result<RadiusEstimate> {
    truncated_radius_up_to(result, annulus, mode, result.orders_solved)
}

/// Same, restricted to the first `orders` solved orders (for monotonicity
/// studies).
pub fn truncated_radius_up_to(
    result: &LinearizationResult,
    annulus: &Annulus,
    mode: SupMode,
    orders: usize,
) -> Result<RadiusEstimate> {
    let n_used = orders.min(result.orders_solved);
    if n_used == 0 {
        return Err(Error::NoSolvedOrders);
    }
    let g = result.composite()?;
    let mut per_order_sups = Vec::with_capacity(n_used);
    for n in 1..=n_used {
        per_order_sups.push(OrderSup {
            order: n,
            sup_r_pert: annulus_sup(g.r_pert().slice(n), annulus, mode),
            sup_z_pert: annulus_sup(g.z_pert().slice(n), annulus, mode),
        });
    }
    Ok(RadiusEstimate {
        rho: rho_from_sups(&per_order_sups),
        orders_used: n_used,
        mode: mode_name(mode),
        annulus: *annulus,
        per_order_sups,
    })
}

// ---------------------------------------------------------------------------
// Grids and the usc envelope
// ---------------------------------------------------------------------------

/// Dense row-major rectangular grid.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid2<T> {
    pub nx: usize,
    pub ny: usize,
    data: Vec<T>,
}

impl<T: Clone> Grid2<T> {
    pub fn filled(nx: usize, ny: usize, value: T) -> Self {
        Grid2 {
            nx,
            ny,
            data: vec![value; nx * ny],
        }
    }

    pub fn from_vec(nx: usize, ny: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != nx * ny {
            return Err(Error::Invalid(format!(
                "grid data length {} does not match {nx}×{ny}",
                data.len()
            )));
        }
        Ok(Grid2 { nx, ny, data })
    }

    pub fn get(&self, ix: usize, iy: usize) -> &T {
        &self.data[iy * self.nx + ix]
    }

    pub fn set(&mut self, ix: usize, iy: usize, value: T) {
        self.data[iy * self.nx + ix] = value;
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }
}

/// Replace each masked value by the sup of the nearest unmasked shell:
/// Chebyshev rings expand outward from the masked point until one contains
/// an unmasked value, and the max over that ring's unmasked entries wins.
/// Unmasked entries pass through unchanged.
pub fn usc_envelope(
    values: &Grid2<RadiusValue>,
    mask: &Grid2<bool>,
) -> Result<Grid2<RadiusValue>> {
    if values.nx != mask.nx || values.ny != mask.ny {
        return Err(Error::Invalid("value and mask grids differ in shape".into()));
    }
    if mask.iter().all(|&m| m) {
        return Err(Error::AllMasked);
    }
    let mut out = values.clone();
    let max_ring = values.nx.max(values.ny);
    for iy in 0..values.ny {
        for ix in 0..values.nx {
            if !*mask.get(ix, iy) {
                continue;
            }
            'rings: for ring in 1..=max_ring {
                let mut best: Option<RadiusValue> = None;
                let r = ring as isize;
                for dy in -r..=r {
                    for dx in -r..=r {
                        if dx.abs().max(dy.abs()) != r {
                            continue;
                        }
                        let jx = ix as isize + dx;
                        let jy = iy as isize + dy;
                        if jx < 0 || jy < 0 || jx >= values.nx as isize || jy >= values.ny as isize
                        {
                            continue;
                        }
                        let (jx, jy) = (jx as usize, jy as usize);
                        if *mask.get(jx, jy) {
                            continue;
                        }
                        let v = *values.get(jx, jy);
                        best = Some(match best {
                            None => v,
                            Some(b) => {
                                if v.cmp_value(&b).is_gt() {
                                    v
                                } else {
                                    b
                                }
                            }
                        });
                    }
                }
                if let Some(b) = best {
                    out.set(ix, iy, b);
                    break 'rings;
                }
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Divergence demonstrator
// ---------------------------------------------------------------------------

/// Truncated sup-radius data for the family `Σ_{n} e^{n²t} zⁿ`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct FamilyRadius {
    /// Reciprocal of the largest coefficient modulus through order `n_max`,
    /// in log-domain arithmetic (safe for `Re t > 0`).
    pub sup_radius: f64,
    /// Certified lower bound for the true radius from the top half of the
    /// computed orders: reciprocal of the largest `|c_n|^{1/n}` over
    /// `n ∈ [n_max/2, n_max]`.
    pub tail_radius_lower_bound: f64,
}

/// Sup-based radius diagnostics for `f_t(z) = Σ_{n=0}^{n_max} e^{n²t} zⁿ`.
///
/// At `t = 0` the sup radius is 1. For `Re t < 0` it stays pinned at
/// `e^{−Re t}` by the first coefficient while the tail bound grows without
/// bound (the true radius is infinite); for `Re t > 0` it collapses to 0 as
/// the truncation order grows.
pub fn exp_quadratic_radius(t: Complex64, n_max: usize) -> Result<FamilyRadius> {
    if n_max < 4 {
        return Err(Error::Invalid("family radius needs n_max ≥ 4".into()));
    }
    // log |c_n| = n² Re t.
    let mut log_sup = f64::NEG_INFINITY;
    for n in 1..=n_max {
        log_sup = log_sup.max((n * n) as f64 * t.re);
    }
    let mut log_growth_tail = f64::NEG_INFINITY;
    for n in (n_max / 2)..=n_max {
        if n == 0 {
            continue;
        }
        log_growth_tail = log_growth_tail.max(n as f64 * t.re);
    }
    Ok(FamilyRadius {
        sup_radius: (-log_sup).exp(),
        tail_radius_lower_bound: (-log_growth_tail).exp(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibered::FiberedMap;
    use crate::linearize::{linearize, SolverOptions};
    use crate::series::BiSeries;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn default_annulus_brackets_unit_band() {
        let a = default_annulus(c(0.5, 0.0), 0.05).unwrap();
        assert!((a.r_in - 0.5 / 1.05).abs() < 1e-15);
        assert!((a.r_out - 1.05).abs() < 1e-15);
        assert!(a.r_in < 0.5 && a.r_out > 1.0);
        assert!(default_annulus(c(0.5, 0.0), 0.0).is_err());
    }

    #[test]
    fn zero_data_has_infinite_radius() {
        let f = FiberedMap::linear(c(0.5, 0.0), c(3.0, 0.0), 4).unwrap();
        let res = linearize(&f, 4, &SolverOptions::default()).unwrap();
        let a = default_annulus(c(0.5, 0.0), 0.05).unwrap();
        let est = truncated_radius(&res, &a, SupMode::Bound).unwrap();
        assert!(est.rho.is_infinite());
    }

    #[test]
    fn single_order_hand_value() {
        // λ = 3, q = 0.5, a₁ = z: solved coefficient −2z; in bound mode on
        // [0.47619, 1.05] the sup is 2·1.05 = 2.1 and ρ = 1/2.1.
        let a = BiSeries::monomial(1, 1, 1, Complex64::ONE).unwrap();
        let f = FiberedMap::gluing(c(0.5, 0.0), c(3.0, 0.0), BiSeries::zero(1), a).unwrap();
        let res = linearize(&f, 1, &SolverOptions::default()).unwrap();
        let ann = default_annulus(c(0.5, 0.0), 0.05).unwrap();
        let est = truncated_radius(&res, &ann, SupMode::Bound).unwrap();
        match est.rho {
            RadiusValue::Finite(v) => assert!((v - 1.0 / 2.1).abs() < 1e-12, "rho {v}"),
            _ => panic!("expected finite"),
        }
        // Recomputability.
        assert_eq!(est.rho, rho_from_sups(&est.per_order_sups));
    }

    #[test]
    fn mode_bracket_and_monotonicity() {
        let mut terms_a = Vec::new();
        let mut terms_b = Vec::new();
        for n in 1..=6usize {
            for k in -2..=2i64 {
                let s = (n as f64 * 1.3 + k as f64 * 0.7).sin();
                terms_a.push((n, k, c(0.4 * s, 0.2 - 0.1 * s)));
                terms_b.push((n, k, c(-0.3 * s, 0.25 * s)));
            }
        }
        let a = BiSeries::from_terms(6, &terms_a).unwrap();
        let b = BiSeries::from_terms(6, &terms_b).unwrap();
        let q = c(0.45, 0.1);
        let f = FiberedMap::gluing(q, c(0.9, 0.35), b, a).unwrap();
        let res = linearize(&f, 6, &SolverOptions::default()).unwrap();
        assert!(res.fully_solved());
        let ann = default_annulus(q, 0.05).unwrap();

        let sample = truncated_radius(&res, &ann, SupMode::Sample(256)).unwrap();
        let bound = truncated_radius(&res, &ann, SupMode::Bound).unwrap();
        assert!(bound.rho.as_f64() <= sample.rho.as_f64() + 1e-15);

        // ρ is nonincreasing in the number of orders used.
        let mut prev = f64::INFINITY;
        for orders in 1..=6 {
            let est =
                truncated_radius_up_to(&res, &ann, SupMode::Sample(128), orders).unwrap();
            assert!(est.rho.as_f64() <= prev + 1e-15);
            prev = est.rho.as_f64();
        }
    }

    #[test]
    fn envelope_trivial_cases() {
        let values = Grid2::from_vec(
            3,
            1,
            vec![
                RadiusValue::Finite(0.0),
                RadiusValue::Finite(1.0),
                RadiusValue::Finite(2.0),
            ],
        )
        .unwrap();
        let none_masked = Grid2::filled(3, 1, false);
        assert_eq!(usc_envelope(&values, &none_masked).unwrap(), values);

        // Masked middle point takes the sup of its neighbors, not an average.
        let mut mask = Grid2::filled(3, 1, false);
        mask.set(1, 0, true);
        let env = usc_envelope(&values, &mask).unwrap();
        assert_eq!(*env.get(1, 0), RadiusValue::Finite(2.0));

        let all = Grid2::filled(3, 1, true);
        assert!(matches!(usc_envelope(&values, &all), Err(Error::AllMasked)));
    }

    #[test]
    fn envelope_idempotent_and_monotone() {
        let mut mask = Grid2::filled(4, 3, false);
        mask.set(2, 1, true);
        mask.set(3, 2, true);
        let mut values = Grid2::filled(4, 3, RadiusValue::Finite(1.0));
        values.set(0, 0, RadiusValue::Infinite);
        values.set(1, 2, RadiusValue::Finite(5.0));
        let e1 = usc_envelope(&values, &mask).unwrap();
        let e2 = usc_envelope(&e1, &mask).unwrap();
        assert_eq!(e1, e2);

        // Grid-wise monotone: raising an input never lowers an output.
        let mut raised = values.clone();
        raised.set(1, 1, RadiusValue::Finite(9.0));
        let e3 = usc_envelope(&raised, &mask).unwrap();
        for iy in 0..3 {
            for ix in 0..4 {
                assert!(e3.get(ix, iy).as_f64() >= e1.get(ix, iy).as_f64());
            }
        }
    }

    #[test]
    fn family_radius_values() {
        let at0 = exp_quadratic_radius(Complex64::ZERO, 20).unwrap();
        assert!((at0.sup_radius - 1.0).abs() < 1e-12);

        let neg = exp_quadratic_radius(c(-1.0, 0.0), 20).unwrap();
        assert!((neg.sup_radius - std::f64::consts::E).abs() < 1e-9);
        assert!(neg.tail_radius_lower_bound >= (10.0f64).exp() - 1e-6);

        let pos = exp_quadratic_radius(c(0.1, 0.0), 30).unwrap();
        assert!(pos.sup_radius < 1e-6, "sup radius {}", pos.sup_radius);

        assert!(exp_quadratic_radius(Complex64::ZERO, 3).is_err());
    }

    #[test]
    fn radius_value_serialization() {
        let inf = serde_json::to_string(&RadiusValue::Infinite).unwrap();
        assert_eq!(inf, "\"inf\"");
        let fin = serde_json::to_string(&RadiusValue::Finite(0.5)).unwrap();
        assert_eq!(fin, "0.5");
        let back: RadiusValue = serde_json::from_str("\"inf\"").unwrap();
        assert!(back.is_infinite());
    }
}
