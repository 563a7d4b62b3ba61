//! Property tests for the series kernels, the map algebra, and the
//! reduction/diagnostic layers.

mod common;

use num_complex::Complex64;
use proptest::prelude::*;

use tubular::fibered::{compose, invert, FiberedMap};
use tubular::radius::{usc_envelope, Grid2, RadiusValue};
use tubular::series::{BiSeries, LaurentPoly, SupMode};
use tubular::uniform::lattice::LatticeTau;
use tubular::uniform::pic::{small_divisors_table, Pic0Element};

fn cx() -> impl Strategy<Value = Complex64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| Complex64::new(re, im))
}

fn bi_series(n_max: usize, max_terms: usize) -> impl Strategy<Value = BiSeries> {
    proptest::collection::vec((0..=n_max, -4i64..=4, cx()), 1..=max_terms)
        .prop_map(move |terms| BiSeries::from_terms(n_max, &terms).unwrap())
}

/// Perturbation series: no order-0 slice.
fn pert_series(n_max: usize, max_terms: usize) -> impl Strategy<Value = BiSeries> {
    proptest::collection::vec((1..=n_max, -3i64..=3, cx()), 1..=max_terms)
        .prop_map(move |terms| BiSeries::from_terms(n_max, &terms).unwrap())
}

fn normalized_map(n_max: usize) -> impl Strategy<Value = FiberedMap> {
    (pert_series(n_max, 6), pert_series(n_max, 6))
        .prop_map(|(zp, rp)| FiberedMap::normalized(zp, rp).unwrap())
}

fn rel_bound(series: &[&BiSeries]) -> f64 {
    1.0 + series.iter().map(|s| s.max_abs()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn ring_axioms_hold_to_roundoff(
        a in bi_series(4, 8),
        b in bi_series(4, 8),
        cc in bi_series(4, 8),
    ) {
        let n = 4;
        // Associativity and commutativity of +.
        let ab_c = a.add(&b).add(&cc);
        let a_bc = a.add(&b.add(&cc));
        prop_assert!(ab_c.max_diff(&a_bc) <= 1e-12 * rel_bound(&[&a, &b, &cc]));
        prop_assert!(a.add(&b).max_diff(&b.add(&a)) == 0.0);

        // Associativity of the truncated product.
        let left = a.mul(&b, n).unwrap().mul(&cc, n).unwrap();
        let right = a.mul(&b.mul(&cc, n).unwrap(), n).unwrap();
        let scale = rel_bound(&[&a, &b, &cc]).powi(3);
        prop_assert!(left.max_diff(&right) <= 1e-12 * scale);

        // Distributivity.
        let expand = a.mul(&b.add(&cc), n).unwrap();
        let sum = a.mul(&b, n).unwrap().add(&a.mul(&cc, n).unwrap());
        prop_assert!(expand.max_diff(&sum) <= 1e-12 * scale);

        // Identities.
        prop_assert!(a.mul(&BiSeries::one(n), n).unwrap().max_diff(&a.truncated(n)) == 0.0);
        prop_assert!(a.add(&BiSeries::zero(n)).max_diff(&a.truncated(n)) == 0.0);
    }

    #[test]
    fn mul_band_is_minkowski_sum(
        a in bi_series(3, 6),
        b in bi_series(3, 6),
    ) {
        let prod = a.mul(&b, 3).unwrap();
        for n in 0..=3usize {
            // Expected hull: min/max over contributing band pairs.
            let mut hull: Option<(i64, i64)> = None;
            for i in 0..=n {
                let (x, y) = (a.band(i), b.band(n - i));
                if let (Some((alo, ahi)), Some((blo, bhi))) = (x, y) {
                    let (lo, hi) = (alo + blo, ahi + bhi);
                    hull = Some(match hull {
                        None => (lo, hi),
                        Some((l, h)) => (l.min(lo), h.max(hi)),
                    });
                }
            }
            // The computed band may only shrink from the hull through exact
            // numeric cancellation at the edges; with generic random
            // coefficients it must match exactly.
            prop_assert_eq!(prod.band(n), hull);
        }
    }

    #[test]
    fn sup_modes_are_ordered(
        slice in proptest::collection::vec((-4i64..=4, cx()), 1..=6),
        radius in 0.3f64..1.5,
        m in 4usize..64,
    ) {
        let mut p = LaurentPoly::zero();
        for (k, v) in slice {
            p = p.add(&LaurentPoly::monomial(k, v));
        }
        let s1 = p.sup_on_circle(radius, SupMode::Sample(m));
        let s2 = p.sup_on_circle(radius, SupMode::Sample(2 * m));
        let bound = p.sup_on_circle(radius, SupMode::Bound);
        let slack = 1e-13 * (1.0 + bound);
        prop_assert!(s1 <= s2 + slack);
        prop_assert!(s1 <= bound + slack);
        prop_assert!(s2 <= bound + slack);
    }

    #[test]
    fn series_json_round_trip(a in bi_series(4, 10)) {
        let text = serde_json::to_string(&a).unwrap();
        let back: BiSeries = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(a, back);
    }

    #[test]
    fn compose_is_associative(
        f in normalized_map(4),
        g in normalized_map(4),
        h in normalized_map(4),
    ) {
        let n = 4;
        let left = compose(&compose(&f, &g, n).unwrap(), &h, n).unwrap();
        let right = compose(&f, &compose(&g, &h, n).unwrap(), n).unwrap();
        let scale = (1.0 + f.max_abs().max(g.max_abs()).max(h.max_abs())).powi(8);
        let dz = left.z_pert().max_diff(right.z_pert());
        let dr = left.r_pert().max_diff(right.r_pert());
        prop_assert!(dz.max(dr) <= 1e-10 * scale, "diff {} scale {}", dz.max(dr), scale);
    }

    #[test]
    fn invert_is_two_sided(m in normalized_map(5)) {
        let n = 5;
        let inv = invert(&m, n).unwrap();
        let scale = (1.0 + m.max_abs()).powi(8);
        let right = compose(&m, &inv, n).unwrap();
        let left = compose(&inv, &m, n).unwrap();
        prop_assert!(right.max_abs() <= 1e-10 * scale);
        prop_assert!(left.max_abs() <= 1e-10 * scale);
    }

    #[test]
    fn pic_reduction_is_idempotent(
        re in -5.0f64..5.0,
        im in -5.0f64..5.0,
        tau_re in -0.5f64..0.5,
        tau_im in 1.0f64..1.8,
    ) {
        let lat = LatticeTau::from_tau(Complex64::new(tau_re, tau_im)).unwrap();
        let e1 = Pic0Element::from_t(Complex64::new(re, im), &lat).reduced(&lat);
        let e2 = e1.reduced(&lat);
        prop_assert_eq!(e1.t, e2.t);
        prop_assert_eq!(e1.lambda, e2.lambda);
        prop_assert_eq!(e1.coords, e2.coords);
        // Canonical window.
        prop_assert!(e1.coords.0 >= 0.0 && e1.coords.0 < 1.0);
        prop_assert!(e1.coords.1 >= 0.0 && e1.coords.1 < 1.0);
        prop_assert!(e1.lambda.norm() <= 1.0 + 1e-12);
        prop_assert!(e1.lambda.norm() > lat.q.norm() - 1e-12);
    }

    #[test]
    fn small_divisors_nonincreasing_and_symmetric(
        x in 0.0f64..1.0,
        y in 0.0f64..1.0,
        tau_im in 1.0f64..1.6,
    ) {
        let lat = LatticeTau::from_tau(Complex64::new(0.1, tau_im)).unwrap();
        let e = Pic0Element::from_coords(x, y, &lat);
        let table = small_divisors_table(&e, &lat, 40);
        for w in table.windows(2) {
            prop_assert!(w[1] <= w[0] + 1e-15);
        }
        let inv = e.inverse(&lat);
        let table_inv = small_divisors_table(&inv, &lat, 40);
        for (a, b) in table.iter().zip(&table_inv) {
            prop_assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn usc_envelope_idempotent_and_order_preserving(
        values in proptest::collection::vec(0.0f64..10.0, 12),
        mask_bits in proptest::collection::vec(any::<bool>(), 12),
        bumps in proptest::collection::vec(0.0f64..5.0, 12),
    ) {
        // 4×3 grid; keep at least one unmasked cell.
        let mut mask_bits = mask_bits;
        mask_bits[0] = false;
        let grid = Grid2::from_vec(4, 3, values.iter().map(|&v| RadiusValue::Finite(v)).collect()).unwrap();
        let mask = Grid2::from_vec(4, 3, mask_bits).unwrap();
        let e1 = usc_envelope(&grid, &mask).unwrap();
        let e2 = usc_envelope(&e1, &mask).unwrap();
        prop_assert_eq!(&e1, &e2);

        let raised = Grid2::from_vec(
            4,
            3,
            values.iter().zip(&bumps).map(|(&v, &b)| RadiusValue::Finite(v + b)).collect(),
        )
        .unwrap();
        let e3 = usc_envelope(&raised, &mask).unwrap();
        for iy in 0..3 {
            for ix in 0..4 {
                prop_assert!(e3.get(ix, iy).as_f64() >= e1.get(ix, iy).as_f64() - 1e-15);
            }
        }
    }
}

// Deterministic (non-proptest) cross-checks that belong with the properties.

#[test]
fn eval_consistency_between_map_and_series() {
    // Applying a composition pointwise agrees with composing then applying.
    let zp = BiSeries::from_terms(4, &[(1, 1, common::c(0.11, -0.07)), (2, -2, common::c(0.05, 0.02))])
        .unwrap();
    let rp = BiSeries::from_terms(4, &[(1, 0, common::c(-0.06, 0.09))]).unwrap();
    let g = FiberedMap::normalized(zp, rp).unwrap();
    let f = FiberedMap::gluing(
        common::c(0.37, 0.1),
        common::c(1.2, -0.4),
        BiSeries::from_terms(4, &[(1, 1, common::c(0.08, 0.03))]).unwrap(),
        BiSeries::from_terms(4, &[(1, -1, common::c(0.04, -0.1))]).unwrap(),
    )
    .unwrap();
    let comp = compose(&g, &f, 4).unwrap();
    let (z, r) = (common::c(1.05, 0.12), common::c(0.05, -0.01));
    let (fz, fr) = f.apply(z, r).unwrap();
    let via_g = g.apply(fz, fr).unwrap();
    let direct = comp.apply(z, r).unwrap();
    // r-order 5+ tails differ; with |r| = 0.05 the gap is ~|r|^5.
    let tol = 1e-5;
    assert!((via_g.0 - direct.0).norm() < tol);
    assert!((via_g.1 - direct.1).norm() < tol);
}

#[test]
fn convergent_construction_keeps_radius_bounded_below() {
    // Build gluing data from a known convergent linearization: a change of
    // variable with geometric coefficient decay, conjugated back around the
    // linear map. The solver must recover exactly that change of variable
    // (the formal solution is unique), and its truncated radius stays
    // bounded below as the order grows.
    use tubular::linearize::{linearize, SolverOptions};
    use tubular::radius::{default_annulus, truncated_radius, RadiusValue};

    let n_max = 12usize;
    let q = common::c(0.4, 0.1);
    let lambda = common::c(0.93, 0.41);
    let mut z_terms = Vec::new();
    let mut r_terms = Vec::new();
    for n in 1..=n_max {
        let decay = 0.3f64.powi(n as i32);
        for k in -2i64..=2 {
            let phase = (n as f64 * 2.1 + k as f64 * 0.9).sin();
            z_terms.push((n, k, common::c(decay * phase, decay * 0.4 * phase.cos())));
            r_terms.push((n, k, common::c(-decay * 0.7 * phase, decay * 0.3)));
        }
    }
    let g = FiberedMap::normalized(
        BiSeries::from_terms(n_max, &z_terms).unwrap(),
        BiSeries::from_terms(n_max, &r_terms).unwrap(),
    )
    .unwrap();
    let linear = FiberedMap::linear(q, lambda, n_max).unwrap();
    let f = compose(&compose(&invert(&g, n_max).unwrap(), &linear, n_max).unwrap(), &g, n_max)
        .unwrap();

    let res = linearize(&f, n_max, &SolverOptions::default()).expect("solver");
    assert!(res.fully_solved());
    let recovered = res.composite().unwrap();
    let dz = recovered.z_pert().max_diff(g.z_pert());
    let dr = recovered.r_pert().max_diff(g.r_pert());
    assert!(dz.max(dr) < 1e-10, "unique solution not recovered: {}", dz.max(dr));

    let annulus = default_annulus(q, 0.05).unwrap();
    let mut last = f64::INFINITY;
    for orders in 3..=n_max {
        let rho = tubular::radius::truncated_radius_up_to(
            &res,
            &annulus,
            SupMode::Sample(256),
            orders,
        )
        .unwrap()
        .rho;
        last = rho.as_f64();
        assert!(last > 0.25, "radius collapsed to {last} at {orders} orders");
    }
    // Cross-check with the full estimate.
    let full = truncated_radius(&res, &annulus, SupMode::Sample(256)).unwrap();
    assert_eq!(full.rho, RadiusValue::Finite(last));
}

#[test]
fn brjuno_matches_continued_fraction_oracle() {
    use tubular::uniform::pic::{brjuno_sum, BrjunoSum};
    let lat = LatticeTau::from_tau(Complex64::new(0.0, 1.0)).unwrap();
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let class = Pic0Element::from_t(Complex64::new(phi, 0.0), &lat);
    let ours = match brjuno_sum(&class, &lat, 12) {
        BrjunoSum::Finite { value, .. } => value,
        _ => panic!("golden ratio is not torsion"),
    };
    let oracle = common::brjuno_oracle(phi, 12);
    let rel = (ours - oracle).abs() / oracle.abs();
    assert!(rel < 0.01, "ours {ours}, oracle {oracle}");
}

#[test]
fn best_approximation_oracle_agrees_with_enumeration() {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    for n in [3u64, 10, 50, 400, 3000] {
        let fast = common::best_approximation_distance(phi, n);
        let brute = common::brute_force_distance(phi, n);
        assert!(
            (fast - brute).abs() < 1e-12,
            "n = {n}: fast {fast} brute {brute}"
        );
    }
}
