//! Elliptic logarithm by branch-tracked path integration.
//!
//! `u(P) = (∫_O^P dx/y) / ω₁ mod (ℤ + τℤ)`, computed as a path integral from
//! the point out to infinity. The square root `y = √(x³ + Ax + B)` is
//! continued analytically along the path; the two endpoints get special
//! treatment: a desingularizing `x = e + t²` substitution near a root and a
//! compactifying `x = x_far / v²` substitution on the unbounded tail. Any
//! root-avoiding path gives the same answer mod lattice, so path choice is
//! free.

use num_complex::Complex64;

use super::curve::{CurvePoint, WeierstrassCurve};
use super::lattice::{cubic_roots, LatticeTau};
use super::pic::lattice_coords;
use super::quad::{build_path, integrate_chunked, leg_into_root, tracked_integral};
use crate::Result;

/// Abel–Jacobi coordinate of a point, in the `ω₁`-normalized frame, reduced
/// to the centered fundamental cell. `u(O) = 0`; additive under the group law
/// mod lattice.
pub fn elliptic_log(
    curve: &WeierstrassCurve,
    lattice: &LatticeTau,
    p: &CurvePoint,
) -> Result<Complex64> {
    let (x, y) = match p {
        CurvePoint::Infinity => return Ok(Complex64::ZERO),
        CurvePoint::Affine { x, y } => (*x, *y),
    };
    curve.check_point(p)?;
    let integral = integral_to_infinity(curve, x, y, 1e-12 * lattice.omega1.norm())?;
    let u = -integral / lattice.omega1;
    let (cx, cy) = lattice_coords(u, lattice.tau);
    let (rx, ry) = (cx - cx.round(), cy - cy.round());
    Ok(Complex64::new(rx, 0.0) + lattice.tau * ry)
}

/// `∫ dx/y` from `(x0, y0)` out to the point at infinity.
fn integral_to_infinity(
    curve: &WeierstrassCurve,
    x0: Complex64,
    y0: Complex64,
    tol: f64,
) -> Result<Complex64> {
    let roots = cubic_roots(curve.a, curve.b);
    let scale = 1.0 + roots.iter().map(|r| r.norm()).fold(0.0, f64::max);
    let sep = {
        let mut s = f64::INFINITY;
        for i in 0..3 {
            for j in (i + 1)..3 {
                s = s.min((roots[i] - roots[j]).norm());
            }
        }
        s
    };
    let margin = (0.1 * scale).min(0.3 * sep);

    let mut total = Complex64::ZERO;
    let (mut x_cur, mut y_cur) = (x0, y0);

    // Walk away from a branch point first if the start sits close to one.
    let nearest = roots
        .iter()
        .copied()
        .min_by(|a, b| (x0 - a).norm().total_cmp(&(x0 - b).norm()))
        .unwrap();
    if (x0 - nearest).norm() < 4.0 * margin {
        let e = nearest;
        let others: Vec<Complex64> = roots.iter().copied().filter(|r| *r != e).collect();
        let (o1, o2) = (others[0], others[1]);
        let h = move |x: Complex64| (x - o1) * (x - o2);
        let d_local = (6.0 * margin).min(0.5 * sep);
        let dir = {
            let away = e - (o1 + o2) / 2.0;
            if away.norm() > 1e-6 * sep {
                away / away.norm()
            } else {
                Complex64::ONE
            }
        };
        let x1 = e + dir * d_local;

        let t0 = (x0 - e).sqrt();
        let mut t1 = (x1 - e).sqrt();
        if (t1 + t0).norm() < (t1 - t0).norm() {
            t1 = -t1;
        }
        // Branch of s at the start: consistent with the supplied y0 when t0
        // is meaningfully nonzero, principal otherwise (both signs are valid
        // at an exact 2-torsion start).
        let s0 = if t0.norm() > 1e-9 * (1.0 + x0.norm()).sqrt() {
            y0 / t0
        } else {
            h(x0).sqrt()
        };
        let value_sq = move |t: Complex64| h(e + t * t);
        let numer = |_t: Complex64| Complex64::new(2.0, 0.0);
        let (local, s1) = tracked_integral(t0, t1, s0, &value_sq, &numer, tol, 0)?;
        total += local;
        x_cur = x1;
        y_cur = t1 * s1;
    }

    // Main legs from the current point out to a far circle, then the tail.
    let r_far = 10.0 * scale;
    if x_cur.norm() < r_far {
        let centroid = (roots[0] + roots[1] + roots[2]) / 3.0;
        let dir = {
            let d = x_cur - centroid;
            if d.norm() > 1e-3 * scale {
                d / d.norm()
            } else {
                Complex64::ONE
            }
        };
        let x_far = dir * r_far;
        let mut waypoints = vec![x_cur];
        build_path(x_cur, x_far, &roots, margin, 0, &mut waypoints)?;
        for pair in waypoints.windows(2) {
            let (val, y_end) = integrate_chunked(
                pair[0],
                pair[1],
                y_cur,
                &|x| curve.rhs(x),
                &|_| Complex64::ONE,
                &roots,
                tol,
            )?;
            total += val;
            y_cur = y_end;
        }
        x_cur = x_far;
    }

    // Tail: x = x_cur / v², v from 1 to 0. The tracked quantity is
    // w(v) = v³ y, with w² = x_cur³ + A x_cur v⁴ + B v⁶, a polynomial in v
    // bounded away from zero, and ∫ dx/y = ∫₀¹ 2 x_cur / w dv.
    let (a, b) = (curve.a, curve.b);
    let xf = x_cur;
    let w_sq = move |v: Complex64| {
        let v2 = v * v;
        let v4 = v2 * v2;
        xf * xf * xf + a * xf * v4 + b * v4 * v2
    };
    let numer = move |_v: Complex64| xf * 2.0;
    let (j, _w0) = tracked_integral(
        Complex64::ONE,
        Complex64::ZERO,
        y_cur, // w(1) = y at x_cur
        &w_sq,
        &numer,
        tol,
        0,
    )?;
    // j runs v from 1 to 0; the tail is oriented 0 → 1.
    total -= j;
    Ok(total)
}

/// `2 ∫_{e_a}^{e_b} dx/y` along a root-avoiding path with both endpoints
/// desingularized: a full cycle period of `dx/y` around the pair of branch
/// points (up to sign, which the caller does not need).
pub(crate) fn period_between(
    curve: &WeierstrassCurve,
    roots: &[Complex64; 3],
    ea: Complex64,
    eb: Complex64,
    tol: f64,
) -> Result<Complex64> {
    let third = roots
        .iter()
        .copied()
        .find(|r| *r != ea && *r != eb)
        .expect("three distinct roots");
    let scale = 1.0 + roots.iter().map(|r| r.norm()).fold(0.0, f64::max);
    let sep = {
        let mut s = f64::INFINITY;
        for i in 0..3 {
            for j in (i + 1)..3 {
                s = s.min((roots[i] - roots[j]).norm());
            }
        }
        s
    };
    let margin = (0.1 * scale).min(0.25 * sep);
    let mut d_local = (6.0 * margin).min(0.4 * (ea - eb).norm());

    // Exits from both branch points, pointing at each other. The third root
    // may sit near the chord; shrink the exit distance until both exit
    // points clear it.
    let dir_ab = (eb - ea) / (eb - ea).norm();
    let (pa, pb) = loop {
        let pa = ea + dir_ab * d_local;
        let pb = eb - dir_ab * d_local;
        if (pa - third).norm() >= 1.5 * margin && (pb - third).norm() >= 1.5 * margin {
            break (pa, pb);
        }
        d_local /= 2.0;
        if d_local < 1e-6 * scale {
            break (pa, pb);
        }
    };

    let h_a = {
        let (r1, r2) = (eb, third);
        move |x: Complex64| (x - r1) * (x - r2)
    };
    let h_b = {
        let (r1, r2) = (ea, third);
        move |x: Complex64| (x - r1) * (x - r2)
    };

    let (leg_a, y_pa) = super::quad::leg_from_root(ea, pa, &h_a, tol)?;
    let mut total = leg_a;
    let mut y_cur = y_pa;
    if (pa - pb).norm() > 1e-14 * scale {
        let mut waypoints = vec![pa];
        build_path(pa, pb, roots, margin, 0, &mut waypoints)?;
        let mut start = pa;
        for &end in &waypoints[1..] {
            let (val, y_end) = integrate_chunked(
                start,
                end,
                y_cur,
                &|x| curve.rhs(x),
                &|_| Complex64::ONE,
                roots,
                tol,
            )?;
            total += val;
            y_cur = y_end;
            start = end;
        }
    }
    total += leg_into_root(eb, pb, y_cur, &h_b, tol)?;
    Ok(total * 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::uniform::lattice::periods;
    use crate::uniform::pic::dist_to_lattice;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn log_of_infinity_is_zero() {
        let e = WeierstrassCurve::new(c(-1.0, 0.0), c(0.0, 0.0)).unwrap();
        let lat = periods(&e).unwrap();
        assert_eq!(
            elliptic_log(&e, &lat, &CurvePoint::Infinity).unwrap(),
            Complex64::ZERO
        );
    }

    #[test]
    fn log_negation_is_odd_mod_lattice() {
        let e = WeierstrassCurve::new(c(-2.0, 0.3), c(1.1, -0.4)).unwrap();
        let lat = periods(&e).unwrap();
        for x in [c(1.7, 0.3), c(-0.4, 1.2), c(0.9, -2.0)] {
            let p = e.lift_x(x);
            let u = elliptic_log(&e, &lat, &p).unwrap();
            let um = elliptic_log(&e, &lat, &e.negate(&p)).unwrap();
            let d = dist_to_lattice(u + um, lat.tau);
            assert!(d < 1e-9, "u + u(-P) off lattice by {d}");
        }
    }

    #[test]
    fn log_additivity_on_a_sample() {
        let e = WeierstrassCurve::new(c(1.0, 0.5), c(-0.7, 0.2)).unwrap();
        let lat = periods(&e).unwrap();
        let pairs = [
            (c(0.4, 0.8), c(-1.3, 0.5)),
            (c(2.2, -0.1), c(0.1, 1.9)),
            (c(-0.8, -0.6), c(1.4, 1.1)),
        ];
        for (xa, xb) in pairs {
            let p = e.lift_x(xa);
            let q = e.lift_x(xb);
            let s = e.group_add(&p, &q);
            let up = elliptic_log(&e, &lat, &p).unwrap();
            let uq = elliptic_log(&e, &lat, &q).unwrap();
            let us = elliptic_log(&e, &lat, &s).unwrap();
            let d = dist_to_lattice(up + uq - us, lat.tau);
            assert!(d < 1e-9, "additivity defect {d}");
        }
    }

    #[test]
    fn log_at_and_near_two_torsion() {
        let e = WeierstrassCurve::new(c(-1.0, 0.0), c(0.0, 0.0)).unwrap();
        let lat = periods(&e).unwrap();
        // Exactly at the branch point (y = 0): a half-period, so 2u is a
        // lattice vector.
        let t2 = CurvePoint::Affine {
            x: c(1.0, 0.0),
            y: Complex64::ZERO,
        };
        let ut = elliptic_log(&e, &lat, &t2).unwrap();
        let d = dist_to_lattice(ut * 2.0, lat.tau);
        assert!(d < 1e-9, "2u off lattice by {d}");
        assert!(dist_to_lattice(ut, lat.tau) > 0.1, "u itself must not vanish");
        // A point at distance δ from the branch point sits ~√δ away in u.
        let p = e.lift_x(c(1.0 + 1e-7, 0.0));
        let u = elliptic_log(&e, &lat, &p).unwrap();
        let d = dist_to_lattice(u - ut, lat.tau);
        assert!(d < 1e-3, "near-torsion log drifted by {d}");
    }

    #[test]
    fn real_cycle_integral_matches_omega() {
        // Doubling a real point walks the real cycle consistently.
        let e = WeierstrassCurve::new(c(-1.0, 0.0), c(0.0, 0.0)).unwrap();
        let lat = periods(&e).unwrap();
        let p = e.lift_x(c(3.0, 0.0));
        let u = elliptic_log(&e, &lat, &p).unwrap();
        let p2 = e.group_add(&p, &p);
        let u2 = elliptic_log(&e, &lat, &p2).unwrap();
        let d = dist_to_lattice(u * 2.0 - u2, lat.tau);
        assert!(d < 1e-9, "doubling defect {d}");
    }

    #[test]
    fn period_between_matches_lattice() {
        // Each branch-pair cycle must be a lattice vector.
        for (a, b) in [(c(-1.0, 0.0), c(0.0, 0.0)), (c(0.0, 0.0), c(1.0, 0.0)), (c(1.3, -0.8), c(0.2, 0.9))] {
            let e = WeierstrassCurve::new(a, b).unwrap();
            let lat = periods(&e).unwrap();
            let roots = cubic_roots(e.a, e.b);
            let p12 = period_between(&e, &roots, roots[0], roots[1], 1e-12).unwrap();
            let p23 = period_between(&e, &roots, roots[1], roots[2], 1e-12).unwrap();
            for p in [p12, p23] {
                let d = dist_to_lattice(p / lat.omega1, lat.tau);
                assert!(d < 1e-8, "cycle period off lattice by {d} for ({a}, {b})");
            }
        }
    }
}
