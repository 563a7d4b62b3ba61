//! Uniformize Weierstrass curves: periods, τ in the fundamental domain, the
//! multiplicative parameter q, and cross-checks against the modular j.
//!
//! ```bash
//! cargo run -p tubular --example uniformize_curve
//! ```

use num_complex::Complex64;

use tubular::halphen::{j_weierstrass, JInvariant};
use tubular::uniform::curve::WeierstrassCurve;
use tubular::uniform::lattice::{j_from_tau, periods};

fn main() {
    let samples = [
        ("lemniscatic  y² = x³ - x", Complex64::new(-1.0, 0.0), Complex64::ZERO),
        ("hexagonal    y² = x³ + 1", Complex64::ZERO, Complex64::ONE),
        ("generic      y² = x³ + (1+i/2)x + (0.3-0.8i)", Complex64::new(1.0, 0.5), Complex64::new(0.3, -0.8)),
    ];
    for (name, a, b) in samples {
        let curve = WeierstrassCurve::new(a, b).expect("smooth curve");
        let lat = periods(&curve).expect("periods");
        println!("{name}");
        println!("  omega1 = {:.12}", lat.omega1);
        println!("  omega2 = {:.12}", lat.omega2);
        println!("  tau    = {:.12}", lat.tau);
        println!("  |q|    = {:.3e}", lat.q.norm());
        let j_curve = match j_weierstrass(a, b) {
            JInvariant::Finite(j) => j,
            JInvariant::Infinite => unreachable!("smooth curve"),
        };
        let j_tau = j_from_tau(lat.tau);
        println!(
            "  j from (A, B) = {:.9}, j from tau = {:.9}, agreement {:.3e}",
            j_curve,
            j_tau,
            (j_curve - j_tau).norm() / (1.0 + j_curve.norm())
        );
    }

    // τ is an isomorphism invariant: rescaling (A, B) ↦ (u⁴A, u⁶B) moves the
    // periods but not the lattice shape.
    let u = Complex64::new(0.8, 0.45);
    let base = WeierstrassCurve::new(Complex64::new(-1.2, 0.3), Complex64::new(0.5, 0.7)).unwrap();
    let scaled =
        WeierstrassCurve::new(base.a * u.powu(4), base.b * u.powu(6)).unwrap();
    let t1 = periods(&base).unwrap().tau;
    let t2 = periods(&scaled).unwrap().tau;
    println!("\nscaling invariance: tau agree to {:.3e}", (t1 - t2).norm());
}
