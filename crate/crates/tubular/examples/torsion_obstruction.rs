//! Exact torsion blocks the solver at the predicted order.
//!
//! With τ = 0.1 + 1.2i and t = (2 + 3τ)/5 the multiplier satisfies
//! λ⁵q⁻³ = 1 exactly, so generic data solves through order 4 and obstructs
//! at order 5, Laurent exponent −3.
//!
//! ```bash
//! cargo run -p tubular --example torsion_obstruction
//! ```

use num_complex::Complex64;
use std::f64::consts::TAU;

use tubular::gen::{random_gluing_map, rng_for};
use tubular::linearize::{conjugacy_residual, linearize, SolverOptions};
use tubular::uniform::resonance::{divisor, min_candidate_divisor};

fn main() {
    let tau = Complex64::new(0.1, 1.2);
    let q = (Complex64::new(0.0, TAU) * tau).exp();
    let t = (Complex64::new(2.0, 0.0) + tau * 3.0) / 5.0;
    let lambda = (Complex64::new(0.0, TAU) * t).exp();
    println!("tau = {tau}, q = {q:.6}, lambda = {lambda:.6}");
    println!("divisor at (5, -3): {:.3e}", divisor(lambda, q, 5, -3).norm());
    for n in 1..=6u32 {
        let (d, k) = min_candidate_divisor(lambda, q, n);
        println!("order {n}: min candidate divisor {d:.3e} at k = {k}");
    }

    let order = 6;
    let mut rng = rng_for(9, 0);
    let f = random_gluing_map(&mut rng, q, lambda, order, 3, 0.15);
    let result = linearize(&f, order, &SolverOptions::default()).expect("solver");

    println!("\norders solved: {}", result.orders_solved);
    for o in &result.obstructions {
        println!(
            "obstruction at order {} exponent {}: |numerator| = {:.3e}, |divisor| = {:.3e}",
            o.order, o.exponent, o.numerator_abs, o.divisor_abs
        );
    }
    // The partial change of variable still conjugates through order 4.
    let g = result.composite().expect("partial composite");
    let r = conjugacy_residual(&f, &g, result.orders_solved).expect("residual");
    println!(
        "partial conjugacy residual through order {}: {:.3e}",
        result.orders_solved, r
    );
}
