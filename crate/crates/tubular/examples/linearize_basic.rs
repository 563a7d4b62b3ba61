//! Linearize seeded gluing data order by order and inspect the diagnostics.
//!
//! ```bash
//! cargo run -p tubular --example linearize_basic
//! ```

use tubular::fibered::compose;
use tubular::gen::{random_gluing_map, random_nontorsion_lambda, random_q, rng_for};
use tubular::linearize::{conjugacy_residual, linearize, stabilization_check, SolverOptions};

fn main() {
    let seed = 42;
    let order = 8;
    let mut rng = rng_for(seed, 0);
    let q = random_q(&mut rng, 0.2, 0.7);
    let lambda = random_nontorsion_lambda(&mut rng, q, 20, 1e-10);
    let f = random_gluing_map(&mut rng, q, lambda, order, 3, 0.15);

    println!("gluing data: q = {q:.6}, lambda = {lambda:.6}, order {order}");
    println!("|q| = {:.6}, |lambda| = {:.6}", q.norm(), lambda.norm());

    let opts = SolverOptions::default();
    let result = linearize(&f, order, &opts).expect("solver");
    println!("\n per-order diagnostics:");
    println!("{:>3} {:>14} {:>16} {:>12}", "n", "min divisor", "band", "max coeff");
    for d in &result.per_order {
        let band = d
            .band
            .map(|(a, b)| format!("[{a}, {b}]"))
            .unwrap_or_else(|| "-".into());
        println!(
            "{:>3} {:>14.3e} {:>16} {:>12.4e}{}",
            d.order,
            d.min_divisor,
            band,
            d.max_coeff,
            if d.near_resonant { "  (near-resonant)" } else { "" }
        );
    }

    let g = result.composite().expect("composite map");
    let residual = conjugacy_residual(&f, &g, order).expect("residual");
    println!("\nconjugacy residual through order {order}: {residual:.3e}");

    // The conjugated map coincides with the linear part to that residual.
    let h = compose(
        &compose(&g, &f, order).unwrap(),
        &tubular::fibered::invert(&g, order).unwrap(),
        order,
    )
    .unwrap();
    println!("largest leftover perturbation coefficient: {:.3e}", h.max_abs());

    let st = stabilization_check(&f, order, &opts).expect("stabilization");
    println!(
        "stabilization: ok = {}, schedule diff {:.3e}, over-computation diff {:.3e}",
        st.ok, st.schedule_diff, st.overcompute_diff
    );
}
