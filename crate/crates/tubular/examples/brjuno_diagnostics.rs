//! Small divisors, Brjuno partial sums, and Diophantine fits for a few
//! arithmetically different classes on the square lattice.
//!
//! ```bash
//! cargo run -p tubular --example brjuno_diagnostics
//! ```

use num_complex::Complex64;

use tubular::uniform::lattice::LatticeTau;
use tubular::uniform::pic::{
    brjuno_sum, diophantine_fit, small_divisors_table, BrjunoSum, Pic0Element,
};

fn show(label: &str, class: &Pic0Element, lattice: &LatticeTau) {
    println!("{label}: t = {:.10}", class.t);
    let table = small_divisors_table(class, lattice, 16);
    print!("  omega_n (n = 1..16):");
    for w in &table {
        print!(" {w:.2e}");
    }
    println!();
    for k_max in [10, 20] {
        match brjuno_sum(class, lattice, k_max) {
            BrjunoSum::Finite { value, .. } => {
                println!("  brjuno partial sum (k_max {k_max:>2}): {value:.8}")
            }
            BrjunoSum::Divergent { at_k } => {
                println!("  brjuno partial sum (k_max {k_max:>2}): divergent at k = {at_k}")
            }
        }
    }
    let fit = diophantine_fit(class, lattice, 10_000);
    println!(
        "  diophantine fit: A = {:.4e}, B = {:.4}, satisfied = {}",
        fit.a_fit, fit.b_fit, fit.satisfied
    );
}

fn main() {
    let lattice = LatticeTau::from_tau(Complex64::new(0.0, 1.0)).expect("square lattice");

    // Golden-ratio coordinate along the real direction: the classical
    // badly-approximable case, Brjuno sums converge quickly.
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    show(
        "golden ratio",
        &Pic0Element::from_t(Complex64::new(phi, 0.0), &lattice),
        &lattice,
    );

    // 2-torsion: the divisors hit zero at once.
    show(
        "\n2-torsion (1 + τ)/2",
        &Pic0Element::from_t((Complex64::ONE + lattice.tau) / 2.0, &lattice),
        &lattice,
    );

    // A generic coordinate off the real direction.
    show(
        "\ngeneric",
        &Pic0Element::from_t(Complex64::new(0.2718281828, 0.3141592653), &lattice),
        &lattice,
    );

    // Liouville-flavored coordinate: very well approximable, so the partial
    // sums keep climbing.
    let liouville: f64 = (1..=5).map(|k: i32| 0.1f64.powi(1 << k)).sum();
    show(
        "\nliouville-like",
        &Pic0Element::from_t(Complex64::new(liouville, 0.0), &lattice),
        &lattice,
    );
}
