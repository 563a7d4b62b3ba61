//! From nine marked points to a degree-zero class: elliptic logarithms, the
//! class map, torsion detection, and the index-1 pencil criterion.
//!
//! ```bash
//! cargo run -p tubular --example nine_points_class
//! ```

use num_complex::Complex64;

use tubular::cli::config_with_class;
use tubular::gen::{random_point_on, rng_for};
use tubular::halphen::{halphen_index1_check, PencilCheck};
use tubular::uniform::curve::{NineConfig, WeierstrassCurve};
use tubular::uniform::elog::elliptic_log;
use tubular::uniform::lattice::periods;
use tubular::uniform::pic::{chi, torsion_order};

fn report(
    label: &str,
    curve: &WeierstrassCurve,
    lattice: &tubular::uniform::lattice::LatticeTau,
    config: &NineConfig,
) {
    let class = chi(curve, lattice, config).expect("class map");
    let torsion = torsion_order(&class, lattice, 20, 1e-7);
    println!("{label}");
    println!("  class t = {:.12}", class.t);
    println!("  lambda  = {:.12}", class.lambda);
    println!("  torsion through 20: {torsion:?}");
    match halphen_index1_check(curve, lattice, config, 20, 1e-7).expect("pencil check") {
        PencilCheck::Pencil { space, .. } => println!(
            "  index-1 pencil: YES (nullspace dim {}, gap ratio {:.3e})",
            space.dimension, space.gap_ratio
        ),
        PencilCheck::NoPencil { space, torsion_hint } => println!(
            "  index-1 pencil: no (nullspace dim {}, gap ratio {:.3e}, torsion hint {torsion_hint:?})",
            space.dimension, space.gap_ratio
        ),
    }
}

fn main() {
    let curve = WeierstrassCurve::new(Complex64::ZERO, Complex64::ONE).expect("y² = x³ + 1");
    let lattice = periods(&curve).expect("periods");

    // Eight random points plus a ninth forced by the group law so that the
    // logarithms sum to zero: the trivial class, hence a pencil of cubics.
    let (trivial, _) = config_with_class(&curve, &lattice, Complex64::ZERO, 11).unwrap();
    report("trivial class (Σu ≡ 0)", &curve, &lattice, &trivial);

    // Same construction aimed at an exact 5-torsion class.
    let t5 = (Complex64::ONE + lattice.tau * 2.0) / 5.0;
    let (tors5, _) = config_with_class(&curve, &lattice, t5, 12).unwrap();
    report("\n5-torsion class t = (1 + 2τ)/5", &curve, &lattice, &tors5);

    // Nine independent random points: nontorsion with probability one.
    let mut rng = rng_for(13, 0);
    let pts: Vec<_> = (0..9).map(|_| random_point_on(&mut rng, &curve)).collect();
    let generic = NineConfig::new(&curve, pts.try_into().unwrap()).unwrap();
    report("\ngeneric configuration", &curve, &lattice, &generic);

    // The logarithm is additive under the chord-tangent law.
    let mut rng = rng_for(14, 0);
    let p = random_point_on(&mut rng, &curve);
    let q = random_point_on(&mut rng, &curve);
    let s = curve.group_add(&p, &q);
    let defect = {
        let up = elliptic_log(&curve, &lattice, &p).unwrap();
        let uq = elliptic_log(&curve, &lattice, &q).unwrap();
        let us = elliptic_log(&curve, &lattice, &s).unwrap();
        tubular::uniform::pic::dist_to_lattice(up + uq - us, lattice.tau)
    };
    println!("\nlog additivity defect on a random pair: {defect:.3e}");
}
