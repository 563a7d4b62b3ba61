//! Regenerate the committed fixtures under `fixtures/`.
//!
//! Everything is seeded, so reruns are byte-stable; tests read the committed
//! files and never depend on network or ambient randomness.
//!
//! ```bash
//! cargo run -p tubular --example gen_fixtures
//! ```

use num_complex::Complex64;
use std::path::PathBuf;

use tubular::cli::{config_with_class, curve_config_json, GluingDataInput};
use tubular::gen::{random_gluing_map, random_nontorsion_lambda, random_point_on, random_q, rng_for};
use tubular::scan::GridSpec;
use tubular::uniform::curve::{NineConfig, WeierstrassCurve};
use tubular::uniform::lattice::periods;

fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn write(name: &str, text: String) {
    let path = fixtures_dir().join(name);
    std::fs::write(&path, text).expect("write fixture");
    println!("wrote {}", path.display());
}

fn main() {
    std::fs::create_dir_all(fixtures_dir()).expect("fixtures dir");

    // Nine-point configurations on y² = x³ + 1.
    let curve = WeierstrassCurve::new(Complex64::ZERO, Complex64::ONE).unwrap();
    let lattice = periods(&curve).unwrap();

    // Class forced trivial: Σu ≡ 0 via the group-law ninth point.
    let (config, class) = config_with_class(&curve, &lattice, Complex64::ZERO, 11).unwrap();
    println!("trivial-class fixture: t = {}", class.t);
    write(
        "nine_points_trivial.json",
        serde_json::to_string_pretty(&curve_config_json(&curve, &config)).unwrap(),
    );

    // Class forced to exact 5-torsion: t = (1 + 2τ)/5.
    let t5 = (Complex64::ONE + lattice.tau * 2.0) / 5.0;
    let (config5, class5) = config_with_class(&curve, &lattice, t5, 12).unwrap();
    println!("5-torsion fixture: t = {}", class5.t);
    write(
        "nine_points_torsion5.json",
        serde_json::to_string_pretty(&curve_config_json(&curve, &config5)).unwrap(),
    );

    // Generic configuration (nontorsion with overwhelming probability).
    let mut rng = rng_for(13, 0);
    let pts: Vec<_> = (0..9).map(|_| random_point_on(&mut rng, &curve)).collect();
    let config_rand = NineConfig::new(&curve, pts.try_into().unwrap()).unwrap();
    write(
        "nine_points_random.json",
        serde_json::to_string_pretty(&curve_config_json(&curve, &config_rand)).unwrap(),
    );

    // Gluing data with a nontorsion multiplier pair for the linearize and
    // radius commands.
    let mut rng = rng_for(7, 0);
    let q = random_q(&mut rng, 0.2, 0.7);
    let lambda = random_nontorsion_lambda(&mut rng, q, 20, 1e-10);
    let map = random_gluing_map(&mut rng, q, lambda, 8, 3, 0.15);
    write(
        "gluing_nontorsion.json",
        serde_json::to_string_pretty(&GluingDataInput::from_map(&map).unwrap()).unwrap(),
    );

    // Sweep grids: a multiplier arc crossing a low-order rational angle, and
    // a small patch of the fundamental cell.
    let arc = GridSpec::LambdaArc {
        q: [0.4, 0.0],
        theta_start: 0.30,
        theta_end: 0.35,
        count: 16,
    };
    write("grid_arc.json", serde_json::to_string_pretty(&arc).unwrap());

    let patch = GridSpec::TGrid {
        tau: [0.1, 1.2],
        x_start: 0.05,
        x_end: 0.45,
        x_count: 5,
        y_start: 0.1,
        y_end: 0.5,
        y_count: 4,
    };
    write("grid_tgrid.json", serde_json::to_string_pretty(&patch).unwrap());
}
