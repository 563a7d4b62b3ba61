//! Sweep the multiplier along an arc and across a patch of the fundamental
//! cell, recording torsion flags and bracketed truncated radii; then build
//! the upper-semicontinuous envelope of the radius over the patch, filling
//! the torsion-masked points from their neighborhoods.
//!
//! ```bash
//! cargo run -p tubular --example radius_scan
//! ```

use tubular::radius::{usc_envelope, Grid2, RadiusValue};
use tubular::scan::{run_scan, write_csv, GridSpec, ScanConfig};

fn main() {
    // Arc through θ = 1/3: the 3-torsion row obstructs early and stands out.
    let arc = GridSpec::LambdaArc {
        q: [0.4, 0.0],
        theta_start: 0.30,
        theta_end: 0.35,
        count: 16,
    };
    let config = ScanConfig {
        seed: 3,
        order: 6,
        coeff_scale: 0.15,
        ..ScanConfig::default()
    };
    let rows = run_scan(&arc, &config, None).expect("scan");
    let mut csv = Vec::new();
    write_csv(&mut csv, &arc, &config, &rows).unwrap();
    println!("{}", String::from_utf8(csv).unwrap());

    // Rectangular patch of the fundamental cell.
    let (nx, ny) = (7, 5);
    let patch = GridSpec::TGrid {
        tau: [0.1, 1.2],
        x_start: 0.05,
        x_end: 0.65,
        x_count: nx,
        y_start: 0.1,
        y_end: 0.5,
        y_count: ny,
    };
    let rows = run_scan(&patch, &config, None).expect("scan");

    let values = Grid2::from_vec(
        nx,
        ny,
        rows.iter()
            .map(|r| r.rho_sample.unwrap_or(RadiusValue::Finite(0.0)))
            .collect(),
    )
    .unwrap();
    let mask = Grid2::from_vec(nx, ny, rows.iter().map(|r| r.torsion.is_some()).collect()).unwrap();

    println!("truncated radius over the patch (sample mode), * = torsion-masked:");
    for iy in 0..ny {
        for ix in 0..nx {
            if *mask.get(ix, iy) {
                print!("        * ");
            } else {
                print!(" {:8.5} ", values.get(ix, iy).as_f64());
            }
        }
        println!();
    }

    let filled = usc_envelope(&values, &mask).expect("envelope");
    println!("\nusc envelope (masked entries replaced by neighborhood sups):");
    for iy in 0..ny {
        for ix in 0..nx {
            print!(" {:8.5} ", filled.get(ix, iy).as_f64());
        }
        println!();
    }
}
