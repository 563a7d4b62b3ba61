//! The cube-difference pencil λ(x³−y³) + μ(y³−z³): nine base points, the
//! nullspace evidence for the pencil, diagonal members, and isotriviality by
//! j-sampling, plus Weierstrass families with constant and varying j.
//!
//! ```bash
//! cargo run -p tubular --example halphen_pencil
//! ```

use tubular::halphen::{
    cube_difference_pencil, cubics_through, diagonal_cubic_j, isotriviality_test,
    isotriviality_test_weierstrass, DiagonalJ, WeierstrassFamily,
};

fn main() {
    let (pencil, points) = cube_difference_pencil();
    println!("base points:");
    for (i, p) in points.iter().enumerate() {
        let [x, y, z] = p.coords;
        println!("  p{i}: [{x:.6} : {y:.6} : {z:.6}]");
    }

    let space = cubics_through(&points).expect("nullspace");
    println!("\ncubics through the nine points:");
    println!("  nullspace dimension: {}", space.dimension);
    println!("  singular values: {:?}", space.singular_values);
    println!("  gap ratio: {:.3e} (ambiguous: {})", space.gap_ratio, space.ambiguous);

    // Every member is diagonal, so every smooth member has j = 0.
    let member = pencil
        .member(num_complex::Complex64::ONE, num_complex::Complex64::new(0.5, 0.0))
        .unwrap();
    println!(
        "\nmember F + 0.5 G diagonal check: {:?}",
        diagonal_cubic_j(&member)
    );
    assert_eq!(diagonal_cubic_j(&member), DiagonalJ::Zero);

    let report = isotriviality_test(&pencil, 20, 1e-12, 4).expect("isotriviality");
    println!(
        "isotriviality over {} samples ({} skipped): {:?}",
        report.samples_used, report.skipped, report.verdict
    );

    // Weierstrass families: A(t) = a t², B(t) = b t³ has constant j; an
    // affine A(t) does not.
    let isotrivial_family = WeierstrassFamily {
        a: vec![[0.0, 0.0], [0.0, 0.0], [1.3, 0.2]],
        b: vec![[0.0, 0.0], [0.0, 0.0], [0.0, 0.0], [0.7, -0.4]],
    };
    let rep = isotriviality_test_weierstrass(&isotrivial_family, 16, 1e-9, 1).unwrap();
    println!("\nfamily A = a t², B = b t³: {:?}", rep.verdict);

    let varying_family = WeierstrassFamily {
        a: vec![[0.0, 0.0], [1.0, 0.0]],
        b: vec![[1.0, 0.0]],
    };
    let rep = isotriviality_test_weierstrass(&varying_family, 16, 1e-9, 1).unwrap();
    println!("family A = t, B = 1:       {:?}", rep.verdict);
}
