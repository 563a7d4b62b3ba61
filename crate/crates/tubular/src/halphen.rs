//! Pencils of plane cubics through nine base points, j-invariants, and
//! isotriviality testing by sampling.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::gen::rng_for;
use crate::uniform::curve::{NineConfig, WeierstrassCurve};
use crate::uniform::lattice::LatticeTau;
use crate::uniform::pic::{chi, torsion_order};
use crate::Result;
use rand::Rng;

/// Fixed monomial order for ternary cubics:
/// x³, x²y, x²z, xy², xyz, xz², y³, y²z, yz², z³.
pub const MONOMIALS: [(u32, u32, u32); 10] = [
    (3, 0, 0),
    (2, 1, 0),
    (2, 0, 1),
    (1, 2, 0),
    (1, 1, 1),
    (1, 0, 2),
    (0, 3, 0),
    (0, 2, 1),
    (0, 1, 2),
    (0, 0, 3),
];

/// A plane cubic by its 10 coefficients in the fixed monomial order,
/// projectively normalized so the largest-modulus coefficient is 1.
/// Serializes as the bare list of 10 `[re, im]` pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TernaryCubic {
    pub coeffs: Vec<[f64; 2]>,
}

impl TernaryCubic {
    pub fn new(raw: [Complex64; 10]) -> Result<Self> {
        let mut best = 0usize;
        for (i, c) in raw.iter().enumerate() {
            if !c.is_finite() {
                return Err(Error::NonFinite { op: "TernaryCubic" });
            }
            if c.norm() > raw[best].norm() {
                best = i;
            }
        }
        if raw[best].norm() == 0.0 {
            return Err(Error::Invalid("zero ternary cubic".into()));
        }
        let scale = raw[best];
        Ok(TernaryCubic {
            coeffs: raw.iter().map(|c| { let v = c / scale; [v.re, v.im] }).collect(),
        })
    }

    pub fn coeff(&self, i: usize) -> Complex64 {
        Complex64::new(self.coeffs[i][0], self.coeffs[i][1])
    }

    pub fn eval(&self, p: &ProjPoint) -> Complex64 {
        let [x, y, z] = p.coords;
        let mut acc = Complex64::ZERO;
        for (i, &(a, b, c)) in MONOMIALS.iter().enumerate() {
            acc += self.coeff(i) * x.powu(a) * y.powu(b) * z.powu(c);
        }
        acc
    }

    /// `λ·self + μ·other` as a fresh normalized cubic.
    pub fn combine(&self, lam: Complex64, other: &TernaryCubic, mu: Complex64) -> Result<Self> {
        let mut raw = [Complex64::ZERO; 10];
        for (i, slot) in raw.iter_mut().enumerate() {
            *slot = lam * self.coeff(i) + mu * other.coeff(i);
        }
        TernaryCubic::new(raw)
    }
}

/// Point of the projective plane, scaled so the largest coordinate has
/// modulus 1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProjPoint {
    pub coords: [Complex64; 3],
}

impl ProjPoint {
    pub fn new(coords: [Complex64; 3]) -> Result<Self> {
        let mut best = 0usize;
        for (i, c) in coords.iter().enumerate() {
            if !c.is_finite() {
                return Err(Error::NonFinite { op: "ProjPoint" });
            }
            if c.norm() > coords[best].norm() {
                best = i;
            }
        }
        if coords[best].norm() == 0.0 {
            return Err(Error::Invalid("zero projective point".into()));
        }
        let s = coords[best];
        Ok(ProjPoint {
            coords: [coords[0] / s, coords[1] / s, coords[2] / s],
        })
    }

    pub fn affine(x: Complex64, y: Complex64) -> Result<Self> {
        ProjPoint::new([x, y, Complex64::ONE])
    }
}

/// Basis of the cubics vanishing on a point set, with the singular-value
/// evidence behind the dimension call.
#[derive(Clone, Debug)]
pub struct CubicSpace {
    pub basis: Vec<TernaryCubic>,
    pub dimension: usize,
    /// Ratio across the split between "rank" and "nullspace" singular
    /// values. Small ratios flag an ambiguous dimension.
    pub gap_ratio: f64,
    pub ambiguous: bool,
    pub singular_values: Vec<f64>,
}

/// Relative singular-value threshold for the rank decision.
const RANK_TOL: f64 = 1e-8;
/// Gap ratios below this raise the ambiguity warning.
const GAP_WARN: f64 = 1e8;

/// Nullspace of the evaluation matrix of the 10 cubic monomials on the given
/// points (≤ 9 of them), by SVD.
pub fn cubics_through(points: &[ProjPoint]) -> Result<CubicSpace> {
    if points.is_empty() || points.len() > 9 {
        return Err(Error::Invalid(format!(
            "cubics_through takes 1..=9 points, got {}",
            points.len()
        )));
    }
    let m = points.len();
    let mat = DMatrix::<Complex64>::from_fn(m, 10, |r, c| {
        let [x, y, z] = points[r].coords;
        let (a, b, cexp) = MONOMIALS[c];
        x.powu(a) * y.powu(b) * z.powu(cexp)
    });
    let svd = mat.clone().svd(false, true);
    let v_t = svd
        .v_t
        .as_ref()
        .ok_or_else(|| Error::Invalid("SVD did not produce V^H".into()))?;
    let mut sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    let mut order: Vec<usize> = (0..sv.len()).collect();
    order.sort_by(|&i, &j| sv[j].total_cmp(&sv[i]));
    sv.sort_by(|a, b| b.total_cmp(a));

    let sigma_max = sv.first().copied().unwrap_or(0.0);
    let threshold = RANK_TOL * sigma_max.max(f64::MIN_POSITIVE);
    let rank = sv.iter().filter(|&&s| s > threshold).count();
    let dimension = 10 - rank;
    // Gap between the smallest kept and largest discarded singular value.
    // With no discarded values, the gap is measured against the floor.
    let floor = f64::EPSILON * sigma_max.max(f64::MIN_POSITIVE);
    let below = if rank < sv.len() { sv[rank].max(floor) } else { floor };
    let gap_ratio = if rank == 0 { f64::INFINITY } else { sv[rank - 1] / below };

    // Nullspace vectors: rows of V^H beyond the row rank (columns of V for
    // small singular values), plus the 10 − m dimensions SVD cannot see.
    let mut basis = Vec::new();
    for idx in rank..sv.len() {
        let row = v_t.row(order[idx]);
        let mut raw = [Complex64::ZERO; 10];
        for i in 0..10 {
            raw[i] = row[i].conj();
        }
        basis.push(TernaryCubic::new(raw)?);
    }
    // Complete with an orthonormal complement of the row space when m < 10.
    if v_t.nrows() < 10 {
        let mut frame: Vec<nalgebra::DVector<Complex64>> = (0..v_t.nrows())
            .map(|i| v_t.row(i).transpose().map(|c| c.conj()))
            .collect();
        let mut e = 0usize;
        while frame.len() < 10 && e < 10 {
            let mut v = nalgebra::DVector::<Complex64>::zeros(10);
            v[e] = Complex64::ONE;
            for f in &frame {
                let proj = f.dotc(&v);
                v -= f * proj;
            }
            let norm = v.norm();
            if norm > 1e-8 {
                v /= Complex64::new(norm, 0.0);
                let mut raw = [Complex64::ZERO; 10];
                for i in 0..10 {
                    raw[i] = v[i];
                }
                basis.push(TernaryCubic::new(raw)?);
                frame.push(v);
            }
            e += 1;
        }
    }

    Ok(CubicSpace {
        dimension,
        gap_ratio,
        ambiguous: gap_ratio < GAP_WARN,
        singular_values: sv,
        basis,
    })
}

/// Two independent cubics spanning a pencil `λF + μG`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PencilOfCubics {
    pub f: TernaryCubic,
    pub g: TernaryCubic,
}

impl PencilOfCubics {
    pub fn new(f: TernaryCubic, g: TernaryCubic) -> Result<Self> {
        // Linear independence via the second singular value of the 2×10
        // coefficient matrix.
        let mat = DMatrix::<Complex64>::from_fn(2, 10, |r, c| {
            if r == 0 {
                f.coeff(c)
            } else {
                g.coeff(c)
            }
        });
        let svd = mat.svd(false, false);
        let mut sv: Vec<f64> = svd.singular_values.iter().copied().collect();
        sv.sort_by(|a, b| b.total_cmp(a));
        if sv.len() < 2 || sv[1] <= 1e-10 * sv[0].max(1.0) {
            return Err(Error::Invalid(
                "pencil generators are linearly dependent".into(),
            ));
        }
        Ok(PencilOfCubics { f, g })
    }

    pub fn member(&self, lam: Complex64, mu: Complex64) -> Result<TernaryCubic> {
        self.f.combine(lam, &self.g, mu)
    }
}

/// The pencil spanned by differences of cubes, `λ(x³−y³) + μ(y³−z³)`, with
/// its nine base points `[ζ^{p+q} : ζ^p : 1]`, `ζ` a primitive cube root of
/// unity. Every smooth member is diagonal, hence of j-invariant zero.
pub fn cube_difference_pencil() -> (PencilOfCubics, Vec<ProjPoint>) {
    let mut f_raw = [Complex64::ZERO; 10];
    f_raw[0] = Complex64::ONE; // x³
    f_raw[6] = -Complex64::ONE; // -y³
    let mut g_raw = [Complex64::ZERO; 10];
    g_raw[6] = Complex64::ONE; // y³
    g_raw[9] = -Complex64::ONE; // -z³
    let pencil = PencilOfCubics::new(
        TernaryCubic::new(f_raw).expect("nonzero"),
        TernaryCubic::new(g_raw).expect("nonzero"),
    )
    .expect("independent");

    let zeta = Complex64::from_polar(1.0, std::f64::consts::TAU / 3.0);
    let mut points = Vec::with_capacity(9);
    for p in 1..=3u32 {
        for q in 1..=3u32 {
            let zp = zeta.powu(p);
            let zpq = zeta.powu(p + q);
            points.push(ProjPoint::new([zpq, zp, Complex64::ONE]).expect("nonzero"));
        }
    }
    (pencil, points)
}

/// `j` of `y² = x³ + Ax + B`, infinite exactly on the singular locus.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum JInvariant {
    Finite(#[serde(with = "crate::cli::complex_pair")] Complex64),
    Infinite,
}

pub fn j_weierstrass(a: Complex64, b: Complex64) -> JInvariant {
    let num = a * a * a * 4.0;
    let den = num + b * b * 27.0;
    let scale = a.norm().powi(3).max(b.norm().powi(2));
    if den.norm() <= 1e-14 * scale.max(f64::MIN_POSITIVE) {
        JInvariant::Infinite
    } else {
        JInvariant::Finite(num / den * 1728.0)
    }
}

/// Diagonal-cubic recognition: `ax³ + by³ + cz³` with `abc ≠ 0` rescales to
/// the Fermat cubic, so its j-invariant is 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DiagonalJ {
    /// Diagonal with all three cube coefficients nonzero: j = 0.
    Zero,
    /// Diagonal support but a vanishing cube coefficient: singular member.
    Singular,
    NotDiagonal,
}

pub fn diagonal_cubic_j(c: &TernaryCubic) -> DiagonalJ {
    const DIAGONAL: [usize; 3] = [0, 6, 9];
    for i in 0..10 {
        if DIAGONAL.contains(&i) {
            continue;
        }
        if c.coeff(i).norm() > 1e-12 {
            return DiagonalJ::NotDiagonal;
        }
    }
    if DIAGONAL.iter().any(|&i| c.coeff(i).norm() <= 1e-12) {
        DiagonalJ::Singular
    } else {
        DiagonalJ::Zero
    }
}

/// A one-parameter Weierstrass family `y² = x³ + A(t)x + B(t)` with
/// polynomial coefficients in `t`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WeierstrassFamily {
    /// Coefficients of `A(t)`, constant term first.
    pub a: Vec<[f64; 2]>,
    /// Coefficients of `B(t)`, constant term first.
    pub b: Vec<[f64; 2]>,
}

impl WeierstrassFamily {
    fn eval_poly(coeffs: &[[f64; 2]], t: Complex64) -> Complex64 {
        let mut acc = Complex64::ZERO;
        for c in coeffs.iter().rev() {
            acc = acc * t + Complex64::new(c[0], c[1]);
        }
        acc
    }

    pub fn at(&self, t: Complex64) -> (Complex64, Complex64) {
        (
            Self::eval_poly(&self.a, t),
            Self::eval_poly(&self.b, t),
        )
    }
}

/// Verdict of a sampled isotriviality test.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum Isotriviality {
    Isotrivial {
        #[serde(with = "crate::cli::complex_pair")]
        j: Complex64,
        spread: f64,
    },
    NonIsotrivial {
        spread: f64,
    },
    Undecided {
        spread: f64,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IsotrivialityReport {
    pub verdict: Isotriviality,
    pub samples_used: usize,
    pub skipped: usize,
}

fn classify(j_values: &[Complex64], tol: f64) -> Isotriviality {
    let mut spread: f64 = 0.0;
    for i in 0..j_values.len() {
        for j in (i + 1)..j_values.len() {
            spread = spread.max((j_values[i] - j_values[j]).norm());
        }
    }
    if spread < tol {
        let mean = j_values.iter().sum::<Complex64>() / j_values.len() as f64;
        Isotriviality::Isotrivial { j: mean, spread }
    } else if spread > 10.0 * tol {
        Isotriviality::NonIsotrivial { spread }
    } else {
        Isotriviality::Undecided { spread }
    }
}

/// Sample members of a cubic pencil at random parameters and test whether
/// the j-invariant is constant. The only evaluation path for a raw pencil is
/// diagonal recognition; members that are singular or fall outside the path
/// are skipped and counted, and a run with no computable member fails with
/// `PathUnavailable`.
pub fn isotriviality_test(
    pencil: &PencilOfCubics,
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<IsotrivialityReport> {
    if samples < 3 {
        return Err(Error::Invalid("isotriviality test needs ≥ 3 samples".into()));
    }
    let mut rng = rng_for(seed, 0xC0B1C);
    let mut j_values = Vec::new();
    let mut skipped = 0usize;
    for _ in 0..samples {
        let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let lam = Complex64::from_polar(1.0, theta);
        let mu = Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
        let member = match pencil.member(lam, mu) {
            Ok(m) => m,
            Err(_) => {
                skipped += 1;
                continue;
            }
        };
        match diagonal_cubic_j(&member) {
            DiagonalJ::Zero => j_values.push(Complex64::ZERO),
            DiagonalJ::Singular => skipped += 1,
            DiagonalJ::NotDiagonal => skipped += 1,
        }
    }
    if j_values.len() < 2 {
        return Err(Error::PathUnavailable { skipped, samples });
    }
    Ok(IsotrivialityReport {
        verdict: classify(&j_values, tol),
        samples_used: j_values.len(),
        skipped,
    })
}

/// Isotriviality of a Weierstrass family by j-sampling at random parameters.
pub fn isotriviality_test_weierstrass(
    family: &WeierstrassFamily,
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<IsotrivialityReport> {
    if samples < 3 {
        return Err(Error::Invalid("isotriviality test needs ≥ 3 samples".into()));
    }
    let mut rng = rng_for(seed, 0xFA111);
    let mut j_values = Vec::new();
    let mut skipped = 0usize;
    for _ in 0..samples {
        let t = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let (a, b) = family.at(t);
        match j_weierstrass(a, b) {
            JInvariant::Finite(j) => j_values.push(j),
            JInvariant::Infinite => skipped += 1,
        }
    }
    if j_values.len() < 2 {
        return Err(Error::PathUnavailable { skipped, samples });
    }
    Ok(IsotrivialityReport {
        verdict: classify(&j_values, tol),
        samples_used: j_values.len(),
        skipped,
    })
}

/// Result of checking a nine-point configuration for an index-1 pencil.
#[derive(Clone, Debug)]
pub enum PencilCheck {
    Pencil {
        pencil: PencilOfCubics,
        space: CubicSpace,
    },
    NoPencil {
        space: CubicSpace,
        torsion_hint: Option<(u32, i64)>,
    },
}

/// Does a pencil of cubics pass through the nine configuration points?
///
/// The points are embedded projectively (`[x : y : 1]`, infinity at
/// `[0 : 1 : 0]`); the curve's own projective model always lies in the
/// space, so a pencil exists exactly when the evaluation nullspace is
/// 2-dimensional, equivalently when the configuration's class is trivial.
/// When no pencil exists, the uniformization-side torsion order is returned
/// as a hint.
pub fn halphen_index1_check(
    curve: &WeierstrassCurve,
    lattice: &LatticeTau,
    config: &NineConfig,
    torsion_n_max: u32,
    torsion_tol: f64,
) -> Result<PencilCheck> {
    let points: Vec<ProjPoint> = config
        .points()
        .iter()
        .map(|p| {
            let [x, y, z] = p.homogeneous();
            ProjPoint::new([x, y, z])
        })
        .collect::<Result<_>>()?;
    let space = cubics_through(&points)?;
    if space.dimension >= 2 {
        let pencil = PencilOfCubics::new(space.basis[0].clone(), space.basis[1].clone())?;
        Ok(PencilCheck::Pencil { pencil, space })
    } else {
        let class = chi(curve, lattice, config)?;
        let torsion_hint = torsion_order(&class, lattice, torsion_n_max, torsion_tol);
        Ok(PencilCheck::NoPencil {
            space,
            torsion_hint,
        })
    }
}
