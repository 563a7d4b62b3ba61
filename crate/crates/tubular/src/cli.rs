//! Input/output formats and the command implementations behind the `tubular`
//! binary. Everything here is callable as a library; the binary only parses
//! arguments and moves bytes.
//!
//! Conventions: complex numbers serialize as `[re, im]` pairs, infinite radii
//! as the string `"inf"`, and every emitted artifact records the seed that
//! produced it.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::fibered::FiberedMap;
use crate::halphen::{
    cube_difference_pencil, cubics_through, diagonal_cubic_j, halphen_index1_check,
    isotriviality_test, DiagonalJ, IsotrivialityReport, PencilCheck, PencilOfCubics,
};
use crate::linearize::{
    conjugacy_residual, linearize, LinearizationResult, SolverOptions, StabilizationReport,
};
use crate::radius::{default_annulus, truncated_radius, RadiusEstimate};
use crate::series::{BiSeries, SupMode};
use crate::uniform::curve::{CurvePoint, NineConfig, WeierstrassCurve};
use crate::uniform::lattice::{periods, LatticeTau};
use crate::uniform::pic::{
    brjuno_sum, chi, diophantine_fit, resonance_scan, small_divisors_table, BrjunoSum,
    DiophantineFit, Pic0Element, ResonanceReport,
};
use crate::Result;

/// Serde adapter: `Complex64` as a `[re, im]` pair.
pub mod complex_pair {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(c: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        [c.re, c.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        if !(re.is_finite() && im.is_finite()) {
            return Err(serde::de::Error::custom("non-finite complex component"));
        }
        Ok(Complex64::new(re, im))
    }
}

fn cx(pair: [f64; 2]) -> Complex64 {
    Complex64::new(pair[0], pair[1])
}

// ---------------------------------------------------------------------------
// Tolerances and environment defaults
// ---------------------------------------------------------------------------

/// Tunable tolerances with their defaults. A JSON file named by the
/// `TUBULAR_CONFIG` environment variable can override any subset; explicit
/// CLI flags win over both.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    pub divisor_floor: f64,
    pub zero_tol: f64,
    pub warn_threshold: f64,
    pub torsion_tol: f64,
    pub on_curve_tol: f64,
    pub annulus_delta: f64,
    pub sup_samples: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            divisor_floor: 1e-12,
            zero_tol: 1e-13,
            warn_threshold: 1e-8,
            torsion_tol: 1e-10,
            on_curve_tol: 1e-9,
            annulus_delta: 0.05,
            sup_samples: crate::series::DEFAULT_SUP_SAMPLES,
        }
    }
}

impl Tolerances {
    pub fn solver(&self) -> SolverOptions {
        SolverOptions {
            divisor_floor: self.divisor_floor,
            zero_tol: self.zero_tol,
            warn_threshold: self.warn_threshold,
        }
    }

    /// Defaults, overridden by the `TUBULAR_CONFIG` file when the variable is
    /// set.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os("TUBULAR_CONFIG") {
            None => Ok(Tolerances::default()),
            Some(path) => {
                let text = std::fs::read_to_string(&path).map_err(|e| {
                    Error::Invalid(format!(
                        "cannot read TUBULAR_CONFIG file {}: {e}",
                        path.to_string_lossy()
                    ))
                })?;
                serde_json::from_str(&text)
                    .map_err(|e| Error::Invalid(format!("malformed TUBULAR_CONFIG: {e}")))
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Input formats
// ---------------------------------------------------------------------------

/// Curve plus nine marked points:
/// `{"A": [re, im], "B": [re, im], "points": [{"x": [..], "y": [..]} | "O", ×9]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurveConfigInput {
    #[serde(rename = "A", with = "complex_pair")]
    pub a: Complex64,
    #[serde(rename = "B", with = "complex_pair")]
    pub b: Complex64,
    pub points: Vec<PointInput>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointInput {
    Marker(String),
    Affine {
        #[serde(with = "complex_pair")]
        x: Complex64,
        #[serde(with = "complex_pair")]
        y: Complex64,
    },
}

impl PointInput {
    fn to_point(&self) -> Result<CurvePoint> {
        match self {
            PointInput::Affine { x, y } => Ok(CurvePoint::Affine { x: *x, y: *y }),
            PointInput::Marker(s) if s == "O" => Ok(CurvePoint::Infinity),
            PointInput::Marker(s) => Err(Error::Invalid(format!("unknown point marker `{s}`"))),
        }
    }

    pub fn from_point(p: &CurvePoint) -> Self {
        match p {
            CurvePoint::Infinity => PointInput::Marker("O".into()),
            CurvePoint::Affine { x, y } => PointInput::Affine { x: *x, y: *y },
        }
    }
}

impl CurveConfigInput {
    pub fn to_parts(&self, on_curve_tol: f64) -> Result<(WeierstrassCurve, NineConfig)> {
        let curve = WeierstrassCurve::new(self.a, self.b)?;
        if self.points.len() != 9 {
            return Err(Error::Invalid(format!(
                "expected 9 points, got {}",
                self.points.len()
            )));
        }
        let pts: Vec<CurvePoint> = self
            .points
            .iter()
            .map(|p| p.to_point())
            .collect::<Result<_>>()?;
        let config = NineConfig::new_with_tol(
            &curve,
            pts.try_into().expect("length 9"),
            on_curve_tol,
            crate::uniform::curve::SEPARATION_TOL,
        )?;
        Ok((curve, config))
    }
}

/// Gluing data `{q, lambda, a, b}`. The series `a` is the r-side
/// perturbation `Σ_{n≥1} a_n(z) rⁿ` (order-0 slice empty), `b` the z-side.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GluingDataInput {
    pub q: [f64; 2],
    pub lambda: [f64; 2],
    pub a: BiSeries,
    pub b: BiSeries,
}

impl GluingDataInput {
    pub fn to_map(&self, order: usize) -> Result<FiberedMap> {
        FiberedMap::gluing(
            cx(self.q),
            cx(self.lambda),
            self.b.truncated(order),
            self.a.truncated(order),
        )
    }

    pub fn from_map(map: &FiberedMap) -> Result<Self> {
        let (q, lambda) = match map.form() {
            crate::fibered::MapForm::Gluing { q, lambda } => (q, lambda),
            _ => return Err(Error::Invalid("gluing data requires a gluing map".into())),
        };
        Ok(GluingDataInput {
            q: [q.re, q.im],
            lambda: [lambda.re, lambda.im],
            a: map.r_pert().clone(),
            b: map.z_pert().clone(),
        })
    }
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct AnalyzeOptions {
    pub torsion_n_max: u32,
    pub torsion_tol: f64,
    pub resonance_tol: f64,
    pub brjuno_k_max: u32,
    pub diophantine_n_max: u32,
    pub on_curve_tol: f64,
    pub seed: u64,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            torsion_n_max: 20,
            torsion_tol: 1e-10,
            resonance_tol: 1e-10,
            brjuno_k_max: 10,
            diophantine_n_max: 1000,
            on_curve_tol: 1e-9,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AnalyzeReport {
    #[serde(with = "complex_pair")]
    pub tau: Complex64,
    #[serde(with = "complex_pair")]
    pub q: Complex64,
    pub class: Pic0Element,
    pub torsion: Option<(u32, i64)>,
    pub resonances: ResonanceReport,
    /// `(n, Ω_n)` table.
    pub small_divisors: Vec<(u32, f64)>,
    pub brjuno: BrjunoSum,
    pub diophantine: DiophantineFit,
    pub options: AnalyzeOptions,
    pub seed: u64,
}

/// Full pipeline: periods → class map → torsion/resonance → small divisors →
/// Brjuno partial sum → Diophantine fit.
pub fn cmd_analyze(input: &CurveConfigInput, opts: &AnalyzeOptions) -> Result<AnalyzeReport> {
    let (curve, config) = input.to_parts(opts.on_curve_tol)?;
    let lattice = periods(&curve)?;
    let class = chi(&curve, &lattice, &config)?;
    let resonances = resonance_scan(class.lambda, lattice.q, opts.torsion_n_max, opts.resonance_tol);
    let torsion = crate::uniform::pic::torsion_order(
        &class,
        &lattice,
        opts.torsion_n_max,
        opts.torsion_tol,
    );
    let omegas = small_divisors_table(&class, &lattice, opts.torsion_n_max);
    let small_divisors = (1..=opts.torsion_n_max).zip(omegas).collect();
    let brjuno = brjuno_sum(&class, &lattice, opts.brjuno_k_max);
    let diophantine = diophantine_fit(&class, &lattice, opts.diophantine_n_max);
    Ok(AnalyzeReport {
        tau: lattice.tau,
        q: lattice.q,
        class,
        torsion,
        resonances,
        small_divisors,
        brjuno,
        diophantine,
        options: *opts,
        seed: opts.seed,
    })
}

// ---------------------------------------------------------------------------
// linearize / radius
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LinearizeReport {
    pub q: [f64; 2],
    pub lambda: [f64; 2],
    pub order: usize,
    pub seed: u64,
    pub solver: SolverOptions,
    pub result: LinearizationResult,
    /// Conjugacy residual of the returned (possibly partial) change of
    /// variable, over the solved orders.
    pub residual: Option<f64>,
    pub stabilization: Option<StabilizationReport>,
}

pub fn cmd_linearize(
    map: &FiberedMap,
    order: usize,
    solver: &SolverOptions,
    seed: u64,
    check_stabilization: bool,
) -> Result<LinearizeReport> {
    let (q, lambda) = map.scales();
    let result = linearize(map, order, solver)?;
    let residual = if result.orders_solved > 0 {
        let g = result.composite()?;
        Some(conjugacy_residual(map, &g, result.orders_solved)?)
    } else {
        None
    };
    let stabilization = if check_stabilization {
        Some(crate::linearize::stabilization_check(map, order, solver)?)
    } else {
        None
    };
    Ok(LinearizeReport {
        q: [q.re, q.im],
        lambda: [lambda.re, lambda.im],
        order,
        seed,
        solver: *solver,
        result,
        residual,
        stabilization,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RadiusReport {
    pub q: [f64; 2],
    pub lambda: [f64; 2],
    pub order: usize,
    pub orders_solved: usize,
    pub seed: u64,
    pub annulus_delta: f64,
    pub sample: RadiusEstimate,
    pub bound: RadiusEstimate,
    pub obstruction_order: Option<usize>,
}

pub fn cmd_radius(
    map: &FiberedMap,
    order: usize,
    solver: &SolverOptions,
    annulus_delta: f64,
    sup_samples: usize,
    seed: u64,
) -> Result<RadiusReport> {
    let (q, lambda) = map.scales();
    let result = linearize(map, order, solver)?;
    let annulus = default_annulus(q, annulus_delta)?;
    let sample = truncated_radius(&result, &annulus, SupMode::Sample(sup_samples))?;
    let bound = truncated_radius(&result, &annulus, SupMode::Bound)?;
    Ok(RadiusReport {
        q: [q.re, q.im],
        lambda: [lambda.re, lambda.im],
        order,
        orders_solved: result.orders_solved,
        seed,
        annulus_delta,
        sample,
        bound,
        obstruction_order: result.obstructions.first().map(|o| o.order),
    })
}

// ---------------------------------------------------------------------------
// pencil
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PencilReport {
    pub source: String,
    pub dimension: usize,
    pub gap_ratio: f64,
    pub ambiguous: bool,
    pub singular_values: Vec<f64>,
    pub pencil: Option<PencilOfCubics>,
    pub diagonal_members: Option<usize>,
    pub isotriviality: Option<IsotrivialityReport>,
    pub torsion_hint: Option<(u32, i64)>,
    pub samples: usize,
    pub tol: f64,
    pub seed: u64,
}

/// The bundled cube-difference pencil: base points, nullspace evidence,
/// diagonal membership of sampled members, and the isotriviality verdict.
pub fn cmd_pencil_example(samples: usize, tol: f64, seed: u64) -> Result<PencilReport> {
    let (pencil, points) = cube_difference_pencil();
    let space = cubics_through(&points)?;
    let mut diagonal_members = 0usize;
    let mut rng = crate::gen::rng_for(seed, 0xD1A6);
    use rand::Rng;
    for _ in 0..samples {
        let lam = Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
        let mu = Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
        if let Ok(member) = pencil.member(lam, mu) {
            if !matches!(diagonal_cubic_j(&member), DiagonalJ::NotDiagonal) {
                diagonal_members += 1;
            }
        }
    }
    let isotriviality = isotriviality_test(&pencil, samples, tol, seed)?;
    Ok(PencilReport {
        source: "cube-difference".into(),
        dimension: space.dimension,
        gap_ratio: space.gap_ratio,
        ambiguous: space.ambiguous,
        singular_values: space.singular_values,
        pencil: Some(pencil),
        diagonal_members: Some(diagonal_members),
        isotriviality: Some(isotriviality),
        torsion_hint: None,
        samples,
        tol,
        seed,
    })
}

/// Pencil check of a curve-plus-nine-points configuration.
pub fn cmd_pencil_config(
    input: &CurveConfigInput,
    samples: usize,
    tol: f64,
    seed: u64,
    torsion_n_max: u32,
    torsion_tol: f64,
    on_curve_tol: f64,
) -> Result<PencilReport> {
    let (curve, config) = input.to_parts(on_curve_tol)?;
    let lattice = periods(&curve)?;
    let check = halphen_index1_check(&curve, &lattice, &config, torsion_n_max, torsion_tol)?;
    let report = match check {
        PencilCheck::Pencil { pencil, space } => PencilReport {
            source: "points".into(),
            dimension: space.dimension,
            gap_ratio: space.gap_ratio,
            ambiguous: space.ambiguous,
            singular_values: space.singular_values,
            pencil: Some(pencil),
            diagonal_members: None,
            isotriviality: None,
            torsion_hint: None,
            samples,
            tol,
            seed,
        },
        PencilCheck::NoPencil {
            space,
            torsion_hint,
        } => PencilReport {
            source: "points".into(),
            dimension: space.dimension,
            gap_ratio: space.gap_ratio,
            ambiguous: space.ambiguous,
            singular_values: space.singular_values,
            pencil: None,
            diagonal_members: None,
            isotriviality: None,
            torsion_hint,
            samples,
            tol,
            seed,
        },
    };
    Ok(report)
}

// ---------------------------------------------------------------------------
// Shared helpers for examples/tests
// ---------------------------------------------------------------------------

/// Nine points on the curve whose class is a prescribed element: eight
/// seeded random points, the ninth chosen via the group law (plus an optional
/// shift with a prescribed logarithm) so that `Σ u ≡ −t_target`.
pub fn config_with_class(
    curve: &WeierstrassCurve,
    lattice: &LatticeTau,
    t_target: Complex64,
    seed: u64,
) -> Result<(NineConfig, Pic0Element)> {
    use crate::uniform::elog::elliptic_log;
    use crate::uniform::tate::point_from_log;

    let mut rng = crate::gen::rng_for(seed, 0x91ECE);
    loop {
        let mut pts: Vec<CurvePoint> = Vec::with_capacity(9);
        let mut total = Complex64::ZERO;
        for _ in 0..8 {
            let p = crate::gen::random_point_on(&mut rng, curve);
            total += elliptic_log(curve, lattice, &p)?;
            pts.push(p);
        }
        // u₉ ≡ −t_target − Σ₁⁸ u.
        let u9 = -t_target - total;
        let p9 = point_from_log(curve, lattice, u9)?;
        pts.push(p9);
        let arr: [CurvePoint; 9] = pts.try_into().expect("nine points");
        match NineConfig::new(curve, arr) {
            Ok(config) => {
                let class = chi(curve, lattice, &config)?;
                return Ok((config, class));
            }
            Err(_) => continue, // collision; redraw
        }
    }
}

pub fn curve_config_json(curve: &WeierstrassCurve, config: &NineConfig) -> CurveConfigInput {
    CurveConfigInput {
        a: curve.a,
        b: curve.b,
        points: config.points().iter().map(PointInput::from_point).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerances_default_roundtrip() {
        let t = Tolerances::default();
        let text = serde_json::to_string(&t).unwrap();
        let back: Tolerances = serde_json::from_str(&text).unwrap();
        assert_eq!(t.divisor_floor, back.divisor_floor);
        // Partial override keeps the rest at defaults.
        let partial: Tolerances = serde_json::from_str(r#"{"torsion_tol": 1e-7}"#).unwrap();
        assert_eq!(partial.torsion_tol, 1e-7);
        assert_eq!(partial.divisor_floor, t.divisor_floor);
    }

    #[test]
    fn curve_config_parses_spec_shape() {
        let text = r#"{
            "A": [-1.0, 0.0],
            "B": [0.0, 0.0],
            "points": [
                "O",
                {"x": [2.0, 0.0], "y": [2.449489742783178, 0.0]},
                {"x": [3.0, 0.0], "y": [4.898979485566356, 0.0]},
                {"x": [2.0, 0.0], "y": [-2.449489742783178, 0.0]},
                {"x": [3.0, 0.0], "y": [-4.898979485566356, 0.0]},
                {"x": [5.0, 0.0], "y": [10.954451150103322, 0.0]},
                {"x": [5.0, 0.0], "y": [-10.954451150103322, 0.0]},
                {"x": [1.5, 0.0], "y": [1.3693063937629153, 0.0]},
                {"x": [1.5, 0.0], "y": [-1.3693063937629153, 0.0]}
            ]
        }"#;
        let input: CurveConfigInput = serde_json::from_str(text).unwrap();
        let (curve, config) = input.to_parts(1e-9).unwrap();
        assert_eq!(curve.a, Complex64::new(-1.0, 0.0));
        assert_eq!(config.points().len(), 9);
        // Round trip.
        let back = curve_config_json(&curve, &config);
        let text2 = serde_json::to_string(&back).unwrap();
        let input2: CurveConfigInput = serde_json::from_str(&text2).unwrap();
        let (_, config2) = input2.to_parts(1e-9).unwrap();
        assert_eq!(config.points(), config2.points());
    }

    #[test]
    fn gluing_data_roundtrip() {
        let a = BiSeries::from_terms(3, &[(1, 1, Complex64::new(0.5, -0.25))]).unwrap();
        let b = BiSeries::from_terms(3, &[(2, -2, Complex64::new(0.1, 0.9))]).unwrap();
        let input = GluingDataInput {
            q: [0.4, 0.1],
            lambda: [1.1, -0.3],
            a,
            b,
        };
        let map = input.to_map(3).unwrap();
        let back = GluingDataInput::from_map(&map).unwrap();
        let t1 = serde_json::to_string(&input).unwrap();
        let t2 = serde_json::to_string(&back).unwrap();
        assert_eq!(t1, t2);
    }
}
