//! Thin command-line front end. All functionality lives in the library; this
//! binary parses flags, reads and writes files, and maps errors to exit
//! codes: 0 success, 1 malformed input or I/O trouble, 2 domain errors (with
//! a machine-readable error object on stdout).

use clap::{Args, Parser, Subcommand};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use tubular::cli::{
    cmd_analyze, cmd_linearize, cmd_pencil_config, cmd_pencil_example, cmd_radius,
    AnalyzeOptions, CurveConfigInput, GluingDataInput, Tolerances,
};
use tubular::error::Error;
use tubular::fibered::FiberedMap;
use tubular::gen::{random_gluing_map, random_nontorsion_lambda, random_q, rng_for};
use tubular::scan::{run_scan, write_csv, GridSpec, ScanConfig};

#[derive(Parser)]
#[command(
    name = "tubular",
    about = "Formal linearization of elliptic curve neighborhoods: solvers, diagnostics, scans",
    version
)]
struct CliArgs {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOut {
    /// Output file (stdout when omitted).
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct GluingSource {
    /// Gluing-data JSON file {q, lambda, a, b}.
    #[arg(long, conflicts_with = "seed")]
    input: Option<PathBuf>,
    /// Generate seeded data instead of reading a file.
    #[arg(long)]
    seed: Option<u64>,
    /// Band half width |k| ≤ band for generated data.
    #[arg(long, default_value_t = 3)]
    band: i64,
    /// Coefficient scale for generated data.
    #[arg(long, default_value_t = 1.0)]
    coeff_scale: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Curve + nine points: periods, class map, torsion, resonances, small
    /// divisors, Brjuno sum, Diophantine fit.
    Analyze {
        /// Curve/config JSON file.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 20)]
        n_max: u32,
        #[arg(long)]
        torsion_tol: Option<f64>,
        #[arg(long, default_value_t = 10)]
        brjuno_k_max: u32,
        #[arg(long, default_value_t = 1000)]
        diophantine_n_max: u32,
        #[arg(long)]
        on_curve_tol: Option<f64>,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Solve the homological equations order by order and report the change
    /// of variable with per-order diagnostics.
    Linearize {
        #[command(flatten)]
        source: GluingSource,
        #[arg(long, default_value_t = 8)]
        order: usize,
        #[arg(long)]
        divisor_floor: Option<f64>,
        /// Also run the two-schedule stabilization check.
        #[arg(long, default_value_t = false)]
        check_stabilization: bool,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Linearize and report bracketed truncated radius estimates.
    Radius {
        #[command(flatten)]
        source: GluingSource,
        #[arg(long, default_value_t = 8)]
        order: usize,
        #[arg(long)]
        divisor_floor: Option<f64>,
        #[arg(long)]
        annulus_delta: Option<f64>,
        #[arg(long)]
        samples: Option<usize>,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Pencils of cubics through nine points and isotriviality testing.
    Pencil {
        /// Curve/config JSON file (same shape as `analyze` input).
        #[arg(long, conflicts_with = "example_2_4")]
        points: Option<PathBuf>,
        /// Use the bundled cube-difference pencil and its nine base points.
        #[arg(long = "example-2-4", default_value_t = false)]
        example_2_4: bool,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        n_max: u32,
        #[arg(long)]
        torsion_tol: Option<f64>,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Deterministic seeded parameter sweep, CSV output.
    Scan {
        /// Grid specification JSON file.
        #[arg(long)]
        grid_spec: PathBuf,
        #[arg(long, default_value_t = 8)]
        order: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        band: i64,
        #[arg(long, default_value_t = 1.0)]
        coeff_scale: f64,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        annulus_delta: Option<f64>,
        /// Worker threads (defaults to the rayon global default).
        #[arg(long)]
        threads: Option<usize>,
        /// First row of a resumable chunk.
        #[arg(long)]
        row_start: Option<usize>,
        /// One past the last row of a resumable chunk.
        #[arg(long)]
        row_end: Option<usize>,
        #[command(flatten)]
        out: CommonOut,
    },
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("malformed JSON in {}: {e}", path.display()))
}

fn emit(out: &CommonOut, text: &str) -> Result<(), String> {
    match &out.output {
        None => {
            println!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(path, text.as_bytes())
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
    }
}

fn resolve_gluing(source: &GluingSource, order: usize) -> Result<(FiberedMap, u64), AppError> {
    match (&source.input, source.seed) {
        (Some(path), _) => {
            let input: GluingDataInput = read_json(path).map_err(AppError::Usage)?;
            let map = input.to_map(order).map_err(AppError::Domain)?;
            Ok((map, 0))
        }
        (None, Some(seed)) => {
            let mut rng = rng_for(seed, 0x91);
            let q = random_q(&mut rng, 0.2, 0.7);
            let lambda = random_nontorsion_lambda(&mut rng, q, 20, 1e-10);
            let map = random_gluing_map(
                &mut rng,
                q,
                lambda,
                order,
                source.band,
                source.coeff_scale,
            );
            Ok((map, seed))
        }
        (None, None) => Err(AppError::Usage(
            "either --input or --seed is required".into(),
        )),
    }
}

enum AppError {
    /// Malformed input, I/O, bad flags: exit 1.
    Usage(String),
    /// Valid input, failed computation: exit 2 with an error object.
    Domain(Error),
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable report")
}

fn run() -> Result<(), AppError> {
    let args = CliArgs::parse();
    let tol = Tolerances::from_env().map_err(|e| AppError::Usage(e.to_string()))?;

    match args.command {
        Command::Analyze {
            input,
            n_max,
            torsion_tol,
            brjuno_k_max,
            diophantine_n_max,
            on_curve_tol,
            out,
        } => {
            let parsed: CurveConfigInput = read_json(&input).map_err(AppError::Usage)?;
            let opts = AnalyzeOptions {
                torsion_n_max: n_max,
                torsion_tol: torsion_tol.unwrap_or(tol.torsion_tol),
                resonance_tol: torsion_tol.unwrap_or(tol.torsion_tol),
                brjuno_k_max,
                diophantine_n_max,
                on_curve_tol: on_curve_tol.unwrap_or(tol.on_curve_tol),
                seed: 0,
            };
            let report = cmd_analyze(&parsed, &opts).map_err(AppError::Domain)?;
            emit(&out, &to_json(&report)).map_err(AppError::Usage)
        }
        Command::Linearize {
            source,
            order,
            divisor_floor,
            check_stabilization,
            out,
        } => {
            let (map, seed) = resolve_gluing(&source, order)?;
            let mut solver = tol.solver();
            if let Some(floor) = divisor_floor {
                solver.divisor_floor = floor;
            }
            let report = cmd_linearize(&map, order, &solver, seed, check_stabilization)
                .map_err(AppError::Domain)?;
            emit(&out, &to_json(&report)).map_err(AppError::Usage)
        }
        Command::Radius {
            source,
            order,
            divisor_floor,
            annulus_delta,
            samples,
            out,
        } => {
            let (map, seed) = resolve_gluing(&source, order)?;
            let mut solver = tol.solver();
            if let Some(floor) = divisor_floor {
                solver.divisor_floor = floor;
            }
            let report = cmd_radius(
                &map,
                order,
                &solver,
                annulus_delta.unwrap_or(tol.annulus_delta),
                samples.unwrap_or(tol.sup_samples),
                seed,
            )
            .map_err(AppError::Domain)?;
            emit(&out, &to_json(&report)).map_err(AppError::Usage)
        }
        Command::Pencil {
            points,
            example_2_4,
            samples,
            tol: pencil_tol,
            seed,
            n_max,
            torsion_tol,
            out,
        } => {
            let report = if example_2_4 {
                cmd_pencil_example(samples, pencil_tol, seed).map_err(AppError::Domain)?
            } else if let Some(path) = points {
                let parsed: CurveConfigInput = read_json(&path).map_err(AppError::Usage)?;
                cmd_pencil_config(
                    &parsed,
                    samples,
                    pencil_tol,
                    seed,
                    n_max,
                    torsion_tol.unwrap_or(tol.torsion_tol),
                    tol.on_curve_tol,
                )
                .map_err(AppError::Domain)?
            } else {
                return Err(AppError::Usage(
                    "pencil requires --points FILE or --example-2-4".into(),
                ));
            };
            emit(&out, &to_json(&report)).map_err(AppError::Usage)
        }
        Command::Scan {
            grid_spec,
            order,
            seed,
            band,
            coeff_scale,
            samples,
            annulus_delta,
            threads,
            row_start,
            row_end,
            out,
        } => {
            let spec: GridSpec = read_json(&grid_spec).map_err(AppError::Usage)?;
            let config = ScanConfig {
                seed,
                order,
                band,
                coeff_scale,
                annulus_delta: annulus_delta.unwrap_or(tol.annulus_delta),
                sup_samples: samples.unwrap_or(tol.sup_samples),
                torsion_n_max: 20,
                torsion_tol: tol.torsion_tol,
                solver: tol.solver(),
            };
            let range = match (row_start, row_end) {
                (None, None) => None,
                (a, b) => Some((a.unwrap_or(0), b.unwrap_or(spec.len()))),
            };
            let rows = match threads {
                None => run_scan(&spec, &config, range).map_err(AppError::Domain)?,
                Some(k) => {
                    let pool = rayon::ThreadPoolBuilder::new()
                        .num_threads(k)
                        .build()
                        .map_err(|e| AppError::Usage(format!("thread pool: {e}")))?;
                    pool.install(|| run_scan(&spec, &config, range))
                        .map_err(AppError::Domain)?
                }
            };
            let mut buffer = Vec::new();
            write_csv(&mut buffer, &spec, &config, &rows)
                .map_err(|e| AppError::Usage(format!("csv: {e}")))?;
            match &out.output {
                None => {
                    std::io::stdout()
                        .write_all(&buffer)
                        .map_err(|e| AppError::Usage(e.to_string()))?;
                    Ok(())
                }
                Some(path) => std::fs::write(path, &buffer)
                    .map_err(|e| AppError::Usage(format!("cannot write {}: {e}", path.display()))),
            }
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(AppError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(AppError::Domain(err)) => {
            let obj = serde_json::json!({
                "error": {
                    "message": err.to_string(),
                    "exit_code": err.exit_code(),
                }
            });
            println!("{obj}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
