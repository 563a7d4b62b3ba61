//! Crate error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite coefficient produced in {op}")]
    NonFinite { op: &'static str },

    #[error("evaluation at z = 0 with a negative Laurent band")]
    EvalAtZero,

    #[error("composition of two gluing-form maps is not supported")]
    GluingCompose,

    #[error("{op} requires a normalized-form map")]
    NotNormalized { op: &'static str },

    #[error("curve is singular or nearly singular (relative discriminant {disc:.3e})")]
    SingularCurve { disc: f64 },

    #[error("point is not on the curve (relative residual {residual:.3e})")]
    PointOffCurve { residual: f64 },

    #[error("configuration points are not pairwise distinct (min separation {sep:.3e})")]
    PointsNotDistinct { sep: f64 },

    #[error("complex AGM did not converge after {iters} iterations")]
    AgmDiverged { iters: usize },

    #[error("period lattice identification failed (best residual {residual:.3e})")]
    PeriodValidation { residual: f64 },

    #[error("integration path construction failed near a branch point")]
    PathConstruction,

    #[error("map is not linear through order {order}: order-{found} slice has magnitude {magnitude:.3e}")]
    NotLinearBelow {
        order: usize,
        found: usize,
        magnitude: f64,
    },

    #[error("radius estimate requires at least one solved order")]
    NoSolvedOrders,

    #[error("all grid points are masked")]
    AllMasked,

    #[error("no computable pencil member ({skipped} of {samples} samples skipped)")]
    PathUnavailable { skipped: usize, samples: usize },

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// Process exit code for the CLI: domain/numeric failures exit 2,
    /// everything reachable only through malformed input exits 1.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Invalid(_) => 1,
            _ => 2,
        }
    }
}
