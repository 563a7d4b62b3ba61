//! Numerical uniformization of Weierstrass curves and the arithmetic of
//! degree-zero line bundle classes: periods by complex AGM, elliptic
//! logarithms by branch-tracked path integration, the class map of nine-point
//! configurations, torsion and resonance detection, small divisors, Brjuno
//! sums, and Diophantine fits.

pub mod curve;
pub mod elog;
pub mod lattice;
pub mod pic;
pub(crate) mod quad;
pub mod resonance;
pub mod tate;

pub use curve::{CurvePoint, NineConfig, WeierstrassCurve};
pub use elog::elliptic_log;
pub use lattice::{periods, LatticeTau};
pub use pic::{
    brjuno_sum, chi, diophantine_fit, resonance_scan, small_divisors, small_divisors_table,
    torsion_order, BrjunoSum, DiophantineFit, Pic0Element, ResonanceEntry, ResonanceReport,
};
pub use tate::point_from_log;
