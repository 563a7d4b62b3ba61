//! Neighborhoods of elliptic curves in surfaces, computed order by order.
//!
//! A degree-zero neighborhood germ is presented by gluing data `(q, λ, a, b)`:
//! the surface piece is `ℂ^× × disk ∋ (z, r)` glued by
//! `f(z, r) = (q z (1 + r b(z, r)), λ r (1 + r a(z, r)))`.
//! This crate solves the homological equation order by order to produce the
//! formal change of variable conjugating `f` to its linear part `(qz, λr)`,
//! detects torsion/resonance obstructions, estimates the sup-based radius of
//! the resulting series over a fixed annulus, and connects the picture to
//! plane geometry: nine-point configurations on a Weierstrass cubic, the class
//! map into `Pic⁰`, and pencils of cubics through the nine base points.
//!
//! Entry points:
//! - [`series`]: truncated bi-graded series (Laurent in `z`, power in `r`).
//! - [`fibered`]: fibered maps of the gluing/normalized shape, composition and
//!   inversion through a fixed `r`-order.
//! - [`linearize`]: the order-by-order solver with per-order diagnostics.
//! - [`uniform`]: periods by complex AGM, elliptic logarithms, the class map,
//!   torsion, small divisors, Brjuno sums.
//! - [`radius`]: annuli, truncated sup-radius estimates, usc envelopes.
//! - [`scan`]: deterministic seeded parameter sweeps with CSV output.
//! - [`halphen`]: ternary cubics, nullspaces through point sets,
//!   j-invariants and isotriviality testing.
//!
//! Each capability has a runnable demo under `examples/`.

pub mod cli;
pub mod error;
pub mod fibered;
pub mod gen;
pub mod halphen;
pub mod linearize;
pub mod radius;
pub mod scan;
pub mod series;
pub mod uniform;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
