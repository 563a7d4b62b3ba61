//! Branch-tracked quadrature along piecewise-straight paths in the plane.
//!
//! Everything here integrates `numer(p)/√(value_sq(p))` with the square root
//! continued analytically from a given starting value: consecutive
//! evaluations pick the root closest to the previous one, which is exact as
//! long as no step wanders a half-turn in the argument. Path builders keep a
//! margin from the supplied singular points and size chunks relative to
//! their distance from them, so that condition holds by construction.

use num_complex::Complex64;

use crate::error::Error;
use crate::Result;

pub(crate) fn project_on_segment(p: Complex64, a: Complex64, b: Complex64) -> Complex64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return a;
    }
    let t = ((p - a) * ab.conj()).re / len2;
    a + ab * t.clamp(0.0, 1.0)
}

pub(crate) fn dist_point_segment(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    (p - project_on_segment(p, a, b)).norm()
}

/// Waypoints from `a` to `b` keeping `margin` from every listed point, by
/// recursive detours around the worst offender. Appends to `out` (which
/// should already hold `a`).
pub(crate) fn build_path(
    a: Complex64,
    b: Complex64,
    avoid: &[Complex64],
    margin: f64,
    depth: usize,
    out: &mut Vec<Complex64>,
) -> Result<()> {
    if depth > 12 {
        return Err(Error::PathConstruction);
    }
    let mut worst: Option<(f64, Complex64)> = None;
    for &e in avoid {
        let d = dist_point_segment(e, a, b);
        if d < margin && worst.map_or(true, |(w, _)| d < w) {
            worst = Some((d, e));
        }
    }
    match worst {
        None => {
            out.push(b);
            Ok(())
        }
        Some((_, e)) => {
            let proj = project_on_segment(e, a, b);
            let away = {
                let d = proj - e;
                if d.norm() > 0.05 * margin {
                    d / d.norm()
                } else {
                    let t = b - a;
                    Complex64::new(0.0, 1.0) * t / t.norm()
                }
            };
            let w = e + away * (2.5 * margin);
            build_path(a, w, avoid, margin, depth + 1, out)?;
            build_path(w, b, avoid, margin, depth + 1, out)
        }
    }
}

fn split_chunks(
    a: Complex64,
    b: Complex64,
    avoid: &[Complex64],
    depth: usize,
    out: &mut Vec<Complex64>,
) -> Result<()> {
    if depth > 40 {
        return Err(Error::PathConstruction);
    }
    let d = avoid
        .iter()
        .map(|&e| dist_point_segment(e, a, b))
        .fold(f64::INFINITY, f64::min);
    if (b - a).norm() <= 0.25 * d {
        out.push(b);
        return Ok(());
    }
    let mid = (a + b) / 2.0;
    split_chunks(a, mid, avoid, depth + 1, out)?;
    split_chunks(mid, b, avoid, depth + 1, out)
}

/// Integrate one straight leg, pre-split so every chunk is short relative to
/// its distance from the singular points.
pub(crate) fn integrate_chunked(
    a: Complex64,
    b: Complex64,
    s_at_a: Complex64,
    value_sq: &dyn Fn(Complex64) -> Complex64,
    numer: &dyn Fn(Complex64) -> Complex64,
    avoid: &[Complex64],
    tol: f64,
) -> Result<(Complex64, Complex64)> {
    let mut chunks = Vec::new();
    split_chunks(a, b, avoid, 0, &mut chunks)?;
    let mut acc = Complex64::ZERO;
    let mut s = s_at_a;
    let chunk_tol = (tol / chunks.len() as f64).max(1e-16);
    let mut start = a;
    for &end in &chunks {
        let (val, s_end) = tracked_integral(start, end, s, value_sq, numer, chunk_tol, 0)?;
        acc += val;
        s = s_end;
        start = end;
    }
    Ok((acc, s))
}

// 8-point Gauss–Legendre rule on [-1, 1].
const GL_X: [f64; 8] = [
    -0.9602898564975363,
    -0.7966664774136267,
    -0.5255324099163290,
    -0.1834346424956498,
    0.1834346424956498,
    0.5255324099163290,
    0.7966664774136267,
    0.9602898564975363,
];
const GL_W: [f64; 8] = [
    0.1012285362903763,
    0.2223810344533745,
    0.3137066458778873,
    0.3626837833783620,
    0.3626837833783620,
    0.3137066458778873,
    0.2223810344533745,
    0.1012285362903763,
];

/// One Gauss pass over the segment with the branch carried node to node.
fn gauss_pass(
    a: Complex64,
    b: Complex64,
    s_at_a: Complex64,
    value_sq: &dyn Fn(Complex64) -> Complex64,
    numer: &dyn Fn(Complex64) -> Complex64,
) -> (Complex64, Complex64) {
    let half = (b - a) / 2.0;
    let mid = (a + b) / 2.0;
    let mut s_prev = s_at_a;
    let mut acc = Complex64::ZERO;
    for i in 0..8 {
        let p = mid + half * GL_X[i];
        let mut s = value_sq(p).sqrt();
        if (s + s_prev).norm() < (s - s_prev).norm() {
            s = -s;
        }
        acc += numer(p) / s * GL_W[i];
        s_prev = s;
    }
    let mut s_end = value_sq(b).sqrt();
    if (s_end + s_prev).norm() < (s_end - s_prev).norm() {
        s_end = -s_end;
    }
    (acc * half, s_end)
}

/// Adaptive branch-tracked quadrature of `numer(p)/√(value_sq(p))` over the
/// straight segment `[a, b]`, starting from the branch value `s_at_a`.
/// Returns the integral and the continued branch value at `b`.
///
/// Past the depth cap the bisected estimate is accepted as is: on an
/// analytic integrand the panel error there is already at roundoff, below
/// anything a requested tolerance could certify in binary64.
pub(crate) fn tracked_integral(
    a: Complex64,
    b: Complex64,
    s_at_a: Complex64,
    value_sq: &dyn Fn(Complex64) -> Complex64,
    numer: &dyn Fn(Complex64) -> Complex64,
    tol: f64,
    depth: usize,
) -> Result<(Complex64, Complex64)> {
    let (coarse, _) = gauss_pass(a, b, s_at_a, value_sq, numer);
    let mid = (a + b) / 2.0;
    let (left, s_mid) = gauss_pass(a, mid, s_at_a, value_sq, numer);
    let (right, s_end) = gauss_pass(mid, b, s_mid, value_sq, numer);
    let fine = left + right;
    if depth > 28 || (coarse - fine).norm() <= tol.max(4e-16 * fine.norm()) {
        return Ok((fine, s_end));
    }
    let (vl, sl) = tracked_integral(a, mid, s_at_a, value_sq, numer, tol / 2.0, depth + 1)?;
    let (vr, sr) = tracked_integral(mid, b, sl, value_sq, numer, tol / 2.0, depth + 1)?;
    Ok((vl + vr, sr))
}

/// Desingularized integral of `dx/√((x−e)·h(x))` from the branch point `e`
/// itself out to `target`, via `x = e + t²`. The branch along the leg starts
/// at the principal `√h(e)`; the return value carries the continued `y` at
/// `target` so callers can keep tracking.
pub(crate) fn leg_from_root(
    e: Complex64,
    target: Complex64,
    h: &dyn Fn(Complex64) -> Complex64,
    tol: f64,
) -> Result<(Complex64, Complex64)> {
    let t1 = (target - e).sqrt();
    let s0 = h(e).sqrt();
    let value_sq = move |t: Complex64| h(e + t * t);
    let numer = |_t: Complex64| Complex64::new(2.0, 0.0);
    let (integral, s1) = tracked_integral(Complex64::ZERO, t1, s0, &value_sq, &numer, tol, 0)?;
    Ok((integral, t1 * s1))
}

/// Same desingularized leg, walked inward: from `start` (where the branch of
/// `y` is `y_at_start`) down to the branch point `e`.
pub(crate) fn leg_into_root(
    e: Complex64,
    start: Complex64,
    y_at_start: Complex64,
    h: &dyn Fn(Complex64) -> Complex64,
    tol: f64,
) -> Result<Complex64> {
    let t0 = (start - e).sqrt();
    let s0 = y_at_start / t0;
    let value_sq = move |t: Complex64| h(e + t * t);
    let numer = |_t: Complex64| Complex64::new(2.0, 0.0);
    let (integral, _) = tracked_integral(t0, Complex64::ZERO, s0, &value_sq, &numer, tol, 0)?;
    Ok(integral)
}
