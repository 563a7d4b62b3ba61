//! Truncated bi-graded series: finite Laurent polynomials in `z` stacked as
//! coefficients of a power series in `r`.
//!
//! A [`BiSeries`] stores `Σ_{n=0}^{N} Σ_k c_{n,k} z^k r^n` as one dense
//! contiguous coefficient band per `r`-order. Bands are exact support hulls:
//! every operation strips exact zeros at band edges, so the zero series has
//! the canonical empty-band form and slice equality can be tested directly.
//! Nothing is ever dropped in `k` unless [`BiSeries::threshold`] is called
//! explicitly, which records itself in the `band_truncated` flag.

use num_complex::Complex64;
use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::Result;

/// How to estimate `sup |p(z)|` over a circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SupMode {
    /// Max over `M` equispaced sample points: a lower bound on the sup.
    Sample(usize),
    /// `Σ_k |c_k| radius^k`: an upper bound on the sup.
    Bound,
}

/// Default sample count per boundary circle.
pub const DEFAULT_SUP_SAMPLES: usize = 512;

// ---------------------------------------------------------------------------
// Laurent polynomials in z
// ---------------------------------------------------------------------------

/// A finite Laurent polynomial `Σ_{k=k_min}^{k_max} c_k z^k` with a dense
/// coefficient band. Invariant: either empty (the zero polynomial) or the
/// first and last stored coefficients are nonzero.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct LaurentPoly {
    k_min: i64,
    coeffs: Vec<Complex64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn constant(c: Complex64) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(k: i64, c: Complex64) -> Self {
        if c == Complex64::ZERO {
            return Self::zero();
        }
        LaurentPoly {
            k_min: k,
            coeffs: vec![c],
        }
    }

    /// Build from a dense band starting at `k_min`; strips zero edges.
    pub fn from_band(k_min: i64, coeffs: Vec<Complex64>) -> Self {
        let mut p = LaurentPoly { k_min, coeffs };
        p.strip();
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Support hull `(k_min, k_max)`, or `None` for the zero polynomial.
    pub fn band(&self) -> Option<(i64, i64)> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some((self.k_min, self.k_min + self.coeffs.len() as i64 - 1))
        }
    }

    pub fn coeff(&self, k: i64) -> Complex64 {
        let idx = k - self.k_min;
        if idx >= 0 && (idx as usize) < self.coeffs.len() {
            self.coeffs[idx as usize]
        } else {
            Complex64::ZERO
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, &c)| (self.k_min + i as i64, c))
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    fn strip(&mut self) {
        while self.coeffs.last() == Some(&Complex64::ZERO) {
            self.coeffs.pop();
        }
        let lead = self
            .coeffs
            .iter()
            .position(|&c| c != Complex64::ZERO)
            .unwrap_or(self.coeffs.len());
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.k_min += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.k_min = 0;
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let k_min = self.k_min.min(other.k_min);
        let k_max = (self.k_min + self.coeffs.len() as i64)
            .max(other.k_min + other.coeffs.len() as i64)
            - 1;
        let mut coeffs = vec![Complex64::ZERO; (k_max - k_min + 1) as usize];
        for (k, c) in self.iter() {
            coeffs[(k - k_min) as usize] += c;
        }
        for (k, c) in other.iter() {
            coeffs[(k - k_min) as usize] += c;
        }
        LaurentPoly::from_band(k_min, coeffs)
    }

    pub fn neg(&self) -> LaurentPoly {
        self.scale(-Complex64::ONE)
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Complex64) -> LaurentPoly {
        LaurentPoly::from_band(self.k_min, self.coeffs.iter().map(|&x| x * c).collect())
    }

    /// Convolution product. Band of the result is the Minkowski sum of the
    /// input bands (exactly, up to floating cancellation at the edges which
    /// cannot occur: edge coefficients are single products of nonzeros).
    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || other.is_zero() {
            return LaurentPoly::zero();
        }
        let k_min = self.k_min + other.k_min;
        let mut coeffs = vec![Complex64::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == Complex64::ZERO {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPoly::from_band(k_min, coeffs)
    }

    /// `Σ_k c_k · C(k, j) · base^k · z^k` where `C(k, j)` is the (generalized)
    /// binomial coefficient. This is the order-`j` term of expanding
    /// `p(base · z · (1 + w))` in powers of `w`, used by map composition.
    pub(crate) fn binomial_weighted(&self, j: usize, base: Complex64) -> LaurentPoly {
        let coeffs = self
            .iter()
            .map(|(k, c)| c * binomial(k, j) * powi(base, k))
            .collect();
        LaurentPoly::from_band(self.k_min, coeffs)
    }

    /// Evaluate at `z`. `z = 0` is a domain error when the band reaches
    /// negative exponents.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        if self.is_zero() {
            return Ok(Complex64::ZERO);
        }
        if z == Complex64::ZERO {
            if self.k_min < 0 {
                return Err(Error::EvalAtZero);
            }
            return Ok(self.coeff(0));
        }
        // Horner from the top, then one power for the band offset.
        let mut acc = Complex64::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        Ok(acc * powi(z, self.k_min))
    }

    /// Estimate `sup |p(z)|` over the circle `|z| = radius`.
    ///
    /// `Sample(m)` is a lower bound (max over `m` equispaced points, starting
    /// at `z = radius`), `Bound` the triangle-inequality upper bound, so
    /// `sample ≤ sup ≤ bound` always.
    pub fn sup_on_circle(&self, radius: f64, mode: SupMode) -> f64 {
        assert!(radius > 0.0, "circle radius must be positive");
        match mode {
            SupMode::Bound => self
                .iter()
                .map(|(k, c)| c.norm() * radius.powi(k as i32))
                .sum(),
            SupMode::Sample(m) => {
                let m = m.max(1);
                let mut best: f64 = 0.0;
                for idx in 0..m {
                    let theta = 2.0 * std::f64::consts::PI * idx as f64 / m as f64;
                    let z = Complex64::from_polar(radius, theta);
                    best = best.max(self.eval(z).expect("nonzero z").norm());
                }
                best
            }
        }
    }
}

/// Integer power of a complex number for possibly large `|k|`.
pub(crate) fn powi(base: Complex64, k: i64) -> Complex64 {
    if k == 0 {
        return Complex64::ONE;
    }
    let mut b = if k < 0 { base.inv() } else { base };
    let mut e = k.unsigned_abs();
    let mut acc = Complex64::ONE;
    while e > 0 {
        if e & 1 == 1 {
            acc *= b;
        }
        b *= b;
        e >>= 1;
    }
    acc
}

/// Generalized binomial coefficient `C(k, j)` for integer `k` (any sign).
fn binomial(k: i64, j: usize) -> f64 {
    let mut acc = 1.0;
    for i in 0..j {
        acc *= (k - i as i64) as f64 / (i + 1) as f64;
    }
    acc
}

// ---------------------------------------------------------------------------
// Bi-graded series
// ---------------------------------------------------------------------------

/// Truncated series `Σ_{n=0}^{N} s_n(z) r^n` with Laurent-polynomial slices.
#[derive(Clone, Debug, PartialEq)]
pub struct BiSeries {
    n_max: usize,
    slices: Vec<LaurentPoly>,
    band_truncated: bool,
}

impl BiSeries {
    pub fn zero(n_max: usize) -> Self {
        BiSeries {
            n_max,
            slices: vec![LaurentPoly::zero(); n_max + 1],
            band_truncated: false,
        }
    }

    pub fn one(n_max: usize) -> Self {
        let mut s = Self::zero(n_max);
        s.slices[0] = LaurentPoly::constant(Complex64::ONE);
        s
    }

    pub fn monomial(n_max: usize, n: usize, k: i64, c: Complex64) -> Result<Self> {
        if n > n_max {
            return Err(Error::Invalid(format!(
                "monomial order {n} exceeds truncation order {n_max}"
            )));
        }
        if !(c.re.is_finite() && c.im.is_finite()) {
            return Err(Error::NonFinite { op: "monomial" });
        }
        let mut s = Self::zero(n_max);
        s.slices[n] = LaurentPoly::monomial(k, c);
        Ok(s)
    }

    pub fn from_terms(n_max: usize, terms: &[(usize, i64, Complex64)]) -> Result<Self> {
        let mut s = Self::zero(n_max);
        for &(n, k, c) in terms {
            if n > n_max {
                return Err(Error::Invalid(format!(
                    "term at r-order {n} exceeds truncation order {n_max}"
                )));
            }
            if !(c.re.is_finite() && c.im.is_finite()) {
                return Err(Error::NonFinite { op: "from_terms" });
            }
            s.slices[n] = s.slices[n].add(&LaurentPoly::monomial(k, c));
        }
        Ok(s)
    }

    pub fn from_slices(slices: Vec<LaurentPoly>) -> Self {
        assert!(!slices.is_empty());
        BiSeries {
            n_max: slices.len() - 1,
            slices,
            band_truncated: false,
        }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn slice(&self, n: usize) -> &LaurentPoly {
        static ZERO: LaurentPoly = LaurentPoly {
            k_min: 0,
            coeffs: Vec::new(),
        };
        self.slices.get(n).unwrap_or(&ZERO)
    }

    pub fn set_slice(&mut self, n: usize, p: LaurentPoly) {
        assert!(n <= self.n_max, "slice order out of range");
        self.slices[n] = p;
    }

    /// Support hull of the order-`n` slice.
    pub fn band(&self, n: usize) -> Option<(i64, i64)> {
        self.slice(n).band()
    }

    pub fn is_zero(&self) -> bool {
        self.slices.iter().all(LaurentPoly::is_zero)
    }

    pub fn max_abs(&self) -> f64 {
        self.slices.iter().map(LaurentPoly::max_abs).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.slices.iter().all(LaurentPoly::is_finite)
    }

    pub fn band_truncated(&self) -> bool {
        self.band_truncated
    }

    /// Coefficient-wise sum; truncation order of the result is the min of the
    /// inputs, bands are union hulls.
    pub fn add(&self, other: &BiSeries) -> BiSeries {
        let n_max = self.n_max.min(other.n_max);
        let slices = (0..=n_max)
            .map(|n| self.slice(n).add(other.slice(n)))
            .collect();
        BiSeries {
            n_max,
            slices,
            band_truncated: self.band_truncated || other.band_truncated,
        }
    }

    pub fn sub(&self, other: &BiSeries) -> BiSeries {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> BiSeries {
        self.scale(-Complex64::ONE)
    }

    pub fn scale(&self, c: Complex64) -> BiSeries {
        BiSeries {
            n_max: self.n_max,
            slices: self.slices.iter().map(|s| s.scale(c)).collect(),
            band_truncated: self.band_truncated,
        }
    }

    /// Cauchy product truncated at `r`-order `n_max`. Missing high orders of
    /// the inputs count as zero. Coefficient overflow past the binary64 range
    /// is reported instead of silently propagating infinities.
    pub fn mul(&self, other: &BiSeries, n_max: usize) -> Result<BiSeries> {
        let mut slices = vec![LaurentPoly::zero(); n_max + 1];
        for n in 0..=n_max {
            let mut acc = LaurentPoly::zero();
            for i in 0..=n.min(self.n_max) {
                let j = n - i;
                if j > other.n_max {
                    continue;
                }
                let (a, b) = (self.slice(i), other.slice(j));
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                acc = acc.add(&a.mul(b));
            }
            slices[n] = acc;
        }
        let out = BiSeries {
            n_max,
            slices,
            band_truncated: self.band_truncated || other.band_truncated,
        };
        if !out.is_finite() {
            return Err(Error::NonFinite { op: "mul" });
        }
        Ok(out)
    }

    /// Multiply every slice by a single Laurent polynomial (an `r`-order-0
    /// factor).
    pub fn mul_poly(&self, p: &LaurentPoly) -> BiSeries {
        BiSeries {
            n_max: self.n_max,
            slices: self.slices.iter().map(|s| s.mul(p)).collect(),
            band_truncated: self.band_truncated,
        }
    }

    /// Multiply by `r^by`, truncating at `n_max`.
    pub fn shift_r(&self, by: usize, n_max: usize) -> BiSeries {
        let mut slices = vec![LaurentPoly::zero(); n_max + 1];
        for n in 0..=n_max {
            if n >= by && n - by <= self.n_max {
                slices[n] = self.slice(n - by).clone();
            }
        }
        BiSeries {
            n_max,
            slices,
            band_truncated: self.band_truncated,
        }
    }

    pub fn truncated(&self, n_max: usize) -> BiSeries {
        let mut slices: Vec<LaurentPoly> =
            self.slices.iter().take(n_max + 1).cloned().collect();
        slices.resize(n_max + 1, LaurentPoly::zero());
        BiSeries {
            n_max,
            slices,
            band_truncated: self.band_truncated,
        }
    }

    /// Finite double sum over the stored bands.
    pub fn eval(&self, z: Complex64, r: Complex64) -> Result<Complex64> {
        let mut acc = Complex64::ZERO;
        let mut rp = Complex64::ONE;
        for n in 0..=self.n_max {
            if !self.slices[n].is_zero() {
                acc += rp * self.slices[n].eval(z)?;
            }
            rp *= r;
        }
        Ok(acc)
    }

    /// Drop coefficients with `|c| < eps` and shrink bands. The only lossy
    /// operation on bands; records itself in the `band_truncated` flag
    /// whenever a nonzero coefficient was dropped.
    pub fn threshold(&self, eps: f64) -> BiSeries {
        let mut dropped = false;
        let slices = self
            .slices
            .iter()
            .map(|s| {
                let coeffs: Vec<Complex64> = s
                    .coeffs
                    .iter()
                    .map(|&c| {
                        if c != Complex64::ZERO && c.norm() < eps {
                            dropped = true;
                            Complex64::ZERO
                        } else {
                            c
                        }
                    })
                    .collect();
                LaurentPoly::from_band(s.k_min, coeffs)
            })
            .collect();
        BiSeries {
            n_max: self.n_max,
            slices,
            band_truncated: self.band_truncated || dropped,
        }
    }

    /// Max coefficient-modulus distance between two series, over all orders
    /// of the shorter one.
    pub fn max_diff(&self, other: &BiSeries) -> f64 {
        self.sub(other).max_abs()
    }
}

// ---------------------------------------------------------------------------
// JSON encoding: {"N": n, "terms": [{"n", "k", "re", "im"}, ...]}
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct Term {
    n: usize,
    k: i64,
    re: f64,
    im: f64,
}

impl Serialize for BiSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut terms = Vec::new();
        for n in 0..=self.n_max {
            for (k, c) in self.slices[n].iter() {
                if c != Complex64::ZERO {
                    terms.push(Term {
                        n,
                        k,
                        re: c.re,
                        im: c.im,
                    });
                }
            }
        }
        let entries = 2 + usize::from(self.band_truncated);
        let mut map = serializer.serialize_map(Some(entries))?;
        map.serialize_entry("N", &self.n_max)?;
        map.serialize_entry("terms", &terms)?;
        if self.band_truncated {
            map.serialize_entry("band_truncated", &true)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for BiSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            #[serde(rename = "N")]
            n_max: usize,
            terms: Vec<Term>,
            #[serde(default)]
            band_truncated: bool,
        }
        let repr = Repr::deserialize(deserializer)?;
        let mut s = BiSeries::zero(repr.n_max);
        s.band_truncated = repr.band_truncated;
        for t in &repr.terms {
            if t.n > repr.n_max {
                return Err(D::Error::custom(format!(
                    "term at r-order {} exceeds N = {}",
                    t.n, repr.n_max
                )));
            }
            if !(t.re.is_finite() && t.im.is_finite()) {
                return Err(D::Error::custom("non-finite coefficient"));
            }
            let c = Complex64::new(t.re, t.im);
            s.slices[t.n] = s.slices[t.n].add(&LaurentPoly::monomial(t.k, c));
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn add_identity_and_cancellation() {
        let x = BiSeries::from_terms(3, &[(1, 2, c(1.5, -0.5)), (2, -1, c(0.0, 2.0))]).unwrap();
        let zero = BiSeries::zero(3);
        assert_eq!(x.add(&zero), x);
        let cancelled = x.add(&x.neg());
        assert!(cancelled.is_zero());
        assert_eq!(cancelled.band(1), None);
        assert_eq!(cancelled.band(2), None);
    }

    #[test]
    fn add_merges_bands() {
        // (z r) + (z^{-1} r): band [-1, 1] at order 1 with a zero in the middle.
        let a = BiSeries::monomial(2, 1, 1, c(1.0, 0.0)).unwrap();
        let b = BiSeries::monomial(2, 1, -1, c(1.0, 0.0)).unwrap();
        let s = a.add(&b);
        assert_eq!(s.band(1), Some((-1, 1)));
        assert_eq!(s.slice(1).coeff(0), Complex64::ZERO);
        assert_eq!(s.slice(1).coeff(1), Complex64::ONE);
        assert_eq!(s.slice(1).coeff(-1), Complex64::ONE);
    }

    #[test]
    fn mul_monomials_and_identity() {
        let zr = BiSeries::monomial(4, 1, 1, Complex64::ONE).unwrap();
        let sq = zr.mul(&zr, 4).unwrap();
        assert_eq!(sq.band(2), Some((2, 2)));
        assert_eq!(sq.slice(2).coeff(2), Complex64::ONE);

        let one = BiSeries::one(4);
        assert_eq!(zr.mul(&one, 4).unwrap(), zr.truncated(4));
    }

    #[test]
    fn mul_hand_expansion() {
        // (1 + z r)(1 - z r) truncated at N = 2 is 1 - z^2 r^2.
        let p = BiSeries::from_terms(2, &[(0, 0, c(1.0, 0.0)), (1, 1, c(1.0, 0.0))]).unwrap();
        let m = BiSeries::from_terms(2, &[(0, 0, c(1.0, 0.0)), (1, 1, c(-1.0, 0.0))]).unwrap();
        let prod = p.mul(&m, 2).unwrap();
        let expect =
            BiSeries::from_terms(2, &[(0, 0, c(1.0, 0.0)), (2, 2, c(-1.0, 0.0))]).unwrap();
        assert_eq!(prod, expect);
    }

    #[test]
    fn mul_band_is_minkowski_sum() {
        let a = BiSeries::from_terms(3, &[(1, -2, c(1.0, 0.0)), (1, 1, c(2.0, 0.0))]).unwrap();
        let b = BiSeries::from_terms(3, &[(2, -1, c(0.5, 0.0)), (2, 3, c(1.0, 1.0))]).unwrap();
        let p = a.mul(&b, 3).unwrap();
        assert_eq!(p.band(3), Some((-3, 4)));
    }

    #[test]
    fn eval_cases() {
        let zero = BiSeries::zero(2);
        assert_eq!(zero.eval(c(2.0, 1.0), c(3.0, 0.0)).unwrap(), Complex64::ZERO);

        let zr = BiSeries::monomial(2, 1, 1, Complex64::ONE).unwrap();
        let v = zr.eval(c(2.0, 0.0), c(3.0, 0.0)).unwrap();
        assert!((v - c(6.0, 0.0)).norm() < 1e-15);

        // z^{-1} r + z r^2 at z = 2, r = 1 -> 0.5 + 2 = 2.5
        let s = BiSeries::from_terms(2, &[(1, -1, c(1.0, 0.0)), (2, 1, c(1.0, 0.0))]).unwrap();
        let v = s.eval(c(2.0, 0.0), Complex64::ONE).unwrap();
        assert!((v - c(2.5, 0.0)).norm() < 1e-15);

        assert!(matches!(
            s.eval(Complex64::ZERO, Complex64::ONE),
            Err(Error::EvalAtZero)
        ));
    }

    #[test]
    fn sup_on_circle_cases() {
        let one = LaurentPoly::constant(Complex64::ONE);
        assert!((one.sup_on_circle(0.3, SupMode::Bound) - 1.0).abs() < 1e-15);
        assert!((one.sup_on_circle(0.3, SupMode::Sample(16)) - 1.0).abs() < 1e-15);

        let z = LaurentPoly::monomial(1, Complex64::ONE);
        assert!((z.sup_on_circle(0.5, SupMode::Bound) - 0.5).abs() < 1e-15);
        assert!((z.sup_on_circle(0.5, SupMode::Sample(8)) - 0.5).abs() < 1e-15);

        // z + z^{-1} on the unit circle: sup 2 attained at z = 1.
        let p = LaurentPoly::monomial(1, Complex64::ONE)
            .add(&LaurentPoly::monomial(-1, Complex64::ONE));
        assert!((p.sup_on_circle(1.0, SupMode::Bound) - 2.0).abs() < 1e-15);
        assert!((p.sup_on_circle(1.0, SupMode::Sample(4)) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn threshold_records_flag() {
        let s = BiSeries::from_terms(2, &[(1, 0, c(1.0, 0.0)), (1, 5, c(1e-14, 0.0))]).unwrap();
        let t = s.threshold(1e-10);
        assert!(t.band_truncated());
        assert_eq!(t.band(1), Some((0, 0)));
        // Nothing dropped -> no flag.
        let u = s.threshold(1e-20);
        assert!(!u.band_truncated());
    }

    #[test]
    fn json_round_trip() {
        let s = BiSeries::from_terms(
            3,
            &[(0, 0, c(1.0, 0.0)), (1, -2, c(0.25, -1.5)), (3, 4, c(-2.0, 0.125))],
        )
        .unwrap();
        let text = serde_json::to_string(&s).unwrap();
        let back: BiSeries = serde_json::from_str(&text).unwrap();
        assert_eq!(s, back);
        // Terms appear in lexicographic (n, k) order.
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        let terms = v["terms"].as_array().unwrap();
        assert_eq!(terms[0]["n"], 0);
        assert_eq!(terms[1]["n"], 1);
        assert_eq!(terms[2]["n"], 3);
    }

    #[test]
    fn powi_negative_exponents() {
        let b = c(0.3, 0.4);
        let direct = b.powi(-7);
        assert!((powi(b, -7) - direct).norm() < 1e-12 * direct.norm());
    }

    #[test]
    fn mul_reports_overflow_instead_of_inf() {
        let huge = BiSeries::monomial(2, 1, 0, c(1e200, 0.0)).unwrap();
        match huge.mul(&huge, 2) {
            Err(Error::NonFinite { .. }) => {}
            other => panic!("expected overflow report, got {other:?}"),
        }
    }
}
