//! Truncated complex power series on the unit disk.
//!
//! A [`TruncatedSeries`] of order `N` holds the Taylor coefficients
//! `c_0..c_N` of an analytic function and stands in for it on compact
//! subdisks. Every operation is a pure function returning a new series;
//! binary operations first truncate both operands to the smaller order.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 256;
/// Hard ceiling on series order; `integrate_zero` clamps here.
pub const MAX_ORDER: usize = 16_384;
/// Default evaluation radius cap.
pub const DEFAULT_R_CAP: f64 = 0.95;
/// Rounding allowance on the radius cap.
const CAP_SLACK: f64 = 4.0 * f64::EPSILON;
/// Constant terms at or below this modulus are rejected by `reciprocal`.
pub const RECIPROCAL_FLOOR: f64 = 1e-8;
/// Number of trailing coefficients (beyond `c_{N-W}`) used by `tail_bound`.
pub const TAIL_WINDOW: usize = 32;

/// Environment variable that overrides [`DEFAULT_ORDER`] in [`engine_order`].
pub const ORDER_ENV: &str = "HCONV_ORDER";

/// Engine order: `HCONV_ORDER` when set to a valid integer in `1..=MAX_ORDER`,
/// otherwise [`DEFAULT_ORDER`].
pub fn engine_order() -> usize {
    std::env::var(ORDER_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| (1..=MAX_ORDER).contains(&n))
        .unwrap_or(DEFAULT_ORDER)
}

/// A point of the open unit disk, validated against an evaluation cap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPoint {
    z: Complex64,
}

impl DiskPoint {
    /// Validates `|z| <= DEFAULT_R_CAP`.
    pub fn new(z: Complex64) -> Result<Self> {
        Self::with_cap(z, DEFAULT_R_CAP)
    }

    /// Validates `|z| <= cap` up to a few ulps, so points built with
    /// `from_polar(cap, t)` are accepted; the cap itself must lie in `(0, 1)`.
    pub fn with_cap(z: Complex64, cap: f64) -> Result<Self> {
        let radius = z.norm();
        if !(cap > 0.0 && cap < 1.0) || !radius.is_finite() || radius > cap + CAP_SLACK {
            return Err(Error::RadiusExceeded { radius, cap });
        }
        Ok(Self { z })
    }

    pub fn z(self) -> Complex64 {
        self.z
    }

    pub fn radius(self) -> f64 {
        self.z.norm()
    }
}

/// Compensated complex dot product (Ogita, Rump and Oishi's `Dot2`): every
/// product and partial sum carries its exact rounding error, so the result
/// is as accurate as if accumulated in twice the working precision.
#[derive(Default)]
struct Dot2 {
    re: (f64, f64),
    im: (f64, f64),
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn accumulate(acc: &mut (f64, f64), x: f64, y: f64) {
    let p = x * y;
    let ep = x.mul_add(y, -p);
    let (s, es) = two_sum(acc.0, p);
    *acc = (s, acc.1 + es + ep);
}

impl Dot2 {
    fn add(&mut self, a: Complex64, b: Complex64) {
        accumulate(&mut self.re, a.re, b.re);
        accumulate(&mut self.re, -a.im, b.im);
        accumulate(&mut self.im, a.re, b.im);
        accumulate(&mut self.im, a.im, b.re);
    }

    fn add_scalar(&mut self, a: Complex64) {
        accumulate(&mut self.re, a.re, 1.0);
        accumulate(&mut self.im, a.im, 1.0);
    }

    fn value(&self) -> Complex64 {
        Complex64::new(self.re.0 + self.re.1, self.im.0 + self.im.1)
    }
}

/// Degree-`N` complex Taylor polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
}

impl TruncatedSeries {
    /// Builds a series from `c_0..c_N`. Rejects an empty list and non-finite
    /// entries.
    pub fn from_coeffs(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        if let Some(index) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { coeffs })
    }

    /// Series with real coefficients.
    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::from_coeffs(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// Series with coefficients `f(0), .., f(order)`.
    ///
    /// Panics if `f` produces a non-finite coefficient; constructors in this
    /// crate only pass closed forms that are finite by construction.
    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Complex64) -> Self {
        let series = Self::from_coeffs((0..=order).map(f).collect());
        series.expect("closed-form coefficients must be finite")
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Complex64::new(0.0, 0.0); order + 1],
        }
    }

    pub fn constant(c: Complex64, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Complex64::new(1.0, 0.0), order)
    }

    /// `c * z^k`, or the zero series when `k > order`.
    pub fn monomial(k: usize, c: Complex64, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// The identity `z` at the given order.
    pub fn z(order: usize) -> Self {
        Self::monomial(1, Complex64::new(1.0, 0.0), order)
    }

    /// `z/(1-z) = z + z^2 + ...`, the two-sided identity for `hadamard`
    /// on series with zero constant term.
    pub fn hadamard_identity(order: usize) -> Self {
        Self::from_fn(order, |n| {
            if n == 0 {
                Complex64::new(0.0, 0.0)
            } else {
                Complex64::new(1.0, 0.0)
            }
        })
    }

    /// Polynomial `p_0 + p_1 z + ...` padded or truncated to `order`.
    pub fn polynomial(coeffs: &[Complex64], order: usize) -> Self {
        Self::from_fn(order, |n| coeffs.get(n).copied().unwrap_or_default())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient `c_n`, zero beyond the order.
    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or_default()
    }

    /// Truncates to `order` (no-op when already smaller or equal).
    pub fn truncate(&self, order: usize) -> Self {
        let keep = (order + 1).min(self.coeffs.len());
        Self {
            coeffs: self.coeffs[..keep].to_vec(),
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&c| f(c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        self.map(|c| -c)
    }

    pub fn scale(&self, k: Complex64) -> Self {
        self.map(|c| c * k)
    }

    /// Coefficientwise complex conjugate (the series of `conj(f(conj z))`).
    pub fn conj(&self) -> Self {
        self.map(|c| c.conj())
    }

    /// Cauchy product truncated at the common order. Each coefficient is a
    /// compensated dot product, accurate to a few ulps of the result.
    pub fn multiply(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|n| {
                let mut acc = Dot2::default();
                for k in 0..=n {
                    acc.add(self.coeffs[k], other.coeffs[n - k]);
                }
                acc.value()
            })
            .collect();
        Self { coeffs }
    }

    /// Multiplicative inverse via the recurrence
    /// `d_0 = 1/c_0`, `d_n = -(1/c_0) * sum_{k=1..n} c_k d_{n-k}`.
    pub fn reciprocal(&self) -> Result<Self> {
        let c0 = self.coeffs[0];
        if c0.norm() <= RECIPROCAL_FLOOR {
            return Err(Error::ConstantTermTooSmall {
                modulus: c0.norm(),
                floor: RECIPROCAL_FLOOR,
            });
        }
        Self::one(self.order()).divide(self)
    }

    /// Quotient `self / denom` by long division,
    /// `q_n = (a_n - sum_{k=1..n} b_k q_{n-k}) / b_0`, truncated at the common
    /// order. Equal to `self * reciprocal(denom)` in exact arithmetic; in
    /// floating point it avoids the cancellation between a growing numerator
    /// and the reciprocal, and it is exact when the quotient is a polynomial
    /// whose products with `denom` are exact.
    pub fn divide(&self, denom: &Self) -> Result<Self> {
        let b0 = denom.coeffs[0];
        if b0.norm() <= RECIPROCAL_FLOOR {
            return Err(Error::ConstantTermTooSmall {
                modulus: b0.norm(),
                floor: RECIPROCAL_FLOOR,
            });
        }
        let order = self.order().min(denom.order());
        let mut q: Vec<Complex64> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = Dot2::default();
            acc.add_scalar(self.coeffs[n]);
            for k in 1..=n {
                acc.add(-denom.coeffs[k], q[n - k]);
            }
            q.push(acc.value() / b0);
        }
        Self::from_coeffs(q)
    }

    /// Termwise derivative; the order drops by one (an order-0 series maps to
    /// the order-0 zero series).
    pub fn differentiate(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::zero(0);
        }
        Self {
            coeffs: self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(n, &c)| c * (n + 1) as f64)
                .collect(),
        }
    }

    /// Antiderivative vanishing at 0; the order rises by one, clamped at
    /// [`MAX_ORDER`].
    pub fn integrate_zero(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Complex64::new(0.0, 0.0));
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(n, &c)| c / (n + 1) as f64),
        );
        coeffs.truncate(MAX_ORDER + 1);
        Self { coeffs }
    }

    /// Hadamard (coefficientwise) product at the common order.
    pub fn hadamard(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a * b)
    }

    /// Multiplies by `z`, keeping the order (the top coefficient drops out).
    pub fn shift_up(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(Complex64::new(0.0, 0.0));
        coeffs.extend_from_slice(&self.coeffs[..self.coeffs.len() - 1]);
        Self { coeffs }
    }

    /// Multiplies by `z`; the order rises by one (clamped at [`MAX_ORDER`]).
    pub fn times_z(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Complex64::new(0.0, 0.0));
        coeffs.extend_from_slice(&self.coeffs);
        coeffs.truncate(MAX_ORDER + 1);
        Self { coeffs }
    }

    /// Divides by `z`; the constant term is discarded and the order drops by
    /// one. Callers check `c_0 = 0` when it matters.
    pub fn shift_down(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::zero(0);
        }
        Self {
            coeffs: self.coeffs[1..].to_vec(),
        }
    }

    /// Horner evaluation at a validated disk point.
    pub fn evaluate(&self, p: DiskPoint) -> Complex64 {
        self.horner(p.z())
    }

    /// Evaluation with the default radius cap check.
    pub fn evaluate_at(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.evaluate(DiskPoint::new(z)?))
    }

    pub(crate) fn horner(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Conservative estimate of `|sum_{n>N} c_n z^n|` on `|z| = r`.
    ///
    /// The trailing window `c_{N-32}..c_N` is split into an older and a newer
    /// half, overlapping at `c_{N-16}`. The growth ratio `rho` is the
    /// 16th root of (newer max / older max), floored at 1. Each half covers a
    /// full period of any pattern with period up to 16, so zero-interleaved,
    /// sign-alternating and rational-angle patterns are not mistaken for
    /// growth; the floor keeps a quiet newer half from extrapolating decay.
    /// The amplitude `A = max |c_n| rho^(N-n)` is extrapolated to index `N`
    /// and the bound is the geometric tail `A r^N (rho r)/(1 - rho r)`.
    ///
    /// Window moduli are raised to a roundoff floor `max(N^2, 64) eps max|c|`,
    /// the accumulated error of a length-`N` Cauchy product, so cancellation
    /// noise reads as a flat tail at that level rather than as growth. A
    /// window of exact zeros gives 0.
    pub fn tail_bound(&self, r: f64) -> Result<f64> {
        if !(0.0..1.0).contains(&r) {
            return Err(Error::RadiusExceeded { radius: r, cap: 1.0 });
        }
        let n_top = self.order();
        let start = n_top.saturating_sub(TAIL_WINDOW);
        if r == 0.0 || self.coeffs[start..].iter().all(|c| c.norm() == 0.0) {
            return Ok(0.0);
        }
        let scale = self.coeffs.iter().map(|c| c.norm()).fold(0.0_f64, f64::max);
        let floor = (n_top as f64).powi(2).max(64.0) * f64::EPSILON * scale;
        let m = |n: usize| self.coeffs[n].norm().max(floor);
        let block_max = |lo: usize, hi: usize| (lo..=hi).map(m).fold(0.0_f64, f64::max);
        let lag = (n_top - start) / 2;
        let rho = if lag == 0 {
            1.0
        } else {
            (block_max(n_top - lag, n_top) / block_max(start, start + lag))
                .powf(1.0 / lag as f64)
                .max(1.0)
        };
        if rho * r >= 1.0 {
            return Err(Error::DivergentTail { ratio: rho, radius: r });
        }
        let amplitude = (start..=n_top)
            .map(|n| m(n) * rho.powi((n_top - n) as i32))
            .fold(0.0_f64, f64::max);
        let q = rho * r;
        Ok(amplitude * r.powi(n_top as i32) * q / (1.0 - q))
    }

    /// Largest coefficientwise modulus of `self - other` at the common order.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// True when every coefficient has `|Im c_n| <= tol * max(1, |c_n|)`.
    pub fn is_real(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|c| c.im.abs() <= tol * c.norm().max(1.0))
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown: Vec<String> = self
            .coeffs
            .iter()
            .take(6)
            .map(|c| format!("{c}"))
            .collect();
        write!(f, "[{}", shown.join(", "))?;
        if self.coeffs.len() > 6 {
            write!(f, ", ... (order {})", self.order())?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    order: usize,
    coeffs: Vec<Complex64>,
}

impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesRepr {
            order: self.order(),
            coeffs: self.coeffs.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TruncatedSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = SeriesRepr::deserialize(deserializer)?;
        if repr.coeffs.len() != repr.order + 1 {
            return Err(D::Error::custom(format!(
                "order {} needs {} coefficients, got {}",
                repr.order,
                repr.order + 1,
                repr.coeffs.len()
            )));
        }
        TruncatedSeries::from_coeffs(repr.coeffs).map_err(D::Error::custom)
    }
}
