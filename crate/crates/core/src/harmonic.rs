//! Harmonic mappings `f = h + conj(g)` on the unit disk.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{DiskPoint, TruncatedSeries, DEFAULT_R_CAP, RECIPROCAL_FLOOR};

/// Tolerance for normalization checks on leading coefficients.
pub const NORMALIZATION_TOL: f64 = 1e-12;
/// Tolerance for unit-modulus parameters.
pub const UNIT_TOL: f64 = 1e-12;
/// Pointwise denominators below this modulus are treated as vanishing.
pub const DENOMINATOR_FLOOR: f64 = 1e-10;
/// Angles on the ring used by the `shear_construct` dilatation pre-check.
pub const SHEAR_PRECHECK_ANGLES: usize = 512;

/// Convexity direction `e^{i gamma}`, with `gamma` reduced into `[0, pi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Direction(f64);

impl Direction {
    pub const REAL_AXIS: Direction = Direction(0.0);
    pub const IMAGINARY_AXIS: Direction = Direction(PI / 2.0);

    pub fn new(gamma: f64) -> Result<Self> {
        if !gamma.is_finite() {
            return Err(Error::ParamOutOfRange {
                name: "gamma",
                value: gamma,
                range: "finite radians",
            });
        }
        let reduced = gamma.rem_euclid(PI);
        // rem_euclid can round up to exactly PI for tiny negative inputs
        Ok(Self(if reduced >= PI { 0.0 } else { reduced }))
    }

    pub fn gamma(self) -> f64 {
        self.0
    }

    /// `e^{i gamma}`.
    pub fn unit(self) -> Complex64 {
        snap(Complex64::from_polar(1.0, self.0))
    }

    /// `e^{2 i gamma}`, the shear rotation.
    pub fn rotation(self) -> Complex64 {
        snap(Complex64::from_polar(1.0, 2.0 * self.0))
    }
}

/// Flushes rounding residue such as `sin(pi) = 1.2e-16` so that axis
/// directions give exactly real or imaginary rotations.
fn snap(w: Complex64) -> Complex64 {
    let flush = |x: f64| if x.abs() < 4.0 * f64::EPSILON { 0.0 } else { x };
    Complex64::new(flush(w.re), flush(w.im))
}

impl TryFrom<f64> for Direction {
    type Error = Error;

    fn try_from(gamma: f64) -> Result<Self> {
        Self::new(gamma)
    }
}

impl From<Direction> for f64 {
    fn from(d: Direction) -> f64 {
        d.0
    }
}

fn unit_modulus(name: &'static str, w: Complex64) -> Result<Complex64> {
    let modulus = w.norm();
    if (modulus - 1.0).abs() > UNIT_TOL {
        return Err(Error::NotUnitModulus { name, modulus });
    }
    Ok(w)
}

/// The constants `(eta, xi, gamma)` of the cone condition
/// `Re[(1 - eta z)(1 - xi z)(h' - e^{2i gamma} g')] > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConeParams {
    eta: Complex64,
    xi: Complex64,
    gamma: Direction,
}

impl ConeParams {
    pub fn new(eta: Complex64, xi: Complex64, gamma: Direction) -> Result<Self> {
        Ok(Self {
            eta: unit_modulus("eta", eta)?,
            xi: unit_modulus("xi", xi)?,
            gamma,
        })
    }

    pub fn eta(&self) -> Complex64 {
        self.eta
    }

    pub fn xi(&self) -> Complex64 {
        self.xi
    }

    pub fn gamma(&self) -> Direction {
        self.gamma
    }
}

/// Anything that can be evaluated pointwise on the disk.
pub trait DiskMap {
    fn value_at(&self, p: DiskPoint) -> Complex64;
}

impl DiskMap for TruncatedSeries {
    fn value_at(&self, p: DiskPoint) -> Complex64 {
        self.evaluate(p)
    }
}

impl DiskMap for HarmonicMap {
    fn value_at(&self, p: DiskPoint) -> Complex64 {
        self.evaluate_harmonic(p)
    }
}

/// `f = h + conj(g)` with `h(0) = g(0) = 0` and `h'(0) != 0`.
///
/// `g` is stored unconjugated. Maps built from a normalized prefunction with
/// `omega(0) != 0` have `h'(0) = 1/(1 - e^{2i gamma} omega(0))`, so `h'(0) = 1`
/// is reported by [`HarmonicMap::is_normalized`] rather than enforced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MapRepr", into = "MapRepr")]
pub struct HarmonicMap {
    h: TruncatedSeries,
    g: TruncatedSeries,
}

#[derive(Serialize, Deserialize)]
struct MapRepr {
    h: TruncatedSeries,
    g: TruncatedSeries,
}

impl TryFrom<MapRepr> for HarmonicMap {
    type Error = Error;

    fn try_from(r: MapRepr) -> Result<Self> {
        HarmonicMap::new(r.h, r.g)
    }
}

impl From<HarmonicMap> for MapRepr {
    fn from(m: HarmonicMap) -> Self {
        MapRepr { h: m.h, g: m.g }
    }
}

impl HarmonicMap {
    pub fn new(h: TruncatedSeries, g: TruncatedSeries) -> Result<Self> {
        if h.coeff(0).norm() > NORMALIZATION_TOL {
            return Err(Error::NotNormalized {
                what: "analytic part h",
                detail: format!("h(0) = {}", h.coeff(0)),
            });
        }
        if g.coeff(0).norm() > NORMALIZATION_TOL {
            return Err(Error::NotNormalized {
                what: "co-analytic part g",
                detail: format!("g(0) = {}", g.coeff(0)),
            });
        }
        if h.coeff(1).norm() <= RECIPROCAL_FLOOR {
            return Err(Error::ConstantTermTooSmall {
                modulus: h.coeff(1).norm(),
                floor: RECIPROCAL_FLOOR,
            });
        }
        Ok(Self { h, g })
    }

    /// The analytic map `f = h`.
    pub fn analytic(h: TruncatedSeries) -> Result<Self> {
        let order = h.order();
        Self::new(h, TruncatedSeries::zero(order))
    }

    pub fn h(&self) -> &TruncatedSeries {
        &self.h
    }

    pub fn g(&self) -> &TruncatedSeries {
        &self.g
    }

    pub fn order(&self) -> usize {
        self.h.order().min(self.g.order())
    }

    /// `f(0) = 0` and `f_z(0) = h'(0) = 1`.
    pub fn is_normalized(&self) -> bool {
        (self.h.coeff(1) - Complex64::new(1.0, 0.0)).norm() <= NORMALIZATION_TOL
    }

    /// `w * f = (w h) + conj(conj(w) g)`.
    pub fn rotate(&self, w: Complex64) -> Result<Self> {
        Self::new(self.h.scale(w), self.g.scale(w.conj()))
    }

    /// Dilatation `omega = g' / h'` as a series quotient.
    pub fn dilatation(&self) -> Result<TruncatedSeries> {
        self.g.differentiate().divide(&self.h.differentiate())
    }

    /// The analytic prefunction `h - e^{2i gamma} g`.
    pub fn analytic_prefunction(&self, d: Direction) -> TruncatedSeries {
        self.h.sub(&self.g.scale(d.rotation()))
    }

    /// Harmonic convolution `(h * phi) + conj(g * phi)` with a normalized
    /// analytic convolver (`c_0 = 0`, `c_1 = 1`).
    pub fn harmonic_convolve(&self, phi: &TruncatedSeries) -> Result<Self> {
        let (c0, c1) = (phi.coeff(0), phi.coeff(1));
        if c0.norm() > NORMALIZATION_TOL
            || (c1 - Complex64::new(1.0, 0.0)).norm() > NORMALIZATION_TOL
        {
            return Err(Error::NotNormalizedConvolver { c0, c1 });
        }
        Self::new(self.h.hadamard(phi), self.g.hadamard(phi))
    }

    /// `h(z) + conj(g(z))`.
    pub fn evaluate_harmonic(&self, p: DiskPoint) -> Complex64 {
        self.h.evaluate(p) + self.g.evaluate(p).conj()
    }

    /// `(h' + e^{2i gamma} g') / (h' - e^{2i gamma} g')` at `p`.
    ///
    /// `Re > 0` at `p` exactly when `|e^{2i gamma} g'/h'| < 1` there.
    pub fn halfplane_transform(&self, d: Direction, p: DiskPoint) -> Result<Complex64> {
        let rot = d.rotation();
        let dh = self.h.differentiate().evaluate(p);
        let dg = self.g.differentiate().evaluate(p) * rot;
        let den = dh - dg;
        if den.norm() < DENOMINATOR_FLOOR {
            return Err(Error::DenominatorVanishes { at: p.z() });
        }
        Ok((dh + dg) / den)
    }
}

/// Largest `|omega|` on the ring `|z| = r` sampled at `angles` points.
pub fn ring_max_modulus(s: &TruncatedSeries, r: f64, angles: usize) -> Result<f64> {
    let mut best = 0.0_f64;
    for k in 0..angles {
        let t = 2.0 * PI * k as f64 / angles as f64;
        let p = DiskPoint::new(Complex64::from_polar(r, t))?;
        best = best.max(s.evaluate(p).norm());
    }
    Ok(best)
}

/// Shear construction: the harmonic map with `h - e^{2i gamma} g = prefunction`
/// and dilatation `g'/h' = omega`.
///
/// `h' = F' / (1 - e^{2i gamma} omega)`, `g' = omega h'`, both integrated from 0.
pub fn shear_construct(
    prefunction: &TruncatedSeries,
    omega: &TruncatedSeries,
    d: Direction,
) -> Result<HarmonicMap> {
    let (c0, c1) = (prefunction.coeff(0), prefunction.coeff(1));
    if c0.norm() > NORMALIZATION_TOL || (c1 - Complex64::new(1.0, 0.0)).norm() > NORMALIZATION_TOL {
        return Err(Error::NotNormalized {
            what: "prefunction",
            detail: format!("c0 = {c0}, c1 = {c1}"),
        });
    }
    let sup = ring_max_modulus(omega, DEFAULT_R_CAP, SHEAR_PRECHECK_ANGLES)?;
    if sup >= 1.0 {
        return Err(Error::DilatationNotBounded { max_modulus: sup });
    }
    let rot = d.rotation();
    let denom = TruncatedSeries::one(omega.order()).sub(&omega.scale(rot));
    let dh = prefunction.differentiate().divide(&denom)?;
    let dg = omega.multiply(&dh);
    HarmonicMap::new(dh.integrate_zero(), dg.integrate_zero())
}
