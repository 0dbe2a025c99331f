//! Concrete function families, candidate convolvers and a dilatation catalog.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harmonic::{ConeParams, Direction};
use crate::series::TruncatedSeries;

/// Smallest admissible distance of `theta` from `0` and `pi`.
pub const THETA_GUARD: f64 = 0.05;

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn check_range(name: &'static str, value: f64, lo: f64, hi: f64, range: &'static str) -> Result<()> {
    if value.is_finite() && (lo..=hi).contains(&value) {
        Ok(())
    } else {
        Err(Error::ParamOutOfRange { name, value, range })
    }
}

/// Coefficient pattern `0, 1, -p, 1, -p, ...` of `z(1 - p z)/(1 - z^2)`.
fn alternating_pattern(p: f64, order: usize) -> TruncatedSeries {
    TruncatedSeries::from_fn(order, |n| match n {
        0 => real(0.0),
        n if n % 2 == 1 => real(1.0),
        _ => real(-p),
    })
}

/// `h + g = z(1 - alpha z)/(1 - z^2)`, coefficients `1, -alpha, 1, -alpha, ...`.
pub fn f_alpha_prefunction(alpha: f64, order: usize) -> Result<TruncatedSeries> {
    check_range("alpha", alpha, -1.0, 1.0, "[-1, 1]")?;
    Ok(alternating_pattern(alpha, order))
}

/// `(1/(2i sin theta)) log((1 + z e^{i theta})/(1 + z e^{-i theta}))`,
/// coefficients `(-1)^{n+1} sin(n theta)/(n sin theta)`.
pub fn f_theta_prefunction(theta: f64, order: usize) -> Result<TruncatedSeries> {
    check_range("theta", theta, THETA_GUARD, PI - THETA_GUARD, "[0.05, pi - 0.05]")?;
    let s = theta.sin();
    Ok(TruncatedSeries::from_fn(order, |n| {
        if n == 0 {
            return real(0.0);
        }
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        real(sign * (n as f64 * theta).sin() / (n as f64 * s))
    }))
}

/// `h - g = z/(1 - z)^2`, coefficients `c_n = n`.
pub fn koebe_shear_prefunction(order: usize) -> TruncatedSeries {
    TruncatedSeries::from_fn(order, |n| real(n as f64))
}

/// `h + e^{-2i alpha} g = z/(1 - e^{i alpha} z)`, coefficients `e^{i(n-1) alpha}`.
pub fn slanted_halfplane_prefunction(slant: f64, order: usize) -> Result<TruncatedSeries> {
    check_range("slant_alpha", slant, -PI / 2.0, PI / 2.0, "[-pi/2, pi/2]")?;
    Ok(TruncatedSeries::from_fn(order, |n| {
        if n == 0 {
            real(0.0)
        } else {
            Complex64::from_polar(1.0, (n - 1) as f64 * slant)
        }
    }))
}

/// `phi_beta(z) = z(1 - beta z)/(1 - z^2)`.
pub fn phi_beta(beta: f64, order: usize) -> Result<TruncatedSeries> {
    check_range("beta", beta, -1.0, 1.0, "[-1, 1]")?;
    Ok(alternating_pattern(beta, order))
}

/// `(1/2) log((1 + z)/(1 - z)) = z + z^3/3 + z^5/5 + ...`, the vertical strip map.
pub fn strip_map(order: usize) -> TruncatedSeries {
    TruncatedSeries::from_fn(order, |n| {
        if n % 2 == 1 {
            real(1.0 / n as f64)
        } else {
            real(0.0)
        }
    })
}

/// Membership of a convolver in the direction-convexity-preserving class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum DcpStatus {
    ProvenDcp,
    Candidate,
    NotDcp,
}

impl fmt::Display for DcpStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DcpStatus::ProvenDcp => "PROVEN_DCP",
            DcpStatus::Candidate => "CANDIDATE",
            DcpStatus::NotDcp => "NOT_DCP",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Convolver {
    pub name: String,
    pub series: TruncatedSeries,
    pub status: DcpStatus,
    pub note: &'static str,
}

/// `NOT_DCP` for `beta` in the open interval `(-1, 1)`; at `beta = -1` the map
/// is the half-plane map `z/(1-z)` (the convolution identity), at `beta = 1`
/// it is `z/(1+z)`, its rotation.
pub fn phi_beta_status(beta: f64) -> DcpStatus {
    if beta.abs() < 1.0 {
        DcpStatus::NotDcp
    } else {
        DcpStatus::ProvenDcp
    }
}

/// The named convolver `identity | linear | strip | phi_beta` (the last one
/// at the given `beta`).
pub fn convolver(name: &str, beta: f64, order: usize) -> Result<Convolver> {
    Ok(match name {
        "identity" => Convolver {
            name: "identity".into(),
            series: TruncatedSeries::hadamard_identity(order),
            status: DcpStatus::ProvenDcp,
            note: "z/(1-z), two-sided convolution identity",
        },
        "linear" => Convolver {
            name: "linear".into(),
            series: TruncatedSeries::z(order),
            status: DcpStatus::ProvenDcp,
            note: "z; every convolution is a disk, convex in every direction",
        },
        "strip" => Convolver {
            name: "strip".into(),
            series: strip_map(order),
            status: DcpStatus::Candidate,
            note: "(1/2)log((1+z)/(1-z)); convex, membership not established here",
        },
        "phi_beta" => Convolver {
            name: format!("phi_beta({beta})"),
            series: phi_beta(beta, order)?,
            status: phi_beta_status(beta),
            note: "z(1-beta z)/(1-z^2); not convex for beta in (-1, 1)",
        },
        _ => {
            return Err(Error::ParamOutOfRange {
                name: "phi",
                value: f64::NAN,
                range: "one of identity, linear, strip, phi_beta",
            })
        }
    })
}

/// Identity, linear, strip and `phi_beta` at the requested `beta`.
pub fn candidate_convolvers(beta: f64, order: usize) -> Result<Vec<Convolver>> {
    ["identity", "linear", "strip", "phi_beta"]
        .iter()
        .map(|name| convolver(name, beta, order))
        .collect()
}

/// A closed-form dilatation with sup-norm below 1 on the open disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Dilatation {
    Zero,
    /// `lambda z^n`, `|lambda| <= 1`, `n >= 1`.
    Monomial { n: usize, lambda: Complex64 },
    /// `mu (a + z)/(1 + conj(a) z)`, `|a| < 1`, `|mu| <= 1`.
    Mobius { a: Complex64, mu: Complex64 },
}

impl Dilatation {
    pub fn monomial(n: usize, lambda: Complex64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ParamOutOfRange {
                name: "n",
                value: 0.0,
                range: ">= 1",
            });
        }
        check_range("lambda", lambda.norm(), 0.0, 1.0, "|lambda| <= 1")?;
        Ok(Self::Monomial { n, lambda })
    }

    pub fn mobius(a: Complex64, mu: Complex64) -> Result<Self> {
        if a.norm().is_nan() || a.norm() >= 1.0 {
            return Err(Error::ParamOutOfRange {
                name: "a",
                value: a.norm(),
                range: "|a| < 1",
            });
        }
        check_range("mu", mu.norm(), 0.0, 1.0, "|mu| <= 1")?;
        Ok(Self::Mobius { a, mu })
    }

    pub fn series(&self, order: usize) -> TruncatedSeries {
        match *self {
            Dilatation::Zero => TruncatedSeries::zero(order),
            Dilatation::Monomial { n, lambda } => TruncatedSeries::monomial(n, lambda, order),
            Dilatation::Mobius { a, mu } => {
                // (a + z) sum (-conj(a) z)^k: c_0 = a, c_n = (-conj a)^{n-1} (1 - |a|^2)
                let q = -a.conj();
                let scale = 1.0 - a.norm_sqr();
                let mut pow = real(1.0);
                TruncatedSeries::from_fn(order, |n| {
                    if n == 0 {
                        return mu * a;
                    }
                    let c = mu * pow * scale;
                    pow *= q;
                    c
                })
            }
        }
    }

    /// Closed-form value at `z`.
    pub fn value(&self, z: Complex64) -> Complex64 {
        match *self {
            Dilatation::Zero => real(0.0),
            Dilatation::Monomial { n, lambda } => lambda * z.powu(n as u32),
            Dilatation::Mobius { a, mu } => mu * (a + z) / (1.0 + a.conj() * z),
        }
    }
}

impl fmt::Display for Dilatation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Dilatation::Zero => f.write_str("zero"),
            Dilatation::Monomial { n: 1, lambda } if lambda == real(1.0) => f.write_str("z"),
            Dilatation::Monomial { n, lambda } if lambda == real(1.0) => write!(f, "z{n}"),
            Dilatation::Monomial { n, lambda } => {
                write!(f, "mono:n={n}:lambda={}", lambda.re)?;
                if lambda.im != 0.0 {
                    write!(f, ":lambda_im={}", lambda.im)?;
                }
                Ok(())
            }
            Dilatation::Mobius { a, mu } => {
                write!(f, "mobius:a={}", a.re)?;
                if a.im != 0.0 {
                    write!(f, ":a_im={}", a.im)?;
                }
                if mu != real(1.0) {
                    write!(f, ":mu={}", mu.re)?;
                    if mu.im != 0.0 {
                        write!(f, ":mu_im={}", mu.im)?;
                    }
                }
                Ok(())
            }
        }
    }
}

/// Parses `zero`, `z`, `z2`, `z<n>`, `mono:n=<n>:lambda=<x>[:lambda_im=<y>]`
/// and `mobius:a=<x>[:a_im=<y>][:mu=<x>][:mu_im=<y>]`.
impl FromStr for Dilatation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        match s {
            "zero" | "0" => return Ok(Dilatation::Zero),
            "z" => return Ok(Dilatation::Monomial { n: 1, lambda: real(1.0) }),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix('z') {
            if let Ok(n) = rest.parse::<usize>() {
                return Dilatation::monomial(n, real(1.0)).map_err(|e| e.to_string());
            }
        }
        let (kind, args) = s.split_once(':').ok_or_else(|| format!("unknown dilatation '{s}'"))?;
        let mut kv = std::collections::BTreeMap::new();
        for item in args.split(':') {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| format!("expected key=value in '{item}'"))?;
            let v: f64 = v.trim().parse().map_err(|_| format!("bad number '{v}'"))?;
            kv.insert(k.trim().to_string(), v);
        }
        let get = |k: &str, default: f64| kv.get(k).copied().unwrap_or(default);
        match kind {
            "mono" => {
                let n = get("n", 1.0);
                if n.fract() != 0.0 || n < 1.0 {
                    return Err(format!("mono needs integer n >= 1, got {n}"));
                }
                Dilatation::monomial(n as usize, Complex64::new(get("lambda", 1.0), get("lambda_im", 0.0)))
                    .map_err(|e| e.to_string())
            }
            "mobius" => Dilatation::mobius(
                Complex64::new(get("a", 0.0), get("a_im", 0.0)),
                Complex64::new(get("mu", 1.0), get("mu_im", 0.0)),
            )
            .map_err(|e| e.to_string()),
            other => Err(format!("unknown dilatation kind '{other}'")),
        }
    }
}

/// `zero`, `z`, `z2` and `mobius:a=0.3`.
pub fn dilatation_catalog(order: usize) -> Vec<(String, TruncatedSeries)> {
    [
        Dilatation::Zero,
        Dilatation::Monomial { n: 1, lambda: real(1.0) },
        Dilatation::Monomial { n: 2, lambda: real(1.0) },
        Dilatation::Mobius { a: real(0.3), mu: real(1.0) },
    ]
    .iter()
    .map(|d| (d.to_string(), d.series(order)))
    .collect()
}

/// One of the five prefunction families with its parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    FAlpha(f64),
    FTheta(f64),
    KoebeShear,
    Slanted(f64),
    PhiBeta(f64),
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::FAlpha(_) => "f_alpha",
            Family::FTheta(_) => "f_theta",
            Family::KoebeShear => "koebe_shear",
            Family::Slanted(_) => "slanted",
            Family::PhiBeta(_) => "phi_beta",
        }
    }

    pub fn parameter(&self) -> Option<f64> {
        match *self {
            Family::FAlpha(p) | Family::FTheta(p) | Family::Slanted(p) | Family::PhiBeta(p) => Some(p),
            Family::KoebeShear => None,
        }
    }

    pub fn prefunction(&self, order: usize) -> Result<TruncatedSeries> {
        match *self {
            Family::FAlpha(a) => f_alpha_prefunction(a, order),
            Family::FTheta(t) => f_theta_prefunction(t, order),
            Family::KoebeShear => Ok(koebe_shear_prefunction(order)),
            Family::Slanted(a) => slanted_halfplane_prefunction(a, order),
            Family::PhiBeta(b) => phi_beta(b, order),
        }
    }

    /// The direction in which the family's shear is convex.
    pub fn direction(&self) -> Direction {
        match *self {
            Family::KoebeShear => Direction::REAL_AXIS,
            Family::Slanted(a) => Direction::new(PI / 2.0 - a).unwrap_or(Direction::REAL_AXIS),
            _ => Direction::IMAGINARY_AXIS,
        }
    }

    /// The `(eta, xi, gamma)` under which the family satisfies the cone
    /// condition.
    pub fn cone_params(&self) -> ConeParams {
        let (eta, xi) = match *self {
            Family::KoebeShear => (real(1.0), real(1.0)),
            Family::Slanted(a) => {
                let e = Complex64::from_polar(1.0, a);
                (e, e)
            }
            _ => (real(-1.0), real(1.0)),
        };
        ConeParams::new(eta, xi, self.direction()).expect("unit constants")
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.parameter() {
            Some(p) => write!(f, "{}({p})", self.name()),
            None => f.write_str(self.name()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyInfo {
    pub name: &'static str,
    pub parameter: Option<&'static str>,
    pub range: Option<&'static str>,
    pub formula: &'static str,
    pub role: &'static str,
}

/// The five families, in listing order.
pub fn family_infos() -> Vec<FamilyInfo> {
    vec![
        FamilyInfo {
            name: "f_alpha",
            parameter: Some("alpha"),
            range: Some("[-1, 1]"),
            formula: "h + g = z(1 - alpha z)/(1 - z^2)",
            role: "prefunction, direction pi/2",
        },
        FamilyInfo {
            name: "f_theta",
            parameter: Some("theta"),
            range: Some("[0.05, pi - 0.05]"),
            formula: "h + g = log((1 + z e^{i theta})/(1 + z e^{-i theta}))/(2i sin theta)",
            role: "prefunction, direction pi/2",
        },
        FamilyInfo {
            name: "koebe_shear",
            parameter: None,
            range: None,
            formula: "h - g = z/(1 - z)^2",
            role: "prefunction, direction 0",
        },
        FamilyInfo {
            name: "slanted",
            parameter: Some("slant"),
            range: Some("[-pi/2, pi/2]"),
            formula: "h + e^{-2i slant} g = z/(1 - e^{i slant} z)",
            role: "prefunction, direction pi/2 - slant",
        },
        FamilyInfo {
            name: "phi_beta",
            parameter: Some("beta"),
            range: Some("[-1, 1]"),
            formula: "phi = z(1 - beta z)/(1 - z^2)",
            role: "typically-real convolver",
        },
    ]
}

/// Family parameters with their admissible ranges.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilyParams {
    pub alpha: f64,
    pub beta: f64,
    pub theta: f64,
    pub slant_alpha: f64,
}

impl Default for FamilyParams {
    fn default() -> Self {
        Self {
            alpha: 0.5,
            beta: 0.0,
            theta: PI / 2.0,
            slant_alpha: PI / 4.0,
        }
    }
}

impl FamilyParams {
    pub fn validate(&self) -> Result<()> {
        check_range("alpha", self.alpha, -1.0, 1.0, "[-1, 1]")?;
        check_range("beta", self.beta, -1.0, 1.0, "[-1, 1]")?;
        check_range("theta", self.theta, THETA_GUARD, PI - THETA_GUARD, "[0.05, pi - 0.05]")?;
        check_range("slant_alpha", self.slant_alpha, -PI / 2.0, PI / 2.0, "[-pi/2, pi/2]")
    }
}
