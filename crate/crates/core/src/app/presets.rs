//! Reproduction presets: one check pipeline per result about harmonic
//! convolution, each check labeled with how much it can certify.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::families::{convolver, Convolver, DcpStatus, Dilatation, Family, FamilyParams};
use crate::harmonic::{shear_construct, ConeParams, Direction, HarmonicMap};
use crate::verifiers::{
    boundary_decay_check, convexity_check, direction_convexity_boundary_check, eq2_cone_check, eq3_lattice_check,
    local_univalence_check, radial_extremes_check, theorem_a_check, typically_real_check, SamplingGrid,
    VerificationReport,
};

/// Radius and sample count for boundary-curve checks inside presets.
const BOUNDARY_RADIUS: f64 = 0.9;
const BOUNDARY_SAMPLES: usize = 2048;
/// Outer radius for the eq3 lattice. Its expression carries the extra pole of
/// `1/(1 - sigma z)` on the circle, so coefficients grow one degree faster and
/// the truncation tail at the default order is too large at 0.95.
const LATTICE_R_MAX: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Thm31,
    Cor32,
    Cor33,
    Cor34,
    Cor35,
    Thm36,
    Thm37,
    Rem38,
}

impl Preset {
    pub const ALL: [Preset; 8] = [
        Preset::Thm31,
        Preset::Cor32,
        Preset::Cor33,
        Preset::Cor34,
        Preset::Cor35,
        Preset::Thm36,
        Preset::Thm37,
        Preset::Rem38,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Preset::Thm31 => "thm3.1",
            Preset::Cor32 => "cor3.2",
            Preset::Cor33 => "cor3.3",
            Preset::Cor34 => "cor3.4",
            Preset::Cor35 => "cor3.5",
            Preset::Thm36 => "thm3.6",
            Preset::Thm37 => "thm3.7",
            Preset::Rem38 => "rem3.8",
        }
    }

    pub fn summary(self) -> &'static str {
        match self {
            Preset::Thm31 => "cone condition on a sheared map implies its convolutions stay convex in the direction",
            Preset::Cor32 => "f_alpha convolved with a DCP map is convex in the imaginary direction",
            Preset::Cor33 => "f_theta convolved with a DCP map is convex in the imaginary direction",
            Preset::Cor34 => "Koebe-type shear convolved with a DCP map is convex in the horizontal direction",
            Preset::Cor35 => "slanted half-plane shear convolved with a DCP map keeps its slant direction",
            Preset::Thm36 => "positivity plus the radial condition on h + g gives the imaginary-direction result",
            Preset::Thm37 => "f_alpha convolved with phi_beta, typically-real route",
            Preset::Rem38 => "phi_beta is not convex, hence not DCP, for beta in (-1, 1)",
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Preset::ALL.into_iter().find(|p| p.id() == s).ok_or_else(|| {
            let ids: Vec<_> = Preset::ALL.iter().map(|p| p.id()).collect();
            format!("unknown preset '{s}'; expected one of {}", ids.join(", "))
        })
    }
}

/// What a check can establish.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CheckClass {
    /// Analytic inequality certified on the sampled subdisk.
    Certified,
    /// Boundary-curve or radial-trend evidence only.
    Heuristic,
    /// Meaningful only if the convolver's DCP membership holds.
    Conditional,
}

/// The outcome the underlying mathematics predicts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Expectation {
    Pass,
    Fail,
    /// Logged without a prediction.
    Report,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PresetCheck {
    pub id: String,
    pub class: CheckClass,
    pub expect: Expectation,
    pub report: VerificationReport,
}

impl PresetCheck {
    pub fn met(&self) -> bool {
        match self.expect {
            Expectation::Pass => self.report.pass,
            Expectation::Fail => !self.report.pass,
            Expectation::Report => true,
        }
    }
}

/// Overridable inputs of a preset run.
#[derive(Debug, Clone)]
pub struct PresetOptions {
    /// Family for the presets that accept one (`thm3.1`, `thm3.6`).
    pub family: Option<String>,
    pub params: FamilyParams,
    pub omega: Dilatation,
    pub phi: String,
    pub grid: SamplingGrid,
    pub lattice: usize,
    pub order: usize,
}

impl PresetOptions {
    pub fn new(order: usize) -> Self {
        Self {
            family: None,
            params: FamilyParams::default(),
            omega: Dilatation::Monomial {
                n: 1,
                lambda: num_complex::Complex64::new(1.0, 0.0),
            },
            phi: "identity".into(),
            grid: SamplingGrid::certification(),
            lattice: 8,
            order,
        }
    }
}

/// Family by CLI name, taking its parameter from `params`.
pub fn family_from_name(name: &str, params: &FamilyParams) -> Result<Family> {
    Ok(match name {
        "f_alpha" => Family::FAlpha(params.alpha),
        "f_theta" => Family::FTheta(params.theta),
        "koebe_shear" => Family::KoebeShear,
        "slanted" => Family::Slanted(params.slant_alpha),
        "phi_beta" => Family::PhiBeta(params.beta),
        _ => {
            return Err(Error::ParamOutOfRange {
                name: "family",
                value: f64::NAN,
                range: "one of f_alpha, f_theta, koebe_shear, slanted, phi_beta",
            })
        }
    })
}

/// A finished preset run.
#[derive(Debug, Clone)]
pub struct PresetRun {
    pub preset: Preset,
    pub params: BTreeMap<String, Value>,
    pub order: usize,
    pub checks: Vec<PresetCheck>,
    pub verdict: String,
}

impl PresetRun {
    /// 0 when every CERTIFIED check meets its expectation, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.certified_ok() {
            0
        } else {
            2
        }
    }

    pub fn certified_ok(&self) -> bool {
        self.checks
            .iter()
            .filter(|c| c.class == CheckClass::Certified)
            .all(PresetCheck::met)
    }

    pub fn file_name(index: usize, check: &PresetCheck) -> String {
        format!("{:02}-{}.json", index + 1, check.id)
    }

    pub fn bundle(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .enumerate()
            .map(|(i, c)| {
                json!({
                    "id": c.id,
                    "check": c.report.check,
                    "class": c.class,
                    "expect": c.expect,
                    "pass": c.report.pass,
                    "met": c.met(),
                    "heuristic": c.report.heuristic,
                    "extremal_value": c.report.extremal_value,
                    "tail_slack": c.report.tail_slack,
                    "file": Self::file_name(i, c),
                })
            })
            .collect();
        json!({
            "preset": self.preset.id(),
            "summary": self.preset.summary(),
            "order": self.order,
            "params": self.params,
            "checks": checks,
            "verdict": self.verdict,
            "exit_code": self.exit_code(),
        })
    }

    /// Writes one report per check plus `bundle.json`; returns the paths.
    pub fn write(&self, dir: &Path) -> io::Result<Vec<PathBuf>> {
        fs::create_dir_all(dir)?;
        let mut paths = Vec::with_capacity(self.checks.len() + 1);
        for (i, c) in self.checks.iter().enumerate() {
            let p = dir.join(Self::file_name(i, c));
            fs::write(&p, c.report.to_json() + "\n")?;
            paths.push(p);
        }
        let p = dir.join("bundle.json");
        let text = serde_json::to_string_pretty(&self.bundle()).expect("bundle is serializable");
        fs::write(&p, text + "\n")?;
        paths.push(p);
        Ok(paths)
    }
}

struct Builder<'a> {
    opts: &'a PresetOptions,
    checks: Vec<PresetCheck>,
}

impl Builder<'_> {
    fn push(&mut self, id: &str, class: CheckClass, expect: Expectation, report: VerificationReport) {
        self.checks.push(PresetCheck {
            id: id.into(),
            class,
            expect,
            report,
        });
    }

    fn grid(&self) -> &SamplingGrid {
        &self.opts.grid
    }

    fn lattice_grid(&self) -> Result<SamplingGrid> {
        let g = self.grid();
        let radii: Vec<f64> = g.radii().iter().copied().filter(|&r| r <= LATTICE_R_MAX).collect();
        if radii.is_empty() {
            return Ok(g.clone());
        }
        SamplingGrid::new(radii, g.angles_per_ring(), g.margin())
    }

    /// Local univalence and the cone condition on `f`.
    fn hypotheses(&mut self, f: &HarmonicMap, cp: &ConeParams) -> Result<()> {
        let r = local_univalence_check(f, self.grid())?;
        self.push("f.local_univalence", CheckClass::Certified, Expectation::Pass, r);
        let r = eq2_cone_check(f, cp, self.grid())?;
        self.push("f.eq2", CheckClass::Certified, Expectation::Pass, r);
        Ok(())
    }

    /// The convolution side: the nonvanishing lattice, the convolved
    /// dilatation, and the boundary curve of the convolved map.
    fn conclusions(&mut self, f: &HarmonicMap, d: Direction, phi: &Convolver) -> Result<()> {
        let class = match phi.status {
            DcpStatus::ProvenDcp => CheckClass::Certified,
            DcpStatus::Candidate | DcpStatus::NotDcp => CheckClass::Conditional,
        };
        let expect = match phi.status {
            DcpStatus::NotDcp => Expectation::Report,
            _ => Expectation::Pass,
        };
        let r = eq3_lattice_check(&phi.series, f, d, self.opts.lattice, &self.lattice_grid()?)?
            .with_param("phi", phi.name.as_str())
            .with_param("phi_status", phi.status.to_string());
        self.push("eq3.lattice", class, expect, r);
        let conv = f.harmonic_convolve(&phi.series)?;
        let r = local_univalence_check(&conv, self.grid())?.with_param("phi", phi.name.as_str());
        self.push("conv.local_univalence", class, expect, r);
        let r = direction_convexity_boundary_check(&conv, d, BOUNDARY_RADIUS, BOUNDARY_SAMPLES)?
            .with_param("phi", phi.name.as_str());
        self.push("conv.direction_boundary", CheckClass::Heuristic, Expectation::Pass, r);
        Ok(())
    }
}

fn params_json(preset: Preset, family: Option<Family>, opts: &PresetOptions) -> BTreeMap<String, Value> {
    let p = &opts.params;
    let mut m = BTreeMap::new();
    m.insert("alpha".into(), json!(p.alpha));
    m.insert("beta".into(), json!(p.beta));
    m.insert("theta".into(), json!(p.theta));
    m.insert("slant".into(), json!(p.slant_alpha));
    m.insert("omega".into(), json!(opts.omega.to_string()));
    m.insert("phi".into(), json!(opts.phi));
    m.insert("lattice".into(), json!(opts.lattice));
    m.insert("grid".into(), json!(opts.grid.summary()));
    m.insert("margin".into(), json!(opts.grid.margin()));
    m.insert("order".into(), json!(opts.order));
    m.insert("preset".into(), json!(preset.id()));
    if let Some(f) = family {
        m.insert("family".into(), json!(f.name()));
    }
    m
}

/// Runs a preset. Construction failures are errors; check failures are
/// recorded in the returned run.
pub fn run_preset(preset: Preset, opts: &PresetOptions) -> Result<PresetRun> {
    opts.params.validate()?;
    let n = opts.order;
    let mut b = Builder {
        opts,
        checks: Vec::new(),
    };
    let family = match preset {
        Preset::Thm31 | Preset::Thm36 => Some(family_from_name(
            opts.family.as_deref().unwrap_or("f_alpha"),
            &opts.params,
        )?),
        Preset::Cor32 | Preset::Thm37 => Some(Family::FAlpha(opts.params.alpha)),
        Preset::Cor33 => Some(Family::FTheta(opts.params.theta)),
        Preset::Cor34 => Some(Family::KoebeShear),
        Preset::Cor35 => Some(Family::Slanted(opts.params.slant_alpha)),
        Preset::Rem38 => None,
    };
    let mut verdict = None;
    match preset {
        Preset::Rem38 => {
            let beta = opts.params.beta;
            let phi = convolver("phi_beta", beta, n)?;
            let interior = beta.abs() < 1.0;
            let expect = if interior {
                Expectation::Fail
            } else {
                Expectation::Pass
            };
            let r = convexity_check(&phi.series, b.grid())?
                .with_param("beta", beta)
                .with_param("phi_status", phi.status.to_string());
            let failed = !r.pass;
            b.push("phi.convexity", CheckClass::Certified, expect, r);
            verdict = Some(match (interior, failed) {
                (true, true) => "NOT_DCP confirmed".to_string(),
                (true, false) => "NOT_DCP not confirmed: no convexity violation found".to_string(),
                (false, false) => "convex: consistent with DCP membership".to_string(),
                (false, true) => "unexpected convexity violation at an endpoint".to_string(),
            });
        }
        Preset::Thm37 => {
            let alpha = opts.params.alpha;
            let fam = Family::FAlpha(alpha);
            let f = shear_construct(&fam.prefunction(n)?, &opts.omega.series(n), Direction::IMAGINARY_AXIS)?;
            let phi = convolver("phi_beta", opts.params.beta, n)?;
            let big_f = f.h().add(f.g());
            let big_g = big_f.hadamard(&phi.series);
            let r = typically_real_check(&phi.series, b.grid())?;
            b.push("phi.typically_real", CheckClass::Certified, Expectation::Pass, r);
            let r = theorem_a_check(&phi.series, b.grid())?;
            b.push("phi.theorem_a", CheckClass::Certified, Expectation::Pass, r);
            let r = typically_real_check(&big_f.differentiate().times_z(), b.grid())?;
            b.push("zF'.typically_real", CheckClass::Certified, Expectation::Pass, r);
            let r = typically_real_check(&big_g.differentiate().times_z(), b.grid())?;
            b.push("zG'.typically_real", CheckClass::Certified, Expectation::Pass, r);
            let r = theorem_a_check(&big_g, b.grid())?;
            b.push("G.theorem_a", CheckClass::Certified, Expectation::Pass, r);
            let conv = f.harmonic_convolve(&phi.series)?;
            let r = local_univalence_check(&conv, b.grid())?
                .with_param("note", "proviso of the result: reported, not required");
            b.push("conv.local_univalence", CheckClass::Conditional, Expectation::Report, r);
        }
        _ => {
            let fam = family.expect("family presets");
            let d = fam.direction();
            let pre = fam.prefunction(n)?;
            let f = shear_construct(&pre, &opts.omega.series(n), d)?;
            let phi = convolver(&opts.phi, opts.params.beta, n)?;
            match preset {
                Preset::Cor32 => {
                    let r = theorem_a_check(&pre, b.grid())?;
                    b.push("F.theorem_a", CheckClass::Certified, Expectation::Pass, r);
                }
                Preset::Cor33 => {
                    let decay = SamplingGrid::with_cap(
                        vec![0.5, 0.7, 0.9, 0.95, 0.99, 0.995, 0.999],
                        opts.grid.angles_per_ring(),
                        0.0,
                        0.9995,
                    )?;
                    let r = boundary_decay_check(opts.params.theta, &decay)?;
                    b.push("rho.boundary_decay", CheckClass::Certified, Expectation::Pass, r);
                    let r = theorem_a_check(&pre, b.grid())?;
                    b.push("F.theorem_a", CheckClass::Certified, Expectation::Pass, r);
                }
                Preset::Thm36 => {
                    if d != Direction::IMAGINARY_AXIS {
                        return Err(Error::ParamOutOfRange {
                            name: "family",
                            value: d.gamma(),
                            range: "a family convex in the imaginary direction (f_alpha, f_theta, phi_beta)",
                        });
                    }
                    let big_f = f.h().add(f.g());
                    let r = theorem_a_check(&big_f, b.grid())?;
                    b.push("F.theorem_a", CheckClass::Certified, Expectation::Pass, r);
                    let r = radial_extremes_check(&big_f, b.grid())?.with_param(
                        "condition",
                        "radial sup/inf attainment toward +-1 is not decidable from a truncation",
                    );
                    b.push("F.radial_extremes", CheckClass::Heuristic, Expectation::Pass, r);
                }
                _ => {}
            }
            b.hypotheses(&f, &fam.cone_params())?;
            b.conclusions(&f, d, &phi)?;
        }
    }
    let checks = b.checks;
    let run = PresetRun {
        preset,
        params: params_json(preset, family, opts),
        order: n,
        verdict: String::new(),
        checks,
    };
    let verdict = verdict.unwrap_or_else(|| {
        let failed: Vec<&str> = run
            .checks
            .iter()
            .filter(|c| c.class == CheckClass::Certified && !c.met())
            .map(|c| c.id.as_str())
            .collect();
        if failed.is_empty() {
            "all certified checks met expectation".to_string()
        } else {
            format!("certified checks failed: {}", failed.join(", "))
        }
    });
    Ok(PresetRun { verdict, ..run })
}
