//! Command-line front end. The `hconv` binary is a thin wrapper around
//! [`run`], so every subcommand is also callable in-process.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 check failure, 3 construction
//! error, 4 parse or usage error.

pub mod expr;
pub mod plot;
pub mod presets;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::error::Error;
use crate::families::{candidate_convolvers, convolver, dilatation_catalog, family_infos, Dilatation, FamilyParams};
use crate::harmonic::{ring_max_modulus, shear_construct, ConeParams, Direction};
use crate::series::{engine_order, DEFAULT_R_CAP};
use crate::verifiers::{self as v, SamplingGrid, VerificationReport, DEFAULT_ANGLES, DEFAULT_MARGIN};
use expr::{parse, parse_number, parse_unit, Expr, ParseError, Value};
use plot::{render_svg, PlotSpec};
use presets::{family_from_name, run_preset, Preset, PresetOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_CHECK_FAILED: i32 = 2;
pub const EXIT_CONSTRUCTION: i32 = 3;
pub const EXIT_PARSE: i32 = 4;

#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Usage(String),
    #[error("construction error: {0}")]
    Build(#[from] Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl AppError {
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Parse(_) | AppError::Usage(_) => EXIT_PARSE,
            AppError::Build(_) => EXIT_CONSTRUCTION,
            AppError::Io(_) => EXIT_IO,
        }
    }
}

type AppResult<T> = std::result::Result<T, AppError>;

#[derive(Debug, Parser)]
#[command(name = "hconv", version, about = "Harmonic convolution toolkit: families, checks, presets and plots")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List families, convolvers with their DCP status, and dilatations.
    Families {
        #[arg(long)]
        json: bool,
    },
    /// Run one check on an expression.
    Verify(VerifyArgs),
    /// Run a reproduction preset and write its report bundle.
    Reproduce(ReproduceArgs),
    /// Write an SVG image-grid plot.
    Plot(PlotArgs),
}

fn number_arg(s: &str) -> std::result::Result<f64, String> {
    parse_number(s).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    /// Comma-separated ring radii (default 0.1, 0.2, .., 0.9, 0.95).
    #[arg(long, value_delimiter = ',')]
    pub radii: Option<Vec<f64>>,
    #[arg(long, default_value_t = DEFAULT_ANGLES)]
    pub angles: usize,
    #[arg(long, default_value_t = DEFAULT_MARGIN)]
    pub margin: f64,
}

impl GridArgs {
    pub fn grid(&self) -> AppResult<SamplingGrid> {
        match &self.radii {
            None if self.angles == DEFAULT_ANGLES && self.margin == DEFAULT_MARGIN => Ok(SamplingGrid::certification()),
            None => {
                let radii = SamplingGrid::certification().radii().to_vec();
                Ok(SamplingGrid::new(radii, self.angles, self.margin)?)
            }
            Some(r) => Ok(SamplingGrid::new(r.clone(), self.angles, self.margin)?),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long, allow_hyphen_values = true, value_parser = number_arg)]
    pub alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true, value_parser = number_arg)]
    pub beta: Option<f64>,
    #[arg(long, allow_hyphen_values = true, value_parser = number_arg)]
    pub theta: Option<f64>,
    #[arg(long, allow_hyphen_values = true, value_parser = number_arg)]
    pub slant: Option<f64>,
    /// Dilatation: zero, z, z2, z<n>, mono:n=..:lambda=.., mobius:a=..
    #[arg(long)]
    pub omega: Option<String>,
    /// Convolver: identity, linear, strip or phi_beta (with --beta).
    #[arg(long)]
    pub phi: Option<String>,
}

impl FamilyArgs {
    fn params(&self) -> FamilyParams {
        let d = FamilyParams::default();
        FamilyParams {
            alpha: self.alpha.unwrap_or(d.alpha),
            beta: self.beta.unwrap_or(d.beta),
            theta: self.theta.unwrap_or(d.theta),
            slant_alpha: self.slant.unwrap_or(d.slant_alpha),
        }
    }

    fn omega(&self) -> AppResult<Option<Dilatation>> {
        self.omega
            .as_deref()
            .map(|s| {
                s.parse::<Dilatation>()
                    .map_err(|e| AppError::Usage(format!("--omega: {e}")))
            })
            .transpose()
    }
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Map or series expression, e.g. "shear(f_alpha(0.5), omega=z, gamma=pi/2)".
    #[arg(long)]
    pub expr: String,
    /// theorem_a, eq2, eq3, local_univalence, halfplane, typically_real,
    /// convexity, direction_boundary, boundary_decay, radial_extremes
    #[arg(long)]
    pub check: String,
    /// Cone constant: a real number or cis(<angle>).
    #[arg(long, allow_hyphen_values = true)]
    pub eta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub xi: Option<String>,
    /// Direction angle; defaults to the shear direction, else pi/2.
    #[arg(long, allow_hyphen_values = true, value_parser = number_arg)]
    pub gamma: Option<f64>,
    /// Convolver for eq3.
    #[arg(long, default_value = "identity")]
    pub phi: String,
    #[arg(long, allow_hyphen_values = true, value_parser = number_arg, default_value = "0")]
    pub beta: f64,
    /// Roots-of-unity lattice size for eq3.
    #[arg(long, default_value_t = 8)]
    pub lattice: usize,
    /// f_theta parameter for boundary_decay, when the expression has none.
    #[arg(long, value_parser = number_arg)]
    pub theta: Option<f64>,
    /// Ring radius for direction_boundary.
    #[arg(long, default_value_t = 0.9)]
    pub radius: f64,
    #[arg(long, default_value_t = 2048)]
    pub samples: usize,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Also write the report here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ReproduceArgs {
    /// thm3.1, cor3.2, cor3.3, cor3.4, cor3.5, thm3.6, thm3.7 or rem3.8
    #[arg(long)]
    pub item: String,
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, default_value_t = 8)]
    pub lattice: usize,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Output directory (default hconv-out/<item>).
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct PlotArgs {
    /// Expression to plot; overrides the family flags.
    #[arg(long)]
    pub expr: Option<String>,
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, default_value_t = 8)]
    pub rings: usize,
    #[arg(long, default_value_t = 16)]
    pub spokes: usize,
    #[arg(long, default_value_t = 0.9)]
    pub r_max: f64,
    #[arg(long, default_value_t = plot::MIN_CURVE_POINTS)]
    pub points: usize,
    #[arg(long, default_value = "plot.svg")]
    pub out: PathBuf,
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
        }
    };
    let mut stdout = std::io::stdout().lock();
    match dispatch(&cli.command, &mut stdout) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("hconv: {e}");
            e.exit_code()
        }
    }
}

pub fn dispatch(cmd: &Command, out: &mut dyn Write) -> AppResult<i32> {
    match cmd {
        Command::Families { json } => cmd_families(*json, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Reproduce(a) => cmd_reproduce(a, out),
        Command::Plot(a) => cmd_plot(a, out),
    }
}

fn cmd_families(as_json: bool, out: &mut dyn Write) -> AppResult<i32> {
    let n = engine_order();
    let mut convolvers: Vec<_> = candidate_convolvers(0.0, n)?
        .into_iter()
        .filter(|c| !c.name.starts_with("phi_beta"))
        .collect();
    for beta in [-1.0, -0.5, 0.0, 0.5, 1.0] {
        convolvers.push(convolver("phi_beta", beta, n)?);
    }
    let dilatations: Vec<(String, f64)> = dilatation_catalog(n)
        .into_iter()
        .map(|(name, s)| {
            let sup = ring_max_modulus(&s, DEFAULT_R_CAP, DEFAULT_ANGLES).unwrap_or(f64::INFINITY);
            (name, sup)
        })
        .collect();
    if as_json {
        let doc = json!({
            "order": n,
            "families": family_infos(),
            "convolvers": convolvers
                .iter()
                .map(|c| json!({"name": c.name, "status": c.status, "note": c.note}))
                .collect::<Vec<_>>(),
            "dilatations": dilatations
                .iter()
                .map(|(name, sup)| json!({"name": name, "max_modulus_at_r_cap": sup}))
                .collect::<Vec<_>>(),
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializable"))?;
        return Ok(EXIT_OK);
    }
    writeln!(out, "families (order {n}):")?;
    for f in family_infos() {
        let param = match (f.parameter, f.range) {
            (Some(p), Some(r)) => format!("{p} in {r}"),
            _ => "no parameter".into(),
        };
        writeln!(out, "  {:<12} {:<24} {}  [{}]", f.name, param, f.formula, f.role)?;
    }
    writeln!(out, "convolvers:")?;
    for c in &convolvers {
        writeln!(out, "  {:<16} {:<11} {}", c.name, c.status.to_string(), c.note)?;
    }
    writeln!(out, "dilatations (max |omega| on |z| = {DEFAULT_R_CAP}):")?;
    for (name, sup) in &dilatations {
        writeln!(out, "  {name:<16} {sup:.6}")?;
    }
    Ok(EXIT_OK)
}

/// Finds the parameter of the first `f_theta` atom in `e`.
fn theta_of(e: &Expr) -> Option<f64> {
    match e {
        Expr::Atom { name, param } if name == "f_theta" => *param,
        Expr::Atom { .. } => None,
        Expr::Shear { prefunction, .. } => theta_of(prefunction),
        Expr::Convolve { map, phi } => theta_of(map).or_else(|| theta_of(phi)),
    }
}

pub fn verify_report(a: &VerifyArgs) -> AppResult<VerificationReport> {
    let e = parse(&a.expr)?;
    let n = engine_order();
    let grid = a.grid.grid()?;
    let value = e.eval(n)?;
    let d = match a.gamma {
        Some(g) => Direction::new(g)?,
        None => value.gamma().unwrap_or(Direction::IMAGINARY_AXIS),
    };
    let unit = |flag: &Option<String>, default: f64| -> AppResult<num_complex::Complex64> {
        match flag {
            Some(s) => Ok(parse_unit(s)?),
            None => Ok(num_complex::Complex64::new(default, 0.0)),
        }
    };
    let report = match a.check.as_str() {
        "theorem_a" => v::theorem_a_check(&value.to_series(Some(d)), &grid)?,
        "eq2" => {
            let cp = ConeParams::new(unit(&a.eta, -1.0)?, unit(&a.xi, 1.0)?, d)?;
            v::eq2_cone_check(&value.to_map()?, &cp, &grid)?
        }
        "eq3" => {
            let phi = convolver(&a.phi, a.beta, n)?;
            v::eq3_lattice_check(&phi.series, &value.to_map()?, d, a.lattice, &grid)?
                .with_param("phi", phi.name.as_str())
                .with_param("phi_status", phi.status.to_string())
        }
        "local_univalence" => v::local_univalence_check(&value.to_map()?, &grid)?,
        "halfplane" => v::halfplane_check(&value.to_map()?, d, &grid)?,
        "typically_real" => v::typically_real_check(&value.to_series(Some(d)), &grid)?,
        "convexity" => v::convexity_check(&value.to_series(Some(d)), &grid)?,
        "direction_boundary" => match &value {
            Value::Series(s) => v::direction_convexity_boundary_check(s, d, a.radius, a.samples)?,
            Value::Map { map, .. } => v::direction_convexity_boundary_check(map, d, a.radius, a.samples)?,
        },
        "radial_extremes" => v::radial_extremes_check(&value.to_series(Some(d)), &grid)?,
        "boundary_decay" => {
            let theta = a
                .theta
                .or_else(|| theta_of(&e))
                .ok_or_else(|| AppError::Usage("boundary_decay needs an f_theta expression or --theta".into()))?;
            let decay = match &a.grid.radii {
                Some(r) => SamplingGrid::with_cap(r.clone(), a.grid.angles, a.grid.margin, 0.9995)?,
                None => SamplingGrid::with_cap(
                    vec![0.5, 0.7, 0.9, 0.95, 0.99, 0.995, 0.999],
                    a.grid.angles,
                    0.0,
                    0.9995,
                )?,
            };
            v::boundary_decay_check(theta, &decay)?
        }
        other => return Err(AppError::Usage(format!("unknown check '{other}'"))),
    };
    Ok(report.with_param("expr", e.to_string()))
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> AppResult<i32> {
    let report = verify_report(a)?;
    let text = report.to_json();
    writeln!(out, "{text}")?;
    if let Some(p) = &a.out {
        fs::write(p, text + "\n")?;
    }
    Ok(if report.pass { EXIT_OK } else { EXIT_CHECK_FAILED })
}

pub fn preset_options(a: &ReproduceArgs) -> AppResult<PresetOptions> {
    let mut opts = PresetOptions::new(engine_order());
    opts.family = a.family.family.clone();
    opts.params = a.family.params();
    if let Some(w) = a.family.omega()? {
        opts.omega = w;
    }
    if let Some(phi) = &a.family.phi {
        opts.phi = phi.clone();
    }
    opts.grid = a.grid.grid()?;
    opts.lattice = a.lattice;
    Ok(opts)
}

fn cmd_reproduce(a: &ReproduceArgs, out: &mut dyn Write) -> AppResult<i32> {
    let preset: Preset = a.item.parse().map_err(AppError::Usage)?;
    let opts = preset_options(a)?;
    let run = run_preset(preset, &opts)?;
    let dir = a
        .out_dir
        .clone()
        .unwrap_or_else(|| PathBuf::from("hconv-out").join(preset.id()));
    run.write(&dir)?;
    writeln!(out, "{} (order {}): {}", preset.id(), run.order, preset.summary())?;
    for c in &run.checks {
        let outcome = if c.report.pass { "pass" } else { "fail" };
        let mark = if c.met() { "ok" } else { "UNMET" };
        writeln!(
            out,
            "  {:<26} {:<11} expect {:<6} {:<4} {:<5} extremal {}",
            c.id,
            serde_json::to_value(c.class).expect("serializable").as_str().unwrap_or(""),
            serde_json::to_value(c.expect).expect("serializable").as_str().unwrap_or(""),
            outcome,
            mark,
            c.report.extremal_value
        )?;
    }
    writeln!(out, "verdict: {}", run.verdict)?;
    writeln!(out, "reports: {}", dir.display())?;
    Ok(run.exit_code())
}

fn cmd_plot(a: &PlotArgs, out: &mut dyn Write) -> AppResult<i32> {
    let n = engine_order();
    let (title, value) = match &a.expr {
        Some(src) => {
            let e = parse(src)?;
            (e.to_string(), e.eval(n)?)
        }
        None => {
            let name = a.family.family.as_deref().unwrap_or("f_alpha");
            let fam = family_from_name(name, &a.family.params())?;
            let pre = fam.prefunction(n)?;
            match a.family.omega()? {
                Some(w) => (
                    format!("shear({fam}, omega={w})"),
                    Value::Map {
                        map: shear_construct(&pre, &w.series(n), fam.direction())?,
                        gamma: Some(fam.direction()),
                    },
                ),
                None => (fam.to_string(), Value::Series(pre)),
            }
        }
    };
    let d = value.gamma().unwrap_or(Direction::IMAGINARY_AXIS);
    let mut spec = PlotSpec::new(title, d);
    spec.rings = a.rings;
    spec.spokes = a.spokes;
    spec.r_max = a.r_max;
    spec.points_per_curve = a.points;
    let svg = match &value {
        Value::Series(s) => render_svg(s, &spec)?,
        Value::Map { map, .. } => render_svg(map, &spec)?,
    };
    fs::write(&a.out, svg)?;
    writeln!(out, "wrote {}", a.out.display())?;
    Ok(EXIT_OK)
}
