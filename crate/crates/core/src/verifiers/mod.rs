//! Numerical certification of positivity, nonvanishing, typical-realness and
//! convexity conditions on sampled compact subdisks.
//!
//! Every series-based check first forms the relevant expression as a single
//! truncated series (so cancellations happen exactly in coefficient space),
//! then scans it over a [`SamplingGrid`]. The truncation error is accounted
//! for by the series' `tail_bound`, maximized over the grid radii and reported
//! as `tail_slack`.

mod grid;
mod report;

use std::f64::consts::PI;

use num_complex::Complex64;

pub use grid::{tail_slack, GridSummary, SamplingGrid, DEFAULT_ANGLES, DEFAULT_MARGIN, MIN_CERT_ANGLES};
pub use report::VerificationReport;

use crate::error::{Error, Result};
use crate::harmonic::{ConeParams, Direction, DiskMap, HarmonicMap, DENOMINATOR_FLOOR, NORMALIZATION_TOL, UNIT_TOL};
use crate::series::{DiskPoint, TruncatedSeries};
use grid::{argmax, argmin};

/// Dead-band for discrete derivative signs in the boundary-curve check.
pub const DEAD_BAND: f64 = 1e-9;
/// Fewest samples accepted by the boundary-curve check.
pub const MIN_BOUNDARY_SAMPLES: usize = 1024;
/// Tolerance for "coefficients are real".
pub const REAL_COEFF_TOL: f64 = 1e-12;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn require_normalized(what: &'static str, f: &TruncatedSeries) -> Result<()> {
    let (c0, c1) = (f.coeff(0), f.coeff(1));
    if c0.norm() > NORMALIZATION_TOL || (c1 - c(1.0, 0.0)).norm() > NORMALIZATION_TOL {
        return Err(Error::NotNormalized {
            what,
            detail: format!("c0 = {c0}, c1 = {c1}"),
        });
    }
    Ok(())
}

fn require_unit(name: &'static str, w: Complex64) -> Result<()> {
    let modulus = w.norm();
    if (modulus - 1.0).abs() > UNIT_TOL {
        return Err(Error::NotUnitModulus { name, modulus });
    }
    Ok(())
}

/// Minimum of `Re eval(z)` over the grid, with the first minimizing point as
/// witness. `tail_slack` is deducted before comparing against the margin.
pub fn min_real_on_grid<F>(
    check: &str,
    grid: &SamplingGrid,
    tail_slack: f64,
    mut eval: F,
) -> Result<VerificationReport>
where
    F: FnMut(DiskPoint) -> Result<Complex64>,
{
    let (min, witness) = argmin(grid.points(), |p| eval(p).map(|v| v.re))?;
    Ok(VerificationReport::lower_bound(check, grid, min, witness, tail_slack))
}

/// Scans `Re s(z)` for a single series `s`.
fn series_min_real(check: &str, s: &TruncatedSeries, grid: &SamplingGrid) -> Result<VerificationReport> {
    let slack = tail_slack(s, grid.radii());
    min_real_on_grid(check, grid, slack, |p| Ok(s.evaluate(p)))
}

/// The series `(1 - z^2) F'(z)`.
pub fn theorem_a_series(f: &TruncatedSeries) -> TruncatedSeries {
    let n = f.order();
    let factor = TruncatedSeries::polynomial(&[c(1.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)], n);
    factor.multiply(&f.differentiate())
}

/// `Re[(1 - z^2) F'(z)] > 0`: univalence plus convexity in the direction of
/// the imaginary axis (together with the boundary sup/inf condition, which is
/// only probed heuristically by [`radial_extremes_check`]).
pub fn theorem_a_check(f: &TruncatedSeries, grid: &SamplingGrid) -> Result<VerificationReport> {
    require_normalized("F", f)?;
    Ok(series_min_real("theorem_a", &theorem_a_series(f), grid)?.with_param("order", f.order()))
}

/// The series `(1 - eta z)(1 - xi z)(h' - e^{2i gamma} g')`.
pub fn cone_series(f: &HarmonicMap, cp: &ConeParams) -> TruncatedSeries {
    let n = f.order();
    let quad = TruncatedSeries::polynomial(
        &[c(1.0, 0.0), -(cp.eta() + cp.xi()), cp.eta() * cp.xi()],
        n,
    );
    let rot = cp.gamma().rotation();
    let d = f.h().differentiate().sub(&f.g().differentiate().scale(rot));
    quad.multiply(&d)
}

/// `Re[(1 - eta z)(1 - xi z)(h' - e^{2i gamma} g')] > 0`.
pub fn eq2_cone_check(f: &HarmonicMap, cp: &ConeParams, grid: &SamplingGrid) -> Result<VerificationReport> {
    Ok(series_min_real("eq2_cone", &cone_series(f, cp), grid)?
        .with_complex("eta", cp.eta())
        .with_complex("xi", cp.xi())
        .with_param("gamma", cp.gamma().gamma())
        .with_param("order", f.order()))
}

/// The series `phi * [(1 + beta sigma z)/(1 - sigma z) z (h' - e^{2i gamma} g')]`.
pub fn eq3_series(
    phi: &TruncatedSeries,
    f: &HarmonicMap,
    d: Direction,
    beta: Complex64,
    sigma: Complex64,
) -> Result<TruncatedSeries> {
    let n = f.order();
    let num = TruncatedSeries::polynomial(&[c(1.0, 0.0), beta * sigma], n);
    let den = TruncatedSeries::polynomial(&[c(1.0, 0.0), -sigma], n);
    let prefactor = num.divide(&den)?;
    let shifted = f
        .h()
        .differentiate()
        .sub(&f.g().differentiate().scale(d.rotation()))
        .times_z();
    Ok(phi.hadamard(&prefactor.multiply(&shifted)))
}

/// Nonvanishing of the convolution above on the punctured grid: the
/// extremal value is the minimum modulus.
pub fn eq3_nonvanishing_check(
    phi: &TruncatedSeries,
    f: &HarmonicMap,
    d: Direction,
    beta: Complex64,
    sigma: Complex64,
    grid: &SamplingGrid,
) -> Result<VerificationReport> {
    require_unit("beta", beta)?;
    require_unit("sigma", sigma)?;
    let s = eq3_series(phi, f, d, beta, sigma)?;
    let slack = tail_slack(&s, grid.radii());
    let (min, witness) = argmin(grid.points(), |p| Ok(s.evaluate(p).norm()))?;
    Ok(VerificationReport::lower_bound("eq3_nonvanishing", grid, min, witness, slack)
        .with_complex("beta", beta)
        .with_complex("sigma", sigma)
        .with_param("gamma", d.gamma())
        .with_param("order", f.order()))
}

/// Runs [`eq3_nonvanishing_check`] over the `k x k` lattice of `k`-th roots of
/// unity for `(beta, sigma)`, beta-major.
pub fn eq3_lattice(
    phi: &TruncatedSeries,
    f: &HarmonicMap,
    d: Direction,
    k: usize,
    grid: &SamplingGrid,
) -> Result<Vec<VerificationReport>> {
    let root = |j: usize| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / k as f64);
    let mut out = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            out.push(eq3_nonvanishing_check(phi, f, d, root(i), root(j), grid)?);
        }
    }
    Ok(out)
}

/// [`eq3_lattice`] collapsed into one report: the lattice entry with the
/// smallest certified margin `extremal_value - tail_slack` is the witness,
/// and the report passes only if every entry does.
pub fn eq3_lattice_check(
    phi: &TruncatedSeries,
    f: &HarmonicMap,
    d: Direction,
    k: usize,
    grid: &SamplingGrid,
) -> Result<VerificationReport> {
    if k == 0 {
        return Err(Error::InvalidGrid("lattice size must be positive".into()));
    }
    let reports = eq3_lattice(phi, f, d, k, grid)?;
    let passed = reports.iter().filter(|r| r.pass).count();
    let worst = reports
        .iter()
        .min_by(|a, b| (a.extremal_value - a.tail_slack).total_cmp(&(b.extremal_value - b.tail_slack)))
        .expect("lattice is non-empty")
        .clone();
    let mut report = worst;
    report.check = "eq3_lattice".into();
    report.pass = passed == reports.len();
    Ok(report
        .with_param("lattice", k)
        .with_param("lattice_passed", passed)
        .with_param("lattice_total", reports.len()))
}

/// `max |omega|` on the outermost ring (maximum-modulus reduction); passes
/// when it stays below 1 after adding the tail slack.
///
/// If the dilatation series diverges at the outer radius, `h'` vanishes in or
/// near the disk and the maximum-modulus reduction no longer applies; the
/// extremal value is then the pointwise maximum of `|g'/h'|` over the whole
/// grid, the tail slack is infinite and the check fails.
pub fn local_univalence_check(f: &HarmonicMap, grid: &SamplingGrid) -> Result<VerificationReport> {
    let omega = f.dilatation()?;
    let r = grid.outer_radius();
    let slack = tail_slack(&omega, &[r]);
    let dh = f.h().differentiate();
    let (min_dh, at) = argmin(grid.points(), |p| Ok(dh.evaluate(p).norm()))?;
    let report = if slack.is_finite() {
        let (max, witness) = argmax(grid.ring(r), |p| Ok(omega.evaluate(p).norm()))?;
        VerificationReport::upper_bound("local_univalence", grid, 1.0, max, witness, slack)
            .with_param("evaluation", "dilatation series on the outer ring")
    } else {
        let dg = f.g().differentiate();
        let (max, witness) = argmax(grid.points(), |p| Ok(dg.evaluate(p).norm() / dh.evaluate(p).norm()))?;
        VerificationReport::upper_bound("local_univalence", grid, 1.0, max, witness, slack)
            .with_param("evaluation", "pointwise |g'/h'| over the grid; dilatation series diverges")
    };
    Ok(report
        .with_param("ring_radius", r)
        .with_param("min_abs_h_prime", min_dh)
        .with_complex("min_abs_h_prime_at", at.z())
        .with_param("order", f.order()))
}

/// The series `(h' + e^{2i gamma} g') / (h' - e^{2i gamma} g')`.
pub fn halfplane_series(f: &HarmonicMap, d: Direction) -> Result<TruncatedSeries> {
    let dh = f.h().differentiate();
    let dg = f.g().differentiate().scale(d.rotation());
    dh.add(&dg).divide(&dh.sub(&dg))
}

/// `Re[(h' + e^{2i gamma} g') / (h' - e^{2i gamma} g')] > 0` over the grid,
/// equivalent to `|omega| < 1`.
pub fn halfplane_check(f: &HarmonicMap, d: Direction, grid: &SamplingGrid) -> Result<VerificationReport> {
    let s = halfplane_series(f, d)?;
    Ok(series_min_real("halfplane", &s, grid)?
        .with_param("gamma", d.gamma())
        .with_param("order", f.order()))
}

/// Typical realness of a normalized `F`, by three sub-checks that must all
/// hold:
///
/// * (a) every coefficient is real to `1e-12`;
/// * (b) `sign(Im F(z)) * sign(Im z) >= 0` at nonreal grid points, where
///   `|Im F|` at or below the ring's tail bound plus margin counts as sign 0
///   (indeterminate; the count is reported);
/// * (c) `P(z) = F(z)(1 - z^2)/z` has real coefficients, `P(0) = 1` and
///   `Re P > 0` on the grid (the product representation of typically real functions).
///
/// The extremal value and witness are those of `min Re P`.
pub fn typically_real_check(f: &TruncatedSeries, grid: &SamplingGrid) -> Result<VerificationReport> {
    require_normalized("F", f)?;
    let n = f.order();

    let coeffs_real = f.is_real(REAL_COEFF_TOL);

    let mut sign_min = 1_i32;
    let mut indeterminate = 0_usize;
    let mut violation: Option<Complex64> = None;
    let mut certifiable = true;
    for &r in grid.radii() {
        let tol = f.tail_bound(r).unwrap_or(f64::INFINITY) + grid.margin();
        if !tol.is_finite() {
            certifiable = false;
            continue;
        }
        for p in grid.ring(r) {
            let z = p.z();
            if z.im.abs() <= 1e-12 * r {
                continue;
            }
            let im_f = f.evaluate(p).im;
            let s = if im_f.abs() <= tol {
                indeterminate += 1;
                0
            } else {
                (im_f.signum() * z.im.signum()) as i32
            };
            if s < sign_min {
                sign_min = s;
            }
            if s < 0 && violation.is_none() {
                violation = Some(z);
            }
        }
    }
    let sign_ok = certifiable && sign_min >= 0;

    let factor = TruncatedSeries::polynomial(&[c(1.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)], n);
    let p_series = f.multiply(&factor).shift_down();
    let p0 = p_series.coeff(0);
    let p0_ok = (p0 - c(1.0, 0.0)).norm() <= REAL_COEFF_TOL;
    let p_real = p_series.is_real(REAL_COEFF_TOL);
    let base = series_min_real("typically_real", &p_series, grid)?;

    let mut report = base
        .with_param("coeffs_real", coeffs_real)
        .with_param("sign_check_pass", sign_ok)
        .with_param("sign_min", sign_min)
        .with_param("indeterminate_points", indeterminate)
        .with_complex("p_at_zero", p0)
        .with_param("rogosinski_pass", false)
        .with_param("order", n);
    let rogosinski_ok = p_real && p0_ok && report.pass;
    report.params.insert("rogosinski_pass".into(), rogosinski_ok.into());
    if let Some(z) = violation {
        report = report.with_complex("sign_violation_at", z);
    }
    report.pass = coeffs_real && sign_ok && rogosinski_ok;
    Ok(report)
}

/// The series `1 + z phi''/phi' = (z phi')' / phi'`.
pub fn convexity_series(phi: &TruncatedSeries) -> Result<TruncatedSeries> {
    let d1 = phi.differentiate();
    if d1.coeff(0).norm() < DENOMINATOR_FLOOR {
        return Err(Error::DerivativeVanishes { at: c(0.0, 0.0) });
    }
    // (z phi')' = phi' + z phi'', computed as the derivative of z phi'
    d1.times_z().differentiate().divide(&d1)
}

/// Analytic convexity criterion `Re[1 + z phi''/phi'] >= 0` on the grid.
pub fn convexity_check(phi: &TruncatedSeries, grid: &SamplingGrid) -> Result<VerificationReport> {
    let d1 = phi.differentiate();
    for p in grid.points() {
        if d1.evaluate(p).norm() < DENOMINATOR_FLOOR {
            return Err(Error::DerivativeVanishes { at: p.z() });
        }
    }
    let s = convexity_series(phi)?;
    Ok(series_min_real("convexity", &s, grid)?.with_param("order", phi.order()))
}

/// Counts turning points of `u(t) = Im(e^{-i gamma} f(r e^{it}))` on a uniform
/// mesh. Exactly two (one maximum arc, one minimum arc) is the condition for
/// the image of `|z| = r` to bound a domain convex in direction `e^{i gamma}`.
///
/// Heuristic: direction convexity of `f(D)` is not inherited by the images
/// of subdisks.
pub fn direction_convexity_boundary_check(
    f: &dyn DiskMap,
    d: Direction,
    r: f64,
    samples: usize,
) -> Result<VerificationReport> {
    if samples < MIN_BOUNDARY_SAMPLES {
        return Err(Error::InvalidGrid(format!(
            "{samples} samples; at least {MIN_BOUNDARY_SAMPLES} required"
        )));
    }
    let rot = d.unit().conj();
    let points: Vec<DiskPoint> = (0..samples)
        .map(|k| DiskPoint::new(Complex64::from_polar(r, 2.0 * PI * k as f64 / samples as f64)))
        .collect::<Result<_>>()?;
    let u: Vec<f64> = points.iter().map(|&p| (rot * f.value_at(p)).im).collect();
    let (umin, umax) = u
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    if umax - umin <= DEAD_BAND {
        return Err(Error::DegenerateProjection);
    }
    let du: Vec<f64> = (0..samples).map(|k| u[(k + 1) % samples] - u[k]).collect();
    let start = du
        .iter()
        .position(|v| v.abs() > DEAD_BAND)
        .ok_or(Error::DegenerateProjection)?;
    let mut prev = du[start].signum();
    let mut changes = 0_usize;
    for step in 1..=samples {
        let v = du[(start + step) % samples];
        if v.abs() > DEAD_BAND {
            let s = v.signum();
            if s != prev {
                changes += 1;
                prev = s;
            }
        }
    }
    let top = u
        .iter()
        .enumerate()
        .fold(0, |best, (k, &v)| if v > u[best] { k } else { best });
    let grid = SamplingGrid::new(vec![r], samples, DEAD_BAND)?;
    let mut report = VerificationReport::lower_bound("direction_convexity_boundary", &grid, changes as f64, points[top], 0.0)
        .with_param("sense", "count")
        .with_param("sign_changes", changes)
        .with_param("expected_sign_changes", 2)
        .with_param("gamma", d.gamma())
        .with_param("radius", r)
        .with_param("samples", samples)
        .heuristic();
    report.pass = changes == 2;
    Ok(report)
}

/// `Re rho` for `rho(z) = (1 - z^2)/((1 + z e^{i theta})(1 + z e^{-i theta}))`.
pub fn rho_closed_form(theta: f64, z: Complex64) -> Complex64 {
    let e = Complex64::from_polar(1.0, theta);
    (1.0 - z * z) / ((1.0 + z * e) * (1.0 + z * e.conj()))
}

/// Ring minima of `Re rho` on rings approaching the unit circle, evaluated in
/// closed form. Passes when every minimum is positive and the minima decrease
/// strictly with the radius, the signature of a positive harmonic function
/// with zero boundary values away from its poles.
pub fn boundary_decay_check(theta: f64, grid: &SamplingGrid) -> Result<VerificationReport> {
    let mut minima = Vec::with_capacity(grid.radii().len());
    let mut last = None;
    for &r in grid.radii() {
        let (m, p) = argmin(grid.ring(r), |p| Ok(rho_closed_form(theta, p.z()).re))?;
        minima.push(m);
        last = Some(p);
    }
    let positive = minima.iter().all(|&m| m > 0.0);
    let decreasing = minima.windows(2).all(|w| w[1] < w[0]);
    let last_min = *minima.last().expect("non-empty grid");
    let mut report = VerificationReport::lower_bound("boundary_decay", grid, last_min, last.expect("non-empty"), 0.0)
        .with_param("theta", theta)
        .with_param("ring_minima", minima)
        .with_param("positive", positive)
        .with_param("monotone_decreasing", decreasing);
    report.pass = positive && decreasing;
    Ok(report)
}

/// Radial probe of the boundary sup/inf condition for an analytic `F`: along
/// `z = +r_k` the real part should increase to the ring supremum, along
/// `z = -r_k` decrease to the ring infimum. This indicates a trend only; the
/// condition itself concerns limits at `z = +-1` and cannot be decided from a
/// truncation.
pub fn radial_extremes_check(f: &TruncatedSeries, grid: &SamplingGrid) -> Result<VerificationReport> {
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    let mut worst = (f64::NEG_INFINITY, DiskPoint::new(c(0.0, 0.0))?);
    for &r in grid.radii() {
        let p_plus = DiskPoint::with_cap(c(r, 0.0), grid.cap())?;
        let p_minus = DiskPoint::with_cap(c(-r, 0.0), grid.cap())?;
        let (at_plus, at_minus) = (f.evaluate(p_plus).re, f.evaluate(p_minus).re);
        plus.push(at_plus);
        minus.push(at_minus);
        let scale = 1.0 + at_plus.abs().max(at_minus.abs());
        let (sup, p_sup) = argmax(grid.ring(r), |p| Ok(f.evaluate(p).re))?;
        let (inf, p_inf) = argmin(grid.ring(r), |p| Ok(f.evaluate(p).re))?;
        for (excess, p) in [((sup - at_plus) / scale, p_sup), ((at_minus - inf) / scale, p_inf)] {
            if excess > worst.0 {
                worst = (excess, p);
            }
        }
    }
    let up = plus.windows(2).all(|w| w[1] > w[0]);
    let down = minus.windows(2).all(|w| w[1] < w[0]);
    let slack = tail_slack(f, grid.radii());
    let mut report = VerificationReport::upper_bound("radial_extremes", grid, 0.0, worst.0, worst.1, 0.0)
        .with_param("re_at_plus_r", plus)
        .with_param("re_at_minus_r", minus)
        .with_param("increasing_toward_plus_one", up)
        .with_param("decreasing_toward_minus_one", down)
        .with_param("series_tail_slack", slack)
        .with_param(
            "note",
            "boundary limits at z = +-1 are not decidable from a truncation; radial trend only",
        )
        .heuristic();
    // ring extremes may drift off the axis by truncation ripple, bounded by the tail
    let tolerance = slack + grid.margin();
    report = report.with_param("excess_tolerance", tolerance);
    report.pass = up && down && worst.0 <= tolerance;
    Ok(report)
}
