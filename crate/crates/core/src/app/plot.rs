//! SVG 1.1 image-grid plots: images of concentric circles and radial spokes.

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::harmonic::{Direction, DiskMap};
use crate::series::DiskPoint;

/// Fewest polyline vertices per curve.
pub const MIN_CURVE_POINTS: usize = 512;
const MIN_RINGS: usize = 4;
const MIN_SPOKES: usize = 4;
const CANVAS: f64 = 800.0;
const PAD: f64 = 40.0;

#[derive(Debug, Clone, PartialEq)]
pub struct PlotSpec {
    pub title: String,
    pub rings: usize,
    pub spokes: usize,
    pub r_max: f64,
    pub points_per_curve: usize,
    pub direction: Direction,
}

impl PlotSpec {
    pub fn new(title: impl Into<String>, direction: Direction) -> Self {
        Self {
            title: title.into(),
            rings: 8,
            spokes: 16,
            r_max: 0.9,
            points_per_curve: MIN_CURVE_POINTS,
            direction,
        }
    }

    pub fn validate(&self, cap: f64) -> Result<()> {
        if self.rings < MIN_RINGS || self.spokes < MIN_SPOKES {
            return Err(Error::InvalidGrid(format!(
                "rings and spokes must be at least 4 (got {} and {})",
                self.rings, self.spokes
            )));
        }
        if !(self.r_max > 0.0 && self.r_max <= cap) {
            return Err(Error::RadiusExceeded {
                radius: self.r_max,
                cap,
            });
        }
        if self.points_per_curve < MIN_CURVE_POINTS {
            return Err(Error::InvalidGrid(format!(
                "{} points per curve; at least {MIN_CURVE_POINTS} required",
                self.points_per_curve
            )));
        }
        Ok(())
    }
}

/// Image curves in the `w`-plane: rings first (innermost out), then spokes.
#[derive(Debug, Clone, PartialEq)]
pub struct ImageGrid {
    pub rings: Vec<Vec<Complex64>>,
    pub spokes: Vec<Vec<Complex64>>,
}

impl ImageGrid {
    fn all(&self) -> impl Iterator<Item = &Complex64> {
        self.rings.iter().chain(&self.spokes).flatten()
    }
}

pub fn image_grid(f: &dyn DiskMap, spec: &PlotSpec) -> Result<ImageGrid> {
    spec.validate(crate::series::DEFAULT_R_CAP)?;
    let m = spec.points_per_curve;
    let eval = |z: Complex64| DiskPoint::new(z).map(|p| f.value_at(p));
    let rings = (1..=spec.rings)
        .map(|k| {
            let r = spec.r_max * k as f64 / spec.rings as f64;
            (0..=m)
                .map(|j| eval(Complex64::from_polar(r, std::f64::consts::TAU * j as f64 / m as f64)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let spokes = (0..spec.spokes)
        .map(|k| {
            let t = std::f64::consts::TAU * k as f64 / spec.spokes as f64;
            (0..m)
                .map(|j| eval(Complex64::from_polar(spec.r_max * j as f64 / (m - 1) as f64, t)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ImageGrid { rings, spokes })
}

struct Frame {
    cx: f64,
    cy: f64,
    scale: f64,
}

impl Frame {
    fn fit(grid: &ImageGrid) -> Self {
        let (mut x0, mut x1, mut y0, mut y1) = (0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64);
        for w in grid.all().filter(|w| w.is_finite()) {
            x0 = x0.min(w.re);
            x1 = x1.max(w.re);
            y0 = y0.min(w.im);
            y1 = y1.max(w.im);
        }
        let span = (x1 - x0).max(y1 - y0).max(1e-12);
        Self {
            cx: 0.5 * (x0 + x1),
            cy: 0.5 * (y0 + y1),
            scale: (CANVAS - 2.0 * PAD) / span,
        }
    }

    fn px(&self, w: Complex64) -> (f64, f64) {
        (
            CANVAS / 2.0 + (w.re - self.cx) * self.scale,
            CANVAS / 2.0 - (w.im - self.cy) * self.scale,
        )
    }
}

fn polyline(out: &mut String, frame: &Frame, pts: &[Complex64], class: &str) {
    out.push_str(&format!("  <polyline class=\"{class}\" points=\""));
    for (i, w) in pts.iter().filter(|w| w.is_finite()).enumerate() {
        let (x, y) = frame.px(*w);
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{x:.3},{y:.3}");
    }
    out.push_str("\"/>\n");
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Renders the image grid of `f` as an SVG 1.1 document.
pub fn render_svg(f: &dyn DiskMap, spec: &PlotSpec) -> Result<String> {
    let grid = image_grid(f, spec)?;
    let frame = Frame::fit(&grid);
    let mut out = String::new();
    let _ = writeln!(out, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{CANVAS}\" height=\"{CANVAS}\" viewBox=\"0 0 {CANVAS} {CANVAS}\">"
    );
    let _ = writeln!(out, "  <title>{}</title>", escape(&spec.title));
    out.push_str(
        "  <defs><marker id=\"head\" markerWidth=\"10\" markerHeight=\"7\" refX=\"10\" refY=\"3.5\" orient=\"auto\">\
         <polygon points=\"0 0, 10 3.5, 0 7\" fill=\"#c0392b\"/></marker></defs>\n",
    );
    out.push_str(
        "  <style>.ring{fill:none;stroke:#1f77b4;stroke-width:1}.spoke{fill:none;stroke:#7f7f7f;stroke-width:0.8}\
         .axis{stroke:#000;stroke-width:0.6}.dir{stroke:#c0392b;stroke-width:2}</style>\n",
    );
    out.push_str(&format!(
        "  <rect x=\"0\" y=\"0\" width=\"{CANVAS}\" height=\"{CANVAS}\" fill=\"#ffffff\"/>\n"
    ));
    let (ox, oy) = frame.px(Complex64::new(0.0, 0.0));
    let _ = writeln!(out, "  <line class=\"axis\" x1=\"0\" y1=\"{oy:.3}\" x2=\"{CANVAS}\" y2=\"{oy:.3}\"/>");
    let _ = writeln!(out, "  <line class=\"axis\" x1=\"{ox:.3}\" y1=\"0\" x2=\"{ox:.3}\" y2=\"{CANVAS}\"/>");
    for ring in &grid.rings {
        polyline(&mut out, &frame, ring, "ring");
    }
    for spoke in &grid.spokes {
        polyline(&mut out, &frame, spoke, "spoke");
    }
    let u = spec.direction.unit();
    let len = 0.15 * CANVAS;
    let (x0, y0) = (PAD + len / 2.0, CANVAS - PAD - len / 2.0);
    let _ = writeln!(
        out,
        "  <line class=\"dir\" x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\" marker-end=\"url(#head)\"/>",
        x0 - u.re * len / 2.0,
        y0 + u.im * len / 2.0,
        x0 + u.re * len / 2.0,
        y0 - u.im * len / 2.0
    );
    let _ = writeln!(
        out,
        "  <text x=\"{PAD}\" y=\"{:.3}\" font-size=\"12\" font-family=\"sans-serif\">direction gamma = {:.6}</text>",
        CANVAS - 8.0,
        spec.direction.gamma()
    );
    out.push_str("</svg>\n");
    Ok(out)
}
