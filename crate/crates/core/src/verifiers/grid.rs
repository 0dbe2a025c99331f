use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{DiskPoint, TruncatedSeries, DEFAULT_R_CAP};

/// Default certification margin for strict inequalities.
pub const DEFAULT_MARGIN: f64 = 1e-9;
/// Default number of angles per ring.
pub const DEFAULT_ANGLES: usize = 512;
/// Fewest angles per ring accepted for a certification grid.
pub const MIN_CERT_ANGLES: usize = 256;

/// A radii x angles lattice in the open disk.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplingGrid {
    radii: Vec<f64>,
    angles_per_ring: usize,
    margin: f64,
    cap: f64,
}

/// The JSON form of a grid inside a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSummary {
    pub radii: Vec<f64>,
    pub angles: usize,
}

impl SamplingGrid {
    pub fn new(radii: Vec<f64>, angles_per_ring: usize, margin: f64) -> Result<Self> {
        Self::with_cap(radii, angles_per_ring, margin, DEFAULT_R_CAP)
    }

    /// A grid whose radii may reach `cap < 1`; series evaluation still
    /// enforces its own cap, so wider grids only suit closed-form evaluators.
    pub fn with_cap(radii: Vec<f64>, angles_per_ring: usize, margin: f64, cap: f64) -> Result<Self> {
        if !(cap > 0.0 && cap < 1.0) {
            return Err(Error::InvalidGrid(format!("cap {cap} outside (0, 1)")));
        }
        if radii.is_empty() {
            return Err(Error::InvalidGrid("no radii".into()));
        }
        if radii.iter().any(|&r| !(r > 0.0 && r <= cap)) {
            return Err(Error::InvalidGrid(format!("radii must lie in (0, {cap}]")));
        }
        if radii.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidGrid("radii must be strictly increasing".into()));
        }
        if angles_per_ring < MIN_CERT_ANGLES {
            return Err(Error::InvalidGrid(format!(
                "{angles_per_ring} angles per ring; at least {MIN_CERT_ANGLES} required"
            )));
        }
        if !(margin >= 0.0 && margin.is_finite()) {
            return Err(Error::InvalidGrid(format!("margin {margin} must be finite and >= 0")));
        }
        Ok(Self {
            radii,
            angles_per_ring,
            margin,
            cap,
        })
    }

    /// Radii `0.1, 0.2, .., 0.9, 0.95` with 512 angles and margin `1e-9`.
    pub fn certification() -> Self {
        let mut radii: Vec<f64> = (1..=9).map(|k| k as f64 / 10.0).collect();
        radii.push(DEFAULT_R_CAP);
        Self::new(radii, DEFAULT_ANGLES, DEFAULT_MARGIN).expect("default grid is valid")
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn angles_per_ring(&self) -> usize {
        self.angles_per_ring
    }

    pub fn margin(&self) -> f64 {
        self.margin
    }

    pub fn cap(&self) -> f64 {
        self.cap
    }

    pub fn outer_radius(&self) -> f64 {
        *self.radii.last().expect("non-empty")
    }

    pub fn angle(&self, k: usize) -> f64 {
        2.0 * PI * k as f64 / self.angles_per_ring as f64
    }

    /// Points on the ring of radius `r`, angle-major order starting at angle 0.
    pub fn ring(&self, r: f64) -> impl Iterator<Item = DiskPoint> + '_ {
        (0..self.angles_per_ring).map(move |k| {
            DiskPoint::with_cap(Complex64::from_polar(r, self.angle(k)), self.cap)
                .expect("grid radii are within the cap")
        })
    }

    /// All points, ring by ring from the innermost outwards.
    pub fn points(&self) -> impl Iterator<Item = DiskPoint> + '_ {
        self.radii.iter().flat_map(move |&r| self.ring(r))
    }

    pub fn summary(&self) -> GridSummary {
        GridSummary {
            radii: self.radii.clone(),
            angles: self.angles_per_ring,
        }
    }

    pub fn len(&self) -> usize {
        self.radii.len() * self.angles_per_ring
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Maximum `tail_bound` of `s` over the grid radii; infinite when the tail is
/// not computable at some radius.
pub fn tail_slack(s: &TruncatedSeries, radii: &[f64]) -> f64 {
    radii
        .iter()
        .map(|&r| s.tail_bound(r).unwrap_or(f64::INFINITY))
        .fold(0.0, f64::max)
}

/// First point (in grid order) minimizing `f`; NaN values never win.
pub(crate) fn argmin<I, F>(points: I, mut f: F) -> Result<(f64, DiskPoint)>
where
    I: IntoIterator<Item = DiskPoint>,
    F: FnMut(DiskPoint) -> Result<f64>,
{
    let mut best: Option<(f64, DiskPoint)> = None;
    for p in points {
        let v = f(p)?;
        let better = match best {
            None => true,
            Some((b, _)) => v < b || (b.is_nan() && !v.is_nan()),
        };
        if better {
            best = Some((v, p));
        }
    }
    best.ok_or_else(|| Error::InvalidGrid("empty point set".into()))
}

pub(crate) fn argmax<I, F>(points: I, mut f: F) -> Result<(f64, DiskPoint)>
where
    I: IntoIterator<Item = DiskPoint>,
    F: FnMut(DiskPoint) -> Result<f64>,
{
    argmin(points, |p| f(p).map(|v| -v)).map(|(v, p)| (-v, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(SamplingGrid::new(vec![0.5, 0.9], 256, 1e-9).is_ok());
        assert!(SamplingGrid::new(vec![], 512, 1e-9).is_err());
        assert!(SamplingGrid::new(vec![0.5, 0.5], 512, 1e-9).is_err());
        assert!(SamplingGrid::new(vec![0.96], 512, 1e-9).is_err());
        assert!(SamplingGrid::new(vec![0.0, 0.5], 512, 1e-9).is_err());
        assert!(SamplingGrid::new(vec![0.5], 128, 1e-9).is_err());
        assert!(SamplingGrid::with_cap(vec![0.5, 0.999], 512, 0.0, 0.9995).is_ok());
        assert!(SamplingGrid::with_cap(vec![0.5], 512, 0.0, 1.0).is_err());
    }

    #[test]
    fn point_order_and_count() {
        let g = SamplingGrid::new(vec![0.3, 0.6], 256, 1e-9).unwrap();
        let pts: Vec<_> = g.points().collect();
        assert_eq!(pts.len(), g.len());
        assert_eq!(pts[0].z(), Complex64::new(0.3, 0.0));
        assert_eq!(pts[256].z(), Complex64::new(0.6, 0.0));
        // angle pi is on the lattice for even angle counts
        assert!((pts[128].z() - Complex64::new(-0.3, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn argmin_prefers_first_on_ties() {
        let g = SamplingGrid::new(vec![0.5], 256, 0.0).unwrap();
        let (v, p) = argmin(g.points(), |_| Ok(1.0)).unwrap();
        assert_eq!(v, 1.0);
        assert_eq!(p.z(), Complex64::new(0.5, 0.0));
    }
}
