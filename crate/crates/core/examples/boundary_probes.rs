//! Heuristic boundary probes: ring minima of `Re rho` approaching the circle,
//! the radial trend of `Re F` toward `+-1`, and turning points of a boundary
//! curve image.
//!
//! cargo run --example boundary_probes

use std::f64::consts::PI;

use hconv::families::f_alpha_prefunction;
use hconv::verifiers::{boundary_decay_check, direction_convexity_boundary_check, radial_extremes_check};
use hconv::{Direction, SamplingGrid};

fn main() -> hconv::Result<()> {
    let radii = vec![0.5, 0.9, 0.99, 0.999];
    let grid = SamplingGrid::with_cap(radii, 512, 1e-9, 0.9995)?;
    for theta in [PI / 4.0, PI / 2.0, 3.0 * PI / 4.0] {
        let r = boundary_decay_check(theta, &grid)?;
        println!("theta {theta:.4}: ring minima {}", r.params["ring_minima"]);
    }
    let f = f_alpha_prefunction(0.5, 256)?;
    let r = radial_extremes_check(&f, &SamplingGrid::certification())?;
    println!("radial extremes for f_alpha(0.5): worst excess {:.2e}, pass {}", r.extremal_value, r.pass);
    let b = direction_convexity_boundary_check(&f, Direction::IMAGINARY_AXIS, 0.9, 2048)?;
    println!("turning points of Re f on |z| = 0.9: {}", b.params["sign_changes"]);
    Ok(())
}
