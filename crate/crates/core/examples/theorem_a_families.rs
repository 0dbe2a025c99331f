//! The imaginary-direction criterion `Re[(1 - z^2) F'(z)] > 0` on every
//! prefunction family, with the closed form for `F_alpha` alongside.
//!
//! cargo run --example theorem_a_families

use hconv::families::{f_alpha_prefunction, f_theta_prefunction};
use hconv::verifiers::theorem_a_check;
use hconv::SamplingGrid;
use num_complex::Complex64;

fn closed_form(alpha: f64, z: Complex64) -> f64 {
    let m = z.norm_sqr();
    (1.0 - m) * (1.0 + m - 2.0 * alpha * z.re) / (1.0 - z * z).norm_sqr()
}

fn main() -> hconv::Result<()> {
    let n = 256;
    let grid = SamplingGrid::certification();
    for alpha in [-1.0, -0.5, 0.0, 0.5, 1.0] {
        let r = theorem_a_check(&f_alpha_prefunction(alpha, n)?, &grid)?;
        println!(
            "f_alpha({alpha:>4}) min {:.6} at {:.3}  slack {:.1e}  pass {}  (closed form at witness {:.6})",
            r.extremal_value,
            r.witness,
            r.tail_slack,
            r.pass,
            closed_form(alpha, r.witness)
        );
    }
    for theta in [0.5, std::f64::consts::FRAC_PI_2, 2.5] {
        let r = theorem_a_check(&f_theta_prefunction(theta, n)?, &grid)?;
        println!("f_theta({theta:.4}) min {:.6} pass {}", r.extremal_value, r.pass);
    }
    Ok(())
}
