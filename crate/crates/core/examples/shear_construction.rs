//! Shear construction: recover `(h, g)` from a prefunction `h - e^{2i gamma} g`
//! and a dilatation, then check the round trip.
//!
//! cargo run --example shear_construction

use hconv::families::{f_alpha_prefunction, Dilatation};
use hconv::{shear_construct, Direction};
use num_complex::Complex64;

fn main() -> hconv::Result<()> {
    let n = 256;
    let prefunction = f_alpha_prefunction(0.5, n)?;
    let d = Direction::IMAGINARY_AXIS;
    for omega in [
        Dilatation::Zero,
        Dilatation::monomial(1, Complex64::new(1.0, 0.0))?,
        Dilatation::mobius(Complex64::new(0.3, 0.0), Complex64::new(1.0, 0.0))?,
    ] {
        let w = omega.series(n);
        let f = shear_construct(&prefunction, &w, d)?;
        let back = f.analytic_prefunction(d).max_abs_diff(&prefunction);
        let dil = f.dilatation()?.max_abs_diff(&w);
        println!(
            "omega = {:<14} h1 = {:.4}  g1 = {:.4}  prefunction error {back:.1e}  dilatation error {dil:.1e}",
            omega.to_string(),
            f.h().coeff(1),
            f.g().coeff(1)
        );
    }
    Ok(())
}
