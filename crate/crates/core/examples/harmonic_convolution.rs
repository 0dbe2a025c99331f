//! Harmonic convolution `f * phi = h * phi + conj(g * phi)` with the catalog
//! convolvers, and the linearity identity for the prefunction.
//!
//! cargo run --example harmonic_convolution

use hconv::families::{candidate_convolvers, f_alpha_prefunction, Dilatation};
use hconv::{shear_construct, Direction};
use num_complex::Complex64;

fn main() -> hconv::Result<()> {
    let n = 256;
    let d = Direction::IMAGINARY_AXIS;
    let omega = Dilatation::monomial(1, Complex64::new(1.0, 0.0))?.series(n);
    let f = shear_construct(&f_alpha_prefunction(0.3, n)?, &omega, d)?;
    for phi in candidate_convolvers(-0.4, n)? {
        let conv = f.harmonic_convolve(&phi.series)?;
        let lhs = conv.analytic_prefunction(d);
        let rhs = f.analytic_prefunction(d).hadamard(&phi.series);
        println!(
            "{:<16} {:<10} a2 = {:>8.4}  linearity error {:.1e}",
            phi.name,
            phi.status.to_string(),
            conv.h().coeff(2).re,
            lhs.max_abs_diff(&rhs)
        );
    }
    Ok(())
}
