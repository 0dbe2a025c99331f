//! Typical realness of `z ((h_alpha + g_alpha) * phi_beta)'` across a small
//! parameter sweep, plus the local-univalence proviso of the convolved map.
//!
//! cargo run --example typically_real

use hconv::families::{f_alpha_prefunction, phi_beta, Dilatation};
use hconv::verifiers::{local_univalence_check, theorem_a_check, typically_real_check};
use hconv::{shear_construct, Direction, SamplingGrid};
use num_complex::Complex64;

fn main() -> hconv::Result<()> {
    let n = 256;
    let grid = SamplingGrid::certification();
    let d = Direction::IMAGINARY_AXIS;
    let omega = Dilatation::monomial(1, Complex64::new(1.0, 0.0))?.series(n);
    for (alpha, beta) in [(0.3, -0.4), (-1.0, 1.0), (0.5, 0.0), (1.0, -0.5)] {
        let phi = phi_beta(beta, n)?;
        let f = shear_construct(&f_alpha_prefunction(alpha, n)?, &omega, d)?;
        let conv = f.harmonic_convolve(&phi)?;
        let big_g = conv.analytic_prefunction(d);
        let tr = typically_real_check(&big_g.differentiate().times_z(), &grid)?;
        let ta = theorem_a_check(&big_g, &grid)?;
        let lu = local_univalence_check(&conv, &grid)?;
        println!(
            "alpha {alpha:>4} beta {beta:>4}: typically real {} (min Re P {:.4}), theorem A {}, max |omega~| {:.4}",
            tr.pass, tr.extremal_value, ta.pass, lu.extremal_value
        );
    }
    Ok(())
}
