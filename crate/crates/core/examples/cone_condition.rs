//! The cone condition `Re[(1 - eta z)(1 - xi z)(h' - e^{2i gamma} g')] > 0`
//! for each family under its own `(eta, xi, gamma)`.
//!
//! cargo run --example cone_condition

use hconv::families::{Dilatation, Family};
use hconv::verifiers::eq2_cone_check;
use hconv::{shear_construct, SamplingGrid};
use num_complex::Complex64;

fn main() -> hconv::Result<()> {
    let n = 512;
    let grid = SamplingGrid::certification();
    let omega = Dilatation::monomial(1, Complex64::new(1.0, 0.0))?.series(n);
    for family in [
        Family::FAlpha(0.5),
        Family::FTheta(1.0),
        Family::KoebeShear,
        Family::Slanted(std::f64::consts::FRAC_PI_4),
    ] {
        let cp = family.cone_params();
        let f = shear_construct(&family.prefunction(n)?, &omega, cp.gamma())?;
        let r = eq2_cone_check(&f, &cp, &grid)?;
        println!(
            "{:<22} eta {:.3} xi {:.3} gamma {:.4}: min {:.9} at {:.3}, pass {}",
            family.to_string(),
            cp.eta(),
            cp.xi(),
            cp.gamma().gamma(),
            r.extremal_value,
            r.witness,
            r.pass
        );
    }
    let r = 0.95;
    println!("koebe closed-form minimum (1-r)/(1+r) at r = {r}: {:.9}", (1.0 - r) / (1.0 + r));
    Ok(())
}
