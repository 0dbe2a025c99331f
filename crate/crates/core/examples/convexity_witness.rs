//! Convexity of `phi_beta`: `Re[1 + z phi''/phi']` goes negative for
//! `|beta| < 1`, so these maps are not direction-convexity preserving.
//!
//! cargo run --example convexity_witness

use hconv::families::phi_beta;
use hconv::verifiers::{convexity_check, convexity_series};
use hconv::{DiskPoint, SamplingGrid};
use num_complex::Complex64;

fn main() -> hconv::Result<()> {
    let n = 512;
    let grid = SamplingGrid::certification();
    for beta in [-1.0, -0.5, 0.0, 0.5, 1.0] {
        let r = convexity_check(&phi_beta(beta, n)?, &grid)?;
        println!(
            "phi_beta({beta:>4}): min {:>10.4} at {:.3}, convex {}",
            r.extremal_value, r.witness, r.pass
        );
    }
    let z = Complex64::new(0.0, 0.8);
    let s = convexity_series(&phi_beta(0.0, n)?)?;
    let closed = 1.0 + 2.0 * z * z / (1.0 + z * z) + 4.0 * z * z / (1.0 - z * z);
    println!(
        "beta = 0 at 0.8i: series {:.6}, closed form {:.6}",
        s.evaluate(DiskPoint::new(z)?).re,
        closed.re
    );
    Ok(())
}
