//! Parses pipeline expressions and evaluates them, the same path the
//! `verify` subcommand uses.
//!
//! cargo run --example expression_verify

use hconv::app::expr::parse;
use hconv::verifiers::{convexity_check, theorem_a_check};
use hconv::SamplingGrid;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let grid = SamplingGrid::certification();
    for src in [
        "f_alpha(0)",
        "convolve(shear(f_alpha(0.5), omega=z, gamma=pi/2), phi_beta(-0.4))",
        "convolve(f_theta(pi/3), phi_beta(0.5))",
    ] {
        let expr = parse(src)?;
        let value = expr.eval(256)?;
        let r = theorem_a_check(&value.to_series(None), &grid);
        match r {
            Ok(r) => println!("{expr}: theorem A min {:.6}, pass {}", r.extremal_value, r.pass),
            Err(e) => println!("{expr}: {e}"),
        }
    }
    let phi = parse("phi_beta(1.0)")?.eval(256)?.to_series(None);
    println!("phi_beta(1.0) convex: {}", convexity_check(&phi, &grid)?.pass);
    match parse("shear(f_alpha(0.5), omega=z, gamma=)") {
        Err(e) => println!("parse error: {e}"),
        Ok(e) => println!("unexpectedly parsed {e}"),
    }
    Ok(())
}
