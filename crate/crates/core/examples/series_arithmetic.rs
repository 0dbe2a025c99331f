//! Truncated series arithmetic: Cauchy product, reciprocal, Hadamard
//! product, evaluation with a tail bound.
//!
//! cargo run --example series_arithmetic

use hconv::{DiskPoint, TruncatedSeries};
use num_complex::Complex64;

fn main() -> hconv::Result<()> {
    let n = 32;
    let one_minus_z = TruncatedSeries::polynomial(&[Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)], n);
    let geometric = one_minus_z.reciprocal()?;
    println!("1/(1-z) first coefficients: {:?}", &geometric.coeffs()[..5]);

    let product = geometric.multiply(&one_minus_z);
    println!("(1/(1-z))(1-z) - 1, max coefficient error: {:e}", product.max_abs_diff(&TruncatedSeries::one(n)));

    let koebe = TruncatedSeries::from_fn(n, |k| Complex64::new(k as f64, 0.0));
    let ell = TruncatedSeries::hadamard_identity(n);
    println!("koebe * (z/(1-z)) == koebe: {}", koebe.hadamard(&ell) == koebe);

    let p = DiskPoint::new(Complex64::new(0.5, 0.0))?;
    let long = TruncatedSeries::from_fn(256, |k| Complex64::new(k as f64, 0.0));
    println!("z/(1-z)^2 at 0.5: {} (closed form 2)", long.evaluate(p));
    println!("tail bound at r = 0.5: {:e}", long.tail_bound(0.5)?);
    Ok(())
}
