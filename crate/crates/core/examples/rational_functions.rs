//! Rational functions of z with exact partial fractions, and differential
//! operators in ∂_z with their Weyl-algebra product.
//!
//! cargo run -p gaudin-core --example rational_functions

use gaudin_core::ratfun::{residue, DiffOp, RatFun};
use gaudin_core::rational::q;
use gaudin_core::Signature;

fn main() -> gaudin_core::Result<()> {
    let f = &RatFun::pole(&q(0), 1) + &RatFun::pole(&q(1), 2);
    println!("f      = {f}");
    println!("f'     = {}", f.derivative());
    println!("Res_1 (z-1) f = {}", residue(&f, &q(1), 1));

    let sig = Signature::quantum(1, 1)?;
    let d = DiffOp::d(sig);
    let z = DiffOp::from_ratfun(sig, RatFun::z());
    println!("d * z - z * d = {}", d.mul(&z)?.sub(&z.mul(&d)?)?);
    Ok(())
}
