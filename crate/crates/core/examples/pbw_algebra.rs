//! PBW normal forms in U(gl(2)) ⊗ U(gl(2)) and the matching Lie–Poisson
//! bracket on the symmetric algebra.
//!
//! cargo run -p gaudin-core --example pbw_algebra

use gaudin_core::ncalgebra::{commutator, poisson_bracket, symbol};
use gaudin_core::{NCPoly, Signature};

fn main() -> gaudin_core::Result<()> {
    let sig = Signature::quantum(2, 2)?;
    let e = |i, a, b| NCPoly::generator(sig, i, a, b);
    let (e12, e21) = (e(1, 1, 2)?, e(1, 2, 1)?);

    println!("e21 * e12       = {}", &e21 * &e12);
    println!("[e12, e21]      = {}", commutator(&e12, &e21)?);
    println!("[e12@1, e21@2]  = {}", commutator(&e12, &e(2, 2, 1)?)?);

    let casimir = &(&e(1, 1, 1)? * &e(1, 2, 2)?) - &(&e12 * &e21);
    println!("symbol of e11 e22 - e12 e21 = {}", symbol(&casimir, 2));

    let csig = Signature::classical(2, 1)?;
    let x = |a, b| NCPoly::generator(csig, 1, a, b);
    println!("{{x12, x21}}     = {}", poisson_bracket(&x(1, 2)?, &x(2, 1)?)?);
    Ok(())
}
