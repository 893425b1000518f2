//! Operator-presented Poisson structures: the limit bracket, its Jacobi
//! identity, and its compatibility with the standard bracket.
//!
//! cargo run -p gaudin-core --example poisson_structures

use gaudin_core::poissonstruct::{
    bracket_eval, compatibility_check, jacobi_check, jacobi_exhaustive, operator_identity, BracketSpec, PoissonOperator,
};
use gaudin_core::{NCPoly, Signature};

fn main() -> gaudin_core::Result<()> {
    let limit = PoissonOperator::limit_rijk(4);
    println!("{limit}");
    println!("{}", operator_identity(&limit, &PoissonOperator::explicit_limit_four_site()));

    let sig = Signature::classical(2, 4)?;
    let x = |i, a, b| NCPoly::generator(sig, i, a, b);
    println!("{{x12@2, x21@3}}_limit = {}", bracket_eval(&BracketSpec::LimitRijk, &x(2, 1, 2)?, &x(3, 2, 1)?, sig)?);

    println!("{}", jacobi_exhaustive(&BracketSpec::LimitRijk, Signature::classical(2, 3)?)?);
    println!("{}", jacobi_check(&BracketSpec::LimitRijk, sig, 5, 11)?);
    println!("{}", compatibility_check(&BracketSpec::Standard, &BracketSpec::LimitRijk, sig, 5, 13)?);
    Ok(())
}
