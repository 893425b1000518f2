//! Manin matrices over differential operators: the predicate on ∂ − L(z),
//! a non-Manin witness, column determinants and Newton identities.
//!
//! cargo run -p gaudin-core --example manin_matrices

use gaudin_core::lax::{default_poles, gaudin_lax};
use gaudin_core::manin::{col_det, column_order_invariance, is_manin, newton_check, ManinCandidate};
use gaudin_core::ratfun::{DiffOp, RatFun};
use gaudin_core::Signature;

fn main() -> gaudin_core::Result<()> {
    let sig = Signature::quantum(2, 2)?;
    let m = ManinCandidate::d_minus_lax(&gaudin_lax(sig, &default_poles(2))?);
    println!("d - L(z) is Manin: {}", is_manin(&m)?.manin);
    println!("{}", column_order_invariance(&m)?);
    println!("{}", newton_check(&m)?);

    let weyl = Signature::quantum(1, 1)?;
    let z = DiffOp::from_ratfun(weyl, RatFun::z());
    let not_manin = ManinCandidate::new(weyl, 2, vec![z.clone(), DiffOp::d(weyl), DiffOp::one(weyl), z])?;
    let verdict = is_manin(&not_manin)?;
    println!("[[z, d], [1, z]] is Manin: {} (witness {:?})", verdict.manin, verdict.witness);
    println!("its column determinant: {}", col_det(&not_manin)?);
    Ok(())
}
