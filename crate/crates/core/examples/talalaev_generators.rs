//! Talalaev's generators: coefficients of the column determinant of
//! ∂ − L(z), and their commutativity at several values of z.
//!
//! cargo run -p gaudin-core --example talalaev_generators

use gaudin_core::lax::gaudin_lax;
use gaudin_core::manin::{talalaev_commutation_check, talalaev_generators};
use gaudin_core::rational::q;
use gaudin_core::Signature;

fn main() -> gaudin_core::Result<()> {
    let sig = Signature::quantum(2, 2)?;
    let t = talalaev_generators(&gaudin_lax(sig, &[q(0), q(1)])?)?;
    for (i, qh) in t.qh().iter().enumerate() {
        println!("QH_{i}(z) = {qh}");
    }
    for (name, g) in t.evaluate(&q(5))? {
        println!("{name} = {g}");
    }
    println!("{}", talalaev_commutation_check(&t, &[q(5), q(7), q(11)])?);
    Ok(())
}
