//! The Gaudin Lax matrix and the spectral invariants read off Tr L(z)^m at
//! each pole, with their provenance.
//!
//! cargo run -p gaudin-core --example lax_invariants

use gaudin_core::gluing::family_commutation;
use gaudin_core::lax::{default_poles, gaudin_lax, spectral_invariants};
use gaudin_core::Signature;

fn main() -> gaudin_core::Result<()> {
    let sig = Signature::classical(2, 2)?;
    let l = gaudin_lax(sig, &default_poles(2))?;
    println!("{l}");
    let family = spectral_invariants(&l, 2)?;
    for m in &family.members {
        println!("{}\n    = {}", m.provenance, m.poly);
    }
    println!("{}", family_commutation(&family)?.report);
    Ok(())
}
