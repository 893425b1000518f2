//! Collapsing poles 3, 4, 5 onto z = 3: the glued Lax matrices, their
//! invariants, and the completeness and H_G membership checks.
//!
//! cargo run -p gaudin-core --example gluing_patterns

use gaudin_core::gluing::{
    family_commutation, hg_membership_check, iterate_pattern, rank_completeness_check, GluingPattern,
};
use gaudin_core::lax::{gaudin_lax, spectral_invariants};
use gaudin_core::Signature;

fn main() -> gaudin_core::Result<()> {
    let sig = Signature::classical(2, 5)?;
    let pattern = GluingPattern::parse("[1,2,[3,4,5]@3]", 5)?;
    let family = iterate_pattern(sig, &pattern)?;
    for l in &family.matrices {
        println!("{l}");
    }
    let invariants = family.classical_invariants(2)?;
    println!("{} invariants", invariants.len());
    println!("{}", family_commutation(&invariants)?.report);
    let generic = spectral_invariants(&gaudin_lax(sig, &family.poles())?, 2)?;
    println!("{}", rank_completeness_check(sig, &invariants, &generic, 3, 7)?);
    println!("{}", hg_membership_check(sig, &invariants)?);
    Ok(())
}
