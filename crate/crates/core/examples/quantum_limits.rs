//! Quantum limit algebras: the diagonal site map behind a collision, its
//! homomorphism check, and the commuting generators of a glued family.
//!
//! cargo run -p gaudin-core --example quantum_limits

use gaudin_core::gluing::{homomorphism_check, iterate_pattern, limit_gaudin_algebra, GluingPattern, SiteMap};
use gaudin_core::manin::commutation_matrix_labelled;
use gaudin_core::rational::q;
use gaudin_core::Signature;

fn main() -> gaudin_core::Result<()> {
    let diagonal = SiteMap::diagonal(Signature::quantum(2, 1)?, Signature::quantum(2, 2)?)?;
    println!("{}", homomorphism_check(&diagonal, 5, 3)?);

    let sig = Signature::quantum(2, 3)?;
    let pattern = GluingPattern::parse("[1,[2,3]@1]", 3)?;
    let points = [q(5), q(7)];
    let mut gens = limit_gaudin_algebra(sig, &pattern, &points)?;
    gens.extend(iterate_pattern(sig, &pattern)?.quantum_generators(&points)?);
    println!("{} generators, first {} and last {}", gens.len(), gens[0].0, gens[gens.len() - 1].0);
    println!("{}", commutation_matrix_labelled(&gens)?.report);
    Ok(())
}
