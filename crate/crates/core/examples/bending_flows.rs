//! Bending-flow Lax matrices, their rational form as the left-comb gluing
//! limit, and the quantum bending generators.
//!
//! cargo run -p gaudin-core --example bending_flows

use gaudin_core::gluing::{bending_classical_match, bending_generator_list, iterate_pattern, quantum_bending_generators, GluingPattern};
use gaudin_core::lax::{bending_lax, bending_lax_rational};
use gaudin_core::manin::commutation_matrix_labelled;
use gaudin_core::rational::q;
use gaudin_core::Signature;

fn main() -> gaudin_core::Result<()> {
    let sig = Signature::classical(2, 3)?;
    for k in 1..3 {
        println!("{}", bending_lax(sig, k)?);
    }
    let comb = iterate_pattern(sig, &GluingPattern::left_comb(3, &q(0), &q(1))?)?;
    for (k, l) in comb.matrices.iter().enumerate() {
        println!("left comb matrix {} equals the rational bending matrix: {}", k + 1, l == &bending_lax_rational(sig, k + 1, &q(0), &q(1))?);
    }

    let quantum = Signature::quantum(2, 3)?;
    println!("{}", bending_classical_match(quantum, &q(0), &q(1))?);
    let gens = bending_generator_list(&quantum_bending_generators(quantum, &q(0), &q(1))?);
    println!("{}", commutation_matrix_labelled(&gens)?.report);
    Ok(())
}
