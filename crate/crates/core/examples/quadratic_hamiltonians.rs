//! Quadratic Gaudin Hamiltonians on three sites: they commute pairwise in
//! both modes and sum to zero.
//!
//! cargo run -p gaudin-core --example quadratic_hamiltonians

use gaudin_core::lax::{physical_hamiltonian, quadratic_hamiltonians};
use gaudin_core::manin::commutation_matrix;
use gaudin_core::rational::q;
use gaudin_core::{NCPoly, Signature};

fn main() -> gaudin_core::Result<()> {
    let poles = [q(0), q(1), q(2)];
    for sig in [Signature::quantum(2, 3)?, Signature::classical(2, 3)?] {
        let h = quadratic_hamiltonians(sig, &poles)?;
        for (i, hi) in h.iter().enumerate() {
            println!("H_{} = {hi}", i + 1);
        }
        let sum = h.iter().fold(NCPoly::zero(sig), |acc, x| &acc + x);
        println!("sum = {sum}");
        println!("{}\n", commutation_matrix(&h)?);
    }
    println!("H_G on gl(2)^3 = {}", physical_hamiltonian(Signature::classical(2, 3)?)?);
    Ok(())
}
