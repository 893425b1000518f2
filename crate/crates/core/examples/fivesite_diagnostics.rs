//! The five-site operator for a three-point collision and the diagnostics
//! run against it. For gl(1) every check passes; for gl(2) the reports
//! carry explicit witnesses.
//!
//! cargo run -p gaudin-core --example fivesite_diagnostics

use gaudin_core::poissonstruct::{fivesite_diagnostics, fivesite_operator};
use gaudin_core::rational::q;
use gaudin_core::Signature;

fn main() -> gaudin_core::Result<()> {
    let z: Vec<_> = [0, 1, 3, 7, 12].into_iter().map(q).collect();
    println!("{}", fivesite_operator(&z)?);
    for r in 1..=2 {
        for report in fivesite_diagnostics(Signature::classical(r, 5)?, &z)? {
            println!("gl({r}) {}: {}", report.check, if report.pass { "PASS" } else { "FAIL" });
            if let Some(w) = report.witnesses.first() {
                println!("    {w}");
            }
        }
    }
    Ok(())
}
