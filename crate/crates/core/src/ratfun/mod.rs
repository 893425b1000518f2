//! Rational functions of the spectral parameter and differential operators
//! in `∂_z` with Lax-entry coefficients.

mod diffop;
#[allow(clippy::module_inception)]
mod ratfun;
mod upoly;

pub use diffop::{
    diffop_multiply, entry_polynomial_coeff, entry_polynomial_degree, entry_pole_order, entry_residue,
    eval_entry, lift, nth_z_derivative, z_derivative, DiffOp, DiffOpEntry, LaxEntry,
};
pub use ratfun::{ratfun_arith, residue, ArithOp, RatFun};
pub use upoly::UPoly;

/// `eval_z` for a single Lax entry.
pub use diffop::eval_entry as eval_z;
