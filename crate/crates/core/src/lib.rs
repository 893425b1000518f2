//! Exact computer algebra for Gaudin models and their pole-gluing limits.
//!
//! The crate builds classical and quantum Gaudin Lax matrices over
//! `gl(r)^{⊗N}`, the limit Lax matrices obtained when poles collide
//! according to a gluing tree (including the bending-flow comb), and the
//! commutative families they generate. Every claim is checked with exact
//! rational arithmetic: "commutes" always means an exact zero.
//!
//! Layout:
//! - [`ncalgebra`]: PBW normal forms, commutators, Lie–Poisson brackets.
//! - [`ratfun`]: rational functions of `z` and differential operators in `∂_z`.
//! - [`lax`]: Lax matrix constructors and spectral invariants.
//! - [`gluing`]: gluing patterns, limit families, quantum limit algebras.
//! - [`poissonstruct`]: operator-presented Poisson structures and their checks.
//! - [`manin`]: Manin matrices, column determinants, Talalaev generators.

pub mod error;
pub mod gluing;
pub mod lax;
pub mod linalg;
pub mod manin;
pub mod ncalgebra;
pub mod poissonstruct;
pub mod ratfun;
pub mod rational;
pub mod report;
pub mod sampling;

pub use error::{Error, PatternError, Result};
pub use ncalgebra::{Gen, Mode, NCPoly, Signature};
pub use rational::Q;
pub use report::Report;
