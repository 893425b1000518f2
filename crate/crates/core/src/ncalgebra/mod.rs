//! Exact kernel for `U(gl(r))^{⊗N}` (quantum mode) and `S(gl(r))^{⊗N}`
//! (classical mode).
//!
//! Elements are sparse linear combinations of PBW-ordered monomials in the
//! matrix-unit generators `e[a,b]@i`. In quantum mode products are brought
//! to normal form by straightening with
//! `[e_ab^{(i)}, e_cd^{(j)}] = δ_ij (δ_bc e_ad^{(i)} − δ_da e_cb^{(i)})`;
//! in classical mode the product is the commutative one and the bracket is
//! the product Lie–Poisson bracket with the same structure constants.

mod bracket;
mod monomial;
mod poly;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub use bracket::{
    classical_limit, commutator, diagonal_generators, lie_poisson_generators, multiply,
    poisson_bracket, symbol,
};
pub use monomial::{clear_straightening_memo, Gen, Monomial};
pub use poly::{Coeff, NCPoly, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Mode {
    Quantum,
    Classical,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Quantum => "quantum",
            Mode::Classical => "classical",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Rank `r` of `gl(r)`, number of tensor sites `N`, and the mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Signature {
    rank: usize,
    sites: usize,
    mode: Mode,
}

impl Signature {
    pub fn new(rank: usize, sites: usize, mode: Mode) -> Result<Self> {
        if rank == 0 || sites == 0 || rank > u8::MAX as usize || sites > u16::MAX as usize {
            return Err(Error::InvalidSignature { rank, sites });
        }
        Ok(Self { rank, sites, mode })
    }

    pub fn quantum(rank: usize, sites: usize) -> Result<Self> {
        Self::new(rank, sites, Mode::Quantum)
    }

    pub fn classical(rank: usize, sites: usize) -> Result<Self> {
        Self::new(rank, sites, Mode::Classical)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn with_mode(self, mode: Mode) -> Self {
        Self { mode, ..self }
    }

    pub fn with_sites(self, sites: usize) -> Result<Self> {
        Self::new(self.rank, sites, self.mode)
    }

    pub fn is_quantum(&self) -> bool {
        self.mode == Mode::Quantum
    }

    pub(crate) fn require(&self, mode: Mode, op: &'static str) -> Result<()> {
        if self.mode == mode {
            Ok(())
        } else {
            Err(Error::WrongMode { op, mode: self.mode.name() })
        }
    }

    pub(crate) fn check_same(&self, other: &Signature) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SignatureMismatch { left: *self, right: *other })
        }
    }

    /// All generators `e[a,b]@i` in PBW order.
    pub fn generators(&self) -> Vec<Gen> {
        let mut out = Vec::with_capacity(self.sites * self.rank * self.rank);
        for site in 1..=self.sites {
            for row in 1..=self.rank {
                for col in 1..=self.rank {
                    out.push(Gen::new(site, row, col));
                }
            }
        }
        out
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gl({})^{} ({})", self.rank, self.sites, self.mode)
    }
}
