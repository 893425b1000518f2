use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::RatFun;
use crate::error::Result;
use crate::ncalgebra::{NCPoly, Poly, Signature};
use crate::rational::{binomial, Q};

/// One Lax-matrix entry: algebra monomials with rational-function
/// coefficients in `z`.
pub type LaxEntry = Poly<RatFun>;

/// `∂_z` applied coefficient-wise (generators do not depend on `z`).
pub fn z_derivative(e: &LaxEntry) -> LaxEntry {
    e.map_coeffs(RatFun::derivative)
}

pub fn nth_z_derivative(e: &LaxEntry, n: u32) -> LaxEntry {
    e.map_coeffs(|c| c.nth_derivative(n))
}

/// Substitutes `z = point` in every coefficient.
pub fn eval_entry(e: &LaxEntry, point: &Q) -> Result<NCPoly> {
    let mut out = NCPoly::zero(e.sig());
    for (m, c) in e.terms() {
        let v = c.eval(point)?;
        out.add_term(m.clone(), v);
    }
    Ok(out)
}

/// `Res_{z=pole} (z − pole)^order` applied coefficient-wise.
pub fn entry_residue(e: &LaxEntry, pole: &Q, order: u32) -> NCPoly {
    NCPoly::from_terms(e.sig(), e.terms().iter().map(|(m, c)| (m.clone(), c.residue(pole, order))))
}

/// Coefficient of `z^k` in the polynomial part, coefficient-wise.
pub fn entry_polynomial_coeff(e: &LaxEntry, k: usize) -> NCPoly {
    NCPoly::from_terms(
        e.sig(),
        e.terms().iter().map(|(m, c)| (m.clone(), c.polynomial_part().coeffs().get(k).cloned().unwrap_or_else(Q::zero))),
    )
}

/// Largest pole order at `p` over all coefficients.
pub fn entry_pole_order(e: &LaxEntry, p: &Q) -> usize {
    e.terms().values().map(|c| c.pole_order(p)).max().unwrap_or(0)
}

/// Largest degree of a coefficient's polynomial part.
pub fn entry_polynomial_degree(e: &LaxEntry) -> Option<usize> {
    e.terms().values().filter_map(|c| c.polynomial_part().degree()).max()
}

pub fn lift(p: &NCPoly) -> LaxEntry {
    p.map_coeffs(|c| RatFun::constant(c.clone()))
}

/// Differential operator `Σ_k A_k(z) ∂_z^k` with Lax-entry coefficients.
/// Products obey `∂_z · f = f · ∂_z + f'`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffOp {
    sig: Signature,
    coeffs: BTreeMap<u32, LaxEntry>,
}

pub type DiffOpEntry = DiffOp;

impl DiffOp {
    pub fn zero(sig: Signature) -> Self {
        Self { sig, coeffs: BTreeMap::new() }
    }

    pub fn one(sig: Signature) -> Self {
        Self::from_entry(LaxEntry::one(sig))
    }

    /// `∂_z`.
    pub fn d(sig: Signature) -> Self {
        Self::monomial(LaxEntry::one(sig), 1)
    }

    pub fn from_entry(e: LaxEntry) -> Self {
        Self::monomial(e, 0)
    }

    pub fn from_ratfun(sig: Signature, f: RatFun) -> Self {
        Self::from_entry(LaxEntry::constant(sig, f))
    }

    pub fn monomial(e: LaxEntry, power: u32) -> Self {
        let sig = e.sig();
        let mut coeffs = BTreeMap::new();
        if !e.is_zero() {
            coeffs.insert(power, e);
        }
        Self { sig, coeffs }
    }

    pub fn sig(&self) -> Signature {
        self.sig
    }

    pub fn coeffs(&self) -> &BTreeMap<u32, LaxEntry> {
        &self.coeffs
    }

    /// Coefficient of `∂^k` (zero when absent).
    pub fn coeff(&self, k: u32) -> LaxEntry {
        self.coeffs.get(&k).cloned().unwrap_or_else(|| LaxEntry::zero(self.sig))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest `∂` power; `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    fn insert(&mut self, k: u32, e: LaxEntry) {
        if e.is_zero() {
            return;
        }
        let next = match self.coeffs.remove(&k) {
            Some(old) => old.checked_add(&e).expect("diff-op signatures differ"),
            None => e,
        };
        if !next.is_zero() {
            self.coeffs.insert(k, next);
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.sig.check_same(&o.sig)?;
        let mut out = self.clone();
        for (k, e) in &o.coeffs {
            out.insert(*k, e.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Self { sig: self.sig, coeffs: self.coeffs.iter().map(|(k, e)| (*k, -e)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn scale(&self, f: &Q) -> Self {
        let mut out = Self::zero(self.sig);
        for (k, e) in &self.coeffs {
            out.insert(*k, e.scale(f));
        }
        out
    }

    /// `(A ∂^a)(B ∂^b) = Σ_j C(a,j) A B^{(j)} ∂^{a+b−j}`.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.sig.check_same(&o.sig)?;
        let mut out = Self::zero(self.sig);
        for (&a, ea) in &self.coeffs {
            for (&b, eb) in &o.coeffs {
                for j in 0..=a {
                    let deriv = nth_z_derivative(eb, j);
                    if deriv.is_zero() {
                        continue;
                    }
                    let term = ea.checked_mul(&deriv)?;
                    let term = if j == 0 { term } else { term.scale(&binomial(a, j)) };
                    out.insert(a + b - j, term);
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, o: &Self) -> Result<Self> {
        self.mul(o)?.sub(&o.mul(self)?)
    }

    /// Coefficients of `∂^0, ∂^1, …, ∂^order` evaluated at `z = point`.
    pub fn eval_z(&self, point: &Q) -> Result<Vec<NCPoly>> {
        let top = self.order().unwrap_or(0);
        (0..=top).map(|k| eval_entry(&self.coeff(k), point)).collect()
    }
}

/// `diffop_multiply`.
pub fn diffop_multiply(a: &DiffOp, b: &DiffOp) -> Result<DiffOp> {
    a.mul(b)
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, e)) in self.coeffs.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match k {
                0 => write!(f, "[{e}]")?,
                1 => write!(f, "[{e}] d")?,
                _ => write!(f, "[{e}] d^{k}")?,
            }
        }
        Ok(())
    }
}
