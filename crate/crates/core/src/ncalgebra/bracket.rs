use std::collections::BTreeMap;

use super::monomial::Gen;
use super::poly::{Coeff, NCPoly, Poly};
use super::{Mode, Signature};
use crate::error::Result;

/// Algebra product in `sig`, checking that both factors live there.
pub fn multiply(p: &NCPoly, q: &NCPoly, sig: Signature) -> Result<NCPoly> {
    sig.check_same(&p.sig())?;
    p.checked_mul(q)
}

/// `pq − qp` in normal form. Quantum mode only.
pub fn commutator<C: Coeff>(p: &Poly<C>, q: &Poly<C>) -> Result<Poly<C>> {
    p.sig().require(Mode::Quantum, "commutator")?;
    p.checked_mul(q)?.checked_sub(&q.checked_mul(p)?)
}

/// `{x_ab^{(i)}, x_cd^{(j)}} = δ_ij (δ_bc x_ad − δ_da x_cb)` as a polynomial.
pub fn lie_poisson_generators(sig: Signature, x: Gen, y: Gen) -> NCPoly {
    let mut out = NCPoly::zero(sig);
    for (g, c) in x.bracket(y) {
        out = &out + &NCPoly::from_gen(sig, g).scale(&crate::rational::q(c as i64));
    }
    out
}

/// Product Lie–Poisson bracket, extended from generators by Leibniz.
/// Classical mode only.
pub fn poisson_bracket(p: &NCPoly, q: &NCPoly) -> Result<NCPoly> {
    p.sig().require(Mode::Classical, "poisson_bracket")?;
    p.sig().check_same(&q.sig())?;
    let sig = p.sig();
    let dp = gradient(p)?;
    let dq = gradient(q)?;
    let mut out = NCPoly::zero(sig);
    for (x, px) in &dp {
        for (y, qy) in &dq {
            if x.site != y.site {
                continue;
            }
            let br = lie_poisson_generators(sig, *x, *y);
            if br.is_zero() {
                continue;
            }
            out = &out + &(&(px * qy) * &br);
        }
    }
    Ok(out)
}

/// Nonzero partial derivatives keyed by generator.
pub(crate) fn gradient(p: &NCPoly) -> Result<BTreeMap<Gen, NCPoly>> {
    let mut out = BTreeMap::new();
    for g in p.support() {
        let d = p.partial(g)?;
        if !d.is_zero() {
            out.insert(g, d);
        }
    }
    Ok(out)
}

/// Degree-`degree` component of a quantum element, read in the symmetric
/// algebra.
pub fn symbol(p: &NCPoly, degree: usize) -> NCPoly {
    let sig = p.sig().with_mode(Mode::Classical);
    p.homogeneous_part(degree).retag(sig)
}

/// Top filtration-degree part of `p`, with generators made commutative.
pub fn classical_limit(p: &NCPoly) -> NCPoly {
    match p.degree() {
        Some(d) => symbol(p, d),
        None => NCPoly::zero(p.sig().with_mode(Mode::Classical)),
    }
}

/// `Σ_i e[a,a]@i` for `a = 1..r`.
pub fn diagonal_generators(sig: Signature) -> Vec<NCPoly> {
    (1..=sig.rank())
        .map(|a| {
            let mut p = NCPoly::zero(sig);
            for i in 1..=sig.sites() {
                p.add_term(super::Monomial::from_gen(Gen::new(i, a, a)), crate::rational::q(1));
            }
            p
        })
        .collect()
}
