use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::monomial::{self, Gen, Monomial};
use super::{Mode, Signature};
use crate::error::{Error, Result};
use crate::rational::{fmt_q, is_neg, Q};

/// Coefficient ring for [`Poly`]. Implemented by exact rationals and by
/// rational functions of the spectral parameter.
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync + Zero + One {
    fn add_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn scale(&self, factor: &Q) -> Self;
    fn from_q(value: Q) -> Self;
    fn render(&self) -> String;
    /// `(is_negative, |self|)` when the sign can be folded into ` - ` by the
    /// polynomial printer.
    fn sign_and_abs(&self) -> Option<(bool, String)>;
}

impl Coeff for Q {
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, factor: &Q) -> Self {
        self * factor
    }
    fn from_q(value: Q) -> Self {
        value
    }
    fn render(&self) -> String {
        fmt_q(self)
    }
    fn sign_and_abs(&self) -> Option<(bool, String)> {
        if is_neg(self) {
            Some((true, fmt_q(&-self)))
        } else {
            Some((false, fmt_q(self)))
        }
    }
}

/// Sparse linear combination of normal-form monomials over a coefficient
/// ring `C`, tagged with its algebra signature.
///
/// No zero coefficient is ever stored, so equality of values is equality of
/// term maps.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<C> {
    sig: Signature,
    terms: BTreeMap<Monomial, C>,
}

/// Element of `U(gl(r))^{⊗N}` or `S(gl(r))^{⊗N}` with rational coefficients.
pub type NCPoly = Poly<Q>;

impl<C: Coeff> Poly<C> {
    pub fn zero(sig: Signature) -> Self {
        Self { sig, terms: BTreeMap::new() }
    }

    pub fn one(sig: Signature) -> Self {
        Self::constant(sig, C::one())
    }

    pub fn constant(sig: Signature, c: C) -> Self {
        let mut p = Self::zero(sig);
        p.add_term(Monomial::unit(), c);
        p
    }

    /// The generator `e[row,col]@site` (1-based indices).
    pub fn generator(sig: Signature, site: usize, row: usize, col: usize) -> Result<Self> {
        if site == 0 || site > sig.sites() || row == 0 || row > sig.rank() || col == 0 || col > sig.rank()
        {
            return Err(Error::GeneratorOutOfRange { site, row, col, sig });
        }
        Ok(Self::from_gen(sig, Gen::new(site, row, col)))
    }

    pub(crate) fn from_gen(sig: Signature, g: Gen) -> Self {
        let mut p = Self::zero(sig);
        p.terms.insert(Monomial::from_gen(g), C::one());
        p
    }

    /// Product of generators in the given order, brought to normal form.
    pub fn word(sig: Signature, gens: &[Gen]) -> Result<Self> {
        let mut acc = Self::one(sig);
        for &g in gens {
            let factor = Self::generator(sig, g.site(), g.row(), g.col())?;
            acc = acc.checked_mul(&factor)?;
        }
        Ok(acc)
    }

    pub fn sig(&self) -> Signature {
        self.sig
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, C> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, C> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Filtration degree; `None` stands for the `−∞` degree of zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&C> {
        self.terms.get(m)
    }

    /// Coefficient of the unit monomial.
    pub fn constant_term(&self) -> C {
        self.terms.get(&Monomial::unit()).cloned().unwrap_or_else(C::zero)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().add_ref(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub(crate) fn from_terms(sig: Signature, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero(sig);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.sig.check_same(&other.sig)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg_ref())
    }

    fn neg_ref(&self) -> Self {
        Self { sig: self.sig, terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg_ref())).collect() }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.sig.check_same(&other.sig)?;
        let mode = self.sig.mode();
        let mut acc: BTreeMap<Monomial, C> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let c = c1.mul_ref(c2);
                for (m, k) in monomial::product(mode, m1, m2) {
                    let term = if k == 1 { c.clone() } else { c.scale(&Q::from_integer(k.into())) };
                    match acc.get_mut(&m) {
                        Some(slot) => *slot = slot.add_ref(&term),
                        None => {
                            acc.insert(m, term);
                        }
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(Self { sig: self.sig, terms: acc })
    }

    pub fn scale(&self, factor: &Q) -> Self {
        if Zero::is_zero(factor) {
            return Self::zero(self.sig);
        }
        Self { sig: self.sig, terms: self.terms.iter().map(|(m, c)| (m.clone(), c.scale(factor))).collect() }
    }

    /// Multiplies every coefficient by a ring element.
    pub fn scale_by(&self, factor: &C) -> Self {
        Self::from_terms(self.sig, self.terms.iter().map(|(m, c)| (m.clone(), factor.mul_ref(c))))
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(self.sig);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Applies `f` to every coefficient, dropping results that vanish.
    pub fn map_coeffs<D: Coeff>(&self, mut f: impl FnMut(&C) -> D) -> Poly<D> {
        Poly::from_terms(self.sig, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Same terms, reinterpreted over another signature (same monomials).
    pub(crate) fn retag(&self, sig: Signature) -> Self {
        Self { sig, terms: self.terms.clone() }
    }

    /// Homogeneous component of the given degree.
    pub fn homogeneous_part(&self, degree: usize) -> Self {
        Self {
            sig: self.sig,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == degree).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Classical partial derivative with respect to generator `g`.
    pub fn partial(&self, g: Gen) -> Result<Self> {
        self.sig.require(Mode::Classical, "partial derivative")?;
        let mut out = Self::zero(self.sig);
        for (m, c) in &self.terms {
            let k = m.multiplicity(g);
            if k > 0 {
                out.add_term(m.remove_one(g).unwrap(), c.scale(&Q::from_integer((k as i64).into())));
            }
        }
        Ok(out)
    }

    /// Generators that occur in some term.
    pub fn support(&self) -> Vec<Gen> {
        let mut gens: Vec<Gen> = self.terms.keys().flat_map(|m| m.factors().iter().copied()).collect();
        gens.sort_unstable();
        gens.dedup();
        gens
    }

    /// Substitutes each generator by a polynomial (an algebra homomorphism
    /// when the images satisfy the defining relations).
    pub fn substitute(&self, target: Signature, image: impl Fn(Gen) -> Poly<C>) -> Result<Poly<C>> {
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut acc = Poly::constant(target, c.clone());
            for &g in m.factors() {
                acc = acc.checked_mul(&image(g))?;
            }
            out = out.checked_add(&acc)?;
        }
        Ok(out)
    }
}

impl NCPoly {
    /// Evaluates a classical polynomial at a point given as a generator
    /// assignment.
    pub fn evaluate(&self, point: impl Fn(Gen) -> Q) -> Q {
        let mut total = Q::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for &g in m.factors() {
                v *= point(g);
            }
            total += v;
        }
        total
    }

    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(Monomial::is_unit)
    }
}

impl<C: Coeff> Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: Self) -> Poly<C> {
        self.checked_add(rhs).expect("polynomial signatures differ")
    }
}

impl<C: Coeff> Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: Self) -> Poly<C> {
        self.checked_sub(rhs).expect("polynomial signatures differ")
    }
}

impl<C: Coeff> Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: Self) -> Poly<C> {
        self.checked_mul(rhs).expect("polynomial signatures differ")
    }
}

impl<C: Coeff> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        self.neg_ref()
    }
}

impl<C: Coeff> Add for Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: Self) -> Poly<C> {
        &self + &rhs
    }
}

impl<C: Coeff> Sub for Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: Self) -> Poly<C> {
        &self - &rhs
    }
}

impl<C: Coeff> Mul for Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: Self) -> Poly<C> {
        &self * &rhs
    }
}

impl<C: Coeff> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        self.neg_ref()
    }
}

/// `c * e[a,b]@i * ...` in PBW term order, rationals as `p/q`. Classical
/// polynomials print their generators as `x[a,b]@i`.
/// Serialises as the textual rendering.
impl<C: Coeff> serde::Serialize for Poly<C> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<C: Coeff> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let letter = match self.sig.mode() {
            Mode::Quantum => 'e',
            Mode::Classical => 'x',
        };
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let (negative, body) = match c.sign_and_abs() {
                Some((neg, abs)) => (neg, abs),
                None => (false, c.render()),
            };
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            f.write_str(&body)?;
            for g in m.factors() {
                write!(f, " * {}[{},{}]@{}", letter, g.row, g.col, g.site)?;
            }
        }
        Ok(())
    }
}
