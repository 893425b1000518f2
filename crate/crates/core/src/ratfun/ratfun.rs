use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::upoly::UPoly;
use crate::error::{Error, Result};
use crate::ncalgebra::Coeff;
use crate::rational::{fmt_q, is_neg, Q};

/// Rational function of the spectral parameter `z` over the rationals.
///
/// The denominator is kept factored as `Π (z − p)^k · rest`, where `rest` is
/// a monic polynomial that stays `1` unless the function was built by
/// dividing by an arbitrary polynomial. The numerator is always coprime to
/// the denominator and the denominator is monic, so `num/den` is unique.
#[derive(Clone, Debug)]
pub struct RatFun {
    num: UPoly,
    poles: BTreeMap<Q, u32>,
    rest: UPoly,
}

fn linear_product(poles: &BTreeMap<Q, u32>, skip: Option<&Q>) -> UPoly {
    poles
        .iter()
        .filter(|(p, _)| Some(*p) != skip)
        .fold(UPoly::one(), |acc, (p, k)| acc.mul(&UPoly::linear(p).pow(*k)))
}

/// `Π_p (z − p)^{target_p − own_p}`.
fn cofactor(target: &BTreeMap<Q, u32>, own: &BTreeMap<Q, u32>) -> UPoly {
    target.iter().fold(UPoly::one(), |acc, (p, k)| {
        let e = k - own.get(p).copied().unwrap_or(0);
        if e == 0 {
            acc
        } else {
            acc.mul(&UPoly::linear(p).pow(e))
        }
    })
}

impl RatFun {
    pub fn new(num: UPoly, den: UPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (poles, rest) = den.split_rational_roots();
        Ok(Self::reduced(num, poles, rest))
    }

    fn reduced(mut num: UPoly, mut poles: BTreeMap<Q, u32>, mut rest: UPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        for (p, k) in poles.iter_mut() {
            while *k > 0 {
                let (quot, rem) = num.div_linear(p);
                if !rem.is_zero() {
                    break;
                }
                num = quot;
                *k -= 1;
            }
        }
        poles.retain(|_, k| *k > 0);
        if !rest.is_constant() {
            let g = UPoly::gcd(&num, &rest);
            if !g.is_constant() {
                num = num.div_rem(&g).0;
                rest = rest.div_rem(&g).0;
            }
        }
        let lead = rest.lead();
        if !lead.is_one() {
            let inv = lead.recip();
            num = num.scale(&inv);
            rest = rest.scale(&inv);
        }
        Self { num, poles, rest }
    }

    pub fn zero() -> Self {
        Self::poly(UPoly::zero())
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::poly(UPoly::constant(c))
    }

    pub fn z() -> Self {
        Self::poly(UPoly::z())
    }

    pub fn poly(p: UPoly) -> Self {
        Self { num: p, poles: BTreeMap::new(), rest: UPoly::one() }
    }

    /// `1/(z − p)^order`.
    pub fn pole(p: &Q, order: u32) -> Self {
        let mut poles = BTreeMap::new();
        if order > 0 {
            poles.insert(p.clone(), order);
        }
        Self { num: UPoly::one(), poles, rest: UPoly::one() }
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    /// The expanded monic denominator.
    pub fn den(&self) -> UPoly {
        linear_product(&self.poles, None).mul(&self.rest)
    }

    fn den_is_one(&self) -> bool {
        self.poles.is_empty() && self.rest.is_constant()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den_is_one()
    }

    pub fn as_constant(&self) -> Option<Q> {
        self.is_constant().then(|| self.num.coeffs().first().cloned().unwrap_or_else(Q::zero))
    }

    fn add_impl(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.poles == o.poles && self.rest == o.rest {
            return Self::reduced(self.num.add(&o.num), self.poles.clone(), self.rest.clone());
        }
        let mut poles = self.poles.clone();
        for (p, k) in &o.poles {
            let e = poles.entry(p.clone()).or_insert(0);
            *e = (*e).max(*k);
        }
        let (rest, f_self, f_other) = if self.rest == o.rest {
            (self.rest.clone(), UPoly::one(), UPoly::one())
        } else if self.rest.is_constant() {
            (o.rest.clone(), o.rest.clone(), UPoly::one())
        } else if o.rest.is_constant() {
            (self.rest.clone(), UPoly::one(), self.rest.clone())
        } else {
            let g = UPoly::gcd(&self.rest, &o.rest);
            let a = o.rest.div_rem(&g).0;
            let b = self.rest.div_rem(&g).0;
            (self.rest.mul(&a), a, b)
        };
        let left = self.num.mul(&cofactor(&poles, &self.poles)).mul(&f_self);
        let right = o.num.mul(&cofactor(&poles, &o.poles)).mul(&f_other);
        Self::reduced(left.add(&right), poles, rest)
    }

    fn neg_impl(&self) -> Self {
        Self { num: self.num.neg(), poles: self.poles.clone(), rest: self.rest.clone() }
    }

    fn mul_impl(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.den_is_one() && o.den_is_one() {
            return Self::poly(self.num.mul(&o.num));
        }
        let mut poles = self.poles.clone();
        for (p, k) in &o.poles {
            *poles.entry(p.clone()).or_insert(0) += k;
        }
        Self::reduced(self.num.mul(&o.num), poles, self.rest.mul(&o.rest))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (poles, rest) = o.num.split_rational_roots();
        let flipped = Self::reduced(o.den(), poles, rest);
        Ok(self.mul_impl(&flipped))
    }

    pub fn recip(&self) -> Result<Self> {
        Self::one().div(self)
    }

    pub fn scale(&self, f: &Q) -> Self {
        if f.is_zero() {
            return Self::zero();
        }
        Self { num: self.num.scale(f), poles: self.poles.clone(), rest: self.rest.clone() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.den_is_one() {
            return Self::poly(self.num.derivative());
        }
        // With D = P·R and P = Π (z−p)^k: P'/P = s/p1, where p1 = Π (z−p)
        // and s = Σ k Π_{q≠p} (z−q); so f' = (n' p1 R − n (s R + p1 R')) / (P p1 R²).
        let p1 = self.poles.keys().fold(UPoly::one(), |acc, p| acc.mul(&UPoly::linear(p)));
        let s = self.poles.iter().fold(UPoly::zero(), |acc, (p, k)| {
            let others = self.poles.keys().filter(|q| *q != p).fold(UPoly::one(), |a, q| a.mul(&UPoly::linear(q)));
            acc.add(&others.scale(&Q::from_integer((*k as i64).into())))
        });
        let r = &self.rest;
        let num = self.num.derivative().mul(&p1).mul(r).sub(&self.num.mul(&s.mul(r).add(&p1.mul(&r.derivative()))));
        let poles = self.poles.iter().map(|(p, k)| (p.clone(), k + 1)).collect();
        Self::reduced(num, poles, r.mul(r))
    }

    pub fn nth_derivative(&self, n: u32) -> Self {
        let mut f = self.clone();
        for _ in 0..n {
            f = f.derivative();
        }
        f
    }

    /// Value at `z = x`; fails at a pole.
    pub fn eval(&self, x: &Q) -> Result<Q> {
        if self.poles.contains_key(x) {
            return Err(Error::EvaluationAtPole { pole: x.clone() });
        }
        let d = self.den().eval(x);
        if d.is_zero() {
            return Err(Error::EvaluationAtPole { pole: x.clone() });
        }
        Ok(self.num.eval(x) / d)
    }

    fn rest_multiplicity(&self, p: &Q) -> usize {
        if self.rest.is_constant() {
            0
        } else {
            self.rest.root_multiplicity(p)
        }
    }

    /// Order of the pole at `p` (0 when regular).
    pub fn pole_order(&self, p: &Q) -> usize {
        if self.is_zero() {
            return 0;
        }
        self.poles.get(p).copied().unwrap_or(0) as usize + self.rest_multiplicity(p)
    }

    /// Coefficient of `(z − p)^k` in the Laurent expansion at `p`.
    pub fn laurent_coeff(&self, p: &Q, k: i64) -> Q {
        if self.is_zero() {
            return Q::zero();
        }
        let m = self.pole_order(p);
        let idx = k + m as i64;
        if idx < 0 {
            return Q::zero();
        }
        let idx = idx as usize;
        let rest_m = self.rest_multiplicity(p);
        let rest = if rest_m == 0 { self.rest.clone() } else { self.rest.div_rem(&UPoly::linear(p).pow(rest_m as u32)).0 };
        let regular_den = linear_product(&self.poles, Some(p)).mul(&rest);
        let a = self.num.shift(p);
        let b = regular_den.shift(p);
        let b0_inv = b.coeffs()[0].recip();
        let mut c: Vec<Q> = Vec::with_capacity(idx + 1);
        for n in 0..=idx {
            let mut acc = a.coeffs().get(n).cloned().unwrap_or_else(Q::zero);
            for j in 1..=n {
                if let Some(bj) = b.coeffs().get(j) {
                    acc -= bj * &c[n - j];
                }
            }
            c.push(acc * &b0_inv);
        }
        c.pop().unwrap()
    }

    /// `Res_{z=p} (z − p)^order f(z)`: the coefficient of `(z−p)^{-1}` in
    /// `(z−p)^order f`.
    pub fn residue(&self, p: &Q, order: u32) -> Q {
        self.laurent_coeff(p, -1 - order as i64)
    }

    /// Polynomial part of the partial-fraction decomposition.
    pub fn polynomial_part(&self) -> UPoly {
        self.num.div_rem(&self.den()).0
    }
}

impl PartialEq for RatFun {
    fn eq(&self, o: &Self) -> bool {
        if self.poles == o.poles && self.rest == o.rest {
            return self.num == o.num;
        }
        self.num == o.num && self.den() == o.den()
    }
}

impl Eq for RatFun {}

impl Hash for RatFun {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den().hash(state);
    }
}

/// `ratfun_arith` with an explicit operator, for table-driven callers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn ratfun_arith(f: &RatFun, g: &RatFun, op: ArithOp) -> Result<RatFun> {
    Ok(match op {
        ArithOp::Add => f + g,
        ArithOp::Sub => f - g,
        ArithOp::Mul => f * g,
        ArithOp::Div => f.div(g)?,
    })
}

/// `Res_{z=pole} (z − pole)^order f(z)`.
pub fn residue(f: &RatFun, pole: &Q, order: u32) -> Q {
    f.residue(pole, order)
}

fn wrap(p: &UPoly) -> String {
    if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
        format!("({p})")
    } else {
        p.to_string()
    }
}

/// `num(z)/den(z)`, omitting a unit denominator.
impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den_is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den()))
        }
    }
}

impl Zero for RatFun {
    fn zero() -> Self {
        RatFun::zero()
    }
    fn is_zero(&self) -> bool {
        RatFun::is_zero(self)
    }
}

impl One for RatFun {
    fn one() -> Self {
        RatFun::one()
    }
}

impl Add for RatFun {
    type Output = RatFun;
    fn add(self, rhs: Self) -> RatFun {
        self.add_impl(&rhs)
    }
}

impl Mul for RatFun {
    type Output = RatFun;
    fn mul(self, rhs: Self) -> RatFun {
        self.mul_impl(&rhs)
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: Self) -> RatFun {
        self.add_impl(rhs)
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: Self) -> RatFun {
        self.add_impl(&rhs.neg_impl())
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: Self) -> RatFun {
        self.mul_impl(rhs)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        self.neg_impl()
    }
}

impl Coeff for RatFun {
    fn add_ref(&self, other: &Self) -> Self {
        self.add_impl(other)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.mul_impl(other)
    }
    fn neg_ref(&self) -> Self {
        self.neg_impl()
    }
    fn scale(&self, factor: &Q) -> Self {
        RatFun::scale(self, factor)
    }
    fn from_q(value: Q) -> Self {
        RatFun::constant(value)
    }
    fn render(&self) -> String {
        if self.den_is_one() {
            wrap(&self.num)
        } else {
            format!("({self})")
        }
    }
    fn sign_and_abs(&self) -> Option<(bool, String)> {
        let c = self.as_constant()?;
        Some((is_neg(&c), fmt_q(&if is_neg(&c) { -c } else { c })))
    }
}
