use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rational::{fmt_q, is_neg, Q};

/// Dense univariate polynomial in `z` over the rationals, lowest degree
/// first, with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UPoly(Vec<Q>);

impl UPoly {
    pub fn zero() -> Self {
        Self(Vec::new())
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn z() -> Self {
        Self::from_coeffs(vec![Q::zero(), Q::one()])
    }

    /// `z − p`.
    pub fn linear(p: &Q) -> Self {
        Self::from_coeffs(vec![-p.clone(), Q::one()])
    }

    pub fn from_coeffs(mut c: Vec<Q>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        Self(c)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Q {
        self.0.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.0.get(i).cloned().unwrap_or_else(Q::zero);
            let b = o.0.get(i).cloned().unwrap_or_else(Q::zero);
            c.push(a + b);
        }
        Self::from_coeffs(c)
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|x| -x).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![Q::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::from_coeffs(c)
    }

    pub fn scale(&self, f: &Q) -> Self {
        if f.is_zero() {
            return Self::zero();
        }
        Self(self.0.iter().map(|x| x * f).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.0.len() - 1;
        let lead_inv = d.lead().recip();
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Q::zero(); r.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &r[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dj) in d.0.iter().enumerate() {
                    r[k + j] -= &c * dj;
                }
            }
            quot[k] = c;
        }
        r.truncate(dd);
        (Self::from_coeffs(quot), Self::from_coeffs(r))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.lead().recip())
    }

    /// Monic gcd.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y);
            x = y;
            y = r;
        }
        x.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.0.iter().enumerate().skip(1).map(|(i, c)| c * Q::from_integer((i as i64).into())).collect(),
        )
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Coefficients of `self(p + t)` in `t`.
    pub fn shift(&self, p: &Q) -> Self {
        // Horner in the ring Q[t]: acc = acc * (t + p) + c
        let step = Self::from_coeffs(vec![p.clone(), Q::one()]);
        let mut acc = Self::zero();
        for c in self.0.iter().rev() {
            acc = acc.mul(&step).add(&Self::constant(c.clone()));
        }
        acc
    }

    /// Synthetic division by `z − p`: quotient and remainder `self(p)`.
    pub fn div_linear(&self, p: &Q) -> (Self, Q) {
        if self.0.is_empty() {
            return (Self::zero(), Q::zero());
        }
        let mut quot = vec![Q::zero(); self.0.len() - 1];
        let mut acc = Q::zero();
        for (i, c) in self.0.iter().enumerate().rev() {
            acc = acc * p + c;
            if i > 0 {
                quot[i - 1] = acc.clone();
            }
        }
        (Self::from_coeffs(quot), acc)
    }

    /// Splits off the rational roots: `self = c · Π (z − p)^k · rest`.
    /// Roots are searched with the rational root theorem, so only when the
    /// integer content of the constant and leading coefficients is small;
    /// otherwise the remaining factor is returned untouched.
    pub fn split_rational_roots(&self) -> (BTreeMap<Q, u32>, Self) {
        const BOUND: u64 = 100_000;
        let mut roots = BTreeMap::new();
        let mut rest = self.clone();
        while rest.degree().is_some_and(|d| d > 0) && rest.0[0].is_zero() {
            rest = Self::from_coeffs(rest.0[1..].to_vec());
            *roots.entry(Q::zero()).or_insert(0) += 1;
        }
        if rest.degree().is_none_or(|d| d == 0) {
            return (roots, rest);
        }
        let scale = rest.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let a0 = (&rest.0[0] * Q::from_integer(scale.clone())).to_integer().abs().to_u64();
        let an = (rest.lead() * Q::from_integer(scale)).to_integer().abs().to_u64();
        let (Some(a0), Some(an)) = (a0, an) else { return (roots, rest) };
        if a0 > BOUND || an > BOUND {
            return (roots, rest);
        }
        let divisors = |n: u64| (1..=n).filter(move |&d| n.is_multiple_of(d));
        for num in divisors(a0) {
            for den in divisors(an) {
                if num.gcd(&den) != 1 {
                    continue;
                }
                for sign in [1i64, -1] {
                    let p = Q::new(BigInt::from(sign) * BigInt::from(num), BigInt::from(den));
                    loop {
                        let (quot, rem) = rest.div_linear(&p);
                        if !rem.is_zero() {
                            break;
                        }
                        rest = quot;
                        *roots.entry(p.clone()).or_insert(0) += 1;
                    }
                    if rest.degree() == Some(0) {
                        return (roots, rest);
                    }
                }
            }
        }
        (roots, rest)
    }

    /// Multiplicity of the root `p`.
    pub fn root_multiplicity(&self, p: &Q) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let mut k = 0;
        let mut cur = self.clone();
        loop {
            let (qt, r) = cur.div_linear(p);
            if !r.is_zero() {
                return k;
            }
            k += 1;
            cur = qt;
        }
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = is_neg(c);
            let abs = if neg { -c } else { c.clone() };
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            if k == 0 {
                f.write_str(&fmt_q(&abs))?;
            } else if abs.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{}*{}", fmt_q(&abs), mono)?;
            }
        }
        Ok(())
    }
}
