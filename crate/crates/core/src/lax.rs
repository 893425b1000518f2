//! Lax matrices of Gaudin type, bending-flow matrices, and their spectral
//! invariants.
//!
//! Entry `(a, b)` of a Gaudin-type matrix carries the generator `e[a,b]`:
//! `L(z)_{ab} = Σ_i e_ab^{(i)}/(z − z_i)`. With this convention `∂_z − L(z)`
//! is a column Manin matrix in quantum mode, and `Tr L² = Σ_{ij}
//! Tr(X_i X_j)/((z−z_i)(z−z_j))` with `Tr(X_i X_j) = Σ_{ab} e_ab^{(i)} e_ba^{(j)}`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ncalgebra::{Gen, Mode, NCPoly, Signature};
use crate::ratfun::{
    entry_pole_order, entry_polynomial_coeff, entry_polynomial_degree, entry_residue, eval_entry, z_derivative,
    LaxEntry, RatFun,
};
use crate::rational::{fmt_q, q, Q};

/// `r × r` matrix of Lax entries with its declared poles.
#[derive(Clone, Debug)]
pub struct LaxMatrix {
    label: String,
    sig: Signature,
    entries: Vec<LaxEntry>,
    poles: Vec<(Q, u32)>,
}

/// Structural equality: entries, poles and signature (the label is ignored).
impl PartialEq for LaxMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.sig == other.sig && self.poles == other.poles && self.entries == other.entries
    }
}

impl LaxMatrix {
    pub fn from_entries(label: impl Into<String>, sig: Signature, entries: Vec<LaxEntry>, mut poles: Vec<(Q, u32)>) -> Result<Self> {
        let r = sig.rank();
        if entries.len() != r * r {
            return Err(Error::Dimension(format!("expected {} entries, got {}", r * r, entries.len())));
        }
        for e in &entries {
            sig.check_same(&e.sig())?;
        }
        poles.sort();
        Ok(Self { label: label.into(), sig, entries, poles })
    }

    /// `Σ_c (Σ_{l ∈ S_c} X_l)/(z − p_c)` for residue blocks `(p_c, S_c)`.
    pub fn gaudin_type(label: impl Into<String>, sig: Signature, blocks: &[(Q, Vec<usize>)]) -> Result<Self> {
        let points: Vec<Q> = blocks.iter().map(|(p, _)| p.clone()).collect();
        check_distinct(&points)?;
        let r = sig.rank();
        let mut entries = vec![LaxEntry::zero(sig); r * r];
        for (p, sites) in blocks {
            let f = RatFun::pole(p, 1);
            for a in 1..=r {
                for b in 1..=r {
                    let block = site_sum(sig, sites, a, b)?;
                    let term = block.map_coeffs(|c| &f * c);
                    entries[(a - 1) * r + (b - 1)] = &entries[(a - 1) * r + (b - 1)] + &term;
                }
            }
        }
        let poles = blocks.iter().map(|(p, _)| (p.clone(), 1)).collect();
        Self::from_entries(label, sig, entries, poles)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn sig(&self) -> Signature {
        self.sig
    }

    pub fn size(&self) -> usize {
        self.sig.rank()
    }

    pub fn poles(&self) -> &[(Q, u32)] {
        &self.poles
    }

    /// Entry `(a, b)`, 1-based.
    pub fn entry(&self, a: usize, b: usize) -> &LaxEntry {
        &self.entries[(a - 1) * self.size() + (b - 1)]
    }

    pub fn entries(&self) -> &[LaxEntry] {
        &self.entries
    }

    pub fn trace(&self) -> LaxEntry {
        let mut t = LaxEntry::zero(self.sig);
        for a in 1..=self.size() {
            t = &t + self.entry(a, a);
        }
        t
    }

    /// Matrix product; pole orders add.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.sig.check_same(&other.sig)?;
        let r = self.size();
        let mut entries = Vec::with_capacity(r * r);
        for a in 1..=r {
            for b in 1..=r {
                let mut acc = LaxEntry::zero(self.sig);
                for c in 1..=r {
                    acc = &acc + &(self.entry(a, c) * other.entry(c, b));
                }
                entries.push(acc);
            }
        }
        Ok(Self { label: self.label.clone(), sig: self.sig, entries, poles: merge_poles(&self.poles, &other.poles, |a, b| a + b) })
    }

    pub fn identity(sig: Signature) -> Self {
        let r = sig.rank();
        let mut entries = vec![LaxEntry::zero(sig); r * r];
        for a in 0..r {
            entries[a * r + a] = LaxEntry::one(sig);
        }
        Self { label: "Id".into(), sig, entries, poles: Vec::new() }
    }

    pub fn pow(&self, m: u32) -> Result<Self> {
        let mut acc = Self::identity(self.sig);
        for _ in 0..m {
            acc = acc.matmul(self)?;
        }
        Ok(acc.with_label(self.label.clone()))
    }

    /// Entry-wise `∂_z`; pole orders grow by one.
    pub fn z_derivative(&self) -> Self {
        Self {
            label: self.label.clone(),
            sig: self.sig,
            entries: self.entries.iter().map(z_derivative).collect(),
            poles: self.poles.iter().map(|(p, o)| (p.clone(), o + 1)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.sig.check_same(&other.sig)?;
        Ok(Self {
            label: self.label.clone(),
            sig: self.sig,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
            poles: merge_poles(&self.poles, &other.poles, |a, b| a.max(b)),
        })
    }

    /// Residue matrix `Res_{z=p} (z−p)^order L`, row-major.
    pub fn residue(&self, p: &Q, order: u32) -> Vec<NCPoly> {
        self.entries.iter().map(|e| entry_residue(e, p, order)).collect()
    }

    /// `L(point)`, row-major.
    pub fn eval(&self, point: &Q) -> Result<Vec<NCPoly>> {
        self.entries.iter().map(|e| eval_entry(e, point)).collect()
    }
}

/// Serialises as `{label, signature, poles: [[point, order]], entries}` with
/// entries rendered row-major.
impl Serialize for LaxMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let poles: Vec<(String, u32)> = self.poles.iter().map(|(p, o)| (fmt_q(p), *o)).collect();
        let mut st = s.serialize_struct("LaxMatrix", 4)?;
        st.serialize_field("label", &self.label)?;
        st.serialize_field("signature", &self.sig.to_string())?;
        st.serialize_field("poles", &poles)?;
        st.serialize_field("entries", &self.entries)?;
        st.end()
    }
}

impl fmt::Display for LaxMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} [{}]", self.label, self.sig)?;
        for a in 1..=self.size() {
            for b in 1..=self.size() {
                writeln!(f, "  ({a},{b}): {}", self.entry(a, b))?;
            }
        }
        Ok(())
    }
}

fn merge_poles(a: &[(Q, u32)], b: &[(Q, u32)], combine: impl Fn(u32, u32) -> u32) -> Vec<(Q, u32)> {
    let mut out: Vec<(Q, u32)> = Vec::new();
    for (p, o) in a {
        let other = b.iter().find(|(x, _)| x == p).map_or(0, |(_, k)| *k);
        out.push((p.clone(), combine(*o, other)));
    }
    for (p, o) in b {
        if !a.iter().any(|(x, _)| x == p) {
            out.push((p.clone(), combine(0, *o)));
        }
    }
    out.sort();
    out
}

pub(crate) fn check_distinct(points: &[Q]) -> Result<()> {
    for (i, p) in points.iter().enumerate() {
        if points[..i].contains(p) {
            return Err(Error::RepeatedPoint { point: p.clone() });
        }
    }
    Ok(())
}

fn check_site(sig: Signature, i: usize) -> Result<()> {
    if i == 0 || i > sig.sites() {
        return Err(Error::IndexOutOfRange { index: i, max: sig.sites() });
    }
    Ok(())
}

/// `(Σ_{l ∈ sites} X_l)_{ab}` as a constant Lax entry.
fn site_sum(sig: Signature, sites: &[usize], a: usize, b: usize) -> Result<LaxEntry> {
    let mut acc = LaxEntry::zero(sig);
    for &l in sites {
        check_site(sig, l)?;
        acc = &acc + &LaxEntry::generator(sig, l, a, b)?;
    }
    Ok(acc)
}

/// `L_G(z) = Σ_i X_i/(z − z_i)`.
pub fn gaudin_lax(sig: Signature, poles: &[Q]) -> Result<LaxMatrix> {
    if poles.len() != sig.sites() {
        return Err(Error::WrongPointCount { expected: sig.sites(), got: poles.len() });
    }
    let blocks: Vec<(Q, Vec<usize>)> = poles.iter().enumerate().map(|(i, p)| (p.clone(), vec![i + 1])).collect();
    LaxMatrix::gaudin_type("L_G", sig, &blocks)
}

/// Polynomial bending matrix `L_k(z) = z X_k + Σ_{i>k} X_i`.
pub fn bending_lax(sig: Signature, k: usize) -> Result<LaxMatrix> {
    let n = sig.sites();
    if k == 0 || k >= n {
        return Err(Error::IndexOutOfRange { index: k, max: n.saturating_sub(1) });
    }
    let r = sig.rank();
    let tail: Vec<usize> = (k + 1..=n).collect();
    let z = RatFun::z();
    let mut entries = Vec::with_capacity(r * r);
    for a in 1..=r {
        for b in 1..=r {
            let head = LaxEntry::generator(sig, k, a, b)?.map_coeffs(|c| &z * c);
            entries.push(&head + &site_sum(sig, &tail, a, b)?);
        }
    }
    LaxMatrix::from_entries(format!("L_{k}"), sig, entries, Vec::new())
}

/// Rational bending matrix `L_k = X_{k+1}/(z − z_2) + (Σ_{i≤k} X_i)/(z − z_1)`.
pub fn bending_lax_rational(sig: Signature, k: usize, z1: &Q, z2: &Q) -> Result<LaxMatrix> {
    let n = sig.sites();
    if k == 0 || k >= n {
        return Err(Error::IndexOutOfRange { index: k, max: n.saturating_sub(1) });
    }
    if z1 == z2 {
        return Err(Error::RepeatedPoint { point: z1.clone() });
    }
    let blocks = vec![(z1.clone(), (1..=k).collect()), (z2.clone(), vec![k + 1])];
    LaxMatrix::gaudin_type(format!("L_{k}"), sig, &blocks)
}

/// Where an invariant was read off `Tr L^m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Location {
    /// `Res_{z=point} (z − point)^order Tr L^m`.
    Pole {
        #[serde(serialize_with = "ser_q")]
        point: Q,
        order: u32,
    },
    /// Coefficient of `z^power` (equivalently `res_{z=0} z^{-(power+1)}`).
    ZPower { power: u32 },
}

fn ser_q<S: serde::Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_q(x))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub matrix: String,
    pub power: u32,
    pub location: Location,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.location {
            Location::Pole { point, order } => {
                write!(f, "{}: Res_(z={}) (z-{})^{} Tr L^{}", self.matrix, fmt_q(point), fmt_q(point), order, self.power)
            }
            Location::ZPower { power } => write!(f, "{}: [z^{}] Tr L^{}", self.matrix, power, self.power),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Invariant {
    pub poly: NCPoly,
    pub provenance: Provenance,
}

/// Spectral invariants with provenance.
#[derive(Clone, Debug, PartialEq, Default, Serialize)]
pub struct InvariantFamily {
    pub members: Vec<Invariant>,
}

impl InvariantFamily {
    pub fn polys(&self) -> Vec<&NCPoly> {
        self.members.iter().map(|m| &m.poly).collect()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn extend(&mut self, other: InvariantFamily) {
        self.members.extend(other.members);
    }

    pub fn find(&self, provenance: &Provenance) -> Option<&Invariant> {
        self.members.iter().find(|m| &m.provenance == provenance)
    }
}

/// All Laurent data of a `z`-dependent trace: principal parts at the
/// declared poles (orders up to the observed pole order) and the
/// polynomial part. Zero members are dropped.
pub(crate) fn expand_trace(trace: &LaxEntry, poles: &[(Q, u32)], matrix: &str, power: u32) -> Vec<Invariant> {
    let mut out = Vec::new();
    for (p, _) in poles {
        let order = entry_pole_order(trace, p) as u32;
        for k in 0..order {
            let poly = entry_residue(trace, p, k);
            if !poly.is_zero() {
                out.push(Invariant {
                    poly,
                    provenance: Provenance {
                        matrix: matrix.to_string(),
                        power,
                        location: Location::Pole { point: p.clone(), order: k },
                    },
                });
            }
        }
    }
    if let Some(deg) = entry_polynomial_degree(trace) {
        for a in 0..=deg {
            let poly = entry_polynomial_coeff(trace, a);
            if !poly.is_zero() {
                out.push(Invariant {
                    poly,
                    provenance: Provenance { matrix: matrix.to_string(), power, location: Location::ZPower { power: a as u32 } },
                });
            }
        }
    }
    out
}

/// Residues (and `z`-coefficients) of `Tr L^m` for `m = 1..=max_power`.
pub fn spectral_invariants(l: &LaxMatrix, max_power: u32) -> Result<InvariantFamily> {
    l.sig().require(Mode::Classical, "spectral_invariants")?;
    let mut members = Vec::new();
    let mut power = LaxMatrix::identity(l.sig());
    for m in 1..=max_power {
        power = power.matmul(l)?;
        members.extend(expand_trace(&power.trace(), l.poles(), l.label(), m));
    }
    Ok(InvariantFamily { members })
}

/// `Tr(X_i X_j) = Σ_{ab} e_ab^{(i)} e_ba^{(j)}`.
pub fn trace_pair(sig: Signature, i: usize, j: usize) -> Result<NCPoly> {
    check_site(sig, i)?;
    check_site(sig, j)?;
    let mut acc = NCPoly::zero(sig);
    for a in 1..=sig.rank() {
        for b in 1..=sig.rank() {
            acc = &acc + &NCPoly::word(sig, &[Gen::new(i, a, b), Gen::new(j, b, a)])?;
        }
    }
    Ok(acc)
}

/// `H_i = Σ_{k≠i} Tr(X_i X_k)/(z_i − z_k)`.
pub fn quadratic_hamiltonians(sig: Signature, poles: &[Q]) -> Result<Vec<NCPoly>> {
    if poles.len() != sig.sites() {
        return Err(Error::WrongPointCount { expected: sig.sites(), got: poles.len() });
    }
    check_distinct(poles)?;
    let n = sig.sites();
    let mut out = Vec::with_capacity(n);
    for i in 1..=n {
        let mut h = NCPoly::zero(sig);
        for k in (1..=n).filter(|&k| k != i) {
            let w = (&poles[i - 1] - &poles[k - 1]).recip();
            h = &h + &trace_pair(sig, i, k)?.scale(&w);
        }
        out.push(h);
    }
    Ok(out)
}

/// `H_G = Σ_{i≠j} Tr(X_i X_j)`.
pub fn physical_hamiltonian(sig: Signature) -> Result<NCPoly> {
    if sig.sites() < 2 {
        return Err(Error::Dimension("the physical Hamiltonian needs at least two sites".into()));
    }
    let mut h = NCPoly::zero(sig);
    for i in 1..=sig.sites() {
        for j in (1..=sig.sites()).filter(|&j| j != i) {
            h = &h + &trace_pair(sig, i, j)?;
        }
    }
    Ok(h)
}

/// Generic-position poles `0, 1, …, N−1`.
pub fn default_poles(n: usize) -> Vec<Q> {
    (0..n as i64).map(q).collect()
}

