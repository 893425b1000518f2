//! Manin matrices over the algebra of differential operators in `∂_z`,
//! column determinants and their properties, quantum powers, and the
//! Talalaev generators of `det^col(∂_z − L(z))`.

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lax::{expand_trace, InvariantFamily, LaxMatrix};
use crate::linalg;
use crate::ncalgebra::{commutator, poisson_bracket, Mode, NCPoly, Signature};
use crate::ratfun::{eval_entry, lift, DiffOp, LaxEntry};
use crate::rational::{fmt_q, q, Q};
use crate::report::Report;

/// Square matrix of differential operators, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ManinCandidate {
    sig: Signature,
    n: usize,
    entries: Vec<DiffOp>,
}

impl ManinCandidate {
    pub fn new(sig: Signature, n: usize, entries: Vec<DiffOp>) -> Result<Self> {
        if n == 0 || entries.len() != n * n {
            return Err(Error::Dimension(format!("expected {} entries for a {n}×{n} matrix, got {}", n * n, entries.len())));
        }
        for e in &entries {
            sig.check_same(&e.sig())?;
        }
        Ok(Self { sig, n, entries })
    }

    /// Matrix with `∂`-free, `z`-independent entries.
    pub fn from_scalars(sig: Signature, n: usize, entries: &[NCPoly]) -> Result<Self> {
        Self::new(sig, n, entries.iter().map(|p| DiffOp::from_entry(lift(p))).collect())
    }

    /// `∂_z·1 − L(z)`.
    pub fn d_minus_lax(l: &LaxMatrix) -> Self {
        let (sig, n) = (l.sig(), l.size());
        let mut entries = Vec::with_capacity(n * n);
        for a in 1..=n {
            for b in 1..=n {
                let mut e = DiffOp::from_entry(-l.entry(a, b));
                if a == b {
                    e = e.add(&DiffOp::d(sig)).expect("same signature");
                }
                entries.push(e);
            }
        }
        Self { sig, n, entries }
    }

    pub fn sig(&self) -> Signature {
        self.sig
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Entry `(i, j)`, 1-based.
    pub fn entry(&self, i: usize, j: usize) -> &DiffOp {
        &self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn entries(&self) -> &[DiffOp] {
        &self.entries
    }

    /// True when no entry involves `∂_z`.
    pub fn is_d_free(&self) -> bool {
        self.entries.iter().all(|e| e.order().unwrap_or(0) == 0)
    }

    /// `c·1 + M`.
    pub fn shift(&self, c: &Q) -> Self {
        let mut out = self.clone();
        let unit = DiffOp::one(self.sig).scale(c);
        for i in 0..self.n {
            out.entries[i * self.n + i] = out.entries[i * self.n + i].add(&unit).expect("same signature");
        }
        out
    }

    pub fn identity(sig: Signature, n: usize) -> Self {
        Self::zero(sig, n).shift(&Q::one())
    }

    fn zero(sig: Signature, n: usize) -> Self {
        Self { sig, n, entries: vec![DiffOp::zero(sig); n * n] }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.sig.check_same(&other.sig)?;
        if self.n != other.n {
            return Err(Error::Dimension(format!("cannot multiply {}×{} by {}×{}", self.n, self.n, other.n, other.n)));
        }
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 1..=n {
            for j in 1..=n {
                let mut acc = DiffOp::zero(self.sig);
                for k in 1..=n {
                    acc = acc.add(&self.entry(i, k).mul(other.entry(k, j))?)?;
                }
                entries.push(acc);
            }
        }
        Ok(Self { sig: self.sig, n, entries })
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = Self::identity(self.sig, self.n);
        for _ in 0..k {
            acc = acc.matmul(self)?;
        }
        Ok(acc)
    }

    pub fn trace(&self) -> DiffOp {
        let mut t = DiffOp::zero(self.sig);
        for i in 1..=self.n {
            t = t.add(self.entry(i, i)).expect("same signature");
        }
        t
    }

    /// The matrix with row `row` and column `col` (1-based) removed.
    pub fn minor(&self, row: usize, col: usize) -> Result<Self> {
        if self.n < 2 {
            return Err(Error::Dimension("a 1×1 matrix has no minors".into()));
        }
        let mut entries = Vec::with_capacity((self.n - 1) * (self.n - 1));
        for i in (1..=self.n).filter(|&i| i != row) {
            for j in (1..=self.n).filter(|&j| j != col) {
                entries.push(self.entry(i, j).clone());
            }
        }
        Ok(Self { sig: self.sig, n: self.n - 1, entries })
    }

    /// Entry-wise left multiplication by a scalar-matrix entry `c`.
    fn left_scale(&self, c: &DiffOp) -> Result<Self> {
        let entries = self.entries.iter().map(|e| c.mul(e)).collect::<Result<_>>()?;
        Ok(Self { sig: self.sig, n: self.n, entries })
    }

    fn add(&self, other: &Self) -> Result<Self> {
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect::<Result<_>>()?;
        Ok(Self { sig: self.sig, n: self.n, entries })
    }

    /// Sub-block with the given 1-based rows and columns.
    fn block(&self, rows: &[usize], cols: &[usize]) -> Self {
        let entries = rows.iter().flat_map(|&i| cols.iter().map(move |&j| (i, j))).map(|(i, j)| self.entry(i, j).clone()).collect();
        Self { sig: self.sig, n: rows.len(), entries }
    }

    /// Rational constant entries, if every entry is one.
    fn as_constants(&self) -> Option<Vec<Vec<Q>>> {
        self.entries.chunks(self.n).map(|row| row.iter().map(as_constant).collect()).collect()
    }
}

/// `Some(c)` when the operator is the constant `c` (no `∂`, `z` or generators).
fn as_constant(e: &DiffOp) -> Option<Q> {
    if e.is_zero() {
        return Some(Q::zero());
    }
    if e.order() != Some(0) {
        return None;
    }
    let entry = e.coeff(0);
    if entry.len() != 1 || entry.degree() != Some(0) {
        return None;
    }
    entry.constant_term().as_constant()
}

fn constant_op(sig: Signature, c: &Q) -> DiffOp {
    DiffOp::one(sig).scale(c)
}

/// Violated Manin condition, naming the offending `2×2` submatrix (1-based).
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ManinWitness {
    /// `[M_ij, M_kj] ≠ 0`.
    Column { column: usize, rows: (usize, usize), commutator: String },
    /// `[M_ij, M_kl] ≠ [M_kj, M_il]`.
    Cross { rows: (usize, usize), columns: (usize, usize), lhs: String, rhs: String },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ManinVerdict {
    pub manin: bool,
    pub witness: Option<ManinWitness>,
}

/// Checks both Manin conditions over all index pairs.
pub fn is_manin(m: &ManinCandidate) -> Result<ManinVerdict> {
    let n = m.size();
    for j in 1..=n {
        for i in 1..=n {
            for k in (i + 1)..=n {
                let c = m.entry(i, j).commutator(m.entry(k, j))?;
                if !c.is_zero() {
                    let witness = ManinWitness::Column { column: j, rows: (i, k), commutator: c.to_string() };
                    return Ok(ManinVerdict { manin: false, witness: Some(witness) });
                }
            }
        }
    }
    for i in 1..=n {
        for k in (i + 1)..=n {
            for j in 1..=n {
                for l in (j + 1)..=n {
                    let lhs = m.entry(i, j).commutator(m.entry(k, l))?;
                    let rhs = m.entry(k, j).commutator(m.entry(i, l))?;
                    if lhs != rhs {
                        let witness =
                            ManinWitness::Cross { rows: (i, k), columns: (j, l), lhs: lhs.to_string(), rhs: rhs.to_string() };
                        return Ok(ManinVerdict { manin: false, witness: Some(witness) });
                    }
                }
            }
        }
    }
    Ok(ManinVerdict { manin: true, witness: None })
}

/// All permutations of `0..n` with their signs.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                rec(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut perms = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut perms);
    perms
        .into_iter()
        .map(|p| {
            let inversions = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            let sign = if inversions % 2 == 0 { 1 } else { -1 };
            (p, sign)
        })
        .collect()
}

/// `det^col M = Σ_σ (−1)^σ M_{σ(1),1} M_{σ(2),2} ⋯ M_{σ(n),n}`.
pub fn col_det(m: &ManinCandidate) -> Result<DiffOp> {
    let order: Vec<usize> = (1..=m.size()).collect();
    col_det_ordered(m, &order)
}

/// Column expansion taking the columns in the given (1-based) order:
/// `Σ_σ (−1)^σ Π_{c ∈ order} M_{σ(c), c}`.
pub fn col_det_ordered(m: &ManinCandidate, order: &[usize]) -> Result<DiffOp> {
    let n = m.size();
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (1..=n).collect::<Vec<_>>() {
        return Err(Error::Dimension(format!("column order {order:?} is not a permutation of 1..{n}")));
    }
    let terms: Vec<DiffOp> = permutations(n)
        .into_par_iter()
        .map(|(sigma, sign)| {
            let mut prod = DiffOp::one(m.sig());
            for &c in order {
                prod = prod.mul(m.entry(sigma[c - 1] + 1, c))?;
                if prod.is_zero() {
                    break;
                }
            }
            Ok(prod.scale(&q(sign)))
        })
        .collect::<Result<_>>()?;
    terms.iter().try_fold(DiffOp::zero(m.sig()), |acc, t| acc.add(t))
}

/// Compares the column expansion over every column order (`n ≤ 4`).
pub fn column_order_invariance(m: &ManinCandidate) -> Result<Report> {
    let n = m.size();
    if n > 4 {
        return Err(Error::Dimension(format!("column-order check is limited to n ≤ 4, got {n}")));
    }
    let mut report = Report::new("column_order_invariance", format!("{n}×{n} column determinant"));
    let reference = col_det(m)?;
    for (p, _) in permutations(n) {
        let order: Vec<usize> = p.iter().map(|x| x + 1).collect();
        let det = col_det_ordered(m, &order)?;
        report.trials += 1;
        if det != reference {
            report.fail(format!("order {order:?} gives {det}, identity order gives {reference}"));
        }
    }
    Ok(report)
}

/// `(M^adj)_{ij} = (−1)^{i+j} det^col(M without row j and column i)`.
pub fn adjugate(m: &ManinCandidate) -> Result<ManinCandidate> {
    let n = m.size();
    if n == 1 {
        return Ok(ManinCandidate::identity(m.sig(), 1));
    }
    let mut entries = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            let d = col_det(&m.minor(j, i)?)?;
            entries.push(if (i + j) % 2 == 0 { d } else { d.neg() });
        }
    }
    ManinCandidate::new(m.sig(), n, entries)
}

/// Coefficients `p_0, …, p_n` of the polynomial `t ↦ det^col(t·s + M)`
/// (`s = ±1`), recovered by exact interpolation at `t = 0, …, n`.
fn char_coefficients(m: &ManinCandidate, s: i64) -> Result<Vec<DiffOp>> {
    let n = m.size();
    let nodes: Vec<Q> = (0..=n as i64).map(q).collect();
    let values: Vec<DiffOp> = nodes.iter().map(|t| col_det(&m.shift(&(t * q(s))))).collect::<Result<_>>()?;
    let vandermonde: Vec<Vec<Q>> = nodes.iter().map(|t| (0..=n).map(|k| pow_q(t, k)).collect()).collect();
    let inv = linalg::inverse(&vandermonde).expect("distinct interpolation nodes");
    (0..=n)
        .map(|k| {
            let mut acc = DiffOp::zero(m.sig());
            for (w, v) in inv[k].iter().zip(&values) {
                if !w.is_zero() {
                    acc = acc.add(&v.scale(w))?;
                }
            }
            Ok(acc)
        })
        .collect()
}

fn pow_q(t: &Q, k: usize) -> Q {
    (0..k).fold(Q::one(), |acc, _| acc * t)
}

/// `σ_0, …, σ_n` with `det^col(t + M) = Σ_k σ_k t^{n−k}`.
pub fn sigma_coefficients(m: &ManinCandidate) -> Result<Vec<DiffOp>> {
    let mut c = char_coefficients(m, 1)?;
    c.reverse();
    Ok(c)
}

/// `τ_1, …, τ_n` with `τ_i = Tr M^i`.
pub fn power_traces(m: &ManinCandidate) -> Result<Vec<DiffOp>> {
    let mut out = Vec::with_capacity(m.size());
    let mut p = ManinCandidate::identity(m.sig(), m.size());
    for _ in 0..m.size() {
        p = p.matmul(m)?;
        out.push(p.trace());
    }
    Ok(out)
}

/// Left Cramer formula, Schur block formulas (scalar invertible block) and
/// Cayley–Hamilton (`∂`-free matrices only).
pub fn manin_property_suite(m: &ManinCandidate) -> Result<Report> {
    let n = m.size();
    let mut report = Report::new("manin_property_suite", format!("{n}×{n} Manin matrix"));
    let det = col_det(m)?;

    let adj = adjugate(m)?;
    let lhs = adj.matmul(m)?;
    let rhs = ManinCandidate::identity(m.sig(), n).left_scale(&det)?;
    report.trials += 1;
    for (idx, (a, b)) in lhs.entries().iter().zip(rhs.entries()).enumerate() {
        let residual = a.sub(b)?;
        if !residual.is_zero() {
            report.fail(format!("cramer residual at ({},{}): {residual}", idx / n + 1, idx % n + 1));
        }
    }

    for s in 1..n {
        let head: Vec<usize> = (1..=s).collect();
        let tail: Vec<usize> = ((s + 1)..=n).collect();
        let (a, b, c, d) = (m.block(&head, &head), m.block(&head, &tail), m.block(&tail, &head), m.block(&tail, &tail));
        for (label, pivot, far, top, bottom) in [("A", &a, &d, &c, &b), ("D", &d, &a, &b, &c)] {
            match pivot.as_constants().and_then(|k| linalg::inverse(&k)) {
                None => report.note(format!("schur split {s} via {label}: block not an invertible constant, skipped")),
                Some(inv) => {
                    let inv = constant_matrix(m.sig(), &inv);
                    let complement = far.add(&top.matmul(&inv)?.matmul(bottom)?.left_scale(&constant_op(m.sig(), &-Q::one()))?)?;
                    let product = col_det(pivot)?.mul(&col_det(&complement)?)?;
                    report.trials += 1;
                    let residual = det.sub(&product)?;
                    if !residual.is_zero() {
                        report.fail(format!("schur split {s} via {label} residual: {residual}"));
                    }
                }
            }
        }
    }

    if m.is_d_free() {
        // det^col(t − M) = (−1)^n det^col(−t + M), so the overall sign drops out.
        let coeffs = char_coefficients(m, -1)?;
        let mut total = ManinCandidate::zero(m.sig(), n);
        let mut power = ManinCandidate::identity(m.sig(), n);
        for c in &coeffs {
            total = total.add(&power.left_scale(c)?)?;
            power = power.matmul(m)?;
        }
        report.trials += 1;
        for (idx, e) in total.entries().iter().enumerate() {
            if !e.is_zero() {
                report.fail(format!("cayley-hamilton residual at ({},{}): {e}", idx / n + 1, idx % n + 1));
            }
        }
    } else {
        report.note("cayley-hamilton skipped: entries involve ∂_z");
    }
    Ok(report)
}

fn constant_matrix(sig: Signature, k: &[Vec<Q>]) -> ManinCandidate {
    let n = k.len();
    let entries = k.iter().flatten().map(|c| constant_op(sig, c)).collect();
    ManinCandidate { sig, n, entries }
}

/// Newton identities `(−1)^{k+1} k σ_k = Σ_{i<k} (−1)^i σ_i τ_{k−i}` for
/// `k = 1..n`, and `Tr (t+M)^adj = ∂_t det^col(t+M)` at `n+1` values of `t`.
pub fn newton_check(m: &ManinCandidate) -> Result<Report> {
    let n = m.size();
    let mut report = Report::new("newton_identities", format!("{n}×{n} Manin matrix"));
    let sigma = sigma_coefficients(m)?;
    let tau = power_traces(m)?;
    for k in 1..=n {
        let lhs = sigma[k].scale(&q(if k % 2 == 1 { k as i64 } else { -(k as i64) }));
        let mut rhs = DiffOp::zero(m.sig());
        for i in 0..k {
            let term = sigma[i].mul(&tau[k - i - 1])?;
            rhs = rhs.add(&if i % 2 == 0 { term } else { term.neg() })?;
        }
        report.trials += 1;
        if lhs != rhs {
            report.fail(format!("k={k}: lhs {lhs}, rhs {rhs}"));
        }
    }
    for t in 0..=n as i64 {
        let t = q(t);
        let adj = adjugate(&m.shift(&t))?;
        let mut derivative = DiffOp::zero(m.sig());
        for (k, s) in sigma.iter().enumerate().take(n) {
            let e = n - k;
            derivative = derivative.add(&s.scale(&(q(e as i64) * pow_q(&t, e - 1))))?;
        }
        report.trials += 1;
        if adj.trace() != derivative {
            report.fail(format!("adjugate trace identity fails at t={}", fmt_q(&t)));
        }
    }
    Ok(report)
}

/// `L^{[0]} = Id`, `L^{[i]} = L^{[i−1]} L − ∂_z L^{[i−1]}` for `i ≤ m`.
pub fn quantum_powers(l: &LaxMatrix, m: u32) -> Result<Vec<LaxMatrix>> {
    let mut out = vec![LaxMatrix::identity(l.sig())];
    for i in 1..=m as usize {
        let prev = &out[i - 1];
        let next = prev.matmul(l)?.sub(&prev.z_derivative())?.with_label(format!("{}^[{i}]", l.label()));
        out.push(next);
    }
    Ok(out)
}

/// Laurent data of `Tr L^{[m]}` for `m = 1..=max_power`.
pub fn quantum_trace_invariants(l: &LaxMatrix, max_power: u32) -> Result<InvariantFamily> {
    let mut members = Vec::new();
    for (m, p) in quantum_powers(l, max_power)?.iter().enumerate().skip(1) {
        members.extend(expand_trace(&p.trace(), l.poles(), l.label(), m as u32));
    }
    Ok(InvariantFamily { members })
}

/// Coefficients of `det^col(∂_z − L(z)) = Σ_i QH_i(z) ∂_z^i` and of
/// `Tr (∂_z − L(z))^k = Σ_j QTr^k_j(z) ∂_z^{k−j}`.
#[derive(Clone, Debug, PartialEq)]
pub struct TalalaevOutput {
    sig: Signature,
    poles: Vec<Q>,
    qh: Vec<LaxEntry>,
    qtr: Vec<Vec<LaxEntry>>,
}

impl TalalaevOutput {
    pub fn sig(&self) -> Signature {
        self.sig
    }

    /// Poles of the underlying Lax matrix.
    pub fn poles(&self) -> &[Q] {
        &self.poles
    }

    /// `QH_0, …, QH_r`.
    pub fn qh(&self) -> &[LaxEntry] {
        &self.qh
    }

    /// `QTr^k_j` for `k = 1..r`, `j = 0..k`.
    pub fn qtr(&self, k: usize, j: usize) -> &LaxEntry {
        &self.qtr[k - 1][j]
    }

    pub fn max_power(&self) -> usize {
        self.qtr.len()
    }

    /// Named generators evaluated at `z = point`: every non-constant
    /// `QH_i(point)` and `QTr^k_j(point)`.
    pub fn evaluate(&self, point: &Q) -> Result<Vec<(String, NCPoly)>> {
        let mut out = Vec::new();
        let p = fmt_q(point);
        for (i, e) in self.qh.iter().enumerate() {
            let v = eval_entry(e, point)?;
            if !v.is_scalar() {
                out.push((format!("QH_{i}({p})"), v));
            }
        }
        for (k, row) in self.qtr.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                let v = eval_entry(e, point)?;
                if !v.is_scalar() {
                    out.push((format!("QTr^{}_{j}({p})", k + 1), v));
                }
            }
        }
        Ok(out)
    }
}

impl Serialize for TalalaevOutput {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let qh: Vec<String> = self.qh.iter().map(|e| e.to_string()).collect();
        let qtr: Vec<Vec<String>> = self.qtr.iter().map(|row| row.iter().map(|e| e.to_string()).collect()).collect();
        let mut st = s.serialize_struct("TalalaevOutput", 3)?;
        st.serialize_field("signature", &self.sig.to_string())?;
        st.serialize_field("qh", &qh)?;
        st.serialize_field("qtr", &qtr)?;
        st.end()
    }
}

/// Talalaev generators of a quantum Lax matrix of Gaudin type.
pub fn talalaev_generators(l: &LaxMatrix) -> Result<TalalaevOutput> {
    l.sig().require(Mode::Quantum, "talalaev_generators")?;
    let m = ManinCandidate::d_minus_lax(l);
    let det = col_det(&m)?;
    let r = l.size();
    let qh = (0..=r as u32).map(|i| det.coeff(i)).collect();
    let mut qtr = Vec::with_capacity(r);
    let mut power = ManinCandidate::identity(l.sig(), r);
    for k in 1..=r as u32 {
        power = power.matmul(&m)?;
        let t = power.trace();
        qtr.push((0..=k).map(|j| t.coeff(k - j)).collect());
    }
    let poles = l.poles().iter().map(|(p, _)| p.clone()).collect();
    Ok(TalalaevOutput { sig: l.sig(), poles, qh, qtr })
}

/// Number of evaluation points after which pointwise vanishing of a
/// commutator of `z`-dependent generators implies identical vanishing.
pub fn evaluation_bound(sig: Signature) -> usize {
    sig.rank() * sig.sites() + 1
}

/// The first `count` non-pole integers `≥ start`.
pub fn evaluation_points(poles: &[Q], start: i64, count: usize) -> Vec<Q> {
    (start..).map(q).filter(|p| !poles.contains(p)).take(count).collect()
}

/// Pairwise brackets of a generator list: commutators in quantum mode,
/// Poisson brackets in classical mode.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CommutationMatrix {
    pub labels: Vec<String>,
    /// `true` where the bracket vanishes.
    pub zero: Vec<Vec<bool>>,
    pub report: Report,
}

/// Bracket appropriate to the signature's mode.
pub fn mode_bracket(p: &NCPoly, q: &NCPoly) -> Result<NCPoly> {
    match p.sig().mode() {
        Mode::Quantum => commutator(p, q),
        Mode::Classical => poisson_bracket(p, q),
    }
}

pub fn commutation_matrix(gens: &[NCPoly]) -> Result<Report> {
    let labelled: Vec<(String, NCPoly)> = gens.iter().enumerate().map(|(i, g)| (format!("g{}", i + 1), g.clone())).collect();
    Ok(commutation_matrix_labelled(&labelled)?.report)
}

/// Full antisymmetric bracket table; pairs are evaluated in parallel.
pub fn commutation_matrix_labelled(gens: &[(String, NCPoly)]) -> Result<CommutationMatrix> {
    if let Some((_, first)) = gens.first() {
        for (_, g) in gens {
            first.sig().check_same(&g.sig())?;
        }
    }
    let n = gens.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
    let brackets: Vec<NCPoly> = pairs.par_iter().map(|&(i, j)| mode_bracket(&gens[i].1, &gens[j].1)).collect::<Result<_>>()?;
    let spec = gens.first().map_or_else(|| "empty family".to_string(), |(_, g)| g.sig().to_string());
    let mut report = Report::new("commutation_matrix", spec).with_trials(pairs.len());
    let mut zero = vec![vec![true; n]; n];
    for (&(i, j), b) in pairs.iter().zip(&brackets) {
        if !b.is_zero() {
            zero[i][j] = false;
            zero[j][i] = false;
            report.fail(format!("[{}, {}] = {}", gens[i].0, gens[j].0, truncate(&b.to_string())));
        }
    }
    Ok(CommutationMatrix { labels: gens.iter().map(|(l, _)| l.clone()).collect(), zero, report })
}

fn truncate(s: &str) -> String {
    const LIMIT: usize = 400;
    if s.chars().count() <= LIMIT {
        s.to_string()
    } else {
        format!("{}… ({} chars)", s.chars().take(LIMIT).collect::<String>(), s.chars().count())
    }
}

/// All brackets among Talalaev generators evaluated at the given points,
/// including pairs taken at different points.
pub fn talalaev_commutation_check(out: &TalalaevOutput, points: &[Q]) -> Result<Report> {
    let mut gens = Vec::new();
    for p in points {
        gens.extend(out.evaluate(p)?);
    }
    let mut report = commutation_matrix_labelled(&gens)?.report;
    report.check = "talalaev_commutation".into();
    let bound = evaluation_bound(out.sig());
    report.note(format!(
        "{} evaluation points; {} points identify the z-dependence ({})",
        points.len(),
        bound,
        if points.len() >= bound { "identity in z established" } else { "pointwise check" }
    ));
    Ok(report)
}

/// Compares `Tr L^{[k]}` with `(−1)^k QTr^k_k` and records the result.
pub fn quantum_trace_relation(l: &LaxMatrix) -> Result<Report> {
    let out = talalaev_generators(l)?;
    let powers = quantum_powers(l, out.max_power() as u32)?;
    let mut report = Report::new("quantum_trace_relation", l.sig().to_string());
    for (k, power) in powers.iter().enumerate().skip(1) {
        let lhs = power.trace();
        let rhs = out.qtr(k, k).scale(&q(if k % 2 == 0 { 1 } else { -1 }));
        report.trials += 1;
        if lhs == rhs {
            report.note(format!("k={k}: Tr L^[k] = (−1)^k QTr^k_k"));
        } else {
            report.note(format!("k={k}: Tr L^[k] − (−1)^k QTr^k_k = {}", truncate(&(&lhs - &rhs).to_string())));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lax::gaudin_lax;
    use crate::ncalgebra::classical_limit;
    use crate::ratfun::RatFun;

    fn gen(sig: Signature, site: usize, a: usize, b: usize) -> NCPoly {
        NCPoly::generator(sig, site, a, b).unwrap()
    }

    fn op(p: &NCPoly) -> DiffOp {
        DiffOp::from_entry(lift(p))
    }

    fn z(sig: Signature) -> DiffOp {
        DiffOp::from_ratfun(sig, RatFun::z())
    }

    /// `[[e11, e12], [e22, −e12]]`: columns commute and
    /// `[e11, −e12] = [e22, e12] = −e12`.
    fn d_free_manin(sig: Signature) -> ManinCandidate {
        let e = |a, b| gen(sig, 1, a, b);
        ManinCandidate::from_scalars(sig, 2, &[e(1, 1), e(1, 2), e(2, 2), -&e(1, 2)]).unwrap()
    }

    #[test]
    fn commutative_two_by_two_determinant() {
        let sig = Signature::classical(2, 1).unwrap();
        let m = ManinCandidate::from_scalars(sig, 2, &[gen(sig, 1, 1, 1), gen(sig, 1, 1, 2), gen(sig, 1, 2, 1), gen(sig, 1, 2, 2)])
            .unwrap();
        assert!(is_manin(&m).unwrap().manin);
        let expected = &(&gen(sig, 1, 1, 1) * &gen(sig, 1, 2, 2)) - &(&gen(sig, 1, 2, 1) * &gen(sig, 1, 1, 2));
        assert_eq!(col_det(&m).unwrap(), op(&expected));
    }

    #[test]
    fn d_minus_gaudin_lax_is_manin() {
        for (r, n) in [(2, 1), (2, 2), (3, 1)] {
            let sig = Signature::quantum(r, n).unwrap();
            let l = gaudin_lax(sig, &crate::lax::default_poles(n)).unwrap();
            let m = ManinCandidate::d_minus_lax(&l);
            assert_eq!(is_manin(&m).unwrap(), ManinVerdict { manin: true, witness: None }, "r={r}, N={n}");
            assert!(column_order_invariance(&m).unwrap().pass);
        }
    }

    #[test]
    fn transposed_convention_is_not_manin() {
        let sig = Signature::quantum(2, 1).unwrap();
        let l = gaudin_lax(sig, &[q(0)]).unwrap();
        let m = ManinCandidate::d_minus_lax(&l);
        let entries: Vec<DiffOp> = (1..=2).flat_map(|i| (1..=2).map(move |j| (i, j))).map(|(i, j)| m.entry(j, i).clone()).collect();
        let transposed = ManinCandidate::new(sig, 2, entries).unwrap();
        assert!(!is_manin(&transposed).unwrap().manin);
    }

    #[test]
    fn weyl_pair_is_not_manin() {
        let sig = Signature::quantum(1, 1).unwrap();
        let one = DiffOp::one(sig);
        let m = ManinCandidate::new(sig, 2, vec![z(sig), DiffOp::d(sig), one, z(sig)]).unwrap();
        let verdict = is_manin(&m).unwrap();
        assert!(!verdict.manin);
        match verdict.witness.unwrap() {
            ManinWitness::Column { column, rows, commutator } => {
                assert_eq!((column, rows), (2, (1, 2)));
                assert_eq!(commutator, "[1]");
            }
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn cross_violation_breaks_column_order_invariance() {
        let sig = Signature::quantum(1, 1).unwrap();
        let zero = DiffOp::zero(sig);
        let m = ManinCandidate::new(sig, 2, vec![DiffOp::d(sig), zero.clone(), zero, z(sig)]).unwrap();
        assert!(matches!(is_manin(&m).unwrap().witness, Some(ManinWitness::Cross { .. })));
        let report = column_order_invariance(&m).unwrap();
        assert!(!report.pass);
        assert_eq!(report.witnesses.len(), 1);
    }

    #[test]
    fn d_free_manin_property_suite() {
        let sig = Signature::quantum(2, 1).unwrap();
        for shift in [0, 1, 3] {
            let m = d_free_manin(sig).shift(&q(shift));
            assert!(is_manin(&m).unwrap().manin);
            let report = manin_property_suite(&m).unwrap();
            assert!(report.pass, "{report}");
            assert!(newton_check(&m).unwrap().pass);
        }
    }

    #[test]
    fn schur_with_scalar_block() {
        let sig = Signature::quantum(2, 1).unwrap();
        let centre = &gen(sig, 1, 1, 1) + &gen(sig, 1, 2, 2);
        let two = NCPoly::constant(sig, q(2));
        let m = ManinCandidate::from_scalars(sig, 2, &[two, centre, gen(sig, 1, 1, 2), gen(sig, 1, 2, 1)]).unwrap();
        assert!(is_manin(&m).unwrap().manin);
        let report = manin_property_suite(&m).unwrap();
        assert!(report.pass, "{report}");
        assert_eq!(report.trials, 3);
    }

    #[test]
    fn newton_for_diagonal_numbers() {
        let sig = Signature::quantum(1, 1).unwrap();
        let c = |x| NCPoly::constant(sig, q(x));
        let m = ManinCandidate::from_scalars(sig, 2, &[c(2), c(0), c(0), c(3)]).unwrap();
        let sigma = sigma_coefficients(&m).unwrap();
        let tau = power_traces(&m).unwrap();
        let value = |d: &DiffOp| as_constant(d).unwrap();
        assert_eq!(sigma.iter().map(value).collect::<Vec<_>>(), vec![q(1), q(5), q(6)]);
        assert_eq!(tau.iter().map(value).collect::<Vec<_>>(), vec![q(5), q(13)]);
        assert!(newton_check(&m).unwrap().pass);
    }

    #[test]
    fn newton_for_one_site_lax_operator() {
        for r in [2, 3] {
            let sig = Signature::quantum(r, 1).unwrap();
            let m = ManinCandidate::d_minus_lax(&gaudin_lax(sig, &[q(0)]).unwrap());
            let report = newton_check(&m).unwrap();
            assert!(report.pass, "{report}");
            assert!(manin_property_suite(&m).unwrap().pass);
        }
    }

    #[test]
    fn scalar_quantum_powers() {
        let sig = Signature::quantum(1, 1).unwrap();
        let entry = LaxEntry::constant(sig, RatFun::pole(&q(0), 1));
        let l = LaxMatrix::from_entries("L", sig, vec![entry], vec![(q(0), 1)]).unwrap();
        let powers = quantum_powers(&l, 2).unwrap();
        assert_eq!(powers[1].entry(1, 1), l.entry(1, 1));
        let two_over_z2 = &RatFun::pole(&q(0), 2) * &RatFun::constant(q(2));
        assert_eq!(powers[2].entry(1, 1), &LaxEntry::constant(sig, two_over_z2));
    }

    #[test]
    fn rank_one_talalaev() {
        let sig = Signature::quantum(1, 2).unwrap();
        let l = gaudin_lax(sig, &[q(0), q(1)]).unwrap();
        let out = talalaev_generators(&l).unwrap();
        assert_eq!(out.qh().len(), 2);
        assert_eq!(&out.qh()[0], &-l.entry(1, 1));
        assert_eq!(out.qh()[1], LaxEntry::one(sig));
    }

    #[test]
    fn talalaev_generators_commute_for_two_sites() {
        let sig = Signature::quantum(2, 2).unwrap();
        let l = gaudin_lax(sig, &[q(0), q(1)]).unwrap();
        let out = talalaev_generators(&l).unwrap();
        assert_eq!(out.qh()[2], LaxEntry::one(sig));
        let report = talalaev_commutation_check(&out, &[q(5), q(7)]).unwrap();
        assert!(report.pass, "{report}");
    }

    #[test]
    fn qh0_symbol_is_classical_determinant() {
        let sig = Signature::quantum(2, 2).unwrap();
        let l = gaudin_lax(sig, &[q(0), q(1)]).unwrap();
        let out = talalaev_generators(&l).unwrap();
        let u = q(5);
        let qh0 = eval_entry(&out.qh()[0], &u).unwrap();
        let csig = sig.with_mode(Mode::Classical);
        let lc = gaudin_lax(csig, &[q(0), q(1)]).unwrap().eval(&u).unwrap();
        let det = &(&lc[0] * &lc[3]) - &(&lc[2] * &lc[1]);
        assert_eq!(classical_limit(&qh0), det);
    }

    #[test]
    fn non_commuting_pair_is_reported() {
        let sig = Signature::quantum(2, 1).unwrap();
        let report = commutation_matrix(&[gen(sig, 1, 1, 1), gen(sig, 1, 1, 2)]).unwrap();
        assert!(!report.pass);
        assert_eq!(report.witnesses, vec!["[g1, g2] = 1 * e[1,2]@1".to_string()]);
        assert!(commutation_matrix(&[gen(sig, 1, 1, 1)]).unwrap().pass);
    }

    #[test]
    fn permutation_signs() {
        let perms = permutations(3);
        assert_eq!(perms.len(), 6);
        assert_eq!(perms.iter().map(|(_, s)| s).sum::<i64>(), 0);
        assert_eq!(perms[0], (vec![0, 1, 2], 1));
    }
}
