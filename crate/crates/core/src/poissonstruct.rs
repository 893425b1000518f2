//! Poisson structures on `gl(r)^{*⊗N}` presented by block operators.
//!
//! A [`PoissonOperator`] has blocks `P_ij = Σ_k c_ijk X_k` acting by
//! `v ↦ [P_ij, v]`; the induced bracket is
//! `{F, G} = Σ_{i,j} Tr(∇F_i [P_ij, ∇G_j])`, where `(∇F_i)_{ba} = ∂F/∂x_ab^{(i)}`.
//! With `P_ii = X_i` and no off-diagonal blocks this is the product
//! Lie–Poisson bracket.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gluing::{elementary_glue, LimitFamily};
use crate::lax::{check_distinct, InvariantFamily, LaxMatrix};
use crate::ncalgebra::{poisson_bracket, Gen, Mode, NCPoly, Signature};
use crate::rational::{fmt_q, q, Q};
use crate::report::Report;
use crate::sampling::{random_gen, random_poly, seeded, SeededRng};

/// `θ(n) = 1` for `n > 0` and `0` otherwise.
pub fn theta(n: i64) -> i64 {
    i64::from(n > 0)
}

/// `r_ijk = (k−1)δ_ij δ_jk − θ(i−k)δ_ij + θ(j−i)δ_ik + θ(i−j)δ_jk`.
pub fn rijk(i: usize, j: usize, k: usize) -> i64 {
    let (i, j, k) = (i as i64, j as i64, k as i64);
    let d = |a: i64, b: i64| i64::from(a == b);
    (k - 1) * d(i, j) * d(j, k) - theta(i - k) * d(i, j) + theta(j - i) * d(i, k) + theta(i - j) * d(j, k)
}

/// `N × N` block operator; block `(i, j)` maps site `k` to its coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonOperator {
    label: String,
    sites: usize,
    blocks: Vec<BTreeMap<usize, Q>>,
}

impl PoissonOperator {
    pub fn zero(label: impl Into<String>, sites: usize) -> Self {
        Self { label: label.into(), sites, blocks: vec![BTreeMap::new(); sites * sites] }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    /// Block `(i, j)`, 1-based.
    pub fn block(&self, i: usize, j: usize) -> &BTreeMap<usize, Q> {
        &self.blocks[(i - 1) * self.sites + (j - 1)]
    }

    /// Adds `c·ad(X_k)` to block `(i, j)`.
    pub fn add(&mut self, i: usize, j: usize, k: usize, c: Q) {
        let block = &mut self.blocks[(i - 1) * self.sites + (j - 1)];
        let next = block.remove(&k).unwrap_or_else(Q::zero) + c;
        if !next.is_zero() {
            block.insert(k, next);
        }
    }

    /// Block-diagonal `P_ii = X_i`.
    pub fn standard(sites: usize) -> Self {
        let mut p = Self::zero("standard", sites);
        for i in 1..=sites {
            p.add(i, i, i, Q::one());
        }
        p
    }

    /// `P_ij = Σ_k r_ijk X_k`.
    pub fn limit_rijk(sites: usize) -> Self {
        let mut p = Self::zero("limit", sites);
        for i in 1..=sites {
            for j in 1..=sites {
                for k in 1..=sites {
                    p.add(i, j, k, q(rijk(i, j, k)));
                }
            }
        }
        p
    }

    /// The four-site limit operator written out block by block.
    pub fn explicit_limit_four_site() -> Self {
        let rows: [[&[(usize, i64)]; 4]; 4] = [
            [&[], &[(1, 1)], &[(1, 1)], &[(1, 1)]],
            [&[(1, 1)], &[(2, 1), (1, -1)], &[(2, 1)], &[(2, 1)]],
            [&[(1, 1)], &[(2, 1)], &[(3, 2), (2, -1), (1, -1)], &[(3, 1)]],
            [&[(1, 1)], &[(2, 1)], &[(3, 1)], &[(4, 3), (1, -1), (2, -1), (3, -1)]],
        ];
        let mut p = Self::zero("limit (explicit)", 4);
        for (i, row) in rows.iter().enumerate() {
            for (j, terms) in row.iter().enumerate() {
                for &(k, c) in *terms {
                    p.add(i + 1, j + 1, k, q(c));
                }
            }
        }
        p
    }

    /// `λ·self + μ·other`.
    pub fn combine(&self, lambda: &Q, other: &Self, mu: &Q) -> Result<Self> {
        if self.sites != other.sites {
            return Err(Error::Dimension(format!("operators on {} and {} sites", self.sites, other.sites)));
        }
        let mut p = Self::zero(format!("{}·{} + {}·{}", fmt_q(lambda), self.label, fmt_q(mu), other.label), self.sites);
        for i in 1..=self.sites {
            for j in 1..=self.sites {
                for (k, c) in self.block(i, j) {
                    p.add(i, j, *k, c * lambda);
                }
                for (k, c) in other.block(i, j) {
                    p.add(i, j, *k, c * mu);
                }
            }
        }
        Ok(p)
    }

    /// Copy with block `(i, j)` negated (and `(j, i)` left alone): a
    /// deliberately broken operator for control runs.
    pub fn corrupted(&self, i: usize, j: usize) -> Self {
        let mut p = self.clone();
        p.label = format!("{} with block ({i},{j}) negated", self.label);
        let idx = (i - 1) * self.sites + (j - 1);
        p.blocks[idx] = p.blocks[idx].iter().map(|(k, c)| (*k, -c)).collect();
        p
    }

    /// `P_ij = P_ji` for every pair, equivalent to antisymmetry of the bracket.
    pub fn is_symmetric(&self) -> bool {
        (1..=self.sites).all(|i| (1..=self.sites).all(|j| self.block(i, j) == self.block(j, i)))
    }

    /// `ad(c_1 X_1 + …)` rendering of one block.
    pub fn render_block(&self, i: usize, j: usize) -> String {
        let block = self.block(i, j);
        if block.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (n, (k, c)) in block.iter().enumerate() {
            let neg = c < &Q::zero();
            let abs = if neg { -c } else { c.clone() };
            match (n, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            if !abs.is_one() {
                s.push_str(&format!("{}*", fmt_q(&abs)));
            }
            s.push_str(&format!("X_{k}"));
        }
        format!("ad({s})")
    }
}

impl fmt::Display for PoissonOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} ({} sites)", self.label, self.sites)?;
        for i in 1..=self.sites {
            let row: Vec<String> = (1..=self.sites).map(|j| self.render_block(i, j)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for PoissonOperator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let rows: Vec<Vec<String>> = (1..=self.sites).map(|i| (1..=self.sites).map(|j| self.render_block(i, j)).collect()).collect();
        let mut st = s.serialize_struct("PoissonOperator", 3)?;
        st.serialize_field("label", &self.label)?;
        st.serialize_field("sites", &self.sites)?;
        st.serialize_field("blocks", &rows)?;
        st.end()
    }
}

/// The five-site operator for a three-point collision, with parameters
/// `z_1, …, z_5` (the collision point is `w = z_3`).
pub fn fivesite_operator(z: &[Q]) -> Result<PoissonOperator> {
    if z.len() != 5 {
        return Err(Error::WrongPointCount { expected: 5, got: z.len() });
    }
    check_distinct(z)?;
    let d = |i: usize, j: usize| &z[i - 1] - &z[j - 1];
    let (z12, z13, z23, z34, z35, z45) = (d(1, 2), d(1, 3), d(2, 3), d(3, 4), d(3, 5), d(4, 5));
    let a34 = &z13 * &z34 / &z45;
    let a35 = &z13 * &z35 / &z45;
    let mut p = PoissonOperator::zero("five-site", 5);

    p.add(1, 2, 1, z23.clone());
    p.add(2, 1, 1, z23.clone());

    // P_22 = z23 (X2 − X1) + z12 (X3 + X4 + X5)
    p.add(2, 2, 2, z23.clone());
    p.add(2, 2, 1, -z23.clone());
    for k in 3..=5 {
        p.add(2, 2, k, z12.clone());
    }
    for k in 3..=5 {
        p.add(2, k, k, -z12.clone());
        p.add(k, 2, k, -z12.clone());
    }

    p.add(3, 4, 3, -a34.clone());
    p.add(4, 3, 3, -a34.clone());
    p.add(3, 5, 3, a35.clone());
    p.add(5, 3, 3, a35.clone());

    // P_44 = (z13 z34/z45) (X3 − ((z35 − z45)/z45) X4 − (z13 z34/z45) X5)
    p.add(4, 4, 3, a34.clone());
    p.add(4, 4, 4, -&a34 * (&z35 - &z45) / &z45);
    p.add(4, 4, 5, -&a34 * &a34);

    // P_45 = (z13/z45²)(z35² X4 + z34² X5)
    let c45 = &z13 / (&z45 * &z45);
    for (i, j) in [(4, 5), (5, 4)] {
        p.add(i, j, 4, &c45 * &z35 * &z35);
        p.add(i, j, 5, &c45 * &z34 * &z34);
    }

    // P_55 = −(z13 z35/z45)(X3 + (z35/z45) X4 + ((z34 − z45)/z45) X5)
    p.add(5, 5, 3, -a35.clone());
    p.add(5, 5, 4, -&a35 * &z35 / &z45);
    p.add(5, 5, 5, -&a35 * (&z34 - &z45) / &z45);
    Ok(p)
}

/// Which bracket to evaluate.
#[derive(Clone, Debug, PartialEq)]
pub enum BracketSpec {
    Standard,
    LimitRijk,
    Operator(PoissonOperator),
    Pencil(Q, Box<BracketSpec>, Q, Box<BracketSpec>),
}

impl BracketSpec {
    pub fn pencil(lambda: Q, first: BracketSpec, mu: Q, second: BracketSpec) -> Self {
        Self::Pencil(lambda, Box::new(first), mu, Box::new(second))
    }

    pub fn name(&self) -> String {
        match self {
            BracketSpec::Standard => "standard".into(),
            BracketSpec::LimitRijk => "limit".into(),
            BracketSpec::Operator(p) => p.label().to_string(),
            BracketSpec::Pencil(l, a, m, b) => format!("{}·{} + {}·{}", fmt_q(l), a.name(), fmt_q(m), b.name()),
        }
    }

    /// The operator presenting this bracket on `sites` sites.
    pub fn operator(&self, sites: usize) -> Result<PoissonOperator> {
        match self {
            BracketSpec::Standard => Ok(PoissonOperator::standard(sites)),
            BracketSpec::LimitRijk => Ok(PoissonOperator::limit_rijk(sites)),
            BracketSpec::Operator(p) if p.sites() == sites => Ok(p.clone()),
            BracketSpec::Operator(p) => {
                Err(Error::Dimension(format!("operator `{}` acts on {} sites, not {sites}", p.label(), p.sites())))
            }
            BracketSpec::Pencil(l, a, m, b) => a.operator(sites)?.combine(l, &b.operator(sites)?, m),
        }
    }
}

/// Gradient blocks: `grads[i][(b, a)] = ∂F/∂x_ab^{(i+1)}`, row-major `r × r`.
fn gradient_blocks(f: &NCPoly) -> Result<Vec<Vec<NCPoly>>> {
    let sig = f.sig();
    let r = sig.rank();
    let mut out = vec![vec![NCPoly::zero(sig); r * r]; sig.sites()];
    for g in f.support() {
        let d = f.partial(g)?;
        out[g.site() - 1][(g.col() - 1) * r + (g.row() - 1)] = d;
    }
    Ok(out)
}

fn mat_mul(a: &[NCPoly], b: &[NCPoly], r: usize, sig: Signature) -> Vec<NCPoly> {
    let mut out = vec![NCPoly::zero(sig); r * r];
    for i in 0..r {
        for k in 0..r {
            if a[i * r + k].is_zero() {
                continue;
            }
            for j in 0..r {
                if !b[k * r + j].is_zero() {
                    out[i * r + j] = &out[i * r + j] + &(&a[i * r + k] * &b[k * r + j]);
                }
            }
        }
    }
    out
}

/// `Σ_{i,j} Tr(∇F_i [P_ij, ∇G_j])` for an operator.
pub fn operator_bracket(op: &PoissonOperator, f: &NCPoly, g: &NCPoly) -> Result<NCPoly> {
    let sig = f.sig();
    sig.require(Mode::Classical, "bracket_eval")?;
    sig.check_same(&g.sig())?;
    if op.sites() != sig.sites() {
        return Err(Error::Dimension(format!("operator on {} sites applied in {sig}", op.sites())));
    }
    let r = sig.rank();
    let df = gradient_blocks(f)?;
    let dg = gradient_blocks(g)?;
    let nonzero = |m: &[NCPoly]| m.iter().any(|p| !p.is_zero());
    let mut out = NCPoly::zero(sig);
    for i in 1..=sig.sites() {
        if !nonzero(&df[i - 1]) {
            continue;
        }
        for j in 1..=sig.sites() {
            let block = op.block(i, j);
            if block.is_empty() || !nonzero(&dg[j - 1]) {
                continue;
            }
            // Tr(A [P, B]) = Σ_ab P_ab (BA − AB)_ba
            let ba = mat_mul(&dg[j - 1], &df[i - 1], r, sig);
            let ab = mat_mul(&df[i - 1], &dg[j - 1], r, sig);
            for a in 1..=r {
                for b in 1..=r {
                    let c = &ba[(b - 1) * r + (a - 1)] - &ab[(b - 1) * r + (a - 1)];
                    if c.is_zero() {
                        continue;
                    }
                    let mut p = NCPoly::zero(sig);
                    for (k, coeff) in block {
                        p = &p + &NCPoly::generator(sig, *k, a, b)?.scale(coeff);
                    }
                    out = &out + &(&p * &c);
                }
            }
        }
    }
    Ok(out)
}

/// `{F, G}` under the given bracket. Classical mode only.
pub fn bracket_eval(spec: &BracketSpec, f: &NCPoly, g: &NCPoly, sig: Signature) -> Result<NCPoly> {
    sig.require(Mode::Classical, "bracket_eval")?;
    sig.check_same(&f.sig())?;
    sig.check_same(&g.sig())?;
    match spec {
        BracketSpec::Standard => poisson_bracket(f, g),
        BracketSpec::Pencil(l, a, m, b) => {
            Ok(&bracket_eval(a, f, g, sig)?.scale(l) + &bracket_eval(b, f, g, sig)?.scale(m))
        }
        other => operator_bracket(&other.operator(sig.sites())?, f, g),
    }
}

fn cyclic_sum(spec: &BracketSpec, f: &NCPoly, g: &NCPoly, h: &NCPoly, sig: Signature) -> Result<NCPoly> {
    let a = bracket_eval(spec, f, &bracket_eval(spec, g, h, sig)?, sig)?;
    let b = bracket_eval(spec, g, &bracket_eval(spec, h, f, sig)?, sig)?;
    let c = bracket_eval(spec, h, &bracket_eval(spec, f, g, sig)?, sig)?;
    Ok(&(&a + &b) + &c)
}

fn random_triple(sig: Signature, rng: &mut SeededRng, coordinates: bool) -> [NCPoly; 3] {
    if coordinates {
        let mut pick = || gen_poly(sig, random_gen(sig, rng));
        [pick(), pick(), pick()]
    } else {
        let degree = rng.gen_range(1..=2);
        [random_poly(sig, rng, degree, 3), random_poly(sig, rng, 2, 3), random_poly(sig, rng, 2, 2)]
    }
}

fn gen_poly(sig: Signature, g: Gen) -> NCPoly {
    NCPoly::generator(sig, g.site(), g.row(), g.col()).expect("sampled generator is in range")
}

/// Antisymmetry and the Jacobi identity on seeded random triples:
/// even trials use coordinate functions, odd trials random polynomials
/// of degree ≤ 2.
pub fn jacobi_check(spec: &BracketSpec, sig: Signature, trials: usize, seed: u64) -> Result<Report> {
    sig.require(Mode::Classical, "jacobi_check")?;
    let mut report = Report::new("jacobi", format!("{} on {sig}", spec.name())).with_trials(trials).with_seed(seed);
    let mut rng = seeded(seed);
    for t in 0..trials {
        let [f, g, h] = random_triple(sig, &mut rng, t % 2 == 0);
        let fg = bracket_eval(spec, &f, &g, sig)?;
        let gf = bracket_eval(spec, &g, &f, sig)?;
        let asym = &fg + &gf;
        if !asym.is_zero() {
            report.fail(format!("trial {t}: {{F,G}} + {{G,F}} = {asym} for F = {f}, G = {g}"));
            continue;
        }
        let jac = cyclic_sum(spec, &f, &g, &h, sig)?;
        if !jac.is_zero() {
            report.fail(format!("trial {t}: Jacobi sum {jac} for F = {f}, G = {g}, H = {h}"));
        }
    }
    Ok(report)
}

/// Antisymmetry and Jacobi on every triple of coordinate functions. For a
/// linear bracket this is equivalent to the bracket being Poisson.
pub fn jacobi_exhaustive(spec: &BracketSpec, sig: Signature) -> Result<Report> {
    sig.require(Mode::Classical, "jacobi_exhaustive")?;
    let gens: Vec<NCPoly> = sig.generators().into_iter().map(|g| gen_poly(sig, g)).collect();
    let mut report = Report::new("jacobi_exhaustive", format!("{} on {sig}", spec.name()));
    let n = gens.len();
    let mut table = vec![vec![NCPoly::zero(sig); n]; n];
    for a in 0..n {
        for b in 0..n {
            table[a][b] = bracket_eval(spec, &gens[a], &gens[b], sig)?;
        }
    }
    for a in 0..n {
        for b in a..n {
            report.trials += 1;
            let asym = &table[a][b] + &table[b][a];
            if !asym.is_zero() {
                report.fail(format!("{{{}, {}}} is not antisymmetric: sum {asym}", gens[a], gens[b]));
            }
        }
    }
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                report.trials += 1;
                let jac = cyclic_sum(spec, &gens[a], &gens[b], &gens[c], sig)?;
                if !jac.is_zero() {
                    report.fail(format!("Jacobi fails on ({}, {}, {}): {jac}", gens[a], gens[b], gens[c]));
                }
            }
        }
    }
    Ok(report)
}

/// Jacobi for `first + second` and `first − second`.
pub fn compatibility_check(first: &BracketSpec, second: &BracketSpec, sig: Signature, trials: usize, seed: u64) -> Result<Report> {
    let plus = BracketSpec::pencil(Q::one(), first.clone(), Q::one(), second.clone());
    let minus = BracketSpec::pencil(Q::one(), first.clone(), -Q::one(), second.clone());
    let mut report = Report::new("compatibility", format!("({}, {}) on {sig}", first.name(), second.name())).with_seed(seed);
    report.absorb(&jacobi_check(&plus, sig, trials, seed)?);
    report.absorb(&jacobi_check(&minus, sig, trials, seed.wrapping_add(1))?);
    Ok(report)
}

/// All pairwise brackets of the family members under `spec`.
pub fn family_commutes_under(spec: &BracketSpec, family: &InvariantFamily) -> Result<Report> {
    let Some(first) = family.members.first() else {
        return Ok(Report::new("family_commutes", format!("{} on empty family", spec.name())));
    };
    let sig = first.poly.sig();
    let n = family.len();
    let mut report = Report::new("family_commutes", format!("{} on {sig}", spec.name())).with_trials(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            let (a, b) = (&family.members[i], &family.members[j]);
            let br = bracket_eval(spec, &a.poly, &b.poly, sig)?;
            if !br.is_zero() {
                report.fail(format!("{{[{}], [{}]}} = {br}", a.provenance, b.provenance));
            }
        }
    }
    Ok(report)
}

/// Block-by-block comparison of two operators.
pub fn operator_identity(left: &PoissonOperator, right: &PoissonOperator) -> Report {
    let mut report = Report::new("operator_identity", format!("{} vs {}", left.label(), right.label()));
    if left.sites() != right.sites() {
        report.fail(format!("{} sites vs {} sites", left.sites(), right.sites()));
        return report;
    }
    for i in 1..=left.sites() {
        for j in 1..=left.sites() {
            report.trials += 1;
            if left.block(i, j) != right.block(i, j) {
                report.fail(format!("block ({i},{j}): {} vs {}", left.render_block(i, j), right.render_block(i, j)));
            }
        }
    }
    report
}

/// The explicit pair of Lax matrices that accompanies the five-site
/// operator: `L_1 = X_3/(z−z_3) + X_4/(z−z_4) + X_5/(z−z_4)` and
/// `L_2 = X_1/(z−z_1) + X_2/(z−z_2) + (X_1+X_2+X_3)/(z−z_3)`.
pub fn fivesite_explicit_lax(sig: Signature, z: &[Q]) -> Result<LimitFamily> {
    if z.len() != 5 || sig.sites() != 5 {
        return Err(Error::WrongPointCount { expected: 5, got: z.len().min(sig.sites()) });
    }
    let l1 = LaxMatrix::gaudin_type("L_1 (explicit)", sig, &[(z[2].clone(), vec![3]), (z[3].clone(), vec![4, 5])])?;
    let l2 = LaxMatrix::gaudin_type(
        "L_2 (explicit)",
        sig,
        &[(z[0].clone(), vec![1]), (z[1].clone(), vec![2]), (z[2].clone(), vec![1, 2, 3])],
    )?;
    Ok(LimitFamily { pattern: None, matrices: vec![l1, l2] })
}

/// Non-gating findings for the five-site operator at parameters `z`:
/// coordinate Jacobi, and commutativity of the spectral invariants of the
/// explicit matrices and of the elementary glue collapsing sites 3, 4, 5 at
/// `w = z_3`.
pub fn fivesite_diagnostics(sig: Signature, z: &[Q]) -> Result<Vec<Report>> {
    sig.require(Mode::Classical, "fivesite_diagnostics")?;
    let spec = BracketSpec::Operator(fivesite_operator(z)?);
    let mut out = vec![jacobi_exhaustive(&spec, sig)?];
    let explicit = fivesite_explicit_lax(sig, z)?.classical_invariants(sig.rank() as u32)?;
    let mut r = family_commutes_under(&spec, &explicit)?;
    r.check = "fivesite_explicit_family".into();
    out.push(r);
    let glued = elementary_glue(sig, &z[..2], &z[2..], &z[2])?.classical_invariants(sig.rank() as u32)?;
    let mut r = family_commutes_under(&spec, &glued)?;
    r.check = "fivesite_glued_family".into();
    out.push(r);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(sig: Signature, s: usize, a: usize, b: usize) -> NCPoly {
        NCPoly::generator(sig, s, a, b).unwrap()
    }

    #[test]
    fn rijk_matches_explicit_four_site_operator() {
        let report = operator_identity(&PoissonOperator::limit_rijk(4), &PoissonOperator::explicit_limit_four_site());
        assert!(report.pass, "{report}");
        assert_eq!(PoissonOperator::limit_rijk(4).render_block(3, 3), "ad(-X_1 - X_2 + 2*X_3)");
    }

    #[test]
    fn standard_operator_reproduces_lie_poisson() {
        let sig = Signature::classical(2, 2).unwrap();
        let op = BracketSpec::Operator(PoissonOperator::standard(2));
        let f = x(sig, 1, 1, 2);
        let g = x(sig, 1, 2, 1);
        let expected = &x(sig, 1, 1, 1) - &x(sig, 1, 2, 2);
        assert_eq!(bracket_eval(&op, &f, &g, sig).unwrap(), expected);
        assert_eq!(bracket_eval(&BracketSpec::Standard, &f, &g, sig).unwrap(), expected);
    }

    #[test]
    fn operators_are_symmetric() {
        assert!(PoissonOperator::limit_rijk(5).is_symmetric());
        let z: Vec<Q> = [0, 1, 3, 7, 12].into_iter().map(q).collect();
        assert!(fivesite_operator(&z).unwrap().is_symmetric());
        assert!(!PoissonOperator::limit_rijk(3).corrupted(1, 2).is_symmetric());
    }

    #[test]
    fn fivesite_rejects_coincident_parameters() {
        let z: Vec<Q> = [0, 1, 1, 7, 12].into_iter().map(q).collect();
        assert!(fivesite_operator(&z).is_err());
        assert!(fivesite_operator(&z[..4]).is_err());
    }

    #[test]
    fn quantum_mode_is_rejected() {
        let sig = Signature::quantum(2, 1).unwrap();
        let f = x(sig, 1, 1, 2);
        assert!(bracket_eval(&BracketSpec::LimitRijk, &f, &f, sig).is_err());
    }

    #[test]
    fn corrupted_limit_fails_jacobi_check() {
        let sig = Signature::classical(2, 3).unwrap();
        let bad = BracketSpec::Operator(PoissonOperator::limit_rijk(3).corrupted(1, 2));
        assert!(!jacobi_exhaustive(&bad, sig).unwrap().pass);
    }

    #[test]
    fn limit_bracket_vanishes_on_first_site_functions() {
        let sig = Signature::classical(2, 4).unwrap();
        let f = x(sig, 1, 1, 2);
        let g = &x(sig, 1, 2, 1) * &x(sig, 1, 1, 1);
        assert!(bracket_eval(&BracketSpec::LimitRijk, &f, &g, sig).unwrap().is_zero());
    }

    #[test]
    fn fivesite_explicit_blocks() {
        let z: Vec<Q> = [0, 1, 3, 7, 12].into_iter().map(q).collect();
        let p = fivesite_operator(&z).unwrap();
        assert_eq!(p.render_block(1, 2), "ad(-2*X_1)");
        assert!(p.block(1, 1).is_empty() && (3..=5).all(|j| p.block(1, j).is_empty()));
        // z13 = -3, z45 = -5, z35 = -9, z34 = -4: P_45 = (-3/25)(81 X_4 + 16 X_5)
        assert_eq!(p.render_block(4, 5), "ad(-243/25*X_4 - 48/25*X_5)");
    }
}
