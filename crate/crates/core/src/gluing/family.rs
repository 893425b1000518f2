//! Limit Lax matrices of a gluing pattern and the classical checks on the
//! commutative families they generate.

use num_traits::Zero;
use serde::Serialize;

use super::pattern::{GluingPattern, PatternNode};
use crate::error::{Error, Result};
use crate::lax::{physical_hamiltonian, spectral_invariants, Invariant, InvariantFamily, LaxMatrix};
use crate::linalg;
use crate::manin::{commutation_matrix_labelled, talalaev_generators, CommutationMatrix};
use crate::ncalgebra::{Mode, NCPoly, Signature};
use crate::rational::{fmt_q, Q};
use crate::report::Report;
use crate::sampling::{random_point, seeded};

/// One Lax matrix per collision node, children before parents.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitFamily {
    pub pattern: Option<String>,
    pub matrices: Vec<LaxMatrix>,
}

impl LimitFamily {
    pub fn sig(&self) -> Signature {
        self.matrices[0].sig()
    }

    /// Every pole of every matrix.
    pub fn poles(&self) -> Vec<Q> {
        let mut out: Vec<Q> = self.matrices.iter().flat_map(|m| m.poles().iter().map(|(p, _)| p.clone())).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Union of the spectral invariants `Tr L^m`, `m ≤ max_power`, of all
    /// matrices. Classical mode.
    pub fn classical_invariants(&self, max_power: u32) -> Result<InvariantFamily> {
        let mut family = InvariantFamily::default();
        for m in &self.matrices {
            family.extend(spectral_invariants(m, max_power)?);
        }
        Ok(family)
    }

    /// Talalaev generators of every matrix evaluated at the given points.
    /// Quantum mode.
    pub fn quantum_generators(&self, points: &[Q]) -> Result<Vec<(String, NCPoly)>> {
        let mut out = Vec::new();
        for m in &self.matrices {
            let t = talalaev_generators(m)?;
            for p in points {
                out.extend(t.evaluate(p)?.into_iter().map(|(l, g)| (format!("{}: {l}", m.label()), g)));
            }
        }
        Ok(out)
    }
}

/// `L_1 = Σ_{i>k} X_i/(z − u_i)` and
/// `L_2 = Σ_{i≤k} X_i/(z − z_i) + (Σ_{i>k} X_i)/(z − w)`.
pub fn elementary_glue(sig: Signature, fixed: &[Q], collapsing: &[Q], w: &Q) -> Result<LimitFamily> {
    let n = sig.sites();
    if fixed.len() + collapsing.len() != n || collapsing.is_empty() {
        return Err(Error::WrongPointCount { expected: n, got: fixed.len() + collapsing.len() });
    }
    let k = fixed.len();
    let inner: Vec<(Q, Vec<usize>)> = collapsing.iter().enumerate().map(|(i, u)| (u.clone(), vec![k + i + 1])).collect();
    let mut outer: Vec<(Q, Vec<usize>)> = fixed.iter().enumerate().map(|(i, z)| (z.clone(), vec![i + 1])).collect();
    outer.push((w.clone(), ((k + 1)..=n).collect()));
    let l1 = LaxMatrix::gaudin_type("L_1", sig, &inner)?;
    let l2 = LaxMatrix::gaudin_type("L_2", sig, &outer)?;
    Ok(LimitFamily { pattern: None, matrices: vec![l1, l2] })
}

/// Residue blocks `(position of child, leaves below child)` of a node.
pub(crate) fn node_blocks(node: &PatternNode) -> Vec<(Q, Vec<usize>)> {
    match node {
        PatternNode::Internal { children, .. } => children.iter().map(|c| (c.position().clone(), c.leaves())).collect(),
        PatternNode::Leaf { .. } => Vec::new(),
    }
}

/// One Gaudin-type matrix per collision node: each child contributes the
/// sum of its leaves' variables with a simple pole at the child's position.
pub fn iterate_pattern(sig: Signature, pattern: &GluingPattern) -> Result<LimitFamily> {
    if pattern.sites() != sig.sites() {
        return Err(Error::WrongPointCount { expected: sig.sites(), got: pattern.sites() });
    }
    let matrices = pattern
        .internal_nodes()
        .iter()
        .enumerate()
        .map(|(i, node)| LaxMatrix::gaudin_type(format!("L_{}", i + 1), sig, &node_blocks(node)))
        .collect::<Result<_>>()?;
    Ok(LimitFamily { pattern: Some(pattern.to_string()), matrices })
}

pub fn invariant_label(m: &Invariant) -> String {
    m.provenance.to_string()
}

/// Pairwise brackets of a family, labelled by provenance.
pub fn family_commutation(family: &InvariantFamily) -> Result<CommutationMatrix> {
    let gens: Vec<(String, NCPoly)> = family.members.iter().map(|m| (invariant_label(m), m.poly.clone())).collect();
    commutation_matrix_labelled(&gens)
}

/// Rank of the Jacobian `(∂f/∂x)` of classical polynomials at a point.
pub fn jacobian_rank(sig: Signature, polys: &[&NCPoly], point: &std::collections::BTreeMap<crate::ncalgebra::Gen, Q>) -> Result<usize> {
    let gens = sig.generators();
    let mut rows = Vec::with_capacity(polys.len());
    for p in polys {
        let mut row = Vec::with_capacity(gens.len());
        for &g in &gens {
            row.push(p.partial(g)?.evaluate(|x| point[&x].clone()));
        }
        rows.push(row);
    }
    Ok(linalg::rank(&rows))
}

/// Compares exact Jacobian ranks of two families at seeded random integer
/// points; passes when they agree at every point.
pub fn rank_completeness_check(
    sig: Signature,
    family: &InvariantFamily,
    generic: &InvariantFamily,
    trials: usize,
    seed: u64,
) -> Result<Report> {
    sig.require(Mode::Classical, "rank_completeness_check")?;
    let mut report = Report::new("rank_completeness", sig.to_string()).with_trials(trials).with_seed(seed);
    let mut rng = seeded(seed);
    for t in 0..trials {
        let point = random_point(sig, &mut rng, 9);
        let a = jacobian_rank(sig, &family.polys(), &point)?;
        let b = jacobian_rank(sig, &generic.polys(), &point)?;
        report.note(format!("trial {t}: rank(limit) = {a}, rank(generic) = {b}"));
        if a != b {
            report.fail(format!("trial {t}: rank(limit) = {a} but rank(generic) = {b}"));
        }
    }
    Ok(report)
}

/// Solves for `H_G` as a rational combination of the degree-2 members and
/// the products of pairs of degree-1 members; passes when a solution exists.
pub fn hg_membership_check(sig: Signature, family: &InvariantFamily) -> Result<Report> {
    sig.require(Mode::Classical, "hg_membership_check")?;
    let target = physical_hamiltonian(sig)?;
    let mut report = Report::new("hg_membership", sig.to_string()).with_trials(1);
    let mut candidates: Vec<(String, NCPoly)> = Vec::new();
    let linear: Vec<&Invariant> = family.members.iter().filter(|m| m.poly.degree() == Some(1)).collect();
    for m in family.members.iter().filter(|m| m.poly.degree() == Some(2)) {
        candidates.push((format!("[{}]", invariant_label(m)), m.poly.clone()));
    }
    for (i, a) in linear.iter().enumerate() {
        for b in &linear[i..] {
            candidates.push((format!("[{}]*[{}]", invariant_label(a), invariant_label(b)), &a.poly * &b.poly));
        }
    }
    let mut polys: Vec<&NCPoly> = candidates.iter().map(|(_, p)| p).collect();
    polys.push(&target);
    let (_, mut rows) = linalg::poly_vectors(&polys);
    let target_row = rows.pop().expect("target row");
    match linalg::solve(&rows, &target_row) {
        Some(x) => {
            let terms: Vec<String> =
                x.iter().zip(&candidates).filter(|(c, _)| !c.is_zero()).map(|(c, (l, _))| format!("{} * {l}", fmt_q(c))).collect();
            report.note(format!("H_G = {}", terms.join(" + ")));
        }
        None => report.fail(format!("H_G = {target} is not in the span of {} candidates", candidates.len())),
    }
    Ok(report)
}
