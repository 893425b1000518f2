//! Quantum limit algebras: the site maps `D_{k,N}` and `I_{k,N}`, the
//! algebra generated along a gluing pattern, and the quantum bending
//! generators with their classical limits.

use serde::Serialize;

use super::family::node_blocks;
use super::pattern::GluingPattern;
use crate::error::{Error, Result};
use crate::lax::{bending_lax_rational, expand_trace, gaudin_lax, spectral_invariants, InvariantFamily, Provenance};
use crate::manin::talalaev_generators;
use crate::ncalgebra::{symbol, Gen, Mode, NCPoly, Signature};
use crate::rational::{q, Q};
use crate::report::Report;
use crate::sampling::{random_poly, seeded};

/// Algebra map sending `e_ab^{(s)}` to `Σ_{t ∈ images[s]} e_ab^{(t)}`.
/// With pairwise disjoint image sets this is a homomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiteMap {
    source: Signature,
    target: Signature,
    images: Vec<Vec<usize>>,
}

impl SiteMap {
    pub fn new(source: Signature, target: Signature, images: Vec<Vec<usize>>) -> Result<Self> {
        if source.rank() != target.rank() || source.mode() != target.mode() {
            return Err(Error::SignatureMismatch { left: source, right: target });
        }
        if images.len() != source.sites() {
            return Err(Error::WrongPointCount { expected: source.sites(), got: images.len() });
        }
        let mut used = vec![false; target.sites() + 1];
        for set in &images {
            if set.is_empty() {
                return Err(Error::Dimension("every source site needs a nonempty image".into()));
            }
            for &t in set {
                if t == 0 || t > target.sites() {
                    return Err(Error::IndexOutOfRange { index: t, max: target.sites() });
                }
                if used[t] {
                    return Err(Error::Dimension(format!("target site {t} is hit twice")));
                }
                used[t] = true;
            }
        }
        Ok(Self { source, target, images })
    }

    /// `D_{k,N} = id^{⊗k} ⊗ diag_{N−k}` from `k+1` sites to `N` sites.
    pub fn diagonal(source: Signature, target: Signature) -> Result<Self> {
        let k = source.sites() - 1;
        if target.sites() <= k {
            return Err(Error::Dimension(format!("D map needs N > k, got k={k}, N={}", target.sites())));
        }
        let mut images: Vec<Vec<usize>> = (1..=k).map(|i| vec![i]).collect();
        images.push(((k + 1)..=target.sites()).collect());
        Self::new(source, target, images)
    }

    /// `I_{k,N} = 1^{⊗k} ⊗ id^{⊗(N−k)}` from `N−k` sites to `N` sites.
    pub fn inclusion(source: Signature, target: Signature) -> Result<Self> {
        if target.sites() < source.sites() {
            return Err(Error::Dimension(format!("I map needs N ≥ {}, got {}", source.sites(), target.sites())));
        }
        let k = target.sites() - source.sites();
        Self::new(source, target, (1..=source.sites()).map(|j| vec![j + k]).collect())
    }

    pub fn source(&self) -> Signature {
        self.source
    }

    pub fn target(&self) -> Signature {
        self.target
    }

    pub fn apply(&self, p: &NCPoly) -> Result<NCPoly> {
        self.source.check_same(&p.sig())?;
        let image = |g: Gen| {
            let mut out = NCPoly::zero(self.target);
            for &t in &self.images[g.site() - 1] {
                out = &out + &NCPoly::generator(self.target, t, g.row(), g.col()).expect("validated site");
            }
            out
        };
        p.substitute(self.target, image)
    }
}

fn require_quantum(source: Signature, target: Signature, op: &'static str) -> Result<()> {
    source.require(Mode::Quantum, op)?;
    target.require(Mode::Quantum, op)
}

/// `D_{k,N}` with `k = source.sites − 1`.
pub fn quantum_d_map(source: Signature, target: Signature, p: &NCPoly) -> Result<NCPoly> {
    require_quantum(source, target, "quantum_d_map")?;
    SiteMap::diagonal(source, target)?.apply(p)
}

/// `I_{k,N}` with `k = N − source.sites`.
pub fn quantum_i_map(source: Signature, target: Signature, p: &NCPoly) -> Result<NCPoly> {
    require_quantum(source, target, "quantum_i_map")?;
    SiteMap::inclusion(source, target)?.apply(p)
}

/// `φ(pq) = φ(p)φ(q)` on seeded random pairs of degree ≤ 2.
pub fn homomorphism_check(map: &SiteMap, trials: usize, seed: u64) -> Result<Report> {
    let spec = format!("{} -> {}", map.source(), map.target());
    let mut report = Report::new("homomorphism", spec).with_trials(trials).with_seed(seed);
    let mut rng = seeded(seed);
    for t in 0..trials {
        let p = random_poly(map.source(), &mut rng, 2, 3);
        let r = random_poly(map.source(), &mut rng, 2, 3);
        let lhs = map.apply(&p.checked_mul(&r)?)?;
        let rhs = map.apply(&p)?.checked_mul(&map.apply(&r)?)?;
        if lhs != rhs {
            report.fail(format!("trial {t}: p = {p}, q = {r}"));
        }
    }
    Ok(report)
}

/// For each collision node: the map from the node's own Gaudin algebra
/// (one site per child) into `sig`, and the children's positions.
pub fn node_maps(sig: Signature, pattern: &GluingPattern) -> Result<Vec<(SiteMap, Vec<Q>)>> {
    pattern
        .internal_nodes()
        .iter()
        .map(|node| {
            let blocks = node_blocks(node);
            let source = Signature::new(sig.rank(), blocks.len(), sig.mode())?;
            let positions = blocks.iter().map(|(p, _)| p.clone()).collect();
            let map = SiteMap::new(source, sig, blocks.into_iter().map(|(_, s)| s).collect())?;
            Ok((map, positions))
        })
        .collect()
}

/// Generators of the limit algebra: for every collision node, the Talalaev
/// generators of the node's Gaudin algebra evaluated at `points` and pushed
/// into `sig` by the node's site map.
pub fn limit_gaudin_algebra(sig: Signature, pattern: &GluingPattern, points: &[Q]) -> Result<Vec<(String, NCPoly)>> {
    sig.require(Mode::Quantum, "limit_gaudin_algebra")?;
    let mut out = Vec::new();
    for (idx, (map, positions)) in node_maps(sig, pattern)?.iter().enumerate() {
        let lax = gaudin_lax(map.source(), positions)?;
        let t = talalaev_generators(&lax)?;
        for p in points {
            for (label, g) in t.evaluate(p)? {
                out.push((format!("node {}: {label}", idx + 1), map.apply(&g)?));
            }
        }
    }
    Ok(out)
}

/// A quantum bending Hamiltonian with its classical limit.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BendingGenerator {
    pub provenance: Provenance,
    pub quantum: NCPoly,
    /// Degree-`m` symbol of the quantum element.
    pub classical: NCPoly,
}

/// Laurent data of `(−1)^m QTr^m_m(z)` for the rational bending matrices
/// `L_k`, `k = 1..N−1`, `m = 1..r`.
pub fn quantum_bending_generators(sig: Signature, z1: &Q, z2: &Q) -> Result<Vec<BendingGenerator>> {
    sig.require(Mode::Quantum, "quantum_bending_generators")?;
    let mut out = Vec::new();
    for k in 1..sig.sites() {
        let l = bending_lax_rational(sig, k, z1, z2)?;
        let t = talalaev_generators(&l)?;
        for m in 1..=sig.rank() {
            let sign = q(if m % 2 == 0 { 1 } else { -1 });
            let entry = t.qtr(m, m).scale(&sign);
            for inv in expand_trace(&entry, l.poles(), l.label(), m as u32) {
                let classical = symbol(&inv.poly, m);
                out.push(BendingGenerator { provenance: inv.provenance, quantum: inv.poly, classical });
            }
        }
    }
    Ok(out)
}

/// The classical bending invariants `Res (z − z_c)^j Tr L_k^m`.
pub fn classical_bending_invariants(sig: Signature, z1: &Q, z2: &Q) -> Result<InvariantFamily> {
    let sig = sig.with_mode(Mode::Classical);
    let mut family = InvariantFamily::default();
    for k in 1..sig.sites() {
        family.extend(spectral_invariants(&bending_lax_rational(sig, k, z1, z2)?, sig.rank() as u32)?);
    }
    Ok(family)
}

/// Member-by-member comparison of the symbols of the quantum bending
/// generators with the classical bending invariants of equal provenance.
pub fn bending_classical_match(sig: Signature, z1: &Q, z2: &Q) -> Result<Report> {
    let quantum = quantum_bending_generators(sig.with_mode(Mode::Quantum), z1, z2)?;
    let classical = classical_bending_invariants(sig, z1, z2)?;
    let mut report = Report::new("bending_classical_limits", sig.with_mode(Mode::Quantum).to_string());
    for c in &classical.members {
        report.trials += 1;
        match quantum.iter().find(|g| g.provenance == c.provenance) {
            Some(g) if g.classical == c.poly => {}
            Some(g) => report.fail(format!("{}: symbol {} differs from {}", c.provenance, g.classical, c.poly)),
            None => report.fail(format!("{}: no quantum generator", c.provenance)),
        }
    }
    for g in &quantum {
        if classical.find(&g.provenance).is_none() {
            report.trials += 1;
            if g.classical.is_zero() {
                report.note(format!("{}: lower-order quantum correction only", g.provenance));
            } else {
                report.fail(format!("{}: symbol {} has no classical counterpart", g.provenance, g.classical));
            }
        }
    }
    Ok(report)
}

/// Labels and polynomials of the quantum bending generators.
pub fn bending_generator_list(gens: &[BendingGenerator]) -> Vec<(String, NCPoly)> {
    gens.iter().map(|g| (g.provenance.to_string(), g.quantum.clone())).collect()
}
