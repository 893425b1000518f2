use std::collections::BTreeMap;

use gaudin_core::lax::{
    bending_lax, bending_lax_rational, default_poles, gaudin_lax, physical_hamiltonian, quadratic_hamiltonians,
    spectral_invariants, trace_pair, InvariantFamily, LaxMatrix, Location,
};
use gaudin_core::ncalgebra::{commutator, diagonal_generators, poisson_bracket, Gen};
use gaudin_core::rational::{q, qf};
use gaudin_core::sampling::{random_point, seeded};
use gaudin_core::{Error, NCPoly, Signature, Q};
use num_traits::{One, Zero};

fn e(sig: Signature, site: usize, a: usize, b: usize) -> NCPoly {
    NCPoly::generator(sig, site, a, b).unwrap()
}

fn qs(xs: &[i64]) -> Vec<Q> {
    xs.iter().map(|&x| q(x)).collect()
}

/// The matrix `X_i` at a numeric point, row-major.
fn site_matrix(sig: Signature, point: &BTreeMap<Gen, Q>, site: usize) -> Vec<Q> {
    let r = sig.rank();
    (0..r * r).map(|k| point[&Gen::new(site, k / r + 1, k % r + 1)].clone()).collect()
}

fn matmul(r: usize, a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); r * r];
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                out[i * r + j] += &a[i * r + k] * &b[k * r + j];
            }
        }
    }
    out
}

fn trace(r: usize, a: &[Q]) -> Q {
    (0..r).map(|i| a[i * r + i].clone()).sum()
}

/// `Tr M^m` where `M = Σ_blocks c_block(z) · Σ_{s ∈ block} X_s` at a numeric point.
fn numeric_trace_power(sig: Signature, point: &BTreeMap<Gen, Q>, weighted: &[(Q, Vec<usize>)], m: u32) -> Q {
    let r = sig.rank();
    let mut mat = vec![Q::zero(); r * r];
    for (w, sites) in weighted {
        for &s in sites {
            for (x, y) in mat.iter_mut().zip(site_matrix(sig, point, s)) {
                *x += w * y;
            }
        }
    }
    let mut acc: Vec<Q> = (0..r * r).map(|k| if k / r == k % r { Q::one() } else { Q::zero() }).collect();
    for _ in 0..m {
        acc = matmul(r, &acc, &mat);
    }
    trace(r, &acc)
}

/// `Tr L^m(z)` rebuilt from the Laurent data recorded in the family.
fn reconstruct(family: &InvariantFamily, m: u32, point: &BTreeMap<Gen, Q>, z: &Q) -> Q {
    let mut total = Q::zero();
    for inv in family.members.iter().filter(|i| i.provenance.power == m) {
        let v = inv.poly.evaluate(|g| point[&g].clone());
        let weight = match &inv.provenance.location {
            Location::Pole { point: p, order } => (z - p).pow(-(*order as i32) - 1),
            Location::ZPower { power } => z.pow(*power as i32),
        };
        total += v * weight;
    }
    total
}

#[test]
fn gaudin_invariants_reconstruct_numeric_traces() {
    let mut rng = seeded(31);
    for (r, n) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
        let sig = Signature::classical(r, n).unwrap();
        let poles = qs(&[0, 2, -3][..n]);
        let family = spectral_invariants(&gaudin_lax(sig, &poles).unwrap(), r as u32).unwrap();
        for _ in 0..3 {
            let point = random_point(sig, &mut rng, 5);
            for z in [qf(1, 3), q(7), qf(-5, 2)] {
                let weighted: Vec<(Q, Vec<usize>)> =
                    poles.iter().enumerate().map(|(i, p)| ((&z - p).recip(), vec![i + 1])).collect();
                for m in 1..=r as u32 {
                    assert_eq!(reconstruct(&family, m, &point, &z), numeric_trace_power(sig, &point, &weighted, m));
                }
            }
        }
    }
}

#[test]
fn bending_invariants_reconstruct_numeric_traces() {
    let mut rng = seeded(37);
    let sig = Signature::classical(2, 4).unwrap();
    for k in 1..4 {
        let family = spectral_invariants(&bending_lax(sig, k).unwrap(), 2).unwrap();
        let rational = spectral_invariants(&bending_lax_rational(sig, k, &q(0), &q(1)).unwrap(), 2).unwrap();
        let point = random_point(sig, &mut rng, 5);
        for z in [qf(1, 3), q(7), qf(-5, 2)] {
            let tail: Vec<usize> = (k + 1..=4).collect();
            let poly = [(z.clone(), vec![k]), (Q::one(), tail)];
            let rat = [((&z - q(1)).recip(), vec![k + 1]), (z.recip(), (1..=k).collect())];
            for m in 1..=2 {
                assert_eq!(reconstruct(&family, m, &point, &z), numeric_trace_power(sig, &point, &poly, m));
                assert_eq!(reconstruct(&rational, m, &point, &z), numeric_trace_power(sig, &point, &rat, m));
            }
        }
    }
}

#[test]
fn gaudin_lax_examples() {
    let scalar = Signature::classical(1, 2).unwrap();
    let l = gaudin_lax(scalar, &qs(&[0, 1])).unwrap();
    let at_two = l.eval(&q(2)).unwrap();
    assert_eq!(at_two, vec![&e(scalar, 1, 1, 1).scale(&qf(1, 2)) + &e(scalar, 2, 1, 1)]);

    let sig = Signature::classical(2, 3).unwrap();
    let l = gaudin_lax(sig, &qs(&[0, 1, 2])).unwrap();
    let site_one: Vec<NCPoly> = [(1, 1), (1, 2), (2, 1), (2, 2)].iter().map(|&(a, b)| e(sig, 1, a, b)).collect();
    assert_eq!(l.residue(&q(0), 0), site_one);
    assert!(matches!(gaudin_lax(sig, &qs(&[0, 1, 1])), Err(Error::RepeatedPoint { .. })));
    assert!(matches!(gaudin_lax(sig, &qs(&[0, 1])), Err(Error::WrongPointCount { .. })));

    let single = Signature::classical(2, 1).unwrap();
    let family = spectral_invariants(&gaudin_lax(single, &qs(&[3])).unwrap(), 2).unwrap();
    let square: Vec<_> = family.members.iter().filter(|i| i.provenance.power == 2).collect();
    assert_eq!(square.len(), 1);
    assert_eq!(square[0].provenance.location, Location::Pole { point: q(3), order: 1 });
    assert_eq!(square[0].poly, trace_pair(single, 1, 1).unwrap());
}

#[test]
fn bending_lax_examples() {
    let sig = Signature::classical(2, 3).unwrap();
    let l = bending_lax(sig, 1).unwrap();
    assert!(l.poles().is_empty());
    let at_three = l.eval(&q(3)).unwrap();
    for (idx, (a, b)) in [(1, 1), (1, 2), (2, 1), (2, 2)].into_iter().enumerate() {
        let expected = &(&e(sig, 1, a, b).scale(&q(3)) + &e(sig, 2, a, b)) + &e(sig, 3, a, b);
        assert_eq!(at_three[idx], expected);
    }
    let last = bending_lax(sig, 2).unwrap().eval(&q(0)).unwrap();
    assert_eq!(last[1], e(sig, 3, 1, 2));
    let tr0: NCPoly = bending_lax(sig, 1).unwrap().trace().map_coeffs(|c| c.eval(&q(0)).unwrap());
    let expected = [2, 3].iter().fold(NCPoly::zero(sig), |acc, &s| &(&acc + &e(sig, s, 1, 1)) + &e(sig, s, 2, 2));
    assert_eq!(tr0, expected);
    assert!(matches!(bending_lax(sig, 0), Err(Error::IndexOutOfRange { .. })));
    assert!(matches!(bending_lax(sig, 3), Err(Error::IndexOutOfRange { .. })));
}

#[test]
fn rational_bending_examples() {
    let sig = Signature::classical(2, 3).unwrap();
    let (z1, z2) = (q(0), q(1));
    let l1 = bending_lax_rational(sig, 1, &z1, &z2).unwrap();
    assert_eq!(l1, LaxMatrix::gaudin_type("L_1", sig, &[(z2.clone(), vec![2]), (z1.clone(), vec![1])]).unwrap());
    let l2 = bending_lax_rational(sig, 2, &z1, &z2).unwrap();
    let total: Vec<NCPoly> = l2.residue(&z1, 0).iter().zip(l2.residue(&z2, 0)).map(|(a, b)| a + &b).collect();
    let expected: Vec<NCPoly> = [(1, 1), (1, 2), (2, 1), (2, 2)]
        .iter()
        .map(|&(a, b)| (1..=3).fold(NCPoly::zero(sig), |acc, s| &acc + &e(sig, s, a, b)))
        .collect();
    assert_eq!(total, expected);
    assert!(matches!(bending_lax_rational(sig, 1, &z1, &z1), Err(Error::RepeatedPoint { .. })));
}

#[test]
fn spectral_invariant_examples() {
    let sig = Signature::classical(2, 2).unwrap();
    let family = spectral_invariants(&gaudin_lax(sig, &qs(&[0, 1])).unwrap(), 2).unwrap();
    let simple = family
        .members
        .iter()
        .find(|i| i.provenance.power == 2 && i.provenance.location == Location::Pole { point: q(0), order: 0 })
        .unwrap();
    let h = quadratic_hamiltonians(sig, &qs(&[0, 1])).unwrap();
    assert_eq!(simple.poly, trace_pair(sig, 1, 2).unwrap().scale(&q(-2)));
    assert_eq!(simple.poly, h[0].scale(&q(2)));

    let bend = spectral_invariants(&bending_lax(sig, 1).unwrap(), 2).unwrap();
    let linear = bend
        .members
        .iter()
        .find(|i| i.provenance.power == 2 && i.provenance.location == Location::ZPower { power: 1 })
        .unwrap();
    assert_eq!(linear.poly, trace_pair(sig, 1, 2).unwrap().scale(&q(2)));

    let scalar = Signature::classical(1, 3).unwrap();
    let family = spectral_invariants(&gaudin_lax(scalar, &qs(&[0, 1, 2])).unwrap(), 1).unwrap();
    assert_eq!(family.len(), 3);
    for (i, inv) in family.members.iter().enumerate() {
        assert_eq!(inv.poly, e(scalar, i + 1, 1, 1));
    }
}

fn assert_pairwise_commuting(family: &InvariantFamily) {
    for (i, a) in family.members.iter().enumerate() {
        for b in &family.members[i + 1..] {
            assert!(
                poisson_bracket(&a.poly, &b.poly).unwrap().is_zero(),
                "{} and {} do not commute",
                a.provenance,
                b.provenance
            );
        }
    }
}

#[test]
fn gaudin_invariants_commute_pairwise() {
    for (r, n) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
        let sig = Signature::classical(r, n).unwrap();
        let family = spectral_invariants(&gaudin_lax(sig, &default_poles(n)).unwrap(), r as u32).unwrap();
        assert!(!family.is_empty());
        assert_pairwise_commuting(&family);
    }
}

#[test]
fn invariants_commute_with_the_cartan() {
    for (r, n) in [(2, 3), (3, 2)] {
        let sig = Signature::classical(r, n).unwrap();
        let mut family = spectral_invariants(&gaudin_lax(sig, &default_poles(n)).unwrap(), r as u32).unwrap();
        for k in 1..n {
            family.extend(spectral_invariants(&bending_lax(sig, k).unwrap(), r as u32).unwrap());
        }
        for d in diagonal_generators(sig) {
            for inv in &family.members {
                assert!(poisson_bracket(&d, &inv.poly).unwrap().is_zero(), "{}", inv.provenance);
            }
        }
    }
}

#[test]
fn quadratic_hamiltonian_examples() {
    let sig = Signature::quantum(2, 2).unwrap();
    let h = quadratic_hamiltonians(sig, &qs(&[0, 1])).unwrap();
    assert_eq!(h[0], trace_pair(sig, 1, 2).unwrap().scale(&q(-1)));
    assert_eq!(h[0], h[1].scale(&q(-1)));
    assert_eq!(physical_hamiltonian(sig).unwrap(), trace_pair(sig, 1, 2).unwrap().scale(&q(2)));

    for n in [3, 4] {
        let sig = Signature::quantum(2, n).unwrap();
        let h = quadratic_hamiltonians(sig, &qs(&[0, 1, 3, 7][..n])).unwrap();
        for i in 0..n {
            for j in i + 1..n {
                assert!(commutator(&h[i], &h[j]).unwrap().is_zero());
            }
        }
    }

    let scalar = Signature::classical(1, 3).unwrap();
    let x = |s| e(scalar, s, 1, 1);
    let expected = (&(&(&x(1) * &x(2)) + &(&x(1) * &x(3))) + &(&x(2) * &x(3))).scale(&q(2));
    assert_eq!(physical_hamiltonian(scalar).unwrap(), expected);
    assert!(physical_hamiltonian(Signature::classical(2, 1).unwrap()).is_err());
}
