use std::collections::BTreeMap;

use gaudin_core::lax::{physical_hamiltonian, quadratic_hamiltonians};
use gaudin_core::ncalgebra::{
    classical_limit, commutator, diagonal_generators, multiply, poisson_bracket, Gen, Mode,
};
use gaudin_core::rational::q;
use gaudin_core::sampling::{random_gen, random_point, random_poly, seeded};
use gaudin_core::{NCPoly, Signature, Q};
use num_traits::Zero;

/// Words in arbitrary order with rational coefficients.
type Naive = BTreeMap<Vec<Gen>, Q>;

fn naive_add(acc: &mut Naive, word: Vec<Gen>, c: Q) {
    let entry = acc.entry(word.clone()).or_insert_with(Q::zero);
    *entry += c;
    if entry.is_zero() {
        acc.remove(&word);
    }
}

/// `[x, y]` from the gl(r) relation, written out independently of the kernel.
fn naive_bracket(x: Gen, y: Gen) -> Vec<(Gen, Q)> {
    let mut out = Vec::new();
    if x.site != y.site {
        return out;
    }
    if x.col == y.row {
        out.push((Gen::new(x.site(), x.row(), y.col()), q(1)));
    }
    if y.col == x.row {
        out.push((Gen::new(x.site(), y.row(), x.col()), q(-1)));
    }
    out
}

/// Normal ordering by repeated adjacent swaps `ab = ba + [a,b]`.
fn naive_normalize(input: Naive) -> Naive {
    let mut pending: Vec<(Vec<Gen>, Q)> = input.into_iter().collect();
    let mut done = Naive::new();
    while let Some((word, c)) = pending.pop() {
        match (0..word.len().saturating_sub(1)).find(|&i| word[i] > word[i + 1]) {
            None => naive_add(&mut done, word, c),
            Some(i) => {
                let mut swapped = word.clone();
                swapped.swap(i, i + 1);
                pending.push((swapped, c.clone()));
                for (g, k) in naive_bracket(word[i], word[i + 1]) {
                    let mut shorter = word[..i].to_vec();
                    shorter.push(g);
                    shorter.extend_from_slice(&word[i + 2..]);
                    pending.push((shorter, &c * &k));
                }
            }
        }
    }
    done
}

fn naive_product(a: &Naive, b: &Naive) -> Naive {
    let mut out = Naive::new();
    for (wa, ca) in a {
        for (wb, cb) in b {
            let mut w = wa.clone();
            w.extend_from_slice(wb);
            naive_add(&mut out, w, ca * cb);
        }
    }
    naive_normalize(out)
}

fn to_naive(p: &NCPoly) -> Naive {
    p.terms().iter().map(|(m, c)| (m.factors().to_vec(), c.clone())).collect()
}

fn gen(sig: Signature, s: usize, a: usize, b: usize) -> NCPoly {
    NCPoly::generator(sig, s, a, b).unwrap()
}

#[test]
fn product_agrees_with_naive_straightening() {
    let sig = Signature::quantum(2, 2).unwrap();
    let mut rng = seeded(101);
    for _ in 0..60 {
        let p = random_poly(sig, &mut rng, 3, 3);
        let r = random_poly(sig, &mut rng, 3, 3);
        let kernel = multiply(&p, &r, sig).unwrap();
        assert_eq!(to_naive(&kernel), naive_product(&to_naive(&p), &to_naive(&r)));
    }
}

#[test]
fn quantum_associativity_on_random_triples() {
    let sig = Signature::quantum(2, 2).unwrap();
    let mut rng = seeded(7);
    for _ in 0..200 {
        let a = random_poly(sig, &mut rng, 2, 2);
        let b = random_poly(sig, &mut rng, 2, 2);
        let c = random_poly(sig, &mut rng, 2, 2);
        assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }
}

#[test]
fn commutator_is_a_lie_bracket_on_generator_triples() {
    let sig = Signature::quantum(3, 2).unwrap();
    let mut rng = seeded(9);
    for _ in 0..100 {
        let [x, y, z] = [0, 1, 2].map(|_| {
            let g = random_gen(sig, &mut rng);
            gen(sig, g.site(), g.row(), g.col())
        });
        let xy = commutator(&x, &y).unwrap();
        assert!((&xy + &commutator(&y, &x).unwrap()).is_zero());
        let jac = &(&commutator(&x, &commutator(&y, &z).unwrap()).unwrap()
            + &commutator(&y, &commutator(&z, &x).unwrap()).unwrap())
            + &commutator(&z, &xy).unwrap();
        assert!(jac.is_zero());
        let lin = commutator(&(&x.scale(&q(2)) + &z), &y).unwrap();
        assert_eq!(lin, &xy.scale(&q(2)) + &commutator(&z, &y).unwrap());
    }
}

#[test]
fn poisson_bracket_axioms_on_random_triples() {
    let sig = Signature::classical(2, 2).unwrap();
    let mut rng = seeded(13);
    for _ in 0..100 {
        let p = random_poly(sig, &mut rng, 2, 3);
        let r = random_poly(sig, &mut rng, 2, 3);
        let s = random_poly(sig, &mut rng, 2, 2);
        let pr = poisson_bracket(&p, &r).unwrap();
        assert!((&pr + &poisson_bracket(&r, &p).unwrap()).is_zero());
        let leibniz = &(&pr * &s) + &(&r * &poisson_bracket(&p, &s).unwrap());
        assert_eq!(poisson_bracket(&p, &(&r * &s)).unwrap(), leibniz);
        let jac = &(&poisson_bracket(&p, &poisson_bracket(&r, &s).unwrap()).unwrap()
            + &poisson_bracket(&r, &poisson_bracket(&s, &p).unwrap()).unwrap())
            + &poisson_bracket(&s, &pr).unwrap();
        assert!(jac.is_zero());
    }
}

#[test]
fn quadratic_hamiltonians_commute_against_naive_expansion() {
    let sig = Signature::quantum(2, 3).unwrap();
    let h = quadratic_hamiltonians(sig, &[q(0), q(1), q(2)]).unwrap();
    let (a, b) = (to_naive(&h[0]), to_naive(&h[1]));
    assert_eq!(naive_product(&a, &b), naive_product(&b, &a));
    assert!(commutator(&h[0], &h[1]).unwrap().is_zero());
}

/// `{x, y}` on coordinates evaluated at a point, from the structure constants.
fn numeric_pairing(x: Gen, y: Gen, point: &BTreeMap<Gen, Q>) -> Q {
    naive_bracket(x, y).into_iter().map(|(g, c)| c * &point[&g]).sum()
}

#[test]
fn poisson_bracket_matches_numeric_pairing() {
    let sig = Signature::classical(2, 3).unwrap();
    let h = quadratic_hamiltonians(sig, &[q(0), q(1), q(2)]).unwrap();
    let hg = physical_hamiltonian(sig).unwrap();
    let mut rng = seeded(17);
    for _ in 0..5 {
        let point = random_point(sig, &mut rng, 6);
        let mut numeric = Q::zero();
        for x in sig.generators() {
            let dx = h[0].partial(x).unwrap().evaluate(|g| point[&g].clone());
            for y in sig.generators() {
                let dy = hg.partial(y).unwrap().evaluate(|g| point[&g].clone());
                numeric += dx.clone() * dy * numeric_pairing(x, y, &point);
            }
        }
        let symbolic = poisson_bracket(&h[0], &hg).unwrap().evaluate(|g| point[&g].clone());
        assert_eq!(symbolic, numeric);
        assert!(numeric.is_zero());
    }
}

#[test]
fn symbol_map_intertwines_brackets() {
    let sig = Signature::quantum(2, 2).unwrap();
    let mut rng = seeded(19);
    let mut compared = 0;
    for _ in 0..40 {
        let p = random_poly(sig, &mut rng, 2, 3);
        let r = random_poly(sig, &mut rng, 2, 3);
        let (cp, cr) = (classical_limit(&p), classical_limit(&r));
        let classical = poisson_bracket(&cp, &cr).unwrap();
        if classical.is_zero() {
            continue;
        }
        let top = classical.degree().unwrap();
        let quantum = commutator(&p, &r).unwrap().homogeneous_part(top);
        assert_eq!(classical_limit(&quantum), classical);
        compared += 1;
    }
    assert!(compared > 20);
}

#[test]
fn diagonal_generators_commute_with_physical_hamiltonian() {
    for mode in [Mode::Quantum, Mode::Classical] {
        let sig = Signature::new(2, 3, mode).unwrap();
        let hg = physical_hamiltonian(sig).unwrap();
        for d in diagonal_generators(sig) {
            let br = match mode {
                Mode::Quantum => commutator(&d, &hg).unwrap(),
                Mode::Classical => poisson_bracket(&d, &hg).unwrap(),
            };
            assert!(br.is_zero());
        }
    }
    let abelian = Signature::quantum(1, 3).unwrap();
    let d = diagonal_generators(abelian);
    assert_eq!(d.len(), 1);
    assert!(commutator(&d[0], &gen(abelian, 2, 1, 1)).unwrap().is_zero());
}

#[test]
fn rendering_is_stable() {
    let sig = Signature::quantum(2, 2).unwrap();
    let p = &(&gen(sig, 1, 1, 2) * &gen(sig, 1, 1, 1)).scale(&q(3)) + &gen(sig, 2, 2, 1).scale(&gaudin_core::rational::qf(-1, 2));
    assert_eq!(p.to_string(), "-3 * e[1,2]@1 - 1/2 * e[2,1]@2 + 3 * e[1,1]@1 * e[1,2]@1");
}
