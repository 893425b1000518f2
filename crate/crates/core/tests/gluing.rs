use gaudin_core::gluing::{
    bending_classical_match, elementary_glue, family_commutation, hg_membership_check, homomorphism_check,
    iterate_pattern, limit_gaudin_algebra, parse_pattern, quantum_bending_generators, quantum_d_map, quantum_i_map,
    rank_completeness_check, bending_generator_list, GluingPattern, SiteMap,
};
use gaudin_core::lax::{bending_lax_rational, default_poles, gaudin_lax, spectral_invariants, LaxMatrix};
use gaudin_core::manin::{commutation_matrix_labelled, evaluation_points};
use gaudin_core::rational::q;
use gaudin_core::{NCPoly, Signature, Q};

fn qs(xs: &[i64]) -> Vec<Q> {
    xs.iter().map(|&x| q(x)).collect()
}

#[test]
fn five_site_pattern_gives_the_elementary_pair() {
    let sig = Signature::classical(2, 5).unwrap();
    let pattern = parse_pattern("[1,2,[3,4,5]@3]", 5).unwrap();
    let family = iterate_pattern(sig, &pattern).unwrap();
    let direct = elementary_glue(sig, &qs(&[0, 1]), &qs(&[2, 3, 4]), &q(3)).unwrap();
    assert_eq!(family.matrices, direct.matrices);
    let l2 = &family.matrices[1];
    assert_eq!(l2.poles().iter().map(|(p, _)| p.clone()).collect::<Vec<_>>(), qs(&[0, 1, 3]));
    let residue_at_w = l2.residue(&q(3), 0);
    let expected = &(&NCPoly::generator(sig, 3, 1, 2).unwrap() + &NCPoly::generator(sig, 4, 1, 2).unwrap())
        + &NCPoly::generator(sig, 5, 1, 2).unwrap();
    assert_eq!(residue_at_w[1], expected);
}

#[test]
fn trivial_pattern_gives_gaudin_lax() {
    let sig = Signature::classical(2, 3).unwrap();
    let family = iterate_pattern(sig, &GluingPattern::trivial(3).unwrap()).unwrap();
    assert_eq!(family.matrices, vec![gaudin_lax(sig, &default_poles(3)).unwrap()]);
}

#[test]
fn left_comb_reproduces_rational_bending_matrices() {
    for n in 2..=4 {
        let sig = Signature::classical(2, n).unwrap();
        let comb = GluingPattern::left_comb(n, &q(0), &q(1)).unwrap();
        let family = iterate_pattern(sig, &comb).unwrap();
        let expected: Vec<LaxMatrix> = (1..n).map(|k| bending_lax_rational(sig, k, &q(0), &q(1)).unwrap()).collect();
        assert_eq!(family.matrices, expected);
    }
}

#[test]
fn collapsing_one_point_is_degenerate() {
    let sig = Signature::classical(2, 3).unwrap();
    let family = elementary_glue(sig, &qs(&[0, 1]), &qs(&[7]), &q(2)).unwrap();
    let invariants = spectral_invariants(&family.matrices[0], 2).unwrap();
    let report = family_commutation(&invariants).unwrap().report;
    assert!(report.pass);
    assert_eq!(family.matrices[1], gaudin_lax(sig, &qs(&[0, 1, 2])).unwrap());
}

#[test]
fn coincident_points_are_rejected() {
    let sig = Signature::classical(2, 3).unwrap();
    assert!(elementary_glue(sig, &qs(&[0]), &qs(&[1, 2]), &q(0)).is_err());
    assert!(elementary_glue(sig, &qs(&[0]), &qs(&[1, 1]), &q(5)).is_err());
}

#[test]
fn elementary_glue_families_poisson_commute() {
    let sig = Signature::classical(2, 3).unwrap();
    let family = elementary_glue(sig, &qs(&[0]), &qs(&[1, 2]), &q(4)).unwrap();
    let invariants = family.classical_invariants(2).unwrap();
    let table = family_commutation(&invariants).unwrap();
    assert!(table.report.pass, "{}", table.report);
    assert!(invariants.len() >= 8);
}

#[test]
fn rank_completeness_for_elementary_glue() {
    let sig = Signature::classical(2, 3).unwrap();
    let glued = elementary_glue(sig, &qs(&[0]), &qs(&[1, 2]), &q(4)).unwrap().classical_invariants(2).unwrap();
    let generic = spectral_invariants(&gaudin_lax(sig, &default_poles(3)).unwrap(), 2).unwrap();
    let report = rank_completeness_check(sig, &glued, &generic, 5, 11).unwrap();
    assert!(report.pass, "{report}");
    let trivial = rank_completeness_check(sig, &generic, &generic, 2, 3).unwrap();
    assert!(trivial.pass);
}

#[test]
fn physical_hamiltonian_lies_in_the_families() {
    for (r, n) in [(2, 2), (2, 3), (1, 3)] {
        let sig = Signature::classical(r, n).unwrap();
        let fixed: Vec<Q> = (0..n as i64 - 1).map(q).collect();
        let family = elementary_glue(sig, &fixed, &[q(10)], &q(n as i64 - 1)).unwrap();
        let report = hg_membership_check(sig, &family.classical_invariants(r as u32).unwrap()).unwrap();
        assert!(report.pass, "{report}");
    }
    let sig = Signature::classical(2, 3).unwrap();
    let bending = iterate_pattern(sig, &GluingPattern::left_comb(3, &q(0), &q(1)).unwrap()).unwrap();
    assert!(hg_membership_check(sig, &bending.classical_invariants(2).unwrap()).unwrap().pass);
}

#[test]
fn site_maps_are_homomorphisms() {
    let target = Signature::quantum(2, 3).unwrap();
    for source_sites in [1, 2, 3] {
        let source = Signature::quantum(2, source_sites).unwrap();
        let d = SiteMap::diagonal(source, target).unwrap();
        assert!(homomorphism_check(&d, 20, 5).unwrap().pass);
        let i = SiteMap::inclusion(source, target).unwrap();
        assert!(homomorphism_check(&i, 20, 6).unwrap().pass);
    }
}

#[test]
fn d_and_i_on_generators() {
    let one = Signature::quantum(2, 1).unwrap();
    let two = Signature::quantum(2, 2).unwrap();
    let three = Signature::quantum(2, 3).unwrap();
    let e = |sig, i| NCPoly::generator(sig, i, 1, 2).unwrap();
    assert_eq!(quantum_d_map(one, two, &e(one, 1)).unwrap(), &e(two, 1) + &e(two, 2));
    assert_eq!(quantum_d_map(three, three, &e(three, 3)).unwrap(), e(three, 3));
    assert_eq!(quantum_i_map(two, three, &e(two, 2)).unwrap(), e(three, 3));
    assert_eq!(quantum_i_map(three, three, &e(three, 2)).unwrap(), e(three, 2));
    assert!(quantum_d_map(Signature::classical(2, 1).unwrap(), Signature::classical(2, 2).unwrap(), &e(Signature::classical(2, 1).unwrap(), 1)).is_err());
}

#[test]
fn elementary_node_maps_are_d_and_i() {
    let sig = Signature::quantum(2, 3).unwrap();
    let pattern = GluingPattern::elementary(3, 1, &q(4)).unwrap();
    let maps = gaudin_core::gluing::node_maps(sig, &pattern).unwrap();
    let two = Signature::quantum(2, 2).unwrap();
    assert_eq!(maps[0].0, SiteMap::inclusion(two, sig).unwrap());
    assert_eq!(maps[1].0, SiteMap::diagonal(two, sig).unwrap());
}

#[test]
fn glued_quantum_family_commutes() {
    let sig = Signature::quantum(2, 3).unwrap();
    let pattern = GluingPattern::elementary(3, 1, &q(4)).unwrap();
    let gens = limit_gaudin_algebra(sig, &pattern, &qs(&[5, 7])).unwrap();
    let report = commutation_matrix_labelled(&gens).unwrap().report;
    assert!(report.pass, "{report}");
    let direct = iterate_pattern(sig, &pattern).unwrap().quantum_generators(&qs(&[5, 7])).unwrap();
    let both: Vec<(String, NCPoly)> = gens.into_iter().chain(direct).collect();
    assert!(commutation_matrix_labelled(&both).unwrap().report.pass);
}

#[test]
fn quantum_bending_symbols_match_classical_invariants() {
    for n in [2, 3] {
        let sig = Signature::quantum(2, n).unwrap();
        let report = bending_classical_match(sig, &q(0), &q(1)).unwrap();
        assert!(report.pass, "{report}");
    }
}

#[test]
fn quantum_bending_generators_commute() {
    let sig = Signature::quantum(2, 3).unwrap();
    let gens = quantum_bending_generators(sig, &q(0), &q(1)).unwrap();
    let report = commutation_matrix_labelled(&bending_generator_list(&gens)).unwrap().report;
    assert!(report.pass, "{report}");
}

#[test]
fn rank_one_bending_generators_are_central() {
    let sig = Signature::quantum(1, 3).unwrap();
    let gens = quantum_bending_generators(sig, &q(0), &q(1)).unwrap();
    let probe: Vec<(String, NCPoly)> = (1..=3).map(|i| (format!("x{i}"), NCPoly::generator(sig, i, 1, 1).unwrap())).collect();
    let all: Vec<(String, NCPoly)> = bending_generator_list(&gens).into_iter().chain(probe).collect();
    assert!(commutation_matrix_labelled(&all).unwrap().report.pass);
}

#[test]
fn evaluation_points_skip_poles() {
    assert_eq!(evaluation_points(&qs(&[0, 1, 3]), 0, 3), qs(&[2, 4, 5]));
}
