use gaudin_core::gluing::{
    bending_classical_match, elementary_glue, family_commutation, hg_membership_check, homomorphism_check,
    iterate_pattern, limit_gaudin_algebra, rank_completeness_check, GluingPattern, SiteMap,
};
use gaudin_core::lax::{bending_lax_rational, default_poles, gaudin_lax, quadratic_hamiltonians, spectral_invariants, LaxMatrix};
use gaudin_core::manin::{
    column_order_invariance, commutation_matrix, commutation_matrix_labelled, is_manin, newton_check,
    talalaev_commutation_check, talalaev_generators, ManinCandidate,
};
use gaudin_core::ncalgebra::Mode;
use gaudin_core::poissonstruct::{
    compatibility_check, family_commutes_under, jacobi_check, operator_identity, BracketSpec, PoissonOperator,
};
use gaudin_core::ratfun::{DiffOp, RatFun};
use gaudin_core::rational::q;
use gaudin_core::{NCPoly, Report, Result, Signature, Q};

const SEED: u64 = 20_240_601;

fn qs(xs: &[i64]) -> Vec<Q> {
    xs.iter().map(|&x| q(x)).collect()
}

fn e(sig: Signature, site: usize, a: usize, b: usize) -> NCPoly {
    NCPoly::generator(sig, site, a, b).unwrap()
}

struct Outcome {
    pass: bool,
    detail: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Self { pass: true, detail: Vec::new() }
    }

    fn require(&mut self, what: &str, ok: bool) {
        if !ok {
            self.pass = false;
            self.detail.push(format!("failed: {what}"));
        }
    }

    fn report(&mut self, what: &str, r: &Report) {
        if !r.pass {
            self.pass = false;
            self.detail.push(format!("failed: {what}\n{r}"));
        }
    }
}

fn quadratic_commutativity() -> Result<Outcome> {
    let mut out = Outcome::new();
    for r in [2, 3] {
        for mode in [Mode::Quantum, Mode::Classical] {
            let sig = Signature::new(r, 3, mode)?;
            let h = quadratic_hamiltonians(sig, &qs(&[0, 1, 2]))?;
            out.report(&format!("[H_i, H_j] for {sig}"), &commutation_matrix(&h)?);
            let total = h.iter().fold(NCPoly::zero(sig), |acc, x| &acc + x);
            out.require(&format!("sum of H_i vanishes for {sig}"), total.is_zero());
            out.require(&format!("H_i nonzero for {sig}"), h.iter().all(|x| !x.is_zero()));
        }
    }
    Ok(out)
}

fn glued_family(sig: Signature) -> Result<gaudin_core::lax::InvariantFamily> {
    elementary_glue(sig, &qs(&[0]), &qs(&[1, 2]), &q(4))?.classical_invariants(sig.rank() as u32)
}

fn glue_commutativity() -> Result<Outcome> {
    let mut out = Outcome::new();
    let sig = Signature::classical(2, 3)?;
    let family = glued_family(sig)?;
    out.require("both matrices contribute invariants", family.members.iter().any(|m| m.provenance.matrix == "L_1")
        && family.members.iter().any(|m| m.provenance.matrix == "L_2"));
    out.report("pairwise brackets of H^(1) and H^(2)", &family_commutation(&family)?.report);
    Ok(out)
}

fn rank_completeness() -> Result<Outcome> {
    let mut out = Outcome::new();
    let sig = Signature::classical(2, 3)?;
    let generic = spectral_invariants(&gaudin_lax(sig, &default_poles(3))?, 2)?;
    let report = rank_completeness_check(sig, &glued_family(sig)?, &generic, 5, SEED)?;
    out.require("five trials ran", report.trials == 5);
    out.report("Jacobian ranks agree", &report);
    Ok(out)
}

fn hg_membership() -> Result<Outcome> {
    let mut out = Outcome::new();
    for n in [2usize, 3] {
        let sig = Signature::classical(2, n)?;
        let fixed: Vec<Q> = (0..n as i64 - 1).map(q).collect();
        let family = elementary_glue(sig, &fixed, &[q(10)], &q(n as i64 - 1))?.classical_invariants(2)?;
        out.report(&format!("H_G in glued family, N = {n}"), &hg_membership_check(sig, &family)?);
    }
    Ok(out)
}

fn limit_bracket() -> Result<Outcome> {
    let mut out = Outcome::new();
    let identity = operator_identity(&PoissonOperator::limit_rijk(4), &PoissonOperator::explicit_limit_four_site());
    out.require("sixteen blocks compared", identity.trials == 16);
    out.report("r_ijk operator equals the explicit four-site operator", &identity);
    let sig = Signature::classical(2, 4)?;
    let jacobi = jacobi_check(&BracketSpec::LimitRijk, sig, 50, SEED)?;
    out.require("fifty Jacobi trials", jacobi.trials == 50);
    out.report("Jacobi for the limit bracket", &jacobi);
    let compat = compatibility_check(&BracketSpec::Standard, &BracketSpec::LimitRijk, sig, 50, SEED)?;
    out.report("compatibility with the standard bracket", &compat);
    Ok(out)
}

fn bending_flows() -> Result<Outcome> {
    let mut out = Outcome::new();
    let sig = Signature::classical(2, 4)?;
    let comb = iterate_pattern(sig, &GluingPattern::left_comb(4, &q(0), &q(1))?)?;
    let expected: Vec<LaxMatrix> = (1..4).map(|k| bending_lax_rational(sig, k, &q(0), &q(1))).collect::<Result<_>>()?;
    out.require("left comb equals the rational bending matrices", comb.matrices == expected);
    let family = comb.classical_invariants(2)?;
    out.report("bending invariants under the standard bracket", &family_commutes_under(&BracketSpec::Standard, &family)?);
    out.report("bending invariants under the limit bracket", &family_commutes_under(&BracketSpec::LimitRijk, &family)?);
    Ok(out)
}

fn manin_test_matrices() -> Result<Vec<(String, ManinCandidate)>> {
    let mut out = Vec::new();
    for n in 1..=3 {
        let sig = Signature::quantum(2, n)?;
        out.push((format!("d - L_G on {sig}"), ManinCandidate::d_minus_lax(&gaudin_lax(sig, &default_poles(n))?)));
    }
    let sig = Signature::quantum(3, 1)?;
    out.push((format!("d - L_G on {sig}"), ManinCandidate::d_minus_lax(&gaudin_lax(sig, &default_poles(1))?)));
    let sig = Signature::quantum(2, 1)?;
    let m = ManinCandidate::from_scalars(sig, 2, &[e(sig, 1, 1, 1), e(sig, 1, 1, 2), e(sig, 1, 2, 2), e(sig, 1, 1, 2).scale(&q(-1))])?;
    for t in [0, 1, 3] {
        out.push((format!("scalar Manin matrix shifted by {t}"), m.shift(&q(t))));
    }
    Ok(out)
}

fn manin_talalaev() -> Result<Outcome> {
    let mut out = Outcome::new();
    for (name, m) in manin_test_matrices()? {
        let verdict = is_manin(&m)?;
        out.require(&format!("{name} is Manin"), verdict.manin);
        if m.size() <= 3 {
            out.report(&format!("column-order invariance for {name}"), &column_order_invariance(&m)?);
        }
        out.report(&format!("Newton identities for {name}"), &newton_check(&m)?);
    }
    let sig = Signature::quantum(2, 2)?;
    let t = talalaev_generators(&gaudin_lax(sig, &default_poles(2))?)?;
    out.report("[QH_i(u), QH_j(v)] at 5, 7, 11", &talalaev_commutation_check(&t, &qs(&[5, 7, 11]))?);
    Ok(out)
}

fn quantum_limits() -> Result<Outcome> {
    let mut out = Outcome::new();
    let target = Signature::quantum(2, 3)?;
    for k in [1, 2, 3] {
        let source = Signature::quantum(2, k)?;
        out.report(&format!("D map from {k} sites"), &homomorphism_check(&SiteMap::diagonal(source, target)?, 20, SEED)?);
        out.report(&format!("I map from {k} sites"), &homomorphism_check(&SiteMap::inclusion(source, target)?, 20, SEED)?);
    }
    let pattern = GluingPattern::elementary(3, 1, &q(4))?;
    let mut gens = limit_gaudin_algebra(target, &pattern, &qs(&[5, 7]))?;
    gens.extend(iterate_pattern(target, &pattern)?.quantum_generators(&qs(&[5, 7]))?);
    out.report("glued quantum family commutes", &commutation_matrix_labelled(&gens)?.report);
    for n in [2, 3] {
        let sig = Signature::quantum(2, n)?;
        out.report(&format!("bending classical limits, N = {n}"), &bending_classical_match(sig, &q(0), &q(1))?);
    }
    Ok(out)
}

fn fails_with_witness(r: &Report) -> bool {
    !r.pass && !r.witnesses.is_empty()
}

fn controls() -> Result<Outcome> {
    let mut out = Outcome::new();
    let sig = Signature::classical(2, 4)?;
    let corrupted = BracketSpec::Operator(PoissonOperator::limit_rijk(4).corrupted(1, 2));
    out.require("corrupted operator fails Jacobi", fails_with_witness(&jacobi_check(&corrupted, sig, 10, SEED)?));
    out.require(
        "standard with corrupted fails compatibility",
        fails_with_witness(&compatibility_check(&BracketSpec::Standard, &corrupted, sig, 10, SEED)?),
    );

    let qsig = Signature::quantum(2, 1)?;
    let z = DiffOp::from_ratfun(qsig, RatFun::z());
    let weyl = ManinCandidate::new(qsig, 2, vec![z.clone(), DiffOp::d(qsig), DiffOp::one(qsig), z])?;
    let verdict = is_manin(&weyl)?;
    out.require("Weyl pair is not Manin and has a witness", !verdict.manin && verdict.witness.is_some());
    let l = gaudin_lax(qsig, &default_poles(1))?;
    let transposed = ManinCandidate::new(qsig, 2, {
        let m = ManinCandidate::d_minus_lax(&l);
        vec![m.entry(1, 1).clone(), m.entry(2, 1).clone(), m.entry(1, 2).clone(), m.entry(2, 2).clone()]
    })?;
    let verdict = is_manin(&transposed)?;
    out.require("transposed convention is not Manin and has a witness", !verdict.manin && verdict.witness.is_some());

    let pair = commutation_matrix(&[e(qsig, 1, 1, 1), e(qsig, 1, 1, 2)])?;
    out.require("non-commuting pair fails with a witness", fails_with_witness(&pair));
    Ok(out)
}

type Criterion = (&'static str, fn() -> Result<Outcome>);

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 9] = [
        ("1 quadratic commutativity", quadratic_commutativity),
        ("2 glued family commutes", glue_commutativity),
        ("3 rank completeness", rank_completeness),
        ("4 H_G membership", hg_membership),
        ("5 limit bracket reconstruction", limit_bracket),
        ("6 bending flows", bending_flows),
        ("7 Manin and Talalaev", manin_talalaev),
        ("8 quantum limit algebras", quantum_limits),
        ("9 controls", controls),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        let start = std::time::Instant::now();
        let outcome = run().unwrap_or_else(|err| Outcome { pass: false, detail: vec![format!("error: {err}")] });
        let verdict = if outcome.pass { "PASS" } else { "FAIL" };
        println!("{verdict} criterion {name} ({:.1}s)", start.elapsed().as_secs_f64());
        for d in &outcome.detail {
            println!("    {d}");
        }
        if !outcome.pass {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
