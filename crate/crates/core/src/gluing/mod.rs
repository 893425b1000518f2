//! Gluing patterns over pole sets, the limit Lax matrices they produce,
//! and the quantum limit algebras built from the site maps `D` and `I`.

mod family;
mod pattern;
mod quantum;

pub use family::{
    elementary_glue, family_commutation, hg_membership_check, invariant_label, iterate_pattern, jacobian_rank,
    rank_completeness_check, LimitFamily,
};
pub use pattern::{GluingPattern, PatternNode};
pub use quantum::{
    bending_classical_match, bending_generator_list, classical_bending_invariants, homomorphism_check,
    limit_gaudin_algebra, node_maps, quantum_bending_generators, quantum_d_map, quantum_i_map, BendingGenerator,
    SiteMap,
};

/// Parses a pattern over `sites` poles.
pub fn parse_pattern(text: &str, sites: usize) -> crate::Result<GluingPattern> {
    Ok(GluingPattern::parse(text, sites)?)
}
