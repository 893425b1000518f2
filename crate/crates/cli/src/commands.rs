//! `build`, `verify` and `export`. Build and verify return an [`Artifact`];
//! the binary writes it into the run directory, where `export` collects it.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use gaudin_core::gluing::{
    bending_classical_match, bending_generator_list, family_commutation, hg_membership_check, iterate_pattern,
    limit_gaudin_algebra, quantum_bending_generators, rank_completeness_check, GluingPattern, LimitFamily,
};
use gaudin_core::lax::{
    bending_lax, bending_lax_rational, gaudin_lax, physical_hamiltonian, quadratic_hamiltonians, spectral_invariants,
    LaxMatrix,
};
use gaudin_core::manin::{
    column_order_invariance, commutation_matrix_labelled, is_manin, newton_check, talalaev_commutation_check,
    talalaev_generators, CommutationMatrix, ManinCandidate,
};
use gaudin_core::poissonstruct::{
    compatibility_check, family_commutes_under, fivesite_operator, jacobi_check, operator_identity, BracketSpec,
    PoissonOperator,
};
use gaudin_core::{Mode, NCPoly, Report, Signature};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::{RunConfig, Suite, Target};
use crate::error::{CliError, CliResult};
use crate::render;

pub const ARTIFACT_SCHEMA: &str = "gaudin-artifact/1";
pub const EXPORT_SCHEMA: &str = "gaudin-export/1";

/// One constructed object: a display rendering plus structured data.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Object {
    pub name: String,
    /// `lax_matrix`, `polynomial`, `invariant`, `talalaev`, `operator` or `commutation_matrix`.
    pub kind: String,
    pub text: String,
    pub data: Value,
}

/// Result of one `build` or `verify` run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Artifact {
    pub schema: String,
    pub command: String,
    pub target: String,
    pub signature: String,
    pub seed: u64,
    pub settings: BTreeMap<String, String>,
    /// True when every report passed.
    pub pass: bool,
    pub objects: Vec<Object>,
    pub reports: Vec<Report>,
}

impl Artifact {
    fn new(command: &str, target: &str, sig: Signature, config: &RunConfig) -> Self {
        Self {
            schema: ARTIFACT_SCHEMA.into(),
            command: command.into(),
            target: target.into(),
            signature: sig.to_string(),
            seed: config.seed,
            settings: config.settings(),
            pass: true,
            objects: Vec::new(),
            reports: Vec::new(),
        }
    }

    fn object(&mut self, name: impl Into<String>, kind: &str, text: String, data: impl Serialize) {
        let data = serde_json::to_value(data).expect("artifact data serializes");
        self.objects.push(Object { name: name.into(), kind: kind.into(), text, data });
    }

    fn lax(&mut self, l: &LaxMatrix) {
        self.object(l.label(), "lax_matrix", l.to_string(), l);
    }

    fn poly(&mut self, name: impl Into<String>, p: &NCPoly) {
        self.object(name, "polynomial", p.to_string(), p);
    }

    fn commutation(&mut self, name: &str, cm: &CommutationMatrix) {
        self.object(name, "commutation_matrix", render::zero_pattern(&cm.zero), cm);
    }

    fn report(&mut self, check: &str, mut r: Report) {
        r.check = check.into();
        r.seed.get_or_insert(self.seed);
        self.pass &= r.pass;
        self.reports.push(r);
    }

    /// `build-<target>.json` or `verify-<suite>.json`.
    pub fn file_name(&self) -> String {
        format!("{}-{}.json", self.command, self.target)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("artifact serializes") + "\n"
    }

    /// Writes the artifact into `dir`, creating it if needed.
    pub fn write(&self, dir: &Path) -> CliResult<PathBuf> {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Io(dir.to_path_buf(), e))?;
        let path = dir.join(self.file_name());
        std::fs::write(&path, self.to_json()).map_err(|e| CliError::Io(path.clone(), e))?;
        Ok(path)
    }
}

fn bending_indices(config: &RunConfig, sites: usize) -> Vec<usize> {
    match config.k {
        Some(k) => vec![k],
        None => (1..sites).collect(),
    }
}

fn pattern_or_default(config: &RunConfig, sites: usize) -> CliResult<GluingPattern> {
    match config.parsed_pattern()? {
        Some(p) => Ok(p),
        None if sites >= 2 => Ok(GluingPattern::elementary(sites, 1, &gaudin_core::rational::q(1))?),
        None => Err(CliError::Config("gluing needs at least two sites or an explicit --pattern".into())),
    }
}

fn require_mode(sig: Signature, mode: Mode, what: &str) -> CliResult<()> {
    if sig.mode() != mode {
        return Err(CliError::Usage(format!("{what} is defined in {mode} mode only, got {}", sig.mode())));
    }
    Ok(())
}

/// Constructs the objects named by `config.what`.
pub fn cmd_build(config: &RunConfig) -> CliResult<Artifact> {
    let target = config.what;
    let sig = config.signature(target.default_mode())?;
    let n = sig.sites();
    let poles = config.resolved_poles(n);
    let mut out = Artifact::new("build", target.name(), sig, config);
    match target {
        Target::Gaudin => out.lax(&gaudin_lax(sig, &poles)?),
        Target::Quadratic => {
            let h = quadratic_hamiltonians(sig, &poles)?;
            for (i, hi) in h.iter().enumerate() {
                out.poly(format!("H_{}", i + 1), hi);
            }
            let sum = h.iter().fold(NCPoly::zero(sig), |acc, x| &acc + x);
            let mut r = Report::new("", sig.to_string());
            if sum.is_zero() {
                r.note("sum of H_i = 0");
            } else {
                r.fail(format!("sum of H_i = {sum}"));
            }
            out.report("quadratic_sum", r);
        }
        Target::Physical => out.poly("H_G", &physical_hamiltonian(sig)?),
        Target::Invariants => {
            require_mode(sig, Mode::Classical, "spectral invariants")?;
            let family = spectral_invariants(&gaudin_lax(sig, &poles)?, sig.rank() as u32)?;
            for m in &family.members {
                out.object(m.provenance.to_string(), "invariant", m.poly.to_string(), m);
            }
        }
        Target::Bending => {
            for k in bending_indices(config, n) {
                out.lax(&bending_lax(sig, k)?);
            }
        }
        Target::BendingRational => {
            for k in bending_indices(config, n) {
                out.lax(&bending_lax_rational(sig, k, &config.z1, &config.z2)?);
            }
        }
        Target::Glue => {
            let pattern = pattern_or_default(config, n)?;
            for l in iterate_pattern(sig, &pattern)?.matrices {
                out.lax(&l);
            }
        }
        Target::Talalaev => {
            require_mode(sig, Mode::Quantum, "talalaev")?;
            let t = talalaev_generators(&gaudin_lax(sig, &poles)?)?;
            out.object("talalaev", "talalaev", render::talalaev_text(&t), &t);
        }
        Target::LimitOperator => {
            let p = PoissonOperator::limit_rijk(n);
            out.object(p.label(), "operator", p.to_string(), &p);
        }
        Target::FivesiteOperator => {
            let p = fivesite_operator(&poles)?;
            out.object(p.label(), "operator", p.to_string(), &p);
        }
    }
    Ok(out)
}

/// Runs one verification suite. The artifact passes iff every report does.
pub fn cmd_verify(config: &RunConfig, suite: Suite) -> CliResult<Artifact> {
    let mode = config.mode.unwrap_or(suite.default_mode());
    if !suite.supports(mode) {
        return Err(CliError::Usage(format!("suite `{}` is not defined in {mode} mode", suite.name())));
    }
    let sig = config.signature(suite.default_mode())?;
    let n = sig.sites();
    let poles = config.resolved_poles(n);
    let mut out = Artifact::new("verify", suite.name(), sig, config);
    match suite {
        Suite::Quadratic => {
            let h = quadratic_hamiltonians(sig, &poles)?;
            let labelled: Vec<(String, NCPoly)> = h.iter().enumerate().map(|(i, x)| (format!("H_{}", i + 1), x.clone())).collect();
            let cm = commutation_matrix_labelled(&labelled)?;
            out.commutation("[H_i, H_j]", &cm);
            out.report("quadratic_commutation", cm.report);
            let sum = h.iter().fold(NCPoly::zero(sig), |acc, x| &acc + x);
            let mut r = Report::new("", sig.to_string());
            if !sum.is_zero() {
                r.fail(format!("sum of H_i = {sum}"));
            }
            out.report("quadratic_sum", r);
        }
        Suite::Glue => {
            let pattern = pattern_or_default(config, n)?;
            let family = iterate_pattern(sig, &pattern)?;
            for l in &family.matrices {
                out.lax(l);
            }
            verify_glue(config, sig, &poles, &pattern, &family, &mut out)?;
        }
        Suite::Bending => verify_bending(config, sig, &mut out)?,
        Suite::Talalaev => {
            let t = talalaev_generators(&gaudin_lax(sig, &poles)?)?;
            out.object("talalaev", "talalaev", render::talalaev_text(&t), &t);
            out.report("talalaev_commutation", talalaev_commutation_check(&t, &config.eval)?);
        }
        Suite::Manin => {
            let m = ManinCandidate::d_minus_lax(&gaudin_lax(sig, &poles)?);
            let verdict = is_manin(&m)?;
            let mut r = Report::new("", format!("d - L_G on {sig}")).with_trials(1);
            if let Some(w) = &verdict.witness {
                r.fail(serde_json::to_string(w).expect("witness serializes"));
            }
            out.report("manin_predicate", r);
            out.report("column_order_invariance", column_order_invariance(&m)?);
            out.report("newton_identities", newton_check(&m)?);
        }
        Suite::Poisson => {
            let op = PoissonOperator::limit_rijk(n);
            out.object(op.label(), "operator", op.to_string(), &op);
            if n == 4 {
                out.report("operator_identity", operator_identity(&op, &PoissonOperator::explicit_limit_four_site()));
            }
            out.report("jacobi", jacobi_check(&BracketSpec::LimitRijk, sig, config.trials, config.seed)?);
            let compat = compatibility_check(&BracketSpec::Standard, &BracketSpec::LimitRijk, sig, config.trials, config.seed)?;
            out.report("compatibility", compat);
        }
    }
    Ok(out)
}

fn verify_glue(
    config: &RunConfig,
    sig: Signature,
    poles: &[gaudin_core::Q],
    pattern: &GluingPattern,
    family: &LimitFamily,
    out: &mut Artifact,
) -> CliResult<()> {
    match sig.mode() {
        Mode::Classical => {
            let invariants = family.classical_invariants(sig.rank() as u32)?;
            let cm = family_commutation(&invariants)?;
            out.commutation("glued invariants", &cm);
            out.report("glue_commutation", cm.report);
            let generic = spectral_invariants(&gaudin_lax(sig, poles)?, sig.rank() as u32)?;
            out.report("rank_completeness", rank_completeness_check(sig, &invariants, &generic, config.trials, config.seed)?);
            if sig.sites() >= 2 {
                out.report("hg_membership", hg_membership_check(sig, &invariants)?);
            }
        }
        Mode::Quantum => {
            let mut gens = limit_gaudin_algebra(sig, pattern, &config.eval)?;
            gens.extend(family.quantum_generators(&config.eval)?);
            let cm = commutation_matrix_labelled(&gens)?;
            out.commutation("glued quantum generators", &cm);
            out.report("glue_commutation", cm.report);
        }
    }
    Ok(())
}

fn verify_bending(config: &RunConfig, sig: Signature, out: &mut Artifact) -> CliResult<()> {
    let n = sig.sites();
    if n < 2 {
        return Err(CliError::Config("bending flows need at least two sites".into()));
    }
    let comb = iterate_pattern(sig, &GluingPattern::left_comb(n, &config.z1, &config.z2)?)?;
    let expected: Vec<LaxMatrix> =
        (1..n).map(|k| bending_lax_rational(sig, k, &config.z1, &config.z2)).collect::<gaudin_core::Result<_>>()?;
    let mut structural = Report::new("", format!("left comb on {sig}")).with_trials(expected.len());
    for (got, want) in comb.matrices.iter().zip(&expected) {
        if got != want {
            structural.fail(format!("{} differs from the rational bending matrix", got.label()));
        }
    }
    if comb.matrices.len() != expected.len() {
        structural.fail(format!("{} matrices, expected {}", comb.matrices.len(), expected.len()));
    }
    out.report("left_comb_structure", structural);
    match sig.mode() {
        Mode::Classical => {
            let family = comb.classical_invariants(sig.rank() as u32)?;
            out.report("bending_standard", family_commutes_under(&BracketSpec::Standard, &family)?);
            out.report("bending_limit", family_commutes_under(&BracketSpec::LimitRijk, &family)?);
        }
        Mode::Quantum => {
            out.report("bending_classical_limits", bending_classical_match(sig, &config.z1, &config.z2)?);
            let gens = bending_generator_list(&quantum_bending_generators(sig, &config.z1, &config.z2)?);
            let cm = commutation_matrix_labelled(&gens)?;
            out.commutation("quantum bending generators", &cm);
            out.report("bending_quantum_commutation", cm.report);
        }
    }
    Ok(())
}

/// Combined export of every artifact in a run directory.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Export {
    pub schema: String,
    pub pass: bool,
    pub artifacts: Vec<Artifact>,
}

/// Artifacts in `dir`, ordered by file name.
pub fn load_artifacts(dir: &Path) -> CliResult<Vec<Artifact>> {
    let entries = match std::fs::read_dir(dir) {
        Ok(e) => e,
        Err(_) => return Err(CliError::MissingArtifacts(dir.to_path_buf())),
    };
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            let name = p.file_name().and_then(|n| n.to_str()).unwrap_or("");
            (name.starts_with("build-") || name.starts_with("verify-")) && name.ends_with(".json")
        })
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(CliError::MissingArtifacts(dir.to_path_buf()));
    }
    paths
        .into_iter()
        .map(|p| {
            let text = std::fs::read_to_string(&p).map_err(|e| CliError::Io(p.clone(), e))?;
            serde_json::from_str(&text).map_err(|e| CliError::Artifact(p.clone(), e))
        })
        .collect()
}

/// Writes `export.json`, plus `export.tex` or `export.txt` for the LaTeX
/// and text formats. Returns the export and the written paths.
pub fn cmd_export(config: &RunConfig) -> CliResult<(Export, Vec<PathBuf>)> {
    let artifacts = load_artifacts(&config.out)?;
    let export = Export { schema: EXPORT_SCHEMA.into(), pass: artifacts.iter().all(|a| a.pass), artifacts };
    let mut written = Vec::new();
    let mut write = |name: &str, body: String| -> CliResult<()> {
        let path = config.out.join(name);
        std::fs::write(&path, body).map_err(|e| CliError::Io(path.clone(), e))?;
        written.push(path);
        Ok(())
    };
    write("export.json", serde_json::to_string_pretty(&export).expect("export serializes") + "\n")?;
    match config.format {
        crate::config::Format::Json => {}
        crate::config::Format::Latex => write("export.tex", render::latex_document(&export.artifacts))?,
        crate::config::Format::Text => {
            write("export.txt", export.artifacts.iter().map(render::text).collect::<Vec<_>>().join("\n"))?
        }
    }
    Ok((export, written))
}
