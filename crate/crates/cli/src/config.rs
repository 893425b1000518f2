//! Run configuration: defaults, `key=value` files and desk-scale limits.
//!
//! Every command-line flag has a config-file key of the same name, so a
//! file line `poles = 0,1,2` is equivalent to `--poles 0,1,2`. Flags given
//! on the command line override the file.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use gaudin_core::gluing::GluingPattern;
use gaudin_core::rational::{fmt_q, parse_q, q};
use gaudin_core::{Mode, Signature, Q};

use crate::error::{CliError, CliResult};

pub const DEFAULT_SEED: u64 = 20_240_601;
pub const MAX_RANK: usize = 3;
pub const MAX_SITES_CLASSICAL: usize = 5;
pub const MAX_SITES_QUANTUM: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Latex,
    Text,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "json" => Ok(Format::Json),
            "latex" => Ok(Format::Latex),
            "text" => Ok(Format::Text),
            other => Err(CliError::Config(format!("unknown format `{other}` (json, latex, text)"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Latex => "latex",
            Format::Text => "text",
        })
    }
}

/// Objects `build` can construct.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Gaudin,
    Quadratic,
    Physical,
    Invariants,
    Bending,
    BendingRational,
    Glue,
    Talalaev,
    LimitOperator,
    FivesiteOperator,
}

impl Target {
    pub const ALL: [Target; 10] = [
        Target::Gaudin,
        Target::Quadratic,
        Target::Physical,
        Target::Invariants,
        Target::Bending,
        Target::BendingRational,
        Target::Glue,
        Target::Talalaev,
        Target::LimitOperator,
        Target::FivesiteOperator,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Target::Gaudin => "gaudin",
            Target::Quadratic => "quadratic",
            Target::Physical => "physical",
            Target::Invariants => "invariants",
            Target::Bending => "bending",
            Target::BendingRational => "bending-rational",
            Target::Glue => "glue",
            Target::Talalaev => "talalaev",
            Target::LimitOperator => "limit-operator",
            Target::FivesiteOperator => "fivesite-operator",
        }
    }

    /// Mode used when the configuration does not fix one.
    pub fn default_mode(self) -> Mode {
        match self {
            Target::Talalaev => Mode::Quantum,
            _ => Mode::Classical,
        }
    }
}

impl FromStr for Target {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        Target::ALL.into_iter().find(|t| t.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Target::ALL.iter().map(|t| t.name()).collect();
            CliError::Config(format!("unknown build target `{s}` ({})", names.join(", ")))
        })
    }
}

/// Verification suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Quadratic,
    Glue,
    Bending,
    Talalaev,
    Manin,
    Poisson,
}

impl Suite {
    pub const ALL: [Suite; 6] = [Suite::Quadratic, Suite::Glue, Suite::Bending, Suite::Talalaev, Suite::Manin, Suite::Poisson];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Quadratic => "quadratic",
            Suite::Glue => "glue",
            Suite::Bending => "bending",
            Suite::Talalaev => "talalaev",
            Suite::Manin => "manin",
            Suite::Poisson => "poisson",
        }
    }

    pub fn default_mode(self) -> Mode {
        match self {
            Suite::Talalaev | Suite::Manin => Mode::Quantum,
            _ => Mode::Classical,
        }
    }

    /// Modes in which the suite is defined.
    pub fn supports(self, mode: Mode) -> bool {
        match self {
            Suite::Talalaev | Suite::Manin => mode == Mode::Quantum,
            Suite::Poisson => mode == Mode::Classical,
            Suite::Quadratic | Suite::Glue | Suite::Bending => true,
        }
    }
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        Suite::ALL.into_iter().find(|t| t.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|t| t.name()).collect();
            CliError::Usage(format!("unknown suite `{s}` ({})", names.join(", ")))
        })
    }
}

/// Everything a command needs. Unset optional fields are resolved against
/// the command's defaults by [`RunConfig::signature`] and friends.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    /// `r` in `gl(r)`. Key `r`, default 2.
    pub rank: usize,
    /// Key `sites`; otherwise inferred from `poles` or `pattern`, else 3.
    pub sites: Option<usize>,
    /// Key `mode` (`classical` or `quantum`); default depends on the command.
    pub mode: Option<Mode>,
    /// Key `poles`, comma-separated rationals; default `0, 1, …, N−1`.
    pub poles: Option<Vec<Q>>,
    /// Key `pattern`, gluing-pattern text.
    pub pattern: Option<String>,
    /// Key `eval`, evaluation points for `z`-dependent generators; default `5,7,11`.
    pub eval: Vec<Q>,
    /// Key `trials`, random trials per randomized check; default 10.
    pub trials: usize,
    /// Key `seed`; default 20240601.
    pub seed: u64,
    /// Key `k`, bending index; all `k` when unset.
    pub k: Option<usize>,
    /// Keys `z1`, `z2`: the two poles of the rational bending matrices; default 0 and 1.
    pub z1: Q,
    pub z2: Q,
    /// Key `what`, build target; default `gaudin`.
    pub what: Target,
    /// Key `out`, run directory for artifacts; default `gaudin-run`.
    pub out: PathBuf,
    /// Key `format`; default `json`.
    pub format: Format,
    /// Key `unsafe-scale`; lifts the desk-scale limits.
    pub unsafe_scale: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            rank: 2,
            sites: None,
            mode: None,
            poles: None,
            pattern: None,
            eval: vec![q(5), q(7), q(11)],
            trials: 10,
            seed: DEFAULT_SEED,
            k: None,
            z1: q(0),
            z2: q(1),
            what: Target::Gaudin,
            out: PathBuf::from("gaudin-run"),
            format: Format::Json,
            unsafe_scale: false,
        }
    }
}

fn parse_list(key: &str, value: &str) -> CliResult<Vec<Q>> {
    value
        .split(',')
        .map(|x| parse_q(x).ok_or_else(|| CliError::Config(format!("{key}: `{}` is not a rational number", x.trim()))))
        .collect()
}

fn parse_num<T: FromStr>(key: &str, value: &str) -> CliResult<T> {
    value.trim().parse().map_err(|_| CliError::Config(format!("{key}: `{value}` is not a valid number")))
}

fn parse_bool(key: &str, value: &str) -> CliResult<bool> {
    match value.trim() {
        "true" | "yes" | "1" | "" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        other => Err(CliError::Config(format!("{key}: `{other}` is not a boolean"))),
    }
}

fn join(xs: &[Q]) -> String {
    xs.iter().map(fmt_q).collect::<Vec<_>>().join(",")
}

impl RunConfig {
    /// Sets one key. Keys and values are those of the command-line flags.
    pub fn set(&mut self, key: &str, value: &str) -> CliResult<()> {
        let value = value.trim();
        match key {
            "r" => self.rank = parse_num(key, value)?,
            "sites" => self.sites = Some(parse_num(key, value)?),
            "mode" => {
                self.mode = Some(match value {
                    "classical" => Mode::Classical,
                    "quantum" => Mode::Quantum,
                    other => return Err(CliError::Config(format!("mode: `{other}` is neither classical nor quantum"))),
                })
            }
            "poles" => self.poles = Some(parse_list(key, value)?),
            "pattern" => self.pattern = Some(value.to_string()),
            "eval" => self.eval = parse_list(key, value)?,
            "trials" => self.trials = parse_num(key, value)?,
            "seed" => self.seed = parse_num(key, value)?,
            "k" => self.k = Some(parse_num(key, value)?),
            "z1" => self.z1 = parse_q(value).ok_or_else(|| CliError::Config(format!("z1: `{value}` is not rational")))?,
            "z2" => self.z2 = parse_q(value).ok_or_else(|| CliError::Config(format!("z2: `{value}` is not rational")))?,
            "what" => self.what = value.parse()?,
            "out" => self.out = PathBuf::from(value),
            "format" => self.format = value.parse()?,
            "unsafe-scale" => self.unsafe_scale = parse_bool(key, value)?,
            other => return Err(CliError::Config(format!("unknown key `{other}`"))),
        }
        Ok(())
    }

    /// Applies a `key = value` text: one assignment per line, `#` starts a
    /// comment, blank lines are ignored.
    pub fn apply_text(&mut self, text: &str) -> CliResult<()> {
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("line {}: expected `key = value`", n + 1)))?;
            self.set(key.trim(), value)
                .map_err(|e| CliError::Config(format!("line {}: {}", n + 1, e.message())))?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> CliResult<()> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
        self.apply_text(&text)
    }

    /// The pattern, parsed against `sites` when known.
    pub fn parsed_pattern(&self) -> CliResult<Option<GluingPattern>> {
        let Some(text) = &self.pattern else { return Ok(None) };
        let parsed = match self.sites.or_else(|| self.poles.as_ref().map(Vec::len)) {
            Some(n) => GluingPattern::parse(text, n),
            None => GluingPattern::parse_inferred(text),
        };
        parsed.map(Some).map_err(|e| CliError::Core(e.into()))
    }

    /// Number of sites: explicit, else from the poles, else from the pattern, else 3.
    pub fn resolved_sites(&self) -> CliResult<usize> {
        if let Some(n) = self.sites {
            if let Some(p) = &self.poles {
                if p.len() != n {
                    return Err(CliError::Config(format!("sites = {n} but {} poles were given", p.len())));
                }
            }
            return Ok(n);
        }
        if let Some(p) = &self.poles {
            return Ok(p.len());
        }
        if let Some(p) = self.parsed_pattern()? {
            return Ok(p.sites());
        }
        Ok(3)
    }

    /// Signature in the configured mode (or `default_mode`), within the
    /// desk-scale limits unless `unsafe-scale` is set.
    pub fn signature(&self, default_mode: Mode) -> CliResult<Signature> {
        let mode = self.mode.unwrap_or(default_mode);
        let sites = self.resolved_sites()?;
        if !self.unsafe_scale {
            let max_sites = match mode {
                Mode::Classical => MAX_SITES_CLASSICAL,
                Mode::Quantum => MAX_SITES_QUANTUM,
            };
            if self.rank > MAX_RANK || sites > max_sites {
                return Err(CliError::Config(format!(
                    "gl({})^{sites} in {mode} mode exceeds the desk-scale limits r ≤ {MAX_RANK}, N ≤ {max_sites}; pass --unsafe-scale to override",
                    self.rank
                )));
            }
        }
        Ok(Signature::new(self.rank, sites, mode)?)
    }

    /// Poles: configured, else `0, 1, …, N−1`.
    pub fn resolved_poles(&self, sites: usize) -> Vec<Q> {
        self.poles.clone().unwrap_or_else(|| (0..sites as i64).map(q).collect())
    }

    /// Settings that determine an artifact's content, as strings. The run
    /// directory and output format are left out so artifacts do not depend
    /// on where or how they are printed.
    pub fn settings(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        m.insert("r".into(), self.rank.to_string());
        if let Some(n) = self.sites {
            m.insert("sites".into(), n.to_string());
        }
        if let Some(mode) = self.mode {
            m.insert("mode".into(), mode.name().into());
        }
        if let Some(p) = &self.poles {
            m.insert("poles".into(), join(p));
        }
        if let Some(p) = &self.pattern {
            m.insert("pattern".into(), p.clone());
        }
        m.insert("eval".into(), join(&self.eval));
        m.insert("trials".into(), self.trials.to_string());
        m.insert("seed".into(), self.seed.to_string());
        if let Some(k) = self.k {
            m.insert("k".into(), k.to_string());
        }
        m.insert("z1".into(), fmt_q(&self.z1));
        m.insert("z2".into(), fmt_q(&self.z2));
        m.insert("unsafe-scale".into(), self.unsafe_scale.to_string());
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_config_mirrors_flags() {
        let mut c = RunConfig::default();
        c.apply_text("# desk run\nr = 3\npoles = 0, 1/2, 2\nmode=quantum\nformat = latex\nunsafe-scale = true\n").unwrap();
        assert_eq!(c.rank, 3);
        assert_eq!(c.poles, Some(vec![q(0), gaudin_core::rational::qf(1, 2), q(2)]));
        assert_eq!(c.mode, Some(Mode::Quantum));
        assert_eq!(c.format, Format::Latex);
        assert!(c.unsafe_scale);
        assert_eq!(c.resolved_sites().unwrap(), 3);
    }

    #[test]
    fn bad_lines_name_their_position() {
        let mut c = RunConfig::default();
        let err = c.apply_text("r = 2\nnonsense\n").unwrap_err();
        assert!(err.to_string().contains("line 2"));
        let err = c.apply_text("colour = blue").unwrap_err();
        assert!(err.to_string().contains("unknown key"));
    }

    #[test]
    fn sites_come_from_the_pattern() {
        let mut c = RunConfig::default();
        c.set("pattern", "[1,2,[3,4,5]@3]").unwrap();
        assert_eq!(c.resolved_sites().unwrap(), 5);
        c.set("sites", "4").unwrap();
        assert!(c.parsed_pattern().is_err());
    }

    #[test]
    fn limits_apply_unless_overridden() {
        let mut c = RunConfig::default();
        c.set("sites", "4").unwrap();
        assert!(c.signature(Mode::Quantum).is_err());
        assert!(c.signature(Mode::Classical).is_ok());
        c.set("unsafe-scale", "true").unwrap();
        assert!(c.signature(Mode::Quantum).is_ok());
    }
}
