use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gaudin_cli::commands::{cmd_build, cmd_export, cmd_verify, Artifact};
use gaudin_cli::config::{Format, RunConfig, Suite};
use gaudin_cli::error::{CliError, CliResult};
use gaudin_cli::render;

/// Exact Gaudin-model algebra: build objects, verify claims, export reports.
///
/// Exit status: 0 when every check passes, 1 when a check fails, 2 on
/// usage or configuration errors. `GAUDIN_WORKERS` caps the thread pool.
#[derive(Parser)]
#[command(name = "gaudin", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct Lax matrices, Hamiltonians, invariants or operators.
    Build(Flags),
    /// Run a verification suite: quadratic, glue, bending, talalaev, manin or poisson.
    Verify {
        suite: String,
        #[command(flatten)]
        flags: Flags,
    },
    /// Collect the run directory's artifacts into export.json (and .tex or .txt).
    Export(Flags),
}

/// Every flag is also a config-file key of the same name.
#[derive(Args, Default)]
struct Flags {
    /// `key = value` file applied before the flags.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Rank r of gl(r).
    #[arg(long = "r")]
    r: Option<String>,
    /// Number of sites N.
    #[arg(long)]
    sites: Option<String>,
    /// classical or quantum.
    #[arg(long)]
    mode: Option<String>,
    /// Comma-separated distinct rational poles.
    #[arg(long, allow_hyphen_values = true)]
    poles: Option<String>,
    /// Gluing pattern such as "[1,2,[3,4,5]@3]".
    #[arg(long)]
    pattern: Option<String>,
    /// Evaluation points for z-dependent generators.
    #[arg(long, allow_hyphen_values = true)]
    eval: Option<String>,
    /// Random trials per randomized check.
    #[arg(long)]
    trials: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// Bending index k (all k when omitted).
    #[arg(long)]
    k: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    z1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    z2: Option<String>,
    /// Build target (gaudin, quadratic, physical, invariants, bending,
    /// bending-rational, glue, talalaev, limit-operator, fivesite-operator).
    #[arg(long)]
    what: Option<String>,
    /// Run directory for artifacts.
    #[arg(long)]
    out: Option<String>,
    /// json, latex or text.
    #[arg(long)]
    format: Option<String>,
    /// Lift the desk-scale limits on r and N.
    #[arg(long = "unsafe-scale")]
    unsafe_scale: bool,
}

impl Flags {
    fn config(&self) -> CliResult<RunConfig> {
        let mut c = RunConfig::default();
        if let Some(path) = &self.config {
            c.apply_file(path)?;
        }
        let pairs = [
            ("r", &self.r),
            ("sites", &self.sites),
            ("mode", &self.mode),
            ("poles", &self.poles),
            ("pattern", &self.pattern),
            ("eval", &self.eval),
            ("trials", &self.trials),
            ("seed", &self.seed),
            ("k", &self.k),
            ("z1", &self.z1),
            ("z2", &self.z2),
            ("what", &self.what),
            ("out", &self.out),
            ("format", &self.format),
        ];
        for (key, value) in pairs {
            if let Some(v) = value {
                c.set(key, v)?;
            }
        }
        if self.unsafe_scale {
            c.unsafe_scale = true;
        }
        Ok(c)
    }
}

fn init_workers() -> CliResult<()> {
    let Ok(value) = std::env::var("GAUDIN_WORKERS") else { return Ok(()) };
    let n: usize = value
        .trim()
        .parse()
        .map_err(|_| CliError::Config(format!("GAUDIN_WORKERS: `{value}` is not a thread count")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Config(format!("GAUDIN_WORKERS: {e}")))
}

fn emit(config: &RunConfig, artifact: &Artifact) -> CliResult<bool> {
    let path = artifact.write(&config.out)?;
    match config.format {
        Format::Json => print!("{}", artifact.to_json()),
        Format::Text => print!("{}", render::text(artifact)),
        Format::Latex => print!("{}", render::latex(artifact)),
    }
    eprintln!("wrote {}", path.display());
    Ok(artifact.pass)
}

fn run(cli: Cli) -> CliResult<bool> {
    init_workers()?;
    match cli.command {
        Command::Build(flags) => {
            let config = flags.config()?;
            emit(&config, &cmd_build(&config)?)
        }
        Command::Verify { suite, flags } => {
            let suite: Suite = suite.parse()?;
            let config = flags.config()?;
            emit(&config, &cmd_verify(&config, suite)?)
        }
        Command::Export(flags) => {
            let config = flags.config()?;
            let (export, written) = cmd_export(&config)?;
            for p in &written {
                println!("{}", p.display());
            }
            Ok(export.pass)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
