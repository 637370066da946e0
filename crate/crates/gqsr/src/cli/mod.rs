//! Command-line front end. Every verb reads a `key = value` config (plus
//! `--set` overrides), writes CSV tables, a JSON summary and a manifest, and
//! exits 0 ok, 1 validation, 2 numerical, 3 I/O.

pub mod config;
pub mod output;
pub mod verbs;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use config::{Params, RawConfig};
use output::{output_dir, write_run, Format, Manifest};

#[derive(Debug, Parser)]
#[command(name = "gqsr", version, about = "Gravitational self-energy, collapse lifetimes and BEC decoherence budgets")]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// E_G against b/(2R) for one profile and configuration.
    EgCurve(RunArgs),
    /// Ratio of two configurations' E_G over (ε, b).
    Contour(RunArgs),
    /// Collapse lifetime, survival probabilities and sampled collapse times.
    Lifetime(RunArgs),
    /// Decay of the N-particle correlation per decoherence channel.
    Decoherence(RunArgs),
    /// Collapse rate against decoherence, optionally over a parameter scan.
    Feasibility(RunArgs),
    /// Closed forms against the brute-force oracles; exits 2 on disagreement.
    OracleCheck(RunArgs),
    /// NOON correlations and Bose-Hubbard ground-state fidelities.
    TwomodeCheck(RunArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Config file of `key = value` lines.
    #[arg(short, long)]
    pub config: Option<PathBuf>,
    /// Output directory (default: $GQSR_OUT_DIR, else ./gqsr-out).
    #[arg(short, long)]
    pub out: Option<PathBuf>,
    /// Named parameter set; explicit keys override it.
    #[arg(long)]
    pub preset: Option<String>,
    /// Seed for sampling.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Collapse parameter γ (number or 8pi).
    #[arg(long)]
    pub gamma: Option<String>,
    /// Override one key, `key=value`; repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub set: Vec<String>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: FormatArg,
    /// Print the accepted keys and exit.
    #[arg(long)]
    pub list_keys: bool,
}

impl Verb {
    pub fn name(&self) -> &'static str {
        match self {
            Verb::EgCurve(_) => "eg-curve",
            Verb::Contour(_) => "contour",
            Verb::Lifetime(_) => "lifetime",
            Verb::Decoherence(_) => "decoherence",
            Verb::Feasibility(_) => "feasibility",
            Verb::OracleCheck(_) => "oracle-check",
            Verb::TwomodeCheck(_) => "twomode-check",
        }
    }

    pub fn args(&self) -> &RunArgs {
        match self {
            Verb::EgCurve(a)
            | Verb::Contour(a)
            | Verb::Lifetime(a)
            | Verb::Decoherence(a)
            | Verb::Feasibility(a)
            | Verb::OracleCheck(a)
            | Verb::TwomodeCheck(a) => a,
        }
    }
}

/// Key layers contributed by a preset for verbs whose presets are plain key sets.
fn preset_layer(verb: &str, name: &str) -> Result<Option<RawConfig>> {
    let text = match (verb, name) {
        ("lifetime", "cs-4e9-1um") => "body = tf\nspecies = Cs133\nn_atoms = 4e9\nradius = 1e-6\nseparation = touching\n",
        ("lifetime", "feynman-sphere") => "body = uniform\nmass = 1e-14\nradius = 1e-6\nseparation = far\ntimes = 2.5\n",
        ("lifetime", _) => {
            return Err(Error::Config(format!("unknown lifetime preset `{name}` (cs-4e9-1um, feynman-sphere)")))
        }
        _ => return Ok(None),
    };
    RawConfig::parse(text, verb).map(Some)
}

/// Merges preset, config file and command-line overrides into resolved parameters.
pub fn resolve(verb: &str, args: &RunArgs) -> Result<Params> {
    let mut raw = match &args.config {
        Some(path) => RawConfig::parse(&read_config(path)?, verb)?,
        None => RawConfig::default(),
    };
    for s in &args.set {
        raw.set(s)?;
    }
    if let Some(g) = &args.gamma {
        raw.values.insert("gamma".into(), g.clone());
    }
    if let Some(p) = &args.preset {
        raw.values.insert("preset".into(), p.clone());
    }
    let preset = raw.values.get("preset").cloned().unwrap_or_default();
    if !preset.is_empty() {
        if let Some(layer) = preset_layer(verb, &preset)? {
            raw.values.remove("preset");
            raw = raw.over(layer);
            raw.values.insert("preset".into(), preset);
        }
    }
    Params::resolve(verb, &verbs::keys(verb)?, &raw)
}

fn read_config(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("config {}: {e}", path.display()))))
}

/// What a completed run reports back.
#[derive(Debug)]
pub struct RunReport {
    pub dir: PathBuf,
    pub manifest: Manifest,
    pub headline: String,
    pub failures: Vec<String>,
}

/// Runs one verb and writes its outputs. A run whose checks fail still
/// writes everything and reports the failures.
pub fn run(verb: &Verb) -> Result<RunReport> {
    let args = verb.args();
    let name = verb.name();
    let params = resolve(name, args)?;
    let out = verbs::execute(name, &params, args.seed)?;
    let dir = output_dir(args.out.as_deref());
    let format = match args.format {
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
    };
    let manifest = write_run(&dir, name, args.seed, params.values(), &out.output, format)?;
    let headline = out.output.summary.get("headline").and_then(|h| h.as_str()).unwrap_or("").to_string();
    Ok(RunReport { dir, manifest, headline, failures: out.failures })
}

fn print_keys(verb: &str) -> Result<()> {
    let mut so = std::io::stdout().lock();
    for k in verbs::keys(verb)? {
        let d = if k.default.is_empty() { "-" } else { k.default };
        let _ = writeln!(so, "{:<24} {:<14} {}", k.name, d, k.help);
    }
    Ok(())
}

/// Parses `argv`, runs, prints a short report and returns the exit code.
pub fn main_with<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if cli.verb.args().list_keys {
        return match print_keys(cli.verb.name()) {
            Ok(()) => 0,
            Err(e) => {
                eprintln!("error: {e}");
                e.exit_code()
            }
        };
    }
    match run(&cli.verb) {
        Ok(r) => {
            // a closed stdout (e.g. `| head`) is not an error
            let mut so = std::io::stdout().lock();
            if !r.headline.is_empty() {
                let _ = writeln!(so, "{}", r.headline);
            }
            for f in &r.manifest.outputs {
                let _ = writeln!(so, "wrote {}", r.dir.join(&f.file).display());
            }
            let _ = writeln!(so, "content hash {}", r.manifest.content_hash);
            if r.failures.is_empty() {
                0
            } else {
                for f in &r.failures {
                    eprintln!("check failed: {f}");
                }
                2
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verb_names_match_the_registry() {
        for v in verbs::VERBS {
            assert!(verbs::keys(v).is_ok());
        }
        let cli = Cli::try_parse_from(["gqsr", "oracle-check", "--set", "cases=all-voxel"]).unwrap();
        assert_eq!(cli.verb.name(), "oracle-check");
    }

    #[test]
    fn lifetime_preset_layers_under_overrides() {
        let cli = Cli::try_parse_from(["gqsr", "lifetime", "--preset", "cs-4e9-1um", "--set", "n_atoms=1e9"]).unwrap();
        let p = resolve("lifetime", cli.verb.args()).unwrap();
        assert_eq!(p.str("n_atoms"), "1e9");
        assert_eq!(p.str("radius"), "1e-6");
        assert_eq!(p.str("preset"), "cs-4e9-1um");
    }

    #[test]
    fn gamma_flag_is_rejected_where_meaningless() {
        let cli = Cli::try_parse_from(["gqsr", "twomode-check", "--gamma", "8pi"]).unwrap();
        assert_eq!(resolve("twomode-check", cli.verb.args()).unwrap_err().exit_code(), 1);
    }
}
