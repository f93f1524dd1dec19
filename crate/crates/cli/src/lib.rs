//! Command-line verifier: every check is a subcommand producing a JSON report
//! with sorted keys and no timing data.

mod json;
mod sections;

use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Parser, ValueEnum};
use serde_json::{json, Map, Value};
use thiserror::Error;

pub use json::Section;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Command {
    Presentation,
    Rho,
    Geometry,
    BaseLocus,
    Hilbert,
    Gk,
    Thick,
    Witness,
    Cartan,
    All,
}

impl Command {
    pub const CHECKS: [Command; 9] = [
        Command::Presentation,
        Command::Rho,
        Command::Geometry,
        Command::BaseLocus,
        Command::Hilbert,
        Command::Gk,
        Command::Thick,
        Command::Witness,
        Command::Cartan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Presentation => "presentation",
            Command::Rho => "rho",
            Command::Geometry => "geometry",
            Command::BaseLocus => "base-locus",
            Command::Hilbert => "hilbert",
            Command::Gk => "gk",
            Command::Thick => "thick",
            Command::Witness => "witness",
            Command::Cartan => "cartan",
            Command::All => "all",
        }
    }
}

fn parse_window(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected a:b, got {s:?}"))?;
    let a = a.trim().parse::<u32>().map_err(|e| format!("window start: {e}"))?;
    let b = b.trim().parse::<u32>().map_err(|e| format!("window end: {e}"))?;
    Ok((a, b))
}

#[derive(Debug, Parser)]
#[command(name = "wittcheck", version, about = "Exact verification suite with JSON reports")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Degree cap for section spaces and base loci.
    #[arg(long, default_value_t = 8)]
    pub max_degree: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Compute exact ranks by two independent eliminations and compare them.
    #[arg(long)]
    pub certified: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 50)]
    pub orbit_n: u32,
    #[arg(long, default_value = "8:40", value_parser = parse_window)]
    pub gk_window: (u32, u32),
    #[arg(long, default_value_t = 2)]
    pub witness_k: u32,
    #[arg(long, default_value_t = 8)]
    pub witness_m: u32,
    /// Compact JSON (the default).
    #[arg(long, conflicts_with = "pretty")]
    pub json: bool,
    /// Indented JSON.
    #[arg(long)]
    pub pretty: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub max_degree: u32,
    pub seed: u64,
    pub certified: bool,
    pub out: Option<PathBuf>,
    pub orbit_n: u32,
    pub gk_window: (u32, u32),
    pub witness_k: u32,
    pub witness_m: u32,
    pub pretty: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            max_degree: 8,
            seed: 0,
            certified: false,
            out: None,
            orbit_n: 50,
            gk_window: (8, 40),
            witness_k: 2,
            witness_m: 8,
            pretty: false,
        }
    }
}

impl From<&Cli> for RunConfig {
    fn from(c: &Cli) -> Self {
        RunConfig {
            max_degree: c.max_degree,
            seed: c.seed,
            certified: c.certified,
            out: c.out.clone(),
            orbit_n: c.orbit_n,
            gk_window: c.gk_window,
            witness_k: c.witness_k,
            witness_m: c.witness_m,
            pretty: c.pretty,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Config(m));
        if self.max_degree < 2 {
            return bad(format!("--max-degree must be at least 2, got {}", self.max_degree));
        }
        let (a, b) = self.gk_window;
        if a < 1 || b < a + 3 {
            return bad(format!("--gk-window {a}:{b} needs a >= 1 and at least four degrees"));
        }
        if self.orbit_n < 1 {
            return bad("--orbit-n must be positive".into());
        }
        if self.witness_k < 1 || self.witness_k >= self.witness_m {
            return bad(format!("need 1 <= --witness-k < --witness-m, got {} and {}", self.witness_k, self.witness_m));
        }
        Ok(())
    }

    fn echo(&self) -> Value {
        json!({
            "maxDegree": self.max_degree,
            "seed": self.seed,
            "certified": self.certified,
            "orbitN": self.orbit_n,
            "gkWindow": [self.gk_window.0, self.gk_window.1],
            "witnessK": self.witness_k,
            "witnessM": self.witness_m,
        })
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{0}")]
    Core(#[from] witt_core::Error),
    #[error("cannot write report: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Core(witt_core::Error::CertificationMismatch { .. }) => 3,
            CliError::Core(_) => 1,
        }
    }
}

/// Outcome of one subcommand, with per-check wall times kept out of the report.
#[derive(Debug)]
pub struct Outcome {
    pub report: Value,
    pub passed: bool,
    pub summary: Vec<(Command, bool, Vec<String>, Duration)>,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }

    pub fn render(&self, pretty: bool) -> String {
        let mut s =
            if pretty { serde_json::to_string_pretty(&self.report) } else { serde_json::to_string(&self.report) }
                .expect("JSON values always serialize");
        s.push('\n');
        s
    }
}

fn run_check(cmd: Command, cfg: &RunConfig) -> witt_core::Result<Section> {
    match cmd {
        Command::Presentation => sections::presentation(cfg),
        Command::Rho => sections::rho(cfg),
        Command::Geometry => sections::geometry(cfg),
        Command::BaseLocus => sections::base_locus_section(cfg),
        Command::Hilbert => sections::hilbert(cfg),
        Command::Gk => sections::gk(cfg),
        Command::Thick => sections::thick(cfg),
        Command::Witness => sections::witness(cfg),
        Command::Cartan => sections::cartan(cfg),
        Command::All => unreachable!("expanded by run"),
    }
}

pub fn run(cmd: Command, cfg: &RunConfig) -> Result<Outcome, CliError> {
    cfg.validate()?;
    let checks: Vec<Command> = if cmd == Command::All { Command::CHECKS.to_vec() } else { vec![cmd] };
    let mut results = Map::new();
    let mut summary = Vec::new();
    let mut passed = true;
    for c in checks {
        let start = Instant::now();
        let section = run_check(c, cfg)?;
        let ok = section.passed();
        let failed = section.failed_verdicts().into_iter().map(String::from).collect();
        summary.push((c, ok, failed, start.elapsed()));
        passed &= ok;
        results.insert(c.name().to_string(), section.into_json());
    }
    let report = json!({
        "schemaVersion": SCHEMA_VERSION,
        "subcommand": cmd.name(),
        "config": cfg.echo(),
        "passed": passed,
        "results": Value::Object(results),
    });
    Ok(Outcome { report, passed, summary })
}

/// Runs the parsed command line, writes the report and returns the exit code.
pub fn execute(cli: &Cli) -> i32 {
    let cfg = RunConfig::from(cli);
    let outcome = match run(cli.command, &cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("wittcheck: {e}");
            return e.exit_code();
        }
    };
    for (c, ok, failed, t) in &outcome.summary {
        let verdict = if *ok { "PASS".to_string() } else { format!("FAIL {}", failed.join(",")) };
        eprintln!("{:<13} {verdict} ({:.2} s)", c.name(), t.as_secs_f64());
    }
    let text = outcome.render(cfg.pretty);
    let written = match &cfg.out {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        let e = CliError::from(e);
        eprintln!("wittcheck: {e}");
        return e.exit_code();
    }
    outcome.exit_code()
}
