//! `fockalg` command-line front end.
//!
//! Exit codes: 0 when every exact check passes, 1 when a relation fails, 2 on
//! invalid arguments.

mod commands;
mod report;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use fockalg::oscillator::OscillatorConfig;
use serde::Serialize;

use commands::{Family, InvalidArgument, Outcome, Phase};
use report::{Document, Format};

#[derive(Parser, Debug)]
#[command(
    version,
    about = "Exact Fock representations of A-(super)statistics and the A-superoscillator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Directory for `<command>.json` (and `<command>.csv`)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a Fock module and run every relation suite for its family
    Verify(VerifyArgs),
    /// Energy levels of the 3D A-superoscillator
    Spectrum(OscArgs),
    /// Position/momentum spreads in a basis state
    Uncertainty(StateArgs),
    /// Possible outcomes of a position measurement in a basis state
    Measure(StateArgs),
    /// Distance of rescaled A-statistics operators from Bose operators
    Limit(LimitArgs),
    /// Expectation values of R(t), P(t) over a time grid
    Evolve(EvolveArgs),
}

#[derive(Args, Debug, Serialize)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    n: usize,
    /// Order of statistics; the mode cutoff for `bose`
    #[arg(long)]
    p: u32,
    #[arg(long, value_enum, default_value_t = Phase::Standard)]
    phase: Phase,
    /// Also check that the operators span a Lie algebra (slow for large modules)
    #[arg(long)]
    closure: bool,
}

#[derive(Args, Debug, Serialize)]
struct OscArgs {
    #[arg(long)]
    p: u32,
    #[arg(long, default_value_t = 1.0)]
    hbar: f64,
    #[arg(long, default_value_t = 1.0)]
    mass: f64,
    #[arg(long, default_value_t = 1.0)]
    omega: f64,
}

impl OscArgs {
    fn config(&self) -> OscillatorConfig {
        OscillatorConfig {
            p: self.p,
            hbar: self.hbar,
            mass: self.mass,
            omega: self.omega,
        }
    }
}

#[derive(Args, Debug, Serialize)]
struct StateArgs {
    #[command(flatten)]
    #[serde(flatten)]
    osc: OscArgs,
    /// Occupations `θ1,θ2,θ3`, e.g. `1,0,0`
    #[arg(long)]
    state: String,
}

#[derive(Args, Debug, Serialize)]
struct LimitArgs {
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, value_delimiter = ',', default_value = "8,16,32,64")]
    p: Vec<u32>,
    /// Largest total occupation probed
    #[arg(long, default_value_t = 2)]
    cutoff: u32,
}

#[derive(Args, Debug, Serialize)]
struct EvolveArgs {
    #[command(flatten)]
    #[serde(flatten)]
    state: StateArgs,
    /// `start:stop:step`
    #[arg(long)]
    t: String,
}

/// Flag values as strings, keyed by flag name.
fn parameters(args: &impl Serialize) -> BTreeMap<String, String> {
    let value = serde_json::to_value(args).expect("flags serialize");
    value
        .as_object()
        .into_iter()
        .flatten()
        .map(|(k, v)| {
            let s = match v {
                serde_json::Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            (k.clone(), s)
        })
        .collect()
}

fn run(cli: &Cli) -> Result<bool> {
    let (name, params, outcome): (&str, _, Outcome) = match &cli.command {
        Command::Verify(a) => (
            "verify",
            parameters(a),
            commands::verify(a.family, a.n, a.p, a.phase, a.closure)?,
        ),
        Command::Spectrum(a) => (
            "spectrum",
            parameters(a),
            commands::spectrum_table(&a.config())?,
        ),
        Command::Uncertainty(a) => {
            let state = commands::parse_state(&a.state)?;
            (
                "uncertainty",
                parameters(a),
                commands::uncertainty(&a.osc.config(), &state)?,
            )
        }
        Command::Measure(a) => {
            let state = commands::parse_state(&a.state)?;
            (
                "measure",
                parameters(a),
                commands::measure(&a.osc.config(), &state)?,
            )
        }
        Command::Limit(a) => (
            "limit",
            parameters(a),
            commands::limit(a.n, a.p.clone(), a.cutoff)?,
        ),
        Command::Evolve(a) => {
            let state = commands::parse_state(&a.state.state)?;
            let grid = commands::parse_grid(&a.t)?;
            (
                "evolve",
                parameters(a),
                commands::evolve(&a.state.osc.config(), &state, &grid)?,
            )
        }
    };
    let mut params = params;
    params.insert("format".into(), format!("{:?}", cli.format).to_lowercase());
    let mut doc = Document::new(name, params);
    doc.reports = outcome.reports;
    doc.tables = outcome.tables;
    doc.emit(cli.format, cli.out.as_deref())?;
    Ok(outcome.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<InvalidArgument>() || e.is::<fockalg::Error>() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
