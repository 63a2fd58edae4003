use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bellkit::bell::U2Variant;
use bellkit_cli::params::{parse_params, Params};
use bellkit_cli::scenarios::{
    optimize, result_json, run_fig1, run_fig2, run_fig3, run_fig4, scenario_state, OptimizeRequest, Preset, ScanConfig,
};
use bellkit_cli::state_io::{export_state, parse_state, LoadedState};
use bellkit_cli::{CliError, Result};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "bellkit", version, about = "Bell-inequality scans and state I/O for spin systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Output file (fig1, fig2, optimize, state) or directory (fig3, fig4).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated k=v overrides; values accept pi forms such as 3pi/4.
    #[arg(long, default_value = "")]
    params: String,
}

#[derive(Args)]
struct Scan {
    #[command(flatten)]
    common: Common,
    /// Grid points per axis.
    #[arg(long, default_value_t = 101)]
    steps: usize,
    /// set1, familyB-p1 or familyB-p2.
    #[arg(long)]
    preset: Option<String>,
    /// u2-x or u2-y.
    #[arg(long, default_value = "u2-x")]
    variant: String,
}

#[derive(Subcommand)]
enum Command {
    /// Standard CHSH observables on the four-Bell-state family.
    Fig1(Scan),
    /// X-state closed form over the two coherences.
    Fig2(Scan),
    /// Qubit-qutrit mixture: beta surface and family A scans.
    Fig3(Scan),
    /// Family B traces for the p1 = 1 and p2 = 1 states.
    Fig4(Scan),
    /// Maximize F_B over an observable family.
    Optimize {
        #[command(flatten)]
        common: Common,
        /// JSON state file.
        #[arg(long, conflicts_with = "scenario")]
        state: Option<PathBuf>,
        /// phi-plus, dephased, psi, xstate-p1 or mixture.
        #[arg(long)]
        scenario: Option<String>,
        /// family-a, family-a-y, family-b or general.
        #[arg(long, default_value = "general")]
        family: String,
        #[arg(long, default_value_t = 16)]
        starts: usize,
        #[arg(long, default_value_t = 4000)]
        max_evals: usize,
        /// Polish from a built-in parameter list instead of searching.
        #[arg(long)]
        preset: Option<String>,
    },
    /// Import or export density matrices as JSON.
    #[command(subcommand)]
    State(StateCommand),
}

#[derive(Subcommand)]
enum StateCommand {
    /// Validate a state file and print it in canonical matrix form.
    Import {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a built-in scenario state.
    Export {
        #[arg(long)]
        scenario: String,
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn scan_config(scan: &Scan) -> Result<ScanConfig> {
    Ok(ScanConfig {
        steps: scan.steps,
        seed: scan.common.seed,
        params: parse_params(&scan.common.params)?,
        preset: scan.preset.as_deref().map(str::parse).transpose()?,
        variant: scan.variant.parse::<U2Variant>().map_err(|e| CliError::usage(e.to_string()))?,
    })
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn read_state(path: &Path) -> Result<LoadedState> {
    parse_state(&std::fs::read_to_string(path)?)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Fig1(scan) => emit(scan.common.out.as_deref(), &run_fig1(&scan_config(&scan)?)?.to_csv()?),
        Command::Fig2(scan) => emit(scan.common.out.as_deref(), &run_fig2(&scan_config(&scan)?)?.to_csv()?),
        Command::Fig3(scan) => {
            let dir = scan.common.out.clone().unwrap_or_else(|| PathBuf::from("fig3"));
            run_fig3(&scan_config(&scan)?)?.write_to(&dir)
        }
        Command::Fig4(scan) => {
            let dir = scan.common.out.clone().unwrap_or_else(|| PathBuf::from("fig4"));
            run_fig4(&scan_config(&scan)?)?.write_to(&dir)
        }
        Command::Optimize { common, state, scenario, family, starts, max_evals, preset } => {
            let params: Params = parse_params(&common.params)?;
            let state = match (state, scenario) {
                (Some(path), _) => {
                    if !params.is_empty() {
                        return Err(CliError::usage("--params applies to --scenario only"));
                    }
                    read_state(&path)?.into_bipartite()?
                }
                (None, Some(name)) => scenario_state(&name, &params)?,
                (None, None) => return Err(CliError::usage("one of --state or --scenario is required")),
            };
            let req = OptimizeRequest {
                family,
                starts,
                max_evals,
                seed: common.seed,
                preset: preset.as_deref().map(str::parse::<Preset>).transpose()?,
            };
            emit(common.out.as_deref(), &result_json(&optimize(&state, &req)?))
        }
        Command::State(StateCommand::Import { file, out }) => emit(out.as_deref(), &export_state(&read_state(&file)?)),
        Command::State(StateCommand::Export { scenario, params, out }) => {
            let state = scenario_state(&scenario, &parse_params(&params)?)?;
            emit(out.as_deref(), &export_state(&LoadedState::Bipartite(state)))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(n) = std::env::var("BELLKIT_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("bellkit: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
