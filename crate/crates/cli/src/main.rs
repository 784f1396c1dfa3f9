//! `forcing`: run seeded forcing steps, verify single claims, query the
//! family oracles and replay session files.
//!
//! Exit codes: 0 on success, 1 when a verdict is refuted, 2 for invalid
//! arguments or input.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use forcing_core::report::{run_step_demo_on, StepConfig, Summary};
use forcing_core::session::Session;
use forcing_core::verifier::{
    verify_free_preserved, verify_g_differs, verify_ideal_preserved, verify_not_atom,
    verify_ultra_destroyed, DEFAULT_PREFIX,
};
use forcing_core::{
    free_oracle, ideal_oracle, Annuli, ChainState, Ground, InitialSegments, IntervalSet,
    PointUltrafilter,
};

#[derive(Parser)]
#[command(name = "forcing", version, about = "Exact single-step forcing over a countable atomless interval algebra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct ChainArgs {
    /// Ultrafilter point: a non-dyadic rational strictly inside (0,1).
    #[arg(long, default_value = "1/3", value_parser = parse_point)]
    point: PointUltrafilter,
    /// Session file to replay before running; its point takes precedence.
    #[arg(long)]
    session: Option<PathBuf>,
    /// Write the resulting chain back to this session file.
    #[arg(long)]
    save_session: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the seeded step demo and print a JSON-lines report.
    Step {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        samples: u64,
        /// Points on which bounds involving the extension element are checked.
        #[arg(long, default_value_t = DEFAULT_PREFIX)]
        prefix: u64,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        chain: ChainArgs,
    },
    /// Verify one claim about the generic set.
    Verify {
        claim: ClaimArg,
        /// Ground element for not-in-a and ultra-destroyed.
        #[arg(long, value_parser = parse_set)]
        a: Option<IntervalSet>,
        /// First coordinate of the extension element (g ∩ e) ∪ (f ∖ g).
        #[arg(long, value_parser = parse_set)]
        e: Option<IntervalSet>,
        #[arg(long, value_parser = parse_set)]
        f: Option<IntervalSet>,
        #[arg(long, default_value_t = DEFAULT_PREFIX)]
        prefix: u64,
        /// Search bound for not-atom.
        #[arg(long, default_value_t = 1 << 16)]
        bound: u64,
        #[command(flatten)]
        chain: ChainArgs,
    },
    /// Print the ideal and free oracle answers for an interval set literal.
    Oracle { set: String },
    /// Replay a session file and dump its chain and certificates.
    ShowChain { session: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum ClaimArg {
    NotInA,
    UltraDestroyed,
    IdealPreserved,
    FreePreserved,
    NotAtom,
}

fn parse_point(text: &str) -> Result<PointUltrafilter, String> {
    text.parse().map_err(|e: forcing_core::Error| e.to_string())
}

fn parse_set(text: &str) -> Result<IntervalSet, String> {
    text.parse().map_err(|e: forcing_core::ParseError| e.to_string())
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn load_session(path: &Path) -> Result<Session, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Session::parse(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn open_chain(args: &ChainArgs) -> Result<ChainState, Failure> {
    match &args.session {
        Some(path) => load_session(path)?
            .replay()
            .map_err(|e| usage(format!("{}: {e}", path.display()))),
        None => Ok(ChainState::new(Ground::with_point(args.point.clone()))),
    }
}

fn save_chain(args: &ChainArgs, state: &ChainState) -> Result<(), Failure> {
    if let Some(path) = &args.save_session {
        fs::write(path, Session::from_state(state).render())
            .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    let result = match out {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    };
    result.map_err(|e| usage(format!("cannot write output: {e}")))
}

fn verdict_code(summary: &Summary) -> u8 {
    if summary.passed() {
        0
    } else {
        1
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Step { seed, samples, prefix, out, chain } => {
            let mut state = open_chain(&chain)?;
            let config = StepConfig {
                seed,
                samples,
                prefix,
                point: state.ground().u.clone(),
            };
            let report = run_step_demo_on(&mut state, &config);
            emit(&report.to_json_lines(), out.as_deref())?;
            save_chain(&chain, &state)?;
            Ok(verdict_code(&report.summary))
        }
        Command::Verify { claim, a, e, f, prefix, bound, chain } => {
            let mut state = open_chain(&chain)?;
            let need = |value: Option<IntervalSet>, flag: &str| {
                value.ok_or_else(|| usage(format!("this claim needs --{flag}")))
            };
            let verdict = match claim {
                ClaimArg::NotInA => verify_g_differs(&mut state, &need(a, "a")?),
                ClaimArg::UltraDestroyed => verify_ultra_destroyed(&mut state, &need(a, "a")?),
                ClaimArg::IdealPreserved => {
                    verify_ideal_preserved(&mut state, &need(e, "e")?, &need(f, "f")?, prefix)
                }
                ClaimArg::FreePreserved => {
                    verify_free_preserved(&mut state, &need(e, "e")?, &need(f, "f")?, prefix)
                }
                ClaimArg::NotAtom => Ok(verify_not_atom(&mut state, &need(e, "e")?, &need(f, "f")?, bound)),
            }
            .map_err(|e| usage(e.to_string()))?;
            let mut summary = Summary::default();
            summary.add(&verdict.outcome);
            emit(&format!("{}\n{}\n", verdict.to_json_line(), summary.to_json_line()), None)?;
            save_chain(&chain, &state)?;
            Ok(verdict_code(&summary))
        }
        Command::Oracle { set } => {
            let a: IntervalSet = set.parse().map_err(|e: forcing_core::ParseError| {
                usage(format!("{e}\n  {set}\n  {}^", " ".repeat(e.offset)))
            })?;
            let ideal = ideal_oracle(&a, &Annuli).map_err(|e| usage(e.to_string()))?;
            let free = free_oracle(&a, &InitialSegments).map_err(|e| usage(e.to_string()))?;
            let text = format!(
                "{}\n{}\n",
                json!({"oracle": "ideal", "family": "annuli", "set": a, "answer": ideal}),
                json!({"oracle": "free", "family": "initial-segments", "set": a, "answer": free}),
            );
            emit(&text, None)?;
            Ok(0)
        }
        Command::ShowChain { session } => {
            let state = load_session(&session)?
                .replay()
                .map_err(|e| usage(format!("{}: {e}", session.display())))?;
            let summary = json!({
                "summary": true,
                "conditions": state.chain().len(),
                "certificates": state.log().len(),
            });
            emit(&format!("{}{summary}\n", state.dump_json_lines()), None)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
