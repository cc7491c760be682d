//! `dualramsey`: batch commands over JSON artifacts.
//!
//! Every command prints a run report (a single JSON document) on stdout,
//! except the NDJSON streams of `codec encode` / `codec decode`, and writes
//! it atomically to `--out` when given. Exit codes: 0 success, 1
//! counterexample found or oracle disagreement, 2 input error.

mod cache;
mod codec;
mod filter;
mod forcing;
mod game;
mod input;
mod lattice;
mod ramsey;
mod report;

use clap::{Parser, Subcommand};
use report::{OracleCheck, RunReport, Scale};
use serde_json::{json, Value};
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "dualramsey", version, about = "Workbench for partitions of ω under coarsening")]
struct Cli {
    /// Bound on the domains of enumerated segments and prefixes.
    #[arg(long, global = true, default_value_t = 6)]
    dom_bound: usize,
    /// Levels above the stem kept in truncated trees.
    #[arg(long, global = true, default_value_t = 2)]
    depth: usize,
    /// Cutoff below which reals are known.
    #[arg(long, global = true, default_value_t = 28)]
    cutoff: usize,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Re-run the brute-force check and compare.
    #[arg(long, global = true)]
    oracle: bool,
    /// Write the run report here as well.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Coarsening order, join, segments.
    #[command(subcommand)]
    Lattice(lattice::Cmd),
    /// Reals and partitions.
    #[command(subcommand)]
    Codec(codec::Cmd),
    /// Colourings, witnesses, Hales–Jewett.
    #[command(subcommand)]
    Ramsey(ramsey::Cmd),
    /// Filters generated by finite bases.
    #[command(subcommand)]
    Filter(filter::Cmd),
    /// Conditions, trees and the classification of neighbourhoods.
    #[command(subcommand)]
    Forcing(forcing::Cmd),
    /// The partition game.
    #[command(subcommand)]
    Game(game::Cmd),
}

impl Command {
    fn name(&self) -> String {
        let (group, sub) = match self {
            Command::Lattice(c) => ("lattice", c.name()),
            Command::Codec(c) => ("codec", c.name()),
            Command::Ramsey(c) => ("ramsey", c.name()),
            Command::Filter(c) => ("filter", c.name()),
            Command::Forcing(c) => ("forcing", c.name()),
            Command::Game(c) => ("game", c.name()),
        };
        format!("{group} {sub}")
    }
}

/// Settings shared by all commands.
pub struct Ctx {
    pub scale: Scale,
    pub oracle: bool,
}

/// What a command produced, before it is wrapped in a report.
#[derive(Default)]
pub struct Done {
    pub inputs: Value,
    pub outputs: Value,
    pub oracle: Option<OracleCheck>,
    pub counterexample: bool,
    pub cache: Option<&'static str>,
    /// Replaces the report on stdout (NDJSON streams).
    pub stdout: Option<String>,
    /// One human-readable summary line for stderr.
    pub note: Option<String>,
}

impl Done {
    pub fn new(inputs: Value, outputs: Value) -> Self {
        Done { inputs, outputs, ..Done::default() }
    }

    pub fn with_oracle(mut self, ctx: &Ctx, check: impl FnOnce() -> OracleCheck) -> Self {
        if ctx.oracle {
            self.oracle = Some(check());
        }
        self
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx {
        scale: Scale { dom_bound: cli.dom_bound, depth: cli.depth, cutoff: cli.cutoff, seed: cli.seed },
        oracle: cli.oracle,
    };
    let start = Instant::now();
    let result = match &cli.command {
        Command::Lattice(c) => lattice::run(c, &ctx),
        Command::Codec(c) => codec::run(c, &ctx),
        Command::Ramsey(c) => ramsey::run(c, &ctx),
        Command::Filter(c) => filter::run(c, &ctx),
        Command::Forcing(c) => forcing::run(c, &ctx),
        Command::Game(c) => game::run(c, &ctx),
    };
    match result {
        Ok(done) => emit(cli.command.name(), done, &ctx, cli.out.as_deref(), start),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit(command: String, done: Done, ctx: &Ctx, out: Option<&Path>, start: Instant) -> ExitCode {
    let digest = report::digest(&json!({ "command": command, "inputs": done.inputs, "scale": ctx.scale }));
    let report = RunReport {
        command,
        inputs_digest: digest,
        inputs: done.inputs,
        outputs: done.outputs,
        timing_ms: start.elapsed().as_secs_f64() * 1e3,
        scale: ctx.scale,
        oracle: done.oracle,
        cache: done.cache,
        counterexample: done.counterexample,
    };
    let text = serde_json::to_string_pretty(&report).expect("reports serialize");
    if let Some(path) = out {
        if let Err(e) = report::write_atomic(path, format!("{text}\n").as_bytes()) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    // a closed pipe downstream is not worth a panic
    let mut stdout = io::stdout().lock();
    let _ = match &done.stdout {
        Some(stream) => write!(stdout, "{stream}"),
        None => writeln!(stdout, "{text}"),
    };
    let _ = stdout.flush();
    if let Some(note) = &done.note {
        eprintln!("{note}");
    }
    if let Some(check) = &report.oracle {
        if check.agrees {
            eprintln!("oracle agrees");
        } else {
            let path = diff_path(out, &report.inputs_digest);
            let diff = json!({ "command": report.command, "inputs": report.inputs, "scale": report.scale, "diff": check.detail });
            let body = serde_json::to_string_pretty(&diff).expect("diffs serialize");
            match report::write_atomic(&path, format!("{body}\n").as_bytes()) {
                Ok(()) => eprintln!("oracle disagrees; diff written to {}", path.display()),
                Err(e) => eprintln!("oracle disagrees; cannot write diff to {}: {e}", path.display()),
            }
            return ExitCode::from(1);
        }
    }
    if report.counterexample {
        eprintln!("counterexample found");
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}

/// `<out>.diff.json` next to the report, else a digest-named file in the
/// working directory.
fn diff_path(out: Option<&Path>, digest: &str) -> PathBuf {
    match out {
        Some(p) => {
            let mut name = p.file_name().map(|n| n.to_os_string()).unwrap_or_default();
            name.push(".diff.json");
            p.with_file_name(name)
        }
        None => PathBuf::from(format!("dualramsey-diff-{}.json", &digest[..12])),
    }
}
