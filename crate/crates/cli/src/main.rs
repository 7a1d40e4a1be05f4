//! `robustkit`: robustness of entanglement from the command line.
//!
//! Reports go to stdout as JSON, diagnostics to stderr. Exit codes: 0 ok,
//! 1 self-test failure, 2 parse or validation error, 3 unsupported input.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use robustkit::search::SearchConfig;
use serde_json::{json, Map, Value};

use commands::{CliError, Outcome};

#[derive(Parser, Debug)]
#[command(name = "robustkit", version, about = "Robustness of entanglement for bipartite pure states")]
struct Cli {
    /// JSON tolerance file (overrides ROBUSTKIT_TOL).
    #[arg(long, global = true, value_name = "PATH")]
    tol_file: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Schmidt coefficients, bases and rank of a ket.
    Schmidt { input: PathBuf },
    /// Closed-form random and generalized robustness of a pure state.
    Robustness { input: PathBuf },
    /// Build the optimal diagonal-dominance mixer and write mixer.json and mixture.json.
    Mixer {
        input: PathBuf,
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
    },
    /// Check a ρ + (1 - a) ρ_M for positive partial transpose.
    Verify {
        state: PathBuf,
        mixer: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
    },
    /// Hill-climbing estimate of the largest separable mixing weight.
    Estimate {
        input: PathBuf,
        #[arg(long, default_value_t = 2000)]
        iters: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        no_gershgorin_seed: bool,
    },
    /// Randomized invariant suite; exits 1 on any failure.
    Selftest {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

fn path_arg(p: &std::path::Path) -> Value {
    Value::String(p.display().to_string())
}

fn run(cli: &Cli) -> Result<(Value, Outcome), CliError> {
    let tol = commands::load_tolerances(cli.tol_file.as_deref())?;
    let (name, args, outcome) = match &cli.command {
        Command::Schmidt { input } => (
            "schmidt",
            json!({"input": path_arg(input)}),
            commands::schmidt(input, &tol)?,
        ),
        Command::Robustness { input } => (
            "robustness",
            json!({"input": path_arg(input)}),
            commands::robustness(input, &tol)?,
        ),
        Command::Mixer { input, out } => (
            "mixer",
            json!({"input": path_arg(input), "out": path_arg(out)}),
            commands::mixer(input, out, &tol)?,
        ),
        Command::Verify { state, mixer, a } => (
            "verify",
            json!({"state": path_arg(state), "mixer": path_arg(mixer), "a": a}),
            commands::verify(state, mixer, *a, &tol)?,
        ),
        Command::Estimate {
            input,
            iters,
            seed,
            no_gershgorin_seed,
        } => {
            let cfg = SearchConfig {
                iterations: *iters,
                seed: *seed,
                include_gershgorin_seed: !no_gershgorin_seed,
                ppt_tol: tol.ppt,
                ..SearchConfig::default()
            };
            (
                "estimate",
                json!({
                    "input": path_arg(input),
                    "iters": iters,
                    "seed": seed,
                    "no_gershgorin_seed": no_gershgorin_seed,
                }),
                commands::estimate(input, &cfg, &tol)?,
            )
        }
        Command::Selftest {
            n,
            trials,
            seed,
            inject_fault,
        } => {
            let mut args = json!({"n": n, "trials": trials, "seed": seed});
            if *inject_fault {
                args["inject_fault"] = Value::Bool(true);
            }
            ("selftest", args, commands::selftest(*n, *trials, *seed, *inject_fault)?)
        }
    };
    let tolerances = serde_json::to_value(tol).expect("tolerances serialize");
    let mut report = Map::new();
    report.insert("command".into(), json!({"name": name, "args": args}));
    report.insert("input_digest".into(), Value::Object(outcome.digests.clone()));
    report.insert("result".into(), outcome.result.clone());
    report.insert("tolerances".into(), tolerances);
    report.insert("verdicts".into(), Value::Object(outcome.verdicts.clone()));
    Ok((Value::Object(report), outcome))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, outcome)) => {
            print!("{}", report::render(&report));
            if outcome.exit != 0 {
                eprintln!("robustkit: self-test failed");
            }
            ExitCode::from(outcome.exit)
        }
        Err(e) => {
            eprintln!("robustkit: {e}");
            ExitCode::from(e.code)
        }
    }
}
