use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use supercircle::cli::{
    cmd_point, cmd_pw_coeffs, cmd_pw_expand, cmd_rep, cmd_verify, CoeffTarget, Exit, Outcome, PointAction, RepAction,
    RunConfig,
};
use supercircle::json::to_pretty;
use supercircle::reps::Sign;
use supercircle::scalars::ScalarMode;
use supercircle::supergroup::GroupKind;
use supercircle::verify::Fault;

#[derive(Parser)]
#[command(name = "supercircle", version, about = "Exact representation theory of S^{1|1} and SU(1|1)")]
struct Cli {
    /// Scalar arithmetic: exact (default) or float (requires --tol).
    #[arg(long, value_enum, default_value_t = ScalarArg::Exact, global = true)]
    scalar: ScalarArg,
    /// Comparison tolerance in float mode.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Weight bound N for the verify suite.
    #[arg(long, default_value_t = 10, global = true)]
    weights: i64,
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = GroupArg::Su11, global = true)]
    group: GroupArg,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, hide = true, global = true)]
    inject_fault: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScalarArg {
    Exact,
    Float,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupArg {
    Sl11,
    Su11,
    #[value(name = "su11-minus")]
    Su11Minus,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full self-check suite.
    Verify,
    /// Validate or decompose a representation file.
    Rep {
        #[command(subcommand)]
        action: RepCommand,
    },
    /// Membership, factorization and involutions of a (1|1) point file.
    Point {
        #[command(subcommand)]
        action: PointCommand,
    },
    /// Matrix coefficients and Peter-Weyl expansion.
    Pw {
        #[command(subcommand)]
        action: PwCommand,
    },
}

#[derive(Subcommand)]
enum RepCommand {
    Validate { file: PathBuf },
    Decompose { file: PathBuf },
}

#[derive(Subcommand)]
enum PointCommand {
    Check { file: PathBuf },
    Factorize { file: PathBuf },
    Involute { file: PathBuf },
}

#[derive(Subcommand)]
enum PwCommand {
    /// Coefficients of pi_m^± (`--m M --sign +|-`), V_m (`--m M`) or `adjoint`.
    Coeffs {
        target: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        m: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        sign: Option<String>,
    },
    Expand {
        file: PathBuf,
    },
}

fn read_json(path: &Path) -> Result<Value, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("invalid JSON in {}: {e}", path.display()))
}

fn input_error(msg: String) -> Outcome {
    Outcome { output: json!({"error": msg}), exit: Exit::InputFailure }
}

fn with_file(path: &Path, f: impl FnOnce(&Value) -> Outcome) -> Outcome {
    match read_json(path) {
        Ok(v) => f(&v),
        Err(msg) => input_error(msg),
    }
}

fn config(cli: &Cli) -> Result<RunConfig, String> {
    let mode = match (cli.scalar, cli.tol) {
        (ScalarArg::Exact, _) => ScalarMode::Exact,
        (ScalarArg::Float, Some(tol)) if tol > 0.0 => ScalarMode::Float { tol },
        (ScalarArg::Float, _) => return Err("--scalar float requires a positive --tol".into()),
    };
    let fault = match &cli.inject_fault {
        Some(name) => Some(Fault::parse(name).ok_or_else(|| format!("unknown fault `{name}`"))?),
        None => None,
    };
    let group = match cli.group {
        GroupArg::Sl11 => GroupKind::Sl11,
        GroupArg::Su11 => GroupKind::Su11,
        GroupArg::Su11Minus => GroupKind::Su11Minus,
    };
    if cli.weights < 1 {
        return Err("--weights must be at least 1".into());
    }
    Ok(RunConfig { mode, weights: cli.weights, seed: cli.seed, group, fault })
}

fn run(cli: &Cli) -> Outcome {
    let cfg = match config(cli) {
        Ok(c) => c,
        Err(msg) => return input_error(msg),
    };
    match &cli.command {
        Command::Verify => cmd_verify(&cfg),
        Command::Rep { action } => match action {
            RepCommand::Validate { file } => with_file(file, |v| cmd_rep(RepAction::Validate, v, &cfg)),
            RepCommand::Decompose { file } => with_file(file, |v| cmd_rep(RepAction::Decompose, v, &cfg)),
        },
        Command::Point { action } => {
            let (action, file) = match action {
                PointCommand::Check { file } => (PointAction::Check, file),
                PointCommand::Factorize { file } => (PointAction::Factorize, file),
                PointCommand::Involute { file } => (PointAction::Involute, file),
            };
            with_file(file, |v| cmd_point(action, v, &cfg))
        }
        Command::Pw { action } => match action {
            PwCommand::Coeffs { target, m, sign } => {
                let target = match (target.as_deref(), m, sign) {
                    (Some("adjoint"), None, None) => CoeffTarget::Adjoint,
                    (None, Some(m), sign) => {
                        let sign = match sign.as_deref().map(Sign::parse).transpose() {
                            Ok(s) => s,
                            Err(e) => return input_error(e.to_string()),
                        };
                        CoeffTarget::Weight { m: *m, sign }
                    }
                    _ => return input_error("expected `adjoint` or `--m M [--sign +|-]`".into()),
                };
                cmd_pw_coeffs(&target, &cfg)
            }
            PwCommand::Expand { file } => with_file(file, |v| cmd_pw_expand(v, &cfg)),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli);
    let text = to_pretty(&outcome.output);
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(Exit::InputFailure.code() as u8);
            }
        }
        None => print!("{text}"),
    }
    if outcome.exit != Exit::Success {
        match outcome.output.get("error") {
            Some(e) => eprintln!("error: {}", e.as_str().unwrap_or_default()),
            None => {
                let failing: Vec<&str> = outcome.output["checks"]
                    .as_array()
                    .map(|checks| {
                        checks.iter().filter(|c| c["status"] == "fail").filter_map(|c| c["name"].as_str()).collect()
                    })
                    .unwrap_or_default();
                if !failing.is_empty() {
                    eprintln!("failing checks: {}", failing.join(", "));
                }
            }
        }
    }
    ExitCode::from(outcome.exit.code() as u8)
}
