//! Command implementations behind the `supercircle` binary. Each command
//! turns parsed JSON input into a JSON report and an exit status.

use serde_json::{json, Value};

use crate::error::Error;
use crate::harmonic::{expand, matrix_coefficients};
use crate::json::{
    expansion_to_json, point_from_json, point_to_json, report_to_json, representation_from_json, s11_point_from_json,
    s11_point_to_json, section_from_json, section_to_json, triple_to_json,
};
use crate::liealg::validate_representation;
use crate::reps::{decompose, make_adjoint_su11, make_pi_m, make_v_m, Sign};
use crate::scalars::ScalarMode;
use crate::supergroup::{factorize, membership, rho_s11, sigma_su, GroupKind};
use crate::verify::{cmd_verify as run_verify, Fault, VerifyConfig};

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    MathFailure = 1,
    InputFailure = 2,
}

impl Exit {
    pub fn code(self) -> i32 {
        self as i32
    }

    pub fn of_error(e: &Error) -> Self {
        match e {
            Error::Parse(_) | Error::UnknownTag(_) | Error::Unsupported(_) => Exit::InputFailure,
            _ => Exit::MathFailure,
        }
    }
}

/// What a command prints and how it exits.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub output: Value,
    pub exit: Exit,
}

impl Outcome {
    fn ok(output: Value) -> Self {
        Self { output, exit: Exit::Success }
    }

    fn failure(output: Value) -> Self {
        Self { output, exit: Exit::MathFailure }
    }

    pub fn error(e: &Error) -> Self {
        Self { output: json!({"error": e.to_string()}), exit: Exit::of_error(e) }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub mode: ScalarMode,
    pub weights: i64,
    pub seed: u64,
    pub group: GroupKind,
    pub fault: Option<Fault>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self { mode: ScalarMode::Exact, weights: 10, seed: 0, group: GroupKind::Su11, fault: None }
    }
}

pub fn cmd_verify(cfg: &RunConfig) -> Outcome {
    let report = run_verify(&VerifyConfig {
        mode: cfg.mode,
        weights: cfg.weights,
        seed: cfg.seed,
        fault: cfg.fault,
        ..VerifyConfig::default()
    });
    let output = report.to_json();
    if report.passed() {
        Outcome::ok(output)
    } else {
        Outcome::failure(output)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepAction {
    Validate,
    Decompose,
}

pub fn cmd_rep(action: RepAction, input: &Value, cfg: &RunConfig) -> Outcome {
    let rep = match representation_from_json(input, cfg.mode) {
        Ok(r) => r,
        Err(e) => return Outcome::error(&e),
    };
    let violations = validate_representation(&rep);
    if !violations.is_empty() {
        return Outcome::failure(json!({"valid": false, "violations": violations}));
    }
    match action {
        RepAction::Validate => Outcome::ok(json!({"valid": true, "violations": []})),
        RepAction::Decompose => match decompose(&rep) {
            Ok(r) => Outcome::ok(report_to_json(&r)),
            Err(e) => Outcome::error(&e),
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointAction {
    Check,
    Factorize,
    Involute,
}

pub fn cmd_point(action: PointAction, input: &Value, cfg: &RunConfig) -> Outcome {
    if action == PointAction::Involute && input.get("w").is_some() {
        return match s11_point_from_json(input, cfg.mode).and_then(|(w, eta)| rho_s11(&w, &eta)) {
            Ok((w, eta)) => Outcome::ok(s11_point_to_json(&w, &eta)),
            Err(e) => Outcome::error(&e),
        };
    }
    let point = match point_from_json(input, cfg.mode) {
        Ok(p) => p,
        Err(e) => return Outcome::error(&e),
    };
    match action {
        PointAction::Check => {
            let m = membership(&point, cfg.group);
            let output = json!({"group": cfg.group.name(), "member": m.is_member(), "violations": m.violations});
            if m.is_member() {
                Outcome::ok(output)
            } else {
                Outcome::failure(output)
            }
        }
        PointAction::Factorize => match factorize(&point, cfg.group) {
            Ok(f) => Outcome::ok(triple_to_json(&f)),
            Err(e) => Outcome::error(&e),
        },
        PointAction::Involute => match sigma_su(&point) {
            Ok(p) => Outcome::ok(point_to_json(&p)),
            Err(e) => Outcome::error(&e),
        },
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoeffTarget {
    /// `π_m^±`, or `V_m` when no sign is given.
    Weight {
        m: i64,
        sign: Option<Sign>,
    },
    Adjoint,
}

pub fn cmd_pw_coeffs(target: &CoeffTarget, cfg: &RunConfig) -> Outcome {
    let built = match target {
        CoeffTarget::Weight { m, sign: Some(s) } => {
            make_pi_m(*m, *s, cfg.mode).map(|r| (format!("pi_{m}^{}", s.symbol()), r))
        }
        CoeffTarget::Weight { m, sign: None } => make_v_m(*m, cfg.mode).map(|r| (format!("V_{m}"), r)),
        CoeffTarget::Adjoint => Ok(("adjoint".to_string(), make_adjoint_su11())),
    };
    let (name, rep) = match built {
        Ok(x) => x,
        Err(e) => return Outcome::error(&e),
    };
    match matrix_coefficients(&rep) {
        Ok(c) => {
            let mut entries = Vec::new();
            for (i, row) in c.iter().enumerate() {
                for (j, sec) in row.iter().enumerate() {
                    entries.push(json!({"entry": [i, j], "section": section_to_json(sec)}));
                }
            }
            Outcome::ok(json!({"rep": name, "algebra": rep.algebra.name(), "entries": entries}))
        }
        Err(e) => Outcome::error(&e),
    }
}

pub fn cmd_pw_expand(input: &Value, cfg: &RunConfig) -> Outcome {
    match section_from_json(input, cfg.mode).and_then(|f| expand(&f)) {
        Ok(r) => Outcome::ok(expansion_to_json(&r)),
        Err(e) => Outcome::error(&e),
    }
}
