//! Command dispatch. Every command returns its output as a string so it can
//! be tested without spawning a process.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use monolin_core::doublecone::{self, FinGenDoubleCone};
use monolin_core::gossez::{self, FinSeq};
use monolin_core::linsub;
use monolin_core::pairing::Point;
use monolin_core::scalar::{self, Scalar};
use monolin_core::{ClassificationReport, Subspace};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::oracle::{self, ProbeConfig, ProbeOutcome};
use crate::problem::{self, Problem};
use crate::render;

#[derive(Debug, Parser)]
#[command(name = "monolin", version, about = "Exact classification of linear monotone relations")]
pub struct Cli {
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Number of samples for sampled checks.
    #[arg(long, global = true, default_value_t = 10_000)]
    pub samples: usize,
    /// Coordinate bound of the sampling grid, as `p/q`.
    #[arg(long, global = true, default_value = "4", value_parser = parse_radius)]
    pub grid_radius: Scalar,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

fn parse_radius(s: &str) -> Result<Scalar, String> {
    let r = scalar::parse_scalar(s).map_err(|e| e.to_string())?;
    if r <= Scalar::from_integer(0.into()) {
        return Err("grid radius must be positive".into());
    }
    Ok(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Fitz,
    Penot,
    Sigma,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a subspace or double-cone.
    Classify { file: PathBuf },
    /// Evaluate the Fitzpatrick function, Penot function or squared crown support.
    Eval {
        file: PathBuf,
        /// Point as `x1 .. xn | y1 .. yn`.
        #[arg(long)]
        point: String,
        #[arg(long, value_enum, default_value = "fitz")]
        which: Which,
    },
    /// Extend a monotone subspace to a maximal monotone one.
    Extend { file: PathBuf },
    /// Test whether a point is monotonically related to the relation.
    Mrt {
        file: PathBuf,
        #[arg(long)]
        point: String,
    },
    /// Compose `M + AᵀNA` from a sum problem.
    Sum { file: PathBuf },
    /// Gossez operator on finitely supported sequences.
    Gossez {
        #[command(subcommand)]
        action: GossezAction,
    },
    /// Run the sampled and floating-point cross-checks.
    Oracle {
        file: PathBuf,
        #[arg(long)]
        point: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum GossezAction {
    /// Apply the operator to `i:v i:v ...`.
    Apply { seq: String },
    /// Check the pairing identities at `x` and `v`.
    Identities {
        #[arg(long, default_value = "")]
        x: String,
        #[arg(long, default_value = "")]
        v: String,
    },
    /// Check the identities for the sequences of a gossez problem file.
    Check { file: PathBuf },
}

impl Cli {
    fn config(&self) -> ProbeConfig {
        ProbeConfig {
            seed: self.seed,
            samples: self.samples,
            grid_radius: self.grid_radius.clone(),
            ..ProbeConfig::default()
        }
    }
}

pub fn load(path: &Path) -> Result<Problem, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Problem::parse(&text)
}

/// Either a JSON document or a text block.
struct Output {
    json: Value,
    text: String,
}

pub fn run(cli: &Cli) -> Result<String, CliError> {
    let out = match &cli.command {
        Command::Classify { file } => classify(&load(file)?, cli)?,
        Command::Eval { file, point, which } => eval(&load(file)?, point, *which, cli)?,
        Command::Extend { file } => extend(&load(file)?)?,
        Command::Mrt { file, point } => mrt(&load(file)?, point)?,
        Command::Sum { file } => sum(&load(file)?)?,
        Command::Gossez { action } => gossez_cmd(action)?,
        Command::Oracle { file, point } => oracle_cmd(&load(file)?, point.as_deref(), cli)?,
    };
    Ok(if cli.json {
        let mut s = serde_json::to_string_pretty(&out.json).map_err(|e| CliError::Internal(e.to_string()))?;
        s.push('\n');
        s
    } else {
        out.text
    })
}

fn checked(report: ClassificationReport) -> Result<ClassificationReport, CliError> {
    if report.is_consistent() {
        Ok(report)
    } else {
        Err(CliError::Internal("classification flags violate their implications".into()))
    }
}

fn classification(problem: &Problem, cli: &Cli) -> Result<ClassificationReport, CliError> {
    let report = match problem {
        Problem::Subspace { .. } => linsub::classify(&problem.subspace()?),
        Problem::DoubleCone { .. } => doublecone::dc_classify(&problem.cone()?, &cli.config().plan()),
        other => {
            return Err(CliError::Input(format!("cannot classify a {} problem", other.kind())));
        }
    };
    checked(report)
}

fn classify(problem: &Problem, cli: &Cli) -> Result<Output, CliError> {
    let report = classification(problem, cli)?;
    Ok(Output {
        json: render::report_json(problem.kind(), &report),
        text: render::report_text(problem.kind(), &report),
    })
}

fn eval(problem: &Problem, point: &str, which: Which, cli: &Cli) -> Result<Output, CliError> {
    let z = problem::parse_point(point, problem.n())?;
    let (value, in_domain, in_relation) = match (problem, which) {
        (Problem::Subspace { .. }, Which::Fitz) => {
            let l = problem.subspace()?;
            let dom = linsub::is_monotone(&l).monotone && linsub::fitz_dom(&l)?.contains(&z);
            (linsub::fitz_eval(&l, &z)?, dom, l.contains(&z))
        }
        (Problem::Subspace { .. }, Which::Penot) => {
            let l = problem.subspace()?;
            (linsub::penot_eval(&l, &z)?, l.contains(&z), l.contains(&z))
        }
        (Problem::DoubleCone { .. }, Which::Fitz) => {
            let d = problem.cone()?;
            let dom = doublecone::dc_fitz_dom(&d).is_some_and(|s| s.contains(&z));
            (doublecone::dc_fitz_eval(&d, &z)?, dom, d.contains(&z))
        }
        (Problem::DoubleCone { .. }, Which::Sigma) => {
            let d = problem.cone()?;
            let dom = doublecone::dc_fitz_dom(&d).is_some_and(|s| s.contains(&z));
            (doublecone::dc_sigma_sq(&d, &z)?.0, dom, d.contains(&z))
        }
        (Problem::DoubleCone { .. }, Which::Penot) => {
            let d = problem.cone()?;
            if d.as_subspace().is_none() {
                return penot_approx(&d, &z, cli);
            }
            let v = doublecone::dc_penot_eval(&d, &z)?;
            (v, d.contains(&z), d.contains(&z))
        }
        (other, w) => {
            return Err(CliError::Input(format!("cannot evaluate {w:?} on a {} problem", other.kind())));
        }
    };
    let which_name = format!("{which:?}").to_lowercase();
    Ok(Output {
        json: json!({
            "which": which_name,
            "point": render::point_json(&z),
            "value": render::value_json(&value),
            "exact": true,
            "in_domain": in_domain,
            "in_relation": in_relation,
        }),
        text: format!("{which_name}{z} = {value}\nin domain: {in_domain}\nin relation: {in_relation}\n"),
    })
}

fn penot_approx(d: &FinGenDoubleCone, z: &Point, cli: &Cli) -> Result<Output, CliError> {
    let (value, residual) = match oracle::oracle_penot_cone(d, z, &cli.config()) {
        Ok(p) => (json!(p.value), Some(p.residual)),
        Err(oracle::OracleError::Infeasible) => (json!("inf"), None),
        Err(e) => return Err(e.into()),
    };
    let shown = value.as_f64().map_or("inf".to_string(), |v| format!("{v:.12}"));
    Ok(Output {
        json: json!({
            "which": "penot",
            "point": render::point_json(z),
            "value": value,
            "exact": false,
            "residual": residual,
            "in_relation": d.contains(z),
        }),
        text: format!("penot{z} ~ {shown} (float, residual {residual:?})\nin relation: {}\n", d.contains(z)),
    })
}

fn extend(problem: &Problem) -> Result<Output, CliError> {
    let l = problem.subspace()?;
    let m = linsub::extend_maximal(&l)?;
    let report = checked(linsub::classify(&m))?;
    if !report.maximal.holds || !l.is_subspace_of(&m) || m.dim() != m.n() {
        return Err(CliError::Internal("extension failed its own verification".into()));
    }
    let basis = m.basis_points();
    let mut text = format!("maximal extension, dim {}\n", m.dim());
    text.push_str(&render::points_text(&basis));
    text.push_str("verification:\n");
    text.push_str(&render::report_text("subspace", &report));
    Ok(Output {
        json: json!({
            "input_dim": l.dim(),
            "basis": render::points_json(&basis),
            "contains_input": true,
            "verification": render::report_json("subspace", &report),
        }),
        text,
    })
}

fn mrt(problem: &Problem, point: &str) -> Result<Output, CliError> {
    let z = problem::parse_point(point, problem.n())?;
    let related = match problem {
        Problem::Subspace { .. } => linsub::in_plus(&problem.subspace()?, &z)?,
        Problem::DoubleCone { .. } => doublecone::dc_in_plus(&problem.cone()?, &z)?,
        other => return Err(CliError::Input(format!("no relation in a {} problem", other.kind()))),
    };
    Ok(Output {
        json: json!({ "point": render::point_json(&z), "in_plus": related }),
        text: format!("{z} monotonically related: {related}\n"),
    })
}

fn sum(problem: &Problem) -> Result<Output, CliError> {
    let Problem::Sum {
        n,
        m,
        first,
        second,
        a,
    } = problem
    else {
        return Err(CliError::Input(format!("expected a sum problem, found {}", problem.kind())));
    };
    let ms = Subspace::from_points(*n, first)?;
    let ns = Subspace::from_points(*m, second)?;
    let s = linsub::sum_composition(&ms, &ns, a)?;
    let report = checked(linsub::classify(&s))?;
    let basis = s.basis_points();
    let mut text = format!("sum, dim {}\n", s.dim());
    text.push_str(&render::points_text(&basis));
    text.push_str(&render::report_text("subspace", &report));
    Ok(Output {
        json: json!({
            "basis": render::points_json(&basis),
            "classification": render::report_json("subspace", &report),
        }),
        text,
    })
}

fn seq_json(s: &FinSeq) -> Value {
    Value::Array(
        s.support()
            .iter()
            .map(|(i, v)| json!([i, render::scalar_json(v)]))
            .collect(),
    )
}

fn gossez_cmd(action: &GossezAction) -> Result<Output, CliError> {
    match action {
        GossezAction::Apply { seq } => {
            let x = problem::parse_seq(seq)?;
            let t = gossez::gossez_apply(&x);
            let head: Vec<String> = t.head.iter().map(ToString::to_string).collect();
            Ok(Output {
                json: json!({ "input": seq_json(&x), "head": head, "tail": t.tail.to_string() }),
                text: format!("head [{}]\ntail {}\n", head.join(", "), t.tail),
            })
        }
        GossezAction::Identities { x, v } => identities(&problem::parse_seq(x)?, &problem::parse_seq(v)?),
        GossezAction::Check { file } => match load(file)? {
            Problem::Gossez { x, v } => identities(&x, &v),
            other => Err(CliError::Input(format!("expected a gossez problem, found {}", other.kind()))),
        },
    }
}

fn identities(x: &FinSeq, v: &FinSeq) -> Result<Output, CliError> {
    let r = gossez::check_identities(x, v);
    let mut text = String::new();
    let mut checks = Vec::new();
    for c in &r.checks {
        let residual = c.residual.as_ref().map(ToString::to_string);
        let status = match (&residual, c.passed()) {
            (None, _) => "n/a",
            (Some(_), true) => "pass",
            (Some(_), false) => "FAIL",
        };
        writeln!(text, "{status:<5}{} (residual {})", c.name, residual.as_deref().unwrap_or("-")).unwrap();
        checks.push(json!({ "identity": c.name, "status": status, "residual": residual }));
    }
    writeln!(text, "<Tv+<v,e>e, v> = {}", r.witness_value).unwrap();
    if !r.all_passed() {
        return Err(CliError::Internal(format!("identity check failed:\n{text}")));
    }
    Ok(Output {
        json: json!({ "checks": checks, "witness_value": r.witness_value.to_string() }),
        text,
    })
}

fn outcome_json(o: &ProbeOutcome) -> Value {
    match o {
        ProbeOutcome::Passed(n) => json!({ "passed": n }),
        ProbeOutcome::Violation(a, b) => json!({ "violation": [render::point_json(a), render::point_json(b)] }),
        ProbeOutcome::NotMaximal(z) => json!({ "not_maximal": render::point_json(z) }),
    }
}

fn outcome_text(o: &ProbeOutcome) -> String {
    match o {
        ProbeOutcome::Passed(n) => format!("passed {n} probes"),
        ProbeOutcome::Violation(a, b) => format!("violation {a} and {b}"),
        ProbeOutcome::NotMaximal(z) => format!("not maximal, witness {z}"),
    }
}

fn oracle_cmd(problem: &Problem, point: Option<&str>, cli: &Cli) -> Result<Output, CliError> {
    let cfg = cli.config();
    let z = point.map(|p| problem::parse_point(p, problem.n())).transpose()?;
    let mut json = json!({});
    let mut text = String::new();
    match problem {
        Problem::Subspace { .. } => {
            let l = problem.subspace()?;
            let pairs = oracle::oracle_monotone_pairs(&l, &cfg);
            writeln!(text, "monotone pairs: {}", outcome_text(&pairs)).unwrap();
            json["monotone_pairs"] = outcome_json(&pairs);
            if linsub::is_monotone(&l).monotone {
                let probe = oracle::oracle_maximal_probe(&l, &cfg)?;
                writeln!(text, "maximality probe: {}", outcome_text(&probe)).unwrap();
                json["maximal_probe"] = outcome_json(&probe);
                if let Some(z) = &z {
                    let sup = oracle::oracle_fitz_sup(&l, z, &cfg)?;
                    let exact = linsub::fitz_eval(&l, z)?;
                    writeln!(
                        text,
                        "fitzpatrick sup: {} (unbounded: {}), exact {exact}",
                        sup.lower_bound, sup.unbounded
                    )
                    .unwrap();
                    json["fitz_sup"] = json!({
                        "lower_bound": if sup.unbounded { Value::Null } else { json!(sup.lower_bound) },
                        "unbounded": sup.unbounded,
                        "exact": render::value_json(&exact),
                    });
                }
            }
        }
        Problem::DoubleCone { .. } => {
            let d = problem.cone()?;
            let pairs = oracle::oracle_monotone_pairs(&d, &cfg);
            writeln!(text, "monotone pairs: {}", outcome_text(&pairs)).unwrap();
            json["monotone_pairs"] = outcome_json(&pairs);
            if let Some(z) = &z {
                let probe = oracle::oracle_dc_plus_probe(&d, z);
                let formula = doublecone::dc_in_plus(&d, z)?;
                writeln!(text, "D+ membership: probe {probe}, formula {formula}").unwrap();
                json["plus_membership"] = json!({ "probe": probe, "formula": formula });
                if doublecone::dc_is_monotone(&d).monotone {
                    match oracle::oracle_penot_cone(&d, z, &cfg) {
                        Ok(p) => {
                            writeln!(text, "penot ~ {} (residual {})", p.value, p.residual).unwrap();
                            json["penot"] = json!({ "value": p.value, "residual": p.residual });
                        }
                        Err(oracle::OracleError::Infeasible) => {
                            writeln!(text, "penot: inf (outside the linear hull)").unwrap();
                            json["penot"] = json!({ "value": "inf" });
                        }
                        Err(e) => return Err(e.into()),
                    }
                }
            }
        }
        other => return Err(CliError::Input(format!("no oracle for a {} problem", other.kind()))),
    }
    Ok(Output { json, text })
}
