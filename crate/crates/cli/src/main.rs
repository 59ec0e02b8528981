use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use condensate::algebra::{check_condensation_algebra, find_unit, CondensationAlgebra};
use condensate::anchors::anchor;
use condensate::battery::{run_battery, Battery, BatteryOptions};
use condensate::bimodule::{
    check_condensation_bimodule, coequalizer_oracle, dual_bimodule, tensor_epsilon, tensor_over,
    zigzag_check,
};
use condensate::exactlin::{rank, split_idempotent, Matrix};
use condensate::hamiltonian::{
    dim_cap_from_env, ground_space, predicted_ground_dim, Boundary, ChainSpec,
};
use condensate::io::{load_algebra, load_bimodule};
use condensate::karoubi::{dual_object, morita_equivalent, unitalize, SigmaObject, VerdictReport};
use condensate::Error;

#[derive(Parser)]
#[command(
    name = "condensate",
    version,
    about = "Exact checks and constructions for condensation algebras over Q"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Check the axioms of an algebra or bimodule file.
    Check { file: PathBuf },
    /// Split an idempotent (`{"idempotent": matrix}`) or the projector Δ∘m of an algebra.
    Split { file: PathBuf },
    /// Relative tensor product of two bimodules.
    Tensor { left: PathBuf, right: PathBuf },
    /// Unitalization of an algebra, with its Morita witness.
    Unitalize { file: PathBuf },
    /// Morita comparison of two algebras.
    Morita { left: PathBuf, right: PathBuf },
    /// Dual of a bimodule, or dual object of an algebra.
    Dual { file: PathBuf },
    /// Ground space of the commuting-projector chain of an algebra.
    Chain {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        length: usize,
        #[arg(long)]
        periodic: bool,
        #[arg(long)]
        no_basis: bool,
        /// Overrides CONDENSATE_DIM_CAP.
        #[arg(long)]
        cap: Option<u128>,
    },
    /// Run the acceptance battery over a fixture directory.
    Battery {
        #[arg(long, default_value = "fixtures")]
        fixtures: PathBuf,
        #[arg(long)]
        filter: Option<String>,
        #[arg(long)]
        cap: Option<u128>,
    },
}

/// What a verb produced: the report and whether its checks passed.
struct Outcome {
    report: Value,
    passed: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let op = op_name(&cli.verb);
    match run(cli.verb) {
        Ok(out) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&out.report).expect("serializable")
            );
            ExitCode::from(if out.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            let code = exit_code(&e);
            let report = tag(
                op,
                json!({ "error": { "kind": error_kind(&e), "message": e.to_string() } }),
            );
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("serializable")
            );
            ExitCode::from(code)
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Input(_) => 2,
        Error::Resource { .. } => 3,
        _ => 1,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Input(_) => "input",
        Error::Precondition(_) => "precondition",
        Error::Resource { .. } => "resource",
        Error::Unsupported(_) => "unsupported",
        Error::Internal(_) => "internal",
    }
}

fn op_name(v: &Verb) -> &'static str {
    match v {
        Verb::Check { file } if is_bimodule(file) => "check_bimodule",
        Verb::Check { .. } => "check_algebra",
        Verb::Split { .. } => "split",
        Verb::Tensor { .. } => "tensor",
        Verb::Unitalize { .. } => "unitalize",
        Verb::Morita { .. } => "morita",
        Verb::Dual { file } if is_bimodule(file) => "dual",
        Verb::Dual { .. } => "dual_object",
        Verb::Chain { .. } => "chain",
        Verb::Battery { .. } => "battery",
    }
}

/// Adds `op` and `paper_ref` to a report object.
fn tag(op: &str, report: Value) -> Value {
    let mut map = Map::new();
    map.insert("op".into(), json!(op));
    match report {
        Value::Object(fields) => map.extend(fields),
        other => {
            map.insert("report".into(), other);
        }
    }
    map.insert("paper_ref".into(), json!(anchor(op)));
    Value::Object(map)
}

fn is_bimodule(path: &Path) -> bool {
    path.to_string_lossy().ends_with(".bimodule.json")
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn sigma(path: &Path) -> condensate::Result<SigmaObject> {
    SigmaObject::new(load_algebra(path)?)
}

fn cap(flag: Option<u128>) -> condensate::Result<u128> {
    flag.map_or_else(dim_cap_from_env, Ok)
}

fn run(verb: Verb) -> condensate::Result<Outcome> {
    let op = op_name(&verb);
    let done = |report: Value, passed: bool| {
        Ok(Outcome {
            report: tag(op, report),
            passed,
        })
    };
    match verb {
        Verb::Check { file } => {
            if is_bimodule(&file) {
                let r = check_condensation_bimodule(&load_bimodule(&file)?);
                done(to_value(&r), r.passed())
            } else {
                let r = check_condensation_algebra(&load_algebra(&file)?);
                done(to_value(&r), r.passed())
            }
        }
        Verb::Split { file } => {
            let p = read_idempotent(&file)?;
            let s = split_idempotent(&p)?;
            let verified = s.verify();
            done(
                json!({ "rank": s.rank(), "verified": verified, "f": s.f, "g": s.g }),
                verified,
            )
        }
        Verb::Tensor { left, right } => {
            let (m1, m2) = (load_bimodule(&left)?, load_bimodule(&right)?);
            let r = rank(&tensor_epsilon(&m1, &m2)?);
            let t = tensor_over(&m1, &m2)?;
            let oracle = match find_unit(m1.right())? {
                Some(_) => Some(coequalizer_oracle(&m1, &m2)?),
                None => None,
            };
            let agrees = oracle.is_none_or(|o| o == r);
            done(
                json!({ "rank_epsilon": r, "coequalizer": oracle, "dim": t.module.dim(), "module": t.module }),
                agrees,
            )
        }
        Verb::Unitalize { file } => {
            let e = sigma(&file)?;
            let u = unitalize(&e)?;
            let verified = u.witness.verify();
            let matches = u.matches_source(&e);
            done(
                json!({
                    "summary": u.summary(&e),
                    "witness_verified": verified,
                    "e_prime": u.e_prime,
                }),
                verified && matches != Some(false),
            )
        }
        Verb::Morita { left, right } => {
            let v = morita_equivalent(&sigma(&left)?, &sigma(&right)?)?;
            let verified = v.witness.as_ref().map(|w| w.verify());
            let witness = json!({
                "inventories": v.inventories,
                "witness_dims": v.witness.as_ref().map(|w| (w.m.dim(), w.n.dim())),
                "witness_verified": verified,
            });
            let report = VerdictReport::new("morita", v.equivalent, Some(witness));
            Ok(Outcome {
                report: to_value(&report),
                passed: verified != Some(false),
            })
        }
        Verb::Dual { file } => {
            if is_bimodule(&file) {
                let m = load_bimodule(&file)?;
                let d = dual_bimodule(&m)?;
                let z = zigzag_check(&m, &d.dual, &d.unit, &d.counit)?;
                done(json!({ "zigzag": z, "dual": d.dual }), z.passed())
            } else {
                let d = dual_object(&sigma(&file)?)?;
                done(
                    json!({ "path": d.path, "zigzag_a": d.zigzag_a, "zigzag_op": d.zigzag_op, "op_algebra": d.op }),
                    d.passed(),
                )
            }
        }
        Verb::Chain {
            algebra,
            length,
            periodic,
            no_basis,
            cap: flag,
        } => {
            let boundary = if periodic {
                Boundary::Periodic
            } else {
                Boundary::Open
            };
            let spec =
                ChainSpec::new(load_algebra(&algebra)?, length, boundary)?.with_cap(cap(flag)?);
            let report = ground_space(&spec, !no_basis)?;
            let predicted = match predicted_ground_dim(&spec) {
                Ok(p) => Some(p),
                Err(Error::Precondition(_)) => None,
                Err(e) => return Err(e),
            };
            let passed =
                report.commuting.passed && predicted.is_none_or(|p| p == report.ground_dim);
            let mut value = to_value(&report);
            value["predicted_ground_dim"] = json!(predicted);
            done(value, passed)
        }
        Verb::Battery {
            fixtures,
            filter,
            cap: flag,
        } => {
            let battery = Battery::load(&fixtures)?;
            let report = run_battery(
                &battery,
                &BatteryOptions {
                    filter,
                    cap: cap(flag)?,
                },
            );
            for (name, t) in &report.timings {
                eprintln!("{name}: {:.3}s", t.as_secs_f64());
            }
            for c in &report.criteria {
                eprintln!(
                    "criterion {} {}: {}",
                    c.id,
                    c.name,
                    if c.passed { "pass" } else { "FAIL" }
                );
            }
            Ok(Outcome {
                passed: report.passed,
                report: to_value(&report),
            })
        }
    }
}

fn read_idempotent(path: &Path) -> condensate::Result<Matrix> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::input(format!("{}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| Error::input(format!("{}: {e}", path.display())))?;
    if let Some(m) = value.get("idempotent") {
        return serde_json::from_value(m.clone())
            .map_err(|e| Error::input(format!("{}: {e}", path.display())));
    }
    let a: CondensationAlgebra = serde_json::from_value(value)
        .map_err(|e| Error::input(format!("{}: {e}", path.display())))?;
    Ok(a.comult() * a.mult())
}
