//! Command-line front end.
//!
//! Exit codes are the process-level contract: 0 success, 1 dimensional or
//! covariance failure, 2 model-file parse error, 3 usage or I/O error.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::covariance::check_covariance;
use crate::error::Error;
use crate::lang::{self, EntryBody, Model, PiQueryOutcome, Report};
use crate::pi::PiGroup;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Parser)]
#[command(
    name = "dimcheck",
    version,
    about = "Dimensional-analysis checker: model files, unit conversion, \
             Buckingham Pi groups and covariance testing"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every statement of a model file
    Check {
        file: PathBuf,
        /// Emit a JSON report instead of the human-readable table
        #[arg(long)]
        json: bool,
    },
    /// Print a variable's measure in another unit system
    Convert {
        file: PathBuf,
        /// Variable to convert
        #[arg(long)]
        var: String,
        /// Target unit system
        #[arg(long)]
        to: String,
        #[arg(long)]
        json: bool,
    },
    /// Decompose governing variables and derive the target's scaling law
    Pigroups {
        file: PathBuf,
        /// Target variable of the scaling law
        #[arg(long)]
        target: String,
        /// Governing variables (defaults to every other declared variable)
        #[arg(long, value_delimiter = ',')]
        given: Option<Vec<String>>,
        #[arg(long)]
        json: bool,
    },
    /// Test a raw equation for covariance under unit rescaling
    Covariance {
        file: PathBuf,
        /// Name of the raw equation
        #[arg(long)]
        eq: String,
        #[arg(long, default_value_t = 100)]
        trials: u32,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

/// Entry point used by `main`; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return code;
        }
    };
    match cli.command {
        Command::Check { file, json } => with_model(&file, |m| cmd_check(m, json)),
        Command::Convert {
            file,
            var,
            to,
            json,
        } => with_model(&file, |m| cmd_convert(m, &var, &to, json)),
        Command::Pigroups {
            file,
            target,
            given,
            json,
        } => with_model(&file, |m| cmd_pigroups(m, &target, given.as_deref(), json)),
        Command::Covariance {
            file,
            eq,
            trials,
            tol,
            seed,
            json,
        } => with_model(&file, |m| cmd_covariance(m, &eq, trials, tol, seed, json)),
    }
}

fn with_model(path: &Path, f: impl FnOnce(&Model) -> i32) -> i32 {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("{}: {e}", path.display());
            return EXIT_USAGE;
        }
    };
    match lang::parse(&text) {
        Ok(model) => f(&model),
        Err(e) => {
            eprintln!("{}:{e}", path.display());
            EXIT_PARSE
        }
    }
}

fn json_report(command: &str, results: Vec<Value>, errors: Vec<Value>) -> Value {
    json!({
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "results": results,
        "errors": errors,
    })
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("report serializes"));
}

// --- check ---------------------------------------------------------------

fn group_json(g: &PiGroup) -> Value {
    json!({
        "numerator": g.numerator,
        "p": g.p,
        "denominator": g.denominator_exponents
            .iter()
            .map(|(n, e)| json!([n, e]))
            .collect::<Vec<_>>(),
        "rendering": g.to_string(),
        "value": g.value,
    })
}

fn outcome_json(target: &str, outcome: &PiQueryOutcome) -> Value {
    json!({
        "target": target,
        "independent": outcome.decomposition.independent
            .iter()
            .map(|(n, _)| n.clone())
            .collect::<Vec<_>>(),
        "dependent": outcome.decomposition.dependent
            .iter()
            .map(|(n, _, _)| n.clone())
            .collect::<Vec<_>>(),
        "law": outcome.law.to_string(),
        "groups": outcome.groups.iter().map(group_json).collect::<Vec<_>>(),
    })
}

fn entry_json(entry: &lang::Entry) -> Value {
    let mut obj = json!({
        "line": entry.line,
        "passed": entry.passed,
    });
    let map = obj.as_object_mut().unwrap();
    if let Some(name) = &entry.name {
        map.insert("name".into(), json!(name));
    }
    match &entry.body {
        EntryBody::Check { lhs, rhs } => {
            map.insert("kind".into(), json!("check"));
            map.insert("lhs".into(), json!(lhs));
            map.insert("rhs".into(), json!(rhs));
        }
        EntryBody::TypedEq {
            declared,
            inferred,
            error,
        } => {
            map.insert("kind".into(), json!("eq"));
            map.insert("declared".into(), json!(declared));
            map.insert("inferred".into(), json!(inferred));
            if let Some(e) = error {
                map.insert("error".into(), json!(e));
            }
        }
        EntryBody::RawEq { declared } => {
            map.insert("kind".into(), json!("raweq"));
            map.insert("declared".into(), json!(declared));
        }
        EntryBody::PiGroups { target, outcome } => {
            map.insert("kind".into(), json!("pigroups"));
            match outcome {
                Ok(o) => {
                    map.insert("pi".into(), outcome_json(target, o));
                }
                Err(e) => {
                    map.insert("error".into(), json!(e));
                }
            }
        }
    }
    obj
}

fn cmd_check(model: &Model, json: bool) -> i32 {
    let report: Report = lang::check(model);
    if json {
        let results: Vec<Value> = report.entries.iter().map(entry_json).collect();
        print_json(&json_report("check", results, vec![]));
    } else {
        for e in &report.entries {
            let verdict = if e.passed { "PASS" } else { "FAIL" };
            println!("{verdict} line {:>3}: {}", e.line, e.summary);
        }
        let failed = report.entries.iter().filter(|e| !e.passed).count();
        println!(
            "{} statement(s), {} passed, {} failed",
            report.entries.len(),
            report.entries.len() - failed,
            failed
        );
    }
    if report.all_passed() {
        EXIT_OK
    } else {
        EXIT_FAILURE
    }
}

// --- convert ---------------------------------------------------------------

fn cmd_convert(model: &Model, var: &str, to: &str, json: bool) -> i32 {
    let decl = match model.var(var) {
        Some(d) => d,
        None => {
            eprintln!("unknown variable '{var}'");
            return EXIT_USAGE;
        }
    };
    let Some((value, system)) = &decl.value else {
        eprintln!("variable '{var}' has no value");
        return EXIT_USAGE;
    };
    let q = crate::quantity::Quantity::new(*value, system.clone(), decl.dim.clone());
    match q.measure(&model.registry, to) {
        Ok(measure) => {
            if json {
                let result = json!({
                    "var": var,
                    "dimension": model.render_dim(&decl.dim),
                    "system": to,
                    "value": measure,
                });
                print_json(&json_report("convert", vec![result], vec![]));
            } else {
                println!("{var} : {} = {measure} {to}", model.render_dim(&decl.dim));
            }
            EXIT_OK
        }
        Err(e) => {
            eprintln!("{e}");
            EXIT_USAGE
        }
    }
}

// --- pigroups ---------------------------------------------------------------

fn cmd_pigroups(model: &Model, target: &str, given: Option<&[String]>, json: bool) -> i32 {
    if model.var(target).is_none() {
        eprintln!("unknown variable '{target}'");
        return EXIT_USAGE;
    }
    if let Some(names) = given {
        for n in names {
            if model.var(n).is_none() {
                eprintln!("unknown variable '{n}'");
                return EXIT_USAGE;
            }
        }
    }
    match lang::run_pi_query(model, target, given) {
        Ok(outcome) => {
            if json {
                print_json(&json_report(
                    "pigroups",
                    vec![outcome_json(target, &outcome)],
                    vec![],
                ));
            } else {
                let indep: Vec<&str> = outcome
                    .decomposition
                    .independent
                    .iter()
                    .map(|(n, _)| n.as_str())
                    .collect();
                println!("independent: {}", indep.join(", "));
                let dep: Vec<&str> = outcome
                    .decomposition
                    .dependent
                    .iter()
                    .map(|(n, _, _)| n.as_str())
                    .collect();
                let dep_list = if dep.is_empty() {
                    "-".to_string()
                } else {
                    dep.join(", ")
                };
                println!("dependent:   {dep_list}");
                println!("law:         {}", outcome.law);
                for g in &outcome.groups {
                    match g.value {
                        Some(v) => println!("group:       {g} = {v}"),
                        None => println!("group:       {g}"),
                    }
                }
            }
            EXIT_OK
        }
        Err(Error::NotDependent { unreachable }) => {
            eprintln!("unreachable base: {}", unreachable.join(", "));
            EXIT_FAILURE
        }
        Err(e) => {
            eprintln!("{e}");
            EXIT_USAGE
        }
    }
}

// --- covariance ---------------------------------------------------------------

fn cmd_covariance(model: &Model, eq: &str, trials: u32, tol: f64, seed: u64, json: bool) -> i32 {
    match check_covariance(model, eq, trials, tol, seed) {
        Ok(report) => {
            if json {
                let result = json!({
                    "equation": report.equation,
                    "trials": report.trials,
                    "failures": report.failures,
                    "max_rel_error": report.max_rel_error,
                    "seed": report.seed,
                    "passed": report.passed,
                });
                print_json(&json_report("covariance", vec![result], vec![]));
            } else {
                let verdict = if report.passed { "pass" } else { "fail" };
                println!(
                    "covariance {}: {verdict} ({}/{} trials within {tol}, \
                     max rel error {:e}, seed {})",
                    report.equation,
                    report.trials - report.failures,
                    report.trials,
                    report.max_rel_error,
                    report.seed
                );
            }
            if report.passed {
                EXIT_OK
            } else {
                EXIT_FAILURE
            }
        }
        Err(e) => {
            eprintln!("{e}");
            EXIT_USAGE
        }
    }
}
