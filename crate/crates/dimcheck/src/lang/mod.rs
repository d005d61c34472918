//! Parser and checker for the plain-text model-description language.
//!
//! A model file declares one class of base dimensions, one or more unit
//! systems (exactly one of them the reference), dimension aliases and
//! variables, followed by dimensional checks, typed equations, raw numeric
//! equations and Π-group queries. [`parse`] builds a [`Model`], [`check`]
//! evaluates its statements into a [`Report`], and [`format`] renders the
//! canonical text form.

pub mod ast;
pub mod infer;
pub mod lexer;
pub mod parser;

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::dimension::{Dim, DimClass};
use crate::error::{Error, Result};
use crate::pi::{self, PiDecomposition, PiGroup, QuantityEnv, ScalingLaw};
use crate::quantity::Quantity;
use crate::units::UnitRegistry;

pub use ast::{DimExpr, QExpr, Span};
pub use infer::{eval_quantity, eval_raw, infer_dim, InferError};
pub use parser::parse;

/// A named dimension alias, keeping its declared syntax for formatting.
#[derive(Debug, Clone, PartialEq)]
pub struct DimAlias {
    pub name: String,
    pub expr: DimExpr,
    pub dim: Dim,
}

/// A declared variable: dimension plus an optional value in some system.
#[derive(Debug, Clone, PartialEq)]
pub struct VarDecl {
    pub name: String,
    pub dim_expr: DimExpr,
    pub dim: Dim,
    pub value: Option<(f64, String)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Statement {
    Check {
        lhs_expr: DimExpr,
        rhs_expr: DimExpr,
        lhs: Dim,
        rhs: Dim,
        span: Span,
    },
    TypedEq {
        name: String,
        declared_expr: DimExpr,
        declared: Dim,
        expr: QExpr,
        span: Span,
    },
    RawEq {
        name: String,
        declared_expr: DimExpr,
        declared: Dim,
        expr: QExpr,
        span: Span,
    },
    PiQuery {
        target: String,
        given: Option<Vec<String>>,
        span: Span,
    },
}

/// A parsed model file.
#[derive(Debug, Clone, PartialEq)]
pub struct Model {
    pub class: Arc<DimClass>,
    pub registry: UnitRegistry,
    pub dim_aliases: Vec<DimAlias>,
    pub vars: Vec<VarDecl>,
    pub statements: Vec<Statement>,
}

impl Model {
    pub fn var(&self, name: &str) -> Option<&VarDecl> {
        self.vars.iter().find(|v| v.name == name)
    }

    /// The raw equation with the given name, as (declared dim, expression).
    pub fn raweq(&self, name: &str) -> Option<(&Dim, &QExpr)> {
        self.statements.iter().find_map(|s| match s {
            Statement::RawEq {
                name: n,
                declared,
                expr,
                ..
            } if n == name => Some((declared, expr)),
            _ => None,
        })
    }

    /// Quantities for every variable that carries a value.
    pub fn values(&self) -> BTreeMap<String, Quantity> {
        self.vars
            .iter()
            .filter_map(|v| {
                v.value.as_ref().map(|(val, sys)| {
                    (
                        v.name.clone(),
                        Quantity::new(*val, sys.clone(), v.dim.clone()),
                    )
                })
            })
            .collect()
    }

    /// Renders a dimension: the first matching alias name, otherwise the
    /// exponent product over the base symbols.
    pub fn render_dim(&self, dim: &Dim) -> String {
        for alias in &self.dim_aliases {
            if alias.dim == *dim {
                return alias.name.clone();
            }
        }
        dim.base_product()
    }
}

/// Result of a `pigroups` statement: the decomposition, the target's
/// scaling law and all Π-groups (the target's group first).
#[derive(Debug, Clone, PartialEq)]
pub struct PiQueryOutcome {
    pub decomposition: PiDecomposition,
    pub law: ScalingLaw,
    pub groups: Vec<PiGroup>,
}

/// Runs a Π-group query against the model's declarations.
///
/// With `given = None` the governing set is every declared variable except
/// the target, in declaration order. Group values are filled in when the
/// target and all governing variables carry values.
pub fn run_pi_query(
    model: &Model,
    target: &str,
    given: Option<&[String]>,
) -> Result<PiQueryOutcome> {
    let target_var = model.var(target).ok_or_else(|| Error::UndeclaredName {
        line: 0,
        col: 0,
        name: target.to_string(),
    })?;
    let governing: Vec<(String, Dim)> = match given {
        Some(names) => {
            let mut out = Vec::with_capacity(names.len());
            for n in names {
                let v = model.var(n).ok_or_else(|| Error::UndeclaredName {
                    line: 0,
                    col: 0,
                    name: n.clone(),
                })?;
                out.push((v.name.clone(), v.dim.clone()));
            }
            out
        }
        None => model
            .vars
            .iter()
            .filter(|v| v.name != target)
            .map(|v| (v.name.clone(), v.dim.clone()))
            .collect(),
    };

    let (dec, law) = pi::scaling_law((target, &target_var.dim), &governing)?;

    let values = model.values();
    let all_valued =
        values.contains_key(target) && governing.iter().all(|(n, _)| values.contains_key(n));
    let env = QuantityEnv {
        reg: &model.registry,
        values: &values,
    };
    let env_opt = if all_valued { Some(&env) } else { None };

    let mut groups = Vec::new();
    if let Some(g) = pi::target_group(&dec, env_opt)? {
        groups.push(g);
    }
    groups.extend(pi::pi_groups(&dec, env_opt)?);

    Ok(PiQueryOutcome {
        decomposition: dec,
        law,
        groups,
    })
}

/// One evaluated statement.
#[derive(Debug, Clone)]
pub struct Entry {
    pub line: u32,
    pub name: Option<String>,
    pub passed: bool,
    pub summary: String,
    pub body: EntryBody,
}

#[derive(Debug, Clone)]
pub enum EntryBody {
    Check {
        lhs: String,
        rhs: String,
    },
    TypedEq {
        declared: String,
        inferred: Option<String>,
        error: Option<String>,
    },
    RawEq {
        declared: String,
    },
    PiGroups {
        target: String,
        outcome: std::result::Result<PiQueryOutcome, String>,
    },
}

/// Ordered evaluation results, one entry per statement.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub entries: Vec<Entry>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }
}

/// Evaluates every statement. Check failures become failed entries; this
/// function never errors on them.
pub fn check(model: &Model) -> Report {
    let mut entries = Vec::with_capacity(model.statements.len());
    for stmt in &model.statements {
        let entry = match stmt {
            Statement::Check { lhs, rhs, span, .. } => {
                let passed = lhs == rhs;
                let l = model.render_dim(lhs);
                let r = model.render_dim(rhs);
                Entry {
                    line: span.line,
                    name: None,
                    passed,
                    summary: if passed {
                        format!("check: {l} == {r}")
                    } else {
                        format!("check: {l} != {r}")
                    },
                    body: EntryBody::Check { lhs: l, rhs: r },
                }
            }
            Statement::TypedEq {
                name,
                declared,
                expr,
                span,
                ..
            } => match infer_dim(expr, model) {
                Ok(inferred) => {
                    let passed = inferred == *declared;
                    let d = model.render_dim(declared);
                    let i = model.render_dim(&inferred);
                    Entry {
                        line: span.line,
                        name: Some(name.clone()),
                        passed,
                        summary: if passed {
                            format!("eq {name}: {i}")
                        } else {
                            format!("eq {name}: declared {d} but inferred {i}")
                        },
                        body: EntryBody::TypedEq {
                            declared: d,
                            inferred: Some(i),
                            error: None,
                        },
                    }
                }
                Err(e) => Entry {
                    line: span.line,
                    name: Some(name.clone()),
                    passed: false,
                    summary: format!("eq {name}: {e}"),
                    body: EntryBody::TypedEq {
                        declared: model.render_dim(declared),
                        inferred: None,
                        error: Some(e.to_string()),
                    },
                },
            },
            Statement::RawEq {
                name,
                declared,
                span,
                ..
            } => {
                let d = model.render_dim(declared);
                Entry {
                    line: span.line,
                    name: Some(name.clone()),
                    passed: true,
                    summary: format!("raweq {name}: recorded with output dimension {d}"),
                    body: EntryBody::RawEq { declared: d },
                }
            }
            Statement::PiQuery {
                target,
                given,
                span,
            } => match run_pi_query(model, target, given.as_deref()) {
                Ok(outcome) => Entry {
                    line: span.line,
                    name: Some(target.clone()),
                    passed: true,
                    summary: format!("pigroups {target}: {}", outcome.law),
                    body: EntryBody::PiGroups {
                        target: target.clone(),
                        outcome: Ok(outcome),
                    },
                },
                Err(e) => Entry {
                    line: span.line,
                    name: Some(target.clone()),
                    passed: false,
                    summary: format!("pigroups {target}: {e}"),
                    body: EntryBody::PiGroups {
                        target: target.clone(),
                        outcome: Err(e.to_string()),
                    },
                },
            },
        };
        entries.push(entry);
    }
    Report { entries }
}

/// Canonical text rendering; parsing it back yields a structurally equal
/// model.
pub fn format(model: &Model) -> String {
    let mut out = String::new();
    let bases: Vec<&str> = model.class.bases().iter().map(String::as_str).collect();
    out.push_str(&format!(
        "class {} {}\n",
        model.class.name(),
        bases.join(" ")
    ));
    for (i, sys) in model.registry.systems().iter().enumerate() {
        if i == 0 {
            out.push_str(&format!("system {} reference\n", sys.name()));
        } else {
            let sizes: Vec<String> = sys.sizes().iter().map(|s| format!("{s}")).collect();
            out.push_str(&format!("system {} {}\n", sys.name(), sizes.join(" ")));
        }
    }
    for alias in &model.dim_aliases {
        out.push_str(&format!("dim {} = {}\n", alias.name, alias.expr.render()));
    }
    for v in &model.vars {
        match &v.value {
            Some((val, sys)) => out.push_str(&format!(
                "var {} : {} = {} {}\n",
                v.name,
                v.dim_expr.render(),
                val,
                sys
            )),
            None => out.push_str(&format!("var {} : {}\n", v.name, v.dim_expr.render())),
        }
    }
    for stmt in &model.statements {
        match stmt {
            Statement::Check {
                lhs_expr, rhs_expr, ..
            } => out.push_str(&format!(
                "check {} == {}\n",
                lhs_expr.render(),
                rhs_expr.render()
            )),
            Statement::TypedEq {
                name,
                declared_expr,
                expr,
                ..
            } => out.push_str(&format!(
                "eq {} : {} = {}\n",
                name,
                declared_expr.render(),
                expr.render()
            )),
            Statement::RawEq {
                name,
                declared_expr,
                expr,
                ..
            } => out.push_str(&format!(
                "raweq {} : {} = {}\n",
                name,
                declared_expr.render(),
                expr.render()
            )),
            Statement::PiQuery { target, given, .. } => match given {
                None => out.push_str(&format!("pigroups {target} auto\n")),
                Some(names) => {
                    out.push_str(&format!("pigroups {} given {}\n", target, names.join(", ")))
                }
            },
        }
    }
    out
}
