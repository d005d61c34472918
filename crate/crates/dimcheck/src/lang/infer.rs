//! Dimension inference and evaluation of quantity expressions.

use std::collections::BTreeMap;
use std::fmt;

use crate::dimension::Dim;
use crate::error::Error;
use crate::lang::ast::{QExpr, Span};
use crate::lang::Model;
use crate::quantity::Quantity;

/// An engine error positioned at the offending subexpression.
#[derive(Debug, Clone, PartialEq)]
pub struct InferError {
    pub span: Span,
    pub error: Error,
}

impl fmt::Display for InferError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.span.line, self.span.col, self.error)
    }
}

fn at(span: Span) -> impl Fn(Error) -> InferError {
    move |error| InferError { span, error }
}

/// Infers the dimension of an expression under the typing rules: additive
/// operands must share a dimension, multiplication and division combine
/// dimensions, numeric literals are dimensionless and roots divide
/// exponents.
pub fn infer_dim(expr: &QExpr, model: &Model) -> Result<Dim, InferError> {
    match expr {
        QExpr::Var(name, span) => match model.var(name) {
            Some(v) => Ok(v.dim.clone()),
            None => Err(InferError {
                span: *span,
                error: Error::UndeclaredName {
                    line: span.line,
                    col: span.col,
                    name: name.clone(),
                },
            }),
        },
        QExpr::Num(_, _) => Ok(model.class.dimless()),
        QExpr::Add(l, r) | QExpr::Sub(l, r) => {
            let dl = infer_dim(l, model)?;
            let dr = infer_dim(r, model)?;
            if dl != dr {
                return Err(InferError {
                    span: r.span(),
                    error: Error::DimensionMismatch {
                        left: model.render_dim(&dl),
                        right: model.render_dim(&dr),
                    },
                });
            }
            Ok(dl)
        }
        QExpr::Mul(l, r) => {
            let dl = infer_dim(l, model)?;
            let dr = infer_dim(r, model)?;
            dl.times(&dr).map_err(at(expr.span()))
        }
        QExpr::Div(l, r) => {
            let dl = infer_dim(l, model)?;
            let dr = infer_dim(r, model)?;
            dl.over(&dr).map_err(at(expr.span()))
        }
        QExpr::Pow(b, k) => infer_dim(b, model)?.pow(*k).map_err(at(b.span())),
        QExpr::Root(b, k, span) => {
            let d = infer_dim(b, model)?;
            let k = i64::from(*k);
            let mut exps = Vec::with_capacity(d.exps().len());
            for &e in d.exps() {
                if e % k != 0 {
                    return Err(InferError {
                        span: *span,
                        error: Error::NonIntegralRoot {
                            exponent: e,
                            degree: k,
                        },
                    });
                }
                exps.push(e / k);
            }
            d.class().dim_from_exps(&exps).map_err(at(*span))
        }
    }
}

/// Evaluates an expression to a [`Quantity`], requiring a value for every
/// variable it mentions.
pub fn eval_quantity(expr: &QExpr, model: &Model) -> Result<Quantity, InferError> {
    let reg = &model.registry;
    match expr {
        QExpr::Var(name, span) => {
            let v = model.var(name).ok_or_else(|| InferError {
                span: *span,
                error: Error::UndeclaredName {
                    line: span.line,
                    col: span.col,
                    name: name.clone(),
                },
            })?;
            let (value, system) = v.value.as_ref().ok_or_else(|| InferError {
                span: *span,
                error: Error::MissingValue { name: name.clone() },
            })?;
            Ok(Quantity::new(*value, system.clone(), v.dim.clone()))
        }
        QExpr::Num(x, _) => Ok(Quantity::dimensionless(reg, *x)),
        QExpr::Add(l, r) => {
            let a = eval_quantity(l, model)?;
            let b = eval_quantity(r, model)?;
            a.add(reg, &b).map_err(at(r.span()))
        }
        QExpr::Sub(l, r) => {
            let a = eval_quantity(l, model)?;
            let b = eval_quantity(r, model)?;
            a.sub(reg, &b).map_err(at(r.span()))
        }
        QExpr::Mul(l, r) => {
            let a = eval_quantity(l, model)?;
            let b = eval_quantity(r, model)?;
            a.mul(reg, &b).map_err(at(expr.span()))
        }
        QExpr::Div(l, r) => {
            let a = eval_quantity(l, model)?;
            let b = eval_quantity(r, model)?;
            a.div(reg, &b).map_err(at(expr.span()))
        }
        QExpr::Pow(b, k) => eval_quantity(b, model)?.powi(*k).map_err(at(b.span())),
        QExpr::Root(b, k, span) => eval_quantity(b, model)?.root(*k).map_err(at(*span)),
    }
}

/// Evaluates an expression as bare floating-point arithmetic over an
/// environment of raw measures. Deliberately not dimension-checked; this is
/// what the covariance test exercises.
pub fn eval_raw(expr: &QExpr, env: &BTreeMap<String, f64>) -> f64 {
    match expr {
        QExpr::Var(name, _) => env.get(name).copied().unwrap_or(f64::NAN),
        QExpr::Num(x, _) => *x,
        QExpr::Add(l, r) => eval_raw(l, env) + eval_raw(r, env),
        QExpr::Sub(l, r) => eval_raw(l, env) - eval_raw(r, env),
        QExpr::Mul(l, r) => eval_raw(l, env) * eval_raw(r, env),
        QExpr::Div(l, r) => eval_raw(l, env) / eval_raw(r, env),
        QExpr::Pow(b, k) => eval_raw(b, env).powi(*k as i32),
        QExpr::Root(b, k, _) => {
            let v = eval_raw(b, env);
            let kf = f64::from(*k);
            if v < 0.0 && k % 2 == 1 {
                -(-v).powf(1.0 / kf)
            } else {
                v.powf(1.0 / kf)
            }
        }
    }
}
