//! Numerical test of the covariance principle.
//!
//! A raw numeric relationship with a declared output dimension must commute
//! with unit rescaling: evaluating it on measures taken in a rescaled
//! system has to agree with rescaling its reference-system result by the
//! declared dimension function. Each trial draws a fresh system with
//! per-base sizes sampled log-uniformly in [0.1, 10] and compares the two
//! routes.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lang::{eval_raw, Model};

/// Outcome of a covariance run; `passed` iff no trial failed.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceReport {
    pub equation: String,
    pub trials: u32,
    pub failures: u32,
    pub max_rel_error: f64,
    pub seed: u64,
    pub passed: bool,
}

/// Tests the named raw equation for covariance under `trials` random unit
/// rescalings. Deterministic for a given seed: trial `i` uses an RNG
/// stream derived from `(seed, i)`.
pub fn check_covariance(
    model: &Model,
    raweq_name: &str,
    trials: u32,
    tol: f64,
    seed: u64,
) -> Result<CovarianceReport> {
    let (declared, expr) = model
        .raweq(raweq_name)
        .ok_or_else(|| Error::UnknownEquation {
            name: raweq_name.to_string(),
        })?;

    let values = model.values();
    let mut ref_env = BTreeMap::new();
    for name in expr.vars() {
        let q = values
            .get(&name)
            .ok_or_else(|| Error::MissingValue { name: name.clone() })?;
        ref_env.insert(
            name,
            q.measure(&model.registry, model.registry.reference().name())?,
        );
    }
    let ref_result = eval_raw(expr, &ref_env);

    let n = model.class.len();
    let mut failures = 0;
    let mut max_rel_error: f64 = 0.0;
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(u64::from(trial));
        let sizes: Vec<f64> = (0..n)
            .map(|_| 10_f64.powf(rng.gen_range(-1.0..1.0)))
            .collect();

        // measures of the variables in the rescaled system
        let mut env = BTreeMap::new();
        for (name, q) in &values {
            if !ref_env.contains_key(name) {
                continue;
            }
            let factors = model
                .registry
                .scale_factors_to_sizes(q.system(), &sizes)?;
            env.insert(name.clone(), q.value() * q.dim().df(&factors)?);
        }
        let lhs = eval_raw(expr, &env);

        // reference result pushed through the declared dimension function
        let ref_factors = model
            .registry
            .scale_factors_to_sizes(model.registry.reference().name(), &sizes)?;
        let rhs = declared.df(&ref_factors)? * ref_result;

        let err = if rhs.abs() < 1e-300 {
            (lhs - rhs).abs()
        } else {
            ((lhs - rhs) / rhs).abs()
        };
        if !(err <= tol) {
            failures += 1;
        }
        if err.is_nan() {
            max_rel_error = f64::NAN;
        } else {
            max_rel_error = max_rel_error.max(err);
        }
    }

    Ok(CovarianceReport {
        equation: raweq_name.to_string(),
        trials,
        failures,
        max_rel_error,
        seed,
        passed: failures == 0,
    })
}
