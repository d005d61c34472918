//! Computational content of Buckingham's Pi theorem.
//!
//! A set of named quantities is split into a dimensionally independent
//! basis and a dependent remainder; each dependent quantity yields one
//! dimensionless Π-group, and a chosen target yields a scaling law
//! `target^p = Π basis_i^{p_i} · Φ(Π_1, …, Π_m)` with Φ left opaque.

use std::collections::BTreeMap;
use std::fmt;

use crate::dimension::Dim;
use crate::error::{Error, Result};
use crate::lindep::{self, DepEvidence};
use crate::quantity::Quantity;
use crate::units::UnitRegistry;

/// Split of named quantities into independent basis and dependent rest.
#[derive(Debug, Clone, PartialEq)]
pub struct PiDecomposition {
    /// The basis: quantities whose dimensions are independent.
    pub independent: Vec<(String, Dim)>,
    /// The rest, each with evidence against the independent dims.
    pub dependent: Vec<(String, Dim, DepEvidence)>,
    /// The quantity the scaling law is solved for, when one was chosen.
    pub target: Option<(String, Dim, DepEvidence)>,
}

/// A dimensionless product `numerator^p / Π basis_i^{e_i}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PiGroup {
    pub numerator: String,
    pub p: i64,
    pub denominator_exponents: Vec<(String, i64)>,
    pub value: Option<f64>,
}

/// The Pi-theorem form `target^p = Π basis_i^{p_i} · Φ(groups…)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingLaw {
    pub target: String,
    pub p: i64,
    pub basis_exponents: Vec<(String, i64)>,
    pub phi_args: Vec<PiGroup>,
}

/// Quantity values for filling in numeric Π-group values.
pub struct QuantityEnv<'a> {
    pub reg: &'a UnitRegistry,
    pub values: &'a BTreeMap<String, Quantity>,
}

/// Greedy scan in input order: a quantity joins the basis if it increases
/// the rank, otherwise it becomes dependent. Evidence is computed against
/// the final basis.
pub fn decompose(quantities: &[(String, Dim)]) -> Result<PiDecomposition> {
    let mut independent: Vec<(String, Dim)> = Vec::new();
    let mut rest: Vec<(String, Dim)> = Vec::new();
    let mut current_rank = 0;
    for (name, dim) in quantities {
        let mut dims: Vec<Dim> = independent.iter().map(|(_, d)| d.clone()).collect();
        dims.push(dim.clone());
        let r = lindep::rank(&dims)?;
        if r > current_rank {
            independent.push((name.clone(), dim.clone()));
            current_rank = r;
        } else {
            rest.push((name.clone(), dim.clone()));
        }
    }
    let basis: Vec<Dim> = independent.iter().map(|(_, d)| d.clone()).collect();
    let mut dependent = Vec::with_capacity(rest.len());
    for (name, dim) in rest {
        let e = lindep::find_dep(&dim, &basis)?
            .expect("dependent dim lies in the span of the independent set");
        dependent.push((name, dim, e));
    }
    Ok(PiDecomposition {
        independent,
        dependent,
        target: None,
    })
}

fn group_from_evidence(
    numerator: &str,
    dim: &Dim,
    e: &DepEvidence,
    dec: &PiDecomposition,
    env: Option<&QuantityEnv>,
) -> Result<PiGroup> {
    let denominator_exponents: Vec<(String, i64)> = dec
        .independent
        .iter()
        .zip(&e.ps)
        .map(|((n, _), &p)| (n.clone(), p))
        .collect();
    let value = match env {
        None => None,
        Some(env) => {
            let q = lookup(env, numerator, dim)?;
            let mut qs = Vec::with_capacity(dec.independent.len());
            for (n, d) in &dec.independent {
                qs.push(lookup(env, n, d)?.clone());
            }
            Some(lindep::make_dimless(env.reg, q, &qs, e)?.value())
        }
    };
    Ok(PiGroup {
        numerator: numerator.to_string(),
        p: e.p,
        denominator_exponents,
        value,
    })
}

fn lookup<'a>(env: &'a QuantityEnv, name: &str, declared: &Dim) -> Result<&'a Quantity> {
    let q = env.values.get(name).ok_or_else(|| Error::MissingValue {
        name: name.to_string(),
    })?;
    if q.dim() != declared {
        return Err(Error::DimMismatchWithDeclared {
            name: name.to_string(),
        });
    }
    Ok(q)
}

/// One Π-group per dependent entry; numeric values are filled in when an
/// environment is supplied.
pub fn pi_groups(dec: &PiDecomposition, env: Option<&QuantityEnv>) -> Result<Vec<PiGroup>> {
    dec.dependent
        .iter()
        .map(|(name, dim, e)| group_from_evidence(name, dim, e, dec, env))
        .collect()
}

/// The Π-group of the decomposition's target, if one was solved for.
pub fn target_group(dec: &PiDecomposition, env: Option<&QuantityEnv>) -> Result<Option<PiGroup>> {
    match &dec.target {
        None => Ok(None),
        Some((name, dim, e)) => Ok(Some(group_from_evidence(name, dim, e, dec, env)?)),
    }
}

/// The unique canonical evidence expressing `target` over an independent
/// basis.
pub fn solve_exponents(target: &Dim, basis: &[Dim]) -> Result<DepEvidence> {
    if !lindep::are_indep(basis)? {
        return Err(Error::NotIndependentBasis);
    }
    match lindep::find_dep(target, basis)? {
        Some(e) => Ok(e),
        None => Err(Error::NotDependent {
            unreachable: lindep::unreachable_bases(target, basis)?,
        }),
    }
}

/// Decomposes the governing quantities, solves the target against their
/// independent part and attaches the dependents' Π-groups as the arguments
/// of the opaque function Φ.
pub fn scaling_law(
    target: (&str, &Dim),
    governing: &[(String, Dim)],
) -> Result<(PiDecomposition, ScalingLaw)> {
    let mut dec = decompose(governing)?;
    let basis: Vec<Dim> = dec.independent.iter().map(|(_, d)| d.clone()).collect();
    let e = solve_exponents(target.1, &basis)?;
    let basis_exponents: Vec<(String, i64)> = dec
        .independent
        .iter()
        .zip(&e.ps)
        .map(|((n, _), &p)| (n.clone(), p))
        .collect();
    let phi_args = pi_groups(&dec, None)?;
    let law = ScalingLaw {
        target: target.0.to_string(),
        p: e.p,
        basis_exponents,
        phi_args,
    };
    dec.target = Some((target.0.to_string(), target.1.clone(), e));
    Ok((dec, law))
}

impl fmt::Display for PiGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.numerator, self.p)?;
        let parts: Vec<String> = self
            .denominator_exponents
            .iter()
            .filter(|(_, e)| *e != 0)
            .map(|(n, e)| format!("{n}^{e}"))
            .collect();
        match parts.len() {
            0 => Ok(()),
            1 => write!(f, " / {}", parts[0]),
            _ => write!(f, " / ({})", parts.join(" · ")),
        }
    }
}

impl fmt::Display for ScalingLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{} =", self.target, self.p)?;
        for (name, e) in &self.basis_exponents {
            write!(f, " {name}^{e} ·")?;
        }
        let args: Vec<&str> = self.phi_args.iter().map(|g| g.numerator.as_str()).collect();
        write!(f, " Φ({})", args.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimension::{ltm, DimClass};

    fn length() -> Dim {
        ltm().base_dim("L").unwrap()
    }

    fn time() -> Dim {
        ltm().base_dim("T").unwrap()
    }

    fn mass() -> Dim {
        ltm().base_dim("M").unwrap()
    }

    fn acceleration() -> Dim {
        length().over(&time().pow(2).unwrap()).unwrap()
    }

    fn named(pairs: &[(&str, Dim)]) -> Vec<(String, Dim)> {
        pairs
            .iter()
            .map(|(n, d)| (n.to_string(), d.clone()))
            .collect()
    }

    fn stommel_quantities() -> Vec<(String, Dim)> {
        let class = DimClass::new("TTh", &["T", "Th"]).unwrap();
        let per_time = class
            .dimless()
            .over(&class.base_dim("T").unwrap())
            .unwrap();
        let temp = class.base_dim("Th").unwrap();
        named(&[
            ("c", per_time.clone()),
            ("d", per_time),
            ("Te", temp.clone()),
            ("T0", temp),
        ])
    }

    #[test]
    fn decompose_stommel() {
        let dec = decompose(&stommel_quantities()).unwrap();
        let indep: Vec<&str> = dec.independent.iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(indep, vec!["c", "Te"]);
        let dep: Vec<(&str, &DepEvidence)> = dec
            .dependent
            .iter()
            .map(|(n, _, e)| (n.as_str(), e))
            .collect();
        assert_eq!(dep.len(), 2);
        assert_eq!(dep[0], ("d", &DepEvidence { p: 1, ps: vec![1, 0] }));
        assert_eq!(dep[1], ("T0", &DepEvidence { p: 1, ps: vec![0, 1] }));
    }

    #[test]
    fn decompose_pendulum() {
        let dec = decompose(&named(&[
            ("l", length()),
            ("g", acceleration()),
            ("tau", time()),
        ]))
        .unwrap();
        assert_eq!(dec.independent.len(), 2);
        assert_eq!(dec.dependent.len(), 1);
        let (name, _, e) = &dec.dependent[0];
        assert_eq!(name, "tau");
        assert_eq!(e, &DepEvidence { p: 2, ps: vec![1, -1] });
    }

    #[test]
    fn decompose_single() {
        let dec = decompose(&named(&[("x", length())])).unwrap();
        assert_eq!(dec.independent.len(), 1);
        assert!(dec.dependent.is_empty());
    }

    #[test]
    fn group_count_matches_rank_deficit() {
        let qs = stommel_quantities();
        let dec = decompose(&qs).unwrap();
        let dims: Vec<Dim> = qs.iter().map(|(_, d)| d.clone()).collect();
        let total = qs.len();
        let r = lindep::rank(&dims).unwrap();
        assert_eq!(dec.dependent.len(), total - r);
    }

    #[test]
    fn pi_groups_stommel() {
        let dec = decompose(&stommel_quantities()).unwrap();
        let groups = pi_groups(&dec, None).unwrap();
        assert_eq!(groups.len(), 2);
        assert_eq!(groups[0].to_string(), "d^1 / c^1");
        assert_eq!(groups[1].to_string(), "T0^1 / Te^1");
    }

    #[test]
    fn pi_groups_pendulum_display_and_empty() {
        let dec = decompose(&named(&[
            ("l", length()),
            ("g", acceleration()),
            ("tau", time()),
        ]))
        .unwrap();
        let groups = pi_groups(&dec, None).unwrap();
        assert_eq!(groups.len(), 1);
        assert_eq!(groups[0].to_string(), "tau^2 / (l^1 · g^-1)");

        let none = decompose(&named(&[("l", length())])).unwrap();
        assert!(pi_groups(&none, None).unwrap().is_empty());
    }

    #[test]
    fn solve_exponents_examples() {
        let e = solve_exponents(&length(), &[acceleration(), mass(), time()]).unwrap();
        assert_eq!(e, DepEvidence { p: 1, ps: vec![1, 0, 2] });

        let e = solve_exponents(&time(), &[length(), acceleration()]).unwrap();
        assert_eq!(e, DepEvidence { p: 2, ps: vec![1, -1] });

        match solve_exponents(&mass(), &[length(), time()]) {
            Err(Error::NotDependent { unreachable }) => {
                assert_eq!(unreachable, vec!["M".to_string()]);
            }
            other => panic!("expected NotDependent, got {other:?}"),
        }

        assert!(matches!(
            solve_exponents(&mass(), &[time(), time()]),
            Err(Error::NotIndependentBasis)
        ));
    }

    #[test]
    fn scaling_law_pendulum_length() {
        let governing = named(&[
            ("alpha", ltm().dimless()),
            ("g", acceleration()),
            ("m", mass()),
            ("tau", time()),
        ]);
        let (dec, law) = scaling_law(("length", &length()), &governing).unwrap();
        assert_eq!(law.p, 1);
        assert_eq!(
            law.basis_exponents,
            vec![
                ("g".to_string(), 1),
                ("m".to_string(), 0),
                ("tau".to_string(), 2)
            ]
        );
        let args: Vec<&str> = law.phi_args.iter().map(|g| g.numerator.as_str()).collect();
        assert_eq!(args, vec!["alpha"]);
        assert_eq!(law.to_string(), "length^1 = g^1 · m^0 · tau^2 · Φ(alpha)");
        assert!(dec.target.is_some());
    }

    #[test]
    fn scaling_law_tau_squared() {
        let governing = named(&[("l", length()), ("g", acceleration())]);
        let tau2 = time().pow(2).unwrap();
        let (_, law) = scaling_law(("tau2", &tau2), &governing).unwrap();
        assert_eq!(law.p, 1);
        assert_eq!(
            law.basis_exponents,
            vec![("l".to_string(), 1), ("g".to_string(), -1)]
        );
        assert!(law.phi_args.is_empty());
    }

    #[test]
    fn scaling_law_newton() {
        let governing = named(&[("m", mass()), ("a", acceleration())]);
        let force = mass().times(&acceleration()).unwrap();
        let (_, law) = scaling_law(("F", &force), &governing).unwrap();
        assert_eq!(law.p, 1);
        assert_eq!(
            law.basis_exponents,
            vec![("m".to_string(), 1), ("a".to_string(), 1)]
        );
        assert_eq!(law.to_string(), "F^1 = m^1 · a^1 · Φ()");
    }

    #[test]
    fn scaling_law_soundness() {
        let governing = named(&[
            ("alpha", ltm().dimless()),
            ("g", acceleration()),
            ("m", mass()),
            ("tau", time()),
        ]);
        let (dec, law) = scaling_law(("length", &length()), &governing).unwrap();
        let basis: Vec<Dim> = dec.independent.iter().map(|(_, d)| d.clone()).collect();
        let ps: Vec<i64> = law.basis_exponents.iter().map(|(_, e)| *e).collect();
        assert_eq!(
            length().pow(law.p).unwrap(),
            Dim::prod_pows(&basis, &ps).unwrap()
        );
    }

    #[test]
    fn valued_groups_are_unit_invariant() {
        let reg = UnitRegistry::ltm_si_cgs();
        let dec = decompose(&named(&[
            ("l", length()),
            ("g", acceleration()),
            ("tau", time()),
        ]))
        .unwrap();
        let mut values = BTreeMap::new();
        values.insert("l".to_string(), Quantity::new(1.0, "SI", length()));
        values.insert("g".to_string(), Quantity::new(4.0, "SI", acceleration()));
        values.insert("tau".to_string(), Quantity::new(2.0, "SI", time()));
        let env = QuantityEnv {
            reg: &reg,
            values: &values,
        };
        let groups = pi_groups(&dec, Some(&env)).unwrap();
        assert_eq!(groups[0].value, Some(16.0));

        values_missing_error(&dec, &reg);
    }

    fn values_missing_error(dec: &PiDecomposition, reg: &UnitRegistry) {
        let values = BTreeMap::new();
        let env = QuantityEnv { reg, values: &values };
        assert!(matches!(
            pi_groups(dec, Some(&env)),
            Err(Error::MissingValue { .. })
        ));
    }
}
