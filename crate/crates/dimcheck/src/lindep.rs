//! Exact decision procedures for dimensional dependence and independence.
//!
//! A dimension `d` depends on a list `ds` iff some nonzero integer power of
//! `d` is a product of integer powers of the `ds`, i.e. iff the exponent
//! vector of `d` lies in the rational span of theirs. All decisions here are
//! made with exact integer and rational arithmetic, never floating point.

use std::sync::Arc;

use num::integer::Integer;
use num::{BigInt, BigRational, One, Signed, Zero};

use crate::dimension::{prod_pows_in, Dim, DimClass};
use crate::error::{Error, Result};
use crate::quantity::Quantity;
use crate::units::UnitRegistry;

/// Canonical witness that `pow(d, p) = prod_pows(ds, ps)`.
///
/// Canonical means `p > 0` and, when any `ps` entry is nonzero,
/// `gcd(p, gcd |ps|) = 1`; an all-zero `ps` (dimensionless target) comes
/// with `p = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepEvidence {
    pub p: i64,
    pub ps: Vec<i64>,
}

fn shared_class(ds: &[Dim]) -> Result<()> {
    if let Some((first, rest)) = ds.split_first() {
        for d in rest {
            if first.class().as_ref() != d.class().as_ref() {
                return Err(Error::ClassMismatch {
                    left: first.class().name().to_string(),
                    right: d.class().name().to_string(),
                });
            }
        }
    }
    Ok(())
}

/// Rank over the rationals of the exponent matrix, by fraction-free
/// (Bareiss) elimination over the integers.
pub fn rank(ds: &[Dim]) -> Result<usize> {
    shared_class(ds)?;
    let k = ds.len();
    if k == 0 {
        return Ok(0);
    }
    let n = ds[0].class().len();
    let mut m: Vec<Vec<BigInt>> = ds
        .iter()
        .map(|d| d.exps().iter().map(|&e| BigInt::from(e)).collect())
        .collect();

    let mut prev = BigInt::one();
    let mut row = 0;
    for col in 0..n {
        if row == k {
            break;
        }
        let Some(pivot_row) = (row..k).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, pivot_row);
        let pivot = m[row][col].clone();
        for r in row + 1..k {
            let lead = m[r][col].clone();
            for c in col + 1..n {
                // Bareiss step: the division by the previous pivot is exact
                m[r][c] = (&pivot * &m[r][c] - &lead * &m[row][c]) / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = pivot;
        row += 1;
    }
    Ok(row)
}

/// True iff the dimensions are linearly independent over the rationals.
pub fn are_indep(ds: &[Dim]) -> Result<bool> {
    Ok(rank(ds)? == ds.len())
}

fn rational_rows(ds: &[Dim]) -> Vec<Vec<BigRational>> {
    ds.iter()
        .map(|d| {
            d.exps()
                .iter()
                .map(|&e| BigRational::from_integer(BigInt::from(e)))
                .collect()
        })
        .collect()
}

/// Reduced row echelon form over the first `cols` columns; extra columns
/// ride along as the augmented part. Returns the pivot columns.
fn rref(m: &mut [Vec<BigRational>], cols: usize) -> Vec<usize> {
    let rows = m.len();
    let width = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(pr) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, pr);
        let inv = m[row][col].clone();
        for c in col..width {
            m[row][c] = &m[row][c] / &inv;
        }
        for r in 0..rows {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..width {
                    m[r][c] = &m[r][c] - &factor * &m[row][c];
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

fn to_i64(v: &BigInt) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::ExponentOverflow)
}

fn evidence_from_solution(xs: &[BigRational]) -> Result<DepEvidence> {
    let mut p = BigInt::one();
    for x in xs {
        p = p.lcm(x.denom());
    }
    if p.is_negative() {
        p = -p;
    }
    let ps = xs
        .iter()
        .map(|x| to_i64(&(x * BigRational::from_integer(p.clone())).to_integer()))
        .collect::<Result<Vec<_>>>()?;
    Ok(DepEvidence { p: to_i64(&p)?, ps })
}

/// Searches for canonical evidence that `d` depends on `ds`.
///
/// Solves `d = Σ x_i · ds_i` over the rationals; free coordinates (when the
/// `ds` are themselves dependent) are set to zero before denominators are
/// cleared, making the witness deterministic.
pub fn find_dep(d: &Dim, ds: &[Dim]) -> Result<Option<DepEvidence>> {
    let mut all = vec![d.clone()];
    all.extend_from_slice(ds);
    shared_class(&all)?;

    let n = d.class().len();
    let k = ds.len();
    // augmented system over base dimensions: Σ x_i ds_i[j] = d[j]
    let mut aug: Vec<Vec<BigRational>> = (0..n)
        .map(|j| {
            let mut row: Vec<BigRational> = ds
                .iter()
                .map(|di| BigRational::from_integer(BigInt::from(di.exps()[j])))
                .collect();
            row.push(BigRational::from_integer(BigInt::from(d.exps()[j])));
            row
        })
        .collect();

    let pivots = rref(&mut aug, k);
    for row in &aug {
        if row[..k].iter().all(Zero::is_zero) && !row[k].is_zero() {
            return Ok(None);
        }
    }

    let mut xs = vec![BigRational::zero(); k];
    for (r, &c) in pivots.iter().enumerate() {
        xs[c] = aug[r][k].clone();
    }
    Ok(Some(evidence_from_solution(&xs)?))
}

/// [`find_dep`] for every element of `ds2`; `None` if any element fails.
pub fn are_dep(ds2: &[Dim], ds: &[Dim]) -> Result<Option<Vec<DepEvidence>>> {
    let mut out = Vec::with_capacity(ds2.len());
    for d in ds2 {
        match find_dep(d, ds)? {
            Some(e) => out.push(e),
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

/// Base symbols of `d` that are unreachable from the span of `ds`: the
/// nonzero coordinates of the residual after reducing `d` against the row
/// echelon of `ds`.
pub fn unreachable_bases(d: &Dim, ds: &[Dim]) -> Result<Vec<String>> {
    let n = d.class().len();
    let mut rows = rational_rows(ds);
    let pivots = rref(&mut rows, n);
    let mut residual: Vec<BigRational> = d
        .exps()
        .iter()
        .map(|&e| BigRational::from_integer(BigInt::from(e)))
        .collect();
    for (r, &c) in pivots.iter().enumerate() {
        if !residual[c].is_zero() {
            let factor = residual[c].clone();
            for j in 0..n {
                residual[j] = &residual[j] - &factor * &rows[r][j];
            }
        }
    }
    Ok(d.class()
        .bases()
        .iter()
        .zip(&residual)
        .filter(|(_, r)| !r.is_zero())
        .map(|(b, _)| b.clone())
        .collect())
}

fn validate_evidence(d: &Dim, ds: &[Dim], e: &DepEvidence) -> Result<Dim> {
    if e.p == 0 || e.ps.len() != ds.len() {
        return Err(Error::InvalidEvidence);
    }
    let lhs = d.pow(e.p)?;
    let rhs = prod_pows_in(d.class(), ds, &e.ps)?;
    if lhs != rhs {
        return Err(Error::InvalidEvidence);
    }
    Ok(lhs.over(&rhs)?)
}

/// Dimension of the quantity produced by [`make_dimless`]; dimensionless
/// exactly when the evidence is valid.
pub fn dim_make_dimless(d: &Dim, ds: &[Dim], e: &DepEvidence) -> Result<Dim> {
    validate_evidence(d, ds, e)
}

/// Builds the dimensionless quantity `q^p / Π qs_i^{ps_i}` from dependence
/// evidence.
pub fn make_dimless(
    reg: &UnitRegistry,
    q: &Quantity,
    qs: &[Quantity],
    e: &DepEvidence,
) -> Result<Quantity> {
    let dims: Vec<Dim> = qs.iter().map(|x| x.dim().clone()).collect();
    validate_evidence(q.dim(), &dims, e)?;
    let numerator = q.powi(e.p)?;
    let class: &Arc<DimClass> = q.dim().class();
    let mut denominator = Quantity::new(1.0, q.system(), class.dimless());
    for (qi, &pi) in qs.iter().zip(&e.ps) {
        denominator = denominator.mul(reg, &qi.powi(pi)?)?;
    }
    numerator.div(reg, &denominator)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimension::ltm;

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

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&[length(), acceleration()]).unwrap(), 2);
        // [0,1,0] = (1/2)([1,0,0] - [1,-2,0])
        assert_eq!(rank(&[time(), length(), acceleration()]).unwrap(), 2);
        assert_eq!(rank(&[]).unwrap(), 0);
    }

    #[test]
    fn rank_matches_rational_elimination() {
        // cross-check the fraction-free route against plain rational RREF
        let cases: Vec<Vec<Dim>> = vec![
            vec![length(), acceleration(), mass()],
            vec![time(), time().pow(2).unwrap()],
            vec![ltm().dimless(), length()],
            vec![
                ltm().dim_from_exps(&[2, -3, 1]).unwrap(),
                ltm().dim_from_exps(&[-4, 6, -2]).unwrap(),
                ltm().dim_from_exps(&[1, 1, 1]).unwrap(),
            ],
        ];
        for ds in cases {
            let mut rows = rational_rows(&ds);
            let expected = rref(&mut rows, 3).len();
            assert_eq!(rank(&ds).unwrap(), expected);
        }
    }

    #[test]
    fn independence_examples() {
        assert!(are_indep(&[length(), acceleration()]).unwrap());
        assert!(!are_indep(&[time(), length(), acceleration()]).unwrap());
        assert!(are_indep(&[]).unwrap());
        assert!(are_indep(&[acceleration(), mass(), time()]).unwrap());
    }

    #[test]
    fn find_dep_pendulum() {
        let e = find_dep(&time(), &[length(), acceleration()])
            .unwrap()
            .unwrap();
        assert_eq!(e, DepEvidence { p: 2, ps: vec![1, -1] });
    }

    #[test]
    fn find_dep_dimensionless_target() {
        let e = find_dep(&ltm().dimless(), &[acceleration(), mass(), time()])
            .unwrap()
            .unwrap();
        assert_eq!(e, DepEvidence { p: 1, ps: vec![0, 0, 0] });
    }

    #[test]
    fn find_dep_unreachable() {
        assert!(find_dep(&mass(), &[length(), time()]).unwrap().is_none());
        assert_eq!(
            unreachable_bases(&mass(), &[length(), time()]).unwrap(),
            vec!["M".to_string()]
        );
    }

    #[test]
    fn find_dep_member_of_independent_list() {
        let e = find_dep(&acceleration(), &[length(), acceleration(), mass()])
            .unwrap()
            .unwrap();
        assert_eq!(e, DepEvidence { p: 1, ps: vec![0, 1, 0] });
    }

    #[test]
    fn find_dep_zeroes_free_coordinates() {
        // duplicated basis entry: solution picks the first, frees the second
        let e = find_dep(&length().pow(2).unwrap(), &[length(), length()])
            .unwrap()
            .unwrap();
        assert_eq!(e, DepEvidence { p: 1, ps: vec![2, 0] });
    }

    #[test]
    fn are_dep_examples() {
        let got = are_dep(&[time()], &[length(), acceleration()])
            .unwrap()
            .unwrap();
        assert_eq!(got, vec![DepEvidence { p: 2, ps: vec![1, -1] }]);
        assert_eq!(
            are_dep(&[], &[length(), time()]).unwrap().unwrap(),
            Vec::<DepEvidence>::new()
        );
        assert!(are_dep(&[mass()], &[length(), time()]).unwrap().is_none());
    }

    #[test]
    fn dim_make_dimless_examples() {
        let ds = [length(), acceleration()];
        let good = DepEvidence { p: 2, ps: vec![1, -1] };
        assert!(dim_make_dimless(&time(), &ds, &good).unwrap().is_dimless());

        let trivial = DepEvidence { p: 1, ps: vec![0, 0] };
        assert!(dim_make_dimless(&ltm().dimless(), &ds, &trivial)
            .unwrap()
            .is_dimless());

        let bad = DepEvidence { p: 1, ps: vec![1, 0] };
        assert!(matches!(
            dim_make_dimless(&time(), &ds, &bad),
            Err(Error::InvalidEvidence)
        ));
    }

    #[test]
    fn make_dimless_pendulum_value() {
        let reg = UnitRegistry::ltm_si_cgs();
        let tau = Quantity::new(2.0, "SI", time());
        let l = Quantity::new(1.0, "SI", length());
        let g = Quantity::new(4.0, "SI", acceleration());
        let e = DepEvidence { p: 2, ps: vec![1, -1] };
        let pi = make_dimless(&reg, &tau, &[l.clone(), g.clone()], &e).unwrap();
        // τ²·g/l = 2²·4/1
        assert_eq!(pi.value(), 16.0);
        assert!(pi.dim().is_dimless());
        for u in ["SI", "CGS"] {
            let m = pi.measure(&reg, u).unwrap();
            assert!((m - 16.0).abs() <= 1e-12 * 16.0);
        }

        let bad = DepEvidence { p: 1, ps: vec![1, -1] };
        assert!(matches!(
            make_dimless(&reg, &tau, &[l, g], &bad),
            Err(Error::InvalidEvidence)
        ));
    }
}
