//! Exact algebra of dimensions.
//!
//! A dimension is an integer exponent vector over an ordered list of base
//! dimensions (a [`DimClass`]). Multiplying quantities adds exponent
//! vectors, dividing subtracts them, so dimensions form a free abelian
//! group generated by the bases. The dimension function [`Dim::df`] maps
//! per-base scale factors to the multiplicative change of a measure.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// An ordered set of base-dimension symbols, e.g. `LTM = [L, T, M]`.
///
/// The declaration order of the bases fixes the exponent-vector layout of
/// every [`Dim`] in the class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimClass {
    name: String,
    bases: Vec<String>,
}

impl DimClass {
    /// Builds a class from a name and its base symbols.
    ///
    /// Bases must be nonempty and pairwise distinct.
    pub fn new(name: impl Into<String>, bases: &[&str]) -> Result<Arc<Self>> {
        let name = name.into();
        let bases: Vec<String> = bases.iter().map(|b| b.to_string()).collect();
        if bases.is_empty() {
            return Err(Error::LengthMismatch { expected: 1, got: 0 });
        }
        for (i, b) in bases.iter().enumerate() {
            if b.is_empty() {
                return Err(Error::UnknownBase {
                    class: name,
                    symbol: String::new(),
                });
            }
            if bases[..i].contains(b) {
                return Err(Error::DuplicateSystem { name: b.clone() });
            }
        }
        Ok(Arc::new(DimClass { name, bases }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn bases(&self) -> &[String] {
        &self.bases
    }

    /// Number of base dimensions (the exponent-vector length).
    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    /// Index of a base symbol within the class.
    pub fn base_index(&self, symbol: &str) -> Result<usize> {
        self.bases
            .iter()
            .position(|b| b == symbol)
            .ok_or_else(|| Error::UnknownBase {
                class: self.name.clone(),
                symbol: symbol.to_string(),
            })
    }

    /// The unit exponent vector for one base symbol.
    pub fn base_dim(self: &Arc<Self>, symbol: &str) -> Result<Dim> {
        let idx = self.base_index(symbol)?;
        let mut exps = vec![0_i64; self.len()];
        exps[idx] = 1;
        Ok(Dim {
            class: Arc::clone(self),
            exps,
        })
    }

    /// The all-zero exponent vector.
    pub fn dimless(self: &Arc<Self>) -> Dim {
        Dim {
            class: Arc::clone(self),
            exps: vec![0; self.len()],
        }
    }

    /// A dimension from an explicit exponent vector.
    pub fn dim_from_exps(self: &Arc<Self>, exps: &[i64]) -> Result<Dim> {
        if exps.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: exps.len(),
            });
        }
        Ok(Dim {
            class: Arc::clone(self),
            exps: exps.to_vec(),
        })
    }
}

/// The built-in length-time-mass class, ordered `[L, T, M]`.
pub fn ltm() -> Arc<DimClass> {
    DimClass::new("LTM", &["L", "T", "M"]).expect("LTM class is well formed")
}

/// A dimension: an integer exponent vector over a [`DimClass`].
#[derive(Debug, Clone)]
pub struct Dim {
    class: Arc<DimClass>,
    exps: Vec<i64>,
}

impl PartialEq for Dim {
    fn eq(&self, other: &Self) -> bool {
        self.same_class(other) && self.exps == other.exps
    }
}

impl Eq for Dim {}

impl Dim {
    pub fn class(&self) -> &Arc<DimClass> {
        &self.class
    }

    pub fn exps(&self) -> &[i64] {
        &self.exps
    }

    fn same_class(&self, other: &Dim) -> bool {
        Arc::ptr_eq(&self.class, &other.class) || *self.class == *other.class
    }

    fn check_class(&self, other: &Dim) -> Result<()> {
        if self.same_class(other) {
            Ok(())
        } else {
            Err(Error::ClassMismatch {
                left: self.class.name.clone(),
                right: other.class.name.clone(),
            })
        }
    }

    /// Componentwise sum of exponents: the dimension of a product.
    pub fn times(&self, other: &Dim) -> Result<Dim> {
        self.check_class(other)?;
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Dim {
            class: Arc::clone(&self.class),
            exps,
        })
    }

    /// Componentwise difference of exponents: the dimension of a quotient.
    pub fn over(&self, other: &Dim) -> Result<Dim> {
        self.check_class(other)?;
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_sub(*b).ok_or(Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Dim {
            class: Arc::clone(&self.class),
            exps,
        })
    }

    /// Scales every exponent by an integer power.
    pub fn pow(&self, k: i64) -> Result<Dim> {
        let exps = self
            .exps
            .iter()
            .map(|a| a.checked_mul(k).ok_or(Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Dim {
            class: Arc::clone(&self.class),
            exps,
        })
    }

    /// Product of integer powers: `Σ ps[i] · ds[i]` componentwise.
    ///
    /// The empty product is dimensionless, which is only constructible when
    /// at least one input fixes the class; an empty `ds` therefore needs an
    /// explicit class via [`prod_pows_in`].
    pub fn prod_pows(ds: &[Dim], ps: &[i64]) -> Result<Dim> {
        match ds.first() {
            Some(first) => prod_pows_in(first.class(), ds, ps),
            None => {
                if ps.is_empty() {
                    Err(Error::LengthMismatch { expected: 1, got: 0 })
                } else {
                    Err(Error::LengthMismatch {
                        expected: 0,
                        got: ps.len(),
                    })
                }
            }
        }
    }

    /// True iff every exponent is zero.
    pub fn is_dimless(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// The dimension function: the factor by which a measure changes when
    /// each base unit is rescaled by `scales[i]`.
    ///
    /// Computes `Π scales[i]^exps[i]`; all scales must be positive and
    /// finite.
    pub fn df(&self, scales: &[f64]) -> Result<f64> {
        if scales.len() != self.exps.len() {
            return Err(Error::LengthMismatch {
                expected: self.exps.len(),
                got: scales.len(),
            });
        }
        for &s in scales {
            if !(s.is_finite() && s > 0.0) {
                return Err(Error::NonPositiveScale { value: s });
            }
        }
        let mut acc = 1.0;
        for (&s, &e) in scales.iter().zip(&self.exps) {
            let e32 = i32::try_from(e).map_err(|_| Error::ExponentOverflow)?;
            acc *= s.powi(e32);
        }
        Ok(acc)
    }

    /// Renders the exponent vector over the base symbols, e.g. `L^1·T^-2`;
    /// the dimensionless vector renders as `1`.
    pub fn base_product(&self) -> String {
        if self.is_dimless() {
            return "1".to_string();
        }
        let parts: Vec<String> = self
            .class
            .bases
            .iter()
            .zip(&self.exps)
            .filter(|(_, &e)| e != 0)
            .map(|(b, e)| format!("{b}^{e}"))
            .collect();
        parts.join("·")
    }
}

/// [`Dim::prod_pows`] with an explicit class, allowing the empty product.
pub fn prod_pows_in(class: &Arc<DimClass>, ds: &[Dim], ps: &[i64]) -> Result<Dim> {
    if ds.len() != ps.len() {
        return Err(Error::LengthMismatch {
            expected: ds.len(),
            got: ps.len(),
        });
    }
    let mut acc = class.dimless();
    for (d, &p) in ds.iter().zip(ps) {
        acc = acc.times(&d.pow(p)?)?;
    }
    Ok(acc)
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base_product())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

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
    fn base_dims_are_unit_vectors() {
        assert_eq!(length().exps(), &[1, 0, 0]);
        assert_eq!(mass().exps(), &[0, 0, 1]);
        assert!(matches!(
            ltm().base_dim("X"),
            Err(Error::UnknownBase { .. })
        ));
    }

    #[test]
    fn dimless_is_all_zero() {
        assert_eq!(ltm().dimless().exps(), &[0, 0, 0]);
        let one = DimClass::new("G", &["L"]).unwrap();
        assert_eq!(one.dimless().exps(), &[0]);
        let four = DimClass::new("LTMH", &["L", "T", "M", "H"]).unwrap();
        assert_eq!(four.dimless().exps(), &[0, 0, 0, 0]);
    }

    #[test]
    fn force_is_mass_times_acceleration() {
        let force = mass().times(&acceleration()).unwrap();
        assert_eq!(force.exps(), &[1, -2, 1]);
        let d = acceleration();
        assert_eq!(ltm().dimless().times(&d).unwrap(), d);
        assert_eq!(length().times(&length()).unwrap().exps(), &[2, 0, 0]);
    }

    #[test]
    fn over_subtracts_exponents() {
        let velocity = length().over(&time()).unwrap();
        assert_eq!(velocity.exps(), &[1, -1, 0]);
        let d = mass().times(&acceleration()).unwrap();
        assert!(d.over(&d).unwrap().is_dimless());
        assert_eq!(
            ltm().dimless().over(&time()).unwrap().exps(),
            &[0, -1, 0]
        );
    }

    #[test]
    fn pow_scales_exponents() {
        assert_eq!(time().pow(2).unwrap().exps(), &[0, 2, 0]);
        assert!(acceleration().pow(0).unwrap().is_dimless());
        assert_eq!(length().pow(-1).unwrap().exps(), &[-1, 0, 0]);
    }

    #[test]
    fn prod_pows_sums_scaled_rows() {
        let d = Dim::prod_pows(&[length(), acceleration()], &[1, -1]).unwrap();
        assert_eq!(d.exps(), &[0, 2, 0]);
        let empty = prod_pows_in(&ltm(), &[], &[]).unwrap();
        assert!(empty.is_dimless());
        let single = Dim::prod_pows(&[acceleration()], &[1]).unwrap();
        assert_eq!(single, acceleration());
    }

    #[test]
    fn dim_equality_is_componentwise() {
        let velocity = length().over(&time()).unwrap();
        let energy = mass()
            .times(&velocity.times(&velocity).unwrap())
            .unwrap();
        let force = mass().times(&acceleration()).unwrap();
        let work = force.times(&length()).unwrap();
        assert_eq!(energy, work);
        assert_ne!(force, energy);
        assert_eq!(force, force);
    }

    #[test]
    fn df_examples() {
        let force = mass().times(&acceleration()).unwrap();
        assert_eq!(force.df(&[1.0, 1.0, 1.0]).unwrap(), 1.0);
        let velocity = length().over(&time()).unwrap();
        assert_eq!(velocity.df(&[2.0, 2.0, 2.0]).unwrap(), 1.0);
        // direct evaluation: 2^1 · 3^-2 · 5^1 = 10/9
        let got = force.df(&[2.0, 3.0, 5.0]).unwrap();
        assert!((got - 10.0 / 9.0).abs() <= 1e-15 * (10.0 / 9.0));
        assert!(matches!(
            force.df(&[1.0, 0.0, 1.0]),
            Err(Error::NonPositiveScale { .. })
        ));
    }

    #[test]
    fn class_mismatch_is_rejected() {
        let other = DimClass::new("TTh", &["T", "Th"]).unwrap();
        let d = other.base_dim("T").unwrap();
        assert!(matches!(
            length().times(&d),
            Err(Error::ClassMismatch { .. })
        ));
    }

    #[test]
    fn base_product_rendering() {
        assert_eq!(acceleration().base_product(), "L^1·T^-2");
        assert_eq!(ltm().dimless().base_product(), "1");
    }

    #[test]
    fn values_are_send_and_sync() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<DimClass>();
        assert_send_sync::<Dim>();
    }

    fn arb_dim() -> impl Strategy<Value = Dim> {
        proptest::collection::vec(-10_i64..=10, 3)
            .prop_map(|exps| ltm().dim_from_exps(&exps).unwrap())
    }

    proptest! {
        #[test]
        fn times_is_commutative(d1 in arb_dim(), d2 in arb_dim()) {
            prop_assert_eq!(d1.times(&d2).unwrap(), d2.times(&d1).unwrap());
        }

        #[test]
        fn times_is_associative(d1 in arb_dim(), d2 in arb_dim(), d3 in arb_dim()) {
            prop_assert_eq!(
                d1.times(&d2).unwrap().times(&d3).unwrap(),
                d1.times(&d2.times(&d3).unwrap()).unwrap()
            );
        }

        #[test]
        fn dimless_is_identity(d in arb_dim()) {
            let one = ltm().dimless();
            prop_assert_eq!(one.times(&d).unwrap(), d.clone());
            prop_assert_eq!(d.times(&one).unwrap(), d);
        }

        #[test]
        fn over_gives_inverses(d in arb_dim()) {
            let one = ltm().dimless();
            let inv = one.over(&d).unwrap();
            prop_assert!(inv.times(&d).unwrap().is_dimless());
            prop_assert!(d.times(&inv).unwrap().is_dimless());
        }

        #[test]
        fn no_prec(d1 in arb_dim(), d2 in arb_dim(), d3 in arb_dim()) {
            prop_assert_eq!(
                d1.times(&d2).unwrap().over(&d3).unwrap(),
                d1.times(&d2.over(&d3).unwrap()).unwrap()
            );
        }

        #[test]
        fn pow_agrees_with_prod_pows(d in arb_dim(), k in -6_i64..=6) {
            prop_assert_eq!(d.pow(k).unwrap(), Dim::prod_pows(&[d], &[k]).unwrap());
        }
    }
}
