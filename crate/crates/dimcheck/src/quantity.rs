//! Physical quantities: a value tagged with a unit system and a dimension.
//!
//! Arithmetic converts both operands into the left operand's system before
//! combining values, so the observable behaviour through [`Quantity::measure`]
//! does not depend on which system each operand was entered in.

use crate::dimension::Dim;
use crate::error::{Error, Result};
use crate::units::UnitRegistry;

/// A real value measured in a named unit system, carrying its dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct Quantity {
    value: f64,
    system: String,
    dim: Dim,
}

impl Quantity {
    pub fn new(value: f64, system: impl Into<String>, dim: Dim) -> Self {
        Quantity {
            value,
            system: system.into(),
            dim,
        }
    }

    /// A dimensionless quantity in the registry's reference system.
    pub fn dimensionless(reg: &UnitRegistry, value: f64) -> Self {
        Quantity {
            value,
            system: reg.reference().name().to_string(),
            dim: reg.class().dimless(),
        }
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn system(&self) -> &str {
        &self.system
    }

    pub fn dim(&self) -> &Dim {
        &self.dim
    }

    /// The measure of the quantity in system `u2`: the stored value times
    /// the dimension function applied to the scale factors.
    pub fn measure(&self, reg: &UnitRegistry, u2: &str) -> Result<f64> {
        let factors = reg.scale_factors(&self.system, u2)?;
        Ok(self.value * self.dim.df(&factors)?)
    }

    pub fn add(&self, reg: &UnitRegistry, other: &Quantity) -> Result<Quantity> {
        if self.dim != *other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim.base_product(),
                right: other.dim.base_product(),
            });
        }
        let value = self.measure(reg, &self.system)? + other.measure(reg, &self.system)?;
        Ok(Quantity {
            value,
            system: self.system.clone(),
            dim: self.dim.clone(),
        })
    }

    pub fn sub(&self, reg: &UnitRegistry, other: &Quantity) -> Result<Quantity> {
        if self.dim != *other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim.base_product(),
                right: other.dim.base_product(),
            });
        }
        let value = self.measure(reg, &self.system)? - other.measure(reg, &self.system)?;
        Ok(Quantity {
            value,
            system: self.system.clone(),
            dim: self.dim.clone(),
        })
    }

    pub fn mul(&self, reg: &UnitRegistry, other: &Quantity) -> Result<Quantity> {
        let dim = self.dim.times(&other.dim)?;
        let value = self.measure(reg, &self.system)? * other.measure(reg, &self.system)?;
        Ok(Quantity {
            value,
            system: self.system.clone(),
            dim,
        })
    }

    pub fn div(&self, reg: &UnitRegistry, other: &Quantity) -> Result<Quantity> {
        let dim = self.dim.over(&other.dim)?;
        let denom = other.measure(reg, &self.system)?;
        if denom == 0.0 {
            return Err(Error::DivisionByZero);
        }
        let value = self.measure(reg, &self.system)? / denom;
        Ok(Quantity {
            value,
            system: self.system.clone(),
            dim,
        })
    }

    /// Integer power; negative exponents require a nonzero value.
    pub fn powi(&self, k: i64) -> Result<Quantity> {
        if k < 0 && self.value == 0.0 {
            return Err(Error::DivisionByZero);
        }
        let dim = self.dim.pow(k)?;
        let k32 = i32::try_from(k).map_err(|_| Error::ExponentOverflow)?;
        Ok(Quantity {
            value: self.value.powi(k32),
            system: self.system.clone(),
            dim,
        })
    }

    /// Multiplication by a bare real, equivalent to `mul` with a
    /// dimensionless quantity.
    pub fn scalar_mul(&self, r: f64) -> Quantity {
        Quantity {
            value: r * self.value,
            system: self.system.clone(),
            dim: self.dim.clone(),
        }
    }

    /// The k-th root. Every dimension exponent must be divisible by `k`;
    /// even `k` requires a nonnegative value.
    pub fn root(&self, k: u32) -> Result<Quantity> {
        let k = i64::from(k.max(1));
        let mut exps = Vec::with_capacity(self.dim.exps().len());
        for &e in self.dim.exps() {
            if e % k != 0 {
                return Err(Error::NonIntegralRoot {
                    exponent: e,
                    degree: k,
                });
            }
            exps.push(e / k);
        }
        let dim = self.dim.class().dim_from_exps(&exps)?;
        let value = if self.value < 0.0 {
            if k % 2 == 0 {
                return Err(Error::NegativeRadicand { value: self.value });
            }
            -(-self.value).powf(1.0 / k as f64)
        } else {
            self.value.powf(1.0 / k as f64)
        };
        Ok(Quantity {
            value,
            system: self.system.clone(),
            dim,
        })
    }

    /// True iff the quantity has exactly the given dimension.
    pub fn is(&self, d: &Dim) -> bool {
        self.dim == *d
    }
}

/// Dimension of the derivative of a function mapping quantities of
/// `domain` to quantities of `codomain`.
pub fn deriv_dim(domain: &Dim, codomain: &Dim) -> Result<Dim> {
    codomain.over(domain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimension::ltm;
    use crate::units::UnitRegistry;

    fn reg() -> UnitRegistry {
        UnitRegistry::ltm_si_cgs()
    }

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
    fn measure_transcript() {
        let reg = reg();
        let x = Quantity::new(3.0, "SI", length());
        // (x + x) / x is dimensionless, hence the same in every system
        let expr = x.add(&reg, &x).unwrap().div(&reg, &x).unwrap();
        assert_eq!(expr.measure(&reg, "SI").unwrap(), 2.0);
        assert_eq!(expr.measure(&reg, "CGS").unwrap(), 2.0);
        // 3 m = 300 cm
        let cm = x.measure(&reg, "CGS").unwrap();
        assert!((cm - 300.0).abs() <= 1e-12 * 300.0);
        // the second is shared by SI and CGS
        let t = Quantity::new(1.0, "CGS", time());
        assert_eq!(t.measure(&reg, "SI").unwrap(), 1.0);
    }

    #[test]
    fn dim_judgments() {
        let reg = reg();
        let x = Quantity::new(3.0, "SI", length());
        let t = Quantity::new(2.0, "SI", time());
        let m = Quantity::new(5.0, "SI", mass());
        let tt = t.mul(&reg, &t).unwrap();
        assert_eq!(*x.div(&reg, &tt).unwrap().dim(), acceleration());
        let f = m.mul(&reg, &x.div(&reg, &tt).unwrap()).unwrap();
        assert!(f.is(&mass().times(&acceleration()).unwrap()));
        let r = x.add(&reg, &x).unwrap().div(&reg, &x).unwrap();
        assert!(r.dim().is_dimless());
        assert!(!x.is(&time()));
    }

    #[test]
    fn add_converts_into_left_system() {
        let reg = reg();
        let a = Quantity::new(3.0, "SI", length());
        let b = Quantity::new(4.0, "SI", length());
        let sum = a.add(&reg, &b).unwrap();
        assert_eq!(sum.value(), 7.0);
        assert_eq!(sum.system(), "SI");
        // 1 m + 50 cm = 1.5 m
        let c = Quantity::new(1.0, "SI", length());
        let d = Quantity::new(50.0, "CGS", length());
        let mixed = c.add(&reg, &d).unwrap();
        assert!((mixed.value() - 1.5).abs() <= 1e-12);
        let t = Quantity::new(1.0, "SI", time());
        assert!(matches!(
            c.add(&reg, &t),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn sub_and_div_edges() {
        let reg = reg();
        let a = Quantity::new(3.0, "SI", length());
        let b = Quantity::new(1.0, "SI", length());
        assert_eq!(a.sub(&reg, &b).unwrap().value(), 2.0);
        assert_eq!(a.sub(&reg, &a).unwrap().value(), 0.0);
        let q = a.div(&reg, &a).unwrap();
        assert!(q.dim().is_dimless());
        assert_eq!(q.value(), 1.0);
        let zero = Quantity::new(0.0, "SI", length());
        assert!(matches!(a.div(&reg, &zero), Err(Error::DivisionByZero)));
    }

    #[test]
    fn mul_and_powers() {
        let reg = reg();
        let m = Quantity::new(2.0, "SI", mass());
        let a = Quantity::new(3.0, "SI", acceleration());
        let f = m.mul(&reg, &a).unwrap();
        assert_eq!(f.value(), 6.0);
        assert_eq!(*f.dim(), mass().times(&acceleration()).unwrap());

        let t = Quantity::new(2.0, "SI", time());
        let t2 = t.powi(2).unwrap();
        assert_eq!(t2.value(), 4.0);
        assert_eq!(t2.dim().exps(), &[0, 2, 0]);
        assert!(t.powi(0).unwrap().dim().is_dimless());
        let inv = Quantity::new(2.0, "SI", length()).powi(-1).unwrap();
        assert_eq!(inv.value(), 0.5);
        assert_eq!(inv.dim().exps(), &[-1, 0, 0]);

        let one = Quantity::dimensionless(&reg, 1.0);
        let same = f.mul(&reg, &one).unwrap();
        assert_eq!(same.value(), f.value());
        assert_eq!(same.dim(), f.dim());
    }

    #[test]
    fn scalar_mul_examples() {
        let reg = reg();
        let pi = Quantity::dimensionless(&reg, 3.14);
        assert_eq!(pi.scalar_mul(2.0).value(), 6.28);
        let q = Quantity::new(5.0, "SI", mass());
        assert_eq!(q.scalar_mul(1.0), q);
        assert_eq!(q.scalar_mul(0.0).value(), 0.0);
        assert_eq!(*q.scalar_mul(0.0).dim(), mass());
    }

    #[test]
    fn root_of_pendulum_ratio() {
        let reg = reg();
        let l = Quantity::new(0.5, "SI", length());
        let g = Quantity::new(9.81, "SI", acceleration());
        let ratio = l.div(&reg, &g).unwrap();
        let period_like = ratio.root(2).unwrap();
        // direct evaluation: sqrt(0.5 / 9.81)
        let expected = (0.5_f64 / 9.81).sqrt();
        assert!((period_like.value() - expected).abs() <= 1e-15);
        assert_eq!(*period_like.dim(), time());

        let back = period_like.powi(2).unwrap();
        assert_eq!(back.dim(), ratio.dim());
        assert!((back.value() - ratio.value()).abs() <= 1e-10 * ratio.value().abs());

        assert!(matches!(
            Quantity::new(4.0, "SI", length()).root(2),
            Err(Error::NonIntegralRoot { .. })
        ));
        assert!(matches!(
            Quantity::new(-1.0, "SI", length().pow(2).unwrap()).root(2),
            Err(Error::NegativeRadicand { .. })
        ));
    }

    #[test]
    fn derivative_dimension() {
        let velocity = length().over(&time()).unwrap();
        assert_eq!(deriv_dim(&time(), &length()).unwrap(), velocity);
        assert_eq!(deriv_dim(&time(), &velocity).unwrap(), acceleration());
        assert!(deriv_dim(&time(), &time()).unwrap().is_dimless());
    }

    #[test]
    fn measurement_covariance_of_arithmetic() {
        let reg = reg();
        let a = Quantity::new(1.25, "SI", length());
        let b = Quantity::new(42.0, "CGS", length());
        let m = Quantity::new(0.3, "CGS", mass());
        for u in ["SI", "CGS"] {
            let prod = a.mul(&reg, &m).unwrap().measure(&reg, u).unwrap();
            let direct = a.measure(&reg, u).unwrap() * m.measure(&reg, u).unwrap();
            assert!((prod - direct).abs() <= 1e-12 * direct.abs());
            let sum = a.add(&reg, &b).unwrap().measure(&reg, u).unwrap();
            let parts = a.measure(&reg, u).unwrap() + b.measure(&reg, u).unwrap();
            assert!((sum - parts).abs() <= 1e-12 * parts.abs());
        }
    }

    #[test]
    fn unit_change_law() {
        let reg = reg();
        let q = Quantity::new(7.5, "CGS", acceleration());
        let fs = reg.scale_factors("SI", "CGS").unwrap();
        let via_df = q.measure(&reg, "SI").unwrap() * q.dim().df(&fs).unwrap();
        let direct = q.measure(&reg, "CGS").unwrap();
        assert!((via_df - direct).abs() <= 1e-12 * direct.abs());
    }
}
