//! Unit systems and the scaling-factor table between them.
//!
//! Every registry designates one reference system; any other system is
//! anchored by the sizes of its base units expressed in the reference
//! system's base units. Scaling factors between two systems are then the
//! componentwise ratio of their size vectors, which makes conversion
//! automatically path-independent.

use std::sync::Arc;

use crate::dimension::DimClass;
use crate::error::{Error, Result};

/// A concrete choice of base units within a class.
///
/// `sizes[i]` is the size of base unit `i` in the reference system's base
/// units; e.g. with SI as reference, CGS has sizes `[0.01, 1, 0.001]`
/// because 1 cm = 0.01 m and 1 g = 0.001 kg.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitSystem {
    name: String,
    sizes: Vec<f64>,
}

impl UnitSystem {
    pub fn new(name: impl Into<String>, sizes: Vec<f64>) -> Result<Self> {
        for &s in &sizes {
            if !(s.is_finite() && s > 0.0) {
                return Err(Error::NonPositiveScale { value: s });
            }
        }
        Ok(UnitSystem {
            name: name.into(),
            sizes,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn sizes(&self) -> &[f64] {
        &self.sizes
    }
}

/// An immutable registry of unit systems sharing one class.
///
/// The first system is the reference (all sizes 1).
#[derive(Debug, Clone, PartialEq)]
pub struct UnitRegistry {
    class: Arc<DimClass>,
    systems: Vec<UnitSystem>,
}

impl UnitRegistry {
    /// Creates a registry containing only the reference system.
    pub fn new(class: Arc<DimClass>, reference_name: impl Into<String>) -> Self {
        let sizes = vec![1.0; class.len()];
        UnitRegistry {
            systems: vec![UnitSystem {
                name: reference_name.into(),
                sizes,
            }],
            class,
        }
    }

    /// The built-in mechanics registry: LTM class with SI as reference and
    /// CGS anchored at `[0.01, 1, 0.001]`.
    pub fn ltm_si_cgs() -> Self {
        let class = crate::dimension::ltm();
        let reg = UnitRegistry::new(Arc::clone(&class), "SI");
        reg.register(UnitSystem::new("CGS", vec![0.01, 1.0, 0.001]).unwrap())
            .expect("built-in CGS registers cleanly")
    }

    pub fn class(&self) -> &Arc<DimClass> {
        &self.class
    }

    pub fn reference(&self) -> &UnitSystem {
        &self.systems[0]
    }

    pub fn systems(&self) -> &[UnitSystem] {
        &self.systems
    }

    /// Returns a new registry with `sys` added.
    pub fn register(&self, sys: UnitSystem) -> Result<UnitRegistry> {
        if sys.sizes.len() != self.class.len() {
            return Err(Error::ClassMismatch {
                left: self.class.name().to_string(),
                right: format!("{}-base system '{}'", sys.sizes.len(), sys.name),
            });
        }
        if self.systems.iter().any(|s| s.name == sys.name) {
            return Err(Error::DuplicateSystem { name: sys.name });
        }
        let mut systems = self.systems.clone();
        systems.push(sys);
        Ok(UnitRegistry {
            class: Arc::clone(&self.class),
            systems,
        })
    }

    pub fn system(&self, name: &str) -> Result<&UnitSystem> {
        self.systems
            .iter()
            .find(|s| s.name == name)
            .ok_or_else(|| Error::UnknownSystem {
                name: name.to_string(),
            })
    }

    /// Per-base scaling factors from system `u` to system `u2`: the factor
    /// by which a measure in `u` multiplies to become a measure in `u2`.
    pub fn scale_factors(&self, u: &str, u2: &str) -> Result<Vec<f64>> {
        let from = self.system(u)?;
        let to = self.system(u2)?;
        Ok(from
            .sizes
            .iter()
            .zip(&to.sizes)
            .map(|(a, b)| a / b)
            .collect())
    }

    /// Scaling factors from a registered system to an anonymous system
    /// given by its size vector (relative to the reference).
    pub fn scale_factors_to_sizes(&self, u: &str, to_sizes: &[f64]) -> Result<Vec<f64>> {
        let from = self.system(u)?;
        if to_sizes.len() != from.sizes.len() {
            return Err(Error::LengthMismatch {
                expected: from.sizes.len(),
                got: to_sizes.len(),
            });
        }
        Ok(from
            .sizes
            .iter()
            .zip(to_sizes)
            .map(|(a, b)| a / b)
            .collect())
    }
}
