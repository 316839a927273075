//! Exact minimum covers of finite sets by arithmetic or geometric progressions.

mod brute;
mod classes;
mod coverable;
mod lines;
mod solver;

use std::collections::HashSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::{FieldElement, RootDescriptor};
use crate::error::{domain, Error, Result};
use crate::progression::{ArithmeticProgression, GeometricProgression};

pub use brute::{brute_force_min_cover, BRUTE_FORCE_LIMIT};
pub use classes::{commensurability_classes, Classes};
pub use coverable::{ap_coverable, exponent_vectors, gp_coverable, ExponentVector};
pub use solver::{min_ap_cover, min_gp_cover};

/// Largest instance the exact solvers accept.
pub const MAX_ELEMENTS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Ap,
    Gp,
}

/// A finite set of distinct elements of one field.
#[derive(Debug, Clone)]
pub struct CoverInstance {
    descriptor: Arc<RootDescriptor>,
    elements: Vec<FieldElement>,
}

impl CoverInstance {
    /// Lifts every element into `descriptor` and rejects duplicates.
    pub fn new(descriptor: Arc<RootDescriptor>, elements: Vec<FieldElement>) -> Result<Self> {
        if elements.len() > MAX_ELEMENTS {
            return Err(Error::CostGuard(format!(
                "{} elements exceed the limit of {MAX_ELEMENTS}",
                elements.len()
            )));
        }
        let elements = elements
            .iter()
            .map(|e| e.lift(&descriptor))
            .collect::<Result<Vec<_>>>()?;
        let mut seen = HashSet::new();
        for e in &elements {
            if !seen.insert(e) {
                return domain(format!("duplicate element {e}"));
            }
        }
        Ok(Self {
            descriptor,
            elements,
        })
    }

    /// Instance over `Q` or over the field of the first element.
    pub fn from_elements(elements: Vec<FieldElement>) -> Result<Self> {
        let mut descriptor = Arc::new(RootDescriptor::rationals());
        for e in &elements {
            if !e.field().is_rational_field() {
                descriptor = e.field().clone();
                break;
            }
        }
        Self::new(descriptor, elements)
    }

    pub fn descriptor(&self) -> &Arc<RootDescriptor> {
        &self.descriptor
    }

    pub fn elements(&self) -> &[FieldElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub(crate) fn check_mode(&self, mode: Mode) -> Result<()> {
        match mode {
            Mode::Ap => {
                if let Some(e) = self.elements.iter().find(|e| e.signum() < 0) {
                    return domain(format!("AP covers need nonnegative elements, got {e}"));
                }
            }
            Mode::Gp => {
                coverable::gp_values(&self.elements)?;
            }
        }
        Ok(())
    }

    pub(crate) fn subset(&self, members: &[usize]) -> Vec<FieldElement> {
        members.iter().map(|&i| self.elements[i].clone()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Ap(ArithmeticProgression),
    Gp(GeometricProgression),
}

impl Witness {
    pub fn contains(&self, x: &FieldElement) -> Result<bool> {
        Ok(match self {
            Witness::Ap(a) => a.index_of(x)?.is_some(),
            Witness::Gp(g) => g.index_of(x)?.is_some(),
        })
    }
}

/// Elements covered by one progression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    /// Indices into the instance, ascending.
    pub members: Vec<usize>,
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverSolution {
    pub count: usize,
    pub blocks: Vec<Block>,
    /// Produced by an exact solver rather than a bound.
    pub exact: bool,
}

impl CoverSolution {
    /// Re-checks that the blocks cover everything and each witness contains its members.
    pub fn verify(&self, instance: &CoverInstance) -> Result<()> {
        let mut covered = vec![false; instance.len()];
        for b in &self.blocks {
            for &i in &b.members {
                if !b.witness.contains(&instance.elements[i])? {
                    return Err(Error::Invariant(format!(
                        "witness of block {:?} misses element {}",
                        b.members, instance.elements[i]
                    )));
                }
                covered[i] = true;
            }
        }
        if covered.iter().any(|c| !c) || self.count != self.blocks.len() {
            return Err(Error::Invariant("blocks do not form a cover".into()));
        }
        if instance.len() >= 2 && self.count > instance.len().div_ceil(2) {
            return Err(Error::Invariant(format!(
                "{} progressions for {} elements exceeds the pair bound",
                self.count,
                instance.len()
            )));
        }
        Ok(())
    }
}
