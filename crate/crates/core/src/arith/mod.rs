//! Exact arithmetic substrate.

pub mod factor;
pub mod field;
pub mod rational;

pub use factor::{factorize, is_squarefree_integer, valuation, FactorMap};
pub use field::{normalize_root, FieldElement, RootDescriptor};
pub use rational::{parse_rational, Rational};
