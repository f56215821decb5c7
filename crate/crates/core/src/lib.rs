//! Computable commutative Bezout rings, finite-quotient structure analysis,
//! element-level factorization classifiers and diagonal reduction of
//! matrices with certificates.

pub mod codec;
pub mod error;
pub mod factor;
pub mod finite;
pub mod instances;
pub mod limits;
pub mod matrix;
pub mod par;
#[cfg(test)]
mod proptests;
pub mod report;
pub mod ring;
pub mod structure;
pub mod sweep;

pub use error::{Result, RingError};
pub use finite::{FiniteRing, QuotientFlags, StructureReport, Verdict};
pub use instances::{make_quotient, Field, Integers, PolyRing, PrimeField, Quotient, Rationals};
pub use limits::{Caps, FactorBudget};
pub use ring::{EuclideanDomain, ExtendedGcd, Ring, RingElement};
