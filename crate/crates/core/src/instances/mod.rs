//! Concrete computable rings.

pub mod field;
pub mod integers;
pub mod poly;
pub mod quotient;

pub use field::{Field, PrimeField, Rationals};
pub use integers::Integers;
pub use poly::{Poly, PolyRing};
pub use quotient::{make_quotient, PrincipalIdeal, Quotient};

pub type IntegersMod = Quotient<Integers>;
pub type FpPolys = PolyRing<PrimeField>;
pub type QPolys = PolyRing<Rationals>;
