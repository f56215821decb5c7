//! Coefficient fields for polynomial rings.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Result, RingError};

pub trait Field: Clone + PartialEq + Debug + Send + Sync {
    type Elem: Clone + Eq + Hash + Debug + Send + Sync;

    fn name(&self) -> String;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn contains(&self, a: &Self::Elem) -> bool;
    fn canonicalize(&self, a: &Self::Elem) -> Self::Elem;
    fn format(&self, a: &Self::Elem) -> String;

    /// Number of elements, `None` for infinite fields.
    fn size(&self) -> Option<u64>;
    fn characteristic(&self) -> u64;

    /// Search sequence; for finite fields the `i`-th element in index order.
    fn element_at(&self, i: u64) -> Option<Self::Elem>;

    /// Index of an element of a finite field.
    fn index_of(&self, _a: &Self::Elem) -> Option<u64> {
        None
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
}

/// The prime field of integers modulo `p`, elements `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// `p` must be a prime below 2^31.
    pub fn new(p: u64) -> Result<Self> {
        if !(2..1 << 31).contains(&p) {
            return Err(RingError::Parse(format!("field characteristic {p} out of range")));
        }
        let mut d = 2u64;
        while d * d <= p {
            if p.is_multiple_of(d) {
                return Err(RingError::Parse(format!("{p} is not prime")));
            }
            d += 1;
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * a % self.p;
            }
            a = a * a % self.p;
            e >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn name(&self) -> String {
        format!("F{}", self.p)
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }

    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| self.pow(*a, self.p - 2))
    }

    fn contains(&self, a: &u64) -> bool {
        *a < self.p
    }

    fn canonicalize(&self, a: &u64) -> u64 {
        a % self.p
    }

    fn format(&self, a: &u64) -> String {
        a.to_string()
    }

    fn size(&self) -> Option<u64> {
        Some(self.p)
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn element_at(&self, i: u64) -> Option<u64> {
        (i < self.p).then_some(i)
    }

    fn index_of(&self, a: &u64) -> Option<u64> {
        Some(*a)
    }
}

/// The rational numbers, exact.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn name(&self) -> String {
        "Q".to_string()
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }

    fn contains(&self, a: &BigRational) -> bool {
        // BigRational keeps itself reduced with a positive denominator
        *a == BigRational::new(a.numer().clone(), a.denom().clone())
    }

    fn canonicalize(&self, a: &BigRational) -> BigRational {
        BigRational::new(a.numer().clone(), a.denom().clone())
    }

    fn format(&self, a: &BigRational) -> String {
        a.to_string()
    }

    fn size(&self) -> Option<u64> {
        None
    }

    fn characteristic(&self) -> u64 {
        0
    }

    /// 0, 1, -1, 2, -2, ...
    fn element_at(&self, i: u64) -> Option<BigRational> {
        let k = i.div_ceil(2) as i64;
        Some(self.from_i64(if i.is_multiple_of(2) { -k } else { k }))
    }
}
