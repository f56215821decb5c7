//! Quotient rings `R/mR` of a Euclidean domain.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Result, RingError};
use crate::finite::FiniteRing;
use crate::limits::Caps;
use crate::ring::{EuclideanDomain, Ring};

/// `base / (modulus)`. Elements are canonical residues of the base ring:
/// least nonnegative integers, or polynomials of degree below the modulus.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quotient<R: EuclideanDomain> {
    base: R,
    modulus: R::Elem,
}

/// Builds `base / (modulus)`. The modulus is replaced by its canonical
/// associate, so `Z/-12` and `Z/12` are the same ring.
pub fn make_quotient<R: EuclideanDomain>(base: R, modulus: &R::Elem) -> Result<Quotient<R>> {
    if base.is_zero(modulus) {
        return Err(RingError::ZeroModulus);
    }
    if base.is_unit(modulus) {
        return Err(RingError::UnitModulus);
    }
    let modulus = base.associate(modulus);
    Ok(Quotient { base, modulus })
}

impl<R: EuclideanDomain> Quotient<R> {
    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn modulus(&self) -> &R::Elem {
        &self.modulus
    }

    /// Image of a base element.
    pub fn reduce(&self, x: &R::Elem) -> R::Elem {
        self.base.rem(x, &self.modulus)
    }

    pub fn cardinality(&self) -> Option<BigUint> {
        self.base.residue_count(&self.modulus)
    }

    /// Every residue once, in canonical order.
    pub fn elements(&self, cap: u64) -> Result<impl Iterator<Item = R::Elem> + '_> {
        let n = self.cardinality().ok_or(RingError::Infinite)?;
        let n = match n.to_u64() {
            Some(n) if n <= cap => n,
            _ => return Err(RingError::TooLarge { size: n.to_string(), cap }),
        };
        Ok((0..n).map(move |i| self.base.residue_at(&self.modulus, i)))
    }

    /// Generator `a0 = m / gcd(m, b)` of the annihilator of `b`.
    pub fn annihilator_generator(&self, b: &R::Elem) -> R::Elem {
        let (g, _, _) = self.base.bezout(&self.modulus, b);
        let a0 = self.base.divide_exact(&self.modulus, &g).expect("gcd divides the modulus");
        self.reduce(&a0)
    }

    pub fn principal_ideal(&self, generator: &R::Elem) -> PrincipalIdeal<Quotient<R>> {
        PrincipalIdeal::new(self.clone(), generator.clone())
    }

    /// Brute-force view for the structure predicates.
    pub fn finite_ring(&self, caps: &Caps) -> Result<FiniteRing> {
        self.base.finite_quotient(&self.modulus, caps)
    }

    pub fn index_of(&self, x: &R::Elem) -> Option<usize> {
        self.base.residue_index(&self.modulus, x)
    }
}

impl<R: EuclideanDomain> Ring for Quotient<R> {
    type Elem = R::Elem;

    fn describe(&self) -> String {
        format!("{}/{}", self.base.describe(), self.base.format(&self.modulus))
    }

    fn zero(&self) -> R::Elem {
        self.base.zero()
    }

    fn one(&self) -> R::Elem {
        self.base.one()
    }

    fn from_i64(&self, n: i64) -> R::Elem {
        self.reduce(&self.base.from_i64(n))
    }

    fn add(&self, a: &R::Elem, b: &R::Elem) -> R::Elem {
        self.reduce(&self.base.add(a, b))
    }

    fn neg(&self, a: &R::Elem) -> R::Elem {
        self.reduce(&self.base.neg(a))
    }

    fn sub(&self, a: &R::Elem, b: &R::Elem) -> R::Elem {
        self.reduce(&self.base.sub(a, b))
    }

    fn mul(&self, a: &R::Elem, b: &R::Elem) -> R::Elem {
        self.reduce(&self.base.mul(a, b))
    }

    fn is_unit(&self, a: &R::Elem) -> bool {
        self.base.coprime(a, &self.modulus)
    }

    /// In a quotient of a PID the non-zero-divisors are exactly the units.
    fn is_regular(&self, a: &R::Elem) -> bool {
        self.is_unit(a)
    }

    fn contains(&self, a: &R::Elem) -> bool {
        self.base.contains(a) && self.reduce(a) == *a
    }

    fn canonicalize(&self, a: &R::Elem) -> R::Elem {
        self.reduce(&self.base.canonicalize(a))
    }

    /// Solves `b*x = a`; the solutions form `x0 + (m/g)R`, and the residue of
    /// `x0` modulo `m/g` is the smallest one.
    fn divide_exact(&self, a: &R::Elem, b: &R::Elem) -> Result<R::Elem> {
        let (g, u, _) = self.base.bezout(b, &self.modulus);
        let q = self.base.divide_exact(a, &g).map_err(|_| RingError::NotDivisible { dividend: self.format(a), divisor: self.format(b) })?;
        let period = self.base.divide_exact(&self.modulus, &g).expect("gcd divides the modulus");
        Ok(self.base.rem(&self.base.mul(&q, &u), &period))
    }

    /// The generator is the image of `gcd(a, b, m)` taken in the base ring.
    fn bezout(&self, a: &R::Elem, b: &R::Elem) -> (R::Elem, R::Elem, R::Elem) {
        let (g1, u1, v1) = self.base.bezout(a, b);
        let (g, s, _) = self.base.bezout(&g1, &self.modulus);
        (self.reduce(&g), self.reduce(&self.base.mul(&u1, &s)), self.reduce(&self.base.mul(&v1, &s)))
    }

    fn element_at(&self, i: u64) -> Option<R::Elem> {
        if let Some(n) = self.cardinality() {
            if BigUint::from(i) >= n {
                return None;
            }
        }
        Some(self.base.residue_at(&self.modulus, i))
    }

    fn format(&self, a: &R::Elem) -> String {
        self.base.format(a)
    }
}

/// `generator * R`; membership is divisibility.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrincipalIdeal<R: Ring> {
    ring: R,
    generator: R::Elem,
}

impl<R: Ring> PrincipalIdeal<R> {
    pub fn new(ring: R, generator: R::Elem) -> Self {
        PrincipalIdeal { ring, generator }
    }

    pub fn generator(&self) -> &R::Elem {
        &self.generator
    }

    pub fn contains(&self, x: &R::Elem) -> bool {
        self.ring.divides(&self.generator, x)
    }
}
