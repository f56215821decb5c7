//! The commutative-ring contract every algorithm in this crate is written
//! against, and the extended-gcd witness with coprime cofactors.

use std::cmp::Ordering;
use std::fmt::{self, Debug, Display};
use std::hash::Hash;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Result, RingError};
use crate::finite::FiniteRing;
use crate::limits::Caps;

/// A computable commutative ring with identity in which every two-generated
/// ideal is principal.
///
/// Elements are plain values; the ring object supplies all arithmetic. Every
/// element returned by a ring method is in canonical form, so equality of
/// elements is equality of values.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    type Elem: Clone + Eq + Hash + Debug + Send + Sync;

    /// Ring description in the CLI grammar, e.g. `Z/12` or `F2[x]`.
    fn describe(&self) -> String;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn is_unit(&self, a: &Self::Elem) -> bool;

    /// True iff `a` is not a zero divisor (and nonzero).
    fn is_regular(&self, a: &Self::Elem) -> bool;

    /// True iff `a` is a canonical element of this ring.
    fn contains(&self, a: &Self::Elem) -> bool;

    /// Maps an arbitrary payload to its canonical representative.
    fn canonicalize(&self, a: &Self::Elem) -> Self::Elem;

    /// Some `q` with `b * q = a`. In rings with zero divisors the smallest
    /// solution in canonical order is returned.
    fn divide_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;

    /// A generator `g` of `aR + bR` together with `u, v` such that
    /// `a*u + b*v = g`. The generator is canonically normalized; `u, v`
    /// carry no coprimality guarantee.
    fn bezout(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem, Self::Elem);

    /// Deterministic search sequence over ring elements. For finite rings it
    /// lists every element exactly once and then returns `None`.
    fn element_at(&self, i: u64) -> Option<Self::Elem>;

    fn format(&self, a: &Self::Elem) -> String;

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// `aR + bR = R`.
    fn coprime(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.is_unit(&self.bezout(a, b).0)
    }

    fn unit_inverse(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if self.is_unit(a) {
            self.divide_exact(&self.one(), a).ok()
        } else {
            None
        }
    }

    fn divides(&self, d: &Self::Elem, a: &Self::Elem) -> bool {
        self.divide_exact(a, d).is_ok()
    }

    fn check(&self, a: &Self::Elem) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(RingError::Mismatch(format!("{a:?} is not a canonical element of {}", self.describe())))
        }
    }

    /// Extended gcd with coprime cofactors: `d` generates `aR + bR`,
    /// `a = a0*d`, `b = b0*d`, `a*u + b*v = d` and `a0*u + b0*v = 1`.
    fn gcdex(&self, a: &Self::Elem, b: &Self::Elem) -> Result<ExtendedGcd<Self::Elem>> {
        self.gcdex_capped(a, b, Caps::default().cofactor_search)
    }

    fn gcdex_capped(&self, a: &Self::Elem, b: &Self::Elem, search_cap: u64) -> Result<ExtendedGcd<Self::Elem>> {
        let (d, u, v) = self.bezout(a, b);
        if self.is_zero(&d) {
            // only a = b = 0 lands here; u = 1, v = 0, a0 = 1, b0 = 0 satisfies every identity
            return Ok(ExtendedGcd { d, u: self.one(), v: self.zero(), a0: self.one(), b0: self.zero(), degenerate: true });
        }
        let a1 = self.divide_exact(a, &d)?;
        let b1 = self.divide_exact(b, &d)?;
        let s = self.add(&self.mul(&a1, &u), &self.mul(&b1, &v));
        if self.is_one(&s) {
            return Ok(ExtendedGcd { d, u, v, a0: a1, b0: b1, degenerate: false });
        }
        let cf = self.normalize_cofactors_capped(a, b, &d, &a1, &b1, search_cap)?;
        Ok(ExtendedGcd { d, u: cf.u, v: cf.v, a0: cf.a0, b0: cf.b0, degenerate: false })
    }

    fn normalize_cofactors(
        &self,
        a: &Self::Elem,
        b: &Self::Elem,
        d: &Self::Elem,
        a1: &Self::Elem,
        b1: &Self::Elem,
    ) -> Result<Cofactors<Self::Elem>> {
        self.normalize_cofactors_capped(a, b, d, a1, b1, Caps::default().cofactor_search)
    }

    /// Turns arbitrary cofactors `a = a1*d`, `b = b1*d` into coprime ones by
    /// the stable-range-2 lift `a0 = a1 + c*x`, `b0 = b1 + c*y` where
    /// `c = 1 - a1*u - b1*v` annihilates `d`.
    fn normalize_cofactors_capped(
        &self,
        a: &Self::Elem,
        b: &Self::Elem,
        d: &Self::Elem,
        a1: &Self::Elem,
        b1: &Self::Elem,
        search_cap: u64,
    ) -> Result<Cofactors<Self::Elem>> {
        if self.mul(a1, d) != *a || self.mul(b1, d) != *b {
            return Err(RingError::PreconditionFailed(format!(
                "cofactors do not reproduce the inputs: a = {}, b = {}, d = {}",
                self.format(a),
                self.format(b),
                self.format(d)
            )));
        }
        if let Some(cf) = coprime_pair(self, a1, b1) {
            return Ok(cf);
        }
        let (g, u0, v0) = self.bezout(a, b);
        let w = self
            .divide_exact(d, &g)
            .map_err(|_| RingError::PreconditionFailed(format!("{} is not in the ideal generated by the inputs", self.format(d))))?;
        let u = self.mul(&u0, &w);
        let v = self.mul(&v0, &w);
        let c = self.sub(&self.one(), &self.add(&self.mul(a1, &u), &self.mul(b1, &v)));

        let mut attempts = 0u64;
        // x = 0 first: over quotients of a PID a suitable y always exists there
        let mut j = 0u64;
        while attempts < search_cap {
            let Some(y) = self.element_at(j) else { break };
            attempts += 1;
            let b0 = self.add(b1, &self.mul(&c, &y));
            if let Some(cf) = coprime_pair(self, a1, &b0) {
                return Ok(cf);
            }
            j += 1;
        }
        let mut i = 1u64;
        while attempts < search_cap {
            let Some(x) = self.element_at(i) else { break };
            let a0 = self.add(a1, &self.mul(&c, &x));
            let mut j = 0u64;
            while attempts < search_cap {
                let Some(y) = self.element_at(j) else { break };
                attempts += 1;
                let b0 = self.add(b1, &self.mul(&c, &y));
                if let Some(cf) = coprime_pair(self, &a0, &b0) {
                    return Ok(cf);
                }
                j += 1;
            }
            i += 1;
        }
        Err(RingError::SearchExhausted(attempts))
    }
}

fn coprime_pair<R: Ring>(ring: &R, a0: &R::Elem, b0: &R::Elem) -> Option<Cofactors<R::Elem>> {
    let (g, x, y) = ring.bezout(a0, b0);
    let ginv = ring.unit_inverse(&g)?;
    Some(Cofactors { a0: a0.clone(), b0: b0.clone(), u: ring.mul(&x, &ginv), v: ring.mul(&y, &ginv) })
}

/// Coprime cofactors `a0, b0` with the witnesses `a0*u + b0*v = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cofactors<E> {
    pub a0: E,
    pub b0: E,
    pub u: E,
    pub v: E,
}

/// The Bezout witness bundle `(d, u, v, a0, b0)`.
///
/// `degenerate` marks the all-zero input, where `d = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtendedGcd<E> {
    pub d: E,
    pub u: E,
    pub v: E,
    pub a0: E,
    pub b0: E,
    pub degenerate: bool,
}

impl<E: Clone + Eq> ExtendedGcd<E> {
    /// Returns every identity that fails for inputs `a, b`.
    pub fn violations<R: Ring<Elem = E>>(&self, ring: &R, a: &E, b: &E) -> Vec<String> {
        let mut out = Vec::new();
        if ring.add(&ring.mul(a, &self.u), &ring.mul(b, &self.v)) != self.d {
            out.push("a*u + b*v != d".to_string());
        }
        if ring.mul(&self.a0, &self.d) != *a {
            out.push("a != a0*d".to_string());
        }
        if ring.mul(&self.b0, &self.d) != *b {
            out.push("b != b0*d".to_string());
        }
        if !ring.is_one(&ring.add(&ring.mul(&self.a0, &self.u), &ring.mul(&self.b0, &self.v))) {
            out.push("a0*u + b0*v != 1".to_string());
        }
        out
    }
}

/// A ring with division with remainder and canonical associates.
pub trait EuclideanDomain: Ring {
    /// `(q, r)` with `a = b*q + r`; `b` must be nonzero. When `b` is a
    /// canonical associate, `r` is the canonical residue of `a` modulo `b`.
    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem);

    /// `(unit, assoc)` with `a = unit * assoc` and `assoc` canonical
    /// (nonnegative integer, monic polynomial). Zero maps to `(1, 0)`.
    fn normal_form(&self, a: &Self::Elem) -> (Self::Elem, Self::Elem);

    /// Euclidean size comparison (absolute value, degree).
    fn cmp_size(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering;

    /// Number of residues modulo `m`, or `None` when infinite.
    fn residue_count(&self, m: &Self::Elem) -> Option<BigUint>;

    /// `i`-th canonical residue modulo `m` (canonical order). For infinite
    /// quotients this is a search sequence, not an enumeration.
    fn residue_at(&self, m: &Self::Elem, i: u64) -> Self::Elem;

    /// Index-arithmetic view of `R/mR` for brute-force analysis.
    fn finite_quotient(&self, _m: &Self::Elem, _caps: &Caps) -> Result<FiniteRing> {
        Err(RingError::Infinite)
    }

    /// Position of a canonical residue in the finite view.
    fn residue_index(&self, _m: &Self::Elem, _x: &Self::Elem) -> Option<usize> {
        None
    }

    fn associate(&self, a: &Self::Elem) -> Self::Elem {
        self.normal_form(a).1
    }

    fn rem(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.div_rem(a, b).1
    }
}

/// Extended Euclid with the result normalized to the canonical associate.
pub fn euclid_bezout<R: EuclideanDomain>(ring: &R, a: &R::Elem, b: &R::Elem) -> (R::Elem, R::Elem, R::Elem) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (ring.one(), ring.zero());
    let (mut t0, mut t1) = (ring.zero(), ring.one());
    while !ring.is_zero(&r1) {
        let (q, r) = ring.div_rem(&r0, &r1);
        let s = ring.sub(&s0, &ring.mul(&q, &s1));
        let t = ring.sub(&t0, &ring.mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    let (unit, d) = ring.normal_form(&r0);
    if ring.is_one(&unit) {
        return (d, s0, t0);
    }
    let inv = ring.unit_inverse(&unit).expect("normal form unit is invertible");
    (d, ring.mul(&s0, &inv), ring.mul(&t0, &inv))
}

/// Exact division in a Euclidean domain; `0 / 0` is `0`.
pub fn euclid_divide_exact<R: EuclideanDomain>(ring: &R, a: &R::Elem, b: &R::Elem) -> Result<R::Elem> {
    if ring.is_zero(b) {
        return if ring.is_zero(a) {
            Ok(ring.zero())
        } else {
            Err(RingError::NotDivisible { dividend: ring.format(a), divisor: ring.format(b) })
        };
    }
    let (q, r) = ring.div_rem(a, b);
    if ring.is_zero(&r) {
        Ok(q)
    } else {
        Err(RingError::NotDivisible { dividend: ring.format(a), divisor: ring.format(b) })
    }
}

/// An element together with the ring that owns it.
///
/// Binary operations refuse operands from different rings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElement<R: Ring> {
    ring: R,
    value: R::Elem,
}

impl<R: Ring> RingElement<R> {
    pub fn new(ring: R, value: R::Elem) -> Result<Self> {
        ring.check(&value)?;
        Ok(RingElement { ring, value })
    }

    pub fn zero(ring: R) -> Self {
        let value = ring.zero();
        RingElement { ring, value }
    }

    pub fn one(ring: R) -> Self {
        let value = ring.one();
        RingElement { ring, value }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn value(&self) -> &R::Elem {
        &self.value
    }

    pub fn into_value(self) -> R::Elem {
        self.value
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(RingError::Mismatch(format!("{} vs {}", self.ring.describe(), other.ring.describe())))
        }
    }

    fn wrap(&self, value: R::Elem) -> Self {
        RingElement { ring: self.ring.clone(), value }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(self.wrap(self.ring.add(&self.value, &other.value)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(self.wrap(self.ring.sub(&self.value, &other.value)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(self.wrap(self.ring.mul(&self.value, &other.value)))
    }

    pub fn neg(&self) -> Self {
        self.wrap(self.ring.neg(&self.value))
    }

    pub fn is_zero(&self) -> bool {
        self.ring.is_zero(&self.value)
    }

    pub fn is_unit(&self) -> bool {
        self.ring.is_unit(&self.value)
    }

    pub fn divide_exact(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(self.wrap(self.ring.divide_exact(&self.value, &other.value)?))
    }

    pub fn gcdex(&self, other: &Self) -> Result<ExtendedGcd<R::Elem>> {
        self.same_ring(other)?;
        self.ring.gcdex(&self.value, &other.value)
    }
}

impl<R: Ring> Display for RingElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ring.format(&self.value))
    }
}
