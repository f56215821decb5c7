use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Result, RingError};
use crate::finite::FiniteRing;
use crate::limits::Caps;
use crate::ring::{euclid_bezout, euclid_divide_exact, EuclideanDomain, Ring};

/// The ring of integers with arbitrary-precision elements.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn describe(&self) -> String {
        "Z".to_string()
    }

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }

    fn one(&self) -> BigInt {
        BigInt::one()
    }

    fn from_i64(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }

    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }

    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }

    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }

    fn is_one(&self, a: &BigInt) -> bool {
        a.is_one()
    }

    fn is_unit(&self, a: &BigInt) -> bool {
        a.magnitude().is_one()
    }

    fn is_regular(&self, a: &BigInt) -> bool {
        !a.is_zero()
    }

    fn contains(&self, _a: &BigInt) -> bool {
        true
    }

    fn canonicalize(&self, a: &BigInt) -> BigInt {
        a.clone()
    }

    fn divide_exact(&self, a: &BigInt, b: &BigInt) -> Result<BigInt> {
        euclid_divide_exact(self, a, b)
    }

    fn bezout(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
        euclid_bezout(self, a, b)
    }

    /// 0, 1, -1, 2, -2, ...
    fn element_at(&self, i: u64) -> Option<BigInt> {
        let k = BigInt::from(i.div_ceil(2));
        Some(if i.is_multiple_of(2) { -k } else { k })
    }

    fn format(&self, a: &BigInt) -> String {
        a.to_string()
    }

    fn unit_inverse(&self, a: &BigInt) -> Option<BigInt> {
        self.is_unit(a).then(|| a.clone())
    }
}

impl EuclideanDomain for Integers {
    fn div_rem(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        let r = a.mod_floor(&b.abs());
        let q = (a - &r) / b;
        (q, r)
    }

    fn normal_form(&self, a: &BigInt) -> (BigInt, BigInt) {
        if a.sign() == Sign::Minus {
            (-BigInt::one(), -a)
        } else {
            (BigInt::one(), a.clone())
        }
    }

    fn cmp_size(&self, a: &BigInt, b: &BigInt) -> Ordering {
        a.magnitude().cmp(b.magnitude())
    }

    fn residue_count(&self, m: &BigInt) -> Option<BigUint> {
        Some(m.magnitude().clone())
    }

    fn residue_at(&self, _m: &BigInt, i: u64) -> BigInt {
        BigInt::from(i)
    }

    fn finite_quotient(&self, m: &BigInt, caps: &Caps) -> Result<FiniteRing> {
        let n = m.magnitude();
        match n.to_u64() {
            Some(n) if n <= caps.enumeration => FiniteRing::integers_mod(n),
            _ => Err(RingError::TooLarge { size: n.to_string(), cap: caps.enumeration }),
        }
    }

    fn residue_index(&self, _m: &BigInt, x: &BigInt) -> Option<usize> {
        x.to_usize()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn arithmetic_and_units() {
        let r = Integers;
        assert_eq!(r.add(&z(2), &z(3)), z(5));
        assert!(r.is_unit(&z(-1)));
        assert!(!r.is_unit(&z(2)));
        assert!(!r.is_unit(&z(0)));
    }

    #[test]
    fn exact_division() {
        let r = Integers;
        assert_eq!(r.divide_exact(&z(12), &z(4)).unwrap(), z(3));
        assert!(matches!(r.divide_exact(&z(12), &z(5)), Err(RingError::NotDivisible { .. })));
        assert_eq!(r.divide_exact(&z(-12), &z(4)).unwrap(), z(-3));
        assert_eq!(r.divide_exact(&z(0), &z(0)).unwrap(), z(0));
    }

    #[test]
    fn gcdex_examples() {
        let r = Integers;
        let g = r.gcdex(&z(12), &z(8)).unwrap();
        assert_eq!((g.d.clone(), g.u.clone(), g.v.clone(), g.a0.clone(), g.b0.clone()), (z(4), z(1), z(-1), z(3), z(2)));
        assert!(g.violations(&r, &z(12), &z(8)).is_empty());

        let g = r.gcdex(&z(7), &z(0)).unwrap();
        assert_eq!((g.d, g.u, g.v, g.a0, g.b0), (z(7), z(1), z(0), z(1), z(0)));

        let g = r.gcdex(&z(0), &z(0)).unwrap();
        assert!(g.degenerate);
        assert_eq!(g.d, z(0));
        assert!(g.violations(&r, &z(0), &z(0)).is_empty());

        let g = r.gcdex(&z(-6), &z(0)).unwrap();
        assert_eq!(g.d, z(6));
        assert_eq!(g.a0, z(-1));
    }

    #[test]
    fn normalize_cofactors_keeps_coprime_input() {
        let r = Integers;
        let cf = r.normalize_cofactors(&z(12), &z(8), &z(4), &z(3), &z(2)).unwrap();
        assert_eq!((cf.a0, cf.b0), (z(3), z(2)));
        assert_eq!(cf.u * 3 + cf.v * 2, z(1));
    }

    #[test]
    fn normalize_cofactors_rejects_bad_cofactors() {
        let r = Integers;
        assert!(matches!(r.normalize_cofactors(&z(12), &z(8), &z(4), &z(2), &z(2)), Err(RingError::PreconditionFailed(_))));
        // d = 2 is a common divisor but not the gcd: no coprime cofactors in a domain
        assert!(matches!(
            r.normalize_cofactors_capped(&z(12), &z(8), &z(2), &z(6), &z(4), 1000),
            Err(RingError::PreconditionFailed(_)) | Err(RingError::SearchExhausted(_))
        ));
    }

    #[test]
    fn search_sequence() {
        let r = Integers;
        let seq: Vec<BigInt> = (0..5).map(|i| r.element_at(i).unwrap()).collect();
        assert_eq!(seq, vec![z(0), z(1), z(-1), z(2), z(-2)]);
    }

    #[test]
    fn common_divisors_divide_gcd() {
        let r = Integers;
        for a in -60i64..=60 {
            for b in [-36i64, -7, 0, 5, 18, 40] {
                let g = r.gcdex(&z(a), &z(b)).unwrap();
                assert!(g.violations(&r, &z(a), &z(b)).is_empty(), "{a} {b}");
                for c in 1..=60i64 {
                    if a % c == 0 && b % c == 0 {
                        assert!(r.divides(&z(c), &g.d), "{c} | gcd({a},{b})");
                    }
                }
            }
        }
    }
}
