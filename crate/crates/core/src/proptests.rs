use num_bigint::BigInt;
use proptest::prelude::*;

use crate::instances::{make_quotient, Integers, PolyRing, PrimeField};
use crate::matrix::{diagonal_reduce, verify_reduction, Matrix};
use crate::ring::{EuclideanDomain, Ring};
use crate::structure::{adequate_split, avoidable_decompose, gelfand_decompose};

fn z(n: i64) -> BigInt {
    BigInt::from(n)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn gcdex_holds<R: Ring>(ring: &R, a: &R::Elem, b: &R::Elem) -> Result<(), TestCaseError> {
    let g = ring.gcdex(a, b).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert!(ring.add(&ring.mul(a, &g.u), &ring.mul(b, &g.v)) == g.d, "a*u + b*v != d");
    prop_assert!(ring.mul(&g.d, &g.a0) == *a, "d*a0 != a");
    prop_assert!(ring.mul(&g.d, &g.b0) == *b, "d*b0 != b");
    prop_assert!(ring.coprime(&g.a0, &g.b0), "cofactors not comaximal");
    Ok(())
}

fn triple() -> impl Strategy<Value = (i64, i64, i64)> {
    (-100_000i64..=100_000, -100_000i64..=100_000, -100_000i64..=100_000)
        .prop_filter("nonzero a, coprime triple", |&(a, b, c)| a != 0 && gcd(gcd(a, b), c) == 1)
}

proptest! {
    #[test]
    fn gcdex_over_integers(a in any::<i64>(), b in any::<i64>()) {
        gcdex_holds(&Integers, &z(a), &z(b))?;
    }

    #[test]
    fn gcdex_over_f7x(a in proptest::collection::vec(0u64..7, 0..8), b in proptest::collection::vec(0u64..7, 0..8)) {
        let f7 = PolyRing::new(PrimeField::new(7).unwrap());
        gcdex_holds(&f7, &f7.from_coeffs(a), &f7.from_coeffs(b))?;
    }

    #[test]
    fn gcdex_over_residues(n in 2i64..80, a in 0i64..1000, b in 0i64..1000) {
        let q = make_quotient(Integers, &z(n)).unwrap();
        gcdex_holds(&q, &q.reduce(&z(a)), &q.reduce(&z(b)))?;
    }

    #[test]
    fn reduction_is_a_homomorphism(n in 2i64..10_000, x in any::<i32>(), y in any::<i32>()) {
        let q = make_quotient(Integers, &z(n)).unwrap();
        let (x, y) = (z(x as i64), z(y as i64));
        prop_assert_eq!(q.reduce(&(&x + &y)), q.add(&q.reduce(&x), &q.reduce(&y)));
        prop_assert_eq!(q.reduce(&(&x * &y)), q.mul(&q.reduce(&x), &q.reduce(&y)));
        prop_assert_eq!(q.reduce(&-&x), q.neg(&q.reduce(&x)));
    }

    #[test]
    fn adequate_splits_are_valid(a in -1_000_000i64..=1_000_000, b in -1_000_000i64..=1_000_000) {
        prop_assume!(a != 0);
        let w = adequate_split(&Integers, &z(a), &z(b)).unwrap();
        prop_assert!(w.violations(&Integers).is_empty());
        prop_assert!(w.rs_comaximal);
    }

    #[test]
    fn avoidable_and_gelfand_splits_are_valid((a, b, c) in triple()) {
        let w = avoidable_decompose(&Integers, &z(a), &z(b), &z(c)).unwrap();
        prop_assert!(w.violations(&Integers).is_empty());
        let w = gelfand_decompose(&Integers, &z(a), &z(b), &z(c)).unwrap();
        prop_assert!(w.violations(&Integers).is_empty());
    }

    #[test]
    fn gelfand_splits_multiply((a1, b, c) in triple(), a2 in -10_000i64..=10_000) {
        prop_assume!(a2 != 0 && gcd(gcd(a2, b), c) == 1);
        prop_assert!(gelfand_decompose(&Integers, &z(a1), &z(b), &z(c)).is_ok());
        prop_assert!(gelfand_decompose(&Integers, &z(a2), &z(b), &z(c)).is_ok());
        let w = gelfand_decompose(&Integers, &z(a1 * a2), &z(b), &z(c)).unwrap();
        prop_assert!(w.violations(&Integers).is_empty());
    }

    #[test]
    fn integer_reductions_verify(rows in 1usize..5, cols in 1usize..5, seed in proptest::collection::vec(-30i64..=30, 16)) {
        let m = Matrix::new(rows, cols, (0..rows * cols).map(|i| z(seed[i])).collect()).unwrap();
        let red = diagonal_reduce(&Integers, &m).unwrap();
        prop_assert!(verify_reduction(&Integers, &m, &red).is_empty());
    }

    #[test]
    fn polynomial_reductions_verify(entries in proptest::collection::vec(proptest::collection::vec(0u64..3, 0..4), 9)) {
        let f3 = PolyRing::new(PrimeField::new(3).unwrap());
        let m = Matrix::new(3, 3, entries.into_iter().map(|c| f3.from_coeffs(c)).collect()).unwrap();
        let red = diagonal_reduce(&f3, &m).unwrap();
        prop_assert!(verify_reduction(&f3, &m, &red).is_empty());
        let diag = red.d.diagonal().iter().fold(f3.one(), |acc, d| f3.mul(&acc, d));
        let e = |i, j| m.get(i, j);
        let minor = |i: usize, j: usize, k: usize, l: usize| f3.sub(&f3.mul(e(1, i), e(2, j)), &f3.mul(e(1, k), e(2, l)));
        let det = f3.add(
            &f3.sub(&f3.mul(e(0, 0), &minor(1, 2, 2, 1)), &f3.mul(e(0, 1), &minor(0, 2, 2, 0))),
            &f3.mul(e(0, 2), &minor(0, 1, 1, 0)),
        );
        prop_assert!(diag == f3.associate(&det));
    }
}
