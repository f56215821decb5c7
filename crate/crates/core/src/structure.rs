//! Element classifiers and two-factor splittings.
//!
//! Classifiers (`is_atom`, `is_inpseudo_irreducible`, `is_pseudo_irreducible`,
//! `comaximal_refinement`) factor the element. The splittings are pure gcd
//! iterations and need no factorization, except `semipotent_witness`, which
//! searches the finite quotient for an idempotent.

use serde::Serialize;

use crate::error::{Result, RingError};
use crate::factor::FactorDomain;
use crate::finite::FiniteRing;
use crate::instances::{make_quotient, Quotient};
use crate::limits::{Caps, FactorBudget};
use crate::ring::{EuclideanDomain, Ring};

fn gcd<R: Ring>(ring: &R, a: &R::Elem, b: &R::Elem) -> R::Elem {
    ring.bezout(a, b).0
}

fn require_proper<R: Ring>(ring: &R, a: &R::Elem) -> Result<()> {
    if ring.is_zero(a) || ring.is_unit(a) {
        Err(RingError::UnitOrZeroInput(ring.format(a)))
    } else {
        Ok(())
    }
}

/// Non-zero-divisor test.
pub fn is_regular<R: Ring>(ring: &R, a: &R::Elem) -> bool {
    ring.is_regular(a)
}

/// Irreducible: exactly one prime factor, with multiplicity one.
pub fn is_atom<R: FactorDomain>(ring: &R, a: &R::Elem, budget: &FactorBudget) -> Result<bool> {
    require_proper(ring, a)?;
    Ok(ring.factor(a, budget)?.total_multiplicity() == 1)
}

/// Every factorization `a = b*c` is comaximal; for these domains, squarefree.
pub fn is_inpseudo_irreducible<R: FactorDomain>(ring: &R, a: &R::Elem, budget: &FactorBudget) -> Result<bool> {
    require_proper(ring, a)?;
    ring.is_squarefree(a, budget)
}

/// No factorization into two comaximal non-units; for these domains, a prime power.
pub fn is_pseudo_irreducible<R: FactorDomain>(ring: &R, a: &R::Elem, budget: &FactorBudget) -> Result<bool> {
    require_proper(ring, a)?;
    Ok(ring.factor(a, budget)?.distinct_primes() == 1)
}

/// `a = unit * prod(factors)` with pairwise comaximal prime-power factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComaximalFactorization<E> {
    pub a: E,
    pub unit: E,
    pub factors: Vec<E>,
}

impl<E: Clone + PartialEq> ComaximalFactorization<E> {
    pub fn violations<R: FactorDomain<Elem = E>>(&self, ring: &R, budget: &FactorBudget) -> Vec<String> {
        let mut out = Vec::new();
        if self.factors.is_empty() {
            out.push("no factors".into());
        }
        let prod = self.factors.iter().fold(self.unit.clone(), |acc, f| ring.mul(&acc, f));
        if prod != self.a {
            out.push(format!("unit times product is {}, expected {}", ring.format(&prod), ring.format(&self.a)));
        }
        if !ring.is_unit(&self.unit) {
            out.push(format!("{} is not a unit", ring.format(&self.unit)));
        }
        for (i, f) in self.factors.iter().enumerate() {
            for g in &self.factors[i + 1..] {
                if !ring.coprime(f, g) {
                    out.push(format!("{} and {} are not comaximal", ring.format(f), ring.format(g)));
                }
            }
            match is_pseudo_irreducible(ring, f, budget) {
                Ok(true) => {}
                Ok(false) => out.push(format!("{} is not pseudo-irreducible", ring.format(f))),
                Err(e) => out.push(format!("{}: {e}", ring.format(f))),
            }
        }
        out
    }
}

/// Groups the prime factorization by prime.
pub fn comaximal_refinement<R: FactorDomain>(ring: &R, a: &R::Elem, budget: &FactorBudget) -> Result<ComaximalFactorization<R::Elem>> {
    require_proper(ring, a)?;
    let f = ring.factor(a, budget)?;
    let factors = f.factors.iter().map(|(p, e)| ring.pow(p, *e as u64)).collect();
    Ok(ComaximalFactorization { a: a.clone(), unit: f.unit, factors })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SplitKind {
    Adequate,
    Avoidable,
    Gelfand,
    Semipotent,
}

impl SplitKind {
    pub fn name(self) -> &'static str {
        match self {
            SplitKind::Adequate => "adequate",
            SplitKind::Avoidable => "avoidable",
            SplitKind::Gelfand => "gelfand",
            SplitKind::Semipotent => "semipotent",
        }
    }
}

/// `a = r*s` relative to `b` (and `c` for avoidable and Gelfand splits).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitWitness<E> {
    pub kind: SplitKind,
    pub a: E,
    pub r: E,
    pub s: E,
    pub b: E,
    pub c: Option<E>,
    /// Whether `rR + sR = R` holds.
    pub rs_comaximal: bool,
}

const CORE_STEPS: usize = 100_000;

/// Strips from `s` every factor it shares with `b`; the result is the
/// `b`-coprime core, or `None` if the loop fails to terminate.
pub fn coprime_core<R: Ring>(ring: &R, s: &R::Elem, b: &R::Elem) -> Option<R::Elem> {
    let mut t = s.clone();
    for _ in 0..CORE_STEPS {
        let g = gcd(ring, &t, b);
        if ring.is_unit(&g) {
            return Some(t);
        }
        if ring.is_zero(&g) {
            return None;
        }
        t = ring.divide_exact(&t, &g).ok()?;
    }
    None
}

impl<E: Clone + PartialEq> SplitWitness<E> {
    /// Every failed side condition of the witness's kind.
    pub fn violations<R: Ring<Elem = E>>(&self, ring: &R) -> Vec<String> {
        let mut out = Vec::new();
        let f = |x: &E| ring.format(x);
        if ring.mul(&self.r, &self.s) != self.a {
            out.push(format!("r*s = {} differs from a = {}", f(&ring.mul(&self.r, &self.s)), f(&self.a)));
        }
        let mut pairs = vec![(&self.r, &self.b, "rR + bR = R")];
        if matches!(self.kind, SplitKind::Avoidable | SplitKind::Gelfand) {
            match &self.c {
                Some(c) => pairs.push((&self.s, c, "sR + cR = R")),
                None => out.push("missing c".into()),
            }
        }
        if matches!(self.kind, SplitKind::Avoidable | SplitKind::Semipotent) {
            pairs.push((&self.r, &self.s, "rR + sR = R"));
        }
        for (x, y, what) in pairs {
            if !ring.coprime(x, y) {
                out.push(format!("{what}: gcd({}, {}) is not a unit", f(x), f(y)));
            }
        }
        match self.kind {
            SplitKind::Adequate => match coprime_core(ring, &self.s, &self.b) {
                Some(t) if ring.is_unit(&t) => {}
                Some(t) => out.push(format!("s has the non-unit divisor {} coprime to b", f(&t))),
                None => out.push("coprime core of s did not terminate".into()),
            },
            SplitKind::Semipotent => {
                for (name, x) in [("r", &self.r), ("s", &self.s)] {
                    if ring.is_unit(x) || ring.is_zero(x) {
                        out.push(format!("{name} = {} is not a non-unit", f(x)));
                    }
                }
            }
            _ => {}
        }
        if self.rs_comaximal != ring.coprime(&self.r, &self.s) {
            out.push("recorded rR + sR = R flag is wrong".into());
        }
        out
    }
}

/// Peels the part of `a` sharing factors with `b` into `s`:
/// `r <- a, s <- 1; while g = gcd(r, b) is a non-unit { s <- s*g; r <- r/g }`.
pub fn adequate_split<R: EuclideanDomain>(ring: &R, a: &R::Elem, b: &R::Elem) -> Result<SplitWitness<R::Elem>> {
    if ring.is_zero(a) {
        return Err(RingError::ZeroInput);
    }
    let (mut r, mut s) = (a.clone(), ring.one());
    loop {
        let g = gcd(ring, &r, b);
        if ring.is_unit(&g) {
            break;
        }
        s = ring.mul(&s, &g);
        r = ring.divide_exact(&r, &g)?;
    }
    let rs_comaximal = ring.coprime(&r, &s);
    Ok(SplitWitness { kind: SplitKind::Adequate, a: a.clone(), r, s, b: b.clone(), c: None, rs_comaximal })
}

fn require_triple<R: Ring>(ring: &R, a: &R::Elem, b: &R::Elem, c: &R::Elem) -> Result<()> {
    if ring.is_zero(a) {
        return Err(RingError::ZeroInput);
    }
    let g = gcd(ring, &gcd(ring, a, b), c);
    if !ring.is_unit(&g) {
        return Err(RingError::PreconditionFailed(format!(
            "aR + bR + cR = R fails: gcd({}, {}, {}) = {}",
            ring.format(a),
            ring.format(b),
            ring.format(c),
            ring.format(&g)
        )));
    }
    Ok(())
}

/// `a = r*s` with `rR + bR = R`, `sR + cR = R` and `rR + sR = R`.
pub fn avoidable_decompose<R: EuclideanDomain>(ring: &R, a: &R::Elem, b: &R::Elem, c: &R::Elem) -> Result<SplitWitness<R::Elem>> {
    require_triple(ring, a, b, c)?;
    let w = adequate_split(ring, a, b)?;
    Ok(SplitWitness { kind: SplitKind::Avoidable, c: Some(c.clone()), ..w })
}

/// `a = r*s` with `rR + bR = R` and `sR + cR = R`. Normally the avoidable
/// split; when `b` is a unit the split is taken relative to `c` instead, so
/// `s` is the part of `a` coprime to `c`.
pub fn gelfand_decompose<R: EuclideanDomain>(ring: &R, a: &R::Elem, b: &R::Elem, c: &R::Elem) -> Result<SplitWitness<R::Elem>> {
    require_triple(ring, a, b, c)?;
    let (r, s) = if ring.is_unit(b) && !ring.is_unit(c) {
        let w = adequate_split(ring, a, c)?;
        let (u, s) = ring.normal_form(&w.r);
        (ring.mul(&w.s, &u), s)
    } else {
        let w = adequate_split(ring, a, b)?;
        (w.r, w.s)
    };
    let rs_comaximal = ring.coprime(&r, &s);
    Ok(SplitWitness { kind: SplitKind::Gelfand, a: a.clone(), r, s, b: b.clone(), c: Some(c.clone()), rs_comaximal })
}

/// Result of the semipotent construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SemipotentOutcome<E> {
    Witness(SplitWitness<E>),
    /// The image of `b` lies in the Jacobson radical of `R/aR`.
    InRadical,
}

/// Takes the first nontrivial idempotent `e` of `b(R/aR)` in canonical
/// order and returns `s = gcd(e, a)`, `r = a/s`.
pub fn semipotent_witness<R: EuclideanDomain>(ring: &R, a: &R::Elem, b: &R::Elem, caps: &Caps) -> Result<SemipotentOutcome<R::Elem>> {
    SemipotentSolver::new(ring, a, caps)?.witness(b)
}

/// The finite quotient `R/aR`, built once for many semipotent queries.
#[derive(Debug)]
pub struct SemipotentSolver<R: EuclideanDomain> {
    quotient: Quotient<R>,
    finite: FiniteRing,
    a: R::Elem,
}

impl<R: EuclideanDomain> SemipotentSolver<R> {
    pub fn new(ring: &R, a: &R::Elem, caps: &Caps) -> Result<Self> {
        require_proper(ring, a)?;
        let quotient = make_quotient(ring.clone(), a)?;
        let finite = quotient.finite_ring(caps)?.with_quadratic_cap(caps.quadratic);
        Ok(SemipotentSolver { quotient, finite, a: a.clone() })
    }

    pub fn finite(&self) -> &FiniteRing {
        &self.finite
    }

    pub fn witness(&self, b: &R::Elem) -> Result<SemipotentOutcome<R::Elem>> {
        let (q, ring, a) = (&self.quotient, self.quotient.base(), &self.a);
        let b_bar = q.reduce(b);
        let idx = q.index_of(&b_bar).ok_or_else(|| RingError::UnsupportedRing(q.describe()))?;
        if self.finite.in_radical(idx)? {
            return Ok(SemipotentOutcome::InRadical);
        }
        let e = self
            .finite
            .idempotent_in(idx, true)?
            .ok_or_else(|| RingError::NoNontrivialIdempotent(format!("{}*{}", ring.format(&b_bar), q.describe())))?;
        let e = ring.residue_at(q.modulus(), e as u64);
        let s = gcd(ring, &e, a);
        let r = ring.divide_exact(a, &s)?;
        let rs_comaximal = ring.coprime(&r, &s);
        Ok(SemipotentOutcome::Witness(SplitWitness {
            kind: SplitKind::Semipotent,
            a: a.clone(),
            r,
            s,
            b: b.clone(),
            c: None,
            rs_comaximal,
        }))
    }
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;

    use super::*;
    use crate::instances::{Integers, PolyRing, PrimeField};

    fn z(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn budget() -> FactorBudget {
        FactorBudget::default()
    }

    #[test]
    fn regularity() {
        assert!(is_regular(&Integers, &z(6)));
        let q = make_quotient(Integers, &z(12)).unwrap();
        assert!(is_regular(&q, &z(5)));
        assert!(!is_regular(&q, &z(8)));
    }

    #[test]
    fn classifier_examples() {
        let b = budget();
        assert!(is_inpseudo_irreducible(&Integers, &z(6), &b).unwrap());
        assert!(!is_pseudo_irreducible(&Integers, &z(6), &b).unwrap());
        assert!(is_pseudo_irreducible(&Integers, &z(4), &b).unwrap());
        assert!(!is_inpseudo_irreducible(&Integers, &z(4), &b).unwrap());
        assert!(is_pseudo_irreducible(&Integers, &z(8), &b).unwrap());
        assert!(is_atom(&Integers, &z(7), &b).unwrap());
        assert!(!is_atom(&Integers, &z(6), &b).unwrap());
        assert!(is_atom(&Integers, &z(-7), &b).unwrap());
        for bad in [0, 1, -1] {
            assert!(matches!(is_atom(&Integers, &z(bad), &b), Err(RingError::UnitOrZeroInput(_))));
        }
        let f2 = PolyRing::new(PrimeField::new(2).unwrap());
        assert!(is_atom(&f2, &f2.from_i64_coeffs(&[1, 1, 1]), &b).unwrap());
        let f3 = PolyRing::new(PrimeField::new(3).unwrap());
        assert!(!is_inpseudo_irreducible(&f3, &f3.from_i64_coeffs(&[0, 0, 1]), &b).unwrap());
    }

    #[test]
    fn refinement_examples() {
        let b = budget();
        let cf = comaximal_refinement(&Integers, &z(360), &b).unwrap();
        assert_eq!((cf.unit.clone(), cf.factors.clone()), (z(1), vec![z(8), z(9), z(5)]));
        assert!(cf.violations(&Integers, &b).is_empty());
        assert_eq!(comaximal_refinement(&Integers, &z(7), &b).unwrap().factors, vec![z(7)]);
        let f2 = PolyRing::new(PrimeField::new(2).unwrap());
        let cf = comaximal_refinement(&f2, &f2.from_i64_coeffs(&[0, 0, 1, 1]), &b).unwrap();
        assert_eq!(cf.factors, vec![f2.from_i64_coeffs(&[0, 0, 1]), f2.from_i64_coeffs(&[1, 1])]);
        assert!(cf.violations(&f2, &b).is_empty());
    }

    #[test]
    fn adequate_examples() {
        let w = adequate_split(&Integers, &z(360), &z(14)).unwrap();
        assert_eq!((w.r.clone(), w.s.clone()), (z(45), z(8)));
        assert!(w.violations(&Integers).is_empty());
        assert!(w.rs_comaximal);
        let w = adequate_split(&Integers, &z(5), &z(3)).unwrap();
        assert_eq!((w.r, w.s), (z(5), z(1)));
        let w = adequate_split(&Integers, &z(8), &z(2)).unwrap();
        assert_eq!((w.r, w.s), (z(1), z(8)));
        assert_eq!(adequate_split(&Integers, &z(0), &z(2)).unwrap_err(), RingError::ZeroInput);
        let w = adequate_split(&Integers, &z(-12), &z(0)).unwrap();
        assert_eq!((w.r.clone(), w.s.clone()), (z(-1), z(12)));
        assert!(w.violations(&Integers).is_empty());
    }

    #[test]
    fn tampered_adequate_witness_is_rejected() {
        let mut w = adequate_split(&Integers, &z(360), &z(14)).unwrap();
        w.r = z(15);
        w.s = z(24);
        assert!(!w.violations(&Integers).is_empty());
    }

    #[test]
    fn avoidable_examples() {
        let w = avoidable_decompose(&Integers, &z(30), &z(4), &z(9)).unwrap();
        assert_eq!((w.r.clone(), w.s.clone()), (z(15), z(2)));
        assert!(w.violations(&Integers).is_empty());
        let w = avoidable_decompose(&Integers, &z(1), &z(0), &z(0)).unwrap();
        assert_eq!((w.r, w.s), (z(1), z(1)));
        assert!(matches!(avoidable_decompose(&Integers, &z(6), &z(2), &z(2)), Err(RingError::PreconditionFailed(_))));
    }

    #[test]
    fn gelfand_examples() {
        let w = gelfand_decompose(&Integers, &z(30), &z(4), &z(9)).unwrap();
        assert_eq!((w.r.clone(), w.s.clone()), (z(15), z(2)));
        let w = gelfand_decompose(&Integers, &z(12), &z(35), &z(1)).unwrap();
        assert_eq!((w.r.clone(), w.s.clone()), (z(12), z(1)));
        assert!(w.violations(&Integers).is_empty());
        let w = gelfand_decompose(&Integers, &z(12), &z(1), &z(35)).unwrap();
        assert_eq!((w.r.clone(), w.s.clone()), (z(1), z(12)));
        assert!(w.violations(&Integers).is_empty());
        let w = gelfand_decompose(&Integers, &z(-12), &z(1), &z(6)).unwrap();
        assert_eq!((w.r.clone(), w.s.clone()), (z(-12), z(1)));
        assert!(w.violations(&Integers).is_empty());
        let w = gelfand_decompose(&Integers, &z(6), &z(6), &z(1)).unwrap();
        assert!(w.violations(&Integers).is_empty());
    }

    #[test]
    fn semipotent_examples() {
        let caps = Caps::default();
        match semipotent_witness(&Integers, &z(12), &z(8), &caps).unwrap() {
            SemipotentOutcome::Witness(w) => {
                assert_eq!((w.r.clone(), w.s.clone()), (z(3), z(4)));
                assert!(w.violations(&Integers).is_empty());
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(semipotent_witness(&Integers, &z(12), &z(6), &caps).unwrap(), SemipotentOutcome::InRadical);
        assert_eq!(semipotent_witness(&Integers, &z(4), &z(2), &caps).unwrap(), SemipotentOutcome::InRadical);
    }

    #[test]
    fn semipotent_fails_for_units_modulo_prime_powers() {
        let caps = Caps::default();
        let err = semipotent_witness(&Integers, &z(9), &z(2), &caps).unwrap_err();
        assert!(matches!(err, RingError::NoNontrivialIdempotent(_)));
    }

    #[test]
    fn polynomial_splits() {
        let f5 = PolyRing::new(PrimeField::new(5).unwrap());
        let a = f5.from_i64_coeffs(&[0, 0, 1, 1]);
        let b = f5.from_i64_coeffs(&[0, 1]);
        let w = adequate_split(&f5, &a, &b).unwrap();
        assert_eq!(w.s, f5.from_i64_coeffs(&[0, 0, 1]));
        assert!(w.violations(&f5).is_empty());
        match semipotent_witness(&f5, &a, &b, &Caps::default()).unwrap() {
            SemipotentOutcome::Witness(w) => assert!(w.violations(&f5).is_empty()),
            other => panic!("{other:?}"),
        }
    }
}
