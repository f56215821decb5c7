//! Budgeted factorization for the classifiers over `Z`, `F_p[x]` and `Q[x]`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Result, RingError};
use crate::instances::{Integers, Poly, PolyRing, PrimeField, Rationals};
use crate::limits::FactorBudget;
use crate::ring::{EuclideanDomain, Ring};

/// `a = unit * prod(p^e)` with normalized, pairwise non-associate primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization<E> {
    pub unit: E,
    pub factors: Vec<(E, u32)>,
}

impl<E> Factorization<E> {
    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, e)| *e == 1)
    }

    pub fn distinct_primes(&self) -> usize {
        self.factors.len()
    }

    pub fn total_multiplicity(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }
}

/// Euclidean domains with a factorization routine.
pub trait FactorDomain: EuclideanDomain {
    /// Factors a nonzero element.
    fn factor(&self, a: &Self::Elem, budget: &FactorBudget) -> Result<Factorization<Self::Elem>>;

    fn is_squarefree(&self, a: &Self::Elem, budget: &FactorBudget) -> Result<bool> {
        Ok(self.factor(a, budget)?.is_squarefree())
    }
}

fn require_nonzero<R: Ring>(ring: &R, a: &R::Elem) -> Result<()> {
    if ring.is_zero(a) {
        Err(RingError::ZeroInput)
    } else {
        Ok(())
    }
}

const WITNESSES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Miller-Rabin with the first thirteen prime bases; deterministic below
/// 3.3 * 10^24.
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for &p in &WITNESSES {
        let p = BigUint::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n1 = n - 1u32;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'bases: for &a in &WITNESSES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

impl FactorDomain for Integers {
    /// Trial division by every integer up to the budget bound, then a
    /// primality test on the cofactor.
    fn factor(&self, a: &BigInt, budget: &FactorBudget) -> Result<Factorization<BigInt>> {
        require_nonzero(self, a)?;
        let unit = a.signum();
        let mut n = a.magnitude().clone();
        let mut factors = Vec::new();
        let mut d = 2u64;
        while d <= budget.trial_bound && BigUint::from(d) * BigUint::from(d) <= n {
            let mut e = 0;
            while (&n % d).is_zero() {
                n /= d;
                e += 1;
            }
            if e > 0 {
                factors.push((BigInt::from(d), e));
            }
            d += if d == 2 { 1 } else { 2 };
        }
        if !n.is_one() {
            let bound = BigUint::from(budget.trial_bound);
            if n <= &bound * &bound || is_probable_prime(&n) {
                factors.push((BigInt::from(n), 1));
            } else {
                return Err(RingError::FactorizationBudgetExceeded(format!(
                    "composite cofactor {n} has no prime factor up to {}",
                    budget.trial_bound
                )));
            }
        }
        Ok(Factorization { unit, factors })
    }
}

impl FactorDomain for PolyRing<PrimeField> {
    /// Trial division by monic polynomials in increasing degree.
    fn factor(&self, a: &Poly<u64>, budget: &FactorBudget) -> Result<Factorization<Poly<u64>>> {
        require_nonzero(self, a)?;
        let (unit, mut f) = self.normal_form(a);
        let p = self.field().modulus();
        let mut factors = Vec::new();
        let mut tried = 0u64;
        let mut d = 1usize;
        while f.degree().unwrap_or(0) >= 2 * d {
            let count = p.checked_pow(d as u32).ok_or_else(|| over_budget(budget))?;
            for i in 0..count {
                tried += 1;
                if tried > budget.poly_candidates {
                    return Err(over_budget(budget));
                }
                let g = monic_from_index(self, i, d, p);
                let mut e = 0;
                while let Ok(q) = self.divide_exact(&f, &g) {
                    f = q;
                    e += 1;
                }
                if e > 0 {
                    factors.push((g, e));
                }
            }
            d += 1;
        }
        if f.degree().unwrap_or(0) > 0 {
            match factors.iter_mut().find(|(g, _)| *g == f) {
                Some((_, e)) => *e += 1,
                None => factors.push((f, 1)),
            }
        }
        Ok(Factorization { unit, factors })
    }

    /// `gcd(f, f') = 1`. A zero derivative means `f` is a `p`-th power.
    fn is_squarefree(&self, a: &Poly<u64>, _budget: &FactorBudget) -> Result<bool> {
        require_nonzero(self, a)?;
        Ok(self.coprime(a, &self.derivative(a)))
    }
}

fn over_budget(budget: &FactorBudget) -> RingError {
    RingError::FactorizationBudgetExceeded(format!("more than {} candidate divisors", budget.poly_candidates))
}

fn monic_from_index(ring: &PolyRing<PrimeField>, mut i: u64, d: usize, p: u64) -> Poly<u64> {
    let mut coeffs = Vec::with_capacity(d + 1);
    for _ in 0..d {
        coeffs.push(i % p);
        i /= p;
    }
    coeffs.push(1);
    ring.from_coeffs(coeffs)
}

impl FactorDomain for PolyRing<Rationals> {
    /// Kronecker's method on the primitive integer associate.
    fn factor(&self, a: &Poly<BigRational>, budget: &FactorBudget) -> Result<Factorization<Poly<BigRational>>> {
        require_nonzero(self, a)?;
        let (unit, mut f) = self.normal_form(a);
        let mut factors: Vec<(Poly<BigRational>, u32)> = Vec::new();
        let mut tried = 0u64;
        let push = |g: Poly<BigRational>, factors: &mut Vec<(Poly<BigRational>, u32)>| match factors.iter_mut().find(|(h, _)| *h == g) {
            Some((_, e)) => *e += 1,
            None => factors.push((g, 1)),
        };
        while f.degree().unwrap_or(0) > 0 {
            let g = match smallest_factor(self, &f, budget, &mut tried)? {
                Some(g) => g,
                None => f.clone(),
            };
            f = self.divide_exact(&f, &g).expect("factor divides");
            push(g, &mut factors);
        }
        Ok(Factorization { unit, factors })
    }

    fn is_squarefree(&self, a: &Poly<BigRational>, _budget: &FactorBudget) -> Result<bool> {
        require_nonzero(self, a)?;
        Ok(self.coprime(a, &self.derivative(a)))
    }
}

fn eval(f: &Poly<BigRational>, x: i64) -> BigRational {
    let x = BigRational::from_integer(BigInt::from(x));
    f.coeffs().iter().rev().fold(BigRational::zero(), |acc, c| acc * &x + c)
}

/// Primitive integer polynomial proportional to `f`.
fn primitive(f: &Poly<BigRational>) -> Vec<BigInt> {
    let lcm = f.coeffs().iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = f.coeffs().iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    ints.into_iter().map(|c| c / &content).collect()
}

fn positive_divisors(n: &BigInt, budget: &FactorBudget) -> Result<Vec<BigInt>> {
    let n = n
        .abs()
        .to_u64()
        .filter(|&n| n <= budget.trial_bound.saturating_mul(budget.trial_bound))
        .ok_or_else(|| RingError::FactorizationBudgetExceeded(format!("value {n} too large for divisor enumeration")))?;
    let (mut small, mut large) = (Vec::new(), Vec::new());
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(BigInt::from(d));
            if d * d != n {
                large.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

/// A monic factor of minimal positive degree below `deg f`, if one exists.
fn smallest_factor(
    ring: &PolyRing<Rationals>,
    f: &Poly<BigRational>,
    budget: &FactorBudget,
    tried: &mut u64,
) -> Result<Option<Poly<BigRational>>> {
    let n = f.degree().unwrap_or(0);
    let int_f = primitive(f);
    let span = 3 * n as i64 + 10;
    let mut values: Vec<(i64, BigRational)> = Vec::new();
    for x in -span..=span {
        let y = eval(f, x);
        if y.is_zero() {
            return Ok(Some(ring.from_coeffs(vec![BigRational::from_integer(BigInt::from(-x)), BigRational::one()])));
        }
        values.push((x, y));
    }
    let scale = BigRational::from_integer(int_f.last().expect("nonzero").clone()) / f.leading().expect("nonzero");
    let mut points: Vec<(i64, BigInt)> = values.iter().map(|(x, y)| (*x, (y * &scale).to_integer())).collect();
    points.sort_by(|a, b| a.1.abs().cmp(&b.1.abs()).then(a.0.cmp(&b.0)));
    for k in 1..=n / 2 {
        let chosen = &points[..=k];
        let divisors: Vec<Vec<BigInt>> = chosen.iter().map(|(_, y)| positive_divisors(y, budget)).collect::<Result<_>>()?;
        let mut choice = vec![0usize; k + 1];
        loop {
            // first value positive, the remaining k carry a sign bit each
            for s in 0..(1u64 << k) {
                *tried += 1;
                if *tried > budget.poly_candidates {
                    return Err(over_budget(budget));
                }
                let targets: Vec<(i64, BigRational)> = chosen
                    .iter()
                    .zip(&choice)
                    .enumerate()
                    .map(|(i, ((x, _), &c))| {
                        let mut v = divisors[i][c].clone();
                        if i > 0 && s >> (i - 1) & 1 == 1 {
                            v = -v;
                        }
                        (*x, BigRational::from_integer(v))
                    })
                    .collect();
                let g = interpolate(ring, &targets);
                if g.degree() == Some(k) {
                    let g = ring.associate(&g);
                    if ring.divide_exact(f, &g).is_ok() {
                        return Ok(Some(g));
                    }
                }
            }
            let mut i = 0;
            while i < choice.len() {
                choice[i] += 1;
                if choice[i] < divisors[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == choice.len() {
                break;
            }
        }
    }
    Ok(None)
}

fn interpolate(ring: &PolyRing<Rationals>, points: &[(i64, BigRational)]) -> Poly<BigRational> {
    let mut acc = ring.zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut term = ring.constant(yi.clone());
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let denom = BigRational::from_integer(BigInt::from(xi - xj));
            let lin = ring.from_coeffs(vec![BigRational::from_integer(BigInt::from(-xj)) / &denom, BigRational::one() / &denom]);
            term = ring.mul(&term, &lin);
        }
        acc = ring.add(&acc, &term);
    }
    acc
}
