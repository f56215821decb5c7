//! Verification sweeps: each element-side classifier against the brute-force
//! predicate on `Z/a`, plus seeded randomized suites for splits and reductions.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Result, RingError};
use crate::finite::FiniteRing;
use crate::instances::{make_quotient, Integers, PolyRing, PrimeField};
use crate::limits::{Caps, FactorBudget};
use crate::matrix::{diagonal_reduce, hermite_reduce_pair, reduce_2x2_triangular, snf_oracle_integers, verify_reduction, Matrix};
use crate::par::Execution;
use crate::ring::EuclideanDomain;
use crate::structure::{
    adequate_split, avoidable_decompose, gelfand_decompose, is_atom, is_inpseudo_irreducible, is_pseudo_irreducible, SemipotentOutcome,
    SemipotentSolver,
};

/// Sweep selectors. Each serializes as its CLI selector string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theorem {
    AtomField,
    Squarefree,
    PrimePower,
    AdequateSplit,
    AvoidableSplit,
    SemipotentSplit,
    GelfandSplit,
    Annihilator,
    StableRange,
    Hermite,
    Matrix,
    Splits,
}

impl Theorem {
    pub const ALL: [Theorem; 12] = [
        Theorem::AtomField,
        Theorem::Squarefree,
        Theorem::PrimePower,
        Theorem::AdequateSplit,
        Theorem::AvoidableSplit,
        Theorem::SemipotentSplit,
        Theorem::GelfandSplit,
        Theorem::Annihilator,
        Theorem::StableRange,
        Theorem::Hermite,
        Theorem::Matrix,
        Theorem::Splits,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::AtomField => "prop2",
            Theorem::Squarefree => "thm9",
            Theorem::PrimePower => "thm11",
            Theorem::AdequateSplit => "thm12",
            Theorem::AvoidableSplit => "thm14",
            Theorem::SemipotentSplit => "thm16",
            Theorem::GelfandSplit => "thm18",
            Theorem::Annihilator => "prop7",
            Theorem::StableRange => "cor10",
            Theorem::Hermite => "hermite",
            Theorem::Matrix => "matrix",
            Theorem::Splits => "splits",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Theorem::ALL.into_iter().find(|t| t.name() == s.trim()).ok_or_else(|| RingError::Parse(format!("unknown theorem selector {s:?}")))
    }

    /// Randomized suites ignore the range and use the sample count.
    pub fn is_randomized(self) -> bool {
        matches!(self, Theorem::Hermite | Theorem::Matrix | Theorem::Splits)
    }
}

impl Serialize for Theorem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub theorems: Vec<Theorem>,
    pub lo: u64,
    pub hi: u64,
    pub caps: Caps,
    pub seed: u64,
    pub samples: usize,
    pub execution: Execution,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            theorems: Theorem::ALL.to_vec(),
            lo: 2,
            hi: 200,
            caps: Caps::default(),
            seed: 0,
            samples: 64,
            execution: Execution::default(),
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.theorems.is_empty() {
            return Err(RingError::PreconditionFailed("no theorems selected".into()));
        }
        if self.lo > self.hi {
            return Err(RingError::PreconditionFailed(format!("empty range {}..{}", self.lo, self.hi)));
        }
        if self.lo < 2 {
            return Err(RingError::PreconditionFailed("range must start at 2 or above".into()));
        }
        let cap = self.caps.quadratic.min(self.caps.enumeration);
        if self.hi > cap {
            return Err(RingError::TooLarge { size: self.hi.to_string(), cap });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub instance: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub theorem: Theorem,
    pub checked: u64,
    pub violations: Vec<Violation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub schema: u32,
    pub seed: u64,
    pub range: [u64; 2],
    pub samples: usize,
    pub theorems: Vec<TheoremReport>,
    pub total_checked: u64,
    pub total_violations: usize,
}

#[derive(Default)]
struct Tally {
    checked: u64,
    violations: Vec<Violation>,
}

impl Tally {
    fn check(&mut self, ok: bool, instance: impl FnOnce() -> String, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations.push(Violation { instance: instance(), detail: detail() });
        }
    }

    fn fail(&mut self, instance: String, detail: String) {
        self.checked += 1;
        self.violations.push(Violation { instance, detail });
    }

    fn merge(parts: Vec<Tally>) -> Tally {
        let mut out = Tally::default();
        for p in parts {
            out.checked += p.checked;
            out.violations.extend(p.violations);
        }
        out
    }
}

/// Trial-division number theory, independent of the factorization module.
pub mod oracle {
    pub fn is_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    pub fn is_squarefree(n: u64) -> bool {
        (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d * d))
    }

    /// `p^k` with `k >= 1`.
    pub fn is_prime_power(n: u64) -> bool {
        match (2..=n).find(|d| n.is_multiple_of(*d)) {
            Some(p) => {
                let mut m = n;
                while m.is_multiple_of(p) {
                    m /= p;
                }
                m == 1
            }
            None => false,
        }
    }

    /// Product of the distinct primes of `n`.
    pub fn radical(mut n: u64) -> u64 {
        let mut r = 1;
        let mut d = 2;
        while d * d <= n {
            if n.is_multiple_of(d) {
                r *= d;
                while n.is_multiple_of(d) {
                    n /= d;
                }
            }
            d += 1;
        }
        if n > 1 {
            r *= n;
        }
        r
    }

    pub fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
}

fn z(n: u64) -> BigInt {
    BigInt::from(n)
}

fn finite(a: u64, caps: &Caps) -> Result<FiniteRing> {
    Ok(FiniteRing::integers_mod(a)?.with_quadratic_cap(caps.quadratic))
}

fn verdict(r: Result<crate::finite::Verdict>) -> Result<bool> {
    r.map(|v| v.holds)
}

fn sweep_modulus(theorem: Theorem, a: u64, cfg: &SweepConfig) -> Tally {
    let mut t = Tally::default();
    let inst = || format!("Z/{a}");
    if let Err(e) = sweep_modulus_inner(theorem, a, cfg, &mut t) {
        t.fail(inst(), e.to_string());
    }
    t
}

fn sweep_modulus_inner(theorem: Theorem, a: u64, cfg: &SweepConfig, t: &mut Tally) -> Result<()> {
    let budget = FactorBudget::default();
    let za = z(a);
    let fr = finite(a, &cfg.caps)?;
    let inst = || format!("Z/{a}");
    match theorem {
        Theorem::AtomField => {
            let (atom, field, prime) = (is_atom(&Integers, &za, &budget)?, verdict(fr.is_field())?, oracle::is_prime(a));
            t.check(atom == field && field == prime, inst, || format!("atom={atom} field={field} prime={prime}"));
        }
        Theorem::Squarefree => {
            let inpseudo = is_inpseudo_irreducible(&Integers, &za, &budget)?;
            let (reduced, vnr) = (verdict(fr.is_reduced())?, verdict(fr.is_von_neumann_regular())?);
            let sf = oracle::is_squarefree(a);
            t.check(inpseudo == reduced && reduced == vnr && vnr == sf, inst, || {
                format!("inpseudo_irreducible={inpseudo} reduced={reduced} vnr={vnr} squarefree={sf}")
            });
        }
        Theorem::PrimePower => {
            let pseudo = is_pseudo_irreducible(&Integers, &za, &budget)?;
            let indec = verdict(fr.is_indecomposable())?;
            let pp = oracle::is_prime_power(a);
            t.check(pseudo == indec && indec == pp, inst, || {
                format!("pseudo_irreducible={pseudo} indecomposable={indec} prime_power={pp}")
            });
        }
        Theorem::AdequateSplit => {
            t.check(verdict(fr.is_semiregular())?, inst, || "quotient is not semiregular".into());
            for b in 0..a {
                let w = adequate_split(&Integers, &za, &z(b))?;
                let bad = w.violations(&Integers);
                let bad = if w.rs_comaximal { bad } else { [bad, vec!["rR + sR = R fails".into()]].concat() };
                t.check(bad.is_empty(), || format!("a={a} b={b}"), || bad.join("; "));
            }
        }
        Theorem::AvoidableSplit | Theorem::GelfandSplit => {
            let (flag, name) = if theorem == Theorem::AvoidableSplit { (fr.is_clean(), "clean") } else { (fr.is_gelfand(), "gelfand") };
            t.check(verdict(flag)?, inst, || format!("quotient is not {name}"));
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ a.wrapping_mul(0x9E37_79B9_7F4A_7C15));
            for _ in 0..cfg.samples {
                let (b, c) = (rng.gen_range(0..a), rng.gen_range(0..a));
                if oracle::gcd(oracle::gcd(a, b), c) != 1 {
                    continue;
                }
                let w = if theorem == Theorem::AvoidableSplit {
                    avoidable_decompose(&Integers, &za, &z(b), &z(c))?
                } else {
                    gelfand_decompose(&Integers, &za, &z(b), &z(c))?
                };
                let bad = w.violations(&Integers);
                t.check(bad.is_empty(), || format!("a={a} b={b} c={c}"), || bad.join("; "));
            }
        }
        Theorem::SemipotentSplit => {
            t.check(verdict(fr.is_semipotent())?, inst, || "quotient is not semipotent".into());
            let solver = SemipotentSolver::new(&Integers, &za, &cfg.caps)?;
            let rad = oracle::radical(a);
            for b in 0..a {
                let in_j = b % rad == 0;
                let instance = || format!("a={a} b={b}");
                match solver.witness(&z(b)) {
                    Ok(SemipotentOutcome::InRadical) => t.check(in_j, instance, || "reported InRadical outside J".into()),
                    Ok(SemipotentOutcome::Witness(w)) => {
                        let mut bad = w.violations(&Integers);
                        if in_j {
                            bad.push("witness returned inside J".into());
                        }
                        t.check(bad.is_empty(), instance, || bad.join("; "));
                    }
                    Err(e) => t.fail(instance(), e.to_string()),
                }
            }
        }
        Theorem::Annihilator => {
            let q = make_quotient(Integers, &za)?;
            for b in 0..a {
                let gen = q.annihilator_generator(&z(b));
                let g = usize::try_from(&gen).expect("residue fits");
                let brute = fr.annihilator(b as usize);
                let ok1 = brute == fr.principal_ideal(g);
                let ok2 = fr.annihilator(g) == fr.principal_ideal(b as usize);
                t.check(ok1, || format!("a={a} b={b}"), || format!("Ann(b) is not generated by {gen}"));
                t.check(ok2, || format!("a={a} b={b}"), || "Ann(Ann(b)) differs from bR".into());
            }
        }
        Theorem::StableRange => {
            t.check(verdict(fr.is_stable_range_1())?, inst, || "quotient does not have stable range 1".into());
        }
        Theorem::Hermite | Theorem::Matrix | Theorem::Splits => unreachable!("randomized suites do not sweep moduli"),
    }
    Ok(())
}

fn random_int(rng: &mut ChaCha8Rng, bound: i64) -> BigInt {
    BigInt::from(rng.gen_range(-bound..=bound))
}

fn random_poly(rng: &mut ChaCha8Rng, ring: &PolyRing<PrimeField>, max_deg: usize) -> crate::instances::Poly<u64> {
    let deg = rng.gen_range(0..=max_deg);
    let p = ring.field().modulus();
    ring.from_coeffs((0..=deg).map(|_| rng.gen_range(0..p)).collect())
}

fn check_hermite<R: EuclideanDomain>(ring: &R, a: &R::Elem, b: &R::Elem, t: &mut Tally) {
    let instance = || format!("{}: ({}, {})", ring.describe(), ring.format(a), ring.format(b));
    match hermite_reduce_pair(ring, a, b) {
        Ok((d, q)) => {
            let row = Matrix::new(1, 2, vec![a.clone(), b.clone()]).expect("1x2");
            let prod = row.mul(ring, &q).expect("shapes");
            let det = ring.sub(&ring.mul(q.get(0, 0), q.get(1, 1)), &ring.mul(q.get(0, 1), q.get(1, 0)));
            let gcd_ok = ring.associate(&d) == ring.associate(&ring.bezout(a, b).0);
            let ok = prod.get(0, 0) == &d && ring.is_zero(prod.get(0, 1)) && ring.is_one(&det) && gcd_ok;
            t.check(ok, instance, || {
                format!("(a b)Q = ({}, {}), det Q = {}", ring.format(prod.get(0, 0)), ring.format(prod.get(0, 1)), ring.format(&det))
            });
        }
        Err(e) => t.fail(instance(), e.to_string()),
    }
}

fn run_randomized(theorem: Theorem, cfg: &SweepConfig) -> Tally {
    let salt = match theorem {
        Theorem::Hermite => 1,
        Theorem::Matrix => 2,
        _ => 3,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(salt));
    let n = cfg.samples;
    match theorem {
        Theorem::Hermite => {
            let f5 = PolyRing::new(PrimeField::new(5).expect("prime"));
            let ints: Vec<(BigInt, BigInt)> = (0..n).map(|_| (random_int(&mut rng, 1_000_000), random_int(&mut rng, 1_000_000))).collect();
            let polys: Vec<_> = (0..n).map(|_| (random_poly(&mut rng, &f5, 8), random_poly(&mut rng, &f5, 8))).collect();
            let mut parts = cfg.execution.map(&ints, |(a, b)| {
                let mut t = Tally::default();
                check_hermite(&Integers, a, b, &mut t);
                t
            });
            parts.extend(cfg.execution.map(&polys, |(a, b)| {
                let mut t = Tally::default();
                check_hermite(&f5, a, b, &mut t);
                t
            }));
            Tally::merge(parts)
        }
        Theorem::Matrix => {
            let mats: Vec<Matrix<BigInt>> = (0..n)
                .map(|_| {
                    let (r, c) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
                    Matrix::new(r, c, (0..r * c).map(|_| random_int(&mut rng, 50)).collect()).expect("shape")
                })
                .collect();
            let triples = coprime_triples(&mut rng, n, 10_000);
            let mut parts = cfg.execution.map(&mats, |m| {
                let mut t = Tally::default();
                let instance =
                    || format!("{:?}", m.to_rows().iter().map(|r| r.iter().map(BigInt::to_string).collect::<Vec<_>>()).collect::<Vec<_>>());
                match (diagonal_reduce(&Integers, m), snf_oracle_integers(m)) {
                    (Ok(red), Ok(oracle)) => {
                        let mut bad = verify_reduction(&Integers, m, &red);
                        let got: Vec<BigInt> = red.d.diagonal().iter().map(|x| x.abs()).collect();
                        let want: Vec<BigInt> = oracle.iter().map(|x| x.abs()).collect();
                        if got != want {
                            bad.push(format!("diagonal {got:?} differs from invariant factors {want:?}"));
                        }
                        t.check(bad.is_empty(), instance, || bad.join("; "));
                    }
                    (Err(e), _) | (_, Err(e)) => t.fail(instance(), e.to_string()),
                }
                t
            });
            parts.extend(cfg.execution.map(&triples, |(a, b, c)| {
                let mut t = Tally::default();
                let instance = || format!("a={a} b={b} c={c}");
                match reduce_2x2_triangular(&Integers, a, b, c) {
                    Ok((red, trace)) => {
                        let m = Matrix::new(2, 2, vec![a.clone(), BigInt::zero(), b.clone(), c.clone()]).expect("2x2");
                        let mut bad = verify_reduction(&Integers, &m, &red);
                        bad.extend(trace.violations(&Integers));
                        if red.d.diagonal() != vec![BigInt::from(1), (a * c).abs()] {
                            bad.push("D is not diag(1, |ac|)".into());
                        }
                        t.check(bad.is_empty(), instance, || bad.join("; "));
                    }
                    Err(e) => t.fail(instance(), e.to_string()),
                }
                t
            }));
            Tally::merge(parts)
        }
        _ => {
            let pairs: Vec<(BigInt, BigInt)> = (0..n)
                .map(|_| {
                    let mut a = random_int(&mut rng, 1_000_000);
                    if a.is_zero() {
                        a = BigInt::from(1);
                    }
                    (a, random_int(&mut rng, 1_000_000))
                })
                .collect();
            let triples: Vec<_> = coprime_triples(&mut rng, n, 1_000_000).into_iter().filter(|(a, _, _)| !a.is_zero()).collect();
            let mut parts = cfg.execution.map(&pairs, |(a, b)| {
                let mut t = Tally::default();
                let instance = || format!("adequate a={a} b={b}");
                match adequate_split(&Integers, a, b) {
                    Ok(w) => {
                        let bad = w.violations(&Integers);
                        t.check(bad.is_empty() && w.rs_comaximal, instance, || bad.join("; "));
                    }
                    Err(e) => t.fail(instance(), e.to_string()),
                }
                t
            });
            parts.extend(cfg.execution.map(&triples, |(a, b, c)| {
                let mut t = Tally::default();
                for (kind, w) in
                    [("avoidable", avoidable_decompose(&Integers, a, b, c)), ("gelfand", gelfand_decompose(&Integers, a, b, c))]
                {
                    let instance = || format!("{kind} a={a} b={b} c={c}");
                    match w {
                        Ok(w) => {
                            let bad = w.violations(&Integers);
                            t.check(bad.is_empty(), instance, || bad.join("; "));
                        }
                        Err(e) => t.fail(instance(), e.to_string()),
                    }
                }
                t
            }));
            Tally::merge(parts)
        }
    }
}

/// Random `(a, b, c)` with `|x| <= bound` and `gcd(a, b, c) = 1`.
pub fn coprime_triples(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Vec<(BigInt, BigInt, BigInt)> {
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let (a, b, c) = (random_int(rng, bound), random_int(rng, bound), random_int(rng, bound));
        let g = oracle::gcd(
            oracle::gcd(a.magnitude().try_into().unwrap_or(0), b.magnitude().try_into().unwrap_or(0)),
            c.magnitude().try_into().unwrap_or(0),
        );
        if g == 1 {
            out.push((a, b, c));
        }
    }
    out
}

/// Runs every selected theorem. Results are in selector order and
/// independent of the execution mode.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepReport> {
    cfg.validate()?;
    let mut selected = cfg.theorems.clone();
    selected.sort();
    selected.dedup();
    let moduli: Vec<u64> = (cfg.lo..=cfg.hi).collect();
    let mut theorems = Vec::new();
    for th in selected {
        let tally = if th.is_randomized() {
            run_randomized(th, cfg)
        } else {
            Tally::merge(cfg.execution.map(&moduli, |&a| sweep_modulus(th, a, cfg)))
        };
        theorems.push(TheoremReport { theorem: th, checked: tally.checked, violations: tally.violations });
    }
    let total_checked = theorems.iter().map(|t| t.checked).sum();
    let total_violations = theorems.iter().map(|t| t.violations.len()).sum();
    Ok(SweepReport { schema: 1, seed: cfg.seed, range: [cfg.lo, cfg.hi], samples: cfg.samples, theorems, total_checked, total_violations })
}
