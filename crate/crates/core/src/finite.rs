//! Brute-force structure predicates on finite quotient rings.
//!
//! A [`FiniteRing`] numbers its elements `0..size` (canonical order: the
//! residue itself for `Z/n`, base-`p` digits of the coefficients for
//! `F_p[x]/f`) and computes with raw residue arithmetic. Nothing here
//! calls the gcd machinery in [`crate::ring`], so every predicate is an
//! independent check on the element-side classifiers.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Result, RingError};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Arith {
    Residues { n: u64 },
    // modulus is monic, coefficients low degree first
    Polys { p: u64, modulus: Vec<u64> },
}

/// A named tuple of elements backing a predicate's answer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub label: String,
    pub elements: Vec<usize>,
}

impl Evidence {
    fn new(label: &str, elements: Vec<usize>) -> Self {
        Evidence { label: label.to_string(), elements }
    }
}

/// Outcome of a predicate. A `false` verdict always carries a counterexample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub evidence: Vec<Evidence>,
}

impl Verdict {
    fn yes() -> Self {
        Verdict { holds: true, evidence: Vec::new() }
    }

    fn no(label: &str, elements: Vec<usize>) -> Self {
        Verdict { holds: false, evidence: vec![Evidence::new(label, elements)] }
    }
}

#[derive(Debug)]
struct Ideals {
    class_of: Vec<usize>,
    members: Vec<Vec<usize>>,
    bits: Vec<Vec<u64>>,
    reps: Vec<usize>,
}

impl Ideals {
    fn contains(&self, class: usize, x: usize) -> bool {
        self.bits[class][x / 64] >> (x % 64) & 1 == 1
    }
}

#[derive(Debug, Default)]
struct Cache {
    idempotents: OnceLock<Vec<usize>>,
    ideals: OnceLock<Ideals>,
    units: OnceLock<Vec<bool>>,
    radical: OnceLock<Vec<bool>>,
    comaximal: OnceLock<Vec<Vec<bool>>>,
}

/// A finite commutative ring `Z/n` or `F_p[x]/f` with elements numbered
/// `0..size`; `0` is zero and `1` is one.
#[derive(Debug)]
pub struct FiniteRing {
    label: String,
    arith: Arith,
    size: usize,
    quadratic_cap: u64,
    cache: Cache,
}

impl Clone for FiniteRing {
    fn clone(&self) -> Self {
        FiniteRing {
            label: self.label.clone(),
            arith: self.arith.clone(),
            size: self.size,
            quadratic_cap: self.quadratic_cap,
            cache: Cache::default(),
        }
    }
}

impl FiniteRing {
    pub fn integers_mod(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(RingError::ZeroModulus);
        }
        if n == 1 {
            return Err(RingError::UnitModulus);
        }
        let size = usize::try_from(n).map_err(|_| RingError::TooLarge { size: n.to_string(), cap: usize::MAX as u64 })?;
        Ok(Self::build(format!("Z/{n}"), Arith::Residues { n }, size))
    }

    /// `modulus` is a monic coefficient list (low degree first) over `F_p`.
    pub fn polynomials_mod(p: u64, modulus: &[u64]) -> Result<Self> {
        let deg = modulus.len().checked_sub(1).ok_or(RingError::ZeroModulus)?;
        if deg == 0 {
            return Err(RingError::UnitModulus);
        }
        if modulus[deg] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(RingError::PreconditionFailed("modulus must be monic with reduced coefficients".into()));
        }
        let size = (p as usize).checked_pow(deg as u32).ok_or(RingError::TooLarge { size: format!("{p}^{deg}"), cap: u64::MAX })?;
        let coeffs: Vec<String> = modulus.iter().map(u64::to_string).collect();
        let label = format!("F{p}[x]/[{}]", coeffs.join(","));
        Ok(Self::build(label, Arith::Polys { p, modulus: modulus.to_vec() }, size))
    }

    fn build(label: String, arith: Arith, size: usize) -> Self {
        FiniteRing { label, arith, size, quadratic_cap: crate::limits::Caps::default().quadratic, cache: Cache::default() }
    }

    /// Overrides the size limit for pairwise predicates.
    pub fn with_quadratic_cap(mut self, cap: u64) -> Self {
        self.quadratic_cap = cap;
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn format(&self, x: usize) -> String {
        match &self.arith {
            Arith::Residues { .. } => x.to_string(),
            Arith::Polys { p, modulus } => {
                let mut digits = self.digits(x, *p, modulus.len() - 1);
                while digits.last() == Some(&0) {
                    digits.pop();
                }
                if digits.is_empty() {
                    return "[0]".into();
                }
                let parts: Vec<String> = digits.iter().map(u64::to_string).collect();
                format!("[{}]", parts.join(","))
            }
        }
    }

    fn digits(&self, mut x: usize, p: u64, deg: usize) -> Vec<u64> {
        let mut out = Vec::with_capacity(deg);
        for _ in 0..deg {
            out.push((x as u64) % p);
            x /= p as usize;
        }
        out
    }

    fn encode(&self, digits: &[u64], p: u64) -> usize {
        digits.iter().rev().fold(0usize, |acc, &d| acc * p as usize + d as usize)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        match &self.arith {
            Arith::Residues { n } => ((a as u64 + b as u64) % n) as usize,
            Arith::Polys { p, modulus } => {
                let deg = modulus.len() - 1;
                let (x, y) = (self.digits(a, *p, deg), self.digits(b, *p, deg));
                let s: Vec<u64> = x.iter().zip(&y).map(|(u, v)| (u + v) % p).collect();
                self.encode(&s, *p)
            }
        }
    }

    pub fn neg(&self, a: usize) -> usize {
        match &self.arith {
            Arith::Residues { n } => ((n - a as u64) % n) as usize,
            Arith::Polys { p, modulus } => {
                let deg = modulus.len() - 1;
                let s: Vec<u64> = self.digits(a, *p, deg).iter().map(|u| (p - u) % p).collect();
                self.encode(&s, *p)
            }
        }
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.arith {
            Arith::Residues { n } => ((a as u128 * b as u128) % *n as u128) as usize,
            Arith::Polys { p, modulus } => {
                let deg = modulus.len() - 1;
                let (x, y) = (self.digits(a, *p, deg), self.digits(b, *p, deg));
                let mut prod = vec![0u64; 2 * deg];
                for (i, u) in x.iter().enumerate() {
                    if *u == 0 {
                        continue;
                    }
                    for (j, v) in y.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + u * v) % p;
                    }
                }
                for k in (deg..prod.len()).rev() {
                    let c = prod[k];
                    if c == 0 {
                        continue;
                    }
                    for (j, m) in modulus.iter().enumerate().take(deg) {
                        let t = k - deg + j;
                        prod[t] = (prod[t] + p - c * m % p) % p;
                    }
                    prod[k] = 0;
                }
                prod.truncate(deg);
                self.encode(&prod, *p)
            }
        }
    }

    pub fn pow(&self, a: usize, mut e: u64) -> usize {
        let (mut base, mut acc) = (a, 1usize);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn require_quadratic(&self) -> Result<()> {
        if self.size as u64 > self.quadratic_cap {
            Err(RingError::TooLarge { size: self.size.to_string(), cap: self.quadratic_cap })
        } else {
            Ok(())
        }
    }

    /// All `e` with `e^2 = e`, in canonical order.
    pub fn idempotents(&self) -> &[usize] {
        self.cache.idempotents.get_or_init(|| self.elements().filter(|&e| self.mul(e, e) == e).collect())
    }

    /// `x * R` by brute force, sorted.
    pub fn principal_ideal(&self, x: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.elements().map(|y| self.mul(x, y)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// `{y : x*y = 0}` by brute force, sorted.
    pub fn annihilator(&self, x: usize) -> Vec<usize> {
        self.elements().filter(|&y| self.mul(x, y) == 0).collect()
    }

    fn ideals(&self) -> &Ideals {
        self.cache.ideals.get_or_init(|| {
            let words = self.size.div_ceil(64);
            let mut index: HashMap<Vec<u64>, usize> = HashMap::new();
            let mut class_of = Vec::with_capacity(self.size);
            let (mut members, mut bits, mut reps) = (Vec::new(), Vec::new(), Vec::new());
            for x in self.elements() {
                let mut b = vec![0u64; words];
                for y in self.elements() {
                    let z = self.mul(x, y);
                    b[z / 64] |= 1 << (z % 64);
                }
                let next = bits.len();
                let class = *index.entry(b.clone()).or_insert(next);
                if class == next {
                    members.push((0..self.size).filter(|&z| b[z / 64] >> (z % 64) & 1 == 1).collect());
                    bits.push(b);
                    reps.push(x);
                }
                class_of.push(class);
            }
            Ideals { class_of, members, bits, reps }
        })
    }

    fn unit_table(&self) -> Result<&[bool]> {
        self.require_quadratic()?;
        Ok(self.cache.units.get_or_init(|| {
            let ideals = self.ideals();
            self.elements().map(|x| ideals.contains(ideals.class_of[x], 1)).collect()
        }))
    }

    pub fn is_unit(&self, x: usize) -> Result<bool> {
        Ok(self.unit_table()?[x])
    }

    pub fn units(&self) -> Result<Vec<usize>> {
        let t = self.unit_table()?;
        Ok(self.elements().filter(|&x| t[x]).collect())
    }

    #[allow(clippy::needless_range_loop)]
    fn comaximal_classes(&self) -> Result<&[Vec<bool>]> {
        self.require_quadratic()?;
        Ok(self.cache.comaximal.get_or_init(|| {
            let ideals = self.ideals();
            let k = ideals.reps.len();
            let mut m = vec![vec![false; k]; k];
            for a in 0..k {
                for b in a..k {
                    let c = ideals.members[a].iter().any(|&i| ideals.contains(b, self.sub(1, i)));
                    m[a][b] = c;
                    m[b][a] = c;
                }
            }
            m
        }))
    }

    /// `xR + yR = R`.
    pub fn comaximal(&self, x: usize, y: usize) -> Result<bool> {
        let m = self.comaximal_classes()?;
        let ideals = self.ideals();
        Ok(m[ideals.class_of[x]][ideals.class_of[y]])
    }

    fn radical_table(&self) -> Result<&[bool]> {
        let units = self.unit_table()?;
        Ok(self.cache.radical.get_or_init(|| {
            let ideals = self.ideals();
            let per_class: Vec<bool> = ideals.members.iter().map(|m| m.iter().all(|&i| units[self.add(1, i)])).collect();
            self.elements().map(|x| per_class[ideals.class_of[x]]).collect()
        }))
    }

    /// All `x` such that `1 + x*y` is a unit for every `y`.
    pub fn jacobson_radical(&self) -> Result<Vec<usize>> {
        let t = self.radical_table()?;
        Ok(self.elements().filter(|&x| t[x]).collect())
    }

    pub fn in_radical(&self, x: usize) -> Result<bool> {
        Ok(self.radical_table()?[x])
    }

    pub fn is_field(&self) -> Result<Verdict> {
        let units = self.unit_table()?;
        Ok(match (1..self.size).find(|&x| !units[x]) {
            Some(x) => Verdict::no("nonzero non-unit", vec![x]),
            None => Verdict::yes(),
        })
    }

    /// No nonzero nilpotents; `x` is nilpotent iff `x^|R| = 0`.
    pub fn is_reduced(&self) -> Result<Verdict> {
        let n = self.size as u64;
        Ok(match (1..self.size).find(|&x| self.pow(x, n) == 0) {
            Some(x) => Verdict::no("nonzero nilpotent", vec![x]),
            None => Verdict::yes(),
        })
    }

    /// Every `a` has some `x` with `a = a*x*a`.
    pub fn is_von_neumann_regular(&self) -> Result<Verdict> {
        self.require_quadratic()?;
        for a in self.elements() {
            if !self.elements().any(|x| self.mul(self.mul(a, x), a) == a) {
                return Ok(Verdict::no("element without a von Neumann inverse", vec![a]));
            }
        }
        Ok(Verdict::yes())
    }

    /// 1 is the only nonzero idempotent.
    pub fn is_indecomposable(&self) -> Result<Verdict> {
        Ok(match self.idempotents().iter().find(|&&e| e != 0 && e != 1) {
            Some(&e) => Verdict::no("nontrivial idempotent", vec![e]),
            None => Verdict::yes(),
        })
    }

    /// Every element is a unit plus an idempotent.
    pub fn is_clean(&self) -> Result<Verdict> {
        let units = self.unit_table()?;
        let idem = self.idempotents();
        for x in self.elements() {
            if !idem.iter().any(|&e| units[self.sub(x, e)]) {
                return Ok(Verdict::no("element that is not unit + idempotent", vec![x]));
            }
        }
        Ok(Verdict::yes())
    }

    /// `R/J` is von Neumann regular and idempotents lift modulo `J`.
    pub fn is_semiregular(&self) -> Result<Verdict> {
        let radical = self.jacobson_radical()?;
        let coset: Vec<usize> = self.elements().map(|x| radical.iter().map(|&j| self.add(x, j)).min().unwrap_or(x)).collect();
        let mut reps: Vec<usize> = coset.clone();
        reps.sort_unstable();
        reps.dedup();
        for &a in &reps {
            if !reps.iter().any(|&x| coset[self.mul(self.mul(a, x), a)] == coset[a]) {
                return Ok(Verdict::no("coset without a von Neumann inverse modulo J", vec![a]));
            }
        }
        for &e in &reps {
            if coset[self.mul(e, e)] != e {
                continue;
            }
            let lifts = radical.iter().map(|&j| self.add(e, j)).any(|f| self.mul(f, f) == f);
            if !lifts {
                return Ok(Verdict::no("idempotent modulo J that does not lift", vec![e]));
            }
        }
        Ok(Verdict::yes())
    }

    /// Every principal ideal not inside `J` contains a nonzero idempotent.
    pub fn is_semipotent(&self) -> Result<Verdict> {
        let in_j = self.radical_table()?;
        let ideals = self.ideals();
        let idem = self.idempotents();
        for b in self.elements() {
            if in_j[b] {
                continue;
            }
            let class = ideals.class_of[b];
            if !idem.iter().any(|&e| e != 0 && ideals.contains(class, e)) {
                return Ok(Verdict::no("principal ideal outside J without a nonzero idempotent", vec![b]));
            }
        }
        Ok(Verdict::yes())
    }

    /// For comaximal `a, b` there are `c, d` with `aR + cR = R`,
    /// `bR + dR = R` and `c*d = 0`.
    pub fn is_gelfand(&self) -> Result<Verdict> {
        let comax = self.comaximal_classes()?;
        let ideals = self.ideals();
        let k = ideals.reps.len();
        for a in 0..k {
            for b in a..k {
                if !comax[a][b] {
                    continue;
                }
                let found = (0..k).any(|c| comax[a][c] && (0..k).any(|d| comax[b][d] && self.mul(ideals.reps[c], ideals.reps[d]) == 0));
                if !found {
                    return Ok(Verdict::no("comaximal pair without annihilating companions", vec![ideals.reps[a], ideals.reps[b]]));
                }
            }
        }
        Ok(Verdict::yes())
    }

    /// For comaximal `a, b` some `a + b*y` is a unit.
    pub fn is_stable_range_1(&self) -> Result<Verdict> {
        let comax = self.comaximal_classes()?;
        let units = self.unit_table()?;
        let ideals = self.ideals();
        for a in self.elements() {
            let ca = ideals.class_of[a];
            for (cb, row) in comax[ca].iter().enumerate() {
                if !row {
                    continue;
                }
                if !ideals.members[cb].iter().any(|&i| units[self.add(a, i)]) {
                    return Ok(Verdict::no("comaximal pair with no unit a + b*y", vec![a, ideals.reps[cb]]));
                }
            }
        }
        Ok(Verdict::yes())
    }

    /// Nonzero idempotent in `b*R` for `b` outside `J`, first in canonical order.
    pub fn idempotent_in(&self, b: usize, nontrivial: bool) -> Result<Option<usize>> {
        self.require_quadratic()?;
        let ideals = self.ideals();
        let class = ideals.class_of[b];
        Ok(self.idempotents().iter().copied().find(|&e| e != 0 && !(nontrivial && e == 1) && ideals.contains(class, e)))
    }

    /// Witness form of [`is_von_neumann_regular`] for a single element.
    pub fn von_neumann_inverse(&self, a: usize) -> Option<usize> {
        self.elements().find(|&x| self.mul(self.mul(a, x), a) == a)
    }

    pub fn analyze(&self) -> StructureReport {
        StructureReport::build(self)
    }
}

/// Flags of a finite ring; `None` means the predicate was skipped by a cap.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct QuotientFlags {
    pub field: Option<bool>,
    pub reduced: Option<bool>,
    pub vnr: Option<bool>,
    pub indecomposable: Option<bool>,
    pub clean: Option<bool>,
    pub semiregular: Option<bool>,
    pub semipotent: Option<bool>,
    pub gelfand: Option<bool>,
    pub stable_range_1: Option<bool>,
}

impl QuotientFlags {
    /// Broken links of the chains field => vnr => reduced, vnr => semiregular,
    /// clean => gelfand and clean => semipotent.
    pub fn implication_violations(&self) -> Vec<String> {
        let links = [
            ("field", self.field, "vnr", self.vnr),
            ("vnr", self.vnr, "reduced", self.reduced),
            ("vnr", self.vnr, "semiregular", self.semiregular),
            ("clean", self.clean, "gelfand", self.gelfand),
            ("clean", self.clean, "semipotent", self.semipotent),
        ];
        links
            .iter()
            .filter(|(_, p, _, q)| *p == Some(true) && *q == Some(false))
            .map(|(pn, _, qn, _)| format!("{pn} holds but {qn} fails"))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RenderedEvidence {
    pub label: String,
    pub elements: Vec<String>,
}

/// Everything the brute-force predicates say about one finite ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub ring: String,
    pub cardinality: usize,
    pub idempotents: Vec<String>,
    pub unit_count: Option<usize>,
    pub jacobson_radical: Option<Vec<String>>,
    pub flags: QuotientFlags,
    pub evidence: BTreeMap<String, Vec<RenderedEvidence>>,
    pub skipped: Vec<String>,
}

impl StructureReport {
    fn build(ring: &FiniteRing) -> Self {
        let mut flags = QuotientFlags::default();
        let mut evidence = BTreeMap::new();
        let mut skipped = Vec::new();
        let render = |v: &Verdict| -> Vec<RenderedEvidence> {
            v.evidence
                .iter()
                .map(|e| RenderedEvidence { label: e.label.clone(), elements: e.elements.iter().map(|&x| ring.format(x)).collect() })
                .collect()
        };
        let mut record = |name: &str, slot: &mut Option<bool>, r: Result<Verdict>| match r {
            Ok(v) => {
                *slot = Some(v.holds);
                if !v.evidence.is_empty() {
                    evidence.insert(name.to_string(), render(&v));
                }
            }
            Err(e) => skipped.push(format!("{name}: {e}")),
        };
        record("field", &mut flags.field, ring.is_field());
        record("reduced", &mut flags.reduced, ring.is_reduced());
        record("vnr", &mut flags.vnr, ring.is_von_neumann_regular());
        record("indecomposable", &mut flags.indecomposable, ring.is_indecomposable());
        record("clean", &mut flags.clean, ring.is_clean());
        record("semiregular", &mut flags.semiregular, ring.is_semiregular());
        record("semipotent", &mut flags.semipotent, ring.is_semipotent());
        record("gelfand", &mut flags.gelfand, ring.is_gelfand());
        record("stable_range_1", &mut flags.stable_range_1, ring.is_stable_range_1());
        StructureReport {
            ring: ring.label().to_string(),
            cardinality: ring.size(),
            idempotents: ring.idempotents().iter().map(|&e| ring.format(e)).collect(),
            unit_count: ring.units().ok().map(|u| u.len()),
            jacobson_radical: ring.jacobson_radical().ok().map(|j| j.iter().map(|&x| ring.format(x)).collect()),
            flags,
            evidence,
            skipped,
        }
    }

    pub fn implication_violations(&self) -> Vec<String> {
        self.flags.implication_violations()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zn(n: u64) -> FiniteRing {
        FiniteRing::integers_mod(n).unwrap()
    }

    #[test]
    fn idempotent_examples() {
        assert_eq!(zn(6).idempotents(), &[0, 1, 3, 4]);
        assert_eq!(zn(4).idempotents(), &[0, 1]);
        assert_eq!(zn(7).idempotents(), &[0, 1]);
    }

    #[test]
    fn field_examples() {
        assert!(zn(7).is_field().unwrap().holds);
        let v = zn(6).is_field().unwrap();
        assert!(!v.holds);
        assert_eq!(v.evidence[0].elements, vec![2]);
        let f = FiniteRing::polynomials_mod(2, &[1, 1, 1]).unwrap();
        assert!(f.is_field().unwrap().holds);
    }

    #[test]
    fn reduced_and_regular_examples() {
        assert!(zn(6).is_reduced().unwrap().holds);
        let v = zn(4).is_reduced().unwrap();
        assert_eq!((v.holds, v.evidence[0].elements.clone()), (false, vec![2]));
        assert!(zn(30).is_reduced().unwrap().holds);
        assert!(zn(6).is_von_neumann_regular().unwrap().holds);
        assert_eq!(zn(6).mul(zn(6).mul(2, 2), 2), 2);
        let v = zn(4).is_von_neumann_regular().unwrap();
        assert_eq!((v.holds, v.evidence[0].elements.clone()), (false, vec![2]));
        assert!(zn(7).is_von_neumann_regular().unwrap().holds);
    }

    #[test]
    fn indecomposable_examples() {
        assert!(zn(4).is_indecomposable().unwrap().holds);
        assert!(!zn(6).is_indecomposable().unwrap().holds);
        assert!(zn(9).is_indecomposable().unwrap().holds);
    }

    #[test]
    fn clean_examples() {
        assert!(zn(6).is_clean().unwrap().holds);
        assert!(zn(4).is_clean().unwrap().holds);
        let r = FiniteRing::polynomials_mod(2, &[0, 0, 0, 1]).unwrap();
        assert_eq!(r.size(), 8);
        assert!(r.is_clean().unwrap().holds);
    }

    #[test]
    fn jacobson_examples() {
        assert_eq!(zn(12).jacobson_radical().unwrap(), vec![0, 6]);
        assert_eq!(zn(6).jacobson_radical().unwrap(), vec![0]);
        assert_eq!(zn(8).jacobson_radical().unwrap(), vec![0, 2, 4, 6]);
    }

    #[test]
    fn remaining_predicates_on_examples() {
        for n in [4u64, 6, 7, 9, 12] {
            let r = zn(n);
            assert!(r.is_semiregular().unwrap().holds, "Z/{n}");
            assert!(r.is_semipotent().unwrap().holds, "Z/{n}");
            assert!(r.is_gelfand().unwrap().holds, "Z/{n}");
            assert!(r.is_stable_range_1().unwrap().holds, "Z/{n}");
        }
    }

    #[test]
    fn polynomial_arithmetic_matches_hand_computation() {
        // F2[x]/(x^2+x): x * x = x^2 = x
        let r = FiniteRing::polynomials_mod(2, &[0, 1, 1]).unwrap();
        assert_eq!(r.size(), 4);
        assert_eq!(r.mul(2, 2), 2);
        assert_eq!(r.format(3), "[1,1]");
        assert_eq!(r.idempotents(), &[0, 1, 2, 3]);
        // F3[x]/(x^2): x is nilpotent
        let r = FiniteRing::polynomials_mod(3, &[0, 0, 1]).unwrap();
        assert_eq!(r.mul(3, 3), 0);
        assert!(!r.is_reduced().unwrap().holds);
    }

    #[test]
    fn quadratic_cap_is_enforced() {
        let r = zn(50).with_quadratic_cap(10);
        assert!(matches!(r.is_field(), Err(RingError::TooLarge { .. })));
        assert!(r.is_reduced().is_ok());
    }

    #[test]
    fn reports_satisfy_implication_chain() {
        for n in 2..60 {
            let rep = zn(n).analyze();
            assert!(rep.implication_violations().is_empty(), "Z/{n}");
            assert!(rep.skipped.is_empty());
        }
    }

    #[test]
    fn negative_flags_carry_counterexamples() {
        let rep = zn(12).analyze();
        assert_eq!(rep.flags.field, Some(false));
        assert!(rep.evidence.contains_key("field"));
        assert!(rep.evidence.contains_key("reduced"));
        assert!(rep.evidence.contains_key("indecomposable"));
    }
}
