//! Dense univariate polynomials over a field.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::field::Field;
use crate::error::{Result, RingError};
use crate::finite::FiniteRing;
use crate::limits::Caps;
use crate::ring::{euclid_bezout, euclid_divide_exact, EuclideanDomain, Ring};

/// Coefficients low degree first, no trailing zeros. The zero polynomial
/// has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

impl<C> Poly<C> {
    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyRing<F: Field> {
    field: F,
}

impl<F: Field> PolyRing<F> {
    pub fn new(field: F) -> Self {
        PolyRing { field }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn from_coeffs(&self, coeffs: Vec<F::Elem>) -> Poly<F::Elem> {
        let mut coeffs: Vec<F::Elem> = coeffs.iter().map(|c| self.field.canonicalize(c)).collect();
        self.strip(&mut coeffs);
        Poly { coeffs }
    }

    pub fn from_i64_coeffs(&self, coeffs: &[i64]) -> Poly<F::Elem> {
        self.from_coeffs(coeffs.iter().map(|&c| self.field.from_i64(c)).collect())
    }

    pub fn constant(&self, c: F::Elem) -> Poly<F::Elem> {
        self.from_coeffs(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(&self, c: F::Elem, k: usize) -> Poly<F::Elem> {
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.push(c);
        self.from_coeffs(coeffs)
    }

    pub fn derivative(&self, f: &Poly<F::Elem>) -> Poly<F::Elem> {
        let coeffs = f.coeffs.iter().enumerate().skip(1).map(|(i, c)| self.field.mul(c, &self.field.from_i64(i as i64))).collect();
        self.from_coeffs(coeffs)
    }

    pub fn scale(&self, f: &Poly<F::Elem>, c: &F::Elem) -> Poly<F::Elem> {
        self.from_coeffs(f.coeffs.iter().map(|x| self.field.mul(x, c)).collect())
    }

    fn strip(&self, coeffs: &mut Vec<F::Elem>) {
        while coeffs.last().is_some_and(|c| self.field.is_zero(c)) {
            coeffs.pop();
        }
    }

    /// Polynomial whose coefficients are the base-`q` digits of `i`, mapped
    /// through the field's search sequence (`q = |F|` for finite fields).
    #[allow(clippy::wrong_self_convention)]
    fn from_digits(&self, mut i: u64) -> Poly<F::Elem> {
        let radix = self.field.size().unwrap_or(4);
        let mut coeffs = Vec::new();
        while i > 0 {
            coeffs.push(self.field.element_at(i % radix).expect("digit below radix"));
            i /= radix;
        }
        self.from_coeffs(coeffs)
    }
}

impl<F: Field> Ring for PolyRing<F> {
    type Elem = Poly<F::Elem>;

    fn describe(&self) -> String {
        format!("{}[x]", self.field.name())
    }

    fn zero(&self) -> Self::Elem {
        Poly { coeffs: Vec::new() }
    }

    fn one(&self) -> Self::Elem {
        self.constant(self.field.one())
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.constant(self.field.from_i64(n))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let n = a.coeffs.len().max(b.coeffs.len());
        let zero = self.field.zero();
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let x = a.coeffs.get(i).unwrap_or(&zero);
            let y = b.coeffs.get(i).unwrap_or(&zero);
            coeffs.push(self.field.add(x, y));
        }
        self.strip(&mut coeffs);
        Poly { coeffs }
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        Poly { coeffs: a.coeffs.iter().map(|c| self.field.neg(c)).collect() }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let mut coeffs = vec![self.field.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if self.field.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                coeffs[i + j] = self.field.add(&coeffs[i + j], &self.field.mul(x, y));
            }
        }
        self.strip(&mut coeffs);
        Poly { coeffs }
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }

    fn is_unit(&self, a: &Self::Elem) -> bool {
        a.degree() == Some(0)
    }

    fn is_regular(&self, a: &Self::Elem) -> bool {
        !a.is_zero()
    }

    fn contains(&self, a: &Self::Elem) -> bool {
        a.coeffs.iter().all(|c| self.field.contains(c)) && a.leading().is_none_or(|c| !self.field.is_zero(c))
    }

    fn canonicalize(&self, a: &Self::Elem) -> Self::Elem {
        self.from_coeffs(a.coeffs.clone())
    }

    fn divide_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        euclid_divide_exact(self, a, b)
    }

    fn bezout(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem, Self::Elem) {
        euclid_bezout(self, a, b)
    }

    fn element_at(&self, i: u64) -> Option<Self::Elem> {
        Some(self.from_digits(i))
    }

    fn format(&self, a: &Self::Elem) -> String {
        if a.is_zero() {
            return "[0]".to_string();
        }
        let parts: Vec<String> = a.coeffs.iter().map(|c| self.field.format(c)).collect();
        format!("[{}]", parts.join(","))
    }

    fn unit_inverse(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.degree() != Some(0) {
            return None;
        }
        self.field.inv(&a.coeffs[0]).map(|c| self.constant(c))
    }
}

impl<F: Field> EuclideanDomain for PolyRing<F> {
    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem) {
        let db = b.degree().expect("division by the zero polynomial");
        let lead_inv = self.field.inv(b.leading().unwrap()).expect("nonzero leading coefficient");
        let mut rem = a.coeffs.clone();
        if rem.len() <= db {
            return (self.zero(), a.clone());
        }
        let mut quot = vec![self.field.zero(); rem.len() - db];
        for k in (0..quot.len()).rev() {
            let c = self.field.mul(&rem[k + db], &lead_inv);
            if self.field.is_zero(&c) {
                continue;
            }
            for (j, bc) in b.coeffs.iter().enumerate() {
                rem[k + j] = self.field.sub(&rem[k + j], &self.field.mul(&c, bc));
            }
            quot[k] = c;
        }
        rem.truncate(db);
        self.strip(&mut rem);
        self.strip(&mut quot);
        (Poly { coeffs: quot }, Poly { coeffs: rem })
    }

    fn normal_form(&self, a: &Self::Elem) -> (Self::Elem, Self::Elem) {
        match a.leading() {
            None => (self.one(), self.zero()),
            Some(lc) => {
                let inv = self.field.inv(lc).expect("nonzero leading coefficient");
                (self.constant(lc.clone()), self.scale(a, &inv))
            }
        }
    }

    fn cmp_size(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering {
        a.coeffs.len().cmp(&b.coeffs.len())
    }

    fn residue_count(&self, m: &Self::Elem) -> Option<BigUint> {
        let q = self.field.size()?;
        Some(BigUint::from(q).pow(m.degree().unwrap_or(0) as u32))
    }

    fn residue_at(&self, m: &Self::Elem, i: u64) -> Self::Elem {
        let x = self.from_digits(i);
        if self.field.size().is_some() {
            x
        } else {
            self.rem(&x, m)
        }
    }

    fn finite_quotient(&self, m: &Self::Elem, caps: &Caps) -> Result<FiniteRing> {
        let p = self.field.size().ok_or(RingError::Infinite)?;
        let count = self.residue_count(m).expect("finite field");
        match count.to_u64() {
            Some(n) if n <= caps.enumeration => {
                let monic = self.associate(m);
                let modulus: Vec<u64> = monic.coeffs.iter().map(|c| self.field.index_of(c).expect("finite field")).collect();
                FiniteRing::polynomials_mod(p, &modulus)
            }
            _ => Err(RingError::TooLarge { size: count.to_string(), cap: caps.enumeration }),
        }
    }

    fn residue_index(&self, _m: &Self::Elem, x: &Self::Elem) -> Option<usize> {
        let q = self.field.size()? as usize;
        let mut idx = 0usize;
        for c in x.coeffs.iter().rev() {
            idx = idx * q + self.field.index_of(c)? as usize;
        }
        Some(idx)
    }
}
