//! Text and JSON encodings of rings, elements and matrices.
//!
//! Ring grammar: `Z`, `Q[x]`, `F<p>[x]`, `Z/<n>`, `F<p>[x]/<poly>` and
//! `Q[x]/<poly>`, where polynomials are coefficient lists, low degree first
//! (`[1,0,1]` is `1 + x^2`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Result, RingError};
use crate::instances::{make_quotient, Integers, Poly, PolyRing, PrimeField, Quotient, Rationals};
use crate::matrix::Matrix;
use crate::ring::{EuclideanDomain, Ring};

fn parse_err(what: &str, input: &str) -> RingError {
    RingError::Parse(format!("invalid {what}: {input:?}"))
}

pub fn parse_integer(s: &str) -> Result<BigInt> {
    s.trim().parse::<BigInt>().map_err(|_| parse_err("integer", s))
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_integer(d)?;
            if d.is_zero() {
                return Err(parse_err("rational", s));
            }
            Ok(BigRational::new(parse_integer(n)?, d))
        }
        None => Ok(BigRational::from_integer(parse_integer(s)?)),
    }
}

/// Splits `[a,b,c]` into trimmed items.
fn list_items(s: &str) -> Result<Vec<&str>> {
    let inner = s.trim().strip_prefix('[').and_then(|t| t.strip_suffix(']')).ok_or_else(|| parse_err("coefficient list", s))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    Ok(inner.split(',').map(str::trim).collect())
}

fn json_scalar(v: &Value) -> Result<String> {
    match v {
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string()),
        Value::String(s) => Ok(s.clone()),
        other => Err(parse_err("scalar", &other.to_string())),
    }
}

fn int_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

/// Parsing and serialization of elements.
pub trait ElementCodec: Ring {
    fn parse_elem(&self, s: &str) -> Result<Self::Elem>;
    fn elem_from_json(&self, v: &Value) -> Result<Self::Elem>;
    fn elem_to_json(&self, a: &Self::Elem) -> Value;
}

impl ElementCodec for Integers {
    fn parse_elem(&self, s: &str) -> Result<BigInt> {
        parse_integer(s)
    }

    fn elem_from_json(&self, v: &Value) -> Result<BigInt> {
        parse_integer(&json_scalar(v)?)
    }

    fn elem_to_json(&self, a: &BigInt) -> Value {
        int_json(a)
    }
}

impl ElementCodec for PolyRing<PrimeField> {
    fn parse_elem(&self, s: &str) -> Result<Poly<u64>> {
        let coeffs =
            list_items(s)?.into_iter().map(|c| parse_integer(c).map(|n| reduce_mod(&n, self.field().modulus()))).collect::<Result<_>>()?;
        Ok(self.from_coeffs(coeffs))
    }

    fn elem_from_json(&self, v: &Value) -> Result<Poly<u64>> {
        let p = self.field().modulus();
        match v {
            Value::Array(items) => {
                let coeffs = items.iter().map(|c| parse_integer(&json_scalar(c)?).map(|n| reduce_mod(&n, p))).collect::<Result<_>>()?;
                Ok(self.from_coeffs(coeffs))
            }
            Value::String(s) => self.parse_elem(s),
            other => Ok(self.constant(reduce_mod(&parse_integer(&json_scalar(other)?)?, p))),
        }
    }

    fn elem_to_json(&self, a: &Poly<u64>) -> Value {
        Value::Array(coeff_list(a.coeffs().iter().map(|&c| Value::from(c))))
    }
}

fn reduce_mod(n: &BigInt, p: u64) -> u64 {
    let p = BigInt::from(p);
    (((n % &p) + &p) % &p).to_u64().expect("residue fits")
}

fn coeff_list(items: impl Iterator<Item = Value>) -> Vec<Value> {
    let v: Vec<Value> = items.collect();
    if v.is_empty() {
        vec![Value::from(0)]
    } else {
        v
    }
}

impl ElementCodec for PolyRing<Rationals> {
    fn parse_elem(&self, s: &str) -> Result<Poly<BigRational>> {
        let coeffs = list_items(s)?.into_iter().map(parse_rational).collect::<Result<_>>()?;
        Ok(self.from_coeffs(coeffs))
    }

    fn elem_from_json(&self, v: &Value) -> Result<Poly<BigRational>> {
        match v {
            Value::Array(items) => {
                let coeffs = items.iter().map(|c| parse_rational(&json_scalar(c)?)).collect::<Result<_>>()?;
                Ok(self.from_coeffs(coeffs))
            }
            Value::String(s) if s.trim_start().starts_with('[') => self.parse_elem(s),
            other => Ok(self.constant(parse_rational(&json_scalar(other)?)?)),
        }
    }

    fn elem_to_json(&self, a: &Poly<BigRational>) -> Value {
        Value::Array(coeff_list(a.coeffs().iter().map(|c| if c.is_integer() { int_json(c.numer()) } else { Value::String(c.to_string()) })))
    }
}

impl<R: EuclideanDomain + ElementCodec> ElementCodec for Quotient<R> {
    fn parse_elem(&self, s: &str) -> Result<R::Elem> {
        Ok(self.reduce(&self.base().parse_elem(s)?))
    }

    fn elem_from_json(&self, v: &Value) -> Result<R::Elem> {
        Ok(self.reduce(&self.base().elem_from_json(v)?))
    }

    fn elem_to_json(&self, a: &R::Elem) -> Value {
        self.base().elem_to_json(a)
    }
}

/// A ring chosen at run time.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyRing {
    Z(Integers),
    Fp(PolyRing<PrimeField>),
    Qx(PolyRing<Rationals>),
    Zn(Quotient<Integers>),
    FpMod(Quotient<PolyRing<PrimeField>>),
    QxMod(Quotient<PolyRing<Rationals>>),
}

/// Runs `$body` with `$r` bound to the concrete ring, for every variant.
#[macro_export]
macro_rules! with_any_ring {
    ($any:expr, $r:ident => $body:expr) => {
        match $any {
            $crate::codec::AnyRing::Z($r) => $body,
            $crate::codec::AnyRing::Fp($r) => $body,
            $crate::codec::AnyRing::Qx($r) => $body,
            $crate::codec::AnyRing::Zn($r) => $body,
            $crate::codec::AnyRing::FpMod($r) => $body,
            $crate::codec::AnyRing::QxMod($r) => $body,
        }
    };
}

/// Runs `$body` for the Euclidean domains `Z`, `F_p[x]`, `Q[x]`; quotients
/// evaluate `$other` instead.
#[macro_export]
macro_rules! with_domain {
    ($any:expr, $r:ident => $body:expr, $q:ident => $other:expr) => {
        match $any {
            $crate::codec::AnyRing::Z($r) => $body,
            $crate::codec::AnyRing::Fp($r) => $body,
            $crate::codec::AnyRing::Qx($r) => $body,
            $q @ ($crate::codec::AnyRing::Zn(_) | $crate::codec::AnyRing::FpMod(_) | $crate::codec::AnyRing::QxMod(_)) => $other,
        }
    };
}

impl AnyRing {
    pub fn describe(&self) -> String {
        with_any_ring!(self, r => r.describe())
    }

    pub fn is_quotient(&self) -> bool {
        matches!(self, AnyRing::Zn(_) | AnyRing::FpMod(_) | AnyRing::QxMod(_))
    }
}

fn parse_prime_poly_ring(s: &str) -> Result<Option<PolyRing<PrimeField>>> {
    let Some(rest) = s.strip_prefix('F') else { return Ok(None) };
    let Some(p) = rest.strip_suffix("[x]") else { return Ok(None) };
    let p: u64 = p.parse().map_err(|_| parse_err("field characteristic", p))?;
    Ok(Some(PolyRing::new(PrimeField::new(p)?)))
}

/// Parses the ring grammar.
pub fn parse_ring(s: &str) -> Result<AnyRing> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let (base, modulus) = match s.split_once('/') {
        Some((b, m)) => (b, Some(m)),
        None => (s.as_str(), None),
    };
    let ring = match (base, modulus) {
        ("Z", None) => AnyRing::Z(Integers),
        ("Z", Some(m)) => AnyRing::Zn(make_quotient(Integers, &parse_integer(m)?)?),
        ("Q[x]", None) => AnyRing::Qx(PolyRing::new(Rationals)),
        ("Q[x]", Some(m)) => {
            let base = PolyRing::new(Rationals);
            let m = base.parse_elem(m)?;
            AnyRing::QxMod(make_quotient(base, &m)?)
        }
        (b, m) => {
            let base = parse_prime_poly_ring(b)?.ok_or_else(|| parse_err("ring", &s))?;
            match m {
                None => AnyRing::Fp(base),
                Some(m) => {
                    let m = base.parse_elem(m)?;
                    AnyRing::FpMod(make_quotient(base, &m)?)
                }
            }
        }
    };
    Ok(ring)
}

/// Reads a matrix from rows of JSON entries and checks its shape.
pub fn matrix_from_json<R: ElementCodec>(ring: &R, v: &Value) -> Result<Matrix<R::Elem>> {
    let rows = v.as_array().ok_or_else(|| parse_err("matrix", &v.to_string()))?;
    let rows: Vec<Vec<R::Elem>> = rows
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| parse_err("matrix row", &row.to_string()))?
                .iter()
                .map(|x| ring.elem_from_json(x).map(|e| ring.canonicalize(&e)))
                .collect()
        })
        .collect::<Result<_>>()?;
    Matrix::from_rows(rows)
}

pub fn matrix_to_json<R: ElementCodec>(ring: &R, m: &Matrix<R::Elem>) -> Value {
    Value::Array(m.to_rows().iter().map(|row| Value::Array(row.iter().map(|x| ring.elem_to_json(x)).collect())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_grammar() {
        assert_eq!(parse_ring("Z").unwrap().describe(), "Z");
        assert_eq!(parse_ring("Z/12").unwrap().describe(), "Z/12");
        assert_eq!(parse_ring("Z/-12").unwrap().describe(), "Z/12");
        assert_eq!(parse_ring("F5[x]").unwrap().describe(), "F5[x]");
        assert_eq!(parse_ring("F2[x]/[0,1,1]").unwrap().describe(), "F2[x]/[0,1,1]");
        assert_eq!(parse_ring("Q[x]").unwrap().describe(), "Q[x]");
        assert_eq!(parse_ring("Q[x]/[2,0,2]").unwrap().describe(), "Q[x]/[1,0,1]");
        assert!(matches!(parse_ring("Z/1"), Err(RingError::UnitModulus)));
        assert!(matches!(parse_ring("Z/0"), Err(RingError::ZeroModulus)));
        assert!(parse_ring("F4[x]").is_err());
        assert!(parse_ring("R").is_err());
    }

    #[test]
    fn element_round_trips() {
        let f5 = PolyRing::new(PrimeField::new(5).unwrap());
        let x = f5.parse_elem("[1, -1, 0]").unwrap();
        assert_eq!(f5.format(&x), "[1,4]");
        assert_eq!(f5.elem_to_json(&x), serde_json::json!([1, 4]));
        assert_eq!(f5.elem_to_json(&f5.zero()), serde_json::json!([0]));
        let q = PolyRing::new(Rationals);
        let y = q.parse_elem("[1/2, 3]").unwrap();
        assert_eq!(q.elem_to_json(&y), serde_json::json!(["1/2", 3]));
        assert_eq!(q.elem_from_json(&q.elem_to_json(&y)).unwrap(), y);
        let big = Integers.parse_elem("123456789012345678901234567890").unwrap();
        assert_eq!(Integers.elem_from_json(&Integers.elem_to_json(&big)).unwrap(), big);
        let z12 = make_quotient(Integers, &BigInt::from(12)).unwrap();
        assert_eq!(z12.parse_elem("-1").unwrap(), BigInt::from(11));
    }

    #[test]
    fn matrices() {
        let m = matrix_from_json(&Integers, &serde_json::json!([[2, 0], [1, "3"]])).unwrap();
        assert_eq!(matrix_to_json(&Integers, &m), serde_json::json!([[2, 0], [1, 3]]));
        assert!(matrix_from_json(&Integers, &serde_json::json!([[1, 2], [3]])).is_err());
        assert!(matrix_from_json(&Integers, &serde_json::json!([])).is_err());
    }
}
