//! Exact coefficient fields: the rationals, or a prime field `F_p`.
//!
//! There is no floating point anywhere in the engine. Characteristic zero
//! uses arbitrary-precision rationals so that binomial coefficients such as
//! `C(2n, n)` never overflow.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A coefficient field, identified by its characteristic (0 or a prime).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawField", into = "RawField")]
pub struct FieldSpec {
    characteristic: u64,
}

#[derive(Serialize, Deserialize)]
struct RawField {
    #[serde(rename = "char")]
    characteristic: u64,
}

impl TryFrom<RawField> for FieldSpec {
    type Error = Error;
    fn try_from(raw: RawField) -> Result<Self> {
        FieldSpec::new(raw.characteristic)
    }
}

impl From<FieldSpec> for RawField {
    fn from(f: FieldSpec) -> Self {
        RawField {
            characteristic: f.characteristic,
        }
    }
}

/// A field element. The variant always matches the owning [`FieldSpec`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular(u64),
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    /// Characteristic 0 (exact rationals) or a prime `p`.
    pub fn new(characteristic: u64) -> Result<Self> {
        if characteristic != 0 && !is_prime(characteristic) {
            return Err(Error::Domain(format!(
                "field characteristic must be 0 or prime, got {characteristic}"
            )));
        }
        if characteristic > u32::MAX as u64 {
            return Err(Error::Unsupported(format!(
                "prime {characteristic} exceeds the supported range (< 2^32)"
            )));
        }
        Ok(FieldSpec { characteristic })
    }

    pub fn rationals() -> Self {
        FieldSpec { characteristic: 0 }
    }

    pub fn f2() -> Self {
        FieldSpec { characteristic: 2 }
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn is_char_two(&self) -> bool {
        self.characteristic == 2
    }

    /// Short label used in catalog ids and reports, e.g. `char0`, `char2`.
    pub fn label(&self) -> String {
        format!("char{}", self.characteristic)
    }

    pub fn zero(&self) -> Scalar {
        match self.characteristic {
            0 => Scalar::Rational(BigRational::zero()),
            _ => Scalar::Modular(0),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self.characteristic {
            0 => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            p => Scalar::Modular(v.rem_euclid(p as i64) as u64),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self.characteristic {
            0 => Scalar::Rational(BigRational::from_integer(v.clone())),
            p => {
                let r = v.mod_floor(&BigInt::from(p));
                Scalar::Modular(r.to_u64().expect("residue fits in u64"))
            }
        }
    }

    /// Maps a rational into this field. Fails if the denominator vanishes mod `p`.
    pub fn from_rational(&self, v: &BigRational) -> Result<Scalar> {
        match self.characteristic {
            0 => Ok(Scalar::Rational(v.clone())),
            _ => {
                let num = self.from_bigint(v.numer());
                let den = self.from_bigint(v.denom());
                let inv = self.inv(&den).ok_or_else(|| {
                    Error::Domain(format!("{v} has a denominator divisible by {}", self.characteristic))
                })?;
                Ok(self.mul(&num, &inv))
            }
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Modular(v) => *v == 0,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            (Scalar::Modular(x), Scalar::Modular(y)) => {
                Scalar::Modular(((*x as u128 + *y as u128) % self.characteristic as u128) as u64)
            }
            _ => panic!("mixed scalar kinds"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Rational(x) => Scalar::Rational(-x),
            Scalar::Modular(0) => Scalar::Modular(0),
            Scalar::Modular(x) => Scalar::Modular(self.characteristic - x),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            (Scalar::Modular(x), Scalar::Modular(y)) => {
                Scalar::Modular(((*x as u128 * *y as u128) % self.characteristic as u128) as u64)
            }
            _ => panic!("mixed scalar kinds"),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if self.is_zero(a) {
            return None;
        }
        match a {
            Scalar::Rational(x) => Some(Scalar::Rational(x.recip())),
            Scalar::Modular(x) => {
                let p = self.characteristic as i128;
                let g = (*x as i128).extended_gcd(&p);
                Some(Scalar::Modular(g.x.rem_euclid(p) as u64))
            }
        }
    }

    /// `(-1)^k` as a field element.
    pub fn sign(&self, negative: bool) -> Scalar {
        if negative {
            self.from_i64(-1)
        } else {
            self.one()
        }
    }

    /// Integer value of a scalar when it is an integer (char 0) or its
    /// least non-negative residue (char p).
    pub fn to_bigint(&self, a: &Scalar) -> Option<BigInt> {
        match a {
            Scalar::Rational(x) if x.is_integer() => Some(x.to_integer()),
            Scalar::Rational(_) => None,
            Scalar::Modular(v) => Some(BigInt::from(*v)),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.characteristic {
            0 => write!(f, "Q"),
            p => write!(f, "F{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `char0`, `char=2`, `char2`, `0`, `2`, `Q`, `F2`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let digits = t
            .strip_prefix("char=")
            .or_else(|| t.strip_prefix("char"))
            .or_else(|| t.strip_prefix('F'))
            .unwrap_or(t);
        if t == "Q" || t == "R" {
            return Ok(FieldSpec::rationals());
        }
        let c: u64 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("cannot read field from {s:?}")))?;
        FieldSpec::new(c)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Modular(v) => write!(f, "{v}"),
        }
    }
}

impl Scalar {
    /// True for a negative rational; residues are never negative.
    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_negative())
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Modular(v) => *v == 1,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composite_characteristic() {
        assert!(FieldSpec::new(4).is_err());
        assert!(FieldSpec::new(1).is_err());
        assert!(FieldSpec::new(7).is_ok());
        assert!(FieldSpec::new(0).is_ok());
    }

    #[test]
    fn modular_inverse() {
        let f = FieldSpec::new(7).unwrap();
        for v in 1..7 {
            let a = f.from_i64(v);
            let inv = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &inv), f.one());
        }
        assert!(f.inv(&f.zero()).is_none());
    }

    #[test]
    fn negative_one_in_char_two_is_one() {
        let f = FieldSpec::f2();
        assert_eq!(f.from_i64(-1), f.one());
        assert_eq!(f.from_i64(-2), f.zero());
    }

    #[test]
    fn parse_labels() {
        assert_eq!("char2".parse::<FieldSpec>().unwrap(), FieldSpec::f2());
        assert_eq!("char=0".parse::<FieldSpec>().unwrap(), FieldSpec::rationals());
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::rationals());
        assert!("char9".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn serde_shape() {
        let s = serde_json::to_string(&FieldSpec::f2()).unwrap();
        assert_eq!(s, r#"{"char":2}"#);
        let back: FieldSpec = serde_json::from_str(&s).unwrap();
        assert_eq!(back, FieldSpec::f2());
        assert!(serde_json::from_str::<FieldSpec>(r#"{"char":6}"#).is_err());
    }
}
