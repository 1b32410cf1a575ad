//! Exact scalar fields: GF(2), GF(p) and the rationals.

use std::fmt;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Runtime tag identifying a field, as written in the matrix text format.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Gf2,
    Gfp(u64),
    Rationals,
}

impl FieldSpec {
    pub fn parse(token: &str) -> Result<Self> {
        match token {
            "f2" => Ok(FieldSpec::Gf2),
            "q" => Ok(FieldSpec::Rationals),
            _ => {
                let p = token
                    .strip_prefix("fp:")
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| Error::Parse {
                        line: 1,
                        msg: format!("unknown field `{token}` (expected f2, fp:<p> or q)"),
                    })?;
                Gfp::new(p)?;
                Ok(FieldSpec::Gfp(p))
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Gf2 => write!(f, "f2"),
            FieldSpec::Gfp(p) => write!(f, "fp:{p}"),
            FieldSpec::Rationals => write!(f, "q"),
        }
    }
}

/// A field with exact arithmetic. Field values are cheap handles; element
/// operations go through the field so that GF(p) can carry its modulus.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// Whether `a` is a canonical element of this field.
    fn contains(&self, a: &Self::Elem) -> bool;
    fn parse_elem(&self, s: &str) -> Result<Self::Elem>;
    fn format_elem(&self, a: &Self::Elem) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `a - c * b`, the elimination step.
    fn sub_mul(&self, a: &Self::Elem, c: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.sub(a, &self.mul(c, b))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Gf2;

impl Field for Gf2 {
    type Elem = bool;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Gf2
    }
    #[inline]
    fn zero(&self) -> bool {
        false
    }
    #[inline]
    fn one(&self) -> bool {
        true
    }
    #[inline]
    fn is_zero(&self, a: &bool) -> bool {
        !*a
    }
    #[inline]
    fn add(&self, a: &bool, b: &bool) -> bool {
        a ^ b
    }
    #[inline]
    fn sub(&self, a: &bool, b: &bool) -> bool {
        a ^ b
    }
    #[inline]
    fn mul(&self, a: &bool, b: &bool) -> bool {
        a & b
    }
    #[inline]
    fn neg(&self, a: &bool) -> bool {
        *a
    }
    #[inline]
    fn inv(&self, a: &bool) -> Option<bool> {
        a.then_some(true)
    }
    fn from_i64(&self, v: i64) -> bool {
        v.rem_euclid(2) == 1
    }
    fn contains(&self, _a: &bool) -> bool {
        true
    }
    fn parse_elem(&self, s: &str) -> Result<bool> {
        match s {
            "0" => Ok(false),
            "1" => Ok(true),
            _ => Err(Error::InvalidEntry(format!("`{s}` is not an element of f2"))),
        }
    }
    fn format_elem(&self, a: &bool) -> String {
        if *a { "1" } else { "0" }.to_string()
    }
}

/// Prime field GF(p). The modulus is checked for primality at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gfp {
    p: u64,
}

impl Gfp {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(Gfp { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for Gfp {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Gfp(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.p as u128 - *b as u128) % self.p as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| self.pow(*a, self.p - 2))
    }
    fn from_i64(&self, v: i64) -> u64 {
        (v as i128).rem_euclid(self.p as i128) as u64
    }
    fn contains(&self, a: &u64) -> bool {
        *a < self.p
    }
    fn parse_elem(&self, s: &str) -> Result<u64> {
        let bad = || Error::InvalidEntry(format!("`{s}` is not an element of fp:{}", self.p));
        let int = |t: &str| -> Result<u64> {
            let v: BigInt = t.parse().map_err(|_| bad())?;
            let p = BigInt::from(self.p);
            Ok(((v % &p + &p) % &p).to_u64().expect("reduced below modulus"))
        };
        match s.split_once('/') {
            None => int(s),
            Some((a, b)) => {
                let den = self.inv(&int(b)?).ok_or_else(bad)?;
                Ok(self.mul(&int(a)?, &den))
            }
        }
    }
    fn format_elem(&self, a: &u64) -> String {
        a.to_string()
    }
}

/// The rationals with arbitrary-precision numerator and denominator.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn contains(&self, a: &BigRational) -> bool {
        // BigRational keeps itself reduced with a positive denominator.
        a.denom().is_positive()
    }
    fn parse_elem(&self, s: &str) -> Result<BigRational> {
        let bad = || Error::InvalidEntry(format!("`{s}` is not a rational"));
        match s.split_once('/') {
            None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
            Some((a, b)) => {
                let num: BigInt = a.parse().map_err(|_| bad())?;
                let den: BigInt = b.parse().map_err(|_| bad())?;
                if den.is_zero() {
                    return Err(bad());
                }
                Ok(BigRational::new(num, den))
            }
        }
    }
    fn format_elem(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
}
