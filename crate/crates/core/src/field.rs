//! Exact scalar arithmetic over a prime field F_q or the rationals.
//!
//! Prime field elements are canonical residues in `[0, q)` held in machine
//! words with widened intermediates; rationals are arbitrary-precision reduced
//! fractions with positive denominator. No floating point anywhere.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// The coefficient domain shared by every value of a computation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FieldContext {
    Prime(u64),
    Rationals,
}

/// A scalar in canonical form: a residue for prime contexts, a reduced
/// fraction for the rationals. Equality is representational equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum FieldValue {
    Residue(u64),
    Rational(BigRational),
}

fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    if q % 2 == 0 {
        return q == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map_or(false, |dd| dd <= q) {
        if q % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldContext {
    /// Prime field context; the modulus is verified by trial division.
    pub fn prime(q: u64) -> Result<Self> {
        if is_prime(q) {
            Ok(FieldContext::Prime(q))
        } else {
            Err(Error::NotPrime(q))
        }
    }

    pub fn rationals() -> Self {
        FieldContext::Rationals
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            FieldContext::Prime(q) => Some(*q),
            FieldContext::Rationals => None,
        }
    }

    fn check(&self, v: &FieldValue) -> Result<()> {
        match (self, v) {
            (FieldContext::Prime(_), FieldValue::Residue(_)) => Ok(()),
            (FieldContext::Rationals, FieldValue::Rational(_)) => Ok(()),
            _ => Err(Error::MixedContexts),
        }
    }

    pub fn zero(&self) -> FieldValue {
        match self {
            FieldContext::Prime(_) => FieldValue::Residue(0),
            FieldContext::Rationals => FieldValue::Rational(BigRational::zero()),
        }
    }

    pub fn one(&self) -> FieldValue {
        match self {
            FieldContext::Prime(_) => FieldValue::Residue(1),
            FieldContext::Rationals => FieldValue::Rational(BigRational::one()),
        }
    }

    pub fn from_i64(&self, n: i64) -> FieldValue {
        match self {
            FieldContext::Prime(q) => {
                let r = n.rem_euclid(*q as i64) as u64;
                FieldValue::Residue(r)
            }
            FieldContext::Rationals => {
                FieldValue::Rational(BigRational::from_integer(BigInt::from(n)))
            }
        }
    }

    pub fn is_zero(&self, a: &FieldValue) -> bool {
        match a {
            FieldValue::Residue(r) => *r == 0,
            FieldValue::Rational(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self, a: &FieldValue) -> bool {
        match a {
            FieldValue::Residue(r) => *r == 1,
            FieldValue::Rational(r) => r.is_one(),
        }
    }

    pub fn add(&self, a: &FieldValue, b: &FieldValue) -> Result<FieldValue> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (self, a, b) {
            (FieldContext::Prime(q), FieldValue::Residue(x), FieldValue::Residue(y)) => {
                FieldValue::Residue(((*x as u128 + *y as u128) % *q as u128) as u64)
            }
            (_, FieldValue::Rational(x), FieldValue::Rational(y)) => FieldValue::Rational(x + y),
            _ => unreachable!(),
        })
    }

    pub fn sub(&self, a: &FieldValue, b: &FieldValue) -> Result<FieldValue> {
        let nb = self.neg(b)?;
        self.add(a, &nb)
    }

    pub fn neg(&self, a: &FieldValue) -> Result<FieldValue> {
        self.check(a)?;
        Ok(match (self, a) {
            (FieldContext::Prime(q), FieldValue::Residue(x)) => {
                FieldValue::Residue(if *x == 0 { 0 } else { q - x })
            }
            (_, FieldValue::Rational(x)) => FieldValue::Rational(-x),
            _ => unreachable!(),
        })
    }

    pub fn mul(&self, a: &FieldValue, b: &FieldValue) -> Result<FieldValue> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (self, a, b) {
            (FieldContext::Prime(q), FieldValue::Residue(x), FieldValue::Residue(y)) => {
                FieldValue::Residue(((*x as u128 * *y as u128) % *q as u128) as u64)
            }
            (_, FieldValue::Rational(x), FieldValue::Rational(y)) => FieldValue::Rational(x * y),
            _ => unreachable!(),
        })
    }

    pub fn inv(&self, a: &FieldValue) -> Result<FieldValue> {
        self.check(a)?;
        if self.is_zero(a) {
            return Err(Error::ZeroInversion);
        }
        Ok(match (self, a) {
            (FieldContext::Prime(q), FieldValue::Residue(x)) => {
                FieldValue::Residue(mod_pow(*x, q - 2, *q))
            }
            (_, FieldValue::Rational(x)) => FieldValue::Rational(x.recip()),
            _ => unreachable!(),
        })
    }

    pub fn div(&self, a: &FieldValue, b: &FieldValue) -> Result<FieldValue> {
        let ib = self.inv(b)?;
        self.mul(a, &ib)
    }

    pub fn pow(&self, a: &FieldValue, e: u32) -> Result<FieldValue> {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base)?;
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// Parses an integer (any sign, reduced mod q for prime contexts) or a
    /// fraction `a/b` (rationals only).
    pub fn parse(&self, s: &str) -> Result<FieldValue> {
        let s = s.trim();
        match self {
            FieldContext::Prime(_) => {
                let n = i64::from_str(s)
                    .map_err(|_| Error::ParseError(format!("invalid residue `{s}`")))?;
                Ok(self.from_i64(n))
            }
            FieldContext::Rationals => {
                if let Some((num, den)) = s.split_once('/') {
                    let n = BigInt::from_str(num.trim())
                        .map_err(|_| Error::ParseError(format!("invalid numerator `{num}`")))?;
                    let d = BigInt::from_str(den.trim())
                        .map_err(|_| Error::ParseError(format!("invalid denominator `{den}`")))?;
                    if d.is_zero() {
                        return Err(Error::ParseError(format!("zero denominator in `{s}`")));
                    }
                    Ok(FieldValue::Rational(BigRational::new(n, d)))
                } else {
                    let n = BigInt::from_str(s)
                        .map_err(|_| Error::ParseError(format!("invalid integer `{s}`")))?;
                    Ok(FieldValue::Rational(BigRational::from_integer(n)))
                }
            }
        }
    }
}

fn mod_pow(mut base: u64, mut exp: u64, q: u64) -> u64 {
    let mut acc = 1u64;
    base %= q;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % q as u128) as u64;
        }
        base = ((base as u128 * base as u128) % q as u128) as u64;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for FieldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldValue::Residue(r) => write!(f, "{r}"),
            FieldValue::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Independent naive implementation used as the oracle for small fields.
    fn naive_mul(a: u64, b: u64, q: u64) -> u64 {
        let mut acc = 0u64;
        for _ in 0..b {
            acc = (acc + a) % q;
        }
        acc
    }

    fn naive_add(a: u64, b: u64, q: u64) -> u64 {
        (a + b) % q
    }

    fn naive_inv(a: u64, q: u64) -> Option<u64> {
        (1..q).find(|&x| naive_mul(a, x, q) == 1)
    }

    #[test]
    fn primality_gate() {
        assert!(FieldContext::prime(2).is_ok());
        assert!(FieldContext::prime(65521).is_ok());
        for bad in [0, 1, 4, 9, 15, 65520] {
            assert!(matches!(FieldContext::prime(bad), Err(Error::NotPrime(_))));
        }
    }

    #[test]
    fn inv_in_f5() {
        let f5 = FieldContext::prime(5).unwrap();
        let two = f5.from_i64(2);
        assert_eq!(f5.inv(&two).unwrap(), f5.from_i64(3));
    }

    #[test]
    fn rational_add() {
        let q = FieldContext::rationals();
        let half = q.parse("1/2").unwrap();
        let third = q.parse("1/3").unwrap();
        assert_eq!(q.add(&half, &third).unwrap(), q.parse("5/6").unwrap());
    }

    #[test]
    fn f7_product() {
        let f7 = FieldContext::prime(7).unwrap();
        let r = f7.mul(&f7.from_i64(4), &f7.from_i64(5)).unwrap();
        assert_eq!(r, f7.from_i64(6));
    }

    #[test]
    fn exhaustive_against_naive_small_fields() {
        for q in [2u64, 3, 5, 7, 11] {
            let ctx = FieldContext::prime(q).unwrap();
            for a in 0..q {
                for b in 0..q {
                    let va = FieldValue::Residue(a);
                    let vb = FieldValue::Residue(b);
                    assert_eq!(
                        ctx.add(&va, &vb).unwrap(),
                        FieldValue::Residue(naive_add(a, b, q))
                    );
                    assert_eq!(
                        ctx.mul(&va, &vb).unwrap(),
                        FieldValue::Residue(naive_mul(a, b, q))
                    );
                }
                if a != 0 {
                    let inv = ctx.inv(&FieldValue::Residue(a)).unwrap();
                    assert_eq!(inv, FieldValue::Residue(naive_inv(a, q).unwrap()));
                }
            }
        }
    }

    #[test]
    fn zero_inversion_rejected() {
        let f5 = FieldContext::prime(5).unwrap();
        assert!(matches!(f5.inv(&f5.zero()), Err(Error::ZeroInversion)));
        let q = FieldContext::rationals();
        assert!(matches!(q.inv(&q.zero()), Err(Error::ZeroInversion)));
    }

    #[test]
    fn mixed_contexts_rejected() {
        let f5 = FieldContext::prime(5).unwrap();
        let q = FieldContext::rationals();
        let r = f5.add(&f5.one(), &q.one());
        assert!(matches!(r, Err(Error::MixedContexts)));
    }

    #[test]
    fn canonical_form_is_unique() {
        let q = FieldContext::rationals();
        assert_eq!(q.parse("2/4").unwrap(), q.parse("1/2").unwrap());
        assert_eq!(q.parse("-1/2").unwrap(), q.parse("1/-2").unwrap());
        let f7 = FieldContext::prime(7).unwrap();
        assert_eq!(f7.from_i64(-1), f7.from_i64(6));
    }
}
