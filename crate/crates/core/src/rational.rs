//! Exact rational helpers shared by every module.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `2^e` for any signed exponent.
pub fn pow2(e: i64) -> Rational {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

pub fn to_f64(v: &Rational) -> f64 {
    v.to_f64().unwrap_or_else(|| {
        if v.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Exact `x^p` for `x >= 0` and `p > 0`, when the result is rational.
pub fn pow_exact(x: &Rational, p: &Rational) -> Option<Rational> {
    debug_assert!(!x.is_negative() && p.is_positive());
    if x.is_zero() {
        return Some(Rational::zero());
    }
    let a = p.numer().to_u32()?;
    let b = p.denom().to_u32()?;
    let powered = num_traits::pow(x.clone(), a as usize);
    let root = |v: &BigInt| {
        let r = v.nth_root(b);
        (num_traits::pow(r.clone(), b as usize) == *v).then_some(r)
    };
    Some(Rational::new(root(powered.numer())?, root(powered.denom())?))
}

pub fn pow_f64(x: &Rational, p: &Rational) -> f64 {
    to_f64(x).powf(to_f64(p))
}

/// Reads a rational from `"a/b"`, an integer or a finite decimal literal.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    if let Some((n, d)) = text.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    if let Ok(n) = text.parse::<BigInt>() {
        return Ok(Rational::from_integer(n));
    }
    let (mantissa, exponent) = match text.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i64>().map_err(|_| bad())?),
        None => (text, 0),
    };
    let (whole, frac) = mantissa.split_once('.').ok_or_else(bad)?;
    let digits: BigInt = format!("{whole}{frac}").parse().map_err(|_| bad())?;
    let scale = exponent - frac.len() as i64;
    let ten = Rational::from_integer(BigInt::from(10));
    let factor = if scale >= 0 {
        num_traits::pow(ten, scale as usize)
    } else {
        num_traits::pow(ten, scale.unsigned_abs() as usize).recip()
    };
    Ok(Rational::from_integer(digits) * factor)
}

/// Wire form `{num, den}` of a rational.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalRepr {
    pub num: i128,
    pub den: i128,
}

impl RationalRepr {
    pub fn from_rational(v: &Rational) -> Result<Self> {
        let overflow = || Error::Domain(format!("{v} does not fit the {{num, den}} wire form"));
        Ok(Self {
            num: v.numer().to_i128().ok_or_else(overflow)?,
            den: v.denom().to_i128().ok_or_else(overflow)?,
        })
    }

    pub fn to_rational(&self) -> Result<Rational> {
        if self.den == 0 {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(Rational::new(BigInt::from(self.num), BigInt::from(self.den)))
    }
}
