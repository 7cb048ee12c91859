//! Values in ℚ ∪ {∞}.
//!
//! An [`ExtRational`] is a reduced pair `num/den` with `den ≥ 0`. The point at
//! infinity is stored as `1/0`, so that `-1/0` and `1/0` coincide after
//! normalization.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtRational {
    num: BigInt,
    den: BigInt,
}

impl ExtRational {
    /// Reduces `num/den` to canonical form. Any `a/0` with `a ≠ 0` becomes `∞`.
    pub fn normalize(num: BigInt, den: BigInt) -> Result<Self> {
        if num.is_zero() && den.is_zero() {
            return Err(Error::UndefinedFraction);
        }
        if den.is_zero() {
            return Ok(Self::infinity());
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num / &g, den / &g);
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        Ok(Self { num, den })
    }

    pub fn infinity() -> Self {
        Self { num: BigInt::one(), den: BigInt::zero() }
    }

    pub fn zero() -> Self {
        Self { num: BigInt::zero(), den: BigInt::one() }
    }

    pub fn from_integer(k: impl Into<BigInt>) -> Self {
        Self { num: k.into(), den: BigInt::one() }
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn is_infinite(&self) -> bool {
        self.den.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `x + k`, with `∞ + k = ∞`.
    pub fn add_int(&self, k: &BigInt) -> Self {
        if self.is_infinite() {
            return Self::infinity();
        }
        // gcd(num + k·den, den) = gcd(num, den) = 1, no reduction needed
        Self { num: &self.num + k * &self.den, den: self.den.clone() }
    }

    /// `1/x`, with `1/0 = ∞` and `1/∞ = 0`.
    pub fn reciprocal(&self) -> Self {
        if self.is_infinite() {
            return Self::zero();
        }
        if self.is_zero() {
            return Self::infinity();
        }
        let (num, den) = if self.num.is_negative() {
            (-&self.den, -&self.num)
        } else {
            (self.den.clone(), self.num.clone())
        };
        Self { num, den }
    }

    /// `-x`, with `-∞ = ∞`.
    pub fn negate(&self) -> Self {
        if self.is_infinite() {
            return Self::infinity();
        }
        Self { num: -&self.num, den: self.den.clone() }
    }

    pub fn abs(&self) -> Self {
        Self { num: self.num.abs(), den: self.den.clone() }
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "inf")
        } else if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for ExtRational {
    type Err = Error;

    /// Accepts `p/q`, a bare integer `p`, or `inf`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t == "∞" {
            return Ok(Self::infinity());
        }
        let offset = s.len() - s.trim_start().len();
        let parse = |part: &str, at: usize| -> Result<BigInt> {
            part.trim().parse::<BigInt>().map_err(|_| Error::Syntax {
                pos: at,
                msg: format!("expected an integer, found {:?}", part.trim()),
            })
        };
        match t.split_once('/') {
            Some((p, q)) => {
                let num = parse(p, offset)?;
                let den = parse(q, offset + p.len() + 1)?;
                Self::normalize(num, den)
            }
            None => Ok(Self::from_integer(parse(t, offset)?)),
        }
    }
}
