//! Rational tangles as fraction classes and Krebes pairs.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::conway::ConwaySeq;
use crate::error::{Error, Result};
use crate::extfrac::ExtRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalTangle {
    fraction: ExtRational,
    witness: Option<ConwaySeq>,
}

impl RationalTangle {
    pub fn from_fraction(fraction: ExtRational) -> Self {
        Self { fraction, witness: None }
    }

    /// The tangle `C(a_1, …, a_n)`, keeping `a` as its witness.
    pub fn from_conway(a: ConwaySeq) -> Self {
        Self { fraction: a.tangle_fraction(), witness: Some(a) }
    }

    pub fn fraction(&self) -> &ExtRational {
        &self.fraction
    }

    pub fn witness(&self) -> Option<&ConwaySeq> {
        self.witness.as_ref()
    }

    pub fn is_trivial(&self) -> bool {
        self.fraction.is_zero()
    }

    /// Isotopy of rational tangles is equality of fractions.
    pub fn is_isotopic(&self, other: &Self) -> bool {
        self.fraction == other.fraction
    }
}

/// An unreduced pair `(a, b)` taken modulo `(a, b) ~ (-a, -b)`.
///
/// `|a|` and `|b|` are the determinants of the numerator and denominator
/// closures of the tangle. Pairs are never divided by their gcd.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KrebesPair {
    a: BigInt,
    b: BigInt,
}

impl KrebesPair {
    pub fn new(a: BigInt, b: BigInt) -> Result<Self> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::DegenerateSum);
        }
        let flip = a.is_negative() || (a.is_zero() && b.is_negative());
        Ok(if flip { Self { a: -a, b: -b } } else { Self { a, b } })
    }

    pub fn from_i64(a: i64, b: i64) -> Result<Self> {
        Self::new(a.into(), b.into())
    }

    pub fn numerator(&self) -> &BigInt {
        &self.a
    }

    pub fn denominator(&self) -> &BigInt {
        &self.b
    }

    /// Appending a twist `m` to the generating sequence: `(a, b) ↦ (m·a + b, a)`.
    pub fn extend(&self, m: &BigInt) -> Self {
        Self::new(m * &self.a + &self.b, self.a.clone()).expect("unimodular step keeps the pair nonzero")
    }

    pub fn to_fraction(&self) -> ExtRational {
        ExtRational::normalize(self.a.clone(), self.b.clone()).expect("pair is nonzero")
    }
}

impl fmt::Display for KrebesPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// Runs the iterated-fraction recursion on pairs without reduction.
pub fn krebes_of_sequence(w: &ConwaySeq) -> KrebesPair {
    let e = w.entries();
    let start = KrebesPair::new(e[0].clone(), 1.into()).expect("b = 1");
    e[1..].iter().fold(start, |acc, m| acc.extend(m))
}

/// Tangle sum: `(a, b) ⊕ (c, d) = (a·d + b·c, b·d)`.
pub fn krebes_sum(x: &KrebesPair, y: &KrebesPair) -> Result<KrebesPair> {
    KrebesPair::new(&x.a * &y.b + &x.b * &y.a, &x.b * &y.b)
}

/// Determinant of the numerator closure.
pub fn closure_determinant(x: &KrebesPair) -> BigInt {
    x.a.abs()
}

/// Determinant of the flipped (denominator) closure.
pub fn flipped_closure_determinant(x: &KrebesPair) -> BigInt {
    x.b.abs()
}

pub fn is_trivial_tangle(a: &ConwaySeq) -> bool {
    a.tangle_fraction().is_zero()
}
