//! Conway notation, the iterated fraction, and the canonical positive and
//! even forms of a rational tangle.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{precondition, Error, Result};
use crate::extfrac::ExtRational;

/// A non-empty integer sequence `(a_1, …, a_n)`. Zero entries are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConwaySeq(Vec<BigInt>);

impl ConwaySeq {
    pub fn new(entries: Vec<BigInt>) -> Result<Self> {
        if entries.is_empty() {
            return Err(precondition("a Conway sequence needs at least one entry"));
        }
        Ok(Self(entries))
    }

    pub fn from_i64s(entries: &[i64]) -> Result<Self> {
        Self::new(entries.iter().map(|&a| BigInt::from(a)).collect())
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn reverse(&self) -> Self {
        Self(self.0.iter().rev().cloned().collect())
    }

    pub fn negate(&self) -> Self {
        Self(self.0.iter().map(|a| -a).collect())
    }

    pub fn concat(&self, other: &Self) -> Self {
        Self(self.0.iter().chain(other.0.iter()).cloned().collect())
    }

    pub fn push(&mut self, a: BigInt) {
        self.0.push(a);
    }

    /// `Σ |a_i|`, the number of crossings in the canonical diagram.
    pub fn crossing_sum(&self) -> BigInt {
        self.0.iter().map(|a| a.abs()).sum()
    }

    /// `IF(a_1) = a_1`, `IF(a_1, …, a_n) = 1/IF(a_1, …, a_{n-1}) + a_n`.
    pub fn if_eval(&self) -> ExtRational {
        let mut x = ExtRational::from_integer(self.0[0].clone());
        for a in &self.0[1..] {
            x = x.reciprocal().add_int(a);
        }
        x
    }

    /// Fraction of the tangle with Conway notation `C(a_1, …, a_n)`, which is
    /// `IF(a_n, …, a_1)`.
    pub fn tangle_fraction(&self) -> ExtRational {
        self.reverse().if_eval()
    }
}

impl fmt::Display for ConwaySeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for ConwaySeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

/// Parses `C(a,b,…)` or a whitespace-separated list of integers.
pub fn parse(text: &str) -> Result<ConwaySeq> {
    let mut p = Scanner { src: text.as_bytes(), pos: 0 };
    p.skip_ws();
    let entries = if p.peek() == Some(b'C') {
        p.pos += 1;
        p.skip_ws();
        p.expect(b'(')?;
        p.skip_ws();
        if p.peek() == Some(b')') {
            return Err(p.error("empty sequence"));
        }
        let mut entries = vec![p.integer()?];
        loop {
            p.skip_ws();
            match p.peek() {
                Some(b',') => {
                    p.pos += 1;
                    p.skip_ws();
                    entries.push(p.integer()?);
                }
                Some(b')') => {
                    p.pos += 1;
                    break;
                }
                _ => return Err(p.error("expected ',' or ')'")),
            }
        }
        entries
    } else {
        let mut entries = Vec::new();
        while p.peek().is_some() {
            entries.push(p.integer()?);
            let before = p.pos;
            p.skip_ws();
            if p.pos == before && p.peek().is_some() {
                return Err(p.error("expected whitespace between integers"));
            }
        }
        if entries.is_empty() {
            return Err(p.error("empty sequence"));
        }
        entries
    };
    p.skip_ws();
    if p.peek().is_some() {
        return Err(p.error("trailing input"));
    }
    ConwaySeq::new(entries)
}

struct Scanner<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Scanner<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        if matches!(self.peek(), Some(b'-' | b'+')) {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return Err(self.error("expected an integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("validated integer literal"))
    }
}

/// A same-sign sequence `c` with `IF(c) = f`, by continued-fraction expansion.
///
/// For `|f| > 1` the entries are non-zero and `Σ|c_i|` is the crossing number
/// of the closure. For `0 < |f| < 1` the last entry is `0`.
pub fn to_positive_form(f: &ExtRational) -> Result<ConwaySeq> {
    if f.is_zero() || f.is_infinite() {
        return Err(Error::NoPositiveForm(f.to_string()));
    }
    let negative = f.numer().is_negative();
    let mut num = f.numer().abs();
    let mut den = f.denom().clone();
    let mut quotients = Vec::new();
    while !den.is_zero() {
        let (a, r) = num.div_rem(&den);
        quotients.push(a);
        num = std::mem::replace(&mut den, r);
    }
    quotients.reverse();
    if negative {
        quotients.iter_mut().for_each(|a| *a = -&*a);
    }
    ConwaySeq::new(quotients)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MirrorMode {
    /// `q'` is taken congruent to `q`; mirror images get negated forms.
    #[default]
    Strict,
    /// Mirror images share one form, the one with a positive first entry.
    UpToMirror,
}

/// The all-even sequence `e` with `IF(e) = p/q'`, where `q'` is the even
/// representative of `q mod p` in `(-p, p)`.
///
/// The length of `e` is twice the genus of the 2-bridge knot `S(p, q)`.
/// Using `q⁻¹ mod p` instead of `q` yields the reversed sequence.
pub fn to_even_form(p: &BigInt, q: &BigInt, mode: MirrorMode) -> Result<ConwaySeq> {
    if !p.is_positive() {
        return Err(precondition(format!("p = {p} must be positive")));
    }
    if p.is_even() {
        return Err(Error::EvenDeterminant(p.to_string()));
    }
    if !p.gcd(q).is_one() {
        return Err(precondition(format!("gcd({p}, {q}) ≠ 1")));
    }
    if p.is_one() {
        return Err(precondition("the unknot has an empty even form"));
    }
    let mut qe = q.mod_floor(p);
    if qe.is_odd() {
        qe -= p;
    }
    let (mut num, mut den) = if qe.is_negative() { (-p, -qe) } else { (p.clone(), qe) };
    let two = BigInt::from(2);
    let mut entries = Vec::new();
    loop {
        // nearest even integer to num/den; den > 0 here
        let e = (&num + &den).div_floor(&(&two * &den)) * &two;
        let rem = &num - &e * &den;
        entries.push(e);
        if rem.is_zero() {
            break;
        }
        // next value den/rem, renormalized to a positive denominator
        (num, den) = if rem.is_negative() { (-den, -rem) } else { (den, rem) };
    }
    entries.reverse();
    if mode == MirrorMode::UpToMirror && entries[0].is_negative() {
        entries.iter_mut().for_each(|a| *a = -&*a);
    }
    ConwaySeq::new(entries)
}

/// Even form of the fraction `f = p/q` itself; `f` must have odd numerator.
pub fn even_form_of(f: &ExtRational, mode: MirrorMode) -> Result<ConwaySeq> {
    if f.is_infinite() {
        return Err(precondition("the unknot has an empty even form"));
    }
    let p = f.numer().abs();
    let q = if f.numer().is_negative() { -f.denom() } else { f.denom().clone() };
    to_even_form(&p, &q, mode)
}
