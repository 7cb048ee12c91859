//! Counting n-trivial rational knot diagrams by their twist-group
//! representations, and the growth bound `d_k ≥ exp(ρ·(ln k)²)`.

mod bounds;
mod cache;

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::conway::ConwaySeq;
use crate::error::{precondition, Error, Result};
use crate::trivial::{make_wn, TwistParams};

pub use bounds::Interval;
pub use cache::{default_cache_path, load_or_compute, CACHE_ENV, CACHE_VERSION};

/// Largest `k` accepted by [`enumerate_dk`].
pub const ENUMERATION_LIMIT: u64 = 64;

/// Fixed-point precision (bits) of the first bound evaluation.
const BASE_PRECISION: u32 = 192;

/// `d_1 = 2`, `d_k = 2·Σ_{i ≤ ⌊k/2⌋} d_i`, with prefix sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusTable {
    values: Vec<BigInt>,
    prefix: Vec<BigInt>,
}

impl CensusTable {
    pub fn from_values(values: Vec<BigInt>) -> Self {
        let mut acc = BigInt::zero();
        let prefix = values
            .iter()
            .map(|v| {
                acc += v;
                acc.clone()
            })
            .collect();
        Self { values, prefix }
    }

    /// Extends the table to `k ≤ max_k`.
    pub fn extend_to(&mut self, max_k: u64) {
        let two = BigInt::from(2);
        while (self.values.len() as u64) < max_k {
            let k = self.values.len() + 1;
            let d = if k == 1 { two.clone() } else { &two * &self.prefix[k / 2 - 1] };
            let total = self.prefix.last().cloned().unwrap_or_default() + &d;
            self.values.push(d);
            self.prefix.push(total);
        }
    }

    pub fn len(&self) -> u64 {
        self.values.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `d_k`, 1-based.
    pub fn d(&self, k: u64) -> &BigInt {
        &self.values[(k - 1) as usize]
    }

    /// `d_1 + … + d_k`
    pub fn prefix_sum(&self, k: u64) -> &BigInt {
        &self.prefix[(k - 1) as usize]
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn truncated(&self, max_k: u64) -> Self {
        let n = (max_k as usize).min(self.values.len());
        Self { values: self.values[..n].to_vec(), prefix: self.prefix[..n].to_vec() }
    }

    /// First index where the recursion or the prefix sums fail, if any.
    pub fn first_inconsistency(&self) -> Option<u64> {
        let two = BigInt::from(2);
        // running Σ_{i ≤ ⌊k/2⌋} d_i, kept apart from the stored prefix sums
        let mut half = BigInt::zero();
        let mut acc = BigInt::zero();
        for (i, v) in self.values.iter().enumerate() {
            let k = i + 1;
            if k >= 2 && k % 2 == 0 {
                half += &self.values[k / 2 - 1];
            }
            let expect = if k == 1 { two.clone() } else { &two * &half };
            acc += v;
            if *v != expect || self.prefix[i] != acc {
                return Some(k as u64);
            }
        }
        None
    }
}

pub fn count_dk(max_k: u64) -> Result<CensusTable> {
    if max_k == 0 {
        return Err(precondition("the table needs at least one entry"));
    }
    let mut t = CensusTable::from_values(vec![]);
    t.extend_to(max_k);
    Ok(t)
}

/// All `(w_0, …, w_n)` with `n ≥ 1`, every `w_i ≠ 0` and `Σ 2^i·|w_i| = k`.
pub fn enumerate_dk(k: u64) -> Result<Vec<Vec<i64>>> {
    if k == 0 || k > ENUMERATION_LIMIT {
        return Err(precondition(format!("k = {k} outside 1..={ENUMERATION_LIMIT}")));
    }
    fn go(rest: u64, weight: u64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if rest == 0 {
            if prefix.len() >= 2 {
                out.push(prefix.clone());
            }
            return;
        }
        for m in 1..=rest / weight {
            for w in [-(m as i64), m as i64] {
                prefix.push(w);
                go(rest - m * weight, weight * 2, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(k, 1, &mut Vec::new(), &mut out);
    out.sort();
    Ok(out)
}

/// Twist parameters `a_j = 2·w_{L-j}` for a tuple of length `L`; the
/// resulting `w_L` has `2k` crossings.
pub fn tuple_params(tuple: &[i64]) -> Result<TwistParams> {
    TwistParams::new(tuple.iter().rev().map(|&w| BigInt::from(2 * w)).collect())
}

pub fn tuple_sequence(tuple: &[i64]) -> Result<ConwaySeq> {
    Ok(make_wn(&tuple_params(tuple)?))
}

/// Brute-force count next to the recursion value for one `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationRow {
    pub k: u64,
    pub enumerated: u64,
    pub recursion: BigInt,
}

impl EnumerationRow {
    pub fn agrees(&self) -> bool {
        BigInt::from(self.enumerated) == self.recursion
    }
}

pub fn compare_enumeration(table: &CensusTable, max_k: u64) -> Result<Vec<EnumerationRow>> {
    (1..=max_k)
        .map(|k| {
            Ok(EnumerationRow { k, enumerated: enumerate_dk(k)?.len() as u64, recursion: table.d(k).clone() })
        })
        .collect()
}

/// Exponent `ρ` of the growth bound, an exact rational with `0 < ρ < 1/(2·ln 2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rho(BigRational);

impl Rho {
    pub fn new(r: BigRational) -> Result<Self> {
        if !r.is_positive() {
            return Err(precondition(format!("rho = {r} must be positive")));
        }
        // 2·ρ·ln 2 < 1, decided on an enclosure of ln 2
        let mut prec = 64;
        loop {
            let (lo, hi) = bounds::to_rationals(&bounds::ln2(prec), prec);
            let two = BigRational::from_integer(2.into());
            if &two * &r * hi < BigRational::one() {
                return Ok(Self(r));
            }
            if &two * &r * lo >= BigRational::one() {
                return Err(precondition(format!("rho = {r} is not below 1/(2 ln 2)")));
            }
            prec *= 2;
        }
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }
}

impl FromStr for Rho {
    type Err = Error;

    /// Parses a decimal such as `0.3` or a fraction such as `3/10` exactly.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |pos: usize| Error::Syntax { pos, msg: format!("invalid exponent {s:?}") };
        let r = if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.parse().map_err(|_| bad(0))?;
            let d: BigInt = d.parse().map_err(|_| bad(n.to_string().len() + 1))?;
            if d.is_zero() {
                return Err(bad(s.len() - 1));
            }
            BigRational::new(n, d)
        } else {
            let (int, frac) = s.split_once('.').unwrap_or((s, ""));
            if int.is_empty() && frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
                return Err(bad(0));
            }
            let digits = format!("{int}{frac}");
            let n: BigInt = digits.parse().map_err(|_| bad(0))?;
            BigRational::new(n, BigInt::from(10).pow(frac.len() as u32))
        };
        Self::new(r)
    }
}

/// One row of the growth comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundRow {
    pub k: u64,
    pub d: BigInt,
    /// Smallest integer at least `exp(ρ·(ln k)²)`.
    pub bound: BigInt,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct AsymptoticReport {
    pub rho: BigRational,
    pub max_k: u64,
    /// Smallest `k_0` with `d_k ≥ exp(ρ·(ln k)²)` for every `k ∈ [k_0, max_k]`.
    pub k0: Option<u64>,
    pub failures: u64,
    pub rows: Vec<BoundRow>,
}

/// Certified comparison of `d_k` against `exp(ρ·(ln k)²)` for `1 ≤ k ≤ max_k`.
pub fn asymptotic_check(table: &CensusTable, max_k: u64, rho: &Rho) -> Result<AsymptoticReport> {
    if max_k == 0 || max_k > table.len() {
        return Err(precondition(format!("max_k = {max_k} outside the table (1..={})", table.len())));
    }
    let mut prec = BASE_PRECISION;
    let rows = loop {
        match evaluate_rows(table, max_k, rho, prec) {
            Some(rows) => break rows,
            None => prec *= 2,
        }
    };
    let failures = rows.iter().filter(|r| !r.pass).count() as u64;
    let k0 = match rows.iter().rev().find(|r| !r.pass) {
        None => Some(1),
        Some(r) if r.k < max_k => Some(r.k + 1),
        Some(_) => None,
    };
    Ok(AsymptoticReport { rho: rho.0.clone(), max_k, k0, failures, rows })
}

/// `None` when some comparison is undecided at this precision.
fn evaluate_rows(table: &CensusTable, max_k: u64, rho: &Rho, prec: u32) -> Option<Vec<BoundRow>> {
    let logs = bounds::ln_table(max_k, prec);
    logs.par_iter()
        .enumerate()
        .map(|(i, ln)| {
            let k = i as u64 + 1;
            let d = table.d(k);
            if k == 1 {
                // exp(0) = 1 exactly; no enclosure can settle its ceiling
                return Some(BoundRow { k, d: d.clone(), bound: BigInt::one(), pass: d >= &BigInt::one() });
            }
            let e = bounds::exp(&bounds::scaled_square(ln, &rho.0, prec), prec);
            if !bounds::width_below_one(&e, prec) {
                return None;
            }
            // d ≥ x ⟺ d ≥ ⌈x⌉ for integer d, so a settled ceiling decides the row
            let bound = bounds::ceil_int(&e.hi, prec);
            if bounds::ceil_int(&e.lo, prec) != bound {
                return None;
            }
            Some(BoundRow { k, d: d.clone(), pass: d >= &bound, bound })
        })
        .collect()
}
