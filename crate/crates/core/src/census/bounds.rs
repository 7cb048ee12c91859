//! Certified enclosures of `exp(ρ·(ln k)²)` in binary fixed point.
//!
//! Every quantity is an interval `[lo, hi]` of integers scaled by `2^prec`,
//! with rounding directed outward at each step.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigInt,
    pub hi: BigInt,
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_ceil(b)
}

/// `2·atanh(1/m) = ln((m+1)/(m-1))` for an integer `m ≥ 3`.
fn two_atanh_recip(m: u64, prec: u32) -> Interval {
    let one = BigInt::one() << prec;
    let m = BigInt::from(m);
    let m2 = &m * &m;
    let mut pow = m.clone();
    let mut lo = BigInt::zero();
    let mut terms = 0u64;
    let mut j = 0u64;
    loop {
        let denom = &pow * BigInt::from(2 * j + 1);
        let t = &one / &denom;
        if t.is_zero() {
            break;
        }
        lo += t;
        terms += 1;
        j += 1;
        pow *= &m2;
    }
    // floor error ≤ 1 per term; geometric tail ≤ 2^prec/((2j+1)·m^(2j+1)·(1 - 1/m²)) < 2
    let hi = &lo + BigInt::from(terms + 2);
    Interval { lo: lo << 1, hi: hi << 1 }
}

/// Enclosures of `ln 1, ln 2, …, ln n`, built by `ln k = ln(k-1) + 2·atanh(1/(2k-1))`.
pub fn ln_table(n: u64, prec: u32) -> Vec<Interval> {
    let mut out = Vec::with_capacity(n as usize);
    let mut cur = Interval { lo: BigInt::zero(), hi: BigInt::zero() };
    out.push(cur.clone());
    for k in 2..=n {
        let step = two_atanh_recip(2 * k - 1, prec);
        cur = Interval { lo: &cur.lo + step.lo, hi: &cur.hi + step.hi };
        out.push(cur.clone());
    }
    out
}

pub fn ln2(prec: u32) -> Interval {
    two_atanh_recip(3, prec)
}

/// `ρ·x²` for `x ≥ 0` and rational `ρ > 0`.
pub fn scaled_square(x: &Interval, rho: &BigRational, prec: u32) -> Interval {
    let (a, b) = (rho.numer(), rho.denom());
    let lo = (&x.lo * &x.lo * a) / (b << prec);
    let hi = ceil_div(&(&x.hi * &x.hi * a), &(b << prec));
    Interval { lo, hi }
}

/// `exp(y)` for `y ≥ 0`, by halving, a Taylor polynomial and repeated squaring.
pub fn exp(y: &Interval, prec: u32) -> Interval {
    let one = BigInt::one() << prec;
    // halve until y/2^r ≤ 1/2
    let mut r = 0u32;
    while (&y.hi >> r) > (&one >> 1) {
        r += 1;
    }
    let lo = taylor_exp(&(&y.lo >> r), prec, false);
    let hi = taylor_exp(&ceil_div(&y.hi, &(BigInt::one() << r)), prec, true);
    let (mut lo, mut hi) = (lo, hi);
    for _ in 0..r {
        lo = (&lo * &lo) >> prec;
        hi = ceil_div(&(&hi * &hi), &one);
    }
    Interval { lo, hi }
}

/// `e^z` for `0 ≤ z ≤ 1/2` (scaled), rounded down or up.
fn taylor_exp(z: &BigInt, prec: u32, up: bool) -> BigInt {
    let one = BigInt::one() << prec;
    let mut sum = one.clone();
    let mut term = one.clone();
    let mut n = 1u64;
    loop {
        term = if up {
            ceil_div(&(&term * z), &(&one * BigInt::from(n)))
        } else {
            (&term * z) / (&one * BigInt::from(n))
        };
        if term.is_zero() {
            break;
        }
        sum += &term;
        n += 1;
        if up && term <= BigInt::one() {
            break;
        }
    }
    if up {
        // tail after the last term is at most that term (ratio ≤ 1/2)
        sum + BigInt::from(2) + term
    } else {
        sum
    }
}

/// `⌈x / 2^prec⌉` and `⌊x / 2^prec⌋`
pub fn ceil_int(x: &BigInt, prec: u32) -> BigInt {
    ceil_div(x, &(BigInt::one() << prec))
}

#[cfg(test)]
pub fn floor_int(x: &BigInt, prec: u32) -> BigInt {
    x >> prec
}

/// Rational enclosure as `(lo, hi)`.
pub fn to_rationals(x: &Interval, prec: u32) -> (BigRational, BigRational) {
    let d = BigInt::one() << prec;
    (BigRational::new(x.lo.clone(), d.clone()), BigRational::new(x.hi.clone(), d))
}

pub fn width_below_one(x: &Interval, prec: u32) -> bool {
    let w = &x.hi - &x.lo;
    !w.is_negative() && w < (BigInt::one() << prec)
}
