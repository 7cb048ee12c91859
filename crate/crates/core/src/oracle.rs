//! Slow, independent reference computations used to cross-check the fast
//! paths at runtime and in tests.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::polyinv::bracket::{delta, BracketPair};
use crate::polyinv::diagram::{ClosedDiagram, TangleDiagram};
use crate::polyinv::LaurentPoly;

/// Largest diagram the exhaustive state sums accept.
pub const MAX_STATE_SUM_CROSSINGS: usize = 20;

fn state_bits(s: u64, c: usize) -> Vec<bool> {
    (0..c).map(|i| s >> i & 1 == 1).collect()
}

/// `Σ_states A^{#A - #B} δ^{loops - 1}` over all `2^c` smoothings.
pub fn state_sum_bracket(d: &ClosedDiagram) -> LaurentPoly {
    let c = d.crossing_count();
    assert!(c <= MAX_STATE_SUM_CROSSINGS);
    let dl = delta();
    let mut powers = vec![LaurentPoly::one()];
    let mut total = LaurentPoly::zero();
    for s in 0..1u64 << c {
        let state = state_bits(s, c);
        let b = state.iter().filter(|&&x| x).count() as i64;
        let loops = d.loops(&state);
        while powers.len() < loops {
            let next = powers.last().unwrap() * &dl;
            powers.push(next);
        }
        total = &total + &powers[loops - 1].shift(c as i64 - 2 * b);
    }
    total
}

/// Tangle bracket by exhaustive smoothing: each state leaves the four ports
/// joined as `<0>` or `<∞>` plus some free loops.
pub fn state_sum_pair(t: &TangleDiagram) -> BracketPair {
    let c = t.crossing_count();
    assert!(c <= MAX_STATE_SUM_CROSSINGS);
    let [nw, ne, _, _] = t.ports();
    let dl = delta();
    let mut out = BracketPair { zero: LaurentPoly::zero(), infinity: LaurentPoly::zero() };
    for s in 0..1u64 << c {
        let state = state_bits(s, c);
        let b = state.iter().filter(|&&x| x).count() as i64;
        let mut uf = t.smoothing(&state);
        let free = uf.components() - 2;
        let term = dl.pow(free as u32).shift(c as i64 - 2 * b);
        if uf.same(nw, ne) {
            out.zero = &out.zero + &term;
        } else {
            out.infinity = &out.infinity + &term;
        }
    }
    out
}

/// Signature of a knot from a reduced alternating diagram:
/// `σ = s_A - n_+ - 1`.
pub fn traczyk_signature(d: &ClosedDiagram) -> Option<i64> {
    let signs = d.crossing_signs()?;
    let positive = signs.iter().filter(|&&s| s > 0).count() as i64;
    Some(d.all_a_loops() as i64 - positive - 1)
}

/// Every `s ∈ [0, p)` with `f(s) ≡ k (mod p)`.
pub fn scan_residues(p: &BigInt, k: &BigInt, f: impl Fn(&BigInt) -> BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut s = BigInt::zero();
    while &s < p {
        if f(&s).mod_floor(p) == k.mod_floor(p) {
            out.push(s.clone());
        }
        s += 1;
    }
    out
}

/// Units `w mod p` reducing to `u mod q`.
pub fn scan_unit_lifts(p: u64, q: u64, u: u64) -> Vec<u64> {
    (0..p).filter(|&w| w.gcd(&p) == 1 && w % q == u % q).collect()
}

/// `|numerator|` of `IF(a)` using machine integers.
pub fn if_numerator_i128(a: &[i64]) -> Option<i128> {
    let (mut n, mut d) = (a[0] as i128, 1i128);
    for &x in &a[1..] {
        // 1/(n/d) + x = (d + x·n)/n
        let next = d.checked_add((x as i128).checked_mul(n)?)?;
        d = n;
        n = next;
    }
    Some(n.abs())
}

/// Exhaustive count of tuples `(w_0, …, w_n)`, `n ≥ 1`, all non-zero, with
/// `Σ 2^i·|w_i| = k`.
pub fn count_representations(k: u64) -> u64 {
    fn go(rest: u64, weight: u64, len: usize) -> u64 {
        if rest == 0 {
            return if len >= 2 { 1 } else { 0 };
        }
        let mut total = 0;
        let mut m = 1;
        while m * weight <= rest {
            total += 2 * go(rest - m * weight, weight * 2, len + 1);
            m += 1;
        }
        total
    }
    if k == 0 { 0 } else { go(k, 1, 0) }
}
