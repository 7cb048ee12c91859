//! Kauffman bracket by skein transfer and the Jones polynomial.
//!
//! A tangle's bracket is written `f·<0> + g·<∞>` in the bracket variable `A`,
//! with `<O> = 1` and loop value `δ = -A² - A⁻²`. The crossing `[1]` expands to
//! `A·<0> + A⁻¹·<∞>`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use crate::conway::{to_positive_form, ConwaySeq};
use crate::error::{precondition, Result};
use crate::trivial::RationalKnot;

use super::diagram::TangleDiagram;
use super::laurent::LaurentPoly;

/// `δ = -A² - A⁻²`
pub fn delta() -> LaurentPoly {
    LaurentPoly::from_i64_terms(&[(2, -1), (-2, -1)])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketPair {
    /// coefficient of the 0-tangle
    pub zero: LaurentPoly,
    /// coefficient of the ∞-tangle
    pub infinity: LaurentPoly,
}

impl BracketPair {
    pub fn zero_tangle() -> Self {
        Self { zero: LaurentPoly::one(), infinity: LaurentPoly::zero() }
    }

    pub fn crossing(positive: bool) -> Self {
        let (a, b) = if positive { (1, -1) } else { (-1, 1) };
        Self { zero: LaurentPoly::var_pow(a), infinity: LaurentPoly::var_pow(b) }
    }

    pub fn twist(a: &BigInt) -> Self {
        let unit = Self::crossing(a.is_positive());
        let n = a.magnitude().to_u64().expect("twist too large");
        (0..n).fold(Self::zero_tangle(), |t, _| t.sum(&unit))
    }

    /// `0+0 = 0`, `0+∞ = ∞+0 = ∞`, `∞+∞ = δ·∞`.
    pub fn sum(&self, o: &Self) -> Self {
        let zero = &self.zero * &o.zero;
        let mixed = &(&self.zero * &o.infinity) + &(&self.infinity * &o.zero);
        let inf = &mixed + &(&(&self.infinity * &o.infinity) * &delta());
        Self { zero, infinity: inf }
    }

    /// Rotation swaps the basis; the mirror inverts `A`.
    pub fn reciprocal(&self) -> Self {
        Self { zero: self.infinity.invert_var(), infinity: self.zero.invert_var() }
    }

    /// `<N(T)> = f·δ + g`
    pub fn numerator_closure(&self) -> LaurentPoly {
        &(&self.zero * &delta()) + &self.infinity
    }
}

/// Bracket of the canonical diagram of `C(a)`, one transfer step per crossing.
pub fn bracket_pair(a: &ConwaySeq) -> BracketPair {
    let e = a.entries();
    let mut t = BracketPair::twist(&e[e.len() - 1]);
    for x in e[..e.len() - 1].iter().rev() {
        t = t.reciprocal().sum(&BracketPair::twist(x));
    }
    t
}

/// Jones polynomial in `t` of the numerator closure of `C(a)`, which must be a knot.
pub fn jones_of_sequence(a: &ConwaySeq) -> Result<LaurentPoly> {
    let w = TangleDiagram::conway(a)
        .numerator_closure()
        .writhe()
        .ok_or_else(|| precondition(format!("the closure of {a} is a link")))?;
    let bracket = bracket_pair(a).numerator_closure();
    // (-A³)^{-w}
    let sign = if w % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    let normalized = bracket.shift(-3 * w).scale(&sign);
    let in_t = normalized
        .divide_exponents(-4)
        .ok_or_else(|| precondition("bracket exponents are not compatible with t = A^-4"))?;
    Ok(in_t)
}

/// Canonical alternating Conway notation of a non-trivial 2-bridge knot.
pub fn canonical_sequence(k: &RationalKnot) -> Option<ConwaySeq> {
    if k.is_unknot() {
        return None;
    }
    to_positive_form(&k.fraction()).ok().map(|s| s.reverse())
}

/// Jones polynomial with `V(unknot) = 1`.
pub fn jones(k: &RationalKnot) -> LaurentPoly {
    match canonical_sequence(k) {
        None => LaurentPoly::one(),
        Some(a) => jones_of_sequence(&a).expect("2-bridge knots with odd p close to knots"),
    }
}
