//! The n-trivial tangles `w_n`, the knot family obtained by closing them,
//! and the closed forms for `w_n` with all twist parameters `±2`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::conway::ConwaySeq;
use crate::error::{precondition, Error, Result};
use crate::extfrac::ExtRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn of(x: &BigInt) -> Self {
        if x.is_negative() { Sign::Minus } else { Sign::Plus }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn apply(self, x: BigInt) -> BigInt {
        match self {
            Sign::Plus => x,
            Sign::Minus => -x,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Parses a sign list such as `+,-,+`, `+-+` or `+ - +`.
pub fn parse_signs(text: &str) -> Result<Vec<Sign>> {
    let mut out = Vec::new();
    for (pos, c) in text.char_indices() {
        match c {
            '+' => out.push(Sign::Plus),
            '-' => out.push(Sign::Minus),
            ',' | ' ' => {}
            _ => return Err(Error::Syntax { pos, msg: format!("unexpected {c:?} in sign list") }),
        }
    }
    if out.is_empty() {
        return Err(Error::Syntax { pos: 0, msg: "empty sign list".into() });
    }
    Ok(out)
}

/// Even twist parameters `(a_1, …, a_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistParams(Vec<BigInt>);

impl TwistParams {
    pub fn new(a: Vec<BigInt>) -> Result<Self> {
        if a.is_empty() {
            return Err(precondition("at least one twist parameter is required"));
        }
        if let Some((i, v)) = a.iter().enumerate().find(|(_, v)| v.is_odd()) {
            return Err(Error::OddEntry { index: i + 1, value: v.to_string() });
        }
        Ok(Self(a))
    }

    pub fn from_i64s(a: &[i64]) -> Result<Self> {
        Self::new(a.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// `a_i = ±2` following `signs`.
    pub fn from_signs(signs: &[Sign]) -> Result<Self> {
        Self::new(signs.iter().map(|s| s.apply(BigInt::from(2))).collect())
    }

    pub fn params(&self) -> &[BigInt] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn all_nonzero(&self) -> bool {
        self.0.iter().all(|a| !a.is_zero())
    }

    fn with(&self, index: usize, value: BigInt) -> Self {
        let mut a = self.0.clone();
        a[index] = value;
        Self(a)
    }
}

/// `w_1 = (a_1)`, `w_k = w_{k-1} (a_k) reverse(-w_{k-1})`; length `2^n - 1`.
pub fn make_wn(t: &TwistParams) -> ConwaySeq {
    let mut w: Vec<BigInt> = vec![t.0[0].clone()];
    for a in &t.0[1..] {
        let tail: Vec<BigInt> = w.iter().rev().map(|x| -x).collect();
        w.push(a.clone());
        w.extend(tail);
    }
    ConwaySeq::new(w).expect("non-empty")
}

/// The 2-bridge knot `S(p, q)`: numerator closure of the tangle with fraction `p/q`.
///
/// `p` is odd and positive, `q` is kept reduced into `[0, p)`; the unknot is
/// `S(1, 0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalKnot {
    p: BigInt,
    q: BigInt,
    provenance: Option<ConwaySeq>,
}

impl RationalKnot {
    pub fn new(p: BigInt, q: BigInt) -> Result<Self> {
        if !p.is_positive() || p.is_even() {
            return Err(Error::EvenDeterminant(p.to_string()));
        }
        if !p.gcd(&q).is_one() {
            return Err(precondition(format!("gcd({p}, {q}) ≠ 1")));
        }
        let q = q.mod_floor(&p);
        Ok(Self { p, q, provenance: None })
    }

    pub fn from_i64(p: i64, q: i64) -> Result<Self> {
        Self::new(p.into(), q.into())
    }

    pub fn unknot() -> Self {
        Self { p: BigInt::one(), q: BigInt::zero(), provenance: None }
    }

    /// Numerator closure of the tangle with fraction `f`.
    pub fn from_fraction(f: &ExtRational) -> Result<Self> {
        let p = f.numer().abs();
        let q = if f.numer().is_negative() { -f.denom() } else { f.denom().clone() };
        Self::new(p, q)
    }

    /// Numerator closure of the tangle `C(a)`.
    pub fn from_conway(a: ConwaySeq) -> Result<Self> {
        let mut k = Self::from_fraction(&a.tangle_fraction())?;
        k.provenance = Some(a);
        Ok(k)
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn determinant(&self) -> &BigInt {
        &self.p
    }

    pub fn provenance(&self) -> Option<&ConwaySeq> {
        self.provenance.as_ref()
    }

    pub fn is_unknot(&self) -> bool {
        self.p.is_one()
    }

    /// The fraction `p/q` (`∞` for the unknot).
    pub fn fraction(&self) -> ExtRational {
        ExtRational::normalize(self.p.clone(), self.q.clone()).expect("p > 0")
    }

    pub fn mirror(&self) -> Self {
        Self { p: self.p.clone(), q: (-&self.q).mod_floor(&self.p), provenance: None }
    }

    /// Same oriented-up-to-reversal knot type: `q' ≡ q^{±1} (mod p)`.
    pub fn same_knot(&self, other: &Self) -> bool {
        if self.p != other.p {
            return false;
        }
        self.q == other.q || (&self.q * &other.q).mod_floor(&self.p) == BigInt::one().mod_floor(&self.p)
    }

    /// Equal up to mirror image: `q' ≡ ±q^{±1} (mod p)`.
    pub fn same_up_to_mirror(&self, other: &Self) -> bool {
        self.same_knot(other) || self.same_knot(&other.mirror())
    }
}

impl fmt::Display for RationalKnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S({},{})", self.p, self.q)
    }
}

impl FromStr for RationalKnot {
    type Err = Error;

    /// Accepts a fraction `p/q` or a Conway sequence.
    fn from_str(s: &str) -> Result<Self> {
        if s.contains('/') || s.trim().eq_ignore_ascii_case("inf") {
            Self::from_fraction(&s.parse()?)
        } else {
            Self::from_conway(s.parse()?)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    /// Zeroing `a_index` left a non-trivial tangle.
    NotVanishing { index: usize },
    /// All parameters non-zero but the tangle is trivial.
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub params: Vec<BigInt>,
    pub kind: ViolationKind,
    pub fraction: ExtRational,
}

#[derive(Clone, Debug)]
pub struct StructureReport {
    pub params: Vec<BigInt>,
    pub seed: u64,
    pub trials: usize,
    pub checks: usize,
    /// `None` when some `a_i = 0`, so the non-triviality claim does not apply.
    pub nontrivial: Option<bool>,
    pub violations: Vec<Violation>,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Range of the random even substitutions.
pub const TRIAL_RANGE: i64 = 20;

/// Checks that zeroing any `a_i` trivializes `w_n`, on `t` itself and on
/// `trials` seeded random parameter vectors, and that all-nonzero parameters
/// give a non-trivial tangle.
pub fn verify_n_trivial_structure(t: &TwistParams, trials: usize, seed: u64) -> StructureReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = t.depth();
    let mut vectors = vec![t.clone()];
    for _ in 0..trials {
        let a = (0..n)
            .map(|_| {
                let half = loop {
                    let h = rng.gen_range(-TRIAL_RANGE / 2..=TRIAL_RANGE / 2);
                    if h != 0 {
                        break h;
                    }
                };
                BigInt::from(2 * half)
            })
            .collect();
        vectors.push(TwistParams(a));
    }

    let mut report = StructureReport {
        params: t.params().to_vec(),
        seed,
        trials,
        checks: 0,
        nontrivial: None,
        violations: Vec::new(),
    };
    for (k, v) in vectors.iter().enumerate() {
        if v.all_nonzero() {
            let f = make_wn(v).tangle_fraction();
            report.checks += 1;
            let ok = !f.is_zero();
            if k == 0 {
                report.nontrivial = Some(ok);
            }
            if !ok {
                report.violations.push(Violation { params: v.0.clone(), kind: ViolationKind::Trivial, fraction: f });
            }
        }
        for i in 0..n {
            let zeroed = v.with(i, BigInt::zero());
            let f = make_wn(&zeroed).tangle_fraction();
            report.checks += 1;
            if !f.is_zero() {
                report.violations.push(Violation {
                    params: zeroed.0,
                    kind: ViolationKind::NotVanishing { index: i + 1 },
                    fraction: f,
                });
            }
        }
    }
    report
}

/// The knot obtained by putting `w_n` into the 0-tangle slot of the unknot
/// diagram `C(0, c)`: Conway notation `w_n ++ (c)`.
pub fn family_knot(t: &TwistParams, c: &BigInt) -> Result<RationalKnot> {
    if !t.all_nonzero() {
        return Err(precondition("family knots need non-zero twist parameters"));
    }
    if c.is_zero() || c.is_odd() {
        return Err(precondition(format!("c = {c} must be even and non-zero")));
    }
    let mut seq = make_wn(t);
    seq.push(c.clone());
    RationalKnot::from_conway(seq)
}

/// One crossing change in the `a_n` twist region (`a_n = ±2 ↦ 0`) turns the
/// `w_n` part into the 0-tangle; returns whether the result is the unknot.
pub fn certify_unknotting_one(t: &TwistParams, c: &BigInt) -> Result<bool> {
    let n = t.depth();
    let last = &t.params()[n - 1];
    if last.abs() != BigInt::from(2) {
        return Err(precondition(format!("a_n = {last} is not ±2")));
    }
    let changed = t.with(n - 1, BigInt::zero());
    let mut seq = make_wn(&changed);
    seq.push(c.clone());
    Ok(seq.tangle_fraction().numer().abs() <= BigInt::one())
}

fn check_signs(n: usize, signs: &[Sign]) -> Result<()> {
    if n == 0 || signs.len() != n {
        return Err(precondition(format!("expected {n} signs, got {}", signs.len())));
    }
    Ok(())
}

/// Signs `ε_i` of the closed-form sum for `a_i = σ_i·2`:
/// `ε_1 = σ_1` when `n = 1`; otherwise `ε_1 = -σ_1`, `ε_n = -σ_n` and
/// `ε_i = σ_i` in between.
pub fn lm1_sum_signs(signs: &[Sign]) -> Vec<Sign> {
    let n = signs.len();
    signs
        .iter()
        .enumerate()
        .map(|(i, &s)| if n > 1 && (i == 0 || i == n - 1) { s.flip() } else { s })
        .collect()
}

/// `Σ_{i=1}^{n} ε_i·2^(2^n - 2^i)`.
pub fn lm1_sum(n: usize, signs: &[Sign]) -> Result<BigInt> {
    check_signs(n, signs)?;
    let top = 1usize << n;
    Ok(lm1_sum_signs(signs)
        .iter()
        .enumerate()
        .map(|(i, s)| s.apply(BigInt::one() << (top - (1usize << (i + 1)))))
        .sum())
}

/// `IF(w_n) = 2^(2^n - 1) / Σ ε_i·2^(2^n - 2^i)` for `a_i = ±2`.
pub fn lm1_fraction(n: usize, signs: &[Sign]) -> Result<ExtRational> {
    let sum = lm1_sum(n, signs)?;
    ExtRational::normalize(BigInt::one() << ((1usize << n) - 1), sum)
}

/// Signed determinant `Σ ε_i·2^(2^n - 2^i) + s·2^(2^n - 1)` of the closure of
/// `(w_n, s)`; its absolute value is the knot determinant.
pub fn lm1_det(n: usize, signs: &[Sign], s: &BigInt) -> Result<BigInt> {
    Ok(lm1_sum(n, signs)? + s * (BigInt::one() << ((1usize << n) - 1)))
}

/// Conway notation `w_n ++ (s)` with `a_i = ±2`.
pub fn lm1_sequence(signs: &[Sign], s: &BigInt) -> Result<ConwaySeq> {
    let mut w = make_wn(&TwistParams::from_signs(signs)?);
    w.push(s.clone());
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conway::{to_even_form, MirrorMode};
    use proptest::prelude::*;

    fn tp(a: &[i64]) -> TwistParams {
        TwistParams::from_i64s(a).unwrap()
    }

    fn seq(a: &[i64]) -> ConwaySeq {
        ConwaySeq::from_i64s(a).unwrap()
    }

    #[test]
    fn wn_examples() {
        assert_eq!(make_wn(&tp(&[2])), seq(&[2]));
        assert_eq!(make_wn(&tp(&[2, -4])), seq(&[2, -4, -2]));
        assert_eq!(make_wn(&tp(&[2, -4, 2])), seq(&[2, -4, -2, 2, 2, 4, -2]));
        assert!(matches!(TwistParams::from_i64s(&[2, 3]), Err(Error::OddEntry { index: 2, .. })));
    }

    #[test]
    fn structure_examples() {
        let w = make_wn(&tp(&[2, 0, 2]));
        assert!(w.tangle_fraction().is_zero());
        let r = verify_n_trivial_structure(&tp(&[2, -4, 2]), 20, 1);
        assert!(r.passed(), "{:?}", r.violations);
        assert_eq!(r.nontrivial, Some(true));
        assert_eq!(make_wn(&tp(&[2, -4, 2])).if_eval().numer().abs(), BigInt::from(512));
        let r = verify_n_trivial_structure(&tp(&[0, 2]), 5, 1);
        assert_eq!(r.nontrivial, None);
        assert!(r.passed());
    }

    #[test]
    fn structure_report_is_seed_deterministic() {
        let a = verify_n_trivial_structure(&tp(&[2, 2, 2]), 10, 99);
        let b = verify_n_trivial_structure(&tp(&[2, 2, 2]), 10, 99);
        assert_eq!(a.checks, b.checks);
        assert_eq!(a.checks, 11 * 3 + 11);
    }

    #[test]
    fn family_examples() {
        let k = family_knot(&tp(&[2]), &2.into()).unwrap();
        assert_eq!(k.p(), &BigInt::from(5));
        assert!(k.same_knot(&RationalKnot::from_i64(5, 2).unwrap()));
        assert_eq!(k.provenance(), Some(&seq(&[2, 2])));

        let k = family_knot(&tp(&[2, -4]), &2.into()).unwrap();
        assert_eq!(k.provenance(), Some(&seq(&[2, -4, -2, 2])));
        let oracle = seq(&[2, -4, -2, 2]).if_eval().numer().abs();
        assert_eq!(k.p(), &oracle);
        assert_eq!(oracle, BigInt::from(25));

        assert!(family_knot(&tp(&[2]), &3.into()).is_err());
        assert!(family_knot(&tp(&[2, 0]), &2.into()).is_err());
    }

    #[test]
    fn family_members_are_distinct() {
        let t = tp(&[2, -4]);
        let forms: Vec<ConwaySeq> = [2i64, 4, 6, 8, -2, -4]
            .iter()
            .map(|&c| {
                let k = family_knot(&t, &c.into()).unwrap();
                to_even_form(k.p(), k.q(), MirrorMode::Strict).unwrap()
            })
            .collect();
        for i in 0..forms.len() {
            for j in 0..i {
                assert_ne!(forms[i], forms[j]);
            }
        }
    }

    #[test]
    fn unknotting_examples() {
        assert!(certify_unknotting_one(&tp(&[2]), &2.into()).unwrap());
        assert!(certify_unknotting_one(&tp(&[2, -4, 2]), &2.into()).unwrap());
        assert!(certify_unknotting_one(&tp(&[2, -4]), &2.into()).is_err());
    }

    #[test]
    fn lm1_examples() {
        use Sign::*;
        let f = lm1_fraction(3, &[Plus, Plus, Plus]).unwrap();
        assert_eq!(f, ExtRational::normalize((-128).into(), 49.into()).unwrap());
        assert_eq!(f, make_wn(&tp(&[2, 2, 2])).if_eval());
        assert_eq!(lm1_det(1, &[Plus], &1.into()).unwrap(), BigInt::from(3));
        assert_eq!(lm1_sequence(&[Plus], &1.into()).unwrap().if_eval().numer(), &BigInt::from(3));
        assert_eq!(lm1_det(1, &[Plus], &0.into()).unwrap(), BigInt::one());
        assert_eq!(lm1_sum(2, &[Minus, Minus]).unwrap(), BigInt::from(5));
        assert!(lm1_fraction(3, &[Plus]).is_err());
    }

    #[test]
    fn signs_parse() {
        use Sign::*;
        assert_eq!(parse_signs("+,-,+").unwrap(), vec![Plus, Minus, Plus]);
        assert_eq!(parse_signs("+-").unwrap(), vec![Plus, Minus]);
        assert!(parse_signs("+x").is_err());
    }

    #[test]
    fn knot_text_and_equivalence() {
        let k: RationalKnot = "7/3".parse().unwrap();
        assert_eq!(k.to_string(), "S(7,3)");
        assert!(k.same_knot(&RationalKnot::from_i64(7, 5).unwrap()));
        assert!(!k.same_knot(&RationalKnot::from_i64(7, 4).unwrap()));
        assert!(k.same_up_to_mirror(&RationalKnot::from_i64(7, 4).unwrap()));
        assert!(matches!("4/1".parse::<RationalKnot>(), Err(Error::EvenDeterminant(_))));
        assert!("inf".parse::<RationalKnot>().unwrap().is_unknot());
        let k: RationalKnot = "C(2,2)".parse().unwrap();
        assert_eq!(k.p(), &BigInt::from(5));
    }

    fn signs(n: usize) -> impl Strategy<Value = Vec<Sign>> {
        prop::collection::vec(prop_oneof![Just(Sign::Plus), Just(Sign::Minus)], n)
    }

    proptest! {
        #[test]
        fn wn_shape(a in prop::collection::vec((-5i64..=5).prop_map(|x| 2 * x), 1..6)) {
            let t = tp(&a);
            let w = make_wn(&t);
            prop_assert_eq!(w.len(), (1 << a.len()) - 1);
            prop_assert!(w.entries().iter().all(|x| x.is_even()));
            let mags: Vec<BigInt> = w.entries().iter().map(|x| x.abs()).collect();
            let mut rev = mags.clone();
            rev.reverse();
            prop_assert_eq!(&mags, &rev);
        }

        #[test]
        fn closed_form_matches_iterated_fraction(s in (1usize..=7).prop_flat_map(signs), shift in -10i64..=10) {
            let n = s.len();
            let w = make_wn(&TwistParams::from_signs(&s).unwrap());
            prop_assert_eq!(lm1_fraction(n, &s).unwrap(), w.if_eval());
            let det = lm1_det(n, &s, &shift.into()).unwrap();
            let seq = lm1_sequence(&s, &shift.into()).unwrap();
            prop_assert_eq!(det.abs(), seq.tangle_fraction().numer().abs());
        }
    }
}
