//! First homology of double branched covers and the congruence solvers that
//! realize prescribed determinants and `ℤ_p`-homology with n-trivial knots.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::conway::ConwaySeq;
use crate::error::{precondition, Error, Result};
use crate::matrix::{self, IntMatrix, SmithReport};
use crate::tangle::{closure_determinant, krebes_of_sequence, krebes_sum, KrebesPair};
use crate::trivial::{certify_unknotting_one, lm1_det, lm1_sequence, lm1_sum, RationalKnot, Sign, TwistParams};

/// Finite abelian group `ℤ_{d_1} ⊕ … ⊕ ℤ_{d_r}` with `1 < d_1 | d_2 | … | d_r`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AbelianGroupFin {
    factors: Vec<BigInt>,
}

impl AbelianGroupFin {
    pub fn trivial() -> Self {
        Self::default()
    }

    /// `⊕ ℤ_{n_i}` for arbitrary positive orders, normalized to a divisibility chain.
    pub fn from_cyclic_orders(orders: &[BigInt]) -> Result<Self> {
        if orders.iter().any(|n| !n.is_positive()) {
            return Err(precondition("cyclic orders must be positive"));
        }
        let report = matrix::smith_normal_form(&IntMatrix::diagonal(orders));
        Ok(Self { factors: report.torsion })
    }

    pub fn factors(&self) -> &[BigInt] {
        &self.factors
    }

    pub fn order(&self) -> BigInt {
        self.factors.iter().product()
    }

    /// Number of torsion coefficients; a lower bound for the unknotting number.
    pub fn torsion_count(&self) -> usize {
        self.factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }
}

impl fmt::Display for AbelianGroupFin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z_{d}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Cokernel of `m` as a finite group, with the full diagonal.
///
/// The free part, if any, is reported in `SmithReport::free_rank` and is not
/// part of the group.
pub fn smith_normal_form(m: &IntMatrix) -> (AbelianGroupFin, SmithReport) {
    let report = matrix::smith_normal_form(m);
    (AbelianGroupFin { factors: report.torsion.clone() }, report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectedSum {
    summands: Vec<RationalKnot>,
}

impl ConnectedSum {
    pub fn new(summands: Vec<RationalKnot>) -> Self {
        if summands.is_empty() {
            return Self::unknot();
        }
        Self { summands }
    }

    pub fn unknot() -> Self {
        Self { summands: vec![RationalKnot::unknot()] }
    }

    pub fn summands(&self) -> &[RationalKnot] {
        &self.summands
    }

    pub fn determinant(&self) -> BigInt {
        self.summands.iter().map(|k| k.p().clone()).product()
    }
}

impl fmt::Display for ConnectedSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.summands.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" # "))
    }
}

/// `H₁` of the double branched cover: `⊕ ℤ_{p_i}` over the summands.
pub fn h1_double_cover(k: &ConnectedSum) -> AbelianGroupFin {
    let orders: Vec<BigInt> = k.summands.iter().map(|s| s.p().clone()).collect();
    AbelianGroupFin::from_cyclic_orders(&orders).expect("determinants are positive")
}

/// `G ⊗ ℤ_p`: every `ℤ_d` becomes `ℤ_{gcd(d, p)}`.
pub fn reduce_mod(g: &AbelianGroupFin, p: &BigInt) -> Result<AbelianGroupFin> {
    if p <= &BigInt::one() {
        return Err(precondition(format!("modulus {p} must exceed 1")));
    }
    let orders: Vec<BigInt> = g.factors.iter().map(|d| d.gcd(p)).collect();
    AbelianGroupFin::from_cyclic_orders(&orders)
}

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm.
pub fn inverse_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// A unit `w mod p` with `w ≡ u (mod q)`.
///
/// `w` is found by CRT against the largest divisor of `p` coprime to `q`.
pub fn unit_lift(p: &BigInt, q: &BigInt, u: &BigInt) -> Result<BigInt> {
    if !q.is_positive() || !p.is_positive() || !p.is_multiple_of(q) {
        return Err(precondition(format!("{q} does not divide {p}")));
    }
    if !u.gcd(q).is_one() {
        return Err(precondition(format!("{u} is not a unit modulo {q}")));
    }
    let mut m = p.clone();
    loop {
        let g = m.gcd(q);
        if g.is_one() {
            break;
        }
        m /= g;
    }
    // w = u + q·t with w ≡ 1 (mod m)
    let t = ((BigInt::one() - u) * inverse_mod(q, &m).expect("coprime")).mod_floor(&m);
    Ok((u + q * t).mod_floor(p))
}

fn check_odd_modulus(p: &BigInt) -> Result<()> {
    if p.is_even() {
        return Err(Error::EvenDeterminant(p.to_string()));
    }
    if p <= &BigInt::one() {
        return Err(precondition(format!("modulus {p} must exceed 1")));
    }
    Ok(())
}

fn top_power(n: usize) -> BigInt {
    BigInt::one() << ((1usize << n) - 1)
}

/// An n-trivial 2-bridge knot with prescribed determinant residue.
#[derive(Clone, Debug)]
pub struct DetSolution {
    pub s: BigInt,
    /// `Σ ε_i·2^(2^n - 2^i) + s·2^(2^n - 1)`
    pub det: BigInt,
    pub sequence: ConwaySeq,
    pub knot: RationalKnot,
    /// One crossing change in the `a_n` twist unknots it.
    pub unknotting_one: bool,
}

/// Finds `s ∈ [1, p]` with `det(w_n, s) ≡ k (mod p)` for `a_i = ±2` given by `signs`.
pub fn solve_det_congruence(p: &BigInt, k: &BigInt, n: usize, signs: &[Sign]) -> Result<DetSolution> {
    check_odd_modulus(p)?;
    let sum = lm1_sum(n, signs)?;
    let inv = inverse_mod(&top_power(n), p).expect("p is odd");
    let mut s = ((k - &sum) * inv).mod_floor(p);
    if s.is_zero() {
        s = p.clone();
    }
    let det = lm1_det(n, signs, &s)?;
    debug_assert_eq!(det.mod_floor(p), k.mod_floor(p));
    let sequence = lm1_sequence(signs, &s)?;
    let knot = RationalKnot::from_conway(sequence.clone())?;
    let unknotting_one = certify_unknotting_one(&TwistParams::from_signs(signs)?, &s)?;
    Ok(DetSolution { s, det, sequence, knot, unknotting_one })
}

/// Result of making `det(T + (w_n, s, 0))` coprime to `p`.
#[derive(Clone, Debug)]
pub struct CoprimeAdjustment {
    pub s: BigInt,
    /// `gcd(m, p)` for `T = (m, k)`
    pub common: BigInt,
    /// `k·2^(2^n-1) + m·[Σ + s·2^(2^n-1)]`
    pub det: BigInt,
    /// Krebes pair of the tangle sum `T + (w_n, s, 0)`.
    pub sum: KrebesPair,
}

/// Picks `s` so that `T + (w_n, s, 0)` closes to a knot with determinant
/// coprime to `p`, where `T = (m, k)` with `m = ±2k ± 1`.
pub fn lm2_adjust(p: &BigInt, t: &KrebesPair, n: usize, signs: &[Sign]) -> Result<CoprimeAdjustment> {
    check_odd_modulus(p)?;
    let (m, k) = (t.numerator(), t.denominator());
    let two_k: BigInt = k * 2;
    let (below, above): (BigInt, BigInt) = (m - &two_k, m + &two_k);
    if below.abs() != BigInt::one() && above.abs() != BigInt::one() {
        return Err(precondition(format!("{t} is not of the form (±2k±1, k)")));
    }
    let top = top_power(n);
    let sum = lm1_sum(n, signs)?;
    let base = k * &top + m * &sum;
    let l = m.gcd(p);
    let s = if l.is_one() {
        // det ≡ 1
        let inv = inverse_mod(&(m * &top), p).expect("coprime");
        ((BigInt::one() - &base) * inv).mod_floor(p)
    } else {
        // det ≡ base (mod l) for every s; lift base to a unit w mod p and solve det ≡ w
        let w = unit_lift(p, &l, &base.mod_floor(&l))?;
        let rest = p / &l;
        let shift = (&w - &base) / &l;
        let inv = inverse_mod(&(m / &l * &top), &rest).expect("m/l and p/l are coprime");
        (shift * inv).mod_floor(&rest)
    };
    let det = &base + m * &top * &s;
    let mut tail = lm1_sequence(signs, &s)?;
    tail.push(BigInt::zero());
    let pair = krebes_sum(t, &krebes_of_sequence(&tail))?;
    debug_assert_eq!(closure_determinant(&pair), det.abs());
    Ok(CoprimeAdjustment { s, common: l, det, sum: pair })
}

/// Summand knots and their determinant data.
#[derive(Clone, Debug)]
pub struct Realization {
    pub knot: ConnectedSum,
    pub parts: Vec<DetSolution>,
    pub target: AbelianGroupFin,
    pub achieved: AbelianGroupFin,
}

impl Realization {
    pub fn verified(&self) -> bool {
        self.target == self.achieved
    }
}

/// A connected sum of n-trivial 2-bridge knots with `H₁(D, ℤ_p) ≅ ⊕ ℤ_{p_i}`.
///
/// Each `ℤ_{p_i}` comes from a summand with determinant `≡ p_i (mod p)`, so
/// `gcd(det, p) = p_i`. An empty target gives one knot with determinant coprime to `p`.
pub fn realize_module(p: &BigInt, target: &[BigInt], n: usize) -> Result<Realization> {
    check_odd_modulus(p)?;
    if n == 0 {
        return Err(precondition("n must be positive"));
    }
    if let Some(d) = target.iter().find(|d| !d.is_positive() || !p.is_multiple_of(d)) {
        return Err(precondition(format!("{d} does not divide {p}")));
    }
    let signs = vec![Sign::Plus; n];
    let parts: Vec<DetSolution> = if target.iter().all(|d| d.is_one()) {
        let adj = lm2_adjust(p, &KrebesPair::new(BigInt::one(), BigInt::zero())?, n, &signs)?;
        let k = adj.det.mod_floor(p);
        vec![solve_det_congruence(p, &k, n, &signs)?]
    } else {
        target
            .iter()
            .filter(|d| !d.is_one())
            .map(|d| solve_det_congruence(p, d, n, &signs))
            .collect::<Result<_>>()?
    };
    let knot = ConnectedSum::new(parts.iter().map(|s| s.knot.clone()).collect());
    let target_group = AbelianGroupFin::from_cyclic_orders(target)?;
    let achieved = reduce_mod(&h1_double_cover(&knot), p)?;
    Ok(Realization { knot, parts, target: target_group, achieved })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        x.into()
    }

    fn group(f: &[i64]) -> AbelianGroupFin {
        AbelianGroupFin::from_cyclic_orders(&f.iter().map(|&x| b(x)).collect::<Vec<_>>()).unwrap()
    }

    fn knot(p: i64, q: i64) -> RationalKnot {
        RationalKnot::from_i64(p, q).unwrap()
    }

    #[test]
    fn groups() {
        assert_eq!(group(&[2, 3]).factors(), &[b(6)]);
        assert_eq!(group(&[3, 3]).factors(), &[b(3), b(3)]);
        assert_eq!(group(&[1, 1]), AbelianGroupFin::trivial());
        assert_eq!(group(&[3, 15]).to_string(), "Z_3 + Z_15");
        assert_eq!(AbelianGroupFin::trivial().to_string(), "0");
        let (g, r) = smith_normal_form(&IntMatrix::identity(3));
        assert!(g.is_trivial());
        assert_eq!(r.free_rank, 0);
        let (g, _) = smith_normal_form(&IntMatrix::from_i64_rows(&[&[7]]).unwrap());
        assert_eq!(g, group(&[7]));
    }

    #[test]
    fn double_covers() {
        assert_eq!(h1_double_cover(&ConnectedSum::new(vec![knot(15, 2)])), group(&[15]));
        let g = h1_double_cover(&ConnectedSum::new(vec![knot(3, 1), knot(5, 2)]));
        assert_eq!(g.factors(), &[b(15)]);
        let g = h1_double_cover(&ConnectedSum::new(vec![knot(3, 1), knot(3, 1)]));
        assert_eq!((g.factors(), g.torsion_count()), (&[b(3), b(3)][..], 2));
        assert!(h1_double_cover(&ConnectedSum::new(vec![])).is_trivial());
    }

    #[test]
    fn reductions() {
        assert_eq!(reduce_mod(&group(&[12]), &b(9)).unwrap(), group(&[3]));
        assert!(reduce_mod(&group(&[5]), &b(3)).unwrap().is_trivial());
        assert_eq!(reduce_mod(&group(&[15]), &b(15)).unwrap(), group(&[15]));
        assert!(reduce_mod(&group(&[15]), &b(1)).is_err());
    }

    #[test]
    fn unit_lift_examples() {
        assert_eq!(unit_lift(&b(9), &b(3), &b(2)).unwrap(), b(2));
        assert_eq!(unit_lift(&b(15), &b(5), &b(3)).unwrap(), b(13));
        assert_eq!(unit_lift(&b(21), &b(21), &b(5)).unwrap(), b(5));
        assert!(unit_lift(&b(15), &b(5), &b(10)).is_err());
        assert!(unit_lift(&b(15), &b(4), &b(1)).is_err());
    }

    #[test]
    fn congruence_examples() {
        use Sign::*;
        let s = solve_det_congruence(&b(5), &b(3), 1, &[Plus]).unwrap();
        assert_eq!((s.s.clone(), s.det.clone()), (b(1), b(3)));
        assert!(s.unknotting_one);
        // Σ = 5 for a = (-2, -2); 8 ≡ 1 (mod 7)
        for k in 0..7 {
            let s = solve_det_congruence(&b(7), &b(k), 2, &[Minus, Minus]).unwrap();
            let expect = (k - 5).rem_euclid(7);
            assert_eq!(s.s.clone() % 7, b(expect));
        }
        let s = solve_det_congruence(&b(9), &b(0), 2, &[Plus, Minus]).unwrap();
        assert!(s.det.is_multiple_of(&b(9)));
        assert_eq!(s.knot.p(), &s.det.abs());
        assert!(matches!(solve_det_congruence(&b(8), &b(1), 1, &[Plus]), Err(Error::EvenDeterminant(_))));
        assert!(solve_det_congruence(&b(7), &b(1), 2, &[Plus]).is_err());
    }

    #[test]
    fn coprime_adjustment_examples() {
        use Sign::*;
        let t = KrebesPair::from_i64(3, 1).unwrap();
        let a = lm2_adjust(&b(5), &t, 1, &[Plus]).unwrap();
        assert!(a.det.gcd(&b(5)).is_one());
        assert!(a.common.is_one());
        // brute force over s ∈ [0, 5) on the formula
        let ok: Vec<i64> = (0..5).filter(|&s| (b(2) + b(3) * (b(1) + b(2) * b(s))).gcd(&b(5)).is_one()).collect();
        assert!(ok.contains(&i64::try_from(&a.s).unwrap()));

        // l = gcd(2k+1, p) = 5 > 1
        let t = KrebesPair::from_i64(5, 2).unwrap();
        for p in [15, 45, 75] {
            let a = lm2_adjust(&b(p), &t, 2, &[Plus, Minus]).unwrap();
            assert_eq!(a.common, b(5));
            assert!(a.det.gcd(&b(p)).is_one(), "p = {p}");
            assert_eq!(closure_determinant(&a.sum), a.det.abs());
        }
        assert!(lm2_adjust(&b(15), &KrebesPair::from_i64(7, 1).unwrap(), 1, &[Plus]).is_err());
    }

    #[test]
    fn realization_examples() {
        let r = realize_module(&b(15), &[b(3), b(5)], 2).unwrap();
        assert!(r.verified());
        assert_eq!(r.parts.len(), 2);
        let gcds: Vec<BigInt> = r.parts.iter().map(|s| s.det.gcd(&b(15))).collect();
        assert_eq!(gcds, vec![b(3), b(5)]);

        let r = realize_module(&b(9), &[b(9)], 1).unwrap();
        assert!(r.verified());
        assert_eq!(r.parts.len(), 1);
        assert!(r.parts[0].det.is_multiple_of(&b(9)));

        let r = realize_module(&b(21), &[], 3).unwrap();
        assert!(r.verified());
        assert!(r.achieved.is_trivial());
        assert_eq!(r.knot.summands().len(), 1);
        assert!(r.knot.determinant().gcd(&b(21)).is_one());

        assert!(realize_module(&b(15), &[b(7)], 1).is_err());
    }
}
