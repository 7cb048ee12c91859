use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use ratknot_core::oracle::{state_sum_bracket, state_sum_pair, traczyk_signature};
use ratknot_core::polyinv::bracket::{canonical_sequence, BracketPair};
use ratknot_core::polyinv::diagram::TangleDiagram;
use ratknot_core::polyinv::*;
use ratknot_core::trivial::family_knot;
use ratknot_core::{ConwaySeq, RationalKnot, TwistParams};

fn knot(p: i64, q: i64) -> RationalKnot {
    RationalKnot::from_i64(p, q).unwrap()
}

fn seq(a: &[i64]) -> ConwaySeq {
    ConwaySeq::from_i64s(a).unwrap()
}

fn lp(t: &[(i64, i64)]) -> LaurentPoly {
    LaurentPoly::from_i64_terms(t)
}

fn int(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

/// All 2-bridge knots `S(p, q)` with odd `p ≤ max`, `0 < q < p`.
fn knots_up_to(max: i64) -> Vec<RationalKnot> {
    (3..=max)
        .step_by(2)
        .flat_map(|p| (1..p).filter(move |q| q.gcd(&p) == 1).map(move |q| knot(p, q)))
        .collect()
}

#[test]
fn bracket_pair_examples() {
    let b = bracket_pair(&seq(&[0]));
    assert_eq!((b.zero, b.infinity), (LaurentPoly::one(), LaurentPoly::zero()));
    let b = bracket_pair(&seq(&[1]));
    assert_eq!((b.zero, b.infinity), (lp(&[(1, 1)]), lp(&[(-1, 1)])));
    let fig8 = seq(&[2, 2]);
    let closed = TangleDiagram::conway(&fig8).numerator_closure();
    assert_eq!(bracket_pair(&fig8).numerator_closure(), state_sum_bracket(&closed));
}

#[test]
fn jones_examples() {
    assert_eq!(jones(&RationalKnot::unknot()), LaurentPoly::one());
    let left = lp(&[(-4, -1), (-3, 1), (-1, 1)]);
    let v = jones(&knot(3, 1));
    assert!(v == left || v == left.invert_var(), "{}", v.display_in("t"));
    assert_eq!(jones(&knot(3, 2)), left);
    let fig8 = lp(&[(-2, 1), (-1, -1), (0, 1), (1, -1), (2, 1)]);
    assert_eq!(jones(&knot(5, 2)), fig8);
    assert!(fig8.is_palindromic());
}

#[test]
fn alexander_examples() {
    let (d, n) = alexander_conway(&knot(3, 1));
    assert_eq!(d, lp(&[(-1, 1), (0, -1), (1, 1)]));
    assert_eq!(n, lp(&[(0, 1), (2, 1)]));
    let (d, n) = alexander_conway(&knot(5, 2));
    assert_eq!(d, lp(&[(-1, -1), (0, 3), (1, -1)]));
    assert_eq!(n, lp(&[(0, 1), (2, -1)]));
    assert_eq!(d.eval_int(-1).abs(), int(5));
    let (d, n) = alexander_conway(&RationalKnot::unknot());
    assert_eq!((d, n), (LaurentPoly::one(), LaurentPoly::one()));
}

#[test]
fn signature_and_genus_examples() {
    assert_eq!(signature(&knot(3, 1)).abs(), 2);
    assert_eq!(signature(&knot(5, 2)), 0);
    assert_eq!(signature(&knot(7, 3)).abs(), 2);
    assert_eq!(signature(&RationalKnot::unknot()), 0);
    assert_eq!(genus_rational(&knot(3, 1)), 1);
    assert_eq!(genus_rational(&knot(5, 2)), 1);
    let k = family_knot(&TwistParams::from_i64s(&[2, -4]).unwrap(), &2.into()).unwrap();
    assert_eq!(genus_rational(&k), 2);
    assert_eq!(genus_rational(&RationalKnot::unknot()), 0);
}

#[test]
fn vassiliev_examples() {
    let u = vassiliev_extract(&RationalKnot::unknot(), 4).unwrap();
    assert_eq!((u.v2, u.v3.clone()), (BigInt::zero(), int(0)));
    assert_eq!(u.jones_taylor, vec![int(1), int(0), int(0), int(0), int(0)]);

    let left = vassiliev_extract(&knot(3, 2), 3).unwrap();
    let right = vassiliev_extract(&knot(3, 1), 3).unwrap();
    assert_eq!(left.v2, BigInt::one());
    assert_eq!(right.v2, BigInt::one());
    assert_eq!(left.v3.abs(), int(1));
    assert_eq!(left.v3, -right.v3);
    assert_eq!(left.jones_taylor[1], int(0));

    // depth-3 family: degree 2 vanishes, degree 3 does not
    for c in [2, -2, 4] {
        let k = family_knot(&TwistParams::from_i64s(&[2, -4, 2]).unwrap(), &c.into()).unwrap();
        let v = vassiliev_extract(&k, 3).unwrap();
        assert_eq!(&v.jones_taylor[..4], &[int(1), int(0), int(0), int(-12)]);
        assert_eq!((v.v2, v.v3), (BigInt::zero(), int(2)));
    }
    assert!(vassiliev_extract(&knot(3, 1), 1).is_err());
}

#[test]
fn similarity_examples() {
    let k = family_knot(&TwistParams::from_i64s(&[2, -4, 2]).unwrap(), &2.into()).unwrap();
    assert!(certify_n_similar_to_unknot(&k, 2).unwrap());
    let r = vassiliev::similarity_report(&k, 3).unwrap();
    assert!(!r.holds());
    assert_eq!(r.jones_failures, vec![3]);
    assert!(r.conway_failures.is_empty());
    assert!(r.scope().contains("not sufficient"));
    assert!(!certify_n_similar_to_unknot(&knot(3, 1), 2).unwrap());
    for n in 2..6 {
        assert!(certify_n_similar_to_unknot(&RationalKnot::unknot(), n).unwrap());
    }
}

/// Depth-`n` family knots agree with the unknot below degree `n`; the
/// degree-`n` Taylor coefficient is a non-zero multiple of `a_1⋯a_n`.
#[test]
fn family_knots_vanish_below_their_depth() {
    let two = |n: usize, bits: usize| (0..n).map(|i| if bits >> i & 1 == 1 { -2 } else { 2 }).collect::<Vec<i64>>();
    for n in 1..=4usize {
        for bits in 0..1usize << n {
            for c in [2i64, -2, 4, -4] {
                let a = two(n, bits);
                let k = family_knot(&TwistParams::from_i64s(&a).unwrap(), &c.into()).unwrap();
                let v = vassiliev_extract(&k, n.max(2)).unwrap();
                for d in 2..n {
                    assert!(v.jones_taylor[d].is_zero(), "{a:?} c={c} u_{d}");
                }
                if n >= 2 {
                    assert!(!v.jones_taylor[n].is_zero(), "{a:?} c={c} u_{n}");
                }
                let (_, nabla) = alexander_conway(&k);
                let first = nabla.terms().map(|(e, _)| e).find(|&e| e > 0);
                if n >= 2 {
                    assert_eq!(first, Some(1 << (n - 1)), "{a:?} c={c}");
                }
                assert_eq!(genus_rational(&k), 1 << (n - 1));
            }
        }
    }
    // u_2 = (3/4)·a_1·a_2 on depth-2 families
    for (a1, a2) in [(2i64, 2i64), (2, -4), (-4, 6), (6, 2)] {
        let k = family_knot(&TwistParams::from_i64s(&[a1, a2]).unwrap(), &2.into()).unwrap();
        let v = vassiliev_extract(&k, 2).unwrap();
        assert_eq!(v.jones_taylor[2], BigRational::new((3 * a1 * a2).into(), 4.into()), "{a1} {a2}");
    }
}

#[test]
fn seifert_invariants_for_small_knots() {
    for k in knots_up_to(99) {
        let p = k.p().clone();
        let (d, nabla) = alexander_conway(&k);
        assert!(d.is_palindromic(), "{k}");
        assert_eq!(d.eval_int(1), int(1), "{k}");
        assert_eq!(d.eval_int(-1).abs(), BigRational::from_integer(p.clone()), "{k}");
        assert_eq!(nabla.eval_int(0), int(1));
        let sigma = signature(&k);
        assert_eq!(sigma % 4 == 0, (&p % 4u32) == BigInt::one(), "{k}");
        assert_eq!(2 * genus_rational(&k) as i64, d.span(), "{k}");
        let mirror = k.mirror();
        assert_eq!(signature(&mirror), -sigma, "{k}");
    }
}

#[test]
fn conway_continuant_matches_alexander_substitution() {
    for k in knots_up_to(61) {
        let (delta, nabla) = alexander_conway(&k);
        assert_eq!(seifert::conway_from_alexander(&delta), nabla, "{k}");
    }
}

#[test]
fn seifert_signature_agrees_with_alternating_diagrams() {
    for k in knots_up_to(61) {
        let a = canonical_sequence(&k).unwrap();
        let d = TangleDiagram::conway(&a).numerator_closure();
        assert_eq!(Some(signature(&k)), traczyk_signature(&d), "{k} via {a}");
    }
}

#[test]
fn jones_and_alexander_agree_on_v2() {
    for k in knots_up_to(61) {
        let v = jones(&k);
        assert_eq!(v.eval_int(1), int(1), "{k}");
        let (d, _) = alexander_conway(&k);
        let d2: BigInt = d.terms().map(|(j, c)| c * BigInt::from(j * (j - 1))).sum();
        let data = vassiliev::vassiliev_from_jones(&v, 3);
        assert_eq!(BigInt::from(2) * &data.v2, d2, "{k}");
    }
}

#[test]
fn jones_respects_symmetries() {
    for k in knots_up_to(45) {
        let v = jones(&k);
        assert_eq!(jones(&k.mirror()), v.invert_var(), "{k}");
        let p = k.p().clone();
        let inv = k.q().modinv(&p).unwrap();
        let other = RationalKnot::new(p.clone(), inv).unwrap();
        assert_eq!(jones(&other), v, "{k}");
        if (k.q() * k.q() + 1u32).is_multiple_of(&p) {
            assert!(v.is_palindromic(), "amphichiral {k}");
        }
    }
}

fn small_seq() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, 1..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn transfer_pair_matches_state_sum(a in small_seq()) {
        let s = seq(&a);
        let d = TangleDiagram::conway(&s);
        prop_assume!(d.crossing_count() <= 10);
        let BracketPair { zero, infinity } = state_sum_pair(&d);
        let t = bracket_pair(&s);
        prop_assert_eq!(t.zero, zero);
        prop_assert_eq!(t.infinity, infinity);
    }

    #[test]
    fn jones_is_independent_of_the_diagram(a in small_seq()) {
        let s = seq(&a);
        let k = RationalKnot::from_conway(s.clone());
        prop_assume!(k.is_ok());
        let k = k.unwrap();
        prop_assert_eq!(jones_of_sequence(&s).unwrap(), jones(&k));
    }
}
