use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;

use ratknot_core::conway::{to_even_form, to_positive_form};
use ratknot_core::oracle::if_numerator_i128;
use ratknot_core::tangle::{closure_determinant, is_trivial_tangle, krebes_of_sequence};
use ratknot_core::trivial::{family_knot, lm1_det, lm1_fraction, make_wn, verify_n_trivial_structure, Sign};
use ratknot_core::{ConwaySeq, ExtRational, MirrorMode, RationalKnot, TwistParams};

fn seq(a: &[i64]) -> ConwaySeq {
    ConwaySeq::from_i64s(a).unwrap()
}

fn frac(p: i64, q: i64) -> ExtRational {
    ExtRational::normalize(p.into(), q.into()).unwrap()
}

#[test]
fn parse_display_round_trip() {
    for text in ["C(2,-4,-2)", "C(3)", "C(1,1,1,1)"] {
        let a: ConwaySeq = text.parse().unwrap();
        assert_eq!(a.to_string(), text);
    }
    assert_eq!("C(2,-4,-2)".parse::<ConwaySeq>().unwrap().if_eval(), frac(-16, 7));
}

#[test]
fn wn_hand_computed() {
    let t = TwistParams::from_i64s(&[2, -4, 2]).unwrap();
    assert_eq!(make_wn(&t), seq(&[2, -4, -2, 2, 2, 4, -2]));
    assert_eq!(make_wn(&t).len(), 7);
}

#[test]
fn odd_twist_parameters_are_rejected() {
    assert!(TwistParams::from_i64s(&[2, 3]).is_err());
    assert!(TwistParams::from_i64s(&[]).is_err());
}

#[test]
fn zero_entry_trivializes() {
    for zeroed in 0..3 {
        let mut v = vec![2, -4, 6];
        v[zeroed] = 0;
        let w = make_wn(&TwistParams::from_i64s(&v).unwrap());
        assert!(is_trivial_tangle(&w), "{v:?}");
    }
    assert!(!is_trivial_tangle(&make_wn(&TwistParams::from_i64s(&[2, -4, 6]).unwrap())));
}

#[test]
fn structure_report_is_clean() {
    let t = TwistParams::from_i64s(&[2, 2, 2, 2]).unwrap();
    let r = verify_n_trivial_structure(&t, 50, 11);
    assert!(r.passed(), "{:?}", r.violations);
    assert_eq!(r.nontrivial, Some(true));
}

#[test]
fn family_knot_needs_nonzero_parameters() {
    let t = TwistParams::from_i64s(&[2, 0]).unwrap();
    assert!(family_knot(&t, &2.into()).is_err());
    let t = TwistParams::from_i64s(&[2, 2]).unwrap();
    assert!(family_knot(&t, &0.into()).is_err());
    assert!(family_knot(&t, &3.into()).is_err());
}

#[test]
fn rational_knot_classification() {
    let a = RationalKnot::from_i64(7, 2).unwrap();
    let b = RationalKnot::from_i64(7, 4).unwrap();
    assert!(a.same_knot(&b));
    assert!(!a.same_knot(&a.mirror()));
    assert!(a.same_up_to_mirror(&RationalKnot::from_i64(7, 3).unwrap()));
    assert!(RationalKnot::from_i64(8, 3).is_err());
    assert!(RationalKnot::from_i64(9, 3).is_err());
}

fn nonzero_entries(max_len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(prop_oneof![-9i64..=-1, 1i64..=9], 1..=max_len)
}

fn even_params(max_len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec((-6i64..=6).prop_map(|x| 2 * x), 1..=max_len)
}

proptest! {
    #[test]
    fn if_eval_matches_i128_oracle(a in nonzero_entries(12)) {
        let f = seq(&a).if_eval();
        let num = if_numerator_i128(&a).unwrap();
        prop_assert_eq!(f.numer().abs(), BigInt::from(num));
    }

    #[test]
    fn positive_form_round_trips(p in 1i64..500, q in 1i64..500) {
        let f = frac(p, q);
        let a = to_positive_form(&f).unwrap();
        let (last, rest) = a.entries().split_last().unwrap();
        prop_assert!(rest.iter().all(|x| x.is_positive()));
        prop_assert_eq!(last.is_positive(), p >= q);
        prop_assert_eq!(a.if_eval(), f);
    }

    #[test]
    fn even_form_has_even_entries(p in (1i64..300).prop_map(|x| 2 * x + 1), q in 1i64..600) {
        prop_assume!(num_integer::gcd(p, q) == 1);
        let e = to_even_form(&p.into(), &q.into(), MirrorMode::Strict).unwrap();
        prop_assert!(e.entries().iter().all(|x| x % 2 == BigInt::from(0)));
        prop_assert_eq!(e.len() % 2, 0);
        let f = e.if_eval();
        prop_assert_eq!(f.numer().abs(), BigInt::from(p));
    }

    #[test]
    fn krebes_pair_tracks_fraction(a in nonzero_entries(10)) {
        let w = seq(&a);
        let k = krebes_of_sequence(&w);
        prop_assert_eq!(k.to_fraction(), w.if_eval());
    }

    #[test]
    fn wn_is_n_trivial(v in even_params(5), idx in 0usize..5) {
        let t = TwistParams::from_i64s(&v).unwrap();
        let mut zeroed = v.clone();
        let i = idx % v.len();
        zeroed[i] = 0;
        prop_assert!(is_trivial_tangle(&make_wn(&TwistParams::from_i64s(&zeroed).unwrap())));
        let len = make_wn(&t).len();
        prop_assert_eq!(len, (1usize << v.len()) - 1);
    }

    #[test]
    fn lm1_closed_form_matches_closure(bits in 0u32..64, n in 1usize..=6, s in -12i64..=12) {
        let signs: Vec<Sign> = (0..n).map(|i| if bits >> i & 1 == 1 { Sign::Minus } else { Sign::Plus }).collect();
        let w = make_wn(&TwistParams::from_signs(&signs).unwrap());
        prop_assert_eq!(lm1_fraction(n, &signs).unwrap().abs(), w.if_eval().abs());
        let mut closed = w.clone();
        closed.push(s.into());
        let det = lm1_det(n, &signs, &s.into()).unwrap();
        prop_assert_eq!(det.abs(), closure_determinant(&krebes_of_sequence(&closed)));
    }
}
