use proptest::prelude::*;

use super::*;
use crate::rootdata::DynkinType;

fn rs(t: &str) -> RootSystem {
    RootSystem::new(t.parse::<DynkinType>().unwrap())
}

fn tau(v: &[i64]) -> ExtAffineWeylElement {
    ExtAffineWeylElement::translation(Coweight(v.to_vec()))
}

#[test]
fn translation_lengths() {
    let a1 = rs("A1");
    assert_eq!(tau(&[1]).length(&a1), 1);
    assert_eq!(tau(&[2]).length(&a1), 2);
    let a2 = rs("A2");
    assert_eq!(tau(&[1, 1]).length(&a2), 4);
    assert_eq!(tau(&[-1, -1]).length(&a2), 4);
    // antidominant translations have length <2 rho, -mu>
    let d4 = rs("D4");
    let mu = Coweight(vec![0, 1, 0, 0]);
    assert_eq!(ExtAffineWeylElement::translation(-&mu).length(&d4), d4.two_rho_pairing(&mu) as usize);
}

#[test]
fn coroot_translation_word() {
    let a1 = rs("A1");
    let t = ExtAffineWeylElement::translation(a1.simple_coroot(1));
    assert_eq!(t.length(&a1), 2);
    let rw = t.reduced_word(&a1);
    assert_eq!(rw.word.len(), 2);
    assert!(rw.omega.element.is_identity());
    assert!(rw.word.iter().all(|&i| i <= 1));
    assert_eq!(ExtAffineWeylElement::from_word(&a1, &rw.word), t);
}

#[test]
fn simple_reflections_are_involutions() {
    for t in ["A2", "B2", "G2", "C3"] {
        let r = rs(t);
        for i in 0..=r.rank() {
            let s = ExtAffineWeylElement::simple(&r, i);
            assert_eq!(s.length(&r), 1, "{t} s{i}");
            assert!(s.compose(&r, &s).is_identity(), "{t} s{i}");
        }
    }
}

#[test]
fn s0_acts_on_affine_weights() {
    // s_0 Lambda_0 = Lambda_0 + theta - delta
    let a1 = rs("A1");
    let s0 = ExtAffineWeylElement::simple(&a1, 0);
    let img = s0.act(&a1, &AffineWeight::vacuum(1, 1));
    assert_eq!(img.finite, Weight(vec![2]));
    assert_eq!(img.delta, Rational::ONE);
    // s_0 on level 0 reflects in theta
    assert_eq!(s0.act_level(&a1, 0, &Weight(vec![2])), Weight(vec![-2]));
}

#[test]
fn length_zero_group() {
    assert_eq!(rs("A1").length_zero_elements().len(), 2);
    assert_eq!(rs("A3").length_zero_elements().len(), 4);
    assert_eq!(rs("D4").length_zero_elements().len(), 4);
    assert_eq!(rs("E8").length_zero_elements().len(), 1);
    let a1 = rs("A1");
    for om in a1.length_zero_elements() {
        assert_eq!(om.element.length(&a1), 0);
    }
    // tau_{w^vee} s_1 swaps the two affine nodes of sl2
    let pi = ExtAffineWeylElement {
        translation: Coweight(vec![1]),
        finite: FiniteWeylElement::simple(&a1, 1),
    };
    assert_eq!(pi.length(&a1), 0);
    let other = ExtAffineWeylElement {
        translation: Coweight(vec![-1]),
        finite: FiniteWeylElement::simple(&a1, 1),
    };
    assert_eq!(other.length(&a1), 2);
    assert_eq!(pi.reduced_word(&a1).omega.node_perm, vec![1, 0]);
}

#[test]
fn demazure_params_of_level_multiples() {
    for t in ["A1", "A2", "B2", "G2"] {
        let r = rs(t);
        let n = r.rank();
        for l in 1..=3 {
            for i in 1..=n {
                let lam_v = Coweight::fundamental(n, i);
                let mu = r.coweight_embed(&lam_v).scale(l);
                let (w, lam) = r.demazure_params(l, &mu).unwrap();
                assert_eq!(w, ExtAffineWeylElement::translation(r.longest_coweight(&lam_v)), "{t} l={l} i={i}");
                assert_eq!(lam, AffineWeight::vacuum(n, l));
            }
        }
    }
}

#[test]
fn demazure_params_trivial_and_domain() {
    let a2 = rs("A2");
    let (w, lam) = a2.demazure_params(1, &Weight::zero(2)).unwrap();
    assert!(w.is_identity());
    assert_eq!(lam, AffineWeight::vacuum(2, 1));
    assert!(matches!(a2.demazure_params(0, &Weight(vec![1, 0])), Err(Error::Domain(_))));
    assert!(matches!(a2.demazure_params(1, &Weight(vec![-1, 0])), Err(Error::Domain(_))));
    assert!(a2.demazure_params(0, &Weight::zero(2)).unwrap().0.is_identity());
}

#[test]
fn demazure_params_sl2_level_two() {
    let a1 = rs("A1");
    let (w, lam) = a1.demazure_params(2, &Weight(vec![1])).unwrap();
    assert_eq!(w.act_level(&a1, 2, &lam.finite), Weight(vec![-1]));
    assert!(lam.is_dominant(&a1));
    assert_eq!(lam.finite, Weight(vec![1]));
    assert_eq!(w.length(&a1), 1);
    assert!(w.has_current_stable_form(&a1));
}

fn arb_word(max_node: usize, len: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..=max_node, 0..=len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn peeled_word_matches_length(word in arb_word(2, 10)) {
        let r = rs("A2");
        let w = ExtAffineWeylElement::from_word(&r, &word);
        let rw = w.reduced_word(&r);
        prop_assert_eq!(rw.word.len(), w.length(&r));
        prop_assert!(rw.word.len() <= word.len());
        prop_assert_eq!(rw.word.len() % 2, word.len() % 2);
        let rebuilt = ExtAffineWeylElement::from_word(&r, &rw.word).compose(&r, &rw.omega.element);
        prop_assert_eq!(rebuilt, w);
    }

    #[test]
    fn peeled_word_matches_length_b2(word in arb_word(2, 8)) {
        let r = rs("B2");
        let w = ExtAffineWeylElement::from_word(&r, &word);
        let rw = w.reduced_word(&r);
        prop_assert_eq!(rw.word.len(), w.length(&r));
        prop_assert!(rw.omega.element.is_identity());
    }

    #[test]
    fn action_is_a_group_action(a in arb_word(2, 6), b in arb_word(2, 6), x in prop::collection::vec(-3i64..=3, 2)) {
        let r = rs("A2");
        let u = ExtAffineWeylElement::from_word(&r, &a);
        let v = ExtAffineWeylElement::from_word(&r, &b);
        let lam = AffineWeight::new(2, Weight(x));
        let uv = u.compose(&r, &v);
        prop_assert_eq!(uv.act(&r, &lam), u.act(&r, &v.act(&r, &lam)));
        prop_assert!(u.compose(&r, &u.inverse(&r)).is_identity());
    }

    #[test]
    fn params_reach_extremal_weight(l in 1i64..=3, a in 0i64..=4, b in 0i64..=4) {
        let r = rs("A2");
        let mu = Weight(vec![a, b]);
        let (w, lam) = r.demazure_params(l, &mu).unwrap();
        prop_assert!(lam.is_dominant(&r));
        prop_assert_eq!(w.act_level(&r, l, &lam.finite), r.longest_weight(&mu));
        prop_assert!(w.has_current_stable_form(&r));
    }
}
