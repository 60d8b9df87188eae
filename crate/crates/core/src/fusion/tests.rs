use std::collections::HashMap;

use super::*;
use crate::charring::{generalized_demazure_character, weyl_character};
use crate::currentmod::bracket_audit;
use crate::fusion::checks::random_points;
use crate::rootdata::{AffineWeight, DynkinType, ExtAffineWeylElement};

fn rs(t: &str) -> Arc<RootSystem> {
    Arc::new(RootSystem::new(t.parse::<DynkinType>().unwrap()))
}

fn w(v: &[i64]) -> Weight {
    Weight(v.to_vec())
}

fn cw(v: &[i64]) -> Coweight {
    Coweight(v.to_vec())
}

fn v(r: &Arc<RootSystem>, lam: &[i64]) -> Arc<CurrentModule> {
    irreducible_evaluation_module(r, &w(lam)).unwrap()
}

#[test]
fn smallest_fusion() {
    let a1 = rs("A1");
    let m = v(&a1, &[1]);
    let f = fusion_product(&[m.clone(), m.clone()], &default_points(2)).unwrap();
    assert_eq!(f.filtration.stages, vec![3, 4]);
    assert_eq!(f.filtration.top_degree, 1);
    let expected = weyl_character(&a1, &w(&[2])).unwrap().sum(&weyl_character(&a1, &w(&[0])).unwrap().shift(1));
    assert!(f.character.same_terms(&expected));
    let d = affine_demazure_character(&a1, 1, &w(&[2]), DeltaCap::Auto).unwrap();
    assert!(f.character.same_terms(&d));
}

#[test]
fn single_factor_is_identity() {
    let a2 = rs("A2");
    let m = v(&a2, &[1, 1]);
    let f = fusion_product(&[m.clone()], &[Rational::new(5, 2)]).unwrap();
    assert!(f.character.same_terms(&m.graded_character().unwrap()));
}

#[test]
fn input_errors() {
    let a1 = rs("A1");
    let m = v(&a1, &[1]);
    let same = [Rational::ONE, Rational::ONE];
    assert!(matches!(fusion_product(&[m.clone(), m.clone()], &same), Err(Error::Domain(_))));
    assert!(matches!(fusion_product(&[m.clone()], &default_points(2)), Err(Error::Domain(_))));

    // V(w) + V(0) with the cyclic vector in V(w) is not cyclic
    let mut mats = HashMap::new();
    for g in Generator::all(1, 0) {
        let mut cols: Vec<SparseVec> = (0..2).map(|j| m.matrix(g).column(j).clone()).collect();
        cols.push(SparseVec::new());
        mats.insert(g, SparseMatrix::from_columns(3, cols));
    }
    let mut weights = m.weights().to_vec();
    weights.push(w(&[0]));
    let bad = Arc::new(CurrentModule::from_table(a1.clone(), weights, vec![0; 3], Some(SparseVec::unit(0)), 1, mats));
    let err = fusion_product(&[bad, m], &default_points(2)).unwrap_err();
    assert_eq!(err, Error::NotCyclic { achieved: 4, expected: 6 });
}

#[test]
fn graded_module_of_a_fusion() {
    let a2 = rs("A2");
    let f = fusion_product(&[v(&a2, &[1, 0]), v(&a2, &[0, 1])], &default_points(2)).unwrap();
    let g = f.graded_module().unwrap();
    assert_eq!(g.dim(), 9);
    assert!(g.graded_character().unwrap().same_terms(&f.character));
    assert!(bracket_audit(&g, 200, 11).passed());
    assert_eq!(g.cyclic_vector().unwrap().first().unwrap().0, 0);
}

#[test]
fn layers_are_w_symmetric_and_exhaust() {
    let a2 = rs("A2");
    let ms = [v(&a2, &[1, 0]), v(&a2, &[1, 0]), v(&a2, &[0, 1])];
    let f = fusion_product(&ms, &default_points(3)).unwrap();
    assert_eq!(f.character.dim(), 27);
    assert!(f.character.is_w_symmetric(&a2));
    assert_eq!(*f.filtration.stages.last().unwrap(), 27);
    assert_eq!(f.filtration.layer_characters[0].get(&w(&[2, 1])), Some(&1));
}

#[test]
fn associativity_examples() {
    let a1 = rs("A1");
    let m = v(&a1, &[1]);
    let ms = [m.clone(), m.clone(), m.clone()];
    let r = check_associativity(&ms, 0..2, &default_points(2), &default_points(2)).unwrap();
    assert!(r.equal);
    assert_eq!(r.flat.dim(), 8);
    let d = affine_demazure_character(&a1, 1, &w(&[3]), DeltaCap::Auto).unwrap();
    assert!(r.nested.same_terms(&d));
    let r = check_associativity(&ms, 1..2, &default_points(3), &[Rational::ONE]).unwrap();
    assert!(r.equal);
}

#[test]
fn parameter_independence_examples() {
    let a1 = rs("A1");
    let m = v(&a1, &[1]);
    let rep = check_parameter_independence(&[m.clone(), m.clone()], 5, 42).unwrap();
    assert!(rep.is_singleton());
    assert_eq!(rep.points.len(), 5);
    let rep = check_parameter_independence(&[m.clone()], 3, 1).unwrap();
    assert!(rep.is_singleton());
    let d2 = demazure_module_explicit(&a1, 2, &cw(&[1])).unwrap();
    let d1 = demazure_module_explicit(&a1, 1, &cw(&[1])).unwrap();
    let rep = check_parameter_independence(&[d2, d1], 5, 7).unwrap();
    assert!(rep.is_singleton());
    assert_eq!(rep.characters[0].dim(), 6);
    assert!(check_parameter_independence(&[m], 1, 0).is_err());
}

#[test]
fn affine_moves_of_points_keep_the_filtration() {
    let a2 = rs("A2");
    let ms = [v(&a2, &[1, 0]), v(&a2, &[0, 1]), v(&a2, &[1, 0])];
    let rational = [Rational::new(1, 2), Rational::new(-2, 3), Rational::new(5, 6)];
    let scaled: Vec<Rational> = rational.iter().map(|c| c * &Rational::from_int(6)).collect();
    assert!(scaled.iter().all(Rational::is_integer));
    let f = fusion_product(&ms, &rational).unwrap();
    let g = fusion_product(&ms, &scaled).unwrap();
    assert_eq!(f.filtration, g.filtration);
    assert_eq!(f.character, g.character);
    let moved: Vec<Rational> = scaled.iter().map(|c| c + &Rational::from_int(-7)).collect();
    let h = fusion_product(&ms, &moved).unwrap();
    assert_eq!(f.filtration, h.filtration);
    assert_eq!(f.character, h.character);
}

#[test]
fn random_points_are_distinct_and_seeded() {
    use rand::SeedableRng;
    let mut a = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    let mut b = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    let p = random_points(6, &mut a);
    assert_eq!(p, random_points(6, &mut b));
    for i in 0..6 {
        assert!(!p[..i].contains(&p[i]));
        assert!(p[i].is_integer());
        assert!((-3..=4).contains(&p[i].to_i64().unwrap()));
    }
}

#[test]
fn explicit_demazure_modules() {
    let a1 = rs("A1");
    assert_eq!(demazure_module_explicit(&a1, 1, &cw(&[1])).unwrap().dim(), 2);
    let d = demazure_module_explicit(&a1, 1, &cw(&[2])).unwrap();
    assert_eq!(d.dim(), 4);
    assert_eq!(d.graded_character().unwrap().layer_dims(), vec![3, 1]);
    assert_eq!(demazure_module_explicit(&a1, 2, &cw(&[1])).unwrap().dim(), 3);
    assert_eq!(demazure_module_explicit(&a1, 0, &cw(&[0])).unwrap().dim(), 1);
    let a2 = rs("A2");
    let d = demazure_module_explicit(&a2, 1, &cw(&[1, 1])).unwrap();
    assert_eq!(d.dim(), 9);
    assert!(bracket_audit(&d, 200, 5).passed());
    assert!(demazure_module_explicit(&rs("D4"), 1, &cw(&[1, 0, 0, 0])).is_err());
}

#[test]
fn generalized_oracle_examples() {
    let a1 = rs("A1");
    // closure inside D(1, w) ⊗ D(1, 2w)
    let o = generalized_demazure_oracle(&a1, &[2, 1], &[cw(&[1]), cw(&[1])], 0, &cw(&[0])).unwrap();
    assert_eq!(o.dim(), 6);
    assert_eq!(o.level, 2);
    let fac = vec![
        (ExtAffineWeylElement::translation(cw(&[-1])), AffineWeight::vacuum(1, 1)),
        (ExtAffineWeylElement::translation(cw(&[-2])), AffineWeight::vacuum(1, 1)),
    ];
    let g = generalized_demazure_character(&a1, &fac, DeltaCap::Auto).unwrap();
    assert!(o.same_terms(&g));
    let d2 = demazure_module_explicit(&a1, 2, &cw(&[1])).unwrap();
    let d1 = demazure_module_explicit(&a1, 1, &cw(&[1])).unwrap();
    let f = fusion_product(&[d2, d1], &default_points(2)).unwrap();
    assert!(f.character.normalized().0.same_terms(&g));

    // single factor
    let o = generalized_demazure_oracle(&a1, &[2], &[cw(&[1])], 0, &cw(&[0])).unwrap();
    assert!(o.same_terms(&affine_demazure_character(&a1, 2, &w(&[2]), DeltaCap::Auto).unwrap()));
    // collapsed chain
    let o = generalized_demazure_oracle(&a1, &[1, 1], &[cw(&[1]), cw(&[1])], 1, &cw(&[0])).unwrap();
    assert!(o.same_terms(&affine_demazure_character(&a1, 1, &w(&[2]), DeltaCap::Auto).unwrap()));
    assert!(generalized_demazure_oracle(&a1, &[1, 2], &[cw(&[1]), cw(&[1])], 0, &cw(&[0])).is_err());
}
