use super::*;

fn rs(t: &str) -> RootSystem {
    RootSystem::new(t.parse().unwrap())
}

#[test]
fn parses_dynkin_labels() {
    assert_eq!("a2".parse::<DynkinType>().unwrap(), DynkinType { kind: DynkinKind::A, rank: 2 });
    assert!("E9".parse::<DynkinType>().is_err());
    assert!("D3".parse::<DynkinType>().is_err());
    assert!("X1".parse::<DynkinType>().is_err());
    let err = "G3".parse::<DynkinType>().unwrap_err();
    assert!(err.to_string().contains("G3"));
}

#[test]
fn small_cartan_matrices() {
    let a1 = rs("A1");
    assert_eq!(a1.cartan, vec![vec![2]]);
    assert_eq!(a1.theta().weight, Weight(vec![2]));

    let a2 = rs("A2");
    assert_eq!(a2.cartan, vec![vec![2, -1], vec![-1, 2]]);
    assert_eq!(a2.theta().weight, Weight(vec![1, 1]));

    let d4 = rs("D4");
    let row = &d4.cartan[1];
    assert_eq!(row.iter().filter(|&&c| c == -1).count(), 3);
    assert_eq!(d4.neighbors(2), vec![1, 3, 4]);
}

#[test]
fn root_counts_and_theta() {
    for (t, count, h_vee) in [
        ("A1", 1, 2),
        ("A3", 6, 4),
        ("B3", 9, 5),
        ("C3", 9, 4),
        ("D4", 12, 6),
        ("E6", 36, 12),
        ("E8", 120, 30),
        ("F4", 24, 9),
        ("G2", 6, 4),
    ] {
        let r = rs(t);
        assert_eq!(r.positive_roots.len(), count, "{t}");
        assert_eq!(r.dual_coxeter(), h_vee, "{t}");
        // theta is dominant and <theta, theta^vee> = 2
        assert!(r.theta().weight.is_dominant());
        assert_eq!(r.pair_theta(&r.theta().weight), 2);
    }
}

#[test]
fn fundamental_pairing_is_kronecker() {
    for t in ["A3", "B3", "C3", "G2", "E6"] {
        let r = rs(t);
        let n = r.rank();
        for i in 1..=n {
            for j in 1..=n {
                let coroot: Vec<i64> = (0..n).map(|k| i64::from(k + 1 == j)).collect();
                assert_eq!(r.pair_coroot(&Weight::fundamental(n, i), &coroot), i64::from(i == j));
            }
        }
    }
}

#[test]
fn weight_and_coweight_pairing_agree_on_roots() {
    // <alpha_j, w_i^vee> = delta_ij
    let r = rs("B3");
    for i in 1..=3 {
        for j in 1..=3 {
            let p = r.pair(&r.simple_root(j), &Coweight::fundamental(3, i));
            assert_eq!(p, Rational::from_int(i64::from(i == j)));
        }
    }
}

#[test]
fn dominance_examples() {
    let a1 = rs("A1");
    assert!(a1.dominance_leq(&Weight(vec![0]), &Weight(vec![2])));
    assert!(!a1.dominance_leq(&Weight(vec![1]), &Weight(vec![2])));
    let a2 = rs("A2");
    assert!(a2.dominance_leq(&Weight(vec![0, 0]), &Weight(vec![1, 1])));
    assert!(!a2.dominance_leq(&Weight(vec![1, 1]), &Weight(vec![0, 0])));
}

#[test]
fn dominance_is_a_partial_order() {
    for t in ["A1", "A2"] {
        let r = rs(t);
        let n = r.rank();
        let range: Vec<i64> = (-4..=4).collect();
        let mut weights = vec![Weight(vec![])];
        for _ in 0..n {
            weights = weights
                .into_iter()
                .flat_map(|w| range.iter().map(move |&c| {
                    let mut v = w.0.clone();
                    v.push(c);
                    Weight(v)
                }))
                .collect();
        }
        // height <= 8 in absolute coordinate sum
        weights.retain(|w| w.0.iter().map(|c| c.abs()).sum::<i64>() <= 8);
        if n == 2 {
            weights.retain(|w| w.0.iter().map(|c| c.abs()).sum::<i64>() <= 4);
        }
        for a in &weights {
            assert!(r.dominance_leq(a, a));
            for b in &weights {
                let ab = r.dominance_leq(a, b);
                if ab && r.dominance_leq(b, a) {
                    assert_eq!(a, b);
                }
                if !ab {
                    continue;
                }
                for c in &weights {
                    if r.dominance_leq(b, c) {
                        assert!(r.dominance_leq(a, c));
                    }
                }
            }
        }
    }
}

#[test]
fn coweight_embedding() {
    let a1 = rs("A1");
    assert_eq!(a1.coweight_embed(&Coweight(vec![1])), Weight(vec![1]));
    assert_eq!(a1.coweight_embed(&a1.simple_coroot(1)), Weight(vec![2]));
    let a2 = rs("A2");
    assert_eq!(a2.coweight_embed(&Coweight(vec![1, 1])), Weight(vec![1, 1]));
    // iota(alpha_i^vee) = d_i alpha_i, with d_i = 1 on long roots
    for t in ["B3", "C3", "G2", "F4"] {
        let r = rs(t);
        for i in 1..=r.rank() {
            let img = r.coweight_embed(&r.simple_coroot(i));
            let a = r.simple_root(i);
            let d = r.embed_factor[i - 1];
            assert_eq!(img, a.scale(d), "{t} node {i}");
        }
        assert_eq!(r.coweight_embed(&r.theta_coweight()), r.theta().weight, "{t}");
    }
}

#[test]
fn coweight_embedding_is_additive_and_monotone() {
    let r = rs("A2");
    let cws: Vec<Coweight> = (0..3)
        .flat_map(|a| (0..3).map(move |b| Coweight(vec![a, b])))
        .collect();
    for a in &cws {
        for b in &cws {
            assert_eq!(r.coweight_embed(&(a + b)), &r.coweight_embed(a) + &r.coweight_embed(b));
            // dominance on coweights: b - a a nonnegative sum of simple coroots
            let diff = b - a;
            let coroot_leq = r.dominance_leq(&Weight(vec![0, 0]), &Weight(diff.0.clone()));
            if coroot_leq {
                assert!(r.dominance_leq(&r.coweight_embed(a), &r.coweight_embed(b)));
            }
        }
    }
}

#[test]
fn weyl_dimensions() {
    let a2 = rs("A2");
    assert_eq!(a2.weyl_dimension(&Weight(vec![1, 1])), Rational::from_int(8));
    let e8 = rs("E8");
    assert_eq!(e8.weyl_dimension(&Weight(vec![0, 0, 0, 0, 0, 0, 0, 1])), Rational::from_int(248));
    let g2 = rs("G2");
    assert_eq!(g2.weyl_dimension(&Weight(vec![1, 0])), Rational::from_int(7));
}

#[test]
fn parse_weights() {
    assert_eq!(Weight::parse("2w1+w2", 2).unwrap(), Weight(vec![2, 1]));
    assert_eq!(Weight::parse("-w1", 2).unwrap(), Weight(vec![-1, 0]));
    assert_eq!(Weight::parse("0", 3).unwrap(), Weight(vec![0, 0, 0]));
    assert!(Weight::parse("w3", 2).is_err());
    assert!(Weight::parse("wv1", 2).is_err());
    assert_eq!(Coweight::parse("wv1+3wv2", 2).unwrap(), Coweight(vec![1, 3]));
    assert_eq!(Weight(vec![2, -1]).to_string(), "2w1-w2");
}
