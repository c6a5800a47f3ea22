use dynweyl::cartan::CartanDatum;
use dynweyl::matrix::Mat;
use dynweyl::replib::*;
use dynweyl::scalars::{q, qi, Q};
use dynweyl::Error;

fn datum(s: &str) -> CartanDatum {
    CartanDatum::parse(s).unwrap()
}

fn all_builtins() -> Vec<WeightedRep> {
    let a1 = datum("A1");
    let a2 = datum("A2");
    let mut out: Vec<WeightedRep> = ["V1", "V2", "V3", "V4"].iter().map(|n| builtin_rep(&a1, n).unwrap()).collect();
    out.push(builtin_rep(&a2, "vector").unwrap());
    out.push(builtin_rep(&a2, "adjoint").unwrap());
    out.push(builtin_rep(&datum("A3"), "vector").unwrap());
    out
}

#[test]
fn builtins_satisfy_chevalley_relations() {
    for rep in all_builtins() {
        let r = check_g_relations(&rep);
        assert!(r.pass, "{}", r.summary());
        assert_eq!(rep.roots.len(), rep.datum.positive_roots().len());
    }
}

#[test]
fn builtin_shapes() {
    let a1 = datum("A1");
    let v1 = builtin_rep(&a1, "V1").unwrap();
    assert_eq!(v1.weights, vec![vec![1], vec![-1]]);
    assert_eq!(v1.xp(0), Mat::unit(2, 0, 1, qi(1)));

    let v2 = builtin_rep(&a1, "V2").unwrap();
    assert_eq!(v2.dim(), 3);
    // f v_m = v_{m-2}, f v_{m-2} = 2 v_{m-4}
    assert_eq!(v2.f[0][(1, 0)], qi(1));
    assert_eq!(v2.f[0][(2, 1)], qi(2));

    let adj = builtin_rep(&datum("A2"), "adjoint").unwrap();
    assert_eq!(adj.dim(), 8);
    let zero: Vec<_> = adj.weight_spaces().into_iter().filter(|(w, _)| w.iter().all(|x| *x == 0)).collect();
    assert_eq!(zero.len(), 1);
    assert_eq!(zero[0].1.len(), 2);

    assert!(matches!(builtin_rep(&a1, "V5"), Err(Error::UnknownRep(_))));
    assert!(matches!(builtin_rep(&datum("B2"), "vector"), Err(Error::UnknownRep(_))));
}

#[test]
fn broken_inputs_fail_the_relation_check() {
    let a1 = datum("A1");
    let v1 = builtin_rep(&a1, "V1").unwrap();
    let mut broken = v1.clone();
    broken.f[0] = Mat::zeros(2, 2);
    let r = check_g_relations(&broken);
    assert!(!r.pass);
    assert!(r.notes[0].contains("[e1, f1]"), "{:?}", r.notes);

    // swapped weight labels
    let err = WeightedRep::new(a1.clone(), "bad", vec![vec![-1], vec![1]], v1.e.clone(), v1.f.clone()).unwrap_err();
    assert!(err.to_string().contains("grading"), "{err}");
}

#[test]
fn root_vector_identities() {
    for rep in all_builtins() {
        for r in &rep.roots {
            let (xp, xm) = rep.x_alpha(r);
            let t = rep.t_alpha(r);
            assert_eq!(xp.commutator(&xm), t);
            // 2 x⁻ x⁺ = K − t
            assert_eq!(xm.mul(&xp).scale_q(&qi(2)), rep.k_alpha(r).sub(&t));
        }
    }
    let v1 = builtin_rep(&datum("A1"), "V1").unwrap();
    assert_eq!(v1.k_alpha(&v1.roots[0]), Mat::identity(2));
}

#[test]
fn json_round_trip() {
    for rep in all_builtins() {
        let s = rep_to_json(&rep);
        let back = rep_from_json(&s).unwrap();
        assert_eq!(back.weights, rep.weights);
        assert_eq!(back.e, rep.e);
        assert_eq!(back.f, rep.f);
        assert_eq!(back.h, rep.h);
        assert_eq!(back.name, rep.name);
    }
    let dir = std::env::temp_dir().join(format!("dynweyl-replib-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("v2.json");
    let v2 = builtin_rep(&datum("A1"), "V2").unwrap();
    save_rep(&v2, &path).unwrap();
    let back = load_rep(&path).unwrap();
    assert_eq!(back.e, v2.e);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn json_errors() {
    let good = r#"{"type":"A","rank":1,"dim":2,"weights":[[1],[-1]],
        "generators":{"e1":[["0","1"],["0","0"]],"f1":[["0","0"],["1","0"]]}}"#;
    assert!(rep_from_json(good).is_ok());

    let bad_entry = good.replace(r#"["0","1"]"#, r#"["0","x"]"#);
    assert!(matches!(rep_from_json(&bad_entry), Err(Error::Parse(_))));

    let bad_key = good.replace("\"f1\"", "\"g1\"");
    assert!(matches!(rep_from_json(&bad_key), Err(Error::Parse(_))));

    let bad_h = good.replace("\"f1\"", r#""h1":[["1","0"],["0","1"]],"f1""#);
    assert!(matches!(rep_from_json(&bad_h), Err(Error::Relation(_))));

    let a2_vector = r#"{"type":"A","rank":2,"dim":3,"weights":[[1,0],[-1,1],[0,-1]],
        "generators":{"e1":[["0","1","0"],["0","0","0"],["0","0","0"]],
                      "f1":[["0","0","0"],["1","0","0"],["0","0","0"]],
                      "e2":[["0","0","0"],["0","0","1"],["0","0","0"]],
                      "f2":[["0","0","0"],["0","0","0"],["0","1","0"]]}}"#;
    assert!(rep_from_json(a2_vector).is_ok());
    // e1 made nilpotent of order 3 on the same space: not a representation
    let broken = a2_vector.replace(r#""e1":[["0","1","0"],["0","0","0"]"#, r#""e1":[["0","1","0"],["0","0","1"]"#);
    assert!(matches!(rep_from_json(&broken), Err(Error::Relation(_))));
    // the trivial module has no nonzero root vectors
    let trivial = r#"{"type":"A","rank":1,"dim":1,"weights":[[0]],"generators":{"e1":[["0"]],"f1":[["0"]]}}"#;
    assert!(matches!(rep_from_json(trivial), Err(Error::Relation(_))));
    assert!(rep_from_json("{").is_err());
    assert!(rep_from_json(r#"{"type":"Q","rank":1,"dim":1,"weights":[[0]],"generators":{}}"#).is_err());
}

fn eval(rep: &WeightedRep, a: Q) -> TruncYangianRep {
    derive_evaluation_rep(rep, &a).unwrap_or_else(|e| panic!("{}: {e}", rep.name))
}

#[test]
fn evaluation_reps_satisfy_the_drinfeld_relations() {
    let a1 = datum("A1");
    for name in ["V1", "V2", "V3", "V4"] {
        let rep = builtin_rep(&a1, name).unwrap();
        for a in [qi(0), qi(1), q(-3, 2)] {
            let tr = eval(&rep, a);
            for r in [check_yangian_relations::<1>(&tr), check_yangian_relations::<2>(&tr), check_yangian_relations::<3>(&tr)] {
                assert!(r.pass, "{}", r.summary());
            }
        }
    }
    let a2 = datum("A2");
    for name in ["vector", "adjoint"] {
        let rep = builtin_rep(&a2, name).unwrap();
        let tr = eval(&rep, qi(1));
        assert!(check_yangian_relations::<2>(&tr).pass);
        assert!(check_yangian_relations::<3>(&tr).pass);
    }
    // beyond the supported truncation
    let tr = eval(&builtin_rep(&a1, "V1").unwrap(), qi(0));
    assert!(!check_yangian_relations::<4>(&tr).pass);
}

#[test]
fn sl2_evaluation_formula() {
    // X⁺_1 = a e + ¼(he + eh) up to the normalization by a
    let rep = builtin_rep(&datum("A1"), "V2").unwrap();
    let a = q(2, 3);
    let tr = eval(&rep, a.clone());
    let e = rep.xp(0);
    let h = rep.h[0].clone();
    let want = e.scale_q(&a).add(&h.anticommutator(&e).scale_q(&q(1, 4)));
    assert_eq!(tr.xp1[0], want);
}

#[test]
fn evaluation_point_shifts_by_degree_zero() {
    let a1 = datum("A1");
    for name in ["V1", "V2", "V3", "V4"] {
        let rep = builtin_rep(&a1, name).unwrap();
        let t0 = eval(&rep, qi(0));
        let ta = eval(&rep, q(5, 2));
        let s = q(5, 2);
        assert_eq!(ta.xp1[0].sub(&t0.xp1[0]), rep.xp(0).scale_q(&s));
        assert_eq!(ta.xm1[0].sub(&t0.xm1[0]), rep.xm(0).scale_q(&s));
        assert_eq!(ta.t1[0].sub(&t0.t1[0]), rep.t(0).scale_q(&s));
    }
    let rep = builtin_rep(&datum("A2"), "vector").unwrap();
    let t0 = eval(&rep, qi(0));
    let t1 = eval(&rep, qi(1));
    for i in 0..2 {
        assert_eq!(t1.t1[i].sub(&t0.t1[i]), rep.t(i));
    }
}

#[test]
fn zeroed_degree_one_generators_fail() {
    let rep = builtin_rep(&datum("A1"), "V2").unwrap();
    let z = Mat::zeros(3, 3);
    let tr = TruncYangianRep::from_deg1(rep, vec![z.clone()], vec![z], qi(1));
    let r = check_yangian_relations::<2>(&tr);
    assert!(!r.pass);
    assert!(r.notes[0].contains("T-X recurrence"), "{:?}", r.notes);
    // the ℏ-free part is still fine
    assert!(check_yangian_relations::<1>(&tr).pass);
}

#[test]
fn evaluation_rep_is_basis_independent() {
    // change basis inside the zero weight space of the adjoint representation
    let rep = builtin_rep(&datum("A2"), "adjoint").unwrap();
    let zero: Vec<usize> = rep.weight_spaces().into_iter().find(|(w, _)| w.iter().all(|x| *x == 0)).unwrap().1;
    let mut p = Mat::identity(8);
    p[(zero[0], zero[1])] = q(3, 2);
    p[(zero[1], zero[0])] = qi(-1);
    let pinv = p.inverse().unwrap();
    let conj = |m: &Mat<Q>| pinv.mul(m).mul(&p);
    let other = WeightedRep::new(
        rep.datum.clone(),
        "adjoint'",
        rep.weights.clone(),
        rep.e.iter().map(conj).collect(),
        rep.f.iter().map(conj).collect(),
    )
    .unwrap();
    let tr = eval(&other, qi(1));
    assert!(check_yangian_relations::<2>(&tr).pass);
}
