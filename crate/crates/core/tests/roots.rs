use dynweyl::affine_weyl::*;
use dynweyl::cartan::*;
use dynweyl::scalars::{q, qi, Q};
use proptest::prelude::*;

fn datum(s: &str) -> CartanDatum {
    CartanDatum::parse(s).unwrap()
}

#[test]
fn cartan_basics() {
    let a1 = datum("A1");
    assert_eq!(a1.a, vec![vec![2]]);
    assert_eq!(a1.d, vec![1]);
    assert_eq!(a1.theta, vec![1]);
    assert_eq!(a1.d0, 1);

    let a2 = datum("A2");
    assert_eq!(a2.a, vec![vec![2, -1], vec![-1, 2]]);
    assert_eq!(a2.d, vec![1, 1]);
    assert_eq!(a2.theta, vec![1, 1]);
    assert_eq!(a2.pairing(&[1, 0], &[0, 1]), -1);

    let g2 = datum("G2");
    assert_eq!(g2.a, vec![vec![2, -1], vec![-3, 2]]);
    assert_eq!(g2.d, vec![3, 1]);
    assert_eq!(g2.d0, 3);
    // highest root of G2 is 2α₁ + 3α₂ with α₁ long
    assert_eq!(g2.theta, vec![2, 3]);

    let b2 = datum("B2");
    assert_eq!(b2.d, vec![2, 1]);
    assert_eq!(b2.positive_roots().len(), 4);
    let c2 = datum("C2");
    assert_eq!(c2.d, vec![1, 2]);
}

#[test]
fn invalid_types() {
    assert!(CartanDatum::new('D', 3).is_err());
    assert!(CartanDatum::new('G', 3).is_err());
    assert!(CartanDatum::new('X', 1).is_err());
    assert!(CartanDatum::parse("A").is_err());
}

#[test]
fn datum_invariants_all_types() {
    for name in ["A1", "A2", "A3", "A4", "B2", "B3", "C2", "C3", "D4", "D5", "E6", "E7", "E8", "F4", "G2"] {
        let d = datum(name);
        let n = d.rank;
        for i in 0..n {
            assert_eq!(d.a[i][i], 2);
            for j in 0..n {
                if i != j {
                    assert!(d.a[i][j] <= 0);
                }
                assert_eq!(d.d[i] * d.a[i][j], d.d[j] * d.a[j][i], "{name}");
            }
        }
        assert_eq!(d.d.iter().min(), Some(&1), "{name}: minimal symmetrizers");
        assert_eq!(d.positive_roots().len(), d.expected_positive_count(), "{name}");
        assert_eq!(d.pairing(&d.theta, &d.theta), 2 * d.d0, "{name}");
        // every other root is ≤ θ componentwise
        for r in d.positive_roots() {
            assert!(r.iter().zip(&d.theta).all(|(x, t)| x <= t), "{name}");
        }
        // the extended row/column come from θ
        for i in 0..n {
            assert_eq!(d.extended_col[i], -d.eval_h(i, &d.theta));
            let sum: i64 = (0..n).map(|j| d.theta_coroot[j] * d.a[j][i]).sum();
            assert_eq!(d.extended_row[i], -sum);
        }
        // Σ_{α>0} α = 2ρ, and ρ(h_i) = 1
        let rho = d.rho();
        for i in 0..n {
            let v: Q = (0..n).map(|j| qi(d.a[i][j]) * &rho[j]).sum();
            assert_eq!(v, qi(1), "{name}");
        }
        // ρ∨: α_i(ρ∨) = 1
        let rv = d.rho_coroot();
        for j in 0..n {
            let v: Q = (0..n).map(|i| &rv[i] * qi(d.a[i][j])).sum();
            assert_eq!(v, qi(1));
        }
    }
}

#[test]
fn w_invariance_of_form_and_lengths() {
    for name in ["A1", "A2", "A3", "B2", "B3", "C3", "G2"] {
        let d = datum(name);
        let mut roots: Vec<Root> = d.positive_roots().to_vec();
        roots.extend(d.positive_roots().iter().map(|r| r.iter().map(|x| -x).collect::<Root>()));
        for i in 0..d.rank {
            for a in &roots {
                let sa = d.reflect(i, a);
                assert_eq!(d.root_length(&sa), d.root_length(a));
                for b in &roots {
                    assert_eq!(d.pairing(&sa, &d.reflect(i, b)), d.pairing(a, b));
                }
            }
        }
    }
}

#[test]
fn fundamental_coweights_are_dual() {
    let d = datum("B3");
    for i in 0..3 {
        let c = d.fundamental_coweight(i);
        for j in 0..3 {
            // ⟨ω_i∨, α_j⟩ = Σ_k c_k a_kj
            let v: Q = (0..3).map(|k| &c[k] * qi(d.a[k][j])).sum();
            assert_eq!(v, qi((i == j) as i64));
        }
    }
}

#[test]
fn coroot_coordinates() {
    let g2 = datum("G2");
    // α_i∨ in coweight coordinates is row i of the Cartan matrix
    assert_eq!(g2.coroot_to_coweight(&[1, 0]), vec![qi(2), qi(-1)]);
    assert_eq!(g2.coroot_coords(&[qi(2), qi(-1)]).unwrap(), vec![1, 0]);
    assert!(g2.coroot_coords(&[qi(1), qi(0)]).is_ok()); // G2: P∨ = Q∨
    let a2 = datum("A2");
    assert!(matches!(a2.coroot_coords(&[qi(1), qi(0)]), Err(dynweyl::Error::NotCoroot(_))));
    // θ∨ of G2: θ = 2α₁+3α₂ is long, so coefficients c_i d_i / 3
    assert_eq!(g2.theta_coroot, vec![2, 1]);
}

#[test]
fn coweight_parser() {
    let a2 = datum("A2");
    assert_eq!(parse_coweight(&a2, "a1v").unwrap(), vec![qi(2), qi(-1)]);
    assert_eq!(parse_coweight(&a2, "2a1v+a2v").unwrap(), vec![qi(3), qi(0)]);
    assert_eq!(parse_coweight(&a2, "thv").unwrap(), vec![qi(1), qi(1)]);
    assert_eq!(parse_coweight(&a2, "-w2v").unwrap(), vec![qi(0), qi(-1)]);
    assert_eq!(parse_coweight(&a2, "1/2w1v").unwrap(), vec![q(1, 2), qi(0)]);
    assert_eq!(parse_coweight(&a2, "0").unwrap(), vec![qi(0), qi(0)]);
    assert_eq!(parse_coweight_list(&a2, "a1v,thv").unwrap().len(), 2);
    for bad in ["", "a3v", "a0v", "x", "a1", "a1v a2v", "2", "++a1v", "a1vv"] {
        assert!(parse_coweight(&a2, bad).is_err(), "{bad:?}");
    }
}

fn mu(d: &CartanDatum, s: &str) -> Vec<Q> {
    parse_coweight(d, s).unwrap()
}

#[test]
fn reduced_words() {
    let a1 = datum("A1");
    assert_eq!(reduced_word_translation(&a1, &mu(&a1, "a1v")).unwrap(), vec![0, 1]);
    assert_eq!(reduced_word_translation(&a1, &mu(&a1, "2a1v")).unwrap(), vec![0, 1, 0, 1]);
    let a2 = datum("A2");
    let w = reduced_word_translation(&a2, &mu(&a2, "thv")).unwrap();
    assert_eq!(w, vec![0, 1, 2, 1]);
    assert!(matches!(reduced_word_translation(&a2, &mu(&a2, "-thv")), Err(dynweyl::Error::NotDominant(_))));
    assert!(matches!(reduced_word_translation(&a2, &mu(&a2, "w1v")), Err(dynweyl::Error::NotCoroot(_))));

    let mut bfs = AffineBfs::new(&a2);
    bfs.grow_to(4);
    let t = AffineElement::translation(&a2, &[1, 1]);
    assert_eq!(bfs.all_reduced_words(&t), vec![vec![0, 1, 2, 1], vec![0, 2, 1, 2]]);
}

#[test]
fn translations_compose() {
    let a2 = datum("A2");
    let m1 = mu(&a2, "thv");
    let m2 = mu(&a2, "2a1v+a2v");
    let w1 = reduced_word_translation(&a2, &m1).unwrap();
    let w2 = reduced_word_translation(&a2, &m2).unwrap();
    let cat: Vec<usize> = w1.iter().chain(&w2).copied().collect();
    let g = AffineElement::from_word(&a2, &cat);
    let sum: Vec<Q> = m1.iter().zip(&m2).map(|(a, b)| a + b).collect();
    let c = a2.coroot_coords(&sum).unwrap();
    assert_eq!(g, AffineElement::translation(&a2, &c));
    let g2 = AffineElement::from_word(&a2, &w1).compose(&AffineElement::from_word(&a2, &w2));
    let g3 = AffineElement::from_word(&a2, &w2).compose(&AffineElement::from_word(&a2, &w1));
    assert_eq!(g2, g3);
}

#[test]
fn inversion_sets() {
    let a1 = datum("A1");
    let m = inversion_multiset(&a1, &mu(&a1, "a1v")).unwrap();
    assert_eq!(m.into_iter().collect::<Vec<_>>(), vec![(vec![1], 2)]);
    let a2 = datum("A2");
    let m = inversion_multiset(&a2, &mu(&a2, "thv")).unwrap();
    assert_eq!(m.into_iter().collect::<Vec<_>>(), vec![(vec![0, 1], 1), (vec![1, 0], 1), (vec![1, 1], 2)]);
    assert!(inversion_multiset(&a2, &mu(&a2, "0")).unwrap().is_empty());
}

#[test]
fn word_inversions_match_brute_force() {
    let a2 = datum("A2");
    let w = reduced_word_translation(&a2, &mu(&a2, "thv")).unwrap();
    let inv = word_inversions(&a2, &w);
    let mut counts = std::collections::BTreeMap::new();
    for r in &inv {
        assert!(r.is_positive());
        *counts.entry(r.finite.clone()).or_insert(0usize) += 1;
    }
    assert_eq!(counts, brute_force_inversions(&a2, &w));
    let a1 = datum("A1");
    assert_eq!(word_inversions(&a1, &[0, 1])[0], AffineRoot { finite: vec![1], n: 1 });
}

#[test]
fn affine_action_examples() {
    let a1 = datum("A1");
    // ⟨λ, θ∨⟩ = 3 means λ = 3/2 α
    let x = ExtendedWeight { lambda: vec![q(3, 2)], k: qi(1), delta: qi(0) };
    let y = affine_act(&a1, AffineAction::Letter(0), &x);
    assert_eq!(y.lambda, vec![q(3, 2) - qi(2)]);
    assert_eq!(y.delta, qi(2));
    let y = affine_act(&a1, AffineAction::Translation(&[1]), &x);
    assert_eq!(y.lambda, vec![q(5, 2)]);
    let z = ExtendedWeight { lambda: vec![q(1, 3)], k: qi(0), delta: qi(5) };
    let y = affine_act(&a1, AffineAction::Translation(&[1]), &z);
    assert_eq!(y.lambda, z.lambda);
    assert_eq!(y.delta, qi(5) - q(2, 3));
}

#[test]
fn s0_is_translation_times_reflection() {
    for name in ["A2", "B2", "C2", "G2"] {
        let d = datum(name);
        let x = ExtendedWeight { lambda: vec![q(1, 3), q(-2, 7)], k: q(5, 2), delta: q(1, 11) };
        let direct = affine_act(&d, AffineAction::Letter(0), &x);
        // s_θ then t^{θ∨}
        let st = ExtendedWeight {
            lambda: {
                let th: Vec<Q> = d.theta.iter().map(|c| qi(*c)).collect();
                let c: Q = (0..2)
                    .map(|i| (0..2).map(|j| &x.lambda[i] * &th[j] * qi(d.d[i] * d.a[i][j])).sum::<Q>())
                    .sum::<Q>()
                    / qi(d.d0);
                x.lambda.iter().zip(&th).map(|(l, t)| l - &c * t).collect()
            },
            ..x.clone()
        };
        let via = affine_act(&d, AffineAction::Translation(&d.theta_coroot), &st);
        assert_eq!(direct, via, "{name}");
    }
}

#[test]
fn dynparam_examples() {
    let a1 = datum("A1");
    let p = DynParam::rescaled(&a1, 1);
    let e = p.eval(&a1, 1, &[3]);
    assert_eq!((e.exponent.clone(), e.correction.clone(), e.nu_value), (vec![1], qi(0), 3));
    let e0 = p.eval(&a1, 0, &[3]);
    assert_eq!((e0.exponent.clone(), e0.correction.clone(), e0.nu_value), (vec![-1], qi(1), -3));

    let p0 = p.act(&a1, 0);
    assert_eq!(p0.beta, vec![1]);
    assert_eq!(p0.u, vec![vec![-1]]);
    let pb = DynParam { beta: vec![1], ..p.clone() };
    assert_eq!(pb.eval(&a1, 0, &[0]).correction, qi(-1));

    let p01 = p.act_word(&a1, &[0, 1]);
    assert_eq!(p01.u, vec![vec![1]]);
    assert_eq!(p01.beta, vec![1]);
}

#[test]
fn dynparam_matches_lattice_action() {
    // Along a translation word the factorized parameter must agree with the
    // direct formula: u = 1 and β = k d0 ν̂.
    for (name, m) in [("A2", "thv"), ("A2", "2a1v+a2v"), ("B2", "thv"), ("G2", "thv"), ("C2", "a1v+a2v")] {
        let d = datum(name);
        let mu_ = mu(&d, m);
        let Ok(w) = reduced_word_translation(&d, &mu_) else { continue };
        let c = d.coroot_coords(&mu_).unwrap();
        for k in [1, 2] {
            let p = DynParam::rescaled(&d, k).act_word(&d, &w);
            assert_eq!(p.u, imat_identity(d.rank), "{name} {m}");
            let want: Vec<i64> = d.coroot_to_root_scaled(&c).iter().map(|x| x * k).collect();
            assert_eq!(p.beta, want, "{name} {m}");
        }
    }
}

#[test]
fn theta_words() {
    let a2 = datum("A2");
    let all = finite_words_to_theta(&a2);
    assert!(all.contains(&(1, vec![2])));
    assert!(all.contains(&(2, vec![1])));
    for name in ["B2", "C2", "G2", "A3"] {
        let d = datum(name);
        let (i, w) = finite_word_to_theta(&d);
        let mut r = d.simple_root(i - 1);
        for &l in w.iter().rev() {
            r = d.reflect(l - 1, &r);
        }
        assert_eq!(r, d.theta, "{name}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_law_semidirect(c1 in prop::collection::vec(-3i64..4, 2), c2 in prop::collection::vec(-3i64..4, 2),
                            word in prop::collection::vec(1usize..3, 0..5)) {
        let d = datum("A2");
        let t1 = AffineElement::translation(&d, &c1);
        let t2 = AffineElement::translation(&d, &c2);
        let sum: Vec<i64> = c1.iter().zip(&c2).map(|(a, b)| a + b).collect();
        prop_assert_eq!(t1.compose(&t2), AffineElement::translation(&d, &sum));
        // w t^ν w^{-1} = t^{wν}
        let w = AffineElement::from_word(&d, &word);
        let winv = AffineElement::from_word(&d, &word.iter().rev().copied().collect::<Vec<_>>());
        let conj = w.compose(&t1).compose(&winv);
        prop_assert!(conj.is_translation());
        let nu_hat = d.coroot_to_root_scaled(&c1);
        prop_assert_eq!(conj.b, dynweyl::affine_weyl::imat_apply(&w.m, &nu_hat));
    }

    #[test]
    fn affine_root_reflections_are_involutions(a in prop::sample::select(vec![0usize, 1, 2, 3]), n in -3i64..4, i in 0usize..3) {
        let d = datum("A2");
        let roots: Vec<Root> = vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![-1, -1]];
        let r = AffineRoot { finite: roots[a].clone(), n };
        prop_assert_eq!(r.act(&d, i).act(&d, i), r);
    }
}
