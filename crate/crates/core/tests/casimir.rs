use dynweyl::cartan::{parse_coweight, CartanDatum};
use dynweyl::casimir::*;
use dynweyl::matrix::Mat;
use dynweyl::replib::{builtin_rep, derive_evaluation_rep, TruncYangianRep};
use dynweyl::scalars::{q, qi, RatFunc, Q};
use proptest::prelude::*;

fn datum(s: &str) -> CartanDatum {
    CartanDatum::parse(s).unwrap()
}

fn trep(t: &str, name: &str) -> TruncYangianRep {
    derive_evaluation_rep(&builtin_rep(&datum(t), name).unwrap(), &qi(1)).unwrap()
}

fn cw(t: &str, s: &str) -> Vec<Q> {
    parse_coweight(&datum(t), s).unwrap()
}

const EXACT: CasimirOptions = CasimirOptions { drop_t2: false };

#[test]
fn tau_in_sl2() {
    for name in ["V1", "V2", "V3"] {
        let tr = trep("A1", name);
        let t = tr.base.t(0);
        let want = tr.t1[0].scale_q(&qi(-2)).add(&t.mul(&t));
        assert_eq!(tau(&tr, &[qi(1)], EXACT), want);
        assert!(tau(&tr, &[qi(0)], EXACT).is_zero());
        assert_eq!(tau(&tr, &[qi(1)], CasimirOptions { drop_t2: true }), tr.t1[0].scale_q(&qi(-2)));
    }
}

#[test]
fn k_alpha_values() {
    let v1 = builtin_rep(&datum("A1"), "V1").unwrap();
    assert_eq!(k_alpha(&v1, &[1]).unwrap(), Mat::identity(2));
    assert!(k_alpha(&v1, &[2]).is_err());
    let adj = builtin_rep(&datum("A2"), "adjoint").unwrap();
    for alpha in adj.datum.positive_roots().to_vec() {
        let k = k_alpha(&adj, &alpha).unwrap();
        let r = adj.root(&alpha).unwrap();
        let (xp, xm) = adj.x_alpha(r);
        assert_eq!(k.sub(&adj.t_alpha(r)), xm.mul(&xp).scale_q(&qi(2)));
    }
}

#[test]
fn sl2_coefficient_has_one_pole() {
    let tr = trep("A1", "V2");
    let a = connection_coeff(&tr, &cw("A1", "a1v"), Form::Casimir, &qi(1), EXACT).unwrap();
    let mut dens: Vec<_> = a.a.entries().iter().flat_map(|x| x.factors().map(|(f, _)| f.clone()).collect::<Vec<_>>()).collect();
    dens.sort_by_key(|f| format!("{f:?}"));
    dens.dedup();
    assert_eq!(dens.len(), 1);
    assert!(poles_on_root_hypertori(&a.a, &[vec![1]]));
    assert!(connection_coeff(&tr, &cw("A1", "a1v"), Form::Casimir, &qi(0), EXACT).is_err());
}

#[test]
fn zero_direction_is_pure_tau() {
    let tr = trep("A2", "vector");
    let a = connection_coeff(&tr, &[qi(0), qi(0)], Form::Casimir, &qi(1), EXACT).unwrap();
    assert!(a.a.is_zero());
}

#[test]
fn coefficients_are_linear_in_the_direction() {
    let tr = trep("A2", "adjoint");
    for (form, p) in [(Form::Casimir, qi(-3)), (Form::MyOp, q(3, 2))] {
        let a1 = connection_coeff(&tr, &cw("A2", "w1v"), form, &p, EXACT).unwrap().a;
        let a2 = connection_coeff(&tr, &cw("A2", "w2v"), form, &p, EXACT).unwrap().a;
        let sum = connection_coeff(&tr, &cw("A2", "w1v+w2v"), form, &p, EXACT).unwrap().a;
        assert_eq!(a1.add(&a2), sum);
    }
}

#[test]
fn flatness() {
    let mu = cw("A2", "w1v");
    let nu = cw("A2", "w2v");
    for name in ["vector", "adjoint"] {
        let tr = trep("A2", name);
        for b in [qi(-2), qi(1), q(5, 3)] {
            let r = curvature_check(&tr, &mu, &nu, &b, EXACT);
            assert!(r.pass, "{}", r.summary());
        }
    }
    let tr = trep("A1", "V3");
    let r = curvature_check(&tr, &cw("A1", "w1v"), &cw("A1", "a1v"), &qi(1), EXACT);
    assert!(r.pass, "{}", r.summary());
}

#[test]
fn t_squared_part_of_tau_is_invisible_to_flatness() {
    // Σ c_i t_i² is constant on weight spaces, so it commutes with every
    // weight-preserving coefficient and cannot change [A_μ, A_ν].
    let tr = trep("A2", "adjoint");
    let mu = cw("A2", "w1v");
    let nu = cw("A2", "w2v");
    let drop = CasimirOptions { drop_t2: true };
    assert!(curvature_check(&tr, &mu, &nu, &qi(1), drop).pass);
    let diff = tau(&tr, &[qi(1), qi(2)], EXACT).sub(&tau(&tr, &[qi(1), qi(2)], drop));
    let a = connection_coeff(&tr, &nu, Form::Casimir, &qi(1), EXACT).unwrap().a;
    let lifted = diff.map(|x| RatFunc::constant(x.clone()));
    assert!(lifted.commutator(&a).is_zero());
}

#[test]
fn gauge_equivalence() {
    for name in ["V1", "V2", "V3"] {
        let tr = trep("A1", name);
        for kappa in [qi(1), q(-2, 3)] {
            let r = gauge_equivalence_check(&tr, &cw("A1", "w1v"), &kappa, true);
            assert!(r.pass, "{}", r.summary());
        }
    }
    for name in ["vector", "adjoint"] {
        let tr = trep("A2", name);
        for mu in ["w1v", "w2v"] {
            let r = gauge_equivalence_check(&tr, &cw("A2", mu), &q(3, 2), true);
            assert!(r.pass, "{}", r.summary());
        }
    }
}

#[test]
fn gauge_without_correction_fails_by_the_t_alpha_summand() {
    let tr = trep("A2", "vector");
    let r = gauge_equivalence_check(&tr, &cw("A2", "w1v"), &qi(1), false);
    assert!(!r.pass);
    assert!(r.notes.iter().any(|n| n.contains("exactly the t_α")), "{:?}", r.notes);
}

#[test]
fn gauge_correction_poles() {
    let tr = trep("A2", "adjoint");
    let c = gauge_correction(&tr, &cw("A2", "w1v"), &qi(1));
    assert!(poles_on_root_hypertori(&c, tr.base.datum.positive_roots()));
    assert!(c.is_diagonal());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tau_is_linear(x in prop::collection::vec(-5i64..6, 2), y in prop::collection::vec(-5i64..6, 2), c in -4i64..5) {
        let tr = trep("A2", "vector");
        let xq: Vec<Q> = x.iter().map(|v| qi(*v)).collect();
        let yq: Vec<Q> = y.iter().map(|v| qi(*v)).collect();
        let s: Vec<Q> = xq.iter().zip(&yq).map(|(a, b)| a * qi(c) + b).collect();
        let lhs = tau(&tr, &s, EXACT);
        let rhs = tau(&tr, &xq, EXACT).scale_q(&qi(c)).add(&tau(&tr, &yq, EXACT));
        prop_assert_eq!(lhs, rhs);
    }
}
