use dynweyl::affine_weyl::finite_words_to_theta;
use dynweyl::cartan::CartanDatum;
use dynweyl::degeneration::*;
use dynweyl::matrix::Mat;
use dynweyl::replib::*;
use dynweyl::scalars::{q, qi, Trunc, Q};
use dynweyl::Error;

fn datum(s: &str) -> CartanDatum {
    CartanDatum::parse(s).unwrap()
}

fn trep(t: &str, name: &str, a: Q) -> TruncYangianRep {
    derive_evaluation_rep(&builtin_rep(&datum(t), name).unwrap(), &a).unwrap()
}

fn lift(m: &Mat<Q>) -> TMat<2> {
    m.map(|x| Trunc::constant(x.clone()))
}

fn hbar(m: &Mat<Q>) -> TMat<2> {
    m.map(|x| Trunc::hbar().scale(x))
}

fn order0(m: &TMat<2>) -> Mat<Q> {
    m.map(|x| x.coeff(0).clone())
}

#[test]
fn phi_relations_hold_on_evaluation_reps() {
    for (t, name) in [("A1", "V1"), ("A1", "V2"), ("A1", "V3"), ("A2", "vector"), ("A2", "adjoint")] {
        for a in [qi(0), q(3, 2)] {
            let tr = trep(t, name, a);
            let im = phi_loop_generators::<2>(&tr, 2, PhiOptions::default()).unwrap();
            let r = check_phi_relations(&im);
            assert!(r.pass, "{t} {name}: {}", r.summary());
        }
    }
}

#[test]
fn phi_relations_at_leading_order() {
    let tr = trep("A2", "vector", qi(1));
    let im = phi_loop_generators::<1>(&tr, 1, PhiOptions::default()).unwrap();
    assert!(check_phi_relations(&im).pass);
    // beyond the supported truncation
    assert!(matches!(phi_loop_generators::<3>(&tr, 1, PhiOptions::default()), Err(Error::Unsupported(_))));
}

#[test]
fn naive_t1_breaks_the_h_e_relation() {
    let tr = trep("A1", "V2", qi(1));
    let im = phi_loop_generators::<2>(&tr, 1, PhiOptions { naive_t1: true }).unwrap();
    let r = check_phi_relations(&im);
    assert!(!r.pass);
    assert!(r.notes.iter().any(|n| n.contains("[H1,1, E1,0]")), "{:?}", r.notes);
}

#[test]
fn loop_shift_is_the_degree_one_generator() {
    // Φ(E_{i,r}) − Φ(E_{i,0}) = rℏX⁺_{i,1} mod ℏ² (simply laced, g_i ≡ 1 at ℏ⁰)
    for (t, name) in [("A1", "V3"), ("A2", "adjoint")] {
        let tr = trep(t, name, q(-1, 2));
        let im = phi_loop_generators::<2>(&tr, 2, PhiOptions::default()).unwrap();
        for i in 1..=tr.datum().rank {
            assert_eq!(order0(im.e(i, 0)), tr.base.xp(i - 1));
            assert_eq!(order0(im.f(i, 0)), tr.base.xm(i - 1));
            for r in [-2i64, -1, 1, 2] {
                let want = hbar(&tr.xp1[i - 1].scale_q(&qi(r)));
                assert_eq!(im.e(i, r).sub(im.e(i, 0)), want, "{t} {name} E_{i},{r}");
                let want = hbar(&tr.xm1[i - 1].scale_q(&qi(r)));
                assert_eq!(im.f(i, r).sub(im.f(i, 0)), want, "{t} {name} F_{i},{r}");
            }
        }
    }
}

#[test]
fn cartan_images_use_the_log_series() {
    // H_{i,±1} = h_i ± ℏ(T_{i,1} − h_i²/2) mod ℏ² when d_i = 1
    let tr = trep("A2", "adjoint", qi(2));
    let im = phi_loop_generators::<2>(&tr, 1, PhiOptions::default()).unwrap();
    let naive = phi_loop_generators::<2>(&tr, 1, PhiOptions { naive_t1: true }).unwrap();
    for i in 0..2 {
        let h = tr.base.h[i].clone();
        let t1 = tr.t1[i].sub(&h.mul(&h).scale_q(&q(1, 2)));
        assert_eq!(im.h(i + 1, 0), &lift(&h));
        assert_eq!(im.h(i + 1, 1), &lift(&h).add(&hbar(&t1)));
        assert_eq!(im.h(i + 1, -1), &lift(&h).sub(&hbar(&t1)));
        assert_eq!(naive.h(i + 1, 1), &lift(&h).add(&hbar(&tr.t1[i])));
    }
}

#[test]
fn index_zero_generators_in_a1() {
    let tr = trep("A1", "V2", qi(1));
    for o in [1i64, -1] {
        let loops = phi_loop_generators::<2>(&tr, 1, PhiOptions::default()).unwrap();
        let im = kacmoody_images(loops, o, None).unwrap();
        let e = tr.base.xp(0);
        let f = tr.base.xm(0);
        assert_eq!(order0(&im.km_e[0]), f.scale_q(&qi(-o)));
        assert_eq!(order0(&im.km_f[0]), e.scale_q(&qi(-o)));
        let h: Vec<i64> = tr.base.weights.iter().map(|w| -w[0]).collect();
        assert_eq!(im.km_h[0], h);
        assert_eq!(im.km_d, vec![1, 1]);
        assert_eq!(im.sign[1], o);
        assert!(check_km_relations(&im).pass);
    }
}

#[test]
fn sign_flip_negates_index_zero() {
    let tr = trep("A2", "vector", qi(0));
    let loops = phi_loop_generators::<2>(&tr, 1, PhiOptions::default()).unwrap();
    let plus = kacmoody_images(loops.clone(), 1, None).unwrap();
    let minus = kacmoody_images(loops, -1, None).unwrap();
    assert_eq!(plus.sign, vec![0, 1, -1]);
    assert_eq!(minus.sign, vec![0, -1, 1]);
    assert_eq!(plus.km_e[0], minus.km_e[0].neg());
    assert_eq!(plus.km_f[0], minus.km_f[0].neg());
    for i in 1..=2 {
        assert_eq!(plus.km_e[i], minus.km_e[i]);
    }
}

#[test]
fn index_zero_is_independent_of_the_word_to_theta() {
    let d = datum("A2");
    let choices = finite_words_to_theta(&d);
    assert!(choices.len() >= 2, "{choices:?}");
    for name in ["vector", "adjoint"] {
        let tr = trep("A2", name, q(1, 3));
        let loops = phi_loop_generators::<2>(&tr, 1, PhiOptions::default()).unwrap();
        let ims: Vec<_> = choices.iter().map(|c| kacmoody_images(loops.clone(), -1, Some(c.clone())).unwrap()).collect();
        for im in &ims {
            assert!(check_km_relations(im).pass);
            assert_eq!(im.km_e[0], ims[0].km_e[0], "{name} {:?}", im.theta_choice);
            assert_eq!(im.km_f[0], ims[0].km_f[0], "{name} {:?}", im.theta_choice);
        }
        // ℋ_0 = −h_θ
        let h: Vec<i64> = tr.base.weights.iter().map(|w| -(w[0] + w[1])).collect();
        assert_eq!(ims[0].km_h[0], h);
    }
}

#[test]
fn km_relations_hold() {
    for (t, name) in [("A1", "V1"), ("A1", "V3"), ("A2", "vector"), ("A2", "adjoint"), ("A3", "vector")] {
        let im = evaluation_images::<2>(&builtin_rep(&datum(t), name).unwrap(), &qi(1), -1).unwrap();
        let r = check_km_relations(&im);
        assert!(r.pass, "{t} {name}: {}", r.summary());
    }
}

#[test]
fn bad_choices_and_signs_are_rejected() {
    let tr = trep("A2", "vector", qi(0));
    let loops = phi_loop_generators::<2>(&tr, 1, PhiOptions::default()).unwrap();
    assert!(kacmoody_images(loops.clone(), 2, None).is_err());
    assert!(kacmoody_images(loops.clone(), 1, Some((1, vec![]))).is_err());
    assert!(kacmoody_images(loops.clone(), 1, Some((3, vec![1]))).is_err());
    let flat = phi_loop_generators::<2>(&tr, 0, PhiOptions::default()).unwrap();
    assert!(matches!(kacmoody_images(flat, 1, None), Err(Error::Unsupported(_))));
}

#[test]
fn extended_cartan_matrix() {
    let a2 = datum("A2");
    let want = [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]];
    for (i, row) in want.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            assert_eq!(extended_cartan(&a2, i, j), *x);
        }
    }
    let a1 = datum("A1");
    assert_eq!(extended_cartan(&a1, 0, 1), -2);
    assert_eq!(extended_cartan(&a1, 1, 0), -2);
}

#[test]
fn sign_map_alternates() {
    assert_eq!(sign_map(&datum("A3"), 1), vec![0, 1, -1, 1]);
    assert_eq!(sign_map(&datum("D4"), -1), vec![0, -1, 1, -1, -1]);
}
