//! Quantum loop generators pushed through the degeneration map into a
//! truncated Yangian representation, in both presentations.
//!
//! Matrices live over Q[ℏ]/(ℏ^T) after the rescaling X_{i,r} ↦ ℏ^r X_{i,r},
//! so "mod degree ≥ T" is "mod ℏ^T". The loop generators are composed with
//! E_{i,r} ↦ √d_i E_{i,r}, F_{i,r} ↦ F_{i,r}/√d_i, which keeps every entry
//! rational; for simply-laced types it is the identity.

use crate::affine_weyl::{finite_word_to_theta, AffineRoot, Word};
use crate::cartan::CartanDatum;
use crate::dynamical::{quantum_weyl_s, SForm};
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::replib::{derive_evaluation_rep, TruncYangianRep, WeightedRep};
use crate::report::CheckReport;
use crate::scalars::qnum::qint;
use crate::scalars::series::{gi_coefficients, hbar_over_qdiff, t_from_cartan_currents};
use crate::scalars::{q, qi, Field, GradedPoly, QuadSurd, Ring, Trunc, Q};

pub type TMat<const T: usize> = Mat<Trunc<Q, T>>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PhiOptions {
    /// Use t_{i,1} = T_{i,1}, dropping the −ℏT_{i,0}²/2 of the log series.
    pub naive_t1: bool,
}

/// Φ-images of E_{i,r}, F_{i,r}, H_{i,r} for i = 1..n and |r| ≤ r_max.
#[derive(Clone, Debug)]
pub struct LoopImages<const T: usize> {
    pub base: WeightedRep,
    pub datum: CartanDatum,
    pub weights: Vec<Vec<i64>>,
    pub r_max: i64,
    e: Vec<Vec<TMat<T>>>,
    f: Vec<Vec<TMat<T>>>,
    h: Vec<Vec<TMat<T>>>,
    /// T_{i,1} at ℏ = 1 (absent when T = 1).
    pub t1: Vec<Mat<Q>>,
    /// t_i = d_i h_i.
    pub t0: Vec<Mat<Q>>,
    pub options: PhiOptions,
}

impl<const T: usize> LoopImages<T> {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    fn slot(&self, r: i64) -> usize {
        assert!(r.abs() <= self.r_max, "loop index {r} beyond r_max = {}", self.r_max);
        (r + self.r_max) as usize
    }

    /// E_{i,r}, i 1-based.
    pub fn e(&self, i: usize, r: i64) -> &TMat<T> {
        &self.e[i - 1][self.slot(r)]
    }

    pub fn f(&self, i: usize, r: i64) -> &TMat<T> {
        &self.f[i - 1][self.slot(r)]
    }

    pub fn h(&self, i: usize, r: i64) -> &TMat<T> {
        &self.h[i - 1][self.slot(r)]
    }
}

/// Both presentations: the loop images plus ℰ_i, ℱ_i, ℋ_i for i = 0..n.
#[derive(Clone, Debug)]
pub struct LoopGenImages<const T: usize> {
    pub loops: LoopImages<T>,
    pub km_e: Vec<TMat<T>>,
    pub km_f: Vec<TMat<T>>,
    /// ν(ℋ_i) per basis vector; ℋ_i acts diagonally.
    pub km_h: Vec<Vec<i64>>,
    /// q_i = q^{d_i} for i = 0..n, with d_0 the length of θ.
    pub km_d: Vec<i64>,
    /// o(i) for i = 1..n (index 0 unused).
    pub sign: Vec<i64>,
    /// The simple root α_i and w ∈ W with w(α_i) = θ used for index 0.
    pub theta_choice: (usize, Word),
}

impl<const T: usize> LoopGenImages<T> {
    pub fn datum(&self) -> &CartanDatum {
        &self.loops.datum
    }

    pub fn dim(&self) -> usize {
        self.loops.dim()
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.loops.weights
    }

    /// q_i^{±ℋ_i} style diagonal: diag(q_d^{s·ν_b}) for the values `hv`.
    pub fn q_diag(hv: &[i64], s: i64, d: i64) -> TMat<T> {
        Mat::diag(&hv.iter().map(|x| Trunc::qpow_i(s * x, d)).collect::<Vec<_>>())
    }
}

/// Sign map alternating along the Dynkin diagram, with o(1) = `o1`.
/// Entry 0 is unused and set to 0.
pub fn sign_map(datum: &CartanDatum, o1: i64) -> Vec<i64> {
    let n = datum.rank;
    let mut o = vec![0i64; n + 1];
    o[1] = o1;
    let mut stack = vec![1usize];
    while let Some(i) = stack.pop() {
        for j in 1..=n {
            if j != i && datum.a[i - 1][j - 1] != 0 && o[j] == 0 {
                o[j] = -o[i];
                stack.push(j);
            }
        }
    }
    o
}

fn quad_to_q(x: &QuadSurd) -> Result<Q> {
    Q::from_quad(x).ok_or_else(|| Error::Unsupported(format!("irrational coefficient {x:?}")))
}

/// Σ over the terms of a graded polynomial, with ℏ ↦ ℏ and s_r ↦ `syms[r]`.
/// The symbols must commute.
fn eval_graded<R: Ring, const T: usize>(
    p: &GradedPoly<R>,
    coeff: impl Fn(&R) -> Result<Q>,
    syms: &[TMat<T>],
    dim: usize,
) -> Result<TMat<T>> {
    let mut acc = Mat::zeros(dim, dim);
    for (e, c) in &p.terms {
        let hpow = e.first().copied().unwrap_or(0) as usize;
        let scalar = Trunc::<Q, T>::hbar_pow(hpow).scale(&coeff(c)?);
        let mut term = Mat::identity(dim).scale(&scalar);
        for (k, x) in e.iter().enumerate().skip(1) {
            if *x == 0 {
                continue;
            }
            let s = syms
                .get(k - 1)
                .ok_or_else(|| Error::Unsupported(format!("symbol s_{} has no image", k - 1)))?;
            term = term.mul(&s.pow(*x));
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

fn lift_q<const T: usize>(m: &Mat<Q>) -> TMat<T> {
    m.map(|x| Trunc::constant(x.clone()))
}

/// Φ on the loop generators, for |r| ≤ r_max, from the series g_i(v) and
/// the log series defining t_{i,r}.
pub fn phi_loop_generators<const T: usize>(trep: &TruncYangianRep, r_max: i64, options: PhiOptions) -> Result<LoopImages<T>> {
    if T == 0 || T > 2 {
        return Err(Error::Unsupported(format!("degeneration images modulo ℏ^{T}")));
    }
    let datum = trep.datum().clone();
    let n = datum.rank;
    let dim = trep.base.dim();
    let g = trep.trunc_gens::<T>()?;
    let top = g.max_degree();
    let cap = T as u32;
    let tpolys = t_from_cartan_currents(T, cap)?;
    let mut e_all = Vec::new();
    let mut f_all = Vec::new();
    let mut h_all = Vec::new();
    for i in 0..n {
        let d = datum.d[i];
        // Ψ(T_{i,r}) for r < T, then Ψ(t_{i,r}) from the log series
        let big_t: Vec<TMat<T>> = (0..T).map(|r| g.t[r.min(top)][i].clone()).collect();
        let mut tvals = Vec::new();
        for (r, p) in tpolys.iter().enumerate() {
            if r == 1 && options.naive_t1 {
                tvals.push(big_t[1].clone());
            } else {
                tvals.push(eval_graded(p, |c: &Q| Ok(c.clone()), &big_t, dim)?);
            }
        }

        let sqrt_d = QuadSurd::sqrt_int(d as u32).ok_or_else(|| Error::Unsupported(format!("√{d}")))?;
        let inv_sqrt_d = sqrt_d.try_inv().expect("nonzero");
        let gser = gi_coefficients(d, T, cap)?;
        let mut es = Vec::new();
        let mut fs = Vec::new();
        let mut hs = Vec::new();
        for r in -r_max..=r_max {
            let mut ep = Mat::zeros(dim, dim);
            let mut fp = Mat::zeros(dim, dim);
            // e^{rσ} Σ_m g_{i,m} x_{i,m} = Σ_{m,k} g_{i,m} r^k/k! x_{i,m+k}
            for m in 0..T {
                let gm = gser.coeff(m);
                let ge = eval_graded(&gm, |c: &QuadSurd| quad_to_q(&c.mul(&sqrt_d)), &tvals, dim)?;
                let gf = eval_graded(&gm, |c: &QuadSurd| quad_to_q(&c.mul(&inv_sqrt_d)), &tvals, dim)?;
                let mut rk = qi(1);
                for k in 0..T - m {
                    if k > 0 {
                        rk = rk * qi(r) / qi(k as i64);
                    }
                    if m + k > top {
                        break;
                    }
                    ep = ep.add(&ge.mul(&g.xp[m + k][i]).scale_q(&rk));
                    fp = fp.add(&gf.mul(&g.xm[m + k][i]).scale_q(&rk));
                }
            }
            es.push(ep);
            fs.push(fp);
            let hm = if r == 0 {
                lift_q(&trep.base.h[i])
            } else {
                // ℏ/(q_i − q_i^{-1}) Σ_k t_{i,k} r^k/k!
                let mut sum = GradedPoly::<QuadSurd>::zero();
                let mut rk = qi(1);
                for k in 0..T {
                    if k > 0 {
                        rk = rk * qi(r) / qi(k as i64);
                    }
                    sum = sum.add(&GradedPoly::sym(k, cap).scale_q(&rk));
                }
                let p = hbar_over_qdiff(d, cap).mul(&sum);
                eval_graded(&p, quad_to_q, &tvals, dim)?
            };
            hs.push(hm);
        }
        e_all.push(es);
        f_all.push(fs);
        h_all.push(hs);
    }
    Ok(LoopImages {
        base: trep.base.clone(),
        datum,
        weights: trep.base.weights.clone(),
        r_max,
        e: e_all,
        f: f_all,
        h: h_all,
        t1: if T >= 2 { trep.t1.clone() } else { vec![] },
        t0: (0..n).map(|i| trep.base.t(i)).collect(),
        options,
    })
}

/// Adds the Kac–Moody images. ℰ_i = E_{i,0}, ℱ_i = F_{i,0}, ℋ_i = h_i for
/// i ≥ 1 and
///   ℰ_0 = −o(i) q^{−h_θ} T_w(F_{i,1}),  ℱ_0 = −o(i) T_w(E_{i,−1}) q^{h_θ},
/// ℋ_0 = −h_θ, with T_w = Ad 𝕊_w and w(α_i) = θ. `choice` defaults to the
/// shortest lex-min w. Only simply-laced types are supported.
pub fn kacmoody_images<const T: usize>(loops: LoopImages<T>, o1: i64, choice: Option<(usize, Word)>) -> Result<LoopGenImages<T>> {
    let datum = loops.datum.clone();
    if !datum.is_simply_laced() {
        return Err(Error::Unsupported(format!("index-0 Kac–Moody images for {}", datum.name())));
    }
    if o1 != 1 && o1 != -1 {
        return Err(Error::Parse(format!("sign must be ±1, got {o1}")));
    }
    if loops.r_max < 1 {
        return Err(Error::Unsupported("index-0 images need r_max ≥ 1".into()));
    }
    let n = datum.rank;
    let dim = loops.dim();
    let (i, w) = match choice {
        Some(c) => {
            if !(1..=n).contains(&c.0)
                || c.1.iter().any(|j| !(1..=n).contains(j))
                || AffineRoot::simple(&datum, c.0).act_word(&datum, &c.1).finite != datum.theta {
                return Err(Error::Parse(format!("w = {:?} does not send α{} to θ", c.1, c.0)));
            }
            c
        }
        None => finite_word_to_theta(&datum),
    };
    let sign = sign_map(&datum, o1);
    let mut km_e = vec![Mat::zeros(dim, dim)];
    let mut km_f = vec![Mat::zeros(dim, dim)];
    let h_theta: Vec<i64> = loops.weights.iter().map(|nu| datum.weight_on_coroot(nu, &datum.theta)).collect();
    let mut km_h = vec![h_theta.iter().map(|x| -x).collect::<Vec<_>>()];
    let mut km_d = vec![datum.d0];
    for j in 1..=n {
        km_e.push(loops.e(j, 0).clone());
        km_f.push(loops.f(j, 0).clone());
        km_h.push(loops.weights.iter().map(|nu| nu[j - 1]).collect());
        km_d.push(datum.d[j - 1]);
    }
    let mut s_w = Mat::identity(dim);
    for &j in &w {
        s_w = s_w.mul(&quantum_weyl_s(&km_h[j], &km_e[j], &km_f[j], km_d[j], SForm::First)?);
    }
    let s_w_inv = s_w.inverse().ok_or_else(|| Error::Degenerate("𝕊_w is not invertible".into()))?;
    let minus_o = Trunc::<Q, T>::from_i64(-sign[i]);
    let d0 = datum.d0;
    km_e[0] = LoopGenImages::<T>::q_diag(&h_theta, -1, d0)
        .mul(&s_w.mul(loops.f(i, 1)).mul(&s_w_inv))
        .scale(&minus_o);
    km_f[0] = s_w
        .mul(loops.e(i, -1))
        .mul(&s_w_inv)
        .mul(&LoopGenImages::<T>::q_diag(&h_theta, 1, d0))
        .scale(&minus_o);
    Ok(LoopGenImages { loops, km_e, km_f, km_h, km_d, sign, theta_choice: (i, w) })
}

/// Ψ_i(v) and Φ_i(v) assembled from the H-images: returns (Ψ_{i,r} − Φ_{i,r})/(q_i − q_i^{−1})
/// for the given r, computed without dividing by ℏ.
fn psi_minus_phi_over_qdiff<const T: usize>(im: &LoopImages<T>, i: usize, r: i64) -> TMat<T> {
    let d = im.datum.d[i - 1];
    let dim = im.dim();
    let hv: Vec<i64> = im.weights.iter().map(|nu| nu[i - 1]).collect();
    if r == 0 {
        // (q_i^{H} − q_i^{−H})/(q_i − q_i^{−1}) = [H]_{q_i}
        return Mat::diag(&hv.iter().map(|x| qint::<Q, T>(*x, d)).collect::<Vec<_>>());
    }
    let c = Trunc::<Q, T>::qpow_i(1, d).sub(&Trunc::qpow_i(-1, d));
    let s = r.signum();
    let m = r.unsigned_abs() as usize;
    // X(v) = Σ_{s≥1} H_{i,±s} v^{∓s}; coefficient of v^{∓m} in Σ_{k≥1} (±c)^{k−1} X^k / k!
    let x: Vec<TMat<T>> = (0..=m).map(|k| if k == 0 { Mat::zeros(dim, dim) } else { im.h(i, s * k as i64).clone() }).collect();
    let mut pow = x.clone();
    let mut total = Mat::zeros(dim, dim);
    let sc = if s > 0 { c.clone() } else { c.neg() };
    let mut coef = Trunc::<Q, T>::one();
    for k in 1..=m {
        if k > 1 {
            // pow ← pow · X, truncated at degree m
            let mut next = vec![Mat::zeros(dim, dim); m + 1];
            for (a, pa) in pow.iter().enumerate() {
                for (b, xb) in x.iter().enumerate().skip(1) {
                    if a + b <= m {
                        next[a + b] = next[a + b].add(&pa.mul(xb));
                    }
                }
            }
            pow = next;
            coef = coef.mul(&sc).scale(&q(1, k as i64));
        }
        total = total.add(&pow[m].scale(&coef));
    }
    // for r < 0 the sign of −Φ_r/(q − q^{−1}) is absorbed by the base −c
    LoopGenImages::<T>::q_diag(&hv, s, d).mul(&total)
}

/// Loop relations modulo ℏ^T on the images: [H,H] = 0, [H_{i,0}, E_{j,k}],
/// [H_{i,r}, E_{j,k}] for |r|, |k| ≤ 1, their F counterparts, the E-E and F-F
/// exchange relations, and [E_{i,k}, F_{j,l}] through the Ψ/Φ series.
pub fn check_phi_relations<const T: usize>(im: &LoopImages<T>) -> CheckReport {
    let name = if im.options.naive_t1 { "phi-relations (naive t1)" } else { "phi-relations" };
    CheckReport::timed(name, |rep| {
        let datum = &im.datum;
        let n = datum.rank;
        let one = im.r_max.min(1);
        let mut bad = |label: String, ok: bool| -> bool {
            if !ok {
                rep.fail(format!("relation {label} fails"));
            }
            ok
        };
        for i in 1..=n {
            for j in 1..=n {
                for r in -im.r_max..=im.r_max {
                    for s in -im.r_max..=im.r_max {
                        if !bad(format!("[H{i},{r}, H{j},{s}] = 0"), im.h(i, r).commutator(im.h(j, s)).is_zero()) {
                            return;
                        }
                    }
                }
                let a = datum.a[i - 1][j - 1];
                let di = datum.d[i - 1];
                for k in -im.r_max..=im.r_max {
                    let ok = im.h(i, 0).commutator(im.e(j, k)) == im.e(j, k).scale_q(&qi(a))
                        && im.h(i, 0).commutator(im.f(j, k)) == im.f(j, k).scale_q(&qi(-a));
                    if !bad(format!("[H{i},0, E/F{j},{k}] = ±a E/F"), ok) {
                        return;
                    }
                }
                for r in [one, -one].into_iter().filter(|r| *r != 0) {
                    for k in [0, one, -one] {
                        if (k + r).abs() > im.r_max {
                            continue;
                        }
                        let c = qint::<Q, T>(r * a, di).scale(&q(1, r));
                        let ok_e = im.h(i, r).commutator(im.e(j, k)) == im.e(j, k + r).scale(&c);
                        if !bad(format!("[H{i},{r}, E{j},{k}] = [{r}a]/{r} E{j},{}", k + r), ok_e) {
                            return;
                        }
                        let ok_f = im.h(i, r).commutator(im.f(j, k)) == im.f(j, k + r).scale(&c.neg());
                        if !bad(format!("[H{i},{r}, F{j},{k}] = −[{r}a]/{r} F{j},{}", k + r), ok_f) {
                            return;
                        }
                    }
                }
                let qa = Trunc::<Q, T>::qpow_i(a, di);
                let qma = Trunc::<Q, T>::qpow_i(-a, di);
                for k in -im.r_max..im.r_max {
                    for l in -im.r_max..im.r_max {
                        let lhs = im.e(i, k + 1).mul(im.e(j, l)).sub(&im.e(j, l).mul(im.e(i, k + 1)).scale(&qa));
                        let rhs = im.e(i, k).mul(im.e(j, l + 1)).scale(&qa).sub(&im.e(j, l + 1).mul(im.e(i, k)));
                        if !bad(format!("E{i},{} E{j},{l} exchange", k + 1), lhs == rhs) {
                            return;
                        }
                        let lhs = im.f(i, k + 1).mul(im.f(j, l)).sub(&im.f(j, l).mul(im.f(i, k + 1)).scale(&qma));
                        let rhs = im.f(i, k).mul(im.f(j, l + 1)).scale(&qma).sub(&im.f(j, l + 1).mul(im.f(i, k)));
                        if !bad(format!("F{i},{} F{j},{l} exchange", k + 1), lhs == rhs) {
                            return;
                        }
                    }
                }
                for k in -one..=one {
                    for l in (-one..=one).filter(|l| (k + l).abs() <= im.r_max) {
                        let lhs = im.e(i, k).commutator(im.f(j, l));
                        let rhs = if i == j {
                            psi_minus_phi_over_qdiff(im, i, k + l)
                        } else {
                            Mat::zeros(im.dim(), im.dim())
                        };
                        if !bad(format!("[E{i},{k}, F{j},{l}] = δ(Ψ−Φ)/(q−q⁻¹)"), lhs == rhs) {
                            return;
                        }
                    }
                }
            }
        }
    })
}

/// Kac–Moody relations on ℰ_i, ℱ_i, ℋ_i for i = 0..n modulo ℏ^T:
/// [ℋ_i, ℰ_j] = a_ij ℰ_j, [ℋ_i, ℱ_j] = −a_ij ℱ_j and [ℰ_i, ℱ_j] = δ_ij [ℋ_i]_{q_i}.
pub fn check_km_relations<const T: usize>(im: &LoopGenImages<T>) -> CheckReport {
    CheckReport::timed("km-relations", |rep| {
        let datum = im.datum();
        let n = datum.rank;
        let dim = im.dim();
        for i in 0..=n {
            let hi: TMat<T> = Mat::diag(&im.km_h[i].iter().map(|x| Trunc::from_i64(*x)).collect::<Vec<_>>());
            for j in 0..=n {
                let a = extended_cartan(datum, i, j);
                if hi.commutator(&im.km_e[j]) != im.km_e[j].scale_q(&qi(a))
                    || hi.commutator(&im.km_f[j]) != im.km_f[j].scale_q(&qi(-a))
                {
                    rep.fail(format!("[ℋ{i}, ℰ/ℱ{j}] = ±a ℰ/ℱ"));
                    return;
                }
                let c = im.km_e[i].commutator(&im.km_f[j]);
                let want = if i == j {
                    Mat::diag(&im.km_h[i].iter().map(|x| qint::<Q, T>(*x, im.km_d[i])).collect::<Vec<_>>())
                } else {
                    Mat::zeros(dim, dim)
                };
                if c != want {
                    rep.fail(format!("[ℰ{i}, ℱ{j}] = δ[ℋ{i}]_q"));
                    return;
                }
            }
        }
    })
}

/// a_ij of the extended Cartan matrix, i, j ∈ 0..=n.
pub fn extended_cartan(datum: &CartanDatum, i: usize, j: usize) -> i64 {
    match (i, j) {
        (0, 0) => 2,
        (0, j) => datum.extended_row[j - 1],
        (i, 0) => datum.extended_col[i - 1],
        (i, j) => datum.a[i - 1][j - 1],
    }
}

/// Evaluation representation at `a`, its loop images with r_max = 1, and the
/// Kac–Moody images for the sign map with o(1) = `o1`.
pub fn evaluation_images<const T: usize>(rep: &WeightedRep, a: &Q, o1: i64) -> Result<LoopGenImages<T>> {
    let trep = derive_evaluation_rep(rep, a)?;
    kacmoody_images(phi_loop_generators(&trep, 1, PhiOptions::default())?, o1, None)
}
