//! Quantum Weyl group operators and the dynamical operators built from them.
//!
//! Everything λ-dependent enters through [`DynParam`] and an [`ExpContext`];
//! the 𝕊 matrices are λ-free and computed once over Q.

mod checks;

pub use checks::*;

use crate::affine_weyl::{
    dominant_coroots_up_to, reduced_word_translation, word_inversions, AffineRoot, DynEval, DynParam, Word,
};
use crate::cartan::CartanDatum;
use crate::degeneration::{LoopGenImages, TMat};
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::scalars::qnum::{exp_p_apply, qint};
use crate::scalars::{q, qi, ExpContext, Field, Ring, Trunc, Q};

pub type DMat<F, const T: usize> = Mat<Trunc<F, T>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SForm {
    /// exp(−q⁻¹ℱq^ℋ) exp(ℰ) exp(−qℱq^{−ℋ}) q^{ℋ(ℋ+1)/2}
    First,
    /// exp(q⁻¹ℰq^{−ℋ}) exp(−ℱ) exp(qℰq^ℋ) q^{ℋ(ℋ+1)/2}
    Second,
}

fn q_diag<const T: usize>(hv: &[i64], s: &Q, d: i64) -> TMat<T> {
    Mat::diag(&hv.iter().map(|x| Trunc::qpow(&(qi(*x) * s), d)).collect::<Vec<_>>())
}

/// 𝕊 for the triple (ℰ, ℱ, ℋ) with ℋ acting by `hv`, q-exponentials in base
/// p = q_d^{−1}.
pub fn quantum_weyl_s<const T: usize>(hv: &[i64], e: &TMat<T>, f: &TMat<T>, d: i64, form: SForm) -> Result<TMat<T>> {
    quantum_weyl_s_with(hv, e, f, d, form, false)
}

/// As [`quantum_weyl_s`]; `flip_first` replaces q by q⁻¹ in the first factor.
pub fn quantum_weyl_s_with<const T: usize>(
    hv: &[i64],
    e: &TMat<T>,
    f: &TMat<T>,
    d: i64,
    form: SForm,
    flip_first: bool,
) -> Result<TMat<T>> {
    let qd = Trunc::<Q, T>::qpow_i(1, d);
    let qd_inv = Trunc::<Q, T>::qpow_i(-1, d);
    let p = qd_inv.clone();
    let first_p = if flip_first { qd.clone() } else { p.clone() };
    let up = q_diag::<T>(hv, &qi(1), d);
    let down = q_diag::<T>(hv, &qi(-1), d);
    let tail = Mat::diag(&hv.iter().map(|h| Trunc::qpow(&q(h * (h + 1), 2), d)).collect::<Vec<_>>());
    let (a, b, c) = match form {
        SForm::First => (
            exp_p_apply(&first_p, &f.mul(&up).scale(&qd_inv.neg()))?,
            exp_p_apply(&p, e)?,
            exp_p_apply(&p, &f.mul(&down).scale(&qd.neg()))?,
        ),
        SForm::Second => (
            exp_p_apply(&first_p, &e.mul(&down).scale(&qd_inv))?,
            exp_p_apply(&p, &f.neg())?,
            exp_p_apply(&p, &e.mul(&up).scale(&qd))?,
        ),
    };
    Ok(a.mul(&b).mul(&c).mul(&tail))
}

fn lift_mat<F: Field, const T: usize>(m: &TMat<T>) -> DMat<F, T> {
    m.map(|x| x.lift::<F>())
}

/// Kac–Moody images with 𝕊_i and 𝕊_i⁻¹ cached, lifted to the scalar field F.
#[derive(Clone, Debug)]
pub struct QWeylContext<F: Field, const T: usize> {
    pub images: LoopGenImages<T>,
    pub e: Vec<DMat<F, T>>,
    pub f: Vec<DMat<F, T>>,
    pub s: Vec<DMat<F, T>>,
    pub s_inv: Vec<DMat<F, T>>,
    /// 𝕊_i over Q, before lifting.
    pub s_q: Vec<TMat<T>>,
}

/// (ℰ^j, ℱ^j) with the affine root α̃^j they are attached to.
#[derive(Clone, Debug)]
pub struct RootVectorTriple<F: Field, const T: usize> {
    pub e: DMat<F, T>,
    pub f: DMat<F, T>,
    /// ν(ℋ^j) per basis vector.
    pub h: Vec<i64>,
    pub root: AffineRoot,
}

impl<F: Field, const T: usize> QWeylContext<F, T> {
    pub fn new(images: LoopGenImages<T>) -> Result<Self> {
        let n = images.datum().rank;
        let mut s_q = Vec::new();
        let mut s = Vec::new();
        let mut s_inv = Vec::new();
        for i in 0..=n {
            let si = quantum_weyl_s(&images.km_h[i], &images.km_e[i], &images.km_f[i], images.km_d[i], SForm::First)?;
            let inv = si.inverse().ok_or_else(|| Error::Degenerate(format!("𝕊_{i} is not invertible")))?;
            s.push(lift_mat(&si));
            s_inv.push(lift_mat(&inv));
            s_q.push(si);
        }
        let e = images.km_e.iter().map(lift_mat).collect();
        let f = images.km_f.iter().map(lift_mat).collect();
        Ok(QWeylContext { images, e, f, s, s_inv, s_q })
    }

    pub fn datum(&self) -> &CartanDatum {
        self.images.datum()
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        self.images.weights()
    }

    pub fn dim(&self) -> usize {
        self.images.dim()
    }

    /// 𝕊_{i_1}⋯𝕊_{i_l}.
    pub fn s_word(&self, w: &[usize]) -> DMat<F, T> {
        w.iter().fold(Mat::identity(self.dim()), |m, &i| m.mul(&self.s[i]))
    }

    /// diag((−1)^{ν(ℋ_i)}).
    pub fn sign_diag(&self, i: usize) -> DMat<F, T> {
        let v: Vec<Trunc<F, T>> =
            self.images.km_h[i].iter().map(|h| Trunc::from_i64(if h.rem_euclid(2) == 0 { 1 } else { -1 })).collect();
        Mat::diag(&v)
    }

    /// Triples for j = 1..l along `word`:
    /// ℰ^j = 𝕊_{i_l}⁻¹⋯𝕊_{i_{j+1}}⁻¹ ℰ_{i_j} 𝕊_{i_{j+1}}⋯𝕊_{i_l}.
    pub fn root_vectors(&self, word: &[usize]) -> Vec<RootVectorTriple<F, T>> {
        let datum = self.datum();
        let roots = word_inversions(datum, word);
        let l = word.len();
        let mut out = Vec::with_capacity(l);
        let mut p = Mat::identity(self.dim());
        let mut p_inv = Mat::identity(self.dim());
        for j in (0..l).rev() {
            let i = word[j];
            let root = roots[j].clone();
            let h = self.weights().iter().map(|nu| datum.weight_on_coroot(nu, &root.finite)).collect();
            out.push(RootVectorTriple { e: p_inv.mul(&self.e[i]).mul(&p), f: p_inv.mul(&self.f[i]).mul(&p), h, root });
            p = self.s[i].mul(&p);
            p_inv = p_inv.mul(&self.s_inv[i]);
        }
        out.reverse();
        out
    }
}

/// p_q(ℰ, ℱ) on each basis column b, with q_d^{λ̃(ℋ)} = W_b q_d^{corr_b} from
/// `evals[b]`:
///   Σ_k (W q_d^{corr−1−ν/2})^k / [k]_d! · ∏_{j=1}^k (q_d − q_d⁻¹)/(q_d^{N_j} − q_d^{−N_j}) · ℱ^kℰ^k,
/// q_d^{N_j} = W⁻¹ q_d^{−corr−ν/2−j}.
pub fn p_q_apply<F: Field, C: ExpContext<F>, const T: usize>(
    ctx: &C,
    e: &DMat<F, T>,
    f: &DMat<F, T>,
    evals: &[DynEval],
) -> Result<DMat<F, T>> {
    let n = e.rows();
    let mut fe = vec![Mat::identity(n)];
    let mut ek = Mat::identity(n);
    let mut fk = Mat::identity(n);
    loop {
        ek = ek.mul(e);
        if ek.is_zero() {
            break;
        }
        if fe.len() > n {
            return Err(Error::NotNilpotent(n));
        }
        fk = fk.mul(f);
        fe.push(fk.mul(&ek));
    }
    let mut out: DMat<F, T> = Mat::zeros(n, n);
    for (b, ev) in evals.iter().enumerate() {
        let d = ev.d;
        let w = ctx.mono(&ev.exponent);
        let w_inv = w.inv().ok_or_else(|| Error::Degenerate("exponential monomial vanishes".into()))?;
        let nu_half = q(ev.nu_value, 2);
        let base = Trunc::<F, T>::mono_qpow(&w, &(&ev.correction - qi(1) - &nu_half), d);
        let qdiff = Trunc::<F, T>::qpow_i(1, d).sub(&Trunc::qpow_i(-1, d));
        let mut coef = Trunc::<F, T>::one();
        for (k, m) in fe.iter().enumerate() {
            if k > 0 {
                let j = qi(k as i64);
                let shift = &ev.correction + &nu_half + &j;
                let den = Trunc::mono_qpow(&w_inv, &-&shift, d).sub(&Trunc::mono_qpow(&w, &shift, d));
                let den_inv = den
                    .try_inv()
                    .ok_or_else(|| Error::Degenerate(format!("p_q denominator vanishes at ℏ⁰ (k = {k})")))?;
                let qk_inv = qint::<F, T>(k as i64, d).try_inv().expect("[k] is a unit");
                coef = coef.mul(&base).mul(&qdiff).mul(&den_inv).mul(&qk_inv);
            }
            for a in 0..n {
                if !m[(a, b)].is_zero() {
                    out[(a, b)] = out[(a, b)].add(&m[(a, b)].mul(&coef));
                }
            }
        }
    }
    Ok(out)
}

fn evals_for(datum: &CartanDatum, weights: &[Vec<i64>], param: &DynParam, root: &AffineRoot) -> Vec<DynEval> {
    weights.iter().map(|nu| param.eval_root(datum, root, nu)).collect()
}

/// 𝔹_w(λ̃) = ∏_{j=1}^l p_q(ℰ^j, ℱ^j; λ̃ on α̃^j), indices increasing left to right.
pub fn b_w_global<F: Field, C: ExpContext<F>, const T: usize>(
    qc: &QWeylContext<F, T>,
    ctx: &C,
    word: &[usize],
    param: &DynParam,
) -> Result<DMat<F, T>> {
    let mut m = Mat::identity(qc.dim());
    for tr in qc.root_vectors(word) {
        let evals = evals_for(qc.datum(), qc.weights(), param, &tr.root);
        m = m.mul(&p_q_apply(ctx, &tr.e, &tr.f, &evals)?);
    }
    Ok(m)
}

/// 𝒜_{s_{i_1}}(s_{i_2}⋯s_{i_l}λ̃) ⋯ 𝒜_{s_{i_l}}(λ̃), with
/// 𝒜_{s_i}(λ̃) = (−1)^{ν(ℋ_i)} 𝕊_i p_q(ℰ_i, ℱ_i; λ̃).
pub fn a_word<F: Field, C: ExpContext<F>, const T: usize>(
    qc: &QWeylContext<F, T>,
    ctx: &C,
    word: &[usize],
    param: &DynParam,
) -> Result<DMat<F, T>> {
    let datum = qc.datum();
    let mut m = Mat::identity(qc.dim());
    let mut p = param.clone();
    for &i in word.iter().rev() {
        let evals = evals_for(datum, qc.weights(), &p, &AffineRoot::simple(datum, i));
        let factor = qc.sign_diag(i).mul(&qc.s[i]).mul(&p_q_apply(ctx, &qc.e[i], &qc.f[i], &evals)?);
        m = factor.mul(&m);
        p = p.act(datum, i);
    }
    Ok(m)
}

/// μ = μ₊ − μ₋ with μ± dominant in Q∨ and μ₋ minimal among dominant coroots
/// of translation length ≤ `max_len`. Coordinates are coweight coordinates.
pub fn dominant_split(datum: &CartanDatum, mu: &[Q], max_len: usize) -> Result<(Vec<Q>, Vec<Q>)> {
    datum.coroot_coords(mu)?;
    if datum.is_dominant(mu) {
        return Ok((mu.to_vec(), vec![qi(0); datum.rank]));
    }
    let length = |m: &Vec<Q>| datum.positive_roots().iter().map(|a| datum.root_on_coweight(a, m)).sum::<Q>();
    let mut candidates = dominant_coroots_up_to(datum, max_len);
    candidates.sort_by(|a, b| length(a).cmp(&length(b)).then_with(|| a.cmp(b)));
    for minus in candidates {
        let plus: Vec<Q> = mu.iter().zip(&minus).map(|(a, b)| a + b).collect();
        if datum.is_dominant(&plus) {
            return Ok((plus, minus));
        }
    }
    Err(Error::NoSolution(format!("no dominant split within translation length {max_len}")))
}

pub const SPLIT_MAX_LEN: usize = 16;

/// 𝒜^μ(λ̃) for μ ∈ Q∨: a reduced word of t^μ for dominant μ, otherwise
/// 𝒜^{μ₊}(λ̃′)·𝒜^{μ₋}(λ̃′)⁻¹ with λ̃′ = λ̃ − kμ₋.
pub fn a_mu<F: Field, C: ExpContext<F>, const T: usize>(
    qc: &QWeylContext<F, T>,
    ctx: &C,
    mu: &[Q],
    param: &DynParam,
) -> Result<DMat<F, T>> {
    let datum = qc.datum();
    let (plus, minus) = dominant_split(datum, mu, SPLIT_MAX_LEN)?;
    if minus.iter().all(|x| x == &qi(0)) {
        return a_word(qc, ctx, &reduced_word_translation(datum, mu)?, param);
    }
    let c = datum.coroot_coords(&minus)?;
    let shift = datum.coroot_to_root_scaled(&c.iter().map(|x| x * param.k).collect::<Vec<_>>());
    let mut shifted = param.clone();
    for (b, s) in shifted.beta.iter_mut().zip(&shift) {
        *b -= s;
    }
    let ap = a_word(qc, ctx, &reduced_word_translation(datum, &plus)?, &shifted)?;
    let am = a_word(qc, ctx, &reduced_word_translation(datum, &minus)?, &shifted)?;
    let am_inv = am.inverse().ok_or_else(|| Error::Degenerate("𝒜^{μ₋} is not invertible".into()))?;
    Ok(ap.mul(&am_inv))
}

/// Letters of a reduced word of t^μ for dominant μ, or of t^{μ₊} followed by
/// t^{μ₋} for general μ (the word whose 𝕊-product enters 𝒜^μ).
pub fn translation_words(datum: &CartanDatum, mu: &[Q]) -> Result<(Word, Word)> {
    let (plus, minus) = dominant_split(datum, mu, SPLIT_MAX_LEN)?;
    let wp = reduced_word_translation(datum, &plus)?;
    let wm = if minus.iter().all(|x| x == &qi(0)) { vec![] } else { reduced_word_translation(datum, &minus)? };
    Ok((wp, wm))
}
