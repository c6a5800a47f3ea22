use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{a_word, b_w_global, quantum_weyl_s_with, translation_words, DMat, QWeylContext, SForm, a_mu};
use crate::affine_weyl::{
    dominant_coroots_up_to, inversion_multiset, inversion_multiset_closed, AffineBfs, AffineElement, DynParam,
    Word, word_string,
};
use crate::cartan::{fmt_coweight, CartanDatum};
use crate::degeneration::{extended_cartan, LoopGenImages, TMat};
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::report::CheckReport;
use crate::scalars::qnum::exp_p_apply;
use crate::scalars::{q, qi, ExpContext, Field, RatFunc, Ring, Sampled, Symbolic, Trunc, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Sampled,
    Symbolic,
}

#[derive(Clone, Copy, Debug)]
pub struct SampleOpts {
    pub mode: Mode,
    pub samples: usize,
    pub seed: u64,
}

impl Default for SampleOpts {
    fn default() -> Self {
        SampleOpts { mode: Mode::Sampled, samples: 3, seed: 0 }
    }
}

const MAX_RESAMPLES: usize = 64;

/// Runs `f` at `opts.samples` random points, drawing again whenever a point
/// makes a denominator vanish.
fn at_samples<R>(
    opts: &SampleOpts,
    rank: usize,
    report: &mut CheckReport,
    mut f: impl FnMut(&Sampled) -> Result<R>,
) -> Result<Vec<R>> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    report.seed = Some(opts.seed);
    let mut out = Vec::new();
    let mut redraws = 0;
    while out.len() < opts.samples {
        let s = Sampled::random(rank, &mut rng);
        match f(&s) {
            Ok(r) => {
                report.samples.push(ExpContext::<Q>::describe(&s));
                out.push(r);
            }
            Err(Error::Degenerate(why)) => {
                redraws += 1;
                report.note(format!("resampled: {:?} is degenerate ({why})", ExpContext::<Q>::describe(&s)));
                if redraws > MAX_RESAMPLES {
                    return Err(Error::Degenerate("too many degenerate samples".into()));
                }
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

fn finish(report: &mut CheckReport, r: Result<()>) {
    if let Err(e) = r {
        report.fail(e.to_string());
    }
}

fn lift_q<F: Field>(m: &Mat<Q>) -> DMat<F, 2> {
    m.map(|x| Trunc::constant(F::from_q(x)))
}

/// Weight-diagonal, ℏ-free, ±1 and constant on weight spaces: returns one
/// (weight, sign) per weight space.
pub fn extract_signs<F: Field, const T: usize>(
    d: &DMat<F, T>,
    spaces: &[(Vec<i64>, Vec<usize>)],
) -> std::result::Result<Vec<(Vec<i64>, i64)>, String> {
    if !d.is_diagonal() {
        return Err("extracted operator is not diagonal".into());
    }
    let mut out = Vec::new();
    for (w, idx) in spaces {
        let mut sign = None;
        for &b in idx {
            let x = &d[(b, b)];
            if x.coeffs()[1..].iter().any(|c| !c.is_zero()) {
                return Err(format!("ℏ-dependent entry at weight {w:?}"));
            }
            let s = if x.coeffs()[0] == F::one() {
                1
            } else if x.coeffs()[0] == F::from_i64(-1) {
                -1
            } else {
                return Err(format!("entry at weight {w:?} is not ±1"));
            };
            if sign.is_some_and(|t| t != s) {
                return Err(format!("entries differ inside the weight space {w:?}"));
            }
            sign = Some(s);
        }
        out.push((w.clone(), sign.expect("nonempty weight space")));
    }
    Ok(out)
}

fn record_signs(report: &mut CheckReport, all: Vec<Vec<(Vec<i64>, i64)>>) {
    if let Some(first) = all.first() {
        if all.iter().any(|d| d != first) {
            report.fail("extracted D differs between samples");
        }
        report.d = first.clone();
    }
}

/// ℏ(−Σ c_i T_{i,1} + ½ Σ c_i t_i²), c_i = m_i/d_i for μ = Σ m_i α_i∨.
/// `drop_t2` leaves out the t_i² part.
pub fn half_tau<F: Field>(images: &LoopGenImages<2>, mu: &[Q], drop_t2: bool) -> Result<DMat<F, 2>> {
    let loops = &images.loops;
    let datum = &loops.datum;
    let c = datum.coweight_to_coroot(mu);
    let mut acc: Mat<Q> = Mat::zeros(loops.dim(), loops.dim());
    for i in 0..datum.rank {
        let ci = &c[i] / qi(datum.d[i]);
        let t = &loops.t0[i];
        acc = acc.sub(&loops.t1[i].scale_q(&ci));
        if !drop_t2 {
            acc = acc.add(&t.mul(t).scale_q(&(ci * q(1, 2))));
        }
    }
    Ok(lift_q::<F>(&acc).scale(&Trunc::hbar()))
}

/// ℏ Σ_{α>0} ⟨α, μ⟩/(e^{−⟨λ,α⟩} − 1) x_α⁻x_α⁺.
pub fn root_sum<F: Field, C: ExpContext<F>>(images: &LoopGenImages<2>, ctx: &C, mu: &[Q]) -> Result<DMat<F, 2>> {
    let base = &images.loops.base;
    let datum = &base.datum;
    let n = base.dim();
    let mut acc = Mat::zeros(n, n);
    for r in &base.roots {
        let m = datum.root_on_coweight(&r.alpha, mu);
        if m == qi(0) {
            continue;
        }
        let neg2: Vec<i64> = r.alpha.iter().map(|x| -2 * x).collect();
        let den = ctx.mono(&neg2).sub(&F::one());
        let c = F::from_q(&m)
            .mul(&den.inv().ok_or_else(|| Error::Degenerate(format!("e^{{−⟨λ,α⟩}} = 1 for α = {:?}", r.alpha)))?);
        let (xp, xm) = base.x_alpha(r);
        acc = acc.add(&lift_q::<F>(&xm.mul(&xp)).scale(&Trunc::hbar().scale(&c)));
    }
    Ok(acc)
}

fn identity<F: Field>(n: usize) -> DMat<F, 2> {
    Mat::identity(n)
}

/// Multiset of inversions of a reduced word of t^μ against {α: ⟨α,μ⟩} for
/// every dominant μ ∈ Q∨ of translation length ≤ `max_len`.
pub fn check_inversion_multisets(datum: &CartanDatum, max_len: usize) -> CheckReport {
    CheckReport::timed(format!("lemma15 {}", datum.name()), |rep| {
        let mut count = 0;
        for mu in dominant_coroots_up_to(datum, max_len) {
            match inversion_multiset(datum, &mu) {
                Ok(m) if m == inversion_multiset_closed(datum, &mu) => count += 1,
                Ok(_) => {
                    rep.fail(format!("multisets differ at μ = {}", fmt_coweight(&mu)));
                    return;
                }
                Err(e) => {
                    rep.fail(format!("μ = {}: {e}", fmt_coweight(&mu)));
                    return;
                }
            }
        }
        rep.note(format!("{count} dominant coroots up to length {max_len}"));
    })
}

/// W q_d^{−ν/2−1}(q_d − q_d⁻¹)/(W⁻¹q_d^{−ν/2−i} − W q_d^{ν/2+i}) = ℏd/(W⁻² − 1)
/// mod ℏ² for d ∈ {1,2,3}, ν ∈ [−4,4], i ≤ 4.
pub fn check_scalar_lemma(seed: u64, samples: usize) -> CheckReport {
    CheckReport::timed("scalar-lemma", |rep| {
        let opts = SampleOpts { mode: Mode::Sampled, samples, seed };
        let r = at_samples(&opts, 1, rep, |s| {
            let w = s.w[0].clone();
            let w_inv = w.recip();
            for d in 1..=3i64 {
                for nu in -4..=4i64 {
                    for i in 1..=4i64 {
                        let h = q(nu, 2);
                        let num = Trunc::<Q, 2>::mono_qpow(&w, &(-&h - qi(1)), d)
                            .mul(&Trunc::qpow_i(1, d).sub(&Trunc::qpow_i(-1, d)));
                        let den = Trunc::<Q, 2>::mono_qpow(&w_inv, &(-&h - qi(i)), d)
                            .sub(&Trunc::mono_qpow(&w, &(&h + qi(i)), d));
                        let lhs = num.mul(&den.try_inv().ok_or_else(|| Error::Degenerate("W = ±1".into()))?);
                        let rhs = Trunc::<Q, 2>::hbar().scale(&(qi(d) / (&w_inv * &w_inv - qi(1))));
                        if lhs != rhs {
                            return Err(Error::Relation(format!("d = {d}, ν = {nu}, i = {i}, W = {w}")));
                        }
                    }
                }
            }
            Ok(())
        });
        finish(rep, r.map(|_| ()));
    })
}

/// 𝕊_i = (1 + (dℏ/4)(ℰℱ + ℱℰ − ℋ)) exp(ℰ)exp(−ℱ)exp(ℰ)
///     = (1 + (dℏ/4)(ℰℱ + ℱℰ − ℋ)) exp(−ℱ)exp(ℰ)exp(−ℱ) mod ℏ², for i = 0..n,
/// with 𝕊_i taken in both q-exponential forms. `flip_first` mutates 𝕊.
pub fn check_qweyl_expansion(images: &LoopGenImages<2>, flip_first: bool) -> CheckReport {
    let name = if flip_first { "qweyl-expansion (mutated)" } else { "qweyl-expansion" };
    CheckReport::timed(name, |rep| {
        let r = (|| -> Result<()> {
            let n = images.datum().rank;
            let one = Trunc::<Q, 2>::one();
            for i in 0..=n {
                let (e, f, d) = (&images.km_e[i], &images.km_f[i], images.km_d[i]);
                let hv = &images.km_h[i];
                let h: TMat<2> = Mat::diag(&hv.iter().map(|x| Trunc::from_i64(*x)).collect::<Vec<_>>());
                let pre = Mat::identity(images.dim())
                    .add(&e.anticommutator(f).sub(&h).scale(&Trunc::hbar().scale(&q(d, 4))));
                let ee = exp_p_apply(&one, e)?;
                let ef = exp_p_apply(&one, &f.neg())?;
                let want = [pre.mul(&ee).mul(&ef).mul(&ee), pre.mul(&ef).mul(&ee).mul(&ef)];
                for form in [SForm::First, SForm::Second] {
                    let s = quantum_weyl_s_with(hv, e, f, d, form, flip_first)?;
                    for (k, w) in want.iter().enumerate() {
                        if &s != w {
                            rep.fail(format!("letter {i}: 𝕊 ({form:?} form) differs from expansion {}", k + 1));
                            return Ok(());
                        }
                    }
                }
            }
            Ok(())
        })();
        finish(rep, r);
    })
}

/// Coxeter exponent for letters i, j of the affine diagram, if finite.
pub fn braid_order(datum: &CartanDatum, i: usize, j: usize) -> Option<usize> {
    match extended_cartan(datum, i, j) * extended_cartan(datum, j, i) {
        0 => Some(2),
        1 => Some(3),
        2 => Some(4),
        3 => Some(6),
        _ => None,
    }
}

fn alternating(i: usize, j: usize, m: usize) -> Word {
    (0..m).map(|k| if k % 2 == 0 { i } else { j }).collect()
}

/// Reduced words of t^{θ∨}.
pub fn theta_translation_words(datum: &CartanDatum) -> Vec<Word> {
    let theta_coweight = datum.coroot_to_coweight(&datum.theta_coroot);
    let len = crate::affine_weyl::translation_length(datum, &theta_coweight);
    let len = len.to_integer().try_into().unwrap_or(0usize);
    let mut bfs = AffineBfs::new(datum);
    bfs.grow_to(len);
    let c = datum.theta_coroot.clone();
    bfs.all_reduced_words(&AffineElement::translation(datum, &c))
}

/// Braid relations of the 𝕊_i for every pair of letters (exact over Q mod ℏ²),
/// then the braid-like relation for 𝒜 along both sides of each pair relation
/// and across all reduced words of t^{θ∨}.
pub fn check_braid(images: &LoopGenImages<2>, opts: &SampleOpts) -> CheckReport {
    CheckReport::timed("braid", |rep| {
        let r = (|| -> Result<()> {
            let datum = images.datum().clone();
            let n = datum.rank;
            let qc = QWeylContext::<Q, 2>::new(images.clone())?;
            let mut pairs = Vec::new();
            for i in 0..=n {
                for j in i + 1..=n {
                    if let Some(m) = braid_order(&datum, i, j) {
                        pairs.push((alternating(i, j, m), alternating(j, i, m)));
                    }
                }
            }
            for (u, v) in &pairs {
                if qc.s_word(u) != qc.s_word(v) {
                    rep.fail(format!("𝕊 braid relation {} = {}", word_string(u), word_string(v)));
                    return Ok(());
                }
            }
            let words = theta_translation_words(&datum);
            rep.note(format!(
                "reduced words of t^θ∨: {}",
                words.iter().map(|w| word_string(w)).collect::<Vec<_>>().join(", ")
            ));
            let mut groups: Vec<Vec<Word>> = pairs.iter().map(|(u, v)| vec![u.clone(), v.clone()]).collect();
            if words.len() > 1 {
                groups.push(words);
            }
            let param = DynParam::rescaled(&datum, 1);
            match opts.mode {
                Mode::Sampled => {
                    let ms = at_samples(opts, n, rep, |s| {
                        groups.iter().map(|g| g.iter().map(|w| a_word(&qc, s, w, &param)).collect()).collect::<Result<Vec<Vec<_>>>>()
                    })?;
                    for m in &ms {
                        if !compare_groups(rep, &groups, m) {
                            break;
                        }
                    }
                }
                Mode::Symbolic => {
                    let qs = QWeylContext::<RatFunc, 2>::new(images.clone())?;
                    let ctx = Symbolic { rank: n };
                    let m = groups
                        .iter()
                        .map(|g| g.iter().map(|w| a_word(&qs, &ctx, w, &param)).collect())
                        .collect::<Result<Vec<Vec<_>>>>()?;
                    compare_groups(rep, &groups, &m);
                }
            }
            Ok(())
        })();
        finish(rep, r);
    })
}

fn compare_groups<F: Field>(rep: &mut CheckReport, groups: &[Vec<Word>], ms: &[Vec<DMat<F, 2>>]) -> bool {
    for (group, m) in groups.iter().zip(ms) {
        if m.iter().any(|x| x != &m[0]) {
            rep.fail(format!(
                "𝒜 differs across the words {}",
                group.iter().map(|w| word_string(w)).collect::<Vec<_>>().join(" / ")
            ));
            return false;
        }
    }
    true
}

fn lemma16_at<F: Field, C: ExpContext<F>>(
    qc: &QWeylContext<F, 2>,
    ctx: &C,
    word: &[usize],
    mu: &[Q],
) -> Result<Option<String>> {
    let param = DynParam::rescaled(qc.datum(), 1);
    let b = b_w_global(qc, ctx, word, &param)?;
    let rhs = identity::<F>(qc.dim()).add(&root_sum(&qc.images, ctx, mu)?);
    if b != rhs {
        return Ok(Some("𝔹_w differs from 1 + ℏΣ⟨α,μ⟩/(e^{−⟨λ,α⟩}−1) x⁻x⁺".into()));
    }
    // 𝒜_w = D′·𝕊_w·𝔹_w with D′ a ±1 weight-diagonal
    let a = a_word(qc, ctx, word, &param)?;
    let sb = qc.s_word(word).mul(&b);
    let sb_inv = sb.inverse().ok_or_else(|| Error::Degenerate("𝕊_w𝔹_w is singular".into()))?;
    let spaces = qc.images.loops.base.weight_spaces();
    if let Err(e) = extract_signs(&a.mul(&sb_inv), &spaces) {
        return Ok(Some(format!("𝒜_w(𝕊_w𝔹_w)⁻¹: {e}")));
    }
    Ok(None)
}

/// ℏ⁰ part of ℱ^jℰ^j against f_αe_α (α^j > 0) or e_{−α}f_{−α} (α^j < 0).
fn check_root_vector_products(qc: &QWeylContext<Q, 2>, word: &[usize]) -> Option<String> {
    let base = &qc.images.loops.base;
    for (j, tr) in qc.root_vectors(word).iter().enumerate() {
        let fe = tr.f.mul(&tr.e).map(|x| x.coeffs()[0].clone());
        let pos = crate::cartan::is_positive(&tr.root.finite);
        let alpha: Vec<i64> = if pos { tr.root.finite.clone() } else { tr.root.finite.iter().map(|x| -x).collect() };
        let Some(r) = base.root(&alpha) else {
            return Some(format!("no root vectors for {alpha:?}"));
        };
        let want = if pos { r.f.mul(&r.e) } else { r.e.mul(&r.f) };
        if fe != want {
            return Some(format!("ℏ⁰ part of ℱ^{}ℰ^{} is not the classical root-vector product", j + 1, j + 1));
        }
    }
    None
}

/// 𝔹_w(λ/ℏ) along the t^μ-word equals 1 + ℏΣ_{α>0}⟨α,μ⟩/(e^{−⟨λ,α⟩}−1)x_α⁻x_α⁺
/// mod ℏ²; also 𝒜_w(𝕊_w𝔹_w)⁻¹ is a ±1 weight-diagonal and the ℏ⁰ parts of the
/// ℱ^jℰ^j are classical root-vector products.
pub fn check_lemma16(images: &LoopGenImages<2>, mu: &[Q], opts: &SampleOpts) -> CheckReport {
    CheckReport::timed(format!("lemma16 μ = {}", fmt_coweight(mu)), |rep| {
        let r = (|| -> Result<()> {
            let datum = images.datum().clone();
            if !datum.is_dominant(mu) {
                return Err(Error::NotDominant(fmt_coweight(mu)));
            }
            let word = crate::affine_weyl::reduced_word_translation(&datum, mu)?;
            rep.note(format!("word {}", word_string(&word)));
            let qc = QWeylContext::<Q, 2>::new(images.clone())?;
            if let Some(why) = check_root_vector_products(&qc, &word) {
                rep.fail(why);
                return Ok(());
            }
            let outcomes = match opts.mode {
                Mode::Sampled => at_samples(opts, datum.rank, rep, |s| lemma16_at(&qc, s, &word, mu))?,
                Mode::Symbolic => {
                    let qs = QWeylContext::<RatFunc, 2>::new(images.clone())?;
                    vec![lemma16_at(&qs, &Symbolic { rank: datum.rank }, &word, mu)?]
                }
            };
            if let Some(why) = outcomes.into_iter().flatten().next() {
                rep.fail(why);
            }
            Ok(())
        })();
        finish(rep, r);
    })
}

/// D_S = 𝕊_{t^μ}·(1 + ½τ(h_μ))⁻¹ mod ℏ², with 𝕊_{t^μ} = 𝕊_{w₊}𝕊_{w₋}⁻¹ for
/// the dominant split μ = μ₊ − μ₋.
pub fn degenerate_s_operator(images: &LoopGenImages<2>, mu: &[Q]) -> Result<DMat<Q, 2>> {
    let qc = QWeylContext::<Q, 2>::new(images.clone())?;
    let (wp, wm) = translation_words(images.datum(), mu)?;
    let sm = qc.s_word(&wm).inverse().ok_or_else(|| Error::Degenerate("𝕊 product is singular".into()))?;
    let s = qc.s_word(&wp).mul(&sm);
    let rhs = identity::<Q>(qc.dim()).add(&half_tau::<Q>(images, mu, false)?);
    Ok(s.mul(&rhs.inverse().expect("unipotent")))
}

pub fn check_degenerate_s(images: &LoopGenImages<2>, mu: &[Q]) -> CheckReport {
    CheckReport::timed(format!("degenerateS μ = {}", fmt_coweight(mu)), |rep| {
        let r = (|| -> Result<()> {
            let d = degenerate_s_operator(images, mu)?;
            match extract_signs(&d, &images.loops.base.weight_spaces()) {
                Ok(s) => rep.d = s,
                Err(e) => rep.fail(format!("D_S: {e}")),
            }
            Ok(())
        })();
        finish(rep, r);
    })
}

/// D = 𝒜^μ(λ/ℏ)·RHS⁻¹ with RHS = 1 + ℏΣ⟨α,μ⟩/(e^{−⟨λ,α⟩}−1)x⁻x⁺ + ½τ(h_μ).
pub fn main_theorem_operator<F: Field, C: ExpContext<F>>(
    qc: &QWeylContext<F, 2>,
    ctx: &C,
    mu: &[Q],
    drop_t2: bool,
) -> Result<DMat<F, 2>> {
    let param = DynParam::rescaled(qc.datum(), 1);
    let m = a_mu(qc, ctx, mu, &param)?;
    let rhs = identity::<F>(qc.dim()).add(&root_sum(&qc.images, ctx, mu)?).add(&half_tau::<F>(&qc.images, mu, drop_t2)?);
    let inv = rhs.inverse().ok_or_else(|| Error::Degenerate("RHS is singular".into()))?;
    Ok(m.mul(&inv))
}

pub fn check_main_theorem(images: &LoopGenImages<2>, mu: &[Q], opts: &SampleOpts) -> CheckReport {
    check_main_theorem_with(images, mu, opts, false)
}

/// As [`check_main_theorem`]; `drop_t2` removes the t_i² part of τ in RHS.
pub fn check_main_theorem_with(images: &LoopGenImages<2>, mu: &[Q], opts: &SampleOpts, drop_t2: bool) -> CheckReport {
    let name = format!("main-theorem μ = {}{}", fmt_coweight(mu), if drop_t2 { " (mutated τ)" } else { "" });
    CheckReport::timed(name, |rep| {
        let r = (|| -> Result<()> {
            let datum = images.datum().clone();
            datum.coroot_coords(mu)?;
            let spaces = images.loops.base.weight_spaces();
            let signs = match opts.mode {
                Mode::Sampled => {
                    let qc = QWeylContext::<Q, 2>::new(images.clone())?;
                    at_samples(opts, datum.rank, rep, |s| Ok(extract_signs(&main_theorem_operator(&qc, s, mu, drop_t2)?, &spaces)))?
                }
                Mode::Symbolic => {
                    let qs = QWeylContext::<RatFunc, 2>::new(images.clone())?;
                    let ctx = Symbolic { rank: datum.rank };
                    vec![extract_signs(&main_theorem_operator(&qs, &ctx, mu, drop_t2)?, &spaces)]
                }
            };
            let mut all = Vec::new();
            for s in signs {
                match s {
                    Ok(d) => all.push(d),
                    Err(e) => {
                        rep.fail(format!("D: {e}"));
                        return Ok(());
                    }
                }
            }
            record_signs(rep, all);
            if datum.name() == "A1" && images.sign[1] == -1 && rep.d.iter().any(|(_, s)| *s != 1) {
                rep.fail("D ≢ 1 for A1 with o(1) = −1");
            }
            Ok(())
        })();
        finish(rep, r);
    })
}
