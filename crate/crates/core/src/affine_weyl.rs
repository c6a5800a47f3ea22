//! Affine Weyl group, reduced words of translations, and the factorized
//! dynamical parameter.

use std::collections::{BTreeMap, HashMap};

use crate::cartan::{is_positive, CartanDatum, Root};
use crate::error::{Error, Result};
use crate::scalars::{qi, Q};

/// Letters are 0..=n, 0 being the affine reflection. Only positive letters
/// occur: inverses of generators are never needed for translation words.
pub type Word = Vec<usize>;

pub fn word_string(w: &[usize]) -> String {
    w.iter().map(|i| format!("s{i}")).collect::<Vec<_>>().join("")
}

pub type IMat = Vec<Vec<i64>>;

pub fn imat_identity(n: usize) -> IMat {
    (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect()
}

pub fn imat_mul(a: &IMat, b: &IMat) -> IMat {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

pub fn imat_apply(a: &IMat, x: &[i64]) -> Vec<i64> {
    a.iter().map(|row| row.iter().zip(x).map(|(p, q)| p * q).sum()).collect()
}

/// Matrix of s_α on root coordinates.
fn reflection_matrix(datum: &CartanDatum, alpha: &[i64]) -> IMat {
    let n = datum.rank;
    let cols: Vec<Root> = (0..n).map(|j| datum.reflect_root(alpha, &datum.simple_root(j))).collect();
    (0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect()
}

/// An element of W^aff as its action λ ↦ Mλ + b on the λ-slot at level 1.
///
/// The pair (M, b) determines (w, ν) in W ⋉ Q∨ (b = d0·ν̂), so it is a
/// faithful key for hashing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineElement {
    pub m: IMat,
    pub b: Vec<i64>,
}

impl AffineElement {
    pub fn identity(n: usize) -> Self {
        AffineElement { m: imat_identity(n), b: vec![0; n] }
    }

    pub fn letter(datum: &CartanDatum, i: usize) -> Self {
        let n = datum.rank;
        if i == 0 {
            AffineElement { m: reflection_matrix(datum, &datum.theta), b: datum.theta.clone() }
        } else {
            AffineElement { m: reflection_matrix(datum, &datum.simple_root(i - 1)), b: vec![0; n] }
        }
    }

    /// self ∘ o.
    pub fn compose(&self, o: &Self) -> Self {
        let mb = imat_apply(&self.m, &o.b);
        AffineElement { m: imat_mul(&self.m, &o.m), b: mb.iter().zip(&self.b).map(|(x, y)| x + y).collect() }
    }

    /// t^ν for ν given by simple-coroot coordinates.
    pub fn translation(datum: &CartanDatum, c: &[i64]) -> Self {
        AffineElement { m: imat_identity(datum.rank), b: datum.coroot_to_root_scaled(c) }
    }

    pub fn from_word(datum: &CartanDatum, w: &[usize]) -> Self {
        w.iter().fold(Self::identity(datum.rank), |acc, &i| acc.compose(&Self::letter(datum, i)))
    }

    pub fn is_translation(&self) -> bool {
        self.m == imat_identity(self.m.len())
    }
}

/// (λ, k, δ) with λ in simple-root coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtendedWeight {
    pub lambda: Vec<Q>,
    pub k: Q,
    pub delta: Q,
}

fn pair_q(datum: &CartanDatum, x: &[Q], y: &[Q]) -> Q {
    let mut s = qi(0);
    for i in 0..datum.rank {
        for j in 0..datum.rank {
            s += &x[i] * &y[j] * qi(datum.d[i] * datum.a[i][j]);
        }
    }
    s
}

/// s_i, s_0 and t^ν on extended weights.
pub enum AffineAction<'a> {
    Letter(usize),
    /// Simple-coroot coordinates of ν.
    Translation(&'a [i64]),
}

pub fn affine_act(datum: &CartanDatum, g: AffineAction<'_>, x: &ExtendedWeight) -> ExtendedWeight {
    let n = datum.rank;
    let theta: Vec<Q> = datum.theta.iter().map(|c| qi(*c)).collect();
    match g {
        AffineAction::Letter(0) => {
            // ⟨λ, θ∨⟩ = ⟨λ, θ⟩ / d0
            let c = pair_q(datum, &x.lambda, &theta) / qi(datum.d0) - &x.k;
            ExtendedWeight {
                lambda: x.lambda.iter().zip(&theta).map(|(l, t)| l - &c * t).collect(),
                k: x.k.clone(),
                delta: &x.delta + &c,
            }
        }
        AffineAction::Letter(i) => {
            let i = i - 1;
            let c: Q = (0..n).map(|j| qi(datum.a[i][j]) * &x.lambda[j]).sum();
            let mut lambda = x.lambda.clone();
            lambda[i] -= c;
            ExtendedWeight { lambda, k: x.k.clone(), delta: x.delta.clone() }
        }
        AffineAction::Translation(c) => {
            let nu: Vec<Q> = c.iter().zip(&datum.d).map(|(ci, di)| qi(*ci) / qi(*di)).collect();
            let kd = &x.k * qi(datum.d0);
            ExtendedWeight {
                lambda: x.lambda.iter().zip(&nu).map(|(l, v)| l + &kd * v).collect(),
                k: x.k.clone(),
                delta: &x.delta - pair_q(datum, &x.lambda, &nu) - &kd * pair_q(datum, &nu, &nu) / qi(2),
            }
        }
    }
}

/// Breadth-first enumeration of W^aff by length.
///
/// Level L holds every element of length L with its lexicographically smallest
/// reduced word. Words grow on the right and each level is processed in lex
/// order, so the first word reaching an element is its lex-min reduced word.
pub struct AffineBfs {
    pub levels: Vec<Vec<(AffineElement, Word)>>,
    length: HashMap<AffineElement, usize>,
    letters: Vec<AffineElement>,
}

impl AffineBfs {
    pub fn new(datum: &CartanDatum) -> Self {
        let id = AffineElement::identity(datum.rank);
        let letters = (0..=datum.rank).map(|i| AffineElement::letter(datum, i)).collect();
        AffineBfs { levels: vec![vec![(id.clone(), vec![])]], length: HashMap::from([(id, 0)]), letters }
    }

    pub fn grow_to(&mut self, max_len: usize) {
        while self.levels.len() <= max_len {
            let last = self.levels.last().unwrap();
            let mut next = Vec::new();
            for (g, w) in last {
                for (i, s) in self.letters.iter().enumerate() {
                    let h = g.compose(s);
                    if self.length.contains_key(&h) {
                        continue;
                    }
                    self.length.insert(h.clone(), self.levels.len());
                    let mut w2 = w.clone();
                    w2.push(i);
                    next.push((h, w2));
                }
            }
            self.levels.push(next);
        }
    }

    pub fn length_of(&self, g: &AffineElement) -> Option<usize> {
        self.length.get(g).copied()
    }

    /// Lex-min reduced word of `g`, searching up to `max_len`.
    pub fn reduced_word(&mut self, g: &AffineElement, max_len: usize) -> Option<Word> {
        for l in 0..=max_len {
            self.grow_to(l);
            if let Some(w) = self.levels[l].iter().find(|(h, _)| h == g).map(|(_, w)| w.clone()) {
                return Some(w);
            }
        }
        None
    }

    /// Every reduced word of `g` (which must already be enumerated).
    pub fn all_reduced_words(&self, g: &AffineElement) -> Vec<Word> {
        let Some(l) = self.length_of(g) else { return vec![] };
        if l == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for (i, s) in self.letters.iter().enumerate() {
            // s is an involution, so g = (g s) s
            let prev = g.compose(s);
            if self.length_of(&prev) == Some(l - 1) {
                for mut w in self.all_reduced_words(&prev) {
                    w.push(i);
                    out.push(w);
                }
            }
        }
        out.sort();
        out
    }
}

/// Σ_{α>0} ⟨α, μ⟩, the length of t^μ for dominant μ.
pub fn translation_length(datum: &CartanDatum, mu: &[Q]) -> Q {
    datum.positive_roots().iter().map(|a| datum.root_on_coweight(a, mu)).sum()
}

fn check_dominant_coroot(datum: &CartanDatum, mu: &[Q]) -> Result<Vec<i64>> {
    let c = datum.coroot_coords(mu)?;
    if !datum.is_dominant(mu) {
        return Err(Error::NotDominant(crate::cartan::fmt_coweight(mu)));
    }
    Ok(c)
}

/// Lex-min reduced word for t^μ, μ dominant in Q∨ (fundamental-coweight coords).
pub fn reduced_word_translation(datum: &CartanDatum, mu: &[Q]) -> Result<Word> {
    let mut bfs = AffineBfs::new(datum);
    reduced_word_translation_with(&mut bfs, datum, mu)
}

pub fn reduced_word_translation_with(bfs: &mut AffineBfs, datum: &CartanDatum, mu: &[Q]) -> Result<Word> {
    let c = check_dominant_coroot(datum, mu)?;
    let len = translation_length(datum, mu).to_integer();
    let len: usize = len.try_into().map_err(|_| Error::Unsupported("translation too long".into()))?;
    let target = AffineElement::translation(datum, &c);
    bfs.reduced_word(&target, len)
        .ok_or_else(|| Error::NoSolution(format!("no word of length {len} for t^μ")))
}

/// Affine root (α, 0, n).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineRoot {
    pub finite: Root,
    pub n: i64,
}

impl AffineRoot {
    pub fn simple(datum: &CartanDatum, i: usize) -> Self {
        if i == 0 {
            AffineRoot { finite: datum.theta.iter().map(|x| -x).collect(), n: 1 }
        } else {
            AffineRoot { finite: datum.simple_root(i - 1), n: 0 }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.n > 0 || (self.n == 0 && is_positive(&self.finite))
    }

    pub fn act(&self, datum: &CartanDatum, i: usize) -> Self {
        if i == 0 {
            AffineRoot {
                finite: datum.reflect_root(&datum.theta, &self.finite),
                n: self.n + datum.pair_coroot(&self.finite, &datum.theta),
            }
        } else {
            AffineRoot { finite: datum.reflect(i - 1, &self.finite), n: self.n }
        }
    }

    /// Applies the word s_{i_1}⋯s_{i_l} (rightmost letter first).
    pub fn act_word(&self, datum: &CartanDatum, w: &[usize]) -> Self {
        w.iter().rev().fold(self.clone(), |r, &i| r.act(datum, i))
    }
}

/// α̃^j = s_{i_l}⋯s_{i_{j+1}}(α_{i_j}) for j = 1..l.
pub fn word_inversions(datum: &CartanDatum, w: &[usize]) -> Vec<AffineRoot> {
    (0..w.len()).map(|j| AffineRoot::simple(datum, w[j]).act_word(datum, &w[j + 1..].iter().rev().copied().collect::<Vec<_>>())).collect()
}

/// Finite parts of the positive affine roots sent negative by the word,
/// found by applying the word letter by letter to every candidate root.
pub fn brute_force_inversions(datum: &CartanDatum, w: &[usize]) -> BTreeMap<Root, usize> {
    let bound = w.len() as i64 + 1;
    let mut finite: Vec<Root> = datum.positive_roots().to_vec();
    finite.extend(datum.positive_roots().iter().map(|r| r.iter().map(|x| -x).collect::<Root>()));
    let mut out = BTreeMap::new();
    for n in 0..=bound {
        for a in &finite {
            let r = AffineRoot { finite: a.clone(), n };
            if !r.is_positive() {
                continue;
            }
            if !r.act_word(datum, w).is_positive() {
                *out.entry(a.clone()).or_insert(0) += 1;
            }
        }
    }
    out
}

/// {α with multiplicity ⟨α, μ⟩ : α > 0}.
pub fn inversion_multiset_closed(datum: &CartanDatum, mu: &[Q]) -> BTreeMap<Root, usize> {
    let mut out = BTreeMap::new();
    for a in datum.positive_roots() {
        let m = datum.root_on_coweight(a, mu).to_integer();
        let m: usize = m.try_into().unwrap_or(0);
        if m > 0 {
            out.insert(a.clone(), m);
        }
    }
    out
}

pub fn inversion_multiset(datum: &CartanDatum, mu: &[Q]) -> Result<BTreeMap<Root, usize>> {
    check_dominant_coroot(datum, mu)?;
    let w = reduced_word_translation(datum, mu)?;
    Ok(brute_force_inversions(datum, &w))
}

/// Dominant μ ∈ Q∨ with Σ_{α>0}⟨α, μ⟩ ≤ max_len, in fundamental-coweight coords.
pub fn dominant_coroots_up_to(datum: &CartanDatum, max_len: usize) -> Vec<Vec<Q>> {
    let n = datum.rank;
    // ⟨α, μ⟩ summed over R₊ is Σ_i m_i · (sum of α_i-coefficients)
    let weights: Vec<i64> = (0..n).map(|i| datum.positive_roots().iter().map(|r| r[i]).sum()).collect();
    let mut out = Vec::new();
    let mut m = vec![0i64; n];
    fn rec(i: usize, budget: i64, m: &mut Vec<i64>, w: &[i64], datum: &CartanDatum, out: &mut Vec<Vec<Q>>) {
        if i == m.len() {
            let mu: Vec<Q> = m.iter().map(|x| qi(*x)).collect();
            if datum.coroot_coords(&mu).is_ok() {
                out.push(mu);
            }
            return;
        }
        let mut k = 0;
        while k * w[i] <= budget {
            m[i] = k;
            rec(i + 1, budget - k * w[i], m, w, datum, out);
            k += 1;
        }
        m[i] = 0;
    }
    rec(0, max_len as i64, &mut m, &weights, datum, &mut out);
    out
}

/// Lex-min w ∈ W (letters 1..n) with w(α_i) = θ, over long simple roots α_i.
/// Returns (i, word) with i 1-based.
pub fn finite_word_to_theta(datum: &CartanDatum) -> (usize, Word) {
    finite_words_to_theta(datum).into_iter().next().expect("θ is W-conjugate to a long simple root")
}

/// Every (i, lex-min word w) with w(α_i) = θ and α_i long, ordered by
/// (word length, word).
pub fn finite_words_to_theta(datum: &CartanDatum) -> Vec<(usize, Word)> {
    let n = datum.rank;
    let mut seen: HashMap<IMat, ()> = HashMap::new();
    let id = imat_identity(n);
    seen.insert(id.clone(), ());
    let mut level = vec![(id, Word::new())];
    let mut found = Vec::new();
    let letters: Vec<IMat> = (0..n).map(|i| reflection_matrix(datum, &datum.simple_root(i))).collect();
    while !level.is_empty() {
        for (g, w) in &level {
            for i in 0..n {
                if datum.d[i] == datum.d0 && imat_apply(g, &datum.simple_root(i)) == datum.theta {
                    found.push((i + 1, w.clone()));
                }
            }
        }
        let mut next = Vec::new();
        for (g, w) in &level {
            for (i, s) in letters.iter().enumerate() {
                let h = imat_mul(g, s);
                if seen.insert(h.clone(), ()).is_none() {
                    let mut w2 = w.clone();
                    w2.push(i + 1);
                    next.push((h, w2));
                }
            }
        }
        level = next;
    }
    found.sort_by(|a, b| (a.1.len(), &a.1, a.0).cmp(&(b.1.len(), &b.1, b.0)));
    found
}

/// λ̃ = (uλ)/ℏ + β at level k, with u ∈ W kept alongside its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynParam {
    pub u: IMat,
    pub u_inv: IMat,
    pub beta: Root,
    pub k: i64,
}

/// Data from which q_{α}^{λ̃(ℋ)} = e^{⟨uλ,α⟩/2} · q_α^{corr} is assembled,
/// q_α = q^{d_α}.
#[derive(Clone, Debug, PartialEq)]
pub struct DynEval {
    /// u^{-1}α in root coordinates: e^{⟨uλ,α⟩/2} = ∏ w_j^{e_j}.
    pub exponent: Root,
    pub correction: Q,
    pub nu_value: i64,
    /// d_α, the length of the finite part.
    pub d: i64,
}

impl DynParam {
    /// λ/ℏ at level k.
    pub fn rescaled(datum: &CartanDatum, k: i64) -> Self {
        let n = datum.rank;
        DynParam { u: imat_identity(n), u_inv: imat_identity(n), beta: vec![0; n], k }
    }

    pub fn act(&self, datum: &CartanDatum, i: usize) -> Self {
        let (s, alpha) = if i == 0 {
            (reflection_matrix(datum, &datum.theta), datum.theta.clone())
        } else {
            let a = datum.simple_root(i - 1);
            (reflection_matrix(datum, &a), a)
        };
        let mut beta = datum.reflect_root(&alpha, &self.beta);
        if i == 0 {
            for (b, t) in beta.iter_mut().zip(&datum.theta) {
                *b += self.k * t;
            }
        }
        DynParam { u: imat_mul(&s, &self.u), u_inv: imat_mul(&self.u_inv, &s), beta, k: self.k }
    }

    /// Applies the word s_{i_1}⋯s_{i_l} (rightmost letter first).
    pub fn act_word(&self, datum: &CartanDatum, w: &[usize]) -> Self {
        w.iter().rev().fold(self.clone(), |p, &i| p.act(datum, i))
    }

    /// Evaluation on the coroot of the affine root (α, 0, n), against a rep
    /// weight ν given by its values on the h_i.
    pub fn eval_root(&self, datum: &CartanDatum, root: &AffineRoot, nu: &[i64]) -> DynEval {
        let a = &root.finite;
        let da = datum.root_length(a);
        let correction = qi(datum.pair_coroot(&self.beta, a)) + qi(root.n * self.k * datum.d0) / qi(da);
        DynEval {
            exponent: imat_apply(&self.u_inv, a),
            correction,
            nu_value: datum.weight_on_coroot(nu, a),
            d: da,
        }
    }

    /// Evaluation on ℋ_i, i ∈ 0..=n.
    pub fn eval(&self, datum: &CartanDatum, i: usize, nu: &[i64]) -> DynEval {
        self.eval_root(datum, &AffineRoot::simple(datum, i), nu)
    }
}
