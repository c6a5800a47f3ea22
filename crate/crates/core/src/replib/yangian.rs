//! Drinfeld relations on matrices, and evaluation representations derived
//! from them.
//!
//! The relations are homogeneous for deg X_{i,r} = deg T_{i,r} = r, deg ℏ = 1.
//! After the rescaling X_{i,r} ↦ ℏ^r X_{i,r} an instance of total degree D
//! becomes ℏ^D times its ℏ = 1 form, so checking modulo ℏ^T means checking
//! the instances of degree < T.

use super::{check_g_relations, WeightedRep};
use crate::cartan::{CartanDatum, Root};
use crate::error::{Error, Result};
use crate::matrix::{solve_affine, Mat};
use crate::report::CheckReport;
use crate::scalars::{q, qi, Ring, Trunc, Q};

/// Generator images by degree: `xp[r][i]` is X⁺_{i+1,r}.
#[derive(Clone, Debug, PartialEq)]
pub struct YGens<S> {
    pub xp: Vec<Vec<Mat<S>>>,
    pub xm: Vec<Vec<Mat<S>>>,
    pub t: Vec<Vec<Mat<S>>>,
}

impl<S: Ring> YGens<S> {
    pub fn max_degree(&self) -> usize {
        self.t.len() - 1
    }

    fn x(&self, sign: i64, r: usize, i: usize) -> &Mat<S> {
        if sign > 0 {
            &self.xp[r][i]
        } else {
            &self.xm[r][i]
        }
    }

    pub fn map<T: Ring>(&self, f: impl Fn(&Mat<S>) -> Mat<T>) -> YGens<T> {
        let g = |v: &Vec<Vec<Mat<S>>>| v.iter().map(|row| row.iter().map(&f).collect()).collect();
        YGens { xp: g(&self.xp), xm: g(&self.xm), t: g(&self.t) }
    }
}

fn pm(s: i64) -> &'static str {
    if s > 0 {
        "+"
    } else {
        "-"
    }
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(m - 1) {
        for k in 0..=p.len() {
            let mut q = p.clone();
            q.insert(k, m - 1);
            out.push(q);
        }
    }
    out
}

/// Nondecreasing tuples of length m with entries summing to `total`.
fn partitions(m: usize, total: usize, min: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in min..=total {
        for mut rest in partitions(m - 1, total - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Visits (label, residual) for every relation instance whose total degree
/// lies in `degrees`. A relation holds iff its residual is zero. `hbar` is
/// the value of ℏ in the relations: 1 for ℏ = 1 matrices, ℏ for rescaled
/// truncated ones. Stops early when `visit` returns false.
pub fn yangian_residuals<S: Ring>(
    datum: &CartanDatum,
    g: &YGens<S>,
    hbar: &S,
    degrees: &[usize],
    mut visit: impl FnMut(String, Mat<S>) -> bool,
) {
    let n = datum.rank;
    let half_hbar = hbar.scale_q(&q(1, 2));
    let da = |i: usize, j: usize| S::from_i64(datum.d[i] * datum.a[i][j]);
    for &deg in degrees {
        assert!(deg <= g.max_degree(), "generators of degree {deg} are missing");
        for i in 0..n {
            for j in 0..n {
                for r in 0..=deg {
                    let s = deg - r;
                    if r <= s && !visit(format!("[T{},{r}, T{},{s}] = 0", i + 1, j + 1), g.t[r][i].commutator(&g.t[s][j])) {
                        return;
                    }
                }
                for sg in [1, -1] {
                    let x = g.x(sg, deg, j);
                    let res = g.t[0][i].commutator(x).sub(&x.scale(&da(i, j)).scale(&S::from_i64(sg)));
                    if !visit(format!("[T{},0, X{}{},{deg}] = {}d a X", i + 1, pm(sg), j + 1, pm(sg)), res) {
                        return;
                    }
                }
                for r in 0..=deg {
                    let s = deg - r;
                    let mut res = g.xp[r][i].commutator(&g.xm[s][j]);
                    if i == j {
                        res = res.sub(&g.t[deg][i]);
                    }
                    if !visit(format!("[X+{},{r}, X-{},{s}] = δ T{},{deg}", i + 1, j + 1, i + 1), res) {
                        return;
                    }
                }
                if deg == 0 {
                    continue;
                }
                for r in 0..deg {
                    let s = deg - 1 - r;
                    for sg in [1, -1] {
                        let c = half_hbar.mul(&da(i, j)).mul(&S::from_i64(sg));
                        // [T_{i,r+1}, X_{j,s}] − [T_{i,r}, X_{j,s+1}] = ±ℏ/2 d_i a_ij {T_{i,r}, X_{j,s}}
                        let res = g.t[r + 1][i]
                            .commutator(g.x(sg, s, j))
                            .sub(&g.t[r][i].commutator(g.x(sg, s + 1, j)))
                            .sub(&g.t[r][i].anticommutator(g.x(sg, s, j)).scale(&c));
                        if !visit(format!("T-X recurrence ({}, i={}, j={}, r={r}, s={s})", pm(sg), i + 1, j + 1), res) {
                            return;
                        }
                        let res = g
                            .x(sg, r + 1, i)
                            .commutator(g.x(sg, s, j))
                            .sub(&g.x(sg, r, i).commutator(g.x(sg, s + 1, j)))
                            .sub(&g.x(sg, r, i).anticommutator(g.x(sg, s, j)).scale(&c));
                        if !visit(format!("X-X recurrence ({}, i={}, j={}, r={r}, s={s})", pm(sg), i + 1, j + 1), res) {
                            return;
                        }
                    }
                }
            }
        }
        // Serre
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let m = (1 - datum.a[i][j]) as usize;
                let perms = permutations(m);
                for s in 0..=deg {
                    for rs in partitions(m, deg - s, 0) {
                        for sg in [1, -1] {
                            let mut total: Option<Mat<S>> = None;
                            // summing over permutations of positions counts each
                            // ordering of the multiset r a positive number of times
                            for p in &perms {
                                let mut acc = g.x(sg, s, j).clone();
                                for &k in p.iter().rev() {
                                    acc = g.x(sg, rs[k], i).commutator(&acc);
                                }
                                total = Some(match total {
                                    Some(t) => t.add(&acc),
                                    None => acc,
                                });
                            }
                            let res = total.unwrap();
                            let label = format!("Serre ({}, i={}, j={}, r={rs:?}, s={s})", pm(sg), i + 1, j + 1);
                            if !visit(label, res) {
                                return;
                            }
                        }
                    }
                }
            }
        }
    }
}

/// A g-rep with degree-1 Yangian generators (at ℏ = 1), plus the evaluation
/// point that fixes the shift automorphism.
#[derive(Clone, Debug)]
pub struct TruncYangianRep {
    pub base: WeightedRep,
    pub xp1: Vec<Mat<Q>>,
    pub xm1: Vec<Mat<Q>>,
    pub t1: Vec<Mat<Q>>,
    pub eval_point: Q,
    pub notes: Vec<String>,
}

impl TruncYangianRep {
    /// T_{i,1} is defined as [X⁺_{i,1}, X⁻_{i,0}].
    pub fn from_deg1(base: WeightedRep, xp1: Vec<Mat<Q>>, xm1: Vec<Mat<Q>>, eval_point: Q) -> Self {
        let t1 = (0..base.rank()).map(|i| xp1[i].commutator(&base.xm(i))).collect();
        TruncYangianRep { base, xp1, xm1, t1, eval_point, notes: vec![] }
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.base.datum
    }

    /// Generators at ℏ = 1 up to degree `max_deg` ≤ 2. Degree 2 is obtained
    /// from the recurrences: X^±_{j,2} = ±(1/2d_j)([T_{j,1}, X^±_{j,1}] ∓ d_j{T_{j,0}, X^±_{j,1}}),
    /// T_{j,2} = [X⁺_{j,2}, X⁻_{j,0}].
    pub fn ygens(&self, max_deg: usize) -> Result<YGens<Q>> {
        if max_deg > 2 {
            return Err(Error::Unsupported(format!("Yangian generators of degree {max_deg}")));
        }
        let b = &self.base;
        let n = b.rank();
        let mut g = YGens {
            xp: vec![(0..n).map(|i| b.xp(i)).collect()],
            xm: vec![(0..n).map(|i| b.xm(i)).collect()],
            t: vec![(0..n).map(|i| b.t(i)).collect()],
        };
        if max_deg >= 1 {
            g.xp.push(self.xp1.clone());
            g.xm.push(self.xm1.clone());
            g.t.push(self.t1.clone());
        }
        if max_deg >= 2 {
            let mut xp2 = Vec::new();
            let mut xm2 = Vec::new();
            for j in 0..n {
                let d = qi(b.datum.d[j]);
                let inv = (qi(2) * &d).recip();
                let t0 = &g.t[0][j];
                let t1 = &g.t[1][j];
                xp2.push(t1.commutator(&g.xp[1][j]).sub(&t0.anticommutator(&g.xp[1][j]).scale_q(&d)).scale_q(&inv));
                xm2.push(t1.commutator(&g.xm[1][j]).add(&t0.anticommutator(&g.xm[1][j]).scale_q(&d)).scale_q(&-inv));
            }
            let t2 = (0..n).map(|j| xp2[j].commutator(&g.xm[0][j])).collect();
            g.xp.push(xp2);
            g.xm.push(xm2);
            g.t.push(t2);
        }
        Ok(g)
    }

    /// Ψ-images over F[ℏ]/(ℏ^T): degree-r generators carry ℏ^r. Generators of
    /// degree ≥ T vanish and are omitted (at most degree 2 is produced).
    pub fn trunc_gens<const T: usize>(&self) -> Result<YGens<Trunc<Q, T>>> {
        let top = T.saturating_sub(1).min(2);
        let g = self.ygens(top)?;
        let lift = |r: usize, m: &Mat<Q>| m.map(|x| Trunc::<Q, T>::hbar_pow(r).scale(x));
        let scale = |v: &Vec<Vec<Mat<Q>>>| -> Vec<Vec<Mat<Trunc<Q, T>>>> {
            v.iter().enumerate().map(|(r, row)| row.iter().map(|m| lift(r, m)).collect()).collect()
        };
        Ok(YGens { xp: scale(&g.xp), xm: scale(&g.xm), t: scale(&g.t) })
    }
}

/// Every relation instance modulo ℏ^T, evaluated literally on the ℏ-rescaled
/// truncated matrices. Supports T ≤ 3.
pub fn check_yangian_relations<const T: usize>(trep: &TruncYangianRep) -> CheckReport {
    CheckReport::timed(format!("yangian-relations {} mod ℏ^{T}", trep.base.name), |r| {
        let base = check_g_relations(&trep.base);
        if !base.pass {
            r.fail(base.notes.join("; "));
            return;
        }
        if T > 3 {
            r.fail(format!("truncation ℏ^{T} needs generators of degree ≥ 3"));
            return;
        }
        let g = match trep.trunc_gens::<T>() {
            Ok(g) => g,
            Err(e) => return r.fail(e.to_string()),
        };
        let degrees: Vec<usize> = (0..T).collect();
        yangian_residuals(trep.datum(), &g, &Trunc::hbar(), &degrees, |label, res| {
            if res.is_zero() {
                true
            } else {
                r.fail(format!("relation {label} fails"));
                false
            }
        });
    })
}

/// Products of at most `max_len` Chevalley matrices of the given weight,
/// reduced to a linearly independent family (shorter products first).
pub fn weight_span(rep: &WeightedRep, weight: &Root, max_len: usize) -> Vec<Mat<Q>> {
    let n = rep.rank();
    let mut gens: Vec<(Mat<Q>, Root)> = Vec::new();
    for i in 0..n {
        let a = rep.datum.simple_root(i);
        gens.push((rep.e[i].clone(), a.clone()));
        gens.push((rep.f[i].clone(), a.iter().map(|x| -x).collect()));
        gens.push((rep.h[i].clone(), vec![0; n]));
    }
    let mut out = Vec::new();
    let mut echelon: Vec<(usize, Vec<Q>)> = Vec::new();
    let mut frontier: Vec<(Mat<Q>, Root)> = vec![(Mat::identity(rep.dim()), vec![0; n])];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (m, w) in &frontier {
            for (g, gw) in &gens {
                let p = m.mul(g);
                let pw: Root = w.iter().zip(gw).map(|(a, b)| a + b).collect();
                if &pw == weight && !p.is_zero() {
                    let mut v = p.entries().to_vec();
                    for (piv, row) in &echelon {
                        if !Ring::is_zero(&v[*piv]) {
                            let c = v[*piv].clone();
                            for (x, y) in v.iter_mut().zip(row) {
                                *x -= &c * y;
                            }
                        }
                    }
                    if let Some(piv) = v.iter().position(|x| !Ring::is_zero(x)) {
                        let inv = v[piv].recip();
                        for x in v.iter_mut() {
                            *x *= &inv;
                        }
                        echelon.push((piv, v));
                        out.push(p.clone());
                    }
                }
                next.push((p, pw));
            }
        }
        frontier = next;
    }
    out
}

/// Unknowns for the degree-1 generators: coefficients on ansatz spans.
#[derive(Clone, Debug)]
pub struct Ansatz {
    pub max_len: usize,
    pub plus: Vec<Vec<Mat<Q>>>,
    pub minus: Vec<Vec<Mat<Q>>>,
}

impl Ansatz {
    pub fn new(rep: &WeightedRep, max_len: usize) -> Self {
        let n = rep.rank();
        let plus = (0..n).map(|i| weight_span(rep, &rep.datum.simple_root(i), max_len)).collect();
        let minus = (0..n)
            .map(|i| weight_span(rep, &rep.datum.simple_root(i).iter().map(|x| -x).collect(), max_len))
            .collect();
        Ansatz { max_len, plus, minus }
    }

    pub fn len(&self) -> usize {
        self.plus.iter().chain(&self.minus).map(|v| v.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn combine(span: &[Mat<Q>], u: &[Q], dim: usize) -> Mat<Q> {
        let mut m = Mat::zeros(dim, dim);
        for (b, c) in span.iter().zip(u) {
            if !Ring::is_zero(c) {
                m = m.add(&b.scale_q(c));
            }
        }
        m
    }

    /// (X⁺_{·,1}, X⁻_{·,1}) for the coefficient vector u.
    pub fn matrices(&self, u: &[Q], dim: usize) -> (Vec<Mat<Q>>, Vec<Mat<Q>>) {
        let mut k = 0;
        let mut xp = Vec::new();
        let mut xm = Vec::new();
        for i in 0..self.plus.len() {
            let l = self.plus[i].len();
            xp.push(Self::combine(&self.plus[i], &u[k..k + l], dim));
            k += l;
            let l = self.minus[i].len();
            xm.push(Self::combine(&self.minus[i], &u[k..k + l], dim));
            k += l;
        }
        (xp, xm)
    }

    /// Coordinates of the given matrices in the ansatz, if they lie in it.
    pub fn coordinates(&self, xp: &[Mat<Q>], xm: &[Mat<Q>]) -> Option<Vec<Q>> {
        let mut u = Vec::new();
        for i in 0..self.plus.len() {
            for (span, target) in [(&self.plus[i], &xp[i]), (&self.minus[i], &xm[i])] {
                if span.is_empty() {
                    if !target.is_zero() {
                        return None;
                    }
                    continue;
                }
                let rows = target.rows() * target.cols();
                let m = Mat::from_fn(rows, span.len(), |p, k| span[k].entries()[p].clone());
                let (x, _) = solve_affine(&m, target.entries())?;
                u.extend(x);
            }
        }
        Some(u)
    }
}

fn residual_vector(rep: &WeightedRep, ans: &Ansatz, u: &[Q], degrees: &[usize]) -> Vec<Q> {
    let (xp, xm) = ans.matrices(u, rep.dim());
    let trep = TruncYangianRep::from_deg1(rep.clone(), xp, xm, qi(0));
    let g = trep.ygens(*degrees.iter().max().unwrap()).expect("degree ≤ 2");
    let mut out = Vec::new();
    yangian_residuals(&rep.datum, &g, &qi(1), degrees, |_, m| {
        out.extend(m.entries().iter().cloned());
        true
    });
    out
}

fn degree_two_holds(trep: &TruncYangianRep) -> bool {
    let g = trep.ygens(2).expect("degree 2");
    let mut ok = true;
    yangian_residuals(trep.datum(), &g, &qi(1), &[0, 1, 2], |_, m| {
        ok = m.is_zero();
        ok
    });
    ok
}

fn trace_sum(a: &[Mat<Q>], b: &[Mat<Q>]) -> Q {
    a.iter().zip(b).map(|(x, y)| x.mul(y).trace()).sum()
}

/// Integer combinations of `k` directions with coefficients in ±1, ±2 on at
/// most three of them, ordered by support size and then by size.
fn small_combinations(k: usize, limit: usize) -> Vec<Vec<i64>> {
    fn supports(k: usize, size: usize, from: usize) -> Vec<Vec<usize>> {
        if size == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in from..k {
            for mut rest in supports(k, size - 1, first + 1) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    let mut out = vec![vec![0; k]];
    for size in 1..=k.min(3) {
        let mut level = Vec::new();
        for pos in supports(k, size, 0) {
            let mut coeffs: Vec<Vec<i64>> = vec![vec![]];
            for _ in 0..size {
                coeffs = coeffs.into_iter().flat_map(|c| [-2, -1, 1, 2].map(|x| [c.clone(), vec![x]].concat())).collect();
            }
            for c in coeffs {
                let mut v = vec![0; k];
                for (p, x) in pos.iter().zip(c) {
                    v[*p] = x;
                }
                level.push(v);
            }
        }
        level.sort_by_key(|v| v.iter().map(|x| x.abs()).sum::<i64>());
        out.extend(level);
        if out.len() >= limit {
            break;
        }
    }
    out.truncate(limit);
    out
}

/// Finds degree-1 generators satisfying every Drinfeld relation through
/// degree 2, by solving the (linear) degree-1 relations on the ansatz span.
///
/// The solution is only determined up to the shift X_{i,1} ↦ X_{i,1} + s X_{i,0},
/// T_{i,1} ↦ T_{i,1} + s T_{i,0}; `a` fixes it by Σ_i tr(T_{i,1} T_{i,0}) = a Σ_i tr(T_{i,0}²).
/// Any further freedom is resolved by trying zero and then small integer
/// combinations, keeping the first that passes the degree-2 relations.
pub fn derive_evaluation_rep(rep: &WeightedRep, a: &Q) -> Result<TruncYangianRep> {
    let check = check_g_relations(rep);
    if !check.pass {
        return Err(Error::Relation(check.notes.join("; ")));
    }
    let n = rep.rank();
    let mut log = Vec::new();
    for max_len in [2, 3] {
        let ans = Ansatz::new(rep, max_len);
        let nv = ans.len();
        let r0 = residual_vector(rep, &ans, &vec![qi(0); nv], &[1]);
        let mut cols = Vec::with_capacity(nv);
        for k in 0..nv {
            let mut u = vec![qi(0); nv];
            u[k] = qi(1);
            let rk = residual_vector(rep, &ans, &u, &[1]);
            cols.push(rk.iter().zip(&r0).map(|(x, y)| x - y).collect::<Vec<Q>>());
        }
        // drop rows that vanish identically
        let live: Vec<usize> = (0..r0.len()).filter(|&p| !Ring::is_zero(&r0[p]) || cols.iter().any(|c| !Ring::is_zero(&c[p]))).collect();
        let m = Mat::from_fn(live.len(), nv, |p, k| cols[k][live[p]].clone());
        let rhs: Vec<Q> = live.iter().map(|&p| -r0[p].clone()).collect();
        let Some((x, kernel)) = solve_affine(&m, &rhs) else {
            log.push(format!("no solution with products of ≤ {max_len} generators"));
            continue;
        };
        log.push(format!("products of ≤ {max_len} generators: {nv} unknowns, {} free", kernel.len()));

        let shift = ans
            .coordinates(&(0..n).map(|i| rep.xp(i)).collect::<Vec<_>>(), &(0..n).map(|i| rep.xm(i)).collect::<Vec<_>>())
            .ok_or_else(|| Error::NoSolution("shift direction outside the ansatz".into()))?;
        let t0: Vec<Mat<Q>> = (0..n).map(|i| rep.t(i)).collect();
        let norm = trace_sum(&t0, &t0);
        let normalize = |u: &[Q]| -> TruncYangianRep {
            let (xp, xm) = ans.matrices(u, rep.dim());
            let tr = TruncYangianRep::from_deg1(rep.clone(), xp, xm, a.clone());
            let s = (a * &norm - trace_sum(&tr.t1, &t0)) / &norm;
            let v: Vec<Q> = u.iter().zip(&shift).map(|(x, y)| x + &s * y).collect();
            let (xp, xm) = ans.matrices(&v, rep.dim());
            TruncYangianRep::from_deg1(rep.clone(), xp, xm, a.clone())
        };
        for combo in small_combinations(kernel.len(), 4000) {
            let mut u = x.clone();
            for (c, kv) in combo.iter().zip(&kernel) {
                if *c != 0 {
                    for (ui, ki) in u.iter_mut().zip(kv) {
                        *ui += qi(*c) * ki;
                    }
                }
            }
            let mut trep = normalize(&u);
            if degree_two_holds(&trep) {
                if combo.iter().any(|c| *c != 0) {
                    log.push(format!("free directions fixed by the degree-2 relations: {combo:?}"));
                }
                trep.notes = log;
                return Ok(trep);
            }
        }
        log.push(format!("no small combination of free directions satisfies degree 2 (≤ {max_len})"));
    }
    Err(Error::NoSolution(log.join("; ")))
}
