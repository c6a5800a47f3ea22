//! Weight-labelled representations of g and their Yangian extensions.

mod builtin;
mod io;
mod yangian;

pub use builtin::{builtin_rep, BUILTIN_NAMES};
pub use io::{load_rep, rep_from_json, rep_to_json, save_rep};
pub use yangian::{
    check_yangian_relations, derive_evaluation_rep, yangian_residuals, Ansatz, TruncYangianRep, YGens,
};

use crate::cartan::{CartanDatum, Root};
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::report::CheckReport;
use crate::scalars::{qi, Ring, Q};

/// Root vectors for one positive root, normalized by [e_α, f_α] = h_α,
/// which is ⟨e_α, f_α⟩ = d_α^{-1}.
#[derive(Clone, Debug)]
pub struct RootData {
    pub alpha: Root,
    pub d: i64,
    /// h_α in simple coroots.
    pub coroot: Vec<i64>,
    pub e: Mat<Q>,
    pub f: Mat<Q>,
}

#[derive(Clone, Debug)]
pub struct WeightedRep {
    pub datum: CartanDatum,
    pub name: String,
    pub weights: Vec<Vec<i64>>,
    pub e: Vec<Mat<Q>>,
    pub f: Vec<Mat<Q>>,
    pub h: Vec<Mat<Q>>,
    pub roots: Vec<RootData>,
}

impl WeightedRep {
    /// Builds and validates. Root vectors are generated by commutators.
    pub fn new(datum: CartanDatum, name: impl Into<String>, weights: Vec<Vec<i64>>, e: Vec<Mat<Q>>, f: Vec<Mat<Q>>) -> Result<Self> {
        let n = datum.rank;
        if weights.iter().any(|w| w.len() != n) || e.len() != n || f.len() != n {
            return Err(Error::Parse("generator or weight count does not match the rank".into()));
        }
        let dim = weights.len();
        if e.iter().chain(&f).any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::Parse("generator matrices must be dim × dim".into()));
        }
        let h = (0..n).map(|i| Mat::diag(&weights.iter().map(|w| qi(w[i])).collect::<Vec<_>>())).collect();
        let mut rep = WeightedRep { datum, name: name.into(), weights, e, f, h, roots: vec![] };
        let report = check_g_relations(&rep);
        if !report.pass {
            return Err(Error::Relation(report.notes.join("; ")));
        }
        rep.roots = rep.build_root_vectors()?;
        Ok(rep)
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn rank(&self) -> usize {
        self.datum.rank
    }

    /// x_i⁺ = e_i.
    pub fn xp(&self, i: usize) -> Mat<Q> {
        self.e[i].clone()
    }

    /// x_i⁻ = d_i f_i, so that [x_i⁺, x_i⁻] = t_i.
    pub fn xm(&self, i: usize) -> Mat<Q> {
        self.f[i].scale_q(&qi(self.datum.d[i]))
    }

    /// t_i = d_i h_i.
    pub fn t(&self, i: usize) -> Mat<Q> {
        self.h[i].scale_q(&qi(self.datum.d[i]))
    }

    /// Σ c_i h_i.
    pub fn coroot_matrix(&self, c: &[Q]) -> Mat<Q> {
        let mut m = Mat::zeros(self.dim(), self.dim());
        for (i, ci) in c.iter().enumerate() {
            m = m.add(&self.h[i].scale_q(ci));
        }
        m
    }

    pub fn root(&self, alpha: &[i64]) -> Option<&RootData> {
        self.roots.iter().find(|r| r.alpha == alpha)
    }

    /// x_α⁺ = e_α and x_α⁻ = d_α f_α: ⟨x_α⁺, x_α⁻⟩ = 1.
    pub fn x_alpha(&self, r: &RootData) -> (Mat<Q>, Mat<Q>) {
        (r.e.clone(), r.f.scale_q(&qi(r.d)))
    }

    /// t_α = [x_α⁺, x_α⁻] = d_α h_α.
    pub fn t_alpha(&self, r: &RootData) -> Mat<Q> {
        let c: Vec<Q> = r.coroot.iter().map(|x| qi(x * r.d)).collect();
        self.coroot_matrix(&c)
    }

    /// K_α = x_α⁺x_α⁻ + x_α⁻x_α⁺.
    pub fn k_alpha(&self, r: &RootData) -> Mat<Q> {
        let (p, m) = self.x_alpha(r);
        p.anticommutator(&m)
    }

    /// Distinct weights in order of first appearance, with their basis indices.
    pub fn weight_spaces(&self) -> Vec<(Vec<i64>, Vec<usize>)> {
        let mut out: Vec<(Vec<i64>, Vec<usize>)> = Vec::new();
        for (b, w) in self.weights.iter().enumerate() {
            match out.iter_mut().find(|(x, _)| x == w) {
                Some((_, v)) => v.push(b),
                None => out.push((w.clone(), vec![b])),
            }
        }
        out
    }

    fn build_root_vectors(&self) -> Result<Vec<RootData>> {
        let datum = &self.datum;
        let mut out: Vec<RootData> = Vec::new();
        for alpha in datum.positive_roots() {
            let d = datum.root_length(alpha);
            let coroot = datum.coroot_of(alpha);
            let height: i64 = alpha.iter().sum();
            let (e, f) = if height == 1 {
                let i = alpha.iter().position(|&x| x == 1).unwrap();
                (self.e[i].clone(), self.f[i].clone())
            } else {
                let mut found = None;
                for i in 0..datum.rank {
                    let mut beta = alpha.clone();
                    beta[i] -= 1;
                    if let Some(rb) = out.iter().find(|r| r.alpha == beta) {
                        let e = self.e[i].commutator(&rb.e);
                        if !e.is_zero() {
                            found = Some((e, rb.f.commutator(&self.f[i])));
                            break;
                        }
                    }
                }
                found.ok_or_else(|| Error::Relation(format!("root vector for {alpha:?} acts by zero")))?
            };
            // rescale f so that [e, f] = h_α
            let c = e.commutator(&f);
            let h_alpha = self.coroot_matrix(&coroot.iter().map(|x| qi(*x)).collect::<Vec<_>>());
            let (b, _) = (0..self.dim())
                .map(|b| (b, &h_alpha[(b, b)]))
                .find(|(_, x)| !Ring::is_zero(*x))
                .ok_or_else(|| Error::Relation(format!("h_α acts by zero for {alpha:?}")))?;
            let s = &c[(b, b)] / &h_alpha[(b, b)];
            if Ring::is_zero(&s) {
                return Err(Error::Relation(format!("[e_α, f_α] vanishes for {alpha:?}")));
            }
            let f = f.scale_q(&s.recip());
            if e.commutator(&f) != h_alpha {
                return Err(Error::Relation(format!("[e_α, f_α] ≠ h_α for {alpha:?}")));
            }
            out.push(RootData { alpha: alpha.clone(), d, coroot, e, f });
        }
        Ok(out)
    }
}

/// Whether `m` maps the ν-weight space into the (ν + shift)-weight space.
pub fn respects_grading(weights: &[Vec<i64>], m: &Mat<Q>, shift: &[i64]) -> bool {
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            if Ring::is_zero(&m[(r, c)]) {
                continue;
            }
            let want: Vec<i64> = weights[c].iter().zip(shift).map(|(a, b)| a + b).collect();
            if weights[r] != want {
                return false;
            }
        }
    }
    true
}

/// Chevalley relations, Serre relations and the weight grading, as exact
/// matrix identities.
pub fn check_g_relations(rep: &WeightedRep) -> CheckReport {
    CheckReport::timed(format!("g-relations {}", rep.name), |r| {
        let datum = &rep.datum;
        let n = datum.rank;
        let dim = rep.dim();
        for i in 0..n {
            let wt = datum.root_to_weight(&datum.simple_root(i));
            let neg: Vec<i64> = wt.iter().map(|x| -x).collect();
            if !respects_grading(&rep.weights, &rep.e[i], &wt) {
                r.fail(format!("grading: e{} does not raise weights by α{}", i + 1, i + 1));
                return;
            }
            if !respects_grading(&rep.weights, &rep.f[i], &neg) {
                r.fail(format!("grading: f{} does not lower weights by α{}", i + 1, i + 1));
                return;
            }
        }
        for i in 0..n {
            for j in 0..n {
                let a = qi(datum.a[i][j]);
                if rep.h[i].commutator(&rep.e[j]) != rep.e[j].scale_q(&a) {
                    r.fail(format!("[h{}, e{}] = a e", i + 1, j + 1));
                    return;
                }
                if rep.h[i].commutator(&rep.f[j]) != rep.f[j].scale_q(&-a) {
                    r.fail(format!("[h{}, f{}] = −a f", i + 1, j + 1));
                    return;
                }
                let c = rep.e[i].commutator(&rep.f[j]);
                let want = if i == j { rep.h[i].clone() } else { Mat::zeros(dim, dim) };
                if c != want {
                    r.fail(format!("[e{}, f{}] = δ h", i + 1, j + 1));
                    return;
                }
                if i != j {
                    let m = (1 - datum.a[i][j]) as usize;
                    for (name, x, y) in [("e", &rep.e, &rep.e), ("f", &rep.f, &rep.f)] {
                        let mut acc = y[j].clone();
                        for _ in 0..m {
                            acc = x[i].commutator(&acc);
                        }
                        if !acc.is_zero() {
                            r.fail(format!("Serre: ad({name}{})^{m} {name}{} = 0", i + 1, j + 1));
                            return;
                        }
                    }
                }
            }
        }
    })
}
