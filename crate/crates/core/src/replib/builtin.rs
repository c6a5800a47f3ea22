use super::WeightedRep;
use crate::cartan::CartanDatum;
use crate::error::{Error, Result};
use crate::matrix::{solve_affine, Mat};
use crate::scalars::{qi, Q};

pub const BUILTIN_NAMES: &[&str] = &["V1", "V2", "V3", "V4", "vector", "adjoint"];

/// `V1`..`V4` (type A1), `vector` and `adjoint` (type A_n).
pub fn builtin_rep(datum: &CartanDatum, name: &str) -> Result<WeightedRep> {
    let unknown = || Error::UnknownRep(format!("{name} for {}", datum.name()));
    if datum.type_letter != 'A' {
        return Err(unknown());
    }
    match name {
        "V1" | "V2" | "V3" | "V4" if datum.rank == 1 => sl2_irrep(datum, name[1..].parse().unwrap()),
        "vector" => vector_rep(datum),
        "adjoint" => adjoint_rep(&vector_rep(datum)?),
        _ => Err(unknown()),
    }
}

/// V_m with basis v_m, v_{m−2}, …, v_{−m}, where v_{m−2j} = f^j v_m / j!.
fn sl2_irrep(datum: &CartanDatum, m: usize) -> Result<WeightedRep> {
    let n = m + 1;
    let mut e = Mat::zeros(n, n);
    let mut f = Mat::zeros(n, n);
    for j in 0..n {
        if j + 1 < n {
            f[(j + 1, j)] = qi(j as i64 + 1);
        }
        if j > 0 {
            e[(j - 1, j)] = qi((m - j + 1) as i64);
        }
    }
    let weights = (0..n).map(|j| vec![m as i64 - 2 * j as i64]).collect();
    WeightedRep::new(datum.clone(), format!("V{m}"), weights, vec![e], vec![f])
}

/// The defining rep of sl_{n+1}.
fn vector_rep(datum: &CartanDatum) -> Result<WeightedRep> {
    let n = datum.rank;
    let dim = n + 1;
    let mut e = Vec::new();
    let mut f = Vec::new();
    for i in 0..n {
        e.push(Mat::unit(dim, i, i + 1, qi(1)));
        f.push(Mat::unit(dim, i + 1, i, qi(1)));
    }
    let weights = (0..dim).map(|k| (0..n).map(|i| (k == i) as i64 - (k == i + 1) as i64).collect()).collect();
    WeightedRep::new(datum.clone(), "vector", weights, e, f)
}

/// The adjoint representation, computed from a faithful one: basis
/// e_α (highest first), h_i, f_α (lowest first).
fn adjoint_rep(base: &WeightedRep) -> Result<WeightedRep> {
    let datum = &base.datum;
    let n = datum.rank;
    let mut basis: Vec<Mat<Q>> = Vec::new();
    let mut weights: Vec<Vec<i64>> = Vec::new();
    for r in base.roots.iter().rev() {
        basis.push(r.e.clone());
        weights.push(datum.root_to_weight(&r.alpha));
    }
    for i in 0..n {
        basis.push(base.h[i].clone());
        weights.push(vec![0; n]);
    }
    for r in &base.roots {
        basis.push(r.f.clone());
        weights.push(datum.root_to_weight(&r.alpha).iter().map(|x| -x).collect());
    }
    let dim = basis.len();
    let flat = Mat::from_fn(base.dim() * base.dim(), dim, |p, k| basis[k].entries()[p].clone());
    let ad = |x: &Mat<Q>| -> Result<Mat<Q>> {
        let mut out = Mat::zeros(dim, dim);
        for (k, b) in basis.iter().enumerate() {
            let c = x.commutator(b);
            let (coords, _) = solve_affine(&flat, c.entries())
                .ok_or_else(|| Error::Relation("adjoint: bracket leaves the span".into()))?;
            for (row, v) in coords.into_iter().enumerate() {
                out[(row, k)] = v;
            }
        }
        Ok(out)
    };
    let e = base.e.iter().map(ad).collect::<Result<Vec<_>>>()?;
    let f = base.f.iter().map(ad).collect::<Result<Vec<_>>>()?;
    WeightedRep::new(datum.clone(), "adjoint", weights, e, f)
}
