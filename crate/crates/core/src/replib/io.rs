use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::WeightedRep;
use crate::cartan::CartanDatum;
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::scalars::rational::fmt_q;
use crate::scalars::{parse_q, Q};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RepFile {
    #[serde(rename = "type")]
    type_letter: String,
    rank: usize,
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    weights: Vec<Vec<i64>>,
    generators: BTreeMap<String, Vec<Vec<String>>>,
}

fn mat_to_strings(m: &Mat<Q>) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(fmt_q).collect()).collect()
}

fn mat_from_strings(rows: &[Vec<String>], dim: usize, name: &str) -> Result<Mat<Q>> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(Error::Parse(format!("generator {name} is not {dim} × {dim}")));
    }
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(|s| parse_q(s)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(Mat::from_rows(parsed))
}

pub fn rep_to_json(rep: &WeightedRep) -> String {
    let mut generators = BTreeMap::new();
    for i in 0..rep.rank() {
        generators.insert(format!("e{}", i + 1), mat_to_strings(&rep.e[i]));
        generators.insert(format!("f{}", i + 1), mat_to_strings(&rep.f[i]));
        generators.insert(format!("h{}", i + 1), mat_to_strings(&rep.h[i]));
    }
    let file = RepFile {
        type_letter: rep.datum.type_letter.to_string(),
        rank: rep.rank(),
        dim: rep.dim(),
        name: Some(rep.name.clone()),
        weights: rep.weights.clone(),
        generators,
    };
    serde_json::to_string_pretty(&file).expect("rep serializes")
}

/// Parses and validates. Optional `h<i>` entries must agree with the weights.
pub fn rep_from_json(s: &str) -> Result<WeightedRep> {
    let file: RepFile = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    let mut letters = file.type_letter.chars();
    let (Some(t), None) = (letters.next(), letters.next()) else {
        return Err(Error::Parse(format!("bad type {:?}", file.type_letter)));
    };
    if file.rank > 8 || file.dim > 64 {
        return Err(Error::Unsupported("rank or dimension too large".into()));
    }
    let datum = CartanDatum::new(t, file.rank)?;
    if file.weights.len() != file.dim {
        return Err(Error::Parse("one weight per basis vector required".into()));
    }
    let n = file.rank;
    for key in file.generators.keys() {
        let ok = key.len() > 1
            && matches!(&key[..1], "e" | "f" | "h")
            && key[1..].parse::<usize>().is_ok_and(|i| (1..=n).contains(&i));
        if !ok {
            return Err(Error::Parse(format!("unknown generator {key:?}")));
        }
    }
    let get = |k: String| -> Result<Mat<Q>> {
        let rows = file.generators.get(&k).ok_or_else(|| Error::Parse(format!("missing generator {k}")))?;
        mat_from_strings(rows, file.dim, &k)
    };
    let e = (1..=n).map(|i| get(format!("e{i}"))).collect::<Result<Vec<_>>>()?;
    let f = (1..=n).map(|i| get(format!("f{i}"))).collect::<Result<Vec<_>>>()?;
    let name = file.name.clone().unwrap_or_else(|| "file".into());
    let rep = WeightedRep::new(datum, name, file.weights, e, f)?;
    for i in 1..=n {
        if file.generators.contains_key(&format!("h{i}")) && get(format!("h{i}"))? != rep.h[i - 1] {
            return Err(Error::Relation(format!("grading: h{i} disagrees with the weight labels")));
        }
    }
    Ok(rep)
}

pub fn save_rep(rep: &WeightedRep, path: &Path) -> Result<()> {
    std::fs::write(path, rep_to_json(rep)).map_err(|e| Error::Io(e.to_string()))
}

pub fn load_rep(path: &Path) -> Result<WeightedRep> {
    let s = std::fs::read_to_string(path).map_err(|e| Error::Io(e.to_string()))?;
    rep_from_json(&s)
}
