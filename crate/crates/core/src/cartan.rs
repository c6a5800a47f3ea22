//! Finite root systems, lattices and the invariant form.
//!
//! Conventions, fixed here and nowhere else:
//!
//! * `a[i][j] = α_j(h_i)`, so `s_i(x) = x − (Σ_j a_ij x_j) α_i` on simple-root
//!   coordinates, and `⟨α_i, α_j⟩ = d_i a_ij`.
//! * Short roots have `⟨α, α⟩ = 2`; `d_α = ⟨α, α⟩ / 2`.
//! * Coweights are stored in the basis of fundamental coweights ω_i∨, i.e. by
//!   the values `⟨α_i, μ⟩`. Coroots `h_i = α_i∨` have coordinates `a[i][·]`.
//! * Rep weights are stored by their values `ν(h_i)`.
//!
//! | type | long simple roots | short simple roots |
//! |------|-------------------|--------------------|
//! | B_n  | α_1 … α_{n−1}     | α_n                |
//! | C_n  | α_n               | α_1 … α_{n−1}      |
//! | F_4  | α_1, α_2          | α_3, α_4           |
//! | G_2  | α_1               | α_2                |
//!
//! D_n branches at α_{n−2}; E_n uses the Bourbaki numbering (α_2 attached to α_4).

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalars::{parse_q, qi, Q};

pub type Root = Vec<i64>;

#[derive(Clone, PartialEq, Eq)]
pub struct CartanDatum {
    pub type_letter: char,
    pub rank: usize,
    pub a: Vec<Vec<i64>>,
    pub d: Vec<i64>,
    /// a_{0i} = α_i(h_0), h_0 = c − h_θ.
    pub extended_row: Vec<i64>,
    /// a_{i0} = α_0(h_i) = −θ(h_i).
    pub extended_col: Vec<i64>,
    pub theta: Root,
    /// θ∨ in simple coroots.
    pub theta_coroot: Vec<i64>,
    pub d0: i64,
    positive: Vec<Root>,
}

impl fmt::Debug for CartanDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.type_letter, self.rank)
    }
}

fn cartan_matrix(t: char, n: usize) -> Result<Vec<Vec<i64>>> {
    let bad = Err(Error::InvalidType(t, n));
    let ok = match t {
        'A' => n >= 1,
        'B' | 'C' => n >= 2,
        'D' => n >= 4,
        'E' => (6..=8).contains(&n),
        'F' => n == 4,
        'G' => n == 2,
        _ => false,
    };
    if !ok {
        return bad;
    }
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize, aij: i64, aji: i64| {
        a[i][j] = aij;
        a[j][i] = aji;
    };
    match t {
        'A' => (0..n.saturating_sub(1)).for_each(|i| link(i, i + 1, -1, -1)),
        'B' => {
            (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(n - 2, n - 1, -1, -2);
        }
        'C' => {
            (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(n - 2, n - 1, -2, -1);
        }
        'D' => {
            (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(n - 3, n - 1, -1, -1);
        }
        'E' => {
            link(0, 2, -1, -1);
            link(1, 3, -1, -1);
            (2..n - 1).for_each(|i| link(i, i + 1, -1, -1));
        }
        'F' => {
            link(0, 1, -1, -1);
            link(1, 2, -1, -2);
            link(2, 3, -1, -1);
        }
        'G' => link(0, 1, -1, -3),
        _ => unreachable!(),
    }
    Ok(a)
}

/// Minimal positive d with d_i a_ij = d_j a_ji (connected diagram assumed).
fn symmetrizers(a: &[Vec<i64>]) -> Vec<i64> {
    let n = a.len();
    let mut d: Vec<Option<Q>> = vec![None; n];
    d[0] = Some(qi(1));
    let mut queue = VecDeque::from([0]);
    while let Some(i) = queue.pop_front() {
        for j in 0..n {
            if i != j && a[i][j] != 0 && d[j].is_none() {
                let di = d[i].clone().unwrap();
                d[j] = Some(di * qi(a[i][j]) / qi(a[j][i]));
                queue.push_back(j);
            }
        }
    }
    let d: Vec<Q> = d.into_iter().map(|x| x.expect("connected diagram")).collect();
    let lcm = d.iter().fold(num_bigint::BigInt::from(1), |l, x| l.lcm(x.denom()));
    let ints: Vec<i64> = d.iter().map(|x| (x * Q::from_integer(lcm.clone())).to_integer().to_i64().unwrap()).collect();
    let g = ints.iter().fold(0i64, |g, x| g.gcd(x));
    ints.iter().map(|x| x / g).collect()
}

impl CartanDatum {
    pub fn new(type_letter: char, rank: usize) -> Result<Self> {
        let t = type_letter.to_ascii_uppercase();
        let a = cartan_matrix(t, rank)?;
        let d = symmetrizers(&a);
        let mut datum = CartanDatum {
            type_letter: t,
            rank,
            a,
            d,
            extended_row: vec![],
            extended_col: vec![],
            theta: vec![],
            theta_coroot: vec![],
            d0: 0,
            positive: vec![],
        };
        datum.positive = datum.orbit_positive_roots();
        let theta = datum.positive.iter().max_by_key(|r| r.iter().sum::<i64>()).unwrap().clone();
        datum.d0 = datum.root_length(&theta);
        datum.theta_coroot = datum.coroot_of(&theta);
        let n = rank;
        datum.extended_col = (0..n).map(|i| -(0..n).map(|j| datum.a[i][j] * theta[j]).sum::<i64>()).collect();
        datum.extended_row =
            (0..n).map(|i| -(0..n).map(|j| datum.theta_coroot[j] * datum.a[j][i]).sum::<i64>()).collect();
        datum.theta = theta;
        Ok(datum)
    }

    /// Parses names like `A2`, `g2`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut chars = s.chars();
        let t = chars.next().ok_or_else(|| Error::Parse("empty type".into()))?;
        let rank: usize = chars.as_str().parse().map_err(|_| Error::Parse(format!("bad type {s:?}")))?;
        Self::new(t, rank)
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.type_letter, self.rank)
    }

    pub fn n(&self) -> usize {
        self.rank
    }

    pub fn is_simply_laced(&self) -> bool {
        self.d.iter().all(|&x| x == 1)
    }

    fn orbit_positive_roots(&self) -> Vec<Root> {
        let n = self.rank;
        let mut seen: BTreeSet<Root> = BTreeSet::new();
        let mut queue: VecDeque<Root> = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            seen.insert(e.clone());
            queue.push_back(e);
        }
        while let Some(r) = queue.pop_front() {
            for i in 0..n {
                let s = self.reflect(i, &r);
                if !seen.contains(&s) {
                    seen.insert(s.clone());
                    queue.push_back(s);
                }
            }
        }
        let mut pos: Vec<Root> = seen.into_iter().filter(|r| is_positive(r)).collect();
        pos.sort_by_key(|r| (r.iter().sum::<i64>(), std::cmp::Reverse(r.clone())));
        pos
    }

    /// Positive roots, by height then reverse-lex within a height.
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn simple_root(&self, i: usize) -> Root {
        let mut e = vec![0; self.rank];
        e[i] = 1;
        e
    }

    /// x(h_i) for x in root coordinates.
    pub fn eval_h(&self, i: usize, x: &[i64]) -> i64 {
        (0..self.rank).map(|j| self.a[i][j] * x[j]).sum()
    }

    /// s_i on simple-root coordinates.
    pub fn reflect(&self, i: usize, x: &[i64]) -> Root {
        let c = self.eval_h(i, x);
        let mut y = x.to_vec();
        y[i] -= c;
        y
    }

    /// ⟨x, y⟩ for x, y in root coordinates.
    pub fn pairing(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += x[i] * y[j] * self.d[i] * self.a[i][j];
            }
        }
        s
    }

    /// d_α = ⟨α, α⟩ / 2.
    pub fn root_length(&self, alpha: &[i64]) -> i64 {
        self.pairing(alpha, alpha) / 2
    }

    /// α∨ in simple coroots: coefficients c_i d_i / d_α.
    pub fn coroot_of(&self, alpha: &[i64]) -> Vec<i64> {
        let da = self.root_length(alpha);
        alpha.iter().zip(&self.d).map(|(c, d)| c * d / da).collect()
    }

    /// ⟨x, α∨⟩ for x in root coordinates.
    pub fn pair_coroot(&self, x: &[i64], alpha: &[i64]) -> i64 {
        2 * self.pairing(x, alpha) / self.pairing(alpha, alpha)
    }

    /// s_α(x) = x − ⟨x, α∨⟩ α.
    pub fn reflect_root(&self, alpha: &[i64], x: &[i64]) -> Root {
        let c = self.pair_coroot(x, alpha);
        x.iter().zip(alpha).map(|(xi, ai)| xi - c * ai).collect()
    }

    /// ν(h_α) for a weight given by its values on the h_i.
    pub fn weight_on_coroot(&self, nu: &[i64], alpha: &[i64]) -> i64 {
        let co = self.coroot_of(alpha);
        co.iter().zip(nu).map(|(c, v)| c * v).sum()
    }

    /// s_i on a weight in h-value coordinates.
    pub fn reflect_weight(&self, i: usize, nu: &[i64]) -> Vec<i64> {
        (0..self.rank).map(|j| nu[j] - nu[i] * self.a[j][i]).collect()
    }

    /// Weight of a root-coordinate vector in h-value coordinates.
    pub fn root_to_weight(&self, x: &[i64]) -> Vec<i64> {
        (0..self.rank).map(|i| self.eval_h(i, x)).collect()
    }

    /// ⟨α, μ⟩ for a root α and a coweight μ (fundamental-coweight coords).
    pub fn root_on_coweight(&self, alpha: &[i64], mu: &[Q]) -> Q {
        alpha.iter().zip(mu).map(|(a, m)| qi(*a) * m).sum()
    }

    /// Coroot coordinates c of μ (μ = Σ c_i h_i), solving Σ_i c_i a_ij = m_j.
    pub fn coweight_to_coroot(&self, mu: &[Q]) -> Vec<Q> {
        let n = self.rank;
        let at: Vec<Vec<Q>> = (0..n).map(|j| (0..n).map(|i| qi(self.a[i][j])).collect()).collect();
        solve_square(at, mu.to_vec())
    }

    pub fn coroot_to_coweight(&self, c: &[i64]) -> Vec<Q> {
        (0..self.rank).map(|j| qi((0..self.rank).map(|i| c[i] * self.a[i][j]).sum())).collect()
    }

    /// Integer coroot coordinates if μ ∈ Q∨.
    pub fn coroot_coords(&self, mu: &[Q]) -> Result<Vec<i64>> {
        self.coweight_to_coroot(mu)
            .iter()
            .map(|c| {
                if c.is_integer() {
                    Ok(c.to_integer().to_i64().unwrap())
                } else {
                    Err(Error::NotCoroot(fmt_coweight(mu)))
                }
            })
            .collect()
    }

    pub fn is_dominant(&self, mu: &[Q]) -> bool {
        mu.iter().all(|m| *m >= qi(0))
    }

    /// d0 · ν̂ in root coordinates, where ν̂ = Σ c_i α_i / d_i is the image of
    /// ν = Σ c_i h_i under the form. Integral for ν ∈ Q∨.
    pub fn coroot_to_root_scaled(&self, c: &[i64]) -> Root {
        c.iter().zip(&self.d).map(|(ci, di)| ci * self.d0 / di).collect()
    }

    /// ρ in root coordinates (half the sum of positive roots).
    pub fn rho(&self) -> Vec<Q> {
        let mut s = vec![qi(0); self.rank];
        for r in &self.positive {
            for (x, c) in s.iter_mut().zip(r) {
                *x += qi(*c);
            }
        }
        s.into_iter().map(|x| x / qi(2)).collect()
    }

    /// ρ∨ in simple-coroot coordinates: α_i(ρ∨) = 1.
    pub fn rho_coroot(&self) -> Vec<Q> {
        self.coweight_to_coroot(&vec![qi(1); self.rank])
    }

    /// ω_i∨ in simple-coroot coordinates.
    pub fn fundamental_coweight(&self, i: usize) -> Vec<Q> {
        let mut m = vec![qi(0); self.rank];
        m[i] = qi(1);
        self.coweight_to_coroot(&m)
    }

    /// For each positive root: (α, d_α, coroot coordinates of h_α).
    pub fn sl2_triples(&self) -> Vec<(Root, i64, Vec<i64>)> {
        self.positive.iter().map(|r| (r.clone(), self.root_length(r), self.coroot_of(r))).collect()
    }

    /// |R₊| for the type, from the classification.
    pub fn expected_positive_count(&self) -> usize {
        let n = self.rank;
        match (self.type_letter, n) {
            ('A', _) => n * (n + 1) / 2,
            ('B', _) | ('C', _) => n * n,
            ('D', _) => n * (n - 1),
            ('E', 6) => 36,
            ('E', 7) => 63,
            ('E', 8) => 120,
            ('F', _) => 24,
            ('G', _) => 6,
            _ => unreachable!(),
        }
    }
}

pub fn is_positive(r: &[i64]) -> bool {
    r.iter().all(|&x| x >= 0) && r.iter().any(|&x| x > 0)
}

fn solve_square(mut m: Vec<Vec<Q>>, mut b: Vec<Q>) -> Vec<Q> {
    let n = b.len();
    for col in 0..n {
        let p = (col..n).find(|&i| !m[i][col].is_zero()).expect("nonsingular");
        m.swap(p, col);
        b.swap(p, col);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        b[col] *= &inv;
        for i in 0..n {
            if i != col && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..n {
                    let t = &m[col][j] * &f;
                    m[i][j] -= t;
                }
                let t = &b[col] * &f;
                b[i] -= t;
            }
        }
    }
    b
}

pub fn fmt_coweight(mu: &[Q]) -> String {
    let parts: Vec<String> = mu.iter().map(crate::scalars::rational::fmt_q).collect();
    format!("({})", parts.join(","))
}

/// Parses a coweight expression such as `2a1v+a2v`, `thv`, `-w1v`, `1/2w2v`
/// or `0` into fundamental-coweight coordinates.
///
/// Atoms: `a<i>v` (simple coroot), `w<i>v` (fundamental coweight), `thv` (θ∨),
/// each with an optional rational coefficient.
pub fn parse_coweight(datum: &CartanDatum, s: &str) -> Result<Vec<Q>> {
    let n = datum.rank;
    let bad = |why: &str| Error::Parse(format!("coweight {s:?}: {why}"));
    let s = s.trim();
    if s.is_empty() {
        return Err(bad("empty"));
    }
    let mut out = vec![qi(0); n];
    if s == "0" {
        return Ok(out);
    }
    let bytes = s.as_bytes();
    let mut pos = 0;
    while pos < bytes.len() {
        let mut sign = 1;
        if bytes[pos] == b'+' || bytes[pos] == b'-' {
            if bytes[pos] == b'-' {
                sign = -1;
            }
            pos += 1;
        } else if pos > 0 {
            return Err(bad("expected + or -"));
        }
        let start = pos;
        while pos < bytes.len() && (bytes[pos].is_ascii_digit() || bytes[pos] == b'/') {
            pos += 1;
        }
        let coef = if pos == start { qi(1) } else { parse_q(&s[start..pos]).map_err(|_| bad("bad coefficient"))? };
        let rest = &s[pos..];
        let (atom, len) = if rest.starts_with("thv") {
            (datum.coroot_to_coweight(&datum.theta_coroot), 3)
        } else if rest.starts_with('a') || rest.starts_with('w') {
            let kind = rest.as_bytes()[0];
            let digits: String = rest[1..].chars().take_while(|c| c.is_ascii_digit()).collect();
            if digits.is_empty() || !rest[1 + digits.len()..].starts_with('v') {
                return Err(bad("expected a<i>v, w<i>v or thv"));
            }
            let i: usize = digits.parse().map_err(|_| bad("bad index"))?;
            if i == 0 || i > n {
                return Err(bad("index out of range"));
            }
            let atom = if kind == b'a' {
                datum.a[i - 1].iter().map(|x| qi(*x)).collect()
            } else {
                let mut e = vec![qi(0); n];
                e[i - 1] = qi(1);
                e
            };
            (atom, 2 + digits.len())
        } else {
            return Err(bad("expected a<i>v, w<i>v or thv"));
        };
        pos += len;
        for (o, x) in out.iter_mut().zip(atom) {
            *o += qi(sign) * &coef * x;
        }
    }
    Ok(out)
}

/// Comma-separated list of coweights.
pub fn parse_coweight_list(datum: &CartanDatum, s: &str) -> Result<Vec<Vec<Q>>> {
    s.split(',').map(|p| parse_coweight(datum, p)).collect()
}
