use std::collections::BTreeMap;
use std::fmt;

use super::rational::{fmt_q, qi};
use super::{Ring, Q};

/// Laurent polynomial in `n` commuting variables with rational coefficients.
///
/// Terms are keyed by exponent vectors; no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LaurentPoly {
    pub n: usize,
    pub terms: BTreeMap<Vec<i32>, Q>,
}

impl LaurentPoly {
    pub fn zero(n: usize) -> Self {
        LaurentPoly { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Q) -> Self {
        let mut p = Self::zero(n);
        if !Ring::is_zero(&c) {
            p.terms.insert(vec![0; n], c);
        }
        p
    }

    pub fn monomial(c: Q, exps: Vec<i32>) -> Self {
        let n = exps.len();
        let mut p = Self::zero(n);
        if !Ring::is_zero(&c) {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(qi(0)),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn insert_add(&mut self, e: Vec<i32>, c: Q) {
        if Ring::is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if Ring::is_zero(v) {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    /// Same polynomial with exponent vectors padded to length `n`.
    pub fn padded(&self, n: usize) -> Self {
        if n <= self.n {
            return self.clone();
        }
        LaurentPoly {
            n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.resize(n, 0);
                    (e, c.clone())
                })
                .collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.n.max(o.n);
        let mut r = self.padded(n);
        let o = o.padded(n);
        for (e, c) in &o.terms {
            r.insert_add(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.n.max(o.n);
        let mut r = self.padded(n);
        let o = o.padded(n);
        for (e, c) in &o.terms {
            r.insert_add(e.clone(), -c);
        }
        r
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &Q) -> Self {
        if Ring::is_zero(k) {
            return Self::zero(self.n);
        }
        LaurentPoly {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.n.max(o.n);
        let (a, b) = (self.padded(n), o.padded(n));
        let mut r = Self::zero(n);
        for (e1, c1) in &a.terms {
            for (e2, c2) in &b.terms {
                let e: Vec<i32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.insert_add(e, c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::constant(self.n, qi(1));
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// Multiplies by the monomial w^s.
    pub fn shift(&self, s: &[i32]) -> Self {
        let p = self.padded(s.len());
        LaurentPoly {
            n: p.n,
            terms: p
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(s).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// The derivation w_i ↦ ½ μ_i w_i, extended by Leibniz.
    pub fn derive(&self, mu: &[Q]) -> Self {
        let mut r = Self::zero(self.n);
        for (e, c) in &self.terms {
            let mut k = qi(0);
            for (ei, mi) in e.iter().zip(mu) {
                k += qi(*ei as i64) * mi;
            }
            k /= qi(2);
            r.insert_add(e.clone(), c * k);
        }
        r
    }

    /// Substitution w ↦ w^{-1}.
    pub fn invert_vars(&self) -> Self {
        LaurentPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().map(|x| -x).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn eval(&self, at: &[Q]) -> Option<Q> {
        let mut s = qi(0);
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (ei, w) in e.iter().zip(at) {
                t *= Ring::powi(w, *ei as i64)?;
            }
            s += t;
        }
        Some(s)
    }

    fn min_exps(&self) -> Vec<i32> {
        let mut m = vec![i32::MAX; self.n];
        for e in self.terms.keys() {
            for (mi, ei) in m.iter_mut().zip(e) {
                *mi = (*mi).min(*ei);
            }
        }
        m
    }

    /// Splits `self = c · w^s · p` with `p` a polynomial having minimal
    /// exponent 0 in every variable and leading coefficient 1.
    pub fn normalize(&self) -> (Q, Vec<i32>, LaurentPoly) {
        assert!(!self.is_zero(), "normalizing zero polynomial");
        let s = self.min_exps();
        let neg: Vec<i32> = s.iter().map(|x| -x).collect();
        let p = self.shift(&neg);
        let lead = p.terms.iter().next_back().unwrap().1.clone();
        let p = p.scale(&lead.recip());
        (lead, s, p)
    }

    /// Exact division by a normalized polynomial `f`, if it divides.
    pub fn div_exact(&self, f: &LaurentPoly) -> Option<LaurentPoly> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let n = self.n.max(f.n);
        let (me, f) = (self.padded(n), f.padded(n));
        let f = &f;
        let s = me.min_exps();
        let neg: Vec<i32> = s.iter().map(|x| -x).collect();
        let mut rem = me.shift(&neg);
        let (flead_e, flead_c) = f.terms.iter().next_back()?;
        let mut quot = LaurentPoly::zero(n);
        while let Some((re, rc)) = rem.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            let diff: Vec<i32> = re.iter().zip(flead_e).map(|(a, b)| a - b).collect();
            if diff.iter().any(|&x| x < 0) {
                return None;
            }
            let c = rc / flead_c;
            let t = LaurentPoly::monomial(c, diff);
            rem = rem.sub(&t.mul(f));
            quot = quot.add(&t);
        }
        Some(quot.shift(&s))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", fmt_q(c))?;
            for (i, x) in e.iter().enumerate() {
                if *x != 0 {
                    write!(f, "*w{}^{}", i + 1, x)?;
                }
            }
        }
        Ok(())
    }
}
