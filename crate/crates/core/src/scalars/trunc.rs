use std::fmt;

use super::rational::{q, qi};
use super::{Field, Ring, Q};

/// Σ c_j ℏ^j modulo ℏ^T.
#[derive(Clone, PartialEq)]
pub struct Trunc<F, const T: usize> {
    c: Vec<F>,
}

impl<F: Field, const T: usize> Trunc<F, T> {
    pub fn from_coeffs(mut c: Vec<F>) -> Self {
        c.resize(T, F::zero());
        c.truncate(T);
        Trunc { c }
    }

    pub fn constant(x: F) -> Self {
        Self::from_coeffs(vec![x])
    }

    /// ℏ^k.
    pub fn hbar_pow(k: usize) -> Self {
        let mut c = vec![F::zero(); T];
        if k < T {
            c[k] = F::one();
        }
        Trunc { c }
    }

    pub fn hbar() -> Self {
        Self::hbar_pow(1)
    }

    pub fn coeff(&self, j: usize) -> &F {
        &self.c[j]
    }

    pub fn coeffs(&self) -> &[F] {
        &self.c
    }

    pub fn scale(&self, k: &F) -> Self {
        Trunc { c: self.c.iter().map(|x| x.mul(k)).collect() }
    }

    /// Multiplies by ℏ^k, dropping what falls off the end.
    pub fn shift(&self, k: usize) -> Self {
        let mut c = vec![F::zero(); T];
        for j in 0..T.saturating_sub(k) {
            c[j + k] = self.c[j].clone();
        }
        Trunc { c }
    }

    /// exp(x ℏ) for a field element x.
    pub fn exp_hbar(x: &F) -> Self {
        let mut c = Vec::with_capacity(T);
        let mut term = F::one();
        for j in 0..T {
            c.push(term.clone());
            term = term.mul(x).mul(&F::from_q(&q(1, (j + 1) as i64)));
        }
        Trunc { c }
    }

    /// q^{d r} = exp(d r ℏ / 2).
    pub fn qpow(r: &Q, d: i64) -> Self {
        Self::exp_hbar(&F::from_q(&(r * qi(d) / qi(2))))
    }

    pub fn qpow_i(r: i64, d: i64) -> Self {
        Self::qpow(&qi(r), d)
    }

    /// w · q^{d r} for a field element w.
    pub fn mono_qpow(w: &F, r: &Q, d: i64) -> Self {
        Self::qpow(r, d).scale(w)
    }

    /// Whether the ℏ⁰ coefficient vanishes.
    pub fn is_nonunit(&self) -> bool {
        self.c.first().map_or(true, |x| x.is_zero())
    }
}

impl<const T: usize> Trunc<Q, T> {
    /// Image under the embedding Q → G.
    pub fn lift<G: Field>(&self) -> Trunc<G, T> {
        Trunc { c: self.c.iter().map(G::from_q).collect() }
    }
}

impl<F: Field, const T: usize> fmt::Debug for Trunc<F, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "({x:?})")?,
                1 => write!(f, "({x:?})ℏ")?,
                _ => write!(f, "({x:?})ℏ^{j}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<F: Field, const T: usize> Ring for Trunc<F, T> {
    fn zero() -> Self {
        Trunc { c: vec![F::zero(); T] }
    }
    fn one() -> Self {
        Self::constant(F::one())
    }
    fn add(&self, o: &Self) -> Self {
        Trunc { c: self.c.iter().zip(&o.c).map(|(a, b)| a.add(b)).collect() }
    }
    fn sub(&self, o: &Self) -> Self {
        Trunc { c: self.c.iter().zip(&o.c).map(|(a, b)| a.sub(b)).collect() }
    }
    fn mul(&self, o: &Self) -> Self {
        let mut c = vec![F::zero(); T];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate().take(T - i) {
                if !b.is_zero() {
                    c[i + j] = c[i + j].add(&a.mul(b));
                }
            }
        }
        Trunc { c }
    }
    fn neg(&self) -> Self {
        Trunc { c: self.c.iter().map(|x| x.neg()).collect() }
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }
    fn from_i64(n: i64) -> Self {
        Self::constant(F::from_i64(n))
    }
    fn from_q(x: &Q) -> Self {
        Self::constant(F::from_q(x))
    }
    fn try_inv(&self) -> Option<Self> {
        let a0 = self.c.first()?;
        let i0 = a0.try_inv()?;
        let mut b: Vec<F> = Vec::with_capacity(T);
        b.push(i0.clone());
        for k in 1..T {
            let mut s = F::zero();
            for j in 1..=k {
                s = s.add(&self.c[j].mul(&b[k - j]));
            }
            b.push(s.mul(&i0).neg());
        }
        Some(Trunc { c: b })
    }
}
