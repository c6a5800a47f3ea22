use std::collections::BTreeMap;
use std::fmt;

use super::quad::QuadSurd;
use super::rational::{q, qi};
use super::{Field, Ring, Q};
use crate::error::{Error, Result};

/// Power series Σ c_k v^k known modulo v^N (N = number of stored coefficients).
#[derive(Clone, PartialEq, Debug)]
pub struct FormalSeries<R> {
    pub c: Vec<R>,
}

impl<R: Ring> FormalSeries<R> {
    pub fn new(mut c: Vec<R>, order: usize) -> Self {
        c.resize(order, R::zero());
        c.truncate(order);
        FormalSeries { c }
    }

    pub fn order(&self) -> usize {
        self.c.len()
    }

    pub fn coeff(&self, k: usize) -> R {
        self.c.get(k).cloned().unwrap_or_else(R::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        FormalSeries { c: (0..n).map(|k| self.c[k].add(&o.c[k])).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        FormalSeries { c: (0..n).map(|k| self.c[k].sub(&o.c[k])).collect() }
    }

    pub fn scale(&self, x: &R) -> Self {
        FormalSeries { c: self.c.iter().map(|a| a.mul(x)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let mut c = vec![R::zero(); n];
        for i in 0..n {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                c[i + j] = c[i + j].add(&self.c[i].mul(&o.c[j]));
            }
        }
        FormalSeries { c }
    }

    /// d/dv; the order drops by one.
    pub fn derivative(&self) -> Self {
        FormalSeries {
            c: (1..self.order()).map(|k| self.c[k].scale_q(&qi(k as i64))).collect(),
        }
    }

    fn require_zero_constant(&self) -> Result<()> {
        if self.c.first().map_or(true, |x| x.is_zero()) {
            Ok(())
        } else {
            Err(Error::Unsupported("series needs zero constant term".into()))
        }
    }

    /// exp(S) for S with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        self.require_zero_constant()?;
        let n = self.order();
        let mut acc = Self::new(vec![R::one()], n);
        let mut pow = acc.clone();
        for m in 1..n {
            pow = pow.mul(self).scale(&R::from_q(&q(1, m as i64)));
            acc = acc.add(&pow);
        }
        Ok(acc)
    }

    /// log(1 + S) for S with zero constant term.
    pub fn log1p(&self) -> Result<Self> {
        self.require_zero_constant()?;
        let n = self.order();
        let mut acc = Self::new(vec![], n);
        let mut pow = Self::new(vec![R::one()], n);
        for m in 1..n {
            pow = pow.mul(self);
            let sign = if m % 2 == 1 { 1 } else { -1 };
            acc = acc.add(&pow.scale(&R::from_q(&q(sign, m as i64))));
        }
        Ok(acc)
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.order();
        let a0 = self
            .c
            .first()
            .and_then(|x| x.try_inv())
            .ok_or_else(|| Error::Unsupported("series constant term is not a unit".into()))?;
        let mut b = vec![a0.clone()];
        for k in 1..n {
            let mut s = R::zero();
            for j in 1..=k {
                s = s.add(&self.c[j].mul(&b[k - j]));
            }
            b.push(s.mul(&a0).neg());
        }
        Ok(FormalSeries { c: b })
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> FormalSeries<S> {
        FormalSeries { c: self.c.iter().map(f).collect() }
    }
}

/// log(v / (e^{v/2} − e^{−v/2})) modulo v^order.
pub fn log_v_over_sinh(order: usize) -> FormalSeries<Q> {
    // (e^{v/2} − e^{−v/2}) / v = Σ_k (v/2)^{2k} / (2k+1)!
    let mut c = vec![qi(0); order];
    let mut fact = qi(1);
    for (k, slot) in c.iter_mut().enumerate() {
        if k > 0 {
            fact *= qi((k + 1) as i64);
        }
        if k % 2 == 0 {
            *slot = Ring::pow(&q(1, 2), k as u32) / &fact;
        }
    }
    c[0] = qi(0);
    let s = FormalSeries { c };
    s.log1p().expect("zero constant term").scale(&qi(-1))
}

/// Polynomial in ℏ and graded symbols s_0, s_1, …, truncated by weight.
///
/// Variable 0 is ℏ (weight 1); variable k ≥ 1 is s_{k−1} (weight k−1).
/// Terms of weight ≥ `cap` are dropped; `cap = None` means no truncation,
/// which is what the context-free constants carry.
#[derive(Clone)]
pub struct GradedPoly<R> {
    pub terms: BTreeMap<Vec<u32>, R>,
    pub cap: Option<u32>,
}

fn trim(mut e: Vec<u32>) -> Vec<u32> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

pub fn weight(e: &[u32]) -> u32 {
    e.iter()
        .enumerate()
        .map(|(k, x)| if k == 0 { *x } else { (k as u32 - 1) * x })
        .sum()
}

impl<R: Ring> GradedPoly<R> {
    pub fn constant(c: R, cap: Option<u32>) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![], c);
        }
        GradedPoly { terms, cap }
    }

    fn var(k: usize, cap: u32) -> Self {
        let mut e = vec![0; k + 1];
        e[k] = 1;
        let mut p = GradedPoly { terms: BTreeMap::new(), cap: Some(cap) };
        if weight(&e) < cap {
            p.terms.insert(e, R::one());
        }
        p
    }

    pub fn hbar(cap: u32) -> Self {
        Self::var(0, cap)
    }

    /// The symbol s_r.
    pub fn sym(r: usize, cap: u32) -> Self {
        Self::var(r + 1, cap)
    }

    fn join_cap(a: Option<u32>, b: Option<u32>) -> Option<u32> {
        match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) | (None, x) => x,
        }
    }

    fn insert(&mut self, e: Vec<u32>, c: R) {
        if c.is_zero() {
            return;
        }
        if let Some(cap) = self.cap {
            if weight(&e) >= cap {
                return;
            }
        }
        let e = trim(e);
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = v.add(&c);
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    /// Whether every term has positive weight (so powers eventually vanish).
    pub fn is_nilpotent(&self) -> bool {
        self.cap.is_some() && self.terms.keys().all(|e| weight(e) > 0)
    }

    /// exp of a nilpotent element.
    pub fn exp_nilpotent(&self) -> Result<Self> {
        if !self.is_nilpotent() {
            return Err(Error::Unsupported("exp of a non-nilpotent graded element".into()));
        }
        let mut acc = Self::constant(R::one(), self.cap);
        let mut pow = acc.clone();
        let mut m = 1;
        loop {
            pow = pow.mul(self).scale_q(&q(1, m));
            if pow.is_zero() {
                return Ok(acc);
            }
            acc = acc.add(&pow);
            m += 1;
        }
    }

    /// log(1 + X) of a nilpotent X.
    pub fn log1p_nilpotent(&self) -> Result<Self> {
        if !self.is_nilpotent() {
            return Err(Error::Unsupported("log of a non-nilpotent graded element".into()));
        }
        let mut acc = Self::constant(R::zero(), self.cap);
        let mut pow = Self::constant(R::one(), self.cap);
        let mut m: i64 = 1;
        loop {
            pow = pow.mul(self);
            if pow.is_zero() {
                return Ok(acc);
            }
            let sign = if m % 2 == 1 { 1 } else { -1 };
            acc = acc.add(&pow.scale_q(&q(sign, m)));
            m += 1;
        }
    }

    /// Divides by ℏ; every term must contain ℏ.
    pub fn div_hbar(&self) -> Result<Self> {
        let mut r = GradedPoly { terms: BTreeMap::new(), cap: self.cap.map(|c| c.saturating_sub(1)) };
        for (e, c) in &self.terms {
            if e.first().copied().unwrap_or(0) == 0 {
                return Err(Error::Unsupported("graded element not divisible by ℏ".into()));
            }
            let mut e = e.clone();
            e[0] -= 1;
            r.insert(e, c.clone());
        }
        Ok(r)
    }

    /// Term-wise evaluation into another ring.
    pub fn eval<S: Ring>(
        &self,
        coeff: impl Fn(&R) -> Result<S>,
        hbar: &S,
        sym: impl Fn(usize) -> Result<S>,
    ) -> Result<S> {
        let mut acc = S::zero();
        for (e, c) in &self.terms {
            let mut t = coeff(c)?;
            for (k, x) in e.iter().enumerate() {
                if *x == 0 {
                    continue;
                }
                let base = if k == 0 { hbar.clone() } else { sym(k - 1)? };
                t = t.mul(&base.pow(*x));
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> GradedPoly<S> {
        let mut r = GradedPoly { terms: BTreeMap::new(), cap: self.cap };
        for (e, c) in &self.terms {
            r.insert(e.clone(), f(c));
        }
        r
    }

    /// Coefficient of ℏ^a s^e.
    pub fn coeff(&self, e: &[u32]) -> R {
        self.terms.get(&trim(e.to_vec())).cloned().unwrap_or_else(R::zero)
    }
}

impl<R: Ring> PartialEq for GradedPoly<R> {
    fn eq(&self, o: &Self) -> bool {
        self.sub(o).is_zero()
    }
}

impl<R: Ring> fmt::Debug for GradedPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c:?})")?;
            for (k, x) in e.iter().enumerate() {
                if *x > 0 {
                    if k == 0 {
                        write!(f, "ℏ^{x}")?;
                    } else {
                        write!(f, "s{}^{x}", k - 1)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl<R: Ring> Ring for GradedPoly<R> {
    fn zero() -> Self {
        Self::constant(R::zero(), None)
    }
    fn one() -> Self {
        Self::constant(R::one(), None)
    }
    fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.cap = Self::join_cap(self.cap, o.cap);
        if r.cap != self.cap {
            r = GradedPoly { terms: BTreeMap::new(), cap: r.cap };
            for (e, c) in &self.terms {
                r.insert(e.clone(), c.clone());
            }
        }
        for (e, c) in &o.terms {
            r.insert(e.clone(), c.clone());
        }
        r
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        let mut r = GradedPoly { terms: BTreeMap::new(), cap: Self::join_cap(self.cap, o.cap) };
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let n = e1.len().max(e2.len());
                let e: Vec<u32> = (0..n)
                    .map(|k| e1.get(k).copied().unwrap_or(0) + e2.get(k).copied().unwrap_or(0))
                    .collect();
                r.insert(e, c1.mul(c2));
            }
        }
        r
    }
    fn neg(&self) -> Self {
        GradedPoly { terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(), cap: self.cap }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn from_i64(n: i64) -> Self {
        Self::constant(R::from_i64(n), None)
    }
    fn from_q(x: &Q) -> Self {
        Self::constant(R::from_q(x), None)
    }
    fn try_inv(&self) -> Option<Self> {
        // c(1 + N) with N nilpotent: Σ (−N)^k / c
        let c0 = self.terms.get(&vec![]).cloned()?;
        let ic = c0.try_inv()?;
        let unit = Self::constant(c0.clone(), self.cap);
        let n = self.sub(&unit).mul(&Self::constant(ic.clone(), None));
        if !n.is_zero() && !n.is_nilpotent() {
            return None;
        }
        let mut acc = Self::constant(R::one(), self.cap);
        let mut pow = acc.clone();
        let minus_n = n.neg();
        loop {
            pow = pow.mul(&minus_n);
            if pow.is_zero() {
                break;
            }
            acc = acc.add(&pow);
        }
        Some(acc.mul(&Self::constant(ic, None)))
    }
}

/// The elements t_r as polynomials in ℏ and the symbols s_r = T_r, from
/// ℏ Σ t_r v^{−r−1} = log(1 + ℏ Σ T_r v^{−r−1}).
pub fn t_from_cartan_currents(count: usize, cap: u32) -> Result<Vec<GradedPoly<Q>>> {
    // one extra weight so that dividing by ℏ leaves everything below `cap`
    let order = count + 1;
    let hb = GradedPoly::<Q>::hbar(cap + 1);
    let mut c = vec![GradedPoly::<Q>::zero(); order];
    for r in 0..count {
        c[r + 1] = hb.mul(&GradedPoly::sym(r, cap + 1));
    }
    let x = FormalSeries::new(c, order);
    let l = x.log1p()?;
    (0..count).map(|r| l.coeff(r + 1).div_hbar()).collect()
}

/// ℏ/(q_d − q_d^{−1}) as a graded element (a power series in ℏ).
pub fn hbar_over_qdiff(d: i64, cap: u32) -> GradedPoly<QuadSurd> {
    // q_d − q_d^{−1} = d ℏ Σ_k (dℏ/2)^{2k} / (2k+1)!
    let hb = GradedPoly::<QuadSurd>::hbar(cap);
    let mut s = GradedPoly::<QuadSurd>::one();
    let mut fact = qi(1);
    for k in 1..=cap as usize {
        fact *= qi((2 * k) as i64) * qi((2 * k + 1) as i64);
        let coeff = Ring::pow(&q(d, 2), 2 * k as u32) / &fact;
        s = s.add(&hb.pow(2 * k as u32).scale_q(&coeff));
    }
    s.mul(&GradedPoly::constant(QuadSurd::from_i64(d), Some(cap)))
        .try_inv()
        .expect("unit constant term")
}

/// Coefficients of g_i(v) = (ℏ/(q_i − q_i^{−1}))^{1/2} exp(ℏ/2 Σ_r t_r/r! (−∂_v)^{r+1} L(v)),
/// L(v) = log(v/(e^{v/2} − e^{−v/2})), as a series in v whose coefficients are
/// graded polynomials in ℏ and the symbols s_r = t_{i,r}.
pub fn gi_coefficients(d: i64, order: usize, cap: u32) -> Result<FormalSeries<GradedPoly<QuadSurd>>> {
    let rmax = cap as usize;
    let lser = log_v_over_sinh(order + rmax + 2);
    let half_hbar = GradedPoly::<QuadSurd>::hbar(cap).scale_q(&q(1, 2));
    let mut expo = FormalSeries::new(vec![], order);
    let mut deriv = lser.clone();
    let mut rfact = qi(1);
    for r in 0..rmax {
        if r > 0 {
            rfact *= qi(r as i64);
        }
        // (−∂_v)^{r+1} L
        deriv = deriv.derivative().scale(&qi(-1));
        let coef = half_hbar.mul(&GradedPoly::sym(r, cap)).scale_q(&rfact.recip());
        let term = deriv.map(|x| coef.scale_q(x));
        expo = expo.add(&FormalSeries::new(term.c, order));
    }
    let c0 = expo.coeff(0);
    let mut rest = expo.clone();
    rest.c[0] = GradedPoly::zero();
    let e0 = if c0.is_zero() { GradedPoly::one() } else { c0.exp_nilpotent()? };
    let body = rest.exp()?.scale(&e0);

    let pref = hbar_over_qdiff(d, cap);
    let root = pref.scale_q(&qi(d)).log_unit()?.scale_q(&q(1, 2)).exp_nilpotent()?;
    let inv_sqrt_d = QuadSurd::sqrt_int(d as u32)
        .and_then(|r| r.try_inv())
        .ok_or_else(|| Error::Unsupported(format!("no square root of {d}")))?;
    let pre = root.mul(&GradedPoly::constant(inv_sqrt_d, Some(cap)));
    Ok(body.scale(&pre))
}

impl<R: Ring> GradedPoly<R> {
    /// log of an element with constant term 1.
    pub fn log_unit(&self) -> Result<Self> {
        self.sub(&Self::constant(R::one(), self.cap)).log1p_nilpotent()
    }
}
