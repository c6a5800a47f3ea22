use std::collections::BTreeMap;
use std::fmt;

use super::laurent::LaurentPoly;
use super::rational::qi;
use super::{Field, Ring, Q};

/// Element of the fraction field of Laurent polynomials in `n` variables.
///
/// Stored as `num / ∏ f^e` with each `f` a normalized polynomial (see
/// [`LaurentPoly::normalize`]). Keys are not required to be coprime, so the
/// representation is not canonical; equality goes through subtraction.
#[derive(Clone)]
pub struct RatFunc {
    pub num: LaurentPoly,
    pub den: BTreeMap<LaurentPoly, u32>,
}

/// Rank used by context-free constants (`zero`, `one`); exponent vectors are
/// padded on use, so these mix with polynomials of any rank.
const FREE: usize = 0;

impl RatFunc {
    pub fn from_poly(p: LaurentPoly) -> Self {
        RatFunc { num: p, den: BTreeMap::new() }
    }

    pub fn constant(c: Q) -> Self {
        Self::from_poly(LaurentPoly::constant(FREE, c))
    }

    /// c · w^e.
    pub fn monomial(c: Q, e: Vec<i32>) -> Self {
        Self::from_poly(LaurentPoly::monomial(c, e))
    }

    fn nvars(&self) -> usize {
        let mut n = self.num.n;
        for f in self.den.keys() {
            n = n.max(f.n);
        }
        n
    }

    fn den_poly(den: &BTreeMap<LaurentPoly, u32>, n: usize) -> LaurentPoly {
        let mut p = LaurentPoly::constant(n, qi(1));
        for (f, e) in den {
            p = p.mul(&f.pow(*e));
        }
        p
    }

    /// Cancels denominator factors that divide the numerator.
    fn reduce(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        let keys: Vec<LaurentPoly> = self.den.keys().cloned().collect();
        for f in keys {
            loop {
                let e = match self.den.get(&f) {
                    Some(e) => *e,
                    None => break,
                };
                match self.num.div_exact(&f) {
                    Some(qt) => {
                        self.num = qt;
                        if e == 1 {
                            self.den.remove(&f);
                        } else {
                            self.den.insert(f.clone(), e - 1);
                        }
                    }
                    None => break,
                }
            }
        }
        self
    }

    fn with_den(num: LaurentPoly, den: BTreeMap<LaurentPoly, u32>) -> Self {
        RatFunc { num, den }.reduce()
    }

    /// Combines over the common multiple ∏ f^{max(e₁,e₂)}.
    fn combine(&self, o: &Self, sign: i64) -> Self {
        let n = self.nvars().max(o.nvars());
        let mut den = self.den.clone();
        for (f, e) in &o.den {
            let x = den.entry(f.clone()).or_insert(0);
            *x = (*x).max(*e);
        }
        let lift = |r: &RatFunc| {
            let mut extra = BTreeMap::new();
            for (f, e) in &den {
                let have = r.den.get(f).copied().unwrap_or(0);
                if *e > have {
                    extra.insert(f.clone(), e - have);
                }
            }
            r.num.mul(&Self::den_poly(&extra, n))
        };
        let a = lift(self);
        let b = lift(o);
        let num = if sign > 0 { a.add(&b) } else { a.sub(&b) };
        Self::with_den(num, den)
    }

    /// The derivation w_i ↦ ½ μ_i w_i.
    pub fn derive(&self, mu: &[Q]) -> Self {
        // (N/D)' = N'/D − N/D · Σ e f'/f
        let mut acc = RatFunc::from_poly(self.num.derive(mu));
        for (f, e) in &self.den {
            let df = f.derive(mu).scale(&qi(*e as i64));
            let term = RatFunc::with_den(self.num.mul(&df), BTreeMap::from([(f.clone(), 1)]));
            acc = acc.combine(&term, -1);
        }
        let mut den = acc.den.clone();
        for (f, e) in &self.den {
            *den.entry(f.clone()).or_insert(0) += e;
        }
        Self::with_den(acc.num, den)
    }

    /// Substitution w ↦ w^{-1}.
    pub fn invert_vars(&self) -> Self {
        let mut r = RatFunc::from_poly(self.num.invert_vars());
        for (f, e) in &self.den {
            let g = RatFunc::from_poly(f.invert_vars()).try_inv().expect("nonzero factor");
            for _ in 0..*e {
                r = r.mul(&g);
            }
        }
        r
    }

    pub fn eval(&self, at: &[Q]) -> Option<Q> {
        let n = self.num.eval(at)?;
        let mut d = qi(1);
        for (f, e) in &self.den {
            let v = f.eval(at)?;
            d *= Ring::pow(&v, *e);
        }
        Ring::try_inv(&d).map(|di| n * di)
    }

    /// Every denominator factor, as stored.
    pub fn factors(&self) -> impl Iterator<Item = (&LaurentPoly, &u32)> {
        self.den.iter()
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, o: &Self) -> bool {
        self.combine(o, -1).num.is_zero()
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{:?}", self.num);
        }
        write!(f, "({:?}) / (", self.num)?;
        for (i, (p, e)) in self.den.iter().enumerate() {
            if i > 0 {
                write!(f, " · ")?;
            }
            write!(f, "({p:?})^{e}")?;
        }
        write!(f, ")")
    }
}

impl Ring for RatFunc {
    fn zero() -> Self {
        Self::constant(qi(0))
    }
    fn one() -> Self {
        Self::constant(qi(1))
    }
    fn add(&self, o: &Self) -> Self {
        if o.num.is_zero() {
            return self.clone();
        }
        if self.num.is_zero() {
            return o.clone();
        }
        self.combine(o, 1)
    }
    fn sub(&self, o: &Self) -> Self {
        if o.num.is_zero() {
            return self.clone();
        }
        self.combine(o, -1)
    }
    fn mul(&self, o: &Self) -> Self {
        if self.num.is_zero() || o.num.is_zero() {
            return Self::zero();
        }
        let mut den = self.den.clone();
        for (f, e) in &o.den {
            *den.entry(f.clone()).or_insert(0) += e;
        }
        Self::with_den(self.num.mul(&o.num), den)
    }
    fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn from_i64(n: i64) -> Self {
        Self::constant(qi(n))
    }
    fn from_q(x: &Q) -> Self {
        Self::constant(x.clone())
    }
    fn try_inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        let n = self.nvars();
        let (c, s, p) = self.num.normalize();
        // 1/(c w^s p) · ∏ f^e
        let neg: Vec<i32> = s.iter().map(|x| -x).collect();
        let num = Self::den_poly(&self.den, n).shift(&neg).scale(&c.recip());
        let mut den = BTreeMap::new();
        if p.is_constant().is_none() {
            den.insert(p, 1);
        }
        Some(Self::with_den(num, den))
    }
}

impl Field for RatFunc {
    fn sqrt_int(d: u32) -> Option<Self> {
        <Q as Field>::sqrt_int(d).map(Self::constant)
    }
}
