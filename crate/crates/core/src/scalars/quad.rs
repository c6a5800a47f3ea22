use std::fmt;

use num_integer::Roots;

use super::rational::{fmt_q, qi};
use super::{Field, Ring, Q};

/// Element a + b√2 + c√3 + d√6 of Q(√2, √3).
///
/// Enough to hold d_i^{±1/2} for every finite type (d_i ∈ {1, 2, 3}).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadSurd {
    pub c: [Q; 4],
}

impl QuadSurd {
    pub fn new(a: Q, b: Q, c: Q, d: Q) -> Self {
        QuadSurd { c: [a, b, c, d] }
    }

    pub fn rational(a: Q) -> Self {
        QuadSurd::new(a, qi(0), qi(0), qi(0))
    }

    /// Conjugate under √3 ↦ −√3.
    fn conj3(&self) -> Self {
        let [a, b, c, d] = &self.c;
        QuadSurd::new(a.clone(), b.clone(), -c, -d)
    }

    /// Conjugate under √2 ↦ −√2.
    fn conj2(&self) -> Self {
        let [a, b, c, d] = &self.c;
        QuadSurd::new(a.clone(), -b, c.clone(), -d)
    }
}

impl fmt::Debug for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["", "√2", "√3", "√6"];
        let mut first = true;
        for (x, n) in self.c.iter().zip(names) {
            if Ring::is_zero(x) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{}{}", fmt_q(x), n)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Ring for QuadSurd {
    fn zero() -> Self {
        QuadSurd::rational(qi(0))
    }
    fn one() -> Self {
        QuadSurd::rational(qi(1))
    }
    fn add(&self, o: &Self) -> Self {
        QuadSurd { c: std::array::from_fn(|i| &self.c[i] + &o.c[i]) }
    }
    fn sub(&self, o: &Self) -> Self {
        QuadSurd { c: std::array::from_fn(|i| &self.c[i] - &o.c[i]) }
    }
    fn mul(&self, o: &Self) -> Self {
        let [a1, b1, c1, d1] = &self.c;
        let [a2, b2, c2, d2] = &o.c;
        let two = qi(2);
        let three = qi(3);
        let six = qi(6);
        let a = a1 * a2 + &two * b1 * b2 + &three * c1 * c2 + &six * d1 * d2;
        let b = a1 * b2 + b1 * a2 + &three * (c1 * d2 + d1 * c2);
        let c = a1 * c2 + c1 * a2 + &two * (b1 * d2 + d1 * b2);
        let d = a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2;
        QuadSurd::new(a, b, c, d)
    }
    fn neg(&self) -> Self {
        QuadSurd { c: std::array::from_fn(|i| -&self.c[i]) }
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(Ring::is_zero)
    }
    fn from_i64(n: i64) -> Self {
        QuadSurd::rational(qi(n))
    }
    fn from_q(x: &Q) -> Self {
        QuadSurd::rational(x.clone())
    }
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // x · conj3(x) lies in Q(√2); multiplying by its √2-conjugate lands in Q.
        let p = self.conj3();
        let m = self.mul(&p);
        let m2 = m.conj2();
        let n = m.mul(&m2);
        let r = n.c[0].clone();
        let num = p.mul(&m2);
        let inv_r = Ring::try_inv(&r)?;
        Some(QuadSurd { c: std::array::from_fn(|i| &num.c[i] * &inv_r) })
    }
}

impl Field for QuadSurd {
    fn sqrt_int(d: u32) -> Option<Self> {
        if d == 0 {
            return Some(Self::zero());
        }
        for (m, slot) in [(1u32, 0usize), (2, 1), (3, 2), (6, 3)] {
            if d % m == 0 {
                let k = d / m;
                let r = (k as u64).sqrt();
                if r * r == k as u64 {
                    let mut c = [qi(0), qi(0), qi(0), qi(0)];
                    c[slot] = qi(r as i64);
                    return Some(QuadSurd { c });
                }
            }
        }
        None
    }
    fn from_quad(x: &QuadSurd) -> Option<Self> {
        Some(x.clone())
    }
}
