//! Exact coefficient arithmetic.
//!
//! Everything downstream is generic over [`Ring`]/[`Field`]. The concrete
//! fields are the rationals, the biquadratic extension [`QuadSurd`], and the
//! rational functions [`RatFunc`] in the exponential variables. Operators live
//! over [`Trunc`], polynomials in ℏ truncated at a fixed order.

pub mod exp;
pub mod laurent;
pub mod qnum;
pub mod quad;
pub mod rational;
pub mod ratfunc;
pub mod series;
pub mod trunc;

use std::fmt::Debug;

pub use exp::{ExpContext, Sampled, Symbolic};
pub use laurent::LaurentPoly;
pub use quad::QuadSurd;
pub use rational::{parse_q, q, qi, Q};
pub use ratfunc::RatFunc;
pub use series::{FormalSeries, GradedPoly};
pub use trunc::Trunc;

/// Commutative Q-algebra with exact equality.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(n: i64) -> Self;
    fn from_q(x: &Q) -> Self;
    /// Inverse if `self` is a unit.
    fn try_inv(&self) -> Option<Self>;

    fn scale_q(&self, x: &Q) -> Self {
        self.mul(&Self::from_q(x))
    }

    fn is_one(&self) -> bool {
        self.sub(&Self::one()).is_zero()
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Integer power, negative exponents via `try_inv`.
    fn powi(&self, e: i64) -> Option<Self> {
        if e >= 0 {
            Some(self.pow(e as u32))
        } else {
            self.try_inv().map(|x| x.pow((-e) as u32))
        }
    }
}

/// Field of characteristic zero containing the rationals.
pub trait Field: Ring {
    /// A square root of the positive integer `d`, if the field has one.
    fn sqrt_int(d: u32) -> Option<Self>;

    fn inv(&self) -> Option<Self> {
        self.try_inv()
    }

    /// Embeds an element of Q(√2, √3) if the field contains it.
    fn from_quad(x: &QuadSurd) -> Option<Self> {
        x.c[1..]
            .iter()
            .all(Ring::is_zero)
            .then(|| Self::from_q(&x.c[0]))
    }
}
