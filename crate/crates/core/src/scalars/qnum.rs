//! Quantum integers, factorials and the q-exponential.

use super::laurent::LaurentPoly;
use super::rational::qi;
use super::{Field, Ring, Trunc};
use crate::error::{Error, Result};
use crate::matrix::Mat;

/// [m]_p = (p^m − p^{−m})/(p − p^{−1}) written as Σ_{k<m} p^{m−1−2k}, so no
/// division by p − p^{−1} is needed. `p` must be a unit.
pub fn qint_in<S: Ring>(m: i64, p: &S) -> Option<S> {
    if m == 0 {
        return Some(S::zero());
    }
    let n = m.abs();
    let mut s = S::zero();
    for k in 0..n {
        s = s.add(&p.powi(n - 1 - 2 * k)?);
    }
    Some(if m < 0 { s.neg() } else { s })
}

pub fn qfact_in<S: Ring>(m: i64, p: &S) -> Option<S> {
    let mut r = S::one();
    for k in 1..=m {
        r = r.mul(&qint_in(k, p)?);
    }
    Some(r)
}

/// [m]_{q^d} with q = e^{ℏ/2}.
pub fn qint<F: Field, const T: usize>(m: i64, d: i64) -> Trunc<F, T> {
    let mut s = Trunc::zero();
    for k in 0..m.abs() {
        s = s.add(&Trunc::qpow_i(m.abs() - 1 - 2 * k, d));
    }
    if m < 0 {
        s.neg()
    } else {
        s
    }
}

pub fn qfact<F: Field, const T: usize>(m: i64, d: i64) -> Trunc<F, T> {
    let mut r = Trunc::one();
    for k in 1..=m {
        r = r.mul(&qint(k, d));
    }
    r
}

/// Gaussian binomial [m choose k]_{q^d}.
pub fn qbinom<F: Field, const T: usize>(m: i64, k: i64, d: i64) -> Trunc<F, T> {
    if k < 0 || k > m {
        return Trunc::zero();
    }
    let den = qfact::<F, T>(k, d).mul(&qfact(m - k, d));
    qfact(m, d).mul(&den.try_inv().expect("q-factorials are units"))
}

/// [m]_q as a Laurent polynomial in the single variable q.
pub fn qint_laurent(m: i64) -> LaurentPoly {
    let mut p = LaurentPoly::zero(1);
    for k in 0..m.abs() {
        p = p.add(&LaurentPoly::monomial(qi(1), vec![(m.abs() - 1 - 2 * k) as i32]));
    }
    if m < 0 {
        p.neg()
    } else {
        p
    }
}

/// exp_p(X) = Σ_m p^{m(m−1)/2} X^m / [m]_p! for nilpotent X.
///
/// Nilpotency is detected by X^m vanishing for some m ≤ dim; otherwise the
/// sum does not terminate and an error is returned.
pub fn exp_p_apply<S: Ring>(p: &S, x: &Mat<S>) -> Result<Mat<S>> {
    let n = x.rows();
    let mut acc = Mat::identity(n);
    let mut pow = Mat::identity(n);
    for m in 1..=n as i64 + 1 {
        pow = pow.mul(x);
        if pow.is_zero() {
            return Ok(acc);
        }
        let pm = p
            .powi(m * (m - 1) / 2)
            .ok_or_else(|| Error::Degenerate("q-exponential base is not a unit".into()))?;
        let fact = qfact_in(m, p)
            .and_then(|f| f.try_inv())
            .ok_or_else(|| Error::Degenerate("[m]_p! is not a unit".into()))?;
        acc = acc.add(&pow.scale(&pm.mul(&fact)));
    }
    Err(Error::NotNilpotent(n))
}
