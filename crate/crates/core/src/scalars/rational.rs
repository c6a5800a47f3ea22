use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Field, Ring};
use crate::error::Error;

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"` with optional sign. Whitespace is not accepted.
pub fn parse_q(s: &str) -> Result<Q, Error> {
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let int = |t: &str| -> Result<BigInt, Error> {
        let digits = t.strip_prefix('-').unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        t.parse::<BigInt>().map_err(|_| bad())
    };
    let n = int(num)?;
    let d = match den {
        Some(d) => {
            if d.starts_with('-') {
                return Err(bad());
            }
            int(d)?
        }
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator: {s:?}")));
    }
    Ok(Q::new(n, d))
}

/// Canonical `"p/q"` rendering; integers print without a denominator.
pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl Ring for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_i64(n: i64) -> Self {
        qi(n)
    }
    fn from_q(x: &Q) -> Self {
        x.clone()
    }
    fn try_inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl Field for Q {
    fn sqrt_int(d: u32) -> Option<Self> {
        let r = (d as u64).sqrt();
        (r * r == d as u64).then(|| qi(r as i64))
    }
}
