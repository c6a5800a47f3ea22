//! Exponentials of the dynamical variable.
//!
//! Everything λ-dependent is a monomial in w_i = e^{⟨λ,α_i⟩/2}. A context
//! decides what those monomials are: random rationals, or Laurent variables.

use rand::Rng as _;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::rational::{fmt_q, q, qi};
use super::{Field, LaurentPoly, RatFunc, Ring, Q};

pub trait ExpContext<F: Field> {
    /// w^e = ∏ w_i^{e_i}.
    fn mono(&self, e: &[i64]) -> F;

    /// The derivation d_μ, μ in coweight coordinates.
    fn derive(&self, _x: &F, _mu: &[Q]) -> Option<F> {
        None
    }

    /// Human-readable record of the point, if any.
    fn describe(&self) -> Vec<String> {
        Vec::new()
    }
}

/// Each w_i bound to a nonzero rational.
#[derive(Clone, Debug)]
pub struct Sampled {
    pub w: Vec<Q>,
}

impl Sampled {
    pub fn new(w: Vec<Q>) -> Self {
        assert!(w.iter().all(|x| !Ring::is_zero(x)), "sample points must be nonzero");
        Sampled { w }
    }

    /// Random point with numerators and denominators in 1..=bound, avoiding ±1.
    pub fn random(rank: usize, rng: &mut ChaCha8Rng) -> Self {
        let mut w = Vec::with_capacity(rank);
        while w.len() < rank {
            let n: i64 = rng.gen_range(1..=29);
            let d: i64 = rng.gen_range(1..=29);
            let s = if rng.gen_bool(0.5) { 1 } else { -1 };
            let x = q(s * n, d);
            if x == qi(1) || x == qi(-1) {
                continue;
            }
            w.push(x);
        }
        Sampled { w }
    }

    pub fn seeded(rank: usize, seed: u64) -> Self {
        Self::random(rank, &mut ChaCha8Rng::seed_from_u64(seed))
    }
}

impl<F: Field> ExpContext<F> for Sampled {
    fn mono(&self, e: &[i64]) -> F {
        let mut x = qi(1);
        for (wi, ei) in self.w.iter().zip(e) {
            x *= wi.powi(*ei).expect("nonzero sample");
        }
        F::from_q(&x)
    }

    fn describe(&self) -> Vec<String> {
        self.w.iter().map(fmt_q).collect()
    }
}

/// w_i kept as Laurent variables; values live in [`RatFunc`].
#[derive(Clone, Debug)]
pub struct Symbolic {
    pub rank: usize,
}

impl ExpContext<RatFunc> for Symbolic {
    fn mono(&self, e: &[i64]) -> RatFunc {
        let mut ex = vec![0i32; self.rank];
        for (slot, x) in ex.iter_mut().zip(e) {
            *slot = *x as i32;
        }
        RatFunc::from_poly(LaurentPoly::monomial(qi(1), ex))
    }

    fn derive(&self, x: &RatFunc, mu: &[Q]) -> Option<RatFunc> {
        Some(x.derive(mu))
    }
}
