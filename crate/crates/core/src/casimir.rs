//! τ, K_α and the trigonometric Casimir connection at ℏ = 1, with
//! coefficients in the field of rational functions of w_i = e^{⟨λ,α_i⟩/2}.

use crate::cartan::fmt_coweight;
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::replib::{TruncYangianRep, WeightedRep};
use crate::report::CheckReport;
use crate::scalars::{q, qi, ExpContext, LaurentPoly, RatFunc, Ring, Symbolic, Q};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CasimirOptions {
    /// Drop the Σ c_i t_i² part of τ.
    pub drop_t2: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Form {
    /// (1/b)(Σ⟨α,μ⟩/(e^{⟨λ,α⟩}−1) K_α + τ(h_μ)).
    Casimir,
    /// (1/2κ)(τ(h_μ) + Σ⟨α,μ⟩/(e^{−⟨λ,α⟩}−1) 2x_α⁻x_α⁺).
    MyOp,
}

/// A_μ(λ) with the parameter it was built with (b or κ).
#[derive(Clone, Debug)]
pub struct ConnectionCoeff {
    pub mu: Vec<Q>,
    pub form: Form,
    pub param: Q,
    pub a: Mat<RatFunc>,
}

/// τ(t) = −2 Σ c_i T_{i,1} + Σ c_i t_i² at ℏ = 1, for t = Σ x_i h_i and
/// c_i = ⟨ω_i∨, t⟩ its coefficients in the basis t_i = d_i h_i.
pub fn tau(trep: &TruncYangianRep, x: &[Q], opts: CasimirOptions) -> Mat<Q> {
    let base = &trep.base;
    let datum = &base.datum;
    let mut acc = Mat::zeros(base.dim(), base.dim());
    for i in 0..datum.rank {
        let c = &x[i] / qi(datum.d[i]);
        acc = acc.sub(&trep.t1[i].scale_q(&(&c * qi(2))));
        if !opts.drop_t2 {
            let t = base.t(i);
            acc = acc.add(&t.mul(&t).scale_q(&c));
        }
    }
    acc
}

/// K_α = x_α⁺x_α⁻ + x_α⁻x_α⁺.
pub fn k_alpha(rep: &WeightedRep, alpha: &[i64]) -> Result<Mat<Q>> {
    let r = rep.root(alpha).ok_or_else(|| Error::Relation(format!("no root vectors for {alpha:?}")))?;
    Ok(rep.k_alpha(r))
}

fn lift(m: &Mat<Q>) -> Mat<RatFunc> {
    m.map(|x| RatFunc::constant(x.clone()))
}

fn mono_minus_one(rank: usize, e: &[i64]) -> RatFunc {
    Symbolic { rank }.mono(e).sub(&RatFunc::one())
}

pub fn connection_coeff(trep: &TruncYangianRep, mu: &[Q], form: Form, param: &Q, opts: CasimirOptions) -> Result<ConnectionCoeff> {
    if Ring::is_zero(param) {
        return Err(Error::Parse("b and κ must be nonzero".into()));
    }
    let base = &trep.base;
    let datum = &base.datum;
    let n = datum.rank;
    let h_mu = datum.coweight_to_coroot(mu);
    let mut a = lift(&tau(trep, &h_mu, opts));
    for r in &base.roots {
        let m = datum.root_on_coweight(&r.alpha, mu);
        if Ring::is_zero(&m) {
            continue;
        }
        let (op, sign) = match form {
            Form::Casimir => (base.k_alpha(r), 2),
            Form::MyOp => {
                let (xp, xm) = base.x_alpha(r);
                (xm.mul(&xp).scale_q(&qi(2)), -2)
            }
        };
        let e: Vec<i64> = r.alpha.iter().map(|x| sign * x).collect();
        let c = RatFunc::constant(m).mul(&mono_minus_one(n, &e).try_inv().expect("nonzero"));
        a = a.add(&lift(&op).scale(&c));
    }
    let scale = match form {
        Form::Casimir => param.recip(),
        Form::MyOp => (param * qi(2)).recip(),
    };
    Ok(ConnectionCoeff { mu: mu.to_vec(), form, param: param.clone(), a: a.scale(&RatFunc::constant(scale)) })
}

fn derive_mat(m: &Mat<RatFunc>, mu: &[Q]) -> Mat<RatFunc> {
    m.map(|x| x.derive(mu))
}

/// Whether every denominator factor of every entry divides some e^{⟨λ,α⟩} − 1.
pub fn poles_on_root_hypertori(m: &Mat<RatFunc>, roots: &[Vec<i64>]) -> bool {
    let rank = roots.first().map_or(0, |r| r.len());
    let loci: Vec<LaurentPoly> = roots
        .iter()
        .map(|a| {
            let e: Vec<i32> = a.iter().map(|x| 2 * *x as i32).collect();
            LaurentPoly::monomial(qi(1), e).sub(&LaurentPoly::constant(rank, qi(1)))
        })
        .collect();
    m.entries().iter().all(|x| x.factors().all(|(f, _)| loci.iter().any(|p| p.div_exact(f).is_some())))
}

/// d_μA_ν − d_νA_μ and [A_μ, A_ν] for the Casimir form, both required to
/// vanish identically.
pub fn curvature_check(trep: &TruncYangianRep, mu: &[Q], nu: &[Q], b: &Q, opts: CasimirOptions) -> CheckReport {
    let name = format!("flatness ({}, {}) b = {b}{}", fmt_coweight(mu), fmt_coweight(nu), if opts.drop_t2 { " (mutated τ)" } else { "" });
    CheckReport::timed(name, |rep| {
        let r = (|| -> Result<()> {
            let am = connection_coeff(trep, mu, Form::Casimir, b, opts)?.a;
            let an = connection_coeff(trep, nu, Form::Casimir, b, opts)?.a;
            let roots = trep.base.datum.positive_roots().to_vec();
            if !poles_on_root_hypertori(&am, &roots) || !poles_on_root_hypertori(&an, &roots) {
                rep.fail("a coefficient has a pole off the root hypertori");
            }
            if !derive_mat(&an, mu).sub(&derive_mat(&am, nu)).is_zero() {
                rep.fail("d_μA_ν − d_νA_μ ≠ 0");
            }
            if !am.commutator(&an).is_zero() {
                rep.fail("[A_μ, A_ν] ≠ 0");
            }
            Ok(())
        })();
        if let Err(e) = r {
            rep.fail(e.to_string());
        }
    })
}

/// (1/2κ) Σ_{α>0} t_α · d_μ log(e^{⟨λ,α⟩} − 1).
pub fn gauge_correction(trep: &TruncYangianRep, mu: &[Q], kappa: &Q) -> Mat<RatFunc> {
    let base = &trep.base;
    let n = base.datum.rank;
    let mut acc = Mat::zeros(base.dim(), base.dim());
    for r in &base.roots {
        let e: Vec<i64> = r.alpha.iter().map(|x| 2 * x).collect();
        let f = mono_minus_one(n, &e);
        let dlog = f.derive(mu).mul(&f.try_inv().expect("nonzero"));
        acc = acc.add(&lift(&base.t_alpha(r)).scale(&dlog));
    }
    acc.scale(&RatFunc::constant(q(1, 2) / kappa))
}

/// MyOp_κ(λ) = −Cas_{−2κ}(−λ) + (1/2κ) Σ t_α d_μ log(e^{⟨λ,α⟩} − 1).
pub fn gauge_equivalence_check(trep: &TruncYangianRep, mu: &[Q], kappa: &Q, with_correction: bool) -> CheckReport {
    let name = format!(
        "gauge μ = {} κ = {kappa}{}",
        fmt_coweight(mu),
        if with_correction { "" } else { " (no correction)" }
    );
    CheckReport::timed(name, |rep| {
        let r = (|| -> Result<()> {
            let my = connection_coeff(trep, mu, Form::MyOp, kappa, CasimirOptions::default())?.a;
            let b = -(kappa * qi(2));
            let cas = connection_coeff(trep, mu, Form::Casimir, &b, CasimirOptions::default())?.a;
            let cas_neg = cas.map(|x| x.invert_vars()).neg();
            let corr = gauge_correction(trep, mu, kappa);
            let rhs = if with_correction { cas_neg.add(&corr) } else { cas_neg };
            let residual = my.sub(&rhs);
            if !residual.is_zero() {
                if !with_correction && residual == corr {
                    rep.fail("residual is exactly the t_α log-derivative summand");
                } else {
                    rep.fail("MyOp(λ) ≠ −Cas(−λ) + correction");
                }
            }
            Ok(())
        })();
        if let Err(e) = r {
            rep.fail(e.to_string());
        }
    })
}
