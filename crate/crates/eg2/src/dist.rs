//! Pointwise evaluation of the exponentiated Gumbel type-II (EG2) lifetime
//! distribution.
//!
//! The family has cdf `F(x) = 1 - (1 - e^{-theta x^{-phi}})^alpha` on x > 0
//! with scale `theta` and shapes `phi` (inner) and `alpha` (outer). Setting
//! `alpha = 1` recovers the Gumbel type-2 form `e^{-theta x^{-phi}}`, and
//! `alpha = theta = 1` the Frechet form.
//!
//! All evaluation goes through log-space intermediaries so that deep tails
//! (large `theta x^{-phi}`, or `x^{-phi}` beyond f64 range) degrade to the
//! correct limits instead of NaN.

use crate::error::{Error, Result};
use crate::num::log1mexp;

/// One component's `(theta, phi, alpha)` triple. Construction rejects
/// non-positive or non-finite values; every downstream check assumes finite
/// positive parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EG2Params {
    theta: f64,
    phi: f64,
    alpha: f64,
}

/// A value in the closed unit interval.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Probability(f64);

impl Probability {
    pub fn new(value: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&value) {
            return Err(Error::InvalidParameter {
                name: "probability",
                value,
            });
        }
        Ok(Probability(value))
    }

    /// Internal constructor for values produced by exp/expm1 compositions,
    /// which land in [0, 1] up to sign of rounding.
    pub(crate) fn from_computed(value: f64) -> Self {
        debug_assert!((-1e-15..=1.0 + 1e-15).contains(&value), "value {value}");
        Probability(value.clamp(0.0, 1.0))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

fn check_positive(name: &'static str, value: f64) -> Result<()> {
    if !value.is_finite() || value <= 0.0 {
        return Err(Error::InvalidParameter { name, value });
    }
    Ok(())
}

pub(crate) fn check_abscissa(x: f64) -> Result<()> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::InvalidAbscissa { value: x });
    }
    Ok(())
}

/// Log-space evaluation state at one abscissa: `t = theta x^{-phi}` and
/// `l = ln(1 - e^{-t})`, both carried so tails stay representable.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Eval {
    /// theta * x^{-phi}; may round to 0 or inf at extreme x.
    pub t: f64,
    /// ln(1 - e^{-t}) in (-inf, 0].
    pub l: f64,
}

impl EG2Params {
    pub fn new(theta: f64, phi: f64, alpha: f64) -> Result<Self> {
        check_positive("theta", theta)?;
        check_positive("phi", phi)?;
        check_positive("alpha", alpha)?;
        Ok(EG2Params { theta, phi, alpha })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub(crate) fn eval_at(&self, x: f64) -> Eval {
        let ln_t = self.theta.ln() - self.phi * x.ln();
        let t = ln_t.exp();
        // As t -> 0, ln(1 - e^{-t}) -> ln t; switch to ln_t once t underflows.
        let l = if t > 0.0 { log1mexp(t) } else { ln_t };
        Eval { t, l }
    }

    /// ln survival = alpha * ln(1 - e^{-t}); finite or -inf.
    pub(crate) fn ln_survival_at(&self, e: Eval) -> f64 {
        self.alpha * e.l
    }

    /// ln cdf = ln(1 - e^{alpha l}); -inf once the cdf underflows (x near 0).
    pub(crate) fn ln_cdf_at(&self, e: Eval) -> f64 {
        let y = -(self.alpha * e.l);
        if y == 0.0 {
            f64::NEG_INFINITY
        } else if y.is_infinite() {
            0.0
        } else {
            log1mexp(y)
        }
    }

    /// ln pdf = ln(alpha theta phi) - (phi + 1) ln x - t + (alpha - 1) l.
    pub(crate) fn ln_pdf_at(&self, x: f64, e: Eval) -> f64 {
        let c = (self.alpha * self.theta * self.phi).ln();
        let tail = if self.alpha == 1.0 {
            0.0 // avoid 0 * (-inf) when l = -inf
        } else {
            (self.alpha - 1.0) * e.l
        };
        c - (self.phi + 1.0) * x.ln() - e.t + tail
    }

    /// `F(x) = 1 - (1 - e^{-theta x^{-phi}})^alpha`.
    pub fn cdf(&self, x: f64) -> Result<Probability> {
        check_abscissa(x)?;
        let e = self.eval_at(x);
        Ok(Probability::from_computed(-self.ln_survival_at(e).exp_m1()))
    }

    /// `(1 - e^{-theta x^{-phi}})^alpha`, computed from its own closed form
    /// rather than `1 - cdf` so accuracy near 1 is preserved.
    pub fn survival(&self, x: f64) -> Result<Probability> {
        check_abscissa(x)?;
        let e = self.eval_at(x);
        Ok(Probability::from_computed(self.ln_survival_at(e).exp()))
    }

    /// `alpha theta phi x^{-phi-1} e^{-t} (1 - e^{-t})^{alpha-1}` with
    /// `t = theta x^{-phi}`.
    pub fn pdf(&self, x: f64) -> Result<f64> {
        check_abscissa(x)?;
        let e = self.eval_at(x);
        Ok(self.ln_pdf_at(x, e).exp())
    }

    /// Failure rate `pdf / survival`; signals once survival underflows to 0.
    pub fn hazard(&self, x: f64) -> Result<f64> {
        check_abscissa(x)?;
        let e = self.eval_at(x);
        let ln_surv = self.ln_survival_at(e);
        if ln_surv.exp() == 0.0 {
            return Err(Error::SurvivalUnderflow { x });
        }
        Ok((self.ln_pdf_at(x, e) - ln_surv).exp())
    }

    /// Reversed failure rate `pdf / cdf`; signals once the cdf underflows to
    /// 0 (x near 0).
    pub fn reversed_hazard(&self, x: f64) -> Result<f64> {
        check_abscissa(x)?;
        let e = self.eval_at(x);
        let ln_cdf = self.ln_cdf_at(e);
        if ln_cdf.exp() == 0.0 {
            return Err(Error::CdfUnderflow { x });
        }
        Ok((self.ln_pdf_at(x, e) - ln_cdf).exp())
    }
}
