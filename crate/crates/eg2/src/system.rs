//! Lifetime distributions of the two extreme order statistics of independent
//! heterogeneous EG2 components: the lowest (series system) and the highest
//! (parallel system).
//!
//! Products of component cdfs/survivals are accumulated as sums of logs so
//! wide grids never underflow; `expm1`/`ln_1p` recover the complements
//! without cancellation.

use crate::dist::{check_abscissa, EG2Params, Probability};
use crate::error::{Error, Result};
use crate::kernel::ln_varphi_from_exp;

/// Which extreme order statistic a computation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SystemKind {
    /// Lowest order statistic `X_{1:n}`: all components must survive.
    Series,
    /// Highest order statistic `X_{n:n}`: at least one component survives.
    Parallel,
}

impl std::fmt::Display for SystemKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SystemKind::Series => write!(f, "series"),
            SystemKind::Parallel => write!(f, "parallel"),
        }
    }
}

/// An ordered, non-empty list of independent EG2 components.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentSet {
    components: Vec<EG2Params>,
}

/// Sum of logs of the terms selected by `f`; the per-component log survival
/// and log cdf are both finite-or-neg-infinite, so the sum is well defined.
fn log_sum(components: &[EG2Params], x: f64, f: impl Fn(&EG2Params, f64) -> f64) -> f64 {
    components.iter().map(|p| f(p, x)).sum()
}

fn logsumexp(terms: impl Iterator<Item = f64>) -> f64 {
    let terms: Vec<f64> = terms.collect();
    let m = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    m + terms.iter().map(|t| (t - m).exp()).sum::<f64>().ln()
}

impl ComponentSet {
    pub fn new(components: Vec<EG2Params>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::EmptyComponentSet);
        }
        Ok(ComponentSet { components })
    }

    /// Convenience constructor from `(theta, phi, alpha)` triples.
    pub fn from_triples(triples: &[(f64, f64, f64)]) -> Result<Self> {
        let components = triples
            .iter()
            .map(|&(t, p, a)| EG2Params::new(t, p, a))
            .collect::<Result<Vec<_>>>()?;
        ComponentSet::new(components)
    }

    pub fn components(&self) -> &[EG2Params] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction requires n >= 1
    }

    /// The shared `(theta, phi)` if every component agrees exactly.
    pub fn common_theta_phi(&self) -> Option<(f64, f64)> {
        let first = &self.components[0];
        let (t, p) = (first.theta(), first.phi());
        if self
            .components
            .iter()
            .all(|c| c.theta() == t && c.phi() == p)
        {
            Some((t, p))
        } else {
            None
        }
    }

    pub fn alpha_sum(&self) -> f64 {
        self.components.iter().map(|c| c.alpha()).sum()
    }

    fn ln_series_survival(&self, x: f64) -> f64 {
        log_sum(&self.components, x, |p, x| {
            p.ln_survival_at(p.eval_at(x))
        })
    }

    fn ln_parallel_cdf(&self, x: f64) -> f64 {
        log_sum(&self.components, x, |p, x| p.ln_cdf_at(p.eval_at(x)))
    }

    /// Reliability of the series system: the product of component survivals.
    pub fn series_survival(&self, x: f64) -> Result<Probability> {
        check_abscissa(x)?;
        Ok(Probability::from_computed(self.ln_series_survival(x).exp()))
    }

    /// Distribution function of the parallel system: the product of
    /// component cdfs.
    pub fn parallel_cdf(&self, x: f64) -> Result<Probability> {
        check_abscissa(x)?;
        Ok(Probability::from_computed(self.ln_parallel_cdf(x).exp()))
    }

    /// Survival of the chosen extreme; the parallel case is formed as
    /// `-expm1(sum ln F_i)` so it stays accurate near 0.
    pub fn survival(&self, kind: SystemKind, x: f64) -> Result<Probability> {
        check_abscissa(x)?;
        let v = match kind {
            SystemKind::Series => self.ln_series_survival(x).exp(),
            SystemKind::Parallel => -self.ln_parallel_cdf(x).exp_m1(),
        };
        Ok(Probability::from_computed(v))
    }

    /// Cdf of the chosen extreme.
    pub fn cdf(&self, kind: SystemKind, x: f64) -> Result<Probability> {
        check_abscissa(x)?;
        let v = match kind {
            SystemKind::Series => -self.ln_series_survival(x).exp_m1(),
            SystemKind::Parallel => self.ln_parallel_cdf(x).exp(),
        };
        Ok(Probability::from_computed(v))
    }

    /// Log density of the chosen extreme, assembled per component as
    /// `ln f_i + sum_{j != i} ln(F-bar_j or F_j)` and combined with
    /// log-sum-exp; stays finite deep into both tails.
    pub fn ln_pdf(&self, kind: SystemKind, x: f64) -> Result<f64> {
        check_abscissa(x)?;
        let n = self.components.len();
        let factors: Vec<f64> = self
            .components
            .iter()
            .map(|p| {
                let e = p.eval_at(x);
                match kind {
                    SystemKind::Series => p.ln_survival_at(e),
                    SystemKind::Parallel => p.ln_cdf_at(e),
                }
            })
            .collect();
        let mut prefix = vec![0.0; n + 1];
        for i in 0..n {
            prefix[i + 1] = prefix[i] + factors[i];
        }
        let mut suffix = vec![0.0; n + 1];
        for i in (0..n).rev() {
            suffix[i] = suffix[i + 1] + factors[i];
        }
        let terms = self.components.iter().enumerate().map(|(i, p)| {
            let e = p.eval_at(x);
            p.ln_pdf_at(x, e) + prefix[i] + suffix[i + 1]
        });
        Ok(logsumexp(terms))
    }

    /// Density of the chosen extreme. Series: `F-bar_sys * sum hazard_i`.
    /// Parallel: `F_sys * sum reversed_hazard_i`.
    pub fn pdf(&self, kind: SystemKind, x: f64) -> Result<f64> {
        Ok(self.ln_pdf(kind, x)?.exp())
    }

    /// Reversed failure rate of the parallel system with common `(theta,
    /// phi)`: `theta phi x^{-phi-1} e^{-t} sum_i varphi(alpha_i, 1-e^{-t})`,
    /// equal to the sum of the component reversed hazards. Each term is
    /// composed in log space so neither end of the grid produces spurious
    /// overflow.
    pub fn parallel_reversed_hazard(&self, x: f64) -> Result<f64> {
        check_abscissa(x)?;
        let (theta, phi) = self
            .common_theta_phi()
            .ok_or(Error::HeterogeneousComponents)?;
        let ln_x = x.ln();
        let ln_t = theta.ln() - phi * ln_x;
        let t = ln_t.exp();
        if t == 0.0 {
            // x beyond representable support of x^{-phi}; the reversed
            // hazard tends to 0 with the density.
            return Ok(0.0);
        }
        let base = (theta * phi).ln() + (-phi - 1.0) * ln_x; // ln(theta phi x^{-phi-1})
        let eps = (-t).exp();
        if eps == 0.0 {
            // e^{-t} underflowed: every kernel term sits at its 1/eps
            // asymptote and the prefactor cancels it in the limit.
            return Ok(self.components.len() as f64 * base.exp());
        }
        let u = -(-t).exp_m1();
        Ok(self
            .components
            .iter()
            .map(|p| (base - t + ln_varphi_from_exp(p.alpha(), t, u, eps)).exp())
            .sum())
    }

    /// Density of the series system with common `(theta, phi)`:
    /// `theta phi x^{-phi-1} e^{-t} (sum alpha_i) (1-e^{-t})^{sum alpha_i - 1}`.
    pub fn series_pdf_homogeneous(&self, x: f64) -> Result<f64> {
        check_abscissa(x)?;
        let (theta, phi) = self
            .common_theta_phi()
            .ok_or(Error::HeterogeneousComponents)?;
        let total = self.alpha_sum();
        let merged = EG2Params::new(theta, phi, total)?;
        let e = merged.eval_at(x);
        Ok(merged.ln_pdf_at(x, e).exp())
    }
}
