//! The three scalar kernels behind the ordering proofs:
//!
//! * `eta(alpha, u)    = u^alpha ln u / (1 - u^alpha)`, negative, increasing
//!   in alpha, decreasing in u;
//! * `gamma(alpha, u)  = alpha (1-u) u^{alpha-1} / (1 - u^alpha)`, positive,
//!   decreasing in alpha, equal to 1 identically at alpha = 1;
//! * `varphi(alpha, u) = alpha u^{alpha-1} / (1 - u^alpha)`, positive, convex
//!   in alpha, diverging as u -> 1.
//!
//! The domain is the open rectangle alpha > 0, 0 < u < 1. Boundary inputs
//! are rejected at construction rather than extended by limits; the limit
//! values (eta -> -1/alpha, gamma -> 1 as u -> 1) are covered by dedicated
//! tests. Within 1e-8 of u = 1 the kernels switch to a two-term expansion in
//! (1 - u), elsewhere the `1 - u^alpha` denominator is formed with `expm1`.

use crate::error::{Error, Result};

/// Validated `(alpha, u)` kernel argument with alpha > 0 and u in (0, 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelArgs {
    alpha: f64,
    u: f64,
}

impl KernelArgs {
    pub fn new(alpha: f64, u: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "alpha",
                value: alpha,
            });
        }
        if !u.is_finite() || u <= 0.0 || u >= 1.0 {
            return Err(Error::KernelArgOutOfRange { value: u });
        }
        Ok(KernelArgs { alpha, u })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn u(&self) -> f64 {
        self.u
    }
}

/// Default overflow cap for [`varphi`].
pub const VARPHI_DEFAULT_CAP: f64 = 1e300;

/// Switch to the guarded two-term expansion once 1 - u drops below this.
const NEAR_ONE: f64 = 1e-8;

#[inline]
fn use_expansion(alpha: f64, eps: f64) -> bool {
    // The expansion in eps = 1 - u needs alpha * eps small as well.
    eps < NEAR_ONE && alpha * eps < 1e-4
}

/// `u^alpha ln u / (1 - u^alpha)`; always negative, tending to 0 as u -> 0
/// and to -1/alpha as u -> 1.
pub fn eta(k: KernelArgs) -> f64 {
    let (a, u) = (k.alpha, k.u);
    let eps = 1.0 - u;
    if use_expansion(a, eps) {
        return -1.0 / a + 0.5 * eps;
    }
    let l = u.ln();
    let ua = (a * l).exp();
    let denom = -(a * l).exp_m1(); // 1 - u^alpha without cancellation
    ua * l / denom
}

/// `alpha (1-u) u^{alpha-1} / (1 - u^alpha)`; positive, identically 1 at
/// alpha = 1, tending to 1 as u -> 1 for any alpha.
pub fn gamma(k: KernelArgs) -> f64 {
    let (a, u) = (k.alpha, k.u);
    if a == 1.0 {
        return 1.0; // (1-u)/(1-u) cancels algebraically
    }
    let eps = 1.0 - u;
    if use_expansion(a, eps) {
        return 1.0 - 0.5 * (a - 1.0) * eps;
    }
    let l = u.ln();
    let denom = -(a * l).exp_m1();
    a * eps * ((a - 1.0) * l).exp() / denom
}

/// `alpha u^{alpha-1} / (1 - u^alpha)` under the default cap.
pub fn varphi(k: KernelArgs) -> Result<f64> {
    varphi_capped(k, VARPHI_DEFAULT_CAP)
}

/// `alpha u^{alpha-1} / (1 - u^alpha)`; signals overflow once the value
/// exceeds `cap` (the kernel diverges like 1/(1-u) as u -> 1).
pub fn varphi_capped(k: KernelArgs, cap: f64) -> Result<f64> {
    let v = varphi_raw(k.alpha, k.u);
    if v > cap {
        return Err(Error::KernelOverflow { value: v, cap });
    }
    Ok(v)
}

pub(crate) fn varphi_raw(a: f64, u: f64) -> f64 {
    if a == 1.0 {
        return 1.0 / (1.0 - u);
    }
    let eps = 1.0 - u;
    if use_expansion(a, eps) {
        return (1.0 - 0.5 * (a - 1.0) * eps) / eps;
    }
    let l = u.ln();
    let denom = -(a * l).exp_m1();
    a * ((a - 1.0) * l).exp() / denom
}

/// ln varphi(alpha, u) for callers that know `u = 1 - e^{-t}` analytically:
/// `t` and `eps = e^{-t}` carry the near-1 end at full precision, where
/// `1 - u` would be quantised at machine epsilon. Near u = 1,
/// `ln varphi = t + ln(1 - (alpha-1) eps / 2)`, so the caller's `-t` in the
/// prefactor cancels exactly.
pub(crate) fn ln_varphi_from_exp(a: f64, t: f64, u: f64, eps: f64) -> f64 {
    if a == 1.0 {
        return t; // ln(1/eps)
    }
    if use_expansion(a, eps) {
        return t + (-0.5 * (a - 1.0) * eps).ln_1p();
    }
    // ln u from whichever end carries precision.
    let l = if eps >= 0.5 { u.ln() } else { (-eps).ln_1p() };
    a.ln() + (a - 1.0) * l - (-(a * l).exp_m1()).ln()
}
