//! Finite-difference evidence for Schur-convexity/-concavity of parameter
//! functionals, and the two-condition pairwise criterion for 2 x 2
//! parameter matrices.
//!
//! For a symmetric differentiable functional, Schur-convexity is
//! characterised by `(z_i - z_j)(d sigma/d z_i - d sigma/d z_j) >= 0` for
//! all pairs (concavity with <= 0). Central differences with per-entry
//! step `h * max(1, |entry|)` stand in for the partials.

use crate::error::{Error, Result};
use crate::majorization::ParamMatrix;
use crate::system::{ComponentSet, SystemKind};

/// Sign tolerance for classifying pairwise products.
pub const SCHUR_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchurClass {
    /// All pairwise products >= -tol (and some exceed +tol).
    ConvexEvidence,
    /// All pairwise products <= tol (and some fall below -tol).
    ConcaveEvidence,
    /// Every product within [-tol, tol]; degenerate (e.g. equal entries).
    Both,
    /// Products of both signs beyond tolerance.
    Neither,
}

/// Extremes of the pairwise derivative products and their classification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchurEvidence {
    pub min_pair_product: f64,
    pub max_pair_product: f64,
    pub classification: SchurClass,
}

fn check_step(h: f64) -> Result<()> {
    if !h.is_finite() || h <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "finite-difference step",
            value: h,
        });
    }
    Ok(())
}

/// Evaluates `(z_i - z_j)(g_i - g_j)` over all pairs, where `g` is the
/// central-difference gradient of `f` at `z` with nominal step `h`.
pub fn schur_pair_condition<F>(f: F, z: &[f64], h: f64) -> Result<SchurEvidence>
where
    F: Fn(&[f64]) -> Result<f64>,
{
    check_step(h)?;
    if z.is_empty() {
        return Err(Error::FunctionalEvaluation("empty parameter vector".into()));
    }
    let n = z.len();
    let mut point = z.to_vec();
    let mut grad = vec![0.0; n];
    for i in 0..n {
        let step = h * 1f64.max(z[i].abs());
        point[i] = z[i] + step;
        let fp = f(&point)?;
        point[i] = z[i] - step;
        let fm = f(&point)?;
        point[i] = z[i];
        grad[i] = (fp - fm) / (2.0 * step);
    }
    let mut min_p = f64::INFINITY;
    let mut max_p = f64::NEG_INFINITY;
    for i in 0..n {
        for j in (i + 1)..n {
            let p = (z[i] - z[j]) * (grad[i] - grad[j]);
            min_p = min_p.min(p);
            max_p = max_p.max(p);
        }
    }
    if n == 1 {
        min_p = 0.0;
        max_p = 0.0;
    }
    let convex_ok = min_p >= -SCHUR_TOL;
    let concave_ok = max_p <= SCHUR_TOL;
    let classification = match (convex_ok, concave_ok) {
        (true, true) => SchurClass::Both,
        (true, false) => SchurClass::ConvexEvidence,
        (false, true) => SchurClass::ConcaveEvidence,
        (false, false) => SchurClass::Neither,
    };
    Ok(SchurEvidence {
        min_pair_product: min_p,
        max_pair_product: max_p,
        classification,
    })
}

/// The pairwise criterion value for a 2 x 2 parameter matrix:
/// `sum_{rows} (a_{r1} - a_{r2})(psi_{r1} - psi_{r2})` where `psi` is the
/// series survival (Series) or the parallel cdf (Parallel) at `x`, taken
/// as a function of the four matrix entries with the common `phi` fixed,
/// and `psi_{rc}` its central-difference partials.
///
/// For matrices in S_2 (series) or T_2 (parallel) the value is <= 0 up to
/// finite-difference noise.
pub fn theorem26_condition(
    a: &ParamMatrix,
    phi: f64,
    kind: SystemKind,
    x: f64,
    h: f64,
) -> Result<f64> {
    if a.order() != 2 {
        return Err(Error::Shape(format!(
            "pairwise criterion needs a 2x2 matrix, got 2x{}",
            a.order()
        )));
    }
    check_step(h)?;
    // entries laid out as [alpha_1, alpha_2, theta_1, theta_2]
    let entries = [a.alphas()[0], a.alphas()[1], a.thetas()[0], a.thetas()[1]];
    let psi = |v: &[f64; 4]| -> Result<f64> {
        let set = ComponentSet::from_triples(&[(v[2], phi, v[0]), (v[3], phi, v[1])])?;
        Ok(match kind {
            SystemKind::Series => set.series_survival(x)?.value(),
            SystemKind::Parallel => set.parallel_cdf(x)?.value(),
        })
    };
    let mut partials = [0.0; 4];
    for k in 0..4 {
        let step = h * 1f64.max(entries[k].abs());
        let mut v = entries;
        v[k] = entries[k] + step;
        let fp = psi(&v)?;
        v[k] = entries[k] - step;
        let fm = psi(&v)?;
        partials[k] = (fp - fm) / (2.0 * step);
    }
    Ok((entries[0] - entries[1]) * (partials[0] - partials[1])
        + (entries[2] - entries[3]) * (partials[2] - partials[3]))
}
