//! Small numeric helpers used throughout the crate.

/// ln(1 - e^{-t}) for t > 0, stable at both ends.
///
/// Below ln 2 the complement is formed with `expm1`, above it with `ln_1p`,
/// so neither end loses precision (t -> 0 gives ln t - t/2 - ..., t -> inf
/// tends to -e^{-t} -> -0).
#[inline]
pub fn log1mexp(t: f64) -> f64 {
    debug_assert!(t > 0.0);
    if t <= std::f64::consts::LN_2 {
        (-(-t).exp_m1()).ln()
    } else {
        (-(-t).exp()).ln_1p()
    }
}
