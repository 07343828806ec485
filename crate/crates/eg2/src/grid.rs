//! Evaluation grids for the comparators.
//!
//! Grid points are evaluated independently; with the default `parallel`
//! feature the sweep runs on rayon, otherwise sequentially. Results are
//! identical either way (ordered collect of pure per-point evaluations).

use crate::error::{Error, Result};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

/// An abscissa grid on (0, inf): `count` points spanning `[x_min, x_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    x_min: f64,
    x_max: f64,
    count: usize,
    spacing: Spacing,
}

impl GridSpec {
    pub fn new(x_min: f64, x_max: f64, count: usize, spacing: Spacing) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite()) || x_min <= 0.0 || x_min >= x_max || count < 2
        {
            return Err(Error::InvalidGrid);
        }
        Ok(GridSpec {
            x_min,
            x_max,
            count,
            spacing,
        })
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn spacing(&self) -> Spacing {
        self.spacing
    }

    /// A copy with twice as many points (refinement-stability checks).
    pub fn doubled(&self) -> GridSpec {
        GridSpec {
            count: self.count * 2,
            ..*self
        }
    }

    pub fn points(&self) -> Vec<f64> {
        let n = self.count;
        let mut xs = Vec::with_capacity(n);
        match self.spacing {
            Spacing::Linear => {
                let step = (self.x_max - self.x_min) / (n - 1) as f64;
                for i in 0..n {
                    xs.push(self.x_min + step * i as f64);
                }
            }
            Spacing::Log => {
                let (lo, hi) = (self.x_min.ln(), self.x_max.ln());
                let step = (hi - lo) / (n - 1) as f64;
                for i in 0..n {
                    xs.push((lo + step * i as f64).exp());
                }
            }
        }
        xs[0] = self.x_min;
        xs[n - 1] = self.x_max;
        xs
    }
}

impl Default for GridSpec {
    /// Logarithmic, 4096 points on [1e-2, 1e2]: the support is (0, inf)
    /// with a heavy right tail and all worked examples act inside this
    /// window.
    fn default() -> Self {
        GridSpec {
            x_min: 1e-2,
            x_max: 1e2,
            count: 4096,
            spacing: Spacing::Log,
        }
    }
}

/// Map a pure function over grid points, in parallel when the `parallel`
/// feature is enabled.
#[cfg(feature = "parallel")]
pub fn map_points<T, F>(xs: &[f64], f: F) -> Vec<T>
where
    T: Send,
    F: Fn(f64) -> T + Sync,
{
    xs.par_iter().map(|&x| f(x)).collect()
}

/// Map a pure function over grid points, in parallel when the `parallel`
/// feature is enabled.
#[cfg(not(feature = "parallel"))]
pub fn map_points<T, F>(xs: &[f64], f: F) -> Vec<T>
where
    T: Send,
    F: Fn(f64) -> T + Sync,
{
    xs.iter().map(|&x| f(x)).collect()
}
