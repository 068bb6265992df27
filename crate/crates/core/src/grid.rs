//! Sampling grids for tabulation, spectra and fitting.

use crate::error::{Error, Result};

/// Default time window (in units of σ) and resolution for relaxation curves.
pub const DEFAULT_T_MIN: f64 = 0.01;
pub const DEFAULT_T_MAX: f64 = 10.0;
pub const DEFAULT_T_POINTS: usize = 400;

/// Default angular-frequency window for spectra.
pub const DEFAULT_OMEGA_MIN: f64 = 1e-3;
pub const DEFAULT_OMEGA_MAX: f64 = 1e3;
pub const DEFAULT_OMEGA_POINTS: usize = 61;

/// How points are distributed between the two end points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Geometric,
}

/// End points, point count and spacing of a one-dimensional grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl GridSpec {
    pub fn new(min: f64, max: f64, points: usize, spacing: Spacing) -> Result<Self> {
        let spec = Self {
            min,
            max,
            points,
            spacing,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.points < 2 {
            return Err(Error::InvalidParameter(format!(
                "grid needs at least 2 points, got {}",
                self.points
            )));
        }
        if !(self.min.is_finite() && self.max.is_finite()) || self.min >= self.max {
            return Err(Error::InvalidParameter(format!(
                "grid needs finite min < max, got [{}, {}]",
                self.min, self.max
            )));
        }
        if self.spacing == Spacing::Geometric && self.min <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "geometric grid needs min > 0, got {}",
                self.min
            )));
        }
        Ok(())
    }

    /// The grid points; end points are reproduced exactly.
    pub fn points(&self) -> Result<Vec<f64>> {
        self.validate()?;
        let n = self.points;
        let last = (n - 1) as f64;
        let mut out: Vec<f64> = match self.spacing {
            Spacing::Linear => (0..n)
                .map(|i| self.min + (self.max - self.min) * (i as f64 / last))
                .collect(),
            Spacing::Geometric => {
                let (l0, l1) = (self.min.ln(), self.max.ln());
                (0..n)
                    .map(|i| (l0 + (l1 - l0) * (i as f64 / last)).exp())
                    .collect()
            }
        };
        out[0] = self.min;
        out[n - 1] = self.max;
        Ok(out)
    }
}

pub fn linear(min: f64, max: f64, points: usize) -> Result<Vec<f64>> {
    GridSpec::new(min, max, points, Spacing::Linear)?.points()
}

pub fn geometric(min: f64, max: f64, points: usize) -> Result<Vec<f64>> {
    GridSpec::new(min, max, points, Spacing::Geometric)?.points()
}

/// Default relaxation-curve grid scaled by σ.
pub fn default_time_grid(sigma: f64) -> Vec<f64> {
    geometric(
        DEFAULT_T_MIN * sigma,
        DEFAULT_T_MAX * sigma,
        DEFAULT_T_POINTS,
    )
    .expect("valid default grid")
}

/// Default spectrum grid; contains ω = 1 exactly at its midpoint.
pub fn default_omega_grid() -> Vec<f64> {
    let mut w = geometric(DEFAULT_OMEGA_MIN, DEFAULT_OMEGA_MAX, DEFAULT_OMEGA_POINTS)
        .expect("valid default grid");
    w[DEFAULT_OMEGA_POINTS / 2] = 1.0;
    w
}
