//! Uniform grids and complex samples on them.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Points `min + k * step` for `k = 0..len`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformGrid {
    min: f64,
    step: f64,
    len: usize,
}

impl UniformGrid {
    pub fn new(min: f64, step: f64, len: usize) -> Result<Self> {
        if !(min.is_finite() && step.is_finite() && step > 0.0) {
            return Err(Error::Validation(format!("invalid grid origin {min} / step {step}")));
        }
        if len < 2 {
            return Err(Error::Validation(format!("grid needs at least 2 points, got {len}")));
        }
        Ok(UniformGrid { min, step, len })
    }

    /// Grid with `count` points from `min` to `max` inclusive.
    pub fn from_range(min: f64, max: f64, count: usize) -> Result<Self> {
        if count < 2 || !(max > min) {
            return Err(Error::Validation(format!(
                "range grid needs min < max and count >= 2, got {min}:{max}:{count}"
            )));
        }
        Self::new(min, (max - min) / (count - 1) as f64, count)
    }

    /// Grid of `len` points with spacing `step`, centred on zero
    /// (`min = -(len/2) * step`).
    pub fn centered(step: f64, len: usize) -> Result<Self> {
        Self::new(-((len / 2) as f64) * step, step, len)
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    pub fn max(&self) -> f64 {
        self.point(self.len - 1)
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn point(&self, k: usize) -> f64 {
        self.min + k as f64 * self.step
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.len).map(move |k| self.point(k))
    }

    /// Same origin and spacing within a relative tolerance, same length.
    pub fn matches(&self, other: &UniformGrid) -> bool {
        let tol = 1e-12 * self.step.max(other.step);
        self.len == other.len
            && (self.step - other.step).abs() <= tol
            && (self.min - other.min).abs() <= tol.max(1e-12 * self.min.abs())
    }
}

/// Complex values on a uniform real grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    grid: UniformGrid,
    values: Vec<Complex64>,
}

impl SampledFunction {
    pub fn new(x_min: f64, dx: f64, values: Vec<Complex64>) -> Result<Self> {
        let grid = UniformGrid::new(x_min, dx, values.len())?;
        Self::on_grid(grid, values)
    }

    pub fn on_grid(grid: UniformGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch(format!(
                "{} values for a grid of {} points",
                values.len(),
                grid.len()
            )));
        }
        if values.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::Validation("sampled values must be finite".into()));
        }
        Ok(SampledFunction { grid, values })
    }

    pub fn from_fn(grid: UniformGrid, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let values = grid.points().map(f).collect();
        Self::on_grid(grid, values)
    }

    pub fn try_from_fn<E>(
        grid: UniformGrid,
        f: impl Fn(f64) -> std::result::Result<Complex64, E>,
    ) -> std::result::Result<Self, E>
    where
        E: From<Error>,
    {
        let values = grid.points().map(f).collect::<std::result::Result<Vec<_>, E>>()?;
        Ok(Self::on_grid(grid, values)?)
    }

    pub fn zeros(grid: UniformGrid) -> Self {
        SampledFunction { grid, values: vec![Complex64::new(0.0, 0.0); grid.len()] }
    }

    pub fn grid(&self) -> &UniformGrid {
        &self.grid
    }

    pub fn x_min(&self) -> f64 {
        self.grid.min()
    }

    pub fn dx(&self) -> f64 {
        self.grid.step()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.norm()))
    }

    /// Discrete `L^2` norm `sqrt(dx * sum |v|^2)`.
    pub fn l2_norm(&self) -> f64 {
        (self.dx() * self.values.iter().map(|v| v.norm_sqr()).sum::<f64>()).sqrt()
    }

    /// Discrete inner product `dx * sum f conj(g)`.
    pub fn inner(&self, other: &SampledFunction) -> Result<Complex64> {
        self.check_same_grid(other)?;
        Ok(self.values.iter().zip(&other.values).map(|(f, g)| f * g.conj()).sum::<Complex64>()
            * self.dx())
    }

    pub fn check_same_grid(&self, other: &SampledFunction) -> Result<()> {
        if self.grid.matches(&other.grid) {
            Ok(())
        } else {
            Err(Error::GridMismatch(format!("{:?} vs {:?}", self.grid, other.grid)))
        }
    }

    /// Discrete `L^2` distance to another function on the same grid.
    pub fn l2_distance(&self, other: &SampledFunction) -> Result<f64> {
        self.check_same_grid(other)?;
        let s: f64 = self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm_sqr()).sum();
        Ok((s * self.dx()).sqrt())
    }

    pub fn max_abs_difference(&self, other: &SampledFunction) -> Result<f64> {
        self.check_same_grid(other)?;
        Ok(self.values.iter().zip(&other.values).fold(0.0, |m, (a, b)| m.max((a - b).norm())))
    }

    pub fn map(&self, f: impl Fn(f64, Complex64) -> Complex64) -> SampledFunction {
        let values = self.values.iter().enumerate().map(|(k, &v)| f(self.grid.point(k), v)).collect();
        SampledFunction { grid: self.grid, values }
    }

    pub fn scale(&self, s: Complex64) -> SampledFunction {
        self.map(|_, v| v * s)
    }

    /// Linear interpolation; `None` outside the sampled interval.
    pub fn interpolate(&self, x: f64) -> Option<Complex64> {
        let pos = (x - self.grid.min()) / self.grid.step();
        let last = (self.len() - 1) as f64;
        if !(pos >= -1e-9 && pos <= last + 1e-9) {
            return None;
        }
        let pos = pos.clamp(0.0, last);
        let k = (pos.floor() as usize).min(self.len() - 2);
        let frac = pos - k as f64;
        Some(self.values[k] * (1.0 - frac) + self.values[k + 1] * frac)
    }

    /// Largest magnitude among the first and last samples.
    pub fn edge_magnitude(&self) -> f64 {
        self.values[0].norm().max(self.values[self.len() - 1].norm())
    }
}
