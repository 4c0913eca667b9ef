#![allow(dead_code)]

use iho_core::grid::UniformGrid;
use iho_core::SampledFunction;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Normalised `exp(-(x - x0)^2 / 2 s^2 + i k x)` sampled on `grid`.
pub fn gaussian(grid: UniformGrid, x0: f64, s: f64, k: f64) -> SampledFunction {
    let f = SampledFunction::from_fn(grid, |x| {
        Complex64::from_polar((-(x - x0) * (x - x0) / (2.0 * s * s)).exp(), k * x)
    })
    .unwrap();
    let n = f.l2_norm();
    f.scale(c(1.0 / n, 0.0))
}

/// Five-point first derivative.
pub fn derivative(f: impl Fn(f64) -> Complex64, x: f64, h: f64) -> Complex64 {
    (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h)
}

/// RK4 solution of `psi'' = -(omega^2 x^2 + lambda) psi` from `(x0, psi0, dpsi0)`
/// with fixed step `h`, sampled at every step.
pub struct OdeTrack {
    pub x0: f64,
    pub h: f64,
    pub values: Vec<Complex64>,
}

impl OdeTrack {
    pub fn at(&self, x: f64) -> Complex64 {
        let s = (x - self.x0) / self.h;
        let k = s.floor() as usize;
        let t = s - k as f64;
        self.values[k] * (1.0 - t) + self.values[k + 1] * t
    }
}

pub fn rk4_continue(lambda: Complex64, omega: f64, x0: f64, psi0: Complex64, dpsi0: Complex64, x1: f64, h: f64) -> OdeTrack {
    let acc = |x: f64, y: Complex64| -(omega * omega * x * x + lambda) * y;
    let steps = ((x1 - x0) / h).ceil() as usize;
    let mut values = Vec::with_capacity(steps + 1);
    let (mut y, mut v) = (psi0, dpsi0);
    values.push(y);
    for k in 0..steps {
        let x = x0 + k as f64 * h;
        let k1y = v;
        let k1v = acc(x, y);
        let k2y = v + 0.5 * h * k1v;
        let k2v = acc(x + 0.5 * h, y + 0.5 * h * k1y);
        let k3y = v + 0.5 * h * k2v;
        let k3v = acc(x + 0.5 * h, y + 0.5 * h * k2y);
        let k4y = v + h * k3v;
        let k4v = acc(x + h, y + h * k3y);
        y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        values.push(y);
    }
    OdeTrack { x0, h, values }
}

/// Least-squares fit of `target` by `c1 u + c2 v`; returns `||r|| / ||target||`.
pub fn span_residual(target: &[Complex64], u: &[Complex64], v: &[Complex64]) -> f64 {
    let dot = |p: &[Complex64], q: &[Complex64]| -> Complex64 { p.iter().zip(q).map(|(a, b)| a.conj() * b).sum() };
    let (uu, uv, vv) = (dot(u, u), dot(u, v), dot(v, v));
    let (ut, vt) = (dot(u, target), dot(v, target));
    let det = uu * vv - uv * uv.conj();
    let c1 = (ut * vv - uv * vt) / det;
    let c2 = (uu * vt - uv.conj() * ut) / det;
    let res: f64 = target
        .iter()
        .zip(u.iter().zip(v))
        .map(|(t, (a, b))| (t - c1 * a - c2 * b).norm_sqr())
        .sum();
    let norm: f64 = target.iter().map(|t| t.norm_sqr()).sum();
    (res / norm).sqrt()
}
