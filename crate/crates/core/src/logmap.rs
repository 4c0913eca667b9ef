//! Logarithmic coordinates on the two half-lines.
//!
//! `U_exp` sends `f` on the real line to the pair of functions
//! `t -> f(+-e^t) e^{t/2}` on two copies of the real line. It is unitary and
//! turns `x p + p x` into `-2i d/dt`, so an eigenfunction of the inverted
//! oscillator lands on plane waves `e^{i gamma t}` with `gamma = lambda / (2 omega)`.

use crate::error::{Error, Result};
use crate::grid::{SampledFunction, UniformGrid};
use crate::lct::{iho_matrix, lct_apply_at, SL2Matrix};
use crate::specfun::{psi_alpha, SeriesControl};
use num_complex::Complex64;
use rustfft::FftPlanner;
use std::f64::consts::PI;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Channels `+1` and `-1` on a common `t` grid.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoLineFunction {
    pub plus: SampledFunction,
    pub minus: SampledFunction,
}

impl TwoLineFunction {
    pub fn new(plus: SampledFunction, minus: SampledFunction) -> Result<Self> {
        plus.check_same_grid(&minus)?;
        Ok(TwoLineFunction { plus, minus })
    }

    pub fn grid(&self) -> &UniformGrid {
        self.plus.grid()
    }

    /// `sqrt(||plus||^2 + ||minus||^2)`.
    pub fn l2_norm(&self) -> f64 {
        self.plus.l2_norm().hypot(self.minus.l2_norm())
    }

    pub fn channels(&self) -> [(&'static str, &SampledFunction); 2] {
        [("plus", &self.plus), ("minus", &self.minus)]
    }
}

/// Uniform `t` grid for the substitution `x = +-e^t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfLineSpec {
    pub t_min: f64,
    pub t_max: f64,
    pub n: usize,
}

impl HalfLineSpec {
    pub fn new(t_min: f64, t_max: f64, n: usize) -> Result<Self> {
        let spec = HalfLineSpec { t_min, t_max, n };
        spec.grid()?;
        Ok(spec)
    }

    pub fn grid(&self) -> Result<UniformGrid> {
        UniformGrid::from_range(self.t_min, self.t_max, self.n)
    }
}

fn eta(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        0.0
    } else {
        0.5
    }
}

/// `(eta(x) f, eta(-x) f)` with `eta(0) = 1/2`, so the halves sum to `f`.
pub fn heaviside_split(f: &SampledFunction) -> (SampledFunction, SampledFunction) {
    (f.map(|x, v| v * eta(x)), f.map(|x, v| v * eta(-x)))
}

/// `U_exp f` with `f` linearly interpolated between its samples.
pub fn u_exp_forward(f: &SampledFunction, spec: &HalfLineSpec) -> Result<TwoLineFunction> {
    let reach = spec.t_max.exp();
    if reach > f.grid().max() + 1e-12 || -reach < f.grid().min() - 1e-12 {
        return Err(Error::Interpolation(format!(
            "e^t_max = {reach} leaves the x range [{}, {}]",
            f.grid().min(),
            f.grid().max()
        )));
    }
    u_exp_forward_fn(
        |x| {
            f.interpolate(x)
                .ok_or_else(|| Error::Interpolation(format!("x = {x} outside the sampled range")))
        },
        spec,
    )
}

/// `U_exp f` for an exactly evaluable `f`.
pub fn u_exp_forward_fn<F>(f: F, spec: &HalfLineSpec) -> Result<TwoLineFunction>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let grid = spec.grid()?;
    let channel = |sign: f64| -> Result<SampledFunction> {
        let values = grid
            .points()
            .map(|t| Ok(f(sign * t.exp())? * (0.5 * t).exp()))
            .collect::<Result<Vec<_>>>()?;
        SampledFunction::on_grid(grid, values)
    };
    TwoLineFunction::new(channel(1.0)?, channel(-1.0)?)
}

/// Inverse substitution `f(x) = g_{sign x}(ln |x|) |x|^{-1/2}`.
///
/// Outside `[e^t_min, e^t_max]` a channel counts as zero. At `x = 0` the two
/// channel limits (extrapolated from `t_min`) are averaged, following
/// `eta(0) = 1/2`; a jump between them has no point value and is an error.
pub fn u_exp_inverse(g: &TwoLineFunction, x_grid: &UniformGrid) -> Result<SampledFunction> {
    let grid = g.grid();
    let (t_lo, t_hi) = (grid.min(), grid.max());
    let values = x_grid
        .points()
        .map(|x| {
            if x == 0.0 {
                let scale = (-0.5 * t_lo).exp();
                let vp = g.plus.values()[0] * scale;
                let vm = g.minus.values()[0] * scale;
                let tol = 1e-6 * vp.norm().max(vm.norm());
                if (vp - vm).norm() > tol {
                    return Err(Error::domain("channels disagree at x = 0; no point value"));
                }
                return Ok(0.5 * (vp + vm));
            }
            let t = x.abs().ln();
            if t < t_lo || t > t_hi {
                return Ok(Complex64::new(0.0, 0.0));
            }
            let ch = if x > 0.0 { &g.plus } else { &g.minus };
            let v = ch.interpolate(t).unwrap_or_default();
            Ok(v / x.abs().sqrt())
        })
        .collect::<Result<Vec<_>>>()?;
    SampledFunction::on_grid(*x_grid, values)
}

/// `a eta(x) |x|^{-1/2 + i gamma} + b eta(-x) |x|^{-1/2 + i gamma}`.
pub fn phi_abgamma(a: Complex64, b: Complex64, gamma: f64, x: f64) -> Result<Complex64> {
    if x == 0.0 {
        return Err(Error::domain("phi is singular at x = 0"));
    }
    let power = (Complex64::new(-0.5, gamma) * x.abs().ln()).exp();
    Ok(if x > 0.0 { a * power } else { b * power })
}

/// Preimage under `W_A` of `u^{-1/2 + i gamma}` on `u > 0`, in the `x`
/// representation:
/// `C(A^-1) e^{-i a x^2 / 2b} p^{-(s+1)/2} Psi_s(q / sqrt p)` with
/// `p = i beta / 2b`, `q = i x / b`, `s = -1/2 + i gamma`.
pub fn wlemma_eigenfunction(m: &SL2Matrix, gamma: f64, x: f64) -> Result<Complex64> {
    wlemma_eigenfunction_with(m, gamma, x, &SeriesControl::default())
}

pub fn wlemma_eigenfunction_with(m: &SL2Matrix, gamma: f64, x: f64, ctl: &SeriesControl) -> Result<Complex64> {
    if m.beta() == 0.0 {
        return Err(Error::domain("wlemma eigenfunction needs beta != 0"));
    }
    let c = m.inverse().kernel_constant()?;
    let s = Complex64::new(-0.5, gamma);
    let p = I * m.beta() / (2.0 * m.b());
    let q = I * x / m.b();
    let pre = p.powc(-(s + 1.0) / 2.0);
    let chirp = Complex64::from_polar(1.0, -m.a() * x * x / (2.0 * m.b()));
    Ok(c * chirp * pre * psi_alpha(s, q / p.sqrt(), ctl)?)
}

/// Flat on `|x| <= x0`, smooth (C-infinity) rolloff to zero at `|x| = x1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlateauWindow {
    pub x0: f64,
    pub x1: f64,
}

impl Default for PlateauWindow {
    fn default() -> Self {
        PlateauWindow { x0: 8.0, x1: 14.0 }
    }
}

impl PlateauWindow {
    pub fn new(x0: f64, x1: f64) -> Result<Self> {
        if !(x0 >= 0.0 && x1 > x0) {
            return Err(Error::Validation(format!("window needs 0 <= x0 < x1, got {x0}, {x1}")));
        }
        Ok(PlateauWindow { x0, x1 })
    }

    pub fn eval(&self, x: f64) -> f64 {
        let r = x.abs();
        if r <= self.x0 {
            return 1.0;
        }
        if r >= self.x1 {
            return 0.0;
        }
        let s = (r - self.x0) / (self.x1 - self.x0);
        let up = (-1.0 / s).exp();
        let down = (-1.0 / (1.0 - s)).exp();
        down / (up + down)
    }
}

/// `U_exp(W_A psi)` with `A = iho_matrix(omega, a_param)`; `W_A psi` is
/// evaluated by quadrature directly at `u = +-e^t`, so no interpolation enters.
pub fn spectrum_map_pipeline(
    omega: f64,
    a_param: f64,
    psi: &SampledFunction,
    spec: &HalfLineSpec,
) -> Result<TwoLineFunction> {
    let m = iho_matrix(omega, a_param)?;
    let grid = spec.grid()?;
    let n = grid.len();
    let mut points: Vec<f64> = grid.points().map(f64::exp).collect();
    points.extend(grid.points().map(|t| -t.exp()));
    let w = lct_apply_at(&m, psi, &points)?;
    let half = |off: usize| -> Result<SampledFunction> {
        let values = grid.points().enumerate().map(|(k, t)| w[off + k] * (0.5 * t).exp()).collect();
        SampledFunction::on_grid(grid, values)
    };
    TwoLineFunction::new(half(0)?, half(n)?)
}

/// Dominant angular frequency of a sampled signal, under the convention
/// `e^{i nu t}` peaks at `+nu`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPeak {
    pub frequency: f64,
    /// `2 pi / (n dt)` of the unpadded record.
    pub bin_width: f64,
    pub energy: f64,
}

/// Hann-tapered, zero-padded FFT peak with parabolic refinement.
pub fn peak_frequency(f: &SampledFunction, pad_factor: usize) -> SpectralPeak {
    let n = f.len();
    let dt = f.dx();
    let len = (n * pad_factor.max(1)).next_power_of_two();
    let mut buf = vec![Complex64::new(0.0, 0.0); len];
    for (k, v) in f.values().iter().enumerate() {
        let hann = 0.5 - 0.5 * (2.0 * PI * k as f64 / (n - 1) as f64).cos();
        buf[k] = v * hann;
    }
    FftPlanner::<f64>::new().plan_fft_forward(len).process(&mut buf);
    let mags: Vec<f64> = buf.iter().map(|c| c.norm()).collect();
    let (imax, _) = mags
        .iter()
        .enumerate()
        .fold((0, f64::MIN), |best, (k, &m)| if m > best.1 { (k, m) } else { best });
    let at = |k: isize| mags[k.rem_euclid(len as isize) as usize];
    let (l, c, r) = (at(imax as isize - 1), at(imax as isize), at(imax as isize + 1));
    let denom = l - 2.0 * c + r;
    let shift = if denom.abs() > 0.0 { 0.5 * (l - r) / denom } else { 0.0 };
    let signed = if imax > len / 2 { imax as f64 - len as f64 } else { imax as f64 };
    let df = 2.0 * PI / (len as f64 * dt);
    SpectralPeak {
        frequency: (signed + shift) * df,
        bin_width: 2.0 * PI / (n as f64 * dt),
        energy: f.l2_norm().powi(2),
    }
}
