//! Linear canonical transforms `W_A` for `A` in `SL(2, R)`.
//!
//! `W_A f(u) = int W(A; u, x) f(x) dx` with kernel
//! `c(A) exp[(i / 2b)(a x^2 - 2 u x + beta u^2)]`, `c(A) = sqrt(1 / (2 pi i b))`.
//! The fast path factors the kernel into chirp, scaled Fourier sum and chirp
//! and evaluates the middle step by chirp-z.

use crate::czt::{scaled_fourier, Axis};
use crate::error::{Error, Result};
use crate::grid::{SampledFunction, UniformGrid};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
const DET_TOL: f64 = 1e-12;
const COMPOSE_TOL: f64 = 1e-10;
/// Inputs must fall to this fraction of their peak at both grid ends.
pub const SUPPORT_TOL: f64 = 1e-8;

/// `[[a, b], [alpha, beta]]` with unit determinant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SL2Matrix {
    a: f64,
    b: f64,
    alpha: f64,
    beta: f64,
}

impl SL2Matrix {
    pub fn new(a: f64, b: f64, alpha: f64, beta: f64) -> Result<Self> {
        Self::with_tolerance(a, b, alpha, beta, DET_TOL)
    }

    fn with_tolerance(a: f64, b: f64, alpha: f64, beta: f64, tol: f64) -> Result<Self> {
        if ![a, b, alpha, beta].iter().all(|v| v.is_finite()) {
            return Err(Error::Validation("matrix entries must be finite".into()));
        }
        let det = a * beta - b * alpha;
        if (det - 1.0).abs() > tol {
            return Err(Error::Validation(format!("determinant {det} is not 1")));
        }
        Ok(SL2Matrix { a, b, alpha, beta })
    }

    pub fn identity() -> Self {
        SL2Matrix { a: 1.0, b: 0.0, alpha: 0.0, beta: 1.0 }
    }

    /// `[[0, 1], [-1, 0]]`: `W_A` is the unitary Fourier transform up to phase.
    pub fn fourier() -> Self {
        SL2Matrix { a: 0.0, b: 1.0, alpha: -1.0, beta: 0.0 }
    }

    /// `[[cos t, sin t], [-sin t, cos t]]`.
    pub fn rotation(t: f64) -> Self {
        let (s, c) = t.sin_cos();
        SL2Matrix { a: c, b: s, alpha: -s, beta: c }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn det(&self) -> f64 {
        self.a * self.beta - self.b * self.alpha
    }

    pub fn inverse(&self) -> Self {
        SL2Matrix { a: self.beta, b: -self.b, alpha: -self.alpha, beta: self.a }
    }

    fn require_kernel(&self) -> Result<()> {
        if self.b == 0.0 {
            Err(Error::domain("transform kernel needs b != 0"))
        } else {
            Ok(())
        }
    }

    /// `c(A) = sqrt(1 / (2 pi i b))`, principal root.
    pub fn kernel_constant(&self) -> Result<Complex64> {
        self.require_kernel()?;
        Ok((1.0 / (2.0 * PI * I * self.b)).sqrt())
    }
}

/// Matrix product `A2 A1`.
pub fn compose(a2: &SL2Matrix, a1: &SL2Matrix) -> Result<SL2Matrix> {
    SL2Matrix::with_tolerance(
        a2.a * a1.a + a2.b * a1.alpha,
        a2.a * a1.b + a2.b * a1.beta,
        a2.alpha * a1.a + a2.beta * a1.alpha,
        a2.alpha * a1.b + a2.beta * a1.beta,
        COMPOSE_TOL,
    )
}

/// `W(A; u, x)`.
pub fn kernel(m: &SL2Matrix, u: f64, x: f64) -> Result<Complex64> {
    let c = m.kernel_constant()?;
    let phase = (m.a * x * x - 2.0 * u * x + m.beta * u * u) / (2.0 * m.b);
    Ok(c * Complex64::from_polar(1.0, phase))
}

fn check_support(f: &SampledFunction) -> Result<()> {
    let peak = f.max_abs();
    let edge = f.edge_magnitude();
    if edge > SUPPORT_TOL * peak {
        return Err(Error::Truncation { edge, limit: SUPPORT_TOL * peak });
    }
    Ok(())
}

/// Trapezoid weights times `dx`.
fn trapezoid(f: &SampledFunction) -> Vec<Complex64> {
    let n = f.len();
    let dx = f.dx();
    f.values()
        .iter()
        .enumerate()
        .map(|(k, &v)| if k == 0 || k + 1 == n { v * (0.5 * dx) } else { v * dx })
        .collect()
}

/// Reference quadrature, `O(N M)`, parallel over output points.
pub fn lct_apply_direct(m: &SL2Matrix, f: &SampledFunction, u_grid: &UniformGrid) -> Result<SampledFunction> {
    let points: Vec<f64> = u_grid.points().collect();
    SampledFunction::on_grid(*u_grid, lct_apply_at(m, f, &points)?)
}

/// Trapezoidal quadrature of `W_A f` at arbitrary output points.
pub fn lct_apply_at(m: &SL2Matrix, f: &SampledFunction, points: &[f64]) -> Result<Vec<Complex64>> {
    m.require_kernel()?;
    check_support(f)?;
    let c = m.kernel_constant()?;
    let inv2b = 1.0 / (2.0 * m.b);
    // fold the x-only chirp into the weights once
    let w: Vec<Complex64> = trapezoid(f)
        .into_iter()
        .enumerate()
        .map(|(k, v)| {
            let x = f.grid().point(k);
            v * Complex64::from_polar(1.0, m.a * x * x * inv2b)
        })
        .collect();
    let x_min = f.x_min();
    let dx = f.dx();
    Ok(points
        .par_iter()
        .map(|&u| {
            let acc: Complex64 = w
                .iter()
                .enumerate()
                .map(|(k, &v)| {
                    let x = x_min + k as f64 * dx;
                    v * Complex64::from_polar(1.0, (m.beta * u * u - 2.0 * u * x) * inv2b)
                })
                .sum();
            c * acc
        })
        .collect())
}

/// Output grid of the fast path: same length, `du = 2 pi |b| / (N dx)`,
/// centred on zero.
pub fn critical_output_grid(m: &SL2Matrix, input: &UniformGrid) -> Result<UniformGrid> {
    m.require_kernel()?;
    let n = input.len();
    UniformGrid::centered(2.0 * PI * m.b.abs() / (n as f64 * input.step()), n)
}

/// Chirp, scaled Fourier sum by chirp-z, constant and chirp, evaluated on
/// any uniform output grid.
pub fn lct_apply_on_grid(m: &SL2Matrix, f: &SampledFunction, u_grid: &UniformGrid) -> Result<SampledFunction> {
    m.require_kernel()?;
    check_support(f)?;
    let c = m.kernel_constant()?;
    let inv2b = 1.0 / (2.0 * m.b);
    let pre: Vec<Complex64> = trapezoid(f)
        .into_par_iter()
        .enumerate()
        .map(|(k, v)| {
            let x = f.grid().point(k);
            v * Complex64::from_polar(1.0, m.a * x * x * inv2b)
        })
        .collect();
    let x_axis = Axis { start: f.x_min(), step: f.dx(), len: f.len() };
    let u_axis = Axis { start: u_grid.min(), step: u_grid.step(), len: u_grid.len() };
    let mid = scaled_fourier(&pre, x_axis, u_axis, 1.0 / m.b);
    let values = mid
        .into_par_iter()
        .enumerate()
        .map(|(j, v)| {
            let u = u_grid.point(j);
            c * v * Complex64::from_polar(1.0, m.beta * u * u * inv2b)
        })
        .collect();
    SampledFunction::on_grid(*u_grid, values)
}

/// Fast path on the critical output grid, where the discrete transform is
/// exactly unitary.
pub fn lct_apply_fast(m: &SL2Matrix, f: &SampledFunction) -> Result<SampledFunction> {
    let grid = critical_output_grid(m, f.grid())?;
    lct_apply_on_grid(m, f, &grid)
}

/// Result of [`group_law_check`]: the composition holds up to `sign`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupLawDefect {
    /// `min over s = +-1` of `|| W_{A2} W_{A1} f - s W_{A2 A1} f ||`.
    pub defect: f64,
    pub sign: i8,
}

/// Compares `W_{A2}(W_{A1} f)` with `W_{A2 A1} f`, all on the grid of `f`.
///
/// The law holds up to an overall sign (the double cover). A product with
/// `b = 0` is only accepted when it is `[[1, 0], [alpha, 1]]`, which acts as
/// the chirp `exp(i alpha u^2 / 2)`.
pub fn group_law_check(a2: &SL2Matrix, a1: &SL2Matrix, f: &SampledFunction) -> Result<GroupLawDefect> {
    a1.require_kernel()?;
    a2.require_kernel()?;
    let prod = compose(a2, a1)?;
    let grid = *f.grid();
    let step = lct_apply_on_grid(a1, f, &grid)?;
    let lhs = lct_apply_on_grid(a2, &step, &grid)?;
    let rhs = if prod.b.abs() <= 1e-12 {
        if (prod.a - 1.0).abs() > 1e-12 {
            return Err(Error::domain("composition has b = 0 with a != 1; no kernel form"));
        }
        f.map(|u, v| v * Complex64::from_polar(1.0, 0.5 * prod.alpha * u * u))
    } else {
        lct_apply_on_grid(&prod, f, &grid)?
    };
    let plus = lhs.l2_distance(&rhs)?;
    let minus = lhs.l2_distance(&rhs.scale(Complex64::new(-1.0, 0.0)))?;
    Ok(if plus <= minus {
        GroupLawDefect { defect: plus, sign: 1 }
    } else {
        GroupLawDefect { defect: minus, sign: -1 }
    })
}

/// `|<W_A f, W_A g> - <f, g>|` with the fast path.
pub fn unitarity_check(m: &SL2Matrix, f: &SampledFunction, g: &SampledFunction) -> Result<f64> {
    f.check_same_grid(g)?;
    let before = f.inner(g)?;
    let wf = lct_apply_fast(m, f)?;
    let wg = lct_apply_fast(m, g)?;
    Ok((wf.inner(&wg)? - before).norm())
}

/// `E x^2 + F (x p + p x) + G p^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticForm {
    pub e: f64,
    pub f: f64,
    pub g: f64,
}

impl QuadraticForm {
    pub fn new(e: f64, f: f64, g: f64) -> Self {
        QuadraticForm { e, f, g }
    }

    pub fn det(&self) -> f64 {
        self.e * self.g - self.f * self.f
    }
}

/// Coefficients of `u p_u + p_u u` in the `x` representation.
pub fn quadratic_coeffs(m: &SL2Matrix) -> QuadraticForm {
    QuadraticForm {
        e: 2.0 * m.a * m.alpha,
        f: m.a * m.beta + m.b * m.alpha,
        g: 2.0 * m.b * m.beta,
    }
}

/// One-parameter family of matrices realising `q`:
/// `[[a, a (F - 1) / E], [E / 2a, (F + 1) / 2a]]`.
pub fn matrix_from_quadratic(q: &QuadraticForm, a_param: f64) -> Result<SL2Matrix> {
    if q.e == 0.0 {
        return Err(Error::domain("quadratic form needs E != 0"));
    }
    if a_param == 0.0 || !a_param.is_finite() {
        return Err(Error::domain("parameter a must be finite and nonzero"));
    }
    if (q.det() + 1.0).abs() > 1e-10 {
        return Err(Error::Validation(format!("EG - F^2 = {} is not -1", q.det())));
    }
    let a = a_param;
    SL2Matrix::with_tolerance(a, a * (q.f - 1.0) / q.e, q.e / (2.0 * a), (q.f + 1.0) / (2.0 * a), COMPOSE_TOL)
}

/// Matrix whose `u p_u + p_u u`, scaled by `omega`, is `p^2 - omega^2 x^2`:
/// `[[a, a / omega], [-omega / 2a, 1 / 2a]]`.
pub fn iho_matrix(omega: f64, a_param: f64) -> Result<SL2Matrix> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::domain(format!("omega must be positive, got {omega}")));
    }
    matrix_from_quadratic(&QuadraticForm::new(-omega, 0.0, 1.0 / omega), a_param)
}
