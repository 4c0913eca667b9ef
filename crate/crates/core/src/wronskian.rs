//! Wronskians of the large-`x` eigenfunction family and the delta
//! normalization they imply.
//!
//! Orientation throughout: `Wr(f, g) = f g' - f' g`.
//!
//! With `e_c^s(x) = x^{-1/2} exp(i s g_c(x))`,
//! `g_c(x) = alpha x^2 / 2 + (c / 2 alpha) ln x`, the basis Wronskians are
//! `W_{s1 s2} = Wr(e_b^{s1}, e_a^{s2}) = (i / x)(s2 g_a' - s1 g_b') exp(i (s1 g_b + s2 g_a))`.

use crate::error::{Error, Result};
use crate::grid::UniformGrid;
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// `(s1, s2)`: `s1` labels the `b` factor, `s2` the `a` factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasisSigns {
    pub s1: Sign,
    pub s2: Sign,
}

impl BasisSigns {
    pub const ALL: [BasisSigns; 4] = [
        BasisSigns { s1: Sign::Minus, s2: Sign::Plus },
        BasisSigns { s1: Sign::Minus, s2: Sign::Minus },
        BasisSigns { s1: Sign::Plus, s2: Sign::Plus },
        BasisSigns { s1: Sign::Plus, s2: Sign::Minus },
    ];

    pub fn new(s1: Sign, s2: Sign) -> Self {
        BasisSigns { s1, s2 }
    }

    pub fn flipped(self) -> Self {
        BasisSigns { s1: self.s1.flip(), s2: self.s2.flip() }
    }
}

/// `f g' - f' g` with central differences of step `h`.
pub fn wronskian_numeric<F, G>(f: F, g: G, x: f64, h: f64) -> Complex64
where
    F: Fn(f64) -> Complex64,
    G: Fn(f64) -> Complex64,
{
    let df = (f(x + h) - f(x - h)) / (2.0 * h);
    let dg = (g(x + h) - g(x - h)) / (2.0 * h);
    f(x) * dg - df * g(x)
}

fn phase(c: Complex64, alpha: f64, x: f64) -> Complex64 {
    Complex64::new(0.5 * alpha * x * x, 0.0) + c / (2.0 * alpha) * x.ln()
}

fn phase_slope(c: Complex64, alpha: f64, x: f64) -> Complex64 {
    Complex64::new(alpha * x, 0.0) + c / (2.0 * alpha * x)
}

/// `e_c^s(x) = x^{-1/2} exp(i s g_c(x))`.
pub fn basis_function(sign: Sign, c: Complex64, alpha: f64, x: f64) -> Complex64 {
    (I * sign.value() * phase(c, alpha, x)).exp() / x.sqrt()
}

/// Closed form of `Wr(e_b^{s1}, e_a^{s2})`.
///
/// For real `a`, `b`: `W_{-+} = i (2 alpha + (a + b) / (2 alpha x^2)) e^{i (a - b) ln x / 2 alpha}`,
/// `W_{++} = i (a - b) / (2 alpha x^2) e^{i (alpha x^2 + (a + b) ln x / 2 alpha)}`,
/// and the other two are their conjugates.
pub fn basis_wronskian_closed(signs: BasisSigns, a: Complex64, b: Complex64, alpha: f64, x: f64) -> Result<Complex64> {
    if !(x > 0.0) {
        return Err(Error::domain(format!("basis Wronskian needs x > 0, got {x}")));
    }
    if alpha == 0.0 {
        return Err(Error::domain("alpha must be nonzero"));
    }
    let (s1, s2) = (signs.s1.value(), signs.s2.value());
    let slope = s2 * phase_slope(a, alpha, x) - s1 * phase_slope(b, alpha, x);
    let ph = s1 * phase(b, alpha, x) + s2 * phase(a, alpha, x);
    Ok(I / x * slope * (I * ph).exp())
}

/// `|Wr(f g, f h) - f^2 Wr(g, h)|` at `x`.
pub fn product_identity_check<F, G, H>(f: F, g: G, h: H, x: f64, step: f64) -> f64
where
    F: Fn(f64) -> Complex64,
    G: Fn(f64) -> Complex64,
    H: Fn(f64) -> Complex64,
{
    let lhs = wronskian_numeric(|t| f(t) * g(t), |t| f(t) * h(t), x, step);
    let rhs = f(x) * f(x) * wronskian_numeric(&g, &h, x, step);
    (lhs - rhs).norm()
}

/// `Wr(conj F_b, F_a)` for `F_c = x^{-1/2}(A_c e^{i g_c} + conj(A_c) e^{-i g_c})`,
/// expanded over the four basis Wronskians.
pub fn bilinear_expand(
    amp_a: Complex64,
    amp_b: Complex64,
    a: Complex64,
    b: Complex64,
    alpha: f64,
    x: f64,
) -> Result<Complex64> {
    let w = |s1, s2| basis_wronskian_closed(BasisSigns::new(s1, s2), a, b, alpha, x);
    use Sign::{Minus, Plus};
    Ok(amp_b.conj() * amp_a * w(Minus, Plus)?
        + amp_b.conj() * amp_a.conj() * w(Minus, Minus)?
        + amp_b * amp_a * w(Plus, Plus)?
        + amp_b * amp_a.conj() * w(Plus, Minus)?)
}

/// `F_c(x) = x^{-1/2}(A e^{i g_c} + conj(A) e^{-i g_c})` for real `c`.
pub fn asymptotic_family(amp: Complex64, c: f64, alpha: f64, x: f64) -> Complex64 {
    let c = Complex64::new(c, 0.0);
    amp * basis_function(Sign::Plus, c, alpha, x) + amp.conj() * basis_function(Sign::Minus, c, alpha, x)
}

fn check_symmetric(a: f64, b_grid: &UniformGrid) -> Result<()> {
    let n = b_grid.len();
    let tol = 1e-9 * b_grid.step();
    for k in 0..n / 2 {
        let lo = b_grid.point(k);
        let hi = b_grid.point(n - 1 - k);
        if ((lo + hi) - 2.0 * a).abs() > tol {
            return Err(Error::Quadrature(format!("b grid is not symmetric about a = {a}")));
        }
    }
    if b_grid.points().any(|b| (b - a).abs() <= tol) {
        return Err(Error::Quadrature("b grid must exclude b = a".into()));
    }
    Ok(())
}

/// Symmetric grid `a + (k + 1/2) db`, `k = -n..n-1`, which skips `b = a`.
pub fn symmetric_b_grid(a: f64, half_width: f64, n_half: usize) -> Result<UniformGrid> {
    if n_half == 0 || !(half_width > 0.0) {
        return Err(Error::Validation("b grid needs a positive half width and size".into()));
    }
    let db = half_width / n_half as f64;
    UniformGrid::new(a - (n_half as f64 - 0.5) * db, db, 2 * n_half)
}

/// `int Wr(conj F_b, F_a)(x_probe) / (b - a) rho(b) db`, trapezoid over a
/// grid symmetric about `a` that excludes it.
pub fn delta_normalization_numerator<A, R>(
    a: f64,
    alpha: f64,
    amp_of: A,
    rho: R,
    x_probe: f64,
    b_grid: &UniformGrid,
) -> Result<Complex64>
where
    A: Fn(f64) -> Result<Complex64> + Sync,
    R: Fn(f64) -> f64 + Sync,
{
    check_symmetric(a, b_grid)?;
    let amp_a = amp_of(a)?;
    let ac = Complex64::new(a, 0.0);
    let n = b_grid.len();
    let terms = (0..n)
        .into_par_iter()
        .map(|k| -> Result<Complex64> {
            let b = b_grid.point(k);
            let w = bilinear_expand(amp_a, amp_of(b)?, ac, Complex64::new(b, 0.0), alpha, x_probe)?;
            let weight = if k == 0 || k + 1 == n { 0.5 } else { 1.0 };
            Ok(w / (b - a) * rho(b) * weight)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(terms.into_iter().sum::<Complex64>() * b_grid.step())
}

/// Real part of the smeared Wronskian divided by `4 pi |alpha| |A(a)|^2 rho(a)`;
/// tends to 1 as `x_probe` grows.
pub fn delta_normalization_probe<A, R>(
    a: f64,
    alpha: f64,
    amp_of: A,
    rho: R,
    x_probe: f64,
    b_grid: &UniformGrid,
) -> Result<f64>
where
    A: Fn(f64) -> Result<Complex64> + Sync,
    R: Fn(f64) -> f64 + Sync,
{
    let amp_a = amp_of(a)?;
    let scale = 4.0 * PI * alpha.abs() * amp_a.norm_sqr() * rho(a);
    if scale == 0.0 {
        return Err(Error::domain("rho(a) or A(a) vanishes; ratio undefined"));
    }
    let num = delta_normalization_numerator(a, alpha, amp_of, rho, x_probe, b_grid)?;
    Ok(num.re / scale)
}
