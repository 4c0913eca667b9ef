//! Weighted spaces and convergence probes for generalized eigenvector
//! pairings.
//!
//! A real eigenvalue gives eigenfunctions of size `x^{-1/2}`, whose pairing
//! with any test function decaying like `x^{-1/2 - eps}` converges. A
//! nonreal `lambda` has a branch growing like `x^{-1/2 + |Im lambda| / 2 omega}`,
//! and a test function matched to its chirp makes the pairing diverge once
//! `|Im lambda| / 2 omega > eps`.

use crate::error::{Error, Result};
use crate::grid::SampledFunction;
use crate::oscillator::{eigenfunction, EigenParams, Parity};
use gauss_quad::GaussLegendre;
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

/// `mu_n` (`1 + |x|^{-1/n}` off the unit interval) or its real-exponent
/// variant `mu_eps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RiggedWeight {
    Index(u32),
    Exponent(f64),
}

impl RiggedWeight {
    pub fn index(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Validation("weight index must be >= 1".into()));
        }
        Ok(RiggedWeight::Index(n))
    }

    pub fn exponent(eps: f64) -> Result<Self> {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::Validation(format!("weight exponent must be positive, got {eps}")));
        }
        Ok(RiggedWeight::Exponent(eps))
    }

    fn power(&self) -> f64 {
        match *self {
            RiggedWeight::Index(n) => 1.0 / n as f64,
            RiggedWeight::Exponent(e) => e,
        }
    }
}

pub fn mu_weight(w: &RiggedWeight, x: f64) -> f64 {
    let r = x.abs();
    if r <= 1.0 {
        1.0
    } else {
        1.0 + r.powf(-w.power())
    }
}

/// `sum_{k=0}^{n} <f, g>_k`, where `<., .>_0` is the plain product and
/// `<., .>_k` is weighted by `mu_k`.
pub fn weighted_scalar_product(f: &SampledFunction, g: &SampledFunction, n: u32) -> Result<Complex64> {
    f.check_same_grid(g)?;
    let mut total = f.inner(g)?;
    for k in 1..=n {
        let w = RiggedWeight::Index(k);
        let s: Complex64 = f
            .values()
            .iter()
            .zip(g.values())
            .enumerate()
            .map(|(j, (a, b))| a * b.conj() * mu_weight(&w, f.grid().point(j)))
            .sum();
        total += s * f.dx();
    }
    Ok(total)
}

/// `(1 + x^2)^{-1/4 - eps/2}`: decays like `|x|^{-1/2 - eps}`, so it is
/// square integrable against every `mu`.
pub fn phi_test_family(eps: f64, x: f64) -> f64 {
    (1.0 + x * x).powf(-0.25 - 0.5 * eps)
}

/// `phi_test_family` times the chirp of the branch of `F_lambda` that grows
/// for nonreal `lambda`: `exp(-i sign(Im lambda) omega x^2 / 2)`. For real
/// `lambda` this is `phi_test_family` itself.
pub fn phi_chirp_matched(eps: f64, omega: f64, lambda: Complex64, x: f64) -> Complex64 {
    let s = if lambda.im > 0.0 {
        1.0
    } else if lambda.im < 0.0 {
        -1.0
    } else {
        0.0
    };
    Complex64::from_polar(phi_test_family(eps, x), -s * 0.5 * omega * x * x)
}

/// `int_{|x| > X} |phi_eps|^2 mu dx <= 4 X^{-eps} / eps` for any weight
/// (`mu <= 2`, `|phi|^2 <= |x|^{-1-eps}`, both tails).
pub fn phi_weighted_tail_bound(eps: f64, x: f64) -> f64 {
    4.0 * x.powf(-eps) / eps
}

/// Growth exponent of the larger branch of `F_lambda`: `|Im lambda| / 2 omega`.
pub fn growth_exponent(lambda: Complex64, omega: f64) -> f64 {
    lambda.im.abs() / (2.0 * omega)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Converged,
    Diverged,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::Converged => "Converged",
            Verdict::Diverged => "Diverged",
            Verdict::Inconclusive => "Inconclusive",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceVerdict {
    pub verdict: Verdict,
    /// `(X, I(X))`, strictly increasing in `X`.
    pub partials: Vec<(f64, Complex64)>,
    /// Fitted exponent of `|I(X_{k+1}) - I(X_k)|` against `X`.
    pub increment_slope: f64,
}

/// Thresholds of the verdict rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairingControl {
    /// Converged below `-slope_margin`, diverged above `+slope_margin`.
    pub slope_margin: f64,
    /// Converged also when the last increment is below this fraction of
    /// `max |I|` and increments decrease.
    pub rel_increment_tol: f64,
    /// Gauss-Legendre nodes per panel.
    pub nodes: usize,
    /// Panels per quarter of a local oscillation (`>= 1`); doubling it
    /// doubles the resolution.
    pub refinement: usize,
}

impl Default for PairingControl {
    fn default() -> Self {
        PairingControl { slope_margin: 0.05, rel_increment_tol: 1e-3, nodes: 8, refinement: 1 }
    }
}

/// Local phase rate of the eigenfunction: `|alpha| x + |Re lambda| / (2 |alpha| x)`.
fn phase_rate(alpha: f64, lambda: Complex64, x: f64) -> f64 {
    alpha.abs() * x + lambda.re.abs() / (2.0 * alpha.abs() * x.max(1e-3))
}

/// Panel boundaries on `[lo, hi]`, width `pi / (8 k(x))` capped at 1/4.
fn panels(alpha: f64, lambda: Complex64, lo: f64, hi: f64, refinement: usize) -> Result<Vec<f64>> {
    let mut edges = vec![lo];
    let mut x = lo;
    while x < hi {
        let width = (PI / (8.0 * phase_rate(alpha, lambda, x) * refinement as f64)).min(0.25 / refinement as f64);
        if width < 1e-12 * hi.max(1.0) {
            return Err(Error::Quadrature(format!("panel width underflow at x = {x}")));
        }
        x = (x + width).min(hi);
        edges.push(x);
    }
    Ok(edges)
}

/// Partial pairings `I(X) = int_{-X}^{X} F(x) conj(phi(x)) dx` with
/// `F = psi_{parity}(lambda, alpha = omega)`, and the verdict on their limit.
pub fn pairing_partials<P>(
    lambda: Complex64,
    omega: f64,
    parity: Parity,
    phi: P,
    x_sequence: &[f64],
    ctl: &PairingControl,
) -> Result<ConvergenceVerdict>
where
    P: Fn(f64) -> Complex64 + Sync,
{
    if x_sequence.len() < 3 {
        return Err(Error::Validation("need at least three cutoffs".into()));
    }
    if x_sequence.windows(2).any(|w| !(w[1] > w[0])) || !(x_sequence[0] > 0.0) {
        return Err(Error::Validation("cutoffs must be positive and increasing".into()));
    }
    if ctl.refinement == 0 || ctl.nodes == 0 {
        return Err(Error::Validation("refinement and node count must be positive".into()));
    }
    let p = EigenParams::with_positive_chirp(lambda, omega, parity)?;
    let rule = GaussLegendre::new(ctl.nodes).map_err(|e| Error::Quadrature(e.to_string()))?;
    let nodes = rule.as_node_weight_pairs();

    let symmetric = |x: f64| -> Result<Complex64> {
        Ok(eigenfunction(&p, x)? * phi(x).conj() + eigenfunction(&p, -x)? * phi(-x).conj())
    };

    let mut partials = Vec::with_capacity(x_sequence.len());
    let mut acc = Complex64::new(0.0, 0.0);
    let mut lo = 0.0;
    for &cut in x_sequence {
        let edges = panels(p.alpha(), lambda, lo, cut, ctl.refinement)?;
        let piece: Complex64 = edges
            .par_windows(2)
            .map(|w| -> Result<Complex64> {
                let (a, b) = (w[0], w[1]);
                let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
                let mut s = Complex64::new(0.0, 0.0);
                for &(t, wt) in nodes {
                    s += symmetric(mid + half * t)? * wt;
                }
                Ok(s * half)
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .sum();
        acc += piece;
        partials.push((cut, acc));
        lo = cut;
    }
    Ok(classify(partials, ctl))
}

fn classify(partials: Vec<(f64, Complex64)>, ctl: &PairingControl) -> ConvergenceVerdict {
    let incs: Vec<(f64, f64)> = partials.windows(2).map(|w| (w[1].0, (w[1].1 - w[0].1).norm())).collect();
    let slope = fit_slope(&incs);
    let max_abs = partials.iter().fold(0.0f64, |m, (_, v)| m.max(v.norm()));
    let last = incs.last().map(|p| p.1).unwrap_or(0.0);
    let decreasing = incs.len() >= 2 && incs[incs.len() - 1].1 <= incs[incs.len() - 2].1;
    let growing = partials.last().unwrap().1.norm() > partials[0].1.norm();

    let verdict = if slope < -ctl.slope_margin || (decreasing && last <= ctl.rel_increment_tol * max_abs) {
        Verdict::Converged
    } else if slope > ctl.slope_margin && growing {
        Verdict::Diverged
    } else {
        Verdict::Inconclusive
    };
    ConvergenceVerdict { verdict, partials, increment_slope: slope }
}

/// Least-squares slope of `ln y` against `ln x`; zero increments are skipped.
fn fit_slope(points: &[(f64, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = points.iter().filter(|p| p.1 > 0.0).map(|&(x, y)| (x.ln(), y.ln())).collect();
    if pts.len() < 2 {
        return f64::NEG_INFINITY;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

/// `X_k = x0 2^k`, `k = 0..count`.
pub fn doubling_sequence(x0: f64, count: usize) -> Vec<f64> {
    (0..count).map(|k| x0 * 2f64.powi(k as i32)).collect()
}
