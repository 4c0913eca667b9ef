//! Chirp-z evaluation of scaled Fourier sums on arbitrary uniform grids.
//!
//! Computes `G_m = sum_k v_k exp(-i s u_m x_k)` with `x_k = x0 + k dx` and
//! `u_m = u0 + m du` in `O((N + M) log(N + M))` by Bluestein's identity
//! `mk = (m^2 + k^2 - (m - k)^2) / 2`.

use num_complex::Complex64;
use rustfft::FftPlanner;

#[derive(Debug, Clone, Copy)]
pub(crate) struct Axis {
    pub start: f64,
    pub step: f64,
    pub len: usize,
}

fn cis(phase: f64) -> Complex64 {
    Complex64::from_polar(1.0, phase)
}

/// `exp(i theta j^2 / 2)`; `j^2` is exact in f64 for any practical length.
fn quad_chirp(theta: f64, j: i64) -> Complex64 {
    let j2 = (j * j) as f64;
    cis(0.5 * theta * j2)
}

pub(crate) fn scaled_fourier(values: &[Complex64], x: Axis, u: Axis, s: f64) -> Vec<Complex64> {
    let n = x.len;
    let m = u.len;
    debug_assert_eq!(values.len(), n);
    if n == 0 || m == 0 {
        return vec![Complex64::new(0.0, 0.0); m];
    }
    let theta = s * u.step * x.step;
    let len = (n + m - 1).next_power_of_two();

    let mut y = vec![Complex64::new(0.0, 0.0); len];
    for (k, (&v, slot)) in values.iter().zip(y.iter_mut()).enumerate() {
        let kf = k as f64;
        *slot = v * cis(-s * u.start * kf * x.step) * quad_chirp(-theta, k as i64);
    }
    let mut h = vec![Complex64::new(0.0, 0.0); len];
    for (j, slot) in h.iter_mut().enumerate().take(m) {
        *slot = quad_chirp(theta, j as i64);
    }
    for j in 1..n {
        h[len - j] = quad_chirp(theta, j as i64);
    }

    let mut planner = FftPlanner::<f64>::new();
    let fwd = planner.plan_fft_forward(len);
    let inv = planner.plan_fft_inverse(len);
    fwd.process(&mut y);
    fwd.process(&mut h);
    for (a, b) in y.iter_mut().zip(&h) {
        *a *= b;
    }
    inv.process(&mut y);
    let norm = 1.0 / len as f64;

    (0..m)
        .map(|j| {
            let um = u.start + j as f64 * u.step;
            y[j] * norm * quad_chirp(-theta, j as i64) * cis(-s * um * x.start)
        })
        .collect()
}
