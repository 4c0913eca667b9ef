//! Property checks across modules.

mod common;

use common::{c, gaussian};
use gauss_quad::GaussLegendre;
use iho_core::lct::*;
use iho_core::logmap::*;
use iho_core::oscillator::*;
use iho_core::rigged::*;
use iho_core::specfun::*;
use iho_core::wronskian::*;
use iho_core::UniformGrid;
use num_complex::Complex64;
use proptest::prelude::*;

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm())
}

fn complex(re: std::ops::Range<f64>, im: std::ops::Range<f64>) -> impl Strategy<Value = Complex64> {
    (re, im).prop_map(|(r, i)| c(r, i))
}

fn disk(radius: f64) -> impl Strategy<Value = Complex64> {
    (0.0..radius, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn series_reproduces_exponential(b in complex(0.3..5.0, -3.0..3.0), z in disk(20.0)) {
        let v = kummer_eval(&KummerParams::new(b, b).unwrap(), z, &SeriesControl::default()).unwrap();
        prop_assert!(rel(v, z.exp()) <= 1e-10);
    }

    #[test]
    fn kummer_first_formula(a in complex(-3.0..3.0, -3.0..3.0), b in complex(0.3..4.0, -2.0..2.0), z in disk(20.0)) {
        let ctl = SeriesControl::default();
        let lhs = (-z).exp() * kummer_eval(&KummerParams::new(a, b).unwrap(), z, &ctl).unwrap();
        let rhs = kummer_eval(&KummerParams::new(b - a, b).unwrap(), -z, &ctl).unwrap();
        prop_assert!(rel(lhs, rhs) <= 1e-9);
    }

    #[test]
    fn term_ratio_is_the_recurrence(a in complex(-3.0..3.0, -3.0..3.0), b in complex(0.3..4.0, -2.0..2.0), z in disk(30.0), n in 0usize..200) {
        let p = KummerParams::new(a, b).unwrap();
        let nf = n as f64;
        prop_assert_eq!(kummer_term_ratio(&p, z, n), (a + nf) * z / ((b + nf) * (nf + 1.0)));
    }

    #[test]
    fn gamma_recurrence(z in complex(-5.0..6.0, -6.0..6.0)) {
        prop_assume!((z - z.re.round()).norm() > 1e-3 || z.re > 0.5);
        let g = complex_gamma(z).unwrap();
        let g1 = complex_gamma(z + 1.0).unwrap();
        prop_assert!(rel(g1, z * g) <= 1e-12);
    }

    #[test]
    fn eigenfunction_parity_is_exact(lambda in complex(-4.0..4.0, -4.0..4.0), omega in 0.3..3.0f64, x in 0.0..6.0f64, neg in any::<bool>()) {
        let alpha = if neg { -omega } else { omega };
        let even = EigenParams::new(lambda, alpha, omega, Parity::Even).unwrap();
        let odd = even.with_parity(Parity::Odd);
        prop_assert_eq!(psi_even(&even, -x).unwrap(), psi_even(&even, x).unwrap());
        prop_assert_eq!(psi_odd(&odd, -x).unwrap(), -psi_odd(&odd, x).unwrap());
    }

    #[test]
    fn wronskian_is_antisymmetric(k in 0.1..5.0f64, q in -2.0..2.0f64, x in -3.0..3.0f64) {
        let f = |t: f64| c((k * t).sin(), q * t * t);
        let g = |t: f64| Complex64::from_polar((-t * t).exp(), q * t);
        prop_assert_eq!(wronskian_numeric(f, g, x, 1e-4), -wronskian_numeric(g, f, x, 1e-4));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lct_is_unitary(a in -2.0..2.0f64, b in 0.2..2.5f64, flip in any::<bool>(), beta in -2.0..2.0f64) {
        let b = if flip { -b } else { b };
        let m = SL2Matrix::new(a, b, (a * beta - 1.0) / b, beta).unwrap();
        let grid = UniformGrid::centered(0.02, 2048).unwrap();
        let f = gaussian(grid, 0.5, 1.2, 1.0);
        let g = gaussian(grid, -0.3, 0.7, -2.0);
        prop_assert!(unitarity_check(&m, &f, &g).unwrap() <= 1e-6);
    }

    #[test]
    fn fast_path_matches_direct(a in -2.0..2.0f64, b in 0.2..2.5f64, beta in -2.0..2.0f64) {
        let m = SL2Matrix::new(a, b, (a * beta - 1.0) / b, beta).unwrap();
        let grid = UniformGrid::centered(0.02, 1024).unwrap();
        let f = gaussian(grid, 0.2, 1.0, 3.0);
        let fast = lct_apply_fast(&m, &f).unwrap();
        let direct = lct_apply_direct(&m, &f, fast.grid()).unwrap();
        prop_assert!(fast.max_abs_difference(&direct).unwrap() <= 1e-8);
    }
}

#[test]
fn psi_alpha_matches_quadrature() {
    // t = s^2 removes the t^alpha singularity: Psi = int_0^inf 2 s^{2 alpha + 1} e^{-s^4 + v s^2} ds
    let rule = GaussLegendre::new(30).unwrap();
    let ctl = SeriesControl::default();
    for alpha in [-0.5, 0.0, 0.5, 1.0] {
        for k in 0..=12 {
            let v = -3.0 + 0.5 * k as f64;
            let integrand = |s: f64| 2.0 * s.powf(2.0 * alpha + 1.0) * (-s.powi(4) + v * s * s).exp();
            let quad: f64 = (0..40).map(|j| rule.integrate(0.1 * j as f64, 0.1 * (j + 1) as f64, integrand)).sum();
            let got = psi_alpha(c(alpha, 0.0), c(v, 0.0), &ctl).unwrap();
            assert!(rel(got, c(quad, 0.0)) <= 1e-8, "alpha {alpha} v {v}: {got} vs {quad}");
        }
    }
}

#[test]
fn basis_is_independent_at_origin() {
    for re in [-4.0, -1.5, 0.0, 2.5, 4.0] {
        for im in [-4.0, 0.0, 3.0] {
            for alpha in [1.0, -2.0] {
                let d = basis_determinant(c(re, im), alpha, alpha.abs(), 0.0, 1e-3).unwrap();
                assert!(d.norm() >= 0.5, "{d}");
                assert!((d - 1.0).norm() < 1e-5, "{d}");
            }
        }
    }
}

#[test]
fn closed_wronskians_match_finite_differences() {
    let (a, b, alpha) = (c(0.7, 0.0), c(-1.2, 0.0), 1.5);
    for x in [2.0, 5.0, 10.0, 50.0] {
        let h = 1e-3 / x;
        for signs in BasisSigns::ALL {
            let closed = basis_wronskian_closed(signs, a, b, alpha, x).unwrap();
            let numeric = wronskian_numeric(
                |t| basis_function(signs.s1, b, alpha, t),
                |t| basis_function(signs.s2, a, alpha, t),
                x,
                h,
            );
            let scale = closed.norm().max(2.0 * alpha / x);
            assert!((closed - numeric).norm() <= 1e-4 * scale, "x {x} {signs:?}: {closed} vs {numeric}");
        }
    }
}

#[test]
fn delta_probe_approaches_one_for_three_densities() {
    let amp = |b: f64| amplitude(&EigenParams::with_positive_chirp(c(b, 0.0), 1.0, Parity::Odd)?);
    for (a, s) in [(1.0, 1.0), (2.0, 0.8), (-1.5, 1.2)] {
        let rho = move |b: f64| (-(b - a) * (b - a) / (2.0 * s * s)).exp();
        let grid = symmetric_b_grid(a, 8.0 * s, 4000).unwrap();
        let errs: Vec<f64> = [1e2, 1e3, 1e4]
            .iter()
            .map(|&x| (delta_normalization_probe(a, 1.0, amp, rho, x, &grid).unwrap() - 1.0).abs())
            .collect();
        assert!(errs[2] < errs[0] && errs[2] < 0.01, "a {a}: {errs:?}");
    }
}

#[test]
fn u_exp_preserves_norm_of_smooth_functions() {
    let spec = HalfLineSpec::new(-14.0, 3.5, 6000).unwrap();
    let tests: [fn(f64) -> Complex64; 3] = [
        |x| c((-x * x).exp(), 0.0),
        |x| Complex64::from_polar((-(x - 1.0) * (x - 1.0)).exp(), 2.0 * x),
        |x| c(x * (-0.5 * x * x).exp(), (-2.0 * x * x).exp()),
    ];
    let rule = GaussLegendre::new(40).unwrap();
    for f in tests {
        let g = u_exp_forward_fn(|x| Ok(f(x)), &spec).unwrap();
        let norm2: f64 = (0..80).map(|j| rule.integrate(-10.0 + 0.25 * j as f64, -9.75 + 0.25 * j as f64, |x| f(x).norm_sqr())).sum();
        let ratio = g.l2_norm() / norm2.sqrt();
        assert!((ratio - 1.0).abs() <= 1e-4, "{ratio}");
    }
}

#[test]
fn pipeline_frequency_is_linear_in_lambda() {
    let window = PlateauWindow::default();
    let spec = HalfLineSpec::new(-2.3, 2.8, 512).unwrap();
    let grid = UniformGrid::from_range(-14.5, 14.5, 5801).unwrap();
    for omega in [1.0, 2.0] {
        let peaks: Vec<f64> = [-2.0, 0.0, 2.0]
            .iter()
            .map(|&l| {
                let p = EigenParams::with_positive_chirp(c(l, 0.0), omega, Parity::Even).unwrap();
                let psi = iho_core::SampledFunction::try_from_fn(grid, |x| {
                    Ok::<_, iho_core::Error>(window.eval(x) * psi_even(&p, x)?)
                })
                .unwrap();
                let out = spectrum_map_pipeline(omega, 1.0, &psi, &spec).unwrap();
                peak_frequency(&out.plus, 16).frequency
            })
            .collect();
        let slope = (peaks[2] - peaks[0]) / 4.0;
        assert!((slope - 1.0 / (2.0 * omega)).abs() < 0.05, "omega {omega}: {peaks:?}");
        assert!((peaks[1] - peaks[0] - (peaks[2] - peaks[1])).abs() < 0.05);
    }
}

#[test]
fn divergence_whenever_growth_beats_eps() {
    let xs = doubling_sequence(8.0, 6);
    let eps = 0.15;
    for lambda in [c(2.0, 0.8), c(-1.0, -0.6)] {
        assert!(growth_exponent(lambda, 1.0) > eps);
        let r = pairing_partials(lambda, 1.0, Parity::Even, |x| phi_chirp_matched(eps, 1.0, lambda, x), &xs, &PairingControl::default())
            .unwrap();
        assert_eq!(r.verdict, Verdict::Diverged, "{lambda}: {:?}", r.increment_slope);
        assert!((r.increment_slope - (growth_exponent(lambda, 1.0) - eps)).abs() < 0.06, "{}", r.increment_slope);
    }
}
