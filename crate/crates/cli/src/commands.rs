use crate::args::*;
use crate::output::Table;
use iho_core::lct::{self, SL2Matrix};
use iho_core::logmap::{self, HalfLineSpec, PlateauWindow};
use iho_core::oscillator::{self, DifferenceScheme, EigenParams, Parity};
use iho_core::rigged::{self, PairingControl, Verdict};
use iho_core::wronskian;
use iho_core::{Error, Result, SampledFunction, UniformGrid};
use num_complex::Complex64;
use serde_json::{json, Value};

/// Table, parameters for the JSON header, and whether the run met its
/// requested bound or produced a usable verdict.
pub struct Report {
    pub table: Table,
    pub params: Value,
    pub failure: Option<String>,
}

impl Report {
    fn ok(table: Table, params: Value) -> Self {
        Report { table, params, failure: None }
    }
}

fn cjson(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

fn mjson(m: &SL2Matrix) -> Value {
    json!([m.a(), m.b(), m.alpha(), m.beta()])
}

fn gjson(g: &UniformGrid) -> Value {
    json!({ "min": g.min(), "max": g.max(), "count": g.len() })
}

fn parity_name(p: Parity) -> &'static str {
    match p {
        Parity::Even => "even",
        Parity::Odd => "odd",
    }
}

fn sample_rows(table: &mut Table, f: &SampledFunction, plot: bool) {
    for (x, v) in f.grid().points().zip(f.values()) {
        if plot {
            table.push(vec![x.into(), v.norm().into(), v.arg().into()]);
        } else {
            table.push(vec![x.into(), (*v).into()]);
        }
    }
}

fn sample_columns(plot: bool) -> Table {
    if plot {
        Table::new(&["x", "abs", "arg"])
    } else {
        Table::new(&["x", "value"])
    }
}

pub fn eval(a: &EvalArgs) -> Result<Report> {
    let alpha = if a.negative_chirp { -a.omega } else { a.omega };
    let p = EigenParams::new(a.lambda, alpha, a.omega, a.parity)?;
    let f = SampledFunction::try_from_fn(a.grid, |x| oscillator::eigenfunction(&p, x))?;
    let mut table = sample_columns(a.emit_plot_data);
    sample_rows(&mut table, &f, a.emit_plot_data);
    let params = json!({
        "parity": parity_name(a.parity), "omega": a.omega, "alpha": alpha,
        "lambda": cjson(a.lambda), "grid": gjson(&a.grid),
    });
    Ok(Report::ok(table, params))
}

pub fn residual(a: &ResidualArgs) -> Result<Report> {
    let scheme = match a.scheme {
        Scheme::Central => DifferenceScheme::Central,
        Scheme::Richardson => DifferenceScheme::Richardson,
    };
    let mut table = Table::new(&["lambda_re", "lambda_im", "residual"]);
    let mut worst = 0.0f64;
    for re in a.lambda_re.points() {
        for im in a.lambda_im.points() {
            let lambda = Complex64::new(re, im);
            let p = EigenParams::with_positive_chirp(lambda, a.omega, a.parity)?;
            let r = oscillator::ode_residual_with(|x| oscillator::eigenfunction(&p, x), lambda, a.omega, &a.grid, a.h, scheme)?;
            worst = worst.max(r);
            table.push(vec![re.into(), im.into(), r.into()]);
        }
    }
    let params = json!({
        "parity": parity_name(a.parity), "omega": a.omega, "lambda_re": gjson(&a.lambda_re),
        "lambda_im": gjson(&a.lambda_im), "grid": gjson(&a.grid), "h": a.h,
        "scheme": format!("{:?}", a.scheme).to_lowercase(), "max_residual": a.max_residual,
    });
    let failure = a
        .max_residual
        .filter(|&bound| worst > bound)
        .map(|bound| format!("largest residual {worst:.3e} exceeds {bound:.3e}"));
    Ok(Report { table, params, failure })
}

fn gaussian(input: &GaussianInput) -> Result<SampledFunction> {
    if !(input.width > 0.0) {
        return Err(Error::Validation("width must be positive".into()));
    }
    let (c, s, k) = (input.center, input.width, input.freq);
    SampledFunction::from_fn(input.grid, |x| Complex64::from_polar((-(x - c) * (x - c) / (2.0 * s * s)).exp(), k * x))
}

fn input_json(input: &GaussianInput) -> Value {
    json!({ "grid": gjson(&input.grid), "center": input.center, "width": input.width, "freq": input.freq })
}

pub fn lct(a: &LctArgs) -> Result<Report> {
    let f = gaussian(&a.input)?;
    let out = match a.method {
        Method::Fast => lct::lct_apply_fast(&a.matrix, &f)?,
        Method::Direct => {
            let u = lct::critical_output_grid(&a.matrix, f.grid())?;
            lct::lct_apply_direct(&a.matrix, &f, &u)?
        }
    };
    let mut table = sample_columns(a.emit_plot_data);
    sample_rows(&mut table, &out, a.emit_plot_data);
    let params = json!({
        "matrix": mjson(&a.matrix), "input": input_json(&a.input),
        "method": format!("{:?}", a.method).to_lowercase(),
    });
    Ok(Report::ok(table, params))
}

fn bound_failure(name: &str, value: f64, tol: Option<f64>) -> Option<String> {
    tol.filter(|&t| value > t).map(|t| format!("{name} {value:.3e} exceeds {t:.3e}"))
}

pub fn group_check(a: &GroupArgs) -> Result<Report> {
    let f = gaussian(&a.input)?;
    let d = lct::group_law_check(&a.second, &a.first, &f)?;
    let mut table = Table::new(&["defect", "sign"]);
    table.push(vec![d.defect.into(), (d.sign as f64).into()]);
    let params = json!({
        "first": mjson(&a.first), "second": mjson(&a.second), "input": input_json(&a.input), "tol": a.tol,
    });
    Ok(Report { table, params, failure: bound_failure("composition defect", d.defect, a.tol) })
}

pub fn unitarity(a: &UnitarityArgs) -> Result<Report> {
    let f = gaussian(&a.input)?;
    // second input: first Hermite-like profile on the same envelope
    let g = f.map(|x, v| v * (x - a.input.center) / a.input.width);
    let defect = lct::unitarity_check(&a.matrix, &f, &g)?;
    let norm = lct::lct_apply_fast(&a.matrix, &f)?.l2_norm() / f.l2_norm();
    let mut table = Table::new(&["defect", "norm_ratio"]);
    table.push(vec![defect.into(), norm.into()]);
    let params = json!({ "matrix": mjson(&a.matrix), "input": input_json(&a.input), "tol": a.tol });
    Ok(Report { table, params, failure: bound_failure("unitarity defect", defect, a.tol) })
}

pub fn spectrum_map(a: &SpectrumArgs) -> Result<Report> {
    let window = PlateauWindow::new(a.window.0, a.window.1)?;
    let lambda = Complex64::new(2.0 * a.omega * a.gamma, 0.0);
    let m = lct::iho_matrix(a.omega, a.a_param)?;
    let psi = match a.input {
        SpectrumInput::Wlemma => {
            SampledFunction::try_from_fn(a.grid, |x| Ok::<_, Error>(window.eval(x) * logmap::wlemma_eigenfunction(&m, a.gamma, x)?))?
        }
        SpectrumInput::Even | SpectrumInput::Odd => {
            let parity = if a.input == SpectrumInput::Even { Parity::Even } else { Parity::Odd };
            let p = EigenParams::with_positive_chirp(lambda, a.omega, parity)?;
            SampledFunction::try_from_fn(a.grid, |x| Ok::<_, Error>(window.eval(x) * oscillator::eigenfunction(&p, x)?))?
        }
    };
    let spec = HalfLineSpec::new(a.t_grid.min(), a.t_grid.max(), a.t_grid.len())?;
    let out = logmap::spectrum_map_pipeline(a.omega, a.a_param, &psi, &spec)?;
    let mut table = Table::new(&["channel", "peak", "expected", "bin_width", "energy"]);
    for (name, ch) in out.channels() {
        let pk = logmap::peak_frequency(ch, a.pad);
        table.push(vec![name.into(), pk.frequency.into(), a.gamma.into(), pk.bin_width.into(), pk.energy.into()]);
    }
    let params = json!({
        "omega": a.omega, "gamma": a.gamma, "lambda": lambda.re, "input": format!("{:?}", a.input).to_lowercase(),
        "a_param": a.a_param, "grid": gjson(&a.grid), "t_grid": gjson(&a.t_grid),
        "window": [a.window.0, a.window.1], "pad": a.pad,
    });
    Ok(Report::ok(table, params))
}

pub fn wronskian_probe(a: &WronskianArgs) -> Result<Report> {
    if !(a.sigma > 0.0) || !(a.span > 0.0) {
        return Err(Error::Validation("sigma and span must be positive".into()));
    }
    let (centre, s, omega, parity) = (a.a, a.sigma, a.omega, a.parity);
    let amp = |b: f64| oscillator::amplitude(&EigenParams::with_positive_chirp(Complex64::new(b, 0.0), omega, parity)?);
    let rho = |b: f64| (-(b - centre) * (b - centre) / (2.0 * s * s)).exp();
    let grid = wronskian::symmetric_b_grid(centre, a.span * s, a.n_half)?;
    let mut table = Table::new(&["x_probe", "ratio"]);
    for &x in &a.x_probe {
        let r = wronskian::delta_normalization_probe(centre, omega, amp, rho, x, &grid)?;
        table.push(vec![x.into(), r.into()]);
    }
    let params = json!({
        "a": a.a, "sigma": s, "omega": omega, "parity": parity_name(parity),
        "x_probe": a.x_probe, "span": a.span, "n_half": a.n_half,
    });
    Ok(Report::ok(table, params))
}

pub fn rigged_check(a: &RiggedArgs) -> Result<Report> {
    let (eps, omega, lambda) = (a.eps, a.omega, a.lambda);
    rigged::RiggedWeight::exponent(eps)?;
    let xs = rigged::doubling_sequence(a.x0, a.count);
    let ctl = PairingControl { refinement: a.refinement, ..PairingControl::default() };
    let r = match a.phi {
        Phi::Plain => rigged::pairing_partials(lambda, omega, a.parity, |x| Complex64::new(rigged::phi_test_family(eps, x), 0.0), &xs, &ctl)?,
        Phi::Matched => rigged::pairing_partials(lambda, omega, a.parity, |x| rigged::phi_chirp_matched(eps, omega, lambda, x), &xs, &ctl)?,
    };
    let verdict = r.verdict.to_string();
    let mut table = Table::new(&["x_cut", "partial", "verdict", "increment_slope"]);
    for (x, v) in &r.partials {
        table.push(vec![(*x).into(), (*v).into(), verdict.as_str().into(), r.increment_slope.into()]);
    }
    let params = json!({
        "lambda": cjson(lambda), "omega": omega, "parity": parity_name(a.parity), "eps": eps,
        "phi": format!("{:?}", a.phi).to_lowercase(), "x0": a.x0, "count": a.count, "refinement": a.refinement,
        "verdict": verdict, "growth_exponent": rigged::growth_exponent(lambda, omega),
    });
    let failure = (r.verdict == Verdict::Inconclusive).then(|| "verdict is Inconclusive".to_string());
    Ok(Report { table, params, failure })
}
