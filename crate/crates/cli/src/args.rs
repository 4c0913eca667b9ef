use clap::{Args, Parser, Subcommand, ValueEnum};
use iho_core::lct::SL2Matrix;
use iho_core::oscillator::Parity;
use iho_core::UniformGrid;
use num_complex::Complex64;
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "iho", version, about = "Inverted harmonic oscillator: eigenfunctions, canonical transforms and spectral probes")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Csv)]
    pub format: Format,

    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample an eigenfunction psi_P or psi_N on a grid.
    Eval(EvalArgs),
    /// ODE residual over a grid of eigenvalues.
    Residual(ResidualArgs),
    /// Apply a linear canonical transform to a Gaussian.
    Lct(LctArgs),
    /// Compare W_{A2} W_{A1} f with W_{A2 A1} f.
    GroupCheck(GroupArgs),
    /// |<W_A f, W_A g> - <f, g>| for two Gaussian-envelope inputs.
    Unitarity(UnitarityArgs),
    /// Transform an eigenfunction to log coordinates and locate its spectral peak.
    SpectrumMap(SpectrumArgs),
    /// Smeared Wronskian ratio at a list of probe points.
    WronskianProbe(WronskianArgs),
    /// Convergence verdict of the pairing of an eigenfunction with a test function.
    RiggedCheck(RiggedArgs),
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long, value_parser = parse_parity)]
    pub parity: Parity,
    #[arg(long)]
    pub omega: f64,
    /// Complex eigenvalue, e.g. `2`, `0.5i`, `1-2i`.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub lambda: Complex64,
    /// Use `alpha = -omega` instead of `+omega`.
    #[arg(long)]
    pub negative_chirp: bool,
    /// `min:max:count`.
    #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
    pub grid: UniformGrid,
    /// Emit `x, abs, arg` instead of `x, re, im`.
    #[arg(long)]
    pub emit_plot_data: bool,
}

#[derive(Debug, Args)]
pub struct ResidualArgs {
    #[arg(long, value_parser = parse_parity, default_value = "even")]
    pub parity: Parity,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    /// Real parts of lambda, `min:max:count`.
    #[arg(long, value_parser = parse_grid, allow_hyphen_values = true, default_value = "-4:4:5")]
    pub lambda_re: UniformGrid,
    /// Imaginary parts of lambda, `min:max:count`.
    #[arg(long, value_parser = parse_grid, allow_hyphen_values = true, default_value = "-4:4:5")]
    pub lambda_im: UniformGrid,
    #[arg(long, value_parser = parse_grid, allow_hyphen_values = true, default_value = "-4:4:801")]
    pub grid: UniformGrid,
    #[arg(long, default_value_t = 1e-3)]
    pub h: f64,
    #[arg(long, value_enum, default_value_t = Scheme::Central)]
    pub scheme: Scheme,
    /// Exit with status 1 if any residual exceeds this bound.
    #[arg(long)]
    pub max_residual: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scheme {
    Central,
    Richardson,
}

#[derive(Debug, Args)]
pub struct GaussianInput {
    /// Input grid, `min:max:count`.
    #[arg(long, value_parser = parse_grid, allow_hyphen_values = true, default_value = "-20:20:4096")]
    pub grid: UniformGrid,
    /// Centre of the Gaussian input.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub center: f64,
    /// Standard deviation of the Gaussian input.
    #[arg(long, default_value_t = 1.0)]
    pub width: f64,
    /// Carrier wavenumber of the Gaussian input.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub freq: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Fast,
    Direct,
}

#[derive(Debug, Args)]
pub struct LctArgs {
    /// `a,b,alpha,beta` with unit determinant.
    #[arg(long, value_parser = parse_matrix, allow_hyphen_values = true)]
    pub matrix: SL2Matrix,
    #[command(flatten)]
    pub input: GaussianInput,
    /// Chirp-Fourier-chirp or direct quadrature; both use the critical output grid.
    #[arg(long, value_enum, default_value_t = Method::Fast)]
    pub method: Method,
    #[arg(long)]
    pub emit_plot_data: bool,
}

#[derive(Debug, Args)]
pub struct GroupArgs {
    /// First transform applied, `a,b,alpha,beta`.
    #[arg(long, value_parser = parse_matrix, allow_hyphen_values = true)]
    pub first: SL2Matrix,
    /// Second transform applied.
    #[arg(long, value_parser = parse_matrix, allow_hyphen_values = true)]
    pub second: SL2Matrix,
    #[command(flatten)]
    pub input: GaussianInput,
    /// Exit with status 1 if the defect exceeds this bound.
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct UnitarityArgs {
    #[arg(long, value_parser = parse_matrix, allow_hyphen_values = true)]
    pub matrix: SL2Matrix,
    #[command(flatten)]
    pub input: GaussianInput,
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpectrumInput {
    /// Eigenfunction built from the log-coordinate plane wave of frequency gamma.
    Wlemma,
    Even,
    Odd,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    /// Target frequency; the eigenvalue is `2 omega gamma`.
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: f64,
    #[arg(long, value_enum, default_value_t = SpectrumInput::Wlemma)]
    pub input: SpectrumInput,
    /// Free parameter of the transform matrix.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub a_param: f64,
    #[arg(long, value_parser = parse_grid, allow_hyphen_values = true, default_value = "-14.5:14.5:5801")]
    pub grid: UniformGrid,
    /// Log-coordinate grid, `t_min:t_max:count`.
    #[arg(long, value_parser = parse_grid, allow_hyphen_values = true, default_value = "-2.3:2.8:512")]
    pub t_grid: UniformGrid,
    /// Plateau window `x0:x1`.
    #[arg(long, value_parser = parse_pair, default_value = "8:14")]
    pub window: (f64, f64),
    #[arg(long, default_value_t = 16)]
    pub pad: usize,
}

#[derive(Debug, Args)]
pub struct WronskianArgs {
    /// Spectral label at which the density is centred.
    #[arg(long, allow_hyphen_values = true)]
    pub a: f64,
    /// Width of the Gaussian density.
    #[arg(long)]
    pub sigma: f64,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    #[arg(long, value_parser = parse_parity, default_value = "even")]
    pub parity: Parity,
    /// Comma-separated probe points.
    #[arg(long, value_delimiter = ',', default_value = "1e2,1e3,1e4")]
    pub x_probe: Vec<f64>,
    /// Half-width of the b grid in units of sigma.
    #[arg(long, default_value_t = 8.0)]
    pub span: f64,
    /// Points per half of the b grid.
    #[arg(long, default_value_t = 4000)]
    pub n_half: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Phi {
    /// `(1 + x^2)^{-1/4 - eps/2}`.
    Plain,
    /// Plain family times the conjugate chirp of the growing branch.
    Matched,
}

#[derive(Debug, Args)]
pub struct RiggedArgs {
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub lambda: Complex64,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    #[arg(long, value_parser = parse_parity, default_value = "even")]
    pub parity: Parity,
    #[arg(long, default_value_t = 0.15)]
    pub eps: f64,
    #[arg(long, value_enum, default_value_t = Phi::Matched)]
    pub phi: Phi,
    /// First cutoff; later ones double it.
    #[arg(long, default_value_t = 8.0)]
    pub x0: f64,
    #[arg(long, default_value_t = 6)]
    pub count: usize,
    #[arg(long, default_value_t = 1)]
    pub refinement: usize,
}

pub fn parse_parity(s: &str) -> Result<Parity, String> {
    s.parse().map_err(|e: iho_core::Error| e.to_string())
}

fn parse_f64(s: &str) -> Result<f64, String> {
    s.trim().parse::<f64>().map_err(|_| format!("'{s}' is not a number"))
}

/// `min:max:count` with `count >= 2`.
pub fn parse_grid(s: &str) -> Result<UniformGrid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("expected min:max:count, got '{s}'"));
    }
    let (min, max) = (parse_f64(parts[0])?, parse_f64(parts[1])?);
    let count: usize = parts[2].trim().parse().map_err(|_| format!("'{}' is not a count", parts[2]))?;
    if count < 2 {
        return Err("grid count must be at least 2".into());
    }
    UniformGrid::from_range(min, max, count).map_err(|e| e.to_string())
}

pub fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected x0:x1, got '{s}'"))?;
    Ok((parse_f64(a)?, parse_f64(b)?))
}

pub fn parse_matrix(s: &str) -> Result<SL2Matrix, String> {
    let v: Vec<f64> = s.split(',').map(parse_f64).collect::<Result<_, _>>()?;
    if v.len() != 4 {
        return Err(format!("expected a,b,alpha,beta, got '{s}'"));
    }
    SL2Matrix::new(v[0], v[1], v[2], v[3]).map_err(|e| e.to_string())
}

/// Accepts `x`, `yi`, `x+yi`, `x-yi`, with `i` or `j` and optional exponents.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("'{s}' is not a complex number");
    let Some(body) = t.strip_suffix(['i', 'j']) else {
        return parse_f64(&t).map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => parse_f64(other).map_err(|_| bad())?,
    };
    Ok(Complex64::new(parse_f64(re).map_err(|_| bad())?, im))
}
