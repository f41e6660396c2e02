//! Command-line front end for the kernel evaluators and verification suites.
//!
//! Exit codes: 0 on success, 1 when a verification suite reports a residual
//! above tolerance, 2 on configuration errors. Numeric output is printed
//! with 17 significant digits so runs are byte-for-byte reproducible.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::BigInt;

use dunkl_a2::poly_oracle::{self, Rational};
use dunkl_a2::types::{ChamberPoint, MultiplicityParam, Point3};
use dunkl_a2::verify::{self, SuiteReport};
use dunkl_a2::{kernels, DunklError};

#[derive(Parser)]
#[command(
    name = "dunkl-a2",
    about = "Rank-two Dunkl kernel, generalized Bessel function and intertwining density",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate E, J (and the density F when --x/--y are given) at a point.
    Eval(EvalArgs),
    /// Emit the density (or the kernel) over a rectangular grid as CSV.
    Grid(GridArgs),
    /// Run a named identity suite and report per-check residuals.
    Verify(VerifyArgs),
    /// Evaluate the exact-series reference values with tail estimates.
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Field {
    F,
    E,
}

#[derive(Args)]
struct EvalArgs {
    /// Multiplicity parameter (positive real)
    #[arg(long, allow_hyphen_values = true)]
    k: f64,
    /// Spectral point, three comma-separated values summing to zero
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    /// Evaluation argument, three comma-separated values
    #[arg(long, allow_hyphen_values = true)]
    mu: String,
    /// First density coordinate
    #[arg(long, allow_hyphen_values = true)]
    x: Option<f64>,
    /// Second density coordinate
    #[arg(long, allow_hyphen_values = true)]
    y: Option<f64>,
    #[arg(long, default_value_t = 64)]
    quad_order: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct GridArgs {
    #[arg(long, allow_hyphen_values = true)]
    k: f64,
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    /// Which field to tabulate: the density f over (x, y) or the kernel e
    /// over a mu-grid
    #[arg(long, value_enum, default_value_t = Field::F)]
    field: Field,
    /// x range as min:max:steps
    #[arg(long, allow_hyphen_values = true)]
    x_range: Option<String>,
    /// y range as min:max:steps
    #[arg(long, allow_hyphen_values = true)]
    y_range: Option<String>,
    /// mu1 range as min:max:steps (kernel grids)
    #[arg(long, allow_hyphen_values = true)]
    mu1_range: Option<String>,
    /// mu2 range as min:max:steps (kernel grids)
    #[arg(long, allow_hyphen_values = true)]
    mu2_range: Option<String>,
    /// mu3 range as min:max:steps (kernel grids)
    #[arg(long, allow_hyphen_values = true)]
    mu3_range: Option<String>,
    #[arg(long, default_value_t = 64)]
    quad_order: usize,
}

#[derive(Args)]
struct VerifyArgs {
    /// bessel | kernels | eigen | lemma1 | opdam | derivation | all
    #[arg(long)]
    suite: String,
    /// Multiplicity; rational like 1/2 or decimal (exact binary value used
    /// by the series suites)
    #[arg(long, allow_hyphen_values = true)]
    k: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    #[arg(long, default_value_t = 64)]
    quad_order: usize,
    #[arg(long, default_value_t = 6)]
    series_degree: usize,
}

#[derive(Args)]
struct OracleArgs {
    /// Multiplicity as a rational p/q or a decimal
    #[arg(long, allow_hyphen_values = true)]
    k: String,
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    #[arg(long, allow_hyphen_values = true)]
    mu: String,
    #[arg(long, default_value_t = 12)]
    series_degree: usize,
    /// Requested tolerance the tail estimate is compared against
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Also print the per-degree series contributions
    #[arg(long, default_value_t = false)]
    per_degree: bool,
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Eval(args) => cmd_eval(args),
        Command::Grid(args) => cmd_grid(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Oracle(args) => cmd_oracle(args),
    };
    match outcome {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads() {
    if let Ok(value) = std::env::var("DUNKL_A2_THREADS") {
        if let Ok(n) = value.parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
        }
    }
}

/// 17 significant digits; fixed formatting for reproducible output.
fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

fn parse_triple(text: &str, what: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("{what} must be three comma-separated numbers"));
    }
    let mut out = [0.0; 3];
    for (slot, part) in out.iter_mut().zip(parts.iter()) {
        *slot = part
            .trim()
            .parse::<f64>()
            .map_err(|e| format!("{what}: {e}"))?;
    }
    Ok(out)
}

fn parse_lambda(text: &str) -> Result<ChamberPoint, String> {
    let [l1, l2, l3] = parse_triple(text, "lambda")?;
    // stricter absolute zero-sum gate than the library's relative one:
    // reject rather than project
    if (l1 + l2 + l3).abs() > 1e-12 {
        return Err(format!(
            "lambda must sum to zero (|sum| <= 1e-12), got sum {:e}",
            l1 + l2 + l3
        ));
    }
    ChamberPoint::new(l1, l2, l3).map_err(describe_error)
}

fn parse_mu(text: &str) -> Result<Point3, String> {
    let [m1, m2, m3] = parse_triple(text, "mu")?;
    Point3::new(m1, m2, m3).map_err(describe_error)
}

fn parse_k(k: f64) -> Result<MultiplicityParam, String> {
    if !(k > 0.0) {
        return Err("k must be positive".into());
    }
    MultiplicityParam::new(k).map_err(describe_error)
}

fn parse_rational_k(text: &str) -> Result<Rational, String> {
    let value = if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|e| format!("k: {e}"))?;
        let den: BigInt = den.trim().parse().map_err(|e| format!("k: {e}"))?;
        if den == BigInt::from(0) {
            return Err("k: zero denominator".into());
        }
        Rational::new(num, den)
    } else {
        let v: f64 = text.trim().parse().map_err(|e| format!("k: {e}"))?;
        Rational::from_float(v).ok_or("k must be finite")?
    };
    if value <= Rational::from_integer(BigInt::from(0)) {
        return Err("k must be positive".into());
    }
    Ok(value)
}

fn describe_error(e: DunklError) -> String {
    match e {
        DunklError::InvalidMultiplicity { .. } => "k must be positive".into(),
        other => other.to_string(),
    }
}

/// Largest Bessel argument reached inside the box integrals; the power
/// series is not tuned beyond the desk-scale regime.
fn bessel_regime_warning(mu: &Point3, lambda: &ChamberPoint) {
    let [m1, m2, _] = mu.coords();
    let z_max = 0.5 * (m1 - m2).abs() * (lambda.l1() - lambda.l3());
    if z_max > 30.0 {
        eprintln!(
            "warning: Bessel argument reaches {z_max:.1} (> 30); \
             accuracy degrades outside the desk-scale regime"
        );
    }
}

fn cmd_eval(args: EvalArgs) -> Result<ExitCode, String> {
    let k = parse_k(args.k)?;
    let lambda = parse_lambda(&args.lambda)?;
    let mu = parse_mu(&args.mu)?;
    if args.quad_order == 0 {
        return Err("quad-order must be at least 1".into());
    }
    bessel_regime_warning(&mu, &lambda);

    let n = args.quad_order;
    let half = (n / 2).max(1);
    let e = kernels::dunkl_e(k, &mu, &lambda, n).map_err(describe_error)?;
    let e_coarse = kernels::dunkl_e(k, &mu, &lambda, half).map_err(describe_error)?;
    let j = kernels::gen_bessel_j(k, &mu, &lambda, n).map_err(describe_error)?;
    let j_coarse = kernels::gen_bessel_j(k, &mu, &lambda, half).map_err(describe_error)?;

    let f_pair = match (args.x, args.y) {
        (Some(x), Some(y)) => {
            let f = kernels::density_f(k, x, y, &lambda, n).map_err(describe_error)?;
            let f_coarse = kernels::density_f(k, x, y, &lambda, half).map_err(describe_error)?;
            Some((f, (f - f_coarse).abs()))
        }
        (None, None) => None,
        _ => return Err("provide both --x and --y for a density value".into()),
    };

    match args.format {
        Format::Csv => {
            let mut out = String::from("quantity,value,quad_order,error_estimate\n");
            out.push_str(&format!(
                "E,{},{},{}\n",
                fmt17(e),
                n,
                fmt17((e - e_coarse).abs())
            ));
            out.push_str(&format!(
                "J,{},{},{}\n",
                fmt17(j),
                n,
                fmt17((j - j_coarse).abs())
            ));
            if let Some((f, err)) = f_pair {
                out.push_str(&format!("F,{},{},{}\n", fmt17(f), n, fmt17(err)));
            }
            print!("{out}");
        }
        Format::Json => {
            let mut map = serde_json::Map::new();
            let num = |v: f64| {
                serde_json::Number::from_f64(v)
                    .map(serde_json::Value::Number)
                    .unwrap_or(serde_json::Value::Null)
            };
            map.insert("E".into(), num(e));
            map.insert("E_error_estimate".into(), num((e - e_coarse).abs()));
            map.insert("J".into(), num(j));
            map.insert("J_error_estimate".into(), num((j - j_coarse).abs()));
            if let Some((f, err)) = f_pair {
                map.insert("F".into(), num(f));
                map.insert("F_error_estimate".into(), num(err));
            }
            map.insert("quad_order".into(), serde_json::Value::from(n));
            map.insert("k".into(), num(args.k));
            map.insert(
                "lambda".into(),
                serde_json::Value::from(lambda.coords().to_vec()),
            );
            map.insert("mu".into(), serde_json::Value::from(mu.coords().to_vec()));
            // BTreeMap-backed object: key order is sorted, hence stable
            let value: serde_json::Value = serde_json::Value::Object(map);
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
        }
    }
    Ok(ExitCode::SUCCESS)
}

struct Range {
    min: f64,
    max: f64,
    steps: usize,
}

impl Range {
    fn parse(text: &str, what: &str) -> Result<Range, String> {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("{what} must be min:max:steps"));
        }
        let min: f64 = parts[0]
            .trim()
            .parse()
            .map_err(|e| format!("{what}: {e}"))?;
        let max: f64 = parts[1]
            .trim()
            .parse()
            .map_err(|e| format!("{what}: {e}"))?;
        let steps: usize = parts[2]
            .trim()
            .parse()
            .map_err(|e| format!("{what}: {e}"))?;
        if !(min.is_finite() && max.is_finite()) {
            return Err(format!("{what}: bounds must be finite"));
        }
        if steps == 0 {
            return Err(format!("{what}: steps must be at least 1"));
        }
        Ok(Range { min, max, steps })
    }

    fn value(&self, i: usize) -> f64 {
        if self.steps == 1 {
            self.min
        } else {
            self.min + (self.max - self.min) * i as f64 / (self.steps - 1) as f64
        }
    }
}

fn cmd_grid(args: GridArgs) -> Result<ExitCode, String> {
    use rayon::prelude::*;

    let k = parse_k(args.k)?;
    let lambda = parse_lambda(&args.lambda)?;
    let n = args.quad_order;

    match args.field {
        Field::F => {
            let xr = Range::parse(
                args.x_range.as_deref().ok_or("--x-range is required")?,
                "x-range",
            )?;
            let yr = Range::parse(
                args.y_range.as_deref().ok_or("--y-range is required")?,
                "y-range",
            )?;
            let indices: Vec<(usize, usize)> = (0..xr.steps)
                .flat_map(|i| (0..yr.steps).map(move |j| (i, j)))
                .collect();
            let rows: Vec<(usize, usize, f64, f64, f64)> = indices
                .par_iter()
                .map(|&(i, j)| {
                    let x = xr.value(i);
                    let y = yr.value(j);
                    let f = kernels::density_f(k, x, y, &lambda, n).unwrap_or(f64::NAN);
                    (i, j, x, y, f)
                })
                .collect();
            let mut out = String::from("x,y,F\n");
            // indices were generated lexicographically and par_iter::map
            // preserves input order
            for (_, _, x, y, f) in rows {
                out.push_str(&format!("{},{},{}\n", fmt17(x), fmt17(y), fmt17(f)));
            }
            print!("{out}");
        }
        Field::E => {
            let r1 = Range::parse(
                args.mu1_range.as_deref().ok_or("--mu1-range is required")?,
                "mu1-range",
            )?;
            let r2 = Range::parse(
                args.mu2_range.as_deref().ok_or("--mu2-range is required")?,
                "mu2-range",
            )?;
            let r3 = Range::parse(
                args.mu3_range.as_deref().ok_or("--mu3-range is required")?,
                "mu3-range",
            )?;
            let indices: Vec<(usize, usize, usize)> = (0..r1.steps)
                .flat_map(|i| {
                    (0..r2.steps).flat_map(move |j| (0..r3.steps).map(move |l| (i, j, l)))
                })
                .collect();
            let rows: Vec<(f64, f64, f64, f64)> = indices
                .par_iter()
                .map(|&(i, j, l)| {
                    let m1 = r1.value(i);
                    let m2 = r2.value(j);
                    let m3 = r3.value(l);
                    let mu = Point3::new(m1, m2, m3).expect("finite grid point");
                    let e = kernels::dunkl_e(k, &mu, &lambda, n).unwrap_or(f64::NAN);
                    (m1, m2, m3, e)
                })
                .collect();
            let mut out = String::from("mu1,mu2,mu3,E\n");
            for (m1, m2, m3, e) in rows {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    fmt17(m1),
                    fmt17(m2),
                    fmt17(m3),
                    fmt17(e)
                ));
            }
            print!("{out}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn print_report(report: &SuiteReport) -> bool {
    let mut all_passed = true;
    for check in &report.checks {
        let status = if check.passed() { "PASS" } else { "FAIL" };
        println!(
            "{}/{} residual {:.3e} tolerance {:.3e} {}",
            report.suite, check.name, check.residual, check.tolerance, status
        );
        all_passed &= check.passed();
    }
    all_passed
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, String> {
    let n = args.quad_order;
    let suite = args.suite.to_lowercase();
    let known = [
        "bessel",
        "kernels",
        "eigen",
        "lemma1",
        "opdam",
        "derivation",
        "all",
    ];
    if !known.contains(&suite.as_str()) {
        return Err(format!(
            "unknown suite '{}'; expected one of {}",
            args.suite,
            known.join(", ")
        ));
    }

    let mut all_passed = true;
    let run_kernels = suite == "kernels" || suite == "all";
    let run_bessel = suite == "bessel" || suite == "all";
    let run_eigen = suite == "eigen" || suite == "all";
    let run_lemma = suite == "lemma1" || suite == "all";
    let run_opdam = suite == "opdam" || suite == "all";
    let run_derivation = suite == "derivation" || suite == "all";

    if run_bessel {
        all_passed &= print_report(&verify::bessel_suite());
    }
    if run_kernels {
        all_passed &= print_report(&verify::kernels_suite(n).map_err(describe_error)?);
        for k in [
            poly_oracle::rat(1, 2),
            poly_oracle::rat(1, 1),
            poly_oracle::rat(2, 1),
        ] {
            print!("{}", verify::gamma_report_text(&[k]));
        }
    }
    if run_eigen {
        let report = match &args.k {
            Some(text) => {
                let k = parse_rational_k(text)?;
                verify::eigen_suite_for(&[poly_oracle::rational_to_f64(&k)], n)
                    .map_err(describe_error)?
            }
            None => verify::eigen_suite(n).map_err(describe_error)?,
        };
        all_passed &= print_report(&report);
    }
    if run_lemma {
        all_passed &= print_report(&verify::lemma_suite(n).map_err(describe_error)?);
    }
    if run_opdam {
        let ks = match &args.k {
            Some(text) => vec![parse_rational_k(text)?],
            None => vec![poly_oracle::rat(1, 2), poly_oracle::rat(1, 1)],
        };
        for k in ks {
            if args.series_degree < 3 {
                return Err("series-degree must be at least 3 for the opdam suite".into());
            }
            all_passed &= print_report(&verify::opdam_suite(&k, args.series_degree));
        }
    }
    if run_derivation {
        let k = match &args.k {
            Some(text) => parse_k(poly_oracle::rational_to_f64(&parse_rational_k(text)?))?,
            None => MultiplicityParam::new(0.5).unwrap(),
        };
        let lambda = match &args.lambda {
            Some(text) => parse_lambda(text)?,
            None => ChamberPoint::new(2.0, 0.0, -2.0).unwrap(),
        };
        let mu = match &args.mu {
            Some(text) => parse_mu(text)?,
            None => Point3::new(1.0, 0.0, -1.0).unwrap(),
        };
        all_passed &=
            print_report(&verify::derivation_suite(k, &mu, &lambda, n).map_err(describe_error)?);
    }

    if all_passed {
        println!("all checks passed");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("verification failed");
        Ok(ExitCode::from(1))
    }
}

fn cmd_oracle(args: OracleArgs) -> Result<ExitCode, String> {
    let k = parse_rational_k(&args.k)?;
    let lambda = parse_mu(&args.lambda)?; // the oracle accepts any finite triple
    let mu = parse_mu(&args.mu)?;

    let series = poly_oracle::kernel_series(&k, args.series_degree);
    let e = series.evaluate_e(&mu, &lambda);
    let j = series.evaluate_j(&mu, &lambda);

    println!("k = {k}");
    println!("series_degree = {}", args.series_degree);
    println!(
        "E = {} tail_estimate = {}{}",
        fmt17(e.value),
        fmt17(e.tail_estimate),
        if e.tail_estimate > args.tol {
            " (above requested tol)"
        } else {
            ""
        }
    );
    println!(
        "J = {} tail_estimate = {}{}",
        fmt17(j.value),
        fmt17(j.tail_estimate),
        if j.tail_estimate > args.tol {
            " (above requested tol)"
        } else {
            ""
        }
    );
    if args.per_degree {
        for (m, term) in series.degree_contributions(&mu, &lambda).iter().enumerate() {
            println!("degree {m}: {}", fmt17(*term));
        }
    }
    Ok(ExitCode::SUCCESS)
}
