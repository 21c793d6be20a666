//! Command-line front end.
//!
//! Exit codes: 0 success, 1 domain error (invalid roots, bad radius),
//! 2 usage or parse error, 3 an exact identity check failed.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::asymptotics::{scaling_limit_table, AsymptoticsError, ScalingReport};
use crate::field::Rat;
use crate::integral::{
    integrate_via_coefficients, integrate_via_pfd, partial_fractions, verify_lemma, IntegralError,
    RootConfig,
};
use crate::parse::{parse_poly, parse_rational, roots_from_factored, FactoredError, ParseError};
use crate::symmetric::{
    complete_homogeneous, determinant_exact, generalized_vandermonde, vandermonde_matrix,
    vandermonde_product,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "liouville", version, about = "Exact series at infinity for ∫ dz / (z(z-a_1)…(z-a_q))")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrate 1/Q along both paths and cross-check them.
    Integrate {
        #[command(flatten)]
        roots: RootArgs,
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Partial fractions of P/Q.
    Pfd {
        #[command(flatten)]
        roots: RootArgs,
        /// Numerator polynomial in z.
        #[arg(long = "num", default_value = "1", allow_hyphen_values = true)]
        numerator: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Check the moment identities Σ a^k/Q'(a) for 0 ≤ k ≤ max-k.
    Identities {
        #[command(flatten)]
        roots: RootArgs,
        /// Defaults to q + 10.
        #[arg(long)]
        max_k: Option<usize>,
    },
    /// Compare Vandermonde determinants with their product formulas.
    Vandermonde {
        /// Comma-separated rationals.
        #[arg(long, allow_hyphen_values = true)]
        points: String,
        /// Check the raised-exponent determinant for 1..=max-l.
        #[arg(long, default_value_t = 3)]
        max_l: u32,
    },
    /// Tabulate the shrinking-root limit as CSV.
    Limit {
        #[command(flatten)]
        roots: RootArgs,
        #[arg(long, default_value = "1,1/2,1/4,1/8")]
        scales: String,
        #[arg(long, default_value_t = 10.0)]
        radius: f64,
        #[arg(long, default_value_t = 64)]
        samples: usize,
        #[arg(long, default_value_t = 24)]
        truncation: usize,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct RootArgs {
    /// Nonzero roots a_1,…,a_q (comma-separated rationals).
    #[arg(long, allow_hyphen_values = true)]
    pub roots: Option<String>,
    /// Factored denominator, e.g. "z*(z-1)*(z-2)".
    #[arg(long, allow_hyphen_values = true)]
    pub den: Option<String>,
}

#[derive(Debug, Args)]
#[group(multiple = false)]
pub struct WindowArgs {
    /// Number of coefficients b_0..b_{terms-1}.
    #[arg(long)]
    pub terms: Option<usize>,
    /// Highest power N of 1/z kept (equivalent to --terms N+1).
    #[arg(long)]
    pub truncation: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(String),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<IntegralError> for Failure {
    fn from(e: IntegralError) -> Self {
        match e {
            IntegralError::TruncationTooSmall { .. }
            | IntegralError::MaxKBelowQ { .. }
            | IntegralError::ImproperNumerator { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

impl From<AsymptoticsError> for Failure {
    fn from(e: AsymptoticsError) -> Self {
        match e {
            AsymptoticsError::Integral(inner) => inner.into(),
            AsymptoticsError::NoSamples => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

fn parse_list(text: &str, flag: &str) -> Result<Vec<Rat>, Failure> {
    text.split(',')
        .map(|item| {
            parse_rational(item.trim())
                .map_err(|e| Failure::Usage(format!("--{flag} item {:?}: {e}", item.trim())))
        })
        .collect()
}

fn root_config(args: &RootArgs) -> Result<RootConfig, Failure> {
    let roots = match (&args.roots, &args.den) {
        (Some(list), _) => parse_list(list, "roots")?,
        (None, Some(den)) => roots_from_factored(den).map_err(|e| match e {
            FactoredError::Parse(p) => Failure::Usage(format!("--den: {p}")),
            other => Failure::Usage(format!("--den: {other}")),
        })?,
        (None, None) => return Err(Failure::Usage("one of --roots or --den is required".into())),
    };
    RootConfig::new(roots).map_err(|e| Failure::Domain(e.to_string()))
}

#[derive(Serialize)]
struct CoefficientJson {
    n: usize,
    value: Rat,
}

#[derive(Serialize)]
struct IntegrateJson {
    q: usize,
    roots: Vec<Rat>,
    truncation: usize,
    b0_convention: &'static str,
    coefficients: Vec<CoefficientJson>,
    valuation: Option<usize>,
    paths_agree: bool,
}

#[derive(Serialize)]
struct PfdTermJson {
    pole: Rat,
    coefficient: Rat,
}

#[derive(Serialize)]
struct PfdJson {
    q: usize,
    roots: Vec<Rat>,
    numerator: String,
    terms: Vec<PfdTermJson>,
    reconstruction_ok: bool,
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

fn cmd_integrate(roots: &RootArgs, window: &WindowArgs, format: Format, out: &mut dyn Write) -> Result<i32, Failure> {
    let cfg = root_config(roots)?;
    let truncation = match (window.terms, window.truncation) {
        (Some(0), _) => return Err(Failure::Usage("--terms must be positive".into())),
        (Some(t), _) => t - 1,
        (None, Some(n)) => n,
        (None, None) => cfg.q() + 8,
    };
    let reference = integrate_via_coefficients(&cfg, truncation)?;
    let check = integrate_via_pfd(&cfg, truncation)?;
    let paths_agree = reference.series.agrees_with(&check.series);
    match format {
        Format::Json => {
            let doc = IntegrateJson {
                q: cfg.q(),
                roots: cfg.roots().to_vec(),
                truncation,
                b0_convention: "zero",
                coefficients: reference
                    .series
                    .coeffs()
                    .iter()
                    .enumerate()
                    .map(|(n, b)| CoefficientJson { n, value: b.clone() })
                    .collect(),
                valuation: reference.valuation.finite(),
                paths_agree,
            };
            writeln!(out, "{}", to_json(&doc)).ok();
        }
        Format::Text => {
            writeln!(out, "Q = {}", cfg.denominator()).ok();
            writeln!(out, "g = {}", reference.series).ok();
            writeln!(out, "valuation = {}", reference.valuation).ok();
            writeln!(out, "paths_agree = {paths_agree}").ok();
        }
    }
    Ok(if paths_agree { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn cmd_pfd(roots: &RootArgs, numerator: &str, format: Format, out: &mut dyn Write) -> Result<i32, Failure> {
    let cfg = root_config(roots)?;
    let p = parse_poly(numerator)?;
    let pf = partial_fractions(&p, &cfg)?;
    let reconstruction_ok = pf.reconstruct() == p;
    match format {
        Format::Json => {
            let doc = PfdJson {
                q: cfg.q(),
                roots: cfg.roots().to_vec(),
                numerator: p.to_string(),
                terms: pf
                    .terms
                    .iter()
                    .map(|t| PfdTermJson { pole: t.pole.clone(), coefficient: t.coefficient.clone() })
                    .collect(),
                reconstruction_ok,
            };
            writeln!(out, "{}", to_json(&doc)).ok();
        }
        Format::Text => {
            writeln!(out, "({}) / ({})", p, cfg.denominator()).ok();
            for t in &pf.terms {
                writeln!(out, "  {} / (z - {})", t.coefficient, t.pole).ok();
            }
            writeln!(out, "reconstruction_ok = {reconstruction_ok}").ok();
        }
    }
    Ok(if reconstruction_ok { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn cmd_identities(roots: &RootArgs, max_k: Option<usize>, out: &mut dyn Write) -> Result<i32, Failure> {
    let cfg = root_config(roots)?;
    let max_k = max_k.unwrap_or(cfg.q() + 10);
    let report = verify_lemma(&cfg, max_k)?;
    for row in &report.rows {
        writeln!(
            out,
            "k={} lhs={} rhs={} pass={}",
            row.k,
            row.lhs.to_pq_string(),
            row.rhs.to_pq_string(),
            row.pass
        )
        .ok();
    }
    let failed = report.failures();
    writeln!(
        out,
        "summary q={} checked={} failed={} result={}",
        report.q,
        report.rows.len(),
        failed,
        if failed == 0 { "pass" } else { "fail" }
    )
    .ok();
    Ok(if failed == 0 { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn cmd_vandermonde(points: &str, max_l: u32, out: &mut dyn Write) -> Result<i32, Failure> {
    let pts = parse_list(points, "points")?;
    let product = vandermonde_product(&pts);
    let det = determinant_exact(&vandermonde_matrix(&pts)).expect("square by construction");
    let mut ok = product == det;
    writeln!(
        out,
        "n={} product={} determinant={} pass={}",
        pts.len(),
        product.to_pq_string(),
        det.to_pq_string(),
        ok
    )
    .ok();
    if !pts.is_empty() {
        for l in 1..=max_l {
            let lhs = generalized_vandermonde(&pts, l).expect("nonempty");
            let rhs = &product * &complete_homogeneous(&pts, l as usize);
            let pass = lhs == rhs;
            ok &= pass;
            writeln!(
                out,
                "l={} generalized={} product_times_h={} pass={}",
                l,
                lhs.to_pq_string(),
                rhs.to_pq_string(),
                pass
            )
            .ok();
        }
    }
    writeln!(out, "summary result={}", if ok { "pass" } else { "fail" }).ok();
    Ok(if ok { EXIT_OK } else { EXIT_CHECK_FAILED })
}

/// `t,l,exact_b,numeric_sup_error`, one row per `(scale, l)`. `exact_b` is
/// `b_{q+l}` as `p/q`; the sup-error carries 17 significant digits.
pub fn write_scaling_csv(report: &ScalingReport, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "t,l,exact_b,numeric_sup_error")?;
    for row in &report.rows {
        for (l, b) in row.coefficients.iter().enumerate() {
            writeln!(
                out,
                "{},{},{},{:.16e}",
                row.t.to_pq_string(),
                l,
                b.to_pq_string(),
                row.sup_error
            )?;
        }
    }
    Ok(())
}

fn cmd_limit(
    roots: &RootArgs,
    scales: &str,
    radius: f64,
    samples: usize,
    truncation: usize,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let cfg = root_config(roots)?;
    let scales = parse_list(scales, "scales")?;
    let report = scaling_limit_table(&cfg, &scales, radius, samples, truncation)?;
    write_scaling_csv(&report, out).ok();
    Ok(if report.exact_ok() { EXIT_OK } else { EXIT_CHECK_FAILED })
}

/// Runs one invocation. `argv[0]` is the program name.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                write!(err, "{rendered}").ok();
            } else {
                write!(out, "{rendered}").ok();
            }
            return code;
        }
    };
    let result = match &cli.command {
        Command::Integrate { roots, window, format } => cmd_integrate(roots, window, *format, out),
        Command::Pfd { roots, numerator, format } => cmd_pfd(roots, numerator, *format, out),
        Command::Identities { roots, max_k } => cmd_identities(roots, *max_k, out),
        Command::Vandermonde { points, max_l } => cmd_vandermonde(points, *max_l, out),
        Command::Limit { roots, scales, radius, samples, truncation } => {
            cmd_limit(roots, scales, *radius, *samples, *truncation, out)
        }
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            writeln!(err, "error: {msg}").ok();
            EXIT_USAGE
        }
        Err(Failure::Domain(msg)) => {
            writeln!(err, "error: {msg}").ok();
            EXIT_DOMAIN
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("liouville").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn den_and_roots_are_equivalent() {
        let a = call(&["integrate", "--roots", "1,2", "--terms", "6"]);
        let b = call(&["integrate", "--den", "z*(z-1)*(z-2)", "--terms", "6"]);
        assert_eq!(a, b);
        assert_eq!(a.0, 0);
    }

    #[test]
    fn window_flags() {
        let a = call(&["integrate", "--roots", "1,2", "--terms", "6"]);
        let b = call(&["integrate", "--roots", "1,2", "--truncation", "5"]);
        assert_eq!(a, b);
        let (code, _, err) = call(&["integrate", "--roots", "1,2", "--terms", "3"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("truncation 2 must be at least q + 1 = 3"), "{err}");
        let (code, _, _) = call(&["integrate", "--roots", "1,2", "--terms", "6", "--truncation", "5"]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn text_format() {
        let (code, out, _) = call(&["integrate", "--roots", "1,2", "--terms", "4", "--format", "text"]);
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "Q = z^3 - 3*z^2 + 2*z\ng = (-1/2)*z^-2 + (-1)*z^-3 + O(z^-4)\nvaluation = 2\npaths_agree = true\n"
        );
    }

    #[test]
    fn domain_errors() {
        let (code, _, err) = call(&["integrate", "--roots", "0,2"]);
        assert_eq!(code, EXIT_DOMAIN);
        assert!(err.contains("nonzero"));
        let (code, _, err) = call(&["limit", "--roots", "1,2", "--radius", "1"]);
        assert_eq!(code, EXIT_DOMAIN);
        assert!(err.contains("radius"));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&[]).0, EXIT_USAGE);
        assert_eq!(call(&["integrate"]).0, EXIT_USAGE);
        assert_eq!(call(&["integrate", "--roots", "1,2", "--den", "z*(z-1)"]).0, EXIT_USAGE);
        let (code, _, err) = call(&["integrate", "--roots", "1,x"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("byte 0"), "{err}");
        let (code, _, err) = call(&["pfd", "--roots", "1,2", "--num", "z^"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("byte 2"), "{err}");
        let (code, _, _) = call(&["identities", "--roots", "1,2,3", "--max-k", "2"]);
        assert_eq!(code, EXIT_USAGE);
        let (code, _, err) = call(&["integrate", "--den", "z^3-3*z^2+2*z"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("not of the form"), "{err}");
    }

    #[test]
    fn pfd_output() {
        let (code, out, _) = call(&["pfd", "--roots", "1,2", "--num", "z"]);
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "{\"q\":2,\"roots\":[\"1/1\",\"2/1\"],\"numerator\":\"z\",\"terms\":[\
             {\"pole\":\"0/1\",\"coefficient\":\"0/1\"},\
             {\"pole\":\"1/1\",\"coefficient\":\"-1/1\"},\
             {\"pole\":\"2/1\",\"coefficient\":\"1/1\"}],\"reconstruction_ok\":true}\n"
        );
    }

    #[test]
    fn vandermonde_output() {
        let (code, out, _) = call(&["vandermonde", "--points", "1,2", "--max-l", "2"]);
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "n=2 product=1/1 determinant=1/1 pass=true\n\
             l=1 generalized=3/1 product_times_h=3/1 pass=true\n\
             l=2 generalized=7/1 product_times_h=7/1 pass=true\n\
             summary result=pass\n"
        );
    }

    #[test]
    fn limit_csv_shape() {
        let (code, out, _) = call(&["limit", "--roots", "1,2", "--scales", "1,1/2", "--truncation", "6"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "t,l,exact_b,numeric_sup_error");
        assert_eq!(lines.len(), 1 + 2 * 5);
        assert!(lines[1].starts_with("1/1,0,-1/2,"));
        assert!(lines[7].starts_with("1/2,1,-1/2,"));
        let err: f64 = lines[1].rsplit(',').next().unwrap().parse().unwrap();
        assert!(err > 0.0 && err < 2e-3);
    }
}
