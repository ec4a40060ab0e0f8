//! The `genera` command line.
//!
//! ```text
//! genera genus --type ahat|l|witten --k K --basis p|s|G|E --format text|latex|json
//! genera u-series --k K --order N
//! genera verify --suite traces|ramanujan|theta|witten|all [options]
//! ```
//!
//! Exit codes: 0 on success, 1 when a hard check fails or a computation
//! errors, 2 on usage errors.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use crate::error::{Error, Result};
use crate::genera::{
    genus_polynomial, ramanujan_u, trace, verify_ramanujan_twist, verify_trace_route,
    verify_triple_product, verify_witten_identity, witten_trace, EisensteinBasis, Genus,
};
use crate::numeric::{run_numeric_suite, to_csv, NumericConfig};
use crate::report::Report;
use crate::symfun::Basis;

#[derive(Debug, Parser)]
#[command(
    name = "genera",
    version,
    about = "Hirzebruch genera as traces of partition Eisenstein series"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a genus coefficient in the Pontryagin, power-sum or Eisenstein basis.
    Genus(GenusArgs),
    /// Print Ramanujan's U_2k q-expansion.
    USeries(USeriesArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenusType {
    Ahat,
    L,
    Witten,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BasisArg {
    /// Pontryagin classes p_j
    #[value(name = "p")]
    P,
    /// power sums s_j
    #[value(name = "s")]
    S,
    /// Eisenstein series G_2j
    #[value(name = "G", alias = "g")]
    G,
    /// normalised Eisenstein series E_2j
    #[value(name = "E", alias = "e")]
    E,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Latex,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Traces,
    Ramanujan,
    Theta,
    Witten,
    All,
}

#[derive(Debug, Args)]
pub struct GenusArgs {
    #[arg(long = "type", value_enum)]
    pub kind: GenusType,
    #[arg(long)]
    pub k: u32,
    #[arg(long, value_enum, default_value = "p")]
    pub basis: BasisArg,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct USeriesArgs {
    #[arg(long)]
    pub k: u32,
    #[arg(long, default_value_t = 10)]
    pub order: usize,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
    /// Largest k checked [default: 10 for traces, 6 for ramanujan]
    #[arg(long)]
    pub k_max: Option<u32>,
    /// q-order [default: 60 for ramanujan, 40 for theta, 30 for witten]
    #[arg(long)]
    pub q_order: Option<usize>,
    /// Order in w = (2 pi i z)^2 for the Witten identity
    #[arg(long, default_value_t = 10)]
    pub z_order: usize,
    /// Cutoff M for the Hecke-regularised lattice sums
    #[arg(long, default_value_t = 300)]
    pub lattice_cutoff: usize,
    /// Box cutoff M for the sigma lattice product
    #[arg(long, default_value_t = 400)]
    pub sigma_cutoff: usize,
    /// Strictly decreasing values of s
    #[arg(long, value_delimiter = ',', default_value = "1.0,0.5,0.25,0.1")]
    pub s_grid: Vec<f64>,
    /// Tolerance of the tight numeric checks
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Write the convergence table of the theta suite to this file
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

/// What the process should print and return.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            stderr: String::new(),
            code: 0,
        }
    }

    fn usage(msg: impl Into<String>) -> Self {
        Self {
            stdout: String::new(),
            stderr: format!("error: {}\n", msg.into()),
            code: 2,
        }
    }

    fn failure(err: &Error) -> Self {
        Self {
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
            code: 1,
        }
    }
}

pub fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Genus(a) => cmd_genus(&a),
        Command::USeries(a) => cmd_u_series(&a),
        Command::Verify(a) => cmd_verify(&a),
    }
}

fn with_newline(mut s: String) -> String {
    s.push('\n');
    s
}

pub fn cmd_genus(args: &GenusArgs) -> Outcome {
    let genus = match args.kind {
        GenusType::Ahat => Genus::AHat,
        GenusType::L => Genus::L,
        GenusType::Witten => {
            let basis =
                match args.basis {
                    BasisArg::G => EisensteinBasis::G,
                    BasisArg::E => EisensteinBasis::E,
                    BasisArg::P | BasisArg::S => return Outcome::usage(
                        "the Witten genus has q-series coefficients; use --basis G or --basis E",
                    ),
                };
            let f = witten_trace(args.k, basis);
            return Outcome::ok(with_newline(match args.format {
                Format::Text => f.to_text(),
                Format::Latex => f.to_latex(),
                Format::Json => f.to_json().to_string(),
            }));
        }
    };
    let out = match args.basis {
        BasisArg::P | BasisArg::S => {
            let p = match genus_polynomial(genus, args.k) {
                Ok(p) => p,
                Err(e) => return Outcome::failure(&e),
            };
            let p = if args.basis == BasisArg::S {
                p.convert(Basis::PowerSum)
            } else {
                p
            };
            match args.format {
                Format::Text => p.to_text(),
                Format::Latex => p.to_latex(),
                Format::Json => serde_json::to_string(&p.to_json()).expect("serialisable"),
            }
        }
        BasisArg::G | BasisArg::E => {
            let f = trace(&genus.phi(), args.k, EisensteinBasis::G);
            let f = if args.basis == BasisArg::E {
                f.convert()
            } else {
                f
            };
            match args.format {
                Format::Text => f.to_text(),
                Format::Latex => f.to_latex(),
                Format::Json => f.to_json().to_string(),
            }
        }
    };
    Outcome::ok(with_newline(out))
}

pub fn cmd_u_series(args: &USeriesArgs) -> Outcome {
    let u = ramanujan_u(args.k, args.order);
    match args.format {
        Format::Text => Outcome::ok(with_newline(u.to_text("q"))),
        Format::Json => Outcome::ok(with_newline(
            serde_json::to_string(&u.to_json()).expect("serialisable"),
        )),
        Format::Latex => Outcome::usage("u-series supports --format text or json"),
    }
}

fn traces_suite(k_max: u32) -> Result<Vec<Report>> {
    let per_k: Vec<Result<Vec<Report>>> = (0..=k_max)
        .into_par_iter()
        .map(|k| {
            Ok(vec![
                verify_trace_route(Genus::AHat, k)?,
                verify_trace_route(Genus::L, k)?,
            ])
        })
        .collect();
    flatten(per_k)
}

fn ramanujan_suite(k_max: u32, q_order: usize) -> Result<Vec<Report>> {
    let per_k: Vec<Result<Vec<Report>>> = (1..=k_max)
        .into_par_iter()
        .map(|k| verify_ramanujan_twist(k, q_order))
        .collect();
    flatten(per_k)
}

fn flatten(parts: Vec<Result<Vec<Report>>>) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

pub fn cmd_verify(args: &VerifyArgs) -> Outcome {
    if args.format == Format::Latex {
        return Outcome::usage("verify supports --format text or json");
    }
    let numeric = NumericConfig {
        sigma_cutoff: args.sigma_cutoff,
        lattice_cutoff: args.lattice_cutoff,
        s_grid: args.s_grid.clone(),
        tol: args.tol,
        ..NumericConfig::default()
    };
    let runs_theta = matches!(args.suite, Suite::Theta | Suite::All);
    if runs_theta {
        if let Err(e) = numeric.validate() {
            return Outcome::usage(e.to_string());
        }
    }

    let mut reports = Vec::new();
    let mut csv = Vec::new();
    let result: Result<()> = (|| {
        if matches!(args.suite, Suite::Traces | Suite::All) {
            reports.extend(traces_suite(args.k_max.unwrap_or(10))?);
        }
        if matches!(args.suite, Suite::Ramanujan | Suite::All) {
            reports.extend(ramanujan_suite(
                args.k_max.unwrap_or(6),
                args.q_order.unwrap_or(60),
            )?);
        }
        if runs_theta {
            reports.push(verify_triple_product(args.q_order.unwrap_or(40)));
            let suite = run_numeric_suite(&numeric)?;
            reports.extend(suite.reports);
            csv = suite.csv;
        }
        if matches!(args.suite, Suite::Witten | Suite::All) {
            reports.push(verify_witten_identity(
                args.z_order,
                args.q_order.unwrap_or(30),
            ));
        }
        Ok(())
    })();
    if let Err(e) = result {
        return Outcome::failure(&e);
    }

    if let Some(path) = &args.csv {
        if let Err(e) = std::fs::write(path, to_csv(&csv)) {
            return Outcome::failure(&Error::from(e));
        }
    }

    let blocking = reports.iter().filter(|r| r.is_blocking_failure()).count();
    let warnings = reports
        .iter()
        .filter(|r| !r.passed() && !r.is_blocking_failure())
        .count();
    let stdout = match args.format {
        Format::Json => {
            let status = if blocking == 0 { "pass" } else { "fail" };
            with_newline(
                serde_json::to_string_pretty(&json!({
                    "status": status,
                    "reports": reports,
                }))
                .expect("serialisable"),
            )
        }
        _ => {
            let mut out = format!("genera {}\n", env!("CARGO_PKG_VERSION"));
            for r in &reports {
                out.push_str(&r.summary_line());
                out.push('\n');
            }
            out.push_str(&format!(
                "{} checks, {} failed, {} warnings\n",
                reports.len(),
                blocking,
                warnings
            ));
            out
        }
    };
    Outcome {
        stdout,
        stderr: String::new(),
        code: if blocking == 0 { 0 } else { 1 },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        let mut full = vec!["genera"];
        full.extend_from_slice(args);
        run(Cli::try_parse_from(full).unwrap())
    }

    #[test]
    fn genus_text() {
        assert_eq!(
            run_args(&["genus", "--type", "ahat", "--k", "1", "--basis", "p"]).stdout,
            "-1/24 p1\n"
        );
        assert_eq!(
            run_args(&["genus", "--type", "ahat", "--k", "0", "--basis", "p"]).stdout,
            "1\n"
        );
        assert_eq!(
            run_args(&["genus", "--type", "l", "--k", "2", "--basis", "p"]).stdout,
            "(7p2 - p1^2)/45\n"
        );
        assert_eq!(
            run_args(&["genus", "--type", "l", "--k", "1", "--basis", "s"]).stdout,
            "1/3 s1\n"
        );
    }

    #[test]
    fn genus_eisenstein_bases() {
        let g = run_args(&["genus", "--type", "ahat", "--k", "3", "--basis", "G"]);
        assert_eq!(g.stdout, "(-G6 + 15G2G4 - 15G2^3)/720\n");
        let e = run_args(&[
            "genus", "--type", "ahat", "--k", "2", "--basis", "E", "--format", "latex",
        ]);
        assert_eq!(e.stdout, "\\frac{1}{5760}(2E_4+5E_2^2)\n");
        let w = run_args(&["genus", "--type", "witten", "--k", "2", "--basis", "G"]);
        assert_eq!(w.stdout, "1/24 G4\n");
    }

    #[test]
    fn witten_needs_an_eisenstein_basis() {
        let o = run_args(&["genus", "--type", "witten", "--k", "2", "--basis", "p"]);
        assert_eq!(o.code, 2);
        assert!(o.stdout.is_empty());
    }

    #[test]
    fn unknown_values_are_usage_errors() {
        let e = Cli::try_parse_from(["genera", "genus", "--type", "chi", "--k", "1"]).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        let e = Cli::try_parse_from(["genera", "genus", "--type", "l", "--k", "1", "--basis", "x"])
            .unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn u_series_text() {
        assert_eq!(run_args(&["u-series", "--k", "0"]).stdout, "1\n");
        assert_eq!(
            run_args(&["u-series", "--k", "1", "--order", "2"]).stdout,
            "1 - 24q - 72q^2\n"
        );
        assert!(run_args(&["u-series", "--k", "2", "--order", "3"])
            .stdout
            .starts_with("1 "));
    }

    #[test]
    fn verify_json() {
        let o = run_args(&[
            "verify",
            "--suite",
            "ramanujan",
            "--k-max",
            "3",
            "--q-order",
            "20",
            "--format",
            "json",
        ]);
        assert_eq!(o.code, 0);
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["status"], "pass");
        assert_eq!(v["reports"].as_array().unwrap().len(), 6);
        assert_eq!(v["reports"][0]["k"], 1);
    }

    #[test]
    fn verify_rejects_bad_grid() {
        let o = run_args(&["verify", "--suite", "theta", "--s-grid", "0.1,0.5"]);
        assert_eq!(o.code, 2);
    }
}
