//! Command-line driver: enumerate invariant bases of truncated polynomial
//! rings, print Hilbert series, count orbits, and run the verification
//! pipelines.
//!
//! Exit codes: 0 on success, 2 on usage errors, 3 when a verification check
//! fails (the failing report is printed as JSON).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qmn::basis::{borel_basis, YIndex};
use qmn::gf::Field;
use qmn::groups::{orbit_count, GroupKind, GroupSpec};
use qmn::harness::{
    verify_borel, verify_gl, verify_identities, verify_parabolic, VerifyOptions, VerifyReport,
};
use qmn::series::{c_alpha_m, c_nm_gl, flag_count, TSeries};

#[derive(Parser)]
#[command(
    name = "qmn",
    about = "Invariants of truncated polynomial rings over finite fields",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Latex,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Group {
    Borel,
    Gl,
    Parabolic,
}

#[derive(Args)]
struct CaseArgs {
    /// Field size as "p" or "p^e"
    #[arg(long)]
    field: String,
    /// Truncation exponent: the ring is cut by q^m-th powers
    #[arg(long)]
    m: u32,
    /// Number of variables
    #[arg(long)]
    n: Option<u32>,
    /// Composition a1,a2,... of n (parabolic block sizes)
    #[arg(long, value_delimiter = ',')]
    alpha: Option<Vec<u32>>,
}

impl CaseArgs {
    fn field(&self) -> Result<Field, String> {
        Field::parse(&self.field).map_err(|e| e.to_string())
    }

    fn n(&self) -> Result<u32, String> {
        match (self.n, &self.alpha) {
            (Some(n), Some(a)) if a.iter().sum::<u32>() != n => {
                Err(format!("--alpha {a:?} does not sum to --n {n}"))
            }
            (Some(n), _) => Ok(n),
            (None, Some(a)) => Ok(a.iter().sum()),
            (None, None) => Err("one of --n or --alpha is required".to_string()),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// List the Borel basis indices for one case
    Basis {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the conjectural Hilbert series for a group
    Hilbert {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long, value_enum, default_value = "borel")]
        group: Group,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Count group orbits on vectors over the degree-m extension field
    Orbits {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long, value_enum, default_value = "borel")]
        group: Group,
        #[arg(long, default_value_t = 1_000_000)]
        max_cells: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run the verification pipeline for one case
    Verify {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long, value_enum, default_value = "borel")]
        group: Group,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Directory for cached oracle results
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1_000_000)]
        max_cells: u64,
    },
    /// Run the operator-identity suite for one field
    Identities {
        /// Field size as "p" or "p^e"
        #[arg(long)]
        field: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1_000_000)]
        max_cells: u64,
    },
}

fn series_output(series: &TSeries, format: Format) -> String {
    match format {
        Format::Json => serde_json::json!({
            "coeffs": series.coeffs(),
            "display": series.to_string(),
        })
        .to_string(),
        Format::Csv => {
            let mut out = String::from("degree,coeff\n");
            for (d, &c) in series.coeffs().iter().enumerate() {
                if c != 0 {
                    out.push_str(&format!("{d},{c}\n"));
                }
            }
            out.trim_end().to_string()
        }
        _ => series.to_string(),
    }
}

fn basis_output(indices: &[YIndex], q: u64, m: u32, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(indices).unwrap(),
        Format::Csv => {
            let mut out = String::from("b,I,J,degree\n");
            for idx in indices {
                let i: Vec<String> = idx.i.iter().map(|v| v.to_string()).collect();
                let j: Vec<String> = idx.j.iter().map(|v| v.to_string()).collect();
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    idx.b,
                    i.join(" "),
                    j.join(" "),
                    idx.degree(q)
                ));
            }
            out.trim_end().to_string()
        }
        Format::Latex => {
            let mut out = String::from("\\begin{tabular}{llll}\nk & I & J & \\deg \\\\\\hline\n");
            for idx in indices {
                out.push_str(&format!(
                    "{} & ({}) & ({}) & {} \\\\\n",
                    idx.k(),
                    idx.i
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                    idx.j
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                    idx.degree(q)
                ));
            }
            out.push_str("\\end{tabular}");
            out
        }
        Format::Text => {
            let mut out = format!(
                "basis of Borel invariants, m={m}, {} elements\n",
                indices.len()
            );
            for idx in indices {
                out.push_str(&format!("  {:?}  degree {}\n", idx, idx.degree(q)));
            }
            out.trim_end().to_string()
        }
    }
}

fn report_output(report: &VerifyReport, format: Format) -> String {
    match format {
        Format::Json => report.to_json(),
        _ => {
            let mut out = format!(
                "case: F_{}{} {} {}\n",
                report.case.p,
                if report.case.e > 1 {
                    format!("^{}", report.case.e)
                } else {
                    String::new()
                },
                report.case.group,
                match (report.case.m, report.case.n) {
                    (Some(m), Some(n)) => format!("m={m} n={n}"),
                    _ => String::new(),
                }
            );
            for c in &report.checks {
                let status = match c.status {
                    qmn::harness::CheckStatus::Pass => "pass",
                    qmn::harness::CheckStatus::Fail => "FAIL",
                    qmn::harness::CheckStatus::Skipped => "skipped",
                };
                out.push_str(&format!("  {:28} {}\n", c.name, status));
                if let Some(w) = &c.witness {
                    out.push_str(&format!("      {w}\n"));
                }
            }
            if let Some(s) = &report.series {
                out.push_str(&format!(
                    "series: {}\n",
                    TSeries::from_coeffs(s.computed.clone())
                ));
            }
            if let Some(c) = &report.counts {
                out.push_str(&format!(
                    "counts: basis={} orbits={} flags={}\n",
                    c.basis,
                    c.orbits.map_or("-".to_string(), |v| v.to_string()),
                    c.flags.map_or("-".to_string(), |v| v.to_string())
                ));
            }
            out.push_str(if report.passed() { "PASS" } else { "FAIL" });
            out
        }
    }
}

fn run() -> Result<ExitCode, String> {
    let cli = Cli::parse();
    match cli.command {
        Command::Basis { case, format } => {
            let field = case.field()?;
            let n = case.n()?;
            let indices = borel_basis(field.q(), case.m, n);
            println!("{}", basis_output(&indices, field.q(), case.m, format));
            Ok(ExitCode::SUCCESS)
        }
        Command::Hilbert {
            case,
            group,
            format,
        } => {
            let field = case.field()?;
            let n = case.n()?;
            let series = match group {
                Group::Gl => c_nm_gl(field.q(), case.m, n),
                Group::Borel => {
                    // an explicit composition selects the parabolic series
                    let alpha = case.alpha.clone().unwrap_or_else(|| vec![1; n as usize]);
                    c_alpha_m(field.q(), case.m, &alpha)
                }
                Group::Parabolic => {
                    let alpha = case
                        .alpha
                        .clone()
                        .ok_or("--alpha is required for --group parabolic")?;
                    c_alpha_m(field.q(), case.m, &alpha)
                }
            };
            println!("{}", series_output(&series, format));
            Ok(ExitCode::SUCCESS)
        }
        Command::Orbits {
            case,
            group,
            max_cells,
            format,
        } => {
            let field = case.field()?;
            let n = case.n()?;
            let kind = match group {
                Group::Borel => GroupKind::Borel,
                Group::Gl => GroupKind::Gl,
                Group::Parabolic => GroupKind::Parabolic(
                    case.alpha
                        .clone()
                        .ok_or("--alpha is required for --group parabolic")?,
                ),
            };
            let spec = GroupSpec::new(&field, n, kind).map_err(|e| e.to_string())?;
            let orbits = orbit_count(&spec, case.m, max_cells).map_err(|e| e.to_string())?;
            match format {
                Format::Json => {
                    let flags = if group == Group::Borel {
                        Some(flag_count(field.q(), case.m, n))
                    } else {
                        None
                    };
                    println!("{}", serde_json::json!({"orbits": orbits, "flags": flags}));
                }
                _ => println!("orbits = {orbits}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            case,
            group,
            format,
            cache_dir,
            seed,
            max_cells,
        } => {
            let field = case.field()?;
            let n = case.n()?;
            let opts = VerifyOptions {
                cache_dir,
                max_cells,
                seed,
            };
            let report = match group {
                Group::Borel => verify_borel(&field, case.m, n, &opts),
                Group::Gl => verify_gl(&field, case.m, n, &opts),
                Group::Parabolic => {
                    let alpha = case
                        .alpha
                        .clone()
                        .ok_or("--alpha is required for --group parabolic")?;
                    verify_parabolic(&field, case.m, &alpha, &opts)
                }
            };
            println!("{}", report_output(&report, format));
            if report.passed() {
                Ok(ExitCode::SUCCESS)
            } else {
                if format != Format::Json {
                    eprintln!("{}", report.to_json());
                }
                Ok(ExitCode::from(3))
            }
        }
        Command::Identities {
            field,
            format,
            cache_dir,
            seed,
            max_cells,
        } => {
            let field = Field::parse(&field).map_err(|e| e.to_string())?;
            let opts = VerifyOptions {
                cache_dir,
                max_cells,
                seed,
            };
            let report = verify_identities(&field, &opts);
            println!("{}", report_output(&report, format));
            if report.passed() {
                Ok(ExitCode::SUCCESS)
            } else {
                if format != Format::Json {
                    eprintln!("{}", report.to_json());
                }
                Ok(ExitCode::from(3))
            }
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
