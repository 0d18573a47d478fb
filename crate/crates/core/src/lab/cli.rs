//! The `l2` command line.

use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use super::checks::{addendum_checks, identity_checks, Check};
use super::experiments::{
    run_betti_approx, run_det_approx, run_mapping_torus, run_torsion_growth, run_trace_approx,
    RunOptions,
};
use super::report::{format_real, ExperimentReport};
use super::tower::{TowerSpec, DEFAULT_MAX_SIZE};
use crate::error::Error;
use crate::exactalg::{homology, Field, IntMatrix};
use crate::groupring::{parse_poly, GroupRingMatrix};
use crate::io::{parse_complex, parse_gr_matrix, parse_int_matrix, parse_simplicial, ComplexInput};
use crate::spectral::{fk_det_torus_sequence, mahler};
use crate::torsionlab::{
    mapping_torus_complex, section9_complex, section9_e_complex, torsion_report, GRChainComplex,
};

const AFTER_HELP: &str = "\
CSV columns are experiment,index,quotient_size followed by:
  det-approx      normalized_logdet, exact_nullity
  betti-approx    vn_kernel_dim, vn_kernel_dim_exact [, kernel_dim_fp, kernel_dim_fp_exact]
  torsion-growth  rho_z_normalized, rho_l2_normalized, difference
  trace-approx    trace_vn_j, trace_pushed_j for j = 0..=degree
  mapping-torus   b0..b3_normalized, torsion_order, ln_torsion_normalized
Exit codes: 0 success, 2 usage or input error, 3 computation error or failed check.";

#[derive(Parser, Debug)]
#[command(name = "l2", about = "Finite-quotient approximation of L2-invariants", after_help = AFTER_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// pow:BASE:IMAX or list:N1,N2,... (entries may be vectors such as 4x8)
    #[arg(long, default_value = "pow:2:10")]
    tower: String,
    /// Q or Fp:P
    #[arg(long, default_value = "Q")]
    field: String,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Emit JSON instead of CSV
    #[arg(long)]
    json: bool,
    /// Skip quotients larger than this
    #[arg(long, default_value_t = DEFAULT_MAX_SIZE)]
    max_size: usize,
    /// Evaluate tower indices one after another
    #[arg(long)]
    serial: bool,
}

#[derive(Args, Debug, Clone)]
struct MatrixInput {
    /// 1x1 matrix given by a Laurent polynomial in z (or z1, z2, ...)
    #[arg(long, conflicts_with = "matrix")]
    poly: Option<String>,
    /// Matrix as JSON rows of polynomial strings, or @FILE
    #[arg(long)]
    matrix: Option<String>,
    /// Ambient rank n of Z^n
    #[arg(long, default_value_t = 1)]
    rank: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Normalized log-determinants along a tower
    DetApprox {
        #[command(flatten)]
        input: MatrixInput,
        #[command(flatten)]
        common: Common,
    },
    /// Normalized kernel dimensions along a tower
    BettiApprox {
        #[command(flatten)]
        input: MatrixInput,
        #[command(flatten)]
        common: Common,
    },
    /// Normalized integral and L2-torsion of pushed complexes over Z[Z]
    TorsionGrowth {
        /// Complex JSON file
        #[arg(long)]
        complex: Option<PathBuf>,
        /// Integer matrix M (JSON or @FILE); uses the complex I - zM
        #[arg(long)]
        mapping_torus: Option<String>,
        /// a,b,k,l,g: the one-differential complex with the golden middle matrix
        #[arg(long)]
        e_complex: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Traces of powers of A*A over the group ring and over quotients
    TraceApprox {
        #[command(flatten)]
        input: MatrixInput,
        /// Highest power j
        #[arg(long, default_value_t = 2)]
        degree: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Betti numbers and torsion of mapping tori of M^d
    MappingTorus {
        /// Integer matrix (JSON or @FILE)
        #[arg(long)]
        matrix: String,
        #[arg(long, default_value_t = 20)]
        d_max: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Mahler measure of a Laurent polynomial
    Mahler {
        #[arg(long)]
        poly: String,
        #[arg(long, default_value_t = 1)]
        rank: usize,
        /// Torus quadrature with grids N, 2N, 4N instead of root finding
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Invariants of the golden four-term complex
    Section9 {
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, allow_hyphen_values = true)]
        l: i64,
        #[arg(long)]
        g: i64,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Property checks for the density family
    Density {
        /// Name of the battery to run
        #[arg(long, default_value = "addendum")]
        check: String,
        /// Family indices, e.g. 2..20
        #[arg(long, default_value = "2..20")]
        n: String,
    },
    /// Homology and torsion invariants of a simplicial complex
    Simplicial {
        /// Simplicial JSON file
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Torsion identities on seeded random complexes
    CheckIdentities {
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

fn usage<T>(r: crate::error::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Usage(e.to_string()))
}

fn read_arg(s: &str) -> Result<String, Failure> {
    match s.strip_prefix('@') {
        Some(path) => {
            std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))
        }
        None => Ok(s.to_string()),
    }
}

fn read_file(p: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))
}

impl MatrixInput {
    fn load(&self) -> Result<GroupRingMatrix, Failure> {
        match (&self.poly, &self.matrix) {
            (Some(p), None) => Ok(GroupRingMatrix::scalar(usage(parse_poly(p, self.rank))?)),
            (None, Some(m)) => usage(parse_gr_matrix(&read_arg(m)?, self.rank)),
            _ => Err(Failure::Usage(
                "give exactly one of --poly and --matrix".into(),
            )),
        }
    }
}

impl Common {
    fn tower(&self) -> Result<TowerSpec, Failure> {
        usage(self.tower.parse())
    }
    fn field(&self) -> Result<Field, Failure> {
        usage(self.field.parse())
    }
    fn options(&self) -> RunOptions {
        RunOptions {
            max_size: self.max_size,
            parallel: !self.serial,
        }
    }
}

fn emit(out: &mut dyn Write, path: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))
        }
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Usage(e.to_string())),
    }
}

fn emit_report(out: &mut dyn Write, common: &Common, r: &ExperimentReport) -> Result<(), Failure> {
    let text = if common.json {
        r.to_json() + "\n"
    } else {
        r.to_csv()?
    };
    emit(out, &common.out, &text)
}

fn parse_range(s: &str) -> Result<RangeInclusive<u32>, Failure> {
    let bad = || Failure::Usage(format!("{s:?} is not a range like 2..20"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let (a, b): (u32, u32) = (
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    );
    if a > b {
        return Err(bad());
    }
    Ok(a..=b)
}

fn report_checks(out: &mut dyn Write, checks: &[Check]) -> Result<bool, Failure> {
    for c in checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        writeln!(out, "{status} {}: {}", c.name, c.detail)
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    Ok(checks.iter().all(|c| c.passed))
}

fn parse_e_params(s: &str) -> Result<[i64; 5], Failure> {
    let v: Vec<i64> = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("{t:?} is not an integer")))
        })
        .collect::<Result<_, _>>()?;
    v.try_into()
        .map_err(|_| Failure::Usage("expected a,b,k,l,g".into()))
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<(), Failure> {
    match cli.command {
        Command::DetApprox { input, common } => {
            let a = input.load()?;
            let r = run_det_approx(&a, &common.tower()?, common.options())?;
            emit_report(out, &common, &r)
        }
        Command::BettiApprox { input, common } => {
            let a = input.load()?;
            let r = run_betti_approx(&a, &common.tower()?, common.field()?, common.options())?;
            emit_report(out, &common, &r)
        }
        Command::TorsionGrowth {
            complex,
            mapping_torus,
            e_complex,
            common,
        } => {
            let c: GRChainComplex = match (complex, mapping_torus, e_complex) {
                (Some(p), None, None) => match usage(parse_complex(&read_file(&p)?))? {
                    ComplexInput::GroupRing(c) => c,
                    ComplexInput::Integer(c) => GRChainComplex::from_int(1, &c),
                },
                (None, Some(m), None) => usage(mapping_torus_complex(&usage(parse_int_matrix(
                    &read_arg(&m)?,
                ))?))?,
                (None, None, Some(e)) => {
                    let [a, b, k, l, g] = parse_e_params(&e)?;
                    usage(section9_e_complex(a, b, k, l, g))?
                }
                _ => {
                    return Err(Failure::Usage(
                        "give exactly one of --complex, --mapping-torus, --e-complex".into(),
                    ))
                }
            };
            let r = run_torsion_growth(&c, &common.tower()?, common.options())?;
            emit_report(out, &common, &r)
        }
        Command::TraceApprox {
            input,
            degree,
            common,
        } => {
            let a = input.load()?;
            let r = run_trace_approx(&a, &common.tower()?, degree, common.options())?;
            emit_report(out, &common, &r)
        }
        Command::MappingTorus {
            matrix,
            d_max,
            common,
        } => {
            let m: IntMatrix = usage(parse_int_matrix(&read_arg(&matrix)?))?;
            let r = run_mapping_torus(&m, d_max, common.field()?, common.options())?;
            emit_report(out, &common, &r)
        }
        Command::Mahler {
            poly,
            rank,
            grid,
            json,
        } => {
            let p = usage(parse_poly(&poly, rank))?;
            let text = match (grid, rank) {
                (None, 1) => {
                    let v = mahler::<f64>(&p)?;
                    if json {
                        json!({"poly": p.to_string(), "mahler": v}).to_string()
                    } else {
                        format_real(v)
                    }
                }
                (None, _) => {
                    return Err(Failure::Usage(
                        "multivariate Mahler measure needs --grid".into(),
                    ))
                }
                (Some(n), _) => {
                    let seq = fk_det_torus_sequence::<f64>(&p, n)?;
                    if json {
                        let rows: Vec<_> = seq
                            .iter()
                            .map(
                                |e| json!({"grid": e.grid, "value": e.value, "skipped": e.skipped}),
                            )
                            .collect();
                        json!({"poly": p.to_string(), "torus": rows}).to_string()
                    } else {
                        seq.iter()
                            .map(|e| format!("{},{}", e.grid, format_real(e.value)))
                            .collect::<Vec<_>>()
                            .join("\n")
                    }
                }
            };
            emit(out, &None, &(text + "\n"))
        }
        Command::Section9 {
            a,
            b,
            k,
            l,
            g,
            json,
            out: path,
        } => {
            let c = usage(section9_complex(a, b, k, l, g))?;
            let r = torsion_report::<f64>(&c)?;
            let text = if json {
                serde_json::to_string_pretty(&r).expect("report serializes") + "\n"
            } else {
                let list = |v: &[f64]| {
                    v.iter()
                        .map(|x| format_real(*x))
                        .collect::<Vec<_>>()
                        .join(" ")
                };
                format!(
                    "homology,{}\nln_detprime,{}\nlaplacian_dets,{}\nregulators,{}\nrho_l2,{}\nrho_z,{}\n",
                    r.homology.join(" "),
                    list(&r.ln_detprime),
                    list(&r.laplacian_dets),
                    list(&r.regulators),
                    format_real(r.rho_l2),
                    format_real(r.rho_z)
                )
            };
            emit(out, &path, &text)
        }
        Command::Density { check, n } => {
            if check != "addendum" {
                return Err(Failure::Usage(format!("unknown check {check:?}")));
            }
            let ns = parse_range(&n)?;
            if *ns.start() < 2 {
                return Err(Failure::Usage("family indices start at 2".into()));
            }
            if report_checks(out, &addendum_checks(ns)?)? {
                Ok(())
            } else {
                Err(Failure::Compute(Error::Invalid(
                    "density checks failed".into(),
                )))
            }
        }
        Command::Simplicial { input, json } => {
            let s = usage(parse_simplicial(&read_file(&input)?))?;
            let chains = s.chains()?;
            let r = torsion_report::<f64>(&chains.complex)?;
            let groups = (0..=chains.complex.top_degree())
                .map(|n| homology(&chains.complex, n).map(|h| h.group.to_string()))
                .collect::<crate::error::Result<Vec<_>>>()?;
            let fundamental = s
                .fundamental_cycle()
                .map(|c| c.iter().map(|x| x.to_string()).collect::<Vec<_>>());
            let text = if json {
                let v = json!({
                    "simplex_counts": chains.counts(),
                    "homology": groups,
                    "fundamental_cycle": fundamental.as_ref().ok(),
                    "orientation": fundamental.as_ref().err().map(|e| e.to_string()),
                    "report": r,
                });
                serde_json::to_string_pretty(&v).expect("serializes") + "\n"
            } else {
                let counts = chains
                    .counts()
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(" ");
                let regs = r
                    .regulators
                    .iter()
                    .map(|x| format_real(*x))
                    .collect::<Vec<_>>()
                    .join(" ");
                format!(
                    "simplex_counts,{counts}\nhomology,{}\nregulators,{regs}\nrho_l2,{}\nrho_z,{}\n",
                    groups.join(" "),
                    format_real(r.rho_l2),
                    format_real(r.rho_z)
                )
            };
            emit(out, &None, &text)
        }
        Command::CheckIdentities { count, seed } => {
            if report_checks(out, &identity_checks(count, seed)?)? {
                Ok(())
            } else {
                Err(Failure::Compute(Error::Invalid(
                    "identity checks failed".into(),
                )))
            }
        }
    }
}

/// Run the command line on `argv` (including the program name), writing to `out`.
pub fn cli_main_with<I, S>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli, out) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(Failure::Compute(e)) => {
            eprintln!("error: {e}");
            3
        }
    }
}

/// Run the command line, writing to stdout.
pub fn cli_main<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    cli_main_with(argv, &mut lock)
}
