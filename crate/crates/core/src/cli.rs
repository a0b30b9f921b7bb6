//! The `ajr` command line.
//!
//! Exit codes: 0 on success, 2 for invalid flags or arguments, 1 for runtime
//! failures such as unreadable or malformed input files.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::axioms::{ajr_committee_count, evaluate, evaluate_all};
use crate::election::{ApprovalProfile, Committee, ElectionSpec};
use crate::error::{Error, Result};
use crate::montecarlo::{parse_grid, sample_profile, sweep};
use crate::theory::appendix::{
    claim4_limit_constant, phi, prop1_bound_check, prop1_limit_constant, verify_claim4,
    verify_prop8, CLAIM4_DEFAULT_MAX, PROP8_DEFAULT_MAX,
};
use crate::theory::polyhedron::{
    build_polyhedron, expectation_vector, inner_point, polyhedron_membership, row_slacks,
    MembershipMode, PolyhedronCase,
};
use crate::theory::{
    classify_lemma, classify_theorem, p0, write_u_curves, PhaseReport, TheoryPoint, CLASSIFY_TOL,
    SOLVER_TOL,
};

#[derive(Debug, Parser)]
#[command(name = "ajr", version, about = "Average justified representation: checkers, analytics and simulation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Transition points p1* = 1/k and p2* for committee size k
    Phase {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = SOLVER_TOL)]
        tol: f64,
    },
    /// t_ell, n_ell/n and u_ell at one point, or U(T) curves with --curve
    Theory {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long, required_unless_present = "curve")]
        p: Option<f64>,
        /// Emit k,ell,p,T,U rows over --grid instead of one point
        #[arg(long)]
        curve: bool,
        #[arg(long, default_value = "0:1:0.01", requires = "curve")]
        grid: String,
    },
    /// Axiom checks for a profile file
    Check {
        #[arg(long)]
        file: PathBuf,
        /// Committee as an m-character 0/1 string
        #[arg(long, conflicts_with = "all")]
        committee: Option<String>,
        /// Report every committee
        #[arg(long)]
        all: bool,
    },
    /// Regime at (k, p); with --m also the per-ell classification
    Classify {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = CLASSIFY_TOL)]
        tol: f64,
    },
    /// Draw one random profile
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// AJR-existence frequency over a p grid, written as CSV
    Sweep {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// start:stop:step
        #[arg(long)]
        grid: String,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Numerical inequality scans
    VerifyAppendix {
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long)]
        max: Option<usize>,
    },
    /// Constraint polyhedra over ballot-type histograms
    Polyhedron {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, required_if_eq("case", "neg"))]
        ell: Option<usize>,
        #[arg(long)]
        p: f64,
        #[arg(long, value_enum)]
        case: CaseArg,
        #[arg(long, value_enum)]
        test: TestArg,
        /// Voter count for --test inner
        #[arg(long, default_value_t = 1_000_000)]
        n: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Prop8,
    Claim4,
    Prop1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CaseArg {
    Neg,
    Pos,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TestArg {
    Expectation,
    Inner,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                2
            } else {
                let _ = write!(stdout, "{e}");
                0
            };
            return code;
        }
    };
    match execute(cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            match e {
                Error::InvalidArgument(_) | Error::InvalidSpec(_) => 2,
                Error::Parse { .. } | Error::Io { .. } | Error::Output(_) => 1,
            }
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

fn write_file(path: &Path, contents: &[u8]) -> Result<()> {
    fs::write(path, contents).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

fn execute(command: Command, out: &mut dyn Write) -> Result<()> {
    match command {
        Command::Phase { k, tol } => {
            writeln!(out, "{}", to_json(&PhaseReport::new(k, tol)?))?;
        }
        Command::Theory { k, ell, p, curve, grid } => {
            if curve {
                let ps = parse_grid(&grid)?;
                let mut buf = Vec::new();
                write_u_curves(&mut buf, k, ell, &ps)?;
                out.write_all(&buf)?;
            } else {
                let p = p.expect("clap enforces --p");
                writeln!(out, "{}", to_json(&TheoryPoint::new(k, ell, p)?))?;
            }
        }
        Command::Check { file, committee, all } => {
            let profile = ApprovalProfile::parse(&read_file(&file)?)?;
            check(&profile, committee.as_deref(), all, out)?;
        }
        Command::Classify { k, m, p, tol } => {
            let theorem = classify_theorem(k, p, tol)?;
            let value = match m {
                Some(m) => {
                    let lemma = classify_lemma(k, m, p, tol)?;
                    json!({ "k": k, "m": m, "p": p, "tolerance": tol, "theorem": theorem, "lemma": lemma })
                }
                None => json!({ "k": k, "p": p, "tolerance": tol, "theorem": theorem }),
            };
            writeln!(out, "{}", to_json(&value))?;
        }
        Command::Sample { n, m, k, p, seed, out: path } => {
            let spec = ElectionSpec::new(n, m, k)?;
            let text = sample_profile(spec, p, seed)?.to_text();
            match path {
                Some(path) => write_file(&path, text.as_bytes())?,
                None => out.write_all(text.as_bytes())?,
            }
        }
        Command::Sweep { k, m, n, grid, trials, seed, out: path } => {
            let spec = ElectionSpec::new(n, m, k)?;
            let ps = parse_grid(&grid)?;
            let mut buf = Vec::new();
            sweep(spec, &ps, trials, seed, &mut buf)?;
            write_file(&path, &buf)?;
        }
        Command::VerifyAppendix { which, max } => {
            writeln!(out, "{}", to_json(&appendix(which, max)?))?;
        }
        Command::Polyhedron { m, k, ell, p, case, test, n } => {
            let case = match case {
                CaseArg::Neg => PolyhedronCase::Negative { ell: ell.expect("clap enforces --ell") },
                CaseArg::Pos => PolyhedronCase::Positive,
            };
            let poly = build_polyhedron(m, k, p, case)?;
            let (point, mode, strict) = match test {
                TestArg::Expectation => (expectation_vector(m, p)?, MembershipMode::Cone, false),
                TestArg::Inner => {
                    let x = inner_point(m, k, p, n, case)?;
                    (x.iter().map(|&v| v as f64).collect(), MembershipMode::Full, true)
                }
            };
            let member = polyhedron_membership(&point, &poly, mode, strict)?;
            let slacks = row_slacks(&point, &poly, mode)?;
            let min_slack = slacks.iter().copied().fold(f64::INFINITY, f64::min);
            let value = json!({
                "m": m,
                "k": k,
                "p": p,
                "case": case,
                "test": match test { TestArg::Expectation => "expectation", TestArg::Inner => "inner" },
                "dimension": poly.dimension(),
                "rows": poly.rows.len(),
                "mode": mode,
                "strict": strict,
                "member": member,
                "min_slack": if slacks.is_empty() { None } else { Some(min_slack) },
                "l1_norm": point.iter().sum::<f64>(),
            });
            writeln!(out, "{}", to_json(&value))?;
        }
    }
    Ok(())
}

fn check(
    profile: &ApprovalProfile,
    committee: Option<&str>,
    all: bool,
    out: &mut dyn Write,
) -> Result<()> {
    let m = profile.spec().m();
    if let Some(bits) = committee {
        let w = Committee::from_bits(bits, profile.spec())?;
        writeln!(out, "committee={}", w.members().to_bits(m))?;
        writeln!(out, "{}", evaluate(profile, &w))?;
        return Ok(());
    }
    if all {
        for (w, report) in evaluate_all(profile) {
            writeln!(out, "committee={}", w.members().to_bits(m))?;
            writeln!(out, "{report}")?;
            writeln!(out)?;
        }
    }
    let (count, first) = ajr_committee_count(profile);
    writeln!(out, "ajr_committee_count={count}")?;
    match first {
        Some(w) => writeln!(out, "first_ajr_committee={}", w.members().to_bits(m))?,
        None => writeln!(out, "first_ajr_committee=none")?,
    }
    Ok(())
}

fn appendix(which: Which, max: Option<usize>) -> Result<serde_json::Value> {
    Ok(match which {
        Which::Prop8 => {
            let max = max.unwrap_or(PROP8_DEFAULT_MAX);
            json!({ "which": "prop8", "max": max, "outcome": verify_prop8(max)? })
        }
        Which::Claim4 => {
            let max = max.unwrap_or(CLAIM4_DEFAULT_MAX);
            json!({
                "which": "claim4",
                "max": max,
                "outcome": verify_claim4(max)?,
                "phi_at_1e6": phi(1_000_000, p0(1_000_000)),
                "limit": claim4_limit_constant(),
            })
        }
        Which::Prop1 => {
            let max = max.unwrap_or(64);
            if max < 3 {
                return crate::error::invalid(format!("max must be at least 3, got {max}"));
            }
            let checks = (3..=max).map(prop1_bound_check).collect::<Result<Vec<_>>>()?;
            let first_failure = checks.iter().find(|c| !c.holds).map(|c| c.k);
            json!({
                "which": "prop1",
                "max": max,
                "holds": first_failure.is_none(),
                "first_failure": first_failure,
                "limit": prop1_limit_constant(),
            })
        }
    })
}
