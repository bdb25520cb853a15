//! Argument parsing and command dispatch.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use icx_core::checkers::{
    check_integrally_convex_fn, check_integrally_convex_set, check_lnat, check_mnat,
    check_submodular, CheckReport,
};
use icx_core::extension::{evaluate_extension, Extension};
use icx_core::fixtures::{self, Family, FixtureId};
use icx_core::minimize::{brute_force_min, minimize_proximity_scaling};
use icx_core::proximity::{beta, beta_upper_bound};
use icx_core::scaling::scale_fn;
use icx_core::value::{render_decimal, render_rational};
use icx_core::{FnOracle, RationalPoint};

use crate::bench::{bench_rows, write_csv, BenchConfig};
use crate::error::{CliError, CliResult};
use crate::function_file;
use crate::repro::{self, REPRO_IDS};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_FAIL: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "icx",
    version,
    about = "Exact integral convexity, scaling, proximity and minimization on the integer lattice"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ClassArg {
    Icx,
    IcxSet,
    Lnat,
    Mnat,
    Submodular,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide a convexity class; exit 2 with a JSON witness on failure.
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "icx")]
        class: ClassArg,
    },
    /// Minimize by proximity scaling.
    Minimize {
        file: PathBuf,
        /// Print one row per scaling phase.
        #[arg(long)]
        trace: bool,
    },
    /// Minimize by exhaustive scan.
    Bruteforce { file: PathBuf },
    /// Write the scaled function x ↦ f(αx).
    Scale {
        file: PathBuf,
        #[arg(long)]
        alpha: i64,
        #[arg(short = 'o', long = "out")]
        out: PathBuf,
    },
    /// Evaluate the local convex extension at a rational point.
    Extension {
        file: PathBuf,
        /// Comma-separated coordinates such as "1,1/2,1/2".
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Print β_n and (n+1)!/2^(n−1).
    Beta {
        #[arg(long)]
        n: usize,
    },
    /// Run the claims for a worked example; "all" runs every id.
    Repro { id: String },
    /// Write a fixture as a function file.
    Export {
        id: String,
        #[arg(short = 'o', long = "out")]
        out: PathBuf,
    },
    /// Benchmark random instances and write one CSV row each.
    Bench {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value = "quad")]
        family: String,
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[arg(long, default_value_t = 2)]
        alpha: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_ERROR
            } else {
                EXIT_PASS
            };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    configure_threads();
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn configure_threads() {
    if let Some(k) = std::env::var("ICX_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
    {
        // a pool can only be installed once per process
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build_global();
    }
}

fn io(e: std::io::Error) -> CliError {
    CliError::Io {
        path: "<stdout>".into(),
        source: e,
    }
}

fn report(out: &mut dyn Write, r: &CheckReport) -> CliResult<i32> {
    let json = serde_json::to_string(r).expect("reports serialize");
    writeln!(out, "{json}").map_err(io)?;
    Ok(if r.verdict { EXIT_PASS } else { EXIT_FAIL })
}

fn load(path: &Path) -> CliResult<FnOracle> {
    function_file::read(path)
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> CliResult<i32> {
    match cmd {
        Command::Check { file, class } => {
            let f = load(&file)?;
            let r = match class {
                ClassArg::Icx => check_integrally_convex_fn(&f)?,
                ClassArg::IcxSet => check_integrally_convex_set(&f.nonempty_domain()?)?,
                ClassArg::Lnat => check_lnat(&f)?,
                ClassArg::Mnat => check_mnat(&f)?,
                ClassArg::Submodular => check_submodular(&f)?,
            };
            report(out, &r)
        }
        Command::Minimize { file, trace } => {
            let f = load(&file)?;
            let r = minimize_proximity_scaling(&f)?;
            writeln!(out, "{} value {}", r.minimizer, r.value).map_err(io)?;
            writeln!(out, "evaluations {} budget {}", r.evaluations, r.budget).map_err(io)?;
            if trace {
                for ph in &r.phases {
                    writeln!(
                        out,
                        "phase alpha={} start={} end={} iterations={} evaluations={}",
                        ph.alpha,
                        ph.start,
                        ph.end(),
                        ph.iterations,
                        ph.evaluations
                    )
                    .map_err(io)?;
                }
            }
            Ok(EXIT_PASS)
        }
        Command::Bruteforce { file } => {
            let (p, v) = brute_force_min(&load(&file)?)?;
            writeln!(out, "{p} value {v}").map_err(io)?;
            Ok(EXIT_PASS)
        }
        Command::Scale {
            file,
            alpha,
            out: path,
        } => {
            let g = scale_fn(&load(&file)?, alpha)?;
            function_file::write(&path, &g)?;
            Ok(EXIT_PASS)
        }
        Command::Extension { file, point } => {
            let f = load(&file)?;
            let x = RationalPoint::parse(&point)?;
            match evaluate_extension(&f, &x)? {
                Extension::Infinite => writeln!(out, "value +inf").map_err(io)?,
                Extension::Finite(c) => {
                    writeln!(out, "value {}", render_rational(&c.value)).map_err(io)?;
                    for (y, w) in &c.support {
                        writeln!(out, "  {y} weight {}", render_rational(w)).map_err(io)?;
                    }
                }
            }
            Ok(EXIT_PASS)
        }
        Command::Beta { n } => {
            writeln!(out, "{}", beta_line(n)?).map_err(io)?;
            Ok(EXIT_PASS)
        }
        Command::Repro { id } => {
            let ids: Vec<String> = if id == "all" {
                REPRO_IDS.iter().map(|s| s.to_string()).collect()
            } else {
                vec![id]
            };
            let mut all = true;
            for id in ids {
                let claims = repro::repro(&id)?;
                all &= claims.iter().all(|c| c.pass);
                for c in &claims {
                    writeln!(
                        out,
                        "{} {id}: {}",
                        if c.pass { "PASS" } else { "FAIL" },
                        c.name
                    )
                    .map_err(io)?;
                }
            }
            Ok(if all { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Export { id, out: path } => {
            let id: FixtureId = id.parse()?;
            let f = fixtures::build(id)?.oracle();
            function_file::write(&path, &f)?;
            Ok(EXIT_PASS)
        }
        Command::Bench {
            n,
            family,
            count,
            alpha,
            seed,
            out: path,
        } => {
            let family: Family = family.parse()?;
            let rows = bench_rows(&BenchConfig {
                n,
                family,
                count,
                alpha,
                seed,
            })?;
            match path {
                Some(p) => {
                    let file = File::create(&p).map_err(|source| CliError::Io {
                        path: p.display().to_string(),
                        source,
                    })?;
                    write_csv(BufWriter::new(file), &rows)?;
                }
                None => write_csv(out, &rows)?,
            }
            Ok(EXIT_PASS)
        }
    }
}

/// `β_n` exact, its decimal form when they differ, and the factorial bound
/// for `n ≥ 3`: `"27/2 (13.5), bound 15"`.
pub fn beta_line(n: usize) -> CliResult<String> {
    let b = beta(n)?;
    let mut s = render_rational(&b);
    if !b.is_integer() {
        if let Some(d) = render_decimal(&b) {
            s = format!("{s} ({d})");
        }
    }
    if n >= 3 {
        s = format!("{s}, bound {}", render_rational(&beta_upper_bound(n)?));
    }
    Ok(s)
}
