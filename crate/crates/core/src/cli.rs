//! The `cap` command-line tool.
//!
//! Exit codes are total: 0 for success (and for "closed" verdicts), 10 for a
//! not-closed verdict from `check`, 1 for catalog verification mismatches,
//! and 2 for any input error.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::closure;
use crate::constructions::{self, CatalogEntry};
use crate::fpalg::Subspace;
use crate::io::file::{load_subspace, render_aux_subspace, render_subspace};
use crate::io::report::{json_report, text_report};
use crate::search::{self, ScanConfig, ScanMode, SearchRecord};
use crate::spaces::SpaceContext;
use crate::{bounds, Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;
pub const EXIT_NOT_CLOSED: i32 = 10;

#[derive(Parser)]
#[command(
    name = "cap",
    version,
    about = "Capability of finite class-2 exponent-p groups via closure computations on subspaces of U∧U"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide capability of the group presented by a subspace file.
    /// Exit 0 when closed (capable), 10 when not closed, 2 on input error.
    Check {
        path: PathBuf,
        /// Emit the report as JSON.
        #[arg(long)]
        json: bool,
        /// Trust a positive certificate without confirming by direct
        /// closure computation.
        #[arg(long)]
        certified_only: bool,
    },
    /// Print the closure X** in the subspace file format (reloadable).
    Closure { path: PathBuf },
    /// Print a basis of X* (a subspace of W).
    Star { path: PathBuf },
    /// Print the orthogonal complement of X (reloadable).
    Complement { path: PathBuf },
    /// Print the explicit basis of ker Φ for the given n and p.
    Kernel {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
    },
    /// Print the layer exponents of G and of its canonical witness.
    Witness { path: PathBuf },
    /// Print the f(m) table (3..=M) or the r(d) table (0..=D).
    Bounds {
        #[arg(long, value_name = "M", conflicts_with = "r_max")]
        f_max: Option<u64>,
        #[arg(long, value_name = "D")]
        r_max: Option<u64>,
    },
    /// List the n=5 orbit catalog; with --verify, check every entry's
    /// verdict at the given prime (exit 0 iff all match).
    Catalog {
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = 3)]
        p: u64,
    },
    /// Scan subspaces of V(n) for non-closed examples.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        dim: usize,
        /// Enumerate every subspace of the given dimension.
        #[arg(long, conflicts_with = "random")]
        exhaustive: bool,
        /// Check COUNT uniformly sampled subspaces instead.
        #[arg(long, value_name = "COUNT")]
        random: Option<u64>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Checkpoint file; completed work units are skipped on resume.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Write discovered records to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Skip instances certified closed by the overlap bound.
        #[arg(long)]
        certified_only: bool,
    },
}

/// Entry point used by the binary and the fuzz tests; never panics on bad
/// input and always returns a documented exit code.
pub fn run(args: &[String]) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INPUT_ERROR,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT_ERROR
        }
    }
}

pub fn run_from_env() -> i32 {
    let args: Vec<String> = std::env::args().collect();
    run(&args)
}

fn dispatch(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Check {
            path,
            json,
            certified_only,
        } => {
            let (ctx, x) = load_subspace(&path)?;
            let report = closure::capability_report(&ctx, &x, certified_only)?;
            if json {
                println!("{}", json_report(&report));
            } else {
                print!("{}", text_report(&report));
            }
            Ok(if report.is_capable() {
                EXIT_OK
            } else {
                EXIT_NOT_CLOSED
            })
        }
        Command::Closure { path } => {
            let (ctx, x) = load_subspace(&path)?;
            let cl = closure::closure(&ctx, &x)?;
            print!("{}", render_subspace(&ctx, &cl));
            Ok(EXIT_OK)
        }
        Command::Star { path } => {
            let (ctx, x) = load_subspace(&path)?;
            let star = closure::star_v(&ctx, &x)?;
            print!("{}", render_aux_subspace(&ctx, "W", &star));
            Ok(EXIT_OK)
        }
        Command::Complement { path } => {
            let (ctx, x) = load_subspace(&path)?;
            let c = ctx.orthogonal_complement(&x)?;
            print!("{}", render_subspace(&ctx, &c));
            Ok(EXIT_OK)
        }
        Command::Kernel { n, p } => {
            let ctx = SpaceContext::new(n, p)?;
            let basis = ctx.kernel_basis();
            println!("p={} n={}", ctx.p(), ctx.n());
            println!("# ambient V^n dim {}", n * ctx.dim_v());
            println!("# {} kernel basis elements, one per row, slot-major", basis.len());
            println!("@matrix");
            for ke in &basis {
                let flat = ke.flatten();
                let cells: Vec<String> = flat.iter().map(|c| c.to_string()).collect();
                println!("{}", cells.join(" "));
            }
            Ok(EXIT_OK)
        }
        Command::Witness { path } => {
            let (ctx, x) = load_subspace(&path)?;
            let (g_exp, h_exp) = closure::witness_report(&ctx, &x)?;
            println!("|G| = p^{g_exp}");
            println!("witness |H| = p^{h_exp}");
            Ok(EXIT_OK)
        }
        Command::Bounds { f_max, r_max } => {
            const TABLE_CAP: u64 = 1_000_000;
            if f_max.or(r_max).is_some_and(|v| v > TABLE_CAP) {
                return Err(Error::Precondition(format!(
                    "table bound exceeds the supported maximum {TABLE_CAP}"
                )));
            }
            match (f_max, r_max) {
                (Some(m), None) => {
                    for v in 3..=m {
                        println!("{v} {}", bounds::f_of_m(v));
                    }
                    Ok(EXIT_OK)
                }
                (None, Some(d)) => {
                    for v in 0..=d {
                        println!("{v} {}", bounds::r_of_d(v));
                    }
                    Ok(EXIT_OK)
                }
                _ => Err(Error::Precondition(
                    "bounds needs exactly one of --f-max or --r-max".into(),
                )),
            }
        }
        Command::Catalog { verify, p } => run_catalog(verify, p),
        Command::Search {
            n,
            p,
            dim,
            exhaustive,
            random,
            jobs,
            seed,
            checkpoint,
            out,
            certified_only,
        } => {
            let mode = match (exhaustive, random) {
                (true, None) => ScanMode::Exhaustive,
                (false, Some(count)) => ScanMode::Random(count),
                _ => {
                    return Err(Error::Precondition(
                        "search needs exactly one of --exhaustive or --random COUNT".into(),
                    ))
                }
            };
            let max_instances = match std::env::var("CAP_MAX_INSTANCES") {
                Ok(v) => Some(v.parse::<u64>().map_err(|_| {
                    Error::Precondition(format!("CAP_MAX_INSTANCES must be an integer, got '{v}'"))
                })?),
                Err(_) => None,
            };
            let ctx = SpaceContext::new(n, p)?;
            let cfg = ScanConfig {
                k: dim,
                mode,
                workers: jobs,
                seed,
                certified_only,
                max_instances,
                checkpoint,
            };
            let started = Instant::now();
            let (records, summary) = search::scan(&ctx, &cfg)?;
            let elapsed = started.elapsed().as_secs_f64();

            let mode_str = match mode {
                ScanMode::Exhaustive => "exhaustive".to_string(),
                ScanMode::Random(count) => format!("random count={count}"),
            };
            println!(
                "scan n={n} p={p} dim={dim} mode={mode_str} seed={seed} certified_only={certified_only}"
            );
            println!(
                "checked={} certificate_skipped={} non_closed={} truncated={}",
                summary.checked,
                summary.certificate_skipped,
                summary.non_closed,
                summary.truncated
            );
            eprintln!(
                "elapsed {:.2}s, {:.0} checks/s",
                elapsed,
                summary.checked as f64 / elapsed.max(1e-9)
            );

            let rendered = render_records(&records);
            match out {
                Some(path) => std::fs::write(path, rendered)?,
                None => print!("{rendered}"),
            }
            Ok(EXIT_OK)
        }
    }
}

fn render_records(records: &[SearchRecord]) -> String {
    let mut out = String::new();
    for r in records {
        for row in r.subspace.basis_rows() {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out.push_str(&format!("dim_closure={}\n", r.dim_closure));
        out.push_str(&format!("epicenter_dim={}\n", r.epicenter_dim));
        out.push_str(&format!("source={}\n\n", r.source.render()));
    }
    out
}

fn run_catalog(verify: bool, p: u64) -> Result<i32> {
    let entries = constructions::catalog_n5();
    if !verify {
        for e in entries {
            println!(
                "{} n={} dim={} expected={} rule={} source={}",
                e.name,
                e.n,
                e.dim,
                verdict_str(e.expected_verdict),
                e.parameter_rule.name(),
                e.source
            );
        }
        return Ok(EXIT_OK);
    }
    let mut all_match = true;
    for e in entries {
        match check_entry(e, p) {
            Ok((got, epicenter)) => {
                let ok = got == e.expected_verdict && epicenter == e.expected_epicenter_dim;
                all_match &= ok;
                println!(
                    "{} p={} expected={} got={} epicenter={} {}",
                    e.name,
                    p,
                    verdict_str(e.expected_verdict),
                    verdict_str(got),
                    epicenter,
                    if ok { "ok" } else { "MISMATCH" }
                );
            }
            Err(err) => {
                all_match = false;
                println!("{} p={} ERROR {err}", e.name, p);
            }
        }
    }
    Ok(if all_match { EXIT_OK } else { EXIT_MISMATCH })
}

fn check_entry(entry: &CatalogEntry, p: u64) -> Result<(closure::Verdict, usize)> {
    let (ctx, x) = constructions::instantiate_entry(entry, p)?;
    let cl = closure::closure(&ctx, &x)?;
    let verdict = if cl == x {
        closure::Verdict::Closed
    } else {
        closure::Verdict::NotClosed
    };
    Ok((verdict, cl.dim() - x.dim()))
}

fn verdict_str(v: closure::Verdict) -> &'static str {
    match v {
        closure::Verdict::Closed => "closed",
        closure::Verdict::NotClosed => "not_closed",
    }
}

/// Helper for tests that need a loaded subspace plus its report quickly.
pub fn check_file_verdict(path: impl Into<PathBuf>) -> Result<(SpaceContext, Subspace, bool)> {
    let (ctx, x) = load_subspace(path.into())?;
    let closed = closure::is_closed(&ctx, &x)?;
    Ok((ctx, x, closed))
}
