//! The `cyclebound` command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.
//! Every report ends with one summary line.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand};

use crate::certifier::{bound_for_distortion, certify, dimension_bound, CertifyError};
use crate::l1metric::parse_embedding;
use crate::oracle::{search_embedding, SearchConfig};
use crate::pointset::{parse_pointset, GraphParams, PointSet, RecursiveCycleGraph};
use crate::selftest::run_selftest;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: u8,
    pub report: String,
}

impl CommandResult {
    fn new(exit_code: u8, mut body: String, summary: &str) -> Self {
        body.push_str(summary);
        body.push('\n');
        Self { exit_code, report: body }
    }

    fn usage(msg: impl std::fmt::Display) -> Self {
        Self::new(EXIT_USAGE, String::new(), &format!("error: {msg}"))
    }
}

#[derive(Debug, Parser)]
#[command(name = "cyclebound", version, about = "Recursive-cycle point sets, embedding certificates and dimension bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the point set P_{k,n} as a P1 file.
    Generate {
        #[arg(short = 'k')]
        k: u64,
        #[arg(short = 'n')]
        n: u64,
        /// Output path [default: pointset-k<k>-n<n>.p1]
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Certify an embedding of a point set against the dimension bound.
    Certify {
        pointset: PathBuf,
        embedding: PathBuf,
        /// Also write the per-constraint table as CSV.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Evaluate the dimension lower bound.
    #[command(group(ArgGroup::new("slack").required(true).args(["eps", "distortion"])))]
    Bound {
        #[arg(short = 'k')]
        k: u32,
        #[arg(short = 'n')]
        n: u32,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        distortion: Option<f64>,
    },
    /// Search for a low-distortion embedding into l1^d.
    Search {
        pointset: PathBuf,
        #[arg(short = 'd')]
        dimension: usize,
        #[arg(long, default_value_t = 2000)]
        iters: usize,
        #[arg(long, default_value_t = 4)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path [default: embedding-k<k>-n<n>-d<d>.l1emb]
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
        /// Sidecar report path [default: <output>.report]
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Run the built-in property suites.
    Selftest {
        /// Build graphs with reversed bottom paths; the identity suite must fail.
        #[arg(long)]
        flip_orientation: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return CommandResult { exit_code: code, report: e.render().to_string() };
        }
    };
    match cli.command {
        Command::Generate { k, n, output } => cmd_generate(k, n, output.as_deref()),
        Command::Certify { pointset, embedding, table } => cmd_certify(&pointset, &embedding, table.as_deref()),
        Command::Bound { k, n, eps, distortion } => cmd_bound(k, n, eps, distortion),
        Command::Search { pointset, dimension, iters, restarts, seed, output, report } => {
            let cfg = SearchConfig { iterations: iters, restarts, seed, ..SearchConfig::new(dimension) };
            cmd_search(&pointset, &cfg, output.as_deref(), report.as_deref())
        }
        Command::Selftest { flip_orientation, seed } => cmd_selftest(flip_orientation, seed),
    }
}

fn read(path: &Path) -> Result<String, CommandResult> {
    fs::read_to_string(path).map_err(|e| CommandResult::usage(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), CommandResult> {
    fs::write(path, text).map_err(|e| CommandResult::usage(format!("cannot write {}: {e}", path.display())))
}

/// Parses a P1 file and checks it against the construction.
fn load_pointset(path: &Path) -> Result<PointSet, CommandResult> {
    let text = read(path)?;
    let parsed = parse_pointset(&text).map_err(|e| CommandResult::usage(format!("{}: {e}", path.display())))?;
    let built = PointSet::construct(parsed.params()).map_err(CommandResult::usage)?;
    if parsed != built {
        return Err(CommandResult::usage(format!("{}: labels differ from the construction", path.display())));
    }
    Ok(parsed)
}

pub fn cmd_generate(k: u64, n: u64, output: Option<&Path>) -> CommandResult {
    let points = match GraphParams::new(k, n).and_then(PointSet::construct) {
        Ok(p) => p,
        Err(e) => return CommandResult::usage(e),
    };
    let path = output.map_or_else(|| PathBuf::from(format!("pointset-k{k}-n{n}.p1")), Path::to_path_buf);
    if let Err(r) = write(&path, &points.to_p1_string()) {
        return r;
    }
    let params = points.params();
    let mut body = String::new();
    writeln!(body, "N={}", points.len()).unwrap();
    writeln!(body, "dim={}", params.label_dim()).unwrap();
    writeln!(body, "edges={}", params.edge_count()).unwrap();
    CommandResult::new(EXIT_OK, body, &format!("wrote {} vertices to {}", points.len(), path.display()))
}

pub fn cmd_certify(pointset: &Path, embedding: &Path, table: Option<&Path>) -> CommandResult {
    let run = || -> Result<CommandResult, CommandResult> {
        let points = load_pointset(pointset)?;
        let emb_text = read(embedding)?;
        let emb = parse_embedding(&emb_text, &points)
            .map_err(|e| CommandResult::usage(format!("{}: {e}", embedding.display())))?;
        let graph = RecursiveCycleGraph::build(points.params()).map_err(CommandResult::usage)?;
        let report = match certify(&graph, &emb) {
            Ok(r) => r,
            Err(CertifyError::Degenerate) => {
                return Ok(CommandResult::new(
                    EXIT_USAGE,
                    "contraction=inf\n".into(),
                    "degenerate embedding: two distinct points share a vector",
                ))
            }
            Err(e) => return Err(CommandResult::usage(e)),
        };
        if let Some(path) = table {
            write(path, &report.constraints.to_csv())?;
        }
        let (code, summary) = if report.consistent {
            (EXIT_OK, "certificate consistent".to_string())
        } else {
            (
                EXIT_FAILED,
                format!(
                    "certificate INCONSISTENT: dimension {} is below the bound {}",
                    report.embedding_dimension, report.bound.min_dimension
                ),
            )
        };
        Ok(CommandResult::new(code, report.to_key_values(), &summary))
    };
    run().unwrap_or_else(|e| e)
}

pub fn cmd_bound(k: u32, n: u32, eps: Option<f64>, distortion: Option<f64>) -> CommandResult {
    let result = match (eps, distortion) {
        (Some(e), None) => dimension_bound(k, n, e),
        (None, Some(d)) => bound_for_distortion(k, n, d),
        _ => return CommandResult::usage("give exactly one of --eps and --distortion"),
    };
    match result {
        Ok(b) => {
            let summary = if b.applicable {
                format!("any embedding needs dimension >= {}", b.min_dimension)
            } else {
                "bound not applicable: epsilon >= 1/(k-1)".to_string()
            };
            CommandResult::new(EXIT_OK, b.to_key_values(), &summary)
        }
        Err(e) => CommandResult::usage(e),
    }
}

pub fn cmd_search(pointset: &Path, cfg: &SearchConfig, output: Option<&Path>, report: Option<&Path>) -> CommandResult {
    let run = || -> Result<CommandResult, CommandResult> {
        let points = load_pointset(pointset)?;
        let found = search_embedding(&points, cfg).map_err(CommandResult::usage)?;
        let params = points.params();
        let out = output.map_or_else(
            || PathBuf::from(format!("embedding-k{}-n{}-d{}.l1emb", params.k(), params.n(), cfg.target_dimension)),
            Path::to_path_buf,
        );
        let sidecar = report.map_or_else(
            || {
                let mut p = out.clone().into_os_string();
                p.push(".report");
                PathBuf::from(p)
            },
            Path::to_path_buf,
        );
        write(&out, &found.embedding.to_l1emb_string(&points))?;
        let mut body = String::new();
        writeln!(body, "d={}", cfg.target_dimension).unwrap();
        writeln!(body, "seed={}", cfg.seed).unwrap();
        writeln!(body, "iterations={}", cfg.iterations).unwrap();
        writeln!(body, "restarts={}", cfg.restarts).unwrap();
        writeln!(body, "best_restart={}", found.restart).unwrap();
        writeln!(body, "expansion={}", found.report.expansion).unwrap();
        writeln!(body, "contraction={}", found.report.contraction).unwrap();
        writeln!(body, "distortion={}", found.report.distortion).unwrap();
        write(&sidecar, &body)?;
        Ok(CommandResult::new(
            EXIT_OK,
            body,
            &format!("wrote embedding with distortion {} to {}", found.report.distortion, out.display()),
        ))
    };
    run().unwrap_or_else(|e| e)
}

pub fn cmd_selftest(flip: bool, seed: u64) -> CommandResult {
    let outcomes = run_selftest(flip, seed);
    let mut body = String::new();
    for o in &outcomes {
        let status = if o.ok() { "ok" } else { "FAIL" };
        writeln!(body, "{:<18} passed={:<6} failed={:<6} {status}", o.name, o.passed, o.failed).unwrap();
    }
    let failed = outcomes.iter().filter(|o| !o.ok()).count();
    if failed == 0 {
        CommandResult::new(EXIT_OK, body, &format!("all {} suites passed", outcomes.len()))
    } else {
        CommandResult::new(EXIT_FAILED, body, &format!("{failed} of {} suites failed", outcomes.len()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> CommandResult {
        run(std::iter::once("cyclebound").chain(args.iter().copied()))
    }

    #[test]
    fn bound_examples() {
        let r = run_args(&["bound", "-k", "2", "-n", "10", "--eps", "0"]);
        assert_eq!(r.exit_code, 0);
        assert!(r.report.contains("min_dimension=512\n"));
        let r = run_args(&["bound", "-k", "2", "-n", "20", "--distortion", "2"]);
        assert_eq!(r.exit_code, 0);
        assert!(r.report.contains("min_dimension=7\n"));
        let r = run_args(&["bound", "-k", "3", "-n", "5", "--eps", "0.6"]);
        assert_eq!(r.exit_code, 0);
        assert!(r.report.contains("applicable=false\n"));
    }

    #[test]
    fn bound_flag_errors() {
        assert_eq!(run_args(&["bound", "-k", "2", "-n", "3"]).exit_code, 2);
        assert_eq!(run_args(&["bound", "-k", "2", "-n", "3", "--eps", "0", "--distortion", "2"]).exit_code, 2);
        assert_eq!(run_args(&["bound", "-k", "1", "-n", "3", "--eps", "0"]).exit_code, 2);
        assert_eq!(run_args(&["bound", "-k", "2", "-n", "3", "--distortion", "0.5"]).exit_code, 2);
    }

    #[test]
    fn usage_errors_and_help() {
        assert_eq!(run_args(&[]).exit_code, 2);
        assert_eq!(run_args(&["frobnicate"]).exit_code, 2);
        assert_eq!(run_args(&["--help"]).exit_code, 0);
    }

    #[test]
    fn reports_end_with_one_summary_line() {
        let r = run_args(&["bound", "-k", "2", "-n", "4", "--eps", "0.1"]);
        assert!(r.report.ends_with('\n'));
        assert!(!r.report.ends_with("\n\n"));
        assert!(r.report.lines().last().unwrap().starts_with("any embedding needs"));
    }
}
