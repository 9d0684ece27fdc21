//! `bpilab`: character tables, B_pi sets and theorem checks from the command line.

mod examples;
mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bpilab::corpus::{builtin_by_name, builtin_corpus, load_corpus, load_group_spec, GroupSpec};
use bpilab::pichar::bpi_rows;
use bpilab::theorems::{run_corpus, run_entry, CheckName, Context, RunConfig, RunReport, DEFAULT_NUCLEUS_INDEX_BOUND};
use bpilab::{character_table, Error, PrimeSet};
use clap::{Parser, Subcommand};

use render::Format;

const DEFAULT_SEED: u64 = 0x5eed_b1a5;

#[derive(Parser, Debug)]
#[command(name = "bpilab", version, about = "Character theory of pi-separable permutation groups")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Seed for the randomized splitting in the table computation.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    seed: u64,
    /// Directory searched for relative group and corpus files.
    #[arg(long, env = "BPILAB_CORPUS_DIR", global = true)]
    corpus_dir: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Character table of a group.
    Table {
        /// `builtin:NAME` or a group file.
        #[arg(long)]
        group: String,
    },
    /// B_pi characters of a group.
    Bpi {
        #[arg(long)]
        group: String,
        /// Comma-separated primes.
        #[arg(long)]
        pi: String,
    },
    /// Run one check (or `all`) on a group.
    Verify {
        #[arg(long)]
        check: String,
        #[arg(long)]
        group: String,
        #[arg(long)]
        pi: String,
        /// Prime for the checks that take one; all prime divisors of |G| otherwise.
        #[arg(long)]
        p: Option<u64>,
    },
    /// Run checks over a corpus file, or the builtin corpus.
    CorpusRun {
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Comma-separated check names; all checks by default.
        #[arg(long)]
        checks: Option<String>,
    },
    /// Reproduce a worked example.
    Example {
        #[arg(long)]
        name: String,
    },
}

/// What a verb produced and how it should exit.
struct Output {
    body: String,
    code: u8,
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::Input(_) | Error::Document(_) | Error::BoundExceeded { .. } | Error::NotSeparable(_) => 2,
        _ => 1,
    }
}

fn resolve(path: &Path, dir: Option<&Path>) -> PathBuf {
    match dir {
        Some(d) if path.is_relative() && !path.exists() => d.join(path),
        _ => path.to_path_buf(),
    }
}

fn read(path: &Path, dir: Option<&Path>) -> Result<String, Error> {
    let p = resolve(path, dir);
    std::fs::read_to_string(&p).map_err(|e| Error::Input(format!("{}: {e}", p.display())))
}

fn group_spec(source: &str, dir: Option<&Path>) -> Result<GroupSpec, Error> {
    match source.strip_prefix("builtin:") {
        Some(name) => builtin_by_name(name),
        None => load_group_spec(&read(Path::new(source), dir)?),
    }
}

fn parse_checks(s: &str) -> Result<Vec<CheckName>, Error> {
    if s == "all" {
        return Ok(CheckName::ALL.to_vec());
    }
    s.split(',').map(|c| CheckName::parse(c.trim())).collect()
}

fn report_exit(report: &RunReport) -> u8 {
    if report.has_failures() {
        1
    } else if !report.run.rejected.is_empty() {
        2
    } else {
        0
    }
}

fn run(cli: &Cli) -> Result<Output, Error> {
    let dir = cli.corpus_dir.as_deref();
    match &cli.verb {
        Verb::Table { group } => {
            let spec = group_spec(group, dir)?;
            let t = character_table(&spec.build()?)?;
            Ok(Output { body: render::render_table(&spec.name, &t, cli.format)?, code: 0 })
        }
        Verb::Bpi { group, pi } => {
            let spec = group_spec(group, dir)?;
            let g = spec.build()?;
            let pi = PrimeSet::parse(pi)?;
            let rows = bpi_rows(&g, &pi)?;
            let t = character_table(&g)?;
            let count = t.classes().count_pi_classes(&pi);
            let body = render::render_bpi(&spec.name, &pi, &rows, &t.degrees(), count, cli.format);
            Ok(Output { body, code: 0 })
        }
        Verb::Verify { check, group, pi, p } => {
            let checks = parse_checks(check)?;
            let spec = group_spec(group, dir)?;
            let g = spec.build()?;
            let pi = PrimeSet::parse(pi)?;
            let report = match p {
                None => {
                    let config = RunConfig { checks, ..RunConfig::default() };
                    match run_entry(&spec.name, &g, &pi, &config) {
                        Ok(results) => RunReport::from_results(results, Vec::new(), 1),
                        Err(rej) => RunReport::from_results(Vec::new(), vec![rej], 1),
                    }
                }
                Some(p) => {
                    if !bpilab::primes::is_prime(*p) {
                        return Err(Error::Input(format!("{p} is not a prime")));
                    }
                    if !g.is_pi_separable(&pi)? {
                        return Err(Error::NotSeparable(pi.to_string()));
                    }
                    let ctx = Context::new(&spec.name, &g, &pi)?;
                    let results = checks
                        .iter()
                        .map(|&c| {
                            let p = c.needs_prime().then_some(*p);
                            ctx.run(c, p, DEFAULT_NUCLEUS_INDEX_BOUND).unwrap_or_else(|e| {
                                bpilab::theorems::VerificationReport::aborted(c, &spec.name, &pi, p, &e)
                            })
                        })
                        .collect();
                    RunReport::from_results(results, Vec::new(), 1)
                }
            };
            Ok(Output { body: render::render_report(&report, cli.format)?, code: report_exit(&report) })
        }
        Verb::CorpusRun { corpus, checks } => {
            let groups = match corpus {
                Some(path) => load_corpus(&read(path, dir)?)?,
                None => builtin_corpus(),
            };
            let checks = match checks {
                Some(s) => parse_checks(s)?,
                None => CheckName::ALL.to_vec(),
            };
            eprintln!("running {} checks on {} corpus entries", checks.len(), groups.len());
            let report = run_corpus(&groups, &RunConfig { checks, ..RunConfig::default() });
            eprintln!("done: {} results", report.results.len());
            Ok(Output { body: render::render_report(&report, cli.format)?, code: report_exit(&report) })
        }
        Verb::Example { name } => {
            eprintln!("computing {name}");
            let out = examples::run(name)?;
            let body = match cli.format {
                Format::Text => out.text,
                Format::Json => serde_json::to_string_pretty(&out.doc).map_err(Error::from)? + "\n",
            };
            Ok(Output { body, code: if out.holds { 0 } else { 1 } })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    bpilab::dixon::set_seed(cli.seed);
    let out = match run(&cli) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("bpilab: {e}");
            return ExitCode::from(exit_for(&e));
        }
    };
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &out.body) {
                eprintln!("bpilab: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{}", out.body),
    }
    ExitCode::from(out.code)
}

#[cfg(test)]
mod tests {
    use super::*;
    use bpilab::theorems::{Rejection, Side, Status, VerificationReport};

    fn result(holds: bool, status: Status) -> VerificationReport {
        let side = Side { statement: "s".into(), holds: true, witness: None };
        VerificationReport {
            check: CheckName::WolfCount,
            group: "G".into(),
            pi: vec![2],
            p: None,
            lhs: side.clone(),
            rhs: side,
            equivalence_holds: holds,
            status,
            parts: Vec::new(),
            elapsed_ms: None,
        }
    }

    #[test]
    fn exit_codes() {
        let rej = Rejection { group: "S5".into(), pi: vec![2], reason: "not separable".into() };
        let ok = RunReport::from_results(vec![result(true, Status::Pass)], Vec::new(), 1);
        let fail = RunReport::from_results(vec![result(false, Status::Fail)], vec![rej.clone()], 2);
        let abort = RunReport::from_results(vec![result(false, Status::Error)], Vec::new(), 1);
        let rejected = RunReport::from_results(vec![result(true, Status::Pass)], vec![rej], 2);
        assert_eq!(report_exit(&ok), 0);
        assert_eq!(report_exit(&fail), 1);
        assert_eq!(report_exit(&abort), 1);
        assert_eq!(report_exit(&rejected), 2);
        assert_eq!(exit_for(&Error::Input("x".into())), 2);
        assert_eq!(exit_for(&Error::Invariant("x".into())), 1);
    }
}
