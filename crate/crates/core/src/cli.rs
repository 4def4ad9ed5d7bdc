//! Command-line front end.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::ops::ControlFlow;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::applications::{build_cvc_instance, enumerate_min_cvc};
use crate::brute::{brute_common_independent, brute_matchings, brute_min_cvc, BruteForceReport, Mode, Verdict};
use crate::error::{Error, Result};
use crate::exchange::build_exchange_digraph;
use crate::intersection::{enumerate_large, enumerate_maximum};
use crate::io::{parse_instance, parse_set, Instance, Loaded};
use crate::matching::{enumerate_large_matchings, enumerate_maximum_matchings};
use crate::ranked::{ranked_enumerate, IntersectionThreshold, MatchingThreshold, ThresholdAlgorithm};
use crate::set::ElementSet;
use crate::stats::EnumerationStats;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "matroid-enum", version, about = "Enumerate maximal common independent sets and maximal matroid matchings")]
struct Cli {
    /// Print solutions as JSON arrays instead of space-separated ids.
    #[arg(long, global = true)]
    json: bool,
    /// Append an enumeration statistics record (JSON) to stderr.
    #[arg(long, global = true)]
    stats: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Source {
    /// Instance file; standard input when omitted or "-".
    file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// All maximum common independent sets of a matroid pair.
    MaxEnum {
        #[command(flatten)]
        source: Source,
        /// Print the exchange digraph of this common independent set
        /// (e.g. "1,2,3") in DOT format instead of enumerating.
        #[arg(long, value_name = "SET")]
        dump_digraph: Option<String>,
    },
    /// Maximal common independent sets with at least TAU elements.
    LargeEnum {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 0)]
        tau: usize,
        /// Emit in non-increasing order of size.
        #[arg(long)]
        ranked: bool,
        #[arg(long, value_name = "SET")]
        dump_digraph: Option<String>,
    },
    /// All maximal solutions of a pair or matching instance by decreasing
    /// size.
    Ranked {
        #[command(flatten)]
        source: Source,
        /// Stop after the first I solutions.
        #[arg(long, value_name = "I")]
        first: Option<usize>,
        /// Smallest size to report.
        #[arg(long, default_value_t = 0)]
        floor: usize,
    },
    /// Maximal matroid matchings with at least TAU edges.
    MatchEnum {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 0)]
        tau: usize,
        /// Only the maximum matchings.
        #[arg(long, conflicts_with_all = ["tau", "ranked"])]
        maximum: bool,
        #[arg(long)]
        ranked: bool,
    },
    /// Application problems.
    App {
        #[arg(value_enum)]
        problem: AppProblem,
        #[command(flatten)]
        source: Source,
        /// Size threshold. For b-matching, colorful-forest and dcs it is a
        /// lower bound on the solution size. For cvc it is an upper bound
        /// on the cover size (internally the matching threshold is
        /// |V| - TAU); it defaults to |V| there.
        #[arg(long)]
        tau: Option<usize>,
        /// Emit larger solutions first (smaller covers first for cvc).
        #[arg(long)]
        ranked: bool,
    },
    /// Compare an enumeration with the brute-force oracle and print
    /// MATCH or the difference.
    Verify {
        #[command(flatten)]
        source: Source,
        /// Threshold as in the enumeration commands (cvc: upper bound).
        #[arg(long)]
        tau: Option<usize>,
    },
    /// Run the default enumeration for the instance and print its
    /// statistics record to stdout. Only oracle-call counts are printed
    /// unless --timings is given, so the output is reproducible.
    Stats {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        tau: Option<usize>,
        /// Include wall-clock gaps in nanoseconds.
        #[arg(long)]
        timings: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum AppProblem {
    BMatching,
    ColorfulForest,
    Dcs,
    Cvc,
}

impl AppProblem {
    fn name(self) -> &'static str {
        match self {
            AppProblem::BMatching => "b-matching",
            AppProblem::ColorfulForest => "colorful-forest",
            AppProblem::Dcs => "dcs",
            AppProblem::Cvc => "cvc",
        }
    }
}

struct Output<'w> {
    out: &'w mut dyn Write,
    json: bool,
}

impl Output<'_> {
    fn solution(&mut self, s: &ElementSet) -> ControlFlow<()> {
        let line = if self.json {
            serde_json::to_string(s).expect("sets serialize")
        } else {
            s.to_string()
        };
        // A failed write (for example a closed pipe) stops the enumeration.
        match writeln!(self.out, "{line}").and_then(|_| self.out.flush()) {
            Ok(()) => ControlFlow::Continue(()),
            Err(_) => ControlFlow::Break(()),
        }
    }

    fn text(&mut self, text: &str) -> Result<()> {
        self.out
            .write_all(text.as_bytes())
            .and_then(|_| self.out.flush())
            .map_err(|e| Error::Input(format!("cannot write output: {e}")))
    }
}

fn load(source: &Source, stdin: &mut dyn Read) -> Result<Loaded> {
    let text = match &source.file {
        Some(path) if path.as_os_str() != "-" => std::fs::read_to_string(path)
            .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?,
        _ => {
            let mut text = String::new();
            stdin
                .read_to_string(&mut text)
                .map_err(|e| Error::Input(format!("cannot read standard input: {e}")))?;
            text
        }
    };
    parse_instance(&text)
}

fn report_stats(err: &mut dyn Write, enabled: bool, stats: &impl Serialize) {
    if enabled {
        let _ = writeln!(err, "{}", serde_json::to_string(stats).expect("stats serialize"));
    }
}

fn write_digraph(instance: &Instance, set: &str, out: &mut Output<'_>) -> Result<()> {
    let (m1, m2) = instance.matroid_pair()?;
    let d = build_exchange_digraph(&m1, &m2, &parse_set(set)?)?;
    out.text(&d.to_dot())
}

fn ranked_run(
    algorithm: &dyn ThresholdAlgorithm,
    floor: usize,
    first: Option<usize>,
    out: &mut Output<'_>,
) -> Result<EnumerationStats> {
    let mut emitted = 0;
    if first == Some(0) {
        return Ok(EnumerationStats::default());
    }
    let ranked = ranked_enumerate(algorithm, floor, &mut |s| {
        emitted += 1;
        out.solution(s)?;
        if Some(emitted) == first {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(ranked.stats)
}

/// Covers in non-decreasing size: the matching enumeration ranked by
/// decreasing matching size, mapped through the reduction.
fn ranked_cvc(graph: &crate::graph::Graph, tau: usize, out: &mut Output<'_>) -> Result<EnumerationStats> {
    if graph.vertices <= 2 {
        let mut covers = Vec::new();
        let stats = enumerate_min_cvc(graph, tau, &mut |c| {
            covers.push(c.clone());
            ControlFlow::Continue(())
        })?;
        covers.sort_by_key(ElementSet::len);
        for c in &covers {
            if out.solution(c).is_break() {
                break;
            }
        }
        return Ok(stats);
    }
    let inst = build_cvc_instance(graph)?;
    let algorithm = MatchingThreshold { pair: inst.pair.clone() };
    let floor = graph.vertices.saturating_sub(tau);
    let ranked = ranked_enumerate(&algorithm, floor, &mut |m| out.solution(&inst.cover(m)))?;
    Ok(ranked.stats)
}

/// Default enumeration of an instance. `tau` is a lower bound except for
/// CVC, where it is an upper bound defaulting to `|V|`.
fn enumerate_default(instance: &Instance, tau: Option<usize>, sink: &mut dyn FnMut(&ElementSet) -> ControlFlow<()>) -> Result<EnumerationStats> {
    match instance {
        Instance::Matching { .. } => enumerate_large_matchings(&instance.tractable_pair()?, tau.unwrap_or(0), sink),
        Instance::Cvc { .. } => {
            let g = instance.cvc_graph()?;
            enumerate_min_cvc(g, tau.unwrap_or(g.vertices), sink)
        }
        _ => {
            let (m1, m2) = instance.matroid_pair()?;
            enumerate_large(&m1, &m2, tau.unwrap_or(0), sink)
        }
    }
}

fn brute_default(instance: &Instance, tau: Option<usize>) -> Result<Vec<ElementSet>> {
    match instance {
        Instance::Matching { .. } => brute_matchings(&instance.tractable_pair()?, Mode::Maximal, tau.unwrap_or(0)),
        Instance::Cvc { .. } => {
            let g = instance.cvc_graph()?;
            brute_min_cvc(g, tau.unwrap_or(g.vertices))
        }
        _ => {
            let (m1, m2) = instance.matroid_pair()?;
            brute_common_independent(&m1, &m2, Mode::Maximal, tau.unwrap_or(0))
        }
    }
}

fn verify(loaded: &Loaded, tau: Option<usize>, out: &mut Output<'_>) -> Result<i32> {
    let mut streamed = Vec::new();
    enumerate_default(&loaded.instance, tau, &mut |s| {
        streamed.push(s.clone());
        ControlFlow::Continue(())
    })?;
    let mut report = BruteForceReport::new(loaded.digest.clone(), brute_default(&loaded.instance, tau)?);
    let verdict = report.compare(&streamed).clone();
    if out.json {
        out.text(&format!("{}\n", serde_json::to_string(&report).expect("reports serialize")))?;
    } else {
        let mut text = String::new();
        match &verdict {
            Verdict::Match => text.push_str("MATCH\n"),
            Verdict::Mismatch {
                missing,
                unexpected,
                duplicates,
            } => {
                text.push_str("MISMATCH\n");
                for (label, sets) in [("missing", missing), ("unexpected", unexpected), ("duplicate", duplicates)] {
                    for s in sets {
                        text.push_str(&format!("{label}: {s}\n"));
                    }
                }
            }
        }
        text.push_str(&format!(
            "solutions: {} digest: {}\n",
            report.solutions.len(),
            report.digest
        ));
        out.text(&text)?;
    }
    Ok(if verdict == Verdict::Match { EXIT_OK } else { EXIT_MISMATCH })
}

fn execute(cli: Cli, stdin: &mut dyn Read, out: &mut Output<'_>, err: &mut dyn Write) -> Result<i32> {
    let show_stats = cli.stats;
    let stats = match cli.command {
        Command::MaxEnum { source, dump_digraph } => {
            let loaded = load(&source, stdin)?;
            if let Some(set) = dump_digraph {
                write_digraph(&loaded.instance, &set, out)?;
                return Ok(EXIT_OK);
            }
            let (m1, m2) = loaded.instance.matroid_pair()?;
            enumerate_maximum(&m1, &m2, &mut |s| out.solution(s))?
        }
        Command::LargeEnum {
            source,
            tau,
            ranked,
            dump_digraph,
        } => {
            let loaded = load(&source, stdin)?;
            if let Some(set) = dump_digraph {
                write_digraph(&loaded.instance, &set, out)?;
                return Ok(EXIT_OK);
            }
            let (m1, m2) = loaded.instance.matroid_pair()?;
            if ranked {
                ranked_run(&IntersectionThreshold { m1, m2 }, tau, None, out)?
            } else {
                enumerate_large(&m1, &m2, tau, &mut |s| out.solution(s))?
            }
        }
        Command::Ranked { source, first, floor } => {
            let loaded = load(&source, stdin)?;
            match &loaded.instance {
                Instance::Matching { .. } => {
                    let pair = loaded.instance.tractable_pair()?;
                    ranked_run(&MatchingThreshold { pair }, floor, first, out)?
                }
                Instance::Cvc { .. } => {
                    return Err(Error::Input("use `app cvc --ranked` for CVC instances".into()));
                }
                other => {
                    let (m1, m2) = other.matroid_pair()?;
                    ranked_run(&IntersectionThreshold { m1, m2 }, floor, first, out)?
                }
            }
        }
        Command::MatchEnum {
            source,
            tau,
            maximum,
            ranked,
        } => {
            let loaded = load(&source, stdin)?;
            let pair = loaded.instance.tractable_pair()?;
            if maximum {
                enumerate_maximum_matchings(&pair, &mut |s| out.solution(s))?
            } else if ranked {
                ranked_run(&MatchingThreshold { pair }, tau, None, out)?
            } else {
                enumerate_large_matchings(&pair, tau, &mut |s| out.solution(s))?
            }
        }
        Command::App {
            problem,
            source,
            tau,
            ranked,
        } => {
            let loaded = load(&source, stdin)?;
            if loaded.instance.problem() != problem.name() {
                return Err(Error::Input(format!(
                    "expected a {} instance, found {}",
                    problem.name(),
                    loaded.instance.problem()
                )));
            }
            match (&loaded.instance, ranked) {
                (Instance::Cvc { .. }, true) => {
                    let g = loaded.instance.cvc_graph()?;
                    ranked_cvc(g, tau.unwrap_or(g.vertices), out)?
                }
                (instance, true) => {
                    let (m1, m2) = instance.matroid_pair()?;
                    ranked_run(&IntersectionThreshold { m1, m2 }, tau.unwrap_or(0), None, out)?
                }
                (instance, false) => enumerate_default(instance, tau, &mut |s| out.solution(s))?,
            }
        }
        Command::Verify { source, tau } => {
            let loaded = load(&source, stdin)?;
            return verify(&loaded, tau, out);
        }
        Command::Stats { source, tau, timings } => {
            let loaded = load(&source, stdin)?;
            let stats = enumerate_default(&loaded.instance, tau, &mut |_| ControlFlow::Continue(()))?;
            out.text(&format!("{}\n", stats.to_json(timings)))?;
            stats
        }
    };
    report_stats(err, show_stats, &stats);
    Ok(EXIT_OK)
}

/// Runs the command line `args` (including the program name) and returns
/// the process exit code.
pub fn run_cli<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let mut out = Output {
        out: stdout,
        json: cli.json,
    };
    match execute(cli, stdin, &mut out, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            match e {
                Error::Input(_) => EXIT_INPUT,
                Error::Contract(_) | Error::Guard(_) => EXIT_PRECONDITION,
            }
        }
    }
}
