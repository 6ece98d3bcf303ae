//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 for invalid input or usage, 2 when an
//! exhaustive search exceeds its size cap.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clustering::{compare_to_er, crossover_summary, ClusteringBoundReport};
use crate::econ::{total_utility, validate_model, BenefitSpec, Model, ModelSpec};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracle::{enumerate_max_with, OracleConfig, ARGMAX_TOL, DEFAULT_N_CAP, HARD_N_CAP};
use crate::stability::{check_pairwise_stable, efficiency_stability_audit};
use crate::synthesis::{core_periphery, synthesize};

#[derive(Debug, Parser)]
#[command(
    name = "sepnet",
    about = "Efficient networks under separable link costs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the efficient network for a model.
    Synthesize {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustively maximise welfare over every graph.
    Oracle {
        #[arg(long)]
        model: PathBuf,
        #[arg(long = "max-n", default_value_t = DEFAULT_N_CAP)]
        max_n: usize,
        #[arg(long = "allow-n8")]
        allow_n8: bool,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Check whether a graph is efficient for a model.
    Verify {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Minimum clustering of an efficient network with a given link count.
    ClusterBound {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        links: usize,
        /// Write the full link-count grid for `n` as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Locate the ER crossover for each n in a range `a:b`.
    ErSweep {
        #[arg(long = "n-range")]
        n_range: String,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Pairwise-stability report for a graph, or for the efficient network.
    Stability {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// Parameter sweep described by a JSON spec.
    Sweep {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        csv: PathBuf,
    },
}

/// Runs the CLI with the process's standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the CLI against the given output and diagnostic streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let _ = write!(err, "{}", e.render());
            return 1;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn read_model(path: &Path) -> Result<Model> {
    let spec: ModelSpec = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    Model::try_from(spec)
}

fn read_graph(path: &Path, model: &Model) -> Result<Graph> {
    let g: Graph = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    if g.node_count() != model.n() {
        return Err(Error::Inconsistent(format!(
            "graph has {} nodes, model has {}",
            g.node_count(),
            model.n()
        )));
    }
    Ok(g)
}

fn oracle_config(max_n: usize, allow_n8: bool, threads: Option<usize>) -> OracleConfig {
    OracleConfig {
        n_cap: if allow_n8 {
            max_n.max(HARD_N_CAP)
        } else {
            max_n
        },
        allow_n8,
        threads,
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<()> {
    match command {
        Command::Synthesize {
            model,
            dot,
            out: path,
        } => {
            let model = read_model(&model)?;
            let en = synthesize(&model);
            if let Some(dot) = dot {
                let cp = core_periphery(&en, &model)?;
                std::fs::write(dot, en.to_dot(&cp))?;
            }
            let json = to_json(&en)?;
            match path {
                Some(p) => {
                    std::fs::write(p, json)?;
                    writeln!(
                        out,
                        "m={} core_k={} edges={} total_utility={}",
                        en.m,
                        en.core_k,
                        en.graph.edge_count(),
                        fmt_sig(en.total_utility)
                    )?;
                }
                None => out.write_all(json.as_bytes())?,
            }
        }
        Command::Oracle {
            model,
            max_n,
            allow_n8,
            threads,
        } => {
            let model = read_model(&model)?;
            let result = enumerate_max_with(&model, &oracle_config(max_n, allow_n8, threads))?;
            out.write_all(to_json(&result)?.as_bytes())?;
        }
        Command::Verify {
            model,
            graph,
            threads,
        } => {
            let model = read_model(&model)?;
            let g = read_graph(&graph, &model)?;
            let best = enumerate_max_with(&model, &oracle_config(DEFAULT_N_CAP, false, threads))?;
            let utility = total_utility(&g, &model);
            let gap = (best.max_utility - utility).max(0.0);
            #[derive(Serialize)]
            struct Verdict {
                is_efficient: bool,
                gap: f64,
                utility: f64,
                max_utility: f64,
            }
            let v = Verdict {
                is_efficient: gap <= ARGMAX_TOL,
                gap,
                utility,
                max_utility: best.max_utility,
            };
            out.write_all(to_json(&v)?.as_bytes())?;
        }
        Command::ClusterBound { n, links, csv } => {
            let report = compare_to_er(n, links)?;
            if let Some(path) = csv {
                let rows = (n.saturating_sub(1)..=n * (n - 1) / 2)
                    .map(|ell| compare_to_er(n, ell))
                    .collect::<Result<Vec<_>>>()?;
                std::fs::write(path, bound_csv(&rows))?;
            }
            out.write_all(to_json(&report)?.as_bytes())?;
        }
        Command::ErSweep { n_range, csv } => {
            let (a, b) = parse_range(&n_range)?;
            let summaries = (a..=b)
                .into_par_iter()
                .map(crossover_summary)
                .collect::<Result<Vec<_>>>()?;
            let mut text = String::from(
                "n,threshold_density,eight_over_n,first_exceeding_links,first_exceeding_density,\
                 sustained_from_links,sustained_density,threshold_sufficient\n",
            );
            let density = |n: usize, l: Option<usize>| {
                l.map(|l| fmt_sig(crate::clustering::er_density(n, l)))
                    .unwrap_or_default()
            };
            let opt = |l: Option<usize>| l.map(|l| l.to_string()).unwrap_or_default();
            for s in &summaries {
                let _ = writeln!(
                    text,
                    "{},{},{},{},{},{},{},{}",
                    s.n,
                    fmt_sig(s.threshold_density),
                    fmt_sig(8.0 / s.n as f64),
                    opt(s.first_exceeding_links),
                    density(s.n, s.first_exceeding_links),
                    opt(s.sustained_from_links),
                    density(s.n, s.sustained_from_links),
                    s.threshold_sufficient
                );
            }
            match csv {
                Some(p) => std::fs::write(p, text)?,
                None => out.write_all(text.as_bytes())?,
            }
        }
        Command::Stability { model, graph } => {
            let model = read_model(&model)?;
            #[derive(Serialize)]
            struct Audit<'a> {
                graph: &'a Graph,
                report: crate::stability::StabilityReport,
            }
            let json = match graph {
                Some(path) => {
                    let g = read_graph(&path, &model)?;
                    let report = check_pairwise_stable(&g, &model);
                    to_json(&Audit { graph: &g, report })?
                }
                None => {
                    let (en, report) = efficiency_stability_audit(&model);
                    to_json(&Audit {
                        graph: &en.graph,
                        report,
                    })?
                }
            };
            out.write_all(json.as_bytes())?;
        }
        Command::Sweep { spec, csv } => {
            let spec: SweepSpec = serde_json::from_str(&std::fs::read_to_string(spec)?)?;
            std::fs::write(&csv, run_sweep(&spec)?)?;
            writeln!(out, "wrote {}", csv.display())?;
        }
    }
    Ok(())
}

fn parse_range(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::InvalidSweep(format!("expected a range a:b, got {s:?}"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a < 2 || a > b {
        return Err(Error::InvalidSweep(format!(
            "range {s:?} must satisfy 2 <= a <= b"
        )));
    }
    Ok((a, b))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRange {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl SweepRange {
    pub fn points(&self) -> Result<Vec<f64>> {
        let SweepRange { start, stop, step } = *self;
        if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
            return Err(Error::InvalidSweep("range values must be finite".into()));
        }
        if step <= 0.0 {
            return Err(Error::InvalidSweep("step must be positive".into()));
        }
        if start > stop {
            return Err(Error::InvalidSweep("start must not exceed stop".into()));
        }
        let slack = 1e-9 * 1f64.max(stop.abs());
        let count = ((stop - start + slack) / step).floor() as usize + 1;
        Ok((0..count).map(|i| start + i as f64 * step).collect())
    }
}

/// Parameter sweep file contents.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "parameter", rename_all = "kebab-case")]
pub enum SweepSpec {
    /// Geometric benefit `delta` varies; costs stay fixed.
    Delta { range: SweepRange, costs: Vec<f64> },
    /// All `n` nodes share one cost, which varies.
    UniformCost {
        range: SweepRange,
        n: usize,
        benefit: BenefitSpec,
    },
    /// Link density varies for the minimum-clustering bound.
    LinkDensity { range: SweepRange, n: usize },
}

/// CSV text for a sweep. Rows are computed in parallel and emitted in grid
/// order.
pub fn run_sweep(spec: &SweepSpec) -> Result<String> {
    match spec {
        SweepSpec::Delta { range, costs } => {
            let points = range.points()?;
            let models = points
                .iter()
                .map(|&delta| validate_model(costs.clone(), BenefitSpec::Geometric { delta }))
                .collect::<Result<Vec<_>>>()?;
            Ok(structure_csv("delta", &points, &models))
        }
        SweepSpec::UniformCost { range, n, benefit } => {
            if *n == 0 {
                return Err(Error::InvalidSweep("n must be at least 1".into()));
            }
            let points = range.points()?;
            let models = points
                .iter()
                .map(|&c| validate_model(vec![c; *n], benefit.clone()))
                .collect::<Result<Vec<_>>>()?;
            Ok(structure_csv("cost", &points, &models))
        }
        SweepSpec::LinkDensity { range, n } => {
            let points = range.points()?;
            let total = n * n.saturating_sub(1) / 2;
            let rows = points
                .par_iter()
                .map(|&density| {
                    if !(0.0..=1.0 + 1e-12).contains(&density) {
                        return Err(Error::InvalidSweep(format!(
                            "density {density} outside [0, 1]"
                        )));
                    }
                    compare_to_er(*n, ((density * total as f64).round() as usize).min(total))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(bound_csv(&rows))
        }
    }
}

fn structure_csv(label: &str, points: &[f64], models: &[Model]) -> String {
    let rows: Vec<String> = points
        .par_iter()
        .zip(models.par_iter())
        .map(|(&x, model)| {
            let en = synthesize(model);
            format!(
                "{},{},{},{},{}\n",
                fmt_sig(x),
                en.m,
                en.core_k,
                en.graph.edge_count(),
                fmt_sig(en.total_utility)
            )
        })
        .collect();
    let mut text = format!("{label},m,core_k,edges,total_utility\n");
    text.extend(rows);
    text
}

/// Grid CSV for clustering-bound reports.
pub fn bound_csv(rows: &[ClusteringBoundReport]) -> String {
    let mut text = String::from("n,ell,p,J,c_min,er_density,exceeds_er\n");
    for r in rows {
        let _ = writeln!(
            text,
            "{},{},{},{},{},{},{}",
            r.n,
            r.ell,
            r.p,
            r.residual,
            r.c_min.map(fmt_sig).unwrap_or_default(),
            fmt_sig(r.er_density),
            r.exceeds_er
        );
    }
    text
}

/// `%.12g`-style rendering: twelve significant digits, trailing zeros
/// dropped.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..12).contains(&exp) {
        return format!("{}e{exp}", trim_zeros(mantissa));
    }
    let decimals = (11 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `x` rounded to twelve significant digits.
pub fn round_sig(x: f64) -> f64 {
    fmt_sig(x).parse().unwrap_or(x)
}

fn round_floats(v: &mut serde_json::Value) {
    use serde_json::Value;
    match v {
        Value::Number(num) if num.is_f64() => {
            if let Some(r) = num
                .as_f64()
                .map(round_sig)
                .and_then(serde_json::Number::from_f64)
            {
                *num = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

/// Pretty JSON with every float rounded to twelve significant digits.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut v = serde_json::to_value(value)?;
    round_floats(&mut v);
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}
