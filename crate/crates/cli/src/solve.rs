use std::path::PathBuf;
use std::time::Instant;

use clap::Args;
use mwis_core::graph::{find_induced_sttt, read_graph, SubdividedClawWitness};
use mwis_core::oracle::{mwis_bruteforce, OracleBudget};
use mwis_core::solver::{mwis, mwis_biclique, MwisOutcome, MwisReport, RecursionStats};
use mwis_core::{ErrorKind, Graph};
use serde::Serialize;

use crate::settings::{Algo, Settings, SolverFlags};
use crate::{read_file, write_output, Failure};

#[derive(Args)]
pub struct SolveArgs {
    /// Graph file.
    pub graph: PathBuf,
    #[command(flatten)]
    pub solver: SolverFlags,
    /// Write one trace line per recursive call to this file.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Treat an induced S_{t,t,t} as an error (exit code 3).
    #[arg(long)]
    pub assert_free: bool,
    /// Also print a maximum weight independent set.
    #[arg(long)]
    pub witness: bool,
    /// Print a JSON report instead of plain lines.
    #[arg(long)]
    pub json: bool,
}

/// Result of one solver run.
pub struct Run {
    pub algo: Algo,
    pub value: u64,
    /// Positions, when requested.
    pub set: Option<Vec<usize>>,
    pub stats: RecursionStats,
    pub trace: String,
    pub k: Option<usize>,
    pub ms: f64,
}

pub enum Solved {
    Value(Run),
    Claw(SubdividedClawWitness),
}

#[derive(Serialize)]
struct RunReport<'a> {
    instance: String,
    algorithm: &'static str,
    value: u64,
    wall_ms: f64,
    max_depth: usize,
    calls: usize,
    leaf_fraction: f64,
    k: Option<usize>,
    config: &'a Settings,
    witness: Option<Vec<usize>>,
    validation: &'static str,
}

pub fn pick_algo(g: &Graph, algo: Algo) -> Algo {
    match algo {
        Algo::Auto if g.len() <= OracleBudget::default().max_vertices => Algo::Bruteforce,
        Algo::Auto if g.max_degree() <= 4 => Algo::Degree,
        Algo::Auto => Algo::Biclique,
        other => other,
    }
}

fn from_report(
    report: MwisReport<u64>,
) -> Result<
    (
        Result<(u64, Option<Vec<usize>>), SubdividedClawWitness>,
        RecursionStats,
        String,
    ),
    Failure,
> {
    let trace = report.trace.render();
    let stats = report.trace.stats;
    match report.result? {
        MwisOutcome::Value { weight, set } => Ok((Ok((weight, set)), stats, trace)),
        MwisOutcome::Witness(w) => Ok((Err(w), stats, trace)),
    }
}

/// Solve `g` with the resolved settings. Runs on a dedicated pool when more
/// than one job is requested.
pub fn solve_graph(
    g: &Graph,
    s: &Settings,
    witness: bool,
    trace: bool,
    assert_free: bool,
) -> Result<Solved, Failure> {
    if s.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(s.jobs)
            .build()
            .map_err(|e| Failure::Usage(format!("cannot start {} workers: {e}", s.jobs)))?;
        pool.install(|| solve_inner(g, s, witness, trace, assert_free))
    } else {
        solve_inner(g, s, witness, trace, assert_free)
    }
}

fn solve_inner(
    g: &Graph,
    s: &Settings,
    witness: bool,
    trace: bool,
    assert_free: bool,
) -> Result<Solved, Failure> {
    let algo = pick_algo(g, s.algo);
    let start = Instant::now();
    let elapsed = |start: Instant| start.elapsed().as_secs_f64() * 1e3;
    if assert_free {
        if let Some(w) = find_induced_sttt(g, s.t)? {
            return Ok(Solved::Claw(w));
        }
    }
    let outcome = match algo {
        Algo::Bruteforce | Algo::Auto => {
            let (value, set) = mwis_bruteforce(g, &OracleBudget::default())?;
            let run = Run {
                algo: Algo::Bruteforce,
                value,
                set: witness.then_some(set),
                stats: RecursionStats::default(),
                trace: String::new(),
                k: None,
                ms: elapsed(start),
            };
            return Ok(Solved::Value(run));
        }
        Algo::Degree => {
            let (res, stats, text) = from_report(mwis(g, &s.degree(trace, witness)))?;
            (res, stats, text, None)
        }
        Algo::Biclique => {
            let mut k = s.k;
            loop {
                let report = mwis_biclique(g, &s.biclique(k, trace, witness));
                match &report.result {
                    Err(e) if e.kind() == ErrorKind::Capacity && k < s.k_max => {
                        eprintln!("note: k = {k} failed ({e}), retrying with k = {}", k + 1);
                        k += 1;
                    }
                    _ => {
                        let (res, stats, text) = from_report(report)?;
                        break (res, stats, text, Some(k));
                    }
                }
            }
        }
    };
    let (res, stats, text, k) = outcome;
    match res {
        Ok((value, set)) => Ok(Solved::Value(Run {
            algo,
            value,
            set,
            stats,
            trace: text,
            k,
            ms: elapsed(start),
        })),
        Err(w) if assert_free => Ok(Solved::Claw(w)),
        Err(w) if g.len() <= OracleBudget::default().max_vertices => {
            eprintln!(
                "note: graph contains an induced S_{{t,t,t}} ({}); falling back to brute force",
                w.describe()
            );
            let mut fallback = s.clone();
            fallback.algo = Algo::Bruteforce;
            solve_inner(g, &fallback, witness, trace, false)
        }
        Err(w) => Err(Failure::Core(mwis_core::Error::Capacity(format!(
            "graph contains an induced S_{{t,t,t}} ({}) and is too large for brute force",
            w.describe()
        )))),
    }
}

pub fn one_based(set: &[usize]) -> String {
    set.iter()
        .map(|v| (v + 1).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn format_claw(g: &Graph, w: &SubdividedClawWitness) -> String {
    let index = g.label_index();
    let ids = |vs: &[usize]| one_based(&vs.iter().map(|l| index[l]).collect::<Vec<_>>());
    format!(
        "witness {} : {} | {} | {}",
        index[&w.center] + 1,
        ids(&w.legs[0]),
        ids(&w.legs[1]),
        ids(&w.legs[2])
    )
}

pub fn run(args: SolveArgs) -> Result<(), Failure> {
    let settings = args.solver.resolve()?;
    let g: Graph = read_graph(&read_file(&args.graph)?)?;
    match solve_graph(
        &g,
        &settings,
        args.witness,
        args.trace.is_some(),
        args.assert_free,
    )? {
        Solved::Claw(w) => {
            println!("{}", format_claw(&g, &w));
            Err(Failure::Witness)
        }
        Solved::Value(run) => {
            if let Some(path) = &args.trace {
                write_output(Some(path), &run.trace)?;
            }
            if let Some(set) = &run.set {
                if !g.is_independent(set) || g.weight_of(set) != run.value {
                    return Err(Failure::Core(mwis_core::Error::Invariant(
                        "reported set failed verification".into(),
                    )));
                }
            }
            if args.json {
                let report = RunReport {
                    instance: args.graph.display().to_string(),
                    algorithm: run.algo.name(),
                    value: run.value,
                    wall_ms: run.ms,
                    max_depth: run.stats.max_depth,
                    calls: run.stats.calls,
                    leaf_fraction: run.stats.leaf_fraction(),
                    k: run.k,
                    config: &settings,
                    witness: run.set.as_ref().map(|s| s.iter().map(|v| v + 1).collect()),
                    validation: if run.set.is_some() {
                        "verified"
                    } else {
                        "unchecked"
                    },
                };
                println!(
                    "{}",
                    serde_json::to_string(&report).expect("report serializes")
                );
            } else {
                println!("value {}", run.value);
                if let Some(set) = &run.set {
                    println!("set {}", one_based(set));
                }
            }
            Ok(())
        }
    }
}
