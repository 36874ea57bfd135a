//! The two recursive Border MWIS solvers and their shared plumbing: the
//! path budget `ℓ`, leaves, recursion traces and the plain MWIS wrappers.

mod biclique;
mod degree;

pub use biclique::{
    choose_sink_node, classify_components, solve_biclique, solve_biclique_with, BagContext,
    BicliqueSolverConfig, Classification,
};
pub use degree::{solve_degree, solve_degree_with, DegreeSolverConfig};

use std::fmt;

use rayon::prelude::*;

use crate::border::{brute_force_border, brute_force_border_witnessed, BorderProfile};
use crate::decomposer::path_cap;
use crate::error::{Error, Result};
use crate::graph::{SubdividedClawWitness, WeightedGraph};
use crate::num::Weight;
use crate::oracle::OracleBudget;

/// `⌈scale · ⌈11 log₂ n + 6⌉ · (t + 2)⌉`, at least 1.
pub fn compute_ell(n: usize, t: usize, ell_scale: f64) -> usize {
    let base = (path_cap(n.max(1)) * (t + 2)) as f64;
    let scaled = ell_scale * base;
    // Absorb representation noise such as 0.1 * 10 = 1.0000000000000002.
    let ell = (scaled - scaled.abs() * 1e-12).ceil();
    (ell as usize).max(1)
}

/// `2⌈log₂ n⌉`.
pub fn depth_limit(n: usize) -> usize {
    2 * n.max(1).next_power_of_two().trailing_zeros() as usize
}

/// Which set a call balanced its decomposition against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BalanceSet {
    Vertices,
    NonTerminals,
    Terminals,
}

impl fmt::Display for BalanceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BalanceSet::Vertices => "V",
            BalanceSet::NonTerminals => "V\\T",
            BalanceSet::Terminals => "T",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceRecord {
    Call {
        depth: usize,
        n: usize,
        terminals: usize,
        u: BalanceSet,
        x: usize,
        particles: usize,
        leaf: bool,
    },
    /// `j` has bit `i` set when the `i`-th vertex of `Q` is in `J`.
    Branch {
        depth: usize,
        j: u64,
        q: usize,
        dirty: usize,
        touched: usize,
        y: usize,
        z: usize,
    },
}

impl fmt::Display for TraceRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TraceRecord::Call { depth, n, terminals, u, x, particles, leaf } => write!(
                f,
                "call depth={depth} n={n} |T|={terminals} U={u} |X|={x} particles={particles} leaf={}",
                leaf as u8
            ),
            TraceRecord::Branch { j, q, dirty, touched, y, z, .. } => {
                write!(f, "branch J={j:0w$b} dirty={dirty} touched={touched} |Y|={y} |Z|={z}", w = q.max(1))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RecursionStats {
    pub calls: usize,
    pub leaves: usize,
    pub max_depth: usize,
    pub branches: usize,
}

impl RecursionStats {
    /// Whether at least one call decomposed and combined instead of
    /// enumerating.
    pub fn recursed(&self) -> bool {
        self.calls > self.leaves
    }

    pub fn leaf_fraction(&self) -> f64 {
        if self.calls == 0 {
            0.0
        } else {
            self.leaves as f64 / self.calls as f64
        }
    }
}

/// Records in call order (parents before children, siblings in particle
/// order); only kept when tracing is on. Statistics are always collected.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RecursionTrace {
    pub records: Vec<TraceRecord>,
    pub stats: RecursionStats,
}

impl RecursionTrace {
    pub fn render(&self) -> String {
        self.records.iter().map(|r| format!("{r}\n")).collect()
    }

    fn record(&mut self, keep: bool, r: TraceRecord) {
        match r {
            TraceRecord::Call { depth, leaf, .. } => {
                self.stats.calls += 1;
                self.stats.leaves += leaf as usize;
                self.stats.max_depth = self.stats.max_depth.max(depth);
            }
            TraceRecord::Branch { .. } => self.stats.branches += 1,
        }
        if keep {
            self.records.push(r);
        }
    }

    fn absorb(&mut self, other: RecursionTrace) {
        self.records.extend(other.records);
        self.stats.calls += other.stats.calls;
        self.stats.leaves += other.stats.leaves;
        self.stats.branches += other.stats.branches;
        self.stats.max_depth = self.stats.max_depth.max(other.stats.max_depth);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome<W> {
    Profile(BorderProfile<W>),
    /// An induced `S_{t,t,t}` met on the way, in labels of the input graph.
    Witness(SubdividedClawWitness),
}

/// The trace survives failures, so callers can report how far a run got.
#[derive(Clone, Debug)]
pub struct SolveReport<W> {
    pub result: Result<SolveOutcome<W>>,
    pub trace: RecursionTrace,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MwisOutcome<W> {
    /// `set` holds positions and is present when witnesses were requested.
    Value {
        weight: W,
        set: Option<Vec<usize>>,
    },
    Witness(SubdividedClawWitness),
}

#[derive(Clone, Debug)]
pub struct MwisReport<W> {
    pub result: Result<MwisOutcome<W>>,
    pub trace: RecursionTrace,
}

/// Maximum weight of an independent set via [`solve_degree`].
pub fn mwis<W: Weight>(g: &WeightedGraph<W>, cfg: &DegreeSolverConfig) -> MwisReport<W> {
    let report = solve_degree(g, &[], cfg);
    finish_mwis(g, report)
}

/// Maximum weight of an independent set via [`solve_biclique`].
pub fn mwis_biclique<W: Weight>(g: &WeightedGraph<W>, cfg: &BicliqueSolverConfig) -> MwisReport<W> {
    let report = solve_biclique(g, &[], cfg);
    finish_mwis(g, report)
}

fn finish_mwis<W: Weight>(g: &WeightedGraph<W>, report: SolveReport<W>) -> MwisReport<W> {
    let result = report.result.and_then(|outcome| match outcome {
        SolveOutcome::Witness(w) => Ok(MwisOutcome::Witness(w)),
        SolveOutcome::Profile(p) => {
            let weight = p
                .get(0)
                .ok_or_else(|| Error::Invariant("f(∅) is minus infinity".into()))?;
            let set = match p.witness(0) {
                None => None,
                Some(labels) => {
                    let index = g.label_index();
                    let mut set: Vec<usize> = labels
                        .iter()
                        .map(|l| {
                            index
                                .get(l)
                                .copied()
                                .ok_or_else(|| Error::Invariant(format!("unknown label {l}")))
                        })
                        .collect::<Result<_>>()?;
                    set.sort_unstable();
                    if !g.is_independent(&set) {
                        return Err(Error::Invariant(
                            "reconstructed set is not independent".into(),
                        ));
                    }
                    if g.weight_of(&set) != weight {
                        return Err(Error::Invariant(format!(
                            "reconstructed set weighs {} instead of {weight}",
                            g.weight_of(&set)
                        )));
                    }
                    Some(set)
                }
            };
            Ok(MwisOutcome::Value { weight, set })
        }
    });
    MwisReport {
        result,
        trace: report.trace,
    }
}

/// Exact profile of a small call by enumeration.
fn leaf<W: Weight>(
    g: &WeightedGraph<W>,
    terms: &[usize],
    cap: usize,
    witnesses: bool,
) -> Result<BorderProfile<W>> {
    let budget = OracleBudget {
        max_vertices: 128,
        max_terminals: cap,
        node_cap: u64::MAX,
    };
    if witnesses {
        brute_force_border_witnessed(g, terms, &budget)
    } else {
        brute_force_border(g, terms, &budget)
    }
}

/// One subproblem: a graph and its terminals (positions).
struct Job<W> {
    graph: WeightedGraph<W>,
    terms: Vec<usize>,
}

struct Node<W> {
    result: Result<SolveOutcome<W>>,
    trace: RecursionTrace,
}

fn run_jobs<W: Weight>(
    parallel: bool,
    jobs: Vec<Job<W>>,
    f: impl Fn(&Job<W>) -> Node<W> + Sync + Send,
) -> Vec<Node<W>> {
    if parallel {
        jobs.par_iter().map(f).collect()
    } else {
        jobs.iter().map(f).collect()
    }
}

/// Fold child traces into `trace` and pull out their profiles in order. The
/// first error or witness (in job order) wins, so the outcome does not
/// depend on scheduling.
fn collect_children<W: Weight>(
    nodes: Vec<Node<W>>,
    trace: &mut RecursionTrace,
) -> Result<std::result::Result<Vec<BorderProfile<W>>, SubdividedClawWitness>> {
    let mut profiles = Vec::with_capacity(nodes.len());
    let mut stop: Option<Result<SubdividedClawWitness>> = None;
    for node in nodes {
        trace.absorb(node.trace);
        match node.result {
            Ok(SolveOutcome::Profile(p)) => profiles.push(p),
            Ok(SolveOutcome::Witness(w)) => {
                stop.get_or_insert(Ok(w));
            }
            Err(e) => {
                stop.get_or_insert(Err(e));
            }
        }
    }
    match stop {
        None => Ok(Ok(profiles)),
        Some(Ok(w)) => Ok(Err(w)),
        Some(Err(e)) => Err(e),
    }
}

/// Positions of `set` (sorted) inside the sorted `within`.
fn positions_in(within: &[usize], set: &[usize]) -> Vec<usize> {
    set.iter()
        .map(|v| within.binary_search(v).expect("subset"))
        .collect()
}

fn bits64(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            i
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ell_examples() {
        assert_eq!(compute_ell(1024, 2, 1.0), 464);
        assert_eq!(compute_ell(2, 1, 1.0), 51);
        assert_eq!(compute_ell(1024, 2, 0.01), 5);
        assert_eq!(compute_ell(1024, 2, 1e-9), 1);
    }

    #[test]
    fn depth_limits() {
        assert_eq!(depth_limit(1), 0);
        assert_eq!(depth_limit(2), 2);
        assert_eq!(depth_limit(40), 12);
        assert_eq!(depth_limit(64), 12);
    }

    #[test]
    fn trace_lines() {
        let call = TraceRecord::Call {
            depth: 1,
            n: 9,
            terminals: 2,
            u: BalanceSet::Vertices,
            x: 1,
            particles: 2,
            leaf: false,
        };
        assert_eq!(
            call.to_string(),
            "call depth=1 n=9 |T|=2 U=V |X|=1 particles=2 leaf=0"
        );
        let branch = TraceRecord::Branch {
            depth: 0,
            j: 0b01,
            q: 3,
            dirty: 1,
            touched: 2,
            y: 3,
            z: 4,
        };
        assert_eq!(
            branch.to_string(),
            "branch J=001 dirty=1 touched=2 |Y|=3 |Z|=4"
        );
    }
}
