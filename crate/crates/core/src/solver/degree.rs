use std::collections::HashMap;

use super::{
    bits64, collect_children, compute_ell, depth_limit, leaf, positions_in, run_jobs, BalanceSet,
    Job, Node, RecursionTrace, SolveOutcome, SolveReport, TraceRecord,
};
use crate::border::{
    combine_esd, for_each_independent_subset, BorderProfile, DEFAULT_TERMINAL_CAP,
};
use crate::decomposer::{validate_outcome, DecomposeOutcome, Decomposer, ReferenceDecomposer};
use crate::error::{Error, Result};
use crate::graph::{indices, mask_of, WeightedGraph};
use crate::num::Weight;

#[derive(Clone, Debug)]
pub struct DegreeSolverConfig {
    pub t: usize,
    /// Multiplier on `ℓ`; must be positive.
    pub ell_scale: f64,
    /// Replaces the leaf threshold `4Δ²ℓ` when set.
    pub leaf_cap_override: Option<usize>,
    pub trace: bool,
    pub terminal_cap: usize,
    /// Carry a witness set for every profile cell.
    pub witnesses: bool,
    /// Solve the particles of a call on the rayon pool.
    pub parallel: bool,
}

impl Default for DegreeSolverConfig {
    fn default() -> Self {
        DegreeSolverConfig {
            t: 2,
            ell_scale: 1.0,
            leaf_cap_override: None,
            trace: false,
            terminal_cap: DEFAULT_TERMINAL_CAP,
            witnesses: false,
            parallel: false,
        }
    }
}

impl DegreeSolverConfig {
    pub fn check(&self) -> Result<()> {
        if self.t == 0 {
            return Err(Error::Input("t must be positive".into()));
        }
        if !(self.ell_scale.is_finite() && self.ell_scale > 0.0) {
            return Err(Error::Input(format!(
                "ell_scale must be positive, got {}",
                self.ell_scale
            )));
        }
        Ok(())
    }
}

/// Border MWIS on a graph of bounded degree without induced `S_{t,t,t}`,
/// with the reference decomposer. `terminals` are positions; the profile is
/// keyed by their labels in the given order.
pub fn solve_degree<W: Weight>(
    g: &WeightedGraph<W>,
    terminals: &[usize],
    cfg: &DegreeSolverConfig,
) -> SolveReport<W> {
    solve_degree_with(g, terminals, cfg, &ReferenceDecomposer::default())
}

pub fn solve_degree_with<W: Weight, D: Decomposer>(
    g: &WeightedGraph<W>,
    terminals: &[usize],
    cfg: &DegreeSolverConfig,
    dec: &D,
) -> SolveReport<W> {
    if let Err(e) = cfg.check() {
        return SolveReport {
            result: Err(e),
            trace: RecursionTrace::default(),
        };
    }
    let n = g.len();
    let delta = g.max_degree();
    let ell = compute_ell(n, cfg.t, cfg.ell_scale);
    let dd = delta * delta;
    let solver = Degree {
        cfg,
        dec,
        delta,
        ell,
        leaf_cap: cfg
            .leaf_cap_override
            .unwrap_or(4usize.saturating_mul(dd).saturating_mul(ell)),
        cap4: 4usize.saturating_mul(dd).saturating_mul(ell),
        cap3: 3usize.saturating_mul(dd).saturating_mul(ell),
        depth_limit: depth_limit(n),
    };
    if let Some(&bad) = terminals.iter().find(|&&v| v >= n) {
        return SolveReport {
            result: Err(Error::Input(format!("terminal {bad} not in graph"))),
            trace: RecursionTrace::default(),
        };
    }
    if terminals.len() > solver.cap4 {
        return SolveReport {
            result: Err(Error::Input(format!(
                "{} terminals exceed 4Δ²ℓ = {}",
                terminals.len(),
                solver.cap4
            ))),
            trace: RecursionTrace::default(),
        };
    }
    let node = solver.call(g, terminals, 0);
    SolveReport {
        result: node.result,
        trace: node.trace,
    }
}

struct Degree<'a, D> {
    cfg: &'a DegreeSolverConfig,
    dec: &'a D,
    delta: usize,
    ell: usize,
    leaf_cap: usize,
    cap4: usize,
    cap3: usize,
    depth_limit: usize,
}

impl<D: Decomposer> Degree<'_, D> {
    fn call<W: Weight>(&self, g: &WeightedGraph<W>, terms: &[usize], depth: usize) -> Node<W> {
        let mut trace = RecursionTrace::default();
        let result = self.step(g, terms, depth, &mut trace);
        Node { result, trace }
    }

    fn step<W: Weight>(
        &self,
        g: &WeightedGraph<W>,
        terms: &[usize],
        depth: usize,
        trace: &mut RecursionTrace,
    ) -> Result<SolveOutcome<W>> {
        let n = g.len();
        let keep = self.cfg.trace;
        if terms.len() > self.cap4 {
            return Err(Error::Invariant(format!(
                "{} terminals exceed 4Δ²ℓ = {}",
                terms.len(),
                self.cap4
            )));
        }
        if depth > self.depth_limit {
            return Err(Error::Invariant(format!(
                "recursion depth {depth} exceeds {}",
                self.depth_limit
            )));
        }
        let by_vertices = terms.len() <= self.cap3;
        let u_kind = if by_vertices {
            BalanceSet::Vertices
        } else {
            BalanceSet::Terminals
        };
        let mut call = TraceRecord::Call {
            depth,
            n,
            terminals: terms.len(),
            u: u_kind,
            x: 0,
            particles: 0,
            leaf: true,
        };
        if n <= self.leaf_cap {
            trace.record(keep, call);
            return leaf(g, terms, self.cfg.terminal_cap, self.cfg.witnesses)
                .map(SolveOutcome::Profile);
        }
        let u: Vec<usize> = if by_vertices {
            (0..n).collect()
        } else {
            terms.to_vec()
        };
        let outcome = self.dec.decompose(g, &u, self.cfg.t)?;
        let problems = validate_outcome(g, &u, self.cfg.t, &outcome);
        if let Some(p) = problems.first() {
            return Err(Error::Contract(format!("decomposer output rejected: {p}")));
        }
        let d = match outcome {
            DecomposeOutcome::Witness(w) => {
                trace.record(keep, call);
                return Ok(SolveOutcome::Witness(w));
            }
            DecomposeOutcome::Split(d) => d,
        };
        let x = d.x();
        if x.len() > self.ell {
            return Err(Error::Capacity(format!(
                "decomposer used {} path vertices, ℓ = {}",
                x.len(),
                self.ell
            )));
        }
        let nx = g.closed_neighborhood(&x);
        let in_nx = mask_of(n, &nx);
        let rest = d.rest(g);
        let gstar = g.induced_subgraph(&rest)?;

        // T* = (T ∩ V(G*)) ∪ N(N[X]), as positions of g.
        let mut in_tstar = vec![false; n];
        terms
            .iter()
            .filter(|&&v| !in_nx[v])
            .for_each(|&v| in_tstar[v] = true);
        g.open_neighborhood(&nx)
            .into_iter()
            .for_each(|v| in_tstar[v] = true);
        let tstar = indices(&in_tstar);
        for &v in &nx {
            if let Some(&u) = g.neighbors(v).iter().find(|&&u| !in_nx[u] && !in_tstar[u]) {
                return Err(Error::Invariant(format!(
                    "N[X] vertex {v} sees non-terminal {u} of G*"
                )));
            }
        }
        if !d.esd.check_pattern_degree(self.delta + 2) {
            return Err(Error::Invariant(format!(
                "pattern degree {} above Δ + 1 = {}",
                d.esd.pattern().max_degree(),
                self.delta + 1
            )));
        }
        let occ = d.esd.occurrence_bound(rest.len());
        if occ > d.esd.occurrence_limit() {
            return Err(Error::Invariant(format!(
                "a vertex lies in {occ} particles, limit {}",
                d.esd.occurrence_limit()
            )));
        }
        let particles = d.esd.particles();
        let fan: usize = particles.iter().map(|p| p.members.len()).sum();
        if fan > (2 * self.delta + 3) * n {
            return Err(Error::Invariant(format!(
                "particles hold {fan} vertices, limit (2Δ+3)·{n}"
            )));
        }
        if let TraceRecord::Call {
            x: cx,
            particles: cp,
            leaf,
            ..
        } = &mut call
        {
            *cx = x.len();
            *cp = particles.len();
            *leaf = false;
        }
        trace.record(keep, call);

        let tstar_in_star = positions_in(&rest, &tstar);
        let star_term = mask_of(rest.len(), &tstar_in_star);
        let jobs: Vec<Job<W>> = particles
            .iter()
            .map(|p| {
                let graph = gstar.induced_subgraph(&p.members)?;
                let terms = p
                    .members
                    .iter()
                    .enumerate()
                    .filter(|&(_, &v)| star_term[v])
                    .map(|(i, _)| i)
                    .collect();
                Ok(Job { graph, terms })
            })
            .collect::<Result<_>>()?;
        let nodes = run_jobs(self.cfg.parallel, jobs, |job| {
            self.call(&job.graph, &job.terms, depth + 1)
        });
        let profiles = match collect_children(nodes, trace)? {
            Ok(p) => p,
            Err(w) => return Ok(SolveOutcome::Witness(w)),
        };
        let profiles: HashMap<_, _> = particles.iter().map(|p| p.kind).zip(profiles).collect();
        let fstar = combine_esd(
            &gstar,
            &tstar_in_star,
            &d.esd,
            &profiles,
            self.cfg.terminal_cap,
            self.cfg.witnesses,
        )?;
        self.fold(g, terms, &nx, &tstar, &fstar)
            .map(SolveOutcome::Profile)
    }

    /// Every independent `I ⊆ T* ∪ N[X]` offers `w(I \ T*) + f*(I ∩ T*)` to
    /// the cell `I ∩ T`.
    fn fold<W: Weight>(
        &self,
        g: &WeightedGraph<W>,
        terms: &[usize],
        nx: &[usize],
        tstar: &[usize],
        fstar: &BorderProfile<W>,
    ) -> Result<BorderProfile<W>> {
        let n = g.len();
        let labels = terms.iter().map(|&v| g.label(v)).collect();
        let mut out = if self.cfg.witnesses {
            BorderProfile::with_witnesses(labels, self.cfg.terminal_cap)?
        } else {
            BorderProfile::new(labels, self.cfg.terminal_cap)?
        };
        let mut in_s = mask_of(n, tstar);
        nx.iter().for_each(|&v| in_s[v] = true);
        let s = indices(&in_s);
        let mut term_bit = vec![None; n];
        terms
            .iter()
            .enumerate()
            .for_each(|(i, &v)| term_bit[v] = Some(i));
        let mut star_bit = vec![None; n];
        tstar
            .iter()
            .enumerate()
            .for_each(|(i, &v)| star_bit[v] = Some(i));
        let info: Vec<(Option<usize>, Option<usize>, i128)> = s
            .iter()
            .map(|&v| (term_bit[v], star_bit[v], g.weight(v).wide()))
            .collect();
        for_each_independent_subset(g, &s, |mask| {
            let (mut extra, mut smask, mut omask) = (0i128, 0usize, 0usize);
            for i in bits64(mask) {
                let (tb, sb, w) = info[i];
                match sb {
                    Some(b) => smask |= 1 << b,
                    None => extra += w,
                }
                if let Some(b) = tb {
                    omask |= 1 << b;
                }
            }
            let f = fstar.get(smask).ok_or_else(|| {
                Error::Invariant("combined profile is minus infinity on an independent set".into())
            })?;
            let value = W::narrow(extra + f.wide())
                .ok_or_else(|| Error::Capacity("weight overflow".into()))?;
            if out.get(omask).is_none_or(|cur| value > cur) {
                let witness = self.cfg.witnesses.then(|| {
                    let mut set: Vec<usize> = bits64(mask)
                        .filter(|&i| info[i].1.is_none())
                        .map(|i| g.label(s[i]))
                        .collect();
                    set.extend_from_slice(fstar.witness(smask).unwrap_or(&[]));
                    set.sort_unstable();
                    set
                });
                out.set_with_witness(omask, Some(value), witness);
            }
            Ok(())
        })?;
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{mwis_bruteforce, OracleBudget};
    use crate::solver::{mwis, MwisOutcome};

    fn cycle(n: usize) -> WeightedGraph<u64> {
        WeightedGraph::from_edges(vec![1; n], (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn value(report: &crate::solver::MwisReport<u64>) -> u64 {
        match report.result.as_ref().unwrap() {
            MwisOutcome::Value { weight, .. } => *weight,
            MwisOutcome::Witness(w) => panic!("unexpected witness {}", w.describe()),
        }
    }

    #[test]
    fn tiny_graphs() {
        let cfg = DegreeSolverConfig::default();
        assert_eq!(value(&mwis(&WeightedGraph::<u64>::empty(), &cfg)), 0);
        assert_eq!(value(&mwis(&WeightedGraph::<u64>::new(vec![7]), &cfg)), 7);
        assert_eq!(value(&mwis(&cycle(5), &cfg)), 2);
        let star =
            WeightedGraph::<u64>::from_edges(vec![10, 4, 4, 4], [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(value(&mwis(&star, &cfg)), 12);
    }

    #[test]
    fn forced_recursion_on_a_long_cycle() {
        let mut g = cycle(30);
        for v in 0..30 {
            g.set_weight(v, (v as u64 * 7) % 11 + 1);
        }
        let cfg = DegreeSolverConfig {
            leaf_cap_override: Some(4),
            witnesses: true,
            trace: true,
            ..Default::default()
        };
        let report = mwis(&g, &cfg);
        let (expected, _) = mwis_bruteforce(&g, &OracleBudget::default()).unwrap();
        let MwisOutcome::Value { weight, set } = report.result.unwrap() else {
            panic!("witness")
        };
        assert_eq!(weight, expected);
        let set = set.unwrap();
        assert!(g.is_independent(&set));
        assert!(report.trace.stats.recursed());
        assert!(report.trace.records[0]
            .to_string()
            .starts_with("call depth=0 n=30 |T|=0 U=V"));
    }

    #[test]
    fn terminals_match_brute_force() {
        let g = cycle(12);
        let terms = [0, 3, 7];
        let cfg = DegreeSolverConfig {
            leaf_cap_override: Some(3),
            ..Default::default()
        };
        let SolveOutcome::Profile(p) = solve_degree(&g, &terms, &cfg).result.unwrap() else {
            panic!()
        };
        let brute =
            crate::border::brute_force_border(&g, &terms, &OracleBudget::default()).unwrap();
        assert_eq!(p, brute);
    }

    #[test]
    fn claw_is_reported() {
        let g: WeightedGraph<u64> = crate::graph::generate_subdivided_claw(2, 2, 2).unwrap();
        let cfg = DegreeSolverConfig {
            leaf_cap_override: Some(1),
            ..Default::default()
        };
        assert!(matches!(
            mwis(&g, &cfg).result.unwrap(),
            MwisOutcome::Witness(_)
        ));
    }

    #[test]
    fn rejects_bad_scale() {
        let cfg = DegreeSolverConfig {
            ell_scale: 0.0,
            ..Default::default()
        };
        assert!(matches!(mwis(&cycle(3), &cfg).result, Err(Error::Input(_))));
    }
}
