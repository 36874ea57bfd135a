use std::collections::HashMap;

use super::{
    bits64, collect_children, compute_ell, depth_limit, leaf, run_jobs, BalanceSet, Job, Node,
    RecursionTrace, SolveOutcome, SolveReport, TraceRecord,
};
use crate::border::{
    combine_esd, for_each_independent_subset, BorderProfile, DEFAULT_TERMINAL_CAP,
};
use crate::decomposer::{validate_outcome, DecomposeOutcome, Decomposer, ReferenceDecomposer};
use crate::error::{Error, Result};
use crate::graph::{indices, mask_of, SubdividedClawWitness, WeightedGraph};
use crate::num::Weight;
use crate::treedec::{
    build_weissauer, check_weissauer, high_degree_threshold, validate_tree_decomposition, TdBudget,
    TreeDecomposition,
};

#[derive(Clone, Debug)]
pub struct BicliqueSolverConfig {
    pub t: usize,
    /// Tree decomposition parameter: adhesions below `k`, at most `k`
    /// vertices of torso degree above `2k(k-1)`.
    pub k: usize,
    pub ell_scale: f64,
    /// Replaces the leaf threshold `32k⁵ℓ` when set.
    pub leaf_cap_override: Option<usize>,
    pub trace: bool,
    pub terminal_cap: usize,
    pub witnesses: bool,
    pub parallel: bool,
    pub td_budget: TdBudget,
}

impl Default for BicliqueSolverConfig {
    fn default() -> Self {
        BicliqueSolverConfig {
            t: 2,
            k: 10,
            ell_scale: 1.0,
            leaf_cap_override: None,
            trace: false,
            terminal_cap: DEFAULT_TERMINAL_CAP,
            witnesses: false,
            parallel: false,
            td_budget: TdBudget::default(),
        }
    }
}

impl BicliqueSolverConfig {
    pub fn check(&self) -> Result<()> {
        if self.t == 0 {
            return Err(Error::Input("t must be positive".into()));
        }
        if self.k < 2 {
            return Err(Error::Input(format!(
                "k must be at least 2, got {}",
                self.k
            )));
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

/// The bag a call works around. Vertex ids are positions of the call's graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BagContext {
    pub node: usize,
    pub bag: Vec<usize>,
    /// Components of `G' - B`, each sorted.
    pub components: Vec<Vec<usize>>,
    /// `N(C)` per component.
    pub boundaries: Vec<Vec<usize>>,
    /// `G'[B]` plus a clique on every `N(C)`; vertex `i` is `bag[i]`.
    pub gb: Vec<Vec<usize>>,
    /// Vertices of degree above `2k(k-1)` in that graph.
    pub q: Vec<usize>,
}

/// Orient every tree edge towards the side holding more of `u` (ties
/// towards the smaller node id) and build the context of the smallest node
/// without outgoing edges.
pub fn choose_sink_node<W: Weight>(
    g: &WeightedGraph<W>,
    td: &TreeDecomposition,
    u: &[usize],
    k: usize,
) -> Result<BagContext> {
    let n = g.len();
    let in_u = mask_of(n, u);
    let count = |vs: &[usize]| vs.iter().filter(|&&v| in_u[v]).count();
    let mut outdeg = vec![0usize; td.len()];
    for &(s, t) in &td.edges {
        let (cs, ct) = (
            count(&td.side_vertices(s, t)),
            count(&td.side_vertices(t, s)),
        );
        let toward_s = cs > ct || (cs == ct && s < t);
        outdeg[if toward_s { t } else { s }] += 1;
    }
    let node = (0..td.len())
        .find(|&x| outdeg[x] == 0)
        .ok_or_else(|| Error::Contract("no node of outdegree 0".into()))?;
    let bag = td.bags[node].clone();
    let in_b = mask_of(n, &bag);
    let outside: Vec<bool> = in_b.iter().map(|b| !b).collect();
    let components = g.components_within(&outside);
    let boundaries: Vec<Vec<usize>> = components.iter().map(|c| g.open_neighborhood(c)).collect();
    for (c, nc) in components.iter().zip(&boundaries) {
        if nc.len() >= k {
            return Err(Error::Contract(format!(
                "component of G' - B has {} neighbors, need fewer than {k}",
                nc.len()
            )));
        }
        if 2 * count(c) > u.len() {
            return Err(Error::Contract(format!(
                "component holds {} of {} balance vertices",
                count(c),
                u.len()
            )));
        }
    }
    let sub = g.induced_subgraph(&bag)?;
    let mut gb: Vec<Vec<usize>> = (0..bag.len()).map(|i| sub.neighbors(i).to_vec()).collect();
    for nc in &boundaries {
        let pos: Vec<usize> = nc
            .iter()
            .map(|v| bag.binary_search(v).expect("N(C) lies in B"))
            .collect();
        for &a in &pos {
            for &b in &pos {
                if a != b {
                    gb[a].push(b);
                }
            }
        }
    }
    for adj in gb.iter_mut() {
        adj.sort_unstable();
        adj.dedup();
    }
    let limit = high_degree_threshold(k);
    let q: Vec<usize> = (0..bag.len())
        .filter(|&i| gb[i].len() > limit)
        .map(|i| bag[i])
        .collect();
    if q.len() > k {
        return Err(Error::Contract(format!(
            "{} high-degree bag vertices, allowed {k}",
            q.len()
        )));
    }
    Ok(BagContext {
        node,
        bag,
        components,
        boundaries,
        gb,
        q,
    })
}

/// Dirty and touched components of one branch, with `Y^J` and `Z^J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub dirty: Vec<bool>,
    pub touched: Vec<bool>,
    pub y: Vec<usize>,
    pub z: Vec<usize>,
}

/// `alive` marks `V(G^J)`; `nx` is `N_{G^J}[X^J]`. All ids are positions of
/// the call's graph `g`.
pub fn classify_components<W: Weight>(
    g: &WeightedGraph<W>,
    ctx: &BagContext,
    alive: &[bool],
    nx: &[usize],
) -> Classification {
    let n = g.len();
    let in_nx = mask_of(n, nx);
    let in_b = mask_of(n, &ctx.bag);
    let dirty: Vec<bool> = ctx
        .components
        .iter()
        .zip(&ctx.boundaries)
        .map(|(c, nc)| c.iter().chain(nc).any(|&v| in_nx[v]))
        .collect();
    let mut in_y = vec![false; n];
    nx.iter()
        .filter(|&&v| in_b[v])
        .for_each(|&v| in_y[v] = true);
    for (nc, _) in ctx.boundaries.iter().zip(&dirty).filter(|(_, d)| **d) {
        nc.iter()
            .filter(|&&v| alive[v])
            .for_each(|&v| in_y[v] = true);
    }
    let touched: Vec<bool> = ctx
        .boundaries
        .iter()
        .zip(&dirty)
        .map(|(nc, &d)| d || nc.iter().any(|&v| in_y[v]))
        .collect();
    let mut in_z = vec![false; n];
    for v in indices(&in_y) {
        for u in std::iter::once(v).chain(g.neighbors(v).iter().copied()) {
            if alive[u] && in_b[u] {
                in_z[u] = true;
            }
        }
    }
    for (nc, _) in ctx.boundaries.iter().zip(&touched).filter(|(_, t)| **t) {
        nc.iter()
            .filter(|&&v| alive[v])
            .for_each(|&v| in_z[v] = true);
    }
    Classification {
        dirty,
        touched,
        y: indices(&in_y),
        z: indices(&in_z),
    }
}

/// Border MWIS on a graph without induced `S_{t,t,t}` and without `K_{t,t}`
/// subgraphs, with the reference decomposer.
pub fn solve_biclique<W: Weight>(
    g: &WeightedGraph<W>,
    terminals: &[usize],
    cfg: &BicliqueSolverConfig,
) -> SolveReport<W> {
    solve_biclique_with(g, terminals, cfg, &ReferenceDecomposer::default())
}

pub fn solve_biclique_with<W: Weight, D: Decomposer>(
    g: &WeightedGraph<W>,
    terminals: &[usize],
    cfg: &BicliqueSolverConfig,
    dec: &D,
) -> SolveReport<W> {
    let fail = |e| SolveReport {
        result: Err(e),
        trace: RecursionTrace::default(),
    };
    if let Err(e) = cfg.check() {
        return fail(e);
    }
    if let Some(&bad) = terminals.iter().find(|&&v| v >= g.len()) {
        return fail(Error::Input(format!("terminal {bad} not in graph")));
    }
    let n = g.len();
    let ell = compute_ell(n, cfg.t, cfg.ell_scale);
    let k5 = cfg.k.saturating_pow(5);
    let cap32 = 32usize.saturating_mul(k5).saturating_mul(ell);
    let solver = Biclique {
        cfg,
        dec,
        ell,
        leaf_cap: cfg.leaf_cap_override.unwrap_or(cap32),
        cap32,
        cap24: 24usize.saturating_mul(k5).saturating_mul(ell),
        depth_limit: depth_limit(n),
    };
    if terminals.len() > cap32 {
        return fail(Error::Input(format!(
            "{} terminals exceed 32k⁵ℓ = {cap32}",
            terminals.len()
        )));
    }
    let node = solver.call(g, terminals, 0);
    SolveReport {
        result: node.result,
        trace: node.trace,
    }
}

struct Biclique<'a, D> {
    cfg: &'a BicliqueSolverConfig,
    dec: &'a D,
    ell: usize,
    leaf_cap: usize,
    cap32: usize,
    cap24: usize,
    depth_limit: usize,
}

/// Per-call data shared by all branches.
struct CallData<'a, W> {
    g: &'a WeightedGraph<W>,
    terms: &'a [usize],
    in_t: Vec<bool>,
    u: Vec<usize>,
    by_terminals: bool,
    ctx: BagContext,
    depth: usize,
}

enum Branch {
    Done { x: usize, subcalls: usize },
    Witness(SubdividedClawWitness),
}

impl<D: Decomposer> Biclique<'_, D> {
    fn call<W: Weight>(&self, g: &WeightedGraph<W>, terms: &[usize], depth: usize) -> Node<W> {
        let mut trace = RecursionTrace::default();
        let result = self.step(g, terms, depth, &mut trace);
        Node { result, trace }
    }

    fn new_profile<W: Weight>(
        &self,
        g: &WeightedGraph<W>,
        terms: &[usize],
    ) -> Result<BorderProfile<W>> {
        let labels = terms.iter().map(|&v| g.label(v)).collect();
        if self.cfg.witnesses {
            BorderProfile::with_witnesses(labels, self.cfg.terminal_cap)
        } else {
            BorderProfile::new(labels, self.cfg.terminal_cap)
        }
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
        if terms.len() > self.cap32 {
            return Err(Error::Invariant(format!(
                "{} terminals exceed 32k⁵ℓ = {}",
                terms.len(),
                self.cap32
            )));
        }
        if depth > self.depth_limit {
            return Err(Error::Invariant(format!(
                "recursion depth {depth} exceeds {}",
                self.depth_limit
            )));
        }
        let in_t = mask_of(n, terms);
        let by_terminals = terms.len() > self.cap24;
        let u_kind = if by_terminals {
            BalanceSet::Terminals
        } else {
            BalanceSet::NonTerminals
        };
        let call = |x, particles, leaf| TraceRecord::Call {
            depth,
            n,
            terminals: terms.len(),
            u: u_kind,
            x,
            particles,
            leaf,
        };
        if n <= self.leaf_cap || terms.len() == n {
            trace.record(keep, call(0, 0, true));
            return leaf(g, terms, self.cfg.terminal_cap, self.cfg.witnesses)
                .map(SolveOutcome::Profile);
        }
        let td = build_weissauer(g, self.cfg.k, self.cfg.td_budget)?;
        let problems: Vec<String> = validate_tree_decomposition(g, &td)
            .into_iter()
            .chain(check_weissauer(g, &td, self.cfg.k))
            .collect();
        if let Some(p) = problems.first() {
            return Err(Error::Contract(format!("tree decomposition rejected: {p}")));
        }
        let u: Vec<usize> = if by_terminals {
            terms.to_vec()
        } else {
            (0..n).filter(|&v| !in_t[v]).collect()
        };
        let ctx = choose_sink_node(g, &td, &u, self.cfg.k)?;
        let data = CallData {
            g,
            terms,
            in_t,
            u,
            by_terminals,
            ctx,
            depth,
        };

        let mut out = self.new_profile(g, terms)?;
        let mut inner = RecursionTrace::default();
        let mut js = Vec::new();
        for_each_independent_subset(g, &data.ctx.q, |j| {
            js.push(j);
            Ok(())
        })?;
        let (mut max_x, mut subcalls) = (0, 0);
        for j in js {
            match self.branch(&data, j, &mut out, &mut inner)? {
                Branch::Done { x, subcalls: s } => {
                    max_x = max_x.max(x);
                    subcalls += s;
                }
                Branch::Witness(w) => {
                    trace.record(keep, call(max_x, subcalls, false));
                    trace.absorb(inner);
                    return Ok(SolveOutcome::Witness(w));
                }
            }
        }
        trace.record(keep, call(max_x, subcalls, false));
        trace.absorb(inner);
        Ok(SolveOutcome::Profile(out))
    }

    fn branch<W: Weight>(
        &self,
        data: &CallData<'_, W>,
        jmask: u64,
        out: &mut BorderProfile<W>,
        trace: &mut RecursionTrace,
    ) -> Result<Branch> {
        let (g, ctx, k, t) = (data.g, &data.ctx, self.cfg.k, self.cfg.t);
        let n = g.len();
        let j: Vec<usize> = bits64(jmask).map(|i| ctx.q[i]).collect();
        let mut alive = vec![true; n];
        ctx.q.iter().for_each(|&v| alive[v] = false);
        g.open_neighborhood(&j)
            .into_iter()
            .for_each(|v| alive[v] = false);
        let keep_j = indices(&alive);
        let gj = g.induced_subgraph(&keep_j)?;
        let uj: Vec<usize> = data
            .u
            .iter()
            .filter_map(|v| keep_j.binary_search(v).ok())
            .collect();

        let outcome = self.dec.decompose(&gj, &uj, t)?;
        let problems = validate_outcome(&gj, &uj, t, &outcome);
        if let Some(p) = problems.first() {
            return Err(Error::Contract(format!("decomposer output rejected: {p}")));
        }
        let d = match outcome {
            DecomposeOutcome::Witness(w) => return Ok(Branch::Witness(w)),
            DecomposeOutcome::Split(d) => d,
        };
        let xj = d.x();
        if xj.len() > self.ell {
            return Err(Error::Capacity(format!(
                "decomposer used {} path vertices, ℓ = {}",
                xj.len(),
                self.ell
            )));
        }
        if !d.esd.check_pattern_degree(2 * t) {
            return Err(Error::Invariant(format!(
                "pattern degree {} above 2t - 1 = {}",
                d.esd.pattern().max_degree(),
                2 * t - 1
            )));
        }
        let rest_j = d.rest(&gj);
        let occ = d.esd.occurrence_bound(rest_j.len());
        if occ > d.esd.occurrence_limit() {
            return Err(Error::Invariant(format!(
                "a vertex lies in {occ} particles, limit {}",
                d.esd.occurrence_limit()
            )));
        }
        let nx: Vec<usize> = gj
            .closed_neighborhood(&xj)
            .into_iter()
            .map(|i| keep_j[i])
            .collect();
        let in_nx = mask_of(n, &nx);
        let cls = classify_components(g, ctx, &alive, &nx);

        // Size bounds on the bag neighborhood, Y and Z.
        let in_b = mask_of(n, &ctx.bag);
        let per = 2 * k * (k - 1) + 1;
        let x = xj.len();
        let nxb = nx.iter().filter(|&&v| in_b[v]).count();
        let bound = |ok: bool, what: String| {
            if ok {
                Ok(())
            } else {
                Err(Error::Invariant(what))
            }
        };
        bound(
            nxb <= per * x,
            format!("|N[X^J] ∩ B| = {nxb} > (2k(k-1)+1)·{x}"),
        )?;
        bound(
            cls.y.len() <= 4 * k.pow(4) * x,
            format!("|Y^J| = {} > 4k⁴·{x}", cls.y.len()),
        )?;
        bound(
            cls.z.len() <= per * cls.y.len(),
            format!("|Z^J| = {} > (2k(k-1)+1)·|Y^J|", cls.z.len()),
        )?;
        bound(
            cls.z.len() <= 8 * k.pow(5) * x,
            format!("|Z^J| = {} > 8k⁵·{x}", cls.z.len()),
        )?;
        let dirty = cls.dirty.iter().filter(|&&b| b).count();
        let touched_ids: Vec<usize> = (0..ctx.components.len())
            .filter(|&c| cls.touched[c])
            .collect();
        trace.record(
            self.cfg.trace,
            TraceRecord::Branch {
                depth: data.depth,
                j: jmask,
                q: ctx.q.len(),
                dirty,
                touched: touched_ids.len(),
                y: cls.y.len(),
                z: cls.z.len(),
            },
        );

        let in_y = mask_of(n, &cls.y);
        let in_z = mask_of(n, &cls.z);
        let mut in_touched = vec![false; n];
        let mut jobs = Vec::new();
        // (V(G_C), T_C) per touched component, as positions of g.
        let mut comp_sets = Vec::new();
        for &c in &touched_ids {
            let comp = &ctx.components[c];
            comp.iter().for_each(|&v| in_touched[v] = true);
            let mut vc: Vec<usize> = comp
                .iter()
                .chain(&ctx.boundaries[c])
                .copied()
                .filter(|&v| alive[v])
                .collect();
            vc.sort_unstable();
            let tc: Vec<usize> = vc
                .iter()
                .copied()
                .filter(|&v| !comp.contains(&v) || data.in_t[v])
                .collect();
            let allowed = if data.by_terminals {
                data.terms.len() / 2 + k
            } else {
                data.terms.len() + k
            };
            if tc.len() > allowed {
                return Err(Error::Invariant(format!(
                    "|T_C| = {} exceeds {allowed}",
                    tc.len()
                )));
            }
            let graph = g.induced_subgraph(&vc)?;
            let terms = tc
                .iter()
                .map(|v| vc.binary_search(v).expect("T_C ⊆ V(G_C)"))
                .collect();
            jobs.push(Job { graph, terms });
            comp_sets.push((vc, tc));
        }

        // G^Y = G^J - Y^J - touched components, inside G^J - N[X^J].
        let gy_set: Vec<usize> = keep_j
            .iter()
            .copied()
            .filter(|&v| !in_y[v] && !in_touched[v])
            .collect();
        if let Some(&v) = gy_set.iter().find(|&&v| in_nx[v]) {
            return Err(Error::Invariant(format!(
                "vertex {v} of G^Y lies in N[X^J]"
            )));
        }
        let mut in_gy = vec![false; n];
        gy_set.iter().for_each(|&v| in_gy[v] = true);
        for &c in &touched_ids {
            if let Some(&v) = ctx.boundaries[c].iter().find(|&&v| in_gy[v] && !in_z[v]) {
                return Err(Error::Invariant(format!(
                    "neighbor {v} of a touched component is outside Z^J"
                )));
            }
        }
        let g_rest = gj.induced_subgraph(&rest_j)?;
        let keep_idx: Vec<usize> = gy_set
            .iter()
            .map(|&v| {
                let i = keep_j.binary_search(&v).expect("G^Y ⊆ G^J");
                rest_j.binary_search(&i).expect("G^Y avoids N[X^J]")
            })
            .collect();
        let esd_y = d.esd.restrict(&g_rest, &keep_idx)?;
        let gy = g_rest.induced_subgraph(&keep_idx)?;
        let ty: Vec<usize> = (0..gy_set.len())
            .filter(|&i| data.in_t[gy_set[i]] || in_z[gy_set[i]])
            .collect();
        let in_ty_local = mask_of(gy_set.len(), &ty);
        let particles = esd_y.particles();
        for p in &particles {
            let graph = gy.induced_subgraph(&p.members)?;
            let terms = p
                .members
                .iter()
                .enumerate()
                .filter(|&(_, &v)| in_ty_local[v])
                .map(|(i, _)| i)
                .collect();
            jobs.push(Job { graph, terms });
        }
        let subcalls = jobs.len();
        let nodes = run_jobs(self.cfg.parallel, jobs, |job| {
            self.call(&job.graph, &job.terms, data.depth + 1)
        });
        let mut profiles = match collect_children(nodes, trace)? {
            Ok(p) => p,
            Err(w) => return Ok(Branch::Witness(w)),
        };
        let particle_profiles: HashMap<_, _> = particles
            .iter()
            .map(|p| p.kind)
            .zip(profiles.drain(touched_ids.len()..))
            .collect();
        let comp_profiles = profiles;
        let fy = combine_esd(
            &gy,
            &ty,
            &esd_y,
            &particle_profiles,
            self.cfg.terminal_cap,
            self.cfg.witnesses,
        )?;

        self.fold(
            data,
            &j,
            &alive,
            &in_y,
            &gy_set,
            &ty,
            &fy,
            &touched_ids,
            &comp_sets,
            &comp_profiles,
            out,
        )?;
        Ok(Branch::Done { x, subcalls })
    }

    /// Every independent `I ⊆ (T ∩ V(G^J)) ∪ T^Y ∪ Y^J` offers
    /// `w(J) + w(I \ (T^Y ∪ ⋃C)) + f_{G^Y}(I ∩ T^Y)
    ///  + Σ_C (f_{G_C}(N[C] ∩ I) - w(I ∩ N(C)))` to the cell `(I ∪ J) ∩ T`,
    /// with `C` over the touched components.
    #[allow(clippy::too_many_arguments)]
    fn fold<W: Weight>(
        &self,
        data: &CallData<'_, W>,
        j: &[usize],
        alive: &[bool],
        in_y: &[bool],
        gy_set: &[usize],
        ty: &[usize],
        fy: &BorderProfile<W>,
        touched_ids: &[usize],
        comp_sets: &[(Vec<usize>, Vec<usize>)],
        comp_profiles: &[BorderProfile<W>],
        out: &mut BorderProfile<W>,
    ) -> Result<()> {
        let g = data.g;
        let n = g.len();
        let ctx = &data.ctx;
        let mut term_bit = vec![None; n];
        data.terms
            .iter()
            .enumerate()
            .for_each(|(i, &v)| term_bit[v] = Some(i));
        let mut ty_bit = vec![None; n];
        ty.iter()
            .enumerate()
            .for_each(|(b, &i)| ty_bit[gy_set[i]] = Some(b));
        let mut in_s = vec![false; n];
        for v in 0..n {
            in_s[v] = (alive[v] && data.in_t[v]) || ty_bit[v].is_some() || in_y[v];
        }
        let s = indices(&in_s);
        let mut in_touched = vec![false; n];
        for &c in touched_ids {
            ctx.components[c].iter().for_each(|&v| in_touched[v] = true);
        }
        struct Info {
            term: Option<usize>,
            ty: Option<usize>,
            base: i128,
            counted: bool,
            /// (touched index, bit in its profile, weight to subtract)
            comps: Vec<(usize, usize, i128)>,
        }
        let info: Vec<Info> = s
            .iter()
            .map(|&v| {
                let w = g.weight(v).wide();
                let counted = ty_bit[v].is_none() && !in_touched[v];
                let comps = touched_ids
                    .iter()
                    .enumerate()
                    .filter_map(|(ti, &c)| {
                        let (_, tc) = &comp_sets[ti];
                        let bit = tc.binary_search(&v).ok()?;
                        let boundary = ctx.boundaries[c].binary_search(&v).is_ok();
                        Some((ti, bit, if boundary { w } else { 0 }))
                    })
                    .collect();
                Info {
                    term: term_bit[v],
                    ty: ty_bit[v],
                    base: if counted { w } else { 0 },
                    counted,
                    comps,
                }
            })
            .collect();
        let j_weight: i128 = j.iter().map(|&v| g.weight(v).wide()).sum();
        let j_cell = j
            .iter()
            .filter_map(|&v| term_bit[v])
            .fold(0usize, |m, b| m | 1 << b);
        let mut cmask = vec![0usize; touched_ids.len()];
        for_each_independent_subset(g, &s, |mask| {
            let (mut total, mut ymask, mut cell) = (j_weight, 0usize, j_cell);
            cmask.iter_mut().for_each(|m| *m = 0);
            for i in bits64(mask) {
                let inf = &info[i];
                total += inf.base;
                if let Some(b) = inf.ty {
                    ymask |= 1 << b;
                }
                if let Some(b) = inf.term {
                    cell |= 1 << b;
                }
                for &(ti, bit, sub) in &inf.comps {
                    cmask[ti] |= 1 << bit;
                    total -= sub;
                }
            }
            let minus_inf =
                || Error::Invariant("sub-profile is minus infinity on an independent set".into());
            total += fy.get(ymask).ok_or_else(minus_inf)?.wide();
            for (ti, p) in comp_profiles.iter().enumerate() {
                total += p.get(cmask[ti]).ok_or_else(minus_inf)?.wide();
            }
            let value = W::narrow(total)
                .ok_or_else(|| Error::Invariant(format!("negative cell value {total}")))?;
            if out.get(cell).is_none_or(|cur| value > cur) {
                let witness = self.cfg.witnesses.then(|| {
                    let mut set: Vec<usize> = j.iter().map(|&v| g.label(v)).collect();
                    set.extend(
                        bits64(mask)
                            .filter(|&i| info[i].counted)
                            .map(|i| g.label(s[i])),
                    );
                    set.extend_from_slice(fy.witness(ymask).unwrap_or(&[]));
                    for (ti, p) in comp_profiles.iter().enumerate() {
                        set.extend_from_slice(p.witness(cmask[ti]).unwrap_or(&[]));
                    }
                    set.sort_unstable();
                    set.dedup();
                    set
                });
                out.set_with_witness(cell, Some(value), witness);
            }
            Ok(())
        })
    }
}
