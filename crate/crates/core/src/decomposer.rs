//! Balanced decompositions: either an induced `S_{t,t,t}`, or a few short
//! induced paths `P` together with a rigid extended strip decomposition of
//! `G - N[⋃P]` whose particles each hold at most half of a given set `U`.

use std::collections::HashSet;
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::esd::{parse_esd, validate_esd, write_esd, ExtendedStripDecomposition};
use crate::graph::{find_induced_sttt, mask_of, SubdividedClawWitness, WeightedGraph};
use crate::num::Weight;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecomposeOutcome {
    Witness(SubdividedClawWitness),
    Split(Decomposition),
}

/// Paths are lists of positions in the decomposed graph `G`; the
/// decomposition refers to positions in `G - N[X]` (vertex `i` being the
/// `i`-th smallest survivor).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub paths: Vec<Vec<usize>>,
    pub esd: ExtendedStripDecomposition,
}

impl Decomposition {
    /// `X = ⋃P`, sorted.
    pub fn x(&self) -> Vec<usize> {
        let mut x: Vec<usize> = self.paths.iter().flatten().copied().collect();
        x.sort_unstable();
        x.dedup();
        x
    }

    /// `V(G) \ N[X]`, sorted.
    pub fn rest<W: Weight>(&self, g: &WeightedGraph<W>) -> Vec<usize> {
        let nx = g.closed_neighborhood(&self.x());
        let mut keep = vec![true; g.len()];
        nx.iter().for_each(|&v| keep[v] = false);
        (0..g.len()).filter(|&v| keep[v]).collect()
    }
}

pub trait Decomposer: Sync {
    /// `u` is a set of positions in `g`.
    fn decompose<W: Weight>(
        &self,
        g: &WeightedGraph<W>,
        u: &[usize],
        t: usize,
    ) -> Result<DecomposeOutcome>;
}

/// `⌈11 log₂ n + 6⌉`, the largest allowed number of paths (6 for `n <= 1`).
pub fn path_cap(n: usize) -> usize {
    if n <= 1 {
        return 6;
    }
    (11.0 * (n as f64).log2() + 6.0 - 1e-9).ceil() as usize
}

/// Most vertices of `U` one particle may hold: `⌈|U|/2⌉`.
pub fn balance_limit(u_len: usize) -> usize {
    u_len.div_ceil(2)
}

/// Check an outcome against the contract. Returns one message per problem.
pub fn validate_outcome<W: Weight>(
    g: &WeightedGraph<W>,
    u: &[usize],
    t: usize,
    outcome: &DecomposeOutcome,
) -> Vec<String> {
    let mut problems = Vec::new();
    match outcome {
        DecomposeOutcome::Witness(w) => {
            if w.leg_lengths() != [t, t, t] {
                problems.push(format!(
                    "witness has legs {:?}, expected {t} each",
                    w.leg_lengths()
                ));
            }
            if !w.verify(g) {
                problems.push(format!(
                    "witness {} is not an induced subdivided claw",
                    w.describe()
                ));
            }
        }
        DecomposeOutcome::Split(d) => {
            let cap = path_cap(g.len());
            if d.paths.len() > cap {
                problems.push(format!("{} paths exceed the cap {cap}", d.paths.len()));
            }
            for (i, p) in d.paths.iter().enumerate() {
                if p.is_empty() || p.len() > t + 2 {
                    problems.push(format!(
                        "path {i} has {} vertices, allowed 1..={}",
                        p.len(),
                        t + 2
                    ));
                }
                if p.iter().any(|&v| v >= g.len()) || !is_induced_path(g, p) {
                    problems.push(format!(
                        "path {i} {:?} is not an induced path",
                        p.iter().map(|v| v + 1).collect::<Vec<_>>()
                    ));
                }
            }
            if !problems.is_empty() {
                return problems;
            }
            let rest = d.rest(g);
            let sub = g.induced_subgraph(&rest).expect("rest lies in g");
            let report = validate_esd(&sub, &d.esd, true);
            problems.extend(
                report
                    .violations
                    .iter()
                    .map(|v| format!("decomposition of G - N[X]: {v}")),
            );
            if !report.is_ok() {
                return problems;
            }
            let in_u = mask_of(g.len(), u);
            let limit = balance_limit(u.len());
            for p in d.esd.particles() {
                let load = p.members.iter().filter(|&&i| in_u[rest[i]]).count();
                if load > limit {
                    problems.push(format!(
                        "particle {:?} holds {load} vertices of U, allowed {limit}",
                        p.kind
                    ));
                }
            }
        }
    }
    problems
}

fn is_induced_path<W: Weight>(g: &WeightedGraph<W>, p: &[usize]) -> bool {
    let distinct: HashSet<_> = p.iter().collect();
    if distinct.len() != p.len() {
        return false;
    }
    (0..p.len()).all(|i| (i + 1..p.len()).all(|j| g.has_edge(p[i], p[j]) == (j == i + 1)))
}

/// Desk-scale search for `X`: first look for an induced `S_{t,t,t}`; then try
/// unions of `p = 0, 1, 2, ...` induced paths with at most `t + 2` vertices,
/// exhaustively while the number of unions stays within `exhaustive_budget`
/// and greedily afterwards. The decomposition of `G - N[X]` has one isolated
/// pattern vertex per component. Among balanced candidates of the first
/// successful level it prefers the smallest `|N(N[X])|`, then the smallest
/// `N[X]`, then the fewest vertices, then the lexicographically first.
///
/// The search aims for `⌊|U|/2⌋` per particle, one tighter than the contract
/// for odd `|U|`, so that a single vertex of `U` always gets separated.
#[derive(Clone, Debug)]
pub struct ReferenceDecomposer {
    pub exhaustive_budget: usize,
    /// Practical cap on the number of paths; the contract cap applies anyway.
    pub max_paths: Option<usize>,
    /// Skip the `S_{t,t,t}` search (for callers that already know the graph
    /// is free).
    pub skip_witness_search: bool,
}

impl Default for ReferenceDecomposer {
    fn default() -> Self {
        ReferenceDecomposer {
            exhaustive_budget: 200_000,
            max_paths: None,
            skip_witness_search: false,
        }
    }
}

/// Induced paths with at most `max_len` vertices, one per vertex set, sorted
/// by length and then by sorted vertex set.
pub fn short_induced_paths<W: Weight>(g: &WeightedGraph<W>, max_len: usize) -> Vec<Vec<usize>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut path = Vec::new();
    fn grow<W: Weight>(
        g: &WeightedGraph<W>,
        max_len: usize,
        path: &mut Vec<usize>,
        seen: &mut HashSet<Vec<usize>>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let mut key = path.clone();
        key.sort_unstable();
        if seen.insert(key) {
            out.push(path.clone());
        }
        if path.len() == max_len {
            return;
        }
        let last = *path.last().expect("path is nonempty");
        for &w in g.neighbors(last) {
            let ok =
                !path.contains(&w) && path[..path.len() - 1].iter().all(|&p| !g.has_edge(p, w));
            if ok {
                path.push(w);
                grow(g, max_len, path, seen, out);
                path.pop();
            }
        }
    }
    for v in 0..g.len() {
        path.push(v);
        grow(g, max_len, &mut path, &mut seen, &mut out);
        path.pop();
    }
    out.sort_by_cached_key(|p| {
        let mut s = p.clone();
        s.sort_unstable();
        (p.len(), s)
    });
    out
}

/// What a candidate `X` achieves.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Score {
    max_load: usize,
    remaining_u: usize,
    boundary: usize,
    closed: usize,
    x: Vec<usize>,
}

struct Evaluator<'a, W> {
    g: &'a WeightedGraph<W>,
    in_u: Vec<bool>,
    removed: Vec<bool>,
    seen: Vec<bool>,
    stack: Vec<usize>,
}

impl<W: Weight> Evaluator<'_, W> {
    fn score(&mut self, x: &[usize]) -> Score {
        let g = self.g;
        let n = g.len();
        self.removed.iter_mut().for_each(|r| *r = false);
        let mut closed = 0;
        for &v in x {
            for u in std::iter::once(v).chain(g.neighbors(v).iter().copied()) {
                if !self.removed[u] {
                    self.removed[u] = true;
                    closed += 1;
                }
            }
        }
        let mut boundary = 0;
        let mut max_load = 0;
        let mut remaining_u = 0;
        self.seen.iter_mut().for_each(|s| *s = false);
        for s in 0..n {
            if self.removed[s] || self.seen[s] {
                continue;
            }
            self.seen[s] = true;
            self.stack.push(s);
            let mut load = 0;
            while let Some(v) = self.stack.pop() {
                load += self.in_u[v] as usize;
                let mut touches = false;
                for &w in g.neighbors(v) {
                    if self.removed[w] {
                        touches = true;
                    } else if !self.seen[w] {
                        self.seen[w] = true;
                        self.stack.push(w);
                    }
                }
                boundary += touches as usize;
            }
            max_load = max_load.max(load);
            remaining_u += load;
        }
        let mut xs = x.to_vec();
        xs.sort_unstable();
        xs.dedup();
        Score {
            max_load,
            remaining_u,
            boundary,
            closed,
            x: xs,
        }
    }
}

impl Decomposer for ReferenceDecomposer {
    fn decompose<W: Weight>(
        &self,
        g: &WeightedGraph<W>,
        u: &[usize],
        t: usize,
    ) -> Result<DecomposeOutcome> {
        if t == 0 {
            return Err(Error::Input("t must be positive".into()));
        }
        if !self.skip_witness_search {
            if let Some(w) = find_induced_sttt(g, t)? {
                return Ok(DecomposeOutcome::Witness(w));
            }
        }
        let n = g.len();
        let target = u.len() / 2;
        let cap = self.max_paths.map_or(path_cap(n), |m| m.min(path_cap(n)));
        let in_u = mask_of(n, u);
        let mut ev = Evaluator {
            g,
            in_u,
            removed: vec![false; n],
            seen: vec![false; n],
            stack: Vec::new(),
        };

        let finish = |paths: Vec<Vec<usize>>| -> Result<DecomposeOutcome> {
            let mut d = Decomposition {
                paths,
                esd: ExtendedStripDecomposition::new(0),
            };
            let rest = d.rest(g);
            let sub = g.induced_subgraph(&rest)?;
            d.esd = ExtendedStripDecomposition::components(&sub);
            Ok(DecomposeOutcome::Split(d))
        };

        let empty = ev.score(&[]);
        if empty.max_load <= target {
            return finish(Vec::new());
        }
        let paths = short_induced_paths(g, t + 2);
        let mut best_overall = (empty.clone(), Vec::<usize>::new());

        // Exhaustive levels.
        let mut level: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 1..=cap {
            let count = level.len().saturating_mul(paths.len());
            if count > self.exhaustive_budget {
                break;
            }
            let mut next = Vec::new();
            let mut best: Option<(Score, Vec<usize>)> = None;
            for combo in &level {
                let start = combo.last().map_or(0, |&i| i + 1);
                for i in start..paths.len() {
                    let mut c = combo.clone();
                    c.push(i);
                    let x: Vec<usize> = c.iter().flat_map(|&j| paths[j].iter().copied()).collect();
                    let s = ev.score(&x);
                    if s.max_load <= target {
                        let key = |s: &Score| (s.boundary, s.closed, s.x.len(), s.x.clone());
                        if best.as_ref().is_none_or(|(b, _)| key(&s) < key(b)) {
                            best = Some((s, c.clone()));
                        }
                    } else if s < best_overall.0 {
                        best_overall = (s, c.clone());
                    }
                    next.push(c);
                }
            }
            if let Some((_, c)) = best {
                return finish(c.iter().map(|&j| paths[j].clone()).collect());
            }
            level = next;
        }

        // Greedy continuation from the best unbalanced union seen so far.
        let mut chosen = best_overall.1;
        let mut current = best_overall.0;
        while chosen.len() < cap {
            let mut best: Option<(Score, usize)> = None;
            for (i, path) in paths.iter().enumerate() {
                if chosen.contains(&i) {
                    continue;
                }
                let mut x = current.x.clone();
                x.extend_from_slice(path);
                let s = ev.score(&x);
                if best.as_ref().is_none_or(|(b, _)| s < *b) {
                    best = Some((s, i));
                }
            }
            let Some((s, i)) = best else { break };
            chosen.push(i);
            current = s;
            if current.max_load <= target {
                return finish(chosen.iter().map(|&j| paths[j].clone()).collect());
            }
        }
        Err(Error::DecompositionNotFound {
            best_imbalance: current.max_load,
            allowed: target,
        })
    }
}

/// Text form: `u <U>` then one `path <vertices>` line per path and the
/// decomposition of `G - N[X]`, or a single
/// `witness <center> : <leg> | <leg> | <leg>` line. Ids are 1-based; the
/// decomposition uses ids of `G - N[X]`.
pub fn write_outcome(u: &[usize], outcome: &DecomposeOutcome) -> String {
    let list = |s: &[usize]| s.iter().map(|v| format!(" {}", v + 1)).collect::<String>();
    let mut out = format!("u{}\n", list(u));
    match outcome {
        DecomposeOutcome::Witness(w) => {
            writeln!(
                out,
                "witness {} :{} |{} |{}",
                w.center + 1,
                list(&w.legs[0]),
                list(&w.legs[1]),
                list(&w.legs[2])
            )
            .unwrap();
        }
        DecomposeOutcome::Split(d) => {
            for p in &d.paths {
                writeln!(out, "path{}", list(p)).unwrap();
            }
            out.push_str(&write_esd(&d.esd));
        }
    }
    out
}

/// Parse [`write_outcome`] output for graph `g`; returns `U` and the outcome.
pub fn read_outcome<W: Weight>(
    text: &str,
    g: &WeightedGraph<W>,
) -> Result<(Vec<usize>, DecomposeOutcome)> {
    let n = g.len();
    let ids = |s: &str, line: usize| -> Result<Vec<usize>> {
        s.split_whitespace()
            .map(|f| crate::graph::parse_id(f, n, line))
            .collect()
    };
    let mut u = None;
    let mut paths = Vec::new();
    let mut esd_text = String::new();
    let mut witness = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if let Some(rest) = line
            .strip_prefix("u ")
            .or(if line == "u" { Some("") } else { None })
        {
            u = Some(ids(rest, line_no)?);
        } else if let Some(rest) = line.strip_prefix("path") {
            paths.push(ids(rest, line_no)?);
        } else if let Some(rest) = line.strip_prefix("witness") {
            let (c, legs) = rest
                .split_once(':')
                .ok_or_else(|| Error::parse(line_no, "missing `:` in witness"))?;
            let center = ids(c, line_no)?;
            let legs: Vec<Vec<usize>> = legs
                .split('|')
                .map(|l| ids(l, line_no))
                .collect::<Result<_>>()?;
            let (&[center], [a, b, c]) = (center.as_slice(), legs.as_slice()) else {
                return Err(Error::parse(
                    line_no,
                    "witness needs one center and three legs",
                ));
            };
            let label = |v: &usize| g.label(*v);
            witness = Some(SubdividedClawWitness {
                center: g.label(center),
                legs: [
                    a.iter().map(label).collect(),
                    b.iter().map(label).collect(),
                    c.iter().map(label).collect(),
                ],
            });
        } else {
            // Blank lines are kept so that ESD parse errors report the right line.
            esd_text.push_str(raw);
        }
        esd_text.push('\n');
    }
    let u = u.ok_or_else(|| Error::parse(1, "missing `u` line"))?;
    if let Some(w) = witness {
        return Ok((u, DecomposeOutcome::Witness(w)));
    }
    let mut d = Decomposition {
        paths,
        esd: ExtendedStripDecomposition::new(0),
    };
    let rest = d.rest(g);
    d.esd = parse_esd(&esd_text, rest.len())?;
    Ok((u, DecomposeOutcome::Split(d)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate_subdivided_claw;

    fn path(n: usize) -> WeightedGraph<u64> {
        WeightedGraph::from_edges(vec![1; n], (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn caps() {
        assert_eq!(path_cap(1024), 116);
        assert_eq!(path_cap(2), 17);
        assert_eq!(balance_limit(7), 4);
    }

    #[test]
    fn claw_gives_witness() {
        let g: WeightedGraph<u64> = generate_subdivided_claw(1, 1, 1).unwrap();
        let out = ReferenceDecomposer::default()
            .decompose(&g, &[0, 1, 2, 3], 1)
            .unwrap();
        assert!(matches!(out, DecomposeOutcome::Witness(_)));
        assert!(validate_outcome(&g, &[0, 1, 2, 3], 1, &out).is_empty());
    }

    #[test]
    fn balanced_components_need_no_paths() {
        let g = path(3).disjoint_union(&path(3));
        let all: Vec<usize> = (0..6).collect();
        let out = ReferenceDecomposer::default()
            .decompose(&g, &all, 2)
            .unwrap();
        let DecomposeOutcome::Split(d) = &out else {
            panic!("expected a split")
        };
        assert!(d.paths.is_empty());
        assert_eq!(d.esd.pattern().len(), 2);
        assert!(validate_outcome(&g, &all, 2, &out).is_empty());
    }

    #[test]
    fn nine_vertex_path_prefers_a_small_boundary() {
        let g = path(9);
        let all: Vec<usize> = (0..9).collect();
        let out = ReferenceDecomposer::default()
            .decompose(&g, &all, 2)
            .unwrap();
        let DecomposeOutcome::Split(d) = &out else {
            panic!("expected a split")
        };
        // Cutting at 4 leaves two boundary vertices, cutting off 1..=3 only one.
        assert_eq!(d.paths, vec![vec![1, 2, 3]]);
        assert_eq!(d.rest(&g), vec![5, 6, 7, 8]);
        assert!(validate_outcome(&g, &all, 2, &out).is_empty());
        let text = write_outcome(&all, &out);
        assert_eq!(read_outcome(&text, &g).unwrap(), (all, out));
    }

    #[test]
    fn validator_flags_imbalance_and_long_paths() {
        let g = path(3).disjoint_union(&path(3));
        let all: Vec<usize> = (0..6).collect();
        let lopsided = DecomposeOutcome::Split(Decomposition {
            paths: vec![],
            esd: ExtendedStripDecomposition::trivial(6),
        });
        assert_eq!(validate_outcome(&g, &all, 2, &lopsided).len(), 1);

        let g = path(12);
        let long = DecomposeOutcome::Split(Decomposition {
            paths: vec![vec![0, 1, 2, 3, 4]],
            esd: ExtendedStripDecomposition::components(
                &g.induced_subgraph(&(6..12).collect::<Vec<_>>()).unwrap(),
            ),
        });
        let problems = validate_outcome(&g, &[], 2, &long);
        assert!(problems.iter().any(|p| p.contains("5 vertices")));
    }

    #[test]
    fn single_u_vertex_gets_separated() {
        let g = path(5);
        let out = ReferenceDecomposer::default()
            .decompose(&g, &[2], 2)
            .unwrap();
        let DecomposeOutcome::Split(d) = &out else {
            panic!("expected a split")
        };
        assert!(d.rest(&g).iter().all(|&v| v != 2));
    }
}
