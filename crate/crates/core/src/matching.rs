//! Maximum-weight matching in general graphs (Edmonds' blossom algorithm with
//! integer duals, in the primal-dual formulation popularised by Galil and by
//! Van Rantwijk), plus an exhaustive matcher for small graphs.

use crate::error::{Error, Result};
use crate::num::Weight;

/// Edge-weighted simple graph on `0..n`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AuxGraph<W> {
    n: usize,
    edges: Vec<(usize, usize, W)>,
}

impl<W: Weight> AuxGraph<W> {
    pub fn new(n: usize) -> Self {
        AuxGraph {
            n,
            edges: Vec::new(),
        }
    }

    /// Append a vertex and return its id.
    pub fn add_vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize, w: W) -> Result<()> {
        if u >= self.n || v >= self.n || u == v {
            return Err(Error::Input(format!(
                "bad auxiliary edge ({u}, {v}) on {} vertices",
                self.n
            )));
        }
        let (a, b) = (u.min(v), u.max(v));
        if self.edges.iter().any(|&(x, y, _)| (x, y) == (a, b)) {
            return Err(Error::Input(format!("duplicate auxiliary edge ({a}, {b})")));
        }
        self.edges.push((a, b, w));
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Edges as `(u, v, w)` with `u < v`, in insertion order.
    pub fn edges(&self) -> &[(usize, usize, W)] {
        &self.edges
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<W> {
        let (a, b) = (u.min(v), u.max(v));
        self.edges
            .iter()
            .find(|&&(x, y, _)| (x, y) == (a, b))
            .map(|e| e.2)
    }

    /// Whether `pairs` is a matching of existing edges; returns its weight.
    pub fn matching_weight(&self, pairs: &[(usize, usize)]) -> Option<W> {
        let mut used = vec![false; self.n];
        let mut total = W::zero();
        for &(u, v) in pairs {
            let w = self.weight(u, v)?;
            if used[u] || used[v] {
                return None;
            }
            used[u] = true;
            used[v] = true;
            total = total + w;
        }
        Some(total)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching<W> {
    /// Matched pairs `(u, v)` with `u < v`, sorted.
    pub pairs: Vec<(usize, usize)>,
    pub weight: W,
}

/// Exhaustive search over all matchings. Exponential; meant for graphs of
/// roughly a dozen vertices.
pub fn brute_force_matching<W: Weight>(g: &AuxGraph<W>) -> Matching<W> {
    let mut adj: Vec<Vec<(usize, W)>> = vec![Vec::new(); g.n];
    for &(u, v, w) in &g.edges {
        adj[u].push((v, w));
        adj[v].push((u, w));
    }
    let mut used = vec![false; g.n];
    let mut cur = Vec::new();
    let mut best = (W::zero(), Vec::new());
    fn go<W: Weight>(
        v: usize,
        adj: &[Vec<(usize, W)>],
        used: &mut [bool],
        cur: &mut Vec<(usize, usize)>,
        acc: W,
        best: &mut (W, Vec<(usize, usize)>),
    ) {
        let Some(v) = (v..adj.len()).find(|&u| !used[u]) else {
            if acc > best.0 {
                *best = (acc, cur.clone());
            }
            return;
        };
        used[v] = true;
        go(v + 1, adj, used, cur, acc, best);
        for &(u, w) in &adj[v] {
            if !used[u] {
                used[u] = true;
                cur.push((v.min(u), v.max(u)));
                go(v + 1, adj, used, cur, acc + w, best);
                cur.pop();
                used[u] = false;
            }
        }
        used[v] = false;
    }
    go(0, &adj, &mut used, &mut cur, W::zero(), &mut best);
    let mut pairs = best.1;
    pairs.sort_unstable();
    Matching {
        pairs,
        weight: best.0,
    }
}

/// A maximum-weight matching (not necessarily of maximum cardinality).
/// Deterministic: edges are processed in lexicographic order.
pub fn max_weight_matching<W: Weight>(g: &AuxGraph<W>) -> Matching<W> {
    let mut edges: Vec<(usize, usize, i128)> =
        g.edges.iter().map(|&(u, v, w)| (u, v, w.wide())).collect();
    edges.sort_unstable();
    let mate = Blossom::new(g.n, edges).solve();
    let mut pairs: Vec<(usize, usize)> = mate
        .iter()
        .enumerate()
        .filter_map(|(v, m)| m.filter(|&u| v < u).map(|u| (v, u)))
        .collect();
    pairs.sort_unstable();
    let weight = g
        .matching_weight(&pairs)
        .expect("blossom output is a matching of existing edges");
    Matching { pairs, weight }
}

const NONE: usize = usize::MAX;

/// State of the primal-dual search. Endpoint `p` of edge `k = p / 2` is vertex
/// `edges[k].0` for even `p` and `edges[k].1` for odd `p`; `mate[v]` is the
/// remote endpoint of the matched edge at `v`.
struct Blossom {
    nv: usize,
    edges: Vec<(usize, usize, i128)>,
    endpoint: Vec<usize>,
    neighbend: Vec<Vec<usize>>,
    mate: Vec<usize>,
    label: Vec<u8>,
    labelend: Vec<usize>,
    inblossom: Vec<usize>,
    parent: Vec<usize>,
    childs: Vec<Vec<usize>>,
    base: Vec<usize>,
    endps: Vec<Vec<usize>>,
    bestedge: Vec<usize>,
    bestedges: Vec<Option<Vec<usize>>>,
    unused: Vec<usize>,
    dual: Vec<i128>,
    allowed: Vec<bool>,
    queue: Vec<usize>,
}

impl Blossom {
    fn new(nv: usize, edges: Vec<(usize, usize, i128)>) -> Self {
        let maxw = edges.iter().map(|e| e.2).max().unwrap_or(0).max(0);
        let mut endpoint = Vec::with_capacity(2 * edges.len());
        let mut neighbend = vec![Vec::new(); nv];
        for (k, &(i, j, _)) in edges.iter().enumerate() {
            endpoint.push(i);
            endpoint.push(j);
            neighbend[i].push(2 * k + 1);
            neighbend[j].push(2 * k);
        }
        let ne = edges.len();
        Blossom {
            nv,
            endpoint,
            neighbend,
            mate: vec![NONE; nv],
            label: vec![0; 2 * nv],
            labelend: vec![NONE; 2 * nv],
            inblossom: (0..nv).collect(),
            parent: vec![NONE; 2 * nv],
            childs: vec![Vec::new(); 2 * nv],
            base: (0..nv).chain(std::iter::repeat_n(NONE, nv)).collect(),
            endps: vec![Vec::new(); 2 * nv],
            bestedge: vec![NONE; 2 * nv],
            bestedges: vec![None; 2 * nv],
            unused: (nv..2 * nv).collect(),
            dual: std::iter::repeat_n(maxw, nv)
                .chain(std::iter::repeat_n(0, nv))
                .collect(),
            allowed: vec![false; ne],
            queue: Vec::new(),
            edges,
        }
    }

    fn slack(&self, k: usize) -> i128 {
        let (i, j, w) = self.edges[k];
        self.dual[i] + self.dual[j] - 2 * w
    }

    fn leaves(&self, b: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![b];
        while let Some(t) = stack.pop() {
            if t < self.nv {
                out.push(t);
            } else {
                stack.extend(self.childs[t].iter().rev());
            }
        }
        out
    }

    fn assign_label(&mut self, w: usize, t: u8, p: usize) {
        let b = self.inblossom[w];
        debug_assert!(self.label[w] == 0 && self.label[b] == 0);
        self.label[w] = t;
        self.label[b] = t;
        self.labelend[w] = p;
        self.labelend[b] = p;
        self.bestedge[w] = NONE;
        self.bestedge[b] = NONE;
        if t == 1 {
            let l = self.leaves(b);
            self.queue.extend(l);
        } else {
            let base = self.base[b];
            let m = self.mate[base];
            debug_assert!(m != NONE);
            self.assign_label(self.endpoint[m], 1, m ^ 1);
        }
    }

    /// Trace back from `v` and `w` to find a new blossom's base, or `NONE`
    /// when the two paths reach different roots (an augmenting path).
    fn scan_blossom(&mut self, mut v: usize, mut w: usize) -> usize {
        let mut path = Vec::new();
        let mut base = NONE;
        while v != NONE || w != NONE {
            let mut b = self.inblossom[v];
            if self.label[b] & 4 != 0 {
                base = self.base[b];
                break;
            }
            path.push(b);
            self.label[b] = 5;
            if self.labelend[b] == NONE {
                v = NONE;
            } else {
                v = self.endpoint[self.labelend[b]];
                b = self.inblossom[v];
                v = self.endpoint[self.labelend[b]];
            }
            if w != NONE {
                std::mem::swap(&mut v, &mut w);
            }
        }
        for b in path {
            self.label[b] = 1;
        }
        base
    }

    fn add_blossom(&mut self, base: usize, k: usize) {
        let (mut v, mut w, _) = self.edges[k];
        let bb = self.inblossom[base];
        let mut bv = self.inblossom[v];
        let mut bw = self.inblossom[w];
        let b = self.unused.pop().expect("blossom slots available");
        self.base[b] = base;
        self.parent[b] = NONE;
        self.parent[bb] = b;
        let mut path = Vec::new();
        let mut endps = Vec::new();
        while bv != bb {
            self.parent[bv] = b;
            path.push(bv);
            endps.push(self.labelend[bv]);
            v = self.endpoint[self.labelend[bv]];
            bv = self.inblossom[v];
        }
        path.push(bb);
        path.reverse();
        endps.reverse();
        endps.push(2 * k);
        while bw != bb {
            self.parent[bw] = b;
            path.push(bw);
            endps.push(self.labelend[bw] ^ 1);
            w = self.endpoint[self.labelend[bw]];
            bw = self.inblossom[w];
        }
        self.childs[b] = path.clone();
        self.endps[b] = endps;
        self.label[b] = 1;
        self.labelend[b] = self.labelend[bb];
        self.dual[b] = 0;
        for v in self.leaves(b) {
            if self.label[self.inblossom[v]] == 2 {
                self.queue.push(v);
            }
            self.inblossom[v] = b;
        }
        let mut bestedgeto = vec![NONE; 2 * self.nv];
        for &bv in &path {
            let lists: Vec<Vec<usize>> = match self.bestedges[bv].take() {
                Some(l) => vec![l],
                None => self
                    .leaves(bv)
                    .iter()
                    .map(|&v| self.neighbend[v].iter().map(|p| p / 2).collect())
                    .collect(),
            };
            for list in lists {
                for k in list {
                    let (i, j, _) = self.edges[k];
                    let j = if self.inblossom[j] == b { i } else { j };
                    let bj = self.inblossom[j];
                    if bj != b
                        && self.label[bj] == 1
                        && (bestedgeto[bj] == NONE || self.slack(k) < self.slack(bestedgeto[bj]))
                    {
                        bestedgeto[bj] = k;
                    }
                }
            }
            self.bestedge[bv] = NONE;
        }
        let best: Vec<usize> = bestedgeto.into_iter().filter(|&k| k != NONE).collect();
        self.bestedge[b] = NONE;
        for &k in &best {
            if self.bestedge[b] == NONE || self.slack(k) < self.slack(self.bestedge[b]) {
                self.bestedge[b] = k;
            }
        }
        self.bestedges[b] = Some(best);
    }

    fn expand_blossom(&mut self, b: usize, endstage: bool) {
        for s in self.childs[b].clone() {
            self.parent[s] = NONE;
            if s < self.nv {
                self.inblossom[s] = s;
            } else if endstage && self.dual[s] == 0 {
                self.expand_blossom(s, endstage);
            } else {
                for v in self.leaves(s) {
                    self.inblossom[v] = s;
                }
            }
        }
        if !endstage && self.label[b] == 2 {
            let len = self.childs[b].len() as isize;
            let at = |j: isize| j.rem_euclid(len) as usize;
            let entrychild = self.inblossom[self.endpoint[self.labelend[b] ^ 1]];
            let mut j = self.childs[b]
                .iter()
                .position(|&c| c == entrychild)
                .unwrap() as isize;
            let (jstep, trick): (isize, usize) = if j & 1 == 1 {
                j -= len;
                (1, 0)
            } else {
                (-1, 1)
            };
            let mut p = self.labelend[b];
            while j != 0 {
                self.label[self.endpoint[p ^ 1]] = 0;
                let q = self.endps[b][at(j - trick as isize)];
                self.label[self.endpoint[q ^ trick ^ 1]] = 0;
                self.assign_label(self.endpoint[p ^ 1], 2, p);
                self.allowed[q / 2] = true;
                j += jstep;
                p = self.endps[b][at(j - trick as isize)] ^ trick;
                self.allowed[p / 2] = true;
                j += jstep;
            }
            let bv = self.childs[b][at(j)];
            let e = self.endpoint[p ^ 1];
            self.label[e] = 2;
            self.label[bv] = 2;
            self.labelend[e] = p;
            self.labelend[bv] = p;
            self.bestedge[bv] = NONE;
            j += jstep;
            while self.childs[b][at(j)] != entrychild {
                let bv = self.childs[b][at(j)];
                if self.label[bv] == 1 {
                    j += jstep;
                    continue;
                }
                if let Some(v) = self.leaves(bv).into_iter().find(|&v| self.label[v] != 0) {
                    debug_assert_eq!(self.label[v], 2);
                    self.label[v] = 0;
                    let m = self.mate[self.base[bv]];
                    self.label[self.endpoint[m]] = 0;
                    self.assign_label(v, 2, self.labelend[v]);
                }
                j += jstep;
            }
        }
        self.label[b] = u8::MAX;
        self.labelend[b] = NONE;
        self.childs[b].clear();
        self.endps[b].clear();
        self.base[b] = NONE;
        self.bestedges[b] = None;
        self.bestedge[b] = NONE;
        self.unused.push(b);
    }

    /// Swap matched and unmatched edges along the path inside blossom `b` from
    /// its base to vertex `v`, making `v` the new base.
    fn augment_blossom(&mut self, b: usize, v: usize) {
        let mut t = v;
        while self.parent[t] != b {
            t = self.parent[t];
        }
        if t >= self.nv {
            self.augment_blossom(t, v);
        }
        let len = self.childs[b].len() as isize;
        let at = |j: isize| j.rem_euclid(len) as usize;
        let i = self.childs[b].iter().position(|&c| c == t).unwrap();
        let mut j = i as isize;
        let (jstep, trick): (isize, usize) = if i & 1 == 1 {
            j -= len;
            (1, 0)
        } else {
            (-1, 1)
        };
        while j != 0 {
            j += jstep;
            let t = self.childs[b][at(j)];
            let p = self.endps[b][at(j - trick as isize)] ^ trick;
            if t >= self.nv {
                self.augment_blossom(t, self.endpoint[p]);
            }
            j += jstep;
            let t = self.childs[b][at(j)];
            if t >= self.nv {
                self.augment_blossom(t, self.endpoint[p ^ 1]);
            }
            self.mate[self.endpoint[p]] = p ^ 1;
            self.mate[self.endpoint[p ^ 1]] = p;
        }
        self.childs[b].rotate_left(i);
        self.endps[b].rotate_left(i);
        self.base[b] = self.base[self.childs[b][0]];
        debug_assert_eq!(self.base[b], v);
    }

    fn augment_matching(&mut self, k: usize) {
        let (v, w, _) = self.edges[k];
        for (mut s, mut p) in [(v, 2 * k + 1), (w, 2 * k)] {
            loop {
                let bs = self.inblossom[s];
                if bs >= self.nv {
                    self.augment_blossom(bs, s);
                }
                self.mate[s] = p;
                if self.labelend[bs] == NONE {
                    break;
                }
                let t = self.endpoint[self.labelend[bs]];
                let bt = self.inblossom[t];
                s = self.endpoint[self.labelend[bt]];
                let j = self.endpoint[self.labelend[bt] ^ 1];
                if bt >= self.nv {
                    self.augment_blossom(bt, j);
                }
                self.mate[j] = self.labelend[bt];
                p = self.labelend[bt] ^ 1;
            }
        }
    }

    fn solve(mut self) -> Vec<Option<usize>> {
        let nv = self.nv;
        for _ in 0..nv {
            self.label.iter_mut().for_each(|l| *l = 0);
            self.bestedge.iter_mut().for_each(|e| *e = NONE);
            for b in nv..2 * nv {
                self.bestedges[b] = None;
            }
            self.allowed.iter_mut().for_each(|a| *a = false);
            self.queue.clear();
            for v in 0..nv {
                if self.mate[v] == NONE && self.label[self.inblossom[v]] == 0 {
                    self.assign_label(v, 1, NONE);
                }
            }
            let mut augmented = false;
            loop {
                while !augmented {
                    let Some(v) = self.queue.pop() else { break };
                    for p in self.neighbend[v].clone() {
                        let k = p / 2;
                        let w = self.endpoint[p];
                        if self.inblossom[v] == self.inblossom[w] {
                            continue;
                        }
                        let mut kslack = 0;
                        if !self.allowed[k] {
                            kslack = self.slack(k);
                            if kslack <= 0 {
                                self.allowed[k] = true;
                            }
                        }
                        if self.allowed[k] {
                            if self.label[self.inblossom[w]] == 0 {
                                self.assign_label(w, 2, p ^ 1);
                            } else if self.label[self.inblossom[w]] == 1 {
                                let base = self.scan_blossom(v, w);
                                if base != NONE {
                                    self.add_blossom(base, k);
                                } else {
                                    self.augment_matching(k);
                                    augmented = true;
                                    break;
                                }
                            } else if self.label[w] == 0 {
                                self.label[w] = 2;
                                self.labelend[w] = p ^ 1;
                            }
                        } else if self.label[self.inblossom[w]] == 1 {
                            let b = self.inblossom[v];
                            if self.bestedge[b] == NONE || kslack < self.slack(self.bestedge[b]) {
                                self.bestedge[b] = k;
                            }
                        } else if self.label[w] == 0
                            && (self.bestedge[w] == NONE || kslack < self.slack(self.bestedge[w]))
                        {
                            self.bestedge[w] = k;
                        }
                    }
                }
                if augmented {
                    break;
                }

                // No augmenting path with the current duals: adjust them.
                let mut deltatype = 1;
                let mut delta = self.dual[..nv].iter().copied().min().unwrap_or(0);
                let mut deltaedge = NONE;
                let mut deltablossom = NONE;
                for v in 0..nv {
                    if self.label[self.inblossom[v]] == 0 && self.bestedge[v] != NONE {
                        let d = self.slack(self.bestedge[v]);
                        if d < delta {
                            delta = d;
                            deltatype = 2;
                            deltaedge = self.bestedge[v];
                        }
                    }
                }
                for b in 0..2 * nv {
                    if self.parent[b] == NONE && self.label[b] == 1 && self.bestedge[b] != NONE {
                        let kslack = self.slack(self.bestedge[b]);
                        debug_assert_eq!(kslack % 2, 0);
                        let d = kslack / 2;
                        if d < delta {
                            delta = d;
                            deltatype = 3;
                            deltaedge = self.bestedge[b];
                        }
                    }
                }
                for b in nv..2 * nv {
                    if self.base[b] != NONE
                        && self.parent[b] == NONE
                        && self.label[b] == 2
                        && self.dual[b] < delta
                    {
                        delta = self.dual[b];
                        deltatype = 4;
                        deltablossom = b;
                    }
                }
                for v in 0..nv {
                    match self.label[self.inblossom[v]] {
                        1 => self.dual[v] -= delta,
                        2 => self.dual[v] += delta,
                        _ => {}
                    }
                }
                for b in nv..2 * nv {
                    if self.base[b] != NONE && self.parent[b] == NONE {
                        match self.label[b] {
                            1 => self.dual[b] += delta,
                            2 => self.dual[b] -= delta,
                            _ => {}
                        }
                    }
                }
                match deltatype {
                    1 => break,
                    2 => {
                        self.allowed[deltaedge] = true;
                        let (mut i, j, _) = self.edges[deltaedge];
                        if self.label[self.inblossom[i]] == 0 {
                            i = j;
                        }
                        self.queue.push(i);
                    }
                    3 => {
                        self.allowed[deltaedge] = true;
                        let (i, _, _) = self.edges[deltaedge];
                        self.queue.push(i);
                    }
                    _ => self.expand_blossom(deltablossom, false),
                }
            }
            if !augmented {
                break;
            }
            for b in nv..2 * nv {
                if self.parent[b] == NONE
                    && self.base[b] != NONE
                    && self.label[b] == 1
                    && self.dual[b] == 0
                {
                    self.expand_blossom(b, true);
                }
            }
        }
        self.mate
            .iter()
            .map(|&m| (m != NONE).then(|| self.endpoint[m]))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn agrees_with_exhaustive_search(
            n in 0usize..9,
            raw in proptest::collection::vec((0usize..9, 0usize..9, 0u64..20), 0..30),
        ) {
            let mut g = AuxGraph::new(n);
            for (u, v, w) in raw {
                if u < n && v < n && u != v && g.weight(u, v).is_none() {
                    g.add_edge(u, v, w).unwrap();
                }
            }
            let fast = max_weight_matching(&g);
            prop_assert_eq!(g.matching_weight(&fast.pairs), Some(fast.weight));
            prop_assert_eq!(fast.weight, brute_force_matching(&g).weight);

            let mut scaled = AuxGraph::new(n + 1);
            for &(u, v, w) in g.edges() {
                scaled.add_edge(u, v, 3 * w).unwrap();
            }
            prop_assert_eq!(max_weight_matching(&scaled).weight, 3 * fast.weight);
        }
    }

    fn graph(n: usize, edges: &[(usize, usize, u64)]) -> AuxGraph<u64> {
        let mut g = AuxGraph::new(n);
        for &(u, v, w) in edges {
            g.add_edge(u, v, w).unwrap();
        }
        g
    }

    fn mate_of(m: &Matching<u64>, n: usize) -> Vec<Option<usize>> {
        let mut mate = vec![None; n];
        for &(u, v) in &m.pairs {
            mate[u] = Some(v);
            mate[v] = Some(u);
        }
        mate
    }

    #[test]
    fn empty_and_single_edge() {
        let m = max_weight_matching(&AuxGraph::<u64>::new(0));
        assert_eq!((m.pairs.len(), m.weight), (0, 0));
        let m = max_weight_matching(&graph(2, &[(0, 1, 1)]));
        assert_eq!(m.pairs, vec![(0, 1)]);
    }

    #[test]
    fn path_prefers_heavy_middle() {
        let m = max_weight_matching(&graph(4, &[(0, 1, 1), (1, 2, 5), (2, 3, 1)]));
        assert_eq!((m.pairs, m.weight), (vec![(1, 2)], 5));
    }

    #[test]
    fn weight_over_cardinality() {
        let m = max_weight_matching(&graph(4, &[(0, 1, 2), (1, 2, 3), (2, 3, 2)]));
        assert_eq!(m.weight, 4);
        let m = max_weight_matching(&graph(4, &[(0, 1, 1), (1, 2, 3), (2, 3, 1)]));
        assert_eq!(m.weight, 3);
    }

    // Classic hand-made cases exercising blossom creation, relabelling and
    // expansion; vertices are shifted down by one from their usual 1-based
    // presentation.
    #[test]
    fn s_blossom() {
        let g = graph(5, &[(0, 1, 8), (0, 2, 9), (1, 2, 10), (2, 3, 7)]);
        assert_eq!(
            mate_of(&max_weight_matching(&g), 5),
            vec![Some(1), Some(0), Some(3), Some(2), None]
        );
        let g = graph(
            7,
            &[
                (0, 1, 8),
                (0, 2, 9),
                (1, 2, 10),
                (2, 3, 7),
                (0, 5, 5),
                (3, 4, 6),
            ],
        );
        assert_eq!(
            mate_of(&max_weight_matching(&g), 7),
            vec![Some(5), Some(2), Some(1), Some(4), Some(3), Some(0), None]
        );
    }

    #[test]
    fn t_blossom_relabel() {
        let g = graph(
            7,
            &[
                (0, 1, 9),
                (0, 2, 8),
                (1, 2, 10),
                (0, 3, 5),
                (3, 4, 4),
                (0, 5, 3),
            ],
        );
        assert_eq!(
            mate_of(&max_weight_matching(&g), 7),
            vec![Some(5), Some(2), Some(1), Some(4), Some(3), Some(0), None]
        );
    }

    #[test]
    fn nested_s_blossom_and_expand() {
        let g = graph(
            6,
            &[
                (0, 1, 9),
                (0, 2, 9),
                (1, 2, 10),
                (1, 3, 8),
                (2, 4, 8),
                (3, 4, 10),
                (4, 5, 6),
            ],
        );
        assert_eq!(
            mate_of(&max_weight_matching(&g), 6),
            vec![Some(2), Some(3), Some(0), Some(1), Some(5), Some(4)]
        );
    }

    #[test]
    fn nested_blossom_relabel_expand() {
        let g = graph(
            8,
            &[
                (0, 1, 23),
                (0, 4, 22),
                (0, 5, 15),
                (1, 2, 25),
                (2, 3, 22),
                (3, 4, 25),
                (3, 7, 14),
                (4, 6, 13),
            ],
        );
        assert_eq!(
            mate_of(&max_weight_matching(&g), 8),
            vec![
                Some(5),
                Some(2),
                Some(1),
                Some(7),
                Some(6),
                Some(0),
                Some(4),
                Some(3)
            ]
        );
    }

    #[test]
    fn s_blossom_relabel_expand() {
        let g = graph(
            10,
            &[
                (0, 1, 45),
                (0, 4, 45),
                (1, 2, 50),
                (2, 3, 45),
                (3, 4, 50),
                (0, 5, 30),
                (2, 8, 35),
                (3, 7, 35),
                (4, 6, 26),
                (8, 9, 5),
            ],
        );
        assert_eq!(
            mate_of(&max_weight_matching(&g), 10),
            vec![
                Some(5),
                Some(2),
                Some(1),
                Some(7),
                Some(6),
                Some(0),
                Some(4),
                Some(3),
                Some(9),
                Some(8)
            ]
        );
    }

    #[test]
    fn expand_nested_t_blossom() {
        let g = graph(
            10,
            &[
                (0, 1, 40),
                (0, 2, 40),
                (1, 2, 60),
                (1, 3, 55),
                (2, 4, 55),
                (3, 4, 50),
                (0, 7, 15),
                (4, 6, 30),
                (6, 5, 10),
                (7, 9, 10),
                (3, 8, 30),
            ],
        );
        assert_eq!(
            mate_of(&max_weight_matching(&g), 10),
            vec![
                Some(1),
                Some(0),
                Some(4),
                Some(8),
                Some(2),
                Some(6),
                Some(5),
                Some(9),
                Some(3),
                Some(7)
            ]
        );
    }

    #[test]
    fn brute_force_small() {
        let g = graph(4, &[(0, 1, 1), (1, 2, 5), (2, 3, 1)]);
        assert_eq!(brute_force_matching(&g).weight, 5);
        assert_eq!(brute_force_matching(&AuxGraph::<u64>::new(3)).weight, 0);
    }
}
