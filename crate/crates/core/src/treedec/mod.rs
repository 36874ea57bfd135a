//! Tree decompositions: validation, torsos, the bounded-adhesion /
//! few-high-degree-vertices guarantee, a desk-scale builder and a k-block
//! finder.

mod build;
mod io;

pub use build::{build_weissauer, find_k_block, min_vertex_separator, TdBudget};
pub use io::{read_td, write_td};

use std::collections::BTreeSet;

use crate::graph::WeightedGraph;
use crate::num::Weight;

/// Bags hold positions of the decomposed graph, sorted. Nodes are
/// `0..bags.len()`; `edges` are the tree edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn single_bag(n: usize) -> Self {
        TreeDecomposition {
            bags: vec![(0..n).collect()],
            edges: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    pub fn neighbors(&self, node: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(s, t)| match (s == node, t == node) {
                (true, _) => Some(t),
                (_, true) => Some(s),
                _ => None,
            })
            .collect()
    }

    /// `σ(st) = β(s) ∩ β(t)`.
    pub fn adhesion(&self, s: usize, t: usize) -> Vec<usize> {
        let b: BTreeSet<_> = self.bags[t].iter().collect();
        self.bags[s]
            .iter()
            .filter(|v| b.contains(v))
            .copied()
            .collect()
    }

    /// Nodes on `s`'s side of the tree once edge `st` is deleted.
    pub fn side(&self, s: usize, t: usize) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        seen[s] = true;
        seen[t] = true;
        let mut stack = vec![s];
        let mut out = Vec::new();
        while let Some(x) = stack.pop() {
            out.push(x);
            for y in self.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// `V_s`: vertices in bags on `s`'s side, minus the adhesion.
    pub fn side_vertices(&self, s: usize, t: usize) -> Vec<usize> {
        let sigma: BTreeSet<usize> = self.adhesion(s, t).into_iter().collect();
        let set: BTreeSet<usize> = self
            .side(s, t)
            .iter()
            .flat_map(|&x| self.bags[x].iter().copied())
            .filter(|v| !sigma.contains(v))
            .collect();
        set.into_iter().collect()
    }
}

fn tree_problems(td: &TreeDecomposition) -> Vec<String> {
    let m = td.len();
    let mut problems = Vec::new();
    if m == 0 {
        problems.push("no nodes".to_string());
        return problems;
    }
    for &(s, t) in &td.edges {
        if s >= m || t >= m || s == t {
            problems.push(format!("bad tree edge {}-{}", s + 1, t + 1));
        }
    }
    if !problems.is_empty() {
        return problems;
    }
    if td.edges.len() != m - 1 {
        problems.push(format!("{} tree edges on {m} nodes", td.edges.len()));
    }
    let mut seen = vec![false; m];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        for y in td.neighbors(x) {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        problems.push("tree is disconnected".to_string());
    }
    problems
}

/// One message per violated condition; empty iff `td` is a tree
/// decomposition of `g` (including the separation property per tree edge).
pub fn validate_tree_decomposition<W: Weight>(
    g: &WeightedGraph<W>,
    td: &TreeDecomposition,
) -> Vec<String> {
    let mut problems = tree_problems(td);
    if !problems.is_empty() {
        return problems;
    }
    let n = g.len();
    for (i, bag) in td.bags.iter().enumerate() {
        if let Some(&v) = bag.iter().find(|&&v| v >= n) {
            problems.push(format!("bag {} holds unknown vertex {}", i + 1, v + 1));
        }
    }
    if !problems.is_empty() {
        return problems;
    }
    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            holders[v].push(i);
        }
    }
    for (u, v) in g.edges() {
        if !holders[u]
            .iter()
            .any(|b| td.bags[*b].binary_search(&v).is_ok())
        {
            problems.push(format!("edge {}-{} is in no bag", u + 1, v + 1));
        }
    }
    for (v, nodes) in holders.iter().enumerate() {
        if nodes.is_empty() {
            problems.push(format!("vertex {} is in no bag", v + 1));
            continue;
        }
        let mut inside = vec![false; td.len()];
        nodes.iter().for_each(|&x| inside[x] = true);
        let mut reached = vec![false; td.len()];
        reached[nodes[0]] = true;
        let mut stack = vec![nodes[0]];
        while let Some(x) = stack.pop() {
            for y in td.neighbors(x) {
                if inside[y] && !reached[y] {
                    reached[y] = true;
                    stack.push(y);
                }
            }
        }
        if nodes.iter().any(|&x| !reached[x]) {
            problems.push(format!("bags holding vertex {} are not connected", v + 1));
        }
    }
    if problems.is_empty() {
        for &(s, t) in &td.edges {
            let a = td.side_vertices(s, t);
            let b: BTreeSet<usize> = td.side_vertices(t, s).into_iter().collect();
            if let Some((u, v)) = a.iter().find_map(|&u| {
                g.neighbors(u)
                    .iter()
                    .find(|v| b.contains(v))
                    .map(|&v| (u, v))
            }) {
                problems.push(format!(
                    "adhesion of {}-{} does not separate {} from {}",
                    s + 1,
                    t + 1,
                    u + 1,
                    v + 1
                ));
            }
        }
    }
    problems
}

/// `G[β(node)]` plus a clique on every incident adhesion. Vertex `i` is the
/// `i`-th smallest vertex of the bag.
pub fn torso<W: Weight>(
    g: &WeightedGraph<W>,
    td: &TreeDecomposition,
    node: usize,
) -> WeightedGraph<W> {
    let bag = &td.bags[node];
    let mut out = g.induced_subgraph(bag).expect("bag vertices lie in g");
    for other in td.neighbors(node) {
        let sigma = td.adhesion(node, other);
        let pos: Vec<usize> = sigma
            .iter()
            .map(|v| bag.binary_search(v).expect("adhesion lies in bag"))
            .collect();
        for (i, &a) in pos.iter().enumerate() {
            for &b in &pos[i + 1..] {
                if !out.has_edge(a, b) {
                    out.add_edge(a, b).expect("fresh torso edge");
                }
            }
        }
    }
    out
}

/// Degree above which a torso vertex counts as high for parameter `k`.
pub fn high_degree_threshold(k: usize) -> usize {
    2 * k * k.saturating_sub(1)
}

/// Empty iff every adhesion has fewer than `k` vertices and every torso has
/// at most `k` vertices of degree above `2k(k-1)`.
pub fn check_weissauer<W: Weight>(
    g: &WeightedGraph<W>,
    td: &TreeDecomposition,
    k: usize,
) -> Vec<String> {
    let mut problems = Vec::new();
    for &(s, t) in &td.edges {
        let size = td.adhesion(s, t).len();
        if size >= k {
            problems.push(format!(
                "adhesion of {}-{} has {size} vertices, need fewer than {k}",
                s + 1,
                t + 1
            ));
        }
    }
    let limit = high_degree_threshold(k);
    for node in 0..td.len() {
        let tor = torso(g, td, node);
        let high = (0..tor.len()).filter(|&v| tor.degree(v) > limit).count();
        if high > k {
            problems.push(format!(
                "torso of node {} has {high} vertices of degree above {limit}, allowed {k}",
                node + 1
            ));
        }
    }
    problems
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> WeightedGraph<u64> {
        WeightedGraph::from_edges(vec![1; 3], [(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn single_bag_is_valid() {
        let g = path3();
        assert!(validate_tree_decomposition(&g, &TreeDecomposition::single_bag(3)).is_empty());
    }

    #[test]
    fn path_bags_and_connectivity() {
        let g = path3();
        let td = TreeDecomposition {
            bags: vec![vec![0, 1], vec![1, 2]],
            edges: vec![(0, 1)],
        };
        assert!(validate_tree_decomposition(&g, &td).is_empty());
        assert_eq!(td.adhesion(0, 1), vec![1]);

        let broken = TreeDecomposition {
            bags: vec![vec![0, 1], vec![2], vec![1]],
            edges: vec![(0, 1), (1, 2)],
        };
        let problems = validate_tree_decomposition(&g, &broken);
        assert!(
            problems
                .iter()
                .any(|p| p.contains("vertex 2 are not connected")),
            "{problems:?}"
        );
        assert!(
            problems.iter().any(|p| p.contains("edge 2-3")),
            "{problems:?}"
        );
    }

    #[test]
    fn torso_completes_adhesions() {
        let g = path3();
        let td = TreeDecomposition {
            bags: vec![vec![0, 1, 2], vec![0, 2]],
            edges: vec![(0, 1)],
        };
        let tor = torso(&g, &td, 0);
        assert!(tor.has_edge(0, 2));
        let leaf = TreeDecomposition {
            bags: vec![vec![0, 1], vec![1, 2]],
            edges: vec![(0, 1)],
        };
        assert_eq!(torso(&g, &leaf, 0).edges(), vec![(0, 1)]);
    }

    #[test]
    fn weissauer_checks() {
        let g = path3();
        assert!(check_weissauer(&g, &TreeDecomposition::single_bag(3), 2).is_empty());
        let td = TreeDecomposition {
            bags: vec![vec![0, 1], vec![1, 2]],
            edges: vec![(0, 1)],
        };
        let problems = check_weissauer(&WeightedGraph::<u64>::unit(3), &td, 1);
        assert_eq!(problems.len(), 1);
        assert!(problems[0].contains("adhesion"));

        // k = 1: threshold 0, so every vertex with an edge is high.
        let star = WeightedGraph::<u64>::from_edges(vec![1; 3], [(0, 1), (0, 2)]).unwrap();
        assert_eq!(
            check_weissauer(&star, &TreeDecomposition::single_bag(3), 1).len(),
            1
        );
    }
}
