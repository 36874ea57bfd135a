//! Vertex-weighted simple graphs and the structural probes the solvers need.

mod biclique;
mod claw;
mod generate;
pub(crate) mod io;

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::num::Weight;

pub use biclique::contains_biclique_subgraph;
pub use claw::{find_induced_sttt, find_induced_subdivided_claw, SubdividedClawWitness};
pub use generate::{
    generate_random_instance, generate_subdivided_claw, line_graph, random_base_graph, InstanceSpec,
};
pub(crate) use io::parse_id;
pub use io::{read_graph, write_graph};

/// Undirected simple graph on dense ids `0..n` with a weight and a label per
/// vertex.
///
/// Labels identify a vertex across induced subgraphs: a freshly built graph
/// labels vertex `i` with `i`, and `induced_subgraph` copies labels over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGraph<W> {
    adj: Vec<Vec<usize>>,
    weights: Vec<W>,
    labels: Vec<usize>,
}

impl<W: Weight> WeightedGraph<W> {
    /// Edgeless graph with the given weights.
    pub fn new(weights: Vec<W>) -> Self {
        let n = weights.len();
        WeightedGraph {
            adj: vec![Vec::new(); n],
            weights,
            labels: (0..n).collect(),
        }
    }

    pub fn empty() -> Self {
        Self::new(Vec::new())
    }

    pub fn unit(n: usize) -> Self {
        Self::new(vec![W::one(); n])
    }

    pub fn from_edges<I>(weights: Vec<W>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::new(weights);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Replace the labels; they must be pairwise distinct.
    pub fn with_labels(mut self, labels: Vec<usize>) -> Result<Self> {
        if labels.len() != self.len() {
            return Err(Error::Input(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.len()
            )));
        }
        let mut seen = HashSet::with_capacity(labels.len());
        if let Some(dup) = labels.iter().find(|l| !seen.insert(**l)) {
            return Err(Error::Input(format!("duplicate label {dup}")));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.len();
        if u >= n || v >= n {
            return Err(Error::Input(format!(
                "edge {u}-{v} out of range for {n} vertices"
            )));
        }
        if u == v {
            return Err(Error::Input(format!("self-loop at {u}")));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Err(Error::Input(format!("duplicate edge {u}-{v}"))),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                Ok(())
            }
        }
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        match self.adj.get(u).map(|a| a.binary_search(&v)) {
            Some(Ok(pos)) => {
                self.adj[u].remove(pos);
                let pos = self.adj[v].binary_search(&u).expect("asymmetric adjacency");
                self.adj[v].remove(pos);
                true
            }
            _ => false,
        }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(u).is_some_and(|a| a.binary_search(&v).is_ok())
    }

    /// Sorted neighbour list.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn weight(&self, v: usize) -> W {
        self.weights[v]
    }

    pub fn weights(&self) -> &[W] {
        &self.weights
    }

    pub fn set_weight(&mut self, v: usize, w: W) {
        self.weights[v] = w;
    }

    pub fn label(&self, v: usize) -> usize {
        self.labels[v]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Map from label to vertex id.
    pub fn label_index(&self) -> HashMap<usize, usize> {
        self.labels
            .iter()
            .enumerate()
            .map(|(i, &l)| (l, i))
            .collect()
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, a)| a.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
            .collect()
    }

    pub fn weight_of(&self, set: &[usize]) -> W {
        set.iter().map(|&v| self.weights[v]).sum()
    }

    pub fn total_weight(&self) -> W {
        self.weights.iter().copied().sum()
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        let mut mark = vec![false; self.len()];
        for &v in set {
            mark[v] = true;
        }
        set.iter().all(|&v| self.adj[v].iter().all(|&u| !mark[u]))
    }

    /// `N[S]`, sorted.
    pub fn closed_neighborhood(&self, set: &[usize]) -> Vec<usize> {
        let mut mark = vec![false; self.len()];
        for &v in set {
            mark[v] = true;
            for &u in &self.adj[v] {
                mark[u] = true;
            }
        }
        indices(&mark)
    }

    /// `N(S) = N[S] \ S`, sorted.
    pub fn open_neighborhood(&self, set: &[usize]) -> Vec<usize> {
        let mut mark = vec![false; self.len()];
        for &v in set {
            for &u in &self.adj[v] {
                mark[u] = true;
            }
        }
        for &v in set {
            mark[v] = false;
        }
        indices(&mark)
    }

    /// Connected components of the subgraph induced by `allowed`, each sorted,
    /// ordered by smallest vertex.
    pub fn components_within(&self, allowed: &[bool]) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for s in 0..n {
            if !allowed[s] || seen[s] {
                continue;
            }
            seen[s] = true;
            stack.push(s);
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &u in &self.adj[v] {
                    if allowed[u] && !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_within(&vec![true; self.len()])
    }

    /// `G[S]`. Vertex `i` of the result is the `i`-th smallest element of `S`;
    /// weights and labels are inherited.
    pub fn induced_subgraph(&self, set: &[usize]) -> Result<Self> {
        let mut vs = set.to_vec();
        vs.sort_unstable();
        vs.dedup();
        let n = self.len();
        if let Some(&bad) = vs.iter().find(|&&v| v >= n) {
            return Err(Error::Input(format!(
                "vertex {bad} not in graph of {n} vertices"
            )));
        }
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in vs.iter().enumerate() {
            pos[v] = i;
        }
        let adj = vs
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter(|&&u| pos[u] != usize::MAX)
                    .map(|&u| pos[u])
                    .collect()
            })
            .collect();
        Ok(WeightedGraph {
            adj,
            weights: vs.iter().map(|&v| self.weights[v]).collect(),
            labels: vs.iter().map(|&v| self.labels[v]).collect(),
        })
    }

    /// `G - S`.
    pub fn without(&self, removed: &[usize]) -> Result<Self> {
        let mut keep = vec![true; self.len()];
        for &v in removed {
            if v >= self.len() {
                return Err(Error::Input(format!("vertex {v} not in graph")));
            }
            keep[v] = false;
        }
        self.induced_subgraph(&indices(&keep))
    }

    /// Relabel weights with a different scalar type.
    pub fn map_weights<V: Weight>(&self, f: impl Fn(W) -> V) -> WeightedGraph<V> {
        WeightedGraph {
            adj: self.adj.clone(),
            weights: self.weights.iter().map(|&w| f(w)).collect(),
            labels: self.labels.clone(),
        }
    }

    /// Disjoint union; vertices of `other` are shifted by `self.len()` and
    /// relabelled to stay unique.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let shift = self.len();
        let label_shift = self.labels.iter().max().map_or(0, |m| m + 1);
        let mut adj = self.adj.clone();
        adj.extend(
            other
                .adj
                .iter()
                .map(|a| a.iter().map(|&u| u + shift).collect()),
        );
        let mut weights = self.weights.clone();
        weights.extend_from_slice(&other.weights);
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().map(|&l| l + label_shift));
        WeightedGraph {
            adj,
            weights,
            labels,
        }
    }

    /// Adjacency as bitmasks; only for graphs with at most 128 vertices.
    pub fn adjacency_masks(&self) -> Option<Vec<u128>> {
        if self.len() > 128 {
            return None;
        }
        Some(
            self.adj
                .iter()
                .map(|a| a.iter().fold(0u128, |m, &u| m | (1u128 << u)))
                .collect(),
        )
    }
}

/// Positions of `true` entries.
pub(crate) fn indices(mask: &[bool]) -> Vec<usize> {
    mask.iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| i)
        .collect()
}

/// Membership mask of a vertex list.
pub(crate) fn mask_of(n: usize, set: &[usize]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &v in set {
        m[v] = true;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> WeightedGraph<u64> {
        WeightedGraph::from_edges(vec![1, 2, 3], [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn induced_subgraph_restricts_edges_and_keeps_attributes() {
        let g = triangle();
        let h = g.induced_subgraph(&[0, 1]).unwrap();
        assert_eq!(h.len(), 2);
        assert_eq!(h.edges(), vec![(0, 1)]);
        assert_eq!(h.weights(), &[1, 2]);
        assert_eq!(h.labels(), &[0, 1]);

        let sub = g.induced_subgraph(&[2, 0]).unwrap();
        assert_eq!(sub.labels(), &[0, 2]);
        assert_eq!(sub.weights(), &[1, 3]);
    }

    #[test]
    fn induced_subgraph_identity_and_empty() {
        let g = triangle();
        assert_eq!(g.induced_subgraph(&[0, 1, 2]).unwrap(), g);
        let e = g.induced_subgraph(&[]).unwrap();
        assert!(e.is_empty());
        assert_eq!(e.edge_count(), 0);
    }

    #[test]
    fn induced_subgraph_rejects_unknown_vertex() {
        assert!(matches!(
            triangle().induced_subgraph(&[0, 7]),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn labels_survive_nested_subgraphs() {
        let g: WeightedGraph<u64> =
            WeightedGraph::from_edges(vec![1; 5], [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let h = g.induced_subgraph(&[1, 2, 4]).unwrap();
        let k = h.induced_subgraph(&[1, 2]).unwrap();
        assert_eq!(k.labels(), &[2, 4]);
        assert_eq!(k.edge_count(), 0);
    }

    #[test]
    fn add_edge_rejects_loops_and_duplicates() {
        let mut g = WeightedGraph::<u64>::unit(3);
        assert!(g.add_edge(0, 0).is_err());
        g.add_edge(0, 1).unwrap();
        assert!(g.add_edge(1, 0).is_err());
        assert!(g.add_edge(0, 3).is_err());
        assert!(g.remove_edge(1, 0));
        assert!(!g.has_edge(0, 1));
    }

    #[test]
    fn neighborhoods() {
        let g: WeightedGraph<u64> =
            WeightedGraph::from_edges(vec![1; 5], [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(g.closed_neighborhood(&[2]), vec![1, 2, 3]);
        assert_eq!(g.open_neighborhood(&[1, 2]), vec![0, 3]);
        assert!(g.is_independent(&[0, 2, 4]));
        assert!(!g.is_independent(&[0, 1]));
        let allowed = mask_of(5, &[0, 1, 3, 4]);
        assert_eq!(g.components_within(&allowed), vec![vec![0, 1], vec![3, 4]]);
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert!(WeightedGraph::<u64>::unit(2)
            .with_labels(vec![4, 4])
            .is_err());
    }
}
