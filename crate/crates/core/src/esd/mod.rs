//! Extended strip decompositions `(H, η)` and their particles.
//!
//! All vertex sets refer to positional ids of the decomposed graph and are kept
//! sorted. Pattern edges are stored with their smaller endpoint first; triangle
//! sets are stored sparsely and default to empty.

mod generate;
mod io;
mod validate;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::num::Weight;

pub use generate::{random_esd_instance, EsdInstance};
pub use io::{parse_esd, read_esd, write_esd};
pub use validate::{validate_esd, EsdReport, EsdViolation};

/// The pattern graph `H`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Pattern {
    adj: Vec<Vec<usize>>,
}

impl Pattern {
    pub fn new(n: usize) -> Self {
        Pattern {
            adj: vec![Vec::new(); n],
        }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn neighbors(&self, x: usize) -> &[usize] {
        &self.adj[x]
    }

    pub fn degree(&self, x: usize) -> usize {
        self.adj[x].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        x < self.len() && self.adj[x].binary_search(&y).is_ok()
    }

    /// Edges `(x, y)` with `x < y`, lexicographic.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (x, nb) in self.adj.iter().enumerate() {
            out.extend(nb.iter().filter(|&&y| y > x).map(|&y| (x, y)));
        }
        out
    }

    /// Triangles `(x, y, z)` with `x < y < z`, lexicographic.
    pub fn triangles(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (x, y) in self.edges() {
            for &z in &self.adj[y] {
                if z > y && self.has_edge(x, z) {
                    out.push((x, y, z));
                }
            }
        }
        out
    }

    /// Third vertices `z` of the triangles on edge `xy`.
    pub fn triangles_on(&self, x: usize, y: usize) -> Vec<usize> {
        self.adj[x]
            .iter()
            .copied()
            .filter(|&z| z != y && self.has_edge(y, z))
            .collect()
    }

    fn add_edge(&mut self, x: usize, y: usize) -> Result<()> {
        let n = self.len();
        if x >= n || y >= n {
            return Err(Error::Input(format!(
                "pattern edge ({x}, {y}) out of range for {n} vertices"
            )));
        }
        if x == y {
            return Err(Error::Input(format!("pattern loop at {x}")));
        }
        match self.adj[x].binary_search(&y) {
            Ok(_) => Err(Error::Input(format!("duplicate pattern edge ({x}, {y})"))),
            Err(i) => {
                self.adj[x].insert(i, y);
                let j = self.adj[y].binary_search(&x).unwrap_err();
                self.adj[y].insert(j, x);
                Ok(())
            }
        }
    }
}

/// `η(xy)` together with its two end subsets, for `x < y`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgeSets {
    pub set: Vec<usize>,
    pub at_lo: Vec<usize>,
    pub at_hi: Vec<usize>,
}

/// Which piece of `H` a vertex of `G` is assigned to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Owner {
    Vertex(usize),
    Edge(usize, usize),
    Triangle(usize, usize, usize),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExtendedStripDecomposition {
    pattern: Pattern,
    vertex_sets: Vec<Vec<usize>>,
    edge_sets: BTreeMap<(usize, usize), EdgeSets>,
    triangle_sets: BTreeMap<(usize, usize, usize), Vec<usize>>,
}

fn norm(set: &[usize]) -> Vec<usize> {
    let mut v = set.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|v| big.binary_search(v).is_ok())
}

fn sort3(x: usize, y: usize, z: usize) -> (usize, usize, usize) {
    let mut a = [x, y, z];
    a.sort_unstable();
    (a[0], a[1], a[2])
}

impl ExtendedStripDecomposition {
    /// Pattern with `h` isolated vertices and every set empty.
    pub fn new(h: usize) -> Self {
        ExtendedStripDecomposition {
            pattern: Pattern::new(h),
            vertex_sets: vec![Vec::new(); h],
            ..Default::default()
        }
    }

    /// One isolated pattern vertex holding all of `V(G)`; the empty pattern
    /// when `n = 0`.
    pub fn trivial(n: usize) -> Self {
        if n == 0 {
            return Self::new(0);
        }
        let mut d = Self::new(1);
        d.vertex_sets[0] = (0..n).collect();
        d
    }

    /// One isolated pattern vertex per set. Valid when every set is a union of
    /// components.
    pub fn from_parts(parts: &[Vec<usize>]) -> Self {
        let mut d = Self::new(parts.len());
        for (x, p) in parts.iter().enumerate() {
            d.vertex_sets[x] = norm(p);
        }
        d
    }

    /// One pattern vertex per component of `g`.
    pub fn components<W: Weight>(g: &WeightedGraph<W>) -> Self {
        Self::from_parts(&g.components())
    }

    /// The canonical decomposition of a line graph: `H` is the base graph and
    /// line-graph vertex `i` (the `i`-th base edge in lexicographic order) sits
    /// in `η(xy) = η(xy,x) = η(xy,y)`.
    pub fn line_graph<W: Weight>(base: &WeightedGraph<W>) -> Self {
        let mut d = Self::new(base.len());
        for (i, (x, y)) in base.edges().into_iter().enumerate() {
            d.pattern.add_edge(x, y).expect("base graph is simple");
            d.edge_sets.insert(
                (x, y),
                EdgeSets {
                    set: vec![i],
                    at_lo: vec![i],
                    at_hi: vec![i],
                },
            );
        }
        d
    }

    pub fn add_pattern_edge(&mut self, x: usize, y: usize) -> Result<()> {
        self.pattern.add_edge(x, y)?;
        self.edge_sets
            .insert((x.min(y), x.max(y)), EdgeSets::default());
        Ok(())
    }

    pub fn set_vertex(&mut self, x: usize, set: &[usize]) -> Result<()> {
        if x >= self.pattern.len() {
            return Err(Error::Input(format!("pattern vertex {x} out of range")));
        }
        self.vertex_sets[x] = norm(set);
        Ok(())
    }

    /// Set `η(xy)`, `η(xy,x)` and `η(xy,y)`; the end sets must lie in `set`.
    pub fn set_edge(
        &mut self,
        x: usize,
        y: usize,
        set: &[usize],
        at_x: &[usize],
        at_y: &[usize],
    ) -> Result<()> {
        if !self.pattern.has_edge(x, y) {
            return Err(Error::Input(format!("({x}, {y}) is not a pattern edge")));
        }
        let set = norm(set);
        let (at_x, at_y) = (norm(at_x), norm(at_y));
        if !is_subset(&at_x, &set) || !is_subset(&at_y, &set) {
            return Err(Error::Input(format!(
                "end sets of pattern edge ({x}, {y}) must lie inside its edge set"
            )));
        }
        let (at_lo, at_hi) = if x < y { (at_x, at_y) } else { (at_y, at_x) };
        self.edge_sets
            .insert((x.min(y), x.max(y)), EdgeSets { set, at_lo, at_hi });
        Ok(())
    }

    pub fn set_triangle(&mut self, x: usize, y: usize, z: usize, set: &[usize]) -> Result<()> {
        if !(self.pattern.has_edge(x, y)
            && self.pattern.has_edge(y, z)
            && self.pattern.has_edge(x, z))
        {
            return Err(Error::Input(format!(
                "({x}, {y}, {z}) is not a pattern triangle"
            )));
        }
        let key = sort3(x, y, z);
        let set = norm(set);
        if set.is_empty() {
            self.triangle_sets.remove(&key);
        } else {
            self.triangle_sets.insert(key, set);
        }
        Ok(())
    }

    pub fn pattern(&self) -> &Pattern {
        &self.pattern
    }

    /// `η(x)`.
    pub fn vertex_set(&self, x: usize) -> &[usize] {
        &self.vertex_sets[x]
    }

    /// `η(xy)`.
    pub fn edge_set(&self, x: usize, y: usize) -> &[usize] {
        &self.edge_entry(x, y).set
    }

    /// `η(xy, x)`: the end of edge `xy` at `x`.
    pub fn end_set(&self, x: usize, y: usize) -> &[usize] {
        let e = self.edge_entry(x, y);
        if x < y {
            &e.at_lo
        } else {
            &e.at_hi
        }
    }

    /// `η(xyz)`, empty when never set.
    pub fn triangle_set(&self, x: usize, y: usize, z: usize) -> &[usize] {
        self.triangle_sets
            .get(&sort3(x, y, z))
            .map_or(&[], Vec::as_slice)
    }

    fn edge_entry(&self, x: usize, y: usize) -> &EdgeSets {
        self.edge_sets
            .get(&(x.min(y), x.max(y)))
            .unwrap_or_else(|| panic!("({x}, {y}) is not a pattern edge"))
    }

    /// Every stored set with its owner, including empty ones.
    pub fn owners(&self) -> Vec<(Owner, &[usize])> {
        let mut out: Vec<(Owner, &[usize])> = Vec::new();
        for (x, s) in self.vertex_sets.iter().enumerate() {
            out.push((Owner::Vertex(x), s));
        }
        for (&(x, y), e) in &self.edge_sets {
            out.push((Owner::Edge(x, y), &e.set));
        }
        for (&(x, y, z), s) in &self.triangle_sets {
            out.push((Owner::Triangle(x, y, z), s));
        }
        out
    }

    /// Largest vertex id mentioned anywhere, if any.
    pub fn max_vertex(&self) -> Option<usize> {
        self.owners()
            .into_iter()
            .filter_map(|(_, s)| s.last().copied())
            .max()
    }

    /// The rigidity condition alone (validity is a separate question).
    pub fn is_rigid(&self) -> bool {
        let edges_ok = self
            .edge_sets
            .values()
            .all(|e| !e.set.is_empty() && !e.at_lo.is_empty() && !e.at_hi.is_empty());
        let isolated_ok = (0..self.pattern.len())
            .all(|x| self.pattern.degree(x) > 0 || !self.vertex_sets[x].is_empty());
        edges_ok && isolated_ok
    }

    /// Every particle of every type, empty ones included, in a fixed order:
    /// vertex particles, then per edge the interior, both halves and the full
    /// particle, then triangles.
    pub fn particles(&self) -> Vec<Particle> {
        let mut out = Vec::new();
        for x in 0..self.pattern.len() {
            out.push(Particle::new(
                ParticleKind::Vertex(x),
                self.members(ParticleKind::Vertex(x)),
            ));
        }
        for (x, y) in self.pattern.edges() {
            for kind in [
                ParticleKind::Interior(x, y),
                ParticleKind::Half(x, y),
                ParticleKind::Half(y, x),
                ParticleKind::Full(x, y),
            ] {
                out.push(Particle::new(kind, self.members(kind)));
            }
        }
        for (x, y, z) in self.pattern.triangles() {
            let kind = ParticleKind::Triangle(x, y, z);
            out.push(Particle::new(kind, self.members(kind)));
        }
        out
    }

    /// Members of one particle.
    pub fn members(&self, kind: ParticleKind) -> Vec<usize> {
        match kind {
            ParticleKind::Vertex(x) => self.vertex_sets[x].clone(),
            ParticleKind::Interior(x, y) => self
                .edge_set(x, y)
                .iter()
                .copied()
                .filter(|v| {
                    self.end_set(x, y).binary_search(v).is_err()
                        && self.end_set(y, x).binary_search(v).is_err()
                })
                .collect(),
            ParticleKind::Half(x, y) => {
                let far = self.end_set(y, x);
                let mut s: Vec<usize> = self.vertex_sets[x].clone();
                s.extend(
                    self.edge_set(x, y)
                        .iter()
                        .copied()
                        .filter(|v| far.binary_search(v).is_err()),
                );
                norm(&s)
            }
            ParticleKind::Full(x, y) => {
                let mut s: Vec<usize> = self.vertex_sets[x].clone();
                s.extend_from_slice(&self.vertex_sets[y]);
                s.extend_from_slice(self.edge_set(x, y));
                for z in self.pattern.triangles_on(x, y) {
                    s.extend_from_slice(self.triangle_set(x, y, z));
                }
                norm(&s)
            }
            ParticleKind::Triangle(x, y, z) => self.triangle_set(x, y, z).to_vec(),
        }
    }

    /// Intersect every set with `keep` and renumber into `G[keep]`, whose
    /// vertex `i` is the `i`-th smallest element of `keep`. The pattern is
    /// unchanged, so the result is usually not rigid. It is re-validated
    /// against `G[keep]`.
    pub fn restrict<W: Weight>(&self, g: &WeightedGraph<W>, keep: &[usize]) -> Result<Self> {
        let keep = norm(keep);
        let mut pos = vec![usize::MAX; g.len()];
        for (i, &v) in keep.iter().enumerate() {
            if v >= g.len() {
                return Err(Error::Input(format!("vertex {v} not in graph")));
            }
            pos[v] = i;
        }
        let map = |s: &[usize]| -> Vec<usize> {
            s.iter()
                .filter(|&&v| pos[v] != usize::MAX)
                .map(|&v| pos[v])
                .collect()
        };
        let restricted = ExtendedStripDecomposition {
            pattern: self.pattern.clone(),
            vertex_sets: self.vertex_sets.iter().map(|s| map(s)).collect(),
            edge_sets: self
                .edge_sets
                .iter()
                .map(|(&k, e)| {
                    (
                        k,
                        EdgeSets {
                            set: map(&e.set),
                            at_lo: map(&e.at_lo),
                            at_hi: map(&e.at_hi),
                        },
                    )
                })
                .collect(),
            triangle_sets: self
                .triangle_sets
                .iter()
                .map(|(&k, s)| (k, map(s)))
                .filter(|(_, s)| !s.is_empty())
                .collect(),
        };
        let sub = g.induced_subgraph(&keep)?;
        let report = validate_esd(&sub, &restricted, false);
        if let Some(v) = report.violations.first() {
            return Err(Error::Contract(format!(
                "restricted decomposition is invalid: {v}"
            )));
        }
        Ok(restricted)
    }

    /// Maximum number of particles sharing one vertex of a graph on `n`
    /// vertices (0 for the empty graph).
    pub fn occurrence_bound(&self, n: usize) -> usize {
        let mut count = vec![0usize; n];
        for p in self.particles() {
            for &v in &p.members {
                count[v] += 1;
            }
        }
        count.into_iter().max().unwrap_or(0)
    }

    /// `max(4, 2d + 1)` for the maximum pattern degree `d`.
    pub fn occurrence_limit(&self) -> usize {
        (2 * self.pattern.max_degree() + 1).max(4)
    }

    /// Whether the pattern's maximum degree is at most `t - 1`.
    pub fn check_pattern_degree(&self, t: usize) -> bool {
        self.pattern.max_degree() < t
    }
}

/// Free-function form of [`ExtendedStripDecomposition::restrict`].
pub fn restrict_esd<W: Weight>(
    g: &WeightedGraph<W>,
    d: &ExtendedStripDecomposition,
    keep: &[usize],
) -> Result<ExtendedStripDecomposition> {
    d.restrict(g, keep)
}

/// The anchor of a particle. `Half(x, y)` is the half-edge particle of edge
/// `xy` at end `x`; `Interior` and `Full` keep `x < y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ParticleKind {
    Vertex(usize),
    Interior(usize, usize),
    Half(usize, usize),
    Full(usize, usize),
    Triangle(usize, usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Particle {
    pub kind: ParticleKind,
    pub members: Vec<usize>,
}

impl Particle {
    fn new(kind: ParticleKind, members: Vec<usize>) -> Self {
        Particle { kind, members }
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_edge() -> (WeightedGraph<u64>, ExtendedStripDecomposition) {
        let g = WeightedGraph::from_edges(vec![2, 3], [(0, 1)]).unwrap();
        let mut d = ExtendedStripDecomposition::new(2);
        d.add_pattern_edge(0, 1).unwrap();
        d.set_edge(0, 1, &[0, 1], &[0], &[1]).unwrap();
        (g, d)
    }

    #[test]
    fn trivial_has_one_particle() {
        let d = ExtendedStripDecomposition::trivial(5);
        let ps = d.particles();
        assert_eq!(ps.len(), 1);
        assert_eq!(ps[0].members, vec![0, 1, 2, 3, 4]);
        assert_eq!(d.occurrence_bound(5), 1);
        assert!(d.check_pattern_degree(1));
    }

    #[test]
    fn single_edge_particles() {
        let (_, d) = single_edge();
        let get = |k| {
            d.particles()
                .into_iter()
                .find(|p| p.kind == k)
                .unwrap()
                .members
        };
        assert!(get(ParticleKind::Vertex(0)).is_empty());
        assert!(get(ParticleKind::Vertex(1)).is_empty());
        assert!(get(ParticleKind::Interior(0, 1)).is_empty());
        assert_eq!(get(ParticleKind::Half(0, 1)), vec![0]);
        assert_eq!(get(ParticleKind::Half(1, 0)), vec![1]);
        assert_eq!(get(ParticleKind::Full(0, 1)), vec![0, 1]);
        assert!(d.check_pattern_degree(3));
        assert!(d.is_rigid());
    }

    #[test]
    fn triangle_member_is_in_four_particles() {
        let mut d = ExtendedStripDecomposition::new(3);
        for (x, y) in [(0, 1), (1, 2), (0, 2)] {
            d.add_pattern_edge(x, y).unwrap();
        }
        d.set_triangle(2, 0, 1, &[0]).unwrap();
        let ps = d.particles();
        let holding: Vec<_> = ps
            .iter()
            .filter(|p| p.members.contains(&0))
            .map(|p| p.kind)
            .collect();
        assert_eq!(holding.len(), 4);
        assert!(holding.contains(&ParticleKind::Triangle(0, 1, 2)));
        assert_eq!(d.occurrence_bound(1), 4);
    }

    #[test]
    fn vertex_set_member_count_is_two_d_plus_one() {
        let mut d = ExtendedStripDecomposition::new(4);
        for y in 1..4 {
            d.add_pattern_edge(0, y).unwrap();
        }
        d.set_vertex(0, &[0]).unwrap();
        assert_eq!(d.occurrence_bound(1), 7);
        assert_eq!(d.occurrence_limit(), 7);
        assert!(!d.check_pattern_degree(3));
    }

    #[test]
    fn restrict_identity_and_shrink() {
        let (g, d) = single_edge();
        assert_eq!(d.restrict(&g, &[0, 1]).unwrap(), d);
        let r = d.restrict(&g, &[0]).unwrap();
        assert_eq!(r.edge_set(0, 1), &[0]);
        assert_eq!(r.end_set(0, 1), &[0]);
        assert!(r.end_set(1, 0).is_empty());
        assert!(!r.is_rigid());

        let t = ExtendedStripDecomposition::trivial(4);
        let path = WeightedGraph::<u64>::from_edges(vec![1; 4], [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(
            t.restrict(&path, &[1, 3]).unwrap(),
            ExtendedStripDecomposition::trivial(2)
        );
    }

    #[test]
    fn line_graph_decomposition_is_valid() {
        let base =
            WeightedGraph::<u64>::from_edges(vec![1; 4], [(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        let lg = crate::graph::line_graph(&base, &[1, 1, 1, 1]).unwrap();
        let d = ExtendedStripDecomposition::line_graph(&base);
        assert!(validate_esd(&lg, &d, true).is_ok());
    }
}
