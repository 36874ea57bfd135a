use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{contains_biclique_subgraph, find_induced_sttt, WeightedGraph};
use crate::error::{Error, Result};
use crate::num::Weight;

/// `S_{a,b,c}` with unit weights: vertex 0 is the center, legs follow in order.
pub fn generate_subdivided_claw<W: Weight>(
    a: usize,
    b: usize,
    c: usize,
) -> Result<WeightedGraph<W>> {
    if a == 0 || b == 0 || c == 0 {
        return Err(Error::Input(
            "subdivided claw legs must have length >= 1".into(),
        ));
    }
    let mut g = WeightedGraph::unit(a + b + c + 1);
    let mut next = 1;
    for len in [a, b, c] {
        let mut prev = 0;
        for _ in 0..len {
            g.add_edge(prev, next)?;
            prev = next;
            next += 1;
        }
    }
    Ok(g)
}

/// Line graph `L(G)`: one vertex per edge of `g` (in `g.edges()` order),
/// adjacent when the edges share an endpoint. Vertex `i` gets `edge_weights[i]`.
pub fn line_graph<W: Weight>(g: &WeightedGraph<W>, edge_weights: &[W]) -> Result<WeightedGraph<W>> {
    let edges = g.edges();
    if edges.len() != edge_weights.len() {
        return Err(Error::Input(format!(
            "{} edge weights for {} edges",
            edge_weights.len(),
            edges.len()
        )));
    }
    let mut incident = vec![Vec::new(); g.len()];
    for (i, &(u, v)) in edges.iter().enumerate() {
        incident[u].push(i);
        incident[v].push(i);
    }
    let mut l = WeightedGraph::new(edge_weights.to_vec());
    for inc in &incident {
        for (a, &e) in inc.iter().enumerate() {
            for &f in &inc[a + 1..] {
                // two simple edges share at most one endpoint
                l.add_edge(e, f)?;
            }
        }
    }
    Ok(l)
}

/// Random simple graph with `m` edges on roughly `2m/3` vertices, unit vertex
/// weights, and edge weights in `[1, 100]`.
pub fn random_base_graph<W: Weight>(m: usize, seed: u64) -> Result<(WeightedGraph<W>, Vec<W>)> {
    let n = (2 * m) / 3 + 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    pairs.shuffle(&mut rng);
    let mut g = WeightedGraph::unit(n);
    for &(u, v) in pairs.iter().take(m) {
        g.add_edge(u, v)?;
    }
    let weights = (0..m)
        .map(|_| weight_from(rng.gen_range(1..=100u64)))
        .collect();
    Ok((g, weights))
}

/// Parameters for random bounded-degree `S_{t,t,t}`-free instances.
#[derive(Clone, Debug)]
pub struct InstanceSpec {
    pub n: usize,
    pub max_degree: usize,
    pub t: usize,
    /// Also keep the graph free of `K_{s,s}` subgraphs.
    pub forbid_biclique: Option<usize>,
    pub seed: u64,
    /// Maximum number of freeness checks before giving up.
    pub check_budget: usize,
}

impl InstanceSpec {
    pub fn new(n: usize, max_degree: usize, t: usize, seed: u64) -> Self {
        InstanceSpec {
            n,
            max_degree,
            t,
            forbid_biclique: None,
            seed,
            check_budget: 200_000,
        }
    }

    pub fn biclique_free(mut self, s: usize) -> Self {
        self.forbid_biclique = Some(s);
        self
    }

    /// Inserts random edges one at a time (respecting the degree cap) and
    /// rejects any edge that creates an induced `S_{t,t,t}` or a forbidden
    /// biclique. Stops at a random target edge count.
    pub fn generate<W: Weight>(&self) -> Result<WeightedGraph<W>> {
        if self.t == 0 {
            return Err(Error::Input("t must be >= 1".into()));
        }
        let n = self.n;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let weights = (0..n)
            .map(|_| weight_from(rng.gen_range(1..=100u64)))
            .collect();
        let mut g = WeightedGraph::new(weights);
        if n < 2 || self.max_degree == 0 {
            return Ok(g);
        }
        let mut pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        pairs.shuffle(&mut rng);
        let max_edges = (n * self.max_degree / 2).min(pairs.len());
        let target = rng.gen_range((n / 2).min(max_edges)..=max_edges);
        let mut checks = 0usize;
        for (u, v) in pairs {
            if g.edge_count() >= target {
                break;
            }
            if g.degree(u) >= self.max_degree || g.degree(v) >= self.max_degree {
                continue;
            }
            checks += 1;
            if checks > self.check_budget {
                return Err(Error::Capacity(format!(
                    "instance generation exhausted its budget of {} checks",
                    self.check_budget
                )));
            }
            g.add_edge(u, v)?;
            let bad = find_induced_sttt(&g, self.t)?.is_some()
                || match self.forbid_biclique {
                    Some(s) => contains_biclique_subgraph(&g, s)?,
                    None => false,
                };
            if bad {
                g.remove_edge(u, v);
            }
        }
        if find_induced_sttt(&g, self.t)?.is_some() || g.max_degree() > self.max_degree {
            return Err(Error::Invariant(
                "generated instance violates its own constraints".into(),
            ));
        }
        Ok(g)
    }
}

/// Random graph with maximum degree at most `max_degree`, free of induced
/// `S_{t,t,t}`, with weights in `[1, 100]`. Deterministic in `seed`.
pub fn generate_random_instance<W: Weight>(
    n: usize,
    max_degree: usize,
    t: usize,
    seed: u64,
) -> Result<WeightedGraph<W>> {
    InstanceSpec::new(n, max_degree, t, seed).generate()
}

fn weight_from<W: Weight>(x: u64) -> W {
    W::from_u64(x).expect("weight type too narrow for generated weights")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subdivided_claw_shapes() {
        let claw = generate_subdivided_claw::<u64>(1, 1, 1).unwrap();
        assert_eq!((claw.len(), claw.edge_count(), claw.degree(0)), (4, 3, 3));
        let s222 = generate_subdivided_claw::<u64>(2, 2, 2).unwrap();
        assert_eq!((s222.len(), s222.edge_count(), s222.degree(0)), (7, 6, 3));
        assert_eq!((1..7).filter(|&v| s222.degree(v) == 1).count(), 3);
        let chair = generate_subdivided_claw::<u64>(1, 1, 2).unwrap();
        assert_eq!(chair.len(), 5);
        assert!(generate_subdivided_claw::<u64>(0, 1, 1).is_err());
    }

    #[test]
    fn line_graph_examples() {
        let p3 = WeightedGraph::<u64>::from_edges(vec![1; 3], [(0, 1), (1, 2)]).unwrap();
        let l = line_graph(&p3, &[4, 5]).unwrap();
        assert_eq!((l.len(), l.edges()), (2, vec![(0, 1)]));
        assert_eq!(l.weights(), &[4, 5]);

        let tri = WeightedGraph::<u64>::from_edges(vec![1; 3], [(0, 1), (1, 2), (0, 2)]).unwrap();
        let lt = line_graph(&tri, &[1, 1, 1]).unwrap();
        assert_eq!(lt.edge_count(), 3);

        let claw = generate_subdivided_claw::<u64>(1, 1, 1).unwrap();
        let lc = line_graph(&claw, &[1, 1, 1]).unwrap();
        assert_eq!((lc.len(), lc.edge_count()), (3, 3));
        assert!(line_graph(&claw, &[1]).is_err());
    }

    #[test]
    fn empty_and_low_degree_instances() {
        let g = generate_random_instance::<u64>(0, 3, 2, 5).unwrap();
        assert!(g.is_empty());
        let g = generate_random_instance::<u64>(10, 2, 1, 3).unwrap();
        assert!(g.max_degree() <= 2);
        assert!(find_induced_sttt(&g, 1).unwrap().is_none());
    }

    #[test]
    fn generated_instances_are_free_and_deterministic() {
        let a = generate_random_instance::<u64>(20, 4, 2, 7).unwrap();
        let b = generate_random_instance::<u64>(20, 4, 2, 7).unwrap();
        assert_eq!(a, b);
        assert!(a.max_degree() <= 4);
        assert!(find_induced_sttt(&a, 2).unwrap().is_none());
        assert!(a.weights().iter().all(|&w| (1..=100).contains(&w)));
    }

    #[test]
    fn biclique_free_instances() {
        let g: WeightedGraph<u64> = InstanceSpec::new(18, 18, 2, 4)
            .biclique_free(2)
            .generate()
            .unwrap();
        assert!(!contains_biclique_subgraph(&g, 2).unwrap());
        assert!(find_induced_sttt(&g, 2).unwrap().is_none());
    }

    #[test]
    fn base_graph_has_requested_edges() {
        let (g, w) = random_base_graph::<u64>(12, 1).unwrap();
        assert_eq!(g.edge_count(), 12);
        assert_eq!(w.len(), 12);
    }
}
