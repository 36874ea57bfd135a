use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::validate::sanctioned;
use super::{validate_esd, ExtendedStripDecomposition, Owner};
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

/// A graph together with a decomposition of it and a terminal set.
#[derive(Clone, Debug)]
pub struct EsdInstance {
    pub graph: WeightedGraph<u64>,
    pub esd: ExtendedStripDecomposition,
    pub terminals: Vec<usize>,
}

/// Random `(G, D, T)`: a random pattern on at most `max_pattern` vertices, a
/// random assignment of `n` vertices to its sets, and random edges among the
/// allowed ones (interface sets at a common pattern vertex are always made
/// complete). Weights are drawn from `0..=max_weight`, and `|T| <= max_terminals`.
pub fn random_esd_instance(
    n: usize,
    max_pattern: usize,
    max_terminals: usize,
    max_weight: u64,
    seed: u64,
) -> Result<EsdInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = rng.gen_range(1..=max_pattern.max(1));
    let mut d = ExtendedStripDecomposition::new(h);
    let edge_p = rng.gen_range(0.3..0.9);
    for x in 0..h {
        for y in x + 1..h {
            if rng.gen_bool(edge_p) {
                d.add_pattern_edge(x, y)?;
            }
        }
    }
    let mut owners: Vec<Owner> = (0..h).map(Owner::Vertex).collect();
    owners.extend(
        d.pattern()
            .edges()
            .into_iter()
            .map(|(x, y)| Owner::Edge(x, y)),
    );
    owners.extend(
        d.pattern()
            .triangles()
            .into_iter()
            .map(|(x, y, z)| Owner::Triangle(x, y, z)),
    );

    let mut vertex_sets = vec![Vec::new(); h];
    let mut edge_sets = std::collections::BTreeMap::new();
    let mut triangle_sets = std::collections::BTreeMap::new();
    let mut owner_of = Vec::with_capacity(n);
    for v in 0..n {
        let o = *owners.choose(&mut rng).expect("pattern is nonempty");
        owner_of.push(o);
        match o {
            Owner::Vertex(x) => vertex_sets[x].push(v),
            Owner::Edge(x, y) => {
                let e = edge_sets
                    .entry((x, y))
                    .or_insert((Vec::new(), Vec::new(), Vec::new()));
                e.0.push(v);
                match rng.gen_range(0..4) {
                    0 => {}
                    1 => e.1.push(v),
                    2 => e.2.push(v),
                    _ => {
                        e.1.push(v);
                        e.2.push(v);
                    }
                }
            }
            Owner::Triangle(x, y, z) => triangle_sets
                .entry((x, y, z))
                .or_insert_with(Vec::new)
                .push(v),
        }
    }
    for (x, s) in vertex_sets.iter().enumerate() {
        d.set_vertex(x, s)?;
    }
    for ((x, y), (s, a, b)) in &edge_sets {
        d.set_edge(*x, *y, s, a, b)?;
    }
    for ((x, y, z), s) in &triangle_sets {
        d.set_triangle(*x, *y, *z, s)?;
    }

    let in_end = |v: usize, x: usize, y: usize| d.end_set(x, y).binary_search(&v).is_ok();
    let weights = (0..n).map(|_| rng.gen_range(0..=max_weight)).collect();
    let mut g = WeightedGraph::new(weights);
    let inner_p = rng.gen_range(0.2..0.7);
    let cross_p = rng.gen_range(0.2..0.8);
    for u in 0..n {
        for v in u + 1..n {
            let (ou, ov) = (owner_of[u], owner_of[v]);
            let add = if ou == ov {
                rng.gen_bool(inner_p)
            } else if must_be_complete(u, ou, v, ov, &in_end) {
                true
            } else if sanctioned(u, ou, v, ov, &in_end) || sanctioned(v, ov, u, ou, &in_end) {
                rng.gen_bool(cross_p)
            } else {
                false
            };
            if add {
                g.add_edge(u, v)?;
            }
        }
    }

    let mut all: Vec<usize> = (0..n).collect();
    all.shuffle(&mut rng);
    let k = rng.gen_range(0..=max_terminals.min(n));
    let mut terminals = all[..k].to_vec();
    terminals.sort_unstable();

    let report = validate_esd(&g, &d, false);
    if !report.is_ok() {
        return Err(Error::Invariant(format!(
            "generated decomposition is invalid: {report}"
        )));
    }
    Ok(EsdInstance {
        graph: g,
        esd: d,
        terminals,
    })
}

/// `u` and `v` lie in interface sets of two different pattern edges at a common
/// pattern vertex.
fn must_be_complete(
    u: usize,
    ou: Owner,
    v: usize,
    ov: Owner,
    in_end: &impl Fn(usize, usize, usize) -> bool,
) -> bool {
    let (Owner::Edge(a, b), Owner::Edge(c, e)) = (ou, ov) else {
        return false;
    };
    [a, b].into_iter().any(|x| {
        if x != c && x != e {
            return false;
        }
        let y = if x == a { b } else { a };
        let z = if x == c { e } else { c };
        in_end(u, x, y) && in_end(v, x, z)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instances_are_valid_and_reproducible() {
        for seed in 0..200 {
            let a = random_esd_instance(12, 5, 5, 20, seed).unwrap();
            let b = random_esd_instance(12, 5, 5, 20, seed).unwrap();
            assert_eq!(a.graph, b.graph);
            assert_eq!(a.esd, b.esd);
            assert!(a.terminals.len() <= 5);
        }
    }
}
