use petgraph::algo::dinics;
use petgraph::graph::{DiGraph, NodeIndex};
use petgraph::visit::EdgeRef;
use petgraph::Direction;

use super::{check_weissauer, high_degree_threshold, torso, TreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::num::Weight;

#[derive(Clone, Copy, Debug)]
pub struct TdBudget {
    /// Separator computations allowed in total.
    pub max_flows: usize,
}

impl Default for TdBudget {
    fn default() -> Self {
        TdBudget { max_flows: 20_000 }
    }
}

/// A minimum set of vertices, avoiding `a` and `b`, whose removal separates
/// the non-adjacent vertices `a` and `b`. Unit vertex capacities, Menger.
pub fn min_vertex_separator<W: Weight>(
    g: &WeightedGraph<W>,
    a: usize,
    b: usize,
) -> Result<Vec<usize>> {
    if a == b || g.has_edge(a, b) {
        return Err(Error::Input(format!(
            "vertices {} and {} cannot be separated",
            a + 1,
            b + 1
        )));
    }
    let n = g.len();
    let big = n as u32 + 1;
    let mut net = DiGraph::<(), u32>::with_capacity(2 * n, n + 2 * g.edge_count());
    for _ in 0..2 * n {
        net.add_node(());
    }
    let v_in = |v: usize| NodeIndex::new(2 * v);
    let v_out = |v: usize| NodeIndex::new(2 * v + 1);
    for v in 0..n {
        let cap = if v == a || v == b { big } else { 1 };
        net.add_edge(v_in(v), v_out(v), cap);
    }
    for (u, v) in g.edges() {
        net.add_edge(v_out(u), v_in(v), big);
        net.add_edge(v_out(v), v_in(u), big);
    }
    let (_, flows) = dinics(&net, v_out(a), v_in(b));
    let mut reach = vec![false; 2 * n];
    reach[v_out(a).index()] = true;
    let mut stack = vec![v_out(a)];
    while let Some(x) = stack.pop() {
        for e in net.edges_directed(x, Direction::Outgoing) {
            if flows[e.id().index()] < *e.weight() && !reach[e.target().index()] {
                reach[e.target().index()] = true;
                stack.push(e.target());
            }
        }
        for e in net.edges_directed(x, Direction::Incoming) {
            if flows[e.id().index()] > 0 && !reach[e.source().index()] {
                reach[e.source().index()] = true;
                stack.push(e.source());
            }
        }
    }
    Ok((0..n)
        .filter(|&v| reach[2 * v] && !reach[2 * v + 1])
        .collect())
}

/// A tree decomposition with adhesions below `k` and at most `k` vertices of
/// torso degree above `2k(k-1)` per torso.
///
/// Starts from a single bag and, while some torso breaks the degree
/// condition, splits that bag along a smallest vertex separator of size
/// below `k` between two of its high-degree vertices. Each neighboring node
/// is reattached to the side that contains its adhesion. Fails when a
/// violating bag has no such separator or the budget runs out.
pub fn build_weissauer<W: Weight>(
    g: &WeightedGraph<W>,
    k: usize,
    budget: TdBudget,
) -> Result<TreeDecomposition> {
    if k == 0 {
        return Err(Error::Input("k must be positive".into()));
    }
    let mut td = TreeDecomposition::single_bag(g.len());
    let limit = high_degree_threshold(k);
    let mut flows = 0;
    'outer: loop {
        if check_weissauer(g, &td, k).is_empty() {
            return Ok(td);
        }
        for node in 0..td.len() {
            let tor = torso(g, &td, node);
            let high: Vec<usize> = (0..tor.len()).filter(|&v| tor.degree(v) > limit).collect();
            if high.len() <= k {
                continue;
            }
            let mut best: Option<(Vec<usize>, usize)> = None;
            for (i, &a) in high.iter().enumerate() {
                for &b in &high[i + 1..] {
                    if tor.has_edge(a, b) {
                        continue;
                    }
                    flows += 1;
                    if flows > budget.max_flows {
                        return Err(Error::TreeDecomposition(format!(
                            "separator budget of {} exhausted; largest bag has {} vertices",
                            budget.max_flows,
                            td.bags.iter().map(Vec::len).max().unwrap_or(0)
                        )));
                    }
                    let s = min_vertex_separator(&tor, a, b)?;
                    if s.len() < k && best.as_ref().is_none_or(|(bs, _)| s.len() < bs.len()) {
                        best = Some((s, a));
                    }
                }
            }
            let Some((sep, a)) = best else {
                return Err(Error::TreeDecomposition(format!(
                    "bag {} ({} vertices) has {} high-degree torso vertices and no separator below {k} between them",
                    node + 1,
                    tor.len(),
                    high.len()
                )));
            };
            split(&mut td, &tor, node, &sep, a);
            continue 'outer;
        }
        return Err(Error::Invariant(
            "adhesion of size >= k produced by the builder".into(),
        ));
    }
}

/// Replace `node` by `C_a ∪ S` and `β \ C_a`, where `C_a` is the component of
/// `torso - S` holding `a`. All arguments are in torso positions.
fn split<W: Weight>(
    td: &mut TreeDecomposition,
    tor: &WeightedGraph<W>,
    node: usize,
    sep: &[usize],
    a: usize,
) {
    let bag = td.bags[node].clone();
    let mut allowed = vec![true; tor.len()];
    sep.iter().for_each(|&v| allowed[v] = false);
    let comp = tor
        .components_within(&allowed)
        .into_iter()
        .find(|c| c.contains(&a))
        .expect("a survives the separator");
    let mut in_comp = vec![false; tor.len()];
    comp.iter().for_each(|&v| in_comp[v] = true);
    let first: Vec<usize> = (0..tor.len())
        .filter(|&v| in_comp[v] || !allowed[v])
        .map(|v| bag[v])
        .collect();
    let second: Vec<usize> = (0..tor.len())
        .filter(|&v| !in_comp[v])
        .map(|v| bag[v])
        .collect();
    let new = td.bags.len();
    td.bags.push(first);
    for e in td.edges.iter_mut() {
        let other = match *e {
            (s, t) if s == node => t,
            (s, t) if t == node => s,
            _ => continue,
        };
        let sigma = {
            let b = &td.bags[other];
            bag.iter()
                .filter(|v| b.binary_search(v).is_ok())
                .copied()
                .collect::<Vec<_>>()
        };
        // Adhesions are torso cliques, so each lies on one side.
        let on_second = sigma.iter().all(|v| second.binary_search(v).is_ok());
        if !on_second {
            *e = (other, new);
        }
    }
    td.bags[node] = second;
    td.edges.push((node, new));
}

/// A set of `k` vertices, no two separable by deleting fewer than `k`
/// vertices. Exhaustive; refuses graphs with more than 25 vertices.
pub fn find_k_block<W: Weight>(g: &WeightedGraph<W>, k: usize) -> Result<Option<Vec<usize>>> {
    let n = g.len();
    if n > 25 {
        return Err(Error::Capacity(format!(
            "k-block search limited to 25 vertices, got {n}"
        )));
    }
    if k > n {
        return Ok(None);
    }
    let mut linked = vec![vec![false; n]; n];
    for a in 0..n {
        for b in a + 1..n {
            let ok = g.has_edge(a, b) || min_vertex_separator(g, a, b)?.len() >= k;
            linked[a][b] = ok;
            linked[b][a] = ok;
        }
    }
    fn extend(linked: &[Vec<bool>], k: usize, from: usize, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == k {
            return true;
        }
        for v in from..linked.len() {
            if chosen.iter().all(|&c| linked[c][v]) {
                chosen.push(v);
                if extend(linked, k, v + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    Ok(extend(&linked, k, 0, &mut chosen).then_some(chosen))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::treedec::validate_tree_decomposition;

    fn cycle(n: usize) -> WeightedGraph<u64> {
        WeightedGraph::from_edges(vec![1; n], (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn clique(n: usize) -> WeightedGraph<u64> {
        WeightedGraph::from_edges(
            vec![1; n],
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))),
        )
        .unwrap()
    }

    #[test]
    fn separator_in_cycle() {
        let s = min_vertex_separator(&cycle(6), 0, 3).unwrap();
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn low_degree_graph_gets_one_bag() {
        let g = cycle(7);
        assert_eq!(
            build_weissauer(&g, 2, TdBudget::default()).unwrap(),
            TreeDecomposition::single_bag(7)
        );
    }

    #[test]
    fn two_stars_split_on_empty_separator() {
        // k = 1: threshold 0, two stars K_{1,2} have six high-degree vertices.
        let star = WeightedGraph::<u64>::from_edges(vec![1; 3], [(0, 1), (0, 2)]).unwrap();
        let g = star.disjoint_union(&star);
        assert!(build_weissauer(&g, 1, TdBudget::default()).is_err());
        let td = build_weissauer(&g, 2, TdBudget::default());
        // Threshold 4 for k = 2: nothing is high, single bag.
        assert_eq!(td.unwrap().len(), 1);
    }

    #[test]
    fn hubs_joined_by_cut_vertices_are_split() {
        // Three K_{1,5} hubs in a row, joined through cut vertices 6 and 12.
        let mut edges = Vec::new();
        for h in 0..3 {
            let c = 6 * h;
            for l in 1..=5 {
                edges.push((c, c + l));
            }
        }
        edges.push((5, 6));
        edges.push((11, 12));
        let g = WeightedGraph::<u64>::from_edges(vec![1; 18], edges).unwrap();
        // k = 2 allows at most 2 vertices of degree > 4 per torso and adhesions of size 1.
        let td = build_weissauer(&g, 2, TdBudget::default()).unwrap();
        assert!(td.len() >= 2);
        assert!(validate_tree_decomposition(&g, &td).is_empty());
        assert!(check_weissauer(&g, &td, 2).is_empty());
    }

    #[test]
    fn k_blocks() {
        assert_eq!(find_k_block(&clique(4), 4).unwrap(), Some(vec![0, 1, 2, 3]));
        let tree = WeightedGraph::<u64>::from_edges(vec![1; 4], [(0, 1), (1, 2), (1, 3)]).unwrap();
        assert_eq!(find_k_block(&tree, 2).unwrap(), Some(vec![0, 1]));
        assert_eq!(find_k_block(&cycle(5), 3).unwrap(), None);
        assert!(find_k_block(&cycle(26), 2).is_err());
    }
}
