use super::WeightedGraph;
use crate::error::{Error, Result};
use crate::num::Weight;

/// Does `g` contain `K_{t,t}` as a (not necessarily induced) subgraph?
///
/// Enumerates `t`-subsets of vertices with degree at least `t` and checks
/// whether their common neighbourhood has `t` vertices.
pub fn contains_biclique_subgraph<W: Weight>(g: &WeightedGraph<W>, t: usize) -> Result<bool> {
    if t == 0 {
        return Err(Error::Input("biclique side must be >= 1".into()));
    }
    let candidates: Vec<usize> = (0..g.len()).filter(|&v| g.degree(v) >= t).collect();
    if candidates.len() < 2 * t {
        return Ok(false);
    }
    let mut chosen = Vec::with_capacity(t);
    Ok(extend(g, t, &candidates, 0, &mut chosen, None))
}

fn extend<W: Weight>(
    g: &WeightedGraph<W>,
    t: usize,
    candidates: &[usize],
    from: usize,
    chosen: &mut Vec<usize>,
    common: Option<&[usize]>,
) -> bool {
    if chosen.len() == t {
        return common.is_some_and(|c| c.len() >= t);
    }
    for i in from..candidates.len() {
        if candidates.len() - i < t - chosen.len() {
            break;
        }
        let v = candidates[i];
        let next: Vec<usize> = match common {
            None => g.neighbors(v).to_vec(),
            Some(c) => c.iter().copied().filter(|&u| g.has_edge(u, v)).collect(),
        };
        if next.len() < t {
            continue;
        }
        chosen.push(v);
        if extend(g, t, candidates, i + 1, chosen, Some(&next)) {
            return true;
        }
        chosen.pop();
    }
    false
}
