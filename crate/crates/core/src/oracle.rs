//! Ground-truth solvers that share nothing with the decomposition machinery.

use crate::border::{brute_force_border, BorderProfile};
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::num::Weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_vertices: usize,
    pub max_terminals: usize,
    /// Search-tree nodes allowed per independent-set search.
    pub node_cap: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_vertices: 40,
            max_terminals: 20,
            node_cap: 20_000_000,
        }
    }
}

/// Exact maximum-weight independent set by branch and bound. Returns the
/// weight and a witness (positions, sorted).
pub fn mwis_bruteforce<W: Weight>(
    g: &WeightedGraph<W>,
    budget: &OracleBudget,
) -> Result<(W, Vec<usize>)> {
    if g.len() > budget.max_vertices {
        return Err(Error::Capacity(format!(
            "oracle limited to {} vertices, graph has {}",
            budget.max_vertices,
            g.len()
        )));
    }
    let search = MaskedSearch::new(g, budget.node_cap)?;
    let all = if g.is_empty() {
        0
    } else {
        u128::MAX >> (128 - g.len())
    };
    let (value, set) = search.run(all)?;
    let witness = bits(set);
    debug_assert!(g.is_independent(&witness));
    Ok((narrow(value)?, witness))
}

/// Entrywise comparison of `profile` against the exhaustive profile of
/// `(g, terminals of profile)`.
pub fn verify_solution<W: Weight>(
    g: &WeightedGraph<W>,
    profile: &BorderProfile<W>,
    budget: &OracleBudget,
) -> Result<Vec<Mismatch<W>>> {
    let index = g.label_index();
    let terminals: Vec<usize> = profile
        .terminals()
        .iter()
        .map(|l| {
            index
                .get(l)
                .copied()
                .ok_or_else(|| Error::Contract(format!("terminal label {l} not in graph")))
        })
        .collect::<Result<_>>()?;
    let truth = brute_force_border(g, &terminals, budget)?;
    Ok((0..truth.cells())
        .filter(|&m| truth.get(m) != profile.get(m))
        .map(|mask| Mismatch {
            mask,
            expected: truth.get(mask),
            found: profile.get(mask),
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch<W> {
    pub mask: usize,
    pub expected: Option<W>,
    pub found: Option<W>,
}

pub(crate) fn narrow<W: Weight>(v: u128) -> Result<W> {
    i128::try_from(v)
        .ok()
        .and_then(W::narrow)
        .ok_or_else(|| Error::Capacity(format!("weight {v} does not fit the weight type")))
}

pub(crate) fn bits(mut m: u128) -> Vec<usize> {
    let mut out = Vec::new();
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        out.push(v);
        m &= m - 1;
    }
    out
}

/// Branch and bound over vertex bitmasks, restricted to a candidate mask.
pub(crate) struct MaskedSearch {
    adj: Vec<u128>,
    weight: Vec<u128>,
    node_cap: u64,
}

struct State {
    best: u128,
    best_set: u128,
    nodes: u64,
}

impl MaskedSearch {
    pub(crate) fn new<W: Weight>(g: &WeightedGraph<W>, node_cap: u64) -> Result<Self> {
        let adj = g.adjacency_masks().ok_or_else(|| {
            Error::Capacity(format!(
                "bitmask search limited to 128 vertices, graph has {}",
                g.len()
            ))
        })?;
        let weight = g.weights().iter().map(|w| w.wide() as u128).collect();
        Ok(MaskedSearch {
            adj,
            weight,
            node_cap,
        })
    }

    /// Best independent set inside `cand`: `(weight, set)`.
    pub(crate) fn run(&self, cand: u128) -> Result<(u128, u128)> {
        let mut st = State {
            best: 0,
            best_set: 0,
            nodes: 0,
        };
        self.search(cand, 0, 0, &mut st);
        if st.nodes > self.node_cap {
            return Err(Error::Capacity(format!(
                "oracle search exceeded {} nodes",
                self.node_cap
            )));
        }
        Ok((st.best, st.best_set))
    }

    pub(crate) fn weight_of(&self, set: u128) -> u128 {
        bits(set).into_iter().map(|v| self.weight[v]).sum()
    }

    fn search(&self, mut cand: u128, mut cur: u128, mut set: u128, st: &mut State) {
        st.nodes += 1;
        if st.nodes > self.node_cap {
            return;
        }
        // Take vertices with no candidate neighbour, and degree-one vertices
        // at least as heavy as their neighbour.
        loop {
            let mut changed = false;
            let mut rest = cand;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if cand >> v & 1 == 0 {
                    continue;
                }
                let nb = self.adj[v] & cand;
                if nb == 0
                    || (nb.count_ones() == 1
                        && self.weight[v] >= self.weight[nb.trailing_zeros() as usize])
                {
                    cur += self.weight[v];
                    set |= 1 << v;
                    cand &= !(nb | 1 << v);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        if cand == 0 {
            if cur > st.best {
                st.best = cur;
                st.best_set = set;
            }
            return;
        }
        if cur + self.clique_cover_bound(cand) <= st.best {
            return;
        }
        let v = bits(cand)
            .into_iter()
            .max_by_key(|&v| ((self.adj[v] & cand).count_ones(), std::cmp::Reverse(v)))
            .expect("cand is nonempty");
        self.search(
            cand & !(self.adj[v] | 1 << v),
            cur + self.weight[v],
            set | 1 << v,
            st,
        );
        self.search(cand & !(1 << v), cur, set, st);
    }

    /// Sum over a greedy clique cover of each clique's heaviest weight.
    fn clique_cover_bound(&self, cand: u128) -> u128 {
        let mut vs = bits(cand);
        vs.sort_by_key(|&v| std::cmp::Reverse(self.weight[v]));
        let mut cliques: Vec<u128> = Vec::new();
        let mut bound = 0;
        for v in vs {
            match cliques.iter_mut().find(|c| **c & !self.adj[v] == 0) {
                Some(c) => *c |= 1 << v,
                None => {
                    cliques.push(1 << v);
                    bound += self.weight[v];
                }
            }
        }
        bound
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> WeightedGraph<u64> {
        WeightedGraph::from_edges(vec![1; n], (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn small_values() {
        let b = OracleBudget::default();
        assert_eq!(mwis_bruteforce(&cycle(5), &b).unwrap().0, 2);
        assert_eq!(
            mwis_bruteforce(&WeightedGraph::<u64>::empty(), &b).unwrap(),
            (0, vec![])
        );
        let p4 =
            WeightedGraph::<u64>::from_edges(vec![1, 9, 9, 1], [(0, 1), (1, 2), (2, 3)]).unwrap();
        let (w, set) = mwis_bruteforce(&p4, &b).unwrap();
        assert_eq!(w, 10);
        assert_eq!(p4.weight_of(&set), 10);
        let claw =
            WeightedGraph::<u64>::from_edges(vec![10, 4, 4, 4], [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(mwis_bruteforce(&claw, &b).unwrap(), (12, vec![1, 2, 3]));
    }

    #[test]
    fn budget_limits() {
        let b = OracleBudget {
            max_vertices: 4,
            ..Default::default()
        };
        assert!(matches!(
            mwis_bruteforce(&cycle(5), &b),
            Err(Error::Capacity(_))
        ));
        let b = OracleBudget {
            node_cap: 1,
            ..Default::default()
        };
        let g = WeightedGraph::<u64>::from_edges(
            vec![3, 2, 2, 3, 1],
            [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)],
        )
        .unwrap();
        assert!(matches!(mwis_bruteforce(&g, &b), Err(Error::Capacity(_))));
    }
}
