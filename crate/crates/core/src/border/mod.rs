//! The Border MWIS problem: for a terminal set `T`, the best weight of an
//! independent set meeting `T` in exactly `I_T`, for every `I_T ⊆ T`.

mod combine;
mod profile;

pub use combine::{
    build_plan, combine_esd, matching_from_independent_set, reconstruct_witness, CombinationPlan,
    ParticleProfiles,
};
pub use profile::{
    check_profile_sanity, read_profile, write_profile, BorderProfile, DEFAULT_TERMINAL_CAP,
};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::num::Weight;
use crate::oracle::{bits, narrow, MaskedSearch, OracleBudget};

/// Exhaustive profile of `(g, terminals)`; `terminals` are positions in `g`
/// and the profile is keyed by their labels in the same order.
pub fn brute_force_border<W: Weight>(
    g: &WeightedGraph<W>,
    terminals: &[usize],
    budget: &OracleBudget,
) -> Result<BorderProfile<W>> {
    brute_force(g, terminals, budget, false)
}

/// As [`brute_force_border`], also recording a witness for every finite cell.
pub fn brute_force_border_witnessed<W: Weight>(
    g: &WeightedGraph<W>,
    terminals: &[usize],
    budget: &OracleBudget,
) -> Result<BorderProfile<W>> {
    brute_force(g, terminals, budget, true)
}

fn brute_force<W: Weight>(
    g: &WeightedGraph<W>,
    terminals: &[usize],
    budget: &OracleBudget,
    witnesses: bool,
) -> Result<BorderProfile<W>> {
    if g.len() > budget.max_vertices {
        return Err(Error::Capacity(format!(
            "exhaustive profile limited to {} vertices, graph has {}",
            budget.max_vertices,
            g.len()
        )));
    }
    if terminals.len() > budget.max_terminals {
        return Err(Error::Capacity(format!(
            "exhaustive profile limited to {} terminals, got {}",
            budget.max_terminals,
            terminals.len()
        )));
    }
    if let Some(&bad) = terminals.iter().find(|&&v| v >= g.len()) {
        return Err(Error::Input(format!("terminal {bad} not in graph")));
    }
    let labels: Vec<usize> = terminals.iter().map(|&v| g.label(v)).collect();
    let mut profile = if witnesses {
        BorderProfile::with_witnesses(labels, budget.max_terminals)?
    } else {
        BorderProfile::new(labels, budget.max_terminals)?
    };
    let search = MaskedSearch::new(g, budget.node_cap)?;
    let adj = g.adjacency_masks().expect("checked by MaskedSearch");
    let all = if g.is_empty() {
        0
    } else {
        u128::MAX >> (128 - g.len())
    };
    let tmask = terminals.iter().fold(0u128, |m, &v| m | 1 << v);
    for_each_independent_subset(g, terminals, |sel| {
        let chosen: u128 = bits(sel as u128)
            .into_iter()
            .fold(0, |m, i| m | 1 << terminals[i]);
        let blocked = bits(chosen).into_iter().fold(tmask, |m, v| m | adj[v]);
        let (rest, rest_set) = search.run(all & !blocked)?;
        let value = narrow::<W>(search.weight_of(chosen) + rest)?;
        let witness = witnesses.then(|| {
            bits(chosen | rest_set)
                .into_iter()
                .map(|v| g.label(v))
                .collect()
        });
        profile.set_with_witness(sel as usize, Some(value), witness);
        Ok(())
    })?;
    Ok(profile)
}

/// Call `f` with the mask (over indices into `set`) of every independent
/// subset of `set`, including the empty one.
pub(crate) fn for_each_independent_subset<W: Weight>(
    g: &WeightedGraph<W>,
    set: &[usize],
    mut f: impl FnMut(u64) -> Result<()>,
) -> Result<()> {
    if set.len() > 63 {
        return Err(Error::Capacity(format!(
            "cannot enumerate subsets of {} vertices",
            set.len()
        )));
    }
    let conflict: Vec<u64> = set
        .iter()
        .map(|&v| {
            set.iter()
                .enumerate()
                .filter(|&(_, &u)| g.has_edge(u, v))
                .fold(0u64, |m, (j, _)| m | 1 << j)
        })
        .collect();
    fn go(
        i: usize,
        mask: u64,
        banned: u64,
        conflict: &[u64],
        f: &mut dyn FnMut(u64) -> Result<()>,
    ) -> Result<()> {
        if i == conflict.len() {
            return f(mask);
        }
        go(i + 1, mask, banned, conflict, f)?;
        if banned >> i & 1 == 0 {
            go(i + 1, mask | 1 << i, banned | conflict[i], conflict, f)?;
        }
        Ok(())
    }
    go(0, 0, 0, &conflict, &mut f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_vertex_and_edge() {
        let b = OracleBudget::default();
        let g = WeightedGraph::<u64>::new(vec![5]);
        let p = brute_force_border(&g, &[0], &b).unwrap();
        assert_eq!(p.table(), &[Some(0), Some(5)]);

        let g = WeightedGraph::<u64>::from_edges(vec![2, 3], [(0, 1)]).unwrap();
        let p = brute_force_border(&g, &[0, 1], &b).unwrap();
        assert_eq!(p.table(), &[Some(0), Some(2), Some(3), None]);
        assert!(check_profile_sanity(&g, &p).unwrap().is_empty());
    }

    #[test]
    fn path_without_terminals() {
        let g =
            WeightedGraph::<u64>::from_edges(vec![1, 9, 9, 1], [(0, 1), (1, 2), (2, 3)]).unwrap();
        let p = brute_force_border_witnessed(&g, &[], &OracleBudget::default()).unwrap();
        assert_eq!(p.optimum(), Some(10));
        let w = p.witness(0).unwrap();
        assert_eq!(g.weight_of(w), 10);
    }

    #[test]
    fn terminals_follow_labels() {
        let g =
            WeightedGraph::<u64>::from_edges(vec![1, 2, 3, 4], [(0, 1), (1, 2), (2, 3)]).unwrap();
        let sub = g.induced_subgraph(&[1, 2, 3]).unwrap();
        let p = brute_force_border(&sub, &[2, 0], &OracleBudget::default()).unwrap();
        assert_eq!(p.terminals(), &[3, 1]);
        assert_eq!(p.value(&[3]).unwrap(), Some(4));
        assert_eq!(p.value(&[1]).unwrap(), Some(2));
        assert_eq!(p.value(&[1, 3]).unwrap(), Some(6));
        assert!(p.value(&[0]).is_err());
    }

    #[test]
    fn dump_round_trip_and_sanity_catches_perturbation() {
        let g = WeightedGraph::<u64>::from_edges(vec![2, 3, 1], [(0, 1), (1, 2)]).unwrap();
        let mut p = brute_force_border(&g, &[0, 2, 1], &OracleBudget::default()).unwrap();
        let text = write_profile(&p);
        assert!(text.starts_with("c terminals 1 3 2\n0 0\n1 2\n"));
        assert_eq!(read_profile::<u64>(&text).unwrap(), p);
        p.set(0b011, None);
        assert_eq!(check_profile_sanity(&g, &p).unwrap().len(), 1);
        assert!(read_profile::<u64>("c terminals 1\n0 1\n").is_err());
    }
}
