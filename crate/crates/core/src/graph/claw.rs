use std::collections::HashMap;

use super::WeightedGraph;
use crate::error::{Error, Result};
use crate::num::Weight;

/// An induced subdivided claw `S_{a,b,c}`, recorded by vertex labels.
///
/// Each leg lists its vertices outward from the center, so leg `i` has
/// `legs[i].len()` edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdividedClawWitness {
    pub center: usize,
    pub legs: [Vec<usize>; 3],
}

impl SubdividedClawWitness {
    pub fn leg_lengths(&self) -> [usize; 3] {
        [self.legs[0].len(), self.legs[1].len(), self.legs[2].len()]
    }

    /// Center first, then the legs in order.
    pub fn vertices(&self) -> Vec<usize> {
        std::iter::once(self.center)
            .chain(self.legs.iter().flatten().copied())
            .collect()
    }

    /// Does the witness induce exactly `S_{a,b,c}` in `g` (labels resolved in `g`)?
    pub fn verify<W: Weight>(&self, g: &WeightedGraph<W>) -> bool {
        let index = g.label_index();
        let Some(ids) = self
            .vertices()
            .iter()
            .map(|l| index.get(l).copied())
            .collect::<Option<Vec<_>>>()
        else {
            return false;
        };
        if self.legs.iter().any(Vec::is_empty) {
            return false;
        }
        let mut slot: HashMap<usize, usize> = HashMap::new();
        for (i, &v) in ids.iter().enumerate() {
            if slot.insert(v, i).is_some() {
                return false;
            }
        }
        // expected tree edges, in positions of `ids`
        let mut expected = Vec::new();
        let mut pos = 1;
        for leg in &self.legs {
            let mut prev = 0;
            for _ in leg {
                expected.push((prev, pos));
                prev = pos;
                pos += 1;
            }
        }
        let is_expected = |a: usize, b: usize| {
            expected
                .iter()
                .any(|&(x, y)| (x, y) == (a, b) || (y, x) == (a, b))
        };
        for a in 0..ids.len() {
            for b in a + 1..ids.len() {
                if g.has_edge(ids[a], ids[b]) != is_expected(a, b) {
                    return false;
                }
            }
        }
        true
    }

    pub fn describe(&self) -> String {
        let legs: Vec<String> = self
            .legs
            .iter()
            .map(|l| {
                l.iter()
                    .map(|v| (v + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        format!(
            "center {} legs [{}] [{}] [{}]",
            self.center + 1,
            legs[0],
            legs[1],
            legs[2]
        )
    }
}

/// Exhaustive search for an induced `S_{a,b,c}` with leg lengths `lens`.
///
/// Backtracks over centers and grows the three legs one vertex at a time; a
/// new vertex must see exactly one chosen vertex (its predecessor). Legs of
/// equal length are ordered by their first vertex.
pub fn find_induced_subdivided_claw<W: Weight>(
    g: &WeightedGraph<W>,
    lens: [usize; 3],
) -> Result<Option<SubdividedClawWitness>> {
    if lens.contains(&0) {
        return Err(Error::Input(
            "subdivided claw legs must have length >= 1".into(),
        ));
    }
    let mut search = ClawSearch {
        g,
        lens,
        chosen: vec![false; g.len()],
        legs: Default::default(),
        center: 0,
    };
    for c in 0..g.len() {
        if g.degree(c) < 3 {
            continue;
        }
        search.center = c;
        search.chosen[c] = true;
        let found = search.grow(0);
        if found {
            let label = |v: usize| g.label(v);
            return Ok(Some(SubdividedClawWitness {
                center: label(c),
                legs: search
                    .legs
                    .clone()
                    .map(|leg| leg.into_iter().map(label).collect()),
            }));
        }
        search.chosen[c] = false;
    }
    Ok(None)
}

/// Induced `S_{t,t,t}`, if any.
pub fn find_induced_sttt<W: Weight>(
    g: &WeightedGraph<W>,
    t: usize,
) -> Result<Option<SubdividedClawWitness>> {
    find_induced_subdivided_claw(g, [t, t, t])
}

struct ClawSearch<'a, W> {
    g: &'a WeightedGraph<W>,
    lens: [usize; 3],
    chosen: Vec<bool>,
    legs: [Vec<usize>; 3],
    center: usize,
}

impl<W: Weight> ClawSearch<'_, W> {
    fn grow(&mut self, leg: usize) -> bool {
        if leg == 3 {
            return true;
        }
        if self.legs[leg].len() == self.lens[leg] {
            return self.grow(leg + 1);
        }
        let prev = self.legs[leg].last().copied().unwrap_or(self.center);
        let g = self.g;
        for &v in g.neighbors(prev) {
            if self.chosen[v] {
                continue;
            }
            if self.legs[leg].is_empty()
                && (0..leg).any(|j| self.lens[j] == self.lens[leg] && self.legs[j][0] > v)
            {
                continue;
            }
            if g.neighbors(v).iter().any(|&u| self.chosen[u] && u != prev) {
                continue;
            }
            self.chosen[v] = true;
            self.legs[leg].push(v);
            if self.grow(leg) {
                return true;
            }
            self.legs[leg].pop();
            self.chosen[v] = false;
        }
        false
    }
}
