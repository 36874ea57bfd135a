use std::fmt;

use super::{ExtendedStripDecomposition, Owner};
use crate::graph::WeightedGraph;
use crate::num::Weight;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EsdViolation {
    /// A set mentions a vertex the graph does not have.
    UnknownVertex {
        owner: Owner,
        vertex: usize,
    },
    /// A vertex lies in no set (`owners` empty) or in several.
    Partition {
        vertex: usize,
        owners: Vec<Owner>,
    },
    /// `η(xy,x)` and `η(xz,x)` are not complete to each other.
    NotComplete {
        x: usize,
        y: usize,
        z: usize,
        u: usize,
        v: usize,
    },
    /// A graph edge crossing sets in a way the decomposition does not allow.
    CrossEdge {
        u: usize,
        v: usize,
        owner_u: Owner,
        owner_v: Owner,
    },
    NotRigid(String),
}

impl fmt::Display for EsdViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EsdViolation::UnknownVertex { owner, vertex } => {
                write!(f, "set of {owner:?} contains unknown vertex {}", vertex + 1)
            }
            EsdViolation::Partition { vertex, owners } if owners.is_empty() => {
                write!(f, "partition: vertex {} is in no set", vertex + 1)
            }
            EsdViolation::Partition { vertex, owners } => {
                write!(f, "partition: vertex {} is in several sets {owners:?}", vertex + 1)
            }
            EsdViolation::NotComplete { x, y, z, u, v } => write!(
                f,
                "completeness: ends of pattern edges {}-{} and {}-{} at {} have non-adjacent vertices {} and {}",
                x + 1,
                y + 1,
                x + 1,
                z + 1,
                x + 1,
                u + 1,
                v + 1
            ),
            EsdViolation::CrossEdge { u, v, owner_u, owner_v } => {
                write!(f, "edge {}-{} joins {owner_u:?} and {owner_v:?} outside the allowed patterns", u + 1, v + 1)
            }
            EsdViolation::NotRigid(msg) => write!(f, "rigidity: {msg}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EsdReport {
    pub violations: Vec<EsdViolation>,
}

impl EsdReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for EsdReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "OK");
        }
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Check the partition, completeness and edge-placement conditions, and
/// rigidity when `require_rigid` is set.
pub fn validate_esd<W: Weight>(
    g: &WeightedGraph<W>,
    d: &ExtendedStripDecomposition,
    require_rigid: bool,
) -> EsdReport {
    let n = g.len();
    let mut violations = Vec::new();
    let mut owner_of: Vec<Vec<Owner>> = vec![Vec::new(); n];
    for (owner, set) in d.owners() {
        for &v in set {
            if v >= n {
                violations.push(EsdViolation::UnknownVertex { owner, vertex: v });
            } else {
                owner_of[v].push(owner);
            }
        }
    }
    for (v, owners) in owner_of.iter().enumerate() {
        if owners.len() != 1 {
            violations.push(EsdViolation::Partition {
                vertex: v,
                owners: owners.clone(),
            });
        }
    }
    if !violations.is_empty() {
        return EsdReport { violations };
    }
    let owner = |v: usize| owner_of[v][0];

    let h = d.pattern();
    for x in 0..h.len() {
        let nb = h.neighbors(x);
        for (i, &y) in nb.iter().enumerate() {
            for &z in &nb[i + 1..] {
                for &u in d.end_set(x, y) {
                    for &v in d.end_set(x, z) {
                        if u == v || !g.has_edge(u, v) {
                            violations.push(EsdViolation::NotComplete { x, y, z, u, v });
                        }
                    }
                }
            }
        }
    }

    let in_end = |v: usize, x: usize, y: usize| d.end_set(x, y).binary_search(&v).is_ok();
    for (u, v) in g.edges() {
        let (ou, ov) = (owner(u), owner(v));
        if ou == ov || sanctioned(u, ou, v, ov, &in_end) || sanctioned(v, ov, u, ou, &in_end) {
            continue;
        }
        violations.push(EsdViolation::CrossEdge {
            u,
            v,
            owner_u: ou,
            owner_v: ov,
        });
    }

    if require_rigid {
        for (x, y) in h.edges() {
            for (name, empty) in [
                ("edge set", d.edge_set(x, y).is_empty()),
                ("first end set", d.end_set(x, y).is_empty()),
                ("second end set", d.end_set(y, x).is_empty()),
            ] {
                if empty {
                    violations.push(EsdViolation::NotRigid(format!(
                        "{name} of pattern edge {}-{} is empty",
                        x + 1,
                        y + 1
                    )));
                }
            }
        }
        for x in 0..h.len() {
            if h.degree(x) == 0 && d.vertex_set(x).is_empty() {
                violations.push(EsdViolation::NotRigid(format!(
                    "isolated pattern vertex {} has an empty set",
                    x + 1
                )));
            }
        }
    }
    EsdReport { violations }
}

/// Whether an edge `uv` with `u` owned by `ou` and `v` by `ov` matches one of
/// the three allowed cross patterns, with `u` playing the first role.
pub(super) fn sanctioned(
    u: usize,
    ou: Owner,
    v: usize,
    ov: Owner,
    in_end: &impl Fn(usize, usize, usize) -> bool,
) -> bool {
    let Owner::Edge(a, b) = ou else {
        return false;
    };
    match ov {
        Owner::Edge(c, e) => {
            // Two interface sets at a shared pattern vertex.
            [a, b].into_iter().any(|x| {
                (x == c || x == e) && {
                    let y = if x == a { b } else { a };
                    let z = if x == c { e } else { c };
                    in_end(u, x, y) && in_end(v, x, z)
                }
            })
        }
        Owner::Vertex(x) => (x == a && in_end(u, a, b)) || (x == b && in_end(u, b, a)),
        Owner::Triangle(x, y, z) => {
            let on_triangle = [x, y, z].contains(&a) && [x, y, z].contains(&b);
            on_triangle && in_end(u, a, b) && in_end(u, b, a)
        }
    }
}
