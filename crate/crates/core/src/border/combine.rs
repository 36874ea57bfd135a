//! Combining particle profiles into the profile of the whole graph by a
//! reduction to maximum-weight matching.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::for_each_independent_subset;
use super::profile::BorderProfile;
use crate::error::{Error, Result};
use crate::esd::{ExtendedStripDecomposition, ParticleKind};
use crate::graph::WeightedGraph;
use crate::matching::{max_weight_matching, AuxGraph};
use crate::num::Weight;

/// Profiles of `(G[A], w, T ∩ A)` keyed by particle.
pub type ParticleProfiles<W> = HashMap<ParticleKind, BorderProfile<W>>;

/// Everything built for one independent `I_T`: the base particles `𝒫` with
/// total value `a_0`, and the auxiliary graph `(H', w')` whose vertices
/// `0..|V(H)|` are the pattern vertices followed by one extra vertex `t_e` per
/// pattern edge that needs it.
#[derive(Clone, Debug)]
pub struct CombinationPlan<W> {
    pub forced: Vec<bool>,
    /// `enforcer[x] = Some(y)` when `xy` is the enforcer of `x`.
    pub enforcer: Vec<Option<usize>>,
    pub base_particles: Vec<ParticleKind>,
    pub base_weight: W,
    pub aux: AuxGraph<W>,
    /// `t_e` for the pattern edges `e = (x, y)`, `x < y`, that have one.
    pub tips: BTreeMap<(usize, usize), usize>,
}

fn tri(x: usize, y: usize, z: usize) -> ParticleKind {
    let mut a = [x, y, z];
    a.sort_unstable();
    ParticleKind::Triangle(a[0], a[1], a[2])
}

/// `plus - Σ minus`, failing if negative.
fn difference<W: Weight>(plus: W, minus: &[W], what: impl FnOnce() -> String) -> Result<W> {
    let v = plus.wide() - minus.iter().map(|m| m.wide()).sum::<i128>();
    W::narrow(v)
        .ok_or_else(|| Error::Invariant(format!("auxiliary weight {v} is negative for {}", what())))
}

/// Build the plan for the terminal subset marked in `in_it` (over positions
/// of the decomposed graph). `a` returns `a(A)` for a particle.
pub fn build_plan<W: Weight>(
    d: &ExtendedStripDecomposition,
    in_it: &[bool],
    a: &mut dyn FnMut(ParticleKind) -> Result<W>,
) -> Result<CombinationPlan<W>> {
    let h = d.pattern();
    let n = h.len();
    let mut forced = vec![false; n];
    let mut enforcer = vec![None; n];
    for x in 0..n {
        for &y in h.neighbors(x) {
            if d.end_set(x, y).iter().any(|&v| in_it[v]) {
                if let Some(z) = enforcer[x] {
                    return Err(Error::Invariant(format!(
                        "I_T meets the ends of both {x}-{z} and {x}-{y} at {x}; it cannot be independent"
                    )));
                }
                forced[x] = true;
                enforcer[x] = Some(y);
            }
        }
    }
    let enforces = |x: usize, y: usize| enforcer[x] == Some(y);
    let both = |x: usize, y: usize| enforces(x, y) && enforces(y, x);

    let mut base = Vec::new();
    for x in 0..n {
        if !forced[x] {
            base.push(ParticleKind::Vertex(x));
        }
    }
    for (x, y, z) in h.triangles() {
        if !(both(x, y) || both(y, z) || both(x, z)) {
            base.push(ParticleKind::Triangle(x, y, z));
        }
    }

    let mut aux = AuxGraph::new(n);
    let mut tips = BTreeMap::new();
    for (x, y) in h.edges() {
        let interior = ParticleKind::Interior(x, y);
        let full = ParticleKind::Full(x, y);
        let tri_sum = |a: &mut dyn FnMut(ParticleKind) -> Result<W>| -> Result<Vec<W>> {
            h.triangles_on(x, y)
                .into_iter()
                .map(|z| a(tri(x, y, z)))
                .collect()
        };
        match (forced[x], forced[y]) {
            (false, false) => {
                let t = aux.add_vertex();
                tips.insert((x, y), t);
                let (ai, avx, avy) = (
                    a(interior)?,
                    a(ParticleKind::Vertex(x))?,
                    a(ParticleKind::Vertex(y))?,
                );
                let wx = difference(a(ParticleKind::Half(x, y))?, &[ai, avx], || {
                    format!("t_e{x} on {x}-{y}")
                })?;
                let wy = difference(a(ParticleKind::Half(y, x))?, &[ai, avy], || {
                    format!("t_e{y} on {x}-{y}")
                })?;
                let mut minus = vec![ai, avx, avy];
                minus.extend(tri_sum(a)?);
                let wxy = difference(a(full)?, &minus, || format!("edge {x}-{y}, both ends free"))?;
                aux.add_edge(t, x, wx)?;
                aux.add_edge(t, y, wy)?;
                aux.add_edge(x, y, wxy)?;
                base.push(interior);
            }
            (fx, fy) if fx != fy => {
                let (f, u) = if fx { (x, y) } else { (y, x) };
                if enforces(f, u) {
                    let mut minus = vec![a(ParticleKind::Half(f, u))?, a(ParticleKind::Vertex(u))?];
                    minus.extend(tri_sum(a)?);
                    let w = difference(a(full)?, &minus, || {
                        format!("edge {x}-{y}, {f} forced by it")
                    })?;
                    aux.add_edge(x, y, w)?;
                    base.push(ParticleKind::Half(f, u));
                } else {
                    let t = aux.add_vertex();
                    tips.insert((x, y), t);
                    let minus = [a(interior)?, a(ParticleKind::Vertex(u))?];
                    let w = difference(a(ParticleKind::Half(u, f))?, &minus, || {
                        format!("t_e{u} on {x}-{y}, {f} forced elsewhere")
                    })?;
                    aux.add_edge(t, u, w)?;
                    base.push(interior);
                }
            }
            _ => base.push(match (enforces(x, y), enforces(y, x)) {
                (false, false) => interior,
                (true, false) => ParticleKind::Half(x, y),
                (false, true) => ParticleKind::Half(y, x),
                (true, true) => full,
            }),
        }
    }
    let mut base_weight = W::zero();
    for &p in &base {
        base_weight = base_weight
            .checked_add(&a(p)?)
            .ok_or_else(|| Error::Capacity("base weight overflows the weight type".into()))?;
    }
    Ok(CombinationPlan {
        forced,
        enforcer,
        base_particles: base,
        base_weight,
        aux,
        tips,
    })
}

/// The particle family `𝒫_M` obtained from the base family by applying the
/// swaps selected by the auxiliary matching `pairs`.
fn particles_for_matching<W: Weight>(
    d: &ExtendedStripDecomposition,
    plan: &CombinationPlan<W>,
    pairs: &[(usize, usize)],
) -> Result<BTreeSet<ParticleKind>> {
    let h = d.pattern();
    let n = h.len();
    let tip_owner: HashMap<usize, (usize, usize)> =
        plan.tips.iter().map(|(&e, &t)| (t, e)).collect();
    let mut set: BTreeSet<ParticleKind> = plan.base_particles.iter().copied().collect();
    for &(u, v) in pairs {
        let (u, v) = (u.min(v), u.max(v));
        if v < n {
            if !h.has_edge(u, v) {
                return Err(Error::Invariant(format!(
                    "matched pair {u}-{v} is not a pattern edge"
                )));
            }
            set.insert(ParticleKind::Full(u, v));
            for k in [
                ParticleKind::Half(u, v),
                ParticleKind::Half(v, u),
                ParticleKind::Interior(u, v),
                ParticleKind::Vertex(u),
                ParticleKind::Vertex(v),
            ] {
                set.remove(&k);
            }
            for z in h.triangles_on(u, v) {
                set.remove(&tri(u, v, z));
            }
        } else {
            let &(x, y) = tip_owner.get(&v).ok_or_else(|| {
                Error::Invariant(format!(
                    "matched vertex {v} is neither pattern vertex nor t_e"
                ))
            })?;
            if u != x && u != y {
                return Err(Error::Invariant(format!(
                    "t_e of {x}-{y} matched to foreign vertex {u}"
                )));
            }
            let other = if u == x { y } else { x };
            set.insert(ParticleKind::Half(u, other));
            set.remove(&ParticleKind::Interior(x, y));
            set.remove(&ParticleKind::Vertex(u));
        }
    }
    Ok(set)
}

/// Assemble `I_M`, the union of the particle witnesses over `𝒫_M`, and check
/// that it is independent, meets the terminals exactly in `i_t`, and weighs at
/// least `a_0 + w'(M)`. `terminals` and `i_t` are positions in `g`;
/// `witness_of` yields particle witnesses as labels. Returns positions.
pub fn reconstruct_witness<W: Weight>(
    g: &WeightedGraph<W>,
    d: &ExtendedStripDecomposition,
    terminals: &[usize],
    i_t: &[usize],
    plan: &CombinationPlan<W>,
    pairs: &[(usize, usize)],
    witness_of: &dyn Fn(ParticleKind) -> Option<Vec<usize>>,
) -> Result<Vec<usize>> {
    let index = g.label_index();
    let mut chosen = vec![false; g.len()];
    for kind in particles_for_matching(d, plan, pairs)? {
        let w = witness_of(kind)
            .ok_or_else(|| Error::Contract(format!("no witness for particle {kind:?}")))?;
        for l in w {
            let v = *index
                .get(&l)
                .ok_or_else(|| Error::Invariant(format!("witness label {l} not in graph")))?;
            chosen[v] = true;
        }
    }
    let set: Vec<usize> = (0..g.len()).filter(|&v| chosen[v]).collect();
    if !g.is_independent(&set) {
        let (u, v) = g
            .edges()
            .into_iter()
            .find(|&(u, v)| chosen[u] && chosen[v])
            .expect("an edge inside the set");
        return Err(Error::Invariant(format!(
            "reconstructed set contains edge {u}-{v} (particles {:?}, matching {pairs:?})",
            particles_for_matching(d, plan, pairs)?
        )));
    }
    let mut in_it = vec![false; g.len()];
    for &v in i_t {
        in_it[v] = true;
    }
    if let Some(&v) = terminals.iter().find(|&&v| chosen[v] != in_it[v]) {
        return Err(Error::Invariant(format!(
            "reconstructed set disagrees with I_T on terminal {v}"
        )));
    }
    let promised = plan.base_weight.wide()
        + pairs
            .iter()
            .map(|&(u, v)| plan.aux.weight(u, v).map_or(0, |w| w.wide()))
            .sum::<i128>();
    if g.weight_of(&set).wide() < promised {
        return Err(Error::Invariant(format!(
            "reconstructed set weighs {} < a_0 + w'(M) = {promised}",
            g.weight_of(&set)
        )));
    }
    Ok(set)
}

/// The auxiliary matching induced by an independent set `I` (marked over
/// positions) that agrees with the plan's `I_T`: per pattern edge, `xy` when
/// `I` meets both ends, `t_e x` when it meets only the end at `x`. Ends at
/// forced pattern vertices are already settled by the base particles and
/// contribute nothing on their own. Fails if a needed auxiliary edge is
/// missing or the pairs do not form a matching.
pub fn matching_from_independent_set<W: Weight>(
    d: &ExtendedStripDecomposition,
    plan: &CombinationPlan<W>,
    in_i: &[bool],
) -> Result<Vec<(usize, usize)>> {
    let mut pairs = Vec::new();
    for (x, y) in d.pattern().edges() {
        let ix = d.end_set(x, y).iter().any(|&v| in_i[v]);
        let iy = d.end_set(y, x).iter().any(|&v| in_i[v]);
        let tip = |u: usize| plan.tips.get(&(x, y)).map(|&t| (u, t));
        let pair = match (plan.forced[x], plan.forced[y]) {
            (false, false) => match (ix, iy) {
                (true, true) => Some((x, y)),
                (true, false) => tip(x),
                (false, true) => tip(y),
                (false, false) => continue,
            },
            (true, true) => continue,
            (fx, _) => {
                let (f, u, iu) = if fx { (x, y, iy) } else { (y, x, ix) };
                if !iu {
                    continue;
                }
                if plan.enforcer[f] == Some(u) {
                    Some((x, y))
                } else {
                    tip(u)
                }
            }
        };
        let pair = pair
            .filter(|&(u, v)| plan.aux.weight(u, v).is_some())
            .ok_or_else(|| {
                Error::Invariant(format!(
                    "no auxiliary edge for pattern edge {x}-{y} (ends {ix}/{iy})"
                ))
            })?;
        pairs.push((pair.0.min(pair.1), pair.0.max(pair.1)));
    }
    let mut used = BTreeSet::new();
    for &(u, v) in &pairs {
        if !used.insert(u) || !used.insert(v) {
            return Err(Error::Invariant(format!("pairs {pairs:?} share a vertex")));
        }
    }
    pairs.sort_unstable();
    Ok(pairs)
}

/// Profile of `(g, w, terminals)` from the profiles of all particles of `d`.
/// `terminals` are positions in `g`; the result is keyed by their labels in
/// the given order. With `witnesses`, every particle profile must carry
/// witnesses and every finite cell of the result gets a verified witness.
pub fn combine_esd<W: Weight>(
    g: &WeightedGraph<W>,
    terminals: &[usize],
    d: &ExtendedStripDecomposition,
    profiles: &ParticleProfiles<W>,
    terminal_cap: usize,
    witnesses: bool,
) -> Result<BorderProfile<W>> {
    let labels: Vec<usize> = terminals.iter().map(|&v| g.label(v)).collect();
    let mut out = if witnesses {
        BorderProfile::with_witnesses(labels, terminal_cap)?
    } else {
        BorderProfile::new(labels, terminal_cap)?
    };
    let mut is_terminal = vec![usize::MAX; g.len()];
    for (i, &v) in terminals.iter().enumerate() {
        is_terminal[v] = i;
    }

    // Per particle: its profile and where each parent terminal bit goes.
    let mut lookup: HashMap<ParticleKind, (&BorderProfile<W>, Vec<(usize, usize)>)> =
        HashMap::new();
    for p in d.particles() {
        let prof = profiles
            .get(&p.kind)
            .ok_or_else(|| Error::Contract(format!("missing profile for particle {:?}", p.kind)))?;
        if witnesses && !prof.has_witnesses() {
            return Err(Error::Contract(format!(
                "profile of particle {:?} has no witnesses",
                p.kind
            )));
        }
        let mut bits = Vec::new();
        for &v in &p.members {
            if is_terminal[v] != usize::MAX {
                let child = prof.mask_of(&[g.label(v)])?;
                bits.push((is_terminal[v], child.trailing_zeros() as usize));
            }
        }
        if bits.len() != prof.terminals().len() {
            return Err(Error::Contract(format!(
                "profile of particle {:?} has {} terminals, expected {}",
                p.kind,
                prof.terminals().len(),
                bits.len()
            )));
        }
        lookup.insert(p.kind, (prof, bits));
    }
    let child_mask = |bits: &[(usize, usize)], mask: u64| -> usize {
        bits.iter()
            .filter(|&&(i, _)| mask >> i & 1 == 1)
            .fold(0, |m, &(_, b)| m | 1 << b)
    };

    let mut in_it = vec![false; g.len()];
    for_each_independent_subset(g, terminals, |mask| {
        let i_t: Vec<usize> = (0..terminals.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| terminals[i])
            .collect();
        for &v in &i_t {
            in_it[v] = true;
        }
        let mut a = |kind: ParticleKind| -> Result<W> {
            let (prof, bits) = &lookup[&kind];
            prof.get(child_mask(bits, mask)).ok_or_else(|| {
                Error::Invariant(format!(
                    "particle {kind:?} has value -inf for an independent I_T"
                ))
            })
        };
        let plan = build_plan(d, &in_it, &mut a)?;
        let m = max_weight_matching(&plan.aux);
        let value = plan
            .base_weight
            .checked_add(&m.weight)
            .ok_or_else(|| Error::Capacity("profile value overflows the weight type".into()))?;
        let witness = if witnesses {
            let witness_of = |kind: ParticleKind| {
                let (prof, bits) = &lookup[&kind];
                prof.witness(child_mask(bits, mask)).map(<[usize]>::to_vec)
            };
            let set = reconstruct_witness(g, d, terminals, &i_t, &plan, &m.pairs, &witness_of)?;
            if g.weight_of(&set) != value {
                return Err(Error::Invariant(format!(
                    "witness weighs {} but the cell value is {value}",
                    g.weight_of(&set)
                )));
            }
            Some(set.into_iter().map(|v| g.label(v)).collect())
        } else {
            None
        };
        out.set_with_witness(mask as usize, Some(value), witness);
        for &v in &i_t {
            in_it[v] = false;
        }
        Ok(())
    })?;
    Ok(out)
}
