use mwis_core::border::{
    brute_force_border, brute_force_border_witnessed, build_plan, combine_esd,
    matching_from_independent_set, reconstruct_witness, ParticleProfiles, DEFAULT_TERMINAL_CAP,
};
use mwis_core::esd::{random_esd_instance, validate_esd, EsdInstance};
use mwis_core::matching::{brute_force_matching, max_weight_matching};
use mwis_core::oracle::OracleBudget;
use mwis_core::{ExtendedStripDecomposition, Graph, ParticleKind};

fn particle_profiles(inst: &EsdInstance, witnesses: bool) -> ParticleProfiles<u64> {
    let g = &inst.graph;
    let budget = OracleBudget::default();
    inst.esd
        .particles()
        .into_iter()
        .map(|p| {
            let sub = g.induced_subgraph(&p.members).unwrap();
            let local: Vec<usize> = p
                .members
                .iter()
                .enumerate()
                .filter(|(_, v)| inst.terminals.contains(v))
                .map(|(i, _)| i)
                .collect();
            let prof = if witnesses {
                brute_force_border_witnessed(&sub, &local, &budget).unwrap()
            } else {
                brute_force_border(&sub, &local, &budget).unwrap()
            };
            (p.kind, prof)
        })
        .collect()
}

#[test]
fn random_decompositions_match_exhaustive_profiles() {
    for seed in 0..150 {
        let n = 1 + (seed as usize % 12);
        let inst = random_esd_instance(n, 5, 5, 20, seed).unwrap();
        let profiles = particle_profiles(&inst, true);
        let got = combine_esd(
            &inst.graph,
            &inst.terminals,
            &inst.esd,
            &profiles,
            DEFAULT_TERMINAL_CAP,
            true,
        )
        .unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        let want =
            brute_force_border(&inst.graph, &inst.terminals, &OracleBudget::default()).unwrap();
        assert_eq!(got.table(), want.table(), "seed {seed}");
    }
}

#[test]
fn trivial_decomposition_passes_profile_through() {
    let g = Graph::from_edges(vec![3, 1, 4, 1, 5], [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
    let d = ExtendedStripDecomposition::trivial(5);
    let budget = OracleBudget::default();
    let whole = brute_force_border(&g, &[1, 3], &budget).unwrap();
    let profiles: ParticleProfiles<u64> = [(ParticleKind::Vertex(0), whole.clone())]
        .into_iter()
        .collect();
    let got = combine_esd(&g, &[1, 3], &d, &profiles, DEFAULT_TERMINAL_CAP, false).unwrap();
    assert_eq!(got, whole);
}

#[test]
fn single_edge_case_one_weights() {
    let g = Graph::from_edges(vec![2, 3], [(0, 1)]).unwrap();
    let mut d = ExtendedStripDecomposition::new(2);
    d.add_pattern_edge(0, 1).unwrap();
    d.set_edge(0, 1, &[0, 1], &[0], &[1]).unwrap();
    let inst = EsdInstance {
        graph: g.clone(),
        esd: d.clone(),
        terminals: vec![],
    };
    let profiles = particle_profiles(&inst, true);
    let in_it = vec![false; 2];
    let mut a = |k: ParticleKind| Ok(profiles[&k].get(0).unwrap());
    let plan = build_plan(&d, &in_it, &mut a).unwrap();
    let t = plan.tips[&(0, 1)];
    assert_eq!(plan.base_weight, 0);
    assert_eq!(plan.aux.weight(t, 0), Some(2));
    assert_eq!(plan.aux.weight(t, 1), Some(3));
    assert_eq!(plan.aux.weight(0, 1), Some(3));
    let m = max_weight_matching(&plan.aux);
    assert_eq!(m.weight, 3);

    let witness_of = |k: ParticleKind| profiles[&k].witness(0).map(<[usize]>::to_vec);
    let w = reconstruct_witness(&g, &d, &[], &[], &plan, &[(1, t)], &witness_of).unwrap();
    assert_eq!(w, vec![1]);
    let w = reconstruct_witness(&g, &d, &[], &[], &plan, &[], &witness_of).unwrap();
    assert!(w.is_empty());
}

/// Every matching of a small auxiliary graph.
fn all_matchings(edges: &[(usize, usize, u64)]) -> Vec<Vec<(usize, usize)>> {
    let mut out = vec![Vec::new()];
    for &(u, v, _) in edges {
        let extra: Vec<_> = out
            .iter()
            .filter(|m: &&Vec<(usize, usize)>| {
                m.iter().all(|&(a, b)| a != u && a != v && b != u && b != v)
            })
            .map(|m| {
                let mut m = m.clone();
                m.push((u, v));
                m
            })
            .collect();
        out.extend(extra);
    }
    out
}

#[test]
fn both_matching_claims_hold_exhaustively() {
    let budget = OracleBudget::default();
    for seed in 1000..1060 {
        let n = 2 + (seed as usize % 8);
        let inst = random_esd_instance(n, 4, 3, 9, seed).unwrap();
        assert!(validate_esd(&inst.graph, &inst.esd, false).is_ok());
        let g = &inst.graph;
        let t = &inst.terminals;
        let profiles = particle_profiles(&inst, true);
        let truth = brute_force_border(g, t, &budget).unwrap();
        for mask in 0..1usize << t.len() {
            let i_t: Vec<usize> = (0..t.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| t[i])
                .collect();
            if !g.is_independent(&i_t) {
                continue;
            }
            let mut in_it = vec![false; g.len()];
            i_t.iter().for_each(|&v| in_it[v] = true);
            let local = |k: ParticleKind| {
                let prof = &profiles[&k];
                let labels: Vec<usize> = prof
                    .terminals()
                    .iter()
                    .copied()
                    .filter(|l| i_t.contains(l))
                    .collect();
                prof.mask_of(&labels).unwrap()
            };
            let mut a = |k: ParticleKind| Ok(profiles[&k].get(local(k)).unwrap());
            let plan = build_plan(&inst.esd, &in_it, &mut a).unwrap();
            let best = plan.base_weight + brute_force_matching(&plan.aux).weight;
            assert_eq!(Some(best), truth.get(mask), "seed {seed} mask {mask}");

            // Independent set to matching.
            for s in 0u32..1 << g.len() {
                let set: Vec<usize> = (0..g.len()).filter(|v| s >> v & 1 == 1).collect();
                if !g.is_independent(&set) || t.iter().any(|v| set.contains(v) != i_t.contains(v)) {
                    continue;
                }
                let mut in_i = vec![false; g.len()];
                set.iter().for_each(|&v| in_i[v] = true);
                let pairs = matching_from_independent_set(&inst.esd, &plan, &in_i).unwrap();
                let w: u64 = pairs
                    .iter()
                    .map(|&(u, v)| plan.aux.weight(u, v).unwrap())
                    .sum();
                assert!(g.weight_of(&set) <= plan.base_weight + w, "seed {seed}");
            }

            // Matching to independent set.
            let witness_of =
                |k: ParticleKind| profiles[&k].witness(local(k)).map(<[usize]>::to_vec);
            for m in all_matchings(plan.aux.edges()) {
                reconstruct_witness(g, &inst.esd, t, &i_t, &plan, &m, &witness_of)
                    .unwrap_or_else(|e| panic!("seed {seed}: {e}"));
            }
        }
    }
}
