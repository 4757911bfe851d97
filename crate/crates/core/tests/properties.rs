use std::collections::HashSet;

use eqbcast::covers::{cycle_tvc, minimum_cover_exact, verify_cover, wcds_from_dominating, CoverKind};
use eqbcast::graph::{
    boundary, connectivity_report, contract_partition, generate, open_ear_decomposition, parse_graph,
    sparse_2connected_spanning, to_json, to_text, Family, Graph, VertexSet,
};
use eqbcast::host::{identity_of, progression_free_set, Host, ImplicitCycleHost};
use eqbcast::lp::{
    enumerate_boundaries, enumerate_boundaries_raw, lower_bound_opt, nu_balls_star, nu_bnd_star, packing_value,
    rational, tau_balls_star, tau_bnd_star, LpObject, LpProgram, LpSolution,
};
use eqbcast::protocol::{check_protocol, run, simple_protocol, tvc_protocol, CheckMode, InputAssignment, Protocol};
use eqbcast::word::ceil_log2;
use eqbcast::{BitString, Caps};
use proptest::prelude::*;

fn connected(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n, 15u32..=85, any::<u64>()).prop_map(|(n, p_percent, seed)| {
        generate(&Family::RandomConnected { n, p_percent, seed }).unwrap()
    })
}

/// Cycle `0, 1, ..., n-1` plus a random selection of chords.
fn hamiltonian(max_n: usize) -> impl Strategy<Value = Graph> {
    (4..=max_n, prop::collection::vec(any::<bool>(), 64)).prop_map(|(n, picks)| {
        let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        let chords = (0..n).flat_map(|u| (u + 2..n).map(move |v| (u, v))).filter(|&(u, v)| !(u == 0 && v == n - 1));
        edges.extend(chords.zip(picks.iter().cycle()).filter(|(_, &b)| b).map(|(e, _)| e));
        Graph::new(n, edges).unwrap()
    })
}

fn word(rng_bits: &[bool]) -> BitString {
    BitString::new(rng_bits.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn trivial_boundaries_are_closed_neighborhoods(g in connected(10)) {
        for v in 0..g.n() {
            let b = boundary(&g, &VertexSet::new(g.n(), [v]).unwrap()).unwrap();
            let ball = VertexSet::new(g.n(), g.neighbors(v).chain([v])).unwrap();
            prop_assert_eq!(b, ball);
        }
    }

    #[test]
    fn boundary_is_symmetric_under_complement(g in connected(9), mask in any::<u64>()) {
        let s = VertexSet::from_mask(g.n(), mask & ((1 << g.n()) - 1));
        prop_assume!(!s.is_empty() && s.len() < g.n());
        prop_assert_eq!(boundary(&g, &s).unwrap(), boundary(&g, &s.complement()).unwrap());
    }

    #[test]
    fn sparse_spanning_subgraph_and_ears(g in hamiltonian(12)) {
        let h = sparse_2connected_spanning(&g).unwrap();
        prop_assert_eq!(h.n(), g.n());
        prop_assert!(connectivity_report(&h).two_connected);
        prop_assert!(h.edge_count() <= 2 * g.n() - 3);
        let ears = open_ear_decomposition(&g).unwrap();
        prop_assert!(ears.verify(&g));
        let used = ears.initial_cycle.edges.len() + ears.ears.iter().map(|e| e.edges.len()).sum::<usize>();
        prop_assert_eq!(used, g.edge_count());
    }

    #[test]
    fn contraction_keeps_cross_edges(g in connected(10), labels in prop::collection::vec(0usize..3, 10)) {
        let n = g.n();
        let mut parts: Vec<Vec<usize>> = vec![Vec::new(); 3];
        for v in 0..n {
            parts[labels[v]].push(v);
        }
        parts.retain(|p| !p.is_empty());
        let sets: Vec<VertexSet> = parts.iter().map(|p| VertexSet::new(n, p.iter().copied()).unwrap()).collect();
        let c = contract_partition(&g, &sets).unwrap();
        let cross = g.edges().iter().filter(|&&(u, v)| c.part_of[u] != c.part_of[v]).count();
        prop_assert_eq!(c.graph.edge_count(), cross);
    }

    #[test]
    fn generation_and_io_round_trip(n in 2usize..12, p in 20u32..90, seed in any::<u64>()) {
        let fam = Family::RandomConnected { n, p_percent: p, seed };
        let g = generate(&fam).unwrap();
        prop_assert!(g.same_edges(&generate(&fam).unwrap()));
        prop_assert!(g.same_edges(&parse_graph(&to_text(&g)).unwrap()));
        prop_assert!(g.same_edges(&parse_graph(&to_json(&g)).unwrap()));
    }

    #[test]
    fn cover_inequalities(g in connected(8)) {
        let n = g.n();
        let dom = minimum_cover_exact(&g, CoverKind::Dominating).unwrap();
        let wds = minimum_cover_exact(&g, CoverKind::WeaklyConnectedDominating).unwrap();
        let vc = minimum_cover_exact(&g, CoverKind::VertexCover).unwrap();
        let tvc = minimum_cover_exact(&g, CoverKind::TotalVertexCover).unwrap();
        for cert in [&dom, &wds, &vc, &tvc] {
            prop_assert!(cert.verify(&g));
        }
        prop_assert!(dom.size() <= wds.size() && wds.size() < 2 * dom.size());
        prop_assert!(tvc.size() <= 2 * vc.size());
        let built = wcds_from_dominating(&g, &dom.set).unwrap();
        prop_assert!(built.verify(&g));
        prop_assert!(built.size() < 2 * dom.size());
        // a total vertex cover is both of its parts
        prop_assert!(verify_cover(&g, &tvc.set, CoverKind::VertexCover));
        prop_assert!(verify_cover(&g, &tvc.set, CoverKind::TotalDominating));
        prop_assert!(n >= tvc.size());
    }

    #[test]
    fn hamiltonian_graphs_have_small_tvc_down(g in hamiltonian(14)) {
        let s = cycle_tvc(g.n()).unwrap().set;
        prop_assert!(verify_cover(&g, &s, CoverKind::TvcDownWitness));
        prop_assert!(3 * s.len() <= 2 * (g.n() + 1));
    }

    #[test]
    fn lp_duality_and_ordering(g in connected(8)) {
        let tb = tau_bnd_star(&g).unwrap();
        let nb = nu_bnd_star(&g).unwrap();
        let ta = tau_balls_star(&g).unwrap();
        let na = nu_balls_star(&g).unwrap();
        prop_assert!(tb.verify(&g) && nb.verify(&g) && ta.verify(&g) && na.verify(&g));
        prop_assert_eq!(&tb.objective, &nb.objective);
        prop_assert_eq!(&ta.objective, &na.objective);
        prop_assert!(ta.objective <= tb.objective);
        let gamma = minimum_cover_exact(&g, CoverKind::Dominating).unwrap().size();
        prop_assert!(ta.objective <= rational(gamma as i64, 1));
        let raw = enumerate_boundaries_raw(&g).unwrap();
        let dedup = enumerate_boundaries(&g).unwrap();
        prop_assert!(dedup.len() <= raw.len());
        prop_assert_eq!(packing_value(&g, &raw), packing_value(&g, &dedup));
    }

    #[test]
    fn uniform_ball_cover_feasible_iff_regular(g in connected(9)) {
        let delta = g.max_degree() as i64;
        let n = g.n() as i64;
        let sol = LpSolution {
            program: LpProgram::CovBalls,
            objective: rational(n, delta + 1),
            values: (0..g.n()).map(|v| (LpObject::Vertex(v), rational(1, delta + 1))).collect(),
            dual: None,
        };
        prop_assert_eq!(sol.verify(&g), g.regular_degree().is_some());
    }

    #[test]
    fn progression_free_samples(m in 200u128..1u128 << 40, t in 2u32..6, picks in prop::collection::vec(any::<u64>(), 40)) {
        let b = progression_free_set(m, t).unwrap();
        prop_assert!(b.max_value() < m);
        let len = b.len();
        for chunk in picks.chunks(t as usize + 1) {
            if chunk.len() < t as usize + 1 {
                continue;
            }
            let xs: Vec<u128> = chunk.iter().map(|&r| b.nth(r as u128 % len).unwrap()).collect();
            let (sum, target) = (xs[..t as usize].iter().sum::<u128>(), xs[t as usize]);
            let trivial = xs[..t as usize].iter().all(|&x| x == target);
            prop_assert!(trivial || sum != t as u128 * target, "{xs:?}");
            prop_assert!(b.contains(target));
        }
    }

    #[test]
    fn implicit_host_copies_own_their_edges(n in 3usize..12, m in 2u128..100_000, picks in prop::collection::vec(any::<u128>(), 8)) {
        let host = ImplicitCycleHost::new(n, m).unwrap();
        for &r in &picks {
            let c = r % host.num_copies();
            for i in 0..n {
                let j = (i + 1) % n;
                let (p, q) = (host.place(c, i), host.place(c, j));
                prop_assert!(p < host.class_size());
                prop_assert!(host.is_edge(i, p, j, q));
                prop_assert_eq!(host.edge_copy(i, p, j, q), Some(c));
                prop_assert_eq!(host.edge_copy(j, q, i, p), Some(c));
            }
        }
    }

    #[test]
    fn word_to_copy_is_injective(n in 3usize..8, k in 1usize..24, codes in prop::collection::vec(any::<u128>(), 20)) {
        let host = ImplicitCycleHost::minimal_for(n, k).unwrap();
        let mut seen = HashSet::new();
        let distinct: HashSet<u128> = codes.iter().map(|c| c % (1 << k)).collect();
        for &c in &distinct {
            let w = BitString::from_u128(c, k);
            let copy = host.word_to_copy(&w).unwrap();
            prop_assert!(copy < host.num_copies());
            prop_assert!(seen.insert(copy));
            prop_assert_eq!(identity_of(&host, 0, &w).unwrap(), host.place(copy, 0));
        }
    }

    #[test]
    fn pi0_is_static_and_complete(g in connected(9), mask in any::<u64>(), k in 1usize..20,
                                  bits in prop::collection::vec(any::<bool>(), 9 * 20)) {
        let n = g.n();
        let s = VertexSet::from_mask(n, mask & ((1 << n) - 1));
        let p = simple_protocol(&g, &s, k).unwrap();
        let words: Vec<BitString> = (0..n).map(|v| word(&bits[v * 20..v * 20 + k])).collect();
        let mixed = run(&p, &InputAssignment::new(k, words.clone()).unwrap()).unwrap();
        let uniform = run(&p, &InputAssignment::uniform(n, words[0].clone())).unwrap();
        prop_assert_eq!(mixed.total_bits, uniform.total_bits);
        prop_assert_eq!(mixed.total_bits, s.len() * k);
        prop_assert!(uniform.all_accept());
    }

    #[test]
    fn correct_protocols_respect_the_lower_bound(g in connected(7), k in 1usize..3) {
        let s = minimum_cover_exact(&g, CoverKind::WeaklyConnectedDominating).unwrap().set;
        let p = simple_protocol(&g, &s, k).unwrap();
        let verdict = check_protocol(&p, CheckMode::Random { seed: 3, trials: 30 }, &Caps::default()).unwrap();
        prop_assert!(verdict.passed);
        let lb = lower_bound_opt(&g).unwrap().value;
        prop_assert!(rational(p.total_bits() as i64, 1) >= lb * rational(k as i64, 1));
    }

    #[test]
    fn pi2_message_width(n in 3usize..10, k in 1usize..40) {
        let g = generate(&Family::Cycle(n)).unwrap();
        let host = ImplicitCycleHost::minimal_for(n, k).unwrap();
        let width = ceil_log2(host.class_size());
        let s = cycle_tvc(n).unwrap().set;
        let p = tvc_protocol(&g, &s, host, k).unwrap();
        let r = run(&p, &InputAssignment::uniform(n, BitString::zeros(k))).unwrap();
        prop_assert!(r.all_accept());
        for v in s.iter() {
            prop_assert_eq!(r.messages[v].as_ref().unwrap().len(), width);
        }
        prop_assert_eq!(r.total_bits, s.len() * width);
    }
}
