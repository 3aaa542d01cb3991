//! Property tests for the graph machinery and distributional checks of the
//! sampler against the exact oracle.

mod common;

use std::collections::HashMap;

use proptest::prelude::*;
use worm_ising::{
    enumerate, run, sample_rng, step, transition_matrix, ChainParams, EdgeSubset, Graph,
    GraphKind, RunOptions, WormState,
};

fn suite_graph(idx: usize) -> Graph {
    common::suite().swap_remove(idx % 6).1
}

/// Independent BFS distance, kept free of the library's path machinery.
fn bfs_distance(g: &Graph, from: u32, to: u32, restricted: &EdgeSubset) -> Option<u32> {
    let mut dist: HashMap<u32, u32> = HashMap::new();
    dist.insert(from, 0);
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(w) = queue.pop_front() {
        let d = dist[&w];
        if w == to {
            return Some(d);
        }
        for &nb in g.neighbors(w) {
            let e = g.edge_id(w, nb).unwrap();
            if restricted.contains(e) && !dist.contains_key(&nb) {
                dist.insert(nb, d + 1);
                queue.push_back(nb);
            }
        }
    }
    None
}

/// Random element of the cycle space: XOR of a random subset of fundamental
/// cycles of a BFS spanning tree.
fn random_even_subgraph(g: &Graph, picks: &[bool]) -> EdgeSubset {
    let mut parent: Vec<Option<u32>> = vec![None; g.n()];
    let mut seen = vec![false; g.n()];
    let mut tree = EdgeSubset::empty(g.m());
    let mut queue = std::collections::VecDeque::from([0u32]);
    seen[0] = true;
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if !seen[v as usize] {
                seen[v as usize] = true;
                parent[v as usize] = Some(u);
                tree.insert(g.edge_id(u, v).unwrap());
                queue.push_back(v);
            }
        }
    }
    let root_path = |mut v: u32| -> Vec<u32> {
        let mut p = vec![v];
        while let Some(w) = parent[v as usize] {
            p.push(w);
            v = w;
        }
        p
    };
    let mut b = EdgeSubset::empty(g.m());
    let mut k = 0;
    for e in 0..g.m() as u32 {
        if tree.contains(e) {
            continue;
        }
        let take = picks.get(k).copied().unwrap_or(false);
        k += 1;
        if !take {
            continue;
        }
        // fundamental cycle: the non-tree edge plus the tree paths to the LCA
        let (u, v) = g.endpoints(e);
        b.flip(e);
        let (pu, pv) = (root_path(u), root_path(v));
        let common_suffix = pu
            .iter()
            .rev()
            .zip(pv.iter().rev())
            .take_while(|(a, b)| a == b)
            .count();
        for path in [&pu, &pv] {
            for w in path[..path.len() - common_suffix + 1].windows(2) {
                b.flip(g.edge_id(w[0], w[1]).unwrap());
            }
        }
    }
    b
}

proptest! {
    #[test]
    fn boundary_always_even(gi in 0usize..6, bits in any::<u64>()) {
        let g = suite_graph(gi);
        let mask = bits & ((1u64 << g.m()) - 1);
        let a = EdgeSubset::from_bits(g.m(), mask);
        prop_assert_eq!(g.boundary(&a).len() % 2, 0);
    }

    #[test]
    fn decomposition_partitions_even_subgraphs(gi in 0usize..6, picks in prop::collection::vec(any::<bool>(), 8)) {
        let g = suite_graph(gi);
        let b = random_even_subgraph(&g, &picks);
        prop_assert!(g.boundary(&b).is_empty());
        let cycles = g.decompose_even_subgraph(&b).unwrap();
        // edge-disjoint, all degrees 2, union equals input
        let mut union = EdgeSubset::empty(g.m());
        for c in &cycles {
            let mut degs: HashMap<u32, u32> = HashMap::new();
            for (u, v) in c.oriented_edges() {
                let e = g.edge_id(u, v).unwrap();
                prop_assert!(!union.contains(e), "cycles share edge {e}");
                union.insert(e);
                *degs.entry(u).or_insert(0) += 1;
                *degs.entry(v).or_insert(0) += 1;
            }
            prop_assert!(degs.values().all(|&d| d == 2));
        }
        prop_assert_eq!(&union, &b);
        // deterministic
        let again = g.decompose_even_subgraph(&b).unwrap();
        prop_assert_eq!(cycles, again);
    }

    #[test]
    fn shortest_path_matches_bfs(gi in 0usize..6, u in 0u32..9, v in 0u32..9) {
        let g = suite_graph(gi);
        let (u, v) = (u % g.n() as u32, v % g.n() as u32);
        prop_assume!(u != v);
        let full = g.full_edge_set();
        let p = g.shortest_path(u, v, &full).unwrap();
        let d = bfs_distance(&g, u, v, &full).unwrap();
        prop_assert_eq!(p.len() as u32 - 1, d);
        prop_assert_eq!(p.first().copied(), Some(u.min(v)));
        prop_assert_eq!(p.last().copied(), Some(u.max(v)));
        // consecutive vertices adjacent, call idempotent
        for w in p.windows(2) {
            prop_assert!(g.edge_id(w[0], w[1]).is_some());
        }
        prop_assert_eq!(&p, &g.shortest_path(u, v, &full).unwrap());
    }

    #[test]
    fn lambda_total_is_binomial_sum(gi in 0usize..6, xi in 1u32..10) {
        let g = suite_graph(gi);
        let x = xi as f64 / 10.0;
        let d = enumerate(&g, x).unwrap();
        let expected = (1.0 + x).powi(g.m() as i32);
        prop_assert!((d.lambda_total() - expected).abs() < 1e-9 * expected);
    }
}

#[test]
fn one_step_law_matches_oracle_row() {
    // empirical one-step distribution from {01} on K3 at x = 0.5 vs the
    // exact transition-matrix row, per state within 4 sigma
    let g = Graph::generate(GraphKind::Complete(3)).unwrap();
    let p = ChainParams::from_x(0.5).unwrap();
    let tm = transition_matrix(&g, 0.5).unwrap();
    let start_bits = 1u64 << g.edge_id(0, 1).unwrap();
    let row = tm.index_of(start_bits).unwrap();

    let trials = 1_000_000u64;
    let mut rng = sample_rng(21, 0, 0);
    let mut counts: HashMap<u64, u64> = HashMap::new();
    for _ in 0..trials {
        let mut s =
            WormState::from_subset(&g, EdgeSubset::from_bits(g.m(), start_bits)).unwrap();
        step(&g, &mut s, &p, &mut rng);
        *counts.entry(s.subset().bits()).or_insert(0) += 1;
    }
    for (j, &target_bits) in tm.states().iter().enumerate() {
        let expect = tm.prob(row, j);
        let got = *counts.get(&target_bits).unwrap_or(&0) as f64 / trials as f64;
        let sigma = (expect * (1.0 - expect) / trials as f64).sqrt();
        assert!(
            (got - expect).abs() <= 4.0 * sigma + 1e-12,
            "state {target_bits:#b}: got {got}, expect {expect}"
        );
    }
}

#[test]
fn long_run_class_frequencies_k4() {
    // chi-square of strided class visits against exact pi on K4
    let g = Graph::generate(GraphKind::Complete(4)).unwrap();
    let x = 0.5;
    let p = ChainParams::from_x(x).unwrap();
    let dist = enumerate(&g, x).unwrap();
    let mut s = WormState::empty(&g);
    let mut rng = sample_rng(17, 0, 0);
    let stride = 64u64;
    let mut counts: HashMap<Option<(u32, u32)>, u64> = HashMap::new();
    run(
        &g,
        &mut s,
        1_000_000,
        &p,
        &mut rng,
        RunOptions::default(),
        |t, st| {
            if t % stride == 0 {
                *counts.entry(st.defects()).or_insert(0) += 1;
            }
        },
    );
    let total: u64 = counts.values().sum();
    let mut stat = 0.0;
    let mut classes = vec![(None, dist.pi_c0())];
    for u in 0..g.n() as u32 {
        for v in u + 1..g.n() as u32 {
            classes.push((Some((u, v)), dist.pi_cuv(u, v)));
        }
    }
    for (key, pi) in &classes {
        let expect = pi * total as f64;
        let got = *counts.get(key).unwrap_or(&0) as f64;
        stat += (got - expect).powi(2) / expect;
    }
    let pval = common::chi2_pvalue(stat, classes.len() as f64 - 1.0);
    assert!(pval > 0.001, "chi2 = {stat}, p = {pval}");
}
