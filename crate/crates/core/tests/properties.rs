mod common;

use proptest::prelude::*;
use sepnet::clustering::{build_min_clustering_graph, decompose_links, min_clustering_value};
use sepnet::econ::{node_utility, total_utility};
use sepnet::graph::{all_pairs_distances, component_diameter, components, global_clustering};
use sepnet::oracle::enumerate_max;
use sepnet::stability::check_pairwise_stable;
use sepnet::synthesis::{core_periphery, is_generalized_star};
use sepnet::{synthesize, validate_model, BenefitSpec, Graph, Model};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::empty(n);
            let mut it = bits.into_iter();
            for i in 0..n {
                for j in i + 1..n {
                    if it.next().unwrap() {
                        g.add_edge(i, j);
                    }
                }
            }
            g
        })
    })
}

fn model_strategy(n: usize) -> impl Strategy<Value = Model> {
    (proptest::collection::vec(0.001f64..3.0, n), 0.05f64..0.95)
        .prop_map(|(costs, delta)| validate_model(costs, BenefitSpec::Geometric { delta }).unwrap())
}

fn graph_and_model(max_n: usize) -> impl Strategy<Value = (Graph, Model)> {
    graph_strategy(max_n).prop_flat_map(|g| {
        let n = g.node_count();
        (Just(g), model_strategy(n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn distances_are_a_metric(g in graph_strategy(9)) {
        let d = all_pairs_distances(&g);
        let n = g.node_count();
        for i in 0..n {
            prop_assert_eq!(d.get(i, i), Some(0));
            for j in 0..n {
                prop_assert_eq!(d.get(i, j), d.get(j, i));
                prop_assert_eq!(d.get(i, j) == Some(1), g.has_edge(i, j));
                for k in 0..n {
                    if let (Some(a), Some(b), Some(c)) = (d.get(i, j), d.get(j, k), d.get(i, k)) {
                        prop_assert!(c <= a + b);
                    }
                }
            }
        }
        let floyd = common::floyd_distances(&g);
        for i in 0..n {
            prop_assert_eq!(d.row(i), &floyd[i][..]);
        }
    }

    #[test]
    fn clustering_is_a_fraction(g in graph_strategy(10)) {
        if let Some(c) = global_clustering(&g) {
            prop_assert!((0.0..=1.0).contains(&c));
        }
    }

    #[test]
    fn components_follow_relabeling(g in graph_strategy(9), seed in any::<u64>()) {
        let perm = common::random_perm(&mut common::rng(seed), g.node_count());
        let mut mapped: Vec<Vec<usize>> = components(&g)
            .into_iter()
            .map(|c| {
                let mut c: Vec<usize> = c.into_iter().map(|v| perm[v]).collect();
                c.sort_unstable();
                c
            })
            .collect();
        mapped.sort();
        prop_assert_eq!(mapped, components(&g.relabeled(&perm)));
    }

    #[test]
    fn total_is_sum_of_node_utilities((g, m) in graph_and_model(7)) {
        let total = total_utility(&g, &m);
        let sum: f64 = (0..g.node_count()).map(|i| node_utility(&g, &m, i)).sum();
        prop_assert!((total - sum).abs() <= 1e-12 * total.abs().max(1.0));
        prop_assert!((total - common::reference_total(&g, &m)).abs() <= 1e-9);
    }

    #[test]
    fn isolated_node_changes_nothing((g, m) in graph_and_model(6), extra in 0.0f64..3.0) {
        let n = g.node_count();
        let mut costs = m.costs().as_slice().to_vec();
        costs.push(extra);
        let bigger = m.with_costs(costs).unwrap();
        let g2 = Graph::from_edges(n + 1, g.edges()).unwrap();
        prop_assert!((total_utility(&g, &m) - total_utility(&g2, &bigger)).abs() < 1e-12);
    }

    #[test]
    fn utility_is_label_free((g, m) in graph_and_model(7), seed in any::<u64>()) {
        let perm = common::random_perm(&mut common::rng(seed), g.node_count());
        let u = total_utility(&g, &m);
        let v = total_utility(&g.relabeled(&perm), &m.relabeled(&perm));
        prop_assert!((u - v).abs() < 1e-9);
    }

    #[test]
    fn diameter_two_welfare_formula((g, m) in graph_and_model(7)) {
        let n = g.node_count();
        let comps = components(&g);
        prop_assume!(comps.len() == 1 && n >= 2);
        prop_assume!(component_diameter(&g, &comps[0]).unwrap() <= 2);
        let ell = g.edge_count() as f64;
        let nc = n as f64;
        let costs: f64 = g.edges().iter().map(|&(i, j)| m.costs().cost(i) + m.costs().cost(j)).sum();
        let expected = 2.0 * ell * m.b(1) + (nc * (nc - 1.0) - 2.0 * ell) * m.b(2) - costs;
        prop_assert!((total_utility(&g, &m) - expected).abs() < 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn synthesis_matches_oracle(m in (2usize..=5).prop_flat_map(model_strategy)) {
        let en = synthesize(&m);
        prop_assume!(en.boundary_flags.is_empty());
        let best = enumerate_max(&m, 7).unwrap();
        prop_assert!((en.total_utility - best.max_utility).abs() <= 1e-9,
            "synth {} oracle {}", en.total_utility, best.max_utility);
    }

    #[test]
    fn synthesized_structure(m in (1usize..=12).prop_flat_map(model_strategy)) {
        let en = synthesize(&m);
        let perm = m.costs().sort_perm();
        let members = en.graph.non_isolated();
        let size = if en.m >= 2 { en.m } else { 0 };
        prop_assert_eq!(members.len(), size);
        for r in 0..m.n() {
            prop_assert_eq!(en.graph.degree(perm[r]) > 0, r < size);
        }
        if size >= 2 {
            prop_assert!(component_diameter(&en.graph, &members).unwrap() <= 2);
        }
        prop_assert!(en.core_k <= en.m.max(1));
        prop_assert!(is_generalized_star(&en.graph, &m).is_empty());
        let cp = core_periphery(&en, &m).unwrap();
        prop_assert!(cp.violations(&en.graph).is_empty());
        prop_assert_eq!(cp.core.len() + cp.periphery.len() + cp.isolated.len(), m.n());
    }

    #[test]
    fn synthesis_follows_relabeling(m in (2usize..=9).prop_flat_map(model_strategy), seed in any::<u64>()) {
        prop_assume!(!m.costs().has_ties());
        let perm = common::random_perm(&mut common::rng(seed), m.n());
        let a = synthesize(&m);
        let b = synthesize(&m.relabeled(&perm));
        prop_assert_eq!(a.graph.relabeled(&perm), b.graph);
        prop_assert_eq!(perm[a.hub], b.hub);
        prop_assert_eq!((a.m, a.core_k), (b.m, b.core_k));
    }

    #[test]
    fn homogeneous_costs_give_complete_star_or_empty(
        n in 3usize..=9,
        delta in 0.05f64..0.95,
        c in 0.0f64..4.0,
    ) {
        let m = validate_model(vec![c; n], BenefitSpec::Geometric { delta }).unwrap();
        let (b1, b2) = (m.b(1), m.b(2));
        let en = synthesize(&m);
        let star_limit = b1 + (n as f64 - 2.0) * b2 / 2.0;
        prop_assume!(![b1 - b2, star_limit].iter().any(|&x| (x - c).abs() < 1e-9));
        if c < b1 - b2 {
            prop_assert_eq!(en.graph, Graph::complete(n));
        } else if c < star_limit {
            prop_assert_eq!(en.graph, Graph::star(n, 0));
        } else {
            prop_assert_eq!(en.graph.edge_count(), 0);
        }
    }

    #[test]
    fn stability_is_label_free((g, m) in graph_and_model(5), seed in any::<u64>()) {
        prop_assume!(!m.costs().has_ties());
        let perm = common::random_perm(&mut common::rng(seed), g.node_count());
        let a = check_pairwise_stable(&g, &m);
        let b = check_pairwise_stable(&g.relabeled(&perm), &m.relabeled(&perm));
        prop_assert_eq!(a.stable, b.stable);
        prop_assert_eq!(a.sever_deviations.len(), b.sever_deviations.len());
        prop_assert_eq!(a.add_deviations.len(), b.add_deviations.len());
    }

    #[test]
    fn empty_graph_has_no_severances(m in (1usize..=7).prop_flat_map(model_strategy)) {
        let r = check_pairwise_stable(&Graph::empty(m.n()), &m);
        prop_assert!(r.sever_deviations.is_empty());
    }

    #[test]
    fn bound_formula_matches_construction(n in 2usize..=40, frac in 0.0f64..=1.0) {
        let top = n * (n - 1) / 2;
        let ell = (n - 1) + ((top - (n - 1)) as f64 * frac) as usize;
        let closed = min_clustering_value(n, ell).unwrap();
        let direct = global_clustering(&build_min_clustering_graph(n, ell).unwrap());
        match (closed, direct) {
            (Some(a), Some(b)) => prop_assert!((a - b).abs() <= 1e-12 * b.abs().max(f64::MIN_POSITIVE)),
            (a, b) => prop_assert_eq!(a, b),
        }
        prop_assert_eq!(build_min_clustering_graph(n, ell).unwrap().edge_count(), ell);
    }

    #[test]
    fn rounds_never_decrease(n in 2usize..=60, frac in 0.0f64..1.0) {
        let top = n * (n - 1) / 2;
        let ell = ((top as f64) * frac) as usize;
        prop_assume!(ell < top);
        let a = decompose_links(n, ell).unwrap();
        let b = decompose_links(n, ell + 1).unwrap();
        prop_assert!(b.p >= a.p);
        prop_assert!(a.residual + a.p + 2 <= n || (a.p == n - 1 && a.residual == 0));
    }
}

#[test]
fn bound_endpoints() {
    for n in 3..=40 {
        assert_eq!(min_clustering_value(n, n * (n - 1) / 2).unwrap(), Some(1.0));
        for ell in 2..n {
            assert_eq!(min_clustering_value(n, ell).unwrap(), Some(0.0));
        }
        assert_eq!(decompose_links(n, n * (n - 1) / 2).unwrap().residual, 0);
    }
}

#[test]
fn homogeneous_optimum_among_oracle_maximisers() {
    for n in 3..=5 {
        for &c in &[0.05, 0.3, 0.6, 1.2, 3.0] {
            let m = validate_model(vec![c; n], BenefitSpec::Geometric { delta: 0.6 }).unwrap();
            let best = enumerate_max(&m, 7).unwrap();
            let shapes = [Graph::complete(n), Graph::empty(n)];
            let hit = best
                .argmax_graphs
                .iter()
                .any(|g| shapes.contains(g) || (0..n).any(|center| *g == Graph::star(n, center)));
            assert!(hit, "n={n} c={c}");
        }
    }
}
