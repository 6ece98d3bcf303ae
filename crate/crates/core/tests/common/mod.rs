#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sepnet::{validate_model, BenefitSpec, Graph, Model};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Distinct costs drawn from (0, 3), left in random node order, with a
/// geometric benefit whose delta lies in (0.05, 0.95).
pub fn random_model(rng: &mut ChaCha8Rng, n: usize) -> Model {
    loop {
        let costs: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..3.0)).collect();
        let delta = rng.gen_range(0.05..0.95);
        if costs.contains(&0.0) || delta == 0.05 {
            continue;
        }
        let m = validate_model(costs, BenefitSpec::Geometric { delta }).unwrap();
        if !m.costs().has_ties() {
            return m;
        }
    }
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty(n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(i, j);
            }
        }
    }
    g
}

pub fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Floyd–Warshall distances, `None` for unreachable pairs.
pub fn floyd_distances(g: &Graph) -> Vec<Vec<Option<usize>>> {
    let n = g.node_count();
    let mut d = vec![vec![None; n]; n];
    for i in 0..n {
        d[i][i] = Some(0);
        for j in 0..n {
            if g.has_edge(i, j) {
                d[i][j] = Some(1);
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|cur| a + b < cur) {
                        d[i][j] = Some(a + b);
                    }
                }
            }
        }
    }
    d
}

/// Utility of node `i` from Floyd–Warshall distances and an explicit degree
/// count; shares nothing with the library's evaluator.
pub fn reference_utility(g: &Graph, model: &Model, i: usize) -> f64 {
    let d = floyd_distances(g);
    let table = model.benefit().values();
    let mut u = 0.0;
    for j in 0..g.node_count() {
        if j == i {
            continue;
        }
        if let Some(k) = d[i][j] {
            u += table.get(k - 1).copied().unwrap_or(0.0);
        }
        if g.has_edge(i, j) {
            u -= model.costs().cost(i);
        }
    }
    u
}

pub fn reference_total(g: &Graph, model: &Model) -> f64 {
    (0..g.node_count())
        .map(|i| reference_utility(g, model, i))
        .sum()
}
