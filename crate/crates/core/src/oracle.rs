//! Exhaustive welfare maximisation over every graph on `n <= 8` nodes.
//!
//! Candidate graphs are bitmasks over the `C(n, 2)` edge slots in
//! lexicographic pair order `(0,1), (0,2), ..., (n-2,n-1)`. Each candidate
//! is scored with the full distance-based utility, so graphs of any
//! diameter are considered. The search space is cut into fixed contiguous
//! chunks; the merge step does not depend on how chunks are scheduled.

use rayon::prelude::*;
use serde::Serialize;

use crate::econ::{total_utility, Model};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Absolute tolerance for membership in the argmax set and for efficiency.
pub const ARGMAX_TOL: f64 = 1e-9;
pub const DEFAULT_N_CAP: usize = 7;
pub const HARD_N_CAP: usize = 8;

const CHUNK: u64 = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub n_cap: usize,
    /// Required in addition to `n_cap >= 8` before eight-node instances run.
    pub allow_n8: bool,
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            n_cap: DEFAULT_N_CAP,
            allow_n8: false,
            threads: None,
        }
    }
}

impl OracleConfig {
    pub fn with_cap(n_cap: usize) -> Self {
        OracleConfig {
            n_cap,
            allow_n8: n_cap >= HARD_N_CAP,
            threads: None,
        }
    }

    pub fn threads(mut self, threads: usize) -> Self {
        self.threads = Some(threads);
        self
    }

    fn check(&self, n: usize) -> Result<()> {
        if n > HARD_N_CAP {
            return Err(Error::SizeCap {
                n,
                cap: HARD_N_CAP,
                hint: " (hard limit)",
            });
        }
        if n > self.n_cap {
            return Err(Error::SizeCap {
                n,
                cap: self.n_cap,
                hint: "",
            });
        }
        if n == HARD_N_CAP && !self.allow_n8 {
            return Err(Error::SizeCap {
                n,
                cap: HARD_N_CAP - 1,
                hint: " (eight-node search needs the explicit override)",
            });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleResult {
    pub max_utility: f64,
    /// Every graph within [`ARGMAX_TOL`] of the maximum, in edge-mask order.
    #[serde(rename = "argmax")]
    pub argmax_graphs: Vec<Graph>,
    #[serde(rename = "evaluated")]
    pub graphs_evaluated: u64,
}

/// Edge slots in lexicographic order.
pub fn edge_slots(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect()
}

/// Graph whose edge set is the set bits of `mask`.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut g = Graph::empty(n);
    for (s, &(i, j)) in edge_slots(n).iter().enumerate() {
        if mask >> s & 1 == 1 {
            g.add_edge(i, j);
        }
    }
    g
}

/// Scores edge masks for one model without allocating per candidate.
struct Scorer {
    n: usize,
    slots: Vec<(usize, usize)>,
    costs: Vec<f64>,
    benefit: Vec<f64>,
}

impl Scorer {
    fn new(model: &Model) -> Self {
        let n = model.n();
        Scorer {
            n,
            slots: edge_slots(n),
            costs: model.costs().as_slice().to_vec(),
            benefit: (1..n).map(|d| model.b(d)).collect(),
        }
    }

    fn utility(&self, mask: u64) -> f64 {
        let mut adj = [0u16; HARD_N_CAP];
        let mut bits = mask;
        while bits != 0 {
            let s = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let (i, j) = self.slots[s];
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
        let mut total = 0.0;
        for i in 0..self.n {
            let mut seen: u16 = 1 << i;
            let mut frontier: u16 = seen;
            let mut benefit = 0.0;
            for &b in &self.benefit {
                let mut next = 0u16;
                let mut f = frontier;
                while f != 0 {
                    let v = f.trailing_zeros() as usize;
                    f &= f - 1;
                    next |= adj[v];
                }
                next &= !seen;
                if next == 0 {
                    break;
                }
                benefit += next.count_ones() as f64 * b;
                seen |= next;
                frontier = next;
            }
            total += benefit - adj[i].count_ones() as f64 * self.costs[i];
        }
        total
    }
}

struct ChunkBest {
    max: f64,
    near: Vec<(u64, f64)>,
}

fn scan(scorer: &Scorer, start: u64, end: u64) -> ChunkBest {
    let mut max = f64::NEG_INFINITY;
    let mut near: Vec<(u64, f64)> = Vec::new();
    for mask in start..end {
        let u = scorer.utility(mask);
        if u > max {
            max = u;
            near.retain(|&(_, v)| v >= max - ARGMAX_TOL);
        }
        if u >= max - ARGMAX_TOL {
            near.push((mask, u));
        }
    }
    ChunkBest { max, near }
}

fn run_in_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}

/// Maximum welfare over all graphs on the model's nodes, together with every
/// maximiser. `n_cap` bounds the instance size; passing 8 enables the
/// eight-node search.
pub fn enumerate_max(model: &Model, n_cap: usize) -> Result<OracleResult> {
    enumerate_max_with(model, &OracleConfig::with_cap(n_cap))
}

pub fn enumerate_max_with(model: &Model, config: &OracleConfig) -> Result<OracleResult> {
    let n = model.n();
    config.check(n)?;
    let scorer = Scorer::new(model);
    let total: u64 = 1 << scorer.slots.len();
    let chunks = total.div_ceil(CHUNK);
    let parts: Vec<ChunkBest> = run_in_pool(config.threads, || {
        (0..chunks)
            .into_par_iter()
            .map(|c| scan(&scorer, c * CHUNK, ((c + 1) * CHUNK).min(total)))
            .collect()
    });
    let max = parts
        .iter()
        .map(|p| p.max)
        .fold(f64::NEG_INFINITY, f64::max);
    // a global maximiser is always within tolerance of its own chunk's max
    let mut winners: Vec<u64> = parts
        .iter()
        .flat_map(|p| p.near.iter())
        .filter(|&&(_, u)| u >= max - ARGMAX_TOL)
        .map(|&(mask, _)| mask)
        .collect();
    winners.sort_unstable();
    Ok(OracleResult {
        max_utility: max,
        argmax_graphs: winners.into_iter().map(|m| graph_from_mask(n, m)).collect(),
        graphs_evaluated: total,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EfficiencyVerdict {
    pub is_efficient: bool,
    /// Maximum welfare minus the welfare of the graph checked.
    pub gap: f64,
}

/// Compares `g` against the exhaustive maximum.
pub fn verify_efficiency(
    g: &Graph,
    model: &Model,
    config: &OracleConfig,
) -> Result<EfficiencyVerdict> {
    if g.node_count() != model.n() {
        return Err(Error::Inconsistent(format!(
            "graph has {} nodes, model has {}",
            g.node_count(),
            model.n()
        )));
    }
    let best = enumerate_max_with(model, config)?;
    let gap = (best.max_utility - total_utility(g, model)).max(0.0);
    Ok(EfficiencyVerdict {
        is_efficient: gap <= ARGMAX_TOL,
        gap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::econ::{validate_model, BenefitSpec};

    fn model(costs: &[f64], b: &[f64]) -> Model {
        validate_model(costs.to_vec(), BenefitSpec::Table { values: b.to_vec() }).unwrap()
    }

    #[test]
    fn scorer_agrees_with_bfs_utility() {
        let m = model(&[0.3, 0.1, 0.7, 0.2, 0.05], &[1.0, 0.6, 0.3, 0.1]);
        let scorer = Scorer::new(&m);
        for mask in (0u64..1 << 10).step_by(7) {
            let g = graph_from_mask(5, mask);
            assert!((scorer.utility(mask) - total_utility(&g, &m)).abs() < 1e-12);
        }
    }

    #[test]
    fn two_node_instances() {
        let r = enumerate_max(&model(&[0.2, 0.4], &[1.0]), 7).unwrap();
        assert!((r.max_utility - 1.4).abs() < 1e-12);
        assert_eq!(r.argmax_graphs, vec![Graph::complete(2)]);
        assert_eq!(r.graphs_evaluated, 2);

        let r = enumerate_max(&model(&[1.2, 1.4], &[1.0]), 7).unwrap();
        assert_eq!(r.max_utility, 0.0);
        assert_eq!(r.argmax_graphs, vec![Graph::empty(2)]);
    }

    #[test]
    fn four_node_star_is_optimal() {
        let m = model(&[0.2, 0.4, 0.6, 3.0], &[1.0, 0.5, 0.25]);
        let r = enumerate_max(&m, 7).unwrap();
        assert_eq!(r.graphs_evaluated, 64);
        assert!((r.max_utility - 4.4).abs() < 1e-9);
        assert!(r.argmax_graphs.contains(&Graph::star(4, 0)));

        let k4 = verify_efficiency(&Graph::complete(4), &m, &OracleConfig::default()).unwrap();
        assert!(!k4.is_efficient);
        assert!((k4.gap - 5.0).abs() < 1e-9);
    }

    #[test]
    fn huge_costs_make_empty_optimal() {
        let m = model(&[50.0, 60.0, 70.0, 80.0], &[1.0, 0.5, 0.25]);
        let v = verify_efficiency(&Graph::empty(4), &m, &OracleConfig::default()).unwrap();
        assert!(v.is_efficient);
        assert_eq!(v.gap, 0.0);
    }

    #[test]
    fn size_caps() {
        let geo = BenefitSpec::Geometric { delta: 0.5 };
        let m8 = validate_model(vec![1.0; 8], geo.clone()).unwrap();
        assert!(matches!(
            enumerate_max(&m8, 7),
            Err(Error::SizeCap { cap: 7, .. })
        ));
        let cfg = OracleConfig {
            n_cap: 8,
            allow_n8: false,
            threads: None,
        };
        assert!(matches!(
            enumerate_max_with(&m8, &cfg),
            Err(Error::SizeCap { .. })
        ));
        let m9 = validate_model(vec![1.0; 9], geo).unwrap();
        assert!(matches!(
            enumerate_max(&m9, 9),
            Err(Error::SizeCap { cap: 8, .. })
        ));
    }

    #[test]
    fn single_node() {
        let m = model(&[0.5], &[]);
        let r = enumerate_max(&m, 7).unwrap();
        assert_eq!(r.graphs_evaluated, 1);
        assert_eq!(r.max_utility, 0.0);
    }

    #[test]
    fn worker_count_does_not_change_the_result() {
        let m = validate_model(
            vec![0.3, 0.31, 0.5, 0.9, 1.2, 0.05],
            BenefitSpec::Geometric { delta: 0.6 },
        )
        .unwrap();
        let one = enumerate_max_with(&m, &OracleConfig::default().threads(1)).unwrap();
        let four = enumerate_max_with(&m, &OracleConfig::default().threads(4)).unwrap();
        assert_eq!(one.max_utility.to_bits(), four.max_utility.to_bits());
        assert_eq!(one.argmax_graphs, four.argmax_graphs);
    }
}
