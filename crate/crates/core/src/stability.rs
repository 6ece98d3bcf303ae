//! Pairwise stability under separable costs.
//!
//! A graph is pairwise stable when no node gains by cutting one of its links
//! and no unlinked pair could add a link that strictly helps one endpoint
//! without hurting the other.

use serde::Serialize;

use crate::econ::{node_utility, Model};
use crate::graph::Graph;
use crate::synthesis::{synthesize, EfficientNetwork};

/// Gains at or below this are treated as zero.
pub const GAIN_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeverDeviation {
    pub edge: (usize, usize),
    /// Endpoint that gains by cutting the link.
    pub node: usize,
    pub gain: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AddDeviation {
    pub pair: (usize, usize),
    /// Utility change for `pair.0` and `pair.1` if the link is added.
    pub gains: (f64, f64),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StabilityReport {
    pub stable: bool,
    pub sever_deviations: Vec<SeverDeviation>,
    pub add_deviations: Vec<AddDeviation>,
}

/// Lists every profitable single-link deviation, in lexicographic pair order.
pub fn check_pairwise_stable(g: &Graph, model: &Model) -> StabilityReport {
    let n = g.node_count();
    assert_eq!(n, model.n(), "graph and model disagree on n");
    let current: Vec<f64> = (0..n).map(|i| node_utility(g, model, i)).collect();
    let mut sever = Vec::new();
    let mut add = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let h = g.toggled(i, j);
            let gi = node_utility(&h, model, i) - current[i];
            let gj = node_utility(&h, model, j) - current[j];
            if g.has_edge(i, j) {
                for (node, gain) in [(i, gi), (j, gj)] {
                    if gain > GAIN_TOL {
                        sever.push(SeverDeviation {
                            edge: (i, j),
                            node,
                            gain,
                        });
                    }
                }
            } else {
                let wants = |mine: f64, theirs: f64| mine > GAIN_TOL && theirs >= -GAIN_TOL;
                if wants(gi, gj) || wants(gj, gi) {
                    add.push(AddDeviation {
                        pair: (i, j),
                        gains: (gi, gj),
                    });
                }
            }
        }
    }
    StabilityReport {
        stable: sever.is_empty() && add.is_empty(),
        sever_deviations: sever,
        add_deviations: add,
    }
}

/// Synthesizes the efficient network and checks whether it is stable.
pub fn efficiency_stability_audit(model: &Model) -> (EfficientNetwork, StabilityReport) {
    let en = synthesize(model);
    let report = check_pairwise_stable(&en.graph, model);
    (en, report)
}
