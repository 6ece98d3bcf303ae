//! Exact construction of the welfare-maximising network when link costs are
//! separable, plus the structural checks that characterise it.
//!
//! The efficient network keeps the `m` cheapest nodes in one component and
//! isolates the rest. Inside the component the cheapest node (the hub) links
//! to everyone, and two other members `i`, `j` link directly exactly when
//! `b(1) - b(2) > (c_i + c_j) / 2`. The result always has diameter at most
//! two, and its cheapest nodes form a clique core with an independent
//! periphery hanging off it.

use serde::Serialize;

use crate::econ::{total_utility, Model};
use crate::error::{Error, Result};
use crate::graph::{components, Graph};

/// Relative tolerance under which a decisive comparison is reported as a
/// boundary case.
pub const BOUNDARY_REL_TOL: f64 = 1e-9;

/// `|lhs - rhs| < 1e-9 * max(1, |lhs|, |rhs|)`.
pub fn near_boundary(lhs: f64, rhs: f64) -> bool {
    (lhs - rhs).abs() < BOUNDARY_REL_TOL * 1f64.max(lhs.abs()).max(rhs.abs())
}

/// Direct link between two non-hub members of the component.
#[inline]
pub fn pair_condition(b1: f64, b2: f64, ci: f64, cj: f64) -> bool {
    b1 - b2 > 0.5 * (ci + cj)
}

/// Inclusion inequality `2b(1) + 2(m-2)b(2) > c_m + c_1` for 1-based rank `m`.
fn inclusion_holds(model: &Model, sorted: &[f64], m: usize) -> bool {
    let lhs = 2.0 * model.b(1) + 2.0 * (m as f64 - 2.0) * model.b(2);
    lhs > sorted[m - 1] + sorted[0]
}

/// Largest `m` in `1..=n` whose inclusion inequality holds, scanning down
/// from `n`; `0` when none does.
///
/// This is the closed-form size rule. It is not always welfare-maximising
/// (the predicate is not monotone in `m`), so [`synthesize`] uses
/// [`efficient_component_size`] instead and reports this value alongside.
pub fn component_size(model: &Model) -> usize {
    let sorted = model.costs().sorted();
    (1..=model.n())
        .rev()
        .find(|&m| inclusion_holds(model, &sorted, m))
        .unwrap_or(0)
}

/// Size obtained by adding nodes in cost order until the first one whose
/// marginal hub link does not pay for itself: `i - 1` for the smallest rank
/// `i >= 2` failing the inclusion inequality, or `n` if none fails.
pub fn incremental_component_size(model: &Model) -> usize {
    let sorted = model.costs().sorted();
    (2..=model.n())
        .find(|&i| !inclusion_holds(model, &sorted, i))
        .map_or(model.n(), |i| i - 1)
}

/// Welfare of the generalized star on each cost prefix.
///
/// Entry `m` (for `m >= 2`) is the total utility of the network whose
/// component is the `m` cheapest nodes; entries 0 and 1 are the empty
/// network.
pub fn prefix_welfare(model: &Model) -> Vec<f64> {
    let c = model.costs().sorted();
    let n = c.len();
    let (b1, b2) = (model.b(1), model.b(2));
    let mut welfare = vec![0.0; n + 1];
    let mut running = 0.0;
    for m in 2..=n {
        let new = m - 1;
        // hub link plus new distance-two pairs with the other members
        running += 2.0 * b1 + 2.0 * (m as f64 - 2.0) * b2 - c[0] - c[new];
        for r in 1..new {
            if pair_condition(b1, b2, c[r], c[new]) {
                running += 2.0 * (b1 - b2) - c[r] - c[new];
            }
        }
        welfare[m] = running;
    }
    welfare
}

/// Component size that maximises welfare over all cost prefixes: `0` for the
/// empty network, otherwise in `2..=n`. Exact ties keep the smaller size.
pub fn efficient_component_size(model: &Model) -> usize {
    let welfare = prefix_welfare(model);
    let mut best = 0;
    for m in 2..welfare.len() {
        if welfare[m] > welfare[best] {
            best = m;
        }
    }
    best
}

/// The synthesized efficient network and its structural parameters.
#[derive(Clone, Debug, Serialize)]
pub struct EfficientNetwork {
    #[serde(flatten)]
    pub graph: Graph,
    /// Nodes in the connected component; `0` when the network is empty.
    pub m: usize,
    /// Size of the clique core, in cost ranks.
    pub core_k: usize,
    /// Original index of the cheapest node.
    pub hub: usize,
    /// Decisive comparisons that held only within tolerance of equality.
    /// A non-empty list means other networks may reach the same welfare.
    pub boundary_flags: Vec<String>,
    pub empty_network: bool,
    /// Value of [`component_size`] for the same model.
    pub statement_m: usize,
    /// Value of [`incremental_component_size`] for the same model.
    pub incremental_m: usize,
    pub total_utility: f64,
}

impl EfficientNetwork {
    /// The closed-form size rule would have produced a different component.
    pub fn size_rules_disagree(&self) -> bool {
        let norm = |m: usize| if m < 2 { 0 } else { m };
        norm(self.statement_m) != self.m
    }

    pub fn to_dot(&self, cp: &CorePeriphery) -> String {
        self.graph.to_dot_with(|v| {
            Some(if cp.core.contains(&v) {
                "gold"
            } else if cp.periphery.contains(&v) {
                "lightblue"
            } else {
                "gray80"
            })
        })
    }
}

/// Largest 1-based `k` in `2..=limit` with `b(1) - b(2) > (c_{k-1} + c_k)/2`,
/// or 1 if the condition already fails at `k = 2`.
fn core_size(model: &Model, sorted: &[f64], limit: usize) -> usize {
    let (b1, b2) = (model.b(1), model.b(2));
    (2..=limit)
        .rev()
        .find(|&k| pair_condition(b1, b2, sorted[k - 2], sorted[k - 1]))
        .unwrap_or(1)
}

/// Builds the efficient network for `model`.
pub fn synthesize(model: &Model) -> EfficientNetwork {
    let n = model.n();
    let perm = model.costs().sort_perm();
    let c = model.costs().sorted();
    let (b1, b2) = (model.b(1), model.b(2));
    let mut flags = Vec::new();
    if model.costs().has_ties() {
        flags.push("cost-tie".to_string());
    }

    let welfare = prefix_welfare(model);
    let m = efficient_component_size(model);
    for (size, &w) in welfare.iter().enumerate().filter(|&(s, _)| s != 1) {
        if size != m && near_boundary(w, welfare[m]) {
            flags.push(format!("component-size:{size}~{m}"));
        }
    }

    let mut graph = Graph::empty(n);
    for r in 1..m {
        graph.add_edge(perm[0], perm[r]);
    }
    for r in 1..m {
        for s in r + 1..m {
            let lhs = b1 - b2;
            let rhs = 0.5 * (c[r] + c[s]);
            if near_boundary(lhs, rhs) {
                flags.push(format!("pair-condition:{},{}", perm[r], perm[s]));
            }
            if pair_condition(b1, b2, c[r], c[s]) {
                graph.add_edge(perm[r], perm[s]);
            }
        }
    }

    let core_k = if m >= 2 { core_size(model, &c, m) } else { 1 };
    if m >= 2 {
        for k in [core_k, core_k + 1] {
            if (2..=m).contains(&k) && near_boundary(b1 - b2, 0.5 * (c[k - 2] + c[k - 1])) {
                flags.push(format!("core-condition:{k}"));
            }
        }
    }
    flags.sort();
    flags.dedup();

    let total = total_utility(&graph, model);
    EfficientNetwork {
        graph,
        m,
        core_k,
        hub: perm[0],
        boundary_flags: flags,
        empty_network: m < 2,
        statement_m: component_size(model),
        incremental_m: incremental_component_size(model),
        total_utility: total,
    }
}

/// Core, periphery and isolated nodes, in original indexing and ascending
/// order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorePeriphery {
    pub core: Vec<usize>,
    pub periphery: Vec<usize>,
    pub isolated: Vec<usize>,
}

impl CorePeriphery {
    /// Structural conditions of the partition that `g` violates.
    pub fn violations(&self, g: &Graph) -> Vec<String> {
        let mut out = Vec::new();
        for (a, &u) in self.core.iter().enumerate() {
            for &v in &self.core[a + 1..] {
                if !g.has_edge(u, v) {
                    out.push(format!("core pair ({u}, {v}) not linked"));
                }
            }
        }
        for (a, &u) in self.periphery.iter().enumerate() {
            for &v in &self.periphery[a + 1..] {
                if g.has_edge(u, v) {
                    out.push(format!("periphery pair ({u}, {v}) linked"));
                }
            }
            for w in g.neighbors(u) {
                if !self.core.contains(&w) {
                    out.push(format!("periphery node {u} linked to non-core node {w}"));
                }
            }
        }
        for &v in &self.isolated {
            if g.degree(v) > 0 {
                out.push(format!("isolated node {v} has links"));
            }
        }
        out
    }
}

/// Splits the nodes of an efficient network into core, periphery and
/// isolated sets. An empty network has the hub as its whole core.
pub fn core_periphery(en: &EfficientNetwork, model: &Model) -> Result<CorePeriphery> {
    let n = model.n();
    if en.graph.node_count() != n {
        return Err(Error::Inconsistent(format!(
            "network has {} nodes, model has {n}",
            en.graph.node_count()
        )));
    }
    let perm = model.costs().sort_perm();
    if en.hub != perm[0] {
        return Err(Error::Inconsistent(format!(
            "hub {} is not the cheapest node {}",
            en.hub, perm[0]
        )));
    }
    let members = if en.m >= 2 { en.m } else { 0 };
    if members > n {
        return Err(Error::Inconsistent(format!("m = {} exceeds n = {n}", en.m)));
    }
    let reference = synthesize(model);
    if reference.m != en.m || reference.graph != en.graph {
        return Err(Error::Inconsistent(
            "network is not the efficient network of this model".into(),
        ));
    }
    let sorted = model.costs().sorted();
    let k = if members >= 2 {
        core_size(model, &sorted, members)
    } else {
        1
    };
    if k != en.core_k {
        return Err(Error::Inconsistent(format!(
            "core size {} does not match the model ({k})",
            en.core_k
        )));
    }
    let pick = |ranks: std::ops::Range<usize>| {
        let mut v: Vec<usize> = ranks.map(|r| perm[r]).collect();
        v.sort_unstable();
        v
    };
    let (core_end, periphery_end) = if members >= 2 { (k, members) } else { (1, 1) };
    Ok(CorePeriphery {
        core: pick(0..core_end),
        periphery: pick(core_end..periphery_end),
        isolated: pick(periphery_end..n),
    })
}

/// Ways a graph departs from the generalized-star structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum StarViolation {
    /// Non-isolated nodes split into several components.
    NotConnected { components: usize },
    /// The cheapest non-isolated node misses a member.
    HubNotAdjacent { hub: usize, node: usize },
    /// A non-hub link whose endpoints fail the pair condition.
    UnjustifiedLink { i: usize, j: usize },
    /// A non-hub pair that satisfies the pair condition but is not linked.
    MissingLink { i: usize, j: usize },
}

/// Checks the generalized-star characterisation on the non-isolated part of
/// `g`. Returns every violation found; an empty list means the structure
/// holds. Graphs without links pass trivially.
pub fn is_generalized_star(g: &Graph, model: &Model) -> Vec<StarViolation> {
    assert_eq!(g.node_count(), model.n(), "graph and model disagree on n");
    let members = g.non_isolated();
    let mut out = Vec::new();
    if members.is_empty() {
        return out;
    }
    let pieces = components(g).into_iter().filter(|c| c.len() > 1).count();
    if pieces > 1 {
        out.push(StarViolation::NotConnected { components: pieces });
    }
    let hub = model
        .costs()
        .sort_perm()
        .iter()
        .copied()
        .find(|&v| g.degree(v) > 0)
        .expect("members is non-empty");
    for &v in members.iter().filter(|&&v| v != hub) {
        if !g.has_edge(hub, v) {
            out.push(StarViolation::HubNotAdjacent { hub, node: v });
        }
    }
    let (b1, b2) = (model.b(1), model.b(2));
    let cost = |v: usize| model.costs().cost(v);
    let others: Vec<usize> = members.into_iter().filter(|&v| v != hub).collect();
    for (a, &i) in others.iter().enumerate() {
        for &j in &others[a + 1..] {
            let wanted = pair_condition(b1, b2, cost(i), cost(j));
            match (g.has_edge(i, j), wanted) {
                (true, false) => out.push(StarViolation::UnjustifiedLink { i, j }),
                (false, true) => out.push(StarViolation::MissingLink { i, j }),
                _ => {}
            }
        }
    }
    out
}
