//! Costs, distance benefits, and the distance-based utility of the
//! connection model with separable link costs.
//!
//! Each node `i` pays its own cost `c_i` for every incident link and
//! receives `b(d)` from every node at distance `d`. Nodes in other
//! components contribute nothing.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Per-node connection costs with a stable ascending sort order.
#[derive(Clone, Debug, PartialEq)]
pub struct CostVector {
    costs: Vec<f64>,
    sort_perm: Vec<usize>,
    has_ties: bool,
}

impl CostVector {
    pub fn new(costs: Vec<f64>) -> Result<Self> {
        if costs.is_empty() {
            return Err(Error::InvalidModel("cost vector is empty".into()));
        }
        for (i, &c) in costs.iter().enumerate() {
            if !c.is_finite() {
                return Err(Error::InvalidModel(format!(
                    "cost of node {i} is not finite"
                )));
            }
            if c < 0.0 {
                return Err(Error::InvalidModel(format!(
                    "cost of node {i} is negative ({c})"
                )));
            }
        }
        let mut sort_perm: Vec<usize> = (0..costs.len()).collect();
        // stable: equal costs keep original index order
        sort_perm.sort_by(|&a, &b| costs[a].total_cmp(&costs[b]));
        let has_ties = sort_perm.windows(2).any(|w| costs[w[0]] == costs[w[1]]);
        Ok(CostVector {
            costs,
            sort_perm,
            has_ties,
        })
    }

    pub fn len(&self) -> usize {
        self.costs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.costs.is_empty()
    }

    /// Cost of node `i` in original indexing.
    pub fn cost(&self, i: usize) -> f64 {
        self.costs[i]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.costs
    }

    /// `sort_perm()[r]` is the original index of the node with cost rank `r`.
    pub fn sort_perm(&self) -> &[usize] {
        &self.sort_perm
    }

    pub fn sorted(&self) -> Vec<f64> {
        self.sort_perm.iter().map(|&i| self.costs[i]).collect()
    }

    /// Some two nodes have equal cost.
    pub fn has_ties(&self) -> bool {
        self.has_ties
    }
}

/// Benefit specification as read from model files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum BenefitSpec {
    /// `b(k) = delta^k`.
    Geometric { delta: f64 },
    /// `values[k - 1] = b(k)`.
    Table { values: Vec<f64> },
}

/// Strictly decreasing positive benefit table `b(1), b(2), ...`.
#[derive(Clone, Debug, PartialEq)]
pub struct BenefitFunction {
    values: Vec<f64>,
}

impl BenefitFunction {
    /// Expands and validates `spec` over distances `1..=max_distance`.
    pub fn from_spec(spec: &BenefitSpec, max_distance: usize) -> Result<Self> {
        let values = match spec {
            BenefitSpec::Geometric { delta } => {
                let delta = *delta;
                if !(delta.is_finite() && delta > 0.0 && delta < 1.0) {
                    return Err(Error::InvalidModel(format!(
                        "geometric delta must lie strictly in (0, 1), got {delta}"
                    )));
                }
                let mut v = Vec::with_capacity(max_distance);
                let mut b = 1.0;
                for _ in 0..max_distance {
                    b *= delta;
                    v.push(b);
                }
                v
            }
            BenefitSpec::Table { values } => {
                if values.len() < max_distance {
                    return Err(Error::InvalidModel(format!(
                        "benefit table has {} entries, need at least {max_distance}",
                        values.len()
                    )));
                }
                values.clone()
            }
        };
        for (k, &b) in values.iter().enumerate() {
            if !b.is_finite() {
                return Err(Error::InvalidModel(format!("b({}) is not finite", k + 1)));
            }
            if b <= 0.0 {
                return Err(Error::InvalidModel(format!(
                    "b({}) = {b} is not positive",
                    k + 1
                )));
            }
        }
        if let Some(k) = values.windows(2).position(|w| w[0] <= w[1]) {
            return Err(Error::InvalidModel(format!(
                "benefits must strictly decrease: b({}) = {} <= b({}) = {}",
                k + 1,
                values[k],
                k + 2,
                values[k + 1]
            )));
        }
        Ok(BenefitFunction { values })
    }

    /// `b(distance)`; zero past the end of the table.
    #[inline]
    pub fn at(&self, distance: usize) -> f64 {
        distance
            .checked_sub(1)
            .and_then(|k| self.values.get(k))
            .copied()
            .unwrap_or(0.0)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Raw model file contents before validation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub costs: Vec<f64>,
    pub benefit: BenefitSpec,
}

/// A validated instance: `n` nodes, their costs, and the benefit function.
#[derive(Clone, Debug, PartialEq)]
pub struct Model {
    costs: CostVector,
    benefit: BenefitFunction,
    spec: BenefitSpec,
}

impl Model {
    pub fn n(&self) -> usize {
        self.costs.len()
    }

    pub fn costs(&self) -> &CostVector {
        &self.costs
    }

    pub fn benefit(&self) -> &BenefitFunction {
        &self.benefit
    }

    #[inline]
    pub fn b(&self, distance: usize) -> f64 {
        self.benefit.at(distance)
    }

    pub fn spec(&self) -> ModelSpec {
        ModelSpec {
            costs: self.costs.as_slice().to_vec(),
            benefit: self.spec.clone(),
        }
    }

    /// Same benefit function with costs replaced.
    pub fn with_costs(&self, costs: Vec<f64>) -> Result<Model> {
        validate_model(costs, self.spec.clone())
    }

    /// Same model with node `i` renamed to `perm[i]`.
    pub fn relabeled(&self, perm: &[usize]) -> Model {
        let mut costs = vec![0.0; self.n()];
        for (i, &p) in perm.iter().enumerate() {
            costs[p] = self.costs.cost(i);
        }
        self.with_costs(costs)
            .expect("relabeling preserves validity")
    }
}

/// Validates costs and benefits and assembles a [`Model`].
pub fn validate_model(costs: Vec<f64>, benefit: BenefitSpec) -> Result<Model> {
    let costs = CostVector::new(costs)?;
    let benefit_fn = BenefitFunction::from_spec(&benefit, costs.len() - 1)?;
    Ok(Model {
        costs,
        benefit: benefit_fn,
        spec: benefit,
    })
}

impl TryFrom<ModelSpec> for Model {
    type Error = Error;

    fn try_from(spec: ModelSpec) -> Result<Model> {
        validate_model(spec.costs, spec.benefit)
    }
}

fn check_size(g: &Graph, model: &Model) {
    assert_eq!(
        g.node_count(),
        model.n(),
        "graph and model disagree on the node count"
    );
}

/// Utility of node `i`: distance benefits from everyone it can reach, minus
/// its own cost for each incident link.
pub fn node_utility(g: &Graph, model: &Model, i: usize) -> f64 {
    check_size(g, model);
    let benefit: f64 = g
        .bfs_distances(i)
        .into_iter()
        .flatten()
        .filter(|&d| d > 0)
        .fold(0.0, |acc, d| acc + model.b(d));
    benefit - g.degree(i) as f64 * model.costs.cost(i)
}

/// Social welfare: the sum of all node utilities.
pub fn total_utility(g: &Graph, model: &Model) -> f64 {
    (0..g.node_count()).fold(0.0, |acc, i| acc + node_utility(g, model, i))
}
