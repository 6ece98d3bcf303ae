//! Lowest global clustering an efficient network can have at a given link
//! count, and how it compares with an Erdős–Rényi graph of equal density.
//!
//! The extremal graph is grown in rounds: round `k` links node `k - 1` to
//! every higher node. After `p` full rounds the remaining `J` links go from
//! node `p` to nodes `p + 1 ..= p + J`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

fn choose2(x: u64) -> u64 {
    x * x.saturating_sub(1) / 2
}

fn max_links(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

fn check_range(n: usize, ell: usize) -> Result<()> {
    if n < 2 || ell > max_links(n) {
        return Err(Error::LinksOutOfRange {
            n,
            ell,
            max: max_links(n),
        });
    }
    Ok(())
}

/// `ell = sum_{k=1..p} (n - k) + residual`, with `p` as large as possible.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LinkRounds {
    pub p: usize,
    #[serde(rename = "J")]
    pub residual: usize,
}

pub fn decompose_links(n: usize, ell: usize) -> Result<LinkRounds> {
    check_range(n, ell)?;
    let mut p = 0;
    let mut used = 0;
    while p < n - 1 && used + (n - p - 1) <= ell {
        used += n - p - 1;
        p += 1;
    }
    Ok(LinkRounds {
        p,
        residual: ell - used,
    })
}

/// The round-by-round graph with exactly `ell` links.
pub fn build_min_clustering_graph(n: usize, ell: usize) -> Result<Graph> {
    let LinkRounds { p, residual } = decompose_links(n, ell)?;
    let mut g = Graph::empty(n);
    for hub in 0..p {
        for i in hub + 1..n {
            g.add_edge(hub, i);
        }
    }
    for i in p + 1..p + 1 + residual {
        g.add_edge(p, i);
    }
    Ok(g)
}

/// Triangle and triplet totals from the per-round sums.
pub fn round_counts(n: usize, ell: usize) -> Result<(u64, u64)> {
    let LinkRounds { p, residual } = decompose_links(n, ell)?;
    let (n, p, j) = (n as u64, p as u64, residual as u64);
    let mut triangles = 0;
    let mut triplets = 0;
    for k in 1..=p {
        triangles += (k - 1) * (n - k);
        triplets += choose2(n - k) + 2 * (k - 1) * (n - k);
    }
    triangles += p * j;
    triplets += choose2(j) + 2 * j * p;
    Ok((triangles, triplets))
}

/// Closed-form minimum clustering; `None` when the graph has no triplet.
pub fn min_clustering_value(n: usize, ell: usize) -> Result<Option<f64>> {
    let (triangles, triplets) = round_counts(n, ell)?;
    Ok((triplets > 0).then(|| 3.0 * triangles as f64 / triplets as f64))
}

/// Link density above which the minimum clustering is claimed to beat an
/// Erdős–Rényi graph: `4(2n - 5) / (n(n - 1))`. Meaningful for `n > 10`.
pub fn er_crossover_density(n: usize) -> f64 {
    let n = n as f64;
    4.0 * (2.0 * n - 5.0) / (n * (n - 1.0))
}

/// Edge probability (and expected clustering) of the matching ER graph.
pub fn er_density(n: usize, ell: usize) -> f64 {
    2.0 * ell as f64 / (n as f64 * (n as f64 - 1.0))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClusteringBoundReport {
    pub n: usize,
    pub ell: usize,
    pub p: usize,
    #[serde(rename = "J")]
    pub residual: usize,
    pub triangles: u64,
    pub triplets: u64,
    pub c_min: Option<f64>,
    pub er_density: f64,
    /// Strict `c_min > er_density`, decided in exact integer arithmetic.
    pub exceeds_er: bool,
}

pub fn compare_to_er(n: usize, ell: usize) -> Result<ClusteringBoundReport> {
    let LinkRounds { p, residual } = decompose_links(n, ell)?;
    let (triangles, triplets) = round_counts(n, ell)?;
    // 3T / S > 2l / (n(n-1))  <=>  3T n(n-1) > 2l S
    let lhs = 3 * triangles as u128 * (n as u128 * (n as u128 - 1));
    let rhs = 2 * ell as u128 * triplets as u128;
    Ok(ClusteringBoundReport {
        n,
        ell,
        p,
        residual,
        triangles,
        triplets,
        c_min: (triplets > 0).then(|| 3.0 * triangles as f64 / triplets as f64),
        er_density: er_density(n, ell),
        exceeds_er: triplets > 0 && lhs > rhs,
    })
}

/// Where the minimum clustering overtakes the ER baseline for one `n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CrossoverSummary {
    pub n: usize,
    pub threshold_density: f64,
    /// Smallest link count at which the bound exceeds ER, if any.
    pub first_exceeding_links: Option<usize>,
    /// Smallest `ell0` such that every `ell` in `ell0..=C(n,2)-2` exceeds ER.
    pub sustained_from_links: Option<usize>,
    /// Every link count with density above the threshold, except the last
    /// two (`C(n,2) - 1` and `C(n,2)`), exceeds ER.
    pub threshold_sufficient: bool,
}

/// Scans every link count for `n`. The two densest counts are left out of
/// the sustained range: at `C(n,2)` both sides equal one, and one link short
/// of complete the bound falls just below the ER density.
pub fn crossover_summary(n: usize) -> Result<CrossoverSummary> {
    let top = max_links(n);
    check_range(n, top)?;
    let threshold = er_crossover_density(n);
    let mut first = None;
    let mut sustained = None;
    let mut sufficient = true;
    let interior_end = top.saturating_sub(2);
    for ell in 0..=top {
        let exceeds = compare_to_er(n, ell)?.exceeds_er;
        if exceeds && first.is_none() {
            first = Some(ell);
        }
        if ell <= interior_end {
            match (exceeds, sustained) {
                (true, None) => sustained = Some(ell),
                (false, _) => sustained = None,
                _ => {}
            }
            if er_density(n, ell) > threshold && !exceeds {
                sufficient = false;
            }
        }
    }
    Ok(CrossoverSummary {
        n,
        threshold_density: threshold,
        first_exceeding_links: first,
        sustained_from_links: sustained,
        threshold_sufficient: sufficient,
    })
}
