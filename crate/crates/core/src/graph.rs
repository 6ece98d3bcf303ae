//! Simple undirected graphs and the structural metrics every analysis runs on:
//! shortest-path distances, connected components, triangle and triplet counts,
//! global clustering and component diameter.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const WORD: usize = 64;

/// Simple undirected graph on nodes `0..n`.
///
/// Adjacency is kept as one bit row per node, so membership tests and
/// neighbourhood intersections are word operations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// Graph on `n` nodes with no edges.
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(WORD).max(1);
        Graph {
            n,
            words,
            rows: vec![0; n * words],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                g.set(i, j, true);
            }
        }
        g
    }

    /// Star with `center` adjacent to every other node.
    pub fn star(n: usize, center: usize) -> Self {
        let mut g = Graph::empty(n);
        for i in (0..n).filter(|&i| i != center) {
            g.set(center, i, true);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for i in 1..n {
            g.set(i - 1, i, true);
        }
        g
    }

    /// Builds a graph from an edge list, rejecting self-loops, duplicate
    /// pairs and out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (i, j) in edges {
            if i >= n || j >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({i}, {j}) has an endpoint outside 0..{n}"
                )));
            }
            if i == j {
                return Err(Error::InvalidGraph(format!("self-loop at node {i}")));
            }
            if g.has_edge(i, j) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({i}, {j})")));
            }
            g.set(i, j, true);
        }
        Ok(g)
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    #[inline]
    fn row(&self, i: usize) -> &[u64] {
        &self.rows[i * self.words..(i + 1) * self.words]
    }

    fn set(&mut self, i: usize, j: usize, present: bool) {
        let (wj, bj) = (j / WORD, 1u64 << (j % WORD));
        let (wi, bi) = (i / WORD, 1u64 << (i % WORD));
        if present {
            self.rows[i * self.words + wj] |= bj;
            self.rows[j * self.words + wi] |= bi;
        } else {
            self.rows[i * self.words + wj] &= !bj;
            self.rows[j * self.words + wi] &= !bi;
        }
    }

    /// Inserts `{i, j}`. Returns `false` if it was already present.
    ///
    /// Panics on a self-loop or an endpoint outside the node range.
    pub fn add_edge(&mut self, i: usize, j: usize) -> bool {
        assert!(i < self.n && j < self.n, "edge endpoint out of range");
        assert_ne!(i, j, "self-loops are not allowed");
        let fresh = !self.has_edge(i, j);
        self.set(i, j, true);
        fresh
    }

    /// Removes `{i, j}`. Returns `false` if it was absent.
    pub fn remove_edge(&mut self, i: usize, j: usize) -> bool {
        assert!(i < self.n && j < self.n, "edge endpoint out of range");
        let present = self.has_edge(i, j);
        self.set(i, j, false);
        present
    }

    /// Copy of this graph with `{i, j}` toggled.
    pub fn toggled(&self, i: usize, j: usize) -> Graph {
        let mut g = self.clone();
        if g.has_edge(i, j) {
            g.remove_edge(i, j);
        } else {
            g.add_edge(i, j);
        }
        g
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i < self.n && j < self.n && self.row(i)[j / WORD] & (1u64 << (j % WORD)) != 0
    }

    pub fn degree(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|i| self.degree(i)).sum::<usize>() / 2
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(i).iter().enumerate().flat_map(|(w, &bits)| {
            let mut bits = bits;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w * WORD + b)
            })
        })
    }

    /// Edges as `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|i| {
                self.neighbors(i)
                    .filter(move |&j| j > i)
                    .map(move |j| (i, j))
            })
            .collect()
    }

    /// Nodes with at least one incident edge, ascending.
    pub fn non_isolated(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.degree(i) > 0).collect()
    }

    /// Breadth-first distances from `source`; `None` marks unreachable nodes.
    pub fn bfs_distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or_default();
            for v in self.neighbors(u) {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Same graph with node `i` renamed to `perm[i]`.
    pub fn relabeled(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length must equal n");
        let mut g = Graph::empty(self.n);
        for (i, j) in self.edges() {
            g.set(perm[i], perm[j], true);
        }
        g
    }

    /// Undirected DOT rendering with node labels equal to node indices.
    pub fn to_dot(&self) -> String {
        self.to_dot_with(|_| None)
    }

    /// DOT rendering with an optional fill colour per node.
    pub fn to_dot_with<F>(&self, color: F) -> String
    where
        F: Fn(usize) -> Option<&'static str>,
    {
        let mut out = String::from("graph G {\n");
        for i in 0..self.n {
            match color(i) {
                Some(c) => {
                    let _ = writeln!(out, "  {i} [label=\"{i}\", style=filled, fillcolor={c}];");
                }
                None => {
                    let _ = writeln!(out, "  {i} [label=\"{i}\"];");
                }
            }
        }
        for (i, j) in self.edges() {
            let _ = writeln!(out, "  {i} -- {j};");
        }
        out.push_str("}\n");
        out
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphRepr {
            n: self.n,
            edges: self.edges().into_iter().map(|(i, j)| [i, j]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = GraphRepr::deserialize(d)?;
        if repr.n == 0 {
            return Err(serde::de::Error::custom(
                "graph must have at least one node",
            ));
        }
        Graph::from_edges(repr.n, repr.edges.into_iter().map(|[i, j]| (i, j)))
            .map_err(serde::de::Error::custom)
    }
}

/// All-pairs shortest-path lengths. Unreachable pairs are `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<Option<usize>>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Option<usize> {
        self.d[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[Option<usize>] {
        &self.d[i * self.n..(i + 1) * self.n]
    }
}

/// One breadth-first search per node.
pub fn all_pairs_distances(g: &Graph) -> DistanceMatrix {
    let n = g.node_count();
    let mut d = Vec::with_capacity(n * n);
    for i in 0..n {
        d.extend(g.bfs_distances(i));
    }
    DistanceMatrix { n, d }
}

/// Connected components, each sorted ascending, ordered by smallest member.
pub fn components(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.node_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut comp: Vec<usize> = g
            .bfs_distances(s)
            .iter()
            .enumerate()
            .filter_map(|(v, d)| d.map(|_| v))
            .collect();
        comp.sort_unstable();
        for &v in &comp {
            seen[v] = true;
        }
        out.push(comp);
    }
    out
}

/// Triangle and connected-triplet counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleTriplets {
    pub triangles: u64,
    /// Paths of length two, counted once per centre: `sum_i C(deg(i), 2)`.
    pub triplets: u64,
}

pub fn triangle_triplet_count(g: &Graph) -> TriangleTriplets {
    let mut closed = 0u64;
    for (i, j) in g.edges() {
        closed += g
            .row(i)
            .iter()
            .zip(g.row(j))
            .map(|(a, b)| (a & b).count_ones() as u64)
            .sum::<u64>();
    }
    let triplets = (0..g.node_count())
        .map(|i| {
            let d = g.degree(i) as u64;
            d * d.saturating_sub(1) / 2
        })
        .sum();
    TriangleTriplets {
        // each triangle is seen once from each of its three edges
        triangles: closed / 3,
        triplets,
    }
}

/// `3 * triangles / triplets`, or `None` when the graph has no triplet.
pub fn global_clustering(g: &Graph) -> Option<f64> {
    let TriangleTriplets {
        triangles,
        triplets,
    } = triangle_triplet_count(g);
    (triplets > 0).then(|| 3.0 * triangles as f64 / triplets as f64)
}

/// Largest pairwise distance inside `component`, which must be exactly one
/// connected component of `g`.
pub fn component_diameter(g: &Graph, component: &[usize]) -> Result<usize> {
    let Some(&first) = component.first() else {
        return Err(Error::NotAComponent("empty node set".into()));
    };
    if component.iter().any(|&v| v >= g.node_count()) {
        return Err(Error::NotAComponent("node outside graph".into()));
    }
    let mut members = component.to_vec();
    members.sort_unstable();
    members.dedup();
    let reach: Vec<usize> = g
        .bfs_distances(first)
        .iter()
        .enumerate()
        .filter_map(|(v, d)| d.map(|_| v))
        .collect();
    if reach != members {
        return Err(Error::NotAComponent(format!(
            "{component:?} differs from the component of node {first}"
        )));
    }
    let diameter = members
        .iter()
        .map(|&s| {
            g.bfs_distances(s)
                .into_iter()
                .flatten()
                .max()
                .unwrap_or_default()
        })
        .max()
        .unwrap_or_default();
    Ok(diameter)
}
