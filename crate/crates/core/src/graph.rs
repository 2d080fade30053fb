//! Labeled simple graphs and the graph families built from `Z_n`.
//!
//! Adjacency is a dense symmetric bit matrix: row `v` holds `words` 64-bit
//! words and bit `u` is set iff `u ~ v`. Neighbor tallies against a side mask
//! are then a handful of `count_ones` calls.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::ring::{self, RingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex label {0}")]
    DuplicateLabel(VertexLabel),
    #[error("edge pair label {0} is not in ascending order")]
    UnorderedPair(VertexLabel),
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("edge endpoint {vertex} out of range for {len} vertices")]
    VertexOutOfRange { vertex: usize, len: usize },
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Ring-derived vertex label.
///
/// Pair variants keep their endpoints in ascending numeric order; use
/// [`VertexLabel::edge_pair`] and [`VertexLabel::total_edge`] to build them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexLabel {
    Residue(u64),
    EdgePair(u64, u64),
    TotalOriginal(u64),
    TotalEdge(u64, u64),
}

impl VertexLabel {
    pub fn edge_pair(a: u64, b: u64) -> Self {
        VertexLabel::EdgePair(a.min(b), a.max(b))
    }

    pub fn total_edge(a: u64, b: u64) -> Self {
        VertexLabel::TotalEdge(a.min(b), a.max(b))
    }

    /// The residue carried by a single-element label.
    pub fn residue(&self) -> Option<u64> {
        match *self {
            VertexLabel::Residue(k) | VertexLabel::TotalOriginal(k) => Some(k),
            _ => None,
        }
    }

    /// Endpoints of a pair label.
    pub fn pair(&self) -> Option<(u64, u64)> {
        match *self {
            VertexLabel::EdgePair(a, b) | VertexLabel::TotalEdge(a, b) => Some((a, b)),
            _ => None,
        }
    }

    fn is_ordered(&self) -> bool {
        self.pair().is_none_or(|(a, b)| a < b)
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::Residue(k) | VertexLabel::TotalOriginal(k) => write!(f, "{k}"),
            VertexLabel::EdgePair(a, b) | VertexLabel::TotalEdge(a, b) => write!(f, "({a},{b})"),
        }
    }
}

/// Simple undirected graph with labeled vertices `0..len`.
#[derive(Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    labels: Vec<VertexLabel>,
    modulus: Option<u64>,
    words: usize,
    adj: Vec<u64>,
}

impl fmt::Debug for LabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LabeledGraph")
            .field("modulus", &self.modulus)
            .field("vertices", &self.labels.len())
            .field("edges", &self.edge_count())
            .finish()
    }
}

impl LabeledGraph {
    fn edgeless(labels: Vec<VertexLabel>, modulus: Option<u64>) -> Self {
        let words = labels.len().div_ceil(64).max(1);
        let adj = vec![0; labels.len() * words];
        LabeledGraph {
            labels,
            modulus,
            words,
            adj,
        }
    }

    fn connect(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.adj[u * self.words + v / 64] |= 1 << (v % 64);
        self.adj[v * self.words + u / 64] |= 1 << (u % 64);
    }

    /// Builds a graph from labels and an edge list, validating every
    /// structural invariant. Repeated edges are merged.
    pub fn from_edges(
        labels: Vec<VertexLabel>,
        modulus: Option<u64>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut seen = HashSet::with_capacity(labels.len());
        for label in &labels {
            if !label.is_ordered() {
                return Err(GraphError::UnorderedPair(*label));
            }
            if !seen.insert(*label) {
                return Err(GraphError::DuplicateLabel(*label));
            }
        }
        let len = labels.len();
        let mut g = Self::edgeless(labels, modulus);
        for (u, v) in edges {
            for vertex in [u, v] {
                if vertex >= len {
                    return Err(GraphError::VertexOutOfRange { vertex, len });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.connect(u, v);
        }
        Ok(g)
    }

    /// Complete graph `K_m` labeled `1..=m`.
    pub fn complete(m: usize) -> Self {
        let labels = (1..=m as u64).map(VertexLabel::Residue).collect();
        let mut g = Self::edgeless(labels, None);
        for u in 0..m {
            for v in u + 1..m {
                g.connect(u, v);
            }
        }
        g
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> VertexLabel {
        self.labels[v]
    }

    /// Vertex id carrying `label`, if any.
    pub fn find(&self, label: &VertexLabel) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Adjacency row of `v` as bit words.
    pub fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.row(u)[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bits(self.row(v))
    }

    pub fn edge_count(&self) -> usize {
        (0..self.len()).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// All edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
            .collect()
    }

    /// Subgraph induced on `keep`, which must be ascending vertex ids.
    pub fn induced_subgraph(&self, keep: &[usize]) -> LabeledGraph {
        let labels = keep.iter().map(|&v| self.labels[v]).collect();
        let mut g = Self::edgeless(labels, self.modulus);
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.connect(i, j);
                }
            }
        }
        g
    }

    /// Vertices of degree zero, ascending.
    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.degree(v) == 0).collect()
    }
}

/// Iterates the set bit positions of a word slice.
pub(crate) fn bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(i * 64 + b)
        })
    })
}

/// The zero-divisor graph: residues sharing a factor with `n`, adjacent when
/// their product vanishes mod `n`.
pub fn gamma(n: u64) -> Result<LabeledGraph, GraphError> {
    let zd = ring::zero_divisors(n)?;
    let mut index = vec![usize::MAX; n as usize];
    for (i, &k) in zd.iter().enumerate() {
        index[k as usize] = i;
    }
    let labels = zd.iter().copied().map(VertexLabel::Residue).collect();
    let mut g = LabeledGraph::edgeless(labels, Some(n));
    // u*v = 0 mod n iff n / gcd(u, n) divides v.
    for (i, &u) in zd.iter().enumerate() {
        let step = n / ring::gcd(u, n);
        for v in (step..n).step_by(step as usize).filter(|&v| v > u) {
            g.connect(i, index[v as usize]);
        }
    }
    Ok(g)
}

fn restrict_gamma(n: u64, keep: impl Fn(u64) -> bool) -> Result<LabeledGraph, GraphError> {
    let g = gamma(n)?;
    let ids: Vec<usize> = (0..g.len())
        .filter(|&v| keep(g.label(v).residue().expect("gamma labels are residues")))
        .collect();
    Ok(g.induced_subgraph(&ids))
}

/// Zero-divisor graph restricted to the nonzero nilpotents.
pub fn nilradical_graph(n: u64) -> Result<LabeledGraph, GraphError> {
    let rad = ring::factorize(n)?.radical();
    restrict_gamma(n, |k| k % rad == 0)
}

/// Zero-divisor graph restricted to the non-nilpotent zero divisors.
pub fn non_nilradical_graph(n: u64) -> Result<LabeledGraph, GraphError> {
    let rad = ring::factorize(n)?.radical();
    restrict_gamma(n, |k| k % rad != 0)
}

/// Numeric value used for an endpoint inside a pair label: the residue when
/// the vertex has one, otherwise its id.
fn endpoint_value(g: &LabeledGraph, v: usize) -> u64 {
    g.label(v).residue().unwrap_or(v as u64)
}

/// Edge indices incident to each vertex.
fn incidence(len: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut incident = vec![Vec::new(); len];
    for (i, &(u, v)) in edges.iter().enumerate() {
        incident[u].push(i);
        incident[v].push(i);
    }
    incident
}

/// One vertex per edge of `g` (in [`LabeledGraph::edges`] order), adjacent
/// when the edges share an endpoint.
pub fn line_graph(g: &LabeledGraph) -> LabeledGraph {
    let edges = g.edges();
    let labels = edges
        .iter()
        .map(|&(u, v)| VertexLabel::edge_pair(endpoint_value(g, u), endpoint_value(g, v)))
        .collect();
    let mut l = LabeledGraph::edgeless(labels, g.modulus);
    for incident in incidence(g.len(), &edges) {
        for (i, &a) in incident.iter().enumerate() {
            for &b in &incident[i + 1..] {
                l.connect(a, b);
            }
        }
    }
    l
}

/// Vertices of `g` followed by one vertex per edge of `g`. Adjacency joins
/// adjacent vertices, edges sharing an endpoint, and each edge to its two
/// endpoints.
pub fn total_graph(g: &LabeledGraph) -> LabeledGraph {
    let n = g.len();
    let edges = g.edges();
    let labels = (0..n)
        .map(|v| VertexLabel::TotalOriginal(endpoint_value(g, v)))
        .chain(
            edges
                .iter()
                .map(|&(u, v)| VertexLabel::total_edge(endpoint_value(g, u), endpoint_value(g, v))),
        )
        .collect();
    let mut t = LabeledGraph::edgeless(labels, g.modulus);
    for &(u, v) in &edges {
        t.connect(u, v);
    }
    for (i, &(a, b)) in edges.iter().enumerate() {
        t.connect(n + i, a);
        t.connect(n + i, b);
    }
    for incident in incidence(n, &edges) {
        for (i, &a) in incident.iter().enumerate() {
            for &b in &incident[i + 1..] {
                t.connect(n + a, n + b);
            }
        }
    }
    t
}

/// Graph families derived from `Z_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Gamma,
    Nilradical,
    Omega,
    LineOfGamma,
    TotalOfGamma,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Gamma,
        Family::Nilradical,
        Family::Omega,
        Family::LineOfGamma,
        Family::TotalOfGamma,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Gamma => "gamma",
            Family::Nilradical => "nilradical",
            Family::Omega => "omega",
            Family::LineOfGamma => "line-of-gamma",
            Family::TotalOfGamma => "total-of-gamma",
        }
    }

    pub fn build(self, n: u64) -> Result<LabeledGraph, GraphError> {
        match self {
            Family::Gamma => gamma(n),
            Family::Nilradical => nilradical_graph(n),
            Family::Omega => non_nilradical_graph(n),
            Family::LineOfGamma => Ok(line_graph(&gamma(n)?)),
            Family::TotalOfGamma => Ok(total_graph(&gamma(n)?)),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown graph family `{0}`")]
pub struct UnknownFamily(pub String);

impl std::str::FromStr for Family {
    type Err = UnknownFamily;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| UnknownFamily(s.to_string()))
    }
}
