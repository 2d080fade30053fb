//! Explicit VCE bipartitions for the ring-derived graph families, and a
//! dispatcher that routes a modulus to the matching construction, to an
//! obstruction, or to search.
//!
//! Every constructor hands its partition to the checker before returning, so
//! a construction that stops verifying surfaces as
//! [`ConstructionError::CheckerRejected`] instead of a wrong answer.

use std::fmt;

use thiserror::Error;

use crate::graph::{self, Family, GraphError, LabeledGraph, VertexLabel};
use crate::ring::{self, ModulusShape};
use crate::search::{self, SearchResult};
use crate::vce::{self, Bipartition, VceError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("{construction} needs {expected}, but n = {n} has shape {found}")]
    WrongShape {
        construction: ConstructionId,
        expected: &'static str,
        n: u64,
        found: ModulusShape,
    },
    #[error("n = {n}: {reason}")]
    NoVceBipartition { n: u64, reason: String },
    #[error("{origin} produced a bipartition the checker rejects (witnesses {witnesses:?})")]
    CheckerRejected {
        origin: Source,
        witnesses: Vec<VertexLabel>,
    },
    #[error("{0} is not a prime pair p < q")]
    NotPrimePair(String),
    #[error("vertex {vertex} has degree {degree}, not an isolated vertex")]
    NotIsolated { vertex: usize, degree: usize },
    #[error("{family} graph of Z_{n} has no vertices")]
    EmptyGraph { n: u64, family: Family },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Partition(#[from] VceError),
}

/// Which explicit construction produced a partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstructionId {
    /// Zero-divisor graph, squarefree `n` with three or more primes.
    GammaSquarefree,
    /// Zero-divisor graph, `n = pq`: the two sides of `K_{q-1,p-1}`.
    GammaPq,
    GammaP2q,
    GammaP2q2,
    LinePq,
    NilradicalP2,
    NilradicalP2q2,
    NilradicalP3,
    NilradicalP2q,
    OmegaSquarefree,
    TotalPq,
}

impl ConstructionId {
    pub fn name(self) -> &'static str {
        match self {
            ConstructionId::GammaSquarefree => "gamma-squarefree",
            ConstructionId::GammaPq => "gamma-pq",
            ConstructionId::GammaP2q => "gamma-p2q",
            ConstructionId::GammaP2q2 => "gamma-p2q2",
            ConstructionId::LinePq => "line-pq",
            ConstructionId::NilradicalP2 => "nilradical-p2",
            ConstructionId::NilradicalP2q2 => "nilradical-p2q2",
            ConstructionId::NilradicalP3 => "nilradical-p3",
            ConstructionId::NilradicalP2q => "nilradical-p2q",
            ConstructionId::OmegaSquarefree => "omega-squarefree",
            ConstructionId::TotalPq => "total-pq",
        }
    }
}

impl fmt::Display for ConstructionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SearchMethod {
    BruteForce,
    LocalSearch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Source {
    Construction(ConstructionId),
    Search(SearchMethod),
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Construction(id) => write!(f, "{id}"),
            Source::Search(SearchMethod::BruteForce) => f.write_str("brute-force"),
            Source::Search(SearchMethod::LocalSearch) => f.write_str("local-search"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Witness {
    IsolatedVertex(usize),
    ExhaustedSearch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateKind {
    Exists { partition: Bipartition, source: Source },
    NotVce(Witness),
}

/// A checked claim about a graph: a verified VCE bipartition, or a witness
/// that none exists. Fields are private so every instance went through the
/// validating constructors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    kind: CertificateKind,
    graph: LabeledGraph,
}

impl Certificate {
    /// Wraps `partition` after the checker accepts it.
    pub fn exists(
        graph: LabeledGraph,
        partition: Bipartition,
        source: Source,
    ) -> Result<Self, ConstructionError> {
        let report = vce::check_bipartition(&graph, &partition)?;
        if !report.is_very_cost_effective() {
            return Err(ConstructionError::CheckerRejected {
                origin: source,
                witnesses: report.witnesses.iter().map(|&v| graph.label(v)).collect(),
            });
        }
        Ok(Certificate {
            kind: CertificateKind::Exists { partition, source },
            graph,
        })
    }

    pub fn isolated_vertex(graph: LabeledGraph, vertex: usize) -> Result<Self, ConstructionError> {
        if vertex >= graph.len() {
            return Err(VceError::VertexOutOfRange {
                vertex,
                len: graph.len(),
            }
            .into());
        }
        let degree = graph.degree(vertex);
        if degree != 0 {
            return Err(ConstructionError::NotIsolated { vertex, degree });
        }
        Ok(Certificate {
            kind: CertificateKind::NotVce(Witness::IsolatedVertex(vertex)),
            graph,
        })
    }

    /// Runs the exhaustive search and keeps its verdict; `None` when the
    /// graph is beyond `vertex_cap`.
    pub fn by_exhaustive_search(graph: LabeledGraph, vertex_cap: usize) -> Option<Self> {
        let kind = match search::brute_force(&graph, vertex_cap).result {
            SearchResult::Found(partition) => CertificateKind::Exists {
                partition,
                source: Source::Search(SearchMethod::BruteForce),
            },
            SearchResult::NoneExists => CertificateKind::NotVce(Witness::ExhaustedSearch),
            SearchResult::Inconclusive(_) => return None,
        };
        Some(Certificate { kind, graph })
    }

    pub fn kind(&self) -> &CertificateKind {
        &self.kind
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn partition(&self) -> Option<&Bipartition> {
        match &self.kind {
            CertificateKind::Exists { partition, .. } => Some(partition),
            CertificateKind::NotVce(_) => None,
        }
    }

    pub fn source(&self) -> Option<Source> {
        match &self.kind {
            CertificateKind::Exists { source, .. } => Some(*source),
            CertificateKind::NotVce(_) => None,
        }
    }

    pub fn is_vce(&self) -> bool {
        matches!(self.kind, CertificateKind::Exists { .. })
    }
}

fn shape_of(n: u64) -> Result<ModulusShape, ConstructionError> {
    Ok(ring::classify(&ring::factorize(n).map_err(GraphError::from)?))
}

fn residue(g: &LabeledGraph, v: usize) -> u64 {
    g.label(v).residue().expect("residue-labeled graph")
}

fn partition_by_residue(
    g: &LabeledGraph,
    in_r: impl Fn(u64) -> bool,
) -> Result<Bipartition, VceError> {
    Bipartition::from_fn(g.len(), |v| in_r(residue(g, v)))
}

fn certify(
    g: LabeledGraph,
    pi: Bipartition,
    id: ConstructionId,
) -> Result<Certificate, ConstructionError> {
    Certificate::exists(g, pi, Source::Construction(id))
}

fn squarefree_primes(n: u64, id: ConstructionId) -> Result<Vec<u64>, ConstructionError> {
    match shape_of(n)? {
        ModulusShape::SquarefreeComposite { primes } => Ok(primes),
        found => Err(ConstructionError::WrongShape {
            construction: id,
            expected: "a squarefree modulus with at least two prime factors",
            n,
            found,
        }),
    }
}

fn squarefree_on(
    g: LabeledGraph,
    primes: &[u64],
    id: ConstructionId,
) -> Result<Certificate, ConstructionError> {
    let largest = *primes.last().expect("at least two primes");
    let pi = partition_by_residue(&g, |k| k % largest == 0)?;
    certify(g, pi, id)
}

/// Squarefree `n` with at least two primes: R holds the zero divisors
/// divisible by the largest prime, B the rest.
pub fn vce_squarefree(n: u64) -> Result<Certificate, ConstructionError> {
    let primes = squarefree_primes(n, ConstructionId::GammaSquarefree)?;
    let id = if primes.len() == 2 {
        ConstructionId::GammaPq
    } else {
        ConstructionId::GammaSquarefree
    };
    squarefree_on(graph::gamma(n)?, &primes, id)
}

/// `n = p^2 q`: R holds the multiples of `q`, B the multiples of `p` that
/// `q` does not divide.
pub fn vce_p2q(n: u64) -> Result<Certificate, ConstructionError> {
    let ModulusShape::PSquaredQ { q, .. } = shape_of(n)? else {
        return Err(ConstructionError::WrongShape {
            construction: ConstructionId::GammaP2q,
            expected: "n = p^2 q",
            n,
            found: shape_of(n)?,
        });
    };
    let g = graph::gamma(n)?;
    let pi = partition_by_residue(&g, |k| k % q == 0)?;
    certify(g, pi, ConstructionId::GammaP2q)
}

/// Sizes `(|R3|, |B3|)` of the split of the multiples of `pq` divisible by
/// neither `p^2` nor `q^2`.
pub fn p2q2_split_sizes(p: u64, q: u64) -> (u64, u64) {
    ((q * (p - 2)).div_ceil(2), (p * (q - 2)).div_ceil(2))
}

/// `n = p^2 q^2`, `3 <= p < q`.
///
/// R gets the multiples of `p^2` and the multiples of `p` prime to `q`; B the
/// mirror image for `q`. The `(p-1)(q-1)` remaining multiples of `pq` all
/// share one neighborhood, so they are split by size only: the smallest
/// `(q(p-2)+1)/2` join R, the rest join B.
pub fn vce_p2q2(n: u64) -> Result<Certificate, ConstructionError> {
    let (p, q) = match shape_of(n)? {
        ModulusShape::PSquaredQSquared { p, q } if p > 2 => (p, q),
        found => {
            return Err(ConstructionError::WrongShape {
                construction: ConstructionId::GammaP2q2,
                expected: "n = p^2 q^2 with odd primes p < q",
                n,
                found,
            })
        }
    };
    let (r3_size, _) = p2q2_split_sizes(p, q);
    let g = graph::gamma(n)?;
    let is_mixed = |k: u64| k.is_multiple_of(p * q) && !k.is_multiple_of(p * p) && !k.is_multiple_of(q * q);
    let mixed_rank = |k: u64| {
        // Mixed vertices are pq*t with t prime to pq; rank them in order.
        (1..=k / (p * q)).filter(|&t| t % p != 0 && t % q != 0).count() as u64
    };
    let pi = partition_by_residue(&g, |k| {
        if is_mixed(k) {
            mixed_rank(k) <= r3_size
        } else {
            k % (p * p) == 0 || (k % p == 0 && k % q != 0)
        }
    })?;
    certify(g, pi, ConstructionId::GammaP2q2)
}

fn prime_pair(p: u64, q: u64) -> Result<(), ConstructionError> {
    if p < q && ring::is_prime(p) && ring::is_prime(q) {
        Ok(())
    } else {
        Err(ConstructionError::NotPrimePair(format!("({p}, {q})")))
    }
}

/// Side of the edge `[p*i, q*j]` in the alternating half-split: odd `i`
/// takes `j` in the low half `1..=(p-1)/2`, even `i` the high half.
fn half_split_in_r(p: u64, q: u64, a: u64, b: u64) -> bool {
    let (u, v) = if a.is_multiple_of(p) { (a, b) } else { (b, a) };
    let (i, j) = (u / p, v / q);
    let low = j <= (p - 1) / 2;
    (i % 2 == 1) == low
}

/// Line graph of the zero-divisor graph of `Z_pq`.
///
/// For odd `p` this is the alternating half-split. For `p = 2` the line graph
/// is the even complete graph `K_{q-1}`, split in half by ascending label.
pub fn vce_line_pq(p: u64, q: u64) -> Result<Certificate, ConstructionError> {
    prime_pair(p, q)?;
    let l = graph::line_graph(&graph::gamma(p * q)?);
    let pi = if p == 2 {
        Bipartition::balanced(l.len())?
    } else {
        Bipartition::from_fn(l.len(), |v| {
            let (a, b) = l.label(v).pair().expect("edge labels");
            half_split_in_r(p, q, a, b)
        })?
    };
    certify(l, pi, ConstructionId::LinePq)
}

fn nil_refusal(n: u64, reason: &str) -> ConstructionError {
    ConstructionError::NoVceBipartition {
        n,
        reason: reason.to_string(),
    }
}

/// Nilradical graph for the moduli shapes with a known construction.
///
/// `p^2` (odd `p`), `p^2 q` (odd squared prime) and `p^2 q^2` (both odd) give
/// even complete graphs, split in half by ascending label. `p^3` splits the
/// multiples of `p` by whether `p^2` divides them.
pub fn vce_nilradical(n: u64) -> Result<Certificate, ConstructionError> {
    let shape = shape_of(n)?;
    let g = graph::nilradical_graph(n)?;
    let (pi, id) = match shape {
        ModulusShape::PSquared { p } if p > 2 => {
            (Bipartition::balanced(g.len())?, ConstructionId::NilradicalP2)
        }
        ModulusShape::PSquared { .. } => {
            return Err(nil_refusal(n, "the nilradical graph is a single vertex"))
        }
        ModulusShape::PSquaredQSquared { p, q } if p > 2 => {
            debug_assert!(q > 2);
            (Bipartition::balanced(g.len())?, ConstructionId::NilradicalP2q2)
        }
        ModulusShape::PSquaredQSquared { p, q } => {
            let m = p * q - 1;
            return Err(nil_refusal(
                n,
                &format!("the nilradical graph is K_{m}, an odd complete graph with no VCE bipartition"),
            ));
        }
        ModulusShape::PCubed { p } => {
            let pi = partition_by_residue(&g, |k| k % (p * p) != 0)?;
            (pi, ConstructionId::NilradicalP3)
        }
        ModulusShape::PSquaredQ { p, .. } if p > 2 => {
            (Bipartition::balanced(g.len())?, ConstructionId::NilradicalP2q)
        }
        ModulusShape::PSquaredQ { .. } => {
            return Err(nil_refusal(n, "the nilradical graph is a single vertex"))
        }
        found => {
            return Err(ConstructionError::WrongShape {
                construction: ConstructionId::NilradicalP2,
                expected: "n = p^2, p^3, p^2 q or p^2 q^2",
                n,
                found,
            })
        }
    };
    certify(g, pi, id)
}

/// Squarefree `n`: the non-nilradical graph equals the zero-divisor graph, so
/// the squarefree partition carries over unchanged.
pub fn vce_omega_squarefree(n: u64) -> Result<Certificate, ConstructionError> {
    let primes = squarefree_primes(n, ConstructionId::OmegaSquarefree)?;
    squarefree_on(graph::non_nilradical_graph(n)?, &primes, ConstructionId::OmegaSquarefree)
}

/// Total graph of the zero-divisor graph of `Z_pq`, `3 <= p < q`.
///
/// R holds the multiples of `p` and B the multiples of `q`; edge vertices
/// follow the same alternating half-split as [`vce_line_pq`].
pub fn vce_total_pq(p: u64, q: u64) -> Result<Certificate, ConstructionError> {
    prime_pair(p, q)?;
    if p == 2 {
        return Err(ConstructionError::NoVceBipartition {
            n: 2 * q,
            reason: "the total graph of a star has no VCE bipartition".to_string(),
        });
    }
    let t = graph::total_graph(&graph::gamma(p * q)?);
    let pi = Bipartition::from_fn(t.len(), |v| match t.label(v) {
        VertexLabel::TotalOriginal(k) => k % p == 0,
        VertexLabel::TotalEdge(a, b) => half_split_in_r(p, q, a, b),
        other => unreachable!("total graph label {other}"),
    })?;
    certify(t, pi, ConstructionId::TotalPq)
}

/// Result of [`dispatch`]: a certificate, or no verdict within budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Dispatch {
    Certified(Certificate),
    Unknown { graph: LabeledGraph, reason: String },
}

impl Dispatch {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Dispatch::Certified(c) => Some(c),
            Dispatch::Unknown { .. } => None,
        }
    }

    pub fn graph(&self) -> &LabeledGraph {
        match self {
            Dispatch::Certified(c) => c.graph(),
            Dispatch::Unknown { graph, .. } => graph,
        }
    }
}

/// Search budget for graphs past the exhaustive bound.
#[derive(Debug, Clone, Copy)]
pub struct SearchBudget {
    pub vertex_cap: usize,
    pub restarts: usize,
    pub steps: usize,
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            vertex_cap: search::DEFAULT_VERTEX_CAP,
            restarts: 20,
            steps: 2000,
            seed: 0,
        }
    }
}

/// Obstruction check, then exhaustive search, then local search.
pub fn certify_by_search(g: LabeledGraph, budget: &SearchBudget) -> Dispatch {
    if let Some(v) = search::isolated_obstruction(&g) {
        let cert = Certificate::isolated_vertex(g, v).expect("vertex is isolated");
        return Dispatch::Certified(cert);
    }
    if g.len() <= budget.vertex_cap {
        if let Some(cert) = Certificate::by_exhaustive_search(g.clone(), budget.vertex_cap) {
            return Dispatch::Certified(cert);
        }
    }
    let out = search::local_search(&g, budget.restarts, budget.steps, budget.seed);
    match out.result {
        SearchResult::Found(pi) => {
            let cert = Certificate::exists(g, pi, Source::Search(SearchMethod::LocalSearch))
                .expect("local search returns verified partitions");
            Dispatch::Certified(cert)
        }
        SearchResult::Inconclusive(reason) => Dispatch::Unknown { graph: g, reason },
        SearchResult::NoneExists => unreachable!("local search never proves nonexistence"),
    }
}

/// Routes `(n, family)` to a construction by modulus shape, to the
/// isolated-vertex obstruction, or to search for shapes without one.
pub fn dispatch(
    n: u64,
    family: Family,
    budget: &SearchBudget,
) -> Result<Dispatch, ConstructionError> {
    let g = family.build(n)?;
    if g.is_empty() {
        return Err(ConstructionError::EmptyGraph { n, family });
    }
    let shape = shape_of(n)?;
    let constructed = match (family, &shape) {
        (Family::Gamma, ModulusShape::SquarefreeComposite { .. }) => Some(vce_squarefree(n)),
        (Family::Gamma, ModulusShape::PSquaredQ { .. }) => Some(vce_p2q(n)),
        (Family::Gamma, ModulusShape::PSquaredQSquared { p, .. }) if *p > 2 => Some(vce_p2q2(n)),
        (Family::Nilradical, ModulusShape::PSquared { p }) if *p > 2 => Some(vce_nilradical(n)),
        (Family::Nilradical, ModulusShape::PCubed { .. }) => Some(vce_nilradical(n)),
        (Family::Nilradical, ModulusShape::PSquaredQ { p, .. }) if *p > 2 => {
            Some(vce_nilradical(n))
        }
        (Family::Nilradical, ModulusShape::PSquaredQSquared { p, .. }) if *p > 2 => {
            Some(vce_nilradical(n))
        }
        (Family::Omega, ModulusShape::SquarefreeComposite { .. }) => {
            Some(vce_omega_squarefree(n))
        }
        (Family::LineOfGamma, ModulusShape::SquarefreeComposite { primes }) if primes.len() == 2 => {
            Some(vce_line_pq(primes[0], primes[1]))
        }
        (Family::TotalOfGamma, ModulusShape::SquarefreeComposite { primes })
            if primes.len() == 2 && primes[0] > 2 =>
        {
            Some(vce_total_pq(primes[0], primes[1]))
        }
        _ => None,
    };
    match constructed {
        Some(cert) => Ok(Dispatch::Certified(cert?)),
        None => Ok(certify_by_search(g, budget)),
    }
}
