//! Very cost effective (VCE) bipartition checker.
//!
//! A vertex is very cost effective when it has strictly fewer neighbors on
//! its own side than on the other side, cost effective when it has at most as
//! many. A bipartition is very cost effective when every vertex is.

use std::fmt;

use thiserror::Error;

use crate::graph::LabeledGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VceError {
    #[error("bipartition has an empty {0} side")]
    EmptySide(Side),
    #[error("bipartition covers {partition} vertices but the graph has {graph}")]
    SizeMismatch { partition: usize, graph: usize },
    #[error("vertex {vertex} out of range for {len} vertices")]
    VertexOutOfRange { vertex: usize, len: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    R,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::R => Side::B,
            Side::B => Side::R,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::R => "R",
            Side::B => "B",
        })
    }
}

/// Two-coloring of `0..len` with both sides nonempty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bipartition {
    sides: Vec<Side>,
    r_mask: Vec<u64>,
}

impl Bipartition {
    pub fn new(sides: Vec<Side>) -> Result<Self, VceError> {
        for side in [Side::R, Side::B] {
            if !sides.contains(&side) {
                return Err(VceError::EmptySide(side));
            }
        }
        let mut r_mask = vec![0u64; sides.len().div_ceil(64).max(1)];
        for (v, _) in sides.iter().enumerate().filter(|(_, &s)| s == Side::R) {
            r_mask[v / 64] |= 1 << (v % 64);
        }
        Ok(Bipartition { sides, r_mask })
    }

    /// Puts `r` on side R and every other vertex of `0..len` on side B.
    pub fn from_r_members(
        len: usize,
        r: impl IntoIterator<Item = usize>,
    ) -> Result<Self, VceError> {
        let mut sides = vec![Side::B; len];
        for v in r {
            if v >= len {
                return Err(VceError::VertexOutOfRange { vertex: v, len });
            }
            sides[v] = Side::R;
        }
        Self::new(sides)
    }

    /// Predicate form of [`Bipartition::from_r_members`].
    pub fn from_fn(len: usize, in_r: impl Fn(usize) -> bool) -> Result<Self, VceError> {
        Self::from_r_members(len, (0..len).filter(|&v| in_r(v)))
    }

    /// First half of `0..len` on R, second half on B.
    pub fn balanced(len: usize) -> Result<Self, VceError> {
        Self::from_r_members(len, 0..len / 2)
    }

    pub fn len(&self) -> usize {
        self.sides.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sides.is_empty()
    }

    pub fn side(&self, v: usize) -> Side {
        self.sides[v]
    }

    pub fn sides(&self) -> &[Side] {
        &self.sides
    }

    /// Vertices on `side`, ascending.
    pub fn members(&self, side: Side) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.sides[v] == side).collect()
    }

    pub fn swapped(&self) -> Bipartition {
        Self::new(self.sides.iter().map(|s| s.other()).collect())
            .expect("swapping keeps both sides nonempty")
    }

    /// Neighbors of `v` on side R.
    fn r_neighbors(&self, g: &LabeledGraph, v: usize) -> usize {
        g.row(v)
            .iter()
            .zip(&self.r_mask)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    fn ensure_fits(&self, g: &LabeledGraph) -> Result<(), VceError> {
        if self.len() != g.len() {
            return Err(VceError::SizeMismatch {
                partition: self.len(),
                graph: g.len(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexVerdict {
    VeryCostEffective,
    CostEffectiveOnly,
    NotCostEffective,
}

impl VertexVerdict {
    fn of(inside: usize, outside: usize) -> Self {
        match inside.cmp(&outside) {
            std::cmp::Ordering::Less => VertexVerdict::VeryCostEffective,
            std::cmp::Ordering::Equal => VertexVerdict::CostEffectiveOnly,
            std::cmp::Ordering::Greater => VertexVerdict::NotCostEffective,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VertexTally {
    pub vertex: usize,
    pub inside: usize,
    pub outside: usize,
    pub verdict: VertexVerdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PartitionVerdict {
    VeryCostEffective,
    CostEffectiveOnly,
    Neither,
}

impl fmt::Display for PartitionVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PartitionVerdict::VeryCostEffective => "very cost effective",
            PartitionVerdict::CostEffectiveOnly => "cost effective only",
            PartitionVerdict::Neither => "not cost effective",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VceReport {
    pub tallies: Vec<VertexTally>,
    pub verdict: PartitionVerdict,
    /// Vertices that are not very cost effective, ascending.
    pub witnesses: Vec<usize>,
}

impl VceReport {
    pub fn is_very_cost_effective(&self) -> bool {
        self.verdict == PartitionVerdict::VeryCostEffective
    }
}

fn tally_unchecked(g: &LabeledGraph, pi: &Bipartition, v: usize) -> VertexTally {
    let deg = g.degree(v);
    let r = pi.r_neighbors(g, v);
    let (inside, outside) = match pi.side(v) {
        Side::R => (r, deg - r),
        Side::B => (deg - r, r),
    };
    VertexTally {
        vertex: v,
        inside,
        outside,
        verdict: VertexVerdict::of(inside, outside),
    }
}

pub fn tally(g: &LabeledGraph, pi: &Bipartition, v: usize) -> Result<VertexTally, VceError> {
    pi.ensure_fits(g)?;
    if v >= g.len() {
        return Err(VceError::VertexOutOfRange {
            vertex: v,
            len: g.len(),
        });
    }
    Ok(tally_unchecked(g, pi, v))
}

/// Full per-vertex report for `pi` on `g`.
pub fn check_bipartition(g: &LabeledGraph, pi: &Bipartition) -> Result<VceReport, VceError> {
    pi.ensure_fits(g)?;
    let tallies: Vec<VertexTally> = (0..g.len()).map(|v| tally_unchecked(g, pi, v)).collect();
    let worst = tallies
        .iter()
        .map(|t| t.verdict)
        .max()
        .unwrap_or(VertexVerdict::VeryCostEffective);
    let verdict = match worst {
        VertexVerdict::VeryCostEffective => PartitionVerdict::VeryCostEffective,
        VertexVerdict::CostEffectiveOnly => PartitionVerdict::CostEffectiveOnly,
        VertexVerdict::NotCostEffective => PartitionVerdict::Neither,
    };
    let witnesses = tallies
        .iter()
        .filter(|t| t.verdict != VertexVerdict::VeryCostEffective)
        .map(|t| t.vertex)
        .collect();
    Ok(VceReport {
        tallies,
        verdict,
        witnesses,
    })
}

/// Short-circuiting form of [`check_bipartition`].
pub fn is_very_cost_effective(g: &LabeledGraph, pi: &Bipartition) -> Result<bool, VceError> {
    pi.ensure_fits(g)?;
    Ok((0..g.len()).all(|v| {
        let t = tally_unchecked(g, pi, v);
        t.inside < t.outside
    }))
}
