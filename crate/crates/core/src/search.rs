//! Existence search for VCE bipartitions.
//!
//! [`brute_force`] is the ground truth for small graphs, [`local_search`] a
//! seeded heuristic that can only ever report success or give up.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::LabeledGraph;
use crate::vce::{self, Bipartition, Side};

/// Largest graph [`brute_force`] enumerates by default (about 3*10^7
/// bipartitions).
pub const DEFAULT_VERTEX_CAP: usize = 26;

/// Hard limit of the bitmask enumeration.
const MAX_ENUMERABLE: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchResult {
    Found(Bipartition),
    NoneExists,
    Inconclusive(String),
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub result: SearchResult,
    /// Bipartitions decided: evaluated directly or ruled out by pruning.
    pub partitions_examined: u64,
    pub elapsed: Duration,
}

impl SearchOutcome {
    pub fn found(&self) -> Option<&Bipartition> {
        match &self.result {
            SearchResult::Found(pi) => Some(pi),
            _ => None,
        }
    }
}

/// Smallest isolated vertex. Its presence rules out every VCE bipartition,
/// since `0 < 0` fails for it on either side.
pub fn isolated_obstruction(g: &LabeledGraph) -> Option<usize> {
    (0..g.len()).find(|&v| g.degree(v) == 0)
}

struct Enumeration {
    adj: Vec<u64>,
    deg: Vec<u32>,
    /// Vertices assigned so far, vertex 0 included.
    assigned: u64,
    /// Assigned vertices on side B.
    blue: u64,
    examined: u64,
}

impl Enumeration {
    fn violates(&self, v: usize) -> bool {
        let own = if self.blue >> v & 1 == 1 {
            self.blue
        } else {
            self.assigned & !self.blue
        };
        2 * (self.adj[v] & own).count_ones() >= self.deg[v]
    }

    /// Checks `v` and its assigned same-side neighbors, the only vertices
    /// whose inside count changed when `v` was placed.
    fn placement_violates(&self, v: usize) -> bool {
        if self.violates(v) {
            return true;
        }
        let own = if self.blue >> v & 1 == 1 {
            self.blue
        } else {
            self.assigned & !self.blue
        };
        let mut rest = self.adj[v] & own;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.violates(u) {
                return true;
            }
        }
        false
    }

    /// Assigns vertices `v, v-1, ..., 1`, side R before side B, which visits
    /// the B-masks of vertices `1..len` in ascending binary order.
    fn descend(&mut self, v: usize) -> bool {
        if v == 0 {
            if self.blue == 0 {
                // All on R: not a bipartition.
                return false;
            }
            self.examined += 1;
            return true;
        }
        for side in [Side::R, Side::B] {
            self.assigned |= 1 << v;
            if side == Side::B {
                self.blue |= 1 << v;
            }
            if self.placement_violates(v) {
                let mut ruled_out = 1u64 << (v - 1);
                if self.blue == 0 {
                    ruled_out -= 1;
                }
                self.examined += ruled_out;
            } else if self.descend(v - 1) {
                return true;
            }
            self.assigned &= !(1 << v);
            self.blue &= !(1 << v);
        }
        false
    }
}

/// Exhaustive search with vertex 0 pinned to side R.
///
/// The first VCE bipartition in binary-counting order of the B-mask over
/// vertices `1..len` is returned. Branches are cut as soon as a vertex whose
/// same-side neighbors are all placed has no strict majority outside; this
/// never changes which bipartition is found first.
pub fn brute_force(g: &LabeledGraph, vertex_cap: usize) -> SearchOutcome {
    let start = Instant::now();
    let n = g.len();
    let finish = |result, examined| SearchOutcome {
        result,
        partitions_examined: examined,
        elapsed: start.elapsed(),
    };
    if n < 2 {
        return finish(SearchResult::NoneExists, 0);
    }
    if n > vertex_cap.min(MAX_ENUMERABLE) {
        let reason = format!(
            "{n} vertices exceed the exhaustive bound of {}",
            vertex_cap.min(MAX_ENUMERABLE)
        );
        return finish(SearchResult::Inconclusive(reason), 0);
    }

    let mut e = Enumeration {
        adj: (0..n).map(|v| g.row(v)[0]).collect(),
        deg: (0..n).map(|v| g.degree(v) as u32).collect(),
        assigned: 1,
        blue: 0,
        examined: 0,
    };
    if e.violates(0) {
        return finish(SearchResult::NoneExists, (1u64 << (n - 1)) - 1);
    }
    if e.descend(n - 1) {
        let pi = Bipartition::from_fn(n, |v| e.blue >> v & 1 == 0)
            .expect("found partitions have a nonempty B side");
        debug_assert!(vce::is_very_cost_effective(g, &pi).unwrap());
        finish(SearchResult::Found(pi), e.examined)
    } else {
        finish(SearchResult::NoneExists, e.examined)
    }
}

/// Greedy flip heuristic from random balanced starts.
///
/// Each step flips the vertex with the largest `inside - outside` margin
/// (smallest id on ties) until every margin is negative. A restart begins
/// when the step budget runs out or a flip would empty a side. The outcome is
/// a deterministic function of the arguments.
pub fn local_search(
    g: &LabeledGraph,
    max_restarts: usize,
    max_steps: usize,
    rng_seed: u64,
) -> SearchOutcome {
    let start = Instant::now();
    let n = g.len();
    let mut examined = 0u64;
    let finish = |result, examined| SearchOutcome {
        result,
        partitions_examined: examined,
        elapsed: start.elapsed(),
    };
    if n < 2 {
        let reason = "fewer than two vertices".to_string();
        return finish(SearchResult::Inconclusive(reason), 0);
    }

    let neighbors: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut order: Vec<usize> = (0..n).collect();

    for _ in 0..max_restarts {
        order.shuffle(&mut rng);
        let mut sides = vec![Side::B; n];
        for &v in &order[..n / 2] {
            sides[v] = Side::R;
        }
        let mut r_count = n / 2;
        let mut margin: Vec<i64> = (0..n)
            .map(|v| {
                neighbors[v]
                    .iter()
                    .map(|&u| if sides[u] == sides[v] { 1 } else { -1 })
                    .sum()
            })
            .collect();

        for step in 0..=max_steps {
            examined += 1;
            let (worst, &worst_margin) = margin
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
                .expect("nonempty graph");
            if worst_margin < 0 {
                let pi = Bipartition::new(sides).expect("both sides kept nonempty");
                return finish(SearchResult::Found(pi), examined);
            }
            if step == max_steps {
                break;
            }
            let emptied = match sides[worst] {
                Side::R => r_count == 1,
                Side::B => r_count == n - 1,
            };
            if emptied {
                break;
            }
            for &u in &neighbors[worst] {
                margin[u] += if sides[u] == sides[worst] { -2 } else { 2 };
            }
            margin[worst] = -margin[worst];
            match sides[worst] {
                Side::R => r_count -= 1,
                Side::B => r_count += 1,
            }
            sides[worst] = sides[worst].other();
        }
    }
    let reason = format!("no VCE bipartition after {max_restarts} restarts of {max_steps} steps");
    finish(SearchResult::Inconclusive(reason), examined)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gamma, line_graph, total_graph, VertexLabel};

    /// Independent oracle: every two-coloring, no symmetry reduction, no
    /// pruning, tallies from `has_edge`.
    fn naive_exists(g: &LabeledGraph) -> bool {
        let n = g.len();
        (1u64..(1 << n) - 1).any(|mask| {
            (0..n).all(|v| {
                let (mut inside, mut outside) = (0, 0);
                for u in (0..n).filter(|&u| g.has_edge(u, v)) {
                    if mask >> u & 1 == mask >> v & 1 {
                        inside += 1;
                    } else {
                        outside += 1;
                    }
                }
                inside < outside
            })
        })
    }

    /// First VCE mask in counting order, without pruning.
    fn first_mask(g: &LabeledGraph) -> Option<u64> {
        let n = g.len();
        (1u64..1 << (n - 1)).find(|&mask| {
            let pi = Bipartition::from_fn(n, |v| v == 0 || mask >> (v - 1) & 1 == 0).unwrap();
            vce::is_very_cost_effective(g, &pi).unwrap()
        })
    }

    fn corpus() -> Vec<LabeledGraph> {
        let mut graphs: Vec<LabeledGraph> = (2..=10).map(LabeledGraph::complete).collect();
        for n in 4..=40u64 {
            for g in [
                gamma(n).unwrap(),
                crate::graph::nilradical_graph(n).unwrap(),
                crate::graph::non_nilradical_graph(n).unwrap(),
            ] {
                if (2..=12).contains(&g.len()) {
                    graphs.push(g.clone());
                }
                let l = line_graph(&g);
                if (2..=12).contains(&l.len()) {
                    graphs.push(l);
                }
                let t = total_graph(&g);
                if (2..=12).contains(&t.len()) {
                    graphs.push(t);
                }
            }
        }
        graphs
    }

    #[test]
    fn brute_force_examples() {
        let out = brute_force(&LabeledGraph::complete(4), DEFAULT_VERTEX_CAP);
        let pi = out.found().expect("K_4 is VCE");
        assert_eq!(pi.members(Side::R).len(), 2);

        let out = brute_force(&LabeledGraph::complete(5), DEFAULT_VERTEX_CAP);
        assert_eq!(out.result, SearchResult::NoneExists);
        assert_eq!(out.partitions_examined, 15);

        let t = total_graph(&gamma(6).unwrap());
        assert_eq!(t.len(), 5);
        assert_eq!(brute_force(&t, DEFAULT_VERTEX_CAP).result, SearchResult::NoneExists);
    }

    #[test]
    fn brute_force_degenerate_inputs() {
        let empty = gamma(7).unwrap();
        let out = brute_force(&empty, DEFAULT_VERTEX_CAP);
        assert_eq!((out.result, out.partitions_examined), (SearchResult::NoneExists, 0));
        let single = LabeledGraph::complete(1);
        assert_eq!(brute_force(&single, DEFAULT_VERTEX_CAP).result, SearchResult::NoneExists);
        let k6 = LabeledGraph::complete(6);
        assert!(matches!(brute_force(&k6, 5).result, SearchResult::Inconclusive(_)));
    }

    #[test]
    fn brute_force_matches_naive_enumeration() {
        for g in corpus() {
            let out = brute_force(&g, DEFAULT_VERTEX_CAP);
            let expected = first_mask(&g);
            match (&out.result, expected) {
                (SearchResult::Found(pi), Some(mask)) => {
                    assert!(vce::is_very_cost_effective(&g, pi).unwrap());
                    let blue: u64 = (1..g.len())
                        .filter(|&v| pi.side(v) == Side::B)
                        .map(|v| 1 << (v - 1))
                        .sum();
                    assert_eq!(blue, mask, "{g:?}");
                    assert_eq!(out.partitions_examined, mask);
                }
                (SearchResult::NoneExists, None) => {
                    assert_eq!(out.partitions_examined, (1 << (g.len() - 1)) - 1);
                }
                other => panic!("disagreement on {g:?}: {other:?}"),
            }
            assert_eq!(out.found().is_some(), naive_exists(&g), "{g:?}");
        }
    }

    #[test]
    fn isolated_obstruction_examples() {
        let label = |g: &LabeledGraph, v: Option<usize>| v.map(|v| g.label(v));
        let g = crate::graph::non_nilradical_graph(12).unwrap();
        assert_eq!(label(&g, isolated_obstruction(&g)), Some(VertexLabel::Residue(2)));
        let g = crate::graph::non_nilradical_graph(18).unwrap();
        assert_eq!(label(&g, isolated_obstruction(&g)), Some(VertexLabel::Residue(3)));
        assert_eq!(isolated_obstruction(&gamma(16).unwrap()), None);
    }

    #[test]
    fn obstruction_implies_exhaustion() {
        for g in corpus().into_iter().filter(|g| g.len() <= 15) {
            if isolated_obstruction(&g).is_some() {
                assert_eq!(brute_force(&g, DEFAULT_VERTEX_CAP).result, SearchResult::NoneExists);
            }
        }
    }

    #[test]
    fn local_search_examples() {
        let g = gamma(15).unwrap();
        for seed in 0..20 {
            let out = local_search(&g, 10, 100, seed);
            let pi = out.found().expect("gamma(15) is VCE");
            assert!(vce::is_very_cost_effective(&g, pi).unwrap());
        }
        for seed in 0..5 {
            let out = local_search(&LabeledGraph::complete(5), 5, 50, seed);
            assert!(matches!(out.result, SearchResult::Inconclusive(_)));
        }
        let out = local_search(&LabeledGraph::complete(10), 1, 10, 7);
        assert!(out.found().is_some());
        assert_eq!(out.partitions_examined, 1);
    }

    #[test]
    fn local_search_is_deterministic_and_sound() {
        for g in corpus() {
            let a = local_search(&g, 4, 40, 11);
            let b = local_search(&g, 4, 40, 11);
            assert_eq!(a.result, b.result);
            match &a.result {
                SearchResult::Found(pi) => {
                    assert!(vce::is_very_cost_effective(&g, pi).unwrap());
                    assert!(brute_force(&g, DEFAULT_VERTEX_CAP).found().is_some());
                }
                SearchResult::NoneExists => panic!("local search never proves nonexistence"),
                SearchResult::Inconclusive(_) => {}
            }
        }
    }
}
