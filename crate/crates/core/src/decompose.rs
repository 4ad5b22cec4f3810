//! Iterated balanced-edge deletion.
//!
//! Every round deletes one balanced edge from each component that still has
//! an edge; an edge's color is the round that deleted it. The number of
//! rounds is the depth `d(T)`, and [`min_depth`] minimizes it over all
//! choices among tied balanced edges.

use std::collections::{HashMap, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ceil_log2, Tree};
use crate::verify::EdgeColoring;

/// Largest tree [`min_depth`] accepts.
pub const MIN_DEPTH_MAX_N: usize = 40;

/// How to pick among several balanced edges of a component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum TieBreak {
    #[default]
    LowestEdgeIndex,
    SeededRandom(u64),
}

/// Per-edge deletion round plus the edges deleted in each round.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionTrace {
    /// round (1-based) in which each edge was deleted
    pub depth_of: Vec<u32>,
    /// `rounds[i]` holds the edges of depth `i + 1`, ascending
    pub rounds: Vec<Vec<usize>>,
}

impl DecompositionTrace {
    fn from_depths(depth_of: Vec<u32>) -> Self {
        let d = depth_of.iter().copied().max().unwrap_or(0) as usize;
        let mut rounds = vec![Vec::new(); d];
        for (e, &r) in depth_of.iter().enumerate() {
            rounds[r as usize - 1].push(e);
        }
        DecompositionTrace { depth_of, rounds }
    }

    /// Number of rounds.
    pub fn depth(&self) -> u32 {
        self.rounds.len() as u32
    }

    /// The coloring that gives each edge its round number.
    pub fn coloring(&self) -> EdgeColoring {
        EdgeColoring::with_k(self.depth(), self.depth_of.clone()).expect("depths lie in 1..=d")
    }
}

/// A component still to be split, with its edges' indices in the input tree.
struct Pending {
    tree: Tree,
    host_edges: Vec<usize>,
    round: u32,
}

/// Runs the decomposition, choosing each component's edge with `choose`,
/// which receives the component and its balanced edges (local indices).
fn decompose_with(tree: &Tree, mut choose: impl FnMut(&Tree, &[usize]) -> usize) -> DecompositionTrace {
    let mut depth_of = vec![0u32; tree.m()];
    // FIFO keeps components in round order
    let mut queue = VecDeque::from([Pending {
        tree: tree.clone(),
        host_edges: (0..tree.m()).collect(),
        round: 1,
    }]);
    while let Some(Pending {
        tree,
        host_edges,
        round,
    }) = queue.pop_front()
    {
        if tree.n() < 2 {
            continue;
        }
        let balanced = tree.balanced_edges().expect("component has an edge");
        let e = choose(&tree, &balanced);
        depth_of[host_edges[e]] = round;
        let (a, b) = tree.split(e).expect("edge is in range");
        for side in [a, b] {
            let host = side.edge_map.iter().map(|&x| host_edges[x]).collect();
            queue.push_back(Pending {
                tree: side.tree,
                host_edges: host,
                round: round + 1,
            });
        }
    }
    DecompositionTrace::from_depths(depth_of)
}

/// Balanced-edge decomposition under `policy`. Returns the round-number
/// coloring and the full trace.
pub fn algorithm1(tree: &Tree, policy: TieBreak) -> Result<(EdgeColoring, DecompositionTrace)> {
    if tree.n() < 2 {
        return Err(Error::TrivialTree);
    }
    let trace = match policy {
        TieBreak::LowestEdgeIndex => decompose_with(tree, |_, balanced| balanced[0]),
        TieBreak::SeededRandom(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            decompose_with(tree, |_, balanced| {
                *balanced.choose(&mut rng).expect("non-empty")
            })
        }
    };
    Ok((trace.coloring(), trace))
}

/// `d(T)` under `policy`; 0 for a single vertex.
pub fn depth(tree: &Tree, policy: TieBreak) -> u32 {
    match algorithm1(tree, policy) {
        Ok((_, trace)) => trace.depth(),
        Err(_) => 0,
    }
}

/// Isomorphism-invariant encoding of an unrooted tree: the smaller of the
/// rooted encodings at its one or two centers.
pub fn canonical_form(tree: &Tree) -> Vec<u8> {
    fn encode(tree: &Tree, v: usize, parent: usize) -> Vec<u8> {
        let mut children: Vec<Vec<u8>> = tree
            .neighbors(v)
            .iter()
            .filter(|&&(w, _)| w != parent)
            .map(|&(w, _)| encode(tree, w, v))
            .collect();
        children.sort_unstable();
        let mut out = Vec::with_capacity(2 + children.iter().map(Vec::len).sum::<usize>());
        out.push(b'(');
        for c in children {
            out.extend(c);
        }
        out.push(b')');
        out
    }

    let n = tree.n();
    let mut degree: Vec<usize> = (0..n).map(|v| tree.degree(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &(w, _) in tree.neighbors(v) {
                degree[w] -= 1;
                if degree[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer
        .iter()
        .map(|&c| encode(tree, c, usize::MAX))
        .min()
        .unwrap_or_else(|| b"()".to_vec())
}

/// Memoized minimum depth over all balanced-edge choices, keyed by
/// canonical form so isomorphic components are solved once.
#[derive(Debug, Default)]
pub struct MinDepthSolver {
    memo: HashMap<Vec<u8>, u32>,
}

impl MinDepthSolver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn solve(&mut self, tree: &Tree) -> Result<u32> {
        if tree.n() > MIN_DEPTH_MAX_N {
            return Err(Error::TooLarge {
                what: "vertex count",
                got: tree.n(),
                limit: MIN_DEPTH_MAX_N,
            });
        }
        Ok(self.value(tree))
    }

    fn value(&mut self, tree: &Tree) -> u32 {
        if tree.n() < 2 {
            return 0;
        }
        if tree.n() == 2 {
            return 1;
        }
        let key = canonical_form(tree);
        if let Some(&d) = self.memo.get(&key) {
            return d;
        }
        let floor = (tree.max_degree() as u32).max(ceil_log2(tree.n()));
        let mut best = u32::MAX;
        for e in tree.balanced_edges().expect("n >= 2") {
            let d = self.after_split(tree, e);
            best = best.min(d);
            if best == floor {
                break;
            }
        }
        self.memo.insert(key, best);
        best
    }

    fn after_split(&mut self, tree: &Tree, e: usize) -> u32 {
        let (a, b) = tree.split(e).expect("edge is in range");
        1 + self.value(&a.tree).max(self.value(&b.tree))
    }

    /// A decomposition whose depth equals the minimum; ties go to the lowest
    /// edge index.
    pub fn optimal_trace(&mut self, tree: &Tree) -> Result<(EdgeColoring, DecompositionTrace)> {
        if tree.n() < 2 {
            return Err(Error::TrivialTree);
        }
        self.solve(tree)?;
        let trace = decompose_with(tree, |component, balanced| {
            let target = self.value(component);
            *balanced
                .iter()
                .find(|&&e| self.after_split(component, e) == target)
                .expect("some balanced edge attains the minimum")
        });
        Ok((trace.coloring(), trace))
    }
}

/// `D(T)`: the smallest depth reachable by any choice among tied balanced
/// edges. Limited to [`MIN_DEPTH_MAX_N`] vertices.
pub fn min_depth(tree: &Tree) -> Result<u32> {
    MinDepthSolver::new().solve(tree)
}

/// Turns deletion rounds into edge-ranking labels: `label(e) = d + 1 − d(e)`,
/// so the first edge deleted carries the largest label.
pub fn ranking_from_trace(trace: &DecompositionTrace) -> EdgeColoring {
    let d = trace.depth();
    let labels = trace.depth_of.iter().map(|&x| d + 1 - x).collect();
    EdgeColoring::with_k(d, labels).expect("labels lie in 1..=d")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{is_cfc_coloring, is_edge_ranking};

    fn path(n: usize) -> Tree {
        Tree::new(n, (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect()).unwrap()
    }

    fn star(k: usize) -> Tree {
        Tree::new(k + 1, (1..=k).map(|i| (0, i)).collect()).unwrap()
    }

    #[test]
    fn star_gets_distinct_colors() {
        let (c, trace) = algorithm1(&star(5), TieBreak::default()).unwrap();
        assert_eq!(trace.depth(), 5);
        assert_eq!(c.distinct_colors(), 5);
        assert_eq!(c.colors(), &[1, 2, 3, 4, 5]);
    }

    #[test]
    fn path_depths() {
        let (c, trace) = algorithm1(&path(8), TieBreak::default()).unwrap();
        assert_eq!(trace.depth(), 3);
        assert!(is_cfc_coloring(&path(8), &c).unwrap().is_valid());
        assert_eq!(depth(&path(16), TieBreak::default()), 4);
        assert_eq!(depth(&path(2), TieBreak::default()), 1);
        assert_eq!(depth(&Tree::singleton(), TieBreak::default()), 0);
        assert_eq!(algorithm1(&Tree::singleton(), TieBreak::default()), Err(Error::TrivialTree));
    }

    #[test]
    fn p4_trace() {
        let (_, trace) = algorithm1(&path(4), TieBreak::default()).unwrap();
        assert_eq!(trace.depth_of, vec![2, 1, 2]);
        assert_eq!(trace.rounds, vec![vec![1], vec![0, 2]]);
        assert_eq!(ranking_from_trace(&trace).colors(), &[1, 2, 1]);
    }

    #[test]
    fn ranking_labels() {
        let (_, trace) = algorithm1(&star(3), TieBreak::default()).unwrap();
        assert_eq!(trace.depth_of, vec![1, 2, 3]);
        let labels = ranking_from_trace(&trace);
        assert_eq!(labels.colors(), &[3, 2, 1]);
        assert!(is_edge_ranking(&star(3), &labels).unwrap().is_valid());
        let (_, trace) = algorithm1(&path(2), TieBreak::default()).unwrap();
        assert_eq!(ranking_from_trace(&trace).colors(), &[1]);
    }

    #[test]
    fn seeded_policy_is_deterministic() {
        let t = path(13);
        let a = algorithm1(&t, TieBreak::SeededRandom(9)).unwrap();
        let b = algorithm1(&t, TieBreak::SeededRandom(9)).unwrap();
        assert_eq!(a, b);
        assert!(is_cfc_coloring(&t, &a.0).unwrap().is_valid());
    }

    #[test]
    fn min_depth_values() {
        assert_eq!(min_depth(&path(5)).unwrap(), 3);
        assert_eq!(min_depth(&star(6)).unwrap(), 6);
        assert_eq!(min_depth(&Tree::singleton()).unwrap(), 0);
        assert!(matches!(min_depth(&path(41)), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn optimal_trace_attains_min_depth() {
        // a spider where the lowest-index balanced edge is a poor choice
        let t = Tree::new(
            10,
            vec![(0, 1), (1, 2), (2, 3), (0, 4), (4, 5), (5, 6), (0, 7), (7, 8), (8, 9)],
        )
        .unwrap();
        let mut solver = MinDepthSolver::new();
        let d = solver.solve(&t).unwrap();
        let (c, trace) = solver.optimal_trace(&t).unwrap();
        assert_eq!(trace.depth(), d);
        assert!(d <= depth(&t, TieBreak::default()));
        assert!(is_cfc_coloring(&t, &c).unwrap().is_valid());
    }

    #[test]
    fn canonical_form_ignores_labels() {
        let a = Tree::new(5, vec![(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        let b = Tree::new(5, vec![(4, 2), (2, 0), (2, 1), (3, 4)]).unwrap();
        assert_eq!(canonical_form(&a), canonical_form(&b));
        assert_ne!(canonical_form(&a), canonical_form(&path(5)));
        assert_eq!(canonical_form(&path(2)), b"(())".to_vec());
    }
}
