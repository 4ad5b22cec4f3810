//! Exact values of cfc, rank and oc for small trees by bounded
//! branch-and-bound, plus criticality testing and cut-edge bounds for
//! general graphs.
//!
//! Every solver brackets the answer between a structural lower bound and a
//! constructive upper bound from the balanced-edge decomposition, then tries
//! each `k` in between. Edges are colored in breadth-first order from a
//! centroid, and a constraint (a vertex pair's path, or an edge pair for
//! rankings) is checked as soon as its last edge is colored.

use std::collections::HashMap;

use serde::Serialize;
use serde_json::json;

use crate::decompose::{algorithm1, canonical_form, ranking_from_trace, MinDepthSolver, TieBreak, MIN_DEPTH_MAX_N};
use crate::error::{Error, Result};
use crate::graph::{ceil_log2, Graph, Tree};
use crate::verify::EdgeColoring;

pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Largest tree [`oc_exact`] accepts.
pub const OC_MAX_N: usize = 12;

/// Colors are held in `u64` bit masks during search.
const MAX_SEARCH_COLORS: u32 = 63;

/// Result of an exact solver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub value: u32,
    pub certificate: EdgeColoring,
    pub lower_bound_used: u32,
    pub upper_bound_used: u32,
    pub nodes_explored: u64,
    /// set when the value was settled without search
    pub closed_form: Option<&'static str>,
}

impl SearchReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "value": self.value,
            "lb": self.lower_bound_used,
            "ub": self.upper_bound_used,
            "closed_form": self.closed_form,
            "nodes": self.nodes_explored,
            "certificate": self.certificate.colors(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Goal {
    ConflictFree,
    Odd,
    Ranking,
}

/// Constraints of one tree, grouped by the search position at which they
/// become fully colored.
struct Problem {
    order: Vec<usize>,
    due: Vec<Vec<usize>>,
    spans: Vec<(usize, usize)>,
    pool: Vec<u16>,
    goal: Goal,
    m: usize,
}

impl Problem {
    fn new(tree: &Tree, goal: Goal) -> Self {
        let m = tree.m();
        let order = search_order(tree);
        let mut pos = vec![0; m];
        for (i, &e) in order.iter().enumerate() {
            pos[e] = i;
        }
        let mut due = vec![Vec::new(); m];
        let mut spans = Vec::new();
        let mut pool: Vec<u16> = Vec::new();
        let mut push = |edges: Vec<usize>, spans: &mut Vec<(usize, usize)>| {
            let last = edges.iter().map(|&e| pos[e]).max().expect("constraint has edges");
            due[last].push(spans.len());
            spans.push((pool.len(), pool.len() + edges.len()));
            pool.extend(edges.into_iter().map(|e| e as u16));
        };
        match goal {
            Goal::ConflictFree | Goal::Odd => {
                for u in 0..tree.n() {
                    for v in u + 1..tree.n() {
                        let path = tree.path_edges(u, v).expect("distinct vertices");
                        push(path, &mut spans);
                    }
                }
            }
            Goal::Ranking => {
                for e in 0..m {
                    for f in e + 1..m {
                        let (a, _) = tree.edges()[e];
                        let (c, _) = tree.edges()[f];
                        let mut edges = vec![e, f];
                        if a != c {
                            edges.extend(
                                tree.path_edges(a, c)
                                    .expect("distinct vertices")
                                    .into_iter()
                                    .filter(|&x| x != e && x != f),
                            );
                        }
                        push(edges, &mut spans);
                    }
                }
            }
        }
        Problem {
            order,
            due,
            spans,
            pool,
            goal,
            m,
        }
    }

    fn satisfied(&self, id: usize, colors: &[u32]) -> bool {
        let (s, t) = self.spans[id];
        let edges = &self.pool[s..t];
        match self.goal {
            Goal::ConflictFree => {
                let (mut once, mut multi) = (0u64, 0u64);
                for &e in edges {
                    let bit = 1u64 << colors[e as usize];
                    multi |= once & bit;
                    once |= bit;
                }
                once & !multi != 0
            }
            Goal::Odd => edges
                .iter()
                .fold(0u64, |acc, &e| acc ^ (1u64 << colors[e as usize]))
                != 0,
            Goal::Ranking => {
                let label = colors[edges[0] as usize];
                label != colors[edges[1] as usize]
                    || edges[2..].iter().any(|&x| colors[x as usize] > label)
            }
        }
    }
}

/// Edges in breadth-first order from a centroid.
fn search_order(tree: &Tree) -> Vec<usize> {
    let root = tree.centroid();
    let mut seen = vec![false; tree.n()];
    seen[root] = true;
    let mut order = Vec::with_capacity(tree.m());
    let mut queue = std::collections::VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &(w, e) in tree.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                order.push(e);
                queue.push_back(w);
            }
        }
    }
    order
}

enum Outcome {
    Found(Vec<u32>),
    Infeasible,
    OutOfBudget,
}

struct Search<'a> {
    problem: &'a Problem,
    k: u32,
    colors: Vec<u32>,
    nodes: u64,
    budget: u64,
    accept: Option<&'a dyn Fn(&[u32]) -> bool>,
}

impl Search<'_> {
    /// Whether a coloring with at most `k` colors exists.
    fn run(&mut self, k: u32) -> Outcome {
        self.k = k;
        self.colors.iter_mut().for_each(|c| *c = 0);
        if self.problem.m == 0 {
            return Outcome::Found(Vec::new());
        }
        match self.step(0, 0) {
            Some(true) => Outcome::Found(self.colors.clone()),
            Some(false) => Outcome::Infeasible,
            None => Outcome::OutOfBudget,
        }
    }

    /// `None` when the budget runs out.
    fn step(&mut self, pos: usize, max_used: u32) -> Option<bool> {
        let e = self.problem.order[pos];
        // color permutations are interchangeable except for rankings
        let top = if self.problem.goal == Goal::Ranking {
            self.k
        } else {
            self.k.min(max_used + 1)
        };
        for color in 1..=top {
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            self.colors[e] = color;
            let ok = self.problem.due[pos]
                .iter()
                .all(|&id| self.problem.satisfied(id, &self.colors));
            if !ok {
                continue;
            }
            if pos + 1 == self.problem.m {
                if self.accept.is_none_or(|f| f(&self.colors)) {
                    return Some(true);
                }
            } else if self.step(pos + 1, max_used.max(color))? {
                return Some(true);
            }
        }
        self.colors[e] = 0;
        Some(false)
    }
}

/// Tries `k = lower, lower + 1, …, upper − 1`; the first feasible `k` wins.
/// Returns `Ok(None)` if none is feasible, so `upper` is the value.
fn search_range(
    tree: &Tree,
    goal: Goal,
    lower: u32,
    upper: u32,
    budget: u64,
    accept: Option<&dyn Fn(&[u32]) -> bool>,
) -> Result<(Option<(u32, Vec<u32>)>, u64)> {
    if lower >= upper {
        return Ok((None, 0));
    }
    if upper - 1 > MAX_SEARCH_COLORS || tree.m() > u16::MAX as usize {
        return Err(Error::TooLarge {
            what: "color count for search",
            got: upper as usize - 1,
            limit: MAX_SEARCH_COLORS as usize,
        });
    }
    let problem = Problem::new(tree, goal);
    let mut search = Search {
        problem: &problem,
        k: 0,
        colors: vec![0; tree.m()],
        nodes: 0,
        budget,
        accept,
    };
    for k in lower..upper {
        match search.run(k) {
            Outcome::Found(colors) => return Ok((Some((k, colors)), search.nodes)),
            Outcome::Infeasible => {}
            Outcome::OutOfBudget => {
                return Err(Error::BudgetExceeded {
                    budget,
                    lower: k,
                    upper,
                })
            }
        }
    }
    Ok((None, search.nodes))
}

/// `max(Δ, ⌈log₂ n⌉)`.
pub fn cfc_lower_bound(tree: &Tree) -> Result<u32> {
    if tree.n() < 2 {
        return Err(Error::TrivialTree);
    }
    Ok((tree.max_degree() as u32).max(ceil_log2(tree.n())))
}

/// Smallest-depth decomposition available: the exhaustive minimum for trees
/// small enough, otherwise the default tie-break.
fn best_decomposition(tree: &Tree) -> Result<(EdgeColoring, crate::decompose::DecompositionTrace)> {
    if tree.n() <= MIN_DEPTH_MAX_N {
        MinDepthSolver::new().optimal_trace(tree)
    } else {
        algorithm1(tree, TieBreak::LowestEdgeIndex)
    }
}

/// Exact `cfc(T)` with a certificate coloring.
pub fn cfc_exact(tree: &Tree, budget: u64) -> Result<SearchReport> {
    let lower = cfc_lower_bound(tree)?;
    let (_, default_trace) = algorithm1(tree, TieBreak::LowestEdgeIndex)?;
    if default_trace.depth() == lower {
        return Ok(SearchReport {
            value: lower,
            certificate: default_trace.coloring(),
            lower_bound_used: lower,
            upper_bound_used: lower,
            nodes_explored: 0,
            closed_form: Some("bound-sandwich"),
        });
    }
    let (upper_cert, trace) = best_decomposition(tree)?;
    let upper = trace.depth();
    let (found, nodes) = search_range(tree, Goal::ConflictFree, lower, upper, budget, None)?;
    Ok(match found {
        Some((value, colors)) => SearchReport {
            value,
            certificate: EdgeColoring::with_k(value, colors)?,
            lower_bound_used: lower,
            upper_bound_used: upper,
            nodes_explored: nodes,
            closed_form: None,
        },
        None => SearchReport {
            value: upper,
            certificate: upper_cert,
            lower_bound_used: lower,
            upper_bound_used: upper,
            nodes_explored: nodes,
            closed_form: (lower == upper).then_some("bound-sandwich"),
        },
    })
}

/// Closed-form `cfc(T)` for paths, stars, double stars and trees whose
/// maximum degree is at least `(n + 2) / 2`; `None` otherwise.
pub fn cfc_fast_path(tree: &Tree) -> Option<u32> {
    let n = tree.n();
    if n < 2 {
        return None;
    }
    let delta = tree.max_degree();
    if tree.is_path() {
        return Some(ceil_log2(n));
    }
    if delta == n - 1 || tree.diameter() == 3 || 2 * delta >= n + 2 {
        return Some(delta as u32);
    }
    None
}

/// Exact edge-ranking number `rank(T)` with a certificate labeling.
pub fn rank_exact(tree: &Tree, budget: u64) -> Result<SearchReport> {
    let lower = cfc_lower_bound(tree)?;
    let (_, trace) = best_decomposition(tree)?;
    let upper = trace.depth();
    let upper_cert = ranking_from_trace(&trace);
    let (found, nodes) = search_range(tree, Goal::Ranking, lower, upper, budget, None)?;
    Ok(match found {
        Some((value, labels)) => SearchReport {
            value,
            certificate: EdgeColoring::with_k(value, labels)?,
            lower_bound_used: lower,
            upper_bound_used: upper,
            nodes_explored: nodes,
            closed_form: None,
        },
        None => SearchReport {
            value: upper,
            certificate: upper_cert,
            lower_bound_used: lower,
            upper_bound_used: upper,
            nodes_explored: nodes,
            closed_form: (lower == upper).then_some("bound-sandwich"),
        },
    })
}

/// Exact odd connection number `oc(T)` for trees of at most
/// [`OC_MAX_N`] vertices.
///
/// Two adjacent edges of equal color form a path with an all-zero parity
/// vector, so `Δ` bounds `oc` from below alongside `⌈log₂ n⌉`.
pub fn oc_exact(tree: &Tree, budget: u64) -> Result<SearchReport> {
    if tree.n() > OC_MAX_N {
        return Err(Error::TooLarge {
            what: "vertex count",
            got: tree.n(),
            limit: OC_MAX_N,
        });
    }
    let lower = cfc_lower_bound(tree)?;
    let (upper_cert, trace) = best_decomposition(tree)?;
    let upper = trace.depth();
    let (found, nodes) = search_range(tree, Goal::Odd, lower, upper, budget, None)?;
    Ok(match found {
        Some((value, colors)) => SearchReport {
            value,
            certificate: EdgeColoring::with_k(value, colors)?,
            lower_bound_used: lower,
            upper_bound_used: upper,
            nodes_explored: nodes,
            closed_form: None,
        },
        None => SearchReport {
            value: upper,
            certificate: upper_cert,
            lower_bound_used: lower,
            upper_bound_used: upper,
            nodes_explored: nodes,
            closed_form: (lower == upper).then_some("bound-sandwich"),
        },
    })
}

/// cfc values of the nontrivial components left by deleting one edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeComponents {
    pub edge: usize,
    /// `(vertex count, cfc)` per nontrivial component, lower endpoint's side first
    pub components: Vec<(usize, u32)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriticalityReport {
    pub is_critical: bool,
    pub cfc_value: u32,
    pub per_edge: Vec<EdgeComponents>,
}

/// A tree is critical when every nontrivial component of `T − e`, for every
/// edge `e`, has strictly smaller cfc than `T`. Every proper subtree lies in
/// one of those components, and cfc cannot grow under restriction.
pub fn is_cfc_critical(tree: &Tree, budget: u64) -> Result<CriticalityReport> {
    let cfc_value = cfc_exact(tree, budget)?.value;
    let mut cache: HashMap<Vec<u8>, u32> = HashMap::new();
    let mut per_edge = Vec::with_capacity(tree.m());
    for e in 0..tree.m() {
        let (a, b) = tree.split(e)?;
        let mut components = Vec::new();
        for side in [a, b] {
            if side.n() < 2 {
                continue;
            }
            let key = canonical_form(&side.tree);
            let value = match cache.get(&key) {
                Some(&v) => v,
                None => {
                    let v = cfc_exact(&side.tree, budget)?.value;
                    cache.insert(key, v);
                    v
                }
            };
            components.push((side.n(), value));
        }
        per_edge.push(EdgeComponents { edge: e, components });
    }
    let is_critical = per_edge
        .iter()
        .all(|pe| pe.components.iter().all(|&(_, v)| v < cfc_value));
    Ok(CriticalityReport {
        is_critical,
        cfc_value,
        per_edge,
    })
}

/// Bounds on `cfc(G)` from the trees formed by the cut edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneralBounds {
    /// largest cfc among the cut-edge components (0 when there are none)
    pub h: u32,
    pub lower: u32,
    pub upper: u32,
    pub resolved: Option<u32>,
    /// cfc of each cut-edge component, in [`Graph::cut_edge_forest`] order
    pub component_values: Vec<u32>,
}

/// `h(G) ≤ cfc(G) ≤ h(G) + 1`. The value is resolved to `h` for trees, and
/// for `h ≥ 2` when a single component attains `h` and has an optimal
/// coloring using some color exactly once. Bridgeless graphs get 1 when
/// complete and 2 otherwise.
pub fn general_bounds(graph: &Graph, budget: u64) -> Result<GeneralBounds> {
    let forest = graph.cut_edge_forest();
    if forest.is_empty() {
        let value = match graph.n() {
            1 => 0,
            _ if graph.is_complete() => 1,
            _ => 2,
        };
        return Ok(GeneralBounds {
            h: 0,
            lower: value,
            upper: value,
            resolved: Some(value),
            component_values: Vec::new(),
        });
    }
    let component_values = forest
        .iter()
        .map(|c| cfc_exact(&c.tree, budget).map(|r| r.value))
        .collect::<Result<Vec<u32>>>()?;
    let h = *component_values.iter().max().expect("forest is non-empty");
    if graph.is_tree() {
        return Ok(GeneralBounds {
            h,
            lower: h,
            upper: h,
            resolved: Some(h),
            component_values,
        });
    }
    let attaining: Vec<usize> = (0..forest.len()).filter(|&i| component_values[i] == h).collect();
    let mut resolved = None;
    if h >= 2 && attaining.len() == 1 {
        let tree = &forest[attaining[0]].tree;
        if has_optimal_coloring_with_singleton_class(tree, h, budget)? {
            resolved = Some(h);
        }
    }
    Ok(GeneralBounds {
        h,
        lower: h,
        upper: resolved.unwrap_or(h + 1),
        resolved,
        component_values,
    })
}

/// Whether `tree` has a conflict-free coloring with `value` colors in which
/// some color appears on exactly one edge.
pub fn has_optimal_coloring_with_singleton_class(tree: &Tree, value: u32, budget: u64) -> Result<bool> {
    let singleton = |colors: &[u32]| {
        let mut count = [0u32; MAX_SEARCH_COLORS as usize + 1];
        for &c in colors {
            count[c as usize] += 1;
        }
        count.contains(&1)
    };
    let (found, _) = search_range(tree, Goal::ConflictFree, value, value + 1, budget, Some(&singleton))?;
    Ok(found.is_some())
}
