//! Named tree families and seeded uniform random trees.
//!
//! Labeling conventions (edge indices follow the order listed):
//!
//! * `path n`: vertices `0..n` in order, edges `(i, i+1)`.
//! * `star k`: center 0, edges `(0, i)` for `i = 1..=k`.
//! * `double_star a b`: centers 0 (degree `a`) and 1 (degree `b`); edge
//!   `(0, 1)` first, then the leaves of 0 (`2..=a`), then the leaves of 1.
//! * `binomial k`: root 0; the second copy of `B_{k-1}` is offset by
//!   `2^(k-2)`; edges of the first copy, then the second, then the joining
//!   edge `(0, 2^(k-2))`.
//! * `complete_binary k`: heap order, children of `i` are `2i+1` and
//!   `2i+2`; edge `j` joins vertex `j+1` to its parent.
//! * `Q k`: shared middle vertex 0, star centers 1 and 2; edges `(0,1)`,
//!   `(0,2)`, then the leaves of 1, then the leaves of 2.
//! * `R k`: star center 0, shared vertex 1, other star leaves `2..k`, then
//!   the path `1, k, k+1, …` on `2^(k-2) + 1` vertices.
//! * `A k`: star center 0 with leaves `1..=k`, then the path `1, k+1, …`
//!   on `2^(k-1)` vertices.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::decompose::{algorithm1, TieBreak};
use crate::error::{Error, Result};
use crate::graph::Tree;
use crate::verify::EdgeColoring;

/// Largest exponent accepted for families whose order grows as `2^k`.
const MAX_EXPONENT: u32 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Path,
    Star,
    DoubleStar,
    Binomial,
    CompleteBinary,
    Q,
    R,
    A,
    Random,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::Path,
        Family::Star,
        Family::DoubleStar,
        Family::Binomial,
        Family::CompleteBinary,
        Family::Q,
        Family::R,
        Family::A,
        Family::Random,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Star => "star",
            Family::DoubleStar => "double_star",
            Family::Binomial => "binomial",
            Family::CompleteBinary => "complete_binary",
            Family::Q => "Q",
            Family::R => "R",
            Family::A => "A",
            Family::Random => "random",
        }
    }

    /// Number of integer parameters the family takes.
    pub fn arity(self) -> usize {
        match self {
            Family::DoubleStar => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase().replace('-', "_");
        Ok(match lower.as_str() {
            "path" => Family::Path,
            "star" => Family::Star,
            "double_star" => Family::DoubleStar,
            "binomial" => Family::Binomial,
            "complete_binary" => Family::CompleteBinary,
            "q" => Family::Q,
            "r" => Family::R,
            "a" => Family::A,
            "random" => Family::Random,
            _ => return Err(Error::BadParams(format!("unknown family {s:?}"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub params: Vec<usize>,
    pub seed: Option<u64>,
}

impl FamilySpec {
    pub fn new(family: Family, params: &[usize]) -> Self {
        FamilySpec {
            family,
            params: params.to_vec(),
            seed: None,
        }
    }

    pub fn random(n: usize, seed: u64) -> Self {
        FamilySpec {
            family: Family::Random,
            params: vec![n],
            seed: Some(seed),
        }
    }

    fn checked(&self) -> Result<&[usize]> {
        let p = &self.params;
        let bad = |msg: &str| Err(Error::BadParams(format!("{}: {msg}", self.family)));
        if p.len() != self.family.arity() {
            return bad(&format!("expected {} parameter(s), got {}", self.family.arity(), p.len()));
        }
        let (min, exp) = match self.family {
            Family::Path | Family::Star | Family::Binomial | Family::CompleteBinary | Family::Random => (1, 0),
            Family::DoubleStar => (2, 0),
            Family::Q => (2, 0),
            Family::R => (2, 2),
            Family::A => (2, 1),
        };
        if p.iter().any(|&x| x < min) {
            return bad(&format!("parameters must be at least {min}"));
        }
        let grows = matches!(
            self.family,
            Family::Binomial | Family::CompleteBinary | Family::R | Family::A
        );
        if grows && p[0] as u32 > MAX_EXPONENT + exp {
            return bad(&format!("k must be at most {}", MAX_EXPONENT + exp));
        }
        if self.family == Family::Random && self.seed.is_none() {
            return bad("random trees need a seed");
        }
        Ok(p)
    }
}

fn path_edges(n: usize) -> Vec<(usize, usize)> {
    (1..n).map(|i| (i - 1, i)).collect()
}

fn binomial_edges(k: usize) -> Vec<(usize, usize)> {
    if k <= 1 {
        return Vec::new();
    }
    let half = 1usize << (k - 2);
    let sub = binomial_edges(k - 1);
    let mut edges = sub.clone();
    edges.extend(sub.iter().map(|&(u, v)| (u + half, v + half)));
    edges.push((0, half));
    edges
}

/// Builds the tree described by `spec`.
pub fn generate(spec: &FamilySpec) -> Result<Tree> {
    let p = spec.checked()?;
    let (n, edges) = match spec.family {
        Family::Path => (p[0], path_edges(p[0])),
        Family::Star => (p[0] + 1, (1..=p[0]).map(|i| (0, i)).collect()),
        Family::DoubleStar => {
            let (a, b) = (p[0], p[1]);
            let mut edges = vec![(0, 1)];
            edges.extend((2..=a).map(|i| (0, i)));
            edges.extend((a + 1..a + b).map(|i| (1, i)));
            (a + b, edges)
        }
        Family::Binomial => (1 << (p[0] - 1), binomial_edges(p[0])),
        Family::CompleteBinary => {
            let n = (1 << p[0]) - 1;
            (n, (1..n).map(|v| ((v - 1) / 2, v)).collect())
        }
        Family::Q => {
            let k = p[0];
            let mut edges = vec![(0, 1), (0, 2)];
            edges.extend((3..=k).map(|i| (1, i)));
            edges.extend((k + 1..=2 * k - 2).map(|i| (2, i)));
            (2 * k - 1, edges)
        }
        Family::R => {
            let k = p[0];
            let tail = 1usize << (k - 2);
            let mut edges: Vec<(usize, usize)> = (1..k).map(|i| (0, i)).collect();
            let mut prev = 1;
            for v in k..k + tail {
                edges.push((prev, v));
                prev = v;
            }
            (k + tail, edges)
        }
        Family::A => {
            let k = p[0];
            let tail = (1usize << (k - 1)) - 1;
            let mut edges: Vec<(usize, usize)> = (1..=k).map(|i| (0, i)).collect();
            let mut prev = 1;
            for v in k + 1..k + 1 + tail {
                edges.push((prev, v));
                prev = v;
            }
            (k + 1 + tail, edges)
        }
        Family::Random => return Ok(random_tree(p[0], spec.seed.expect("checked"))),
    };
    Tree::new(n, edges)
}

/// A family tree with a hand-built conflict-free coloring and the family's
/// known cfc value. The coloring uses exactly that many colors.
pub fn generate_with_certificate(spec: &FamilySpec) -> Result<(Tree, EdgeColoring, u32)> {
    let tree = generate(spec)?;
    let p = &spec.params;
    let (colors, value): (Vec<u32>, u32) = match spec.family {
        Family::Path | Family::Star | Family::Binomial => {
            if tree.n() == 1 {
                (Vec::new(), 0)
            } else {
                let (c, trace) = algorithm1(&tree, TieBreak::LowestEdgeIndex)?;
                (c.colors().to_vec(), trace.depth())
            }
        }
        Family::DoubleStar => {
            let (a, b) = (p[0], p[1]);
            // middle edge 1, used nowhere else; each center's leaves take 2, 3, …
            let mut colors = vec![1u32];
            colors.extend(2..=a as u32);
            colors.extend(2..=b as u32);
            (colors, a.max(b) as u32)
        }
        Family::Q => {
            let k = p[0] as u32;
            // middle vertex 0, star centers 1 (u) and 2 (v): uw = 1, vw = k,
            // leaves of u take 2..k-1, leaves of v take 1..k-2
            let mut colors = vec![1, k];
            colors.extend(2..k);
            colors.extend(1..k - 1);
            (colors, k)
        }
        Family::R => {
            let k = p[0] as u32;
            // star edges 1..k-1, the edge leaving the shared vertex k, and the
            // rest of the path a (k-2)-coloring of its own
            let mut colors: Vec<u32> = (1..k).collect();
            colors.push(k);
            let rest = 1usize << (k - 2);
            if rest >= 2 {
                let sub = Tree::new(rest, path_edges(rest))?;
                let (c, trace) = algorithm1(&sub, TieBreak::LowestEdgeIndex)?;
                debug_assert_eq!(trace.depth(), k - 2);
                colors.extend_from_slice(c.colors());
            }
            (colors, k)
        }
        Family::A | Family::CompleteBinary | Family::Random => {
            return Err(Error::NoConstruction(spec.family.to_string()))
        }
    };
    let coloring = EdgeColoring::with_k(value, colors)?;
    Ok((tree, coloring, value))
}

/// Uniform labeled tree on `n` vertices, decoded from a seeded random
/// Prüfer sequence.
pub fn random_tree(n: usize, seed: u64) -> Tree {
    if n <= 1 {
        return Tree::singleton();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    Tree::new(n, prufer_decode(n, &code)).expect("Prüfer decoding yields a tree")
}

/// Edges of the labeled tree with Prüfer code `code` (length `n − 2`), as
/// `(leaf, neighbor)` in removal order.
pub fn prufer_decode(n: usize, code: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &x in code {
        degree[x] += 1;
    }
    let mut leaves: std::collections::BinaryHeap<std::cmp::Reverse<usize>> =
        (0..n).filter(|&v| degree[v] == 1).map(std::cmp::Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &x in code {
        let std::cmp::Reverse(leaf) = leaves.pop().expect("a leaf always exists");
        edges.push((leaf, x));
        degree[x] -= 1;
        if degree[x] == 1 {
            leaves.push(std::cmp::Reverse(x));
        }
    }
    let std::cmp::Reverse(a) = leaves.pop().expect("two vertices remain");
    let std::cmp::Reverse(b) = leaves.pop().expect("two vertices remain");
    edges.push((a, b));
    edges
}
