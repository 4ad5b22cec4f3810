//! Checks for conflict-free connection colorings, odd connection colorings
//! and edge rankings of trees.
//!
//! Pairs are scanned in lexicographic order `(u, v)` with `u < v`, so the
//! reported witness is always the first failing pair.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{SubTree, Tree};

/// Total map from edge index to a color in `1..=k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeColoring {
    k: u32,
    colors: Vec<u32>,
}

impl EdgeColoring {
    /// Takes `k` as the largest color used.
    pub fn new(colors: Vec<u32>) -> Result<Self> {
        let k = colors.iter().copied().max().unwrap_or(0);
        Self::with_k(k, colors)
    }

    pub fn with_k(k: u32, colors: Vec<u32>) -> Result<Self> {
        if let Some((edge, &color)) = colors
            .iter()
            .enumerate()
            .find(|&(_, &c)| c == 0 || c > k)
        {
            return Err(Error::BadColor { edge, color, k });
        }
        Ok(EdgeColoring { k, colors })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn color(&self, e: usize) -> u32 {
        self.colors[e]
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Number of distinct colors actually present.
    pub fn distinct_colors(&self) -> usize {
        let mut seen: Vec<u32> = self.colors.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    /// Renumbers the colors present to `1..=k'`, keeping their relative order.
    pub fn compacted(&self) -> EdgeColoring {
        let mut present: Vec<u32> = self.colors.clone();
        present.sort_unstable();
        present.dedup();
        let colors = self
            .colors
            .iter()
            .map(|c| present.binary_search(c).expect("color is present") as u32 + 1)
            .collect();
        EdgeColoring {
            k: present.len() as u32,
            colors,
        }
    }

    fn check_covers(&self, tree: &Tree) -> Result<()> {
        if self.colors.len() != tree.m() {
            return Err(Error::CoverageError {
                expected: tree.m(),
                got: self.colors.len(),
            });
        }
        Ok(())
    }
}

/// Per-color parity of occurrences along a path, bit-packed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParityVector {
    len: usize,
    words: Vec<u64>,
}

impl ParityVector {
    pub fn zero(len: usize) -> Self {
        ParityVector {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Bit for `color` (1-based).
    pub fn get(&self, color: u32) -> bool {
        let i = color as usize - 1;
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn flip(&mut self, color: u32) {
        let i = color as usize - 1;
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn bits(&self) -> Vec<bool> {
        (1..=self.len as u32).map(|c| self.get(c)).collect()
    }
}

impl fmt::Display for ParityVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.bits() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Outcome of a verifier. Witnesses are vertex pairs for the connection
/// checks and edge pairs for [`is_edge_ranking`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid { witness: (usize, usize) },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

pub fn parity_vector(tree: &Tree, c: &EdgeColoring, u: usize, v: usize) -> Result<ParityVector> {
    c.check_covers(tree)?;
    let mut p = ParityVector::zero(c.k() as usize);
    for e in tree.path_edges(u, v)? {
        p.flip(c.color(e));
    }
    Ok(p)
}

/// Depth-first walk from `src` that keeps, for the current root path, the
/// number of colors seen exactly once and the number seen an odd number of
/// times. `visit(v, unique, odd)` runs for every `v != src`.
fn scan_from(tree: &Tree, c: &EdgeColoring, src: usize, mut visit: impl FnMut(usize, usize, usize)) {
    let mut count = vec![0u32; c.k() as usize + 1];
    let (mut unique, mut odd) = (0usize, 0usize);
    // (vertex, parent, entering edge, next neighbor position)
    let mut stack = vec![(src, usize::MAX, usize::MAX, 0usize)];
    while let Some(top) = stack.last_mut() {
        let (v, parent, _, pos) = *top;
        if pos < tree.degree(v) {
            top.3 += 1;
            let (w, e) = tree.neighbors(v)[pos];
            if w == parent {
                continue;
            }
            let col = c.color(e) as usize;
            count[col] += 1;
            match count[col] {
                1 => unique += 1,
                2 => unique -= 1,
                _ => {}
            }
            if count[col] % 2 == 1 {
                odd += 1;
            } else {
                odd -= 1;
            }
            visit(w, unique, odd);
            stack.push((w, v, e, 0));
        } else {
            let (_, _, e, _) = stack.pop().expect("non-empty");
            if e != usize::MAX {
                let col = c.color(e) as usize;
                count[col] -= 1;
                match count[col] {
                    0 => unique -= 1,
                    1 => unique += 1,
                    _ => {}
                }
                if count[col] % 2 == 1 {
                    odd += 1;
                } else {
                    odd -= 1;
                }
            }
        }
    }
}

fn first_failing_pair(
    tree: &Tree,
    c: &EdgeColoring,
    fails: impl Fn(usize, usize) -> bool,
) -> Result<Verdict> {
    c.check_covers(tree)?;
    for u in 0..tree.n() {
        let mut worst: Option<usize> = None;
        scan_from(tree, c, u, |v, unique, odd| {
            if v > u && fails(unique, odd) && worst.is_none_or(|w| v < w) {
                worst = Some(v);
            }
        });
        if let Some(v) = worst {
            return Ok(Verdict::Invalid { witness: (u, v) });
        }
    }
    Ok(Verdict::Valid)
}

/// Every pair of vertices must be joined by a path carrying some color
/// exactly once.
pub fn is_cfc_coloring(tree: &Tree, c: &EdgeColoring) -> Result<Verdict> {
    first_failing_pair(tree, c, |unique, _| unique == 0)
}

/// Every pair's parity vector must be nonzero.
pub fn is_odd_connected(tree: &Tree, c: &EdgeColoring) -> Result<Verdict> {
    first_failing_pair(tree, c, |_, odd| odd == 0)
}

/// Parity vectors of the paths from `leaf` to every other vertex, in
/// ascending vertex order.
pub fn parity_spectrum(tree: &Tree, c: &EdgeColoring, leaf: usize) -> Result<Vec<ParityVector>> {
    c.check_covers(tree)?;
    if !tree.is_leaf(leaf) {
        return Err(Error::NotALeaf(leaf));
    }
    (0..tree.n())
        .filter(|&v| v != leaf)
        .map(|v| parity_vector(tree, c, leaf, v))
        .collect()
}

/// Every path joining two edges with the same label must contain a strictly
/// larger label. The witness is the first offending edge pair `(e, f)`,
/// `e < f`.
pub fn is_edge_ranking(tree: &Tree, labels: &EdgeColoring) -> Result<Verdict> {
    labels.check_covers(tree)?;
    for e in 0..tree.m() {
        let label = labels.color(e);
        let (a, b) = tree.edges()[e];
        let mut worst: Option<usize> = None;
        for (start, from) in [(a, b), (b, a)] {
            // (vertex, parent, largest label strictly between e and here)
            let mut stack = vec![(start, from, 0u32)];
            while let Some((v, parent, between)) = stack.pop() {
                for &(w, f) in tree.neighbors(v) {
                    if w == parent {
                        continue;
                    }
                    let lf = labels.color(f);
                    if f > e && lf == label && between < label && worst.is_none_or(|x| f < x) {
                        worst = Some(f);
                    }
                    stack.push((w, v, between.max(lf)));
                }
            }
        }
        if let Some(f) = worst {
            return Ok(Verdict::Invalid { witness: (e, f) });
        }
    }
    Ok(Verdict::Valid)
}

/// Restricts `c` to the edges of `sub` and renumbers the remaining colors to
/// `1..=k'` in their original order.
pub fn restrict_coloring(tree: &Tree, c: &EdgeColoring, sub: &SubTree) -> Result<EdgeColoring> {
    c.check_covers(tree)?;
    if sub.edge_map.len() != sub.tree.m() || sub.vertex_map.len() != sub.tree.n() {
        return Err(Error::NotASubtree("label maps do not match the subtree".into()));
    }
    for (local, &host) in sub.edge_map.iter().enumerate() {
        let (hu, hv) = tree
            .edges()
            .get(host)
            .copied()
            .ok_or_else(|| Error::NotASubtree(format!("edge {host} is not in the host tree")))?;
        let (lu, lv) = sub.tree.edges()[local];
        let (mu, mv) = (sub.vertex_map[lu], sub.vertex_map[lv]);
        if (mu.min(mv), mu.max(mv)) != (hu.min(hv), hu.max(hv)) {
            return Err(Error::NotASubtree(format!(
                "local edge {local} maps to ({mu},{mv}) but host edge {host} is ({hu},{hv})"
            )));
        }
    }
    let colors = sub.edge_map.iter().map(|&e| c.color(e)).collect();
    Ok(EdgeColoring::new(colors)?.compacted())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Tree {
        Tree::new(n, (0..n - 1).map(|i| (i, i + 1)).collect()).unwrap()
    }

    fn col(c: &[u32]) -> EdgeColoring {
        EdgeColoring::new(c.to_vec()).unwrap()
    }

    #[test]
    fn parity_vectors() {
        let p3 = path(3);
        assert_eq!(parity_vector(&p3, &col(&[1, 2]), 0, 2).unwrap().to_string(), "11");
        let v = parity_vector(&p3, &col(&[1, 1]), 0, 2).unwrap();
        assert!(v.is_zero());
        assert_eq!(v.to_string(), "0");
        let p4 = path(4);
        assert_eq!(parity_vector(&p4, &col(&[1, 2, 1]), 0, 3).unwrap().to_string(), "01");
        assert_eq!(parity_vector(&p4, &col(&[1, 2, 1]), 2, 2), Err(Error::SameVertex(2)));
    }

    #[test]
    fn cfc_verdicts() {
        let p4 = path(4);
        assert_eq!(is_cfc_coloring(&p4, &col(&[1, 2, 1])).unwrap(), Verdict::Valid);
        assert_eq!(
            is_cfc_coloring(&p4, &col(&[1, 2, 2])).unwrap(),
            Verdict::Invalid { witness: (1, 3) }
        );
        assert!(matches!(
            is_cfc_coloring(&p4, &col(&[1, 2])),
            Err(Error::CoverageError { expected: 3, got: 2 })
        ));
    }

    #[test]
    fn zero_color_is_rejected() {
        assert!(matches!(
            EdgeColoring::new(vec![1, 0]),
            Err(Error::BadColor { edge: 1, color: 0, .. })
        ));
        assert!(EdgeColoring::with_k(2, vec![1, 3]).is_err());
    }

    #[test]
    fn odd_verdicts() {
        assert_eq!(
            is_odd_connected(&path(3), &col(&[1, 1])).unwrap(),
            Verdict::Invalid { witness: (0, 2) }
        );
        assert_eq!(is_odd_connected(&path(4), &col(&[1, 2, 1])).unwrap(), Verdict::Valid);
    }

    #[test]
    fn spectra() {
        let p3 = path(3);
        let s: Vec<String> = parity_spectrum(&p3, &col(&[1, 2]), 0)
            .unwrap()
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(s, ["10", "11"]);
        let s = parity_spectrum(&p3, &col(&[1, 1]), 0).unwrap();
        assert_eq!(s[0].to_string(), "1");
        assert!(s[1].is_zero());
        let k12 = Tree::new(3, vec![(0, 1), (0, 2)]).unwrap();
        let s: Vec<String> = parity_spectrum(&k12, &col(&[1, 2]), 1)
            .unwrap()
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(s, ["10", "11"]);
        assert_eq!(parity_spectrum(&p3, &col(&[1, 2]), 1), Err(Error::NotALeaf(1)));
    }

    #[test]
    fn rankings() {
        let p4 = path(4);
        assert_eq!(is_edge_ranking(&p4, &col(&[1, 2, 1])).unwrap(), Verdict::Valid);
        assert_eq!(
            is_edge_ranking(&p4, &col(&[1, 1, 2])).unwrap(),
            Verdict::Invalid { witness: (0, 1) }
        );
        let star = Tree::new(5, (1..5).map(|i| (0, i)).collect()).unwrap();
        assert!(is_edge_ranking(&star, &col(&[4, 2, 3, 1])).unwrap().is_valid());
        // the larger label must lie between the pair, not beyond it
        let p5 = path(5);
        assert_eq!(
            is_edge_ranking(&p5, &col(&[1, 2, 1, 3])).unwrap(),
            Verdict::Valid
        );
        assert_eq!(
            is_edge_ranking(&p5, &col(&[2, 1, 2, 3])).unwrap(),
            Verdict::Invalid { witness: (0, 2) }
        );
    }

    #[test]
    fn restriction() {
        let p4 = path(4);
        let c = col(&[1, 2, 1]);
        let mid = p4.induced(&[1, 2]).unwrap();
        assert_eq!(restrict_coloring(&p4, &c, &mid).unwrap().colors(), &[1]);
        let tail = p4.induced(&[1, 2, 3]).unwrap();
        let r = restrict_coloring(&p4, &c, &tail).unwrap();
        assert_eq!((r.k(), r.colors()), (2, &[2, 1][..]));
        let wrong = crate::graph::SubTree {
            tree: path(2),
            vertex_map: vec![0, 2],
            edge_map: vec![0],
        };
        assert!(matches!(restrict_coloring(&p4, &c, &wrong), Err(Error::NotASubtree(_))));
    }
}
