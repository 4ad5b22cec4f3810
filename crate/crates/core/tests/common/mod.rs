//! Brute-force oracles shared by the integration suites. Nothing here calls
//! into the solvers or verifiers it is used to check.

#![allow(dead_code)]

use std::collections::HashMap;

use cfclab::Tree;

/// All labeled trees on `n` vertices, by trying every `(n−1)`-subset of the
/// complete graph's edges.
pub fn all_labeled_trees(n: usize) -> Vec<Tree> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn rec(pairs: &[(usize, usize)], start: usize, need: usize, n: usize, chosen: &mut Vec<(usize, usize)>, out: &mut Vec<Tree>) {
        if need == 0 {
            if let Ok(t) = Tree::new(n, chosen.clone()) {
                out.push(t);
            }
            return;
        }
        for i in start..pairs.len() {
            chosen.push(pairs[i]);
            rec(pairs, i + 1, need - 1, n, chosen, out);
            chosen.pop();
        }
    }
    if n == 1 {
        return vec![Tree::singleton()];
    }
    rec(&pairs, 0, n - 1, n, &mut chosen, &mut out);
    out
}

/// Vertex sequence of the `u`–`v` path by depth-first search with parent
/// pointers.
fn path_vertices(tree: &Tree, u: usize, v: usize) -> Vec<usize> {
    let mut parent = vec![usize::MAX; tree.n()];
    parent[u] = u;
    let mut stack = vec![u];
    while let Some(x) = stack.pop() {
        for &(w, _) in tree.neighbors(x) {
            if parent[w] == usize::MAX {
                parent[w] = x;
                stack.push(w);
            }
        }
    }
    let mut path = vec![v];
    while *path.last().unwrap() != u {
        path.push(parent[*path.last().unwrap()]);
    }
    path.reverse();
    path
}

/// Colors along the `u`–`v` path, looked up by endpoint pair.
pub fn path_colors(tree: &Tree, colors: &[u32], u: usize, v: usize) -> Vec<u32> {
    let index: HashMap<(usize, usize), usize> = tree
        .edges()
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| ((a.min(b), a.max(b)), i))
        .collect();
    path_vertices(tree, u, v)
        .windows(2)
        .map(|w| colors[index[&(w[0].min(w[1]), w[0].max(w[1]))]])
        .collect()
}

fn multiset(colors: &[u32]) -> HashMap<u32, usize> {
    let mut m = HashMap::new();
    for &c in colors {
        *m.entry(c).or_insert(0) += 1;
    }
    m
}

/// First pair whose path has no color of multiplicity one.
pub fn cfc_oracle(tree: &Tree, colors: &[u32]) -> Option<(usize, usize)> {
    for u in 0..tree.n() {
        for v in u + 1..tree.n() {
            if !multiset(&path_colors(tree, colors, u, v)).values().any(|&c| c == 1) {
                return Some((u, v));
            }
        }
    }
    None
}

/// First pair whose path has every color an even number of times.
pub fn odd_oracle(tree: &Tree, colors: &[u32]) -> Option<(usize, usize)> {
    for u in 0..tree.n() {
        for v in u + 1..tree.n() {
            if multiset(&path_colors(tree, colors, u, v)).values().all(|&c| c % 2 == 0) {
                return Some((u, v));
            }
        }
    }
    None
}

/// Ranking check by explicit path scan between every equal-label pair.
pub fn ranking_oracle(tree: &Tree, labels: &[u32]) -> bool {
    let m = tree.m();
    for e in 0..m {
        for f in e + 1..m {
            if labels[e] != labels[f] {
                continue;
            }
            // longest endpoint-to-endpoint path covers both edges
            let (a, b) = tree.edges()[e];
            let (c, d) = tree.edges()[f];
            let mut best: Vec<u32> = Vec::new();
            for x in [a, b] {
                for y in [c, d] {
                    let p = path_colors(tree, labels, x, y);
                    if p.len() > best.len() {
                        best = p;
                    }
                }
            }
            if !best.iter().any(|&l| l > labels[e]) {
                return false;
            }
        }
    }
    true
}

/// Every assignment of colors `1..=k` to the edges.
pub fn all_colorings(m: usize, k: u32) -> impl Iterator<Item = Vec<u32>> {
    let total = (k as u64).pow(m as u32);
    (0..total).map(move |mut x| {
        (0..m)
            .map(|_| {
                let c = (x % k as u64) as u32 + 1;
                x /= k as u64;
                c
            })
            .collect()
    })
}

/// Smallest `k` for which some coloring passes `ok`, by exhaustive
/// enumeration.
pub fn brute_min_colors(tree: &Tree, ok: impl Fn(&[u32]) -> bool) -> u32 {
    if tree.m() == 0 {
        return 0;
    }
    (1..).find(|&k| all_colorings(tree.m(), k).any(|c| ok(&c))).unwrap()
}

/// Cut edges by deleting each edge and testing connectivity.
pub fn bridges_oracle(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    (0..edges.len())
        .filter(|&skip| {
            let mut seen = vec![false; n];
            seen[0] = true;
            let mut stack = vec![0];
            while let Some(x) = stack.pop() {
                for (i, &(a, b)) in edges.iter().enumerate() {
                    if i == skip {
                        continue;
                    }
                    let other = if a == x { b } else if b == x { a } else { continue };
                    if !seen[other] {
                        seen[other] = true;
                        stack.push(other);
                    }
                }
            }
            seen.iter().any(|s| !s)
        })
        .collect()
}
