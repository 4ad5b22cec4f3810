//! Tree and simple-graph representations.
//!
//! Vertices are dense labels `0..n`. An edge is identified by its position in
//! the input edge list, and that index is what colorings are keyed by.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};

/// `⌈log₂ n⌉` for `n ≥ 1`.
pub fn ceil_log2(n: usize) -> u32 {
    if n <= 1 {
        0
    } else {
        usize::BITS - (n - 1).leading_zeros()
    }
}

fn check_simple(n: usize, edges: &[(usize, usize)]) -> Result<()> {
    if n == 0 {
        return Err(Error::Empty);
    }
    let mut seen: HashMap<(usize, usize), usize> = HashMap::with_capacity(edges.len());
    for (i, &(u, v)) in edges.iter().enumerate() {
        for label in [u, v] {
            if label >= n {
                return Err(Error::BadLabel { label, n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop { edge: i, vertex: u });
        }
        if let Some(&first) = seen.get(&(u.min(v), u.max(v))) {
            return Err(Error::DuplicateEdge { edge: i, first });
        }
        seen.insert((u.min(v), u.max(v)), i);
    }
    Ok(())
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// An immutable labeled tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tree {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<(usize, usize)>>,
    // rooted at vertex 0
    parent: Vec<usize>,
    parent_edge: Vec<usize>,
    level: Vec<usize>,
    bfs_order: Vec<usize>,
}

impl Tree {
    /// Validates `edges` as a spanning tree on `0..n`. Edge indices follow
    /// input order.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        check_simple(n, &edges)?;
        let mut dsu: Vec<usize> = (0..n).collect();
        let mut components = n;
        for (i, &(u, v)) in edges.iter().enumerate() {
            let (a, b) = (find(&mut dsu, u), find(&mut dsu, v));
            if a == b {
                return Err(Error::CycleDetected { edge: i });
            }
            dsu[a] = b;
            components -= 1;
        }
        if components > 1 {
            return Err(Error::Disconnected { components });
        }

        let mut adj = vec![Vec::new(); n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            adj[u].push((v, i));
            adj[v].push((u, i));
        }
        let mut parent = vec![usize::MAX; n];
        let mut parent_edge = vec![usize::MAX; n];
        let mut level = vec![0; n];
        let mut bfs_order = Vec::with_capacity(n);
        let mut queue = VecDeque::from([0]);
        parent[0] = 0;
        while let Some(v) = queue.pop_front() {
            bfs_order.push(v);
            for &(w, e) in &adj[v] {
                if parent[w] == usize::MAX {
                    parent[w] = v;
                    parent_edge[w] = e;
                    level[w] = level[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        Ok(Tree {
            n,
            edges,
            adj,
            parent,
            parent_edge,
            level,
            bfs_order,
        })
    }

    /// The single-vertex tree.
    pub fn singleton() -> Self {
        Tree::new(1, Vec::new()).expect("a single vertex is a tree")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> Result<(usize, usize)> {
        self.edges.get(e).copied().ok_or(Error::BadEdgeIndex {
            index: e,
            m: self.m(),
        })
    }

    /// `(neighbor, edge index)` pairs around `v`.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        v < self.n && self.degree(v) == 1
    }

    pub fn is_path(&self) -> bool {
        self.max_degree() <= 2
    }

    /// Vertices ordered by breadth-first search from vertex 0.
    pub fn bfs_order(&self) -> &[usize] {
        &self.bfs_order
    }

    /// Distances from `src` to every vertex.
    pub fn distances_from(&self, src: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(v) = queue.pop_front() {
            for &(w, _) in &self.adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Number of edges on a longest path, found by two farthest-vertex sweeps.
    pub fn diameter(&self) -> usize {
        let first = self.distances_from(0);
        let far = (0..self.n).max_by_key(|&v| (first[v], usize::MAX - v)).unwrap_or(0);
        self.distances_from(far).into_iter().max().unwrap_or(0)
    }

    /// Edge indices on the unique `u`–`v` path, in order from `u`.
    pub fn path_edges(&self, u: usize, v: usize) -> Result<Vec<usize>> {
        for label in [u, v] {
            if label >= self.n {
                return Err(Error::BadLabel { label, n: self.n });
            }
        }
        if u == v {
            return Err(Error::SameVertex(u));
        }
        let (mut a, mut b) = (u, v);
        let mut from_u = Vec::new();
        let mut from_v = Vec::new();
        while self.level[a] > self.level[b] {
            from_u.push(self.parent_edge[a]);
            a = self.parent[a];
        }
        while self.level[b] > self.level[a] {
            from_v.push(self.parent_edge[b]);
            b = self.parent[b];
        }
        while a != b {
            from_u.push(self.parent_edge[a]);
            from_v.push(self.parent_edge[b]);
            a = self.parent[a];
            b = self.parent[b];
        }
        from_u.extend(from_v.into_iter().rev());
        Ok(from_u)
    }

    /// For each edge, the number of vertices on the side away from vertex 0.
    fn far_side_sizes(&self) -> Vec<usize> {
        let mut size = vec![1usize; self.n];
        for &v in self.bfs_order.iter().rev().take(self.n.saturating_sub(1)) {
            size[self.parent[v]] += size[v];
        }
        let mut out = vec![0; self.m()];
        for v in 1..self.n {
            out[self.parent_edge[v]] = size[v];
        }
        out
    }

    /// Component sizes of `T − e` for every edge, lower endpoint's side first.
    pub fn split_sizes(&self) -> Vec<(usize, usize)> {
        self.far_side_sizes()
            .into_iter()
            .enumerate()
            .map(|(e, far)| {
                let (u, v) = self.edges[e];
                let low = u.min(v);
                // the far side is the one not containing vertex 0
                let far_vertex = if self.parent_edge[u] == e { u } else { v };
                if far_vertex == low {
                    (far, self.n - far)
                } else {
                    (self.n - far, far)
                }
            })
            .collect()
    }

    /// Edges whose removal leaves components of minimum size difference,
    /// ascending by index.
    pub fn balanced_edges(&self) -> Result<Vec<usize>> {
        if self.n < 2 {
            return Err(Error::TrivialTree);
        }
        let diffs: Vec<usize> = self
            .far_side_sizes()
            .into_iter()
            .map(|s| self.n.abs_diff(2 * s))
            .collect();
        let best = *diffs.iter().min().expect("n >= 2 has an edge");
        Ok((0..self.m()).filter(|&e| diffs[e] == best).collect())
    }

    /// The two components of `T − e`; the one holding the lower-labeled
    /// endpoint of `e` comes first.
    pub fn split(&self, e: usize) -> Result<(SubTree, SubTree)> {
        let (u, v) = self.edge(e)?;
        let low = u.min(v);
        let mut side = vec![false; self.n];
        side[low] = true;
        let mut stack = vec![low];
        while let Some(x) = stack.pop() {
            for &(w, f) in &self.adj[x] {
                if f != e && !side[w] {
                    side[w] = true;
                    stack.push(w);
                }
            }
        }
        let first: Vec<usize> = (0..self.n).filter(|&x| side[x]).collect();
        let second: Vec<usize> = (0..self.n).filter(|&x| !side[x]).collect();
        Ok((self.induced(&first)?, self.induced(&second)?))
    }

    /// The subtree induced by `vertices`, relabeled densely in ascending
    /// original order with maps back to this tree.
    pub fn induced(&self, vertices: &[usize]) -> Result<SubTree> {
        let mut vertex_map: Vec<usize> = vertices.to_vec();
        vertex_map.sort_unstable();
        vertex_map.dedup();
        if vertex_map.is_empty() {
            return Err(Error::NotASubtree("empty vertex set".into()));
        }
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertex_map.iter().enumerate() {
            if v >= self.n {
                return Err(Error::BadLabel { label: v, n: self.n });
            }
            local[v] = i;
        }
        let mut edges = Vec::new();
        let mut edge_map = Vec::new();
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if local[u] != usize::MAX && local[v] != usize::MAX {
                edges.push((local[u], local[v]));
                edge_map.push(e);
            }
        }
        let tree = Tree::new(vertex_map.len(), edges)
            .map_err(|_| Error::NotASubtree("vertex set does not induce a connected subtree".into()))?;
        Ok(SubTree {
            tree,
            vertex_map,
            edge_map,
        })
    }

    /// Same tree with every edge written `(min, max)` and the list sorted.
    /// Edge indices change accordingly.
    pub fn canonical(&self) -> Tree {
        let mut edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        edges.sort_unstable();
        Tree::new(self.n, edges).expect("relabeling edges keeps a tree")
    }

    /// A vertex whose removal leaves components of at most `n / 2` vertices
    /// (lowest label among centroids).
    pub fn centroid(&self) -> usize {
        let mut size = vec![1usize; self.n];
        for &v in self.bfs_order.iter().rev().take(self.n.saturating_sub(1)) {
            size[self.parent[v]] += size[v];
        }
        (0..self.n)
            .find(|&v| {
                let up = self.n - size[v];
                let down = self.adj[v]
                    .iter()
                    .filter(|&&(w, _)| w != 0 && self.parent[w] == v)
                    .map(|&(w, _)| size[w])
                    .max()
                    .unwrap_or(0);
                up.max(down) * 2 <= self.n
            })
            .unwrap_or(0)
    }
}

/// A subtree together with the labels it had in its host tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubTree {
    pub tree: Tree,
    /// local vertex → host vertex (ascending)
    pub vertex_map: Vec<usize>,
    /// local edge → host edge index (ascending)
    pub edge_map: Vec<usize>,
}

impl SubTree {
    pub fn n(&self) -> usize {
        self.tree.n()
    }
}

/// A connected simple graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<(usize, usize)>>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        check_simple(n, &edges)?;
        let mut adj = vec![Vec::new(); n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            adj[u].push((v, i));
            adj[v].push((u, i));
        }
        let g = Graph { n, edges, adj };
        let components = g.count_components(None);
        if components > 1 {
            return Err(Error::Disconnected { components });
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn is_complete(&self) -> bool {
        self.m() == self.n * (self.n - 1) / 2
    }

    pub fn is_tree(&self) -> bool {
        self.m() + 1 == self.n
    }

    /// Connected components, ignoring edge `skip` when given.
    pub fn count_components(&self, skip: Option<usize>) -> usize {
        let mut seen = vec![false; self.n];
        let mut count = 0;
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &(w, e) in &self.adj[x] {
                    if Some(e) != skip && !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }

    /// Cut edges, ascending by index (iterative low-link search).
    pub fn bridges(&self) -> Vec<usize> {
        let n = self.n;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut is_bridge = vec![false; self.m()];
        let mut timer = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            // (vertex, edge used to enter, next neighbor position)
            let mut stack = vec![(root, usize::MAX, 0usize)];
            while let Some(&mut (v, in_edge, ref mut pos)) = stack.last_mut() {
                if *pos < self.adj[v].len() {
                    let (w, e) = self.adj[v][*pos];
                    *pos += 1;
                    if e == in_edge {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, e, 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p] = low[p].min(low[v]);
                        if low[v] > disc[p] {
                            is_bridge[in_edge] = true;
                        }
                    }
                }
            }
        }
        (0..self.m()).filter(|&e| is_bridge[e]).collect()
    }

    /// Nontrivial components of the subgraph formed by the cut edges, each
    /// as a tree with maps back to this graph. Ordered by lowest vertex.
    pub fn cut_edge_forest(&self) -> Vec<SubTree> {
        let bridges = self.bridges();
        let mut dsu: Vec<usize> = (0..self.n).collect();
        for &e in &bridges {
            let (u, v) = self.edges[e];
            let (a, b) = (find(&mut dsu, u), find(&mut dsu, v));
            dsu[a] = b;
        }
        let mut groups: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        let mut group_of: HashMap<usize, usize> = HashMap::new();
        for &e in &bridges {
            let root = find(&mut dsu, self.edges[e].0);
            let g = *group_of.entry(root).or_insert_with(|| {
                groups.push((Vec::new(), Vec::new()));
                groups.len() - 1
            });
            groups[g].1.push(e);
        }
        for (vertices, edges) in groups.iter_mut() {
            for &e in edges.iter() {
                let (u, v) = self.edges[e];
                vertices.push(u);
                vertices.push(v);
            }
            vertices.sort_unstable();
            vertices.dedup();
        }
        let mut out: Vec<SubTree> = groups
            .into_iter()
            .map(|(vertex_map, edge_map)| {
                let local: HashMap<usize, usize> =
                    vertex_map.iter().enumerate().map(|(i, &v)| (v, i)).collect();
                let edges = edge_map
                    .iter()
                    .map(|&e| (local[&self.edges[e].0], local[&self.edges[e].1]))
                    .collect();
                SubTree {
                    tree: Tree::new(vertex_map.len(), edges).expect("bridge components are trees"),
                    vertex_map,
                    edge_map,
                }
            })
            .collect();
        out.sort_by_key(|s| s.vertex_map[0]);
        out
    }
}

impl From<&Tree> for Graph {
    fn from(t: &Tree) -> Self {
        Graph::new(t.n(), t.edges().to_vec()).expect("a tree is a connected simple graph")
    }
}
