//! Graph representation, generators, and combinatorial ground-truth queries.
//!
//! Graphs are simple and undirected: no self-loops, no parallel edges.
//! Every undirected edge {u,v} is also viewed as the two directed edges
//! (u,v) and (v,u); [`DirectedEdgeIndex`] fixes a deterministic order on
//! those 2m directed edges (lexicographic by (source, target)) so that all
//! matrices built on top of a graph are reproducible.

use crate::{Error, Result};
use std::collections::HashMap;

/// A simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an explicit vertex count and edge list.
    /// Edges are normalized to (min, max), deduplicated, and sorted.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut norm: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop { line: 0, v: u });
            }
            if u >= n || v >= n {
                return Err(Error::VertexRange { v: u.max(v), n });
            }
            norm.push((u.min(v), u.max(v)));
        }
        norm.sort_unstable();
        norm.dedup();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &norm {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: norm,
            adj,
        })
    }

    /// Parses the edge-list text format: one `u v` pair per line, `#`
    /// comments, and an optional first line `n <count>` to pin isolated
    /// vertices. Rejects self-loops and malformed lines with their line
    /// number.
    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut n_pinned: Option<usize> = None;
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut max_id: Option<usize> = None;
        let mut first_content_line = true;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if first_content_line && fields.len() == 2 && fields[0] == "n" {
                n_pinned = Some(fields[1].parse().map_err(|_| Error::Parse {
                    line: line_no,
                    msg: format!("invalid vertex count {:?}", fields[1]),
                })?);
                first_content_line = false;
                continue;
            }
            first_content_line = false;
            if fields.len() != 2 {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("expected \"u v\", got {:?}", line),
                });
            }
            let parse = |s: &str| -> Result<usize> {
                s.parse().map_err(|_| Error::Parse {
                    line: line_no,
                    msg: format!("invalid vertex id {:?}", s),
                })
            };
            let (u, v) = (parse(fields[0])?, parse(fields[1])?);
            if u == v {
                return Err(Error::SelfLoop {
                    line: line_no,
                    v: u,
                });
            }
            max_id = Some(max_id.unwrap_or(0).max(u).max(v));
            edges.push((u, v));
        }
        let n = match (n_pinned, max_id) {
            (Some(n), Some(mx)) => {
                if mx >= n {
                    return Err(Error::VertexRange { v: mx, n });
                }
                n
            }
            (Some(n), None) => n,
            (None, Some(mx)) => mx + 1,
            (None, None) => 0,
        };
        Graph::new(n, &edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Undirected edges as sorted (min, max) pairs.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn d_min(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn d_max(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn is_regular(&self) -> bool {
        self.n > 0 && self.d_min() == self.d_max()
    }

    /// Connected components as sorted vertex lists, ordered by smallest
    /// member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for &w in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.components().len() == 1
    }

    /// BFS 2-coloring; `None` when an odd cycle is found.
    fn two_coloring(&self) -> Option<Vec<u8>> {
        let mut color = vec![u8::MAX; self.n];
        for start in 0..self.n {
            if color[start] != u8::MAX {
                continue;
            }
            color[start] = 0;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in self.neighbors(u) {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[u];
                        queue.push_back(w);
                    } else if color[w] == color[u] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    pub fn is_tree(&self) -> bool {
        self.n > 0 && self.is_connected() && self.m() + 1 == self.n
    }

    pub fn is_cycle(&self) -> bool {
        self.n >= 3
            && self.m() == self.n
            && self.is_connected()
            && (0..self.n).all(|v| self.degree(v) == 2)
    }

    /// Combinatorial ground truth used to judge the spectral detectors.
    pub fn structure_truth(&self) -> StructureTruth {
        StructureTruth {
            components: self.components().len(),
            degree1_count: (0..self.n).filter(|&v| self.degree(v) == 1).count(),
            bipartite: self.is_bipartite(),
            is_tree: self.is_tree(),
            is_cycle: self.is_cycle(),
            d_min: self.d_min(),
            d_max: self.d_max(),
        }
    }

    /// Iteratively deletes degree <= 1 vertices until every surviving vertex
    /// has degree >= 2 (or nothing survives). Returns the induced subgraph
    /// (vertices relabeled in increasing order) and the removed vertices.
    pub fn two_core(&self) -> (Graph, Vec<usize>) {
        let mut alive = vec![true; self.n];
        let mut deg = self.degrees();
        let mut removed = Vec::new();
        loop {
            let mut changed = false;
            for v in 0..self.n {
                if alive[v] && deg[v] <= 1 {
                    alive[v] = false;
                    removed.push(v);
                    changed = true;
                    for &w in self.neighbors(v) {
                        if alive[w] {
                            deg[w] -= 1;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let mut relabel = vec![usize::MAX; self.n];
        let mut kept = 0;
        for v in 0..self.n {
            if alive[v] {
                relabel[v] = kept;
                kept += 1;
            }
        }
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter(|&&(u, v)| alive[u] && alive[v])
            .map(|&(u, v)| (relabel[u], relabel[v]))
            .collect();
        removed.sort_unstable();
        (
            Graph::new(kept, &edges).expect("induced subgraph is valid"),
            removed,
        )
    }

    /// The subgraph induced by `vertices` (assumed sorted and distinct),
    /// relabeled so that `vertices[i]` becomes vertex `i`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut relabel = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            relabel[v] = i;
        }
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter(|&&(u, v)| relabel[u] != usize::MAX && relabel[v] != usize::MAX)
            .map(|&(u, v)| (relabel[u], relabel[v]))
            .collect();
        Graph::new(vertices.len(), &edges).expect("induced subgraph is valid")
    }

    /// Whether the directed graph on the 2m directed edges, with arcs
    /// (u,v) -> (v,w) for w != u, is strongly connected. This is the graph
    /// whose adjacency matrix is B, so the answer decides irreducibility
    /// of B. Uses Kosaraju's two-pass DFS.
    pub fn directed_edge_graph_strongly_connected(&self) -> bool {
        let index = DirectedEdgeIndex::new(self);
        let size = index.len();
        if size == 0 {
            return false;
        }
        let mut fwd: Vec<Vec<usize>> = vec![Vec::new(); size];
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); size];
        for e in 0..size {
            let (u, v) = index.pair(e);
            for &w in self.neighbors(v) {
                if w != u {
                    let f = index.index_of(v, w).expect("successor edge exists");
                    fwd[e].push(f);
                    rev[f].push(e);
                }
            }
        }
        let reaches_all = |arcs: &[Vec<usize>]| {
            let mut seen = vec![false; size];
            let mut stack = vec![0];
            seen[0] = true;
            let mut count = 1;
            while let Some(e) = stack.pop() {
                for &f in &arcs[e] {
                    if !seen[f] {
                        seen[f] = true;
                        count += 1;
                        stack.push(f);
                    }
                }
            }
            count == size
        };
        reaches_all(&fwd) && reaches_all(&rev)
    }
}

/// Ground-truth structural facts computed combinatorially (BFS/DFS), never
/// spectrally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureTruth {
    pub components: usize,
    pub degree1_count: usize,
    pub bipartite: bool,
    pub is_tree: bool,
    pub is_cycle: bool,
    pub d_min: usize,
    pub d_max: usize,
}

/// Deterministic ordering of the 2m directed edges of a graph,
/// lexicographic by (source, target), with O(1) inverse lookup.
#[derive(Debug, Clone)]
pub struct DirectedEdgeIndex {
    pairs: Vec<(usize, usize)>,
    lookup: HashMap<(usize, usize), usize>,
}

impl DirectedEdgeIndex {
    pub fn new(g: &Graph) -> Self {
        let mut pairs = Vec::with_capacity(2 * g.m());
        for &(u, v) in g.edges() {
            pairs.push((u, v));
            pairs.push((v, u));
        }
        pairs.sort_unstable();
        let lookup = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        DirectedEdgeIndex { pairs, lookup }
    }

    /// Number of directed edges, 2m.
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// The directed edge stored at position `e`.
    pub fn pair(&self, e: usize) -> (usize, usize) {
        self.pairs[e]
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Position of the directed edge (u,v), if present.
    pub fn index_of(&self, u: usize, v: usize) -> Option<usize> {
        self.lookup.get(&(u, v)).copied()
    }

    /// Position of the reversal (v,u) of the edge stored at `e`.
    pub fn reversal(&self, e: usize) -> usize {
        let (u, v) = self.pairs[e];
        self.lookup[&(v, u)]
    }
}

/// The path P_n on vertices 0..n.
pub fn path_graph(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::Domain {
            what: "path_graph",
            requirement: "n >= 1",
            got: n.to_string(),
        });
    }
    let edges: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    Graph::new(n, &edges)
}

/// The cycle C_n, n >= 3.
pub fn cycle_graph(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::Domain {
            what: "cycle_graph",
            requirement: "n >= 3",
            got: n.to_string(),
        });
    }
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::new(n, &edges)
}

/// The complete graph K_n.
pub fn complete_graph(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::Domain {
            what: "complete_graph",
            requirement: "n >= 1",
            got: n.to_string(),
        });
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::new(n, &edges)
}

/// The star K_{1,s}: hub 0 with s leaves, n = s + 1.
pub fn star_graph(s: usize) -> Result<Graph> {
    if s == 0 {
        return Err(Error::Domain {
            what: "star_graph",
            requirement: "s >= 1 leaves",
            got: s.to_string(),
        });
    }
    let edges: Vec<(usize, usize)> = (1..=s).map(|v| (0, v)).collect();
    Graph::new(s + 1, &edges)
}

/// The pinwheel: p cycles of length k sharing hub vertex 0.
/// n = p(k-1) + 1 vertices, m = pk edges, hub degree 2p.
pub fn pinwheel_graph(p: usize, k: usize) -> Result<Graph> {
    if p < 1 || k < 3 {
        return Err(Error::Domain {
            what: "pinwheel_graph",
            requirement: "p >= 1 and k >= 3",
            got: format!("p = {p}, k = {k}"),
        });
    }
    let mut edges = Vec::new();
    let mut next = 1;
    for _ in 0..p {
        let ring: Vec<usize> = std::iter::once(0).chain(next..next + k - 1).collect();
        next += k - 1;
        for t in 0..k {
            edges.push((ring[t], ring[(t + 1) % k]));
        }
    }
    Graph::new(p * (k - 1) + 1, &edges)
}

/// The Petersen graph: outer 5-cycle, inner 5-cycle with step 2, spokes.
pub fn petersen_graph() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, 5 + (i + 2) % 5));
    }
    Graph::new(10, &edges).expect("petersen edges are valid")
}

/// Uniform random tree on n vertices from a random Pruefer sequence.
pub fn random_tree(rng: &mut impl rand::Rng, n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::Domain {
            what: "random_tree",
            requirement: "n >= 1",
            got: n.to_string(),
        });
    }
    if n == 1 {
        return Graph::new(1, &[]);
    }
    if n == 2 {
        return Graph::new(2, &[(0, 1)]);
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &x in &seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut heap: std::collections::BinaryHeap<std::cmp::Reverse<usize>> = (0..n)
        .filter(|&v| degree[v] == 1)
        .map(std::cmp::Reverse)
        .collect();
    for &x in &seq {
        let std::cmp::Reverse(leaf) = heap.pop().expect("pruefer decode has a leaf");
        edges.push((leaf, x));
        degree[x] -= 1;
        if degree[x] == 1 {
            heap.push(std::cmp::Reverse(x));
        }
    }
    let std::cmp::Reverse(u) = heap.pop().expect("two vertices remain");
    let std::cmp::Reverse(v) = heap.pop().expect("two vertices remain");
    edges.push((u, v));
    Graph::new(n, &edges)
}

/// Vertex-disjoint union of g1 and g2 with v1 and v2 identified.
/// Vertices of g2 keep their relative order; w != v2 maps to
/// n1 + w (or n1 + w - 1 past v2), and v2 maps to v1.
pub fn join_at_vertex(g1: &Graph, v1: usize, g2: &Graph, v2: usize) -> Result<Graph> {
    if v1 >= g1.n() {
        return Err(Error::VertexRange { v: v1, n: g1.n() });
    }
    if v2 >= g2.n() {
        return Err(Error::VertexRange { v: v2, n: g2.n() });
    }
    let map = |w: usize| -> usize {
        if w == v2 {
            v1
        } else if w < v2 {
            g1.n() + w
        } else {
            g1.n() + w - 1
        }
    };
    let mut edges = g1.edges().to_vec();
    edges.extend(g2.edges().iter().map(|&(a, b)| (map(a), map(b))));
    Graph::new(g1.n() + g2.n() - 1, &edges)
}

/// Disjoint union, shifting each graph's vertex labels past the previous
/// ones.
pub fn disjoint_union(parts: &[Graph]) -> Graph {
    let mut edges = Vec::new();
    let mut offset = 0usize;
    for g in parts {
        edges.extend(g.edges().iter().map(|&(a, b)| (offset + a, offset + b)));
        offset += g.n();
    }
    Graph::new(offset, &edges).expect("parts are valid graphs")
}
