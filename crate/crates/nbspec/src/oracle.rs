//! Brute-force ground truth, kept deliberately dumb.
//!
//! Everything here is independent of the analytical modules: walk counts
//! come from depth-first enumeration over directed-edge successors, matrix
//! powers run in exact integer arithmetic, determinants are sampled
//! pointwise, and small-graph sweeps enumerate adjacency bitmasks. The
//! point is that a bug in the clever code and a bug in the oracle are
//! unlikely to coincide.

use std::collections::BTreeMap;

use crate::graph::{DirectedEdgeIndex, Graph};
use crate::linalg::Matrix;
use crate::report::VerificationReport;
use crate::{Error, Result};

const MAX_WALK_LENGTH: usize = 8;
const MAX_WALK_EDGES: usize = 20;
const MAX_SWEEP_N: usize = 7;

/// Exact counts of non-backtracking walks between directed edges.
#[derive(Debug, Clone)]
pub struct WalkCountTable {
    pub k: usize,
    /// counts[e][f]: walks of exactly k steps from directed edge e to f.
    pub counts: Vec<Vec<u64>>,
}

/// B as an exact integer matrix, straight from the definition:
/// entry (e, f) is 1 when f continues e without reversing it.
pub fn integer_b(g: &Graph) -> Vec<Vec<u64>> {
    let edges = DirectedEdgeIndex::new(g);
    let two_m = edges.len();
    let mut b = vec![vec![0u64; two_m]; two_m];
    for e in 0..two_m {
        let (u, v) = edges.pair(e);
        for f in 0..two_m {
            let (x, y) = edges.pair(f);
            if v == x && u != y {
                b[e][f] = 1;
            }
        }
    }
    b
}

/// Count non-backtracking walks of exactly k steps between all pairs of
/// directed edges by depth-first enumeration. Never touches B.
pub fn count_nb_walks_bruteforce(g: &Graph, k: usize) -> Result<WalkCountTable> {
    if !(1..=MAX_WALK_LENGTH).contains(&k) {
        return Err(Error::Budget {
            msg: format!("walk length {k} outside 1..={MAX_WALK_LENGTH}"),
        });
    }
    if g.m() > MAX_WALK_EDGES {
        return Err(Error::Budget {
            msg: format!("{} edges exceed the oracle cap {MAX_WALK_EDGES}", g.m()),
        });
    }
    let edges = DirectedEdgeIndex::new(g);
    let two_m = edges.len();
    let mut counts = vec![vec![0u64; two_m]; two_m];

    fn dfs(g: &Graph, edges: &DirectedEdgeIndex, at: usize, steps_left: usize, row: &mut [u64]) {
        if steps_left == 0 {
            row[at] += 1;
            return;
        }
        let (u, v) = edges.pair(at);
        for &w in g.neighbors(v) {
            if w != u {
                let next = edges.index_of(v, w).expect("neighbor edge indexed");
                dfs(g, edges, next, steps_left - 1, row);
            }
        }
    }

    for e in 0..two_m {
        let (u, v) = edges.pair(e);
        for &w in g.neighbors(v) {
            if w != u {
                let next = edges.index_of(v, w).expect("neighbor edge indexed");
                dfs(g, &edges, next, k - 1, &mut counts[e]);
            }
        }
    }
    Ok(WalkCountTable { k, counts })
}

fn integer_matmul(a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let n = a.len();
    let mut out = vec![vec![0u64; n]; n];
    for i in 0..n {
        for l in 0..n {
            let ail = a[i][l];
            if ail == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += ail * b[l][j];
            }
        }
    }
    out
}

/// B^k in integer arithmetic must equal the brute-force walk table, entry
/// by entry, with no tolerance.
pub fn verify_bk_equals_walkcounts(g: &Graph, k: usize) -> Result<VerificationReport> {
    let name = "walk-count-power";
    let table = count_nb_walks_bruteforce(g, k)?;
    let b = integer_b(g);
    let mut power = b.clone();
    for _ in 1..k {
        power = integer_matmul(&power, &b);
    }
    let edges = DirectedEdgeIndex::new(g);
    for e in 0..power.len() {
        for f in 0..power.len() {
            if power[e][f] != table.counts[e][f] {
                return Ok(VerificationReport::fail(
                    name,
                    None,
                    Some(format!(
                        "B^{k}[{:?} -> {:?}] = {} but the walk count is {}",
                        edges.pair(e),
                        edges.pair(f),
                        power[e][f],
                        table.counts[e][f]
                    )),
                ));
            }
        }
    }
    Ok(VerificationReport::pass(name, Some(0.0))
        .with_metadata("k", k.to_string())
        .with_metadata("dimension", power.len().to_string()))
}

/// Evaluate det(lambda I - M) at each sample and compare against the
/// monomial lambda^dim, the characteristic polynomial of any nilpotent
/// matrix. Used on tree B and rooted-tree edge matrices.
pub fn charpoly_spotcheck(m: &Matrix, samples: &[f64]) -> Result<VerificationReport> {
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let dim = m.rows();
    if dim > 20 {
        return Err(Error::DimensionCap { dim, cap: 20 });
    }
    let name = "charpoly-monomial";
    let mut worst = 0.0f64;
    for &lambda in samples {
        let shifted = Matrix::from_fn(dim, dim, |i, j| {
            (if i == j { lambda } else { 0.0 }) - m[(i, j)]
        });
        let det = shifted.determinant()?;
        let predicted = lambda.powi(dim as i32);
        let rel = (det - predicted).abs() / predicted.abs().max(1.0);
        worst = worst.max(rel);
    }
    let report = if worst <= 1e-8 {
        VerificationReport::pass(name, Some(worst))
    } else {
        VerificationReport::fail(name, Some(worst), None)
    };
    Ok(report
        .with_metadata("dimension", dim.to_string())
        .with_metadata("samples", format!("{samples:?}")))
}

/// Direct every edge of a tree toward the root (vertex 0) and return the
/// edge-adjacency matrix on those n-1 directed edges: entry (u, w) is 1
/// when the edge out of u feeds the edge out of w, i.e. w is u's parent
/// and not the root. The result is nilpotent: every step climbs.
pub fn rooted_tree_edge_matrix(tree: &Graph) -> Result<Matrix> {
    if !tree.is_tree() {
        return Err(Error::Domain {
            what: "rooted_tree_edge_matrix",
            requirement: "a tree",
            got: format!("graph with {} vertices, {} edges", tree.n(), tree.m()),
        });
    }
    let n = tree.n();
    let mut parent = vec![usize::MAX; n];
    let mut stack = vec![0usize];
    let mut seen = vec![false; n];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in tree.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = v;
                stack.push(w);
            }
        }
    }
    Ok(Matrix::from_fn(n - 1, n - 1, |i, j| {
        let (u, w) = (i + 1, j + 1);
        if parent[u] == w {
            1.0
        } else {
            0.0
        }
    }))
}

/// Graph on n vertices from an adjacency bitmask over the C(n,2) vertex
/// pairs in lexicographic order.
pub fn mask_to_graph(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            if mask >> bit & 1 == 1 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    Graph::new(n, &edges).expect("bitmask graphs are simple")
}

/// All 2^C(n,2) labeled simple graphs on exactly n vertices, in ascending
/// bitmask order.
pub struct GraphSweep {
    n: usize,
    next: u64,
    total: u64,
}

impl Iterator for GraphSweep {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.next >= self.total {
            return None;
        }
        let g = mask_to_graph(self.n, self.next);
        self.next += 1;
        Some(g)
    }
}

pub fn exhaustive_graph_sweep(n: usize) -> Result<GraphSweep> {
    if n == 0 || n > MAX_SWEEP_N {
        return Err(Error::Domain {
            what: "exhaustive_graph_sweep",
            requirement: "1 <= n <= 7",
            got: n.to_string(),
        });
    }
    let pairs = n * (n - 1) / 2;
    Ok(GraphSweep {
        n,
        next: 0,
        total: 1u64 << pairs,
    })
}

/// One representative per isomorphism class of the labeled graphs on n
/// vertices passing `keep` (which must be isomorphism-invariant).
/// Representatives carry their canonical labeling and come out in
/// ascending canonical-mask order, so runs are replayable.
pub fn exhaustive_graph_sweep_distinct(
    n: usize,
    keep: impl Fn(&Graph) -> bool,
) -> Result<Vec<Graph>> {
    let mut classes: BTreeMap<u64, ()> = BTreeMap::new();
    for g in exhaustive_graph_sweep(n)? {
        if keep(&g) {
            classes.entry(canonical_mask(&g)).or_insert(());
        }
    }
    Ok(classes.keys().map(|&mask| mask_to_graph(n, mask)).collect())
}

/// Canonical adjacency bitmask: vertices are sorted by iterated
/// neighborhood-refinement colors, then the mask is minimized over all
/// permutations that respect the color classes. Refinement colors are
/// isomorphism-invariant and computed by rank (never by arbitrary ids),
/// so isomorphic graphs search the same orbit of masks and land on the
/// same minimum; the within-class search keeps the form exact even when
/// refinement fails to separate vertex orbits.
pub fn canonical_mask(g: &Graph) -> u64 {
    let n = g.n();
    assert!(n <= 11, "mask form only fits 64 bits up to n = 11");
    let colors = refinement_colors(g);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| colors[v]);

    // consecutive runs of equal color
    let mut blocks: Vec<(usize, usize)> = Vec::new();
    let mut start = 0;
    for i in 1..=n {
        if i == n || colors[order[i]] != colors[order[start]] {
            blocks.push((start, i));
            start = i;
        }
    }

    let block_perms: Vec<Vec<Vec<usize>>> =
        blocks.iter().map(|&(s, e)| permutations(e - s)).collect();

    let mut bit_of = vec![vec![0usize; n]; n];
    let mut bit = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            bit_of[i][j] = bit;
            bit_of[j][i] = bit;
            bit += 1;
        }
    }
    let adj: Vec<u16> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u16, |acc, &w| acc | 1 << w))
        .collect();

    let mut best = u64::MAX;
    let mut choice = vec![0usize; blocks.len()];
    let mut relabel = vec![0usize; n];
    loop {
        for (bi, &(s, e)) in blocks.iter().enumerate() {
            let perm = &block_perms[bi][choice[bi]];
            for t in 0..(e - s) {
                relabel[s + t] = order[s + perm[t]];
            }
        }
        let mut mask = 0u64;
        for i in 0..n {
            for j in (i + 1)..n {
                if adj[relabel[i]] >> relabel[j] & 1 == 1 {
                    mask |= 1 << bit_of[i][j];
                }
            }
        }
        best = best.min(mask);

        // odometer over the per-block permutation choices
        let mut bi = 0;
        loop {
            if bi == blocks.len() {
                return best;
            }
            choice[bi] += 1;
            if choice[bi] < block_perms[bi].len() {
                break;
            }
            choice[bi] = 0;
            bi += 1;
        }
    }
}

/// Iterated neighborhood refinement: start from degree ranks, repeatedly
/// replace each vertex's color by the rank of (color, sorted neighbor
/// colors) until the partition stops splitting. Ranks are taken within
/// the sorted list of distinct signatures, so equal structures get equal
/// colors across different graphs.
fn refinement_colors(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut colors = ranks(&g.degrees().iter().map(|&d| vec![d]).collect::<Vec<_>>());
    let mut distinct = colors
        .iter()
        .collect::<std::collections::BTreeSet<_>>()
        .len();
    loop {
        let sigs: Vec<Vec<usize>> = (0..n)
            .map(|v| {
                let mut s = vec![colors[v]];
                let mut nb: Vec<usize> = g.neighbors(v).iter().map(|&w| colors[w]).collect();
                nb.sort_unstable();
                s.extend(nb);
                s
            })
            .collect();
        let new_colors = ranks(&sigs);
        let nd = new_colors
            .iter()
            .collect::<std::collections::BTreeSet<_>>()
            .len();
        if nd == distinct {
            return new_colors;
        }
        colors = new_colors;
        distinct = nd;
    }
}

fn ranks(sigs: &[Vec<usize>]) -> Vec<usize> {
    let mut sorted: Vec<&Vec<usize>> = sigs.iter().collect();
    sorted.sort();
    sorted.dedup();
    sigs.iter()
        .map(|s| sorted.binary_search(&s).expect("own signature present"))
        .collect()
}

fn permutations(len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..len).collect();
    fn heap(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, items, out);
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    heap(len, &mut items, &mut out);
    out
}
