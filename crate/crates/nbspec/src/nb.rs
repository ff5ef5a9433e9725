//! The non-backtracking matrix and its companion operators.
//!
//! For a graph with m edges, each edge {u,v} contributes two directed edges
//! (u,v) and (v,u). On those 2m directed edges:
//!
//! - B[(u,v),(x,y)] = 1 iff v = x and u != y (walk continues, no U-turn),
//! - C[(u,v),(x,y)] = 1 iff v = x (walk continues, U-turn allowed),
//! - tau is the reversal (u,v) <-> (v,u),
//! - S maps a directed edge to its head vertex, T maps a vertex to the
//!   directed edges leaving it.
//!
//! These satisfy C = ST, B = ST - tau, D = T tau S, A = TS, and B is
//! intertwined with the 2n x 2n matrix K = [A, D-I; -I, 0] through
//! B [S T'] = [S T'] K. Completing [S T'] with eigenvectors of B for +-1
//! (which live in the +-1 eigenspaces of tau intersected with Null(ST))
//! yields the block relation BX = X diag(K, I_p, -I_p).

use num_complex::Complex64;

use crate::graph::{DirectedEdgeIndex, Graph};
use crate::linalg::{self, cnorm, CVector, Matrix, RANK_TOL};
use crate::report::VerificationReport;
use crate::{Error, Result};

/// All matrices attached to one graph, over a shared directed-edge index.
#[derive(Debug, Clone)]
pub struct NbOperators {
    pub graph: Graph,
    pub edges: DirectedEdgeIndex,
    /// 2m x 2m non-backtracking matrix.
    pub b: Matrix,
    /// 2m x 2m edge adjacency matrix (backtracking allowed), C = ST.
    pub c: Matrix,
    /// 2m x n head-vertex indicator.
    pub s: Matrix,
    /// n x 2m tail-vertex indicator.
    pub t: Matrix,
    /// 2m x 2m edge-reversal permutation.
    pub tau: Matrix,
    /// n x n adjacency matrix, A = TS.
    pub a: Matrix,
    /// n x n diagonal degree matrix, D = T tau S.
    pub d: Matrix,
    /// 2n x 2n block matrix [A, D-I; -I, 0].
    pub k: Matrix,
}

/// Build every operator for `g` on a shared directed-edge index.
pub fn build_operators(g: &Graph) -> NbOperators {
    let edges = DirectedEdgeIndex::new(g);
    let n = g.n();
    let two_m = edges.len();
    let mut b = Matrix::zeros(two_m, two_m);
    let mut c = Matrix::zeros(two_m, two_m);
    let mut s = Matrix::zeros(two_m, n);
    let mut t = Matrix::zeros(n, two_m);
    let mut tau = Matrix::zeros(two_m, two_m);
    for e in 0..two_m {
        let (u, v) = edges.pair(e);
        s[(e, v)] = 1.0;
        t[(u, e)] = 1.0;
        tau[(e, edges.reversal(e))] = 1.0;
        for &w in g.neighbors(v) {
            let f = edges.index_of(v, w).expect("successor edge indexed");
            c[(e, f)] = 1.0;
            if w != u {
                b[(e, f)] = 1.0;
            }
        }
    }
    let a = t.mul(&s);
    let d = Matrix::from_fn(n, n, |i, j| if i == j { g.degree(i) as f64 } else { 0.0 });
    let k = assemble_k(&a, &d);
    NbOperators {
        graph: g.clone(),
        edges,
        b,
        c,
        s,
        t,
        tau,
        a,
        d,
        k,
    }
}

fn assemble_k(a: &Matrix, d: &Matrix) -> Matrix {
    let n = a.rows();
    Matrix::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
        (true, true) => a[(i, j)],
        (true, false) => d[(i, j - n)] - if i == j - n { 1.0 } else { 0.0 },
        (false, true) => {
            if i - n == j {
                -1.0
            } else {
                0.0
            }
        }
        (false, false) => 0.0,
    })
}

/// Check the defining products C = ST, B = ST - tau, D = T tau S, A = TS.
/// These are exact integer identities; `tol` only guards representation.
pub fn verify_product_identities(ops: &NbOperators, tol: f64) -> VerificationReport {
    let st = ops.s.mul(&ops.t);
    let r1 = ops.c.sub(&st).norm_max();
    let r2 = ops.b.sub(&st.sub(&ops.tau)).norm_max();
    let r3 = ops.d.sub(&ops.t.mul(&ops.tau).mul(&ops.s)).norm_max();
    let r4 = ops.a.sub(&ops.t.mul(&ops.s)).norm_max();
    let worst = r1.max(r2).max(r3).max(r4);
    let report = if worst <= tol {
        VerificationReport::pass("product-identities", Some(worst))
    } else {
        VerificationReport::fail("product-identities", Some(worst), None)
    };
    report
        .with_metadata("residual-C-ST", format!("{r1:e}"))
        .with_metadata("residual-B-ST-tau", format!("{r2:e}"))
        .with_metadata("residual-D-TtauS", format!("{r3:e}"))
        .with_metadata("residual-A-TS", format!("{r4:e}"))
}

/// Check the intertwining B [S T'] = [S T'] K.
pub fn verify_intertwining(ops: &NbOperators, tol: f64) -> VerificationReport {
    let tt = ops.t.transpose();
    let st = Matrix::hconcat(&[&ops.s, &tt]);
    let residual = ops.b.mul(&st).sub(&st.mul(&ops.k)).norm_max();
    if residual <= tol {
        VerificationReport::pass("intertwining", Some(residual))
    } else {
        VerificationReport::fail("intertwining", Some(residual), None)
    }
}

/// The block relation BX = X diag(K, I_p, -I_p) with X = [S | T' | R].
///
/// R's columns are eigenvectors of B for +1 (from the tau eigenspace at -1
/// intersected with Null(ST)) and for -1 (tau eigenspace at +1 ditto),
/// p = max(0, m - n) selected per connected component. The intersection
/// dimensions per component are m - n + 1 for the first space and m - n
/// (+1 when the component is bipartite) for the second; both are checked.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub x: Matrix,
    pub block: Matrix,
    pub r: Matrix,
    /// Columns selected per sign (total over components).
    pub p: usize,
    /// Per component: dim of the space of B-eigenvectors for +1.
    pub plus_one_dims: Vec<usize>,
    /// Per component: dim of the space of B-eigenvectors for -1.
    pub minus_one_dims: Vec<usize>,
    /// Basis vectors available but not selected (one per non-tree
    /// component for +1; one per bipartite non-tree component for -1).
    pub surplus_plus_one: usize,
    pub surplus_minus_one: usize,
    pub residual: f64,
}

/// Build X, R, and the block matrix, verifying the intersection dimensions
/// and the product identity along the way. Disconnected graphs are handled
/// per component; the dimension facts hold component-wise.
pub fn build_decomposition(ops: &NbOperators, tol: f64) -> Result<Decomposition> {
    let g = &ops.graph;
    let two_m = ops.edges.len();
    let comps = g.components();
    let mut plus_one_dims = Vec::with_capacity(comps.len());
    let mut minus_one_dims = Vec::with_capacity(comps.len());
    let mut plus_cols: Vec<Vec<f64>> = Vec::new();
    let mut minus_cols: Vec<Vec<f64>> = Vec::new();
    let mut surplus_plus = 0usize;
    let mut surplus_minus = 0usize;
    for comp in &comps {
        let sub = g.induced(comp);
        let (plus_local, minus_local) = component_pm_one_bases(&sub)?;
        let mc = sub.m();
        let nc = sub.n();
        let expected_plus = (mc + 1).saturating_sub(nc);
        let expected_minus = if sub.is_bipartite() {
            (mc + 1).saturating_sub(nc)
        } else {
            mc.saturating_sub(nc)
        };
        if plus_local.len() != expected_plus || minus_local.len() != expected_minus {
            return Err(Error::StructuralFailure {
                msg: format!(
                    "intersection dimensions ({}, {}) differ from expected ({}, {}) \
                     on a component with {} vertices and {} edges",
                    plus_local.len(),
                    minus_local.len(),
                    expected_plus,
                    expected_minus,
                    nc,
                    mc
                ),
            });
        }
        plus_one_dims.push(plus_local.len());
        minus_one_dims.push(minus_local.len());
        let p_i = mc.saturating_sub(nc);
        surplus_plus += plus_local.len() - p_i.min(plus_local.len());
        surplus_minus += minus_local.len() - p_i.min(minus_local.len());
        let sub_edges = DirectedEdgeIndex::new(&sub);
        let embed = |vec_local: &[f64]| {
            let mut global = vec![0.0; two_m];
            for (e_local, &val) in vec_local.iter().enumerate() {
                let (a, b) = sub_edges.pair(e_local);
                let e_global = ops
                    .edges
                    .index_of(comp[a], comp[b])
                    .expect("component edge indexed");
                global[e_global] = val;
            }
            global
        };
        plus_cols.extend(plus_local.iter().take(p_i).map(|v| embed(v)));
        minus_cols.extend(minus_local.iter().take(p_i).map(|v| embed(v)));
    }
    let p = plus_cols.len();
    debug_assert_eq!(p, minus_cols.len());
    let mut r_cols = plus_cols;
    r_cols.extend(minus_cols);
    let r = Matrix::from_columns(two_m, &r_cols);
    let tt = ops.t.transpose();
    let x = Matrix::hconcat(&[&ops.s, &tt, &r]);
    let n2 = ops.k.rows();
    let dim = n2 + 2 * p;
    let block = Matrix::from_fn(dim, dim, |i, j| {
        if i < n2 && j < n2 {
            ops.k[(i, j)]
        } else if i == j {
            if i < n2 + p {
                1.0
            } else {
                -1.0
            }
        } else {
            0.0
        }
    });
    let residual = ops.b.mul(&x).sub(&x.mul(&block)).norm_max();
    if residual > tol {
        return Err(Error::StructuralFailure {
            msg: format!("decomposition residual {residual:.3e} exceeds {tol:.3e}"),
        });
    }
    Ok(Decomposition {
        x,
        block,
        r,
        p,
        plus_one_dims,
        minus_one_dims,
        surplus_plus_one: surplus_plus,
        surplus_minus_one: surplus_minus,
        residual,
    })
}

/// Nullspaces of the stacked matrices [(tau + I); ST] and [(tau - I); ST]
/// for one connected component: the B-eigenvectors for +1 and -1.
fn component_pm_one_bases(sub: &Graph) -> Result<(Vec<Vec<f64>>, Vec<Vec<f64>>)> {
    let sub_ops = build_operators(sub);
    let st = sub_ops.s.mul(&sub_ops.t);
    let two_m = sub_ops.edges.len();
    let eye = Matrix::identity(two_m);
    let plus = linalg::nullspace(
        &Matrix::vconcat(&[&sub_ops.tau.sub(&eye.scale(-1.0)), &st]),
        RANK_TOL,
    );
    let minus = linalg::nullspace(&Matrix::vconcat(&[&sub_ops.tau.sub(&eye), &st]), RANK_TOL);
    Ok((plus, minus))
}

/// Lift an eigenpair (mu, x) of K to the eigenvector S x_top + T' x_bottom
/// of B. The lift can annihilate (the result can be the zero vector even
/// for a genuine eigenpair); that is reported as an error, never as a
/// zero "eigenvector".
pub fn lift_k_eigenvector(
    ops: &NbOperators,
    mu: Complex64,
    x_k: &[Complex64],
    tol: f64,
) -> Result<CVector> {
    let n = ops.graph.n();
    if x_k.len() != 2 * n {
        return Err(Error::Domain {
            what: "lift_k_eigenvector",
            requirement: "vector of length 2n",
            got: format!("length {}", x_k.len()),
        });
    }
    let kx = ops.k.cmatvec(x_k);
    let defect = cnorm(
        &kx.iter()
            .zip(x_k)
            .map(|(kxi, xi)| kxi - mu * xi)
            .collect::<Vec<_>>(),
    );
    let allowed = tol * ops.k.norm_fro().max(1.0) * cnorm(x_k);
    if defect > allowed {
        return Err(Error::NotAnEigenpair {
            residual: defect,
            allowed,
        });
    }
    let two_m = ops.edges.len();
    let mut v = vec![Complex64::new(0.0, 0.0); two_m];
    for (e, entry) in v.iter_mut().enumerate() {
        let (tail, head) = ops.edges.pair(e);
        *entry = x_k[head] + x_k[n + tail];
    }
    let norm = cnorm(&v);
    if norm <= 1e-10 * cnorm(x_k).max(1.0) {
        return Err(Error::LiftAnnihilated { norm });
    }
    for entry in v.iter_mut() {
        *entry /= norm;
    }
    let bv = ops.b.cmatvec(&v);
    let residual = cnorm(
        &bv.iter()
            .zip(&v)
            .map(|(bvi, vi)| bvi - mu * vi)
            .collect::<Vec<_>>(),
    );
    let allowed = 10.0 * tol * ops.b.norm_fro().max(1.0);
    if residual > allowed {
        return Err(Error::StructuralFailure {
            msg: format!("lifted vector has residual {residual:.3e} (allowed {allowed:.3e})"),
        });
    }
    Ok(v)
}

/// The closed-form inverse [[0, -I], [(D-I)^-1, (D-I)^-1 A]] of K, which
/// exists precisely when no vertex has degree one. Isolated vertices are
/// fine: their diagonal entry of D - I is -1.
pub fn build_k_inverse(ops: &NbOperators) -> Result<Matrix> {
    let g = &ops.graph;
    let n = g.n();
    let degree_one = (0..n).filter(|&v| g.degree(v) == 1).count();
    if degree_one > 0 {
        return Err(Error::DegreeOneSingular { count: degree_one });
    }
    let dinv = Matrix::from_fn(n, n, |i, j| {
        if i == j {
            1.0 / (g.degree(i) as f64 - 1.0)
        } else {
            0.0
        }
    });
    let dinv_a = dinv.mul(&ops.a);
    let k_inv = Matrix::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
        (true, true) => 0.0,
        (true, false) => {
            if i == j - n {
                -1.0
            } else {
                0.0
            }
        }
        (false, true) => dinv[(i - n, j)],
        (false, false) => dinv_a[(i - n, j - n)],
    });
    let eye = Matrix::identity(2 * n);
    let r1 = ops.k.mul(&k_inv).sub(&eye).norm_max();
    let r2 = k_inv.mul(&ops.k).sub(&eye).norm_max();
    let worst = r1.max(r2);
    if worst > 1e-9 {
        return Err(Error::StructuralFailure {
            msg: format!("K inverse product residual {worst:.3e}"),
        });
    }
    Ok(k_inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, path_graph, pinwheel_graph, star_graph};

    fn row_sums(m: &Matrix) -> Vec<f64> {
        (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| m[(i, j)]).sum())
            .collect()
    }

    #[test]
    fn b_of_single_edge_is_zero() {
        let ops = build_operators(&path_graph(2).unwrap());
        assert_eq!(ops.b.rows(), 2);
        assert_eq!(ops.b.norm_max(), 0.0);
    }

    #[test]
    fn b_row_sums_count_successors() {
        let ops = build_operators(&cycle_graph(4).unwrap());
        assert!(row_sums(&ops.b).iter().all(|&s| s == 1.0));
        let ops = build_operators(&complete_graph(4).unwrap());
        assert!(row_sums(&ops.b).iter().all(|&s| s == 2.0));
    }

    #[test]
    fn tau_is_a_symmetric_involution() {
        let ops = build_operators(&pinwheel_graph(2, 3).unwrap());
        let two_m = ops.tau.rows();
        assert_eq!(
            ops.tau
                .mul(&ops.tau)
                .sub(&Matrix::identity(two_m))
                .norm_max(),
            0.0
        );
        assert_eq!(ops.tau.sub(&ops.tau.transpose()).norm_max(), 0.0);
        assert!(row_sums(&ops.tau).iter().all(|&s| s == 1.0));
    }

    #[test]
    fn b_equals_c_minus_tau() {
        for g in [
            path_graph(4).unwrap(),
            cycle_graph(5).unwrap(),
            complete_graph(4).unwrap(),
            star_graph(3).unwrap(),
        ] {
            let ops = build_operators(&g);
            assert_eq!(ops.b.sub(&ops.c.sub(&ops.tau)).norm_max(), 0.0);
        }
    }

    #[test]
    fn product_identities_are_exact() {
        for g in [
            path_graph(3).unwrap(),
            cycle_graph(4).unwrap(),
            complete_graph(4).unwrap(),
            pinwheel_graph(2, 3).unwrap(),
            Graph::new(0, &[]).unwrap(),
            Graph::new(1, &[]).unwrap(),
        ] {
            let ops = build_operators(&g);
            let report = verify_product_identities(&ops, 0.0);
            assert!(report.passed(), "failed on n={} m={}", g.n(), g.m());
            assert_eq!(report.residual, Some(0.0));
        }
    }

    #[test]
    fn intertwining_is_exact_on_integer_inputs() {
        for g in [
            path_graph(3).unwrap(),
            cycle_graph(4).unwrap(),
            complete_graph(4).unwrap(),
        ] {
            let ops = build_operators(&g);
            assert!(verify_intertwining(&ops, 0.0).passed());
        }
    }

    #[test]
    fn decomposition_of_k4_has_dims_3_and_2() {
        let ops = build_operators(&complete_graph(4).unwrap());
        let dec = build_decomposition(&ops, 1e-10).unwrap();
        assert_eq!(dec.plus_one_dims, vec![3]);
        assert_eq!(dec.minus_one_dims, vec![2]);
        assert_eq!(dec.p, 2);
        assert_eq!(dec.x.rows(), 12);
        assert_eq!(dec.x.cols(), 12);
        assert_eq!(dec.surplus_plus_one, 1);
        assert_eq!(dec.surplus_minus_one, 0);
        assert!(dec.residual <= 1e-10);
    }

    #[test]
    fn decomposition_of_c4_has_empty_r() {
        let ops = build_operators(&cycle_graph(4).unwrap());
        let dec = build_decomposition(&ops, 1e-10).unwrap();
        assert_eq!(dec.p, 0);
        assert_eq!(dec.r.cols(), 0);
        assert_eq!(dec.x.cols(), 8);
        // bipartite with m = n: one surplus vector on each side
        assert_eq!(dec.surplus_plus_one, 1);
        assert_eq!(dec.surplus_minus_one, 1);
    }

    #[test]
    fn decomposition_of_pinwheel() {
        let ops = build_operators(&pinwheel_graph(2, 3).unwrap());
        let dec = build_decomposition(&ops, 1e-10).unwrap();
        assert_eq!(dec.plus_one_dims, vec![2]);
        assert_eq!(dec.minus_one_dims, vec![1]);
        assert_eq!(dec.p, 1);
        assert!(dec.residual <= 1e-10);
    }

    #[test]
    fn decomposition_of_tree_has_wide_x() {
        let ops = build_operators(&path_graph(4).unwrap());
        let dec = build_decomposition(&ops, 1e-10).unwrap();
        assert_eq!(dec.p, 0);
        assert_eq!(dec.plus_one_dims, vec![0]);
        assert_eq!(dec.minus_one_dims, vec![0]);
        assert_eq!(dec.x.rows(), 6);
        assert_eq!(dec.x.cols(), 8);
        assert_eq!(dec.residual, 0.0);
    }

    #[test]
    fn decomposition_handles_disconnected_graphs_per_component() {
        // triangle (vertices 0-2) next to a 4-cycle (3-6)
        let g = Graph::new(7, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (5, 6), (3, 6)]).unwrap();
        let ops = build_operators(&g);
        let dec = build_decomposition(&ops, 1e-10).unwrap();
        assert_eq!(dec.plus_one_dims, vec![1, 1]);
        assert_eq!(dec.minus_one_dims, vec![0, 1]);
        assert_eq!(dec.p, 0);
        assert!(dec.residual <= 1e-10);
    }

    #[test]
    fn decomposition_of_complete_bipartite_has_minus_surplus() {
        // K_{2,3}: n = 5, m = 6, bipartite
        let g = Graph::new(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        let ops = build_operators(&g);
        let dec = build_decomposition(&ops, 1e-9).unwrap();
        assert_eq!(dec.plus_one_dims, vec![2]);
        assert_eq!(dec.minus_one_dims, vec![2]);
        assert_eq!(dec.p, 1);
        assert_eq!(dec.surplus_plus_one, 1);
        assert_eq!(dec.surplus_minus_one, 1);
    }

    #[test]
    fn lift_recovers_b_eigenvectors_of_k4() {
        let ops = build_operators(&complete_graph(4).unwrap());
        // A's Perron value 3 gives mu^2 - 3mu + 2 = 0, so mu = 2 with
        // K-eigenvector [-2u; u] for uniform u
        let mut x = vec![Complex64::new(-2.0, 0.0); 4];
        x.extend(vec![Complex64::new(1.0, 0.0); 4]);
        let v = lift_k_eigenvector(&ops, Complex64::new(2.0, 0.0), &x, 1e-10).unwrap();
        let bv = ops.b.cmatvec(&v);
        let defect: f64 = bv.iter().zip(&v).map(|(b, vi)| (b - 2.0 * vi).norm()).sum();
        assert!(defect <= 1e-9);
    }

    #[test]
    fn lift_of_triangle_constant_vector_annihilates() {
        // [1; -1] stacked constants is K's eigenvector at mu = 1, but the
        // lift x_top[head] + x_bottom[tail] cancels on every directed edge
        // (B v = v then holds only for v = 0), so this must be reported
        let ops = build_operators(&cycle_graph(3).unwrap());
        let mut x = vec![Complex64::new(-1.0, 0.0); 3];
        x.extend(vec![Complex64::new(1.0, 0.0); 3]);
        let err = lift_k_eigenvector(&ops, Complex64::new(1.0, 0.0), &x, 1e-10).unwrap_err();
        assert!(matches!(err, Error::LiftAnnihilated { .. }));
    }

    #[test]
    fn lift_of_triangle_complex_eigenpair() {
        // lambda = -1 of A gives mu^2 + mu + 1 = 0; take mu = e^{2 pi i/3}
        // with A-eigenvector y = (1, -1, 0) and K-eigenvector [-mu y; y]
        let ops = build_operators(&cycle_graph(3).unwrap());
        let mu = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        let y = [1.0, -1.0, 0.0];
        let x: Vec<Complex64> = y
            .iter()
            .map(|&r| -mu * r)
            .chain(y.iter().map(|&r| Complex64::new(r, 0.0)))
            .collect();
        let v = lift_k_eigenvector(&ops, mu, &x, 1e-10).unwrap();
        let bv = ops.b.cmatvec(&v);
        let defect: f64 = bv.iter().zip(&v).map(|(b, vi)| (b - mu * vi).norm()).sum();
        assert!(defect <= 1e-9);
    }

    #[test]
    fn lift_reports_annihilation() {
        // C_4 at mu = -1: K-eigenvector [y; y] with alternating y makes
        // x_k[head] + x_k[n + tail] vanish on every directed edge
        let ops = build_operators(&cycle_graph(4).unwrap());
        let y = [1.0, -1.0, 1.0, -1.0];
        let x: Vec<Complex64> = y
            .iter()
            .chain(y.iter())
            .map(|&r| Complex64::new(r, 0.0))
            .collect();
        let err = lift_k_eigenvector(&ops, Complex64::new(-1.0, 0.0), &x, 1e-8).unwrap_err();
        assert!(matches!(err, Error::LiftAnnihilated { .. }));
    }

    #[test]
    fn lift_rejects_non_eigenpairs() {
        let ops = build_operators(&complete_graph(4).unwrap());
        let x = vec![Complex64::new(1.0, 0.0); 8];
        let err = lift_k_eigenvector(&ops, Complex64::new(2.0, 0.0), &x, 1e-10).unwrap_err();
        assert!(matches!(err, Error::NotAnEigenpair { .. }));
    }

    #[test]
    fn k_inverse_of_cycles_and_cliques() {
        for g in [cycle_graph(4).unwrap(), complete_graph(4).unwrap()] {
            let ops = build_operators(&g);
            let k_inv = build_k_inverse(&ops).unwrap();
            let eye = Matrix::identity(ops.k.rows());
            assert!(ops.k.mul(&k_inv).sub(&eye).norm_max() <= 1e-12);
            assert!(k_inv.mul(&ops.k).sub(&eye).norm_max() <= 1e-12);
        }
    }

    #[test]
    fn k_inverse_rejects_degree_one() {
        let ops = build_operators(&path_graph(3).unwrap());
        match build_k_inverse(&ops).unwrap_err() {
            Error::DegreeOneSingular { count } => assert_eq!(count, 2),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn k_inverse_tolerates_isolated_vertices() {
        // triangle plus an isolated vertex: D - I has a -1 entry, K is
        // still invertible
        let g = Graph::new(4, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let ops = build_operators(&g);
        let k_inv = build_k_inverse(&ops).unwrap();
        let eye = Matrix::identity(8);
        assert!(ops.k.mul(&k_inv).sub(&eye).norm_max() <= 1e-12);
    }
}
