//! Randomized invariants: exact identities of the edge-matrix family,
//! graph bookkeeping, and floating-point contracts of the eigenvalue
//! machinery, each checked over generated inputs.

use std::collections::BTreeSet;

use num_complex::Complex64;
use proptest::prelude::*;

use nbspec::graph::{self, DirectedEdgeIndex, Graph};
use nbspec::linalg::{self, eigenvalues, multiset_match, Matrix};
use nbspec::nb::{build_operators, verify_intertwining, verify_product_identities};

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .collect();
        let len = pairs.len();
        prop::collection::vec(any::<bool>(), len).prop_map(move |keep| {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .zip(&keep)
                .filter_map(|(&e, &k)| k.then_some(e))
                .collect();
            Graph::new(n, &edges).expect("pairs are in range and loop-free")
        })
    })
}

fn arb_square(max_dim: usize, lo: f64, hi: f64) -> impl Strategy<Value = Matrix> {
    (1..=max_dim).prop_flat_map(move |d| {
        prop::collection::vec(lo..hi, d * d)
            .prop_map(move |vals| Matrix::from_fn(d, d, |i, j| vals[i * d + j]))
    })
}

fn edge_set(g: &Graph) -> BTreeSet<(usize, usize)> {
    g.edges()
        .iter()
        .map(|&(a, b)| (a.min(b), a.max(b)))
        .collect()
}

proptest! {
    #[test]
    fn degree_sum_is_twice_the_edge_count(g in arb_graph(9)) {
        let total: usize = g.degrees().iter().sum();
        prop_assert_eq!(total, 2 * g.m());
    }

    #[test]
    fn directed_edges_come_in_sorted_reversal_pairs(g in arb_graph(8)) {
        let idx = DirectedEdgeIndex::new(&g);
        prop_assert_eq!(idx.len(), 2 * g.m());
        for w in idx.pairs().windows(2) {
            prop_assert!(w[0] < w[1]);
        }
        for e in 0..idx.len() {
            let r = idx.reversal(e);
            prop_assert_eq!(idx.reversal(r), e);
            let (u, v) = idx.pair(e);
            prop_assert_eq!(idx.pair(r), (v, u));
        }
    }

    #[test]
    fn edge_list_text_round_trips(g in arb_graph(9)) {
        let mut text = format!("n {}\n", g.n());
        for &(u, v) in g.edges() {
            text.push_str(&format!("{u} {v}\n"));
        }
        let back = Graph::from_edge_list(&text);
        prop_assert!(back.is_ok());
        let back = back.unwrap();
        prop_assert_eq!(back.n(), g.n());
        prop_assert_eq!(edge_set(&back), edge_set(&g));
    }

    #[test]
    fn join_at_vertex_adds_edge_counts_and_merges_one_vertex(
        g1 in arb_graph(6),
        g2 in arb_graph(6),
        iv in any::<prop::sample::Index>(),
        iw in any::<prop::sample::Index>(),
    ) {
        let v = iv.index(g1.n());
        let w = iw.index(g2.n());
        let joined = graph::join_at_vertex(&g1, v, &g2, w);
        prop_assert!(joined.is_ok());
        let joined = joined.unwrap();
        prop_assert_eq!(joined.n(), g1.n() + g2.n() - 1);
        prop_assert_eq!(joined.m(), g1.m() + g2.m());
    }

    #[test]
    fn two_core_has_min_degree_two_and_is_idempotent(g in arb_graph(9)) {
        let (core, _) = g.two_core();
        if core.n() > 0 {
            prop_assert!(core.d_min() >= 2);
        }
        let (again, _) = core.two_core();
        prop_assert_eq!(again.n(), core.n());
        prop_assert_eq!(edge_set(&again), edge_set(&core));
    }

    #[test]
    fn tau_is_a_symmetric_involution_with_unit_row_sums(g in arb_graph(7)) {
        let ops = build_operators(&g);
        let dim = ops.tau.rows();
        let eye = Matrix::identity(dim);
        prop_assert!(ops.tau.mul(&ops.tau).sub(&eye).norm_max() <= 1e-12);
        prop_assert!(ops.tau.transpose().sub(&ops.tau).norm_max() <= 1e-12);
        for i in 0..dim {
            let row: f64 = (0..dim).map(|j| ops.tau[(i, j)]).sum();
            let col: f64 = (0..dim).map(|j| ops.tau[(j, i)]).sum();
            prop_assert!((row - 1.0).abs() <= 1e-12);
            prop_assert!((col - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn edge_matrices_satisfy_the_product_identities(g in arb_graph(7)) {
        let ops = build_operators(&g);
        let b_from_c = ops.c.sub(&ops.tau);
        prop_assert!(ops.b.sub(&b_from_c).norm_max() <= 1e-12);
        for e in 0..ops.edges.len() {
            let (_, v) = ops.edges.pair(e);
            let row: f64 = (0..ops.edges.len()).map(|j| ops.b[(e, j)]).sum();
            prop_assert!((row - (g.degree(v) as f64 - 1.0)).abs() <= 1e-12);
        }
        prop_assert!(verify_product_identities(&ops, 1e-12).passed());
        prop_assert!(verify_intertwining(&ops, 1e-12).passed());
    }

    #[test]
    fn k_charpoly_matches_the_quadratic_determinant(
        g in arb_graph(7),
        mu in -2.0..2.0f64,
    ) {
        let ops = build_operators(&g);
        let n = g.n();
        let quad = Matrix::from_fn(n, n, |i, j| {
            let eye = if i == j { 1.0 } else { 0.0 };
            mu * mu * eye - mu * ops.a[(i, j)] + ops.d[(i, j)] - eye
        });
        let shifted = Matrix::from_fn(2 * n, 2 * n, |i, j| {
            (if i == j { mu } else { 0.0 }) - ops.k[(i, j)]
        });
        let lhs = quad.determinant().unwrap();
        let rhs = shifted.determinant().unwrap();
        let scale = lhs.abs().max(rhs.abs()).max(1.0);
        prop_assert!((lhs - rhs).abs() <= 1e-8 * scale, "lhs {} rhs {}", lhs, rhs);
    }

    #[test]
    fn eigenvalue_sum_matches_the_trace(m in arb_square(8, -3.0, 3.0)) {
        let sigma = eigenvalues(&m, 1e-6);
        prop_assert!(sigma.is_ok());
        let sigma = sigma.unwrap();
        let sum: Complex64 = sigma.values().iter().copied().sum();
        let trace: f64 = (0..m.rows()).map(|i| m[(i, i)]).sum();
        let scale = m.norm_fro().max(1.0) * m.rows() as f64;
        prop_assert!((sum.re - trace).abs() <= 1e-8 * scale, "sum {} trace {}", sum, trace);
        prop_assert!(sum.im.abs() <= 1e-8 * scale);
    }

    #[test]
    fn eigenvalue_product_matches_the_determinant(m in arb_square(6, -2.0, 2.0)) {
        let det = m.determinant().unwrap();
        prop_assume!(det.abs() >= 0.1);
        let sigma = eigenvalues(&m, 1e-6);
        prop_assert!(sigma.is_ok());
        let prod: Complex64 = sigma.unwrap().values().iter().copied().product();
        prop_assert!((prod.re - det).abs() <= 1e-6 * det.abs(), "prod {} det {}", prod, det);
        prop_assert!(prod.im.abs() <= 1e-6 * det.abs());
    }

    #[test]
    fn real_spectra_are_closed_under_conjugation(m in arb_square(7, -3.0, 3.0)) {
        let sigma = eigenvalues(&m, 1e-6);
        prop_assert!(sigma.is_ok());
        let mut values: Vec<Complex64> = sigma.unwrap().values().to_vec();
        while let Some(z) = values.pop() {
            if z.im == 0.0 {
                continue;
            }
            let partner = values
                .iter()
                .position(|w| (w - z.conj()).norm() <= 1e-9 * z.norm().max(1.0));
            prop_assert!(partner.is_some(), "unpaired complex eigenvalue {}", z);
            values.remove(partner.unwrap());
        }
    }

    #[test]
    fn transpose_preserves_the_spectrum(m in arb_square(6, -3.0, 3.0)) {
        let a = eigenvalues(&m, 1e-6);
        let b = eigenvalues(&m.transpose(), 1e-6);
        prop_assert!(a.is_ok() && b.is_ok());
        let outcome = multiset_match(a.unwrap().values(), b.unwrap().values(), 1e-4);
        prop_assert!(outcome.ok, "{:?}", outcome.failure);
    }

    #[test]
    fn nullspace_vectors_annihilate_rank_deficient_matrices(
        (d, r, pvals, qvals) in (2usize..=7)
            .prop_flat_map(|d| (Just(d), 1..d))
            .prop_flat_map(|(d, r)| (
                Just(d),
                Just(r),
                prop::collection::vec(-2.0..2.0f64, d * r),
                prop::collection::vec(-2.0..2.0f64, r * d),
            )),
    ) {
        let p = Matrix::from_fn(d, r, |i, j| pvals[i * r + j]);
        let q = Matrix::from_fn(r, d, |i, j| qvals[i * d + j]);
        let m = p.mul(&q);
        let basis = linalg::nullspace(&m, linalg::RANK_TOL);
        prop_assert!(basis.len() >= d - r, "rank <= {} but nullity {}", r, basis.len());
        let scale = m.norm_fro().max(1.0);
        for v in &basis {
            let norm_v = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            let defect = m.matvec(v).iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
            prop_assert!(defect <= 1e-6 * scale * norm_v.max(1.0));
        }
    }
}
