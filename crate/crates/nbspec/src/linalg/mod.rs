//! Self-contained dense real/complex numerics.
//!
//! Everything the checks need and nothing more: pivoted-LU determinants,
//! full complex spectra of real nonsymmetric matrices (balancing with
//! zero-row/column isolation, Householder Hessenberg reduction, Francis
//! double-shift QR), column-pivoted QR rank/nullspace over the reals and
//! the complexes, eigenvector extraction, and power iteration for
//! nonnegative matrices.
//!
//! One extra tool matters for reproducible multiplicities: for integer
//! matrices the algebraic multiplicity of the eigenvalue 0 is computed
//! exactly (rank of a high matrix power over two prime fields) and the
//! corresponding smallest-modulus QR outputs are snapped to exact zeros.
//! QR iteration smears defective zero clusters to around eps^(1/k) for a
//! Jordan block of size k, far above the 1e-6 matching tolerances used by
//! the spectral checks, while every nonzero eigenvalue of the graph
//! matrices handled here has modulus at least 1; the snap closes that gap
//! without ever inventing spectral data (it refuses unless the modulus
//! separation is unambiguous).

mod eig;
mod exact;
mod qr;

pub use exact::integer_zero_multiplicity;

use crate::{Error, Result};
use num_complex::Complex64;

/// Default pivot/rank cutoff factor: singular values below
/// `RANK_TOL * ||M|| * max(rows, cols)` count as zero.
pub const RANK_TOL: f64 = 1e-10;

/// Hard cap on eigensolver input dimension.
pub const MAX_EIG_DIM: usize = 400;

/// QR iteration budget: `QR_ITER_FACTOR * dim` total steps.
pub const QR_ITER_FACTOR: usize = 100;

pub type CVector = Vec<Complex64>;

/// Dense row-major real matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.concat(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Column matrix assembled from `columns`, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<f64>]) -> Self {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for i in 0..rows {
                m[(i, j)] = col[i];
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matvec");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    /// Matrix-vector product with a complex vector.
    pub fn cmatvec(&self, v: &[Complex64]) -> CVector {
        assert_eq!(self.cols, v.len(), "dimension mismatch in cmatvec");
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| v[j] * self[(i, j)])
                    .sum::<Complex64>()
            })
            .collect()
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a -= b;
        }
        out
    }

    pub fn scale(&self, factor: f64) -> Matrix {
        let mut out = self.clone();
        for a in &mut out.data {
            *a *= factor;
        }
        out
    }

    /// Largest absolute entry; 0 for empty matrices.
    pub fn norm_max(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, x| acc.max(x.abs()))
    }

    pub fn norm_fro(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Horizontal concatenation; all blocks must share the row count.
    pub fn hconcat(blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.first().map_or(0, |b| b.rows);
        assert!(blocks.iter().all(|b| b.rows == rows), "row count mismatch");
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let mut offset = 0;
        for b in blocks {
            for i in 0..rows {
                for j in 0..b.cols {
                    out[(i, offset + j)] = b[(i, j)];
                }
            }
            offset += b.cols;
        }
        out
    }

    /// Vertical concatenation; all blocks must share the column count.
    pub fn vconcat(blocks: &[&Matrix]) -> Matrix {
        let cols = blocks.first().map_or(0, |b| b.cols);
        assert!(
            blocks.iter().all(|b| b.cols == cols),
            "column count mismatch"
        );
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = Matrix::zeros(rows, cols);
        let mut offset = 0;
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..cols {
                    out[(offset + i, j)] = b[(i, j)];
                }
            }
            offset += b.rows;
        }
        out
    }

    /// Submatrix on the given row and column index lists.
    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Matrix {
        Matrix::from_fn(row_idx.len(), col_idx.len(), |i, j| {
            self[(row_idx[i], col_idx[j])]
        })
    }

    /// Determinant via partially pivoted LU. The empty matrix has
    /// determinant 1 (empty product).
    pub fn determinant(&self) -> Result<f64> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut lu = self.clone();
        let mut det = 1.0;
        for k in 0..n {
            let mut piv = k;
            for i in k + 1..n {
                if lu[(i, k)].abs() > lu[(piv, k)].abs() {
                    piv = i;
                }
            }
            if lu[(piv, k)] == 0.0 {
                return Ok(0.0);
            }
            if piv != k {
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(piv, j)];
                    lu[(piv, j)] = tmp;
                }
                det = -det;
            }
            det *= lu[(k, k)];
            for i in k + 1..n {
                let factor = lu[(i, k)] / lu[(k, k)];
                lu[(i, k)] = factor;
                for j in k + 1..n {
                    let sub = factor * lu[(k, j)];
                    lu[(i, j)] -= sub;
                }
            }
        }
        Ok(det)
    }

    /// MatrixMarket dense ("array") text, column-major entries.
    pub fn to_matrix_market(&self) -> String {
        let mut out = String::from("%%MatrixMarket matrix array real general\n");
        out.push_str(&format!("{} {}\n", self.rows, self.cols));
        for j in 0..self.cols {
            for i in 0..self.rows {
                out.push_str(&format!("{:.15e}\n", self[(i, j)]));
            }
        }
        out
    }

    pub(crate) fn to_nested(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)]).collect())
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Complex spectrum with algebraic multiplicity expanded, sorted by
/// (re, im) for reproducibility.
#[derive(Debug, Clone)]
pub struct Spectrum {
    values: Vec<Complex64>,
    cluster_tol: f64,
}

impl Spectrum {
    pub fn new(mut values: Vec<Complex64>, cluster_tol: f64) -> Self {
        values.sort_by(|a, b| {
            (a.re, a.im)
                .partial_cmp(&(b.re, b.im))
                .expect("eigenvalues are finite")
        });
        Spectrum {
            values,
            cluster_tol,
        }
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn cluster_tol(&self) -> f64 {
        self.cluster_tol
    }

    /// Max modulus; 0 for the empty spectrum.
    pub fn spectral_radius(&self) -> f64 {
        self.values.iter().fold(0.0, |acc, z| acc.max(z.norm()))
    }

    /// Min modulus; 0 for the empty spectrum.
    pub fn min_modulus(&self) -> f64 {
        if self.values.is_empty() {
            return 0.0;
        }
        self.values
            .iter()
            .map(|z| z.norm())
            .fold(f64::INFINITY, f64::min)
    }

    /// Greedy clustering with radius `cluster_tol * max(1, spectral radius)`:
    /// each value joins the first existing cluster center within the radius.
    /// Returns (center, multiplicity) pairs in canonical order.
    pub fn clusters(&self) -> Vec<(Complex64, usize)> {
        let radius = self.cluster_tol * self.spectral_radius().max(1.0);
        let mut out: Vec<(Complex64, usize)> = Vec::new();
        for &z in &self.values {
            match out.iter_mut().find(|(c, _)| (*c - z).norm() <= radius) {
                Some((_, count)) => *count += 1,
                None => out.push((z, 1)),
            }
        }
        out
    }

    /// Whether some eigenvalue lies within `tol` of `z`.
    pub fn contains(&self, z: Complex64, tol: f64) -> bool {
        self.values.iter().any(|&v| (v - z).norm() <= tol)
    }

    /// Number of eigenvalues within `tol` of `z`.
    pub fn multiplicity_near(&self, z: Complex64, tol: f64) -> usize {
        self.values
            .iter()
            .filter(|&&v| (v - z).norm() <= tol)
            .count()
    }

    /// Whether the multiset is invariant under negation within `tol`.
    pub fn symmetric_under_negation(&self, tol: f64) -> bool {
        let negated: Vec<Complex64> = self.values.iter().map(|&z| -z).collect();
        multiset_match(&self.values, &negated, tol).ok
    }

    /// Replaces the `zero_mult` smallest-modulus values with exact zeros,
    /// but only when the modulus gap makes the identification unambiguous
    /// (all snapped values below 0.2 and at most a fifth of the smallest
    /// kept modulus). Returns whether the snap was applied.
    pub fn snap_zeros(&mut self, zero_mult: usize) -> bool {
        if zero_mult == 0 || zero_mult > self.values.len() {
            return zero_mult == 0;
        }
        let mut order: Vec<usize> = (0..self.values.len()).collect();
        order.sort_by(|&a, &b| {
            self.values[a]
                .norm()
                .partial_cmp(&self.values[b].norm())
                .expect("finite")
        });
        let small = &order[..zero_mult];
        let max_small = small
            .iter()
            .map(|&i| self.values[i].norm())
            .fold(0.0, f64::max);
        let min_kept = order[zero_mult..]
            .iter()
            .map(|&i| self.values[i].norm())
            .fold(f64::INFINITY, f64::min);
        let unambiguous = max_small <= 0.2 && (max_small == 0.0 || min_kept >= 5.0 * max_small);
        if !unambiguous {
            return false;
        }
        for &i in small {
            self.values[i] = Complex64::new(0.0, 0.0);
        }
        self.values
            .sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).expect("finite"));
        true
    }
}

/// Outcome of greedy minimal-distance multiset matching.
#[derive(Debug, Clone)]
pub struct MatchOutcome {
    pub ok: bool,
    /// Largest matched-pair distance (0 when nothing was matched).
    pub max_distance: f64,
    /// First value of `a` whose best available partner was farther than tol,
    /// with that distance; or a length-mismatch marker.
    pub failure: Option<String>,
}

/// Greedy minimal-distance matching between two complex multisets with a
/// per-pair tolerance: values of `a` in canonical order each claim their
/// nearest unused value of `b`.
pub fn multiset_match(a: &[Complex64], b: &[Complex64], tol: f64) -> MatchOutcome {
    if a.len() != b.len() {
        return MatchOutcome {
            ok: false,
            max_distance: f64::INFINITY,
            failure: Some(format!("size mismatch: {} vs {}", a.len(), b.len())),
        };
    }
    let mut a_sorted = a.to_vec();
    a_sorted.sort_by(|x, y| (x.re, x.im).partial_cmp(&(y.re, y.im)).expect("finite"));
    let mut used = vec![false; b.len()];
    let mut max_distance: f64 = 0.0;
    for &x in &a_sorted {
        let mut best: Option<(usize, f64)> = None;
        for (j, &y) in b.iter().enumerate() {
            if used[j] {
                continue;
            }
            let d = (x - y).norm();
            if best.map_or(true, |(_, bd)| d < bd) {
                best = Some((j, d));
            }
        }
        let (j, d) = best.expect("b nonempty while a values remain");
        if d > tol {
            return MatchOutcome {
                ok: false,
                max_distance: d,
                failure: Some(format!(
                    "value {:+.6e}{:+.6e}i unmatched (nearest at distance {:.3e})",
                    x.re, x.im, d
                )),
            };
        }
        used[j] = true;
        max_distance = max_distance.max(d);
    }
    MatchOutcome {
        ok: true,
        max_distance,
        failure: None,
    }
}

/// All complex eigenvalues of a square real matrix, with algebraic
/// multiplicity, via isolation + balancing + Hessenberg + shifted QR.
/// `cluster_tol` is stored on the result for multiplicity grouping.
pub fn eigenvalues(m: &Matrix, cluster_tol: f64) -> Result<Spectrum> {
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if m.rows() > MAX_EIG_DIM {
        return Err(Error::DimensionCap {
            dim: m.rows(),
            cap: MAX_EIG_DIM,
        });
    }
    let mut a = m.to_nested();
    let mut values = eig::isolate(&mut a);
    eig::balance(&mut a);
    eig::hessenberg(&mut a);
    let budget = QR_ITER_FACTOR * m.rows().max(1);
    match eig::hqr(&mut a, budget) {
        Ok(rest) => {
            values.extend(rest);
            Ok(Spectrum::new(values, cluster_tol))
        }
        Err(partial) => {
            values.extend(partial);
            Err(Error::NonConvergence {
                iters: budget,
                found: values.len(),
                dim: m.rows(),
                partial: values,
            })
        }
    }
}

/// Spectrum of an integer-entry matrix with the zero eigenvalue repaired to
/// its exact algebraic multiplicity (see module docs). Falls back to the
/// plain QR spectrum when the matrix is not integral or the modulus gap is
/// ambiguous.
pub fn spectrum_of_integer_matrix(m: &Matrix, cluster_tol: f64) -> Result<Spectrum> {
    let mut s = eigenvalues(m, cluster_tol)?;
    if let Some(z) = integer_zero_multiplicity(m) {
        s.snap_zeros(z);
    }
    Ok(s)
}

/// Orthonormal basis of the numerical nullspace {x : ||Mx|| <= tol ||x|| ||M||},
/// via column-pivoted Householder QR with pivot cutoff
/// `tol * ||M|| * max(rows, cols)` (largest column norm as the scale).
pub fn nullspace(m: &Matrix, tol: f64) -> Vec<Vec<f64>> {
    qr::real_nullspace(m, tol)
}

/// Numerical rank with the same cutoff convention as [`nullspace`].
pub fn rank(m: &Matrix, tol: f64) -> usize {
    m.cols() - qr::real_nullspace(m, tol).len()
}

/// Complex nullspace basis of (M - lambda I) used for eigenvector
/// extraction; same cutoff convention as [`nullspace`].
pub fn complex_shifted_nullspace(m: &Matrix, lambda: Complex64, tol: f64) -> Vec<CVector> {
    qr::complex_shifted_nullspace(m, lambda, tol)
}

/// Unit eigenvector for an eigenvalue `lambda` known within `tol`:
/// first basis vector of the complex nullspace of (M - lambda I), with the
/// residual contract ||Mv - lambda v|| <= 10 tol max(1, ||M||).
pub fn eigenvector_for(m: &Matrix, lambda: Complex64, tol: f64) -> Result<CVector> {
    qr::eigenvector_for(m, lambda, tol)
}

pub use qr::{cnorm, PerronOutcome};

/// Dominant eigenvalue and nonnegative eigenvector of a nonnegative square
/// matrix. Power iteration on M + I (aperiodic whenever M is irreducible);
/// falls back to the QR spectrum when iteration stalls. A zero matrix yields
/// (0, e_0) flagged degenerate.
pub fn power_iteration_perron(m: &Matrix, iters: usize, tol: f64) -> Result<PerronOutcome> {
    qr::power_iteration_perron(m, iters, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(Matrix::identity(3).determinant().unwrap(), 1.0);
        let d = Matrix::from_rows(&[vec![2.0, 0.0], vec![0.0, 3.0]]);
        assert_eq!(d.determinant().unwrap(), 6.0);
        let singular = Matrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]);
        assert_eq!(singular.determinant().unwrap(), 0.0);
        assert_eq!(Matrix::zeros(0, 0).determinant().unwrap(), 1.0);
        assert!(Matrix::zeros(2, 3).determinant().is_err());
    }

    #[test]
    fn eigenvalues_of_c4_adjacency() {
        // adjacency of the 4-cycle: eigenvalues 2cos(2 pi j / 4) = {2, 0, 0, -2}
        let a = Matrix::from_rows(&[
            vec![0.0, 1.0, 0.0, 1.0],
            vec![1.0, 0.0, 1.0, 0.0],
            vec![0.0, 1.0, 0.0, 1.0],
            vec![1.0, 0.0, 1.0, 0.0],
        ]);
        let s = eigenvalues(&a, 1e-6).unwrap();
        let expect = vec![c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-2.0, 0.0)];
        assert!(multiset_match(s.values(), &expect, 1e-8).ok);
    }

    #[test]
    fn eigenvalues_of_zero_matrix() {
        let s = eigenvalues(&Matrix::zeros(4, 4), 1e-6).unwrap();
        assert!(s.values().iter().all(|z| z.norm() == 0.0));
        assert_eq!(s.len(), 4);
    }

    #[test]
    fn eigenvalues_of_directed_cycle_are_roots_of_unity() {
        for n in [3usize, 4, 6] {
            let mut p = Matrix::zeros(n, n);
            for i in 0..n {
                p[(i, (i + 1) % n)] = 1.0;
            }
            let s = eigenvalues(&p, 1e-6).unwrap();
            let expect: Vec<C> = (0..n)
                .map(|j| C::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / n as f64))
                .collect();
            let outcome = multiset_match(s.values(), &expect, 1e-9);
            assert!(outcome.ok, "n = {n}: {:?}", outcome.failure);
        }
    }

    #[test]
    fn eigenvalue_sum_matches_trace_and_product_matches_det() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for trial in 0..30 {
            let n = 1 + (trial % 12);
            let m = Matrix::from_fn(n, n, |_, _| rng.gen_range(-2.0..2.0));
            let s = eigenvalues(&m, 1e-6).unwrap();
            let trace: f64 = (0..n).map(|i| m[(i, i)]).sum();
            let sum: C = s.values().iter().sum();
            assert!(
                (sum - c(trace, 0.0)).norm() <= 1e-8 * (n as f64) * m.norm_max().max(1.0),
                "trace mismatch at n = {n}"
            );
            let det = m.determinant().unwrap();
            let prod: C = s.values().iter().product();
            let scale = det.abs().max(1.0);
            assert!(
                (prod - c(det, 0.0)).norm() <= 1e-6 * scale,
                "det mismatch at n = {n}: {prod} vs {det}"
            );
        }
    }

    #[test]
    fn spectrum_closed_under_conjugation() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let n = rng.gen_range(2..14);
            let m = Matrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
            let s = eigenvalues(&m, 1e-6).unwrap();
            let conj: Vec<C> = s.values().iter().map(|z| z.conj()).collect();
            assert!(multiset_match(s.values(), &conj, 1e-12).ok);
        }
    }

    #[test]
    fn transpose_has_same_spectrum() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..10 {
            let n = rng.gen_range(2..12);
            let m = Matrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
            let s = eigenvalues(&m, 1e-6).unwrap();
            let st = eigenvalues(&m.transpose(), 1e-6).unwrap();
            assert!(multiset_match(s.values(), st.values(), 1e-6).ok);
        }
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(nullspace(&Matrix::identity(3), RANK_TOL).len(), 0);
        let z = Matrix::zeros(2, 3);
        let basis = nullspace(&z, RANK_TOL);
        assert_eq!(basis.len(), 3);
        for (i, u) in basis.iter().enumerate() {
            for (j, v) in basis.iter().enumerate() {
                let dot: f64 = u.iter().zip(v).map(|(a, b)| a * b).sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((dot - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn nullspace_dimension_plus_rank_is_cols() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for _ in 0..20 {
            let r = rng.gen_range(1..8);
            let k = rng.gen_range(1..8);
            // random rank-deficient product
            let a = Matrix::from_fn(r, 3, |_, _| rng.gen_range(-1.0..1.0));
            let b = Matrix::from_fn(3, k, |_, _| rng.gen_range(-1.0..1.0));
            let m = a.mul(&b);
            let ns = nullspace(&m, RANK_TOL);
            assert_eq!(rank(&m, RANK_TOL) + ns.len(), m.cols());
            for v in &ns {
                let mv = m.matvec(v);
                let res: f64 = mv.iter().map(|x| x * x).sum::<f64>().sqrt();
                assert!(res <= 1e-8 * m.norm_max().max(1.0));
            }
        }
    }

    #[test]
    fn eigenvector_for_identity_and_k4() {
        let v = eigenvector_for(&Matrix::identity(2), c(1.0, 0.0), 1e-8).unwrap();
        let norm = cnorm(&v);
        assert!((norm - 1.0).abs() < 1e-12);

        // adjacency of K_4 at lambda = 3: Perron vector is uniform
        let a = Matrix::from_fn(4, 4, |i, j| if i == j { 0.0 } else { 1.0 });
        let v = eigenvector_for(&a, c(3.0, 0.0), 1e-8).unwrap();
        let first = v[0];
        assert!(first.norm() > 1e-3);
        for z in &v {
            assert!((z - first).norm() < 1e-8, "not uniform: {v:?}");
        }
        assert!(eigenvector_for(&a, c(2.5, 0.0), 1e-8).is_err());
    }

    #[test]
    fn power_iteration_on_identity_and_zero() {
        let out = power_iteration_perron(&Matrix::identity(3), 200, 1e-10).unwrap();
        assert!((out.rho - 1.0).abs() < 1e-9);
        assert!(!out.degenerate);

        let out = power_iteration_perron(&Matrix::zeros(3, 3), 50, 1e-10).unwrap();
        assert_eq!(out.rho, 0.0);
        assert!(out.degenerate);
        let norm: f64 = out.vector.iter().map(|x| x * x).sum::<f64>().sqrt();
        assert!((norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn snap_zeros_requires_clear_gap() {
        let mut s = Spectrum::new(vec![c(1e-4, 0.0), c(1.0, 0.0)], 1e-6);
        assert!(s.snap_zeros(1));
        assert_eq!(s.values()[0], c(0.0, 0.0));

        // ambiguous: claimed zero too close to the kept values
        let mut s = Spectrum::new(vec![c(0.3, 0.0), c(1.0, 0.0)], 1e-6);
        assert!(!s.snap_zeros(1));
        assert!(s.values()[0].norm() > 0.0);
    }

    #[test]
    fn clusters_group_within_tolerance() {
        let s = Spectrum::new(vec![c(1.0, 0.0), c(1.0 + 1e-9, 0.0), c(-1.0, 0.0)], 1e-6);
        let cl = s.clusters();
        assert_eq!(cl.len(), 2);
        assert_eq!(cl.iter().map(|&(_, k)| k).sum::<usize>(), 3);
    }

    #[test]
    fn matrix_market_shape() {
        let m = Matrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]);
        let text = m.to_matrix_market();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "%%MatrixMarket matrix array real general"
        );
        assert_eq!(lines.next().unwrap(), "2 2");
        assert_eq!(text.lines().count(), 2 + 4);
    }

    #[test]
    fn non_square_and_cap_errors() {
        assert!(matches!(
            eigenvalues(&Matrix::zeros(2, 3), 1e-6),
            Err(Error::NonSquare { .. })
        ));
        assert!(matches!(
            eigenvalues(&Matrix::zeros(MAX_EIG_DIM + 1, MAX_EIG_DIM + 1), 1e-6),
            Err(Error::DimensionCap { .. })
        ));
    }
}
