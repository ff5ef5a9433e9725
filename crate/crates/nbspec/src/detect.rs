//! Structure detection from spectra alone.
//!
//! Three structural quantities of a graph are readable off K and B without
//! looking at the graph:
//!
//! - the number of connected components is the geometric multiplicity of
//!   the eigenvalue 1 of K;
//! - the number of degree-1 vertices is the nullity of K;
//! - for connected graphs, bipartiteness is equivalent to each of: -1 in
//!   sigma(K), sigma(K) symmetric under negation, sigma(B) symmetric under
//!   negation, and the spectral radius of B being attained by a real
//!   positive eigenvalue whose negative also appears.
//!
//! Every detector here is paired with the combinatorial ground truth so
//! disagreements surface as test failures rather than silent drift.

use num_complex::Complex64;

use crate::graph::{Graph, StructureTruth};
use crate::linalg::{self, Matrix, Spectrum};
use crate::nb::build_operators;
use crate::report::VerificationReport;
use crate::Result;

/// Number of connected components: dim null(K - I).
pub fn detect_components(k: &Matrix, tol: f64) -> usize {
    let n = k.rows();
    let shifted = Matrix::from_fn(n, n, |i, j| k[(i, j)] - if i == j { 1.0 } else { 0.0 });
    linalg::nullspace(&shifted, tol).len()
}

/// Number of degree-1 vertices: dim null(K).
pub fn detect_degree1_count(k: &Matrix, tol: f64) -> usize {
    linalg::nullspace(k, tol).len()
}

/// The three spectral bipartiteness tests, each equivalent to
/// bipartiteness on connected graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BipartiteDetection {
    /// -1 is an eigenvalue of K.
    pub via_minus_one: bool,
    /// Both sigma(K) and sigma(B) are invariant under negation.
    pub via_symmetry: bool,
    /// Some eigenvalue of B of maximal modulus is real positive and its
    /// negative also appears (trees, with all eigenvalues 0, pass
    /// trivially).
    pub via_extremes: bool,
}

impl BipartiteDetection {
    /// The common verdict when the three tests agree.
    pub fn unanimous(&self) -> Option<bool> {
        if self.via_minus_one == self.via_symmetry && self.via_symmetry == self.via_extremes {
            Some(self.via_minus_one)
        } else {
            None
        }
    }
}

/// Run the bipartiteness detectors on precomputed spectra. Returns None
/// for disconnected graphs: the equivalences assume connectivity.
pub fn detect_bipartite(
    g: &Graph,
    sigma_k: &Spectrum,
    sigma_b: &Spectrum,
    tol: f64,
) -> Option<BipartiteDetection> {
    if !g.is_connected() {
        return None;
    }
    let via_minus_one = sigma_k.contains(Complex64::new(-1.0, 0.0), tol);
    let via_symmetry =
        sigma_k.symmetric_under_negation(tol) && sigma_b.symmetric_under_negation(tol);
    let rho = sigma_b.spectral_radius();
    let via_extremes = if rho <= tol {
        true
    } else {
        sigma_b.contains(Complex64::new(rho, 0.0), tol)
            && sigma_b.contains(Complex64::new(-rho, 0.0), tol)
    };
    Some(BipartiteDetection {
        via_minus_one,
        via_symmetry,
        via_extremes,
    })
}

/// Spectral detections for one graph next to the combinatorial answers.
#[derive(Debug, Clone)]
pub struct DetectionResult {
    pub detected_components: usize,
    pub detected_degree1: usize,
    pub detected_bipartite: Option<BipartiteDetection>,
    pub truth: StructureTruth,
    pub components_agree: bool,
    pub degree1_agree: bool,
    /// Vacuously true when bipartite detection is not applicable.
    pub bipartite_agree: bool,
    /// Rank / matching threshold the detections were computed with.
    pub tol: f64,
}

impl DetectionResult {
    pub fn all_agree(&self) -> bool {
        self.components_agree && self.degree1_agree && self.bipartite_agree
    }
}

/// Run every detector on one graph and compare with ground truth.
pub fn detect_structure(g: &Graph, tol: f64) -> Result<DetectionResult> {
    let ops = build_operators(g);
    let detected_components = detect_components(&ops.k, tol);
    let detected_degree1 = detect_degree1_count(&ops.k, tol);
    let truth = g.structure_truth();
    let detected_bipartite = if g.is_connected() {
        let sigma_k = linalg::spectrum_of_integer_matrix(&ops.k, tol)?;
        let sigma_b = linalg::spectrum_of_integer_matrix(&ops.b, tol)?;
        detect_bipartite(g, &sigma_k, &sigma_b, tol)
    } else {
        None
    };
    let bipartite_agree = match &detected_bipartite {
        None => true,
        Some(d) => d.unanimous() == Some(truth.bipartite),
    };
    Ok(DetectionResult {
        detected_components,
        detected_degree1,
        components_agree: detected_components == truth.components,
        degree1_agree: detected_degree1 == truth.degree1_count,
        detected_bipartite,
        bipartite_agree,
        truth,
        tol,
    })
}

/// Every eigenvector [a; b] of K satisfies a = -mu b: the bottom block row
/// of K - mu I reads -a - mu b = 0. Checks each numerically recovered
/// eigenvector of each eigenvalue cluster; clusters whose geometric
/// multiplicity falls short of the cluster size are listed as defective
/// rather than failed, since no basis of eigenvectors exists there.
pub fn verify_k_eigvec_form(k: &Matrix, tol: f64) -> Result<VerificationReport> {
    let name = "k-eigvec-form";
    let dim = k.rows();
    let n = dim / 2;
    let sigma = linalg::spectrum_of_integer_matrix(k, tol.max(1e-7))?;
    let mut worst = 0.0f64;
    let mut checked = 0usize;
    let mut geometric_total = 0usize;
    let mut defective: Vec<String> = Vec::new();
    for (mu, count) in sigma.clusters() {
        let basis = linalg::complex_shifted_nullspace(k, mu, tol);
        geometric_total += basis.len();
        if basis.len() < count {
            defective.push(format!("{mu} (geometric {} < {count})", basis.len()));
        }
        for v in &basis {
            let norm_v = linalg::cnorm(v);
            let residual: Vec<Complex64> = (0..n).map(|i| v[i] + mu * v[n + i]).collect();
            let rel = linalg::cnorm(&residual) / norm_v.max(1e-300);
            worst = worst.max(rel);
            checked += 1;
        }
    }
    let mut report = if worst <= tol {
        VerificationReport::pass(name, Some(worst))
    } else {
        VerificationReport::fail(
            name,
            Some(worst),
            Some("eigenvector with top half != -mu * bottom half".to_string()),
        )
    };
    report = report
        .with_metadata("tolerance", format!("{tol:e}"))
        .with_metadata("eigenvectors-checked", checked.to_string())
        .with_metadata("geometric-total", format!("{geometric_total} of {dim}"));
    if !defective.is_empty() {
        report = report.with_metadata("defective-clusters", defective.join("; "));
    }
    Ok(report)
}
