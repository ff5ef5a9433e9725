//! Closed-form spectra, the determinant identity, and spectral bounds.
//!
//! The non-backtracking spectrum has exact descriptions on several graph
//! families:
//!
//! - tree: B is nilpotent, all 2(n-1) eigenvalues are 0;
//! - cycle C_n: the n-th roots of unity, each with multiplicity 2 (B is a
//!   permutation of two disjoint directed cycles);
//! - d-regular: both roots of mu^2 - lambda mu + (d-1) = 0 per adjacency
//!   eigenvalue lambda, plus +1 and -1 each with multiplicity m-n;
//! - pinwheel (p cycles of length k on one hub): k-th roots of unity (x p),
//!   the odd 2k-th roots of unity (x p-1), and the k-th roots of 2p-1.
//!
//! All of them, plus the determinant identity
//! det(I - uB) = (1-u^2)^{m-n} det(u^2(D-I) - uA + I)
//! and the spectral-radius bounds below, are exposed as executable checks
//! against the dense eigensolver.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::graph::{cycle_graph, join_at_vertex, Graph};
use crate::linalg::{self, CVector, Matrix, Spectrum};
use crate::nb::{build_operators, NbOperators};
use crate::report::{BoundReport, VerificationReport};
use crate::{Error, Result};

/// Default evaluation points for the determinant identity; real, away from
/// the poles at u = +-1 that appear when m < n.
pub const DEFAULT_IHARA_SAMPLES: [f64; 5] = [0.1, 0.3, 0.5, 0.7, -0.4];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Tree,
    Cycle,
    DirectedCycle,
    Regular,
    Pinwheel,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Tree => "tree",
            Family::Cycle => "cycle",
            Family::DirectedCycle => "directed-cycle",
            Family::Regular => "regular",
            Family::Pinwheel => "pinwheel",
        }
    }
}

/// A predicted spectrum: exact expressions evaluated to complex values,
/// with multiplicities summing to the matrix dimension.
#[derive(Debug, Clone)]
pub struct ClosedFormSpectrum {
    pub family: Family,
    pub entries: Vec<(Complex64, usize)>,
}

impl ClosedFormSpectrum {
    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(|&(_, m)| m).sum()
    }

    /// The multiset as a flat list, one copy per multiplicity.
    pub fn expand(&self) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.total_multiplicity());
        for &(z, mult) in &self.entries {
            out.extend(std::iter::repeat(z).take(mult));
        }
        out
    }

    pub fn spectral_radius(&self) -> f64 {
        self.entries
            .iter()
            .map(|(z, _)| z.norm())
            .fold(0.0, f64::max)
    }
}

fn unit_root(j: usize, n: usize) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * j as f64 / n as f64)
}

/// Trees have nilpotent B: eigenvalue 0 with multiplicity 2(n-1).
pub fn tree_spectrum(g: &Graph) -> Result<ClosedFormSpectrum> {
    if !g.is_tree() {
        return Err(Error::Domain {
            what: "tree_spectrum",
            requirement: "a tree",
            got: format!("graph with {} vertices, {} edges", g.n(), g.m()),
        });
    }
    let mult = 2 * (g.n() - 1);
    let entries = if mult == 0 {
        Vec::new()
    } else {
        vec![(Complex64::new(0.0, 0.0), mult)]
    };
    Ok(ClosedFormSpectrum {
        family: Family::Tree,
        entries,
    })
}

/// C_n: each n-th root of unity twice (one copy per directed orbit).
pub fn cycle_spectrum(n: usize) -> Result<ClosedFormSpectrum> {
    if n < 3 {
        return Err(Error::Domain {
            what: "cycle_spectrum",
            requirement: "n >= 3",
            got: n.to_string(),
        });
    }
    Ok(ClosedFormSpectrum {
        family: Family::Cycle,
        entries: (0..n).map(|j| (unit_root(j, n), 2)).collect(),
    })
}

/// The n-th roots of unity: the spectrum of one directed n-cycle.
pub fn directed_cycle_spectrum(n: usize) -> Result<ClosedFormSpectrum> {
    if n < 1 {
        return Err(Error::Domain {
            what: "directed_cycle_spectrum",
            requirement: "n >= 1",
            got: n.to_string(),
        });
    }
    Ok(ClosedFormSpectrum {
        family: Family::DirectedCycle,
        entries: (0..n).map(|j| (unit_root(j, n), 1)).collect(),
    })
}

/// d-regular connected graphs: per lambda in sigma(A), both roots of
/// mu^2 - lambda mu + (d-1) = 0, plus +-1 with multiplicity m-n each.
///
/// The two degenerate regular graphs need care: the single vertex has an
/// empty B, and the single edge (1-regular) has B = 0 of size 2; in both
/// the quadratic-root multiset minus the (negative) +-1 surplus reduces to
/// the stated value.
pub fn regular_spectrum(g: &Graph) -> Result<ClosedFormSpectrum> {
    if !g.is_connected() || !g.is_regular() {
        return Err(Error::Domain {
            what: "regular_spectrum",
            requirement: "a connected regular graph",
            got: format!("graph with {} vertices, {} edges", g.n(), g.m()),
        });
    }
    let n = g.n();
    let m = g.m();
    if m == 0 {
        return Ok(ClosedFormSpectrum {
            family: Family::Regular,
            entries: Vec::new(),
        });
    }
    let d = g.d_min();
    if d == 1 {
        // the single edge: B is the 2x2 zero matrix
        return Ok(ClosedFormSpectrum {
            family: Family::Regular,
            entries: vec![(Complex64::new(0.0, 0.0), 2)],
        });
    }
    let ops = build_operators(g);
    let sigma_a = linalg::eigenvalues(&ops.a, 1e-9)?;
    let mut entries: Vec<(Complex64, usize)> = Vec::with_capacity(2 * m);
    for z in sigma_a.values() {
        let lambda = z.re;
        let disc = Complex64::new(lambda * lambda - 4.0 * (d as f64 - 1.0), 0.0).sqrt();
        entries.push(((Complex64::new(lambda, 0.0) + disc) / 2.0, 1));
        entries.push(((Complex64::new(lambda, 0.0) - disc) / 2.0, 1));
    }
    let surplus = m - n;
    if surplus > 0 {
        entries.push((Complex64::new(1.0, 0.0), surplus));
        entries.push((Complex64::new(-1.0, 0.0), surplus));
    }
    Ok(ClosedFormSpectrum {
        family: Family::Regular,
        entries,
    })
}

/// Pinwheel of p cycles of length k (p >= 2; p = 1 is just C_k).
pub fn pinwheel_spectrum(p: usize, k: usize) -> Result<ClosedFormSpectrum> {
    if p == 1 {
        return cycle_spectrum(k);
    }
    if p < 2 || k < 3 {
        return Err(Error::Domain {
            what: "pinwheel_spectrum",
            requirement: "p >= 2 and k >= 3",
            got: format!("p = {p}, k = {k}"),
        });
    }
    let mut entries: Vec<(Complex64, usize)> = Vec::with_capacity(3 * k);
    for j in 0..k {
        entries.push((unit_root(j, k), p));
    }
    for j in (1..2 * k).step_by(2) {
        entries.push((unit_root(j, 2 * k), p - 1));
    }
    let rho = (2.0 * p as f64 - 1.0).powf(1.0 / k as f64);
    for j in 0..k {
        entries.push((unit_root(j, k) * rho, 1));
    }
    Ok(ClosedFormSpectrum {
        family: Family::Pinwheel,
        entries,
    })
}

/// Compare a closed-form spectrum against the computed spectrum of B.
pub fn verify_family_spectrum(g: &Graph, cf: &ClosedFormSpectrum, tol: f64) -> VerificationReport {
    let name = format!("closed-form-{}", cf.family.as_str());
    let ops = build_operators(g);
    let computed = match linalg::spectrum_of_integer_matrix(&ops.b, tol) {
        Ok(s) => s,
        Err(e) => return VerificationReport::fail(name, None, Some(format!("eigensolver: {e}"))),
    };
    let outcome = linalg::multiset_match(&cf.expand(), computed.values(), tol);
    if outcome.ok {
        VerificationReport::pass(name, Some(outcome.max_distance))
    } else {
        VerificationReport::fail(name, Some(outcome.max_distance), outcome.failure)
    }
    .with_metadata("family", cf.family.as_str())
    .with_metadata("dimension", computed.len().to_string())
}

/// Join a cycle C_n to `ghat` at vertex `v` and construct, for each n-th
/// root of unity w = e^{2 pi i j / n}, the eigenvector of the joined B that
/// is supported on the two directed cycles: w^t on the forward edge leaving
/// the t-th cycle vertex, -w^{-s} on the backward edge leaving the s-th.
/// Each pair is verified to residual 1e-9 before being returned.
pub fn pendant_cycle_eigenpairs(
    ghat: &Graph,
    v: usize,
    n_cycle: usize,
) -> Result<Vec<(Complex64, CVector)>> {
    let cycle = cycle_graph(n_cycle)?;
    let joined = join_at_vertex(ghat, v, &cycle, 0)?;
    let ops = build_operators(&joined);
    let n1 = ghat.n();
    // cycle vertex t in the join: t = 0 lands on v, later ones append
    let global = |t: usize| if t == 0 { v } else { n1 + t - 1 };
    let two_m = ops.edges.len();
    let mut out = Vec::with_capacity(n_cycle);
    for j in 0..n_cycle {
        let omega = unit_root(j, n_cycle);
        let mut x = vec![Complex64::new(0.0, 0.0); two_m];
        for t in 0..n_cycle {
            let fwd = ops
                .edges
                .index_of(global(t), global((t + 1) % n_cycle))
                .ok_or_else(|| Error::StructuralFailure {
                    msg: format!("forward cycle edge {t} missing from the join"),
                })?;
            let bwd = ops
                .edges
                .index_of(global(t), global((t + n_cycle - 1) % n_cycle))
                .ok_or_else(|| Error::StructuralFailure {
                    msg: format!("backward cycle edge {t} missing from the join"),
                })?;
            x[fwd] = omega.powu(t as u32);
            x[bwd] = -omega.powu(t as u32).conj();
        }
        let bx = ops.b.cmatvec(&x);
        let defect = linalg::cnorm(
            &bx.iter()
                .zip(&x)
                .map(|(bxe, xe)| bxe - omega * xe)
                .collect::<Vec<_>>(),
        );
        if defect > 1e-9 {
            return Err(Error::StructuralFailure {
                msg: format!("pendant-cycle eigenpair j={j} has residual {defect:.3e}"),
            });
        }
        out.push((omega, x));
    }
    Ok(out)
}

/// Evaluate det(I - uB) = (1-u^2)^{m-n} det(u^2(D-I) - uA + I) at each
/// sample; relative residual must stay within 1e-8.
pub fn ihara_check(g: &Graph, u_samples: &[f64]) -> Result<VerificationReport> {
    let ops = build_operators(g);
    let n = g.n();
    let m = g.m();
    let two_m = ops.edges.len();
    let exponent = m as i32 - n as i32;
    let mut worst = 0.0f64;
    for &u in u_samples {
        let lhs_matrix = Matrix::from_fn(two_m, two_m, |i, j| {
            (if i == j { 1.0 } else { 0.0 }) - u * ops.b[(i, j)]
        });
        let lhs = lhs_matrix.determinant()?;
        let small = Matrix::from_fn(n, n, |i, j| {
            u * u * (ops.d[(i, j)] - if i == j { 1.0 } else { 0.0 }) - u * ops.a[(i, j)]
                + if i == j { 1.0 } else { 0.0 }
        });
        let rhs = (1.0 - u * u).powi(exponent) * small.determinant()?;
        let rel = (lhs - rhs).abs() / lhs.abs().max(1.0);
        worst = worst.max(rel);
    }
    let report = if worst <= 1e-8 {
        VerificationReport::pass("ihara", Some(worst))
    } else {
        VerificationReport::fail("ihara", Some(worst), None)
    };
    Ok(report
        .with_metadata("samples", format!("{u_samples:?}"))
        .with_metadata("edge-excess", exponent.to_string()))
}

/// Both roots of mu^2 - lambda mu + x'(D-I)y = 0, after rescaling y so
/// that x'y = 1. Orthogonal (x, y) pairs are rejected: the relation gives
/// no information there.
pub fn mu_from_lambda(
    lambda: f64,
    x: &[f64],
    y: &[f64],
    d: &Matrix,
) -> Result<(Complex64, Complex64)> {
    let nx = x.iter().map(|a| a * a).sum::<f64>().sqrt();
    let ny = y.iter().map(|a| a * a).sum::<f64>().sqrt();
    if nx == 0.0 || ny == 0.0 {
        return Err(Error::OrthogonalPair { inner: 0.0 });
    }
    let inner = x
        .iter()
        .zip(y)
        .map(|(a, b)| (a / nx) * (b / ny))
        .sum::<f64>();
    if inner.abs() <= 1e-10 {
        return Err(Error::OrthogonalPair { inner });
    }
    // rescale y so that x'y = 1, working with the normalized copies
    let scale = 1.0 / (inner * ny);
    let c = (0..x.len())
        .map(|i| {
            let di = d[(i, i)] - 1.0;
            (x[i] / nx) * di * (y[i] * scale)
        })
        .sum::<f64>();
    let disc = Complex64::new(lambda * lambda - 4.0 * c, 0.0).sqrt();
    let lam = Complex64::new(lambda, 0.0);
    Ok(((lam + disc) / 2.0, (lam - disc) / 2.0))
}

/// Every eigenvalue of B has modulus at least 1 on connected graphs with
/// minimum degree 2.
pub fn check_lower_bound_modulus(g: &Graph, spectrum: &Spectrum) -> BoundReport {
    let hypothesis = g.is_connected() && g.d_min() >= 2;
    let observed = spectrum.min_modulus();
    BoundReport::new(
        "lower-bound-modulus",
        hypothesis,
        1.0,
        observed,
        observed - 1.0,
    )
    .with_metadata("direction", "observed >= bound")
    .with_metadata("d_min", g.d_min().to_string())
}

/// rho(K) exceeds 1 strictly on connected graphs with d_min >= 2 that are
/// neither trees nor cycles.
pub fn check_rho_k_gt_1(g: &Graph, spectrum_k: &Spectrum) -> BoundReport {
    let hypothesis = g.is_connected() && !g.is_tree() && !g.is_cycle() && g.d_min() >= 2;
    let observed = spectrum_k.spectral_radius();
    BoundReport::new(
        "rho-K-exceeds-one",
        hypothesis,
        1.0,
        observed,
        observed - 1.0,
    )
    .with_metadata("direction", "observed > bound strictly")
}

/// The dominant eigenvector of K has the form [-rho y; y] with y entrywise
/// positive (after sign normalization) on connected non-tree non-cycle
/// graphs with d_min >= 2.
pub fn check_perron_positivity(g: &Graph) -> Result<VerificationReport> {
    let name = "perron-positivity";
    if !(g.is_connected() && !g.is_tree() && !g.is_cycle() && g.d_min() >= 2) {
        return Ok(VerificationReport::not_applicable(
            name,
            "requires a connected non-tree non-cycle graph with d_min >= 2",
        ));
    }
    let ops = build_operators(g);
    match k_dominant_bottom(&ops) {
        Ok((rho, y)) => {
            let min_entry = y.iter().cloned().fold(f64::INFINITY, f64::min);
            let report = if min_entry > 0.0 {
                VerificationReport::pass(name, Some(0.0f64.max(-min_entry)))
            } else {
                VerificationReport::fail(
                    name,
                    Some(-min_entry),
                    Some(format!("non-positive entry {min_entry:.3e} in y")),
                )
            };
            Ok(report
                .with_hypothesis("connected-non-tree-non-cycle-dmin2", true)
                .with_metadata("rho_K", format!("{rho:.12e}"))
                .with_metadata("min_entry", format!("{min_entry:.6e}")))
        }
        Err(e) => Ok(VerificationReport::fail(
            name,
            None,
            Some(format!("dominant eigenpair extraction failed: {e}")),
        )),
    }
}

/// rho(K) together with the bottom half y of the eigenvector at the real
/// positive eigenvalue rho(K), phase-fixed to be real with the
/// largest-magnitude entry positive. On bipartite graphs other
/// eigenvalues share the maximal modulus (the walk structure is
/// periodic), but the Perron value rho(K) itself must be in the spectrum;
/// errors when it is not, or when its eigenvector is not recoverable to
/// tolerance.
fn k_dominant_bottom(ops: &NbOperators) -> Result<(f64, Vec<f64>)> {
    let sigma = linalg::eigenvalues(&ops.k, 1e-9)?;
    let rho = sigma.spectral_radius();
    if !sigma.contains(Complex64::new(rho, 0.0), 1e-6 * rho.max(1.0)) {
        return Err(Error::StructuralFailure {
            msg: format!("no real positive eigenvalue of K attains the spectral radius {rho:.6e}"),
        });
    }
    let v = linalg::eigenvector_for(&ops.k, Complex64::new(rho, 0.0), 1e-8)?;
    let n = ops.graph.n();
    let lead = v
        .iter()
        .cloned()
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        .unwrap();
    let phase = lead / lead.norm();
    let aligned: Vec<Complex64> = v.iter().map(|z| z / phase).collect();
    let imag_defect = aligned.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    if imag_defect > 1e-6 {
        return Err(Error::StructuralFailure {
            msg: format!("dominant eigenvector not realizable (imag {imag_defect:.3e})"),
        });
    }
    let mut y: Vec<f64> = aligned[n..].iter().map(|z| z.re).collect();
    let lead_y = y
        .iter()
        .cloned()
        .fold(0.0f64, |acc, t| if t.abs() > acc.abs() { t } else { acc });
    if lead_y < 0.0 {
        for t in y.iter_mut() {
            *t = -*t;
        }
    }
    Ok((rho, y))
}

/// The hypothesis rho(A) >= 2 sqrt(x'(D-I)y) of the quadratic-root bound,
/// evaluated numerically with x the Perron vector of A and y the bottom
/// half of K's dominant eigenvector, scaled so x'y = 1.
fn quadratic_root_hypothesis(g: &Graph) -> (bool, String) {
    let ops = build_operators(g);
    let perron = match linalg::power_iteration_perron(&ops.a, 20_000, 1e-11) {
        Ok(p) => p,
        Err(e) => return (false, format!("perron-of-A failed: {e}")),
    };
    let (_, y) = match k_dominant_bottom(&ops) {
        Ok(pair) => pair,
        Err(e) => return (false, format!("dominant-of-K failed: {e}")),
    };
    let x = perron.vector;
    let inner: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
    if inner.abs() <= 1e-12 {
        return (false, "x'y vanishes".to_string());
    }
    let c: f64 = x
        .iter()
        .zip(&y)
        .enumerate()
        .map(|(i, (a, b))| a * (ops.d[(i, i)] - 1.0) * (b / inner))
        .sum();
    let rhs = 2.0 * c.max(0.0).sqrt();
    let lhs = perron.rho;
    (
        lhs >= rhs,
        format!("rho(A) = {lhs:.9e} vs 2 sqrt(x'(D-I)y) = {rhs:.9e}"),
    )
}

/// All three spectral-radius upper bounds with their hypothesis flags.
///
/// - `gershgorin`: rho(B) <= d_max - 1 on connected graphs with an edge,
///   with equality exactly for regular graphs;
/// - `quadratic-root`: rho(B) <= (rho(A) + sqrt(rho(A)^2 - 4(d_min-1)))/2.
///   The hypothesis rho(A) >= 2 sqrt(x'(D-I)y) holds vacuously for trees
///   and cycles (their branch of the argument needs no Perron pair) and is
///   evaluated numerically otherwise; graphs with dangling trees are tested
///   on their 2-core (the dangling part changes neither rho(B) nor the
///   validity: the bound value is increasing in rho(A) and decreasing in
///   d_min, and passing from the core to the full graph moves both in the
///   safe direction while rho(B) stays fixed);
/// - `edge-count`: rho(B) <= (sqrt(2m-n-1) + sqrt(2m-n-4 d_min+3))/2,
///   gated on the quadratic-root hypothesis plus nonnegative radicands plus
///   rho(A) <= sqrt(2m-n-1); without the last condition the stated bound
///   can be violated (K_5: rho(B) = 3 exceeds it).
pub fn spectral_radius_bounds(g: &Graph) -> Result<Vec<BoundReport>> {
    let ops = build_operators(g);
    let spectrum_b = linalg::spectrum_of_integer_matrix(&ops.b, 1e-9)?;
    let observed = spectrum_b.spectral_radius();
    let n = g.n();
    let m = g.m();
    let d_min = g.d_min() as f64;
    let d_max = g.d_max() as f64;
    let connected = g.is_connected();

    let gersh_hyp = connected && m >= 1;
    let gersh_bound = d_max - 1.0;
    let gersh = BoundReport::new(
        "gershgorin",
        gersh_hyp,
        gersh_bound,
        observed,
        gersh_bound - observed,
    )
    .with_metadata("regular", g.is_regular().to_string())
    .with_metadata(
        "equality",
        ((gersh_bound - observed).abs() <= 1e-6).to_string(),
    );

    let rho_a = linalg::eigenvalues(&ops.a, 1e-9)?.spectral_radius();
    let (thm_hyp, branch, detail) = if !connected {
        (false, "disconnected", String::new())
    } else if g.is_tree() || g.is_cycle() {
        (true, "tree-or-cycle", String::new())
    } else if g.d_min() >= 2 {
        let (ok, detail) = quadratic_root_hypothesis(g);
        (ok, "direct", detail)
    } else {
        let (core, _) = g.two_core();
        let (ok, detail) = quadratic_root_hypothesis(&core);
        (ok, "two-core", detail)
    };
    let thm_bound = (rho_a + (rho_a * rho_a - 4.0 * (d_min - 1.0)).max(0.0).sqrt()) / 2.0;
    let mut thm = BoundReport::new(
        "quadratic-root",
        thm_hyp,
        thm_bound,
        observed,
        thm_bound - observed,
    )
    .with_metadata("branch", branch)
    .with_metadata("rho_A", format!("{rho_a:.12e}"));
    if !detail.is_empty() {
        thm = thm.with_metadata("hypothesis-detail", detail);
    }

    let r1 = 2.0 * m as f64 - n as f64 - 1.0;
    let r2 = 2.0 * m as f64 - n as f64 - 4.0 * d_min + 3.0;
    let dk_hyp = thm_hyp && r1 >= 0.0 && r2 >= 0.0 && rho_a <= r1.sqrt() + 1e-9;
    let dk_bound = if r1 >= 0.0 && r2 >= 0.0 {
        (r1.sqrt() + r2.sqrt()) / 2.0
    } else {
        f64::NAN
    };
    let dk = BoundReport::new(
        "edge-count",
        dk_hyp,
        dk_bound,
        observed,
        dk_bound - observed,
    )
    .with_metadata("narrowed", "requires rho(A) <= sqrt(2m-n-1)")
    .with_metadata("radicands", format!("{r1}, {r2}"));

    Ok(vec![gersh, thm, dk])
}

/// For a tree, sigma(K) contains 1 and -1, and 0 with multiplicity at
/// least the number of leaves.
pub fn k_tree_spectrum_check(g: &Graph) -> Result<VerificationReport> {
    if !g.is_tree() {
        return Err(Error::Domain {
            what: "k_tree_spectrum_check",
            requirement: "a tree",
            got: format!("graph with {} vertices, {} edges", g.n(), g.m()),
        });
    }
    let ops = build_operators(g);
    let sigma = linalg::spectrum_of_integer_matrix(&ops.k, 1e-6)?;
    let leaves = (0..g.n()).filter(|&v| g.degree(v) == 1).count();
    let one = Complex64::new(1.0, 0.0);
    let has_one = sigma.contains(one, 1e-6);
    let has_minus_one = sigma.contains(-one, 1e-6);
    let zero_mult = sigma.multiplicity_near(Complex64::new(0.0, 0.0), 1e-6);
    let ok = has_one && has_minus_one && zero_mult >= leaves;
    let report = if ok {
        VerificationReport::pass("k-tree-spectrum", None)
    } else {
        VerificationReport::fail(
            "k-tree-spectrum",
            None,
            Some(format!(
                "1 present: {has_one}, -1 present: {has_minus_one}, \
                 mult(0) = {zero_mult} vs {leaves} leaves"
            )),
        )
    };
    Ok(report
        .with_metadata("leaves", leaves.to_string())
        .with_metadata("zero-multiplicity", zero_mult.to_string()))
}

/// Joining a tree to a graph at one vertex appends exactly 2(n_t - 1)
/// zeros to sigma(B) and changes nothing else.
pub fn adding_tree_invariance(
    g: &Graph,
    t: &Graph,
    v: usize,
    w: usize,
) -> Result<VerificationReport> {
    if !t.is_tree() {
        return Err(Error::Domain {
            what: "adding_tree_invariance",
            requirement: "a tree to attach",
            got: format!("graph with {} vertices, {} edges", t.n(), t.m()),
        });
    }
    let joined = join_at_vertex(g, v, t, w)?;
    let base_ops = build_operators(g);
    let join_ops = build_operators(&joined);
    let sigma_base = linalg::spectrum_of_integer_matrix(&base_ops.b, 1e-6)?;
    let sigma_join = linalg::spectrum_of_integer_matrix(&join_ops.b, 1e-6)?;
    let mut expected = sigma_base.values().to_vec();
    expected.extend(std::iter::repeat(Complex64::new(0.0, 0.0)).take(2 * (t.n() - 1)));
    let outcome = linalg::multiset_match(&expected, sigma_join.values(), 1e-6);
    let report = if outcome.ok {
        VerificationReport::pass("adding-tree-invariance", Some(outcome.max_distance))
    } else {
        VerificationReport::fail(
            "adding-tree-invariance",
            Some(outcome.max_distance),
            outcome.failure,
        )
    };
    Ok(report
        .with_metadata("tree-size", t.n().to_string())
        .with_metadata("zeros-added", (2 * (t.n() - 1)).to_string()))
}
