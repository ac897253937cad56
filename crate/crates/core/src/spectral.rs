//! Spectral radius of bipartite graphs and the closed-form thresholds.
//!
//! Bipartite adjacency spectra are symmetric about zero, so naive power
//! iteration on A(G) can oscillate between the two dominant
//! eigenvectors. The engine instead iterates on the Gram matrix N*N^T
//! of the biadjacency N, per connected component, and takes the square
//! root of the dominant Gram eigenvalue; the component maximum is the
//! spectral radius.

use crate::bigraph::{construct, BipartiteGraph, FamilyName, FamilyTag, GraphError};
use crate::verify::{ReportMode, VerificationReport};
use std::collections::BTreeMap;
use std::sync::Mutex;
use std::time::Instant;
use thiserror::Error;

/// Default power-iteration convergence bound.
pub const DEFAULT_TOL: f64 = 1e-12;
/// Default float margin for threshold comparisons.
pub const DEFAULT_EPS: f64 = 1e-9;

const MAX_ITERATIONS: usize = 1_000_000;

#[derive(Debug, Error, PartialEq)]
pub enum SpectralError {
    #[error("power iteration did not converge after {iterations} iterations (residual {residual:e})")]
    ConvergenceFailure { residual: f64, iterations: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
}

impl From<GraphError> for SpectralError {
    fn from(e: GraphError) -> Self {
        SpectralError::InvalidParameter(e.to_string())
    }
}

/// A converged spectral-radius value with its convergence metadata.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralEstimate {
    pub value: f64,
    pub tolerance: f64,
    pub iterations: usize,
}

/// Dominant eigenvalue of the Gram matrix N*N^T for one connected
/// component, by power iteration from the all-ones vector. The start
/// vector is never orthogonal to the Perron vector of a connected
/// nonnegative Gram matrix, and the positive diagonal rules out
/// oscillation.
fn gram_power(rows: &[u64], tol: f64) -> Result<(f64, usize), SpectralError> {
    let n_rows = rows.len();
    let n_cols = {
        let all = rows.iter().fold(0u64, |acc, r| acc | r);
        64 - all.leading_zeros() as usize
    };
    let mut x = vec![1.0 / (n_rows as f64).sqrt(); n_rows];
    let mut y = vec![0.0f64; n_cols];
    let mut w = vec![0.0f64; n_rows];
    let mut residual = f64::INFINITY;
    for iter in 1..=MAX_ITERATIONS {
        y.iter_mut().for_each(|v| *v = 0.0);
        for (u, &row) in rows.iter().enumerate() {
            let mut bits = row;
            while bits != 0 {
                y[bits.trailing_zeros() as usize] += x[u];
                bits &= bits - 1;
            }
        }
        for (u, &row) in rows.iter().enumerate() {
            let mut acc = 0.0;
            let mut bits = row;
            while bits != 0 {
                acc += y[bits.trailing_zeros() as usize];
                bits &= bits - 1;
            }
            w[u] = acc;
        }
        let lambda: f64 = x.iter().zip(&w).map(|(a, b)| a * b).sum();
        residual = x
            .iter()
            .zip(&w)
            .map(|(xi, wi)| (wi - lambda * xi).abs())
            .fold(0.0, f64::max);
        let rho = lambda.max(0.0).sqrt();
        if residual <= tol * rho.max(1.0) {
            return Ok((rho, iter));
        }
        let norm = w.iter().map(|v| v * v).sum::<f64>().sqrt();
        for (xi, &wi) in x.iter_mut().zip(&w) {
            *xi = wi / norm;
        }
    }
    Err(SpectralError::ConvergenceFailure { residual, iterations: MAX_ITERATIONS })
}

/// Spectral radius of the adjacency matrix, within `tol`.
pub fn spectral_radius(g: &BipartiteGraph, tol: f64) -> Result<SpectralEstimate, SpectralError> {
    if tol <= 0.0 {
        return Err(SpectralError::InvalidParameter("tol must be positive".into()));
    }
    let mut value = 0.0f64;
    let mut iterations = 0usize;
    for comp in g.components() {
        let xs: Vec<usize> = comp.iter().copied().filter(|&v| g.is_x(v)).collect();
        let ys: Vec<usize> = comp.iter().copied().filter(|&v| !g.is_x(v)).collect();
        if xs.is_empty() || ys.is_empty() {
            continue;
        }
        let rows: Vec<u64> = xs
            .iter()
            .map(|&u| {
                let mut bits = 0u64;
                for (pos, &v) in ys.iter().enumerate() {
                    if g.has_edge(u, v) {
                        bits |= 1u64 << pos;
                    }
                }
                bits
            })
            .collect();
        let (rho, iters) = gram_power(&rows, tol)?;
        value = value.max(rho);
        iterations += iters;
    }
    Ok(SpectralEstimate { value, tolerance: tol, iterations })
}

/// Result of the Nosal bound check `rho(G) <= sqrt(|E(G)|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NosalCheck {
    pub rho: f64,
    pub bound: f64,
    pub holds: bool,
}

pub fn nosal_check(g: &BipartiteGraph) -> Result<NosalCheck, SpectralError> {
    let rho = spectral_radius(g, DEFAULT_TOL)?.value;
    let bound = (g.edge_count() as f64).sqrt();
    Ok(NosalCheck { rho, bound, holds: rho <= bound + DEFAULT_EPS })
}

/// The three spectral thresholds of the Hamiltonicity statements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ThresholdTag {
    /// rho(Q^0_n) = sqrt(n(n-1)), closed form.
    Q0,
    /// rho(T^0_n) = n-1, closed form.
    T0,
    /// rho(B^1_n), computed numerically once per n and cached.
    B1,
}

static B1_CACHE: Mutex<BTreeMap<usize, f64>> = Mutex::new(BTreeMap::new());

pub fn threshold(tag: ThresholdTag, n: usize) -> Result<f64, SpectralError> {
    if n < 2 {
        return Err(SpectralError::InvalidParameter(format!("threshold needs n >= 2, got {n}")));
    }
    match tag {
        ThresholdTag::Q0 => Ok(((n * (n - 1)) as f64).sqrt()),
        ThresholdTag::T0 => Ok((n - 1) as f64),
        ThresholdTag::B1 => {
            if let Some(&v) = B1_CACHE.lock().unwrap().get(&n) {
                return Ok(v);
            }
            let g = construct(FamilyName::new(FamilyTag::B, 1, n))?;
            let v = spectral_radius(&g, DEFAULT_TOL)?.value;
            B1_CACHE.lock().unwrap().insert(n, v);
            Ok(v)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThresholdSide {
    Below,
    AtTie,
    Above,
}

/// Classify rho(G) against the named threshold with margin `eps`.
/// `AtTie` is the caller's cue to escalate to structural recognition.
pub fn compare_to_threshold(
    g: &BipartiteGraph,
    tag: ThresholdTag,
    n: usize,
    eps: f64,
) -> Result<ThresholdSide, SpectralError> {
    if eps <= 0.0 {
        return Err(SpectralError::InvalidParameter("eps must be positive".into()));
    }
    let thr = threshold(tag, n)?;
    let rho = spectral_radius(g, DEFAULT_TOL)?.value;
    Ok(if rho > thr + eps {
        ThresholdSide::Above
    } else if rho < thr - eps {
        ThresholdSide::Below
    } else {
        ThresholdSide::AtTie
    })
}

/// Quotient matrix of a vertex partition: entry (i, j) is the average
/// number of class-j neighbors over class i.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientMatrix {
    pub order: usize,
    pub entries: Vec<Vec<f64>>,
    pub equitable: bool,
    pub partition: Vec<Vec<usize>>,
}

pub fn quotient_matrix(
    g: &BipartiteGraph,
    partition: &[Vec<usize>],
) -> Result<QuotientMatrix, SpectralError> {
    let total = g.vertex_count();
    let mut owner = vec![usize::MAX; total];
    for (i, class) in partition.iter().enumerate() {
        if class.is_empty() {
            return Err(SpectralError::InvalidPartition(format!("class {i} is empty")));
        }
        for &v in class {
            if v >= total {
                return Err(SpectralError::InvalidPartition(format!(
                    "label {v} is out of range in class {i}"
                )));
            }
            if owner[v] != usize::MAX {
                return Err(SpectralError::InvalidPartition(format!(
                    "label {v} appears in classes {} and {i}",
                    owner[v]
                )));
            }
            owner[v] = i;
        }
    }
    if owner.contains(&usize::MAX) {
        return Err(SpectralError::InvalidPartition("classes do not cover all labels".into()));
    }

    let m = partition.len();
    let mut entries = vec![vec![0.0f64; m]; m];
    let mut equitable = true;
    for (i, class) in partition.iter().enumerate() {
        for j in 0..m {
            let counts: Vec<usize> = class
                .iter()
                .map(|&u| partition[j].iter().filter(|&&v| g.has_edge(u, v)).count())
                .collect();
            if counts.iter().any(|&c| c != counts[0]) {
                equitable = false;
            }
            entries[i][j] = counts.iter().sum::<usize>() as f64 / class.len() as f64;
        }
    }
    Ok(QuotientMatrix { order: m, entries, equitable, partition: partition.to_vec() })
}

impl QuotientMatrix {
    /// Largest eigenvalue, via the diagonal similarity that symmetrizes
    /// any quotient matrix (class sizes balance the off-diagonal blocks)
    /// followed by shifted power iteration.
    pub fn spectral_radius(&self) -> f64 {
        let m = self.order;
        if m == 0 {
            return 0.0;
        }
        let sizes: Vec<f64> = self.partition.iter().map(|c| c.len() as f64).collect();
        let mut s = vec![vec![0.0f64; m]; m];
        for i in 0..m {
            for j in 0..m {
                s[i][j] = self.entries[i][j] * (sizes[i] / sizes[j]).sqrt();
            }
        }
        let shift = s
            .iter()
            .map(|row| row.iter().sum::<f64>())
            .fold(0.0, f64::max);
        if shift == 0.0 {
            return 0.0;
        }
        let mut x = vec![1.0 / (m as f64).sqrt(); m];
        let mut lambda = 0.0;
        for _ in 0..MAX_ITERATIONS {
            let w: Vec<f64> = (0..m)
                .map(|i| s[i].iter().zip(&x).map(|(a, b)| a * b).sum::<f64>() + shift * x[i])
                .collect();
            lambda = x.iter().zip(&w).map(|(a, b)| a * b).sum();
            let residual = x
                .iter()
                .zip(&w)
                .map(|(xi, wi)| (wi - lambda * xi).abs())
                .fold(0.0, f64::max);
            if residual <= 1e-13 * lambda.max(1.0) {
                break;
            }
            let norm = w.iter().map(|v| v * v).sum::<f64>().sqrt();
            x = w.into_iter().map(|v| v / norm).collect();
        }
        lambda - shift
    }
}

/// The quartic x^4 - (n-1)^2 x^2 + (n-1)(n-2), whose largest real root
/// is rho(T^{n-2}_n).
pub fn charpoly_t(n: usize, x: f64) -> f64 {
    debug_assert!(n >= 3);
    let a = ((n - 1) * (n - 1)) as f64;
    let c = ((n - 1) * (n - 2)) as f64;
    x.powi(4) - a * x * x + c
}

/// Exact integer evaluation of the same quartic.
pub fn charpoly_t_int(n: i128, x: i128) -> i128 {
    x.pow(4) - (n - 1).pow(2) * x.pow(2) + (n - 1) * (n - 2)
}

/// Largest real root of [`charpoly_t`], in closed form (the quartic is
/// biquadratic).
pub fn charpoly_t_largest_root(n: usize) -> f64 {
    debug_assert!(n >= 3);
    let q = ((n - 1) * (n - 1)) as f64;
    let c = ((n - 1) * (n - 2)) as f64;
    (((q + (q * q - 4.0 * c).sqrt()) / 2.0) as f64).sqrt()
}

/// Strict-inequality suite: for 4 <= n <= n_max, rho(Q^k_n) < rho(Q^0_n)
/// and rho(T^k_n) < rho(T^0_n) for 1 <= k <= n-2, and
/// rho(B^k_n) < rho(B^1_n) for 2 <= k <= n-2, each with margin > 1e-9.
pub fn lemma_2_8_suite(n_max: usize, tol: f64) -> Result<VerificationReport, SpectralError> {
    if n_max < 4 {
        return Err(SpectralError::InvalidParameter(format!("suite needs n_max >= 4, got {n_max}")));
    }
    let started = Instant::now();
    let mut cases = 0u64;
    let mut violations = Vec::new();
    let check = |name: FamilyName, thr: f64, cases: &mut u64, violations: &mut Vec<String>| -> Result<(), SpectralError> {
        let rho = spectral_radius(&construct(name)?, tol)?.value;
        *cases += 1;
        if !(rho < thr - DEFAULT_EPS) {
            violations.push(format!("{name}: rho={rho:.12} threshold={thr:.12}"));
        }
        Ok(())
    };
    for n in 4..=n_max {
        let q0 = threshold(ThresholdTag::Q0, n)?;
        let t0 = threshold(ThresholdTag::T0, n)?;
        let b1 = threshold(ThresholdTag::B1, n)?;
        for k in 1..=n - 2 {
            check(FamilyName::new(FamilyTag::Q, k, n), q0, &mut cases, &mut violations)?;
            check(FamilyName::new(FamilyTag::T, k, n), t0, &mut cases, &mut violations)?;
            if k >= 2 {
                check(FamilyName::new(FamilyTag::B, k, n), b1, &mut cases, &mut violations)?;
            }
        }
    }
    Ok(VerificationReport::new(
        "lem2.8",
        n_max,
        ReportMode::Exhaustive,
        cases,
        cases,
        violations,
        Vec::new(),
        started.elapsed(),
    ))
}
