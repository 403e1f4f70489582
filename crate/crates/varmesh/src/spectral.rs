//! Lowest eigenpairs of a symmetric sparse operator.
//!
//! The workhorse is Lanczos with full reorthogonalization plus explicit
//! deflation restarts, which handles degenerate clusters by finding one
//! copy per restart. Small problems go through a dense solve, which also
//! serves as the test oracle for the iterative path.

use crate::error::{Error, Result};
use crate::sparse::SparseMatrix;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Problems at or below this dimension are solved densely.
pub const DENSE_THRESHOLD: usize = 1000;

/// Default relative residual tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct EigenResult {
    /// Ascending eigenvalues.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors, one per value.
    pub vectors: Vec<Vec<f64>>,
    /// Residual norms ||A v - lambda v||_2.
    pub residuals: Vec<f64>,
    /// "dense" or "lanczos".
    pub method: String,
    /// Matrix-vector products (lanczos) or dimension (dense).
    pub iterations: usize,
}

fn check_input(a: &SparseMatrix, k: usize) -> Result<()> {
    a.check_symmetric()?;
    let dim = a.nrows();
    if k == 0 || k + 2 > dim {
        return Err(Error::InvalidInput(format!(
            "k must satisfy 1 <= k <= dim - 2, got k = {k}, dim = {dim}"
        )));
    }
    Ok(())
}

/// Lowest `k` eigenpairs, choosing dense or Lanczos by problem size.
/// Deterministic: the Lanczos start vectors come from a fixed-seed stream.
pub fn lowest_eigenpairs(a: &SparseMatrix, k: usize, tol: f64) -> Result<EigenResult> {
    lowest_eigenpairs_seeded(a, k, tol, 0)
}

pub fn lowest_eigenpairs_seeded(
    a: &SparseMatrix,
    k: usize,
    tol: f64,
    seed: u64,
) -> Result<EigenResult> {
    if a.nrows() <= DENSE_THRESHOLD {
        dense_lowest(a, k)
    } else {
        lanczos_lowest(a, k, tol, seed)
    }
}

fn fix_sign(v: &mut [f64]) {
    let mut best = 0usize;
    let mut mag = 0.0f64;
    for (i, x) in v.iter().enumerate() {
        if x.abs() > mag {
            mag = x.abs();
            best = i;
        }
    }
    if v[best] < 0.0 {
        for x in v.iter_mut() {
            *x = -*x;
        }
    }
}

fn residual_norm(a: &SparseMatrix, v: &[f64], lambda: f64) -> f64 {
    let av = a.matvec_alloc(v);
    av.iter()
        .zip(v.iter())
        .map(|(y, x)| {
            let r = y - lambda * x;
            r * r
        })
        .sum::<f64>()
        .sqrt()
}

/// Dense symmetric eigensolve; used at desk scale and as the oracle.
pub fn dense_lowest(a: &SparseMatrix, k: usize) -> Result<EigenResult> {
    check_input(a, k)?;
    let dim = a.nrows();
    let eig = a.to_dense().symmetric_eigen();
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].partial_cmp(&eig.eigenvalues[j]).unwrap());
    let mut values = Vec::with_capacity(k);
    let mut vectors = Vec::with_capacity(k);
    let mut residuals = Vec::with_capacity(k);
    for &idx in order.iter().take(k) {
        let lambda = eig.eigenvalues[idx];
        let mut v: Vec<f64> = eig.eigenvectors.column(idx).iter().cloned().collect();
        fix_sign(&mut v);
        residuals.push(residual_norm(a, &v, lambda));
        values.push(lambda);
        vectors.push(v);
    }
    Ok(EigenResult {
        values,
        vectors,
        residuals,
        method: "dense".into(),
        iterations: dim,
    })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn axpy(y: &mut [f64], alpha: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x.iter()) {
        *yi += alpha * xi;
    }
}

/// Orthogonalizes `w` against every vector in `basis` (classical
/// Gram-Schmidt, applied twice).
fn orthogonalize(w: &mut [f64], basis: &[Vec<f64>]) {
    for _ in 0..2 {
        for u in basis {
            let c = dot(w, u);
            axpy(w, -c, u);
        }
    }
}

/// Lanczos with full reorthogonalization and explicit deflation restarts.
///
/// Each restart draws a fresh start vector orthogonal to everything
/// already locked, so exactly degenerate eigenvalues are resolved one
/// copy per pass. The matrix-vector budget is 5 * dim.
pub fn lanczos_lowest(a: &SparseMatrix, k: usize, tol: f64, seed: u64) -> Result<EigenResult> {
    check_input(a, k)?;
    let dim = a.nrows();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_matvecs = 5 * dim;
    let mut matvecs = 0usize;

    let mut locked_vals: Vec<f64> = Vec::new();
    let mut locked_vecs: Vec<Vec<f64>> = Vec::new();
    let mut spectral_scale = 0.0f64;
    let mut last_residual = f64::INFINITY;

    loop {
        // A single Krylov pass converges at most one copy of each
        // degenerate eigenvalue, so after k pairs are locked we keep
        // running single-pair verification passes on the deflated
        // operator until the smallest remaining eigenvalue no longer
        // undercuts the current k-th value.
        let need = if locked_vals.len() < k {
            k - locked_vals.len()
        } else {
            1
        };
        let max_basis = dim - locked_vecs.len();

        // Fresh start vector, deflated against locked pairs.
        let mut v: Vec<f64> = (0..dim).map(|_| rng.gen::<f64>() - 0.5).collect();
        orthogonalize(&mut v, &locked_vecs);
        let nv = norm(&v);
        if nv < 1e-12 {
            return Err(Error::Numerical {
                context: "degenerate Lanczos start vector".into(),
                estimate: nv,
            });
        }
        for x in v.iter_mut() {
            *x /= nv;
        }

        let mut basis: Vec<Vec<f64>> = vec![v];
        let mut alphas: Vec<f64> = Vec::new();
        let mut betas: Vec<f64> = Vec::new();
        let mut converged: Option<(Vec<f64>, Vec<Vec<f64>>)> = None;

        for step in 0..max_basis {
            if matvecs >= max_matvecs {
                return Err(Error::Convergence {
                    iterations: matvecs,
                    residual: last_residual,
                });
            }
            let v = &basis[step];
            let mut w = a.matvec_alloc(v);
            matvecs += 1;
            let alpha = dot(&w, v);
            alphas.push(alpha);
            // Full reorthogonalization against the current basis and the
            // locked vectors keeps the recurrence accurate and deflated.
            orthogonalize(&mut w, &basis);
            orthogonalize(&mut w, &locked_vecs);
            let beta = norm(&w);

            let basis_full = step + 1 == max_basis;
            let breakdown = beta < 1e-13 * spectral_scale.max(1.0);
            let check = basis_full
                || breakdown
                || (step + 1 >= need && (step + 1) % 5 == 0);
            if check {
                let m = step + 1;
                let mut t = nalgebra::DMatrix::zeros(m, m);
                for i in 0..m {
                    t[(i, i)] = alphas[i];
                    if i + 1 < m {
                        t[(i, i + 1)] = betas[i];
                        t[(i + 1, i)] = betas[i];
                    }
                }
                let eig = t.symmetric_eigen();
                let mut order: Vec<usize> = (0..m).collect();
                order.sort_by(|&i, &j| {
                    eig.eigenvalues[i].partial_cmp(&eig.eigenvalues[j]).unwrap()
                });
                spectral_scale = spectral_scale
                    .max(eig.eigenvalues.iter().fold(0.0f64, |s, v| s.max(v.abs())));
                let conv_bound = tol * spectral_scale.max(f64::MIN_POSITIVE);
                let take = need.min(m);
                let all_converged = order.iter().take(take).all(|&idx| {
                    let est = if basis_full || breakdown {
                        0.0
                    } else {
                        (beta * eig.eigenvectors[(m - 1, idx)]).abs()
                    };
                    est <= conv_bound
                });
                if let Some(&idx) = order.first() {
                    last_residual = (beta * eig.eigenvectors[(m - 1, idx)]).abs();
                }
                if all_converged || basis_full || breakdown {
                    // Extract the lowest Ritz pairs. When the basis filled
                    // up or the recurrence broke down, the tridiagonal
                    // eigendecomposition is exact on the deflated subspace,
                    // so the pairs are taken as-is.
                    let mut vals = Vec::new();
                    let mut vecs = Vec::new();
                    for &idx in order.iter().take(take) {
                        let mut y = vec![0.0f64; dim];
                        for (j, u) in basis.iter().enumerate() {
                            axpy(&mut y, eig.eigenvectors[(j, idx)], u);
                        }
                        orthogonalize(&mut y, &locked_vecs);
                        let ny = norm(&y);
                        if ny < 1e-10 {
                            continue;
                        }
                        for x in y.iter_mut() {
                            *x /= ny;
                        }
                        vals.push(eig.eigenvalues[idx]);
                        vecs.push(y);
                    }
                    if vals.is_empty() {
                        return Err(Error::Convergence {
                            iterations: matvecs,
                            residual: last_residual,
                        });
                    }
                    converged = Some((vals, vecs));
                    break;
                }
            }
            if breakdown {
                break;
            }
            betas.push(beta);
            for x in w.iter_mut() {
                *x /= beta;
            }
            basis.push(w);
        }

        match converged {
            Some((vals, vecs)) => {
                let pass_min = vals.iter().cloned().fold(f64::INFINITY, f64::min);
                locked_vals.extend(vals);
                locked_vecs.extend(vecs);
                if locked_vals.len() >= k {
                    let mut sorted = locked_vals.clone();
                    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
                    let kth = sorted[k - 1];
                    let tie = 1e-12 * spectral_scale.max(f64::MIN_POSITIVE);
                    if pass_min >= kth - tie {
                        break;
                    }
                }
            }
            None => {
                return Err(Error::Convergence {
                    iterations: matvecs,
                    residual: last_residual,
                });
            }
        }
    }

    // Merge, sort ascending, trim to k, and finalize.
    let mut order: Vec<usize> = (0..locked_vals.len()).collect();
    order.sort_by(|&i, &j| locked_vals[i].partial_cmp(&locked_vals[j]).unwrap());
    let mut values = Vec::with_capacity(k);
    let mut vectors = Vec::with_capacity(k);
    let mut residuals = Vec::with_capacity(k);
    for &idx in order.iter().take(k) {
        let mut v = locked_vecs[idx].clone();
        fix_sign(&mut v);
        let lambda = locked_vals[idx];
        residuals.push(residual_norm(a, &v, lambda));
        values.push(lambda);
        vectors.push(v);
    }
    Ok(EigenResult {
        values,
        vectors,
        residuals,
        method: "lanczos".into(),
        iterations: matvecs,
    })
}
