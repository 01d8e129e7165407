//! Thin helpers over faer for the dense real-symmetric workloads used here.

use faer::{Mat, MatRef, Side};

use crate::error::{Error, Result};

/// Eigenvalues (ascending) and eigenvectors (columns) of a symmetric matrix.
pub fn eigh(m: MatRef<'_, f64>) -> Result<(Vec<f64>, Mat<f64>)> {
    let evd = m
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| Error::Linalg(format!("{e:?}")))?;
    let values = evd.S().column_vector().iter().copied().collect();
    let mut vectors = evd.U().to_owned();
    fix_signs(&mut vectors);
    Ok((values, vectors))
}

/// Eigenvalues (ascending) of a symmetric matrix.
pub fn eigvalsh(m: MatRef<'_, f64>) -> Result<Vec<f64>> {
    m.self_adjoint_eigenvalues(Side::Lower)
        .map_err(|e| Error::Linalg(format!("{e:?}")))
}

/// Singular values in non-increasing order.
pub fn singular_values(m: MatRef<'_, f64>) -> Result<Vec<f64>> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Ok(Vec::new());
    }
    m.singular_values()
        .map_err(|e| Error::Linalg(format!("{e:?}")))
}

/// Orthogonal polar factor `A Bᵀ` of `m = A Σ Bᵀ`, plus the smallest singular value.
pub fn polar_factor(m: MatRef<'_, f64>) -> Result<(Mat<f64>, f64)> {
    let svd = m.svd().map_err(|e| Error::Linalg(format!("{e:?}")))?;
    let smin = svd
        .S()
        .column_vector()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    Ok((svd.U() * svd.V().transpose(), smin))
}

/// Makes the largest-magnitude component of every column positive so that
/// eigenvector phases are reproducible.
pub fn fix_signs(vectors: &mut Mat<f64>) {
    for j in 0..vectors.ncols() {
        let mut best = 0;
        let mut best_abs = -1.0;
        for i in 0..vectors.nrows() {
            let a = vectors[(i, j)].abs();
            if a > best_abs * (1.0 + 1e-10) {
                best = i;
                best_abs = a;
            }
        }
        if vectors[(best, j)] < 0.0 {
            for i in 0..vectors.nrows() {
                vectors[(i, j)] = -vectors[(i, j)];
            }
        }
    }
}

/// `U f(Λ) Uᵀ` for a symmetric matrix.
pub fn spectral_map(m: MatRef<'_, f64>, f: impl Fn(f64) -> f64) -> Result<Mat<f64>> {
    let (values, vectors) = eigh(m)?;
    let n = values.len();
    let scaled = Mat::from_fn(n, n, |i, j| vectors[(i, j)] * f(values[j]));
    Ok(&scaled * vectors.transpose())
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: MatRef<'_, f64>, b: MatRef<'_, f64>) -> Mat<f64> {
    let (ar, ac) = (a.nrows(), a.ncols());
    let (br, bc) = (b.nrows(), b.ncols());
    let mut out = Mat::zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            let s = a[(i, j)];
            if s == 0.0 {
                continue;
            }
            for k in 0..br {
                for l in 0..bc {
                    out[(i * br + k, j * bc + l)] = s * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Replaces `m` by `(m + mᵀ)/2`.
pub fn symmetrize(m: &mut Mat<f64>) {
    let n = m.nrows();
    for i in 0..n {
        for j in (i + 1)..n {
            let avg = 0.5 * (m[(i, j)] + m[(j, i)]);
            m[(i, j)] = avg;
            m[(j, i)] = avg;
        }
    }
}

/// Largest absolute entry.
pub fn max_abs(m: MatRef<'_, f64>) -> f64 {
    let mut out = 0.0_f64;
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            out = out.max(m[(i, j)].abs());
        }
    }
    out
}

/// Largest absolute entry of `m - mᵀ`.
pub fn asymmetry(m: MatRef<'_, f64>) -> f64 {
    let n = m.nrows();
    let mut out = 0.0_f64;
    for i in 0..n {
        for j in (i + 1)..n {
            out = out.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    out
}

/// Sub-matrix on the given row and column index sets.
pub fn select(m: MatRef<'_, f64>, rows: &[usize], cols: &[usize]) -> Mat<f64> {
    Mat::from_fn(rows.len(), cols.len(), |i, j| m[(rows[i], cols[j])])
}

/// Matrix exponential by scaling and squaring with a Taylor kernel.
pub fn expm(a: MatRef<'_, f64>) -> Mat<f64> {
    let n = a.nrows();
    let norm = (0..n)
        .map(|i| (0..n).map(|j| a[(i, j)].abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let mut squarings = 0;
    let mut scale = 1.0;
    while norm * scale > 0.25 {
        scale *= 0.5;
        squarings += 1;
    }
    let scaled = Mat::from_fn(n, n, |i, j| a[(i, j)] * scale);
    let mut result = Mat::<f64>::identity(n, n);
    let mut term = Mat::<f64>::identity(n, n);
    for k in 1..=20 {
        term = &term * &scaled;
        let inv = 1.0 / k as f64;
        for j in 0..n {
            for i in 0..n {
                term[(i, j)] *= inv;
                result[(i, j)] += term[(i, j)];
            }
        }
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}
