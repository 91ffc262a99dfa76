//! Singular value decomposition by one-sided Jacobi rotations.

use super::{C64, DenseMatrix};
use crate::scalar;
use crate::{Error, Result};
use alloc::vec::Vec;

/// Thin SVD M = U diag(σ) V† with σ descending and nonnegative.
///
/// U is rows×k and V is cols×k with k = min(rows, cols); both have
/// orthonormal columns. Reconstruction holds to `1e-10 * max|M|`.
pub fn svd(m: &DenseMatrix) -> Result<(DenseMatrix, Vec<f64>, DenseMatrix)> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    if m.rows() == 0 || m.cols() == 0 {
        let k = 0;
        return Ok((
            DenseMatrix::zeros(m.rows(), k),
            Vec::new(),
            DenseMatrix::zeros(m.cols(), k),
        ));
    }
    if m.cols() > m.rows() {
        // M = U Σ V†  ⇔  M† = V Σ U†; run on the tall factor.
        let (v, s, u) = svd_tall(&m.adjoint())?;
        return Ok((u, s, v));
    }
    svd_tall(m)
}

fn svd_tall(m: &DenseMatrix) -> Result<(DenseMatrix, Vec<f64>, DenseMatrix)> {
    let rows = m.rows();
    let cols = m.cols();
    let mut w = m.clone();
    let mut v = DenseMatrix::identity(cols);

    let scale = w.max_abs();
    let tol = 1e-15;
    let max_sweeps = 60;
    if scale > 0.0 {
        for _ in 0..max_sweeps {
            let mut rotated = false;
            for p in 0..cols {
                for q in p + 1..cols {
                    let mut app = 0.0f64;
                    let mut aqq = 0.0f64;
                    let mut apq = C64::new(0.0, 0.0);
                    for r in 0..rows {
                        let wp = w[(r, p)];
                        let wq = w[(r, q)];
                        app += wp.norm_sqr();
                        aqq += wq.norm_sqr();
                        apq += wp.conj() * wq;
                    }
                    let off = apq.norm();
                    if off <= tol * scalar::sqrt(app * aqq) || off == 0.0 {
                        continue;
                    }
                    rotated = true;
                    // Rotate column q by the conjugate phase so the pair
                    // inner product is real, then a real Jacobi rotation.
                    let phase = (apq / off).conj();
                    let zeta = (aqq - app) / (2.0 * off);
                    let t = if zeta >= 0.0 {
                        1.0 / (zeta + scalar::sqrt(1.0 + zeta * zeta))
                    } else {
                        -1.0 / (-zeta + scalar::sqrt(1.0 + zeta * zeta))
                    };
                    let c = 1.0 / scalar::sqrt(1.0 + t * t);
                    let s = c * t;
                    for r in 0..rows {
                        let wp = w[(r, p)];
                        let wq = w[(r, q)] * phase;
                        w[(r, p)] = wp * c - wq * s;
                        w[(r, q)] = wp * s + wq * c;
                    }
                    for r in 0..cols {
                        let vp = v[(r, p)];
                        let vq = v[(r, q)] * phase;
                        v[(r, p)] = vp * c - vq * s;
                        v[(r, q)] = vp * s + vq * c;
                    }
                }
            }
            if !rotated {
                break;
            }
        }
    }

    // Column norms are the singular values.
    let mut order: Vec<usize> = (0..cols).collect();
    let norms: Vec<f64> = (0..cols)
        .map(|j| scalar::sqrt((0..rows).map(|r| w[(r, j)].norm_sqr()).sum()))
        .collect();
    order.sort_by(|&a, &b| norms[b].partial_cmp(&norms[a]).unwrap());

    let mut u = DenseMatrix::zeros(rows, cols);
    let mut sigma = Vec::with_capacity(cols);
    let mut vv = DenseMatrix::zeros(cols, cols);
    for (jnew, &jold) in order.iter().enumerate() {
        sigma.push(norms[jold]);
        for r in 0..cols {
            vv[(r, jnew)] = v[(r, jold)];
        }
        if norms[jold] > f64::MIN_POSITIVE {
            for r in 0..rows {
                u[(r, jnew)] = w[(r, jold)] / norms[jold];
            }
        }
    }
    // Null-space columns of U: complete to an orthonormal set.
    let cutoff = sigma.first().copied().unwrap_or(0.0) * 1e-300;
    for j in 0..cols {
        if sigma[j] > cutoff && sigma[j] > 0.0 {
            continue;
        }
        let mut k = 0usize;
        loop {
            // Try basis vectors until one survives projection.
            let mut cand = alloc::vec![C64::new(0.0, 0.0); rows];
            cand[(j + k) % rows] = C64::new(1.0, 0.0);
            for prev in 0..cols {
                if prev == j || (sigma[prev] <= cutoff && prev > j) {
                    continue;
                }
                let proj: C64 = (0..rows).map(|r| u[(r, prev)].conj() * cand[r]).sum();
                for r in 0..rows {
                    let d = u[(r, prev)] * proj;
                    cand[r] -= d;
                }
            }
            let norm = scalar::sqrt(cand.iter().map(|z| z.norm_sqr()).sum());
            if norm > 1e-6 {
                for r in 0..rows {
                    u[(r, j)] = cand[r] / norm;
                }
                break;
            }
            k += 1;
            if k > rows {
                return Err(Error::Consistency("svd null-space completion"));
            }
        }
    }
    Ok((u, sigma, vv))
}
