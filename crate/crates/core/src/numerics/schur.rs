//! Eigenvalues of small general complex matrices: Householder Hessenberg
//! reduction followed by shifted QR with deflation. Sized for transfer
//! matrices (n of order tens), eigenvalues only.

use super::{C64, DenseMatrix};
use crate::scalar;
use crate::{Error, Result};
use alloc::vec;
use alloc::vec::Vec;

/// All eigenvalues of a general complex square matrix, unordered.
pub fn complex_eigenvalues(m: &DenseMatrix) -> Result<Vec<C64>> {
    if m.rows() != m.cols() {
        return Err(Error::Dimension {
            expected: m.rows(),
            found: m.cols(),
        });
    }
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let n = m.rows();
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        return Ok(vec![m[(0, 0)]]);
    }
    let mut h = m.clone();
    hessenberg(&mut h);
    qr_eigenvalues(&mut h)
}

/// Reduce to upper Hessenberg form by Householder reflections.
fn hessenberg(a: &mut DenseMatrix) {
    let n = a.rows();
    let mut v = vec![C64::new(0.0, 0.0); n];
    for k in 0..n.saturating_sub(2) {
        let mut tail = 0.0;
        for i in k + 2..n {
            tail += a[(i, k)].norm_sqr();
        }
        if tail <= f64::MIN_POSITIVE {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let normx = scalar::sqrt(x0.norm_sqr() + tail);
        let alpha = if x0.norm() > 0.0 {
            x0 / x0.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        let mu = -alpha * normx;
        v[k + 1] = x0 - mu;
        for i in k + 2..n {
            v[i] = a[(i, k)];
        }
        let vnorm2: f64 = (k + 1..n).map(|i| v[i].norm_sqr()).sum();
        if vnorm2 <= f64::MIN_POSITIVE {
            continue;
        }
        let beta = 2.0 / vnorm2;
        // A <- P A with P = I - beta v v†  (rows k+1..n)
        for j in 0..n {
            let mut acc = C64::new(0.0, 0.0);
            for i in k + 1..n {
                acc += v[i].conj() * a[(i, j)];
            }
            acc *= beta;
            for i in k + 1..n {
                let d = v[i] * acc;
                a[(i, j)] -= d;
            }
        }
        // A <- A P (columns k+1..n)
        for i in 0..n {
            let mut acc = C64::new(0.0, 0.0);
            for j in k + 1..n {
                acc += a[(i, j)] * v[j];
            }
            acc *= beta;
            for j in k + 1..n {
                let d = acc * v[j].conj();
                a[(i, j)] -= d;
            }
        }
        for i in k + 2..n {
            a[(i, k)] = C64::new(0.0, 0.0);
        }
    }
}

/// Complex Givens pair (c real, s complex) with c f + s g = r, -s̄ f + c g = 0.
fn givens(f: C64, g: C64) -> (f64, C64, C64) {
    let fn_ = f.norm();
    let gn = g.norm();
    if gn == 0.0 {
        return (1.0, C64::new(0.0, 0.0), f);
    }
    if fn_ == 0.0 {
        // r = |g|, s = ḡ/|g|
        return (0.0, g.conj() / gn, C64::new(gn, 0.0));
    }
    let norm = scalar::hypot(fn_, gn);
    let alpha = f / fn_;
    let c = fn_ / norm;
    let s = alpha * g.conj() / norm;
    (c, s, alpha * norm)
}

fn qr_eigenvalues(h: &mut DenseMatrix) -> Result<Vec<C64>> {
    let n = h.rows();
    let mut eigs = vec![C64::new(0.0, 0.0); n];
    let scale = h.max_abs().max(f64::MIN_POSITIVE);
    let small = |h: &DenseMatrix, i: usize| {
        // True when the subdiagonal entry h[i, i-1] is negligible.
        let local = h[(i - 1, i - 1)].norm() + h[(i, i)].norm();
        h[(i, i - 1)].norm() <= f64::EPSILON * local.max(1e-30 * scale)
    };

    let mut hi = n - 1;
    let mut block_iter = 0usize;
    loop {
        // Deflate converged 1x1 blocks from the bottom.
        while hi > 0 && small(h, hi) {
            eigs[hi] = h[(hi, hi)];
            hi -= 1;
            block_iter = 0;
        }
        if hi == 0 {
            eigs[0] = h[(0, 0)];
            return Ok(eigs);
        }
        let mut lo = hi;
        while lo > 0 && !small(h, lo) {
            lo -= 1;
        }
        if hi - lo == 1 {
            let (e1, e2) = two_by_two(h[(lo, lo)], h[(lo, hi)], h[(hi, lo)], h[(hi, hi)]);
            eigs[lo] = e1;
            eigs[hi] = e2;
            if lo == 0 {
                return Ok(eigs);
            }
            hi = lo - 1;
            block_iter = 0;
            continue;
        }

        block_iter += 1;
        if block_iter > 120 {
            return Err(Error::NonConvergence {
                what: "complex QR iteration",
                residual: h[(hi, hi - 1)].norm(),
            });
        }
        let shift = if block_iter % 12 == 0 {
            // Exceptional shift breaks symmetry-induced stalls.
            C64::new(h[(hi, hi - 1)].norm() + h[(hi - 1, hi - 2.min(hi - 1))].norm(), 0.0)
        } else {
            // Wilkinson: trailing 2x2 eigenvalue nearest the corner entry.
            let (e1, e2) = two_by_two(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            );
            let t = h[(hi, hi)];
            if (e1 - t).norm() <= (e2 - t).norm() {
                e1
            } else {
                e2
            }
        };

        // Explicit single-shift QR step on the window lo..=hi.
        for i in lo..=hi {
            h[(i, i)] -= shift;
        }
        let mut rots: Vec<(f64, C64)> = Vec::with_capacity(hi - lo);
        for k in lo..hi {
            let (c, s, r) = givens(h[(k, k)], h[(k + 1, k)]);
            rots.push((c, s));
            h[(k, k)] = r;
            h[(k + 1, k)] = C64::new(0.0, 0.0);
            for j in k + 1..=hi {
                let a = h[(k, j)];
                let b = h[(k + 1, j)];
                h[(k, j)] = a * c + b * s;
                h[(k + 1, j)] = -a * s.conj() + b * c;
            }
        }
        for (off, (c, s)) in rots.iter().enumerate() {
            let k = lo + off;
            for i in lo..=(k + 1).min(hi) {
                let a = h[(i, k)];
                let b = h[(i, k + 1)];
                h[(i, k)] = a * *c + b * s.conj();
                h[(i, k + 1)] = -a * *s + b * *c;
            }
        }
        for i in lo..=hi {
            h[(i, i)] += shift;
        }
    }
}

/// Eigenvalues of [[a, b], [c, d]].
fn two_by_two(a: C64, b: C64, c: C64, d: C64) -> (C64, C64) {
    let tr = a + d;
    let det = a * d - b * c;
    let disc = (tr * tr - det * 4.0).sqrt();
    let e1 = (tr + disc) * 0.5;
    let e2 = (tr - disc) * 0.5;
    (e1, e2)
}
