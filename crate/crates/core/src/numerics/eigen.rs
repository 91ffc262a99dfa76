//! Hermitian and tridiagonal eigensolvers.
//!
//! `hermitian_eigen` reduces a complex Hermitian matrix to real symmetric
//! tridiagonal form by Householder reflections, then runs implicit-shift QL
//! with accumulated rotations. The tridiagonal helpers (Sturm counts,
//! bisection, inverse iteration) serve the larger structured problems where
//! only the ground state is needed.

use super::{C64, DenseMatrix};
use crate::scalar;
use crate::{Error, Result};
use alloc::vec;
use alloc::vec::Vec;

/// Eigendecomposition of a Hermitian matrix.
///
/// Returns eigenvalues in ascending order and the unitary matrix whose
/// columns are the matching eigenvectors. Reconstruction holds to
/// `1e-10 * max|M|` per pair.
pub fn hermitian_eigen(m: &DenseMatrix) -> Result<(Vec<f64>, DenseMatrix)> {
    if m.rows() != m.cols() {
        return Err(Error::Dimension {
            expected: m.rows(),
            found: m.cols(),
        });
    }
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let dev = m.hermitian_deviation();
    if dev > 1e-12 * m.max_abs().max(1.0) {
        return Err(Error::NotHermitian { deviation: dev });
    }

    let n = m.rows();
    if n == 0 {
        return Ok((Vec::new(), DenseMatrix::zeros(0, 0)));
    }

    let mut a = m.clone();
    let mut q = DenseMatrix::identity(n);

    // Householder reduction to Hermitian tridiagonal form, Q accumulated.
    let mut v = vec![C64::new(0.0, 0.0); n];
    let mut w = vec![C64::new(0.0, 0.0); n];
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
        // v = x - mu e1 over indices k+1..n
        v[k + 1] = x0 - mu;
        for i in k + 2..n {
            v[i] = a[(i, k)];
        }
        let vnorm2: f64 = (k + 1..n).map(|i| v[i].norm_sqr()).sum();
        if vnorm2 <= f64::MIN_POSITIVE {
            continue;
        }
        let beta = 2.0 / vnorm2;

        // w = beta * A v - K v restricted to the trailing block.
        for i in k + 1..n {
            let mut acc = C64::new(0.0, 0.0);
            for j in k + 1..n {
                acc += a[(i, j)] * v[j];
            }
            w[i] = acc * beta;
        }
        let vw: C64 = (k + 1..n).map(|i| v[i].conj() * w[i]).sum();
        let kk = 0.5 * beta * vw.re;
        for i in k + 1..n {
            w[i] -= v[i] * kk;
        }
        // A <- A - v w† - w v†
        for i in k + 1..n {
            for j in k + 1..n {
                let delta = v[i] * w[j].conj() + w[i] * v[j].conj();
                a[(i, j)] -= delta;
            }
        }
        a[(k + 1, k)] = mu;
        a[(k, k + 1)] = mu.conj();
        for i in k + 2..n {
            a[(i, k)] = C64::new(0.0, 0.0);
            a[(k, i)] = C64::new(0.0, 0.0);
        }
        // Q <- Q (I - beta v v†)
        for r in 0..n {
            let mut acc = C64::new(0.0, 0.0);
            for i in k + 1..n {
                acc += q[(r, i)] * v[i];
            }
            acc *= beta;
            for i in k + 1..n {
                let vi = v[i].conj() * acc;
                q[(r, i)] -= vi;
            }
        }
    }

    // Phase-rotate the subdiagonal onto the real axis.
    let mut d = vec![0.0f64; n];
    let mut e = vec![0.0f64; n];
    let mut phase = vec![C64::new(1.0, 0.0); n];
    for i in 0..n {
        d[i] = a[(i, i)].re;
    }
    for i in 0..n - 1 {
        let t = a[(i + 1, i)];
        e[i] = t.norm();
        phase[i + 1] = if e[i] > 0.0 {
            t * phase[i] / e[i]
        } else {
            phase[i]
        };
    }
    for j in 0..n {
        for r in 0..n {
            let val = q[(r, j)] * phase[j];
            q[(r, j)] = val;
        }
    }

    ql_implicit(&mut d, &mut e, |i, c, s| {
        for r in 0..n {
            let f = q[(r, i + 1)];
            let g = q[(r, i)];
            q[(r, i + 1)] = g * s + f * c;
            q[(r, i)] = g * c - f * s;
        }
    })?;

    // Sort ascending, permuting eigenvector columns.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].partial_cmp(&d[j]).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let vectors = DenseMatrix::from_fn(n, n, |r, j| q[(r, order[j])]);
    Ok((values, vectors))
}

/// Eigenvalues of a real symmetric matrix (ascending), vectors not formed.
pub fn symmetric_eigenvalues(m: &DenseMatrix) -> Result<Vec<f64>> {
    if m.rows() != m.cols() {
        return Err(Error::Dimension {
            expected: m.rows(),
            found: m.cols(),
        });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(Vec::new());
    }
    // Real Householder reduction without accumulation.
    let mut a: Vec<f64> = m.data().iter().map(|z| z.re).collect();
    let at = |a: &Vec<f64>, i: usize, j: usize| a[i * n + j];
    let mut d = vec![0.0f64; n];
    let mut e = vec![0.0f64; n];
    let mut v = vec![0.0f64; n];
    let mut w = vec![0.0f64; n];
    for k in 0..n.saturating_sub(2) {
        let mut tail = 0.0;
        for i in k + 2..n {
            tail += at(&a, i, k) * at(&a, i, k);
        }
        let x0 = at(&a, k + 1, k);
        if tail <= f64::MIN_POSITIVE {
            e[k] = x0;
            continue;
        }
        let normx = scalar::sqrt(x0 * x0 + tail);
        let mu = if x0 >= 0.0 { -normx } else { normx };
        v[k + 1] = x0 - mu;
        for i in k + 2..n {
            v[i] = at(&a, i, k);
        }
        let vnorm2: f64 = (k + 1..n).map(|i| v[i] * v[i]).sum();
        let beta = 2.0 / vnorm2;
        for i in k + 1..n {
            let mut acc = 0.0;
            for j in k + 1..n {
                acc += at(&a, i, j) * v[j];
            }
            w[i] = acc * beta;
        }
        let vw: f64 = (k + 1..n).map(|i| v[i] * w[i]).sum();
        let kk = 0.5 * beta * vw;
        for i in k + 1..n {
            w[i] -= kk * v[i];
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i * n + j] -= v[i] * w[j] + w[i] * v[j];
            }
        }
        e[k] = mu;
    }
    if n >= 2 {
        e[n - 2] = at(&a, n - 1, n - 2);
    }
    for i in 0..n {
        d[i] = at(&a, i, i);
    }
    // Shift e so e[i] couples d[i], d[i+1].
    let mut off = vec![0.0f64; n];
    off[..n - 1].copy_from_slice(&e[..n - 1]);
    ql_implicit(&mut d, &mut off, |_i, _c, _s| {})?;
    d.sort_by(|x, y| x.partial_cmp(y).unwrap());
    Ok(d)
}

/// All eigenvalues of a symmetric tridiagonal matrix, ascending.
pub fn tridiagonal_eigenvalues(diag: &[f64], off: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    debug_assert_eq!(off.len() + 1, n);
    let mut d = diag.to_vec();
    let mut e = vec![0.0f64; n];
    e[..n - 1].copy_from_slice(off);
    ql_implicit(&mut d, &mut e, |_i, _c, _s| {})?;
    d.sort_by(|x, y| x.partial_cmp(y).unwrap());
    Ok(d)
}

/// Implicit-shift QL on a symmetric tridiagonal matrix.
///
/// `d` holds the diagonal, `e` the subdiagonal in `e[0..n-1]` (`e[n-1]`
/// scratch). `rotate(i, c, s)` is invoked for every applied plane rotation so
/// callers can accumulate eigenvectors.
fn ql_implicit(
    d: &mut [f64],
    e: &mut [f64],
    mut rotate: impl FnMut(usize, f64, f64),
) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    e[n - 1] = 0.0;
    // Norm-relative floor: without it a subdiagonal between two near-zero
    // diagonal entries (common in rank-deficient density matrices) never
    // passes the local test.
    let anorm = d
        .iter()
        .chain(e.iter())
        .fold(0.0f64, |m, &v| m.max(v.abs()));
    for l in 0..n {
        let mut iter = 0;
        'outer: loop {
            let mut m = l;
            while m + 1 < n {
                let dd = (d[m].abs() + d[m + 1].abs()).max(anorm);
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break 'outer;
            }
            iter += 1;
            if iter > 80 {
                return Err(Error::NonConvergence {
                    what: "tridiagonal QL",
                    residual: e[l].abs(),
                });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = scalar::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0f64;
            let mut c = 1.0f64;
            let mut p = 0.0f64;
            let mut early = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = scalar::hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    early = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                rotate(i, c, s);
            }
            if early {
                continue 'outer;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Number of eigenvalues of the symmetric tridiagonal matrix strictly below
/// `x`, via the Sturm sequence of LDLᵀ pivots.
pub(crate) fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let n = diag.len();
    if n == 0 {
        return 0;
    }
    let mut count = 0usize;
    let mut q = diag[0] - x;
    if q < 0.0 {
        count += 1;
    }
    for i in 1..n {
        let q_safe = if q.abs() < 1e-300 {
            if q >= 0.0 {
                1e-300
            } else {
                -1e-300
            }
        } else {
            q
        };
        q = (diag[i] - x) - off[i - 1] * off[i - 1] / q_safe;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Lowest eigenpair of a symmetric tridiagonal matrix via Sturm bisection
/// plus inverse iteration. Suited to large structured problems where only
/// the ground state matters.
pub fn tridiagonal_ground_state(diag: &[f64], off: &[f64]) -> Result<(f64, Vec<f64>)> {
    let n = diag.len();
    if n == 0 {
        return Err(Error::Dimension {
            expected: 1,
            found: 0,
        });
    }
    debug_assert_eq!(off.len() + 1, n);
    if n == 1 {
        return Ok((diag[0], vec![1.0]));
    }

    // Gershgorin bracket.
    let mut lo = f64::MAX;
    let mut hi = f64::MIN;
    for i in 0..n {
        let left = if i > 0 { off[i - 1].abs() } else { 0.0 };
        let right = if i + 1 < n { off[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - left - right);
        hi = hi.max(diag[i] + left + right);
    }
    let scale = lo.abs().max(hi.abs()).max(1.0);
    let (mut a, mut b) = (lo - 1.0, hi + 1.0);
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if (b - a) <= 4.0 * f64::EPSILON * scale {
            break;
        }
        if sturm_count(diag, off, mid) < 1 {
            a = mid;
        } else {
            b = mid;
        }
    }
    let lambda = 0.5 * (a + b);

    // Inverse iteration on (T - lambda I).
    let mut x: Vec<f64> = (0..n)
        .map(|i| 1.0 + 0.3 * scalar::sin(1.0 + i as f64))
        .collect();
    normalize(&mut x);
    let mut best_residual = f64::MAX;
    for _ in 0..8 {
        solve_shifted(diag, off, lambda, &mut x, scale);
        normalize(&mut x);
        let res = residual_norm(diag, off, lambda, &x);
        if res < best_residual {
            best_residual = res;
        }
        if res <= 1e-11 * scale {
            break;
        }
    }
    if best_residual > 1e-7 * scale {
        return Err(Error::NonConvergence {
            what: "tridiagonal inverse iteration",
            residual: best_residual,
        });
    }
    // Rayleigh quotient refines the bisected value.
    let mut rq = 0.0;
    for i in 0..n {
        let mut t = diag[i] * x[i];
        if i > 0 {
            t += off[i - 1] * x[i - 1];
        }
        if i + 1 < n {
            t += off[i] * x[i + 1];
        }
        rq += x[i] * t;
    }
    Ok((rq, x))
}

fn normalize(x: &mut [f64]) {
    let norm = scalar::sqrt(x.iter().map(|v| v * v).sum());
    if norm > 0.0 {
        for v in x.iter_mut() {
            *v /= norm;
        }
    }
}

fn residual_norm(diag: &[f64], off: &[f64], lambda: f64, x: &[f64]) -> f64 {
    let n = diag.len();
    let mut res = 0.0f64;
    for i in 0..n {
        let mut t = (diag[i] - lambda) * x[i];
        if i > 0 {
            t += off[i - 1] * x[i - 1];
        }
        if i + 1 < n {
            t += off[i] * x[i + 1];
        }
        res += t * t;
    }
    scalar::sqrt(res)
}

/// Solve (T - sigma I) y = b in place with partial pivoting; zero pivots are
/// perturbed as in classic inverse-iteration codes.
fn solve_shifted(diag: &[f64], off: &[f64], sigma: f64, b: &mut [f64], scale: f64) {
    let n = diag.len();
    let tiny = f64::EPSILON * scale;
    let mut main: Vec<f64> = (0..n).map(|i| diag[i] - sigma).collect();
    let mut up1 = vec![0.0f64; n];
    let mut up2 = vec![0.0f64; n];
    for i in 0..n - 1 {
        up1[i] = off[i];
    }
    for i in 0..n - 1 {
        let sub = off[i];
        if sub.abs() > main[i].abs() {
            // Pivot: swap row i with row i+1.
            let (m0, u0, u20) = (main[i], up1[i], up2[i]);
            main[i] = sub;
            up1[i] = main[i + 1];
            up2[i] = up1[i + 1];
            main[i + 1] = u0;
            up1[i + 1] = u20;
            b.swap(i, i + 1);
            let pivot = if main[i].abs() < tiny { tiny } else { main[i] };
            let mult = m0 / pivot;
            main[i + 1] -= mult * up1[i];
            up1[i + 1] -= mult * up2[i];
            b[i + 1] -= mult * b[i];
        } else {
            let pivot = if main[i].abs() < tiny { tiny } else { main[i] };
            let mult = sub / pivot;
            main[i + 1] -= mult * up1[i];
            up1[i + 1] -= mult * up2[i];
            b[i + 1] -= mult * b[i];
        }
    }
    // Back substitution.
    for i in (0..n).rev() {
        let mut t = b[i];
        if i + 1 < n {
            t -= up1[i] * b[i + 1];
        }
        if i + 2 < n {
            t -= up2[i] * b[i + 2];
        }
        let pivot = if main[i].abs() < tiny { tiny } else { main[i] };
        b[i] = t / pivot;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn check_reconstruction(m: &DenseMatrix) {
        let (vals, vecs) = hermitian_eigen(m).unwrap();
        let n = m.rows();
        let scale = m.max_abs().max(1.0);
        for j in 0..n {
            let v = vecs.column(j);
            let mv = m.matvec(&v);
            for i in 0..n {
                let r = (mv[i] - v[i] * vals[j]).norm();
                assert!(r < 1e-10 * scale, "residual {r:.3e} at pair {j}");
            }
        }
        let gram = vecs.adjoint().mul(&vecs);
        let dev = gram.sub(&DenseMatrix::identity(n)).max_abs();
        assert!(dev < 1e-10, "eigenvectors not unitary: {dev:.3e}");
    }

    #[test]
    fn identity_eigenvalues() {
        let (vals, _) = hermitian_eigen(&DenseMatrix::identity(2)).unwrap();
        assert!((vals[0] - 1.0).abs() < 1e-14);
        assert!((vals[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn pauli_x_spectrum() {
        let m = DenseMatrix::from_real_fn(2, 2, |i, j| if i != j { 1.0 } else { 0.0 });
        let (vals, _) = hermitian_eigen(&m).unwrap();
        assert!((vals[0] + 1.0).abs() < 1e-14);
        assert!((vals[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn random_hermitian_reconstruction() {
        // Deterministic pseudo-random Hermitian 6x6.
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        let mut m = DenseMatrix::zeros(6, 6);
        for i in 0..6 {
            m[(i, i)] = C64::new(next() * 4.0, 0.0);
            for j in i + 1..6 {
                let z = C64::new(next(), next());
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
        check_reconstruction(&m);
    }

    #[test]
    fn trace_matches_eigenvalue_sum() {
        let m = DenseMatrix::from_fn(4, 4, |i, j| {
            let re = 1.0 / (1.0 + (i + j) as f64);
            let im = if i == j { 0.0 } else { 0.1 * (i as f64 - j as f64) };
            C64::new(re, im)
        });
        assert!(m.is_hermitian());
        let (vals, _) = hermitian_eigen(&m).unwrap();
        let sum: f64 = vals.iter().sum();
        assert!((sum - m.trace().re).abs() < 1e-10);
        check_reconstruction(&m);
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut m = DenseMatrix::identity(3);
        m[(0, 1)] = C64::new(0.5, 0.0);
        assert!(matches!(
            hermitian_eigen(&m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn degenerate_spectrum_stays_orthonormal() {
        // diag(1,1,2) in a rotated basis still yields orthonormal vectors.
        let m = DenseMatrix::from_real_fn(3, 3, |i, j| match (i, j) {
            (0, 0) => 1.5,
            (1, 1) => 1.5,
            (0, 1) | (1, 0) => 0.5,
            (2, 2) => 1.0,
            _ => 0.0,
        });
        check_reconstruction(&m);
    }

    #[test]
    fn tridiagonal_ground_state_matches_ql() {
        let n = 60;
        let diag: Vec<f64> = (0..n).map(|i| scalar::cos(i as f64) * 2.0).collect();
        let off: Vec<f64> = (0..n - 1).map(|i| 1.0 + 0.1 * scalar::sin(i as f64)).collect();
        let all = tridiagonal_eigenvalues(&diag, &off).unwrap();
        let (lam, vec) = tridiagonal_ground_state(&diag, &off).unwrap();
        assert!((lam - all[0]).abs() < 1e-9);
        let res = residual_norm(&diag, &off, lam, &vec);
        assert!(res < 1e-9, "residual {res:.3e}");
    }

    #[test]
    fn symmetric_eigenvalues_tridiag_agree() {
        let n = 20;
        let m = DenseMatrix::from_real_fn(n, n, |i, j| {
            if i == j {
                i as f64 * 0.3
            } else if i.abs_diff(j) == 1 {
                -1.0
            } else {
                0.0
            }
        });
        let vals = symmetric_eigenvalues(&m).unwrap();
        let diag: Vec<f64> = (0..n).map(|i| i as f64 * 0.3).collect();
        let off = vec![-1.0; n - 1];
        let direct = tridiagonal_eigenvalues(&diag, &off).unwrap();
        for (a, b) in vals.iter().zip(&direct) {
            assert!((a - b).abs() < 1e-10);
        }
    }
}
