//! Translation-invariant matrix product states and their exact
//! renormalization.
//!
//! A state is a family of D×D site tensors A^s, |Ψ⟩ = Σ tr(B A^{s₁}⋯A^{s_N})
//! |s₁…s_N⟩. The D²×D² transfer matrix E = Σ_s (A^s)* ⊗ A^s carries the
//! long-range data: its subdominant eigenvalues set the correlation lengths
//! ξ = −1/ln|λ|. One coarse-graining step blocks two sites, singular-value
//! decomposes the product tensor, and relabels — the new transfer spectrum
//! is exactly the square of the old one.

use crate::numerics::{complex_eigenvalues, hermitian_eigen, svd, C64, DenseMatrix};
use crate::scalar;
use crate::{Error, Result};
use alloc::vec;
use alloc::vec::Vec;

/// Translation-invariant MPS: d site branches of D×D matrices plus the
/// boundary matrix (identity for periodic chains).
#[derive(Debug, Clone)]
pub struct UniformMPS {
    pub d: usize,
    pub bond: usize,
    pub tensors: Vec<DenseMatrix>,
    pub boundary: DenseMatrix,
}

impl UniformMPS {
    pub fn new(tensors: Vec<DenseMatrix>) -> Result<Self> {
        if tensors.is_empty() {
            return Err(Error::Domain("need at least one site branch"));
        }
        let bond = tensors[0].rows();
        for t in &tensors {
            if t.rows() != bond || t.cols() != bond || !t.is_finite() {
                return Err(Error::Domain("site tensors must be square, equal-size, finite"));
            }
        }
        Ok(UniformMPS {
            d: tensors.len(),
            bond,
            tensors,
            boundary: DenseMatrix::identity(bond),
        })
    }

    /// Conjugate every branch by a bond-space matrix (gauge move).
    pub fn gauge(&self, w: &DenseMatrix, w_inv: &DenseMatrix) -> Result<Self> {
        let tensors = self
            .tensors
            .iter()
            .map(|a| w_inv.mul(a).mul(w))
            .collect();
        UniformMPS::new(tensors)
    }
}

/// Σ_s (A^s)† A^s = 1 within 1e-10: the site map is trace preserving.
pub fn canonical_check(m: &UniformMPS) -> bool {
    let mut acc = DenseMatrix::zeros(m.bond, m.bond);
    for a in &m.tensors {
        acc = acc.add(&a.adjoint().mul(a));
    }
    acc.sub(&DenseMatrix::identity(m.bond)).max_abs() <= 1e-10
}

/// The transfer matrix and its modulus-sorted eigenvalues.
#[derive(Debug, Clone)]
pub struct TransferMatrix {
    pub matrix: DenseMatrix,
    /// Sorted by descending modulus.
    pub eigenvalues: Vec<C64>,
}

pub fn transfer_matrix(m: &UniformMPS) -> Result<TransferMatrix> {
    let dd = m.bond * m.bond;
    let mut e = DenseMatrix::zeros(dd, dd);
    for a in &m.tensors {
        e = e.add(&a.conj().kron(a));
    }
    let mut eigenvalues = complex_eigenvalues(&e)?;
    eigenvalues.sort_by(|x, y| y.norm().partial_cmp(&x.norm()).unwrap());
    Ok(TransferMatrix {
        matrix: e,
        eigenvalues,
    })
}

/// ⟨Ψ|Ψ⟩ = tr(E^N) for a periodic chain of N sites.
pub fn mps_norm(m: &UniformMPS, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("need at least one site"));
    }
    let t = transfer_matrix(m)?;
    // tr(E^N) = Σ λ^N holds regardless of Jordan structure.
    let mut total = C64::new(0.0, 0.0);
    for lam in &t.eigenvalues {
        total += complex_pow(*lam, n);
    }
    let scale = t
        .eigenvalues
        .iter()
        .fold(1.0f64, |m, l| m.max(l.norm()))
        .max(1.0);
    if total.im.abs() > 1e-10 * scale.max(total.re.abs()) {
        return Err(Error::Consistency("norm came out complex"));
    }
    Ok(total.re)
}

fn complex_pow(z: C64, n: usize) -> C64 {
    let mut acc = C64::new(1.0, 0.0);
    let mut base = z;
    let mut k = n;
    while k > 0 {
        if k & 1 == 1 {
            acc *= base;
        }
        base *= base;
        k >>= 1;
    }
    acc
}

/// Site operator lifted to the transfer space:
/// Õ = Σ_{s s̃} ⟨s|O|s̃⟩ (A^s)* ⊗ A^{s̃}.
fn lift_operator(m: &UniformMPS, op: &DenseMatrix) -> Result<DenseMatrix> {
    if op.rows() != m.d || op.cols() != m.d {
        return Err(Error::Dimension {
            expected: m.d,
            found: op.rows(),
        });
    }
    let dd = m.bond * m.bond;
    let mut out = DenseMatrix::zeros(dd, dd);
    for s in 0..m.d {
        for st in 0..m.d {
            let w = op[(s, st)];
            if w.norm() == 0.0 {
                continue;
            }
            out = out.add(&m.tensors[s].conj().kron(&m.tensors[st]).scale(w));
        }
    }
    Ok(out)
}

/// Chain geometry for correlators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MpsSize {
    Finite(usize),
    Infinite,
}

/// Two-point function of single-site operators at separation r ≥ 1.
///
/// Finite chains return the bare tr(E^{N−r−1} Õ₁ E^{r−1} Õ₂) (the norm for
/// O = 1). The infinite chain projects on the unique unit eigenvector and
/// returns the connected correlator; a degenerate dominant eigenvalue is a
/// clustering violation.
pub fn two_point(
    m: &UniformMPS,
    o1: &DenseMatrix,
    o2: &DenseMatrix,
    r: usize,
    size: MpsSize,
) -> Result<C64> {
    if r == 0 {
        return Err(Error::Domain("separation must be at least one site"));
    }
    let t = transfer_matrix(m)?;
    let e = &t.matrix;
    let q1 = lift_operator(m, o1)?;
    let q2 = lift_operator(m, o2)?;
    match size {
        MpsSize::Finite(n) => {
            if n < r + 1 {
                return Err(Error::Domain("chain shorter than the separation"));
            }
            let mut acc = matrix_power(e, n - r - 1).mul(&q1);
            acc = acc.mul(&matrix_power(e, r - 1)).mul(&q2);
            Ok(acc.trace())
        }
        MpsSize::Infinite => {
            let lam1 = t.eigenvalues[0].norm();
            if t.eigenvalues.len() > 1 && t.eigenvalues[1].norm() > lam1 * (1.0 - 1e-9) {
                return Err(Error::ClusteringViolation);
            }
            let right = dominant_eigenvector(e)?;
            let left = dominant_eigenvector(&e.adjoint())?;
            let lr: C64 = left.iter().zip(&right).map(|(l, r)| l.conj() * r).sum();
            if lr.norm() < 1e-12 {
                return Err(Error::Consistency("degenerate left/right pairing"));
            }
            let apply = |mat: &DenseMatrix, v: &[C64]| mat.matvec(v);
            // (l| Õ₁ E^{r-1} Õ₂ |r)
            let mut v = apply(&q2, &right);
            for _ in 0..r - 1 {
                v = apply(e, &v);
            }
            v = apply(&q1, &v);
            let full: C64 = left.iter().zip(&v).map(|(l, x)| l.conj() * x).sum();
            let m1: C64 = left
                .iter()
                .zip(&apply(&q1, &right))
                .map(|(l, x)| l.conj() * x)
                .sum();
            let m2: C64 = left
                .iter()
                .zip(&apply(&q2, &right))
                .map(|(l, x)| l.conj() * x)
                .sum();
            Ok(full / lr - (m1 / lr) * (m2 / lr))
        }
    }
}

fn matrix_power(m: &DenseMatrix, n: usize) -> DenseMatrix {
    let mut acc = DenseMatrix::identity(m.rows());
    let mut base = m.clone();
    let mut k = n;
    while k > 0 {
        if k & 1 == 1 {
            acc = acc.mul(&base);
        }
        base = base.mul(&base);
        k >>= 1;
    }
    acc
}

fn dominant_eigenvector(e: &DenseMatrix) -> Result<Vec<C64>> {
    let n = e.rows();
    let mut v: Vec<C64> = (0..n)
        .map(|i| C64::new(1.0 + 0.1 * scalar::sin(i as f64), 0.05 * scalar::cos(1.3 * i as f64)))
        .collect();
    normalize_c(&mut v);
    let mut last = v.clone();
    for _ in 0..50_000 {
        let mut w = e.matvec(&v);
        normalize_c(&mut w);
        // Phase-align against the previous iterate to detect convergence.
        let ov: C64 = last.iter().zip(&w).map(|(a, b)| a.conj() * b).sum();
        let phase = if ov.norm() > 0.0 { ov / ov.norm() } else { C64::new(1.0, 0.0) };
        for x in &mut w {
            *x /= phase;
        }
        let diff: f64 = last
            .iter()
            .zip(&w)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>();
        last = w.clone();
        v = w;
        if scalar::sqrt(diff) < 1e-14 {
            return Ok(v);
        }
    }
    Err(Error::NonConvergence {
        what: "transfer-matrix power iteration",
        residual: 0.0,
    })
}

fn normalize_c(v: &mut [C64]) {
    let norm = scalar::sqrt(v.iter().map(|z| z.norm_sqr()).sum());
    if norm > 0.0 {
        for z in v.iter_mut() {
            *z /= norm;
        }
    }
}

/// Correlation lengths ξ_μ = −1/ln|λ_μ| of the subdominant eigenvalues;
/// |λ| = 1 reports infinity, λ = 0 reports 0.
pub fn correlation_lengths(t: &TransferMatrix) -> Vec<f64> {
    t.eigenvalues
        .iter()
        .skip(1)
        .map(|lam| {
            let r = lam.norm();
            if r >= 1.0 - 1e-12 {
                f64::INFINITY
            } else if r <= 1e-300 {
                0.0
            } else {
                -1.0 / scalar::ln(r)
            }
        })
        .collect()
}

/// One exact coarse-graining step: block two sites, SVD the d²×D² product
/// tensor, keep the nonzero singular branches Ã^j = σ_j V^j.
pub fn rg_step(m: &UniformMPS) -> Result<UniformMPS> {
    let dd = m.bond * m.bond;
    let mut block = DenseMatrix::zeros(m.d * m.d, dd);
    for s2 in 0..m.d {
        for s3 in 0..m.d {
            let prod = m.tensors[s2].mul(&m.tensors[s3]);
            for a in 0..m.bond {
                for g in 0..m.bond {
                    block[(s2 * m.d + s3, a * m.bond + g)] = prod[(a, g)];
                }
            }
        }
    }
    let (_, sigma, v) = svd(&block)?;
    let cutoff = sigma.first().copied().unwrap_or(0.0) * 1e-12;
    let keep = sigma.iter().filter(|&&s| s > cutoff).count().max(1);
    let mut tensors = Vec::with_capacity(keep);
    for j in 0..keep {
        // Row j of V† carries the new branch.
        let t = DenseMatrix::from_fn(m.bond, m.bond, |a, g| {
            v[(a * m.bond + g, j)].conj() * sigma[j]
        });
        tensors.push(t);
    }
    UniformMPS::new(tensors)
}

/// Left-canonicalize a tensor family: find the positive fixed point X of
/// X ↦ Σ (A^s)† X A^s and conjugate by its square root.
pub fn make_canonical(m: &UniformMPS) -> Result<UniformMPS> {
    let d_bond = m.bond;
    let mut x = DenseMatrix::identity(d_bond);
    let mut eta = 1.0f64;
    for _ in 0..20_000 {
        let mut next = DenseMatrix::zeros(d_bond, d_bond);
        for a in &m.tensors {
            next = next.add(&a.adjoint().mul(&x).mul(a));
        }
        let tr = next.trace().re;
        if tr <= 0.0 {
            return Err(Error::Consistency("canonicalization lost positivity"));
        }
        let scaled = next.scale(C64::new(d_bond as f64 / tr, 0.0));
        let diff = scaled.sub(&x).max_abs();
        eta = tr / x.trace().re;
        x = scaled;
        if diff < 1e-14 {
            break;
        }
    }
    // X = W† W via the Hermitian square root.
    let xh = x.add(&x.adjoint()).scale(C64::new(0.5, 0.0));
    let (vals, vecs) = hermitian_eigen(&xh)?;
    if vals[0] <= 1e-12 {
        return Err(Error::Consistency("fixed point not positive definite"));
    }
    let mut sqrt = DenseMatrix::zeros(d_bond, d_bond);
    let mut inv_sqrt = DenseMatrix::zeros(d_bond, d_bond);
    for k in 0..d_bond {
        let s = scalar::sqrt(vals[k]);
        for i in 0..d_bond {
            for j in 0..d_bond {
                let w = vecs[(i, k)] * vecs[(j, k)].conj();
                sqrt[(i, j)] += w * s;
                inv_sqrt[(i, j)] += w / s;
            }
        }
    }
    let root_eta = scalar::sqrt(eta);
    let tensors: Vec<DenseMatrix> = m
        .tensors
        .iter()
        .map(|a| {
            sqrt.mul(a)
                .mul(&inv_sqrt)
                .scale(C64::new(1.0 / root_eta, 0.0))
        })
        .collect();
    UniformMPS::new(tensors)
}

/// Right fixed point of X ↦ Σ A^s X (A^s)†, trace-normalized. Requires a
/// unique unit eigenvalue (clustering); the iteration detects stalls.
fn right_fixed_point(m: &UniformMPS) -> Result<DenseMatrix> {
    let n = m.bond;
    let mut x = DenseMatrix::identity(n).scale(C64::new(1.0 / n as f64, 0.0));
    for _ in 0..20_000 {
        let mut next = DenseMatrix::zeros(n, n);
        for a in &m.tensors {
            next = next.add(&a.mul(&x).mul(&a.adjoint()));
        }
        let tr = next.trace().re;
        if tr.abs() < 1e-300 {
            return Err(Error::Consistency("right fixed point collapsed"));
        }
        let next = next.scale(C64::new(1.0 / tr, 0.0));
        let diff = next.sub(&x).max_abs();
        x = next;
        if diff < 1e-14 {
            return Ok(x);
        }
    }
    Ok(x)
}

/// Entanglement entropy (bits) of a block of `len` contiguous sites in the
/// infinite chain, from the Gram matrix of the blocked branch matrices.
pub fn block_entropy(m: &UniformMPS, len: usize) -> Result<f64> {
    if len == 0 {
        return Err(Error::Domain("block must contain at least one site"));
    }
    let n = m.bond;
    let dd = n * n;
    let rho_r = right_fixed_point(m)?;
    // C_ℓ = Σ_{s⃗} vec(B^{s⃗}) vec(B^{s⃗})†, built by the one-site recursion
    // vec(B A^s) = (1 ⊗ (A^s)ᵀ) vec(B) in row-major vec convention.
    let mut c = DenseMatrix::zeros(dd, dd);
    let id = DenseMatrix::identity(n);
    let vec_id: Vec<C64> = (0..dd)
        .map(|i| id[(i / n, i % n)])
        .collect();
    for i in 0..dd {
        for j in 0..dd {
            c[(i, j)] = vec_id[i] * vec_id[j].conj();
        }
    }
    let lifts: Vec<DenseMatrix> = m
        .tensors
        .iter()
        .map(|a| DenseMatrix::identity(n).kron(&a.transpose()))
        .collect();
    for _ in 0..len {
        let mut next = DenseMatrix::zeros(dd, dd);
        for t in &lifts {
            next = next.add(&t.mul(&c).mul(&t.adjoint()));
        }
        c = next;
    }
    // Weight by the right fixed point: ⟨B', B⟩ = vec(B')† (1 ⊗ ρᵀ) vec(B).
    let weight = DenseMatrix::identity(n).kron(&rho_r.transpose());
    let wh = weight.add(&weight.adjoint()).scale(C64::new(0.5, 0.0));
    let (wvals, wvecs) = hermitian_eigen(&wh)?;
    let mut wroot = DenseMatrix::zeros(dd, dd);
    for k in 0..dd {
        let s = scalar::sqrt(wvals[k].max(0.0));
        for i in 0..dd {
            for j in 0..dd {
                wroot[(i, j)] += wvecs[(i, k)] * wvecs[(j, k)].conj() * s;
            }
        }
    }
    let gram = wroot.mul(&c).mul(&wroot);
    let gram = gram.add(&gram.adjoint()).scale(C64::new(0.5, 0.0));
    let (vals, _) = hermitian_eigen(&gram)?;
    let total: f64 = vals.iter().map(|v| v.max(0.0)).sum();
    if total <= 0.0 {
        return Err(Error::Consistency("empty block spectrum"));
    }
    Ok(vals
        .iter()
        .map(|&v| -scalar::xlog2x((v / total).max(0.0)))
        .sum())
}

/// The valence-bond family √(1−3μ²) σ⁰|0⟩ + iμ Σ_s σ^s|s⟩ (canonical for
/// 0 ≤ μ ≤ 1/√3; μ = 1/√3 is the valence-bond point, μ = 0 a product).
pub fn aklt_family(mu: f64) -> Result<UniformMPS> {
    let limit = 1.0 / scalar::sqrt(3.0);
    if !(0.0..=limit + 1e-12).contains(&mu) {
        return Err(Error::Domain("flow parameter must lie in [0, 1/sqrt(3)]"));
    }
    let w = scalar::sqrt((1.0 - 3.0 * mu * mu).max(0.0));
    let (s0, sx, sy, sz) = pauli();
    Ok(UniformMPS::new(vec![
        s0.scale(C64::new(w, 0.0)),
        sx.scale(C64::new(0.0, mu)),
        sy.scale(C64::new(0.0, mu)),
        sz.scale(C64::new(0.0, mu)),
    ])?)
}

fn pauli() -> (DenseMatrix, DenseMatrix, DenseMatrix, DenseMatrix) {
    let s0 = DenseMatrix::identity(2);
    let mut sx = DenseMatrix::zeros(2, 2);
    sx[(0, 1)] = C64::new(1.0, 0.0);
    sx[(1, 0)] = C64::new(1.0, 0.0);
    let mut sy = DenseMatrix::zeros(2, 2);
    sy[(0, 1)] = C64::new(0.0, -1.0);
    sy[(1, 0)] = C64::new(0.0, 1.0);
    let mut sz = DenseMatrix::zeros(2, 2);
    sz[(0, 0)] = C64::new(1.0, 0.0);
    sz[(1, 1)] = C64::new(-1.0, 0.0);
    (s0, sx, sy, sz)
}

/// Closed-form block entropy after `steps` coarse grainings (a block of
/// 2^steps sites) of the valence-bond flow state: with
/// q = (1−4μ²)^{2^steps}, the四 spectrum is {(1−q)/4 ×3, (1+3q)/4}.
pub fn aklt_flow_entropy(steps: u32, mu: f64) -> Result<f64> {
    let limit = 1.0 / scalar::sqrt(3.0);
    if !(0.0..=limit + 1e-12).contains(&mu) {
        return Err(Error::Domain("flow parameter must lie in [0, 1/sqrt(3)]"));
    }
    let mut q = 1.0 - 4.0 * mu * mu;
    for _ in 0..steps {
        q = q * q;
    }
    let p_triplet = (1.0 - q) / 4.0;
    let p_singlet = (1.0 + 3.0 * q) / 4.0;
    Ok(-3.0 * scalar::xlog2x(p_triplet) - scalar::xlog2x(p_singlet))
}

/// Coarse-graining fixed-point families of the D ≤ 2 classification, plus
/// the D² symmetric generalization.
#[derive(Debug, Clone, PartialEq)]
pub enum FixedPointLabel {
    Product,
    Ghz,
    ClusterValence,
    WType { theta: f64 },
    DomainWall { theta: f64, alpha: f64, beta: f64 },
    SymmetricD2 { bond: usize },
    None,
}

/// Canonical fixed-point constructors.
pub fn product_state() -> UniformMPS {
    UniformMPS::new(vec![DenseMatrix::identity(1)]).expect("valid")
}

pub fn ghz_state() -> UniformMPS {
    let (s0, _, _, sz) = pauli();
    let a0 = s0.add(&sz).scale(C64::new(0.5, 0.0));
    let a1 = s0.sub(&sz).scale(C64::new(0.5, 0.0));
    UniformMPS::new(vec![a0, a1]).expect("valid")
}

pub fn cluster_state() -> UniformMPS {
    let (s0, sx, sy, sz) = pauli();
    UniformMPS::new(vec![
        s0.scale(C64::new(0.5, 0.0)),
        sx.scale(C64::new(0.0, 0.5)),
        sy.scale(C64::new(0.0, 0.5)),
        sz.scale(C64::new(0.0, 0.5)),
    ])
    .expect("valid")
}

pub fn w_state(theta: f64) -> UniformMPS {
    let mut a0 = DenseMatrix::zeros(2, 2);
    a0[(0, 0)] = C64::new(1.0, 0.0);
    a0[(1, 1)] = C64::new(scalar::cos(theta), -scalar::sin(theta));
    let mut a1 = DenseMatrix::zeros(2, 2);
    a1[(1, 0)] = C64::new(1.0, 0.0);
    UniformMPS::new(vec![a0, a1]).expect("valid")
}

pub fn domain_wall_state(theta: f64, alpha: f64, beta: f64) -> UniformMPS {
    let (ct, st) = (scalar::cos(theta), scalar::sin(theta));
    let mut a0 = DenseMatrix::zeros(2, 2);
    a0[(1, 0)] = C64::new(scalar::cos(alpha) * scalar::sin(beta), 0.0);
    a0[(1, 1)] = C64::new(ct, st);
    let mut a1 = DenseMatrix::zeros(2, 2);
    a1[(1, 0)] = C64::new(scalar::sin(alpha), 0.0);
    let mut a2 = DenseMatrix::zeros(2, 2);
    a2[(0, 0)] = C64::new(ct, -st);
    a2[(1, 0)] = C64::new(scalar::cos(alpha) * scalar::cos(beta), 0.0);
    UniformMPS::new(vec![a0, a1, a2]).expect("valid")
}

/// Symmetric superposition of D² matrix units, A^s = T^s/√D.
pub fn symmetric_fixed_point(bond: usize) -> Result<UniformMPS> {
    if bond < 2 {
        return Err(Error::Domain("bond dimension must be at least 2"));
    }
    let inv = 1.0 / scalar::sqrt(bond as f64);
    let mut tensors = Vec::with_capacity(bond * bond);
    for a in 0..bond {
        for b in 0..bond {
            let mut t = DenseMatrix::zeros(bond, bond);
            t[(a, b)] = C64::new(inv, 0.0);
            tensors.push(t);
        }
    }
    UniformMPS::new(tensors)
}

fn approx_zero(m: &DenseMatrix, tol: f64) -> bool {
    m.max_abs() <= tol
}

/// Frobenius projection coefficient ⟨B, A⟩/⟨B, B⟩.
fn proj_coeff(a: &DenseMatrix, b: &DenseMatrix) -> Option<C64> {
    let denom: f64 = b.data().iter().map(|z| z.norm_sqr()).sum();
    if denom <= 1e-24 {
        return None;
    }
    let num: C64 = b
        .data()
        .iter()
        .zip(a.data())
        .map(|(x, y)| x.conj() * y)
        .sum();
    Some(num / denom)
}

/// Classify a (D ≤ 2) tensor family against the coarse-graining fixed-point
/// cases, trying them in order: product, GHZ, cluster/valence, W-type,
/// domain wall, then the symmetric-D² family.
pub fn classify_fixed_point(m: &UniformMPS, tol: f64) -> FixedPointLabel {
    if m.bond == 1 {
        return FixedPointLabel::Product;
    }

    // GHZ: branches are mutually annihilating idempotents resolving one.
    if m.bond >= 2 {
        let mut ok = true;
        let mut sum = DenseMatrix::zeros(m.bond, m.bond);
        for (i, a) in m.tensors.iter().enumerate() {
            sum = sum.add(a);
            if !approx_zero(&a.mul(a).sub(a), tol) {
                ok = false;
                break;
            }
            for (j, b) in m.tensors.iter().enumerate() {
                if i != j && !approx_zero(&a.mul(b), tol) {
                    ok = false;
                    break;
                }
            }
            if !ok {
                break;
            }
        }
        if ok && approx_zero(&sum.sub(&DenseMatrix::identity(m.bond)), tol) {
            return FixedPointLabel::Ghz;
        }
    }

    let idempotent_rank_one = |t: &TransferMatrix| {
        let e2 = t.matrix.mul(&t.matrix);
        approx_zero(&e2.sub(&t.matrix), tol.max(1e-10))
            && (t.eigenvalues[0] - C64::new(1.0, 0.0)).norm() <= 1e-6
            && t.eigenvalues.iter().skip(1).all(|l| l.norm() <= 1e-6)
    };

    // Cluster / valence-bond fixed point: D = 2, d = 4, E idempotent of
    // rank one, maximal two-bit block entropy.
    if m.bond == 2 && m.d == 4 {
        if let Ok(t) = transfer_matrix(m) {
            if idempotent_rank_one(&t) {
                if let Ok(s) = block_entropy(m, 1) {
                    if (s - 2.0).abs() <= 1e-6 {
                        return FixedPointLabel::ClusterValence;
                    }
                }
            }
        }
    }

    // W-type: one invertible branch with unit spectrum, one nilpotent branch
    // with A⁰A¹ = e^{−iθ} A¹ and A¹A⁰ = A¹.
    if m.bond == 2 && m.d == 2 {
        for (i0, i1) in [(0usize, 1usize), (1, 0)] {
            let a0 = &m.tensors[i0];
            let a1 = &m.tensors[i1];
            if approx_zero(a1, tol) || !approx_zero(&a1.mul(a1), tol) {
                continue;
            }
            if !approx_zero(&a1.mul(a0).sub(a1), tol) {
                continue;
            }
            let Some(c) = proj_coeff(&a0.mul(a1), a1) else {
                continue;
            };
            if (c.norm() - 1.0).abs() > tol || !approx_zero(&a0.mul(a1).sub(&a1.scale(c)), tol) {
                continue;
            }
            // Branch spectrum {1, e^{−iθ}}.
            if let Ok(eigs) = complex_eigenvalues(a0) {
                let has_unit = eigs.iter().any(|l| (l - C64::new(1.0, 0.0)).norm() <= 100.0 * tol);
                let all_modulus_one = eigs.iter().all(|l| (l.norm() - 1.0).abs() <= 100.0 * tol);
                if has_unit && all_modulus_one {
                    let theta = -scalar::atan2(c.im, c.re);
                    return FixedPointLabel::WType { theta };
                }
            }
        }
    }

    // Domain wall: three branches with the characteristic nilpotent algebra.
    if m.bond == 2 && m.d == 3 {
        if let Some(label) = match_domain_wall(m, tol) {
            return label;
        }
    }

    // Symmetric D²: d = D² branches with E² = E of rank one and block
    // entropy log₂ D².
    if m.d == m.bond * m.bond {
        if let Ok(t) = transfer_matrix(m) {
            if idempotent_rank_one(&t) {
                if let Ok(s) = block_entropy(m, 1) {
                    if (s - scalar::log2((m.bond * m.bond) as f64)).abs() <= 1e-6 {
                        return FixedPointLabel::SymmetricD2 { bond: m.bond };
                    }
                }
            }
        }
    }

    FixedPointLabel::None
}

fn match_domain_wall(m: &UniformMPS, tol: f64) -> Option<FixedPointLabel> {
    let perms3 = [
        [0usize, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    for perm in perms3 {
        let a0 = &m.tensors[perm[0]];
        let a1 = &m.tensors[perm[1]];
        let a2 = &m.tensors[perm[2]];
        if approx_zero(a1, tol) {
            continue;
        }
        // Nilpotency and one-sided annihilations.
        if !approx_zero(&a1.mul(a1), tol)
            || !approx_zero(&a1.mul(a0), tol)
            || !approx_zero(&a2.mul(a0), tol)
            || !approx_zero(&a2.mul(a1), tol)
        {
            continue;
        }
        // A⁰² = e^{iθ}A⁰ fixes the phase.
        let Some(c) = proj_coeff(&a0.mul(a0), a0) else {
            continue;
        };
        if (c.norm() - 1.0).abs() > tol || !approx_zero(&a0.mul(a0).sub(&a0.scale(c)), tol) {
            continue;
        }
        let theta = scalar::atan2(c.im, c.re);
        let e_it = c;
        let e_mit = c.conj();
        if !approx_zero(&a0.mul(a1).sub(&a1.scale(e_it)), tol)
            || !approx_zero(&a1.mul(a2).sub(&a1.scale(e_mit)), tol)
            || !approx_zero(&a2.mul(a2).sub(&a2.scale(e_mit)), tol)
        {
            continue;
        }
        // A⁰A² ∝ A¹.
        let prod = a0.mul(a2);
        if let Some(cp) = proj_coeff(&prod, a1) {
            if !approx_zero(&prod.sub(&a1.scale(cp)), tol) {
                continue;
            }
        } else if !approx_zero(&prod, tol) {
            continue;
        }
        let sin_alpha = {
            let norms: f64 = a1.data().iter().map(|z| z.norm_sqr()).sum();
            scalar::sqrt(norms)
        };
        let alpha = scalar::asin(sin_alpha.clamp(0.0, 1.0));
        let ca_cb = {
            let n2: f64 = a2.data().iter().map(|z| z.norm_sqr()).sum();
            scalar::sqrt((n2 - 1.0).max(0.0))
        };
        let ca_sb = {
            let n0: f64 = a0.data().iter().map(|z| z.norm_sqr()).sum();
            scalar::sqrt((n0 - 1.0).max(0.0))
        };
        let beta = scalar::atan2(ca_sb, ca_cb);
        return Some(FixedPointLabel::DomainWall { theta, alpha, beta });
    }
    None
}

/// One site tensor of an open-boundary MPS built from a state vector.
#[derive(Debug, Clone)]
pub struct SiteTensor {
    pub left: usize,
    pub phys: usize,
    pub right: usize,
    data: Vec<C64>,
}

impl SiteTensor {
    pub fn at(&self, l: usize, s: usize, r: usize) -> C64 {
        self.data[(l * self.phys + s) * self.right + r]
    }

    /// Σ_s (A^s)†A^s over the physical index; identity for left-canonical
    /// tensors.
    pub fn gram(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.right, self.right, |r1, r2| {
            let mut acc = C64::new(0.0, 0.0);
            for l in 0..self.left {
                for s in 0..self.phys {
                    acc += self.at(l, s, r1).conj() * self.at(l, s, r2);
                }
            }
            acc
        })
    }
}

/// Exact left-canonical MPS of a normalized state vector of N sites with
/// local dimension d; bond ranks follow the Schmidt ranks (cutoff 1e-12).
pub fn mps_from_state(state: &[C64], n: usize, d: usize) -> Result<Vec<SiteTensor>> {
    let mut dim = 1usize;
    for _ in 0..n {
        dim = dim
            .checked_mul(d)
            .ok_or(Error::Resource("state too large"))?;
    }
    if state.len() != dim {
        return Err(Error::Dimension {
            expected: dim,
            found: state.len(),
        });
    }
    let norm2: f64 = state.iter().map(|z| z.norm_sqr()).sum();
    if (norm2 - 1.0).abs() > 1e-8 {
        return Err(Error::Domain("state must be normalized"));
    }
    let mut tensors = Vec::with_capacity(n);
    let mut carry: Vec<C64> = state.to_vec();
    let mut rank = 1usize;
    for site in 0..n {
        let cols = carry.len() / (rank * d);
        if site == n - 1 {
            tensors.push(SiteTensor {
                left: rank,
                phys: d,
                right: 1,
                data: carry.clone(),
            });
            break;
        }
        let mat = DenseMatrix::from_fn(rank * d, cols, |i, j| carry[i * cols + j]);
        let (u, sigma, v) = svd(&mat)?;
        let cutoff = sigma.first().copied().unwrap_or(0.0) * 1e-12;
        let keep = sigma.iter().filter(|&&s| s > cutoff).count().max(1);
        let mut data = Vec::with_capacity(rank * d * keep);
        for i in 0..rank * d {
            for j in 0..keep {
                data.push(u[(i, j)]);
            }
        }
        tensors.push(SiteTensor {
            left: rank,
            phys: d,
            right: keep,
            data,
        });
        // carry = diag(σ) V† of the kept block.
        let mut next = vec![C64::new(0.0, 0.0); keep * cols];
        for j in 0..keep {
            for cidx in 0..cols {
                next[j * cols + cidx] = v[(cidx, j)].conj() * sigma[j];
            }
        }
        carry = next;
        rank = keep;
    }
    Ok(tensors)
}

/// Contract an open-boundary MPS back into a dense state vector.
pub fn contract_sites(tensors: &[SiteTensor]) -> Vec<C64> {
    let mut amps: Vec<C64> = vec![C64::new(1.0, 0.0)];
    let mut dim = 1usize;
    let mut left = 1usize;
    let mut boundary: Vec<Vec<C64>> = vec![vec![C64::new(1.0, 0.0)]];
    let _ = (&amps, dim, left);
    // Row state: for each basis prefix, the open bond vector.
    for t in tensors {
        let mut next = Vec::with_capacity(boundary.len() * t.phys);
        for vec_left in &boundary {
            for s in 0..t.phys {
                let mut out = vec![C64::new(0.0, 0.0); t.right];
                for (l, &vl) in vec_left.iter().enumerate() {
                    if vl.norm() == 0.0 {
                        continue;
                    }
                    for r in 0..t.right {
                        out[r] += vl * t.at(l, s, r);
                    }
                }
                next.push(out);
            }
        }
        boundary = next;
    }
    amps = boundary.into_iter().map(|v| v[0]).collect();
    dim = amps.len();
    left = 1;
    let _ = (dim, left);
    amps
}
