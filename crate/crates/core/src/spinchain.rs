//! Dense 2^N spin-chain machinery: Hamiltonian actions in the computational
//! basis, Lanczos with full reorthogonalization, parity projections, and
//! Schmidt entropies of contiguous blocks.
//!
//! Bit `l` of a basis index is site `l`; bit 1 means σᶻ = +1. Chains are
//! periodic.

use crate::numerics::{svd, C64, DenseMatrix};
use crate::scalar;
use crate::{Error, Result};
use alloc::vec;
use alloc::vec::Vec;

/// Deterministic SplitMix64 stream for start vectors and stochastic restarts.
#[derive(Clone, Debug)]
pub struct Prng(u64);

impl Prng {
    pub fn new(seed: u64) -> Self {
        Prng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in [-0.5, 0.5).
    pub fn centered(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64 - 0.5
    }
}

/// y += H x for the periodic XY chain
/// H = Σ_j [(1+γ)/4 σˣσˣ + (1−γ)/4 σʸσʸ − λ/2 σᶻ] − ε Σ_j (−1)^j σˣ.
///
/// The breaking field is staggered because the +σˣσˣ coupling orders
/// antiferromagnetically in x; a staggered field couples to that order
/// parameter (it is the uniform field of the rotated ferromagnetic frame).
pub fn xy_apply(n: usize, gamma: f64, lambda: f64, eps: f64, x: &[f64], y: &mut [f64]) {
    let dim = 1usize << n;
    debug_assert_eq!(x.len(), dim);
    debug_assert_eq!(y.len(), dim);
    for b in 0..dim {
        let amp = x[b];
        if amp == 0.0 {
            continue;
        }
        let ups = (b as u64).count_ones() as i64;
        let sz_sum = (2 * ups - n as i64) as f64;
        y[b] += -0.5 * lambda * sz_sum * amp;
        for l in 0..n {
            let l2 = (l + 1) % n;
            let mask = (1usize << l) | (1usize << l2);
            let b1 = (b >> l) & 1;
            let b2 = (b >> l2) & 1;
            let coeff = if b1 != b2 { 0.5 } else { 0.5 * gamma };
            if coeff != 0.0 {
                y[b ^ mask] += coeff * amp;
            }
            if eps != 0.0 {
                let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
                y[b ^ (1usize << l)] += -eps * sign * amp;
            }
        }
    }
}

/// Spin-flip parity ∏σᶻ of a basis state: +1 when the number of down spins
/// is even.
#[inline]
pub fn z_parity(n: usize, b: usize) -> i8 {
    let downs = n as u32 - (b as u64).count_ones() as u32;
    if downs % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Lanczos with full reorthogonalization; returns the lowest Ritz pair.
pub fn lanczos_ground(
    dim: usize,
    apply: &mut dyn FnMut(&[f64], &mut [f64]),
    start: Vec<f64>,
    max_iter: usize,
) -> Result<(f64, Vec<f64>)> {
    let mut v = start;
    normalize(&mut v)?;
    let mut energy = f64::MAX;
    let mut state = v.clone();

    for _restart in 0..4 {
        let m_max = max_iter.min(dim);
        let mut basis: Vec<Vec<f64>> = Vec::with_capacity(m_max);
        basis.push(v.clone());
        let mut alpha: Vec<f64> = Vec::new();
        let mut beta: Vec<f64> = Vec::new();
        let mut w = vec![0.0f64; dim];

        for j in 0..m_max {
            w.iter_mut().for_each(|t| *t = 0.0);
            apply(&basis[j], &mut w);
            let a = dot(&w, &basis[j]);
            alpha.push(a);
            for i in 0..dim {
                w[i] -= a * basis[j][i];
            }
            if j > 0 {
                let b = beta[j - 1];
                for i in 0..dim {
                    w[i] -= b * basis[j - 1][i];
                }
            }
            // Full reorthogonalization keeps the Krylov basis clean.
            for prev in &basis {
                let proj = dot(&w, prev);
                for i in 0..dim {
                    w[i] -= proj * prev[i];
                }
            }
            let b_next = scalar::sqrt(dot(&w, &w));
            if b_next < 1e-12 {
                break;
            }
            beta.push(b_next);
            for t in &mut w {
                *t /= b_next;
            }
            basis.push(w.clone());
            if basis.len() >= m_max {
                break;
            }
        }

        let m = alpha.len();
        let (theta, coeffs) =
            crate::numerics::tridiagonal_ground_state(&alpha, &beta[..m.saturating_sub(1)])?;
        let mut ritz = vec![0.0f64; dim];
        for (c, vvec) in coeffs.iter().zip(basis.iter()) {
            for i in 0..dim {
                ritz[i] += c * vvec[i];
            }
        }
        normalize(&mut ritz)?;
        // True residual on the assembled vector.
        w.iter_mut().for_each(|t| *t = 0.0);
        apply(&ritz, &mut w);
        let rq = dot(&w, &ritz);
        let res = {
            let mut s = 0.0;
            for i in 0..dim {
                let t = w[i] - rq * ritz[i];
                s += t * t;
            }
            scalar::sqrt(s)
        };
        energy = rq;
        state = ritz.clone();
        if res <= 1e-10 * (1.0 + rq.abs()) {
            return Ok((energy, state));
        }
        v = ritz;
        let _ = theta;
    }
    Ok((energy, state))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(v: &mut [f64]) -> Result<()> {
    let norm = scalar::sqrt(dot(v, v));
    if norm <= 0.0 || !norm.is_finite() {
        return Err(Error::Consistency("zero vector in Lanczos"));
    }
    for t in v.iter_mut() {
        *t /= norm;
    }
    Ok(())
}

/// Ground state of the XY chain restricted to one spin-flip parity sector.
pub fn xy_sector_ground(
    n: usize,
    gamma: f64,
    lambda: f64,
    parity: i8,
    seed: u64,
) -> Result<(f64, Vec<f64>)> {
    let dim = 1usize << n;
    let mut rng = Prng::new(seed);
    let mut start: Vec<f64> = (0..dim)
        .map(|b| {
            if z_parity(n, b) == parity {
                rng.centered() + 0.01
            } else {
                0.0
            }
        })
        .collect();
    if start.iter().all(|&x| x == 0.0) {
        start[0] = 1.0;
    }
    let mut apply = |x: &[f64], y: &mut [f64]| xy_apply(n, gamma, lambda, 0.0, x, y);
    lanczos_ground(dim, &mut apply, start, 320)
}

/// Full-space ground state of the XY chain (used with a symmetry-breaking
/// field, where parity is no longer conserved).
pub fn xy_full_ground(
    n: usize,
    gamma: f64,
    lambda: f64,
    eps: f64,
    seed: u64,
) -> Result<(f64, Vec<f64>)> {
    let dim = 1usize << n;
    let mut rng = Prng::new(seed);
    let start: Vec<f64> = (0..dim).map(|_| rng.centered() + 0.01).collect();
    let mut apply = |x: &[f64], y: &mut [f64]| xy_apply(n, gamma, lambda, eps, x, y);
    lanczos_ground(dim, &mut apply, start, 360)
}

/// Von Neumann entropy (bits) of the reduced state of sites 0..block for a
/// pure state on n sites.
pub fn block_entropy_bits(state: &[f64], n: usize, block: usize) -> Result<f64> {
    let cstate: Vec<C64> = state.iter().map(|&x| C64::new(x, 0.0)).collect();
    block_entropy_bits_complex(&cstate, n, block)
}

pub fn block_entropy_bits_complex(state: &[C64], n: usize, block: usize) -> Result<f64> {
    if block == 0 || block >= n {
        return Err(Error::Domain("block must satisfy 1 <= L <= N-1"));
    }
    let rows = 1usize << block;
    let cols = 1usize << (n - block);
    if state.len() != rows * cols {
        return Err(Error::Dimension {
            expected: rows * cols,
            found: state.len(),
        });
    }
    let m = DenseMatrix::from_fn(rows, cols, |i, j| state[(j << block) | i]);
    let (_, sigma, _) = svd(&m)?;
    Ok(sigma
        .iter()
        .map(|&s| -scalar::xlog2x(s * s))
        .sum())
}

/// Fixed-magnetization sector of the periodic XXZ chain
/// H = Σ_j [¼(σˣσˣ + σʸσʸ) + γ/4 σᶻσᶻ − λ/2 σᶻ],
/// indexed by the number of reversed spins r (downs from the ferromagnet).
#[derive(Debug, Clone)]
pub struct XxzSector {
    pub n: usize,
    pub r: usize,
    configs: Vec<u32>,
}

impl XxzSector {
    pub fn new(n: usize, r: usize) -> Result<Self> {
        if r > n {
            return Err(Error::Domain("need r <= N"));
        }
        if n > 24 {
            return Err(Error::Resource("XXZ sector supports N <= 24"));
        }
        let ups = (n - r) as u32;
        let configs: Vec<u32> = (0u32..(1 << n)).filter(|b| b.count_ones() == ups).collect();
        Ok(XxzSector { n, r, configs })
    }

    pub fn dim(&self) -> usize {
        self.configs.len()
    }

    pub fn configs(&self) -> &[u32] {
        &self.configs
    }

    pub fn index_of(&self, config: u32) -> Option<usize> {
        self.configs.binary_search(&config).ok()
    }

    pub fn apply(&self, gamma: f64, lambda: f64, x: &[f64], y: &mut [f64]) {
        let n = self.n;
        let mz = n as f64 / 2.0 - self.r as f64;
        for (idx, &bu) in self.configs.iter().enumerate() {
            let amp = x[idx];
            if amp == 0.0 {
                continue;
            }
            let b = bu as usize;
            let mut zz = 0.0f64;
            for l in 0..n {
                let l2 = (l + 1) % n;
                let s1 = ((b >> l) & 1) as i64 * 2 - 1;
                let s2 = ((b >> l2) & 1) as i64 * 2 - 1;
                zz += (s1 * s2) as f64;
                if s1 != s2 {
                    let flipped = (b ^ ((1 << l) | (1 << l2))) as u32;
                    let j = self
                        .index_of(flipped)
                        .expect("flip-flop stays in the sector");
                    y[j] += 0.5 * amp;
                }
            }
            y[idx] += (0.25 * gamma * zz - lambda * mz) * amp;
        }
    }

    /// Lowest eigenpair in the sector.
    pub fn ground_state(&self, gamma: f64, lambda: f64, seed: u64) -> Result<(f64, Vec<f64>)> {
        let dim = self.dim();
        let mut rng = Prng::new(seed);
        let start: Vec<f64> = (0..dim).map(|_| rng.centered() + 0.01).collect();
        let mut apply = |x: &[f64], y: &mut [f64]| self.apply(gamma, lambda, x, y);
        lanczos_ground(dim, &mut apply, start, 320)
    }

    /// Embed a sector vector into the full 2^N space.
    pub fn embed_complex(&self, x: &[C64]) -> Vec<C64> {
        let mut full = vec![C64::new(0.0, 0.0); 1 << self.n];
        for (idx, &b) in self.configs.iter().enumerate() {
            full[b as usize] = x[idx];
        }
        full
    }
}
