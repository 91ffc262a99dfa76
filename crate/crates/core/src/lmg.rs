//! Lipkin-Meshkov-Glick model in the symmetric (Dicke) sector.
//!
//! H = −(1/N) Σ_{i<j} (σˣσˣ + γ σʸσʸ) − h Σ σᶻ lives in the maximum-spin
//! sector S = N/2, where it reads
//!
//!   H = ((1+γ)/N)((Sᶻ)² + N/2 − S(S+1)) − 2hSᶻ + ((γ−1)/(2N))((S⁺)² + (S⁻)²)
//!
//! on the N+1 Dicke states |N/2, m⟩. The (S±)² terms couple m to m±2 only,
//! so each magnetization-parity sector is symmetric tridiagonal and the
//! ground state costs O(N) per bisection step. Block reduction uses the
//! hypergeometric split of Dicke states.

use crate::numerics::{
    hypergeometric_row, linear_fit, symmetric_eigenvalues, tridiagonal_ground_state, DenseMatrix,
    FitResult,
};
use crate::scalar;
use crate::{Error, Result};
use alloc::vec;
use alloc::vec::Vec;

/// Couplings of the LMG model: xy-anisotropy γ, z-field h, N spins.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LMGParams {
    pub gamma: f64,
    pub h: f64,
    pub n: usize,
}

impl LMGParams {
    pub fn new(gamma: f64, h: f64, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain("LMG needs at least two spins"));
        }
        Ok(LMGParams { gamma, h, n })
    }
}

/// Ground-state coefficients over the N+1 Dicke states, indexed by the
/// number of up-spins n (m = n − N/2). Normalized.
#[derive(Debug, Clone)]
pub struct DickeVector {
    pub n: usize,
    pub coeffs: Vec<f64>,
}

impl DickeVector {
    /// A pure Dicke basis state |N, n⟩.
    pub fn basis(n: usize, ups: usize) -> Result<Self> {
        if ups > n {
            return Err(Error::Domain("need n <= N"));
        }
        let mut coeffs = vec![0.0; n + 1];
        coeffs[ups] = 1.0;
        Ok(DickeVector { n, coeffs })
    }

    pub fn norm(&self) -> f64 {
        scalar::sqrt(self.coeffs.iter().map(|c| c * c).sum())
    }
}

fn diagonal_term(p: LMGParams, m: f64) -> f64 {
    let nf = p.n as f64;
    let s = nf / 2.0;
    (1.0 + p.gamma) / nf * (m * m + s - s * (s + 1.0)) - 2.0 * p.h * m
}

/// ⟨m+2|(S⁺)²|m⟩ = √((S−m)(S+m+1)) √((S−m−1)(S+m+2)).
fn ladder_sq(s: f64, m: f64) -> f64 {
    scalar::sqrt((s - m) * (s + m + 1.0)) * scalar::sqrt((s - m - 1.0) * (s + m + 2.0))
}

/// Full (N+1)×(N+1) Dicke-basis Hamiltonian: real symmetric, pentadiagonal
/// (diagonal plus m → m±2 couplings); diagonal at γ = 1.
pub fn lmg_hamiltonian_dicke(p: LMGParams) -> DenseMatrix {
    let n = p.n;
    let s = n as f64 / 2.0;
    let mut h = DenseMatrix::zeros(n + 1, n + 1);
    for ups in 0..=n {
        let m = ups as f64 - s;
        h[(ups, ups)] = crate::numerics::C64::new(diagonal_term(p, m), 0.0);
        if ups + 2 <= n {
            let v = (p.gamma - 1.0) / (2.0 * n as f64) * ladder_sq(s, m);
            h[(ups + 2, ups)] = crate::numerics::C64::new(v, 0.0);
            h[(ups, ups + 2)] = crate::numerics::C64::new(v, 0.0);
        }
    }
    h
}

/// Magnetization-parity sector (n ≡ q mod 2) as a symmetric tridiagonal
/// problem; returns (diagonal, offdiagonal, up-spin counts).
fn sector_tridiagonal(p: LMGParams, q: usize) -> (Vec<f64>, Vec<f64>, Vec<usize>) {
    let s = p.n as f64 / 2.0;
    let ns: Vec<usize> = (q..=p.n).step_by(2).collect();
    let diag: Vec<f64> = ns.iter().map(|&u| diagonal_term(p, u as f64 - s)).collect();
    let off: Vec<f64> = ns
        .iter()
        .take(ns.len().saturating_sub(1))
        .map(|&u| (p.gamma - 1.0) / (2.0 * p.n as f64) * ladder_sq(s, u as f64 - s))
        .collect();
    (diag, off, ns)
}

/// Which state to report when the h → 0 parity doublet is degenerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LmgBranch {
    /// The parity eigenstate continuing the cat-state limit (default).
    Symmetric,
    /// The symmetry-broken combination of the degenerate doublet.
    Broken,
}

/// Ground state of the LMG model; reports the symmetric branch.
pub fn lmg_ground_state(p: LMGParams) -> Result<DickeVector> {
    lmg_ground_state_branch(p, LmgBranch::Symmetric)
}

/// Ground state with an explicit choice of branch for the near-degenerate
/// doublet of the broken phase.
pub fn lmg_ground_state_branch(p: LMGParams, branch: LmgBranch) -> Result<DickeVector> {
    let mut sector_states: Vec<(f64, Vec<f64>, Vec<usize>)> = Vec::new();
    for q in 0..2usize.min(p.n + 1) {
        let (diag, off, ns) = sector_tridiagonal(p, q);
        if diag.is_empty() {
            continue;
        }
        let (e, v) = tridiagonal_ground_state(&diag, &off)?;
        sector_states.push((e, v, ns));
    }
    sector_states.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let scale = 1.0 + sector_states[0].0.abs();
    let degenerate = sector_states.len() > 1
        && (sector_states[1].0 - sector_states[0].0).abs() <= 1e-8 * scale;

    let assemble = |v: &[f64], ns: &[usize]| -> Vec<f64> {
        let mut coeffs = vec![0.0; p.n + 1];
        for (val, &u) in v.iter().zip(ns) {
            coeffs[u] = *val;
        }
        coeffs
    };

    let mut coeffs = if degenerate {
        match branch {
            LmgBranch::Symmetric => {
                // The cat state lives in the sector of n ≡ N (mod 2).
                let cat_q = p.n % 2;
                let pick = sector_states
                    .iter()
                    .find(|(_, _, ns)| ns[0] % 2 == cat_q)
                    .expect("both parities present");
                assemble(&pick.1, &pick.2)
            }
            LmgBranch::Broken => {
                let a = assemble(&sector_states[0].1, &sector_states[0].2);
                let b = assemble(&sector_states[1].1, &sector_states[1].2);
                let inv = 1.0 / scalar::sqrt(2.0);
                a.iter().zip(&b).map(|(x, y)| (x + y) * inv).collect()
            }
        }
    } else {
        assemble(&sector_states[0].1, &sector_states[0].2)
    };

    // Phase convention: largest-magnitude coefficient positive.
    let mut imax = 0;
    for (i, c) in coeffs.iter().enumerate() {
        if c.abs() > coeffs[imax].abs() {
            imax = i;
        }
    }
    if coeffs[imax] < 0.0 {
        for c in &mut coeffs {
            *c = -*c;
        }
    }
    let norm = scalar::sqrt(coeffs.iter().map(|c| c * c).sum::<f64>());
    for c in &mut coeffs {
        *c /= norm;
    }
    Ok(DickeVector { n: p.n, coeffs })
}

/// Ground-state energy (needed by oracles and scans).
pub fn lmg_ground_energy(p: LMGParams) -> Result<f64> {
    let mut best = f64::MAX;
    for q in 0..2usize.min(p.n + 1) {
        let (diag, off, _) = sector_tridiagonal(p, q);
        if diag.is_empty() {
            continue;
        }
        let (e, _) = tridiagonal_ground_state(&diag, &off)?;
        best = best.min(e);
    }
    Ok(best)
}

/// Schmidt factor of a Dicke-sector state split into L | N−L sites:
/// M[l, j] = c_{l+j} √(p_l^{(l+j)}), so ρ_L = M Mᵀ.
fn schmidt_factor(v: &DickeVector, block: usize) -> Result<Vec<Vec<f64>>> {
    let n = v.n;
    if block == 0 || block >= n {
        return Err(Error::Domain("block must satisfy 1 <= L <= N-1"));
    }
    let env = n - block;
    let mut m = vec![vec![0.0f64; env + 1]; block + 1];
    for ups in 0..=n {
        let c = v.coeffs[ups];
        if c == 0.0 {
            continue;
        }
        let row = hypergeometric_row(n, ups, block)?;
        let l_min = ups.saturating_sub(env);
        let l_max = block.min(ups);
        for l in l_min..=l_max {
            m[l][ups - l] = c * scalar::sqrt(row[l]);
        }
    }
    Ok(m)
}

/// Reduced density matrix of L sites, (L+1)×(L+1), positive semidefinite
/// with unit trace.
pub fn dicke_reduced_density(v: &DickeVector, block: usize) -> Result<DenseMatrix> {
    let m = schmidt_factor(v, block)?;
    let rho = DenseMatrix::from_real_fn(block + 1, block + 1, |l, lp| {
        m[l].iter().zip(&m[lp]).map(|(a, b)| a * b).sum()
    });
    Ok(rho)
}

/// Block entropy (bits) of a Dicke-sector state.
pub fn dicke_block_entropy(v: &DickeVector, block: usize) -> Result<f64> {
    let rho = dicke_reduced_density(v, block)?;
    let evals = symmetric_eigenvalues(&rho)?;
    Ok(evals.iter().map(|&p| -scalar::xlog2x(p.max(0.0))).sum())
}

/// Ground-state block entropy of the LMG model, in bits.
pub fn lmg_block_entropy(p: LMGParams, block: usize) -> Result<f64> {
    let v = lmg_ground_state(p)?;
    dicke_block_entropy(&v, block)
}

/// Gaussian-limit closed form for the isotropic (γ = 1) entropy:
/// (1/2)log₂(L(N−L)/N) + (1/2)log₂(1−h²) + (1/2)log₂(2πe) − 1 for h ∈ [0,1),
/// 0 for h ≥ 1. The constant is the differential entropy of the limiting
/// gaussian with the hypergeometric variance (1−h²)L(N−L)/(4N).
pub fn isotropic_entropy_closed_form(n: usize, block: usize, h: f64) -> f64 {
    if h >= 1.0 {
        return 0.0;
    }
    let (nf, lf) = (n as f64, block as f64);
    let gauss_const = 0.5 * scalar::log2(2.0 * core::f64::consts::PI * core::f64::consts::E) - 1.0;
    0.5 * scalar::log2(lf * (nf - lf) / nf) + 0.5 * scalar::log2(1.0 - h * h) + gauss_const
}

/// Grids for the three scaling-law fits.
#[derive(Debug, Clone)]
pub struct LmgFitGrids {
    pub n: usize,
    /// Fields below 1 for the −(1/6) log₂|1−h| approach (γ = 0).
    pub field_h: Vec<f64>,
    pub field_block: usize,
    /// Block sizes for the (1/3) log₂(L(N−L)/N) law at h = 1, γ = 0.
    pub size_blocks: Vec<usize>,
    /// Anisotropies for the (1/6) log₂(1−γ) offset at h = 1.
    pub aniso_gamma: Vec<f64>,
    pub aniso_block: usize,
}

impl Default for LmgFitGrids {
    fn default() -> Self {
        LmgFitGrids {
            n: 2000,
            field_h: vec![0.5, 0.6, 0.7, 0.8, 0.85, 0.9],
            field_block: 500,
            size_blocks: vec![50, 100, 150, 200, 250, 300, 350, 400, 450, 500],
            aniso_gamma: vec![0.0, 0.25, 0.5],
            aniso_block: 500,
        }
    }
}

/// The three fitted scaling laws.
#[derive(Debug, Clone)]
pub struct LmgFitSuite {
    /// Slope of S vs log₂|1−h|; −1/6 near criticality.
    pub field_approach: FitResult,
    /// Slope of S vs log₂(L(N−L)/N) at h = 1; 1/3.
    pub size_scaling: FitResult,
    /// Slope of S vs log₂(1−γ) at h = 1; 1/6.
    pub anisotropy_offset: FitResult,
}

pub fn lmg_fit_suite(grids: &LmgFitGrids) -> Result<LmgFitSuite> {
    let n = grids.n;

    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for &h in &grids.field_h {
        let p = LMGParams::new(0.0, h, n)?;
        xs.push(scalar::log2((1.0 - h).abs()));
        ys.push(lmg_block_entropy(p, grids.field_block)?);
    }
    let field_approach = linear_fit(&xs, &ys)?;

    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let p = LMGParams::new(0.0, 1.0, n)?;
    let v = lmg_ground_state(p)?;
    for &l in &grids.size_blocks {
        xs.push(scalar::log2(l as f64 * (n - l) as f64 / n as f64));
        ys.push(dicke_block_entropy(&v, l)?);
    }
    let size_scaling = linear_fit(&xs, &ys)?;

    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for &gamma in &grids.aniso_gamma {
        let p = LMGParams::new(gamma, 1.0, n)?;
        xs.push(scalar::log2(1.0 - gamma));
        ys.push(lmg_block_entropy(p, grids.aniso_block)?);
    }
    let anisotropy_offset = linear_fit(&xs, &ys)?;

    Ok(LmgFitSuite {
        field_approach,
        size_scaling,
        anisotropy_offset,
    })
}
