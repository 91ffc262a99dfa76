//! Exact solution of the XY chain family.
//!
//! H = Σ_j [(1+γ)/4 σˣσˣ + (1−γ)/4 σʸσʸ − λ/2 σᶻ] with periodic boundaries.
//! After Jordan-Wigner and Bogoliubov transformations the ground state is
//! gaussian and fully described by the real Toeplitz kernel
//!
//!   g(d) = (1/2π) ∫ dφ e^{iφd} (cos φ − λ − iγ sin φ)/|cos φ − λ − iγ sin φ|,
//!
//! whose L×L block has singular values ν_l ∈ [0, 1]; the block entanglement
//! entropy is Σ_l H₂((1+ν_l)/2) bits. Finite chains carry the (anti)periodic
//! fermion sectors of the Jordan-Wigner string; the lower-energy sector is
//! selected, the spin-flip-even sector on ties (the cat-state convention of
//! the unbroken phase).

use crate::numerics::{integrate, linear_fit, svd, DenseMatrix, FitResult};
use crate::scalar;
use crate::spinchain;
use crate::{Error, Result};
use alloc::vec::Vec;
use core::f64::consts::PI;

/// Dimensionless couplings of the XY chain: anisotropy γ and field λ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XYParams {
    pub gamma: f64,
    pub lambda: f64,
}

impl XYParams {
    pub fn new(gamma: f64, lambda: f64) -> Self {
        XYParams { gamma, lambda }
    }
}

/// Chain length: explicit even N or the thermodynamic limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChainSize {
    Thermodynamic,
    Finite(usize),
}

/// Phase classification of an XY parameter point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseLabel {
    CriticalXx,
    CriticalXy,
    Gapped1Fp,
    Gapped2Fp,
}

/// Fermi points, mass and velocity of the low-energy theory.
#[derive(Debug, Clone, PartialEq)]
pub struct FermiData {
    pub fermi_points: Vec<f64>,
    pub mass: f64,
    pub velocity: f64,
    pub phase_label: PhaseLabel,
}

/// Quasiparticle energy Λ_φ = √((cos φ − λ)² + γ² sin² φ).
pub fn dispersion(p: XYParams, phi: f64) -> f64 {
    let a = scalar::cos(phi) - p.lambda;
    let b = p.gamma * scalar::sin(phi);
    scalar::hypot(a, b)
}

/// Bogoliubov angle θ ∈ [0, π] with cos θ = (cos φ − λ)/Λ_φ.
pub fn bogoliubov_angle(p: XYParams, phi: f64) -> Result<f64> {
    let lam = dispersion(p, phi);
    if lam <= 1e-14 {
        return Err(Error::SingularMomentum);
    }
    let c = ((scalar::cos(phi) - p.lambda) / lam).clamp(-1.0, 1.0);
    Ok(scalar::acos(c))
}

/// Fermi points, mass and velocity: a single expansion point φ_F = 0 when
/// λ + γ² ≥ 1, two points ±arccos(λ/(1−γ²)) otherwise.
pub fn fermi_analysis(p: XYParams) -> FermiData {
    let (gamma, lambda) = (p.gamma, p.lambda);
    if lambda + gamma * gamma >= 1.0 {
        let mass = (1.0 - lambda).abs();
        let velocity = lambda + gamma * gamma - 1.0;
        let phase_label = if mass == 0.0 {
            PhaseLabel::CriticalXy
        } else {
            PhaseLabel::Gapped1Fp
        };
        FermiData {
            fermi_points: alloc::vec![0.0],
            mass,
            velocity,
            phase_label,
        }
    } else {
        let ratio = lambda / (1.0 - gamma * gamma);
        let phi_f = scalar::acos(ratio.clamp(-1.0, 1.0));
        let mass = gamma * gamma * (1.0 - lambda * lambda / (1.0 - gamma * gamma));
        let velocity = 1.0 - gamma * gamma - lambda * lambda / (1.0 - gamma * gamma);
        let phase_label = if mass.abs() <= 1e-15 {
            PhaseLabel::CriticalXx
        } else {
            PhaseLabel::Gapped2Fp
        };
        FermiData {
            fermi_points: alloc::vec![phi_f, -phi_f],
            mass: mass.max(0.0),
            velocity,
            phase_label,
        }
    }
}

/// Fermion-parity sector of a finite chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sector {
    /// Spin-flip even: antiperiodic fermions, momenta (2j+1)π/N.
    Even,
    /// Spin-flip odd: periodic fermions, momenta 2πj/N.
    Odd,
}

/// Sector ground energies of the finite chain (spin normalization), and the
/// selected sector: the lower in energy, `Even` on near-degeneracy.
pub fn finite_sector_choice(p: XYParams, n: usize) -> Result<(Sector, f64, f64)> {
    if n == 0 || n % 2 != 0 {
        return Err(Error::Domain("finite chains must have even N"));
    }
    let half = n / 2;
    // Even sector: pairs ±(2j+1)π/N, all in the Bogoliubov vacuum.
    let mut e_even = p.lambda * n as f64 / 2.0;
    for j in 0..half {
        let phi = (2 * j + 1) as f64 * PI / n as f64;
        e_even += (scalar::cos(phi) - p.lambda) - dispersion(p, phi);
    }
    // Odd sector: pairs 2πj/N (0 < j < N/2) in vacuum, mode π occupied,
    // mode 0 empty by parity.
    let mut e_odd = p.lambda * n as f64 / 2.0 + (-1.0 - p.lambda);
    for j in 1..half {
        let phi = 2.0 * PI * j as f64 / n as f64;
        e_odd += (scalar::cos(phi) - p.lambda) - dispersion(p, phi);
    }
    let sector = if e_even <= e_odd + 1e-9 * (1.0 + e_even.abs()) {
        Sector::Even
    } else {
        Sector::Odd
    };
    Ok((sector, e_even, e_odd))
}

/// One entry of the majorana correlation kernel, g(d).
pub fn g_kernel(p: XYParams, d: i64, size: ChainSize) -> Result<f64> {
    match size {
        ChainSize::Thermodynamic => g_thermodynamic(p, d),
        ChainSize::Finite(n) => {
            let (sector, _, _) = finite_sector_choice(p, n)?;
            g_finite(p, n, sector, d)
        }
    }
}

fn g_thermodynamic(p: XYParams, d: i64) -> Result<f64> {
    let (gamma, lambda) = (p.gamma, p.lambda);
    if gamma == 0.0 {
        // sign(cos φ − λ) integrates in closed form.
        if lambda >= 1.0 {
            return Ok(if d == 0 { -1.0 } else { 0.0 });
        }
        if lambda <= -1.0 {
            return Ok(if d == 0 { 1.0 } else { 0.0 });
        }
        let phi_f = scalar::acos(lambda);
        if d == 0 {
            return Ok((2.0 * phi_f - PI) / PI);
        }
        let df = d as f64;
        return Ok(2.0 * scalar::sin(phi_f * df) / (PI * df));
    }
    let df = d as f64;
    let f = move |phi: f64| {
        let lam = dispersion(p, phi);
        if lam <= 0.0 {
            return 0.0;
        }
        (scalar::cos(phi * df) * (scalar::cos(phi) - lambda)
            + gamma * scalar::sin(phi * df) * scalar::sin(phi))
            / lam
    };
    let v = integrate(&f, 0.0, PI, 1e-11)?;
    Ok(v / PI)
}

fn g_finite(p: XYParams, n: usize, sector: Sector, d: i64) -> Result<f64> {
    let half = n / 2;
    let df = d as f64;
    let term = |phi: f64, occupied_flip: f64| -> Result<f64> {
        let lam = dispersion(p, phi);
        if lam <= 1e-14 {
            return Err(Error::SingularMomentum);
        }
        let re = (scalar::cos(phi * df) * (scalar::cos(phi) - p.lambda)
            + p.gamma * scalar::sin(phi * df) * scalar::sin(phi))
            / lam;
        Ok(occupied_flip * re)
    };
    let mut sum = 0.0;
    match sector {
        Sector::Even => {
            for j in 0..half {
                let phi = (2 * j + 1) as f64 * PI / n as f64;
                // ±φ pair in the vacuum; the sum over both is twice the
                // real part used here.
                sum += 2.0 * term(phi, 1.0)?;
            }
        }
        Sector::Odd => {
            for j in 1..half {
                let phi = 2.0 * PI * j as f64 / n as f64;
                sum += 2.0 * term(phi, 1.0)?;
            }
            // Mode π occupied: the vacuum value of (cos π − λ)/|..| = -1
            // already encodes occupation of the negative-energy level.
            sum += scalar::cos(PI * df) * -1.0;
            // Mode 0 is pinned empty by the sector parity (even at λ > 1,
            // where its energy would favour occupation): contribution +1.
            sum += 1.0;
        }
    }
    Ok(sum / n as f64)
}

/// L×L Toeplitz correlation kernel with entries g(n−m).
#[derive(Debug, Clone)]
pub struct CorrelationKernel {
    block: usize,
    /// g(d) for d = −(L−1)..=L−1, indexed d + L − 1.
    diagonals: Vec<f64>,
}

impl CorrelationKernel {
    pub fn block_size(&self) -> usize {
        self.block
    }

    /// Entry (n, m) = g(n − m).
    pub fn entry(&self, n: usize, m: usize) -> f64 {
        self.diagonals[(n as i64 - m as i64 + self.block as i64 - 1) as usize]
    }

    pub fn g(&self, d: i64) -> f64 {
        self.diagonals[(d + self.block as i64 - 1) as usize]
    }

    pub fn to_matrix(&self) -> DenseMatrix {
        DenseMatrix::from_real_fn(self.block, self.block, |i, j| self.entry(i, j))
    }
}

/// Correlation kernel of a block of L contiguous sites.
pub fn block_correlation(p: XYParams, block: usize, size: ChainSize) -> Result<CorrelationKernel> {
    if block == 0 {
        return Err(Error::Domain("block size must be positive"));
    }
    if let ChainSize::Finite(n) = size {
        if block > n {
            return Err(Error::Domain("block exceeds chain length"));
        }
    }
    let mut diagonals = Vec::with_capacity(2 * block - 1);
    for d in -(block as i64 - 1)..=(block as i64 - 1) {
        let v = g_kernel(p, d, size)?;
        if v.abs() > 1.0 + 1e-9 {
            return Err(Error::Consistency("kernel entry outside [-1, 1]"));
        }
        diagonals.push(v.clamp(-1.0, 1.0));
    }
    Ok(CorrelationKernel { block, diagonals })
}

/// Mode occupation spectrum of a block: ν_l and n_l = (1+ν_l)/2.
#[derive(Debug, Clone)]
pub struct BlockSpectrum {
    pub nus: Vec<f64>,
}

impl BlockSpectrum {
    pub fn occupations(&self) -> Vec<f64> {
        self.nus.iter().map(|&nu| 0.5 * (1.0 + nu)).collect()
    }

    /// Σ_l H₂((1+ν_l)/2) in bits.
    pub fn entropy_bits(&self) -> f64 {
        self.nus.iter().map(|&nu| scalar::h2(0.5 * (1.0 + nu))).sum()
    }
}

/// ν_l are the singular values of the block kernel, clamped to [0, 1].
pub fn mode_spectrum(kernel: &CorrelationKernel) -> Result<BlockSpectrum> {
    let (_, sigma, _) = svd(&kernel.to_matrix())?;
    let mut nus = Vec::with_capacity(sigma.len());
    for &s in &sigma {
        if s > 1.0 + 1e-6 {
            return Err(Error::Consistency("mode eigenvalue above one"));
        }
        nus.push(s.clamp(0.0, 1.0));
    }
    Ok(BlockSpectrum { nus })
}

/// Entanglement entropy (bits) of L contiguous sites of the ground state.
pub fn block_entropy(p: XYParams, block: usize, size: ChainSize) -> Result<f64> {
    let kernel = block_correlation(p, block, size)?;
    Ok(mode_spectrum(&kernel)?.entropy_bits())
}

/// Least-squares fit of S(L) against log₂ L; at criticality the slope is
/// (c + c̄)/6.
pub fn entropy_scaling_fit(p: XYParams, blocks: &[usize], size: ChainSize) -> Result<FitResult> {
    if blocks.len() < 2 {
        return Err(Error::Domain("need at least two block sizes"));
    }
    let xs: Vec<f64> = blocks.iter().map(|&l| scalar::log2(l as f64)).collect();
    let mut ys = Vec::with_capacity(blocks.len());
    for &l in blocks {
        ys.push(block_entropy(p, l, size)?);
    }
    linear_fit(&xs, &ys)
}

/// Asymptotic saturation value (1/6) log₂(1/m) of the blocked entropy in a
/// gapped phase.
pub fn saturation_entropy(p: XYParams) -> Result<f64> {
    let mass = fermi_analysis(p).mass;
    if mass <= 0.0 {
        return Err(Error::Domain("saturation requires a positive mass"));
    }
    Ok(scalar::log2(1.0 / mass) / 6.0)
}

/// c = 3·slope for parity-symmetric theories (c = c̄).
pub fn central_charge_from_slope(slope: f64) -> f64 {
    3.0 * slope
}

/// Output of the dense 2^N diagonalization oracle.
#[derive(Debug, Clone)]
pub struct DenseOracle {
    pub energy: f64,
    pub state: Vec<f64>,
    /// S_1 .. S_{N-1} in bits.
    pub entropies: Vec<f64>,
}

/// Brute-force ground state of the spin Hamiltonian with periodic boundary
/// conditions, N ≤ 14. With `breaking_field` = 0 the spin-flip parity
/// sectors are solved separately and the even (cat) state is reported on
/// degeneracy; a nonzero ε adds the staggered field −ε Σ (−1)^j σˣ_j, which
/// couples to the x-antiferromagnetic order parameter and forces the broken
/// branch.
pub fn dense_oracle(p: XYParams, n: usize, breaking_field: f64) -> Result<DenseOracle> {
    if n == 0 || n > 14 {
        return Err(Error::Resource("dense oracle supports 1 <= N <= 14"));
    }
    let (energy, state) = if breaking_field != 0.0 {
        spinchain::xy_full_ground(n, p.gamma, p.lambda, breaking_field, 0x5eed)?
    } else {
        let (e_even, v_even) = spinchain::xy_sector_ground(n, p.gamma, p.lambda, 1, 0x5eed)?;
        let (e_odd, v_odd) = spinchain::xy_sector_ground(n, p.gamma, p.lambda, -1, 0xf00d)?;
        if e_even <= e_odd + 1e-9 * (1.0 + e_even.abs()) {
            (e_even, v_even)
        } else {
            (e_odd, v_odd)
        }
    };
    let mut entropies = Vec::with_capacity(n - 1);
    for block in 1..n {
        entropies.push(spinchain::block_entropy_bits(&state, n, block)?);
    }
    Ok(DenseOracle {
        energy,
        state,
        entropies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const TH: ChainSize = ChainSize::Thermodynamic;

    #[test]
    fn dispersion_examples() {
        assert!(dispersion(XYParams::new(1.0, 1.0), 0.0).abs() < 1e-15);
        for phi in [0.0, 0.7, 2.0, PI] {
            assert!((dispersion(XYParams::new(1.0, 0.0), phi) - 1.0).abs() < 1e-15);
        }
        assert!(dispersion(XYParams::new(0.0, 0.0), PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn bogoliubov_examples() {
        let th = bogoliubov_angle(XYParams::new(1.0, 2.0), 0.0).unwrap();
        assert!((th - PI).abs() < 1e-12);
        let th = bogoliubov_angle(XYParams::new(1.0, 0.0), 0.0).unwrap();
        assert!(th.abs() < 1e-12);
        let th = bogoliubov_angle(XYParams::new(1.0, 0.0), PI / 2.0).unwrap();
        assert!((th - PI / 2.0).abs() < 1e-12);
        assert!(bogoliubov_angle(XYParams::new(1.0, 1.0), 0.0).is_err());
    }

    #[test]
    fn fermi_analysis_cases() {
        let f = fermi_analysis(XYParams::new(1.0, 1.0));
        assert_eq!(f.phase_label, PhaseLabel::CriticalXy);
        assert_eq!(f.fermi_points, alloc::vec![0.0]);
        assert_eq!(f.mass, 0.0);

        let f = fermi_analysis(XYParams::new(0.0, 0.5));
        assert_eq!(f.phase_label, PhaseLabel::CriticalXx);
        assert!((f.fermi_points[0] - scalar::acos(0.5)).abs() < 1e-15);
        assert!(f.mass.abs() < 1e-15);

        // λ + γ² < 1 branch: φ_F = ±arccos(2/3), m = 1/6.
        let f = fermi_analysis(XYParams::new(0.5, 0.5));
        assert_eq!(f.phase_label, PhaseLabel::Gapped2Fp);
        assert!((f.fermi_points[0] - scalar::acos(2.0 / 3.0)).abs() < 1e-15);
        assert!((f.mass - 1.0 / 6.0).abs() < 1e-15);

        let f = fermi_analysis(XYParams::new(1.0, 1.05));
        assert_eq!(f.phase_label, PhaseLabel::Gapped1Fp);
        assert!((f.mass - 0.05).abs() < 1e-12);
    }

    #[test]
    fn g_kernel_analytic_cases() {
        // γ=1, λ=0: integrand is e^{-iφ}, so g(d) = δ_{d,1}.
        let p = XYParams::new(1.0, 0.0);
        for d in -3i64..=3 {
            let g = g_kernel(p, d, TH).unwrap();
            let expect = if d == 1 { 1.0 } else { 0.0 };
            assert!((g - expect).abs() < 1e-10, "d={d}: {g}");
        }
        // γ=1, λ→∞: integrand → −1 pointwise.
        let g = g_kernel(XYParams::new(1.0, 1e6), 0, TH).unwrap();
        assert!((g + 1.0).abs() < 1e-6);
        // XX at zero field: g(0) = 0.
        let g = g_kernel(XYParams::new(0.0, 0.0), 0, TH).unwrap();
        assert!(g.abs() < 1e-14);
    }

    #[test]
    fn critical_ising_kernel_closed_form() {
        // At γ=1, λ=1 the integrand reduces to sin((d−1/2)φ), giving
        // g(d) = 1/(π(d−1/2)).
        let p = XYParams::new(1.0, 1.0);
        for d in -4i64..=4 {
            let g = g_kernel(p, d, TH).unwrap();
            let expect = 1.0 / (PI * (d as f64 - 0.5));
            assert!((g - expect).abs() < 1e-9, "d={d}: {g} vs {expect}");
        }
    }

    #[test]
    fn block_correlation_cases() {
        let k = block_correlation(XYParams::new(1.0, 0.0), 3, TH).unwrap();
        for n in 0..3usize {
            for m in 0..3usize {
                let expect = if n as i64 - m as i64 == 1 { 1.0 } else { 0.0 };
                assert!((k.entry(n, m) - expect).abs() < 1e-9);
            }
        }
        let k = block_correlation(XYParams::new(0.7, 0.3), 1, TH).unwrap();
        assert_eq!(k.block_size(), 1);
        let k = block_correlation(XYParams::new(1.0, 1e6), 2, TH).unwrap();
        assert!((k.entry(0, 0) + 1.0).abs() < 1e-5);
        assert!(k.entry(0, 1).abs() < 1e-5);
    }

    #[test]
    fn mode_spectrum_cases() {
        // L=1 kernel holding 0 -> ν = 0, occupation 1/2.
        let k = CorrelationKernel {
            block: 1,
            diagonals: alloc::vec![0.0],
        };
        let s = mode_spectrum(&k).unwrap();
        assert!(s.nus[0].abs() < 1e-15);
        assert!((s.occupations()[0] - 0.5).abs() < 1e-15);

        // The L=4 shift kernel has singular values (1,1,1,0).
        let k = block_correlation(XYParams::new(1.0, 0.0), 4, TH).unwrap();
        let s = mode_spectrum(&k).unwrap();
        assert!((s.nus[0] - 1.0).abs() < 1e-9);
        assert!((s.nus[2] - 1.0).abs() < 1e-9);
        assert!(s.nus[3].abs() < 1e-9);
    }

    #[test]
    fn block_entropy_landmarks() {
        // Ising at zero field: exactly one bit (cat state) for any L.
        for l in [1usize, 2, 5] {
            let s = block_entropy(XYParams::new(1.0, 0.0), l, TH).unwrap();
            assert!((s - 1.0).abs() < 1e-8, "L={l}: {s}");
        }
        // Strongly polarized: entropy negligible and falling with the field
        // (0.0152 bits at λ=10, twice that at the kernel-oracle agreement
        // level; below 0.01 from λ≈13 on).
        let s10 = block_entropy(XYParams::new(1.0, 10.0), 10, TH).unwrap();
        assert!(s10 < 0.02);
        let s20 = block_entropy(XYParams::new(1.0, 20.0), 10, TH).unwrap();
        assert!(s20 < 0.01 && s20 < s10);
        // Critical XX landmarks. Exact small blocks: S(1) = H₂(1/2) = 1 and
        // S(2) = 2 H₂(1/2 + 1/π) from the two-site occupations 1/2 ± 1/π.
        let xx = XYParams::new(0.0, 0.0);
        let s1 = block_entropy(xx, 1, TH).unwrap();
        assert!((s1 - 1.0).abs() < 1e-10);
        let s2 = block_entropy(xx, 2, TH).unwrap();
        let expect2 = 2.0 * scalar::h2(0.5 + 1.0 / PI);
        assert!((s2 - expect2).abs() < 1e-9, "{s2} vs {expect2}");
        // The growth obeys (1/3) log₂ L: S(64) − S(8) = 1 up to tiny
        // finite-size wiggle, on top of a universal additive constant
        // (about 1.047 bits) that the log law does not fix.
        let s8 = block_entropy(xx, 8, TH).unwrap();
        let s64 = block_entropy(xx, 64, TH).unwrap();
        assert!((s64 - s8 - 1.0).abs() < 0.01, "{}", s64 - s8);
        assert!((s64 - 3.0475).abs() < 0.01, "got {s64}");
    }

    #[test]
    fn saturation_and_central_charge() {
        assert!(saturation_entropy(XYParams::new(1.0, 2.0)).unwrap().abs() < 1e-15);
        let s = saturation_entropy(XYParams::new(1.0, 1.05)).unwrap();
        assert!((s - scalar::log2(1.0 / 0.05) / 6.0).abs() < 1e-12);
        // m = 1/64 -> exactly one bit.
        let p = XYParams::new(1.0, 1.0 + 1.0 / 64.0);
        assert!((saturation_entropy(p).unwrap() - 1.0).abs() < 1e-12);
        assert!(saturation_entropy(XYParams::new(1.0, 1.0)).is_err());

        assert!((central_charge_from_slope(1.0 / 3.0) - 1.0).abs() < 1e-15);
        assert!((central_charge_from_slope(1.0 / 6.0) - 0.5).abs() < 1e-15);
        assert_eq!(central_charge_from_slope(0.0), 0.0);
    }

    #[test]
    fn dense_oracle_landmarks() {
        let o = dense_oracle(XYParams::new(1.0, 0.0), 8, 0.0).unwrap();
        assert!((o.energy + 4.0).abs() < 1e-9);
        // Cat state: every block carries one bit.
        for s in &o.entropies {
            assert!((s - 1.0).abs() < 1e-7, "{s}");
        }
        let o = dense_oracle(XYParams::new(1.0, 10.0), 8, 0.0).unwrap();
        assert!(o.entropies[3] < 0.02);
        let o = dense_oracle(XYParams::new(1.0, 20.0), 8, 0.0).unwrap();
        assert!(o.entropies[3] < 0.01);
        // A small x-field collapses the cat.
        let o = dense_oracle(XYParams::new(1.0, 0.0), 8, 0.05).unwrap();
        assert!(o.entropies[3] < 0.2, "got {}", o.entropies[3]);
        assert!(dense_oracle(XYParams::new(1.0, 0.0), 15, 0.0).is_err());
    }

    #[test]
    fn oracle_duality_and_concavity() {
        let o = dense_oracle(XYParams::new(0.5, 0.5), 8, 0.0).unwrap();
        let n = 8;
        for l in 1..n {
            let dual = o.entropies[n - l - 1];
            assert!((o.entropies[l - 1] - dual).abs() < 1e-9);
        }
        for l in 2..n - 1 {
            let avg = 0.5 * (o.entropies[l - 2] + o.entropies[l]);
            assert!(o.entropies[l - 1] + 1e-9 >= avg);
        }
    }

    #[test]
    fn finite_kernel_matches_dense_oracle() {
        // The central correctness gate at small size: correlation-matrix
        // block entropies against brute-force diagonalization.
        let n = 8;
        for (gamma, lambda) in [(1.0, 0.5), (1.0, 1.5), (0.5, 0.0), (0.0, 0.3)] {
            let p = XYParams::new(gamma, lambda);
            let oracle = dense_oracle(p, n, 0.0).unwrap();
            for block in 1..n {
                let s = block_entropy(p, block, ChainSize::Finite(n)).unwrap();
                let diff = (s - oracle.entropies[block - 1]).abs();
                assert!(
                    diff < 1e-6,
                    "γ={gamma} λ={lambda} L={block}: kernel {s} vs dense {}",
                    oracle.entropies[block - 1]
                );
            }
        }
    }

    #[test]
    fn finite_sector_energies_match_oracle() {
        for (gamma, lambda) in [(1.0, 0.5), (1.0, 1.5), (0.5, 0.5)] {
            let p = XYParams::new(gamma, lambda);
            let (_, e_even, e_odd) = finite_sector_choice(p, 8).unwrap();
            let oracle = dense_oracle(p, 8, 0.0).unwrap();
            assert!(
                (e_even.min(e_odd) - oracle.energy).abs() < 1e-8,
                "γ={gamma} λ={lambda}: {} vs {}",
                e_even.min(e_odd),
                oracle.energy
            );
        }
    }

    #[test]
    fn thermodynamic_xx_field_offset() {
        // S(L,0,λ) − S(L,0,0) → (1/6) log₂(1−λ²).
        let l = 100;
        let s0 = block_entropy(XYParams::new(0.0, 0.0), l, TH).unwrap();
        for lambda in [0.3, 0.6] {
            let s = block_entropy(XYParams::new(0.0, lambda), l, TH).unwrap();
            let predicted = scalar::log2(1.0 - lambda * lambda) / 6.0;
            assert!(
                ((s - s0) - predicted).abs() < 0.02,
                "λ={lambda}: {} vs {predicted}",
                s - s0
            );
        }
    }
}
