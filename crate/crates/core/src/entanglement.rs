//! Bipartite entanglement order relations and renormalization-flow audits.
//!
//! Schmidt decompositions, von Neumann entropy, majorization partial sums,
//! the doubly stochastic weights connecting fermionic mode spectra, the
//! elliptic-integral dispersion of the Ising chain's reduced density matrix,
//! and the discrete central-charge data of unitary minimal models.

use crate::numerics::{elliptic_k, svd, C64, DenseMatrix};
use crate::scalar;
use crate::{Error, Result};
use alloc::vec::Vec;

/// A normalized probability vector (unit sum within 1e-10).
#[derive(Debug, Clone, PartialEq)]
pub struct ProbVector {
    entries: Vec<f64>,
}

impl ProbVector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.iter().any(|&p| !(p >= -1e-12) || !p.is_finite()) {
            return Err(Error::Domain("probabilities must be nonnegative"));
        }
        let sum: f64 = entries.iter().sum();
        if (sum - 1.0).abs() > 1e-10 {
            return Err(Error::Domain("probabilities must sum to one"));
        }
        Ok(ProbVector { entries })
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Shannon entropy in bits.
    pub fn entropy_bits(&self) -> f64 {
        -self.entries.iter().map(|&p| scalar::xlog2x(p)).sum::<f64>()
    }

    fn sorted_descending(&self) -> Vec<f64> {
        let mut v = self.entries.clone();
        v.sort_by(|a, b| b.partial_cmp(a).unwrap());
        v
    }
}

/// Is x majorized by y (x ≺ y)? All descending partial sums of x bounded by
/// those of y; shorter vectors are zero-padded.
pub fn majorizes(x: &ProbVector, y: &ProbVector) -> bool {
    let xs = x.sorted_descending();
    let ys = y.sorted_descending();
    let n = xs.len().max(ys.len());
    let mut px = 0.0f64;
    let mut py = 0.0f64;
    for i in 0..n {
        px += xs.get(i).copied().unwrap_or(0.0);
        py += ys.get(i).copied().unwrap_or(0.0);
        if px > py + 1e-12 {
            return false;
        }
    }
    (px - py).abs() <= 1e-10
}

/// Schmidt data of a bipartite pure state.
#[derive(Debug, Clone)]
pub struct SchmidtDecomposition {
    /// Descending nonnegative coefficients with Σ μ² = 1.
    pub coefficients: Vec<f64>,
    /// Number of coefficients above the 1e-12 cutoff.
    pub rank: usize,
}

/// Schmidt decomposition of `state` in H_A ⊗ H_B with dim(A)=dim_a,
/// dim(B)=dim_b; index convention state[a*dim_b + b].
pub fn schmidt(state: &[C64], dim_a: usize, dim_b: usize) -> Result<SchmidtDecomposition> {
    if state.len() != dim_a * dim_b {
        return Err(Error::Dimension {
            expected: dim_a * dim_b,
            found: state.len(),
        });
    }
    let norm2: f64 = state.iter().map(|z| z.norm_sqr()).sum();
    if (norm2 - 1.0).abs() > 1e-8 {
        return Err(Error::Domain("state must be normalized"));
    }
    let m = DenseMatrix::from_fn(dim_a, dim_b, |a, b| state[a * dim_b + b]);
    let (_, sigma, _) = svd(&m)?;
    let rank = sigma.iter().filter(|&&s| s > 1e-12).count();
    Ok(SchmidtDecomposition {
        coefficients: sigma,
        rank,
    })
}

/// Entanglement entropy in bits: −Σ μ² log₂ μ².
pub fn entanglement_entropy(s: &SchmidtDecomposition) -> f64 {
    -s.coefficients
        .iter()
        .map(|&mu| scalar::xlog2x(mu * mu))
        .sum::<f64>()
}

/// Spectrum (1, e^{−ω})/(1 + e^{−ω}) of a single fermionic mode.
pub fn mode_probs(omega: f64) -> Result<ProbVector> {
    if omega < 0.0 {
        return Err(Error::Domain("mode energy must be nonnegative"));
    }
    let w = scalar::exp(-omega);
    ProbVector::new(alloc::vec![1.0 / (1.0 + w), w / (1.0 + w)])
}

/// Mixing weights (p0, p1) such that
/// Λ(ρ_ω) = p0 Λ(ρ_ω̃) + p1 P Λ(ρ_ω̃) with the swap P.
///
/// `None` signals that no doubly stochastic map exists in this direction
/// (majorization fails).
pub fn doubly_stochastic_weights(omega: f64, omega_tilde: f64) -> Result<Option<(f64, f64)>> {
    if omega_tilde <= 0.0 {
        return Err(Error::Domain("target mode energy must be positive"));
    }
    let e = scalar::exp(-omega);
    let et = scalar::exp(-omega_tilde);
    let front = (1.0 + et) / (1.0 + e);
    let p0 = front * (1.0 - et * e) / (1.0 - et * et);
    let p1 = front * (e - et) / (1.0 - et * et);
    let valid = (-1e-10..=1.0 + 1e-10).contains(&p0)
        && (-1e-10..=1.0 + 1e-10).contains(&p1)
        && (p0 + p1 - 1.0).abs() <= 1e-10;
    Ok(if valid { Some((p0, p1)) } else { None })
}

/// Checks 0 ≤ (∂ω̃/∂τ)·Δτ / (e^{ω̃} − e^{−ω̃}) ≤ 1 on every listed mode,
/// the mode-by-mode condition for majorization along an infinitesimal step
/// of the flow parameter. Modes with ω̃ = 0 are rejected; exclude them.
pub fn infinitesimal_flow_check(
    dispersion: &impl Fn(usize, f64) -> f64,
    tau: f64,
    dtau: f64,
    modes: &[usize],
) -> Result<bool> {
    let h = dtau.abs() / 10.0;
    if h == 0.0 {
        return Err(Error::Domain("step must be nonzero"));
    }
    let tau_t = tau + dtau;
    for &j in modes {
        let wt = dispersion(j, tau_t);
        if wt <= 0.0 {
            return Err(Error::Domain(
                "zero mode in infinitesimal check; exclude it explicitly",
            ));
        }
        let deriv = (dispersion(j, tau_t + h) - dispersion(j, tau_t - h)) / (2.0 * h);
        let quantity = deriv * dtau / (scalar::exp(wt) - scalar::exp(-wt));
        if !(-1e-12..=1.0 + 1e-12).contains(&quantity) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Single-mode energies of the Ising chain's reduced density matrix,
/// ω_j = (2j+1)π K(√(1−λ⁻²))/K(1/λ) for λ>1 and 2jπ K(√(1−λ²))/K(λ) for λ<1.
pub fn ising_mode_dispersion(lambda: f64, j: usize) -> Result<f64> {
    if lambda <= 0.0 {
        return Err(Error::Domain("field must be positive"));
    }
    if lambda == 1.0 {
        return Err(Error::Domain("dispersion is singular at the critical field"));
    }
    if lambda > 1.0 {
        let inv = 1.0 / lambda;
        let ratio = elliptic_k(scalar::sqrt(1.0 - inv * inv))? / elliptic_k(inv)?;
        Ok((2 * j + 1) as f64 * core::f64::consts::PI * ratio)
    } else {
        let ratio = elliptic_k(scalar::sqrt(1.0 - lambda * lambda))? / elliptic_k(lambda)?;
        Ok(2.0 * j as f64 * core::f64::consts::PI * ratio)
    }
}

/// Spectrum of the M lowest fermionic modes as a 2^M probability vector
/// (tensor product of per-mode pairs).
pub fn truncated_spectrum(lambda: f64, modes: usize) -> Result<ProbVector> {
    if modes == 0 || modes > 16 {
        return Err(Error::Domain("mode count must be in 1..=16"));
    }
    let mut probs = alloc::vec![1.0f64];
    for j in 0..modes {
        let omega = ising_mode_dispersion(lambda, j)?;
        let pm = mode_probs(omega)?;
        let mut next = Vec::with_capacity(probs.len() * 2);
        for &p in &probs {
            next.push(p * pm.entries()[0]);
            next.push(p * pm.entries()[1]);
        }
        probs = next;
    }
    let sum: f64 = probs.iter().sum();
    for p in &mut probs {
        *p /= sum;
    }
    ProbVector::new(probs)
}

/// One step of a majorization audit along a field path.
#[derive(Debug, Clone)]
pub struct FlowStep {
    pub lambda_from: f64,
    pub lambda_to: f64,
    pub majorized: bool,
    pub entropy_from: f64,
    pub entropy_to: f64,
    /// Largest reconstruction error of the per-mode doubly stochastic
    /// weights, or `None` when some mode admits no valid weights.
    pub weight_reconstruction: Option<f64>,
}

impl FlowStep {
    pub fn entropy_non_increasing(&self) -> bool {
        self.entropy_to <= self.entropy_from + 1e-12
    }

    pub fn passes(&self) -> bool {
        self.majorized && self.entropy_non_increasing() && self.weight_reconstruction.is_some()
    }
}

/// Audit report over a monotone field path on one side of the critical point.
#[derive(Debug, Clone)]
pub struct FlowAudit {
    pub steps: Vec<FlowStep>,
}

impl FlowAudit {
    pub fn all_pass(&self) -> bool {
        self.steps.iter().all(|s| s.passes())
    }

    pub fn violations(&self) -> usize {
        self.steps.iter().filter(|s| !s.passes()).count()
    }
}

/// Walk consecutive pairs of `lambda_path`, checking truncated-spectrum
/// majorization, entropy monotonicity and per-mode doubly stochastic
/// reconstructions. The path must not touch or cross λ = 1.
pub fn flow_majorization_audit(lambda_path: &[f64], modes: usize) -> Result<FlowAudit> {
    if lambda_path.is_empty() {
        return Err(Error::Domain("empty field path"));
    }
    let above = lambda_path[0] > 1.0;
    for &l in lambda_path {
        if l <= 0.0 || l == 1.0 || (l > 1.0) != above {
            return Err(Error::Domain("path must stay on one side of the critical field"));
        }
    }
    let mut steps = Vec::new();
    for w in lambda_path.windows(2) {
        let (from, to) = (w[0], w[1]);
        let spec_from = truncated_spectrum(from, modes)?;
        let spec_to = truncated_spectrum(to, modes)?;
        let majorized = majorizes(&spec_from, &spec_to);

        // Per-mode doubly stochastic reconstruction ω(from) from ω(to);
        // the zero mode below the critical field is excluded (its spectrum
        // is exactly (1/2, 1/2) on both sides).
        let j_start = if above { 0 } else { 1 };
        let mut worst: Option<f64> = Some(0.0);
        for j in j_start..modes {
            let w_from = ising_mode_dispersion(from, j)?;
            let w_to = ising_mode_dispersion(to, j)?;
            match doubly_stochastic_weights(w_from, w_to)? {
                Some((p0, p1)) => {
                    let target = mode_probs(w_from)?;
                    let source = mode_probs(w_to)?;
                    let r0 = p0 * source.entries()[0] + p1 * source.entries()[1];
                    let r1 = p0 * source.entries()[1] + p1 * source.entries()[0];
                    let err = (r0 - target.entries()[0])
                        .abs()
                        .max((r1 - target.entries()[1]).abs());
                    worst = worst.map(|w| w.max(err));
                }
                None => {
                    worst = None;
                    break;
                }
            }
        }
        steps.push(FlowStep {
            lambda_from: from,
            lambda_to: to,
            majorized,
            entropy_from: spec_from.entropy_bits(),
            entropy_to: spec_to.entropy_bits(),
            weight_reconstruction: worst,
        });
    }
    Ok(FlowAudit { steps })
}

/// Central charge of the m-th unitary minimal model, c = 1 − 6/(m(m+1)).
pub fn kac_central_charge(m: u32) -> Result<f64> {
    if m < 3 {
        return Err(Error::Domain("minimal models require m >= 3"));
    }
    let mf = m as f64;
    Ok(1.0 - 6.0 / (mf * (mf + 1.0)))
}

/// Conformal weight Δ_{p,q}(m) = (((m+1)p − mq)² − 1)/(4m(m+1)).
pub fn kac_weight(m: u32, p: u32, q: u32) -> Result<f64> {
    if m < 3 || q < 1 || p < q || p > m - 1 {
        return Err(Error::Domain("Kac indices require 1 <= q <= p <= m-1"));
    }
    let (mf, pf, qf) = (m as f64, p as f64, q as f64);
    let num = (mf + 1.0) * pf - mf * qf;
    Ok((num * num - 1.0) / (4.0 * mf * (mf + 1.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn schmidt_product_and_singlet() {
        let product = vec![
            C64::new(1.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
        ];
        let s = schmidt(&product, 2, 2).unwrap();
        assert_eq!(s.rank, 1);
        assert!(entanglement_entropy(&s).abs() < 1e-12);

        let h = core::f64::consts::FRAC_1_SQRT_2;
        let singlet = vec![
            C64::new(0.0, 0.0),
            C64::new(h, 0.0),
            C64::new(-h, 0.0),
            C64::new(0.0, 0.0),
        ];
        let s = schmidt(&singlet, 2, 2).unwrap();
        assert_eq!(s.rank, 2);
        assert!((s.coefficients[0] - h).abs() < 1e-12);
        assert!((entanglement_entropy(&s) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn schmidt_marginals_share_spectrum() {
        // Random 3x3 bipartite state: both partial traces must have the μ²
        // spectrum; the B-side is computed by a direct partial-trace oracle.
        let mut seed = 42u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        let mut state: Vec<C64> = (0..9).map(|_| C64::new(next(), next())).collect();
        let norm = scalar::sqrt(state.iter().map(|z| z.norm_sqr()).sum());
        for z in &mut state {
            *z /= norm;
        }
        let s = schmidt(&state, 3, 3).unwrap();
        // Partial trace over A: (ρ_B)_{b b'} = Σ_a ψ*_{a b'} ψ_{a b}
        let rho_b = DenseMatrix::from_fn(3, 3, |b, bp| {
            (0..3).map(|a| state[a * 3 + bp].conj() * state[a * 3 + b]).sum()
        });
        let (vals, _) = crate::numerics::hermitian_eigen(&rho_b).unwrap();
        let mut mu2: Vec<f64> = s.coefficients.iter().map(|m| m * m).collect();
        mu2.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (v, m2) in vals.iter().zip(&mu2) {
            assert!((v - m2).abs() < 1e-12);
        }
    }

    #[test]
    fn majorization_extremes() {
        let n = 5;
        let uniform = ProbVector::new(vec![1.0 / n as f64; n]).unwrap();
        let pure = ProbVector::new(vec![1.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        let x = ProbVector::new(vec![0.4, 0.3, 0.2, 0.1, 0.0]).unwrap();
        assert!(majorizes(&uniform, &x));
        assert!(majorizes(&x, &pure));
        assert!(majorizes(&x, &x));
        assert!(!majorizes(&pure, &uniform));
    }

    #[test]
    fn majorization_partial_sums_example() {
        let x = ProbVector::new(vec![0.5, 0.3, 0.2]).unwrap();
        let y = ProbVector::new(vec![0.6, 0.2, 0.2]).unwrap();
        assert!(majorizes(&x, &y));
        assert!(!majorizes(&y, &x));
    }

    #[test]
    fn mode_probabilities() {
        let p = mode_probs(0.0).unwrap();
        assert!((p.entries()[0] - 0.5).abs() < 1e-15);
        let p = mode_probs(scalar::ln(3.0)).unwrap();
        assert!((p.entries()[0] - 0.75).abs() < 1e-14);
        assert!((p.entries()[1] - 0.25).abs() < 1e-14);
        let p = mode_probs(500.0).unwrap();
        assert!((p.entries()[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn stochastic_weights_identity_and_direction() {
        let (p0, p1) = doubly_stochastic_weights(0.8, 0.8).unwrap().unwrap();
        assert!((p0 - 1.0).abs() < 1e-12 && p1.abs() < 1e-12);

        // ω̃ > ω: valid mixing, reconstruction exact.
        let (p0, p1) = doubly_stochastic_weights(0.5, 1.5).unwrap().unwrap();
        assert!(p0 > 0.0 && p0 < 1.0 && p1 > 0.0 && p1 < 1.0);
        let target = mode_probs(0.5).unwrap();
        let source = mode_probs(1.5).unwrap();
        let r0 = p0 * source.entries()[0] + p1 * source.entries()[1];
        let r1 = p0 * source.entries()[1] + p1 * source.entries()[0];
        assert!((r0 - target.entries()[0]).abs() < 1e-12);
        assert!((r1 - target.entries()[1]).abs() < 1e-12);

        // ω̃ < ω: impossible direction.
        assert!(doubly_stochastic_weights(1.5, 0.5).unwrap().is_none());
        assert!(doubly_stochastic_weights(1.0, 0.0).is_err());
    }

    #[test]
    fn ising_dispersion_values() {
        // λ<1, j=0 is the exact zero mode.
        assert_eq!(ising_mode_dispersion(0.5, 0).unwrap(), 0.0);
        // λ=2, j=0 -> π K(√0.75)/K(0.5).
        let expect = core::f64::consts::PI
            * (elliptic_k(scalar::sqrt(0.75)).unwrap() / elliptic_k(0.5).unwrap());
        assert!((ising_mode_dispersion(2.0, 0).unwrap() - expect).abs() < 1e-13);
        // Monotone in the field above the transition.
        for j in 0..6 {
            assert!(
                ising_mode_dispersion(3.0, j).unwrap() > ising_mode_dispersion(2.0, j).unwrap()
            );
        }
        assert!(ising_mode_dispersion(1.0, 2).is_err());
    }

    #[test]
    fn flow_constant_dispersion_passes() {
        let disp = |j: usize, _tau: f64| 1.0 + j as f64;
        assert!(infinitesimal_flow_check(&disp, 0.3, 1e-3, &[0, 1, 2]).unwrap());
    }

    #[test]
    fn ising_flow_infinitesimal_check() {
        // Mass-increasing flow above the critical field: τ ≡ m = λ − 1.
        let disp = |j: usize, m: f64| ising_mode_dispersion(1.0 + m, j).unwrap();
        let modes: Vec<usize> = (0..8).collect();
        assert!(infinitesimal_flow_check(&disp, 0.1, 1e-3, &modes).unwrap());
        // Reversed step with increasing dispersion fails.
        assert!(!infinitesimal_flow_check(&disp, 0.1, -1e-3, &modes).unwrap());
    }

    #[test]
    fn truncated_spectrum_structure() {
        let p = truncated_spectrum(0.5, 1).unwrap();
        assert!((p.entries()[0] - 0.5).abs() < 1e-12);
        // Product structure at M=2, λ=2 against explicit per-mode factors.
        let p = truncated_spectrum(2.0, 2).unwrap();
        let m0 = mode_probs(ising_mode_dispersion(2.0, 0).unwrap()).unwrap();
        let m1 = mode_probs(ising_mode_dispersion(2.0, 1).unwrap()).unwrap();
        for (idx, &v) in p.entries().iter().enumerate() {
            let expect = m0.entries()[idx >> 1] * m1.entries()[idx & 1];
            assert!((v - expect).abs() < 1e-12);
        }
        // Deep in the polarized phase the spectrum is nearly pure; the
        // leading correction is e^{-ω₀(λ)}, about 2.5e-5 at λ=50.
        let p = truncated_spectrum(50.0, 4).unwrap();
        assert!(p.entries()[0] > 1.0 - 1e-4);
        assert!(p.entropy_bits() < 1e-3);
    }

    #[test]
    fn audit_forward_and_reverse() {
        let path: Vec<f64> = (0..=10).map(|i| 1.05 + 0.045 * i as f64).collect();
        let audit = flow_majorization_audit(&path, 8).unwrap();
        assert!(audit.all_pass());
        for s in &audit.steps {
            assert!(s.entropy_to < s.entropy_from);
            assert!(s.weight_reconstruction.unwrap() < 1e-12);
        }
        let mut rev = path.clone();
        rev.reverse();
        let audit = flow_majorization_audit(&rev, 8).unwrap();
        assert!(audit.violations() == audit.steps.len());

        // Below the critical field the flow follows decreasing λ (mass
        // m = 1 − λ increases), zero mode excluded from the weight check.
        let down: Vec<f64> = (0..=8).map(|i| 0.9 - 0.05 * i as f64).collect();
        let audit = flow_majorization_audit(&down, 8).unwrap();
        assert!(audit.all_pass());

        assert!(flow_majorization_audit(&[], 8).is_err());
        assert!(flow_majorization_audit(&[0.9, 1.1], 8).is_err());
        let single = flow_majorization_audit(&[1.3], 8).unwrap();
        assert!(single.all_pass() && single.steps.is_empty());
    }

    #[test]
    fn schur_concavity_on_flow() {
        // Majorization implies entropy ordering on audited spectra.
        for (a, b) in [(1.1, 1.3), (1.05, 2.0), (0.9, 0.5)] {
            let x = truncated_spectrum(a, 8).unwrap();
            let y = truncated_spectrum(b, 8).unwrap();
            assert!(majorizes(&x, &y));
            assert!(x.entropy_bits() >= y.entropy_bits());
        }
    }

    #[test]
    fn kac_values() {
        assert!((kac_central_charge(3).unwrap() - 0.5).abs() < 1e-15);
        assert!((kac_central_charge(100000).unwrap() - 1.0).abs() < 1e-8);
        for m in 3..10 {
            assert_eq!(kac_weight(m, 1, 1).unwrap(), 0.0);
        }
        assert!(kac_weight(3, 3, 1).is_err());
        assert!(kac_central_charge(2).is_err());
    }
}
