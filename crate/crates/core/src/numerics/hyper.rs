//! Hypergeometric block-occupation probabilities.
//!
//! Binomials are evaluated in log space (compensated summation of ln i!) so
//! system sizes of a few thousand stay well inside f64 range.

use crate::scalar;
use crate::{Error, Result};
use alloc::vec::Vec;

/// ln C(n, k) from a compensated ln-factorial accumulation.
pub fn ln_binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

fn ln_factorial(n: usize) -> f64 {
    // Kahan-compensated sum of ln i; exact enough for n ~ 10^4.
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for i in 2..=n {
        let term = scalar::ln(i as f64);
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    sum
}

/// Probability of finding `l` up-spins in a block of `L` sites, given `n`
/// up-spins among `N` total: C(L,l)·C(N−L,n−l)/C(N,n).
///
/// Returns 0 for impossible splits (l > L, l > n, or n − l > N − L).
pub fn hypergeometric_pmf(total: usize, ups: usize, block: usize, block_ups: usize) -> Result<f64> {
    if block > total || ups > total {
        return Err(Error::Domain("hypergeometric bounds: need L <= N and n <= N"));
    }
    if block_ups > block || block_ups > ups || ups - block_ups > total - block {
        return Ok(0.0);
    }
    let ln_p = ln_binomial(block, block_ups) + ln_binomial(total - block, ups - block_ups)
        - ln_binomial(total, ups);
    Ok(scalar::exp(ln_p))
}

/// Full probability row p_l for l = 0..=L, normalized to unit sum.
///
/// Uses the ratio recurrence anchored at the distribution mode, so the row is
/// stable for N in the thousands and sums to 1 by construction.
pub fn hypergeometric_row(total: usize, ups: usize, block: usize) -> Result<Vec<f64>> {
    if block > total || ups > total {
        return Err(Error::Domain("hypergeometric bounds: need L <= N and n <= N"));
    }
    let mut row = alloc::vec![0.0f64; block + 1];
    let l_min = ups.saturating_sub(total - block);
    let l_max = block.min(ups);
    // Mode of the distribution.
    let mode = (((ups + 1) * (block + 1)) as f64 / (total + 2) as f64) as usize;
    let mode = mode.clamp(l_min, l_max);

    row[mode] = 1.0;
    // p_{l+1}/p_l = (L-l)(n-l) / ((l+1)(N-L-n+l+1)); the denominator factor
    // is ordered to stay nonnegative in usize for l >= l_min.
    let ratio_up = |l: usize| {
        ((block - l) as f64 * (ups - l) as f64)
            / ((l + 1) as f64 * (total - block + l + 1 - ups) as f64)
    };
    let mut v = 1.0f64;
    for l in mode..l_max {
        v *= ratio_up(l);
        row[l + 1] = v;
    }
    v = 1.0;
    for l in (l_min..mode).rev() {
        v /= ratio_up(l);
        row[l] = v;
    }
    let sum: f64 = row.iter().sum();
    for p in &mut row {
        *p /= sum;
    }
    Ok(row)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_site_split() {
        // N=4, n=2, L=2 -> (1/6, 2/3, 1/6)
        let p: Vec<f64> = (0..=2)
            .map(|l| hypergeometric_pmf(4, 2, 2, l).unwrap())
            .collect();
        assert!((p[0] - 1.0 / 6.0).abs() < 1e-14);
        assert!((p[1] - 2.0 / 3.0).abs() < 1e-14);
        assert!((p[2] - 1.0 / 6.0).abs() < 1e-14);
    }

    #[test]
    fn impossible_split_is_zero() {
        assert_eq!(hypergeometric_pmf(10, 2, 5, 3).unwrap(), 0.0);
        assert_eq!(hypergeometric_pmf(10, 10, 1, 0).unwrap(), 0.0);
    }

    #[test]
    fn normalization() {
        let s: f64 = (0..=3)
            .map(|l| hypergeometric_pmf(10, 5, 3, l).unwrap())
            .sum();
        assert!((s - 1.0).abs() < 1e-12);
        let row = hypergeometric_row(2000, 1000, 500).unwrap();
        let s: f64 = row.iter().sum();
        assert!((s - 1.0).abs() < 1e-14);
    }

    #[test]
    fn row_matches_pmf() {
        let row = hypergeometric_row(40, 17, 11).unwrap();
        for (l, &p) in row.iter().enumerate() {
            let direct = hypergeometric_pmf(40, 17, 11, l).unwrap();
            assert!((p - direct).abs() < 1e-12, "l={l}");
        }
    }

    #[test]
    fn matches_exhaustive_enumeration() {
        // Enumerate all C(N, n) configurations and split into L | N-L halves.
        for (total, ups, block) in [(8usize, 3usize, 4usize), (10, 5, 3), (12, 6, 6)] {
            let mut counts = alloc::vec![0u64; block + 1];
            let mut total_count = 0u64;
            for bits in 0u32..(1 << total) {
                if bits.count_ones() as usize != ups {
                    continue;
                }
                total_count += 1;
                let in_block = (bits & ((1 << block) - 1)).count_ones() as usize;
                counts[in_block] += 1;
            }
            for l in 0..=block {
                let p = hypergeometric_pmf(total, ups, block, l).unwrap();
                let exact = counts[l] as f64 / total_count as f64;
                assert!((p - exact).abs() < 1e-12, "N={total} n={ups} L={block} l={l}");
            }
        }
    }

    #[test]
    fn invalid_bounds_error() {
        assert!(hypergeometric_pmf(4, 5, 2, 1).is_err());
        assert!(hypergeometric_pmf(4, 2, 5, 1).is_err());
    }
}
