//! Adaptive Simpson quadrature.

use crate::{Error, Result};

/// Integrate `f` over [a, b] to absolute tolerance `tol`.
pub fn integrate(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    let v = adaptive(f, a, b, fa, fm, fb, whole, tol, 48)?;
    Ok(v)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adaptive(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let err = left + right - whole;
    if err.abs() <= 15.0 * tol || (b - a).abs() < 1e-14 {
        return Ok(left + right + err / 15.0);
    }
    if depth == 0 {
        return Err(Error::NonConvergence {
            what: "adaptive quadrature",
            residual: err.abs(),
        });
    }
    let lv = adaptive(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?;
    let rv = adaptive(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?;
    Ok(lv + rv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar;

    #[test]
    fn polynomial_exact() {
        let v = integrate(&|x| x * x * x - 2.0 * x + 1.0, -1.0, 2.0, 1e-12).unwrap();
        // ∫ = x⁴/4 - x² + x
        let exact = (16.0 / 4.0 - 4.0 + 2.0) - (0.25 - 1.0 - 1.0);
        assert!((v - exact).abs() < 1e-12);
    }

    #[test]
    fn oscillatory() {
        let v = integrate(&|x| scalar::sin(10.0 * x), 0.0, core::f64::consts::PI, 1e-12).unwrap();
        let exact = (1.0 - scalar::cos(10.0 * core::f64::consts::PI)) / 10.0;
        assert!((v - exact).abs() < 1e-11);
    }

    #[test]
    fn kink_integrand() {
        let v = integrate(&|x: f64| x.abs(), -1.0, 1.0, 1e-12).unwrap();
        assert!((v - 1.0).abs() < 1e-11);
    }
}
