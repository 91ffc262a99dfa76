//! Least-squares line fits.

use crate::{Error, Result};

/// Result of a least-squares line fit y ≈ slope·x + intercept.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    /// Largest |y_i − (slope·x_i + intercept)| over the fitted points.
    pub max_abs_residual: f64,
}

/// Fit a line through (xs, ys); requires at least two distinct abscissae.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Result<FitResult> {
    if xs.len() != ys.len() {
        return Err(Error::Dimension {
            expected: xs.len(),
            found: ys.len(),
        });
    }
    if xs.len() < 2 {
        return Err(Error::Domain("linear fit needs at least two points"));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    let spread = xs.iter().fold(0.0f64, |m, &x| m.max((x - mx).abs()));
    if sxx <= 1e-24 * (1.0 + spread * spread) || spread == 0.0 {
        return Err(Error::Domain("degenerate abscissae in linear fit"));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let max_abs_residual = xs
        .iter()
        .zip(ys)
        .fold(0.0f64, |m, (&x, &y)| m.max((y - slope * x - intercept).abs()));
    Ok(FitResult {
        slope,
        intercept,
        max_abs_residual,
    })
}
