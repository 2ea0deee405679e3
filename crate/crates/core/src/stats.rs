//! Small descriptive statistics used by the harness and the fits.

use serde::{Deserialize, Serialize};

/// Linear-interpolation quantile (type 7) of an ascending slice.
pub fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    assert!(!sorted.is_empty(), "quantile of empty slice");
    let h = (sorted.len() - 1) as f64 * q.clamp(0.0, 1.0);
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

pub fn sorted_copy(values: &[f64]) -> Vec<f64> {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

pub fn median(values: &[f64]) -> f64 {
    quantile_sorted(&sorted_copy(values), 0.5)
}

pub fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Unbiased sample variance; zero for a single value.
pub fn variance(values: &[f64]) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let m = mean(values);
    values.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (values.len() - 1) as f64
}

/// Least-squares line fit with the standard error of the slope.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    pub stderr: f64,
    /// Set when the response is constant; slope is then reported as 0.
    pub degenerate: bool,
}

pub fn ols(x: &[f64], y: &[f64]) -> SlopeFit {
    assert_eq!(x.len(), y.len());
    let n = x.len() as f64;
    let mx = mean(x);
    let my = mean(y);
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let scale = y.iter().fold(0.0f64, |acc, v| acc.max(v.abs())).max(1.0);
    if syy <= (1e-14 * scale).powi(2) * n {
        return SlopeFit { slope: 0.0, intercept: my, stderr: 0.0, degenerate: true };
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let resid: f64 = x
        .iter()
        .zip(y)
        .map(|(a, b)| (b - intercept - slope * a).powi(2))
        .sum();
    let stderr = if x.len() > 2 { (resid / (n - 2.0) / sxx).sqrt() } else { 0.0 };
    SlopeFit { slope, intercept, stderr, degenerate: false }
}

/// Fit `log y = a + b log x`.
pub fn log_log_fit(x: &[f64], y: &[f64]) -> SlopeFit {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    ols(&lx, &ly)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantiles() {
        let v = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(quantile_sorted(&v, 0.0), 1.0);
        assert_eq!(quantile_sorted(&v, 1.0), 4.0);
        assert_eq!(quantile_sorted(&v, 0.5), 2.5);
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
    }

    #[test]
    fn exact_power_law_slope() {
        let x = [16.0, 32.0, 64.0, 128.0];
        let y: Vec<f64> = x.iter().map(|v| 1.0 / v).collect();
        let fit = log_log_fit(&x, &y);
        assert!((fit.slope + 1.0).abs() < 1e-12);
        assert!(fit.stderr < 1e-12);
        assert!(!fit.degenerate);
    }

    #[test]
    fn constant_response_is_degenerate() {
        let fit = log_log_fit(&[1.0, 2.0, 4.0], &[3.0, 3.0, 3.0]);
        assert!(fit.degenerate);
        assert_eq!(fit.slope, 0.0);
        assert_eq!(fit.stderr, 0.0);
    }
}
