//! Distances between an empirical measure and a reference.

use num_complex::Complex64;

use super::TargetLaw;
use crate::error::{param, Error, Result};
use crate::quenched::{EmpiricalDistribution, TestFunction};

/// Second argument of a distance: another sample or a limit law.
#[derive(Clone, Copy, Debug)]
pub enum Reference<'a> {
    Sample(&'a EmpiricalDistribution),
    Law(&'a TargetLaw),
}

impl<'a> Reference<'a> {
    /// Convolution targets are only compared through their oracle sample.
    fn resolve(self) -> Reference<'a> {
        match self {
            Reference::Law(TargetLaw::ConvolutionPower { samples, .. }) => Reference::Sample(samples),
            other => other,
        }
    }
}

impl<'a> From<&'a EmpiricalDistribution> for Reference<'a> {
    fn from(d: &'a EmpiricalDistribution) -> Self {
        Reference::Sample(d)
    }
}

impl<'a> From<&'a TargetLaw> for Reference<'a> {
    fn from(t: &'a TargetLaw) -> Self {
        Reference::Law(t)
    }
}

/// Wasserstein-1 distance.
///
/// Two samples: the `L^1` distance of their CDFs (for equal sizes this is the
/// mean gap of sorted pairs). Against a law: `mean |x_(i) - Q((i - 1/2)/n)|`.
pub fn w1_distance<'a>(a: &EmpiricalDistribution, b: impl Into<Reference<'a>>) -> Result<f64> {
    match b.into().resolve() {
        Reference::Sample(b) => Ok(w1_two_sample(a, b)),
        Reference::Law(t) => {
            let grid = quantile_grid(t, a.len())?;
            Ok(w1_to_quantiles(a, &grid))
        }
    }
}

/// Target quantiles at `(i - 1/2) / n`, `i = 1..=n`.
pub fn quantile_grid(target: &TargetLaw, n: usize) -> Result<Vec<f64>> {
    (1..=n).map(|i| target.quantile((i as f64 - 0.5) / n as f64)).collect()
}

pub fn w1_to_quantiles(a: &EmpiricalDistribution, grid: &[f64]) -> f64 {
    assert_eq!(a.len(), grid.len(), "quantile grid size mismatch");
    a.samples().iter().zip(grid).map(|(x, q)| (x - q).abs()).sum::<f64>() / a.len() as f64
}

fn w1_two_sample(a: &EmpiricalDistribution, b: &EmpiricalDistribution) -> f64 {
    if a.len() == b.len() {
        return a.samples().iter().zip(b.samples()).map(|(x, y)| (x - y).abs()).sum::<f64>() / a.len() as f64;
    }
    // Integrate |F_a - F_b| over the merged breakpoints.
    let (xs, ys) = (a.samples(), b.samples());
    let (na, nb) = (xs.len() as f64, ys.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut total = 0.0;
    let mut prev = xs[0].min(ys[0]);
    while i < xs.len() || j < ys.len() {
        let next = match (xs.get(i), ys.get(j)) {
            (Some(&x), Some(&y)) => x.min(y),
            (Some(&x), None) => x,
            (None, Some(&y)) => y,
            (None, None) => unreachable!(),
        };
        total += (i as f64 / na - j as f64 / nb).abs() * (next - prev);
        while i < xs.len() && xs[i] == next {
            i += 1;
        }
        while j < ys.len() && ys[j] == next {
            j += 1;
        }
        prev = next;
    }
    total
}

/// Kolmogorov-Smirnov distance; two-sample form for sample references.
pub fn ks_distance<'a>(a: &EmpiricalDistribution, b: impl Into<Reference<'a>>) -> Result<f64> {
    match b.into().resolve() {
        Reference::Sample(b) => Ok(ks_two_sample(a, b)),
        Reference::Law(t) => {
            let n = a.len() as f64;
            let mut d: f64 = 0.0;
            for (i, &x) in a.samples().iter().enumerate() {
                let f = t.cdf(x)?;
                d = d.max(f - i as f64 / n).max((i + 1) as f64 / n - f);
            }
            Ok(d)
        }
    }
}

pub fn ks_two_sample(a: &EmpiricalDistribution, b: &EmpiricalDistribution) -> f64 {
    let (xs, ys) = (a.samples(), b.samples());
    let (na, nb) = (xs.len() as f64, ys.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < xs.len() && j < ys.len() {
        let v = xs[i].min(ys[j]);
        while i < xs.len() && xs[i] == v {
            i += 1;
        }
        while j < ys.len() && ys[j] == v {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d.max((i as f64 / na - j as f64 / nb).abs())
}

/// `max over the bank of |int f da - int f db|`. Every bank function must
/// have `|f|_BL <= 1`, so this is a lower bound on the bounded-Lipschitz
/// distance, not the supremum itself.
pub fn bl_distance_lower_bound<'a>(
    a: &EmpiricalDistribution,
    b: impl Into<Reference<'a>>,
    bank: &[TestFunction],
) -> Result<f64> {
    if bank.is_empty() {
        return param("test function bank is empty");
    }
    if let Some(f) = bank.iter().find(|f| f.bl_norm() > 1.0) {
        return param(format!("{f} has |f|_BL > 1"));
    }
    let b = b.into().resolve();
    let mut best: f64 = 0.0;
    for f in bank {
        let ea = mean_of(a, f);
        let eb = match b {
            Reference::Sample(b) => mean_of(b, f),
            Reference::Law(t) => f
                .expectation(t)
                .ok_or_else(|| Error::UnsupportedTarget(format!("{f} has no closed form against {}", t.name())))?,
        };
        best = best.max((ea - eb).abs());
    }
    Ok(best)
}

pub(crate) fn mean_of(d: &EmpiricalDistribution, f: &TestFunction) -> f64 {
    d.samples().iter().map(|&x| f.eval(x)).sum::<f64>() / d.len() as f64
}

/// `max over the grid of |phi_a(t) - exp(psi(t))|`.
pub fn cf_distance(a: &EmpiricalDistribution, psi: impl Fn(f64) -> Complex64, grid: &[f64]) -> f64 {
    grid.iter().map(|&t| (a.char_fn(t) - psi(t).exp()).norm()).fold(0.0, f64::max)
}
