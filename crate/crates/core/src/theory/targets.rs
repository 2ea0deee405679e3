//! Limit laws.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use statrs::distribution::{Continuous, ContinuousCDF, Gamma, Normal};

use crate::environments::StableLaw;
use crate::error::{param, Error, Result};
use crate::quenched::EmpiricalDistribution;

#[derive(Clone, Debug, PartialEq)]
pub enum TargetLaw {
    Normal01,
    /// Gamma with integer shape and unit scale.
    Gamma { shape: u32 },
    /// The `m`-fold convolution of a base law, represented by an oracle sample
    /// (see [`convolution_oracle`]).
    ConvolutionPower { m: usize, samples: EmpiricalDistribution },
    /// Law of the layered stable sum at finite `n`, known only through its
    /// characteristic exponent [`psi_finite_n`].
    StableFiniteN { alpha: f64, tau: f64, kappa: f64, beta: f64, n: usize },
}

impl TargetLaw {
    pub fn gamma(shape: u32) -> Result<Self> {
        if shape == 0 {
            return param("gamma shape must be at least 1");
        }
        Ok(TargetLaw::Gamma { shape })
    }

    pub fn stable_finite_n(alpha: f64, tau: f64, kappa: f64, beta: f64, n: usize) -> Result<Self> {
        if !(alpha > 1.5 && alpha < 2.0) {
            return param(format!("alpha {alpha} outside (3/2, 2)"));
        }
        if !(tau > 0.0) || n == 0 {
            return param("need tau > 0 and n >= 1");
        }
        StableLaw::new(alpha, beta, kappa)?;
        Ok(TargetLaw::StableFiniteN { alpha, tau, kappa, beta, n })
    }

    /// Build the convolution target from a base sample.
    pub fn convolution_power<R: Rng + ?Sized>(base: &EmpiricalDistribution, m: usize, rng: &mut R) -> Result<Self> {
        Ok(TargetLaw::ConvolutionPower { m, samples: convolution_oracle(base, m, rng)? })
    }

    pub fn name(&self) -> String {
        match self {
            TargetLaw::Normal01 => "normal".into(),
            TargetLaw::Gamma { shape } => format!("gamma({shape})"),
            TargetLaw::ConvolutionPower { m, .. } => format!("convolution({m})"),
            TargetLaw::StableFiniteN { n, .. } => format!("stable-finite-n({n})"),
        }
    }

    fn unsupported(&self, what: &str) -> Error {
        Error::UnsupportedTarget(format!("{what} is not available for {}", self.name()))
    }

    pub fn cdf(&self, x: f64) -> Result<f64> {
        match self {
            TargetLaw::Normal01 => Ok(std_normal().cdf(x)),
            TargetLaw::Gamma { shape } => Ok(gamma_law(*shape).cdf(x)),
            TargetLaw::ConvolutionPower { samples, .. } => Ok(samples.cdf(x)),
            TargetLaw::StableFiniteN { .. } => Err(self.unsupported("a CDF")),
        }
    }

    pub fn quantile(&self, q: f64) -> Result<f64> {
        if !(q > 0.0 && q < 1.0) {
            return param(format!("quantile level {q} outside (0, 1)"));
        }
        match self {
            TargetLaw::Normal01 => Ok(std_normal().inverse_cdf(q)),
            TargetLaw::Gamma { shape } => Ok(gamma_law(*shape).inverse_cdf(q)),
            _ => Err(self.unsupported("an analytic quantile")),
        }
    }

    pub fn mean(&self) -> Option<f64> {
        match self {
            TargetLaw::Normal01 => Some(0.0),
            TargetLaw::Gamma { shape } => Some(*shape as f64),
            TargetLaw::ConvolutionPower { samples, .. } => Some(samples.mean()),
            TargetLaw::StableFiniteN { .. } => None,
        }
    }

    /// `E max(X - theta, 0)`.
    pub fn hinge_expectation(&self, theta: f64) -> Option<f64> {
        match self {
            TargetLaw::Normal01 => {
                let z = std_normal();
                Some(z.pdf(theta) - theta * z.sf(theta))
            }
            TargetLaw::Gamma { shape } => {
                let m = *shape as f64;
                if theta <= 0.0 {
                    return Some(m - theta);
                }
                // E (X - t)^+ = m P(Gamma(m + 1) > t) - t P(Gamma(m) > t).
                Some(m * gamma_law(shape + 1).sf(theta) - theta * gamma_law(*shape).sf(theta))
            }
            TargetLaw::ConvolutionPower { samples, .. } => Some(
                samples.samples().iter().map(|x| (x - theta).max(0.0)).sum::<f64>() / samples.len() as f64,
            ),
            TargetLaw::StableFiniteN { .. } => None,
        }
    }

    /// Logarithm of the characteristic function.
    pub fn char_exponent(&self, t: f64) -> Complex64 {
        match self {
            TargetLaw::Normal01 => Complex64::new(-0.5 * t * t, 0.0),
            TargetLaw::Gamma { shape } => -(*shape as f64) * Complex64::new(1.0, -t).ln(),
            TargetLaw::ConvolutionPower { samples, .. } => samples.char_fn(t).ln(),
            TargetLaw::StableFiniteN { alpha, tau, kappa, beta, n } => psi_finite_n(t, *alpha, *tau, *kappa, *beta, *n),
        }
    }

    pub fn char_fn(&self, t: f64) -> Complex64 {
        match self {
            TargetLaw::ConvolutionPower { samples, .. } => samples.char_fn(t),
            _ => self.char_exponent(t).exp(),
        }
    }
}

fn std_normal() -> Normal {
    Normal::new(0.0, 1.0).expect("standard normal")
}

fn gamma_law(shape: u32) -> Gamma {
    Gamma::new(shape as f64, 1.0).expect("positive shape")
}

/// The `m`-fold sum of independent with-replacement resamples of `base`,
/// with as many samples as `base`.
pub fn convolution_oracle<R: Rng + ?Sized>(
    base: &EmpiricalDistribution,
    m: usize,
    rng: &mut R,
) -> Result<EmpiricalDistribution> {
    if m == 0 {
        return param("convolution power must be at least 1");
    }
    let xs = base.samples();
    let sums = (0..xs.len())
        .map(|_| (0..m).map(|_| xs[rng.random_range(0..xs.len())]).sum())
        .collect();
    EmpiricalDistribution::new(sums)
}

/// Characteristic exponent of the layered stable sum normalized at finite `n`:
///
/// ```text
/// psi(t) = -kappa^alpha (sum_{k=1}^n k^{-alpha tau}) / n^{1 - alpha tau}
///          |t|^alpha (1 - i beta sign(t) tan(pi alpha / 2))
/// ```
///
/// Expects `alpha in (3/2, 2)`, `tau > 0`, `n >= 1`.
pub fn psi_finite_n(t: f64, alpha: f64, tau: f64, kappa: f64, beta: f64, n: usize) -> Complex64 {
    debug_assert!(alpha > 1.5 && alpha < 2.0 && tau > 0.0 && n >= 1);
    if t == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let weight = layer_power_sum(alpha * tau, n) / (n as f64).powf(1.0 - alpha * tau);
    let skew = beta * t.signum() * (PI * alpha / 2.0).tan();
    -kappa.powf(alpha) * weight * t.abs().powf(alpha) * Complex64::new(1.0, -skew)
}

/// `sum_{k=1}^n k^{-s}`, added smallest term first.
pub fn layer_power_sum(s: f64, n: usize) -> f64 {
    (1..=n).rev().map(|k| (k as f64).powf(-s)).sum()
}
