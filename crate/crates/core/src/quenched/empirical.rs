use num_complex::Complex64;

use crate::error::{param, Result};

/// Sorted samples with uniform weights, standing in for a measure.
#[derive(Clone, Debug, PartialEq)]
pub struct EmpiricalDistribution {
    samples: Vec<f64>,
}

impl EmpiricalDistribution {
    pub fn new(mut samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return param("empirical distribution needs at least one sample");
        }
        if samples.iter().any(|x| x.is_nan()) {
            return param("empirical distribution contains NaN");
        }
        samples.sort_by(f64::total_cmp);
        Ok(EmpiricalDistribution { samples })
    }

    pub fn point_mass(x: f64) -> Self {
        EmpiricalDistribution { samples: vec![x] }
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn mean(&self) -> f64 {
        self.samples.iter().sum::<f64>() / self.len() as f64
    }

    pub fn min(&self) -> f64 {
        self.samples[0]
    }

    pub fn max(&self) -> f64 {
        self.samples[self.len() - 1]
    }

    /// Right-continuous CDF, `#{x_i <= x} / n`.
    pub fn cdf(&self, x: f64) -> f64 {
        self.samples.partition_point(|&s| s <= x) as f64 / self.len() as f64
    }

    /// Generalized inverse of the CDF.
    pub fn quantile(&self, q: f64) -> f64 {
        let n = self.len();
        let k = ((q * n as f64).ceil() as usize).clamp(1, n);
        self.samples[k - 1]
    }

    pub fn char_fn(&self, t: f64) -> Complex64 {
        let (c, s) = self
            .samples
            .iter()
            .fold((0.0, 0.0), |(c, s), &x| (c + (t * x).cos(), s + (t * x).sin()));
        Complex64::new(c, s) / self.len() as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        let d = EmpiricalDistribution::new(vec![3.0, 1.0, 2.0]).unwrap();
        assert_eq!(d.samples(), &[1.0, 2.0, 3.0]);
        assert_eq!(d.mean(), 2.0);
        assert_eq!(d.cdf(0.5), 0.0);
        assert_eq!(d.cdf(2.0), 2.0 / 3.0);
        assert_eq!(d.quantile(0.5), 2.0);
        assert_eq!(d.quantile(1.0), 3.0);
        assert!((d.char_fn(0.0) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(EmpiricalDistribution::new(vec![]).is_err());
        assert!(EmpiricalDistribution::new(vec![f64::NAN]).is_err());
    }
}
