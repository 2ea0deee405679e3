//! Scalar alpha-stable variates.
//!
//! Characteristic exponent
//!
//! ```text
//! psi(t) = -kappa^alpha |t|^alpha (1 - i beta sign(t) tan(pi alpha / 2))
//! ```
//!
//! sampled with the Chambers-Mallows-Stuck transform of a uniform angle
//! `V ~ U(-pi/2, pi/2)` and an independent `W ~ Exp(1)`:
//!
//! ```text
//! B = atan(beta tan(pi alpha/2)) / alpha
//! S = (1 + beta^2 tan^2(pi alpha/2))^(1/(2 alpha))
//! X = kappa S sin(alpha (V + B)) / cos(V)^(1/alpha)
//!       * (cos(V - alpha (V + B)) / W)^((1 - alpha)/alpha)
//! ```
//!
//! At `alpha = 2` this reduces to `2 kappa sqrt(W) sin V`, a centered
//! Gaussian of variance `2 kappa^2`. The exponent above is undefined at
//! `alpha = 1` unless `beta = 0`, where the law is Cauchy(`kappa`).

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Exp1};

use crate::error::{param, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StableLaw {
    alpha: f64,
    beta: f64,
    kappa: f64,
    // Precomputed transform constants.
    shift: f64,
    scale: f64,
}

impl StableLaw {
    pub fn new(alpha: f64, beta: f64, kappa: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 2.0) {
            return param(format!("stability index {alpha} outside (0, 2]"));
        }
        if !(-1.0..=1.0).contains(&beta) {
            return param(format!("skewness {beta} outside [-1, 1]"));
        }
        if !(kappa > 0.0 && kappa.is_finite()) {
            return param(format!("scale {kappa} must be positive"));
        }
        if alpha == 1.0 && beta != 0.0 {
            return param("alpha = 1 requires beta = 0 (tan(pi/2) is undefined)");
        }
        let (shift, scale) = if alpha == 1.0 {
            (0.0, 1.0)
        } else {
            let zeta = beta * (PI * alpha / 2.0).tan();
            ((zeta.atan()) / alpha, (1.0 + zeta * zeta).powf(1.0 / (2.0 * alpha)))
        };
        Ok(StableLaw { alpha, beta, kappa, shift, scale })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn char_exponent(&self, t: f64) -> Complex64 {
        if t == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let skew = if self.alpha == 1.0 {
            0.0
        } else {
            self.beta * t.signum() * (PI * self.alpha / 2.0).tan()
        };
        -self.kappa.powf(self.alpha) * t.abs().powf(self.alpha) * Complex64::new(1.0, -skew)
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        // Open interval keeps cos(V) away from zero.
        let mut u: f64 = rng.random();
        while u == 0.0 {
            u = rng.random();
        }
        let v = PI * u - FRAC_PI_2;
        if self.alpha == 1.0 {
            return self.kappa * v.tan();
        }
        let w: f64 = Exp1.sample(rng);
        let a = self.alpha;
        let arg = a * (v + self.shift);
        let x = self.scale * arg.sin() / v.cos().powf(1.0 / a)
            * ((v - arg).cos() / w).powf((1.0 - a) / a);
        self.kappa * x
    }
}

impl Distribution<f64> for StableLaw {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        StableLaw::sample(self, rng)
    }
}

pub fn sample_stable_scalar<R: Rng + ?Sized>(
    alpha: f64,
    beta: f64,
    kappa: f64,
    rng: &mut R,
) -> Result<f64> {
    Ok(StableLaw::new(alpha, beta, kappa)?.sample(rng))
}
