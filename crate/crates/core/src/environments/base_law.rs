//! Standardized base laws for i.i.d. moment environments.
//!
//! Every law here has mean 0 and variance 1, with closed-form absolute
//! moments so a model's declared bound `E|w|^p <= K` can be checked.

use std::f64::consts::{E, PI};
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Distribution, Exp1, StandardNormal, StudentT};
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

const SQRT3: f64 = 1.732_050_807_568_877_2;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "kebab-case")]
pub enum BaseLaw {
    Rademacher,
    /// Uniform on `(-sqrt 3, sqrt 3)`.
    Uniform,
    Gaussian,
    /// Student-t with `dof > 2` degrees of freedom, scaled to unit variance.
    StudentT { dof: f64 },
    /// `Exp(1) - 1`.
    CenteredExponential,
}

impl BaseLaw {
    pub fn validate(&self) -> Result<()> {
        match *self {
            BaseLaw::StudentT { dof } if !(dof > 2.0) => Err(Error::Parameter(format!(
                "standardized Student-t needs more than 2 degrees of freedom, got {dof}"
            ))),
            _ => Ok(()),
        }
    }

    pub fn is_bounded(&self) -> bool {
        matches!(self, BaseLaw::Rademacher | BaseLaw::Uniform)
    }

    /// `E|w|^p`, or `+inf` when the moment does not exist.
    pub fn abs_moment(&self, p: f64) -> f64 {
        match *self {
            BaseLaw::Rademacher => 1.0,
            BaseLaw::Uniform => SQRT3.powf(p) / (p + 1.0),
            BaseLaw::Gaussian => {
                (0.5 * p * 2f64.ln() + ln_gamma((p + 1.0) / 2.0) - 0.5 * PI.ln()).exp()
            }
            BaseLaw::StudentT { dof } => {
                if p >= dof {
                    return f64::INFINITY;
                }
                (0.5 * p * (dof - 2.0).ln() + ln_gamma((p + 1.0) / 2.0) + ln_gamma((dof - p) / 2.0)
                    - 0.5 * PI.ln()
                    - ln_gamma(dof / 2.0))
                .exp()
            }
            BaseLaw::CenteredExponential => {
                // E|X - 1|^p = e^{-1} (int_0^1 u^p e^u du + Gamma(p + 1)),
                // with int_0^1 u^p e^u du = sum_k 1 / (k! (p + k + 1)).
                let mut series = 0.0;
                let mut fact = 1.0;
                for k in 0..60 {
                    if k > 0 {
                        fact *= k as f64;
                    }
                    series += 1.0 / (fact * (p + k as f64 + 1.0));
                }
                (series + ln_gamma(p + 1.0).exp()) / E
            }
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            BaseLaw::Rademacher => {
                if rng.random::<bool>() {
                    1.0
                } else {
                    -1.0
                }
            }
            BaseLaw::Uniform => rng.random_range(-SQRT3..SQRT3),
            BaseLaw::Gaussian => StandardNormal.sample(rng),
            BaseLaw::StudentT { dof } => {
                let t: f64 = StudentT::new(dof).expect("validated dof").sample(rng);
                t * ((dof - 2.0) / dof).sqrt()
            }
            BaseLaw::CenteredExponential => {
                let x: f64 = Exp1.sample(rng);
                x - 1.0
            }
        }
    }
}

impl fmt::Display for BaseLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseLaw::Rademacher => write!(f, "rademacher"),
            BaseLaw::Uniform => write!(f, "uniform"),
            BaseLaw::Gaussian => write!(f, "gaussian"),
            BaseLaw::StudentT { dof } => write!(f, "student-t:{dof}"),
            BaseLaw::CenteredExponential => write!(f, "exponential"),
        }
    }
}

impl FromStr for BaseLaw {
    type Err = Error;

    /// Accepts `rademacher`, `uniform`, `gaussian`, `exponential` and
    /// `student-t:<dof>`.
    fn from_str(s: &str) -> Result<Self> {
        let law = match s {
            "rademacher" => BaseLaw::Rademacher,
            "uniform" => BaseLaw::Uniform,
            "gaussian" | "normal" => BaseLaw::Gaussian,
            "exponential" => BaseLaw::CenteredExponential,
            other => match other.strip_prefix("student-t:") {
                Some(dof) => BaseLaw::StudentT {
                    dof: dof
                        .parse()
                        .map_err(|_| Error::Parameter(format!("bad Student-t dof `{dof}`")))?,
                },
                None => return Err(Error::Parameter(format!("unknown base law `{other}`"))),
            },
        };
        law.validate()?;
        Ok(law)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Substream;
    use crate::stats;

    const LAWS: [BaseLaw; 5] = [
        BaseLaw::Rademacher,
        BaseLaw::Uniform,
        BaseLaw::Gaussian,
        BaseLaw::StudentT { dof: 9.0 },
        BaseLaw::CenteredExponential,
    ];

    #[test]
    fn second_moment_is_one() {
        for law in LAWS {
            assert!((law.abs_moment(2.0) - 1.0).abs() < 1e-10, "{law}");
        }
    }

    #[test]
    fn known_moments() {
        // E|Z| = sqrt(2/pi); E|U|^4 = 9/5; E|X-1| = 2/e.
        assert!((BaseLaw::Gaussian.abs_moment(1.0) - (2.0 / PI).sqrt()).abs() < 1e-12);
        assert!((BaseLaw::Uniform.abs_moment(4.0) - 1.8).abs() < 1e-12);
        assert!((BaseLaw::CenteredExponential.abs_moment(1.0) - 2.0 / E).abs() < 1e-12);
        assert!((BaseLaw::Gaussian.abs_moment(4.0) - 3.0).abs() < 1e-10);
        assert!(BaseLaw::StudentT { dof: 5.0 }.abs_moment(5.0).is_infinite());
    }

    #[test]
    fn sample_mean_and_variance_within_four_standard_errors() {
        let n = 1_000_000;
        for (idx, law) in LAWS.into_iter().enumerate() {
            let mut rng = Substream::new(11).child(idx as u64).rng();
            let xs: Vec<f64> = (0..n).map(|_| law.sample(&mut rng)).collect();
            let m = stats::mean(&xs);
            let v = stats::variance(&xs);
            let se_mean = (1.0 / n as f64).sqrt();
            // Rademacher squares are constant; the sample variance still moves by O(1/n).
            let se_var = ((law.abs_moment(4.0) - 1.0) / n as f64).sqrt().max(2.0 / n as f64);
            assert!(m.abs() < 4.0 * se_mean, "{law}: mean {m}");
            assert!((v - 1.0).abs() < 4.0 * se_var, "{law}: variance {v}");
        }
    }

    #[test]
    fn parse_round_trip() {
        for law in LAWS {
            assert_eq!(law.to_string().parse::<BaseLaw>().unwrap(), law);
        }
        assert!("student-t:2".parse::<BaseLaw>().is_err());
        assert!("cauchy".parse::<BaseLaw>().is_err());
    }
}
