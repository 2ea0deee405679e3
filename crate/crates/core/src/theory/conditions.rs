//! Exponent and moment conditions for convergence of quenched measures.

use serde::{Deserialize, Serialize};

use crate::error::{param, Result};

/// Growth exponents of a sequence of problems indexed by `N`:
/// `n = O(N^eta)`, `m = O(N^mu)`, `L = O(N^lambda)`, `R = O(N^rho)` and
/// Levy mass `O(N^{-tau})`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingRegime {
    /// Rescaling exponent; `inf` for unscaled sums.
    pub alpha: f64,
    pub p: f64,
    pub k: f64,
    pub eta: f64,
    pub mu: f64,
    pub lambda: f64,
    #[serde(default)]
    pub rho: f64,
    #[serde(default)]
    pub tau: f64,
}

impl ScalingRegime {
    pub fn new(alpha: f64, p: f64, eta: f64, mu: f64, lambda: f64) -> Result<Self> {
        let regime = ScalingRegime { alpha, p, k: 1.0, eta, mu, lambda, rho: 0.0, tau: 0.0 };
        regime.validate()?;
        Ok(regime)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0) {
            return param(format!("alpha must be in (0, inf], got {}", self.alpha));
        }
        if !(self.p >= 1.0) {
            return param(format!("p must be at least 1, got {}", self.p));
        }
        if !(self.k > 0.0) {
            return param(format!("K must be positive, got {}", self.k));
        }
        for (name, v) in [("eta", self.eta), ("mu", self.mu), ("lambda", self.lambda), ("rho", self.rho), ("tau", self.tau)] {
            if !v.is_finite() {
                return param(format!("{name} must be finite, got {v}"));
            }
        }
        if self.mu > self.eta {
            return param(format!("need mu <= eta, got mu={}, eta={}", self.mu, self.eta));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConditionFamily {
    /// Independent weights with a `p`-th moment bound.
    Moment,
    /// Subgaussian or subexponential concentration.
    Concentrated,
    /// Stable weights with decaying Levy mass.
    Stable,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConditionReport {
    pub wip: bool,
    pub almost_sure: bool,
    /// Moment orders `p` must strictly exceed; `None` when no `p` works.
    pub wip_threshold: Option<f64>,
    pub almost_sure_threshold: Option<f64>,
    pub reason: String,
}

/// Thresholds on `p` for the moment family: `(a eta / (mu - a lambda),
/// a (eta + 1) / (mu - a lambda))`, or `(eta / -lambda, (eta + 1) / -lambda)`
/// when `a = inf`. `None` when the `lambda` requirement fails.
pub fn moment_thresholds(regime: &ScalingRegime) -> Option<(f64, f64)> {
    let ScalingRegime { alpha, eta, mu, lambda, .. } = *regime;
    if alpha.is_infinite() {
        (lambda < 0.0).then(|| (eta / -lambda, (eta + 1.0) / -lambda))
    } else {
        let gap = mu - alpha * lambda;
        (lambda < mu / alpha).then(|| (alpha * eta / gap, alpha * (eta + 1.0) / gap))
    }
}

pub fn convergence_conditions(family: ConditionFamily, regime: &ScalingRegime) -> Result<ConditionReport> {
    regime.validate()?;
    let ScalingRegime { alpha, p, mu, lambda, tau, .. } = *regime;
    let report = match family {
        ConditionFamily::Moment => match moment_thresholds(regime) {
            Some((a, b)) => ConditionReport {
                wip: p > a,
                almost_sure: p > b,
                wip_threshold: Some(a),
                almost_sure_threshold: Some(b),
                reason: format!("p={p} against p>{a} (in probability) and p>{b} (summable)"),
            },
            None => ConditionReport {
                wip: false,
                almost_sure: false,
                wip_threshold: None,
                almost_sure_threshold: None,
                reason: if alpha.is_infinite() {
                    format!("unscaled sums need lambda<0, got {lambda}")
                } else {
                    format!("need lambda<mu/alpha={}, got {lambda}", mu / alpha)
                },
            },
        },
        ConditionFamily::Concentrated => {
            let ratio = if alpha.is_infinite() { 0.0 } else { mu / alpha };
            let ok = ratio > lambda;
            ConditionReport {
                wip: ok,
                almost_sure: ok,
                wip_threshold: None,
                almost_sure_threshold: None,
                reason: format!("mu/alpha={ratio} {} lambda={lambda}", if ok { ">" } else { "<=" }),
            }
        }
        ConditionFamily::Stable => {
            let a_l = if alpha.is_infinite() {
                if lambda < 0.0 {
                    f64::NEG_INFINITY
                } else if lambda == 0.0 {
                    0.0
                } else {
                    f64::INFINITY
                }
            } else {
                alpha * lambda
            };
            let wip_expr = a_l - tau - mu;
            let sum_expr = a_l + tau - mu;
            ConditionReport {
                wip: wip_expr < 0.0,
                almost_sure: sum_expr < -1.0,
                wip_threshold: None,
                almost_sure_threshold: None,
                reason: format!("alpha*lambda-tau-mu={wip_expr} (<0), alpha*lambda+tau-mu={sum_expr} (<-1)"),
            }
        }
    };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn regime(alpha: f64, p: f64, eta: f64, mu: f64, lambda: f64) -> ScalingRegime {
        ScalingRegime::new(alpha, p, eta, mu, lambda).unwrap()
    }

    #[test]
    fn corner_growth_thresholds() {
        assert_eq!(moment_thresholds(&regime(2.0, 9.0, 2.0, 1.0, 0.25)), Some((8.0, 12.0)));
        let r = convergence_conditions(ConditionFamily::Moment, &regime(2.0, 9.0, 2.0, 1.0, 0.25)).unwrap();
        assert!(r.wip && !r.almost_sure);
        for (p, wip, a_s) in [(8.0, false, false), (8.0001, true, false), (12.0, true, false), (12.5, true, true)] {
            let r = convergence_conditions(ConditionFamily::Moment, &regime(2.0, p, 2.0, 1.0, 0.25)).unwrap();
            assert_eq!((r.wip, r.almost_sure), (wip, a_s), "p={p}");
        }
    }

    #[test]
    fn permutation_thresholds() {
        assert_eq!(moment_thresholds(&regime(2.0, 5.0, 2.0, 1.0, 0.0)), Some((4.0, 6.0)));
        let r = convergence_conditions(ConditionFamily::Moment, &regime(2.0, 4.0, 2.0, 1.0, 0.0)).unwrap();
        assert!(!r.wip);
    }

    #[test]
    fn unscaled_branch() {
        let r = regime(f64::INFINITY, 3.0, 1.0, 0.0, -0.5);
        assert_eq!(moment_thresholds(&r), Some((2.0, 4.0)));
        let rep = convergence_conditions(ConditionFamily::Moment, &r).unwrap();
        assert!(rep.wip && !rep.almost_sure);
        assert_eq!(moment_thresholds(&regime(f64::INFINITY, 3.0, 1.0, 0.0, 0.0)), None);
    }

    #[test]
    fn lambda_too_large() {
        let r = convergence_conditions(ConditionFamily::Moment, &regime(2.0, 100.0, 2.0, 1.0, 0.5)).unwrap();
        assert!(!r.wip && r.wip_threshold.is_none());
    }

    #[test]
    fn concentrated_and_stable() {
        let r = convergence_conditions(ConditionFamily::Concentrated, &regime(2.0, 2.0, 2.0, 1.0, 0.25)).unwrap();
        assert!(r.wip && r.almost_sure);
        let r = convergence_conditions(ConditionFamily::Concentrated, &regime(2.0, 2.0, 2.0, 1.0, 0.5)).unwrap();
        assert!(!r.wip);
        let mut s = regime(2.0, 2.0, 2.0, 1.0, 0.25);
        s.tau = 0.2;
        let r = convergence_conditions(ConditionFamily::Stable, &s).unwrap();
        // 0.5-0.2-1 < 0 and 0.5+0.2-1 = -0.3 is not below -1.
        assert!(r.wip && !r.almost_sure);
        s.tau = 3.0;
        s.lambda = -1.0;
        let r = convergence_conditions(ConditionFamily::Stable, &s).unwrap();
        // -2-3-1 < 0 but -2+3-1 = 0.
        assert!(r.wip && !r.almost_sure);
    }

    #[test]
    fn rejects_mu_above_eta() {
        assert!(ScalingRegime::new(2.0, 2.0, 1.0, 2.0, 0.0).is_err());
        assert!(ScalingRegime::new(0.0, 2.0, 1.0, 1.0, 0.0).is_err());
    }

    proptest! {
        #[test]
        fn monotone_in_p_and_lambda(
            alpha in prop_oneof![Just(f64::INFINITY), 0.5f64..4.0],
            p in 1.0f64..30.0,
            dp in 0.0f64..10.0,
            eta in 0.0f64..3.0,
            mu_frac in 0.0f64..1.0,
            lambda in -2.0f64..1.0,
            dl in 0.0f64..1.0,
        ) {
            let mu = eta * mu_frac;
            let base = regime(alpha, p, eta, mu, lambda);
            let more_p = regime(alpha, p + dp, eta, mu, lambda);
            let less_l = regime(alpha, p, eta, mu, lambda - dl);
            let r0 = convergence_conditions(ConditionFamily::Moment, &base).unwrap();
            for other in [more_p, less_l] {
                let r1 = convergence_conditions(ConditionFamily::Moment, &other).unwrap();
                prop_assert!(!r0.wip || r1.wip);
                prop_assert!(!r0.almost_sure || r1.almost_sure);
            }
        }
    }
}
