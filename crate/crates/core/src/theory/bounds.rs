//! Concentration-bound expressions, evaluated exactly as stated.
//!
//! `C`, `c` (subgaussian constants) and `K_alpha` have no published values
//! and default to 1; results describe the shape of a bound, not a sharp
//! numerical guarantee.

use serde::{Deserialize, Serialize};

use crate::error::{param, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BoundParams {
    pub big_c: f64,
    pub small_c: f64,
    /// Constant of the stable concentration region.
    pub k_alpha: f64,
    /// `L`, the Lipschitz scale of the quenched integral.
    pub l: f64,
    /// Selection size.
    pub m: f64,
    /// Ground-set size.
    pub n: f64,
    /// Truncation level.
    pub r: f64,
    /// Moment bound `E|w|^p <= K`, or the absolute stable constant.
    pub k: f64,
    pub p: f64,
    /// Rescaling exponent; `inf` means no rescaling.
    pub alpha: f64,
    /// Stability index of the environment.
    pub alpha_prime: f64,
    /// Total spectral (Levy) mass on the sphere.
    pub levy_mass: f64,
}

impl Default for BoundParams {
    fn default() -> Self {
        BoundParams {
            big_c: 1.0,
            small_c: 1.0,
            k_alpha: 1.0,
            l: 1.0,
            m: 1.0,
            n: 1.0,
            r: 1.0,
            k: 1.0,
            p: 2.0,
            alpha: 2.0,
            alpha_prime: 1.8,
            levy_mass: 1.0,
        }
    }
}

impl BoundParams {
    /// `m^{1/alpha}`, equal to 1 when `alpha = inf`.
    fn m_root(&self) -> f64 {
        if self.alpha.is_infinite() {
            1.0
        } else {
            self.m.powf(1.0 / self.alpha)
        }
    }

    fn check_positive(&self, names: &[&str]) -> Result<()> {
        for &name in names {
            let v = match name {
                "C" => self.big_c,
                "c" => self.small_c,
                "K_alpha" => self.k_alpha,
                "L" => self.l,
                "m" => self.m,
                "n" => self.n,
                "R" => self.r,
                "K" => self.k,
                "p" => self.p,
                "alpha" => self.alpha,
                "alpha'" => self.alpha_prime,
                _ => unreachable!("unknown parameter {name}"),
            };
            if !(v > 0.0) {
                return param(format!("{name} must be positive, got {v}"));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TailBound {
    /// Deviation level at which the bound applies.
    pub threshold: f64,
    /// The expression as written; may exceed 1.
    pub tail_raw: f64,
    /// `tail_raw` clipped to `[0, 1]`, for reporting.
    pub tail: f64,
}

impl TailBound {
    fn new(threshold: f64, tail_raw: f64) -> Self {
        TailBound { threshold, tail_raw, tail: tail_raw.clamp(0.0, 1.0) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MomentCase {
    /// `1 <= p < 2`.
    One,
    /// Unit variance and `p >= 2`.
    Two,
}

/// Truncated-moment concentration bound for independent weights.
///
/// Case one: threshold `D + L K n / (m^{1/a} R^{p-1}) + s + t`, tail
/// `L K n / (m^{1/a} R^{p-1} s) + C exp(-c m^{2/a} t^2 / (L^2 R^2))`.
///
/// Case two: threshold `D + L sqrt(K n) / (m^{1/a} sqrt(R^{p-2})) + s + t`,
/// tail `L^2 K n / (m^{2/a} R^{p-2} s^2) + C exp(-c m^{2/a} t^2 / (L^2 R^2))`.
pub fn lemma22_threshold_and_tail(case: MomentCase, params: &BoundParams, d: f64, s: f64, t: f64) -> Result<TailBound> {
    params.check_positive(&["C", "c", "L", "m", "n", "R", "K", "p", "alpha"])?;
    if !(s > 0.0 && t > 0.0) {
        return param(format!("s and t must be positive, got s={s}, t={t}"));
    }
    if !(d >= 0.0) {
        return param(format!("D must be nonnegative, got {d}"));
    }
    let BoundParams { big_c, small_c, l, n, r, k, p, .. } = *params;
    let mr = params.m_root();
    let gaussian = big_c * (-small_c * mr * mr * t * t / (l * l * r * r)).exp();
    let (shift, markov) = match case {
        MomentCase::One => {
            let shift = l * k * n / (mr * r.powf(p - 1.0));
            (shift, shift / s)
        }
        MomentCase::Two => {
            if p < 2.0 {
                return param(format!("case two needs p >= 2, got {p}"));
            }
            let shift = l * (k * n).sqrt() / (mr * r.powf(p - 2.0).sqrt());
            (shift, l * l * k * n / (mr * mr * r.powf(p - 2.0) * s * s))
        }
    };
    Ok(TailBound::new(d + shift + s + t, markov + gaussian))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConcentrationKind {
    Subgaussian,
    Subexponential,
}

/// Tail for concentrated environments at threshold `E + t`:
/// `C exp(-c m^{2/a} / L^2)` (subgaussian) or `C exp(-c m^{1/a} / L)`
/// (subexponential). The printed expression carries no `t`.
pub fn lemma23_tail(kind: ConcentrationKind, params: &BoundParams, e: f64, t: f64) -> Result<TailBound> {
    params.check_positive(&["C", "c", "L", "m", "alpha"])?;
    let BoundParams { big_c, small_c, l, .. } = *params;
    let mr = params.m_root();
    let raw = match kind {
        ConcentrationKind::Subgaussian => big_c * (-small_c * mr * mr / (l * l)).exp(),
        ConcentrationKind::Subexponential => big_c * (-small_c * mr / l).exp(),
    };
    Ok(TailBound::new(e + t, raw))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct StableTail {
    pub tail_raw: f64,
    pub tail: f64,
    /// False when `t` lies below the region where the bound is asserted.
    pub valid: bool,
}

/// Stable-environment tail `K L^a lambda / (m t^a)`, valid when
/// `t^{a'} >= L^a K_{a'} lambda m^{-1/a}`.
pub fn lemma26_tail_and_validity(params: &BoundParams, t: f64) -> Result<StableTail> {
    params.check_positive(&["K_alpha", "L", "m", "K", "alpha", "alpha'"])?;
    if !(params.alpha_prime > 1.5) {
        return param(format!("stable environments need alpha' > 3/2, got {}", params.alpha_prime));
    }
    if !(params.levy_mass >= 0.0) {
        return param("Levy mass must be nonnegative");
    }
    if !(t > 0.0) {
        return param(format!("t must be positive, got {t}"));
    }
    let BoundParams { k_alpha, l, m, k, alpha, alpha_prime, levy_mass, .. } = *params;
    let l_pow = if alpha.is_infinite() { f64::INFINITY } else { l.powf(alpha) };
    let raw = k * l_pow * levy_mass / (m * t.powf(alpha));
    let cutoff = l_pow * k_alpha * levy_mass / params.m_root();
    let raw = if raw.is_nan() { 0.0 } else { raw };
    Ok(StableTail { tail_raw: raw, tail: raw.clamp(0.0, 1.0), valid: t.powf(alpha_prime) >= cutoff })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> BoundParams {
        BoundParams { alpha: f64::INFINITY, ..BoundParams::default() }
    }

    #[test]
    fn lemma22_case_one_by_hand() {
        let b = lemma22_threshold_and_tail(MomentCase::One, &unit(), 0.0, 1.0, 1.0).unwrap();
        assert_eq!(b.threshold, 3.0);
        assert!((b.tail_raw - (1.0 + (-1.0f64).exp())).abs() < 1e-15);
        assert_eq!(b.tail, 1.0);
    }

    #[test]
    fn lemma22_limits() {
        let far = lemma22_threshold_and_tail(MomentCase::One, &unit(), 0.0, 1.0, 1e3).unwrap();
        assert!((far.tail_raw - 1.0).abs() < 1e-15);
        let p = BoundParams { p: 4.0, r: 1e12, ..unit() };
        let b = lemma22_threshold_and_tail(MomentCase::Two, &p, 0.2, 0.5, 0.5).unwrap();
        assert!((b.threshold - 1.2).abs() < 1e-9);
        assert!(lemma22_threshold_and_tail(MomentCase::Two, &BoundParams { p: 1.5, ..unit() }, 0.0, 1.0, 1.0).is_err());
        assert!(lemma22_threshold_and_tail(MomentCase::One, &BoundParams { l: 0.0, ..unit() }, 0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn lemma22_monotonicity() {
        let p = BoundParams { p: 3.0, n: 100.0, m: 20.0, l: 3.0, k: 2.0, ..BoundParams::default() };
        let mut last = f64::INFINITY;
        for r in [1.0, 2.0, 4.0, 8.0, 16.0] {
            let b = lemma22_threshold_and_tail(MomentCase::Two, &BoundParams { r, ..p }, 0.0, 1.0, 1.0).unwrap();
            assert!(b.threshold < last);
            last = b.threshold;
        }
        let mut last = f64::INFINITY;
        for x in [0.1, 0.5, 1.0, 2.0] {
            let b = lemma22_threshold_and_tail(MomentCase::One, &p, 0.0, x, x).unwrap();
            assert!(b.tail_raw < last);
            last = b.tail_raw;
        }
    }

    #[test]
    fn lemma23_examples() {
        let b = lemma23_tail(ConcentrationKind::Subgaussian, &unit(), 0.1, 0.2).unwrap();
        assert!((b.tail_raw - (-1.0f64).exp()).abs() < 1e-15);
        assert!((b.threshold - 0.3).abs() < 1e-15);
        let big_l = BoundParams { l: 1e15, big_c: 0.7, ..unit() };
        assert!((lemma23_tail(ConcentrationKind::Subexponential, &big_l, 0.0, 1.0).unwrap().tail_raw - 0.7).abs() < 1e-12);
        // m^{2/a}/L^2 = m^{1/a}/L when m^{1/a} = L.
        let p = BoundParams { m: 9.0, alpha: 2.0, l: 3.0, ..BoundParams::default() };
        assert_eq!(
            lemma23_tail(ConcentrationKind::Subgaussian, &p, 0.0, 1.0).unwrap().tail_raw,
            lemma23_tail(ConcentrationKind::Subexponential, &p, 0.0, 1.0).unwrap().tail_raw
        );
    }

    #[test]
    fn lemma26_examples() {
        let p = BoundParams { alpha: 1.8, alpha_prime: 1.8, ..BoundParams::default() };
        let b = lemma26_tail_and_validity(&p, 2.0).unwrap();
        assert!((b.tail_raw - 2f64.powf(-1.8)).abs() < 1e-15);
        assert!(b.valid);
        assert!(!lemma26_tail_and_validity(&p, 0.5).unwrap().valid);
        let tiny = BoundParams { levy_mass: 0.0, ..p };
        for t in [1e-6, 0.1, 5.0] {
            let b = lemma26_tail_and_validity(&tiny, t).unwrap();
            assert!(b.valid && b.tail_raw == 0.0);
        }
        assert!(lemma26_tail_and_validity(&BoundParams { alpha_prime: 1.4, ..p }, 1.0).is_err());
    }
}
