//! Test functions with closed-form integrals against the shipped targets.

use std::fmt;

use crate::theory::TargetLaw;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TestFunction {
    /// `max(x - theta, 0)`; convex, 1-Lipschitz.
    Hinge { theta: f64 },
    /// `|x|`; convex, 1-Lipschitz.
    Abs,
    /// `min(1, max(0, x - theta))`; `|f|_BL = 1`.
    Ramp { theta: f64 },
    /// `max(0, 1 - |x - theta|)`, a smoothed indicator of `theta`; `|f|_BL = 1`.
    Tent { theta: f64 },
    Zero,
}

impl TestFunction {
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            TestFunction::Hinge { theta } => (x - theta).max(0.0),
            TestFunction::Abs => x.abs(),
            TestFunction::Ramp { theta } => (x - theta).clamp(0.0, 1.0),
            TestFunction::Tent { theta } => (1.0 - (x - theta).abs()).max(0.0),
            TestFunction::Zero => 0.0,
        }
    }

    pub fn lipschitz(&self) -> f64 {
        match self {
            TestFunction::Zero => 0.0,
            _ => 1.0,
        }
    }

    pub fn sup_norm(&self) -> f64 {
        match self {
            TestFunction::Hinge { .. } | TestFunction::Abs => f64::INFINITY,
            TestFunction::Ramp { .. } | TestFunction::Tent { .. } => 1.0,
            TestFunction::Zero => 0.0,
        }
    }

    /// `|f|_BL = max(sup |f|, Lip(f))`.
    pub fn bl_norm(&self) -> f64 {
        self.sup_norm().max(self.lipschitz())
    }

    pub fn is_convex(&self) -> bool {
        matches!(self, TestFunction::Hinge { .. } | TestFunction::Abs | TestFunction::Zero)
    }

    /// `E f(X)` for `X ~ target`, built from hinge expectations.
    pub fn expectation(&self, target: &TargetLaw) -> Option<f64> {
        let h = |theta: f64| target.hinge_expectation(theta);
        Some(match *self {
            TestFunction::Hinge { theta } => h(theta)?,
            TestFunction::Abs => 2.0 * h(0.0)? - target.mean()?,
            TestFunction::Ramp { theta } => h(theta)? - h(theta + 1.0)?,
            TestFunction::Tent { theta } => h(theta - 1.0)? - 2.0 * h(theta)? + h(theta + 1.0)?,
            TestFunction::Zero => 0.0,
        })
    }
}

impl fmt::Display for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TestFunction::Hinge { theta } => write!(f, "hinge({theta})"),
            TestFunction::Abs => write!(f, "abs"),
            TestFunction::Ramp { theta } => write!(f, "ramp({theta})"),
            TestFunction::Tent { theta } => write!(f, "tent({theta})"),
            TestFunction::Zero => write!(f, "zero"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TestFunctionBank {
    /// Convex 1-Lipschitz functions.
    pub convex: Vec<TestFunction>,
    /// Functions with `|f|_BL <= 1`.
    pub bounded_lipschitz: Vec<TestFunction>,
}

/// Default bank: hinges on `{-3, -2.5, ..., 3}` plus `|x|`; ramps and tents
/// on a 0.05 grid over `[-5, 5]`.
pub fn test_function_bank() -> TestFunctionBank {
    TestFunctionBank {
        convex: convex_bank(-3.0, 3.0, 0.5),
        bounded_lipschitz: bl_bank(-5.0, 5.0, 0.05),
    }
}

pub fn convex_bank(lo: f64, hi: f64, step: f64) -> Vec<TestFunction> {
    let mut bank: Vec<_> = theta_grid(lo, hi, step).map(|theta| TestFunction::Hinge { theta }).collect();
    bank.push(TestFunction::Abs);
    bank
}

/// Ramps and tents with `theta` on `lo, lo + step, ..., hi`.
pub fn bl_bank(lo: f64, hi: f64, step: f64) -> Vec<TestFunction> {
    theta_grid(lo, hi, step)
        .flat_map(|theta| [TestFunction::Ramp { theta }, TestFunction::Tent { theta }])
        .collect()
}

fn theta_grid(lo: f64, hi: f64, step: f64) -> impl Iterator<Item = f64> {
    assert!(step > 0.0 && hi >= lo, "bad theta grid");
    let count = ((hi - lo) / step + 1e-9).floor() as usize;
    (0..=count).map(move |k| lo + k as f64 * step)
}
