// Concentration bounds and convergence conditions for a few regimes.
//
// ```bash
// cargo run --example bounds_and_conditions
// ```

use quenched::theory::{
    convergence_conditions, lemma22_threshold_and_tail, lemma23_tail, lemma26_tail_and_validity, BoundParams,
    ConcentrationKind, ConditionFamily, MomentCase, ScalingRegime,
};

pub fn run_example() -> quenched::Result<()> {
    let regimes = [
        ("corner growth", ScalingRegime::new(2.0, 9.0, 2.0, 1.0, 0.25)?),
        ("permutations", ScalingRegime::new(2.0, 5.0, 2.0, 1.0, 0.0)?),
        ("fixed m", ScalingRegime::new(f64::INFINITY, 3.0, 1.0, 0.0, -0.5)?),
    ];
    for (name, regime) in &regimes {
        let r = convergence_conditions(ConditionFamily::Moment, regime)?;
        println!("{name}: wip={} as={} ({})", r.wip, r.almost_sure, r.reason);
    }

    // A 64 x 64 grid with bounded weights: n = 4096, m = 127, L ~ 20.
    let params = BoundParams { l: 20.0, m: 127.0, n: 4096.0, r: 8.0, k: 1.0, p: 8.0, ..BoundParams::default() };
    println!("t, lemma-22 threshold, tail, sub-gaussian tail");
    for t in [0.5, 1.0, 2.0, 4.0] {
        let b = lemma22_threshold_and_tail(MomentCase::Two, &params, 0.0, 1.0, t)?;
        let g = lemma23_tail(ConcentrationKind::Subgaussian, &params, 0.0, t)?;
        println!("{t}, {:.4}, {:.4}, {:.4}", b.threshold, b.tail, g.tail);
    }

    let stable = BoundParams { alpha: 1.8, alpha_prime: 1.8, levy_mass: 0.5, ..BoundParams::default() };
    for t in [0.5, 1.0, 2.0] {
        let s = lemma26_tail_and_validity(&stable, t)?;
        println!("stable t={t}: tail {:.4} valid {}", s.tail, s.valid);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> quenched::Result<()> {
    run_example()
}
