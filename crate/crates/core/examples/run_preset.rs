// Run a shipped experiment preset at reduced scale and summarize it.
//
// ```bash
// cargo run --release --example run_preset
// ```

use quenched::harness::{preset, rate_fit, run_experiment, wip_tail};

pub fn run_example() -> quenched::Result<()> {
    let mut config = preset("thm12")?;
    config.sizes = vec![8, 16, 32];
    config.n_env = 8;
    config.n_sel = 500;
    let result = run_experiment(&config)?;
    let summary = result.summary(config.epsilon);
    for s in &summary.sizes {
        println!("N={:3} {:3} median {:.4} [{:.4}, {:.4}]", s.n, s.metric, s.median, s.q10, s.q90);
    }
    println!("P(ks > 0.1) by N: {:?}", wip_tail(&result, "ks", 0.1)?);
    let fit = rate_fit(&result, "ks")?;
    println!("median ks ~ N^{:.3} (stderr {:.3})", fit.slope, fit.stderr);
    println!("{}", result.to_csv().lines().take(4).collect::<Vec<_>>().join("\n"));
    Ok(())
}

#[allow(dead_code)]
fn main() -> quenched::Result<()> {
    run_example()
}
