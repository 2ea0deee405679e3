// Exact inclusion probabilities and the L statistic for each selection scheme.
//
// ```bash
// cargo run --example exact_inclusion
// ```

use quenched::selectors::{lambda_fit, SchemeFamily, SelectionScheme};

pub fn run_example() -> quenched::Result<()> {
    let path = SelectionScheme::UpRightPath { rows: 3, cols: 3 };
    println!("3x3 up-right paths: {} of them", path.count_configurations()?);
    let table = path.inclusion_table()?;
    for site in 0..9 {
        let (i, j) = path.ground_set().coords(site);
        println!("  P(({i},{j}) in path) = {}", table.probability(site));
    }
    println!("  L^2 = {}", path.l_squared()?);

    let schemes = [
        SelectionScheme::UpRightPathThrough { rows: 8, cols: 8, waypoints: vec![(2, 6)] },
        SelectionScheme::UpRightPathAvoidSquare { side: 8, beta: 0.5 },
        SelectionScheme::UniformSubset { n: 64, m: 15 },
        SelectionScheme::UniformPermutation { n: 8 },
    ];
    for s in &schemes {
        println!("{s:?}: count {}, L = {:.4}", s.count_configurations()?, s.l_statistic()?);
    }

    let sizes = [16, 32, 64, 128, 256];
    let fit = lambda_fit(&SchemeFamily::Path { aspect: 1.0 }, &sizes)?;
    println!("L(N) ~ N^{:.4} (stderr {:.4}) over N in {sizes:?}", fit.slope, fit.stderr);
    Ok(())
}

#[allow(dead_code)]
fn main() -> quenched::Result<()> {
    run_example()
}
