#[allow(dead_code)]
mod exact_inclusion {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/exact_inclusion.rs"));
}

#[allow(dead_code)]
mod sample_environments {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/sample_environments.rs"));
}

#[allow(dead_code)]
mod quenched_clt {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/quenched_clt.rs"));
}

#[allow(dead_code)]
mod fixed_m_sums {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/fixed_m_sums.rs"));
}

#[allow(dead_code)]
mod stable_layers {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/stable_layers.rs"));
}

#[allow(dead_code)]
mod bounds_and_conditions {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/bounds_and_conditions.rs"));
}

#[allow(dead_code)]
mod run_preset {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/run_preset.rs"));
}

#[test]
fn exact_inclusion_runs() {
    exact_inclusion::run_example().expect("exact_inclusion example should run");
}

#[test]
fn sample_environments_runs() {
    sample_environments::run_example().expect("sample_environments example should run");
}

#[test]
fn quenched_clt_runs() {
    quenched_clt::run_example().expect("quenched_clt example should run");
}

#[test]
fn fixed_m_sums_runs() {
    fixed_m_sums::run_example().expect("fixed_m_sums example should run");
}

#[test]
fn stable_layers_runs() {
    stable_layers::run_example().expect("stable_layers example should run");
}

#[test]
fn bounds_and_conditions_runs() {
    bounds_and_conditions::run_example().expect("bounds_and_conditions example should run");
}

#[test]
fn run_preset_runs() {
    run_preset::run_example().expect("run_preset example should run");
}
