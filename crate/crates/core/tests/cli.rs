use std::process::{Command, Output};

fn quenched(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quenched")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn inclusion_table_for_a_small_grid() {
    let o = quenched(&["inclusion", "--scheme", "uprr", "--N", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("i,j,p_num,p_den,p_float"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 9);
    assert!(rows.contains(&"2,2,2,3,0.6666666666666666"));
    assert!(rows.contains(&"1,1,1,1,1"));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("L^2 = 7/2"), "{err}");
}

#[test]
fn infeasible_waypoints_exit_three() {
    let o = quenched(&["inclusion", "--scheme", "through", "--N", "4", "--waypoint", "1,3", "--waypoint", "3,1"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(quenched(&["inclusion", "--scheme", "nope", "--N", "3"]).status.code(), Some(2));
    assert_eq!(quenched(&["simulate", "--preset", "no-such-preset"]).status.code(), Some(2));
    assert_eq!(quenched(&[]).status.code(), Some(2));
}

#[test]
fn check_conditions_reports_thresholds() {
    let o = quenched(&["check-conditions", "--alpha", "2", "--p", "9", "--eta", "2", "--mu", "1", "--lambda", "0.25"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("wip_threshold=8"), "{text}");
    assert!(text.contains("almost_sure_threshold=12"), "{text}");
    assert!(text.contains("wip=true"), "{text}");
    assert!(text.contains("almost_sure=false"), "{text}");
}

#[test]
fn bounds_table_has_requested_rows() {
    let o = quenched(&["bounds", "--lemma", "26", "--t-min", "1", "--t-max", "2", "--t-steps", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 4);
}

#[test]
fn simulate_writes_results_and_rate_reads_them() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("tiny.toml");
    std::fs::write(
        &config,
        r#"
name = "tiny"
seed = 5
sizes = [4, 8, 16]
n_env = 3
n_sel = 300
metrics = ["ks", "w1"]

[model]
kind = "iid"
base = "gaussian"
p = 2

[scheme]
kind = "path"
"#,
    )
    .unwrap();
    let out = dir.path().join("tiny.json");
    let o = quenched(&["simulate", "--config", config.to_str().unwrap(), "--output", out.to_str().unwrap(), "--threads", "2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(out.exists());
    assert!(dir.path().join("tiny.json.summary.json").exists());

    let o = quenched(&["rate", "--input", out.to_str().unwrap(), "--metric", "ks"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("slope"), "{}", stdout(&o));
}

#[test]
fn simulate_to_stdout_is_csv() {
    let o = quenched(&["simulate", "--preset", "lemma31-lambda", "--seed", "1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("N,rep,metric,value\n"));
    assert!(text.lines().skip(1).all(|l| l.split(',').nth(2) == Some("L")));
}
