use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twistgt")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn sl2_verify_passes() {
    let o = run(&["verify", "--rank", "1", "--alpha", "simple:1", "--cutoff", "8"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["passed"], true);
    let checks = report["result"]["verify"]["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["name"] == "sl2_closed_form"));
}

#[test]
fn theta_weight_count_in_csv() {
    let o = run(&["weights", "--rank", "2", "--alpha", "highest", "--cutoff", "4", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("w1,w2,quantity,value"));
    assert!(lines.any(|l| l == "1,1,dim,5"), "{text}");
}

#[test]
fn levi_alpha_is_a_config_error() {
    let o = run(&["gt", "--rank", "2", "--sigma", "1", "--alpha", "1,0"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("T_alpha(M) = 0"), "{err}");
    assert!(o.stdout.is_empty());
}

#[test]
fn other_config_errors() {
    for args in [
        vec!["weights", "--rank", "2", "--sigma", "1", "--lambda", "1/2,0"],
        vec!["weights", "--rank", "2", "--alpha", "2,1"],
        vec!["weights", "--rank", "2", "--lambda", "1"],
        vec!["weights", "--type", "E", "--rank", "6"],
        vec!["weights", "--rank", "2", "--sigma", "3"],
        vec!["weights", "--rank", "2", "--lambda", "x"],
    ] {
        assert_eq!(run(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn negative_lambda_is_accepted() {
    let o = run(&["weights", "--rank", "2", "--lambda", "-1/3,2", "--cutoff", "2"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn reports_are_deterministic() {
    let args = ["verify", "--rank", "2", "--lambda", "1/3,2/7", "--cutoff", "4", "--seed", "7"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("twistgt-cli-test-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let o = run(&["lattice", "--rank", "2", "--cutoff", "3", "--out", p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["result"]["lattice"]["predicted"], "infinite");
}

#[test]
fn realize_and_gt_run() {
    let o = run(&["realize", "--rank", "2", "--lambda", "1/3,2/7", "--cutoff", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["gt", "--rank", "2", "--lambda", "0,2", "--cutoff", "6", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l.ends_with("_jordan,2")));
}
