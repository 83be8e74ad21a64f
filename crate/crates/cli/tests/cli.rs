use std::process::{Command, Output};

fn gammapprox(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gammapprox"))
        .args(args)
        .env("SOURCE_DATE_EPOCH", "1700000000")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn body(o: &Output) -> Vec<String> {
    stdout(o)
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(str::to_string)
        .collect()
}

#[test]
fn build_euler_table() {
    let o = gammapprox(&["build", "--family", "euler", "--n-max", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        body(&o),
        [
            "n,F1_coeffs,F2_coeffs",
            "0,0,1",
            "1,3 -5,1 2",
            "2,9/2 -2 -47/4,1 12 3"
        ]
    );
    let text = stdout(&o);
    assert!(text.contains("# timestamp: 1700000000\n"));
    assert!(text.contains("# command: build\n"));
}

#[test]
fn build_gompertz_json() {
    let o = gammapprox(&[
        "build", "--family", "gompertz", "--n-list", "2", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rows"][0]["F1_coeffs"], "-9/2 -35/2");
    assert_eq!(v["manifest"]["family"], "gompertz");
    assert_eq!(v["manifest"]["output_format"], "json");
}

#[test]
fn reruns_are_identical() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<String> = (0..2)
        .map(|i| {
            dir.path()
                .join(format!("run{i}.csv"))
                .to_string_lossy()
                .into_owned()
        })
        .collect();
    for p in &paths {
        let o = gammapprox(&[
            "converge", "--family", "gompertz", "--n-list", "1,5,9", "--out", p,
        ]);
        assert_eq!(o.status.code(), Some(0));
        assert!(o.stdout.is_empty());
    }
    let a = std::fs::read(&paths[0]).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, std::fs::read(&paths[1]).unwrap());
}

#[test]
fn csv_and_json_agree() {
    let csv = gammapprox(&["converge", "--n-list", "0,3,6"]);
    let json = gammapprox(&["converge", "--n-list", "0,3,6", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    let lines = body(&csv);
    let header: Vec<&str> = lines[0].split(',').collect();
    for (line, row) in lines[1..].iter().zip(v["rows"].as_array().unwrap()) {
        for (name, field) in header.iter().zip(line.split(',')) {
            let j = &row[*name];
            if field.is_empty() {
                assert!(j.is_null(), "{name}");
            } else {
                assert_eq!(field.parse::<f64>().unwrap(), j.as_f64().unwrap(), "{name}");
            }
        }
    }
}

#[test]
fn converge_gompertz_first_row() {
    let o = gammapprox(&[
        "converge", "--family", "gompertz", "--n-list", "1", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let err = v["rows"][0]["log_abs_error"].as_f64().unwrap().exp();
    assert!((err - 3.6526e-3).abs() < 1e-7, "{err}");
}

#[test]
fn scaled_argument_is_recorded() {
    let o = gammapprox(&["converge", "--x", "1/2", "--x-scale", "n", "--n-list", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("# x: 1/2\n") && text.contains("# x_scale: n\n"));
    // x·n = 1 at n = 2
    let plain = gammapprox(&["converge", "--n-list", "2"]);
    assert_eq!(body(&o), body(&plain));
}

#[test]
fn verify_passes_and_reports() {
    let o = gammapprox(&["verify", "recurrence", "laguerre", "--n-max", "12"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = body(&o);
    assert_eq!(rows[0], "suite,checks,passed,first_counterexample,notes");
    assert!(rows[1].starts_with("recurrence,52,true"));
    assert!(rows[2].starts_with("laguerre,13,true"));
}

#[test]
fn verify_empty_range() {
    let o = gammapprox(&["verify", "integrality", "--n-list", ""]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(body(&o)[1], "integrality,0,true,,");
}

#[test]
fn baseline_table() {
    let o = gammapprox(&[
        "baseline", "--n-list", "0,2", "--a-list", "2", "--p-list", "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let rows = body(&o);
    assert_eq!(rows.len(), 1 + 4 * 2);
    assert!(rows[1].starts_with("pilehrood:2,0,0.0,"));
    assert!(rows[1].ends_with(','), "r undefined at n = 0");
}

#[test]
fn exit_codes() {
    assert_eq!(
        gammapprox(&["build", "--family", "nope"]).status.code(),
        Some(2)
    );
    assert_eq!(
        gammapprox(&["converge", "--x", "one"]).status.code(),
        Some(2)
    );
    assert_eq!(
        gammapprox(&["converge", "--x", "-1", "--n-list", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        gammapprox(&[
            "converge",
            "--family",
            "pilehrood:2",
            "--x",
            "2",
            "--n-list",
            "1"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(gammapprox(&["verify", "everything"]).status.code(), Some(2));
    assert_eq!(
        gammapprox(&["converge", "--precision-bits", "4000000", "--n-list", "1"])
            .status
            .code(),
        Some(3)
    );
}
