use std::process::{Command, Output};

use serde_json::Value;

fn genera(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_genera"))
        .args(args)
        .env_remove("GENERA_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn genus_in_every_basis() {
    let cases = [
        (
            ["--type", "ahat", "--k", "2", "--basis", "p"],
            "(-4p2 + 7p1^2)/5760",
        ),
        (
            ["--type", "l", "--k", "3", "--basis", "p"],
            "(62p3 - 13p1p2 + 2p1^3)/945",
        ),
        (
            ["--type", "ahat", "--k", "3", "--basis", "E"],
            "(-16E6 - 42E2E4 - 35E2^3)/2903040",
        ),
        (
            ["--type", "ahat", "--k", "3", "--basis", "G"],
            "(-G6 + 15G2G4 - 15G2^3)/720",
        ),
    ];
    for (args, want) in cases {
        let mut full = vec!["genus"];
        full.extend(args);
        let o = genera(&full);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o).trim(), want);
    }
}

#[test]
fn genus_json_schema() {
    let o = genera(&["genus", "--type", "l", "--k", "2", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["weight"], 2);
    assert_eq!(v["basis"], "p");
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    for t in terms {
        let c = t[1].as_str().unwrap();
        assert!(c.contains('/'), "{c}");
    }
}

#[test]
fn witten_in_eisenstein_bases_only() {
    let o = genera(&["genus", "--type", "witten", "--k", "3", "--basis", "G"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1/720 G6");
    for basis in ["p", "s"] {
        let o = genera(&["genus", "--type", "witten", "--k", "3", "--basis", basis]);
        assert_eq!(o.status.code(), Some(2));
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn u_series_text_and_json() {
    let o = genera(&["u-series", "--k", "2", "--order", "3"]);
    assert_eq!(stdout(&o).trim(), "1 - 240q - 720q^2 + 960q^3");
    let o = genera(&["u-series", "--k", "1", "--order", "2", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["truncation"], 2);
    assert_eq!(v["coeffs"][1][1], "-24/1");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["genus", "--type", "ahat"],
        vec!["genus", "--type", "x", "--k", "1"],
        vec!["verify", "--suite", "nope"],
        vec!["verify", "--suite", "theta", "--s-grid", "0.5,1.0"],
    ] {
        assert_eq!(genera(&args).status.code(), Some(2), "{args:?}");
    }
    let o = Command::new(env!("CARGO_BIN_EXE_genera"))
        .args(["verify", "--suite", "traces"])
        .env("GENERA_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_json_report_schema() {
    let o = genera(&[
        "verify",
        "--suite",
        "ramanujan",
        "--k-max",
        "3",
        "--q-order",
        "20",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "pass");
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 6);
    for r in reports {
        for key in ["claim", "k", "order", "status", "diff", "tier"] {
            assert!(r.get(key).is_some(), "{key} missing");
        }
        assert_eq!(r["tier"], "exact");
    }
}

#[test]
fn thread_cap_gives_identical_output() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_genera"))
            .args(["verify", "--suite", "traces", "--k-max", "6"])
            .env("GENERA_THREADS", threads)
            .output()
            .unwrap()
    };
    let one = run("1");
    let four = run("4");
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn theta_suite_writes_csv() {
    let dir = std::env::temp_dir().join(format!("genera-csv-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("conv.csv");
    let o = genera(&[
        "verify",
        "--suite",
        "theta",
        "--lattice-cutoff",
        "80",
        "--sigma-cutoff",
        "200",
        "--s-grid",
        "1.0,0.5",
        "--csv",
        path.to_str().unwrap(),
    ]);
    assert!(matches!(o.status.code(), Some(0) | Some(1)));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("claim,s,M,lhs_re,lhs_im,rhs_re,rhs_im,abs_residual")
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 2 * (3 + 2 * 9));
    assert!(rows.iter().all(|r| r.split(',').count() == 8));
    std::fs::remove_dir_all(&dir).unwrap();
}
