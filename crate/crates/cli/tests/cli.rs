use std::process::{Command, Output};

fn ogdegen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ogdegen")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn formula_n4() {
    let out = ogdegen(&["verify", "formula", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let terms = v["report"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 8);
    assert!(terms.iter().all(|t| t["ok"] == true && t["dimension"] == 4));
    assert!(v["statement"].as_str().unwrap().starts_with("class-formula"));
}

#[test]
fn shape_n8_grid() {
    let out = ogdegen(&["shape", "--n", "8", "--pair", "4,6,7;1,3,5"]);
    assert_eq!(out.status.code(), Some(0));
    let rows: Vec<String> = serde_json::from_value(json(&out)["rows"].clone()).unwrap();
    assert_eq!(rows[0], "0000000000000+++1");
    assert_eq!(rows[7], "*1000000000000000");
}

#[test]
fn cascade_n5_is_deterministic() {
    let a = ogdegen(&["cascade", "--n", "5", "--seed", "7"]);
    let b = ogdegen(&["cascade", "--n", "5", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["leaf_count"], 16);
    assert_eq!(v["leaves_complete"], true);
}

#[test]
fn out_flag_writes_same_bytes() {
    let dir = std::env::temp_dir().join(format!("ogdegen-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("tree.json");
    let out = ogdegen(&["tree", "--n", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read(&path).unwrap(), out.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["shape", "--n", "4", "--pair", "1;1"][..],
        &["shape", "--n", "4", "--pair", "1,2"],
        &["tree", "--n", "0"],
        &["verify", "decomposition", "--n", "2", "--point", "1,x"],
        &["verify", "polytopes-same", "--n", "5"],
        &["nonsense"],
        &["cascade", "--seed", "1"],
    ] {
        let out = ogdegen(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn failing_check_exits_1() {
    // (1/2, 1/2) sits on the wall y_2 = 1.
    let out = ogdegen(&["verify", "decomposition", "--n", "2", "--point", "1/2,1/2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("boundary point"));
}

#[test]
fn n9_point_and_markdown() {
    let out = ogdegen(&[
        "verify",
        "decomposition",
        "--n",
        "9",
        "--point",
        "9/10,9/10,1/10,9/10,9/10,9/10,1/10,1/10,9/10",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["report"]["SC"], serde_json::json!([2, 4, 5, 6, 9]));
    assert_eq!(v["report"]["I"], serde_json::json!([1, 4, 5, 6, 8]));
    assert_eq!(v["report"]["member"], true);
    let md = ogdegen(&["verify", "multiplicity", "--n", "3", "--format", "md"]);
    assert_eq!(md.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&md.stdout).contains("index 2"));
}

#[test]
fn other_subcommands_succeed() {
    for args in [
        &["solve", "--n", "5", "--pair", "4;3", "--seed", "3"][..],
        &["degenerate", "--n", "6", "--pair", ";3", "--dump-matrices"],
        &["matroid", "--n", "3"],
        &["polytope", "--n", "3", "--pair", "1;2"],
        &["verify", "polytopes-same", "--n", "3", "--samples", "10"],
        &["verify", "appendix", "--n", "3", "--points", "5"],
        &["verify", "decomposition", "--n", "3", "--grid", "5"],
    ] {
        let out = ogdegen(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}
