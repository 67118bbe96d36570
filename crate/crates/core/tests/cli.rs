use std::process::Command;

use serde_json::{json, Value};

fn piles(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_piles")).args(args).output().expect("binary runs");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let stderr = String::from_utf8(out.stderr).unwrap();
    let value = if stdout.trim().is_empty() { Value::Null } else { serde_json::from_str(&stdout).unwrap() };
    (out.status.code().unwrap(), value, stderr)
}

fn regular(n: usize) -> Value {
    json!({"size": n, "action": (0..n).map(|t| (0..n).map(|g| (t + g) % n).collect::<Vec<_>>()).collect::<Vec<_>>()})
}

fn ep(cover: &str, alpha_group: Vec<usize>, alpha_space: Vec<usize>, cover_size: usize) -> String {
    json!({
        "source": {"group": "C2", "space": regular(2)},
        "target": {"group": "C2", "space": regular(2)},
        "cover": {"group": cover, "space": regular(cover_size)},
        "phi": {"group_map": [0, 1], "space_map": [0, 1]},
        "alpha": {"group_map": alpha_group, "space_map": alpha_space},
    })
    .to_string()
}

#[test]
fn group_queries() {
    let (code, v, _) = piles(&["group", "validate", "--group", r#""D4""#]);
    assert_eq!(code, 0);
    assert_eq!(v["order"], 8);
    let (code, v, _) = piles(&["group", "quotient", "--group", r#""C4""#, "--normal", "[0,2]"]);
    assert_eq!(code, 0);
    assert_eq!(v["group"]["order"], 2);
    let (_, v, _) = piles(&["group", "homs", "--source", r#""C2""#, "--target", r#""C4""#]);
    assert_eq!(v["count"], 2);
}

#[test]
fn bad_identity_is_invalid_input() {
    let g = r#"{"order":2,"mul":[[1,0],[0,1]]}"#;
    let (code, _, err) = piles(&["group", "validate", "--group", g]);
    assert_eq!(code, 2);
    let e: Value = serde_json::from_str(&err).unwrap();
    assert!(e["error"].is_string());
}

#[test]
fn standard_extension_and_rigid_quotient() {
    let (code, v, _) = piles(&["pile", "standard-ext", "--group", r#""C2""#, "--subgroups", r#"[["a",[0]],["b",[0,1]]]"#]);
    assert_eq!(code, 0);
    assert_eq!(v["pile"]["space"]["size"], 3);

    let c4 = json!({"group": "C4", "space": regular(4)}).to_string();
    let (code, q, _) = piles(&["pile", "quotient", "--pile", &c4, "--normal", "[0,2]"]);
    assert_eq!(code, 0);
    assert_eq!(q["rigid"], true);
    let target = q["pile"].to_string();
    let (code, v, _) = piles(&[
        "pile", "check-rigid", "--source", &c4, "--target", &target, "--morphism", &q["morphism"].to_string(),
    ]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["rigid"], true);
}

#[test]
fn pile_problems_solve_or_exit_3() {
    let solvable = ep("C2", vec![0, 1], vec![0, 1], 2);
    let (code, v, _) = piles(&["ep", "solve-pile", "--ep", &solvable]);
    assert_eq!(code, 0);
    assert_eq!(v["solution"]["group_map"], json!([0, 1]));

    let split_free = ep("C4", vec![0, 1, 0, 1], vec![0, 1, 0, 1], 4);
    let (code, v, _) = piles(&["ep", "solve-pile", "--ep", &split_free]);
    assert_eq!(code, 3);
    assert_eq!(v["solved"], false);
}

#[test]
fn hom_counts_and_profiles() {
    let c2 = r#"{"factors":["C2"],"free_letters":0,"relators":[]}"#;
    let x = r#"{"factors":[],"free_letters":1,"relators":[]}"#;
    let (code, v, _) = piles(&["pres", "hom-count", "--pres", c2, "--target", r#""C4""#]);
    assert_eq!((code, v), (0, json!({"count": 2})));
    let (code, _, _) = piles(&["pres", "compare-profiles", "--left", c2, "--right", c2]);
    assert_eq!(code, 0);
    let (code, v, _) = piles(&["pres", "compare-profiles", "--left", c2, "--right", x]);
    assert_eq!(code, 4);
    assert_eq!(v["equal"], false);
}

#[test]
fn phnn_of_a_fixed_point_mod_l_is_free() {
    let pile = json!({"group": "C2", "space": {"size": 1, "action": [[0, 0]]}}).to_string();
    let (code, phnn, _) = piles(&["pres", "build-phnn", "--pile", &pile]);
    assert_eq!(code, 0);
    let (code, q, _) = piles(&["pres", "mod-l", "--pres", &phnn.to_string()]);
    assert_eq!(code, 0);
    let (_, v, _) = piles(&["pres", "hom-count", "--pres", &q.to_string(), "--target", r#""D4""#]);
    assert_eq!(v["count"], 8);
}

#[test]
fn verify_is_reproducible() {
    let args = ["--seed", "3", "--no-timestamp", "verify", "cartesian-rigid", "--count", "5"];
    let a = Command::new(env!("CARGO_BIN_EXE_piles")).args(args).output().unwrap();
    let b = Command::new(env!("CARGO_BIN_EXE_piles")).args(args).output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["passed"], 5);
    assert!(v.get("wall_time_ms").is_none());
}

#[test]
fn unknown_suite_exits_2() {
    let (code, _, err) = piles(&["verify", "nonsense"]);
    assert_eq!(code, 2);
    let e: Value = serde_json::from_str(&err).unwrap();
    assert_eq!(e["error"], "UnknownSuite");
}

#[test]
fn out_flag_writes_the_report() {
    let dir = std::env::temp_dir().join(format!("piles-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("count.json");
    let c2 = r#"{"factors":["C2"],"free_letters":0,"relators":[]}"#;
    let (code, v, _) = piles(&["--out", path.to_str().unwrap(), "pres", "hom-count", "--pres", c2, "--target", r#""C2""#]);
    assert_eq!(code, 0);
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written, v);
    std::fs::remove_dir_all(dir).unwrap();
}
