use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn wtdim(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_wtdim"))
        .args(args)
        .env_remove("WTDIM_MAX_N_DIM")
        .env_remove("WTDIM_MAX_N_RES")
        .env_remove("WTDIM_MAX_N_COLOR")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str], stdin: Option<&str>) -> String {
    let out = wtdim(args, stdin);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str], stdin: Option<&str>) -> Value {
    serde_json::from_str(&ok(args, stdin)).expect("valid json")
}

fn first_result(v: &Value) -> &Value {
    &v["results"][0]
}

fn triple(r: &Value) -> (u64, u64, u64) {
    (
        r["dim"].as_u64().unwrap(),
        r["dim_wt"].as_u64().unwrap(),
        r["res_wt"].as_u64().unwrap(),
    )
}

#[test]
fn compute_path_from_edge_list() {
    let v = json(&["compute", "-i", "-"], Some("4 3\n0 1\n1 2\n2 3\n"));
    assert_eq!(v["schema"], "wtdim.compute/1");
    let r = first_result(&v);
    assert_eq!(triple(r), (1, 2, 3));
    assert_eq!(r["tree"]["kind"], "path");
    assert_eq!(r["tree"]["constructed_is_wtr"], true);
}

#[test]
fn compute_odd_cycle_is_randomly_weak_total() {
    let v = json(&["compute", "-f", "cycle:5"], None);
    let r = first_result(&v);
    assert_eq!(triple(r), (2, 3, 3));
    assert_eq!(r["randomly_wt_k"], 3);
    assert!(r.get("tree").is_none());
}

#[test]
fn compute_star_reports_tree_data() {
    let v = json(&["compute", "-f", "star:4"], None);
    let r = first_result(&v);
    assert_eq!(triple(r), (3, 4, 5));
    assert_eq!(r["tree"]["mu"], 1);
    assert_eq!(r["tree"]["theta"], 2);
    assert_eq!(r["tree"]["branches"].as_array().unwrap().len(), 4);
    assert_eq!(r["wtmbs"][0], serde_json::json!([1, 2, 3, 4]));
    assert_eq!(r["twins"], serde_json::json!([1, 2, 3, 4]));
}

#[test]
fn compute_double_spider() {
    let v = json(&["compute", "-f", "double-spider:3"], None);
    let r = first_result(&v);
    assert_eq!(r["dim_wt"], 4);
    assert_eq!(r["res_wt"], 8);
    assert_eq!(r["tree"]["mu"], 2);
}

#[test]
fn witnesses_are_sorted() {
    let v = json(&["compute", "-f", "all-connected:4"], None);
    for r in v["results"].as_array().unwrap() {
        for key in ["metric_bases", "wtmbs"] {
            for w in r[key].as_array().unwrap() {
                let xs: Vec<u64> = w
                    .as_array()
                    .unwrap()
                    .iter()
                    .map(|x| x.as_u64().unwrap())
                    .collect();
                assert!(xs.windows(2).all(|p| p[0] < p[1]), "{xs:?}");
            }
        }
    }
}

#[test]
fn graph6_input_from_stdin() {
    let v = json(
        &["compute", "-i", "-", "--format", "graph6"],
        Some("Dhc\nCr\n"),
    );
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 2);
    assert_eq!(triple(&results[0]), (2, 3, 3));
}

#[test]
fn generate_all_trees_of_order_five() {
    let out = ok(&["generate", "-f", "all-trees:5"], None);
    assert_eq!(out.lines().count(), 125);
}

#[test]
fn generate_random_tree_is_reproducible() {
    let a = ok(&["generate", "-f", "random-tree:20", "--seed", "7"], None);
    let b = ok(&["generate", "-f", "random-tree:20", "--seed", "7"], None);
    assert_eq!(a, b);
    assert_eq!(a.lines().count(), 1);
}

#[test]
fn generate_thm9_graph() {
    let out = ok(&["generate", "-f", "thm9:4,6"], None);
    assert_eq!(out.lines().count(), 1);
    let v = json(&["compute", "-i", "-"], Some(&out));
    let r = first_result(&v);
    assert_eq!(
        (r["dim_wt"].as_u64(), r["res_wt"].as_u64()),
        (Some(4), Some(6))
    );
    assert_eq!(r["order"], 6);
}

#[test]
fn generate_compute_round_trip_is_stable() {
    let edges = ok(
        &["generate", "-f", "all-connected:4", "--format", "edgelist"],
        None,
    );
    let a = ok(&["compute", "-i", "-"], Some(&edges));
    let b = ok(&["--jobs", "1", "compute", "-i", "-"], Some(&edges));
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["results"].as_array().unwrap().len(), 38);
}

#[test]
fn bad_family_parameters() {
    let out = wtdim(&["generate", "-f", "thm9:5,4"], None);
    assert!(!out.status.success());
}

#[test]
fn verify_rejects_unknown_theorem() {
    let out = wtdim(&["verify", "-f", "cycle:6", "-t", "bogus"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown theorem id `bogus`"));
}

#[test]
fn verify_even_cycle_classification() {
    let c6 = ok(&["generate", "-f", "cycle:6"], None);
    let v = json(
        &[
            "verify",
            "-i",
            "-",
            "-t",
            "res3-classification",
            "-o",
            "json",
        ],
        Some(&c6),
    );
    assert_eq!(v["schema"], "wtdim.verify/1");
    assert_eq!(v["passed"], true);
    assert_eq!(v["reports"][0]["verdict"], "pass");
    assert_eq!(v["reports"][0]["applicable"], 1);
}

#[test]
fn verify_exit_status_reflects_failure() {
    // a tree on which the closed form for dim_wt undercounts
    let out = wtdim(
        &["verify", "-i", "-", "-t", "dimwt-formula", "-o", "json"],
        Some("KAG?@aK_?S?O\n"),
    );
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], false);
    assert_eq!(
        v["reports"][0]["counterexamples"][0]["graph6"],
        "KAG?@aK_?S?O"
    );
}

#[test]
fn parse_errors_name_the_line() {
    let out = wtdim(
        &["compute", "-i", "-", "--format", "edgelist"],
        Some("3 2\n0 1\n1 x\n"),
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn limits_are_errors_not_hangs() {
    let out = wtdim(&["compute", "-f", "path:21"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("n <= 20"));
    let out = wtdim(&["compute", "-f", "path:18", "--max-n", "18"], None);
    assert!(!out.status.success(), "raising limits needs --allow-large");
    let env_limited = Command::new(env!("CARGO_BIN_EXE_wtdim"))
        .args(["compute", "-f", "cycle:9"])
        .env("WTDIM_MAX_N_DIM", "8")
        .output()
        .unwrap();
    assert_eq!(env_limited.status.code(), Some(2));
}

#[test]
fn tree_command_skips_exact_values_for_large_trees() {
    let v = json(&["tree", "-f", "random-tree:40", "--seed", "3"], None);
    assert_eq!(v["schema"], "wtdim.tree/1");
    let r = first_result(&v);
    assert!(r["exact"].is_null());
    assert!(r["constructed_is_wtr"].is_boolean());
    assert_eq!(r["order"], 40);
    let out = wtdim(&["tree", "-f", "cycle:5"], None);
    assert!(!out.status.success());
}

#[test]
fn csv_and_table_outputs() {
    let csv = ok(&["compute", "-f", "cycle:7", "-o", "csv"], None);
    let mut lines = csv.lines();
    assert!(lines
        .next()
        .unwrap()
        .starts_with("index,graph6,n,m,dim,dim_wt,res_wt"));
    assert!(lines.next().unwrap().contains(",2,3,3,3,"));
    let table = ok(&["list-theorems"], None);
    assert!(table.lines().any(|l| l.starts_with("lemma1 ")));
}
