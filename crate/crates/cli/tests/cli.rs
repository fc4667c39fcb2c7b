use std::process::{Command, Output};

fn qpart(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qpart")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn dpoly_at_one_is_n_to_the_r() {
    let o = qpart(&["dpoly", "--n", "6", "--r", "2", "--at", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "36\n");
}

#[test]
fn dpoly_coefficients() {
    let o = qpart(&["dpoly", "--n", "3", "--r", "2"]);
    assert_eq!(stdout(&o), "{\"coefficients\":[2,3,3,1],\"n\":3,\"r\":2}\n");
    let o = qpart(&["dpoly", "--n", "3", "--r", "2", "--format", "table"]);
    assert_eq!(stdout(&o), "2 + 3q + 3q^2 + q^3\n");
    let o = qpart(&["dpoly", "--n", "4", "--r", "2", "--at", "2"]);
    assert_eq!(stdout(&o), "120\n");
}

#[test]
fn di_worked_example_table() {
    let o = qpart(&["di", "--n", "6", "--seq", "3,5,2,3,2", "--format", "table"]);
    assert_eq!(o.status.code(), Some(0));
    let expected = "\
i  a_i  P_(i-1/2)      P_i               shape      w_a            BS=Des
0                      [1,2,3,4,5,6]     (6)        (1,2,3,4,5,6)  {}
1  3    [1,2,4,5,6]    [1,2,3,5,6][4]    (5,1)      (1,2,4,5,6,3)  {3}
2  5    [1,2,3,6][4]   [1,2,3,5][4,6]    (4,2)      (1,2,4,6,3,5)  {3,5}
3  2    [1,3,5][4,6]   [1,2,5][3,6][4]   (3,2,1)    (1,4,6,3,5,2)  {2,3,5}
4  3    [1,2,5][4,6]   [1,2,3][4,5][6]   (3,2,1)    (1,4,6,5,2,3)  {3,5}
5  2    [1,3][4,5][6]  [1,2][3,5][4][6]  (2,2,1,1)  (1,4,6,5,3,2)  {2,3,5}
Q = ((6),(5),(5,1),(4,1),(4,2),(3,2),(3,2,1),(3,2),(3,2,1),(2,2,1),(2,2,1,1))
";
    assert_eq!(stdout(&o), expected);
}

#[test]
fn di_json_small() {
    let o = qpart(&["di", "--n", "2", "--seq", "2,1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["insertion"], serde_json::json!([[1], [2]]));
    assert_eq!(v["recording"], serde_json::json!([[2], [1], [2], [1], [1, 1]]));
    assert_eq!(v["steps"][1]["descents"], serde_json::json!([1]));
}

#[test]
fn bratteli_outputs() {
    let o = qpart(&["bratteli", "--n", "6", "--levels", "3", "--format", "dot"]);
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph bratteli_6 {"));
    assert!(dot.contains("\"(5,1) | 10\""));
    assert!(dot.contains("\"(3,2,1) | 2\""));
    let o = qpart(&["bratteli", "--n", "2", "--levels", "0.5"]);
    assert_eq!(
        stdout(&o),
        "{\"levels\":[{\"level\":\"0\",\"vertices\":[{\"below\":[],\"multiplicity\":1,\"partition\":[2]}]},\
{\"level\":\"0.5\",\"vertices\":[{\"below\":[[2]],\"multiplicity\":1,\"partition\":[1]}]}],\"max_level\":\"0.5\",\"n\":2}\n"
    );
}

#[test]
fn qsp_counts_and_listing() {
    let o = qpart(&["qsp", "--n", "4", "--r", "2", "--q", "2", "--count-only"]);
    assert_eq!(stdout(&o), "120\n");
    let o = qpart(&["qsp", "--n", "2", "--r", "1", "--q", "2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["count"], 3);
    let o = qpart(&["qsp", "--n", "2", "--r", "1", "--q", "2", "--format", "table"]);
    assert_eq!(stdout(&o), "[(0;)]\n+-+\n\n[(1;0)]\n|0|\n+-+\n\n[(1;1)]\n|1|\n+-+\n");
}

#[test]
fn rep_matrices() {
    let o = qpart(&["rep", "--n", "2", "--r", "1", "--q", "2", "--gen", "s1"]);
    assert_eq!(stdout(&o), "{\"dim\":3,\"entries\":[[1,0],[0,1],[2,2]]}\n");
    let o = qpart(&["rep", "--n", "2", "--r", "1", "--q", "2", "--gen", "matrix:1,1,0,1", "--format", "table"]);
    assert_eq!(stdout(&o), "1 0 0\n0 0 1\n0 1 0\n");
    let o = qpart(&["rep", "--n", "4", "--r", "2", "--q", "2", "--gen", "x:1,2,1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dim"], 120);
    assert_eq!(v["entries"].as_array().unwrap().len(), 120);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["bratteli", "--n", "5", "--levels", "3", "--format", "dot"][..],
        &["qsp", "--n", "3", "--r", "2", "--q", "3"],
        &["rep", "--n", "3", "--r", "2", "--q", "2", "--gen", "h:2,1"],
        &["di", "--n", "4", "--seq", "1,4,2,2,3"],
    ] {
        assert_eq!(qpart(args).stdout, qpart(args).stdout, "{args:?}");
    }
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(qpart(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(qpart(&["dpoly", "--n", "3"]).status.code(), Some(2));
    assert_eq!(qpart(&["dpoly", "--n", "3", "--r", "2", "--bogus"]).status.code(), Some(2));
    assert_eq!(qpart(&["rep", "--n", "2", "--r", "1", "--q", "4", "--gen", "s1"]).status.code(), Some(2));
    assert_eq!(qpart(&["rep", "--n", "2", "--r", "1", "--q", "2", "--gen", "s7"]).status.code(), Some(2));
    assert_eq!(qpart(&["di", "--n", "3", "--seq", "1,4"]).status.code(), Some(2));
    assert_eq!(qpart(&["verify", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn guards_exit_3_with_the_guard_name() {
    let o = qpart(&["rep", "--n", "4", "--r", "4", "--q", "5", "--gen", "s1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("max_dim"));
    let o = qpart(&["verify", "--suite", "commutant", "--max-dim", "10"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("max_dim"));
    let o = qpart(&["qsp", "--n", "3", "--r", "3", "--q", "3", "--max-enumeration", "5"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("qsp_enumeration"));
}

#[test]
fn verify_commutant_suite() {
    let o = qpart(&["verify", "--suite", "commutant", "--max-n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("PASS 9."));
    assert!(out.contains("(2,1,2) -> 2"));
    assert!(out.contains("(2,1,3) -> 2"));
    assert!(out.contains("(4,2,2) -> 15"));
}

#[test]
fn verify_basis_suite() {
    let o = qpart(&["verify", "--suite", "basis", "--max-n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 2);
    assert!(lines.iter().all(|l| l.starts_with("PASS")));
}
