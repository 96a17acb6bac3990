use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str], stdin: &str) -> Output {
    run_env(args, stdin, &[])
}

fn run_env(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_diam2"))
        .args(args)
        .envs(env.iter().copied())
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json_lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn petersen_g6() -> String {
    let out = run(&["construct", "named", "petersen"], "");
    json_lines(&out)[0]["graph6"].as_str().unwrap().to_string()
}

#[test]
fn verify_exit_codes() {
    let ok = run(&["verify", "--s", "2", "--t", "3"], &format!("{}\n", petersen_g6()));
    assert_eq!(ok.status.code(), Some(0));
    let v = &json_lines(&ok)[0];
    assert_eq!(v["is_witness"], true);
    assert_eq!(v["line"], 1);

    let k19 = {
        let edges: Vec<(usize, usize)> = (1..10).map(|v| (0, v)).collect();
        diam2::to_graph6(&diam2::Graph::from_edges(10, edges).unwrap())
    };
    let bad = run(&["verify"], &format!("{k19}\n"));
    assert_eq!(bad.status.code(), Some(1));
    let v = &json_lines(&bad)[0];
    assert_eq!((v["is_witness"].clone(), v["is_star"].clone()), (Value::Bool(false), Value::Bool(true)));

    let parse = run(&["verify"], &format!("{}\nnot graph6!\n", petersen_g6()));
    assert_eq!(parse.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&parse.stderr).contains("line 2"));

    assert_eq!(run(&["verify", "--s", "3", "--t", "2"], "").status.code(), Some(2));
    assert_eq!(run(&["no-such-command"], "").status.code(), Some(2));
}

#[test]
fn verify_theorems_flag() {
    let out = run(&["verify", "--theorems"], &format!(">>graph6<<{}\n", petersen_g6()));
    assert_eq!(out.status.code(), Some(0));
    let v = &json_lines(&out)[0];
    assert_eq!(v["theorems"]["degree_bound"], true);
    assert_eq!(v["theorems"]["degree_sums"]["holds"], true);
    assert_eq!(v["theorems"]["max_degree_floor"], true);
}

#[test]
fn enumerate_small_census() {
    let out = run(&["enumerate", "--n-max", "10", "--s", "2", "--t", "3"], "");
    assert_eq!(out.status.code(), Some(0));
    let lines = json_lines(&out);
    let witnesses = lines.iter().filter(|v| v["type"] == "witness").count();
    assert_eq!(witnesses, 8);
    let summary = lines.last().unwrap();
    assert_eq!(summary["total"], 8);
    let g6 = run(&["enumerate", "--n-max", "10", "--graph6"], "");
    assert_eq!(String::from_utf8_lossy(&g6.stdout).lines().count(), 8);
    // every enumerated graph verifies
    let check = run(&["verify"], &String::from_utf8_lossy(&g6.stdout));
    assert_eq!(check.status.code(), Some(0));
}

#[test]
fn cayley_clebsch() {
    let out = run(&["cayley", "--group", "2,2,2,2", "--k", "5"], "");
    assert_eq!(out.status.code(), Some(0));
    let lines = json_lines(&out);
    let classes: Vec<&Value> = lines.iter().filter(|v| v["type"] == "class").collect();
    assert_eq!(classes.len(), 1);
    let clebsch = run(&["construct", "named", "clebsch"], "");
    let form = json_lines(&clebsch)[0]["canonical"]["canonical_form"].clone();
    assert_eq!(classes[0]["canonical_form"], form);
    assert_eq!(run(&["cayley"], "").status.code(), Some(2));
    assert_eq!(run(&["cayley", "--group", "0,2"], "").status.code(), Some(2));
}

#[test]
fn construct_commands() {
    let out = run(&["construct", "kneser", "5", "2"], "");
    assert_eq!(json_lines(&out)[0]["canonical"]["aut_order"], "120");
    let m = &diam2::constructions::enumerate_valid_matchings(5).unwrap()[0];
    let m: Vec<String> = m.iter().map(|x| x.to_string()).collect();
    let out = run(&["construct", "expansion", "--k", "1", "--l", "1", "--cycle-length", "5", "--matching", &m.join(",")], "");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_lines(&out)[0]["canonical"]["aut_order"], "120");
    let bad = run(&["construct", "expansion", "--k", "1", "--l", "1", "--cycle-length", "4", "--matching", "0,1,2,3"], "");
    assert_eq!(bad.status.code(), Some(2));
    assert_eq!(run(&["construct", "named", "nope"], "").status.code(), Some(2));
    let out = run(&["construct", "blow-up", &petersen_g6(), "0", "3"], "");
    assert_eq!(json_lines(&out)[0]["n"], 12);
    let out = run(&["construct", "dominate", "Cr"], "");
    assert_eq!(json_lines(&out)[0]["report"]["triangle_free"], false);
}

#[test]
fn process_is_deterministic() {
    let args = ["process", "--n", "100", "--s", "3", "--t", "4", "--trials", "5", "--seed", "42"];
    let a = run(&args, "");
    assert_eq!(a.status.code(), Some(0));
    let b = run_env(&args, "", &[("DIAM2_WORKERS", "1")]);
    assert_eq!(a.stdout, b.stdout);
    let lines = json_lines(&a);
    assert_eq!(lines.iter().filter(|v| v["type"] == "trial").count(), 5);
    assert!(lines.iter().filter(|v| v["type"] == "trial").all(|v| v["trial"]["saturated"] == true));
    assert_eq!(lines.last().unwrap()["all_saturated"], true);
    // the seed is mandatory
    assert_eq!(run(&["process", "--n", "10"], "").status.code(), Some(2));
    let trace = run(&["process", "--n", "30", "--seed", "1", "--trace"], "");
    assert_eq!(json_lines(&trace)[0]["certificate_verified"], true);
}

#[test]
fn closure_of_small_census() {
    let g6 = run(&["enumerate", "--n-max", "10", "--graph6"], "");
    let out = run(&["closure"], &String::from_utf8_lossy(&g6.stdout));
    assert_eq!(out.status.code(), Some(0));
    let summary = json_lines(&out).pop().unwrap();
    assert_eq!((summary["new"].clone(), summary["truncated"].clone()), (Value::from(0), Value::Bool(false)));
    assert_eq!(run(&["closure", "--ops", "twist"], "").status.code(), Some(2));
}

#[test]
fn bundled_corpus_matches_manifest() {
    let manifest = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/manifest.json");
    let out = run(&["corpus", manifest], "");
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(json_lines(&out)[0]["ok"], true);
}

#[test]
fn corpus_mismatch_and_parse_failures() {
    let dir = tempfile::tempdir().unwrap();
    let src = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/witnesses_s2_t3_n16.g6")).unwrap();
    // drop one graph: the count and a row no longer match
    let short: String = src.lines().skip(1).map(|l| format!("{l}\n")).collect();
    std::fs::write(dir.path().join("w.g6"), short).unwrap();
    let manifest = r#"{"files":[{"path":"w.g6","s":2,"t":3,"expected_count":19,
        "census":[{"n":4,"edges":4,"degrees":[[2,4]],"girth":"four","count":1}]}]}"#;
    std::fs::write(dir.path().join("m.json"), manifest).unwrap();
    let out = run(&["corpus", dir.path().join("m.json").to_str().unwrap()], "");
    assert_eq!(out.status.code(), Some(1));
    let v = &json_lines(&out)[0];
    assert_eq!(v["ok"], false);
    assert_eq!(v["missing_rows"].as_array().unwrap().len(), 1);

    std::fs::write(dir.path().join("w.g6"), "Cr\n!!\n").unwrap();
    let out = run(&["corpus", dir.path().join("m.json").to_str().unwrap()], "");
    assert_eq!(out.status.code(), Some(3));

    std::fs::write(dir.path().join("m.json"), "{").unwrap();
    assert_eq!(run(&["corpus", dir.path().join("m.json").to_str().unwrap()], "").status.code(), Some(3));
}
