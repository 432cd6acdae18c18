use std::process::{Command, Output};

fn demazure(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_demazure"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn crystal_text_lists_one_line_per_element() {
    let o = demazure(&[
        "crystal", "--type", "A2", "--lambda", "1,0", "--format", "text",
    ]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let names: Vec<&str> = out.lines().map(|l| l.split('\t').next().unwrap()).collect();
    assert_eq!(names, ["u", "f1 · u", "f2 f1 · u"]);

    let o = demazure(&["crystal", "--type", "A1", "--lambda", "0"]);
    assert_eq!(stdout(&o).lines().count(), 1);
}

#[test]
fn crystal_dot_has_one_node_per_element() {
    let o = demazure(&[
        "crystal", "--type", "A2", "--lambda", "1,1", "--format", "dot",
    ]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.starts_with("digraph crystal {") && out.trim_end().ends_with('}'));
    let nodes = out
        .lines()
        .filter(|l| l.trim_start().starts_with('n') && !l.contains("->"))
        .count();
    assert_eq!(nodes, 8);
    let labels: std::collections::BTreeSet<&str> = out
        .lines()
        .filter(|l| l.contains("->"))
        .map(|l| l.split("label=\"").nth(1).unwrap().trim_end_matches("\"];"))
        .collect();
    assert_eq!(labels, ["1", "2"].into_iter().collect());
}

#[test]
fn crystal_json_agrees_with_text() {
    let o = demazure(&[
        "crystal", "--type", "B2", "--lambda", "1,1", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], "demazure/1");
    assert_eq!(v["type"], "B2");
    let json_names: Vec<String> = v["elements"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["word"].as_str().unwrap().to_string())
        .collect();
    let text = stdout(&demazure(&["crystal", "--type", "B2", "--lambda", "1,1"]));
    let text_names: Vec<String> = text
        .lines()
        .map(|l| l.split('\t').next().unwrap().to_string())
        .collect();
    assert_eq!(json_names, text_names);
    assert_eq!(json_names.len(), 16);
    for e in v["edges"].as_array().unwrap() {
        let c = e["color"].as_u64().unwrap();
        assert!(c == 1 || c == 2);
    }
}

#[test]
fn demazure_examples() {
    let o = demazure(&["demazure", "--type", "A2", "--lambda", "1,0", "--word", "1"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("size 2"));
    assert!(out.contains("character e^{(1,0)} + e^{(-1,1)}"));
    assert!(out.contains("refined formula holds"));

    let o = demazure(&[
        "demazure", "--type", "A2", "--lambda", "1,1", "--word", "1,2,1", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["size"], 8);
    assert_eq!(v["formula_holds"], true);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(
        code(&demazure(&[
            "demazure", "--type", "A2", "--lambda", "1,1", "--word", "1,1"
        ])),
        2
    );
    assert_eq!(code(&demazure(&["verify", "--suite", "nosuch"])), 2);
    assert_eq!(
        code(&demazure(&["crystal", "--type", "A2", "--lambda", "-1,0"])),
        2
    );
    assert_eq!(
        code(&demazure(&["crystal", "--type", "E8", "--lambda", "1"])),
        2
    );
    assert_eq!(
        code(&demazure(&["crystal", "--type", "A2", "--lambda", "1"])),
        2
    );
    assert_eq!(
        code(&demazure(&[
            "demazure", "--type", "A2", "--lambda", "1,0", "--word", "3"
        ])),
        2
    );
}

#[test]
fn verify_examples() {
    assert_eq!(
        code(&demazure(&[
            "verify", "--suite", "eq4", "--type", "A2", "--lambda", "1,1"
        ])),
        0
    );
    assert_eq!(
        code(&demazure(&[
            "verify", "--suite", "cor33", "--type", "A2", "--word", "1,2", "--depth", "6"
        ])),
        0
    );
    let o = demazure(&[
        "verify",
        "--suite",
        "lem34,psi",
        "--type",
        "B2",
        "--depth",
        "4",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], "demazure/1");
    assert_eq!(v["passed"], true);
    assert!(v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["verdict"] == "pass"));
}

#[test]
fn output_is_deterministic_and_out_writes_a_file() {
    let args = [
        "crystal", "--type", "G2", "--lambda", "1,0", "--format", "json",
    ];
    let a = demazure(&args).stdout;
    assert_eq!(a, demazure(&args).stdout);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g2.json");
    let o = demazure(&[&args[..], &["--out", path.to_str().unwrap()]].concat());
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), a);
}
