use std::path::PathBuf;
use std::process::{Command, Output};

fn core(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core").join(rel)
}

fn deco(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_deco")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn checks_every_shipped_proof() {
    let spec = core("specs/exceptions.dexc");
    for entry in std::fs::read_dir(core("proofs")).unwrap() {
        let proof = entry.unwrap().path();
        let o = deco(&["check", spec.to_str().unwrap(), proof.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}: {}", proof.display(), stdout(&o));
        assert!(stdout(&o).starts_with("accepted: "));
    }
}

#[test]
fn structured_check_lists_nodes() {
    let proof = core("proofs/lemma_catch_raise.dproof");
    let o = deco(&["check", "--format", "structured", "--proof", proof.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "pass");
    let nodes = v["nodes"].as_array().unwrap();
    assert!(!nodes.is_empty());
    for n in nodes {
        for key in ["path", "rule", "verdict", "message"] {
            assert!(n.get(key).is_some(), "missing {key}");
        }
    }
    assert_eq!(nodes[0]["path"], "");
}

#[test]
fn broken_proof_is_rejected_with_a_node() {
    let dir = std::env::temp_dir().join(format!("deco-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let text = std::fs::read_to_string(core("proofs/lemma_catch_raise.dproof")).unwrap();
    let bad = text.replacen("      b7 |-", "      b9 |-", 1);
    let path = dir.join("bad.dproof");
    std::fs::write(&path, &bad).unwrap();
    let o = deco(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("node 1.0.1 (b9)"), "{}", stdout(&o));
    let o = deco(&["check", "--format", "structured", path.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let failed: Vec<_> = v["nodes"].as_array().unwrap().iter().filter(|n| n["verdict"] == "fail").collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0]["rule"], "b9");
    std::fs::write(&path, "this is not a proof").unwrap();
    let o = deco(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn strong_untag_after_tag_fails_with_witness() {
    let o = deco(&["equiv", "c1 o t1 == id"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("on 1(a)"), "{}", stdout(&o));
    let o = deco(&["equiv", "c1 o t1 ~ id"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn structured_witness() {
    let o = deco(&["equiv", "--format", "structured", "c1 o t1 == id"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "fail");
    assert_eq!(v["witness"]["input"], "1(a)");
}

#[test]
fn corrupted_model_breaks_untag_tag() {
    let m = core("specs/corrupted.dmodel");
    let o = deco(&["equiv", "--model", m.to_str().unwrap(), "c1 o t1 ~ id"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
}

#[test]
fn eval_tags_a_value() {
    let o = deco(&["eval", "t1", "a"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("t1 (a) = 1(a)"), "{}", stdout(&o));
}

#[test]
fn expand_prints_the_explicit_spec() {
    let o = deco(&["expand"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("t1 : P1 -> E"));
    assert!(s.contains("c1 : E -> P1 + E"));
}

#[test]
fn demo_suite_passes_and_is_deterministic() {
    let a = deco(&["demo", "paper", "--battery", "small"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert!(!stdout(&a).contains("FAIL"));
    let b = deco(&["demo", "paper", "--battery", "small"]);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn report_defaults_to_structured() {
    let o = deco(&["report", "--battery", "small"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "pass");
    for item in v["items"].as_array().unwrap() {
        for key in ["id", "anchor", "verdict", "witness", "detail"] {
            assert!(item.get(key).is_some(), "missing {key}");
        }
    }
}

#[test]
fn usage_and_io_errors_exit_two() {
    assert_eq!(deco(&["bogus"]).status.code(), Some(2));
    assert_eq!(deco(&["check"]).status.code(), Some(2));
    assert_eq!(deco(&["check", "missing.dproof"]).status.code(), Some(2));
    assert_eq!(deco(&["equiv", "c1 o o"]).status.code(), Some(2));
    assert_eq!(deco(&["eval", "t1", "zz"]).status.code(), Some(2));
}
