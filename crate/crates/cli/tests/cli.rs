use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use proptest::prelude::*;
use reeskit_cli::io::{emit_clutter, parse_clutter};
use reeskit_core::clutter::Clutter;
use serde_json::{json, Value};

const Q6: &str = r#"{"n": 6, "edges": [[1,2,5],[1,3,4],[2,3,6],[4,5,6]]}"#;
const K3: &str = r#"{"n": 3, "edges": [[1,2],[1,3],[2,3]]}"#;
const C4: &str = r#"{"n": 4, "edges": [[1,2],[2,3],[3,4],[1,4]]}"#;
const EDGE: &str = r#"{"n": 2, "edges": [[1,2]]}"#;

struct Workspace {
    dir: tempfile::TempDir,
}

impl Workspace {
    fn new() -> Self {
        Workspace { dir: tempfile::tempdir().unwrap() }
    }

    fn file(&self, name: &str, body: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        std::fs::write(&p, body).unwrap();
        p
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }
}

fn reeskit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reeskit"))
        .args(args)
        .env_remove("REESKIT_CACHE")
        .output()
        .unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn documented_examples() {
    let w = Workspace::new();
    let q6 = w.file("q6.json", Q6);
    let v = json_of(&reeskit(&["normal", s(&q6)]));
    assert_eq!(v["normal"], json!(false));
    assert_eq!(v["witness"], json!([1, 1, 1, 1, 1, 1, 2]));

    let k3 = w.file("k3.json", K3);
    assert_eq!(json_of(&reeskit(&["numbers", s(&k3)])), json!({ "alpha0": 2, "beta1": 1 }));

    let edge = w.file("edge.json", EDGE);
    assert_eq!(json_of(&reeskit(&["vertices", s(&edge)])), json!([["1", "0"], ["0", "1"]]));
}

#[test]
fn verbs_on_small_clutters() {
    let w = Workspace::new();
    let k3 = w.file("k3.json", K3);
    let c4 = w.file("c4.json", C4);
    let q6 = w.file("q6.json", Q6);

    assert_eq!(json_of(&reeskit(&["vertices", s(&k3)]))[0], json!(["1", "1", "0"]));
    let vs = json_of(&reeskit(&["vertices", s(&k3)]));
    assert!(vs.as_array().unwrap().contains(&json!(["1/2", "1/2", "1/2"])));

    let covers = json_of(&reeskit(&["covers", s(&q6)]));
    assert_eq!(covers["covers"].as_array().unwrap().len(), 7);
    let blocker = reeskit(&["blocker", s(&c4)]);
    assert_eq!(String::from_utf8(blocker.stdout).unwrap(), "{\"n\":4,\"edges\":[[1,3],[2,4]]}\n");

    assert_eq!(json_of(&reeskit(&["konig", s(&c4)]))["via_rees"], json!(true));
    assert_eq!(json_of(&reeskit(&["packing", s(&q6)]))["packing"], json!(false));
    assert_eq!(json_of(&reeskit(&["mfmc", s(&k3)]))["failing"], json!("integrality"));
    let tdi = json_of(&reeskit(&["tdi", s(&k3), "--alpha-max", "1"]));
    assert_eq!(tdi["failure"]["lp_value"], json!("3/2"));
    let sym = json_of(&reeskit(&["symbolic", s(&k3), "--b", "2"]));
    assert!(sym["gens"].as_array().unwrap().contains(&json!([1, 1, 1])));
    let ntf = json_of(&reeskit(&["ntf", s(&k3)]));
    assert_eq!(ntf["failure"], json!({ "power": 2, "generator": [1, 1, 1] }));
    let closure = json_of(&reeskit(&["closure", s(&c4), "--i", "2"]));
    assert_eq!(closure["n"], json!(4));
    let ainv = json_of(&reeskit(&["ainv", s(&c4), "--gorenstein"]));
    assert_eq!(ainv["a"], json!(-3));
    assert_eq!(ainv["gorenstein"]["holds"], json!(true));
    assert_eq!(json_of(&reeskit(&["smith", s(&q6)]))["delta_r"], json!(2));
    let facets = json_of(&reeskit(&["facets", s(&k3)]));
    assert!(facets["facets"].as_array().unwrap().iter().any(|f| f["normal"] == json!([1, 1, 1, -2])));
    let hb = json_of(&reeskit(&["hilbert", s(&q6), "--simis"]));
    assert_eq!(hb["elements"].as_array().unwrap().len(), 11);
}

#[test]
fn exit_codes() {
    let w = Workspace::new();
    let nested = w.file("nested.json", r#"{"n": 2, "edges": [[1,2],[1]]}"#);
    assert_eq!(reeskit(&["covers", s(&nested)]).status.code(), Some(2));
    let broken = w.file("broken.json", "{\"n\": 2,");
    assert_eq!(reeskit(&["covers", s(&broken)]).status.code(), Some(2));
    assert_eq!(reeskit(&["covers", s(&w.path("missing.json"))]).status.code(), Some(2));
    let q6 = w.file("q6.json", Q6);
    // a-invariant needs a normal Rees algebra
    assert_eq!(reeskit(&["ainv", s(&q6)]).status.code(), Some(2));
    assert_eq!(reeskit(&["numbers", s(&q6), "--format", "markdown"]).status.code(), Some(2));
    let big: Vec<Vec<usize>> = (1..=13).map(|i| vec![i, i % 13 + 1]).collect();
    let cycle13 = w.file("c13.json", &json!({ "n": 13, "edges": big }).to_string());
    assert_eq!(reeskit(&["packing", s(&cycle13)]).status.code(), Some(3));
}

#[test]
fn reports_are_deterministic() {
    let w = Workspace::new();
    let q6 = w.file("q6.json", Q6);
    let c4 = w.file("c4.json", C4);
    let a = reeskit(&["report", s(&q6), s(&c4)]);
    let b = reeskit(&["report", s(&q6), s(&c4)]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let md = String::from_utf8(reeskit(&["report", s(&q6), "--format", "markdown"]).stdout).unwrap();
    for row in ["| integrality | Q(A) is integral | true |", "| normality | R[It] is normal | false |", "| konig | α₀ = β₁ | false |"] {
        assert!(md.contains(row), "{row}\n{md}");
    }
    let empty = String::from_utf8(reeskit(&["report", "--format", "markdown"]).stdout).unwrap();
    assert_eq!(empty.lines().count(), 2);
}

#[test]
fn survey_round_trip() {
    let w = Workspace::new();
    let out = w.path("survey.jsonl");
    let run = reeskit(&["explore", "--n-max", "4", "--q-max", "4", "--out", s(&out)]);
    assert!(run.status.success());
    let first = std::fs::read(&out).unwrap();
    assert_eq!(reeskit(&["explore", "--n-max", "4", "--q-max", "4"]).stdout, first);
    let text = String::from_utf8(first).unwrap();
    for line in text.lines() {
        let r: Value = serde_json::from_str(line).unwrap();
        for key in ["canonical_form", "alpha0", "beta1", "packing", "q_integral", "rees_normal", "ntf_upto", "verdict"] {
            assert!(r.get(key).is_some(), "{key} missing in {line}");
        }
        assert!(r["verdict"] == "holds" || r["verdict"] == "not-packing", "{line}");
    }
    let counts = json_of(&reeskit(&["report", "--survey", s(&out)]))["survey_counts"].clone();
    let total: u64 = counts.as_object().unwrap().values().map(|v| v.as_u64().unwrap()).sum();
    assert_eq!(total as usize, text.lines().count());
}

#[test]
fn cache_matches_fresh_computation() {
    let w = Workspace::new();
    let q6 = w.file("q6.json", Q6);
    let relabeled = w.file("q6b.json", r#"{"n": 6, "edges": [[1,2,6],[2,3,4],[1,3,5],[4,5,6]]}"#);
    let cache = w.path("cache");
    for file in [&q6, &relabeled] {
        for extra in [&[][..], &["--simis"][..]] {
            let mut fresh_args = vec!["hilbert", s(file)];
            fresh_args.extend(extra);
            let fresh = reeskit(&fresh_args);
            let mut cached_args = fresh_args.clone();
            cached_args.extend(["--cache-dir", s(&cache)]);
            let first = reeskit(&cached_args);
            let second = reeskit(&cached_args);
            assert_eq!(fresh.stdout, first.stdout);
            assert_eq!(fresh.stdout, second.stdout);
        }
    }
    // isomorphic inputs share entries: one per cone
    assert_eq!(std::fs::read_dir(&cache).unwrap().count(), 2);

    let env = Command::new(env!("CARGO_BIN_EXE_reeskit"))
        .args(["normal", s(&q6)])
        .env("REESKIT_CACHE", w.path("env-cache"))
        .output()
        .unwrap();
    assert!(env.status.success());
    assert_eq!(std::fs::read_dir(w.path("env-cache")).unwrap().count(), 1);
}

fn clutter_strategy() -> impl Strategy<Value = Clutter> {
    (1usize..7).prop_flat_map(|n| {
        proptest::collection::vec(1u64..(1 << n), 1..8).prop_filter_map("vertex in no edge", move |sets| {
            let mut kept: Vec<u64> = Vec::new();
            for s in sets {
                if !kept.iter().any(|&k| k & s == k || k & s == s) {
                    kept.push(s);
                }
            }
            Clutter::from_masks(n, kept).ok()
        })
    })
}

proptest! {
    #[test]
    fn parse_inverts_emit(c in clutter_strategy()) {
        let text = emit_clutter(&c);
        let back = parse_clutter(&text).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(emit_clutter(&back), text);
    }
}
