use std::path::PathBuf;
use std::process::{Command, Output};

use dynweyl::cartan::CartanDatum;
use dynweyl::replib::{builtin_rep, save_rep};
use dynweyl::report::{from_json, CheckReport};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dynweyl")).args(args).output().expect("binary runs")
}

fn reports(o: &Output) -> Vec<CheckReport> {
    from_json(std::str::from_utf8(&o.stdout).unwrap()).unwrap()
}

fn tmpdir(tag: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("dynweyl-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn main_theorem_sl2_gives_trivial_d() {
    let o = run(&["verify", "main-theorem", "--type", "A1", "--mu", "a1v", "--rep", "V1", "--sign", "-1"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = reports(&o);
    assert_eq!(r.len(), 1);
    assert!(r[0].pass);
    assert_eq!(r[0].d, vec![(vec![1], 1), (vec![-1], 1)]);
    assert_eq!(r[0].samples.len(), 3);
    assert_eq!(r[0].seed, Some(0));
}

#[test]
fn lemma15_g2() {
    let o = run(&["verify", "lemma15", "--type", "G2", "--max-length", "12"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(reports(&o)[0].pass);
}

#[test]
fn flatness_a2() {
    let o = run(&["verify", "flatness", "--type", "A2", "--rep", "vector", "--b", "-2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = run(&["verify", "flatness", "--type", "A", "--rank", "2", "--rep", "vector", "--b", "1"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn a_failure_sets_the_exit_code() {
    // the Yangian relations pass, the naive t_{i,1} images do not
    let o = run(&["verify", "phi-relations", "--type", "A1", "--rep", "V2", "--mutate"]);
    assert_eq!(o.status.code(), Some(1));
    let r = reports(&o);
    assert_eq!(r.len(), 2);
    assert!(r[0].pass);
    assert!(!r[1].pass);

    let o = run(&["verify", "gauge", "--type", "A2", "--mutate"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["verify", "main-theorem", "--type", "A1", "--mu", "a1v", "--mutate"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "main-theorem", "--type", "A2", "--mu", "thv,a1v", "--rep", "vector", "--seed", "9", "--samples", "4"];
    let strip = |mut v: Vec<CheckReport>| {
        for r in &mut v {
            r.ms = 0;
        }
        v
    };
    let a = strip(reports(&run(&args)));
    let b = strip(reports(&run(&args)));
    assert_eq!(a, b);
    assert!(a.iter().all(|r| r.pass && r.seed == Some(9) && r.samples.len() == 4));
}

#[test]
fn report_file_round_trips() {
    let dir = tmpdir("out");
    let path = dir.join("r.json");
    let o = run(&["verify", "degenerateS", "--type", "A1", "--mu", "a1v", "--rep", "V1,V2", "--sign", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let r = from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r.len(), 2);
    assert_eq!(r[0].d, vec![(vec![1], -1), (vec![-1], -1)]);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn rep_files() {
    let dir = tmpdir("rep");
    let good = dir.join("v3.json");
    save_rep(&builtin_rep(&CartanDatum::parse("A1").unwrap(), "V3").unwrap(), &good).unwrap();
    let o = run(&["verify", "qweyl-expansion", "--type", "A1", "--rep-file", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));

    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"type\":\"A\"").unwrap();
    let o = run(&["verify", "qweyl-expansion", "--type", "A1", "--rep", "V1", "--rep-file", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let r = reports(&o);
    assert_eq!(r.len(), 2);
    assert!(r.iter().any(|x| !x.pass && x.name.starts_with("load")));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn config_errors() {
    for args in [
        vec!["verify", "braid", "--type", "A2", "--samples", "2"],
        vec!["verify", "braid", "--type", "A2", "--sign", "0"],
        vec!["verify", "braid", "--type", "A2", "--trunc", "3"],
        vec!["verify", "main-theorem", "--type", "A2", "--mu", "w1v+"],
        vec!["verify", "braid", "--type", "A2", "--rep", "V9"],
        vec!["verify", "braid", "--type", "Z2"],
        vec!["verify", "braid", "--type", "A2", "--rank", "3"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
    assert_eq!(run(&["verify", "nonsense", "--type", "A1"]).status.code(), Some(2));
}

#[test]
fn inspection_commands() {
    let o = run(&["words", "--type", "A1", "--mu", "a1v,2a1v"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["word"], "s0s1");
    assert_eq!(v[1]["length"], 4);

    let o = run(&["inversions", "--type", "A2", "--mu", "thv"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let total: u64 = v[0]["inversions"].as_array().unwrap().iter().map(|x| x["multiplicity"].as_u64().unwrap()).sum();
    assert_eq!(total, 4);

    let o = run(&["datum", "--type", "G2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["positive_roots"].as_array().unwrap().len(), 6);
    assert_eq!(v["d"], serde_json::json!([3, 1]));
}
