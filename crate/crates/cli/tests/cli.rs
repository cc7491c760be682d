//! End-to-end runs of the `dualramsey` binary.

use serde_json::Value;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_dualramsey"));
    cmd.env_remove("DUALRAMSEY_CACHE");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("stdout is not a report: {e}: {}", text(&out.stdout)))
}

fn text(bytes: &[u8]) -> String {
    String::from_utf8_lossy(bytes).into_owned()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn join_example_with_oracle() {
    let out = run(&["lattice", "join", "--p", "[[0,1],[2]]", "--q", "[[0],[1,2]]", "--oracle"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["outputs"]["join"], "[[0,1,2]]");
    assert_eq!(r["oracle"]["agrees"], true);
    assert!(text(&out.stderr).contains("oracle agrees"));
    assert_eq!(r["scale"]["dom_bound"], 6);
    assert_eq!(r["scale"]["depth"], 2);
    assert_eq!(r["scale"]["cutoff"], 28);
    assert_eq!(r["inputs_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn partition_is_coarser_than_itself() {
    for x in ["[[0,2],[1]]", "omega:[[0,3]]", "{\"rgs\":[0,1,0,2]}"] {
        let r = report(&run(&["lattice", "coarser", "--p", x, "--q", x, "--oracle"]));
        assert_eq!(r["outputs"]["coarser"], true, "{x}");
    }
}

#[test]
fn malformed_rgs_is_an_input_error() {
    let out = run(&["lattice", "coarser", "--p", "{\"rgs\":[0,2]}", "--q", "[[0]]"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(text(&out.stderr).contains("domain error"), "{}", text(&out.stderr));
    let out = run(&["lattice", "join", "--p", "[[0,2]]", "--q", "[[0]]"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(run(&["lattice", "join", "--p", "[[0]]"]).status.code(), Some(2));
}

#[test]
fn codec_examples() {
    let r = report(&run(&["codec", "pc", "--part", "all-singletons"]));
    assert_eq!(r["outputs"]["shown"], "∅");
    let out = run(&["codec", "cp", "--real", r#"{"elements":[0,2],"cutoff":3}"#, "--m", "3", "--oracle"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["outputs"]["partition"], "[[0,1,2]]");
    let out = run(&["codec", "cp", "--real", r#"{"elements":[0],"cutoff":1}"#, "--m", "3"]);
    assert_eq!(out.status.code(), Some(2), "cutoff too small to decode [0, 3)");
}

#[test]
fn exhaustive_roundtrip_has_no_mismatches() {
    let out = run(&["codec", "roundtrip", "--max-m", "6", "--oracle"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["outputs"]["mismatches"], 0);
    // 1 + 1 + 2 + 5 + 15 + 52 + 203
    assert_eq!(r["outputs"]["checked"], 279);
    assert!(text(&out.stderr).contains("0 mismatches"));
    let out = run(&["codec", "roundtrip", "--x", r#"{"elements":[0,5],"cutoff":10}"#, "--oracle"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["outputs"]["mismatches"], 0);
}

#[test]
fn encode_then_decode_streams() {
    let mut child = bin()
        .args(["codec", "encode", "--cutoff", "10"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"[[0,2],[1],[3]]\n\n{\"rgs\":[0,0,1,1]}\n").unwrap();
    let encoded = child.wait_with_output().unwrap();
    assert_eq!(encoded.status.code(), Some(0));
    assert_eq!(text(&encoded.stdout).lines().count(), 2);
    let mut child = bin()
        .args(["codec", "decode", "--m", "4"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(&encoded.stdout).unwrap();
    let decoded = child.wait_with_output().unwrap();
    assert_eq!(text(&decoded.stdout), "{\"rgs\":[0,1,0,2]}\n{\"rgs\":[0,0,1,1]}\n");
}

#[test]
fn planted_witness_agrees_and_is_cached() {
    let dir = tempfile::tempdir().unwrap();
    let coloring = dir.path().join("f.json");
    let coloring = coloring.to_str().unwrap();
    let out = run(&["ramsey", "plant", "--s", "[[0]]", "--z", "[[0,1],[2,4]]", "--arity", "2", "--save", coloring]);
    assert_eq!(out.status.code(), Some(0));

    let cache = dir.path().join("cache");
    let witness = |extra: &[&str]| {
        let mut cmd = bin();
        cmd.env("DUALRAMSEY_CACHE", &cache).args(["ramsey", "witness", "--coloring", coloring, "--oracle"]);
        cmd.args(extra).output().unwrap()
    };
    let first = witness(&[]);
    assert_eq!(first.status.code(), Some(0), "{}", text(&first.stderr));
    assert!(text(&first.stderr).contains("oracle agrees"));
    let r = report(&first);
    assert_eq!((r["cache"].as_str(), r["outputs"]["found"].as_bool()), (Some("miss"), Some(true)));

    let second = report(&witness(&[]));
    assert_eq!(second["cache"], "hit");
    assert_eq!(second["outputs"]["Y"], r["outputs"]["Y"]);

    // a forged entry fails re-verification and is replaced
    let entry = fs::read_dir(&cache).unwrap().next().unwrap().unwrap().path();
    let mut forged: Value = serde_json::from_str(&fs::read_to_string(&entry).unwrap()).unwrap();
    forged["color"] = Value::from(forged["color"].as_u64().unwrap() ^ 1);
    fs::write(&entry, forged.to_string()).unwrap();
    let third = witness(&[]);
    assert_eq!(third.status.code(), Some(0));
    assert_eq!(report(&third)["cache"], "stale");
    assert_eq!(report(&witness(&[]))["cache"], "hit");
}

#[test]
fn game_transcript_is_written_atomically() {
    let dir = tempfile::tempdir().unwrap();
    let d = write(dir.path(), "D.json", r#"{"s":[[0]],"D":[[[0,1]],[[0,1,2]],[[0,1,2,3]],[[0,1,2,3,4]],[[0,1,2,3,4,5]]]}"#);
    let out_path = dir.path().join("reports").join("game.json");
    let strategy = format!("avoid:{d}");
    let out = run(&[
        "game", "play", "--base", "[[0,1,2,3,4,5]]", "--rounds", "3", "--strategy-one", &strategy,
        "--strategy-two", "copycat", "--oracle", "--out", out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", text(&out.stderr));
    let saved: Value = serde_json::from_str(&fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(saved, report(&out));
    let transcript = &saved["outputs"]["transcript"];
    assert_eq!(transcript["outcome"]["kind"], "conceded");
    assert_eq!(saved["outputs"]["certificate_verified"], true);
    assert_eq!(saved["oracle"]["agrees"], true);
    // only the report is left in the directory
    assert_eq!(fs::read_dir(out_path.parent().unwrap()).unwrap().count(), 1);
}

#[test]
fn random_games_are_reproducible_from_the_seed() {
    let play = |seed: &str| {
        report(&run(&["game", "play", "--base", "[[0,2],[1,3]]", "--rounds", "2", "--seed", seed, "--oracle"]))
    };
    let (a, b) = (play("7"), play("7"));
    assert_eq!(a["outputs"], b["outputs"]);
    assert_eq!(a["inputs_digest"], b["inputs_digest"]);
    assert_eq!(a["scale"]["seed"], 7);
    assert_ne!(a["inputs_digest"], play("8")["inputs_digest"]);
    assert_eq!(run(&["game", "play", "--base", "omega", "--strategy-one", "clever"]).status.code(), Some(2));
}

#[test]
fn leq_verdict_with_agreement() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", r#"{"s":{"rgs":[0]},"X":{"prefix":{"rgs":[0,1,0]},"tail":"singletons"}}"#);
    let b = write(dir.path(), "b.json", r#"{"s":{"rgs":[0]},"X":{"prefix":{"rgs":[]},"tail":"singletons"}}"#);
    let r = report(&run(&["forcing", "leq", "--c1", &a, "--c2", &b, "--oracle"]));
    assert_eq!(r["outputs"]["leq"], true);
    assert_eq!(r["oracle"]["agrees"], true);
    let r = report(&run(&["forcing", "leq", "--c1", &b, "--c2", &a, "--oracle"]));
    assert_eq!(r["outputs"]["leq"], false);
    assert_eq!(r["oracle"]["agrees"], true);
}

#[test]
fn counterexamples_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("r.json");
    let out = run(&[
        "forcing", "validate", "--cond", r#"{"s":{"rgs":[0,1]},"X":{"prefix":{"rgs":[0,0]},"tail":"singletons"}}"#,
        "--oracle", "--out", out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let saved: Value = serde_json::from_str(&fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!((saved["counterexample"].as_bool(), saved["oracle"]["agrees"].as_bool()), (Some(true), Some(true)));

    let out = run(&["filter", "scp", "--base", "[[0,2]]", "--n-plus-k", "1", "--oracle"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out)["oracle"]["agrees"], true);
}

#[test]
fn drivers_agree_with_the_oracle() {
    let cases: &[&[&str]] = &[
        &["lattice", "almost", "--p", "[[0,3],[1,2]]", "--q", "[[0,3]]"],
        &["lattice", "segments", "--s", "[[0]]", "--x", "[[0,2]]", "--n", "2"],
        &["lattice", "segment", "--s", "[[0],[1]]", "--x", "omega:[[0,2]]"],
        &["codec", "trans", "--real", r#"{"elements":[0,2],"cutoff":6}"#],
        &["codec", "pair", "--n", "7", "--m", "3"],
        &["ramsey", "hj", "--alphabet", "2", "--colors", "2"],
        &["ramsey", "extract", "--s-bar", "[[0],[1],[2]]", "--s", "[[0],[1]]", "--v", "[[0],[1],[2],[3],[4]]", "--d", "[]"],
        &["filter", "member", "--base", "[[0,2]]", "--y", "[[0,2],[1,3]]"],
        &["filter", "elements", "--base", r#"{"members":[{"prefix":{"rgs":[0,1,0]},"tail":"singletons"}]}"#],
        &["filter", "diagonalize", "--base", "[[0,2]]", "--cu", "[[0,2]]"],
        &["filter", "construct", "--cu", "[[0,2]]", "--y", "omega"],
        &["forcing", "embed", "--stem", "[[0]]", "--cu", "[[0,2]]"],
        &["forcing", "branch", "--cu", "[[0,2]]", "--x", "[[0,2],[1,3]]"],
        &["forcing", "uniformize", "--cu", "omega", "--x", "[[0,2]]"],
        &["forcing", "validate", "--cu", "[[0,2]]", "--base", "[[0,2]]"],
        &[
            "forcing", "classify", "--cond", r#"{"s":{"rgs":[]},"X":{"prefix":{"rgs":[0,1,0]},"tail":"singletons"}}"#,
            "--open", r#"[{"s":{"rgs":[]},"X":{"prefix":{"rgs":[0,1,0]},"tail":"singletons"}}]"#, "--base", "[[0,2]]",
        ],
    ];
    for args in cases {
        let mut all = args.to_vec();
        all.push("--oracle");
        let out = run(&all);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", text(&out.stderr));
        assert_eq!(report(&out)["oracle"]["agrees"], true, "{args:?}");
    }
}
