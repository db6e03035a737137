use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/data")
        .join(rel)
}

fn valency(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_valency"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn extract_sample(dir: &Path) -> PathBuf {
    let lex = dir.join("lex.tsv");
    let out = valency(&[
        "extract",
        s(&data("sample")),
        "--manifest",
        s(&data("sample_manifest.tsv")),
        "-o",
        s(&lex),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    lex
}

fn without_timestamp(path: &Path) -> serde_json::Value {
    let mut v: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    v.as_object_mut().unwrap().remove("timestamp");
    v
}

#[test]
fn extract_reproduces_golden_lexicon() {
    let tmp = tempfile::tempdir().unwrap();
    let lex = extract_sample(tmp.path());
    assert_eq!(
        fs::read(&lex).unwrap(),
        fs::read(data("sample_golden.tsv")).unwrap()
    );
    let report = fs::read_to_string(tmp.path().join("lex.validation.tsv")).unwrap();
    assert!(report.contains("invalid_tree\therodotus_histories_sample.xml\t200021\t"));
    let manifest = without_timestamp(&tmp.path().join("lex.manifest.json"));
    assert_eq!(manifest["command"], "extract");
    let inputs = manifest["inputs"].as_array().unwrap();
    assert_eq!(inputs.len(), 4);
    assert!(inputs
        .iter()
        .all(|i| i["sha256"].as_str().unwrap().len() == 64));
}

#[test]
fn extract_is_idempotent() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    extract_sample(a.path());
    extract_sample(b.path());
    for name in ["lex.tsv", "lex.validation.tsv"] {
        assert_eq!(
            fs::read(a.path().join(name)).unwrap(),
            fs::read(b.path().join(name)).unwrap(),
            "{name}"
        );
    }
    assert_eq!(
        without_timestamp(&a.path().join("lex.manifest.json")),
        without_timestamp(&b.path().join("lex.manifest.json"))
    );
}

#[test]
fn extract_empty_directory_gives_header_only() {
    let tmp = tempfile::tempdir().unwrap();
    let input = tmp.path().join("in");
    fs::create_dir(&input).unwrap();
    let lex = tmp.path().join("lex.tsv");
    let out = valency(&["extract", s(&input), "-o", s(&lex)]);
    assert_eq!(code(&out), 0);
    let text = fs::read_to_string(&lex).unwrap();
    assert_eq!(text.lines().count(), 1);
    assert!(text.starts_with("author\ttitle\t"));
}

#[test]
fn extract_corrupt_file_is_partial() {
    let tmp = tempfile::tempdir().unwrap();
    let input = tmp.path().join("in");
    fs::create_dir(&input).unwrap();
    fs::copy(
        data("sample/hesiod_theogony_sample.xml"),
        input.join("a.xml"),
    )
    .unwrap();
    fs::write(input.join("b.xml"), "<treebank><sentence id=\"1\"><word").unwrap();
    let lex = tmp.path().join("lex.tsv");
    let out = valency(&["extract", s(&input), "-o", s(&lex)]);
    assert_eq!(code(&out), 2);
    assert!(fs::read_to_string(&lex).unwrap().lines().count() > 1);
    let report = fs::read_to_string(tmp.path().join("lex.validation.tsv")).unwrap();
    assert!(report.contains("file_error\tb.xml"));
}

#[test]
fn extract_missing_directory_fails() {
    let tmp = tempfile::tempdir().unwrap();
    let out = valency(&[
        "extract",
        s(&tmp.path().join("nope")),
        "-o",
        s(&tmp.path().join("lex.tsv")),
    ]);
    assert_eq!(code(&out), 1);
}

#[test]
fn stats_tables() {
    let tmp = tempfile::tempdir().unwrap();
    let lex = extract_sample(tmp.path());
    let basic = stdout(&valency(&["stats", s(&lex), "--basic"]));
    assert!(basic.contains("entries\t84\n"));
    assert!(basic.contains("unique_verb_lemmas\t14\n"));
    assert!(basic.contains("unique_frames\t17\n"));
    assert!(basic.contains("unique_frame_fillers\t60\n"));
    let by_author = stdout(&valency(&["stats", s(&lex), "--by-author"]));
    assert_eq!(
        by_author,
        "author\tentries\nHerodotus\t17\nHesiod\t11\nHomer\t56\nTOTAL\t84\n"
    );
    let frames = stdout(&valency(&["stats", s(&lex), "--frames", "2"]));
    assert_eq!(frames.lines().count(), 3);
    assert_eq!(code(&valency(&["stats", s(&lex)])), 1);
}

#[test]
fn query_filters_and_empty_result() {
    let tmp = tempfile::tempdir().unwrap();
    let lex = extract_sample(tmp.path());
    let out = valency(&["query", s(&lex), "--mediator", "εἰς"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 11);
    assert!(text.lines().skip(1).all(|l| l.contains("(εἰς)")));

    let out = valency(&["query", s(&lex), "--verb", "none"]);
    assert_eq!(code(&out), 3);
    assert_eq!(stdout(&out).lines().count(), 1);

    assert_eq!(code(&valency(&["query", s(&lex), "--voice", "loud"])), 1);
}

#[test]
fn constructions_and_known_frame_diff() {
    let tmp = tempfile::tempdir().unwrap();
    let lex = extract_sample(tmp.path());
    let out = valency(&["constructions", s(&lex), "--verb", "λέγω"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("frame\tcount\tauthors\n"));
    assert!(text.contains("active_OBJ[adverb]\t10\tHerodotus,Homer\n"));

    let known = tmp.path().join("known.txt");
    fs::write(&known, "active_OBJ[adverb]\nactive_OBJ[genitive]\n").unwrap();
    let out = valency(&[
        "constructions",
        s(&lex),
        "--verb",
        "λέγω",
        "--known-frames",
        s(&known),
    ]);
    let text = stdout(&out);
    assert!(text.contains("only_in_known\tactive_OBJ[genitive]"));
    assert!(text.contains("only_in_lexicon\tactive_OBJ[accusative]\t3\t"));
    assert!(!text.contains("only_in_lexicon\tactive_OBJ[adverb]"));

    let out = valency(&["constructions", s(&lex), "--verb", "none"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn lenient_lexicon_reports_partial() {
    let tmp = tempfile::tempdir().unwrap();
    let lex = extract_sample(tmp.path());
    let mut text = fs::read_to_string(&lex).unwrap();
    text.push_str("broken row\n");
    fs::write(&lex, text).unwrap();
    assert_eq!(code(&valency(&["stats", s(&lex), "--basic"])), 1);
    let out = valency(&["stats", s(&lex), "--basic", "--lenient"]);
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).contains("entries\t84\n"));
}

#[test]
fn casestudy_writes_outputs_deterministically() {
    let tmp = tempfile::tempdir().unwrap();
    let conf = data("casestudy/casestudy.conf");
    let mut dirs = Vec::new();
    for run in ["a", "b"] {
        let dir = tmp.path().join(run);
        let out = valency(&["casestudy", "--config", s(&conf), "--output-dir", s(&dir)]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
        dirs.push(dir);
    }
    for name in [
        "table5.tsv",
        "table6.tsv",
        "fig2_boxplot.csv",
        "distributions.tsv",
        "run.log",
    ] {
        assert_eq!(
            fs::read(dirs[0].join(name)).unwrap(),
            fs::read(dirs[1].join(name)).unwrap(),
            "{name}"
        );
    }
    assert_eq!(
        without_timestamp(&dirs[0].join("manifest.json")),
        without_timestamp(&dirs[1].join("manifest.json"))
    );
    let table5 = fs::read_to_string(dirs[0].join("table5.tsv")).unwrap();
    assert!(table5.contains("2\tἄγω\t60\t12\t13\n"));
    let log = fs::read_to_string(dirs[0].join("run.log")).unwrap();
    assert!(log.starts_with("# epic_works\tHomer|Iliad\n"));
    assert!(log.contains("dropped\tἔχω\tbelow_min_epic_tokens\t"));
}

#[test]
fn casestudy_without_comparisons_is_empty() {
    let tmp = tempfile::tempdir().unwrap();
    let out = valency(&[
        "casestudy",
        "--config",
        s(&data("casestudy/all_excluded.conf")),
        "--output-dir",
        s(tmp.path()),
    ]);
    assert_eq!(code(&out), 3);
    assert_eq!(
        fs::read_to_string(tmp.path().join("table6.tsv"))
            .unwrap()
            .lines()
            .count(),
        1
    );
}

#[test]
fn casestudy_requires_inputs() {
    let tmp = tempfile::tempdir().unwrap();
    let out = valency(&["casestudy", "--output-dir", s(tmp.path())]);
    assert_eq!(code(&out), 1);
    let out = valency(&[
        "casestudy",
        "--config",
        s(&data("casestudy/casestudy.conf")),
        "--ks-method",
        "fast",
    ]);
    assert_eq!(code(&out), 1);
}

#[test]
fn betacode_single_and_batch() {
    let out = valency(&["betacode", "de/os"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "δέος\n");
    let out = valency(&["betacode", ""]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "\n");

    let reference = fs::read_to_string(data("betacode_reference.tsv")).unwrap();
    let rows: Vec<(&str, &str)> = reference
        .lines()
        .filter(|l| !l.starts_with('#'))
        .filter_map(|l| l.split_once('\t'))
        .collect();
    let tmp = tempfile::tempdir().unwrap();
    let input = tmp.path().join("words.txt");
    let mut text: String = rows.iter().map(|(b, _)| format!("{b}\n")).collect();
    text.push_str("de/os9\n");
    fs::write(&input, text).unwrap();
    let out = valency(&["betacode", "--file", s(&input)]);
    assert_eq!(code(&out), 2);
    let lines: Vec<String> = stdout(&out).lines().map(String::from).collect();
    assert_eq!(lines.len(), rows.len() + 1);
    for ((beta, greek), got) in rows.iter().zip(&lines) {
        assert_eq!(got, greek, "{beta}");
    }
    assert_eq!(lines.last().unwrap(), "");
}

#[test]
fn version_help_and_bad_flags() {
    let out = valency(&["--version"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("lexicon format 1"));
    assert_eq!(code(&valency(&["--help"])), 0);
    assert_eq!(code(&valency(&["extract", "--no-such-flag"])), 1);
    assert_eq!(code(&valency(&[])), 1);
}
