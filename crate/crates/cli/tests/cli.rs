use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use misnet::graph6::parse_graph6;
use misnet::permis::is_permis;
use misnet_cli::report::tally;
use misnet_cli::survey::Entry;
use serde_json::Value;

fn misnet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_misnet"))
        .args(args)
        .env_remove("MISNET_JOBS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write_corpus(dir: &Path, max: usize) -> String {
    let path = dir.join("corpus.g6");
    let out = misnet(&["generate", "--max", &max.to_string(), "--output", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    path.to_str().unwrap().to_string()
}

#[test]
fn permis_of_path_is_accepted() {
    let out = misnet(&["check", "permis", "--edges", "0-1,1-2", "--word", "0,2,1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["verdict"], "yes");
}

#[test]
fn fixing_word_reports_witness() {
    let out = misnet(&["check", "fixing-word", "--edges", "0-1,1-2", "--word", "0,1,2"]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_eq!(v["verdict"], "no");
    assert_eq!(v["certificate"]["config"], "011");
}

#[test]
fn all_zero_configuration_is_universal() {
    for edges in ["0-1,1-2", "0-1,1-2,2-3,3-0", "0-1,0-2,0-3,1-2"] {
        let out = misnet(&["check", "universal", "--edges", edges, "--config", "0"]);
        assert_eq!(code(&out), 0, "{edges}");
    }
}

#[test]
fn every_query_runs() {
    let p3 = ["--edges", "0-1,1-2"];
    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["constituency", "--set", "1"], 0),
        (vec!["constituency", "--set", "0,1"], 1),
        // V is a fixing set, hence a non-district
        (vec!["district", "--set", "0,1,2"], 1),
        (vec!["district", "--set", ""], 0),
        (vec!["fixing-set", "--set", "0,1,2"], 0),
        (vec!["prefix", "--word", "0,1,2"], 0),
        (vec!["suffix", "--word", "0,1,2"], 0),
        (vec!["suffix", "--word", "0"], 1),
        (vec!["permis"], 0),
        (vec!["kernel-fixable"], 0),
        (vec!["ind-fixing", "--word", "0,1,2"], 0),
        (vec!["dom-fixing", "--word", "0,2"], 0),
        (vec!["dom-fixing", "--word", "1"], 1),
    ];
    for (q, expected) in cases {
        let mut args = vec!["check"];
        args.extend(&q[..1]);
        args.extend(p3);
        args.extend(&q[1..]);
        let out = misnet(&args);
        assert_eq!(code(&out), expected, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(json(&out)["query"], q[0]);
    }
}

#[test]
fn heptagon_is_not_permissible() {
    let out = misnet(&["check", "permis", "--edges", "0-1,1-2,2-3,3-4,4-5,5-6,6-0"]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["certificate"]["status"], "not_permissible");
}

#[test]
fn directed_triangle_is_not_kernel_fixable() {
    let out = misnet(&["check", "kernel-fixable", "--edges", "0>1,1>2,2>0"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn bad_input_exits_64() {
    for args in [
        vec!["check", "permis", "--edges", "0-1", "--word", "7"],
        vec!["check", "permis", "--graph6", "!!"],
        vec!["check", "permis"],
        vec!["check", "constituency", "--edges", "0-1"],
        vec!["check", "universal", "--edges", "0-1", "--config", "111"],
        vec!["nonsense"],
    ] {
        let out = misnet(&args);
        assert_eq!(code(&out), 64, "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn permis_rejects_directed_input() {
    let out = misnet(&["check", "permis", "--edges", "0>1"]);
    assert_eq!(code(&out), 64);
}

#[test]
fn classify_counts_and_records_verify() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = write_corpus(dir.path(), 7);
    let output = dir.path().join("out.jsonl");
    let out = misnet(&["classify", "--input", &corpus, "--output", output.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = fs::read_to_string(&output).unwrap();
    let t = tally(&text);
    assert_eq!(t.rows[&7].total, 853);
    assert_eq!(t.rows[&7].non_permissible, 1);
    assert!(t.corrupt.is_empty());
    for line in text.lines() {
        let Entry::Record(r) = serde_json::from_str(line).unwrap() else {
            panic!("error entry in a clean corpus")
        };
        if let Some(w) = r.permis {
            assert!(is_permis(&parse_graph6(&r.graph6).unwrap(), &w).unwrap().is_permis);
        }
    }
    let report = misnet(&["report", "--input", output.to_str().unwrap(), "--csv"]);
    assert!(stdout(&report).lines().any(|l| l.starts_with("7,853,852,1,0,")));
}

#[test]
fn malformed_lines_become_error_entries() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("mixed.g6");
    fs::write(&input, "# comment\nBw\n???\n\nC~\n&B_?\n").unwrap();
    let output = dir.path().join("out.jsonl");
    let out = misnet(&["classify", "--input", input.to_str().unwrap(), "--output", output.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let entries: Vec<Entry> = fs::read_to_string(&output)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let lines: Vec<usize> = entries.iter().map(Entry::line).collect();
    assert_eq!(lines, vec![2, 3, 5, 6]);
    assert!(matches!(entries[0], Entry::Record(_)));
    assert!(matches!(entries[1], Entry::Error(_)));
    assert!(matches!(entries[2], Entry::Record(_)));
    // a digraph cannot be classified
    assert!(matches!(entries[3], Entry::Error(_)));
    assert!(stdout(&out).contains("error entries: 2"));
}

#[test]
fn resume_gives_identical_summary() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = write_corpus(dir.path(), 7);
    let fresh = dir.path().join("fresh.jsonl");
    let first = misnet(&["classify", "--input", &corpus, "--output", fresh.to_str().unwrap()]);
    assert_eq!(code(&first), 0);

    // an interrupted run: the first 400 lines and half of the next one
    let text = fs::read_to_string(&fresh).unwrap();
    let cut: usize = text.lines().take(400).map(|l| l.len() + 1).sum::<usize>() + 20;
    let partial = dir.path().join("partial.jsonl");
    fs::write(&partial, &text[..cut]).unwrap();
    let refused = misnet(&["classify", "--input", &corpus, "--output", partial.to_str().unwrap()]);
    assert_eq!(code(&refused), 64);
    let resumed = misnet(&[
        "classify",
        "--input",
        &corpus,
        "--output",
        partial.to_str().unwrap(),
        "--resume",
    ]);
    assert_eq!(code(&resumed), 0);
    assert_eq!(resumed.stdout, first.stdout);
    let report = |p: &Path| misnet(&["report", "--input", p.to_str().unwrap()]).stdout;
    assert_eq!(report(&partial), report(&fresh));
}

#[test]
fn verdicts_do_not_depend_on_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = write_corpus(dir.path(), 7);
    let verdicts = |jobs: &str| {
        let path = dir.path().join(format!("jobs{jobs}.jsonl"));
        let out = Command::new(env!("CARGO_BIN_EXE_misnet"))
            .args(["classify", "--input", &corpus, "--output", path.to_str().unwrap()])
            .env("MISNET_JOBS", jobs)
            .output()
            .unwrap();
        assert_eq!(code(&out), 0);
        let mut v: Vec<(usize, String)> = fs::read_to_string(&path)
            .unwrap()
            .lines()
            .map(|l| {
                let Entry::Record(r) = serde_json::from_str(l).unwrap() else { panic!() };
                (r.line, format!("{:?}", r.verdict))
            })
            .collect();
        v.sort();
        (out.stdout, v)
    };
    assert_eq!(verdicts("1"), verdicts("3"));
}

#[test]
fn nine_vertex_input_needs_allow_long() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("nine.g6");
    // the path on nine vertices
    let p9 = misnet::graph6::format_graph6(&misnet::family(misnet::Family::Path, 9).unwrap()).unwrap();
    fs::write(&input, format!("{p9}\n")).unwrap();
    let output = dir.path().join("out.jsonl");
    let args = ["classify", "--input", input.to_str().unwrap(), "--output", output.to_str().unwrap()];
    let refused = misnet(&args);
    assert_eq!(code(&refused), 64);
    assert!(String::from_utf8_lossy(&refused.stderr).contains("--allow-long"));
    assert!(!output.exists());
    let mut allowed = args.to_vec();
    allowed.push("--allow-long");
    let out = misnet(&allowed);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn report_of_empty_file_is_all_zero() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("empty.jsonl");
    fs::write(&input, "").unwrap();
    let out = misnet(&["report", "--input", input.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let all = text.lines().find(|l| l.trim_start().starts_with("all")).unwrap();
    assert!(all.split_whitespace().skip(1).all(|c| c == "0"));
}

#[test]
fn report_lists_and_excludes_corrupt_records() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("r.jsonl");
    let good = r#"{"line":1,"graph6":"Bw","n":3,"verdict":"permissible","permis":[0,1,2],"method":"near_comparability","elapsed":0.0}"#;
    // the heptagon has no permis, so any stored one is forged
    let c7 = misnet::graph6::format_graph6(&misnet::family(misnet::Family::Cycle, 7).unwrap()).unwrap();
    let forged = format!(
        r#"{{"line":2,"graph6":"{c7}","n":7,"verdict":"permissible","permis":[0,1,2,3,4,5,6],"method":"search","elapsed":0.0}}"#
    );
    let lies = r#"{"line":3,"graph6":"Bw","n":4,"verdict":"unknown","permis":null,"method":null,"elapsed":0.0}"#;
    let dup = r#"{"line":1,"input":"x","error":"bad"}"#;
    fs::write(&input, format!("{good}\n{forged}\nnot json\n{lies}\n{dup}\n")).unwrap();
    let t = tally(&fs::read_to_string(&input).unwrap());
    assert_eq!(t.all().total, 1);
    let lines: Vec<usize> = t.corrupt.iter().map(|c| c.0).collect();
    assert_eq!(lines, vec![2, 3, 4, 5]);
    let out = misnet(&["report", "--input", input.to_str().unwrap()]);
    assert_eq!(stdout(&out).matches("corrupt record").count(), 4);
}
