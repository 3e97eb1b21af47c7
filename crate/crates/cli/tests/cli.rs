use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").canonicalize().unwrap()
}

fn vknot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vknot")).args(args).current_dir(root()).output().unwrap()
}

fn vknot_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_vknot"))
        .args(args)
        .current_dir(root())
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn empty_diagram_has_zero_polynomial() {
    let o = vknot(&["invariant", "pt", "--in", "crates/core/fixtures/empty.gauss"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0\n");
}

#[test]
fn standard_input_is_read_with_a_dash() {
    let o = vknot_stdin(&["invariant", "pt", "--in", "-"], "# comment\n\nlong unframed\nclosed framed O1+ U1+\n");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0\n1\n");
}

#[test]
fn fixture_matrices_are_not_homologous() {
    let o = vknot(&[
        "matrix",
        "compare",
        "crates/core/fixtures/matrix_closed_framed_glue_first.json",
        "crates/core/fixtures/matrix_closed_framed_glue_second.json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "NOT HOMOLOGOUS\n");
}

#[test]
fn a_matrix_is_homologous_to_its_canonical_form() {
    let path = "crates/core/fixtures/matrix_long_unframed_glue_left.json";
    let canon = stdout(&vknot(&["matrix", "canon", path, "--json"]));
    let dir = std::env::temp_dir().join(format!("vknot-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let copy = dir.join("canon.json");
    std::fs::write(&copy, canon).unwrap();
    let o = vknot(&["matrix", "compare", path, copy.to_str().unwrap()]);
    assert_eq!(stdout(&o), "HOMOLOGOUS\n");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn domain_errors_exit_with_one() {
    let o = vknot_stdin(&["invariant", "pt", "--in", "-"], "closed framed O1+ U2+\n");
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("vknot: "));
    assert_eq!(vknot(&["invariant", "pt", "--in", "no/such/file"]).status.code(), Some(1));
    let o = vknot_stdin(&["invariant", "pt-ordered", "--in", "-"], "closed framed O1+ U1+\n");
    assert_eq!(o.status.code(), Some(1));
    let o = vknot_stdin(&["invariant", "B", "--crossing", "3", "--in", "-"], "closed framed O1+ U1+\n");
    assert_eq!(o.status.code(), Some(1));
    let o = vknot_stdin(&["matrix", "canon", "-"], "{\"flavor\":\"framed\"}");
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(vknot(&["bogus"]).status.code(), Some(2));
    assert_eq!(vknot(&["invariant", "Q", "--in", "-"]).status.code(), Some(2));
    assert_eq!(vknot(&["fuzz", "--checks", "nonsense"]).status.code(), Some(2));
    assert_eq!(vknot(&["fuzz", "--categories", "closed-flat"]).status.code(), Some(2));
}

#[test]
fn fuzz_replays_a_single_sample() {
    let args = [
        "fuzz",
        "--seed",
        "7",
        "--samples",
        "30",
        "--steps",
        "10",
        "--checks",
        "pt,G",
        "--categories",
        "long-unframed",
    ];
    let all = vknot(&args);
    assert_eq!(all.status.code(), Some(0));
    assert!(stdout(&all).ends_with("result: 0 failures\n"));
    let mut one = args.to_vec();
    one.extend(["--sample", "12"]);
    let o = vknot(&one);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("pt long-unframed: 1 samples, 0 failures"));
}

#[test]
fn fuzz_output_does_not_depend_on_thread_count() {
    let run = |threads: &str| {
        stdout(&vknot(&["fuzz", "--seed", "3", "--samples", "40", "--steps", "15", "--threads", threads]))
    };
    assert_eq!(run("1"), run("3"));
}

/// Runs every `$ vknot ...` line of the README's console blocks from the
/// workspace root and compares the output byte for byte.
#[test]
fn readme_examples_are_exact() {
    let readme = std::fs::read_to_string(root().join("README.md")).unwrap();
    let mut examples: Vec<(String, String)> = Vec::new();
    let mut in_block = false;
    for line in readme.lines() {
        if line.starts_with("```") {
            in_block = line == "```console";
            continue;
        }
        if !in_block {
            continue;
        }
        if let Some(cmd) = line.strip_prefix("$ ") {
            examples.push((cmd.to_string(), String::new()));
        } else if let Some((_, out)) = examples.last_mut() {
            out.push_str(line);
            out.push('\n');
        }
    }
    assert!(examples.len() >= 5, "README has {} examples", examples.len());
    for (cmd, expected) in &examples {
        let words: Vec<&str> = cmd.split_whitespace().collect();
        assert_eq!(words[0], "vknot", "{cmd}");
        let o = vknot(&words[1..]);
        assert_eq!(stdout(&o), *expected, "{cmd}");
    }
}
