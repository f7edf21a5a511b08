use std::io::Write;
use std::process::{Command, Output};

fn symbreak(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symbreak"))
        .args(args)
        .env_remove("SYMBREAK_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn value(args: &[&str]) -> String {
    let out = symbreak(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", stderr(&out));
    stdout(&out).trim().to_string()
}

#[test]
fn index_examples() {
    assert_eq!(value(&["index", "path:6", "--index", "theta"]), "4");
    assert_eq!(value(&["index", "kneser:6,2", "--index", "theta"]), "12");
    assert_eq!(
        value(&["index", "cycle:5", "--index", "phi", "--exact", "--k", "3"]),
        "12"
    );
    assert_eq!(
        value(&["index", "cycle:5", "--index", "phi", "--k", "3"]),
        "12"
    );
    assert_eq!(value(&["index", "kneser:5,2", "--index", "D"]), "3");
    assert_eq!(value(&["index", "complete:3", "--index", "DP"]), "none");
}

#[test]
fn provenance_goes_to_stderr() {
    let out = symbreak(&["index", "path:6", "--index", "theta"]);
    assert_eq!(stdout(&out), "4\n");
    let err = stderr(&out);
    assert!(err.contains("backend: closed-form"), "{err}");
    assert!(err.contains("runtime:"), "{err}");
}

#[test]
fn graph6_and_file_inputs() {
    // C~ is K_4
    assert_eq!(value(&["index", "C~", "--index", "theta"]), "4");
    assert_eq!(value(&["index", "C~", "--index", "Phi", "--k", "5"]), "5");
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "\nDhc").unwrap();
    let arg = format!("@{}", file.path().display());
    // Dhc is C_5
    assert_eq!(
        value(&["index", &arg, "--index", "phi", "--exact", "--k", "3"]),
        "12"
    );
    assert_eq!(value(&["index", &arg, "--index", "psi", "--k", "3"]), "4");
}

#[test]
fn table_formats() {
    assert_eq!(
        value(&[
            "table",
            "--index",
            "Phi",
            "--family",
            "path:2..4",
            "--k",
            "2..3"
        ]),
        "n\\k,2,3\n2,1,3\n3,2,9\n4,6,36"
    );
    assert_eq!(
        value(&[
            "table",
            "--index",
            "psi",
            "--family",
            "cycle:3..5",
            "--k",
            "2..3"
        ]),
        "n\\k,2,3\n3,0,1\n4,0,1\n5,0,4"
    );
    assert_eq!(
        value(&["table", "--index", "D", "--family", "path:2..4"]),
        "n,D\n2,2\n3,2\n4,2"
    );
    let json = value(&[
        "table",
        "--index",
        "Phi",
        "--family",
        "path:2..3",
        "--k",
        "2..3",
        "--format",
        "json",
    ]);
    assert!(json.contains("\"index\": \"Phi\""), "{json}");
    assert!(json.contains("\"3\": \"9\""), "{json}");
    let md = value(&[
        "table",
        "--index",
        "Phi",
        "--family",
        "path:2..3",
        "--k",
        "2",
        "--format",
        "markdown",
    ]);
    assert_eq!(md, "| n\\k | 2 |\n|---|---|\n| 2 | 1 |\n| 3 | 2 |");
}

#[test]
fn output_is_deterministic_across_job_counts() {
    let args = [
        "table",
        "--index",
        "Pi",
        "--family",
        "cycle:3..9",
        "--k",
        "1..9",
    ];
    let one = symbreak(&[&["--jobs", "1"][..], &args].concat());
    let many = symbreak(&[&["--jobs", "4"][..], &args].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
    let env = Command::new(env!("CARGO_BIN_EXE_symbreak"))
        .args(args)
        .env("SYMBREAK_JOBS", "2")
        .output()
        .unwrap();
    assert_eq!(env.stdout, one.stdout);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| symbreak(args).status.code();
    assert_eq!(code(&["index", "foo:3", "--index", "D"]), Some(2));
    assert_eq!(code(&["index", "path:3", "--index", "Theta"]), Some(2));
    assert_eq!(code(&["index", "path:3", "--index", "Phi"]), Some(2));
    assert_eq!(
        code(&["index", "@/nonexistent/graph.g6", "--index", "D"]),
        Some(2)
    );
    assert_eq!(code(&["bogus"]), Some(2));
    assert_eq!(
        code(&[
            "index",
            "cycle:6",
            "--index",
            "psi",
            "--k",
            "3",
            "--backend",
            "closed"
        ]),
        Some(2)
    );

    let out = symbreak(&[
        "index",
        "path:30",
        "--index",
        "Phi",
        "--k",
        "5",
        "--backend",
        "oracle",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(
        stderr(&out).contains("oracle colorings"),
        "{}",
        stderr(&out)
    );
    let out = symbreak(&[
        "index",
        "complete:9",
        "--index",
        "Phi",
        "--k",
        "3",
        "--backend",
        "moebius",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn products() {
    assert_eq!(value(&["product", "lex", "path:3", "path:2"]), "3");
    let out = symbreak(&["product", "lex", "complete:2", "complete:2"]);
    assert_eq!(stdout(&out), "4\n");
    assert!(stderr(&out).contains("unnatural"));
    assert_eq!(
        value(&["product", "xjoin", "path:3", "path:1", "path:1", "path:2"]),
        "2"
    );
    let out = symbreak(&["product", "xjoin", "complete:2", "complete:2", "complete:2"]);
    assert_eq!(out.status.code(), Some(2));
}

/// The bundled tables contain six published cells that disagree with their
/// own exact-count companions, so the appendix suite reports 14/16.
#[test]
fn verify_appendix_reports_mismatching_cells() {
    let out = symbreak(&["verify", "--suite", "appendix"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 14);
    assert!(text.contains("14/16 tables match"));
    assert!(text.contains("upper_phi_cycle n=8 k=4: expected 3788, computed 3780"));
}

#[test]
fn verify_properties_reports_the_two_vertex_path() {
    let out = symbreak(&["verify", "--suite", "properties"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    let failed: Vec<&str> = text.lines().filter(|l| l.starts_with("FAIL")).collect();
    assert_eq!(failed.len(), 1, "{text}");
    assert!(failed[0].contains("Psi_k(P_n)"));
    assert!(text.contains("n=2 k=2: Psi 1, right side 0"));
    assert!(!text.contains("n=3 "));
}
