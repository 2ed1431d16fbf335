use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const WITNESS: &str = r#"format = "conlat-algebra/1"
size = 4

[partitions]
beta = [[0, 2], [1, 3]]
gamma = [[0, 1], [2], [3]]
alpha = [[0, 1], [2, 3]]
"#;

fn conlat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conlat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.display().to_string()
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

#[test]
fn examples_match_and_are_deterministic() {
    let a = conlat(&["examples", "--lemmas"]);
    let b = conlat(&["examples", "--lemmas"]);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let out = stdout(&a);
    assert!(out.contains("M_2       M_2"), "{out}");
    assert!(out.contains("K_2       K_2"), "{out}");
    assert!(!out.contains("FAILED"));
    assert!(out.ends_with("outcome: ok\n"));
}

#[test]
fn examples_write_dot_files() {
    let dir = TempDir::new().unwrap();
    let out_dir = dir.path().join("dots");
    let o = conlat(&["examples", "--dot", out_dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    for name in ["ex_n5_m2-generated.dot", "ex_n5_k2-generated.dot"] {
        let text = fs::read_to_string(out_dir.join(name)).unwrap();
        assert!(text.starts_with("digraph"), "{name}");
    }
}

#[test]
fn classify_n5_reports_chain_and_witness() {
    let o = conlat(&["classify-n5", &data("ex_n5_k2.toml")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("γ⁰ < γ¹ < γ² = α"), "{out}");
    assert!(out.contains("isomorphism onto K_2 verified"));
    assert!(out.contains("input sha256:"));
    // chain terms are printed with element names
    assert!(out.contains("|u0|u1|v0,v1,v2|t0,t1|t2,t3|"), "{out}");
}

#[test]
fn classify_n5_with_l14_and_dot() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "w.toml", WITNESS);
    let dots = dir.path().join("out");
    let o = conlat(&["classify-n5", &file, "--l14", "--dot", dots.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("class                   K_1"), "{out}");
    assert!(out.contains("class                   L14"), "{out}");
    for f in ["n5-generated.dot", "n5-K_1.dot", "l14-generated.dot", "l14-L14.dot"] {
        assert!(dots.join(f).exists(), "{f}");
    }
}

#[test]
fn modular_labels_are_rejected() {
    let dir = TempDir::new().unwrap();
    let file = write(
        &dir,
        "m3.toml",
        "format = \"conlat-algebra/1\"\nsize = 4\n[partitions]\nalpha = [[0, 1], [2, 3]]\nbeta = [[0, 2], [1, 3]]\ngamma = [[0, 3], [1, 2]]\n",
    );
    let o = conlat(&["classify-n5", &file]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not an N5: modular quintuple"), "{}", stderr(&o));
}

#[test]
fn document_errors_name_the_line() {
    let dir = TempDir::new().unwrap();
    let file = write(
        &dir,
        "bad.toml",
        "format = \"conlat-algebra/1\"\nsize = 3\n[partitions]\nalpha = [[0, 1], [1, 2]]\n",
    );
    let o = conlat(&["classify-n5", &file]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("line 4: partition `alpha`"), "{err}");
    assert!(err.contains("more than one block"), "{err}");

    let o = conlat(&["classify-n5", &file, "--alpha", "nope"]);
    assert_eq!(o.status.code(), Some(2));
    let o = conlat(&["classify-n5", &dir.path().join("missing.toml").display().to_string()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn exhausted_budget_is_a_mismatch() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "w.toml", WITNESS);
    let o = conlat(&["classify-n5", &file, "--budget", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("K_inf"), "{}", stderr(&o));
}

#[test]
fn d1_and_d2_commands() {
    let dir = TempDir::new().unwrap();
    let d1 = write(
        &dir,
        "d1.toml",
        "format = \"conlat-algebra/1\"\nsize = 5\n[partitions]\nalpha = [[0, 1], [2, 3], [4]]\nbeta = [[0], [1], [2], [3, 4]]\ngamma = [[0, 2], [1, 4], [3]]\n",
    );
    let o = conlat(&["check-d1", &d1]);
    // the generated lattice has 17 elements, so the D13 comparison fails
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("generated               17 elements"), "{out}");
    assert!(out.contains("D1 embeds               yes"), "{out}");

    let d2 = write(
        &dir,
        "d2.toml",
        "format = \"conlat-algebra/1\"\nsize = 5\n[partitions]\nalpha = [[0, 1], [2, 3], [4]]\nbeta = [[0, 1, 2], [3], [4]]\ngamma = [[0, 2], [1, 3], [4]]\n",
    );
    let o = conlat(&["classify-d2", &d2]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("class                   S_1"));

    let relaxed = write(
        &dir,
        "s_star.toml",
        "format = \"conlat-algebra/1\"\nsize = 5\n[partitions]\nalpha = [[0, 2, 4], [1, 3]]\ngamma = [[0, 1], [2, 3], [4]]\nmu = [[0, 2], [1, 3], [4]]\ndelta = [[0, 1], [2], [3], [4]]\n",
    );
    let o = conlat(&["classify-d2", &relaxed, "--mu", "mu", "--delta", "delta", "--relaxed-bounds"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("class                   S*_1"), "{}", stdout(&o));
}

#[test]
fn lattice_audit_on_catalog_and_documents() {
    let o = conlat(&["lattice-audit", "catalog:N5"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for row in [
        "modular                 no",
        "meet-semidistributive   yes",
        "join-semidistributive   yes",
        "whitman                 yes",
        "projective              yes",
    ] {
        assert!(out.contains(row), "{row}\n{out}");
    }
    let out = stdout(&conlat(&["lattice-audit", "catalog:D13"]));
    assert!(out.contains("meet-semidistributive   no"), "{out}");

    // three nested partitions generate a chain
    let dir = TempDir::new().unwrap();
    let file = write(
        &dir,
        "chain.toml",
        "format = \"conlat-algebra/1\"\nsize = 3\n[partitions]\na = [[0], [1], [2]]\nb = [[0, 1], [2]]\nc = [[0, 1, 2]]\n",
    );
    let out = stdout(&conlat(&["lattice-audit", &file]));
    assert!(out.contains("modular                 yes"), "{out}");
    assert!(out.contains("distributive            yes"), "{out}");
    assert!(out.contains("projective              yes"), "{out}");

    let o = conlat(&["lattice-audit", "catalog:Q7"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn catalog_listing_and_show() {
    let out = stdout(&conlat(&["catalog", "list", "--max-index", "2"]));
    assert!(out.contains("K_2                     20 elements"), "{out}");
    assert!(out.contains("D13                     13 elements"));
    let out = stdout(&conlat(&["catalog", "show", "K(1)"]));
    assert!(out.contains("θ₀"), "{out}");
}

#[test]
fn search_is_independent_of_threads() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "s5.toml", "format = \"conlat-algebra/1\"\nsize = 5\n");
    let one = conlat(&["search", &file, "--pattern", "d2"]);
    let four = conlat(&["search", &file, "--pattern", "d2", "--threads", "4"]);
    assert_eq!(one.status.code(), Some(0));
    let strip = |o: &Output| stdout(o).lines().skip(1).collect::<Vec<_>>().join("\n");
    assert_eq!(strip(&one), strip(&four));
    assert!(stdout(&one).contains("labelled D2             840"));
}

#[test]
fn library_entry_point_matches_binary() {
    let report = conlat_cli::run(&["catalog", "show", "N5"]).unwrap();
    let o = conlat(&["catalog", "show", "N5"]);
    assert_eq!(report.render(), stdout(&o));
    assert!(matches!(
        conlat_cli::run(&["no-such-command"]),
        Err(conlat_cli::CliError::Args(_))
    ));
}
