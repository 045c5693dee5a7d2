//! Exercises the installed binary: exit codes, the construct -> verify
//! round trip over the supported grid, and certificate re-verification
//! through the verify command.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use broomlab_cli::format::{read_certificate, write_coloring};
use broomlab_core::search::SearchOutcome;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_broomlab"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    let mut path = std::env::temp_dir();
    path.push(format!("broomlab-test-{}-{name}", std::process::id()));
    path
}

#[test]
fn construct_verify_round_trip_over_the_grid() {
    // (family flag, param flag, param, expected t)
    let grid: [(&str, &str, u32, u32); 7] = [
        ("odd-matching", "--t", 3, 3),
        ("odd-matching", "--t", 5, 5),
        ("odd-matching", "--t", 9, 9),
        ("f2-bipartite", "--s", 2, 4),
        ("f2-bipartite", "--s", 3, 8),
        ("f2-clique", "--s", 3, 6),
        ("f3-clique", "--s", 2, 8),
    ];
    for (family, flag, param, t) in grid {
        let path = tmp(&format!("{family}-{param}.col"));
        let out = run(&[
            "construct",
            "--family",
            family,
            flag,
            &param.to_string(),
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "construct {family} {param}");
        let verify = run(&[
            "verify",
            "--in",
            path.to_str().unwrap(),
            "--t",
            &t.to_string(),
        ]);
        assert_eq!(verify.status.code(), Some(0), "verify {family} t={t}");
        fs::remove_file(&path).ok();
    }
}

#[test]
fn construct_usage_errors() {
    assert_eq!(
        run(&["construct", "--family", "odd-matching", "--t", "4"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["construct", "--family", "mystery", "--s", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["construct", "--family", "f2-clique", "--s", "1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn verify_rejects_malformed_and_improper_files() {
    let path = tmp("improper.col");
    fs::write(
        &path,
        "broomlab-coloring v1\nn 3 m 3 colors 2\n0 1 1\n0 2 2\n1 2 1\n",
    )
    .unwrap();
    let out = run(&["verify", "--in", path.to_str().unwrap(), "--t", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("improper-coloring"), "stderr: {stderr}");
    fs::remove_file(&path).ok();

    let missing = run(&["verify", "--in", "/nonexistent/x.col", "--t", "3"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn search_exit_codes_and_certificates() {
    let cert_path = tmp("k6.cert");
    let exhausted = run(&[
        "search",
        "--host",
        "clique:6",
        "--t",
        "4",
        "--palette-cap",
        "6",
        "--out",
        cert_path.to_str().unwrap(),
    ]);
    assert_eq!(exhausted.status.code(), Some(1));
    let stdout = String::from_utf8_lossy(&exhausted.stdout);
    assert!(stdout.contains("EXHAUSTED"));
    assert!(stdout.contains("nodes="));
    let certify = run(&["certify", "--cert", cert_path.to_str().unwrap()]);
    assert_eq!(certify.status.code(), Some(0));
    fs::remove_file(&cert_path).ok();

    let witness = run(&["search", "--host", "clique:8", "--t", "6", "--palette-cap", "8"]);
    assert_eq!(witness.status.code(), Some(0));

    let bad = run(&["search", "--host", "hypercube:3", "--t", "4"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn certificate_witness_reverifies_through_verify() {
    let cert_path = tmp("k8.cert");
    let out = run(&[
        "search",
        "--host",
        "clique:8",
        "--t",
        "6",
        "--palette-cap",
        "8",
        "--out",
        cert_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let cert = read_certificate(&fs::read_to_string(&cert_path).unwrap()).unwrap();
    let SearchOutcome::Witness(w) = &cert.outcome else {
        panic!("expected a witness certificate");
    };
    let coloring_path = tmp("k8-witness.col");
    fs::write(&coloring_path, write_coloring(w, &[])).unwrap();
    let verify = run(&[
        "verify",
        "--in",
        coloring_path.to_str().unwrap(),
        "--t",
        "6",
    ]);
    assert_eq!(verify.status.code(), Some(0));
    fs::remove_file(&cert_path).ok();
    fs::remove_file(&coloring_path).ok();
}

#[test]
fn tampered_certificates_fail_certify() {
    let cert_path = tmp("k8-tampered.cert");
    let out = run(&[
        "search",
        "--host",
        "clique:8",
        "--t",
        "6",
        "--palette-cap",
        "8",
        "--out",
        cert_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    // Rewrite the embedded witness into something with a rainbow broom by
    // claiming a smaller t in the config echo.
    let text = fs::read_to_string(&cert_path).unwrap();
    let tampered = text.replace("t 6", "t 5");
    fs::write(&cert_path, tampered).unwrap();
    let certify = run(&["certify", "--cert", cert_path.to_str().unwrap()]);
    assert_eq!(certify.status.code(), Some(1));
    fs::remove_file(&cert_path).ok();
}

#[test]
fn near_factorization_search_via_cli() {
    let out = run(&[
        "search",
        "--host",
        "clique:9",
        "--t",
        "8",
        "--mode",
        "near-factorization",
    ]);
    assert_eq!(out.status.code(), Some(0), "K_9 has a witness");

    let wrong_t = run(&[
        "search",
        "--host",
        "clique:9",
        "--t",
        "7",
        "--mode",
        "near-factorization",
    ]);
    assert_eq!(wrong_t.status.code(), Some(2));
}

#[test]
fn bounds_output_and_domain() {
    let out = run(&["bounds", "--t", "9"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("exact 9/2"));

    let out = run(&["bounds", "--t", "10"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("[9/2, 65/12]"));

    assert_eq!(run(&["bounds", "--t", "2"]).status.code(), Some(2));
}

#[test]
fn analyze_reports() {
    let path = tmp("analyze.col");
    let out = run(&[
        "construct",
        "--family",
        "f2-clique",
        "--s",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let analyze = run(&["analyze", "--in", path.to_str().unwrap(), "--t", "6"]);
    assert_eq!(analyze.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&analyze.stdout);
    assert!(stdout.contains("trichromatic=0"), "stdout: {stdout}");
    assert!(stdout.contains("rainbow-unanchored=0"));
    assert!(stdout.contains("fpf-involutions=28"));
    assert!(stdout.contains("good coloring"));
    fs::remove_file(&path).ok();
}

#[test]
fn audit_via_cli() {
    let out = run(&[
        "search",
        "--host",
        "clique:6",
        "--t",
        "4",
        "--palette-cap",
        "6",
        "--audit",
        "c4",
        "--seed",
        "5",
    ]);
    // Exit reflects the EXHAUSTED verdict; the audit line must report
    // zero violations.
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("violations=0"), "stdout: {stdout}");
}

#[test]
fn parallel_witness_hunt_via_cli() {
    let out = run(&[
        "search",
        "--host",
        "clique:8",
        "--t",
        "6",
        "--palette-cap",
        "8",
        "--workers",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("WITNESS"));
}

#[test]
fn construct_to_stdout_without_out_flag() {
    let out = run(&["construct", "--family", "f3-clique", "--s", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.starts_with("broomlab-coloring v1\n"));
    assert!(stdout.contains("# family f3-clique s 2"));
}

#[test]
fn analyze_handles_an_edgeless_file() {
    let path = tmp("edgeless.col");
    fs::write(&path, "broomlab-coloring v1\nn 4 m 0 colors 0\n").unwrap();
    let out = run(&["analyze", "--in", path.to_str().unwrap(), "--t", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("bichromatic=0 trichromatic=0"));
    assert!(stdout.contains("good coloring"));
    assert!(stdout.contains("yes"));
    fs::remove_file(&path).ok();
}
