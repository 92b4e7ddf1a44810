use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn catalog(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/catalog")
        .join(format!("{name}.grp"))
}

fn pspace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pspace"))
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

#[test]
fn analyze_json() {
    let s4 = catalog("S4");
    let out = pspace(&["analyze", s4.to_str().unwrap(), "--prime", "2", "--json"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["sp_size"], 19);
    assert_eq!(v["ap_size"], 13);
    assert_eq!(v["steps"]["steps"], 3);
    assert_eq!(v["same_homotopy_type"], true);
    assert_eq!(v["equivalence"]["cases"][0], "TwoPrimes");
}

#[test]
fn analyze_text_and_skips() {
    let w = catalog("S3wrZ2");
    let out = pspace(&["analyze", w.to_str().unwrap(), "--prime", "2", "--skip-homology", "--skip-steps"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("core sizes           21 39"), "{text}");
    assert!(text.contains("candidate            yes"));
    assert!(text.contains("homology S_p         skipped"));
    assert!(text.contains("steps                skipped"));
    assert!(!text.contains("VIOLATIONS"));
}

#[test]
fn prime_not_dividing_reports_empty_posets() {
    let s4 = catalog("S4");
    let out = pspace(&["analyze", s4.to_str().unwrap(), "--prime", "5"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("both posets empty"));
}

#[test]
fn malformed_file_fails_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.grp");
    std::fs::write(&bad, "degree 3\ngen (1 2)(2 3)\n").unwrap();
    let out = pspace(&["analyze", bad.to_str().unwrap(), "--prime", "2"]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("line 2"), "{}", stderr(&out));
}

#[test]
fn dot_export() {
    let s4 = catalog("S4");
    let out = pspace(&["dot", s4.to_str().unwrap(), "--prime", "2", "--poset", "i_Ap"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.matches("[label=").count(), 7);
    assert_eq!(text.matches("->").count(), 6);
    let out = pspace(&["dot", s4.to_str().unwrap(), "--prime", "2", "--poset", "bogus"]);
    assert!(!out.status.success());
}

#[test]
fn oracle_agrees_on_s4() {
    let s4 = catalog("S4");
    let out = pspace(&["oracle", s4.to_str().unwrap(), "--prime", "2", "--limit", "13"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("steps_to_contract: 3"));
    assert!(text.contains("oracle_changes: 2"));
    assert!(text.contains("agree: true"));
    // 13 elements exceed the default limit
    let out = pspace(&["oracle", s4.to_str().unwrap(), "--prime", "2"]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("limit 12"));
}

#[test]
fn batch_is_deterministic_across_jobs() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["S3", "S4", "D4xZ2", "S3wrZ2", "A4"] {
        std::fs::copy(catalog(name), dir.path().join(format!("{name}.grp"))).unwrap();
    }
    std::fs::write(dir.path().join("broken.grp"), "gen (1 2)\n").unwrap();
    let one = dir.path().join("one.csv");
    let four = dir.path().join("four.csv");
    for (jobs, out) in [("1", &one), ("4", &four)] {
        let o = pspace(&[
            "batch",
            dir.path().to_str().unwrap(),
            "--jobs",
            jobs,
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
        assert!(stderr(&o).contains("candidate: S3wrZ2"));
    }
    let a = std::fs::read(&one).unwrap();
    assert_eq!(a, std::fs::read(&four).unwrap());
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("# pspace batch report"));
    let rows: Vec<&str> = text.lines().skip(2).collect();
    // S3: 2,3; S4: 2,3; D4xZ2: 2; S3wrZ2: 2,3; A4: 2,3; broken: 1
    assert_eq!(rows.len(), 10);
    assert_eq!(rows.iter().filter(|r| r.ends_with("true,ok,")).count(), 1);
    assert!(rows.iter().any(|r| r.starts_with("broken") && r.contains("rejected")));
}

#[test]
fn batch_prime_list_and_empty_dir() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("empty.csv");
    let o = pspace(&["batch", dir.path().to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(std::fs::read_to_string(&out).unwrap().lines().count(), 2);

    std::fs::copy(catalog("S4"), dir.path().join("S4.grp")).unwrap();
    let o = pspace(&[
        "batch",
        dir.path().to_str().unwrap(),
        "--primes",
        "3",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().nth(2).unwrap().starts_with("S4,24,3,"));
    let o = pspace(&["batch", dir.path().to_str().unwrap(), "--primes", "4", "--out", out.to_str().unwrap()]);
    assert!(!o.status.success());
}
