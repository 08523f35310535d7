use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn sidon(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sidon"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn keygen(dir: &Path, q: &str, k: &str, seed: &str) {
    let o = sidon(
        &[
            "keygen",
            "--q",
            q,
            "--k",
            k,
            "--seed",
            seed,
            "--priv",
            "priv.json",
            "--pub",
            "pub.json",
        ],
        dir,
    );
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
}

#[test]
fn keygen_is_deterministic_and_prints_size() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let o = sidon(
        &[
            "keygen", "--q", "3", "--k", "3", "--seed", "1", "--priv", "a.json", "--pub", "b.json",
        ],
        d,
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("|Q_k| = 182"));
    sidon(
        &[
            "keygen", "--q", "3", "--k", "3", "--seed", "1", "--priv", "c.json", "--pub", "e.json",
        ],
        d,
    );
    assert_eq!(
        std::fs::read(d.join("a.json")).unwrap(),
        std::fs::read(d.join("c.json")).unwrap()
    );
    assert_eq!(
        std::fs::read(d.join("b.json")).unwrap(),
        std::fs::read(d.join("e.json")).unwrap()
    );
}

#[test]
fn keygen_parameter_gate() {
    let dir = TempDir::new().unwrap();
    let o = sidon(
        &[
            "keygen", "--q", "3", "--k", "2", "--priv", "a.json", "--pub", "b.json",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("k must be ≥ 3"));
    let o = sidon(
        &[
            "keygen", "--q", "4", "--k", "3", "--priv", "a.json", "--pub", "b.json",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn encrypt_decrypt_round_trips() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    keygen(d, "3", "3", "1");
    for m in ["0", "181", "57"] {
        let o = sidon(
            &[
                "encrypt",
                "--pub",
                "pub.json",
                "--message",
                m,
                "--ct",
                "ct.json",
            ],
            d,
        );
        assert_eq!(o.status.code(), Some(0));
        let o = sidon(&["decrypt", "--priv", "priv.json", "--ct", "ct.json"], d);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o).trim(), m);
    }
    let o = sidon(
        &[
            "encrypt",
            "--pub",
            "pub.json",
            "--message",
            "182",
            "--ct",
            "ct.json",
        ],
        d,
    );
    assert_eq!(o.status.code(), Some(2));
    let o = sidon(
        &[
            "encrypt",
            "--pub",
            "pub.json",
            "--message",
            "abc",
            "--ct",
            "ct.json",
        ],
        d,
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn error_exit_codes() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    keygen(d, "3", "3", "2");
    std::fs::write(d.join("bad.json"), "{ not json").unwrap();
    assert_eq!(
        sidon(&["decrypt", "--priv", "bad.json", "--ct", "bad.json"], d)
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        sidon(&["decrypt", "--priv", "missing.json", "--ct", "x.json"], d)
            .status
            .code(),
        Some(3)
    );
    std::fs::write(
        d.join("t.json"),
        r#"{"schema":1,"q":3,"n":6,"ct":[0,0,0,0,0,0]}"#,
    )
    .unwrap();
    assert_eq!(
        sidon(&["decrypt", "--priv", "priv.json", "--ct", "t.json"], d)
            .status
            .code(),
        Some(4)
    );
    let o = sidon(
        &[
            "encrypt",
            "--pub",
            "pub.json",
            "--message",
            "1",
            "--ct",
            "no/such/dir/ct.json",
        ],
        d,
    );
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(sidon(&["frobnicate"], d).status.code(), Some(2));
    let o = sidon(&["attack", "--kind", "minor", "--pub", "pub.json"], d);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn attack_minor_report() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    keygen(d, "3", "4", "3");
    let o = sidon(
        &[
            "attack",
            "--kind",
            "minor",
            "--pub",
            "pub.json",
            "--priv",
            "priv.json",
        ],
        d,
    );
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["kernel_dim"], 16);
    assert_eq!(v["rank"], 20);
    assert!(v["checks"]
        .as_object()
        .unwrap()
        .values()
        .all(|c| c == "pass"));
}

#[test]
fn attack_bilinear_agrees_with_decrypt() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    keygen(d, "3", "3", "4");
    sidon(
        &[
            "encrypt",
            "--pub",
            "pub.json",
            "--message",
            "99",
            "--ct",
            "ct.json",
        ],
        d,
    );
    let o = sidon(
        &[
            "attack",
            "--kind",
            "bilinear",
            "--pub",
            "pub.json",
            "--priv",
            "priv.json",
            "--ct",
            "ct.json",
        ],
        d,
    );
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["details"]["messages"], serde_json::json!(["99"]));
    assert_eq!(v["checks"]["matches_decrypt"], "pass");
}

#[test]
fn attack_kinds_all_pass() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    keygen(d, "3", "3", "5");
    for (kind, trials) in [
        ("kernel", "100000"),
        ("ks", "100000"),
        ("kronecker", "1"),
        ("structured", "1"),
        ("basis-ext", "5"),
    ] {
        let o = sidon(
            &[
                "attack",
                "--kind",
                kind,
                "--pub",
                "pub.json",
                "--priv",
                "priv.json",
                "--trials",
                trials,
                "--out",
                "r.json",
            ],
            d,
        );
        assert_eq!(
            o.status.code(),
            Some(0),
            "{kind}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        let v: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(d.join("r.json")).unwrap()).unwrap();
        assert!(
            v["checks"]
                .as_object()
                .unwrap()
                .values()
                .all(|c| c == "pass"),
            "{kind}: {v}"
        );
    }
}

#[test]
fn structured_emit_writes_both_forms() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    keygen(d, "3", "3", "6");
    let o = sidon(
        &[
            "attack",
            "--kind",
            "structured",
            "--pub",
            "pub.json",
            "--priv",
            "priv.json",
            "--emit",
            "sys.txt",
        ],
        d,
    );
    assert_eq!(o.status.code(), Some(0));
    let quartic = std::fs::read_to_string(d.join("sys.txt")).unwrap();
    assert!(quartic.starts_with("# q=3 k=3 vars=51 eqs=36\n"));
    assert_eq!(quartic.lines().filter(|l| l.ends_with("= 0")).count(), 36);
    let quadratic = std::fs::read_to_string(d.join("sys.txt.quadratic")).unwrap();
    assert!(quadratic.starts_with("# q=3 k=3 vars=159 eqs=36\n"));
}

#[test]
fn bench_csv() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let o = sidon(
        &[
            "bench", "--target", "keygen", "--q", "5", "--k", "5", "--trials", "2",
        ],
        d,
    );
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("q,k,mean,stddev"));
    assert!(lines.next().unwrap().starts_with("5,5,"));
    let o = sidon(
        &[
            "bench", "--target", "bilinear", "--trials", "2", "--out", "b.csv",
        ],
        d,
    );
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(d.join("b.csv")).unwrap();
    assert_eq!(csv.lines().count(), 4);
}

#[test]
fn randomized_keys_carry_p_r() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let o = sidon(
        &[
            "keygen",
            "--q",
            "3",
            "--k",
            "3",
            "--priv",
            "a.json",
            "--pub",
            "b.json",
            "--randomized",
        ],
        d,
    );
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(d.join("b.json")).unwrap()).unwrap();
    assert_eq!(v["P_R"].as_array().unwrap().len(), 4);
}
