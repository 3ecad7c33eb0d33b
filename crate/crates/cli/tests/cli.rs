use std::path::Path;
use std::process::{Command, Output};

use hyperlat::fixtures as fx;
use hyperlat::{make_embedding, IntMatrix, Isometry};
use num_bigint::BigInt;
use serde_json::Value;

fn hyperlat(args: &[&str]) -> Output {
    hyperlat_env(args, None)
}

fn hyperlat_env(args: &[&str], fixtures: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hyperlat"));
    cmd.args(args).arg("--quiet").env_remove("HYPERLAT_FIXTURES").env_remove("RUST_LOG");
    if let Some(dir) = fixtures {
        cmd.env("HYPERLAT_FIXTURES", dir);
    }
    cmd.output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

#[test]
fn exit_code_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let malformed = dir.path().join("malformed.json");
    std::fs::write(&malformed, "{\"label\": \"U\", \"rank\": 2, \"gram\": [[0, 1], [1").unwrap();
    let malformed = malformed.to_str().unwrap();
    let not_isometry = dir.path().join("bad-iso.json");
    std::fs::write(&not_isometry, r#"{"lattice": "U", "matrix": [[1, 1], [0, 1]]}"#).unwrap();
    let not_isometry = not_isometry.to_str().unwrap();

    let cases: &[(&[&str], i32)] = &[
        (&["signature", "--lattice", "@u"], 0),
        (&["signature", "--lattice", malformed], 2),
        (&["signature", "--lattice", "/no/such/file.json"], 2),
        (&["signature", "--lattice", "@no-such-fixture"], 2),
        (&["salem-degree", "--lattice", "@u", "--isometry", "@u-identity"], 0),
        (&["salem-degree", "--lattice", "@u", "--isometry", not_isometry], 2),
        (&["salem-degree", "--lattice", "@u", "--isometry", "@salem-isometry"], 2),
        (&["transfer", "--lattice", "@u", "--isometry", "@u-identity", "--embedding", "@u-double", "--ample", "[2,1]"], 0),
        (&["transfer", "--lattice", "@u", "--isometry", "@u-swap", "--embedding", "@u-double", "--ample", "[2,1]"], 1),
        (
            &["transfer", "--lattice", "@u", "--isometry", "@u-swap", "--embedding", "@u-double", "--ample", "[2,1]", "--no-chamber"],
            0,
        ),
        (&["transfer", "--lattice", "@u", "--isometry", "@u-swap", "--embedding", "@u-double", "--ample", "[1,-1]"], 2),
        (&["transfer", "--lattice", "@u", "--isometry", "@u-swap", "--embedding", "/missing.json"], 2),
        (
            &["transfer", "--lattice", "@salem", "--isometry", "@salem-isometry", "--embedding", "@salem-embedding", "--cap-order", "2"],
            3,
        ),
        (&["order-mod", "--lattice", "@salem", "--isometry", "@salem-isometry", "--modulus", "2"], 0),
        (&["order-mod", "--lattice", "@salem", "--isometry", "@salem-isometry", "--modulus", "1"], 2),
        (&["order-mod", "--lattice", "@salem", "--isometry", "@salem-isometry", "--modulus", "7", "--cap-order", "3"], 3),
        (&["roots", "--lattice", "@u", "--vector", "[1,1]", "--pairing", "0"], 0),
        (&["roots", "--lattice", "@z2", "--vector", "[1,1]", "--pairing", "0"], 2),
        (&["walk", "--lattice", "@u", "--from", "[2,1]", "--to", "[1,2]"], 0),
        (&["walk", "--lattice", "@u", "--from", "[2,1]", "--to", "[-1,-2]"], 2),
        (&["walk", "--lattice", "@u-a1", "--from", "[9,1,1]", "--to", "[1,5,0]", "--cap-walk", "1"], 3),
        (&["fixtures"], 0),
        (&["fixtures", "salem"], 0),
        (&["fixtures", "nope"], 2),
        (&["no-such-command"], 2),
    ];
    for (args, expected) in cases {
        let out = hyperlat(args);
        assert_eq!(code(&out), *expected, "hyperlat {}\nstderr: {}", args.join(" "), String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn salem_degree_reports() {
    let id = stdout_json(&hyperlat(&["salem-degree", "--lattice", "@u", "--isometry", "@u-identity"]));
    assert_eq!(id["degree"], 0);
    assert_eq!(id["salem"], Value::Null);
    let s = stdout_json(&hyperlat(&["salem-degree", "--lattice", "@salem", "--isometry", "@salem-isometry"]));
    assert_eq!(s["degree"], 4);
    assert_eq!(s["salem"]["coeffs"], serde_json::json!([1, -1, -1, -1, 1]));
}

#[test]
fn u_examples() {
    let sig = stdout_json(&hyperlat(&["signature", "--lattice", "@u"]));
    assert_eq!(sig["signature"], serde_json::json!([1, 1]));
    assert_eq!(sig["determinant"], -1);

    let roots = stdout_json(&hyperlat(&["roots", "--lattice", "@u", "--vector", "[1,1]", "--pairing", "0"]));
    assert_eq!(roots["roots"], serde_json::json!([[-1, 1], [1, -1]]));

    let walk = stdout_json(&hyperlat(&["walk", "--lattice", "@u", "--from", "[2,1]", "--to", "[1,2]"]));
    assert_eq!(walk["word"]["roots"], serde_json::json!([[1, -1]]));
    assert_eq!(walk["end"], serde_json::json!([1, 2]));
}

#[test]
fn verify_fresh_tampered_malformed() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.json");
    let c = cert.to_str().unwrap();
    let out = hyperlat(&[
        "transfer", "--lattice", "@salem", "--isometry", "@salem-isometry", "--embedding", "@salem-embedding",
        "--output", c,
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    assert_eq!(code(&hyperlat(&["verify", c])), 0);

    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    doc["ambient"]["gram"][0][0] = Value::from(2);
    let tampered = dir.path().join("tampered.json");
    std::fs::write(&tampered, serde_json::to_string(&doc).unwrap()).unwrap();
    assert_eq!(code(&hyperlat(&["verify", tampered.to_str().unwrap()])), 1);

    let malformed = dir.path().join("malformed.json");
    std::fs::write(&malformed, "[1, 2, 3]").unwrap();
    assert_eq!(code(&hyperlat(&["verify", malformed.to_str().unwrap()])), 2);
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let runs: Vec<&[&str]> = vec![
        &["transfer", "--lattice", "@salem", "--isometry", "@salem-isometry", "--embedding", "@salem-embedding"],
        &["transfer", "--lattice", "@u", "--isometry", "@u-identity", "--embedding", "@u-double", "--ample", "[3,1]"],
        &["salem-degree", "--lattice", "@rank22", "--isometry", "@rank22-isometry"],
        &["walk", "--lattice", "@u-a1", "--from", "[9,1,1]", "--to", "[2,9,3]"],
        &["fixtures"],
    ];
    for (i, args) in runs.iter().enumerate() {
        let a = hyperlat(args);
        let b = hyperlat(args);
        assert_eq!(code(&a), 0, "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");

        let path = dir.path().join(format!("out{i}.json"));
        let mut with_output = args.to_vec();
        with_output.extend(["--output", path.to_str().unwrap()]);
        assert_eq!(code(&hyperlat(&with_output)), 0);
        assert_eq!(std::fs::read(&path).unwrap(), a.stdout, "{args:?}");
    }
}

#[test]
fn bundled_fixtures_match_library() {
    let u = fx::hyperbolic_plane();
    let expected: Vec<(&str, Value)> = vec![
        ("u", serde_json::to_value(u.to_json()).unwrap()),
        ("u2", serde_json::to_value(fx::scaled_hyperbolic_plane().to_json()).unwrap()),
        ("u-a1", serde_json::to_value(fx::hyperbolic_plus_a1().to_json()).unwrap()),
        ("z2", serde_json::to_value(fx::euclidean_plane().to_json()).unwrap()),
        ("u-identity", serde_json::to_value(Isometry::identity(&u).to_json()).unwrap()),
        ("u-swap", serde_json::to_value(fx::hyperbolic_swap().to_json()).unwrap()),
        (
            "u-double",
            serde_json::to_value(make_embedding(&u, &IntMatrix::scalar(2, BigInt::from(2))).unwrap().to_json())
                .unwrap(),
        ),
        ("z2-swap", serde_json::to_value(fx::euclidean_swap().to_json()).unwrap()),
        ("z2-embedding", serde_json::to_value(fx::euclidean_embedding().to_json()).unwrap()),
        ("salem", serde_json::to_value(fx::salem_lattice().to_json()).unwrap()),
        ("salem-isometry", serde_json::to_value(fx::salem_isometry().to_json()).unwrap()),
        ("salem-embedding", serde_json::to_value(fx::salem_embedding().to_json()).unwrap()),
        ("rank22", serde_json::to_value(fx::rank22_lattice().to_json()).unwrap()),
        ("rank22-isometry", serde_json::to_value(fx::rank22_isometry().to_json()).unwrap()),
        ("rank22-embedding", serde_json::to_value(fx::rank22_embedding().to_json()).unwrap()),
    ];
    let listed: Vec<String> = serde_json::from_value(stdout_json(&hyperlat(&["fixtures"]))).unwrap();
    let mut names: Vec<String> = expected.iter().map(|(n, _)| n.to_string()).collect();
    names.sort();
    assert_eq!(listed, names);
    for (name, value) in expected {
        let out = hyperlat(&["fixtures", name]);
        assert_eq!(code(&out), 0);
        assert_eq!(stdout_json(&out), value, "fixture {name}");
    }
}

#[test]
fn fixture_directory_override() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("u.json"), r#"{"label": "U", "rank": 2, "gram": [[0, 3], [3, 0]]}"#).unwrap();
    let out = hyperlat_env(&["signature", "--lattice", "@u"], Some(dir.path()));
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["determinant"], -9);
    // bundled names are not visible through an override directory
    assert_eq!(code(&hyperlat_env(&["signature", "--lattice", "@salem"], Some(dir.path()))), 2);
    let listed = stdout_json(&hyperlat_env(&["fixtures"], Some(dir.path())));
    assert_eq!(listed, serde_json::json!(["u"]));
}

#[test]
fn json_logs_on_stderr() {
    let out = Command::new(env!("CARGO_BIN_EXE_hyperlat"))
        .args(["signature", "--lattice", "@u", "--log-json"])
        .env_remove("RUST_LOG")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let out = Command::new(env!("CARGO_BIN_EXE_hyperlat"))
        .args(["walk", "--lattice", "@u", "--from", "[2,1]", "--to", "[1,2]", "--log-json"])
        .env_remove("RUST_LOG")
        .output()
        .unwrap();
    let stderr = String::from_utf8_lossy(&out.stderr);
    let first = stderr.lines().next().expect("a log line");
    let line: Value = serde_json::from_str(first).unwrap();
    assert_eq!(line["level"], "INFO");
    // stdout stays pure JSON
    stdout_json(&out);
}
