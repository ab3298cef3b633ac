use std::process::{Command, Output};

fn minind(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_minind")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

#[test]
fn simple_sl2_rows() {
    let o = minind(&[
        "--preset",
        "sl2",
        "--weight",
        r#"{"evals":["2"]}"#,
        "--depth",
        "4",
        "character",
        "--module",
        "simple",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0\t1\n1\t1\n2\t1\n3\t0\n4\t0\n");
}

#[test]
fn zero_depth_is_one_row() {
    let o = minind(&["--preset", "sl3", "--depth", "0", "character", "--module", "verma"]);
    assert_eq!(stdout(&o), "0,0\t1\n");
}

#[test]
fn ind_minimal_of_levi_simple_is_the_simple() {
    let base =
        ["--preset", "sl3", "--xi", "1", "--weight", r#"{"evals":["1","1"]}"#, "--depth", "4", "character", "--module"];
    let a = minind(&[&base[..], &["ind-minimal"]].concat());
    let b = minind(&[&base[..], &["simple"]].concat());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn exit_codes() {
    let bad = minind(&["--matrix", "[[2,-1],[0,2]]", "algebra-info"]);
    assert_eq!(bad.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&bad.stderr);
    assert!(msg.contains("(0, 1)"), "{msg}");

    assert_eq!(minind(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(minind(&["--preset", "sl2", "--xi", "7", "roots"]).status.code(), Some(2));
    assert_eq!(minind(&["--bogus-flag"]).status.code(), Some(2));

    let over = minind(&["--preset", "affine-sl2", "--height", "2", "--depth", "3", "character", "--module", "verma"]);
    assert_eq!(over.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&over.stderr).contains("offset"));

    let small = minind(&["verify", "minimal-type", "--depth", "1"]);
    assert_eq!(small.status.code(), Some(1));
    assert!(stdout(&small).contains("retry with a window of twice the depth"));

    let mt = minind(&[
        "--preset",
        "sl3",
        "--depth",
        "1",
        "--weight",
        r#"{"evals":["1","1"]}"#,
        "minimal-type",
        "--index",
        "1",
    ]);
    assert_eq!(mt.status.code(), Some(1));
}

#[test]
fn affine_sl2_multiplicities() {
    let o = minind(&["--preset", "affine-sl2", "--height", "5", "--format", "json", "roots"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let roots = v.as_array().unwrap();
    for r in roots {
        let b: Vec<i64> = serde_json::from_value(r["root"].clone()).unwrap();
        assert!((b[0] - b[1]).abs() <= 1, "{b:?}");
        assert_eq!(r["multiplicity"], 1);
    }
    assert_eq!(roots.len(), 8);
}

#[test]
fn verify_is_deterministic() {
    let a = minind(&["verify", "all", "--format", "json"]);
    let b = minind(&["verify", "all", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn warm_and_cold_cache_agree() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = [
        "--preset",
        "affine-sl2",
        "--xi",
        "1",
        "--weight",
        r#"{"evals":["1","1"]}"#,
        "--depth",
        "3",
        "--format",
        "json",
    ];
    let plain = minind(&[&args[..], &["induce", "--emit-matrix"]].concat());
    let cold = minind(&[&args[..], &["--cache", cache, "induce", "--emit-matrix"]].concat());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    let warm = minind(&[&args[..], &["--cache", cache, "induce", "--emit-matrix"]].concat());
    assert_eq!(plain.status.code(), Some(0));
    assert_eq!(cold.stdout, plain.stdout);
    assert_eq!(warm.stdout, cold.stdout);

    let entry = std::fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    std::fs::write(&entry, "corrupt").unwrap();
    let rebuilt = minind(&[&args[..], &["--cache", cache, "induce", "--emit-matrix"]].concat());
    assert_eq!(rebuilt.stdout, cold.stdout);
}

#[test]
fn dump_tables_round_trip_is_stable() {
    let a = minind(&["--preset", "g2", "--height", "5", "dump-tables"]);
    let b = minind(&["--preset", "g2", "--height", "5", "dump-tables"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(v.is_object());
}
