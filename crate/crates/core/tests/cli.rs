use std::process::Command;

use moran_forest::cli::{run, OUTPUT_DIR_ENV};
use moran_forest::forest::RootedForest;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(
        std::iter::once("moran").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = call(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

#[test]
fn exact_tables() {
    assert_eq!(
        ok(&["exact", "ntrees", "--n", "3", "--backend", "rational"]),
        "1,1/2\n2,1/2\n"
    );
    assert_eq!(
        ok(&["exact", "ntrees-via-a", "--n", "3", "--backend", "rational"]),
        "1,1/2\n2,1/2\n"
    );
    assert_eq!(
        ok(&["exact", "a-table", "--m", "3"]),
        "k,count\n0,2\n1,5\n2,2\n"
    );
    assert_eq!(
        ok(&["exact", "degree", "--n", "2", "--backend", "rational"]),
        "1,1\n"
    );
    assert_eq!(ok(&["exact", "h1", "--n", "2"]), "1,1\n");
    assert_eq!(ok(&["exact", "t1", "--n", "2"]), "2,1\n");
    let float = ok(&["exact", "ntrees", "--n", "3"]);
    assert_eq!(float, "1,0.5\n2,0.5\n");
    let bounds = ok(&["exact", "degree-bounds", "--kmax", "3"]);
    assert!(bounds.starts_with("k,lower,upper\n1,"));
    assert_eq!(bounds.lines().count(), 4);
    let yule = ok(&[
        "exact",
        "yule",
        "--n",
        "10",
        "--ell",
        "2",
        "--backend",
        "rational",
    ]);
    assert_eq!(yule, "1,64/81\n2,5/27\n3,2/81\n");
    let sandwich = ok(&[
        "exact",
        "yule-sandwich",
        "--n",
        "50",
        "--ell",
        "30",
        "--kmax",
        "5",
    ]);
    assert_eq!(sandwich.lines().count(), 7);
    for table in ["degree-limit", "tree-u-limit", "tree1-limit"] {
        let (code, out, err) = call(&["exact", table, "--kmax", "10"]);
        assert_eq!(code, 0);
        assert_eq!(
            out.lines().count(),
            11 - usize::from(table != "degree-limit")
        );
        assert!(err.contains("tail mass"));
    }
    let tail = ok(&["exact", "tree-tail", "--n", "1000", "--kmax", "4"]);
    assert!(tail.starts_with("k,exact,asymptotic,ratio\n"));
    let pred = ok(&["exact", "predictions", "--n", "1000000"]);
    assert!(pred.lines().nth(1).unwrap().starts_with("1000000,7.19"));
    let (code, out, err) = call(&["exact", "clt", "--n", "100"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("x,prob\n") && err.contains("kolmogorov"));
}

#[test]
fn exact_validation() {
    assert_eq!(call(&["exact", "ntrees"]).0, 1);
    assert_eq!(call(&["exact", "ntrees", "--n", "1"]).0, 1);
    assert_eq!(call(&["exact", "yule", "--n", "10"]).0, 1);
    assert_eq!(call(&["exact", "yule", "--n", "10", "--ell", "10"]).0, 1);
    assert_eq!(call(&["exact", "predictions", "--n", "10"]).0, 1);
    assert_eq!(
        call(&["exact", "ntrees", "--n", "3", "--backend", "decimal"]).0,
        1
    );
}

#[test]
fn verify_table() {
    let out = ok(&["verify", "--n", "4"]);
    assert!(out.contains("stationary == ua_exact: PASS"));
    assert!(!out.contains("FAIL"));
    assert_eq!(call(&["verify", "--n", "9"]).0, 1);
}

#[test]
fn sampling() {
    let out = ok(&["sample", "--n", "7", "--seed", "42", "--count", "1"]);
    let f: RootedForest = out.trim().parse().unwrap();
    assert_eq!(f.n(), 7);
    for sampler in ["ua", "backward", "uniform-tree"] {
        let out = ok(&[
            "sample",
            "--n",
            "30",
            "--seed",
            "1",
            "--count",
            "5",
            "--sampler",
            sampler,
            "--format",
            "csv",
        ]);
        assert_eq!(out.lines().count(), 6);
        let out = ok(&[
            "sample",
            "--n",
            "30",
            "--seed",
            "1",
            "--count",
            "5",
            "--sampler",
            sampler,
            "--format",
            "json",
        ]);
        for line in out.lines() {
            serde_json::from_str::<serde_json::Value>(line).unwrap();
        }
    }
    let one = ok(&["sample", "--n", "50", "--seed", "9", "--count", "20"]);
    let first: Vec<&str> = one.lines().collect();
    let single = ok(&["sample", "--n", "50", "--seed", "9", "--count", "1"]);
    assert_eq!(single.trim(), first[0]);
}

#[test]
fn chain_summary() {
    let out = ok(&[
        "chain", "--n", "6", "--steps", "200", "--seed", "5", "--start", "complete",
    ]);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    let fin = &v["final"];
    assert!(fin["absorption_time"].as_u64().unwrap() <= 200);
    let f: RootedForest = fin["forest"].as_str().unwrap().parse().unwrap();
    assert_eq!(f.n(), 6);
    let full = ok(&[
        "chain", "--n", "4", "--steps", "10", "--seed", "5", "--start", "empty", "--trace", "full",
    ]);
    assert_eq!(full.lines().count(), 11);
}

#[test]
fn bijection_commands() {
    let out = ok(&[
        "bijection",
        "phi",
        "--vector",
        "13:(7,8,1,13,11,6,7,7,9,12,5)",
    ]);
    assert!(out.contains("cycles: (10,6,7,9) (11) (12,5)"));
    assert_eq!(
        ok(&["bijection", "phi-inv", "--tree", "3 0 1 1"]).trim(),
        "4:(1,1)"
    );
    let table = ok(&["bijection", "self-test", "--max-n", "5"]);
    assert_eq!(table.matches("PASS").count(), 8);
    assert_eq!(call(&["bijection", "phi", "--vector", "5:(2,1,1)"]).0, 1);
    assert_eq!(call(&["bijection", "phi-inv", "--tree", "3 0 0 1"]).0, 1);
}

#[test]
fn monte_carlo_commands() {
    let csv = ok(&[
        "mc",
        "--statistic",
        "num-trees",
        "--n",
        "30",
        "--reps",
        "2000",
        "--seed",
        "3",
    ]);
    assert!(csv.starts_with("k,count,empirical,reference\n") && csv.contains("p_value,"));
    let json = ok(&[
        "mc",
        "--statistic",
        "local-degree",
        "--sampler",
        "local-limit",
        "--reps",
        "2000",
        "--seed",
        "3",
        "--format",
        "json",
    ]);
    serde_json::from_str::<serde_json::Value>(&json).unwrap();
    assert_eq!(
        call(&[
            "mc",
            "--statistic",
            "local-degree",
            "--n",
            "30",
            "--seed",
            "1"
        ])
        .0,
        1
    );
    assert_eq!(
        call(&[
            "mc",
            "--statistic",
            "max-degree",
            "--n",
            "30",
            "--seed",
            "1"
        ])
        .0,
        1
    );
    let scan = ok(&[
        "asymptotics",
        "--statistic",
        "max-tree-size",
        "--grid",
        "100,200",
        "--reps",
        "20",
        "--seed",
        "1",
    ]);
    assert_eq!(scan.lines().count(), 3);
    assert_eq!(
        call(&[
            "asymptotics",
            "--statistic",
            "num-trees",
            "--grid",
            "100",
            "--seed",
            "1"
        ])
        .0,
        1
    );
}

#[test]
fn output_directory() {
    let dir = std::env::temp_dir().join(format!("moran-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::env::set_var(OUTPUT_DIR_ENV, &dir);
    let (code, out, _) = call(&["exact", "ntrees", "--n", "3", "--output", "n3.csv"]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    assert_eq!(
        std::fs::read_to_string(dir.join("n3.csv")).unwrap(),
        "1,0.5\n2,0.5\n"
    );
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_moran");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let help = status(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&help.stdout).contains("asymptotics"));
    assert_eq!(status(&["sample"]).status.code(), Some(1));
    assert_eq!(status(&[]).status.code(), Some(1));
    let good = status(&["exact", "ntrees", "--n", "3", "--backend", "rational"]);
    assert_eq!(good.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&good.stdout), "1,1/2\n2,1/2\n");
    let unseeded = status(&["sample", "--n", "4"]);
    assert!(String::from_utf8_lossy(&unseeded.stderr).starts_with("seed: "));
}
