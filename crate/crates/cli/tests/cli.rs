use std::path::Path;
use std::process::{Command, Output};

fn panehr(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_panehr"))
        .args(args)
        .arg("--no-color")
        .env("PANEHR_CACHE_DIR", cache)
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
fn compute_smallest_panhandle_as_json() {
    let dir = tempfile::tempdir().unwrap();
    let o = panehr(
        dir.path(),
        &[
            "compute",
            "panhandle",
            "--r",
            "1",
            "--s",
            "1",
            "--n",
            "2",
            "--json",
        ],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "[\"1\",\"1\"]\n");
}

#[test]
fn compute_pretty_hypersimplex() {
    let dir = tempfile::tempdir().unwrap();
    let o = panehr(
        dir.path(),
        &["compute", "hypersimplex", "--r", "1", "--n", "3"],
    );
    assert_eq!(stdout(&o), "1/2 t^2 + 3/2 t + 1\n");
}

#[test]
fn compute_paving_matches_oracle_counts() {
    let dir = tempfile::tempdir().unwrap();
    let o = panehr(
        dir.path(),
        &[
            "compute",
            "paving",
            "--r",
            "2",
            "--n",
            "4",
            "--hyperplane-sizes",
            "2",
            "--json",
        ],
    );
    let coeffs: Vec<String> = serde_json::from_str(stdout(&o).trim()).unwrap();
    let counts = panehr(
        dir.path(),
        &[
            "oracle",
            "count",
            "--r",
            "2",
            "--n",
            "4",
            "--hyperplanes",
            "1,2",
            "--max-t",
            "4",
        ],
    );
    for line in stdout(&counts).lines() {
        let (t, c) = line.split_once(' ').unwrap();
        let t: i64 = t.parse().unwrap();
        let value: f64 = coeffs
            .iter()
            .enumerate()
            .map(|(d, x)| {
                let (num, den) = x.split_once('/').unwrap_or((x, "1"));
                num.parse::<f64>().unwrap() / den.parse::<f64>().unwrap()
                    * (t as f64).powi(d as i32)
            })
            .sum();
        assert_eq!(value.round() as i64, c.parse::<i64>().unwrap(), "t={t}");
    }
}

#[test]
fn invalid_parameters_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let o = panehr(
        dir.path(),
        &["compute", "panhandle", "--r", "3", "--s", "2", "--n", "5"],
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("r <= s"), "{}", stderr(&o));
    let o = panehr(
        dir.path(),
        &["enumerate", "forests", "--q", "0", "--s", "2", "--k", "3"],
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn enumerate_examples() {
    let dir = tempfile::tempdir().unwrap();
    let o = panehr(
        dir.path(),
        &["enumerate", "forests", "--q", "0", "--s", "3", "--k", "2"],
    );
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[3], "count: 3");
    let o = panehr(
        dir.path(),
        &["enumerate", "forests", "--q", "1", "--s", "2", "--k", "1"],
    );
    assert_eq!(stdout(&o), "[2,1]\ncount: 1\n");
    let o = panehr(
        dir.path(),
        &[
            "enumerate",
            "dcf",
            "--q",
            "1",
            "--s",
            "1",
            "--k",
            "1",
            "--ell",
            "0",
            "--m",
            "1",
        ],
    );
    assert!(
        stdout(&o).lines().any(|l| l == "[1]|A={1}"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn cache_hits_are_identical_and_reported() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "compute",
        "panhandle",
        "--r",
        "2",
        "--s",
        "3",
        "--n",
        "6",
        "--json",
    ];
    let first = panehr(dir.path(), &args);
    assert!(!stderr(&first).contains("cache hit"));
    let second = panehr(dir.path(), &args);
    assert!(stderr(&second).contains("cache hit"));
    assert_eq!(first.stdout, second.stdout);
    let bypass = panehr(dir.path(), &[&args[..], &["--no-cache"]].concat());
    assert!(!stderr(&bypass).contains("cache hit"));
    assert_eq!(first.stdout, bypass.stdout);
    let stats = panehr(dir.path(), &["cache", "stats", "--json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&stats).trim()).unwrap();
    assert_eq!(v["entries"], 1);
    let cleared = panehr(dir.path(), &["cache", "clear"]);
    assert!(cleared.status.success());
    let again = panehr(dir.path(), &args);
    assert!(!stderr(&again).contains("cache hit"));
}

#[test]
fn no_cache_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    panehr(
        dir.path(),
        &[
            "compute",
            "phi",
            "--r",
            "1",
            "--s",
            "2",
            "--n",
            "4",
            "--no-cache",
        ],
    );
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn corrupt_entries_are_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "compute", "psi", "--r", "2", "--s", "2", "--n", "5", "--json",
    ];
    let good = panehr(dir.path(), &args);
    for entry in std::fs::read_dir(dir.path()).unwrap() {
        std::fs::write(entry.unwrap().path(), "garbage").unwrap();
    }
    let o = panehr(dir.path(), &args);
    assert!(o.status.success());
    assert!(stderr(&o).contains("warning"), "{}", stderr(&o));
    assert_eq!(o.stdout, good.stdout);
    let healed = panehr(dir.path(), &args);
    assert!(stderr(&healed).contains("cache hit"));
}

#[test]
fn unusable_cache_dir_degrades_to_no_cache() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "x").unwrap();
    let o = panehr(
        &blocker.join("sub"),
        &["compute", "hypersimplex", "--r", "2", "--n", "4", "--json"],
    );
    assert!(o.status.success());
    assert!(stderr(&o).contains("without cache"), "{}", stderr(&o));
    assert!(!stdout(&o).is_empty());
}

#[test]
fn verify_writes_csv_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("report.csv");
    let args = [
        "verify",
        "bounds",
        "--max-n",
        "5",
        "--max-hyperplanes",
        "2",
        "--csv",
        csv.to_str().unwrap(),
    ];
    let o = panehr(dir.path(), &args);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("bounds: "), "{}", stdout(&o));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("kind,r,n,shape,result,pass,detail\n"));
    let o2 = panehr(dir.path(), &args);
    assert_eq!(o.stdout, o2.stdout);
    assert_eq!(text, std::fs::read_to_string(&csv).unwrap());
}

#[test]
fn verify_json_summary_and_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let o = panehr(
        dir.path(),
        &[
            "verify",
            "identity-lah",
            "--max-s",
            "4",
            "--max-q",
            "3",
            "--jobs",
            "2",
            "--json",
        ],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["campaign"], "identity-lah");
}

#[test]
fn verify_refuses_slow_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let o = panehr(dir.path(), &["verify", "phi", "--max-s", "9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--i-know-this-is-slow"));
}

#[test]
fn oracle_counts_json() {
    let dir = tempfile::tempdir().unwrap();
    let o = panehr(
        dir.path(),
        &[
            "oracle", "count", "--r", "1", "--s", "1", "--n", "2", "--max-t", "2", "--json",
        ],
    );
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v[2]["count"], "3");
}
