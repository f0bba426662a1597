use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use pricecap::{validate_schedule_csv, Summary};
use tempfile::TempDir;

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name)
}

fn run(config: &Path, command: &str, out: &Path, extra: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pricecap"))
        .arg("--config")
        .arg(config)
        .args(["--command", command, "--out"])
        .arg(out)
        .args(extra)
        .output()
        .expect("binary runs")
}

fn summary(out: &Path) -> Summary {
    Summary::parse(&fs::read_to_string(out.join("summary.txt")).unwrap()).unwrap()
}

fn value(s: &Summary, key: &str) -> f64 {
    s.get(key).unwrap_or_else(|| panic!("missing {key}")).parse().unwrap()
}

#[test]
fn solve_reports_golden_cutoffs() {
    let dir = TempDir::new().unwrap();
    let o = run(&config("linear_uniform_alpha0.toml"), "solve", dir.path(), &[]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let s = summary(dir.path());
    assert!((value(&s, "c_bar") - 0.4783).abs() < 1e-4);
    assert!((value(&s, "p_hat") - 0.3043).abs() < 1e-4);
    assert_eq!(s.get("gate"), Some("intervention"));
    assert_eq!(String::from_utf8_lossy(&o.stdout), fs::read_to_string(dir.path().join("summary.txt")).unwrap());

    let policy = fs::read_to_string(dir.path().join("policy.csv")).unwrap();
    assert_eq!(policy.lines().next(), Some("c,segment,q_star,p_star,consumer_price,profit,tax"));
    let tax = fs::read_to_string(dir.path().join("tax.csv")).unwrap();
    assert_eq!(tax.lines().next(), Some("p,tau"));
    assert_eq!(tax.lines().last(), Some("1,prohibitive"));
}

#[test]
fn gate_recognises_laissez_faire_environment() {
    let dir = TempDir::new().unwrap();
    let o = run(&config("constant_elastic.toml"), "gate", dir.path(), &[]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stdout).contains("gate=laissez-faire optimal"));
    let margin = fs::read_to_string(dir.path().join("margin.csv")).unwrap();
    assert_eq!(margin.lines().next(), Some("c,M"));
}

#[test]
fn infeasible_fixed_cost_exits_with_two() {
    let dir = TempDir::new().unwrap();
    let text = fs::read_to_string(config("linear_uniform_alpha0.toml")).unwrap().replace("k = 0.0", "k = 5.0");
    let path = dir.path().join("env.toml");
    fs::write(&path, text).unwrap();
    let o = run(&path, "lf", &dir.path().join("out"), &[]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_config_exits_with_three_and_names_the_field() {
    let dir = TempDir::new().unwrap();
    let base = fs::read_to_string(config("linear_uniform_alpha0.toml")).unwrap();
    for (text, field) in [
        (base.replace("b = 1.0", "slope = 1.0"), "slope"),
        (base.replace("alpha = 0.0", "alpha = -0.5"), "alpha"),
        (format!("{base}\n[solver]\ngate_tol = -1.0\n"), "solver.gate_tol"),
    ] {
        let path = dir.path().join("env.toml");
        fs::write(&path, text).unwrap();
        let o = run(&path, "solve", &dir.path().join("out"), &[]);
        assert_eq!(o.status.code(), Some(3));
        assert!(String::from_utf8_lossy(&o.stderr).contains(field), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let o = run(&dir.path().join("missing.toml"), "check", &dir.path().join("out"), &[]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&config("linear_uniform_alpha0.toml"), "solve", &dir.path().join("out"), &["--grid", "10"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn outputs_are_deterministic() {
    let (a, b) = (TempDir::new().unwrap(), TempDir::new().unwrap());
    for dir in [&a, &b] {
        let o = run(&config("truncated_normal.toml"), "solve", dir.path(), &["--grid", "257", "--cbar-grid", "33"]);
        assert!(o.status.success());
    }
    for name in ["policy.csv", "tax.csv", "summary.txt"] {
        assert_eq!(fs::read(a.path().join(name)).unwrap(), fs::read(b.path().join(name)).unwrap(), "{name}");
    }
}

#[test]
fn every_command_emits_valid_artifacts() {
    let dir = TempDir::new().unwrap();
    let cfg = config("linear_uniform_alpha1.toml");
    let files = [
        ("check", vec![]),
        ("lf", vec!["lf.csv"]),
        ("gate", vec!["margin.csv"]),
        ("solve", vec!["policy.csv", "tax.csv"]),
        ("audit", vec!["audit.csv"]),
        ("oracle", vec!["grid.csv", "oracle.csv"]),
    ];
    for (command, csvs) in files {
        let out = dir.path().join(command);
        let o = run(&cfg, command, &out, &["--grid", "257", "--cbar-grid", "33", "--seed", "7"]);
        assert!(o.status.success(), "{command}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(out.join("summary.txt").exists());
        for name in csvs {
            let f = fs::File::open(out.join(name)).unwrap();
            validate_schedule_csv(f).unwrap_or_else(|e| panic!("{command}/{name}: {e}"));
        }
    }
    let audit = summary(&dir.path().join("audit"));
    assert_eq!(audit.get("within_two_steps"), Some("true"));
    let oracle = fs::read_to_string(dir.path().join("oracle/oracle.csv")).unwrap();
    assert!(oracle.lines().any(|l| l.starts_with("closed-form,")));
    assert_eq!(summary(&dir.path().join("oracle")).get("seed"), Some("7"));
}
