use std::process::Command;

use kcomb::cli::{format_config, parse_config, KESTEN_MAX};
use kcomb::localtime::kesten_sample;

fn kcomb(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_kcomb")).args(args).output().expect("spawn kcomb")
}

fn stdout(o: &std::process::Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn zero_steps_gives_origin() {
    let o = kcomb(&["simulate", "--steps", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "path_index,x,y\n0,0,0\n");
}

#[test]
fn exact_one_step() {
    let o = kcomb(&["exact", "--steps", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 4);
    for r in rows {
        let p: f64 = r.rsplit(',').next().unwrap().parse().unwrap();
        assert_eq!(p, 0.25);
    }
}

#[test]
fn bad_input_exits_1_with_one_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.cfg");
    std::fs::write(&path, "line m=0 p=0.7\n").unwrap();
    let o = kcomb(&["--config", path.to_str().unwrap(), "exact", "--steps", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert_eq!(err.trim_end().lines().count(), 1, "{err}");

    assert_eq!(kcomb(&["exact"]).status.code(), Some(1));
    assert_eq!(kcomb(&["exact", "--steps", "65"]).status.code(), Some(1));
    assert_eq!(kcomb(&["--help"]).status.code(), Some(0));
}

#[test]
fn simulate_is_seeded_and_samplers_share_schema() {
    let a = kcomb(&["simulate", "--steps", "200", "--paths", "5", "--seed", "9"]);
    let b = kcomb(&["simulate", "--steps", "200", "--paths", "5", "--seed", "9", "--threads", "3"]);
    assert_eq!(a.stdout, b.stdout);
    let c = kcomb(&["simulate", "--steps", "200", "--paths", "5", "--sampler", "coupled", "--record", "full"]);
    let text = stdout(&c);
    assert!(text.starts_with("path_index,step,x,y\n"));
    assert_eq!(text.lines().count(), 1 + 5 * 201);
}

#[test]
fn config_file_round_trip_and_output_flag() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = parse_config("# two lines\nline m=-2 p=0.1\nline m=5 p=0.4\n").unwrap();
    let path = dir.path().join("c.cfg");
    std::fs::write(&path, format_config(&cfg)).unwrap();
    assert_eq!(parse_config(&std::fs::read_to_string(&path).unwrap()).unwrap(), cfg);

    let out = dir.path().join("r.json");
    let o = kcomb(&[
        "--config",
        path.to_str().unwrap(),
        "--output",
        out.to_str().unwrap(),
        "compare",
        "--steps",
        "6",
        "--paths",
        "20000",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["config"][1]["m"], 5);
    for key in ["chi2_direct", "chi2_coupled", "dof", "threshold"] {
        assert!(v["results"][key].is_number(), "{key}");
    }
}

#[test]
fn invariance_rejects_different_alphas() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.cfg");
    let b = dir.path().join("b.cfg");
    std::fs::write(&a, "line m=0 p=0.25\n").unwrap();
    std::fs::write(&b, "line m=5 p=0.3\n").unwrap();
    let o = kcomb(&["invariance", "--config-a", a.to_str().unwrap(), "--config-b", b.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn lil_emits_series_and_constants() {
    let o = kcomb(&["lil", "--steps", "100000"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("N,y_stat,x_stat,chung_stat\n"));
    assert!(text.lines().count() > 10);
    assert!(String::from_utf8(o.stderr).unwrap().contains("1.043"));
}

#[test]
fn kesten_statistic_sanity_band() {
    let ks = kesten_sample(10_000_000, 50, 1);
    let max = ks.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    assert!(max <= KESTEN_MAX, "max {max}");
    let mean = ks.iter().sum::<f64>() / ks.len() as f64;
    assert!((0.8..1.1).contains(&mean), "mean {mean}");
}
