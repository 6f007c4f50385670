use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_epicontrol"));
    c.env_remove("EPICONTROL_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn small_cfg(dir: &Path) -> String {
    let p = dir.join("base.cfg");
    fs::write(
        &p,
        "# small test population\npopulation.n = 300\nexperiment.horizon = 60\nexperiment.replicates = 2\ndisease.initial_infections = 5\npreempt.samples = 16\n",
    )
    .unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn unknown_strategy_exits_2_and_names_it() {
    let o = run(&["run", "--strategy", "frobnicate", "--out", "/nonexistent/never"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("strategy"), "{}", stderr(&o));
}

#[test]
fn validation_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("o");
    let out = out.to_str().unwrap();
    let o = run(&["run", "--set", "population.colour=blue", "--out", out]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("population.colour"));
    let o = run(&["run", "--strategy", "degree", "--schedule", "uniform:10x25", "--out", out]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("horizon"));
    let o = run(&["run", "--schedule", "single:-3", "--out", out]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!out_exists(out));
}

fn out_exists(p: &str) -> bool {
    Path::new(p).exists()
}

#[test]
fn runtime_errors_exit_1() {
    let o = run(&["degree-hist", "--network", "/definitely/missing.txt"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn gen_network_is_deterministic_and_histogram_sums_to_n() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    for p in [&a, &b] {
        let o = run(&["gen-network", "--n", "1000", "--seed", "1", "--out", p.to_str().unwrap()]);
        assert!(o.status.success(), "{}", stderr(&o));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(fs::read(dir.path().join("a.txt.ages")).unwrap(), fs::read(dir.path().join("b.txt.ages")).unwrap());

    let hist = dir.path().join("hist.csv");
    let o = run(&["degree-hist", "--network", a.to_str().unwrap(), "--out", hist.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(&hist).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("degree,count"));
    let total: usize = lines.map(|l| l.split(',').nth(1).unwrap().parse::<usize>().unwrap()).sum();
    assert_eq!(total, 1000);
}

#[test]
fn run_preempt_uniform_full_horizon() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let o = run(&[
        "run", "--strategy", "preempt", "--schedule", "uniform:20x20", "--n", "2000", "--replicates", "1", "--seed", "3",
        "--out", out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stderr(&o).contains("seed=3"));
    let csv = fs::read_to_string(out.join("preempt_20_20/replicate_000.csv")).unwrap();
    assert_eq!(csv.lines().count(), 171);
    assert_eq!(fs::read_to_string(out.join("preempt_20_20/mean.csv")).unwrap().lines().count(), 171);
    let rounds = fs::read_to_string(out.join("preempt_20_20/rounds.csv")).unwrap();
    assert_eq!(rounds.lines().count(), 21);
    let manifest = fs::read_to_string(out.join("manifest.txt")).unwrap();
    assert!(manifest.contains("experiment.strategy = preempt"));
    assert!(manifest.contains("schedule = uniform:20x20"));
    assert!(out.join("summary.csv").exists());
}

#[test]
fn compare_writes_one_row_per_configuration() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_cfg(dir.path());
    let out = dir.path().join("cmp");
    let o = run(&[
        "compare", "--config", &cfg, "--strategies", "none,degree,preempt", "--schedule", "single:0.2", "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let summary = fs::read_to_string(out.join("summary.csv")).unwrap();
    let lines: Vec<&str> = summary.lines().collect();
    assert_eq!(
        lines[0],
        "label,final_cum_infections_mean,final_cum_infections_std,final_cum_deaths_mean,final_cum_deaths_std,pct_reduction_vs_baseline"
    );
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("none,"));
    assert!(lines[1].ends_with(",0.000000"));
    assert!(lines[2].starts_with("degree_60_1,"));
    assert!(lines[3].starts_with("preempt_60_1,"));
    for label in ["none", "degree_60_1", "preempt_60_1"] {
        for f in ["replicate_000.csv", "replicate_001.csv", "mean.csv"] {
            let text = fs::read_to_string(out.join(label).join(f)).unwrap();
            assert_eq!(text.lines().count(), 61, "{label}/{f}");
        }
    }
    let table = String::from_utf8_lossy(&o.stdout);
    assert!(table.contains("preempt_60_1"));
}

#[test]
fn manifest_reproduces_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_cfg(dir.path());
    let a = dir.path().join("a");
    let o = run(&["run", "--config", &cfg, "--strategy", "random", "--schedule", "uniform:0.05x3", "--seed", "11", "--out", a.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let b = dir.path().join("b");
    let m = a.join("manifest.txt");
    let o = run(&["run", "--config", m.to_str().unwrap(), "--out", b.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    for f in ["manifest.txt", "summary.csv", "random_15_3/replicate_001.csv", "random_15_3/mean.csv", "random_15_3/rounds.csv"] {
        assert_eq!(fs::read(a.join(f)).unwrap(), fs::read(b.join(f)).unwrap(), "{f}");
    }
}

#[test]
fn seed_flag_beats_config_beats_environment() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("seeded.cfg");
    fs::write(&cfg, "population.n = 100\nexperiment.horizon = 5\nexperiment.seed = 5\n").unwrap();
    let plain = dir.path().join("plain.cfg");
    fs::write(&plain, "population.n = 100\nexperiment.horizon = 5\n").unwrap();
    let out = dir.path().join("o");
    let seed_of = |args: &[&str]| -> String {
        let o = bin().env("EPICONTROL_SEED", "9").args(args).output().unwrap();
        assert!(o.status.success(), "{}", stderr(&o));
        let m = fs::read_to_string(out.join("manifest.txt")).unwrap();
        m.lines().find(|l| l.starts_with("experiment.seed")).unwrap().to_string()
    };
    let o = out.to_str().unwrap();
    assert_eq!(seed_of(&["run", "--config", cfg.to_str().unwrap(), "--seed", "7", "--out", o]), "experiment.seed = 7");
    assert_eq!(seed_of(&["run", "--config", cfg.to_str().unwrap(), "--out", o]), "experiment.seed = 5");
    assert_eq!(seed_of(&["run", "--config", plain.to_str().unwrap(), "--out", o]), "experiment.seed = 9");
}
