use std::process::{Command, Output};

fn maya(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maya")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

/// Data rows of a csv with a header, split on commas.
fn rows(o: &Output) -> Vec<Vec<String>> {
    stdout(o).lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn entropy_single_pair() {
    let o = maya(&["entropy", "4", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let r = &rows(&o)[0];
    assert!((num(&r[2]) - 0.346574).abs() < 1e-6);
    assert!((num(&r[3]) - 0.346574).abs() < 1e-6);
    assert!(num(&r[4]) < 1e-10);
}

#[test]
fn entropy_rejects_full_circle() {
    let o = maya(&["entropy", "4", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("domain"));
}

#[test]
fn entropy_sweep_is_complete_and_thread_independent() {
    let o = maya(&["entropy", "--sweep", "12"]);
    assert_eq!(o.status.code(), Some(0));
    let r = rows(&o);
    assert_eq!(r.len(), 66);
    assert!(r.iter().all(|row| num(&row[4]) < 1e-10));
    let par = maya(&["entropy", "--sweep", "12", "--jobs", "4"]);
    assert_eq!(par.stdout, o.stdout);
}

#[test]
fn verify_reports_and_exit_codes() {
    let o = maya(&["verify", "mtasep"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["passed"], true);
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.iter().any(|n| n.contains("parry")), "{names:?}");
    assert_eq!(maya(&["verify", "bogus"]).status.code(), Some(2));
}

#[test]
fn verify_all_within_budget() {
    let start = std::time::Instant::now();
    let o = maya(&["verify", "all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(start.elapsed().as_secs() < 120);
}

#[test]
fn plancherel_sampling_is_deterministic() {
    let a = maya(&["sample", "plancherel", "--n", "2500", "--seed", "7"]);
    let b = maya(&["sample", "plancherel", "--n", "2500", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["order"].as_array().unwrap().len(), 2500);
    let c = maya(&["sample", "plancherel", "--n", "2500", "--seed", "8"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn skew_sample_is_a_valid_filling() {
    let o = maya(&["sample", "skew", "--shape", "2,2/1", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["count"], "2");
    let f = &v["filling"];
    assert!(f[0][0].is_null());
    assert_eq!(f[1][1], 3);
    let pair = (f[0][1].as_u64().unwrap(), f[1][0].as_u64().unwrap());
    assert!(pair == (1, 2) || pair == (2, 1));
    assert_eq!(maya(&["sample", "skew", "--shape", "1/2"]).status.code(), Some(2));
}

#[test]
fn frozen_rate_within_three_sigma() {
    let o = maya(&["sample", "frozen", "--L", "6", "--N", "3", "--horizon", "10000", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("time,position\n"));
    let events = rows(&o).len() as f64;
    let (rate, sigma) = (events / 1e4, (2.0f64 / 1e4).sqrt());
    assert!((rate - 2.0).abs() <= 3.0 * sigma, "rate {rate}");
    assert!(stderr(&o).contains("expected 2.000000"));
}

#[test]
fn frozen_replicas_use_consecutive_seeds() {
    let o = maya(&[
        "sample", "frozen", "--L", "4", "--N", "2", "--horizon", "200", "--seed", "5", "--replicas", "3", "--jobs",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r = rows(&o);
    assert_eq!(r.iter().map(|x| x[1].as_str()).collect::<Vec<_>>(), ["5", "6", "7"]);
    let single = maya(&["sample", "frozen", "--L", "4", "--N", "2", "--horizon", "200", "--seed", "6"]);
    assert_eq!(rows(&single).len().to_string(), r[1][2]);
}

#[test]
fn chain_trajectory_moves_one_stone() {
    let o = maya(&["sample", "chain", "--L", "5", "--N", "2", "--steps", "20", "--seed", "2"]);
    let states: Vec<String> = rows(&o).into_iter().map(|r| r[1].clone()).collect();
    assert_eq!(states.len(), 21);
    for s in &states {
        assert_eq!(s.matches('1').count(), 2);
    }
}

#[test]
fn projection_diagonal_is_density() {
    let o = maya(&["kernel", "projection", "--L", "100", "--N", "30"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(rows(&o)[0], ["100", "0", "0.3", "0"]);
}

#[test]
fn projection_heatmap_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k.svg");
    let p = path.to_str().unwrap();
    let o = maya(&["kernel", "projection", "--L", "12", "--N", "5", "--format", "svg", "-o", p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let svg = std::fs::read_to_string(path).unwrap();
    assert!(svg.starts_with("<svg") && svg.matches("<rect").count() > 144);
}

#[test]
fn beads_quadratures_agree() {
    let o = maya(&["kernel", "beads", "--rho", "0.3", "--t", "0.7", "--k", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let r = &rows(&o)[0];
    assert!((num(&r[2]) - num(&r[4])).abs() < 1e-8);
    assert!(num(&r[6]) < 1e-8);
    let wide = maya(&["kernel", "beads", "--rho", "0.3", "--t", "-2,-0.5,0.5", "--k=-2..=2"]);
    assert_eq!(wide.status.code(), Some(0));
    assert_eq!(rows(&wide).len(), 15);
    assert_eq!(maya(&["kernel", "beads", "--rho", "0.3", "--format", "svg"]).status.code(), Some(2));
}

#[test]
fn limit_kernel_equal_time_branch() {
    let o = maya(&["kernel", "limit", "--L", "6", "--N", "3", "--t", "0", "--d", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(rows(&o)[0], ["0", "0", "0.5", "0"]);
    let bad = maya(&["kernel", "limit", "--L", "6", "--N", "3", "--t", "1", "--c", "5"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn finite_and_sine_tables() {
    let o = maya(&["kernel", "finite", "--L", "6", "--N", "3", "--eps", "0.2", "--j", "-1..=1", "--d", "0..6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(rows(&o).len(), 18);
    let s = maya(&["kernel", "sine", "--rho", "0.25", "--k", "0", "--format", "json"]);
    assert_eq!(json(&s)["values"][0]["re"], 0.25);
}

#[test]
fn shape_values() {
    let o = maya(&["shape", "omega", "--x", "0"]);
    assert!((num(&rows(&o)[0][2]) - 0.900316).abs() < 1e-6);
    let f = maya(&["shape", "functional", "--vkls", "--mesh", "2000"]);
    assert_eq!(f.status.code(), Some(0));
    assert!((num(&rows(&f)[0][1]) + 0.5).abs() <= 2e-3);
    let r = maya(&["shape", "residual", "--vkls", "--t", "0.7", "--x", "0.3"]);
    assert!(num(&rows(&r)[0][2]).abs() <= 1e-3);
    assert_eq!(maya(&["shape", "functional", "--mesh", "10"]).status.code(), Some(2));
}

#[test]
fn normalizations_give_the_same_functional() {
    let get = |tag: &[&str]| {
        let mut args = vec!["shape", "functional", "--vkls", "--mesh", "300", "--format", "json"];
        args.extend_from_slice(tag);
        json(&maya(&args))["value"].as_f64().unwrap()
    };
    let a = get(&[]);
    let b = get(&["--tag", "area2"]);
    let c = get(&["--tag", "unrescaled", "--n", "50"]);
    assert!((a - b).abs() < 2e-3 && (a - c).abs() < 2e-3, "{a} {b} {c}");
}

#[test]
fn path_shape_round_trips_through_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.csv");
    let p = path.to_str().unwrap();
    let o = maya(&["shape", "path", "--n", "200", "--seed", "4", "-o", p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("sup"));
    let f = maya(&["shape", "functional", "--input", p, "--format", "json"]);
    assert_eq!(f.status.code(), Some(0));
    assert!(json(&f)["value"].as_f64().unwrap().is_finite());
}

#[test]
fn config_file_merges_under_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# sweep manifest\nsweep = 5\nrho = 0.3\nformat = json\n").unwrap();
    let c = cfg.to_str().unwrap();
    let o = maya(&["--config", c, "entropy"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(json(&o)["rows"].as_array().unwrap().len(), 10);
    let flags = maya(&["--config", c, "entropy", "--sweep", "3", "--format", "csv"]);
    assert_eq!(rows(&flags).len(), 3);
    std::fs::write(&cfg, "not a pair\n").unwrap();
    assert_eq!(maya(&["--config", c, "entropy", "4", "2"]).status.code(), Some(2));
}

#[test]
fn dimer_graph_and_matchings() {
    let g = maya(&["dimer", "graph", "--boundary-in", "1100", "--boundary-out", "0110", "--m-plus", "2"]);
    assert_eq!(g.status.code(), Some(0));
    assert_eq!(json(&g)["L"], 4);
    let m = maya(&[
        "dimer", "matchings", "--boundary-in", "1100", "--boundary-out", "0110", "--m-plus", "2", "--eps", "1/3",
    ]);
    assert_eq!(m.status.code(), Some(0));
    let v = json(&m);
    assert_eq!(v["kasteleyn_identity"], true);
    assert_eq!(v["count"].as_u64().unwrap() as usize, v["matchings"].as_array().unwrap().len());
    let bad = maya(&["dimer", "graph", "--boundary-in", "1100", "--boundary-out", "1000", "--m-plus", "2"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn poisson_report() {
    let o = maya(&["dimer", "poisson", "--width", "2", "--levels", "5", "--eps", "1/10", "--theta", "1/2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(json(&o)["max_error"].as_f64().unwrap() < 0.5);
    let bad = maya(&["dimer", "poisson", "--levels", "5", "--eps", "1/10", "--theta", "1"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(maya(&[]).status.code(), Some(2));
    assert_eq!(maya(&["entropy", "--jobs", "0", "4", "2"]).status.code(), Some(2));
    assert_eq!(maya(&["entropy", "4", "2", "--format", "svg"]).status.code(), Some(2));
    assert_eq!(maya(&["--help"]).status.code(), Some(0));
}
