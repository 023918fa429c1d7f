use std::path::Path;
use std::process::{Command, Output};

use bemsched::cli::format::scenario_from_json;

fn bemsched(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bemsched")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn gen(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name).to_str().unwrap().to_owned();
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", &path]);
    let out = bemsched(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

fn field<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(": ")))
        .unwrap_or_else(|| panic!("no {key} in\n{text}"))
}

fn task_procs(text: &str) -> Vec<u32> {
    text.lines()
        .skip_while(|l| *l != "task_procs:")
        .skip(1)
        .take_while(|l| l.starts_with("  "))
        .map(|l| l.split_whitespace().nth(1).unwrap().parse().unwrap())
        .collect()
}

#[test]
fn gen_bus_writes_a_valid_scenario() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen(dir.path(), "bus.json", &["bus", "--pairs", "5"]);
    let s = scenario_from_json(&std::fs::read_to_string(path).unwrap()).unwrap().unwrap();
    assert_eq!(s.objects.len(), 10);
    assert!(s.objects.iter().all(|o| o.edges == 7026));
}

#[test]
fn gen_random_is_repeatable() {
    let args = ["gen", "random", "--objects", "12", "--edges", "10:500", "--seed", "3"];
    let a = bemsched(&args);
    let b = bemsched(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = bemsched(&["gen", "random", "--objects", "12", "--edges", "10:500", "--seed", "4"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn bus_schedule_gives_two_processes_per_conductor() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen(dir.path(), "bus.json", &["bus", "--pairs", "5"]);
    let out = bemsched(&["schedule", &path, "--procs", "20", "--strategy", "proposed"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(task_procs(&text), vec![2; 10]);
    assert_eq!(field(&text, "normalized_length").parse::<f64>().unwrap(), 1.0);

    let out = bemsched(&["schedule", &path, "--procs", "1"]);
    let text = stdout(&out);
    assert_eq!(task_procs(&text), vec![1; 10]);
    assert_eq!(field(&text, "normalized_length").parse::<f64>().unwrap(), 1.0);
}

#[test]
fn schedule_csv_lists_every_task() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen(dir.path(), "bus.json", &["bus", "--pairs", "2"]);
    let csv = dir.path().join("tasks.csv");
    let out = bemsched(&["schedule", &path, "--procs", "8", "--csv", csv.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "task,object,edges,workload,procs,duration,processors");
    assert_eq!(lines.len(), 5);
}

#[test]
fn interposer_lengths_agree_at_large_scale() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen(dir.path(), "ip.json", &["interposer"]);
    let norm = |strategy| {
        let out = bemsched(&["schedule", &path, "--procs", "1000", "--strategy", strategy]);
        assert!(out.status.success());
        field(&stdout(&out), "normalized_length").parse::<f64>().unwrap()
    };
    let (modified, original) = (norm("proposed"), norm("any-pi"));
    assert!((modified - original).abs() <= 0.15, "{modified} vs {original}");
}

#[test]
fn sweep_writes_one_row_per_cell() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen(dir.path(), "ip.json", &["interposer"]);
    let run = |name: &str| {
        let csv = dir.path().join(name);
        let out = bemsched(&["sweep", &path, "--procs", "40:640:40", "-o", csv.to_str().unwrap()]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        std::fs::read_to_string(csv).unwrap()
    };
    let a = run("a.csv");
    assert_eq!(a.lines().count(), 1 + 48);
    assert!(a.starts_with("P,strategy,t_gen,t_matvec_avg,t_iter_avg,internal_makespan,idle_fraction,"));
    assert_eq!(a, run("b.csv"));
}

#[test]
fn simulate_reports_each_strategy() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen(dir.path(), "bus.json", &["bus", "--pairs", "5"]);
    let out = bemsched(&["simulate", &path, "--procs", "20", "--strategy", "proposed,no-redist"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("[proposed P=20]"));
    assert!(text.contains("[no-redist P=20]"));
    assert!(!text.contains("[any-pi"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(bemsched(&["gen", "bus", "--pairs", "0"]).status.code(), Some(1));
    assert_eq!(bemsched(&["schedule"]).status.code(), Some(1));
    assert_eq!(bemsched(&["frobnicate"]).status.code(), Some(1));
    let missing = dir.path().join("missing.json");
    assert_eq!(bemsched(&["schedule", missing.to_str().unwrap(), "--procs", "2"]).status.code(), Some(2));
    let junk = dir.path().join("junk.json");
    std::fs::write(&junk, "{ not json").unwrap();
    assert_eq!(bemsched(&["simulate", junk.to_str().unwrap(), "--procs", "2"]).status.code(), Some(2));
    assert_eq!(bemsched(&["--help"]).status.code(), Some(0));
}
