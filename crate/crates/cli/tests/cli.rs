use std::path::Path;
use std::process::{Command, Output};

fn qwb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qwb"))
        .args(args)
        .output()
        .expect("qwb runs")
}

fn write_config(dir: &Path, name: &str, extra: &str) -> String {
    let out = dir.join("out");
    let json = format!(
        r#"{{"model": "rw", "N": 32, "T": 8, "J": 300, "K": 6, "a": 9, "b": 6, "c": 0.5,
            "casino": "paper32", "seed": 4, "output": {:?}{extra}}}"#,
        out.display().to_string()
    );
    let path = dir.join(name);
    std::fs::write(&path, json).unwrap();
    path.display().to_string()
}

#[test]
fn run_writes_metrics_and_is_thread_invariant() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "run.json", "");
    let out = qwb(&["run", &cfg]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stdout).contains("M(J)="));

    let metrics = dir.path().join("out/metrics.csv");
    let first = std::fs::read(&metrics).unwrap();
    let text = String::from_utf8_lossy(&first);
    assert_eq!(text.lines().next(), Some("j,M,rho,cdr"));
    assert_eq!(text.lines().count(), 301);

    assert_eq!(qwb(&["run", &cfg, "--threads", "4"]).status.code(), Some(0));
    assert_eq!(std::fs::read(&metrics).unwrap(), first);
}

#[test]
fn sweep_and_trace_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let base = std::fs::read_to_string(write_config(dir.path(), "base.json", "")).unwrap();
    let spec = dir.path().join("sweep.json");
    std::fs::write(
        &spec,
        format!(r#"{{"axis": "T", "values": [2, 4], "base": {base}}}"#),
    )
    .unwrap();
    let out = qwb(&["sweep", spec.to_str().unwrap()]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let sweep = std::fs::read_to_string(dir.path().join("out/sweep.csv")).unwrap();
    let rows: Vec<&str> = sweep.lines().collect();
    assert_eq!(rows[0], "axis,value,M_J,rho_J,max_cdr");
    assert!(rows[1].starts_with("T,2,"));
    assert!(rows[2].starts_with("T,4,"));

    let cfg = write_config(dir.path(), "trace.json", r#", "trace_runs": [0, 5]"#);
    let out = qwb(&["trace", &cfg, "--decisions", "1,100,300"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    for k in [0, 5] {
        let dec =
            std::fs::read_to_string(dir.path().join(format!("out/trace_run{k}_decisions.csv")))
                .unwrap();
        assert_eq!(dec.lines().next(), Some("j,chosen,reward"));
        assert_eq!(dec.lines().count(), 301);
        let dist =
            std::fs::read_to_string(dir.path().join(format!("out/trace_run{k}_dist.csv"))).unwrap();
        assert_eq!(dist.lines().count(), 1 + 3 * 32);
    }
}

#[test]
fn verify_passes() {
    let out = qwb(&["verify"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS"));
}

#[test]
fn preset_prints_benchmark_config() {
    let out = qwb(&["preset", "qw", "-T", "16"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains(r#""T": 16"#));
    assert!(text.contains(r#""c": "5/16 pi""#));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();

    let bad = write_config(dir.path(), "bad.json", r#", "threads": 0"#);
    let out = qwb(&["run", &bad]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("threads"));

    std::fs::write(dir.path().join("garbage.json"), "{ not json").unwrap();
    let garbage = dir.path().join("garbage.json");
    assert_eq!(
        qwb(&["run", garbage.to_str().unwrap()]).status.code(),
        Some(1)
    );

    assert_eq!(qwb(&["run"]).status.code(), Some(1));
    assert_eq!(qwb(&["frobnicate"]).status.code(), Some(1));

    let missing = dir.path().join("missing.json");
    assert_eq!(
        qwb(&["run", missing.to_str().unwrap()]).status.code(),
        Some(2)
    );

    // output directory blocked by a regular file
    std::fs::write(dir.path().join("out"), "x").unwrap();
    let cfg = write_config(dir.path(), "ok.json", "");
    assert_eq!(qwb(&["run", &cfg]).status.code(), Some(2));

    assert_eq!(qwb(&["--help"]).status.code(), Some(0));
}
