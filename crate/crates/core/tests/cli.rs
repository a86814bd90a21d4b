use std::path::PathBuf;
use std::process::{Command, Output};

fn trapcc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trapcc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("trapcc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn validate_exit_codes() {
    assert_eq!(trapcc(&["validate", "--golden", "E3"]).status.code(), Some(0));
    let iso = trapcc(&["validate", "--golden", "ISO"]);
    assert_eq!(iso.status.code(), Some(1));
    assert!(stdout(&iso).contains("FAIL"));
    assert_eq!(trapcc(&["validate", "--json", "[1, 2]"]).status.code(), Some(2));
    assert_eq!(trapcc(&["validate"]).status.code(), Some(2));
}

#[test]
fn validate_reads_json_file() {
    let path = scratch("e1.json");
    std::fs::write(
        &path,
        r#"{"r12": 8, "r13": "9.7414781617108145730", "r14": "7.52080447824566090",
            "r23": "7.1064329749865061893", "r24": 8.75, "r34": "4.0246879466945716437"}"#,
    )
    .unwrap();
    let o = trapcc(&["validate", "--input", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["omega"]["in_omega"], true);
}

#[test]
fn masses_refuses_non_solutions() {
    let o = trapcc(&["masses", "--golden", "ISO"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--force"));
    let forced = trapcc(&["masses", "--golden", "ISO", "--force"]);
    assert_eq!(forced.status.code(), Some(0));
}

#[test]
fn masses_csv() {
    let o = trapcc(&["masses", "--golden", "E1", "--format", "csv"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("m1,m2,m3,m4,lambda"));
    let m2: f64 = lines.next().unwrap().split(',').nth(1).unwrap().parse().unwrap();
    assert!((1.0 / m2 - 1.019_457_151_076_987_4).abs() < 1e-9);
}

#[test]
fn scan_writes_csv_and_summary() {
    let cfg = scratch("small.cfg");
    std::fs::write(&cfg, "c_min = 2\nc_max = 7\nc_steps = 6\nd_min = 7.2\nd_max = 8\nd_steps = 5\n").unwrap();
    let csv = scratch("small.csv");
    let summary = scratch("small.json");
    let run = |threads: &str| {
        let o = trapcc(&[
            "scan",
            "--config",
            cfg.to_str().unwrap(),
            "--threads",
            threads,
            "--output",
            csv.to_str().unwrap(),
            "--summary",
            summary.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        std::fs::read(&csv).unwrap()
    };
    let one = run("1");
    let four = run("4");
    assert_eq!(one, four);
    assert!(String::from_utf8_lossy(&one).starts_with("c,d,b,e,f,m2,m3,m4,lambda,sigma,shape,in_omega"));
    let s: serde_json::Value = serde_json::from_slice(&std::fs::read(&summary).unwrap()).unwrap();
    assert_eq!(s["cells"], 30);
    assert!(s["accepted"].as_u64().unwrap() > 0);
}

#[test]
fn bad_config_reports_line() {
    let cfg = scratch("bad.cfg");
    std::fs::write(&cfg, "a_fixed = 8\nc_steps = lots\n").unwrap();
    let o = trapcc(&["scan", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn empty_grid_is_not_an_error() {
    let cfg = scratch("empty.cfg");
    std::fs::write(&cfg, "c_min = 0.5\nc_max = 1\nc_steps = 3\nd_min = 1\nd_max = 2\nd_steps = 3\n").unwrap();
    let o = trapcc(&["scan", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1);
    let s: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(s["accepted"], 0);
    assert!(s["note"].is_string());
}

#[test]
fn equal_mass_outcomes() {
    let o = trapcc(&["solve-equal-mass", "--pair", "3,4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "converged");

    let o = trapcc(&["solve-equal-mass", "--pair", "2,4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "boundary");

    assert_eq!(trapcc(&["solve-equal-mass", "--pair", "1,5"]).status.code(), Some(2));
    assert_eq!(trapcc(&["solve-equal-mass", "--init", "x,7"]).status.code(), Some(2));
}

#[test]
fn verify_selected_suites() {
    let o = trapcc(&["verify", "--suite", "decreasing-ratio", "--suite", "diagonal-gap", "--samples", "200"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("pass"));
    assert_eq!(trapcc(&["verify", "--suite", "nonsense"]).status.code(), Some(2));
}

#[test]
fn gradcheck_and_embed() {
    let o = trapcc(&["gradcheck", "--golden", "SQ", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let o = trapcc(&["gradcheck", "--tol-grad", "1e-30"]);
    assert_eq!(o.status.code(), Some(1));

    let o = trapcc(&["embed", "--golden", "E2", "--check"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("label,x,y"));
    assert_eq!(text.lines().count(), 5);
}
