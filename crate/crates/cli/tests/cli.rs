use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn strictloc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_strictloc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("strictloc-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

/// Value of a `key  value` line in the text report.
fn field(text: &str, key: &str) -> String {
    text.lines()
        .find_map(|l| {
            let mut it = l.split_whitespace();
            (it.next() == Some(key)).then(|| it.next().unwrap_or("").to_string())
        })
        .unwrap_or_else(|| panic!("no field {key} in\n{text}"))
}

#[test]
fn figure_to_stdout_and_file() {
    let args = ["figure", "fig2", "--points", "3", "--range", "0,6", "--series", "1,2", "--n-samples", "16384"];
    let o = strictloc(&args);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("sweep_param,upper[omega0_sigma=1],"));
    assert!(lines[2].starts_with("3.00000000000e0,"));

    let path = scratch("fig2.csv");
    let mut with_out = args.to_vec();
    let p = path.to_str().unwrap();
    with_out.extend(["--out", p]);
    let o = strictloc(&with_out);
    assert!(o.status.success() && o.stdout.is_empty());
    assert_eq!(fs::read_to_string(&path).unwrap(), text);
}

#[test]
fn figure_argument_errors() {
    let o = strictloc(&["figure", "fig9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("fig9"));
    let o = strictloc(&["figure", "fig3", "--range", "0,5", "--points", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = strictloc(&["figure", "fig3", "--range", "1,2,3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn causal_report() {
    let o = strictloc(&["report", "causal", "--omega0-sigma", "2", "--tau-over-sigma", "3"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert_eq!(field(&text, "target"), "causal_g");
    assert_eq!(field(&text, "invariants"), "ok");
    let eta: f64 = field(&text, "eta").parse().unwrap();
    let upper: f64 = field(&text, "upper").parse().unwrap();
    assert!((upper - (1.0 - eta).sqrt()).abs() < 1e-10);
    assert!(!text.contains("mu "));
}

#[test]
fn physical_report_csv() {
    let o = strictloc(&["report", "physical", "--csv", "--n", "2", "--n-samples", "16384"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    let head: Vec<&str> = lines[0].split(',').collect();
    let row: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(head.len(), row.len());
    let col = |k: &str| row[head.iter().position(|h| *h == k).unwrap()];
    assert_eq!(col("target"), "physical_xi");
    assert_eq!(col("n"), "2");
    assert!(col("mu").parse::<f64>().unwrap() > 0.0);
    assert!(col("nu_abs").parse::<f64>().is_ok());
    assert_eq!(col("upper_single_photon"), "");
    assert_eq!(col("invariants"), "ok");
}

#[test]
fn photon_number_must_be_positive() {
    let o = strictloc(&["report", "causal", "--n", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_suites() {
    let o = strictloc(&["verify", "demos"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.lines().next().unwrap().starts_with("PASS instantaneous_localization"));
    assert!(text.trim_end().ends_with("1 checks, 0 failed"));

    let o = strictloc(&["verify", "everything"]);
    assert_eq!(o.status.code(), Some(2));
}

/// Long window: η is a half-band sum whose error scales with dω².
fn write_signal(name: &str, header: bool, f: impl Fn(f64) -> (f64, f64)) -> PathBuf {
    let n = 1usize << 15;
    let dt = 0.1;
    let mut s = String::new();
    if header {
        s.push_str("t,re,im\n");
    }
    for k in 0..n {
        let t = (k as f64 - (n as f64 - 1.0) / 2.0) * dt;
        let (re, im) = f(t);
        s.push_str(&format!("{t:.17e},{re:.17e},{im:.17e}\n"));
    }
    let path = scratch(name);
    fs::write(&path, s).unwrap();
    path
}

#[test]
fn signal_file_report() {
    // ω₀σ = 2, τ = 3σ in units of 1/ω₀
    let path = write_signal("pulse.csv", true, |t| {
        if t < 0.0 {
            return (0.0, 0.0);
        }
        let env = (-(t - 6.0).powi(2) / 8.0).exp() * 3.7;
        (env * t.cos(), -env * t.sin())
    });
    let from_file = strictloc(&["report", "causal", "--signal-file", path.to_str().unwrap()]);
    assert!(from_file.status.success(), "{}", stderr(&from_file));
    let direct = strictloc(&["report", "causal", "--omega0-sigma", "2", "--tau-over-sigma", "3"]);
    let eta = |o: &Output| field(&stdout(o), "eta").parse::<f64>().unwrap();
    let (a, b) = (eta(&from_file), eta(&direct));
    // the built-in grid samples the jump at t = 0 with a coarser step
    assert!((a - b).abs() < 1e-3 * b, "{a} vs {b}");
    assert_eq!(field(&stdout(&from_file), "invariants"), "ok");
}

#[test]
fn malformed_signal_file() {
    let path = scratch("bad.csv");
    fs::write(&path, "t,re,im\n0.0,1.0,0.0\n0.1,abc,0.0\n").unwrap();
    let o = strictloc(&["report", "causal", "--signal-file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    fs::write(&path, "0.0,1.0,0.0\n0.1,1.0,0.0\n0.3,1.0,0.0\n0.4,1.0,0.0\n").unwrap();
    let o = strictloc(&["report", "causal", "--signal-file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("non-uniform"), "{}", stderr(&o));
}

#[test]
fn real_seed_is_reported_infeasible() {
    let path = write_signal("real.csv", false, |t| if t > 0.0 { (t * (-t).exp(), 0.0) } else { (0.0, 0.0) });
    let o = strictloc(&["report", "causal", "--signal-file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("infeasible"), "{}", stderr(&o));
}
