//! End-to-end tests against the compiled binary: exit codes, determinism,
//! config-file merging, and CSV/JSON agreement.

use std::io::Write;
use std::process::{Command, Output};

const OSC: &[&str] = &[
    "--g2", "1", "--g1", "0", "--eta", "0.25", "--sigma2", "0", "--sigma1", "1", "--c0", "0",
];

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_natanzon"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

#[test]
fn spectrum_is_deterministic_across_runs() {
    let args: Vec<&str> = OSC.iter().copied().chain(["spectrum", "--max-level", "6"]).collect();
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "byte-identical output expected");
    let text = stdout_of(&a);
    assert!(text.starts_with("n,epsilon,residual,threshold\n"));
    assert!(text.contains("0,3.0000000000000000e0"));
    assert!(text.contains("6,2.7000000000000000e1"));
}

#[test]
fn json_mirrors_csv_values() {
    let base: Vec<&str> = OSC.iter().copied().chain(["spectrum", "--max-level", "1"]).collect();
    let csv = stdout_of(&run(&base));
    let mut jargs = base.clone();
    jargs.extend(["--format", "json"]);
    let json = stdout_of(&run(&jargs));
    // Every float literal in the CSV body must appear verbatim in the JSON.
    for line in csv.lines().skip(1) {
        for field in line.split(',') {
            if field.contains('e') {
                assert!(json.contains(field), "JSON missing CSV value {field}");
            }
        }
    }
    assert!(json.starts_with("{\"rows\":["));
    assert!(json.contains("\"threshold\":false"));
}

#[test]
fn green_at_bound_state_energy_is_a_domain_error() {
    let args: Vec<&str> = OSC
        .iter()
        .copied()
        .chain(["green", "--epsilon", "7", "--r", "0.8", "--r-prime", "1.3"])
        .collect();
    let out = run(&args);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("domain error"), "stderr: {err}");
}

#[test]
fn degenerate_weight_polynomial_is_a_domain_error() {
    let out = run(&[
        "--g2", "1", "--g1", "0", "--eta", "0.25", "--sigma2", "0", "--sigma1", "0", "--c0", "0",
        "spectrum",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_parameters_are_a_usage_error() {
    let out = run(&["--g2", "1", "--g1", "0", "spectrum"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("missing potential parameters"), "stderr: {err}");
    assert!(err.contains("sigma1"));
}

#[test]
fn config_file_supplies_parameters_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("params.toml");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(
        f,
        "g2 = 1.0\ng1 = 0.0\neta = 0.25\nsigma2 = 0.0\nsigma1 = 1.0\nc0 = 0.0"
    )
    .unwrap();
    drop(f);
    let p = path.to_str().unwrap();

    let from_config = run(&["spectrum", "--config", p, "--max-level", "0"]);
    assert!(from_config.status.success());
    assert!(stdout_of(&from_config).contains("0,3.0000000000000000e0"));

    // Overriding on the command line turns the oscillator into the Coulomb
    // problem; only c0 still comes from the file.
    let overridden = run(&[
        "spectrum", "--config", p, "--g2", "0", "--g1", "-2", "--eta", "1", "--sigma2", "1",
        "--sigma1", "0", "--max-level", "0",
    ]);
    assert!(overridden.status.success());
    assert!(stdout_of(&overridden).contains("0,-2.5000000000000000e-1"));
}

#[test]
fn unknown_config_key_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    std::fs::write(&path, "g2 = 1.0\nbogus = 3\n").unwrap();
    let out = run(&["spectrum", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("bogus"), "stderr: {err}");
}

#[test]
fn verify_fast_passes_and_is_deterministic() {
    let a = run(&["verify", "--fast"]);
    assert_eq!(a.status.code(), Some(0));
    let b = run(&["verify", "--fast"]);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout_of(&a);
    assert!(text.contains("\"all_passed\":true"), "summary: {text}");
    assert!(text.contains("\"failed\":0"));
}

#[test]
fn verify_detects_injected_algebra_defect() {
    let out = run(&["verify", "--fast", "--perturb-bch-a", "1.001"]);
    assert_eq!(out.status.code(), Some(3));
    let text = stdout_of(&out);
    assert!(text.contains("\"all_passed\":false"));
    assert!(text.contains("\"name\":\"algebra-certification\",\"passed\":false"));
}

#[test]
fn potential_rows_span_the_requested_grid() {
    let args: Vec<&str> = OSC
        .iter()
        .copied()
        .chain(["potential", "--r-min", "0.5", "--r-max", "1.5", "--points", "3"])
        .collect();
    let out = run(&args);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4); // header + 3 rows
    assert!(lines[1].starts_with("5.0000000000000000e-1"));
    // V = r^2 for the oscillator chart
    assert!(lines[2].contains("1.0000000000000000e0,1.0000000000000000e0"));
    assert!(lines[3].contains("2.2500000000000000e0"));
}
