use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn jcm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jcm")).args(args).output().unwrap()
}

fn write_config(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

const SCENARIO: &str = "alpha = 2\nn = 1\neps = i\nr = 0.2\nk = 2\nt_max = 6\ndt = 0.05\n\
observables = inversion, purity, mandel_q, squeezing, pnd\npnd_times = 1.5\n";

#[test]
fn output_is_byte_identical_across_runs_and_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "s.cfg", SCENARIO);
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    assert!(jcm(&["--threads", "1", "run", &cfg, "--out", a.to_str().unwrap()]).status.success());
    assert!(jcm(&["--threads", "4", "run", &cfg, "--out", b.to_str().unwrap()]).status.success());
    for f in ["inversion.csv", "purity.csv", "mandel.csv", "squeezing.csv", "pnd.csv", "pnd_t.csv"] {
        let x = fs::read(a.join(f)).unwrap();
        let y = fs::read(b.join(f)).unwrap();
        assert!(!x.is_empty());
        assert_eq!(x, y, "{f} differs");
    }
}

#[test]
fn preset_writes_per_scenario_directories() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = jcm(&["run", "fig3", "--out", out, "--set", "t_max=2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    for sub in ["even", "odd"] {
        let text = fs::read_to_string(dir.path().join("fig3").join(sub).join("inversion.csv")).unwrap();
        assert!(text.starts_with("T,sigma_z\n"));
        assert_eq!(text.lines().count(), 102);
    }
}

#[test]
fn config_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "bad.cfg", "alpha = 1\n\nk = 1\nbogus = 3\n");
    let o = jcm(&["run", &cfg, "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 4") && err.contains("bogus"), "{err}");

    let cfg = write_config(dir.path(), "bad2.cfg", "alpha = one\n");
    let err = String::from_utf8_lossy(&jcm(&["run", &cfg]).stderr).into_owned();
    assert!(err.contains("line 1"), "{err}");

    let o = jcm(&["run", "no-such-thing"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn undersized_dimension_suggests_a_larger_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "big.cfg", "alpha = 5\nk = 1\nt_max = 1\n");
    let o = jcm(&["run", &cfg, "--dim", "20", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("truncation") && err.contains("try dim 40"), "{err}");
}

#[test]
fn validate_is_deterministic_per_seed() {
    let a = jcm(&["validate", "--seed", "11"]);
    let b = jcm(&["validate", "--seed", "11"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8_lossy(&a.stdout);
    assert!(text.contains("all checks passed"));
    assert_eq!(text.matches("PASS").count(), 6);
}

#[test]
fn wigner_command_uses_grid_and_range() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "w.cfg", SCENARIO);
    let out = dir.path().join("w");
    let o = jcm(&["wigner", &cfg, "--grid", "9,5", "--range", "2.5", "--t", "1", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(out.join("wigner.csv")).unwrap();
    assert_eq!(text.lines().count(), 46);
    assert!(text.lines().nth(1).unwrap().starts_with("-2.50000000000e0,-2.50000000000e0,"));
    assert_eq!(jcm(&["wigner", &cfg, "--grid", "9"]).status.code(), Some(2));
}
