use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use laplace_bem_cli::{fmt_num, Report};

fn bin(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_laplace-bem"))
        .args(args)
        .arg("--output-dir")
        .arg(out)
        .output()
        .expect("spawn binary")
}

fn solve_args() -> Vec<&'static str> {
    vec!["--problem", "1", "--boundary-nodes", "30", "--interior-grid", "11"]
}

#[test]
fn solve_run_writes_expected_files() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("run");
    let res = bin(&solve_args(), &out);
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));

    let flux = fs::read_to_string(out.join("boundary_flux.csv")).unwrap();
    let mut lines = flux.lines();
    assert_eq!(lines.next(), Some("node,x,y,theta,q_bem,q_exact,abs_err"));
    assert_eq!(lines.count(), 30);

    let interior = fs::read_to_string(out.join("interior.csv")).unwrap();
    let lines: Vec<&str> = interior.lines().collect();
    assert_eq!(lines[0], "k,x,y,u_bem,u_exact,abs_err,rel_err");
    assert_eq!(lines.len(), 70);
    assert!(lines[35].starts_with("35,0,0,"), "{}", lines[35]);

    assert!(!out.join("convergence.csv").exists());
    let text = fs::read_to_string(out.join("report.json")).unwrap();
    let report: Report = serde_json::from_str(&text).unwrap();
    assert_eq!(report.interior_points, 69);
    assert_eq!(report.interior.len(), 69);
    assert!((report.interior_stats.max_abs - 0.0028535843741309685).abs() < 1e-9);
}

#[test]
fn report_json_round_trips() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("rt");
    assert!(bin(&solve_args(), &out).status.success());
    let text = fs::read_to_string(out.join("report.json")).unwrap();
    let report: Report = serde_json::from_str(&text).unwrap();
    let again: Report = serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
    assert_eq!(report, again);
}

#[test]
fn reruns_are_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    assert!(bin(&solve_args(), &a).status.success());
    assert!(bin(&solve_args(), &b).status.success());
    for name in ["boundary_flux.csv", "interior.csv"] {
        assert_eq!(fs::read(a.join(name)).unwrap(), fs::read(b.join(name)).unwrap(), "{name}");
    }
}

#[test]
fn convergence_mode_rows_decrease() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("conv");
    let res = bin(&["--problem", "1", "--mode", "convergence", "--n-list", "60,15,30"], &out);
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    let csv = fs::read_to_string(out.join("convergence.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "n,max_abs,max_rel,mean_abs,mean_rel,wall_time_s");
    assert_eq!(lines.len(), 4);
    let ns: Vec<usize> = lines[1..].iter().map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(ns, [15, 30, 60]);
    let errs: Vec<f64> = lines[1..]
        .iter()
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
    // the single run uses the finest resolution
    let flux = fs::read_to_string(out.join("boundary_flux.csv")).unwrap();
    assert_eq!(flux.lines().count(), 61);
}

#[test]
fn usage_errors_exit_two_without_output() {
    let tmp = tempfile::tempdir().unwrap();
    let cases: [&[&str]; 6] = [
        &["--problem", "1", "--interior-grid", "11"],
        &["--problem", "1", "--boundary-nodes", "30"],
        &["--problem", "6", "--boundary-nodes", "30", "--interior-grid", "11"],
        &["--problem", "1", "--boundary-nodes", "2", "--interior-grid", "11"],
        &["--problem", "1", "--boundary-nodes", "30", "--interior-grid", "11", "--quad-order", "0"],
        &["--problem", "1", "--mode", "convergence"],
    ];
    for (i, args) in cases.iter().enumerate() {
        let out = tmp.path().join(format!("bad{i}"));
        let res = bin(args, &out);
        assert_eq!(res.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&res.stderr));
        assert!(!out.exists(), "{args:?} created output");
    }
}

#[test]
fn number_formatting_round_trips() {
    for v in [0.0, 1.0, -0.5, 2.395861287141088e-13, 1e-5, 123456.789, 1e17, f64::MIN_POSITIVE] {
        let s = fmt_num(v);
        assert_eq!(s.parse::<f64>().unwrap(), v, "{s}");
    }
    assert_eq!(fmt_num(0.0), "0");
    assert_eq!(fmt_num(1.0), "1");
}
