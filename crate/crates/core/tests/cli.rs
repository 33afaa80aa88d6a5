use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use compact_cubic::harness::{read_samples, write_columns};
use compact_cubic::{cubic_spline, EdgeScheme, Mesh};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_compact-cubic"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_samples(path: &Path, x: &[f64], y: &[f64]) {
    write_columns(fs::File::create(path).unwrap(), &["x", "y"], &[x, y]).unwrap();
}

fn runge_file(dir: &Path, n: usize) -> std::path::PathBuf {
    let mesh = Mesh::uniform(-1.0, 1.0, n).unwrap();
    let y: Vec<f64> = mesh
        .nodes()
        .iter()
        .map(|t| 1.0 / (1.0 + 25.0 * t * t))
        .collect();
    let path = dir.join(format!("runge{n}.csv"));
    write_samples(&path, mesh.nodes(), &y);
    path
}

#[test]
fn interp_writes_ppform_and_grid() {
    let dir = tempfile::tempdir().unwrap();
    let input = runge_file(dir.path(), 64);
    let json = dir.path().join("p.json");
    let grid = dir.path().join("grid.csv");
    let out = run(&[
        "interp",
        "--method",
        "compact4",
        "--input",
        input.to_str().unwrap(),
        "--eval-grid",
        "1001",
        "--out",
        json.to_str().unwrap(),
        "--eval-out",
        grid.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["coefs"].as_array().unwrap().len(), 64);
    assert_eq!(v["breaks"].as_array().unwrap().len(), 65);
    let (mesh, y) = read_samples(fs::File::open(&grid).unwrap()).unwrap();
    assert_eq!(mesh.len(), 1001);
    assert_eq!(mesh.last(), 1.0);
    assert!((y[500] - 1.0).abs() < 1e-12);
}

#[test]
fn deriv_matches_library_spline() {
    let dir = tempfile::tempdir().unwrap();
    let x = [0.0, 0.4, 1.1, 1.5, 2.6, 3.0];
    let y: Vec<f64> = x.iter().map(|t| t * t * t - 2.0 * t).collect();
    let input = dir.path().join("cubic.csv");
    write_samples(&input, &x, &y);
    let out = run(&[
        "deriv",
        "--method",
        "spline-natural",
        "--input",
        input.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,y,dydx"));
    let oracle = cubic_spline(
        &Mesh::from_nodes(x.to_vec()).unwrap(),
        &y,
        EdgeScheme::Natural,
    )
    .unwrap();
    for (line, want) in lines.zip(oracle.slopes()) {
        let got: f64 = line.split(',').nth(2).unwrap().parse().unwrap();
        assert_eq!(got, *want);
    }
}

#[test]
fn clamped_needs_both_slopes() {
    let dir = tempfile::tempdir().unwrap();
    let input = runge_file(dir.path(), 8);
    let out = run(&[
        "deriv",
        "--method",
        "spline-clamped",
        "--dleft",
        "-0.1",
        "--input",
        input.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[
        "deriv",
        "--method",
        "spline-clamped",
        "--dleft",
        "-0.1",
        "--dright",
        "0.1",
        "--input",
        input.to_str().unwrap(),
    ]);
    assert!(out.status.success());
}

#[test]
fn matrix_props_on_fibonacci_mesh() {
    let dir = tempfile::tempdir().unwrap();
    let mut widths = vec![1.0, 1.0];
    while widths.len() < 12 {
        let k = widths.len();
        widths.push(widths[k - 1] + widths[k - 2]);
    }
    let mut x = vec![0.0];
    for w in &widths {
        x.push(x.last().unwrap() + w);
    }
    let input = dir.path().join("fib.csv");
    write_columns(fs::File::create(&input).unwrap(), &["x"], &[&x]).unwrap();
    let out = run(&["matrix-props", "--input", input.to_str().unwrap()]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["tn"]["totally_nonnegative"], true);
    assert_eq!(v["all_minors_positive"], true);
    let minors = v["leading_minors"].as_array().unwrap();
    assert_eq!(minors.len(), 13);
    assert!(minors.iter().all(|m| m.as_f64().unwrap() > 0.0));
    assert!(v["condition_1norm"].as_f64().unwrap() > 1.0);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope.csv");
    let out = run(&["deriv", "--input", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    let bad = dir.path().join("bad.csv");
    fs::write(&bad, "x,y\n0,1\n1,two\n").unwrap();
    let out = run(&["deriv", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let short = dir.path().join("short.csv");
    write_samples(&short, &[0.0, 1.0, 2.0], &[1.0, 2.0, 0.0]);
    let out = run(&[
        "deriv",
        "--method",
        "compact4",
        "--input",
        short.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));

    let uneven = dir.path().join("uneven.csv");
    write_samples(&uneven, &[0.0, 1.0, 1.5, 3.0, 3.2, 4.0], &[0.0; 6]);
    let out = run(&[
        "deriv",
        "--method",
        "compactc",
        "--input",
        uneven.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("uniform"));
}

#[test]
fn convergence_and_histogram_csv() {
    let out = run(&[
        "convergence",
        "--function",
        "runge",
        "--n-min",
        "16",
        "--n-max",
        "64",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text.lines().next(),
        Some("n,mesh_kind,err_value,err_deriv_nodes,err_deriv_between,cond")
    );
    assert_eq!(text.lines().count(), 4);

    let out = run(&["convergence", "--function", "zeta"]);
    assert_eq!(out.status.code(), Some(2));

    let a = run(&["cond-hist", "--n", "20", "--trials", "50", "--seed", "9"]);
    let b = run(&["cond-hist", "--n", "20", "--trials", "50", "--seed", "9"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let counts: usize = String::from_utf8(a.stdout)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().parse::<usize>().unwrap())
        .sum();
    assert_eq!(counts, 50);
}
