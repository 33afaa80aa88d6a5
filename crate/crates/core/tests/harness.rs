use compact_cubic::harness::{run_cond_histogram, run_convergence, MeshKind, TestFunction};
use compact_cubic::{Error, Method};

fn doubling(from: usize, to: usize) -> Vec<usize> {
    std::iter::successors(Some(from), |n| Some(n * 2))
        .take_while(|&n| n <= to)
        .collect()
}

#[test]
fn recip_gamma_chebyshev_nodal_order() {
    let report = run_convergence(
        &TestFunction::RecipGamma,
        MeshKind::Chebyshev,
        Method::Compact4,
        &doubling(8, 256),
    )
    .unwrap();
    let order = report.slopes.deriv_nodes.unwrap();
    assert!((order - 4.0).abs() <= 0.3, "{order}");
}

#[test]
fn constant_is_reproduced() {
    let cases = [
        Method::Compact4,
        Method::SplineNatural,
        Method::SplineNotAKnot,
    ]
    .into_iter()
    .flat_map(|m| [(m, MeshKind::Uniform), (m, MeshKind::Chebyshev)]);
    for (method, kind) in cases {
        let report = run_convergence(
            &TestFunction::Constant(3.5),
            kind,
            method,
            &doubling(8, 128),
        )
        .unwrap();
        for row in &report.rows {
            let tol = 100.0 * f64::EPSILON * 3.5;
            assert!(row.err_value < tol, "{row:?}");
        }
        // everything sits below the rounding floor
        assert_eq!(report.slopes.value, None);
    }
}

#[test]
fn signum_errors_exclude_the_jump() {
    let report = run_convergence(
        &TestFunction::Signum,
        MeshKind::Uniform,
        Method::Compact4,
        &doubling(8, 64),
    )
    .unwrap();
    assert!(report.note.is_some());
    assert!(report.rows.iter().all(|r| r.err_value.is_finite()));
}

#[test]
fn random_meshes_are_reproducible_and_keyed_by_seed() {
    let run = |seed| {
        run_convergence(
            &TestFunction::Runge,
            MeshKind::Random(seed),
            Method::Compact4,
            &[16, 32],
        )
        .unwrap()
    };
    assert_eq!(run(1), run(1));
    assert_ne!(run(1).rows[0].err_value, run(2).rows[0].err_value);
    assert_eq!(run(1).rows[0].mesh_kind, "random:1");
}

#[test]
fn custom_function() {
    let f = TestFunction::custom("sin", (0.0, 3.0), f64::sin, f64::cos);
    let report = run_convergence(
        &f,
        MeshKind::Uniform,
        Method::SplineNotAKnot,
        &doubling(16, 256),
    )
    .unwrap();
    assert!((report.slopes.value.unwrap() - 4.0).abs() < 0.3);
    assert_eq!(report.function, "sin");
}

#[test]
fn larger_histograms_run() {
    let big = run_cond_histogram(1000, 20, 3, 10).unwrap();
    let small = run_cond_histogram(100, 20, 3, 10).unwrap();
    assert_eq!(big.counts.iter().sum::<usize>(), 20);
    assert_eq!(small.counts.iter().sum::<usize>(), 20);
    assert!(big
        .log10_conditions
        .iter()
        .all(|c| c.is_finite() && *c > 0.0));
}

#[test]
fn unknown_function_name() {
    assert!(matches!(
        TestFunction::from_name("erf"),
        Err(Error::UnknownFunction(_))
    ));
}
