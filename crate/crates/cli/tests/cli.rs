use std::path::PathBuf;

use paretoscope_cli::{data_dir, run, DATA_DIR_ENV, EXIT_OK, EXIT_USER};
use paretoscope_core::problems::MIMO_POWER_POINTS;
use paretoscope_core::{builtin, import_front_json, BoundaryKind, Direction, SearchSpace};
use serde_json::Value;

fn cli(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("paretoscope").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn path_str(p: &std::path::Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn lists_problems() {
    let (code, out, _) = cli(&["problems"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("mimo_case_study\tD=3\tM=3\t"));
    assert!(lines[0].contains("energy_efficiency [bit/J]"));
    assert!(lines[1].starts_with("toy_simplex\tD=2\tM=2"));
}

#[test]
fn direction_sample_writes_boundary_points_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for f in [&a, &b] {
        let (code, out, err) =
            cli(&["sample", "--problem", "toy_simplex", "--method", "direction", "--count", "8", "--eps", "1e-6", "--out", path_str(f)]);
        assert_eq!(code, EXIT_OK, "{err}");
        assert_eq!(out, "8 points (8 on the boundary, 0 failed)\n");
    }
    let bytes = std::fs::read(&a).unwrap();
    assert_eq!(bytes, std::fs::read(&b).unwrap());
    let front = import_front_json(&bytes).unwrap();
    assert_eq!(front.points.len(), 8);
    assert!(front.created_at.is_none());
    for p in &front.points {
        assert_ne!(p.boundary_kind, BoundaryKind::Interior);
        assert!((p.lambda.unwrap() * p.direction.as_ref().unwrap().iter().sum::<f64>() - 1.0).abs() <= 2e-6);
    }

    let (_, first, _) = cli(&["sample", "--problem", "toy_simplex", "--count", "5", "--format", "csv"]);
    let (_, second, _) = cli(&["sample", "--problem", "toy_simplex", "--count", "5", "--format", "csv"]);
    assert_eq!(first, second);
    assert_eq!(first.lines().count(), 6);
    assert_eq!(first.lines().next().unwrap(), "x_1,x_2,g_1,g_2,lambda,boundary_kind");
}

#[test]
fn timestamp_is_opt_in() {
    let (code, out, _) = cli(&["sample", "--problem", "toy_simplex", "--count", "2", "--timestamp"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v["created_at"].as_str().unwrap().contains('T'));
}

#[test]
fn grid_sample_marks_the_front() {
    let (code, out, _) = cli(&["sample", "--problem", "toy_simplex", "--method", "grid", "--count", "6"]);
    assert_eq!(code, EXIT_OK);
    let front = import_front_json(out.as_bytes()).unwrap();
    assert_eq!(front.points.len(), 21);
    assert_eq!(front.boundary_points().count(), 6);
}

#[test]
fn scalarize_toy_goals() {
    let (code, out, err) = cli(&["scalarize", "--problem", "toy_simplex", "--goal", "chebyshev", "--weights", "utopia"]);
    assert_eq!(code, EXIT_OK, "{err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["x_star"], serde_json::json!([0.5, 0.5]));
    assert_eq!(v["diagnostics"]["chebyshev_check"]["agrees"], true);

    let (code, out, _) = cli(&["scalarize", "--problem", "toy_simplex", "--goal", "distance", "--ref", "1,1", "--norm", "inf"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["x_star"], serde_json::json!([0.5, 0.5]));

    let (code, out, _) = cli(&["scalarize", "--problem", "toy_simplex", "--goal", "sum", "--weights", "1, 1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(serde_json::from_str::<Value>(&out).unwrap()["value"], 1.0);
}

#[test]
fn mimo_chebyshev_at_utopia_weights_matches_bisection() {
    let dir = tempfile::tempdir().unwrap();
    let out_file = dir.path().join("op.json");
    let args = ["scalarize", "--problem", "mimo_case_study", "--goal", "chebyshev", "--weights", "utopia", "--out", path_str(&out_file)];
    let (code, out, err) = cli(&args);
    assert_eq!(code, EXIT_OK, "{err}");
    assert!(out.starts_with("x* = ["), "{out}");
    let first = std::fs::read(&out_file).unwrap();
    cli(&args);
    assert_eq!(first, std::fs::read(&out_file).unwrap());

    let sol: Value = serde_json::from_slice(&first).unwrap();
    let b = builtin("mimo_case_study").unwrap();
    assert_eq!(b.grid, paretoscope_core::mimo::search_grid(&Default::default(), MIMO_POWER_POINTS));
    let space = SearchSpace::new(&b.problem, &b.grid).unwrap();
    let v = Direction::new(space.utopia_values().to_vec()).unwrap();
    let ray = space.bisect(&v, 1e-9, space.lambda_max(&v).unwrap()).unwrap();
    let value = sol["value"].as_f64().unwrap();
    assert!((ray.lambda - value).abs() <= 1e-9, "{} vs {value}", ray.lambda);
    let g: Vec<f64> = sol["g_star"]["values"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    for (gi, vi) in g.iter().zip(v.as_slice()) {
        assert!(*gi >= value * vi);
    }
}

#[test]
fn utopia_of_toy() {
    let (code, out, _) = cli(&["utopia", "--problem", "toy_simplex"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["point"]["values"], serde_json::json!([1.0, 1.0]));
}

#[test]
fn user_errors_exit_one() {
    let (code, out, err) = cli(&["sample", "--problem", "toy_simplex", "--bogus"]);
    assert_eq!(code, EXIT_USER);
    assert!(out.is_empty());
    assert!(err.contains("Usage"), "{err}");

    assert_eq!(cli(&[]).0, EXIT_USER);
    assert_eq!(cli(&["sample", "--problem", "nope"]).0, EXIT_USER);
    assert_eq!(cli(&["sample", "--problem", "toy_simplex", "--eps", "0"]).0, EXIT_USER);
    assert_eq!(cli(&["scalarize", "--problem", "toy_simplex", "--goal", "distance"]).0, EXIT_USER);
    assert_eq!(cli(&["scalarize", "--problem", "toy_simplex", "--goal", "sum", "--weights", "1,x"]).0, EXIT_USER);
    assert_eq!(cli(&["scalarize", "--problem", "toy_simplex", "--goal", "maximin", "--weights", "1,1"]).0, EXIT_USER);

    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("no/such/dir/f.json");
    let (code, _, err) = cli(&["sample", "--problem", "toy_simplex", "--count", "2", "--out", path_str(&missing)]);
    assert_eq!(code, EXIT_USER);
    assert!(err.contains("f.json"), "{err}");

    let params = dir.path().join("params.conf");
    std::fs::write(&params, "colour = 3\n").unwrap();
    let (code, _, err) = cli(&["utopia", "--problem", "mimo_case_study", "--params", path_str(&params)]);
    assert_eq!(code, EXIT_USER);
    assert!(err.contains("colour"), "{err}");
    assert_eq!(cli(&["utopia", "--problem", "toy_simplex", "--params", path_str(&params)]).0, EXIT_USER);
}

#[test]
fn help_goes_to_stdout() {
    let (code, out, _) = cli(&["--help"]);
    assert_eq!(code, EXIT_OK);
    for cmd in ["problems", "sample", "scalarize", "utopia", "serve", "verify"] {
        assert!(out.contains(cmd), "{cmd}");
    }
}

#[test]
fn params_file_overrides_the_model() {
    let dir = tempfile::tempdir().unwrap();
    let params = dir.path().join("small.conf");
    std::fs::write(&params, "# small array\nN_max = 20\n").unwrap();
    let (code, out, err) = cli(&["utopia", "--problem", "mimo_case_study", "--params", path_str(&params), "--power-points", "20"]);
    assert_eq!(code, EXIT_OK, "{err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    for w in v["witnesses"].as_array().unwrap() {
        assert!(w[1].as_f64().unwrap() <= 20.0);
    }
}

#[test]
fn busy_port_fails_with_user_error() {
    let taken = std::net::TcpListener::bind("127.0.0.1:0").unwrap();
    let port = taken.local_addr().unwrap().port().to_string();
    let dir = tempfile::tempdir().unwrap();
    let (code, _, err) = cli(&["serve", "--port", &port, "--data", path_str(dir.path())]);
    assert_eq!(code, EXIT_USER);
    assert!(err.contains(&port), "{err}");
}

#[test]
fn data_dir_prefers_flag_then_environment() {
    let flag = PathBuf::from("/tmp/flagged");
    assert_eq!(data_dir(Some(&flag)), flag);
    std::env::set_var(DATA_DIR_ENV, "/tmp/from-env");
    assert_eq!(data_dir(None), PathBuf::from("/tmp/from-env"));
    std::env::remove_var(DATA_DIR_ENV);
    assert_eq!(data_dir(None), PathBuf::from("paretoscope-data"));
}
