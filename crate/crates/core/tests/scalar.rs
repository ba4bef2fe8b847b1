use paretoscope_core::problems::{toy_simplex, toy_simplex_grid};
use paretoscope_core::*;

/// The curve `(t, 1 − t − 0.3·sin²(πt))` for `t ∈ [0, 1]`, switched on by
/// the second (binary) dimension so the origin maps to zero. The attainable
/// set has a dent in the middle that no weighted sum reaches.
fn dented_problem() -> ProblemDefinition {
    ProblemDefinition::builder("dented")
        .dimension(0.0, 1.0, false)
        .dimension(0.0, 1.0, true)
        .objective("a", "")
        .objective("b", "")
        .evaluator(|x, out| {
            let (t, on) = (x[0], x[1]);
            let s = (std::f64::consts::PI * t).sin();
            out[0] = on * t;
            out[1] = on * (1.0 - t - 0.3 * s * s).max(0.0);
        })
        .origin(vec![0.0, 0.0])
        .build()
        .unwrap()
}

fn dented_grid() -> GridSpec {
    GridSpec::new(vec![GridAxis::Count(1001), GridAxis::Values(vec![0.0, 1.0])])
}

#[test]
fn sum_on_simplex_ties_to_lowest_index() {
    let sol = solve_scalarized(&toy_simplex(), &GoalSpec::sum(vec![1.0, 1.0]).unwrap(), &toy_simplex_grid(), 0).unwrap();
    assert_eq!(sol.value, 1.0);
    assert_eq!(sol.x_star, vec![0.0, 1.0]);
    assert_eq!(sol.diagnostics.grid_size, 101 * 101);
}

#[test]
fn chebyshev_on_simplex() {
    let sol = solve_scalarized(&toy_simplex(), &GoalSpec::chebyshev(vec![1.0, 1.0]).unwrap(), &toy_simplex_grid(), 0).unwrap();
    assert_eq!(sol.x_star, vec![0.5, 0.5]);
    assert_eq!(sol.value, 0.5);
    let check = sol.diagnostics.chebyshev_check.unwrap();
    assert!(check.agrees, "{check:?}");
}

#[test]
fn chebyshev_refined_matches_bisection() {
    let p = toy_simplex();
    for w in [[0.3, 0.7], [0.9, 0.2], [1.0, 3.0]] {
        let sol = solve_scalarized(&p, &GoalSpec::chebyshev(w.to_vec()).unwrap(), &toy_simplex_grid(), 40).unwrap();
        let exact = 1.0 / (w[0] + w[1]);
        assert!((sol.value - exact).abs() <= 1e-9, "{w:?}: {} vs {exact}", sol.value);
        assert!(sol.diagnostics.chebyshev_check.as_ref().unwrap().agrees);
    }
}

#[test]
fn product_and_distance() {
    let p = toy_simplex();
    let sol = solve_scalarized(&p, &GoalSpec::product(vec![1.0, 1.0]).unwrap(), &toy_simplex_grid(), 0).unwrap();
    assert_eq!(sol.x_star, vec![0.5, 0.5]);
    assert!(!sol.diagnostics.degenerate_product);
    let sol = solve_scalarized(&p, &GoalSpec::distance(vec![1.0, 1.0], Norm::L2).unwrap(), &toy_simplex_grid(), 0).unwrap();
    assert_eq!(sol.x_star, vec![0.5, 0.5]);
    assert!(sol.diagnostics.chebyshev_check.is_none());
}

#[test]
fn degenerate_product_prefers_nonzero_objectives() {
    let p = ProblemDefinition::builder("axes")
        .dimension(0.0, 1.0, false)
        .dimension(0.0, 1.0, false)
        .objective("a", "")
        .objective("b", "")
        .constraint("on an axis", |x| x[0] == 0.0 || x[1] == 0.0)
        .evaluator(|x, out| out.copy_from_slice(x))
        .origin(vec![0.0, 0.0])
        .build()
        .unwrap();
    let sol = solve_scalarized(&p, &GoalSpec::product(vec![1.0, 1.0]).unwrap(), &GridSpec::uniform(2, 11), 5).unwrap();
    assert!(sol.diagnostics.degenerate_product);
    assert_eq!(sol.value, 0.0);
    assert_eq!(sol.x_star, vec![0.0, 0.1]);
}

#[test]
fn refinement_never_lowers_the_value() {
    let p = dented_problem();
    let coarse = GridSpec::new(vec![GridAxis::Count(7), GridAxis::Values(vec![0.0, 1.0])]);
    for goal in [
        GoalSpec::chebyshev(vec![0.5, 0.5]).unwrap(),
        GoalSpec::product(vec![0.3, 0.7]).unwrap(),
        GoalSpec::sum(vec![0.8, 0.2]).unwrap(),
        GoalSpec::distance(vec![0.6, 0.6], Norm::Inf).unwrap(),
    ] {
        let mut last = f64::NEG_INFINITY;
        for levels in 0..12 {
            let sol = solve_scalarized(&p, &goal, &coarse, levels).unwrap();
            assert!(sol.value >= last, "{goal:?} at {levels}");
            last = sol.value;
        }
    }
}

#[test]
fn solution_is_weakly_pareto_on_the_grid() {
    let p = toy_simplex();
    let g = GridSpec::uniform(2, 21);
    let cloud = grid_sample(&p, &g).unwrap();
    for goal in [
        GoalSpec::sum(vec![0.2, 0.8]).unwrap(),
        GoalSpec::product(vec![0.5, 0.5]).unwrap(),
        GoalSpec::chebyshev(vec![0.7, 0.3]).unwrap(),
        GoalSpec::distance(vec![0.9, 0.4], Norm::L1).unwrap(),
    ] {
        let sol = solve_scalarized(&p, &goal, &g, 0).unwrap();
        for q in &cloud.points {
            assert!(!q.g.iter().zip(&sol.g_star.values).all(|(a, b)| a > b));
        }
    }
}

#[test]
fn chebyshev_sweep_gives_distinct_boundary_points() {
    let front = scalarize_sweep(&toy_simplex(), GoalKind::Chebyshev, &simplex_weights_2d(5), &toy_simplex_grid()).unwrap();
    assert_eq!(front.points.len(), 5);
    assert_eq!(front.method, Method::Scalarization);
    for p in &front.points {
        assert!((p.g[0] + p.g[1] - 1.0).abs() < 0.02);
        assert_eq!(p.weights.len(), 1);
    }
}

#[test]
fn sum_sweep_on_convex_set_is_nondominated() {
    let front = scalarize_sweep(&toy_simplex(), GoalKind::Sum, &simplex_weights_2d(9), &GridSpec::uniform(2, 21)).unwrap();
    let gs: Vec<Vec<f64>> = front.points.iter().map(|p| p.g.clone()).collect();
    assert_eq!(nondominated_indices(&gs).unwrap().len(), gs.len());
    assert!(front.points.iter().all(|p| p.boundary_kind == BoundaryKind::StrongCertified));
    // Sum weights off the diagonal land on the two vertices.
    let total: usize = front.points.iter().map(|p| p.weights.len()).sum();
    assert_eq!(total, 9);
}

#[test]
fn sum_sweep_misses_the_dent_that_chebyshev_reaches() {
    let p = dented_problem();
    let weights = simplex_weights_2d(19);
    let middle = |f: &Front| f.points.iter().filter(|q| q.g[0] > 0.25 && q.g[0] < 0.75).count();
    let sum = scalarize_sweep(&p, GoalKind::Sum, &weights, &dented_grid()).unwrap();
    let cheb = scalarize_sweep(&p, GoalKind::Chebyshev, &weights, &dented_grid()).unwrap();
    assert_eq!(middle(&sum), 0);
    assert!(middle(&cheb) >= 5);
}

#[test]
fn sweep_rejects_bad_weights() {
    let p = toy_simplex();
    let g = toy_simplex_grid();
    assert!(scalarize_sweep(&p, GoalKind::Sum, &[vec![0.5, 0.6]], &g).is_err());
    assert!(scalarize_sweep(&p, GoalKind::Distance, &simplex_weights_2d(3), &g).is_err());
    assert!(scalarize_sweep(&p, GoalKind::Sum, &[], &g).is_err());
}

#[test]
fn execution_modes_agree() {
    let p = dented_problem();
    let goal = GoalSpec::chebyshev(vec![0.4, 0.6]).unwrap();
    let seq = solve_scalarized_with(&p, &goal, &dented_grid(), &ScalarOptions { refine_levels: 8, exec: Execution::Sequential, cross_check_eps: None }).unwrap();
    let par = solve_scalarized_with(&p, &goal, &dented_grid(), &ScalarOptions { refine_levels: 8, exec: Execution::Parallel, cross_check_eps: None }).unwrap();
    assert_eq!(seq, par);
}
