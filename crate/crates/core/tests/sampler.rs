use paretoscope_core::problems::{toy_simplex, toy_simplex_grid};
use paretoscope_core::sampler::SweepControl;
use paretoscope_core::*;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

fn unit_square() -> ProblemDefinition {
    ProblemDefinition::builder("square")
        .dimension(0.0, 1.0, false)
        .dimension(0.0, 1.0, false)
        .objective("a", "")
        .objective("b", "")
        .evaluator(|x, out| out.copy_from_slice(x))
        .origin(vec![0.0, 0.0])
        .build()
        .unwrap()
}

/// The toy simplex without its exact oracle, so membership runs on the grid.
fn grid_simplex() -> ProblemDefinition {
    ProblemDefinition::builder("grid_simplex")
        .dimension(0.0, 1.0, false)
        .dimension(0.0, 1.0, false)
        .objective("a", "")
        .objective("b", "")
        .constraint("sum", |x| x[0] + x[1] <= 1.0)
        .evaluator(|x, out| out.copy_from_slice(x))
        .origin(vec![0.0, 0.0])
        .build()
        .unwrap()
}

#[test]
fn grid_sample_six_per_axis() {
    let front = grid_sample(&unit_square(), &GridSpec::uniform(2, 6)).unwrap();
    assert_eq!(front.points.len(), 36);
    assert_eq!(front.method, Method::Grid);
    let survivors: Vec<_> = front.boundary_points().collect();
    assert_eq!(survivors.len(), 1);
    assert_eq!(survivors[0].g, vec![1.0, 1.0]);
    assert_eq!(survivors[0].boundary_kind, BoundaryKind::Weak);
}

#[test]
fn grid_sample_matches_filter() {
    let p = grid_simplex();
    let front = grid_sample(&p, &GridSpec::uniform(2, 11)).unwrap();
    let gs: Vec<Vec<f64>> = front.points.iter().map(|p| p.g.clone()).collect();
    let keep = nondominated_indices(&gs).unwrap();
    let weak: Vec<usize> = (0..gs.len()).filter(|&i| front.points[i].boundary_kind == BoundaryKind::Weak).collect();
    assert_eq!(keep, weak);
    for p in &front.points {
        assert!(p.x[0] + p.x[1] <= 1.0);
    }
}

#[test]
fn grid_sample_errors() {
    let p = ProblemDefinition::builder("never")
        .dimension(0.0, 1.0, false)
        .objective("a", "")
        .constraint("tiny", |x| x[0] < 0.05)
        .evaluator(|x, out| out[0] = x[0])
        .origin(vec![0.0])
        .build()
        .unwrap();
    assert!(matches!(grid_sample(&p, &GridSpec::new(vec![GridAxis::Values(vec![0.5, 1.0])])), Err(MooError::AllInfeasible(2))));
    assert!(matches!(grid_sample(&p, &GridSpec::new(vec![GridAxis::Count(0)])), Err(MooError::EmptyGrid)));
}

#[test]
fn membership_examples() {
    for p in [toy_simplex(), grid_simplex()] {
        let g = toy_simplex_grid();
        let found = membership_test(&p, &ObjectiveVector::unitless(vec![0.3, 0.3]), &g).unwrap().unwrap();
        assert!(found[0] >= 0.3 && found[1] >= 0.3 && found[0] + found[1] <= 1.0);
        assert!(membership_test(&p, &ObjectiveVector::unitless(vec![0.6, 0.6]), &g).unwrap().is_none());
    }
}

#[test]
fn membership_rejects_bad_input() {
    let space = SearchSpace::new(&toy_simplex(), &toy_simplex_grid()).unwrap();
    assert!(matches!(space.membership(&[0.1]), Err(MooError::DimensionMismatch { .. })));
    assert!(matches!(space.membership(&[f64::NAN, 0.1]), Err(MooError::NotANumber)));
}

#[test]
fn bisect_diagonal_and_axis() {
    let space = SearchSpace::new(&toy_simplex(), &toy_simplex_grid()).unwrap();
    let v = Direction::new(vec![1.0, 1.0]).unwrap();
    let out = space.bisect(&v, 1e-6, space.lambda_max(&v).unwrap()).unwrap();
    assert!((out.lambda - 0.5).abs() <= 1e-6);
    assert!(out.lambda <= 0.5 && out.lambda_upper > 0.5);

    let v = Direction::new(vec![1.0, 0.0]).unwrap();
    let p = space.bisect_ray(&v, 1e-6, space.lambda_max(&v).unwrap()).unwrap();
    assert!((p.lambda.unwrap() - 1.0).abs() <= 1e-6);
    assert_eq!(p.boundary_kind, BoundaryKind::Weak);
}

#[test]
fn bisect_iteration_count() {
    let space = SearchSpace::new(&toy_simplex(), &toy_simplex_grid()).unwrap();
    for eps in [1e-2, 1e-4, 1e-6, 1e-9] {
        for dir in generate_directions(2, 16).unwrap() {
            let lm = space.lambda_max(&dir).unwrap();
            let out = space.bisect(&dir, eps, lm).unwrap();
            assert_eq!(out.iterations, (lm / eps).log2().ceil() as usize + 1);
            assert!(out.lambda_upper - out.lambda <= eps);
        }
    }
}

#[test]
fn bisect_rejects_small_lambda_max_and_bad_eps() {
    let space = SearchSpace::new(&toy_simplex(), &toy_simplex_grid()).unwrap();
    let v = Direction::new(vec![1.0, 1.0]).unwrap();
    assert!(matches!(space.bisect(&v, 1e-6, 0.4), Err(MooError::LambdaMaxTooSmall(_))));
    assert!(matches!(space.bisect(&v, 0.0, 1.0), Err(MooError::InvalidTolerance(_))));
    assert!(matches!(space.bisect(&v, f64::NAN, 1.0), Err(MooError::InvalidTolerance(_))));
}

#[test]
fn grid_bisection_agrees_with_grid_boundary() {
    let space = SearchSpace::new(&grid_simplex(), &GridSpec::uniform(2, 11)).unwrap();
    let v = Direction::new(vec![1.0, 1.0]).unwrap();
    let out = space.bisect(&v, 1e-9, space.lambda_max(&v).unwrap()).unwrap();
    assert!((out.lambda - 0.5).abs() <= 1e-9);
    assert_eq!(out.witness.g, vec![0.5, 0.5]);
}

#[test]
fn directions() {
    assert_eq!(generate_directions(1, 5).unwrap().len(), 1);
    let d2 = generate_directions(2, 8).unwrap();
    assert_eq!(d2.len(), 8);
    for d in &d2 {
        assert!((d.norm() - 1.0).abs() < 1e-12);
        assert!(d.as_slice().iter().all(|&v| v > 0.0));
    }
    let d3 = generate_directions(3, 64).unwrap();
    assert_eq!(d3.len(), 64);
    for d in &d3 {
        assert!((d.norm() - 1.0).abs() < 1e-12);
        assert!(d.as_slice().iter().all(|&v| v >= 0.0));
    }
    assert!(matches!(generate_directions(4, 8), Err(MooError::UnsupportedObjectiveCount(4))));
    assert!(Direction::new(vec![0.0, 0.0]).is_err());
    assert!(Direction::new(vec![-1.0, 1.0]).is_err());
}

#[test]
fn sample_front_on_simplex() {
    let front = sample_front(&toy_simplex(), 8, 1e-6, &toy_simplex_grid()).unwrap();
    assert_eq!(front.points.len(), 8);
    assert!(front.errors.is_empty());
    for p in &front.points {
        assert_ne!(p.boundary_kind, BoundaryKind::Interior);
        let a = p.ray_point().unwrap();
        assert!((a[0] + a[1] - 1.0).abs() <= 2e-6);
        assert!(p.g.iter().zip(&a).all(|(g, a)| g >= a));
        assert_eq!(p.g, toy_simplex().evaluate(&p.x));
    }
}

#[test]
fn weak_certificate_holds() {
    let space = SearchSpace::new(&grid_simplex(), &GridSpec::uniform(2, 41)).unwrap();
    let eps = 1e-6;
    let front = space.sample_front(16, eps).unwrap();
    for p in &front.points {
        let a = p.ray_point().unwrap();
        let v = Direction::new(p.direction.clone().unwrap()).unwrap();
        let rel = eps * v.norm() / a.iter().map(|x| x * x).sum::<f64>().sqrt();
        let mu: Vec<f64> = a.iter().map(|x| x * (1.0 + 2.0 * rel)).collect();
        assert!(space.membership(&mu).unwrap().is_none());
    }
}

#[test]
fn grid_witnesses_are_strong() {
    // The only non-dominated grid point of the square is its corner, so every
    // ray is witnessed by it.
    let space = SearchSpace::new(&unit_square(), &GridSpec::uniform(2, 5)).unwrap();
    let front = space.sample_front(4, 1e-6).unwrap();
    for p in &front.points {
        assert_eq!(p.g, vec![1.0, 1.0]);
        assert_eq!(p.boundary_kind, BoundaryKind::StrongCertified);
    }
}

#[test]
fn simplex_points_are_strong() {
    let front = sample_front(&grid_simplex(), 8, 1e-6, &GridSpec::uniform(2, 101)).unwrap();
    for p in &front.points {
        assert_eq!(p.boundary_kind, BoundaryKind::StrongCertified, "{p:?}");
    }
}

#[test]
fn utopia_of_simplex() {
    let u = utopia(&toy_simplex(), &toy_simplex_grid()).unwrap();
    assert_eq!(u.point.values, vec![1.0, 1.0]);
    assert_eq!(u.witnesses, vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
    assert!(membership_test(&toy_simplex(), &u.point, &toy_simplex_grid()).unwrap().is_none());
}

#[test]
fn sequential_and_parallel_agree() {
    let p = grid_simplex();
    let g = GridSpec::uniform(2, 301);
    let seq = SearchSpace::build(&p, &g, Execution::Sequential).unwrap();
    let par = SearchSpace::build(&p, &g, Execution::Parallel).unwrap();
    assert_eq!(seq.cache_len(), par.cache_len());
    assert!(seq.nondominated().eq(par.nondominated()));
    assert_eq!(seq.sample_front(24, 1e-6).unwrap(), par.sample_front(24, 1e-6).unwrap());
    assert_eq!(grid_sample_with(&p, &g, Execution::Sequential).unwrap(), grid_sample_with(&p, &g, Execution::Parallel).unwrap());
}

#[test]
fn progress_and_cancellation() {
    let space = SearchSpace::new(&toy_simplex(), &toy_simplex_grid()).unwrap();
    let seen = AtomicUsize::new(0);
    let progress = |done: usize, total: usize| {
        assert!(done <= total);
        seen.fetch_add(1, Ordering::Relaxed);
    };
    space.sample_front_with(12, 1e-6, SweepControl { progress: Some(&progress), cancel: None }).unwrap();
    assert_eq!(seen.load(Ordering::Relaxed), 12);

    let cancel = AtomicBool::new(true);
    let out = space.sample_front_with(12, 1e-6, SweepControl { progress: None, cancel: Some(&cancel) });
    assert!(matches!(out, Err(MooError::Cancelled)));
}

#[test]
fn refinement_reaches_between_grid_points() {
    // Max of x·(1 − x) is at 0.5, between the grid values 0.4 and 0.6.
    let p = ProblemDefinition::builder("bump")
        .dimension(0.0, 1.0, false)
        .objective("a", "")
        .evaluator(|x, out| out[0] = x[0] * (1.0 - x[0]))
        .origin(vec![0.0])
        .build()
        .unwrap();
    let g = GridSpec::new(vec![GridAxis::Values(vec![0.0, 0.2, 0.4, 0.6, 0.8, 1.0])]);
    let plain = SearchSpace::new(&p, &g).unwrap();
    let refined = SearchSpace::new(&p, &g).unwrap().with_refinement(12);
    assert!(plain.membership(&[0.245]).unwrap().is_none());
    let w = refined.membership(&[0.245]).unwrap().unwrap();
    assert!(w.g[0] >= 0.245 && (w.x[0] - 0.5).abs() < 0.05);
}

#[test]
fn framed_sweep_keeps_rays_across_refinements() {
    let p = grid_simplex();
    let g = GridSpec::uniform(2, 41);
    let base = SearchSpace::new(&p, &g).unwrap();
    let refs = [Refinement::Floor { objective: 0, value: 0.3 }];
    let r = apply_refinements(&p, &refs, &g).unwrap();
    let refined = SearchSpace::new(&r.problem, &r.grid).unwrap();
    let before = base.sample_front(16, 1e-6).unwrap();
    let after = refined.sample_front_in(&base, 16, 1e-6, SweepControl::default()).unwrap();
    assert_eq!(before.points.len(), after.points.len());
    for (b, a) in before.points.iter().zip(&after.points) {
        assert_eq!(a.direction, b.direction);
        assert!(a.lambda.unwrap() <= b.lambda.unwrap());
        assert!(a.g[0] >= 0.3);
    }
    assert_eq!(base.sample_front_in(&base, 16, 1e-6, SweepControl::default()).unwrap(), before);
}
