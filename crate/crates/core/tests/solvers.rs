use liftpocs::costs::{Entropic, L2Squared, PowerCost, Shifted, TotalVariation, L1};
use liftpocs::projection::ConstraintSet;
use liftpocs::solver::{solve_constrained, solve_nonconvex, solve_pocs_epigraph, solve_supporting_hyperplane};
use liftpocs::{CostFunction, Error, Result, SetLabel, SolveResult, SolverConfig, Termination};

fn lp_half() -> Shifted {
    Shifted::new(Box::new(PowerCost::new(0.5, vec![2.0]).unwrap()), 1.0).unwrap()
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// `(w^2 - 1)^2 + w / 4`: two wells, the left one deeper.
struct DoubleWell;

impl CostFunction for DoubleWell {
    fn name(&self) -> &'static str {
        "double_well"
    }
    fn dim(&self) -> usize {
        1
    }
    fn eval(&self, w: &[f64]) -> Result<f64> {
        let x = w[0];
        Ok((x * x - 1.0) * (x * x - 1.0) + 0.25 * x)
    }
    fn subgradient(&self, w: &[f64]) -> Result<Vec<f64>> {
        let x = w[0];
        Ok(vec![4.0 * x * (x * x - 1.0) + 0.25])
    }
    fn is_convex(&self) -> bool {
        false
    }
    fn lower_bound(&self) -> Option<f64> {
        Some(-0.26)
    }
}

/// Local minima of a 1-D cost by dense grid: interior points below both
/// neighbours.
fn grid_local_minima(f: &dyn CostFunction, lo: f64, hi: f64, n: usize) -> Vec<(f64, f64)> {
    let xs: Vec<f64> = (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect();
    let ys: Vec<f64> = xs.iter().map(|&x| f.eval(&[x]).unwrap()).collect();
    (1..n - 1).filter(|&k| ys[k] < ys[k - 1] && ys[k] <= ys[k + 1]).map(|k| (xs[k], ys[k])).collect()
}

/// Labels follow the schedule and every level-set point sits at alpha.
fn assert_trace_valid(r: &SolveResult) {
    assert_eq!(r.trace[0].set, SetLabel::Epigraph);
    for (k, rec) in r.trace.iter().enumerate() {
        assert_eq!(rec.index, k);
        if rec.set == SetLabel::LevelSet {
            assert_eq!(rec.point.height(), r.alpha, "record {k}");
            let prev = r.trace[k - 1].set;
            assert!(matches!(prev, SetLabel::Epigraph | SetLabel::Hyperplane), "record {k} after {prev}");
        }
    }
}

#[test]
fn hyperplane_solver_examples() {
    let parabola = L2Squared::new(vec![3.0]).unwrap();
    let cfg = SolverConfig { step_tolerance: 1e-9, max_iterations: 2_000_000, ..SolverConfig::default() };
    let r = solve_supporting_hyperplane(&parabola, &[0.0], &cfg.clone().with_alpha(0.0)).unwrap();
    assert!((r.minimizer[0] - 3.0).abs() < 1e-3, "{:?}", r.minimizer);

    let l1 = L1::new(3).unwrap();
    let r = solve_supporting_hyperplane(&l1, &[2.0, -1.0, 4.0], &SolverConfig::default()).unwrap();
    assert_eq!(r.termination, Termination::Converged);
    assert!(r.minimizer.iter().all(|x| x.abs() < 1e-3), "{:?}", r.minimizer);

    let tv = TotalVariation::new(3).unwrap();
    let r = solve_supporting_hyperplane(&tv, &[1.0, 3.0, 2.0], &SolverConfig::default()).unwrap();
    assert!(r.min_value < 1e-3);
    assert!(max_abs_diff(&r.minimizer, &[r.minimizer[0]; 3]) < 1e-3, "{:?}", r.minimizer);
    assert_trace_valid(&r);
}

#[test]
fn pocs_oscillation_limit() {
    let f = L2Squared::new(vec![1.0, -1.0]).unwrap();
    let cfg = SolverConfig::default().with_alpha(-0.25);
    let r = solve_pocs_epigraph(&f, &[4.0, 4.0], &cfg).unwrap();
    assert_eq!(r.termination, Termination::Converged);
    let n = r.trace.len();
    let (low, top) = (&r.trace[n - 2], &r.trace[n - 1]);
    assert_eq!((low.set, top.set), (SetLabel::LevelSet, SetLabel::Epigraph));
    assert!(max_abs_diff(low.point.base(), top.point.base()) < cfg.step_tolerance);
    assert_eq!(low.point.height(), -0.25);
    assert_eq!(top.point.height(), f.eval(top.point.base()).unwrap());
    assert_trace_valid(&r);
    for pair in r.trace[1..].chunks(2) {
        assert_eq!(pair[0].set, SetLabel::LevelSet);
        if let Some(second) = pair.get(1) {
            assert_eq!(second.set, SetLabel::Epigraph);
        }
    }
}

#[test]
fn cycle_end_costs_never_rise() {
    let cases: Vec<(Box<dyn CostFunction>, Vec<f64>, f64)> = vec![
        (Box::new(L1::new(3).unwrap()), vec![2.0, -1.0, 4.0], 0.0),
        (Box::new(Entropic::new(2).unwrap()), vec![2.0, 0.3], -2.0 / std::f64::consts::E - 0.25),
        (Box::new(TotalVariation::new(4).unwrap()), vec![1.0, -2.0, 0.5, 3.0], 0.0),
    ];
    for (f, w0, alpha) in cases {
        for lambda in [0.5, 1.0, 1.5] {
            let cfg = SolverConfig { lambda, ..SolverConfig::default() }.with_alpha(alpha);
            let r = solve_supporting_hyperplane(f.as_ref(), &w0, &cfg).unwrap();
            let ends: Vec<f64> = r
                .trace
                .windows(2)
                .filter(|w| w[1].set == SetLabel::LevelSet)
                .map(|w| w[1].cost_value)
                .collect();
            for pair in ends.windows(2) {
                assert!(pair[1] <= pair[0] + 4.0 * f64::EPSILON * pair[0].abs(), "{} {lambda}: {pair:?}", f.name());
            }
            assert_trace_valid(&r);
        }
    }
}

#[test]
fn relaxation_does_not_move_the_minimizer() {
    let f = L2Squared::new(vec![1.0, -0.5, 2.0]).unwrap();
    let mut results = Vec::new();
    for lambda in [0.5, 1.0, 1.5] {
        let cfg = SolverConfig { lambda, ..SolverConfig::default() }.with_alpha(-0.25);
        let r = solve_supporting_hyperplane(&f, &[3.0, -2.0, 1.0], &cfg).unwrap();
        assert_eq!(r.termination, Termination::Converged);
        results.push((r.minimizer, cfg.step_tolerance));
    }
    for (m, tol) in &results[1..] {
        assert!(max_abs_diff(m, &results[0].0) <= 10.0 * tol);
    }
}

#[test]
fn constrained_examples() {
    let cfg = SolverConfig::default();
    let parabola = L2Squared::new(vec![3.0]).unwrap();
    let boxed = [ConstraintSet::boxed(vec![0.0], vec![1.0]).unwrap()];
    let r = solve_constrained(&parabola, &boxed, &[0.0], &cfg).unwrap();
    assert!((r.minimizer[0] - 1.0).abs() < 1e-3 && (r.min_value - 4.0).abs() < 1e-3, "{r:?}");
    assert!(boxed[0].contains(&r.minimizer, 1e-8).unwrap());

    // every point of the segment w1 + w2 = 2, w >= 0 is a minimizer
    let l1 = L1::new(2).unwrap();
    let half = [ConstraintSet::halfspace(vec![-1.0, -1.0], -2.0).unwrap()];
    let r = solve_constrained(&l1, &half, &[-1.0, 0.0], &cfg).unwrap();
    assert!((r.min_value - 2.0).abs() < 1e-3, "{r:?}");
    assert!(half[0].contains(&r.minimizer, 1e-8).unwrap());

    let origin = L2Squared::origin(2).unwrap();
    let ball = [ConstraintSet::ball(vec![3.0, 0.0], 1.0).unwrap()];
    let r = solve_constrained(&origin, &ball, &[0.0, 2.0], &cfg).unwrap();
    assert!(max_abs_diff(&r.minimizer, &[2.0, 0.0]) < 1e-3, "{r:?}");
    assert!(ball[0].contains(&r.minimizer, 1e-8).unwrap());

    let both = [
        ConstraintSet::boxed(vec![-5.0, -5.0], vec![5.0, 0.5]).unwrap(),
        ConstraintSet::ball(vec![3.0, 0.0], 1.0).unwrap(),
    ];
    let r = solve_constrained(&origin, &both, &[0.0, 2.0], &cfg).unwrap();
    for c in &both {
        assert!(c.contains(&r.minimizer, 1e-8).unwrap());
    }

    assert!(matches!(solve_constrained(&origin, &[], &[0.0, 0.0], &cfg).unwrap_err().error, Error::InvalidParameter(_)));
    assert!(matches!(
        solve_constrained(&origin, &boxed, &[0.0, 0.0], &cfg).unwrap_err().error,
        Error::DimensionMismatch { .. }
    ));
}

#[test]
fn alpha_growth_is_additive_per_stalled_cycle() {
    // the start is already optimal inside the box, so every cycle stalls
    let f = L2Squared::new(vec![3.0]).unwrap();
    let boxed = [ConstraintSet::boxed(vec![0.0], vec![1.0]).unwrap()];
    let cfg = SolverConfig { alpha_growth: 0.5, max_iterations: 40, ..SolverConfig::default() };
    let r = solve_constrained(&f, &boxed, &[1.0], &cfg).unwrap();
    assert!(r.alpha >= 0.0);
    assert_eq!(r.alpha % 0.5, 0.0);
    assert!(boxed[0].contains(&r.minimizer, 1e-8).unwrap());
}

#[test]
fn square_root_nonconvex_example() {
    let f = lp_half();
    let cfg = SolverConfig { lambda: 0.5, ..SolverConfig::default() };
    for w0 in [-10.0, -1.0, 0.0, 5.0, 10.0] {
        let r = solve_nonconvex(&f, &[w0], &cfg).unwrap();
        assert!((r.minimizer[0] - 2.0).abs() <= 1e-3, "w0 = {w0}: {r:?}");
        assert!((r.min_value - 1.0).abs() <= 1e-3, "w0 = {w0}: {}", r.min_value);
        assert_trace_valid(&r);
    }
}

#[test]
fn nonconvex_example_with_alpha_zero_stalls_near_the_cusp() {
    // With the level set well below the minimum, tangent steps overshoot
    // the cusp; the run ends stalled with its best point nearby.
    let f = lp_half();
    for w0 in [-10.0, -1.0, 0.0, 5.0, 10.0] {
        let r = solve_nonconvex(&f, &[w0], &SolverConfig::default().with_alpha(0.0)).unwrap();
        assert_eq!(r.termination, Termination::StalledLimitCycle, "w0 = {w0}");
        assert!((r.minimizer[0] - 2.0).abs() < 0.05, "w0 = {w0}: {:?}", r.minimizer);
    }
}

#[test]
fn double_well_reaches_a_local_minimum() {
    let f = DoubleWell;
    let minima = grid_local_minima(&f, -3.0, 3.0, 600_001);
    assert_eq!(minima.len(), 2, "{minima:?}");
    // Near a local minimum lying d above alpha, the tangent step contracts
    // only while lambda * d * f'' < 2; the right well (d ~ 0.5, f'' ~ 7)
    // needs lambda = 0.5.
    let cfg = SolverConfig { lambda: 0.5, ..SolverConfig::default() };
    for w0 in [-2.0, -0.2, 0.3, 2.0] {
        let r = solve_nonconvex(&f, &[w0], &cfg).unwrap();
        assert!(
            minima.iter().any(|(_, v)| (r.min_value - v).abs() <= 1e-3),
            "w0 = {w0}: {} vs {minima:?} ({})",
            r.min_value,
            r.termination
        );
    }
}

#[test]
fn convex_costs_agree_across_both_hyperplane_paths() {
    let cases: Vec<(Box<dyn CostFunction>, Vec<f64>, f64)> = vec![
        (Box::new(L1::new(3).unwrap()), vec![2.0, -1.0, 4.0], 0.0),
        (Box::new(L2Squared::new(vec![1.0, 2.0]).unwrap()), vec![-3.0, 0.0], -0.25),
        (Box::new(TotalVariation::new(3).unwrap()), vec![1.0, 3.0, 2.0], 0.0),
    ];
    for (f, w0, alpha) in cases {
        let cfg = SolverConfig::default().with_alpha(alpha);
        let a = solve_supporting_hyperplane(f.as_ref(), &w0, &cfg).unwrap();
        let b = solve_nonconvex(f.as_ref(), &w0, &cfg).unwrap();
        assert!(max_abs_diff(&a.minimizer, &b.minimizer) <= 1e-6, "{}", f.name());
    }
}

#[test]
fn identical_inputs_give_identical_traces() {
    let f = Entropic::new(2).unwrap();
    let cfg = SolverConfig::default().with_alpha(-1.0);
    let a = solve_supporting_hyperplane(&f, &[2.0, 0.4], &cfg).unwrap();
    let b = solve_supporting_hyperplane(&f, &[2.0, 0.4], &cfg).unwrap();
    assert_eq!(a, b);
    let g = lp_half();
    let c = solve_nonconvex(&g, &[7.0], &SolverConfig::default()).unwrap();
    let d = solve_nonconvex(&g, &[7.0], &SolverConfig::default()).unwrap();
    assert_eq!(c, d);
}

#[test]
fn caps_and_configuration_errors() {
    let f = L1::new(2).unwrap();
    let cfg = SolverConfig { max_iterations: 3, ..SolverConfig::default() };
    for r in [
        solve_pocs_epigraph(&f, &[4.0, 1.0], &cfg).unwrap(),
        solve_supporting_hyperplane(&f, &[4.0, 1.0], &cfg).unwrap(),
    ] {
        assert_eq!(r.termination, Termination::IterationCap);
        assert!(r.trace.len() <= 2 * cfg.max_iterations + 2);
    }
    let bad = SolverConfig { lambda: 2.0, ..SolverConfig::default() };
    assert!(matches!(solve_supporting_hyperplane(&f, &[1.0, 1.0], &bad).unwrap_err().error, Error::Configuration(_)));
    let high = SolverConfig::default().with_alpha(50.0);
    assert!(matches!(solve_supporting_hyperplane(&f, &[1.0, 1.0], &high).unwrap_err().error, Error::Configuration(_)));
    assert!(matches!(
        solve_supporting_hyperplane(&lp_half(), &[0.0], &SolverConfig::default()).unwrap_err().error,
        Error::Unsupported(_)
    ));
    let e = Entropic::new(1).unwrap();
    let r = solve_supporting_hyperplane(&e, &[-1.0], &SolverConfig::default());
    assert!(matches!(r.unwrap_err().error, Error::Domain { .. }));
}
