use algtool::arith::{rat, ComplexF, Cyclotomic, Rational};
use algtool::sklyanin2::*;
use algtool::Error;
use num_traits::FromPrimitive;

fn exact(x: f64) -> Rational {
    Rational::from_f64(x).unwrap()
}

#[test]
fn sampled_points_lie_on_the_curve() {
    for cp in sample_curve_points(&DEFAULT_GRID).unwrap() {
        let (a, b) = (exact(cp.a), exact(cp.b));
        let r = algtool::arith::rational_to_f64(&cprime_residual(&a, &b));
        let scale = cp.a.powi(5).max(cp.b.powi(5)).max(8.0 * cp.a * cp.b).max(1.0);
        assert!(r.abs() < 1e-12 * scale, "a={} residual {r:e}", cp.a);
        assert!(cp.b > 0.0);
    }
}

#[test]
fn smallest_positive_root_at_a_equals_one() {
    // C′(1, b) = b⁵ − b³ + 2b² − 8b + 1.
    let f = |b: f64| b.powi(5) - b.powi(3) + 2.0 * b * b - 8.0 * b + 1.0;
    let cp = sample_curve_points(&[1.0]).unwrap()[0];
    assert!(f(cp.b).abs() < 1e-13);
    let step = 1e-4;
    assert!((1..(cp.b / step) as usize).all(|i| f(i as f64 * step) > 0.0));
    assert!((cp.b - 0.12889).abs() < 1e-5);
}

#[test]
fn t_parameter_cases() {
    assert_eq!(t_param(&rat(1, 1), &rat(1, 1)).unwrap(), TParam::Value(rat(1, 2)));
    assert_eq!(t_param(&rat(2, 1), &rat(2, 1)).unwrap(), TParam::Indeterminate);
    assert_eq!(t_param(&rat(0, 1), &rat(0, 1)).unwrap(), TParam::Indeterminate);
    assert!(matches!(t_param(&rat(2, 1), &rat(-4, 1)), Err(Error::Pole(_))));
    match t_param_f64(1.0, 1.0).unwrap() {
        TParam::Value(t) => assert!((t - 0.5).abs() < 1e-15),
        TParam::Indeterminate => panic!("finite at (1, 1)"),
    }
}

#[test]
fn off_curve_points_are_rejected() {
    assert!(CurvePoint::new(1.0, 1.0).is_err());
    assert!(matches!(CurvePoint::new(2.0, 2.0).unwrap().t(), Err(Error::SingularParameter(_))));
}

#[test]
fn elimination_factors_through_the_curve() {
    let r = eliminate_t().unwrap();
    assert!(r.check);
    let at = |a: i64, b: i64| r.resultant.eval_rational(&[rat(a, 1), rat(b, 1)]).unwrap();
    assert_eq!(at(2, 2), rat(0, 1));
    assert_eq!(at(0, 0), rat(0, 1));
    assert_eq!(at(1, 1), rat(20, 1));
    let cof = r.cofactor.unwrap();
    assert_eq!(cof.num_terms(), 1);
    assert_eq!(cof.coefficient(&[5, 3]), rat(-4, 1));
}

#[test]
fn exact_point_modules_need_a_smooth_point() {
    for (a, b) in [(2, 2), (0, 0)] {
        assert!(matches!(point_module_check_exact(&rat(a, 1), &rat(b, 1)), Err(Error::SingularParameter(_))));
    }
    assert!(point_module_check_exact(&rat(1, 1), &rat(1, 1)).is_err());
}

#[test]
fn exact_and_float_orbits_agree() {
    let t = rat(-3, 7);
    let exact_pts = et_orbit_exact(&t);
    let float_pts = et_orbit(ComplexF::new(-3.0 / 7.0, 0.0));
    assert_eq!(exact_pts.len(), 25);
    for (e, f) in exact_pts.iter().zip(&float_pts) {
        for (x, y) in e.iter().zip(f) {
            assert!((x.embed(1).unwrap() - y).norm() < 1e-12);
        }
    }
}

#[test]
fn det_q_is_a_quintic_in_u() {
    let det = det_q_symbolic();
    assert_eq!(det.homogeneous_degree_in(&[2, 3, 4, 5, 6]), Some(5));
    assert_eq!(et_quadrics().len(), 5);
}

#[test]
fn point_modules_and_ideals_on_the_curve() {
    let tol = Tolerances::default();
    for cp in sample_curve_points(&DEFAULT_GRID[..2]).unwrap() {
        let pm = point_module_check(&cp, &tol).unwrap();
        assert!(pm.pass);
        assert!(pm.ranks.iter().all(|&r| r == 2));
        let ideals = minor_ideal_checks(&cp, &tol).unwrap();
        assert!(ideals.deg6 && ideals.deg8);
        assert!(secant_check(&cp, 1e-7).unwrap().pass);
    }
}

#[test]
fn off_curve_control_fails_ideal_checks() {
    let tol = Tolerances::default();
    let t = match t_param_f64(0.7, 0.3).unwrap() {
        TParam::Value(t) => t,
        TParam::Indeterminate => panic!("finite"),
    };
    let r = minor_ideal_checks_at(0.7, 0.3, t, &tol).unwrap();
    assert!(!r.deg6);
    assert!(!r.deg8);
}

#[test]
fn stratification_is_seed_deterministic() {
    let cp = sample_curve_points(&[1.25]).unwrap()[0];
    let tol = Tolerances::default();
    let a = serde_json::to_string(&stratify(&cp, 4, 9, &tol).unwrap()).unwrap();
    let b = serde_json::to_string(&stratify(&cp, 4, 9, &tol).unwrap()).unwrap();
    assert_eq!(a, b);
}

/// `a₀·2·y_{k+i}y_{k−i} − a_i·y_k²` for all k and `1 ≤ i ≤ (p−1)/2`.
fn satisfies_relations(p: usize, a: &[Rational], y: &[Cyclotomic]) -> bool {
    (0..p).all(|k| {
        (1..=(p - 1) / 2).all(|i| {
            let lhs = (&y[(k + i) % p] * &y[(k + p - i) % p]).scale(&(&a[0] * rat(2, 1)));
            let rhs = (&y[k] * &y[k]).scale(&a[i]);
            (&lhs - &rhs).is_zero()
        })
    })
}

#[test]
fn one_dimensional_representations() {
    for (p, params, count) in [(5, vec![1, 2, 2], 5), (3, vec![1, 2], 3), (5, vec![1, 2, 0], 0), (5, vec![0, 1, 0], 0), (5, vec![1, 1, 1], 0)] {
        let a: Vec<Rational> = params.iter().map(|&v| rat(v, 1)).collect();
        let reps = onedim_reps(&OrderTwoParams::new(p, a.clone()).unwrap()).unwrap();
        assert_eq!(reps.len(), count, "p={p} params={params:?}");
        for y in &reps {
            assert!(satisfies_relations(p, &a, y));
            assert!(y[0].is_one());
        }
        for i in 0..reps.len() {
            for j in i + 1..reps.len() {
                assert_ne!(reps[i], reps[j]);
            }
        }
    }
    assert!(OrderTwoParams::new(4, vec![rat(1, 1); 3]).is_err());
    assert!(OrderTwoParams::new(5, vec![rat(0, 1); 3]).is_err());
}
