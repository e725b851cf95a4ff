use algtool::arith::{rat, Cyclotomic, Rational};
use algtool::poly::{exact_divide, MultiPoly, PolyRing};
use algtool::shioda5::*;
use proptest::prelude::*;

fn unit(i: usize) -> Vec<Rational> {
    (0..5).map(|j| rat((i == j) as i64, 1)).collect()
}

#[test]
fn minors_are_ten_sextics_through_coordinate_points() {
    let minors = s15_minors();
    assert_eq!(minors.len(), 10);
    for m in minors {
        assert!(!m.is_zero());
        assert!(m.is_homogeneous());
        assert_eq!(m.total_degree(), Some(6));
        for i in 0..5 {
            assert_eq!(m.eval_rational(&unit(i)).unwrap(), rat(0, 1));
        }
    }
}

#[test]
fn shift_permutes_minors_up_to_sign() {
    let minors = s15_minors();
    let ring = minors[0].ring().clone();
    let shift: Vec<MultiPoly> = (0..5).map(|i| MultiPoly::var(&ring, (i + 1) % 5)).collect();
    for m in minors {
        let s = m.compose(&shift).unwrap();
        let neg = s.scale(&rat(-1, 1));
        assert!(minors.iter().any(|n| *n == s || *n == neg), "{m} has no shifted partner");
    }
}

#[test]
fn restricted_minors_are_multiples_of_the_torsion_sextic() {
    let plane = PolyRing::new(["x0", "x1", "x2"]);
    let v = |i| MultiPoly::var(&plane, i);
    let (x0, x1, x2) = (v(0), v(1), v(2));
    let sextic = &(&(&(&x0.pow(4) * &(&x1 * &x2)) - &(&x0.pow(2) * &(&x1.pow(2) * &x2.pow(2))))
        - &(&x0 * &(&x1.pow(5) + &x2.pow(5))))
        + &(&x1.pow(3) * &x2.pow(3)).scale(&rat(2, 1));
    let images = [x0.clone(), x1.clone(), x2.clone(), x2.clone(), x1.clone()];
    let mut nonzero = 0;
    for m in s15_minors() {
        let r = m.compose(&images).unwrap();
        if r.is_zero() {
            continue;
        }
        nonzero += 1;
        let q = exact_divide(&r, &sextic).unwrap().expect("sextic divides the restriction");
        assert!(q.is_constant());
    }
    assert!(nonzero > 0);
}

#[test]
fn orbits_of_o_a_lie_on_the_surface() {
    for a in [rat(1, 1), rat(2, 1), rat(-1, 3)] {
        let r = ca_orbit_check(&a).unwrap();
        assert!(r.pass, "a = {a}");
        assert_eq!(r.points, 25);
    }
}

#[test]
fn degenerate_orbit_satisfies_the_cusp_monomials() {
    for pt in ca_orbit(&rat(0, 1)) {
        for i in 0..5 {
            assert!((&pt[(i + 2) % 5] * &pt[(i + 3) % 5]).is_zero());
        }
    }
}

#[test]
fn two_torsion_curve_lies_on_the_surface() {
    let r = two_torsion_check(20, 0).unwrap();
    assert!(r.pass);
    assert!(r.max_residual < TORSION_TOL);
    assert!(r.control_min_residual > CONTROL_FLOOR);
    let again = two_torsion_check(20, 0).unwrap();
    assert_eq!(r.max_residual, again.max_residual);
}

#[test]
fn thirty_singular_points() {
    let r = singular_points_check().unwrap();
    assert!(r.pass);
    assert_eq!(r.points.len(), 30);
    assert!(r.points.iter().all(|p| p.on_surface && p.jacobian_rank < 2));
    assert!(r.control_ranks.iter().all(|&k| k == 2));
    let one: Vec<Cyclotomic> = unit(0).into_iter().map(|c| Cyclotomic::from_rational(5, c)).collect();
    assert!(r.points.iter().any(|p| p.coords == one));
}

#[test]
fn cusp_fiber_matches_the_cycle_presentation() {
    let r = cycle_fiber_equivalence().unwrap();
    assert!(r.pass);
    assert!(r.span_equal);
    assert_eq!(r.hilbert, vec![1, 5, 10, 15]);
    assert_eq!(r.cusp_cycles, 12);
    assert_eq!(cusp_cycles().unwrap().len(), 12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn every_o_a_orbit_is_on_the_surface(n in -9i64..10, d in 1i64..6) {
        let r = ca_orbit_check(&rat(n, d)).unwrap();
        prop_assert!(r.pass);
    }
}
