use std::sync::Arc;

use algtool::arith::{rat, Rational};
use algtool::poly::*;
use proptest::prelude::*;

fn ring3() -> Arc<PolyRing> {
    PolyRing::new(["x", "y", "t"])
}

fn linear_product(ring: &Arc<PolyRing>, var: usize, roots: &[i64]) -> MultiPoly {
    roots.iter().fold(MultiPoly::from_int(ring, 1), |acc, &r| {
        let factor = &MultiPoly::var(ring, var) - &MultiPoly::from_int(ring, r);
        &acc * &factor
    })
}

fn leibniz(m: &[Vec<Rational>]) -> Rational {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }
    let n = m.len();
    perms(n)
        .into_iter()
        .map(|p| {
            let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            let prod = (0..n).fold(rat(1, 1), |acc, i| acc * &m[i][p[i]]);
            if inversions % 2 == 0 { prod } else { -prod }
        })
        .fold(rat(0, 1), |a, b| a + b)
}

fn small_poly() -> impl Strategy<Value = MultiPoly> {
    proptest::collection::vec(((0u32..3, 0u32..3, 0u32..3), -5i64..6), 1..5).prop_map(|terms| {
        let ring = ring3();
        MultiPoly::from_terms(&ring, terms.into_iter().map(|((a, b, c), k)| (vec![a, b, c], rat(k, 1)))).unwrap()
    })
}

#[test]
fn resultant_of_root_products() {
    let ring = PolyRing::new(["t"]);
    let f = linear_product(&ring, 0, &[1, 2, -4]);
    let g = linear_product(&ring, 0, &[3, 0]);
    let expected: i64 = [1i64, 2, -4].iter().flat_map(|a| [3i64, 0].map(|b| a - b)).product();
    assert_eq!(resultant(&f, &g, 0).unwrap(), MultiPoly::from_int(&ring, expected));
}

#[test]
fn resultant_eliminates_symbolically() {
    let ring = ring3();
    let (x, y, t) = (MultiPoly::var(&ring, 0), MultiPoly::var(&ring, 1), MultiPoly::var(&ring, 2));
    let f = &t.pow(2) - &x;
    let g = &t - &y;
    assert_eq!(resultant(&f, &g, 2).unwrap(), &y.pow(2) - &x);
    assert!(resultant(&x, &g, 2).is_err());
}

#[test]
fn vandermonde_determinant() {
    let ring = PolyRing::indexed("x", 3);
    let m = PolyMatrix::from_fn(3, 3, |i, j| MultiPoly::var(&ring, j).pow(i as u32)).unwrap();
    let x = |i| MultiPoly::var(&ring, i);
    let expected = &(&(&x(1) - &x(0)) * &(&x(2) - &x(0))) * &(&x(2) - &x(1));
    assert_eq!(mat_det(&m).unwrap(), expected);
    assert_eq!(mat_minors(&m, 2).unwrap().len(), 9);
    assert_eq!(mat_minors(&m, 3).unwrap(), vec![expected]);
}

#[test]
fn jacobian_of_quadrics() {
    let ring = PolyRing::indexed("x", 2);
    let x = |i| MultiPoly::var(&ring, i);
    let f = &x(0) * &x(1);
    let j = PolyMatrix::jacobian(&[f], &[0, 1]).unwrap();
    assert_eq!(j.get(0, 0), &x(1));
    assert_eq!(j.get(0, 1), &x(0));
}

#[test]
fn ring_mismatch_and_zero_divisor() {
    let a = MultiPoly::var(&ring3(), 0);
    let b = MultiPoly::var(&PolyRing::indexed("z", 3), 0);
    assert!(a.try_add(&b).is_err());
    assert!(exact_divide(&a, &MultiPoly::zero(a.ring())).is_err());
    assert!(a.eval_rational(&[rat(1, 1)]).is_err());
}

proptest! {
    #[test]
    fn exact_divide_recovers_cofactor(f in small_poly(), g in small_poly()) {
        prop_assume!(!g.is_zero());
        let prod = &f * &g;
        prop_assert_eq!(exact_divide(&prod, &g).unwrap(), Some(f));
    }

    #[test]
    fn non_divisors_are_rejected(f in small_poly()) {
        let ring = f.ring().clone();
        let g = &MultiPoly::var(&ring, 0) - &MultiPoly::from_int(&ring, 7);
        // x − 7 divides f exactly when f vanishes at x = 7.
        let at7 = f.substitute(0, &rat(7, 1));
        prop_assume!(!at7.is_zero());
        prop_assert_eq!(exact_divide(&f, &g).unwrap(), None);
    }

    #[test]
    fn json_round_trip(f in small_poly()) {
        let j = f.to_json();
        let text = serde_json::to_string(&j).unwrap();
        let back: PolyJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(MultiPoly::from_json(f.ring(), &back).unwrap(), f);
    }

    #[test]
    fn evaluation_is_a_ring_map(f in small_poly(), g in small_poly(), pt in proptest::collection::vec(-4i64..5, 3)) {
        let pt: Vec<Rational> = pt.into_iter().map(|v| rat(v, 1)).collect();
        let lhs = (&f * &g).eval_rational(&pt).unwrap();
        prop_assert_eq!(lhs, f.eval_rational(&pt).unwrap() * g.eval_rational(&pt).unwrap());
        let lhs = (&f + &g).eval_rational(&pt).unwrap();
        prop_assert_eq!(lhs, f.eval_rational(&pt).unwrap() + g.eval_rational(&pt).unwrap());
    }

    #[test]
    fn determinant_matches_leibniz(entries in proptest::collection::vec(-6i64..7, 16)) {
        let ring = PolyRing::indexed("x", 1);
        let m = PolyMatrix::from_fn(4, 4, |i, j| MultiPoly::from_int(&ring, entries[4 * i + j])).unwrap();
        let dense: Vec<Vec<Rational>> = (0..4).map(|i| (0..4).map(|j| rat(entries[4 * i + j], 1)).collect()).collect();
        prop_assert_eq!(mat_det(&m).unwrap().constant_term(), leibniz(&dense));
    }

    #[test]
    fn resultant_vanishes_on_common_root(a in -3i64..4, b in -3i64..4, c in -3i64..4) {
        let ring = PolyRing::new(["t"]);
        let f = linear_product(&ring, 0, &[a, b]);
        let g = linear_product(&ring, 0, &[a, c]);
        prop_assert!(resultant(&f, &g, 0).unwrap().is_zero());
    }
}
