use algtool::arith::*;
use algtool::linalg::{exact_rank, Echelon, SparseVec};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..20, 1i64..9).prop_map(|(n, d)| rat(n, d))
}

fn cyc(p: usize) -> impl Strategy<Value = Cyclotomic> {
    proptest::collection::vec(small_rational(), p - 1).prop_map(move |c| cyc_normalize(p, &c).unwrap())
}

proptest! {
    #[test]
    fn field_axioms(a in cyc(5), b in cyc(5), c in cyc(5)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inverse().unwrap()).is_one());
        }
    }

    #[test]
    fn norm_is_multiplicative(a in cyc(5), b in cyc(5)) {
        prop_assert_eq!((&a * &b).norm(), a.norm() * b.norm());
    }

    #[test]
    fn embedding_is_a_ring_map(a in cyc(7), b in cyc(7), k in 1i64..7) {
        let lhs = (&a * &b).embed(k).unwrap();
        let rhs = a.embed(k).unwrap() * b.embed(k).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-9 * (1.0 + lhs.norm()));
    }

    #[test]
    fn galois_is_an_automorphism(a in cyc(5), b in cyc(5), k in 1i64..5) {
        prop_assert_eq!((&a * &b).galois(k), &a.galois(k) * &b.galois(k));
        prop_assert_eq!((&a + &b).galois(k), &a.galois(k) + &b.galois(k));
    }

    #[test]
    fn rational_text_round_trip(r in small_rational()) {
        prop_assert_eq!(parse_rational(&r.to_string()).unwrap(), r);
    }

    #[test]
    fn json_round_trip(a in cyc(5)) {
        let s = serde_json::to_string(&a).unwrap();
        let back: Cyclotomic = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn echelon_rank_and_null_space(rows in proptest::collection::vec(proptest::collection::vec(-3i64..4, 6), 1..6)) {
        let dense: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect();
        let sparse = dense.iter().map(|r| {
            r.iter().enumerate().filter(|(_, x)| **x != rat(0, 1)).map(|(i, x)| (i, x.clone())).collect::<SparseVec<Rational>>()
        });
        let ech = Echelon::from_rows(RationalField, 6, sparse).unwrap();
        prop_assert_eq!(ech.rank(), exact_rank(&RationalField, &dense).unwrap());
        let null = ech.null_space();
        prop_assert_eq!(null.len() + ech.rank(), 6);
        for v in &null {
            for r in &dense {
                let dot = v.iter().fold(rat(0, 1), |acc, (i, c)| acc + &r[*i] * c);
                prop_assert_eq!(dot, rat(0, 1));
            }
        }
    }
}

#[test]
fn decimal_parsing_is_exact() {
    assert_eq!(parse_rational("0.125").unwrap(), rat(1, 8));
    assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
    assert_eq!(parse_rational("1e-2").unwrap(), rat(1, 100));
    assert!(parse_rational("1/0").is_err());
    assert!(parse_rational("x").is_err());
}

#[test]
fn roots_of_unity_sum_to_zero() {
    for p in [3usize, 5, 7, 11] {
        let s = (0..p as i64).fold(Cyclotomic::zero(p), |acc, k| &acc + &Cyclotomic::omega_pow(p, k));
        assert!(s.is_zero());
        assert!(Cyclotomic::omega_pow(p, p as i64).is_one());
    }
}
