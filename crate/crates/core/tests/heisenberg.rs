use std::collections::BTreeSet;

use algtool::arith::Cyclotomic;
use algtool::heisenberg::*;
use proptest::prelude::*;

/// Classes by brute force: orbits of conjugation over the whole group.
fn brute_classes(p: usize) -> Vec<BTreeSet<HeisenbergElement>> {
    let all = HeisenbergElement::all(p).unwrap();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for h in &all {
        if seen.contains(h) {
            continue;
        }
        let class: BTreeSet<_> = all
            .iter()
            .map(|g| h_mul(&h_mul(g, h).unwrap(), &g.inverse()).unwrap())
            .collect();
        seen.extend(class.iter().copied());
        out.push(class);
    }
    out
}

#[test]
fn classes_match_brute_force() {
    for p in [3, 5, 7] {
        let brute = brute_classes(p);
        let classes = conjugacy_classes(p).unwrap();
        assert_eq!(classes.len(), brute.len());
        assert_eq!(classes.len(), p * p + p - 1);
        for c in &classes {
            let orbit = brute.iter().find(|o| o.contains(&c.representative)).unwrap();
            assert_eq!(orbit.len(), c.size);
        }
    }
}

#[test]
fn characters_are_traces() {
    for p in [3, 5] {
        for rep in SimpleRep::all(p).unwrap() {
            for g in HeisenbergElement::all(p).unwrap() {
                assert_eq!(character(&rep, &g).unwrap(), trace(&rep_matrix(&rep, &g).unwrap()));
            }
        }
    }
}

#[test]
fn fixed_points_are_eigenlines() {
    let p = 5;
    let rep = SimpleRep::new(p, 2).unwrap();
    for g in cyclic_subgroup_generators(p).unwrap() {
        for v in projective_fixed_points(&rep, &g).unwrap() {
            let w = act_on_vector(2, &g, &v);
            let lead = v.iter().position(|c| !c.is_zero()).unwrap();
            let lambda = w[lead].checked_div(&v[lead]).unwrap();
            for (a, b) in w.iter().zip(&v) {
                assert_eq!(*a, b * &lambda);
            }
        }
    }
    assert_eq!(all_fixed_points(&SimpleRep::new(5, 1).unwrap()).unwrap().len(), 30);
    assert_eq!(all_fixed_points(&SimpleRep::new(3, 1).unwrap()).unwrap().len(), 12);
}

#[test]
fn central_and_linear_errors() {
    let rep = SimpleRep::new(5, 1).unwrap();
    assert!(projective_fixed_points(&rep, &HeisenbergElement::z(5).unwrap()).is_err());
    let lin = SimpleRep::linear(5, 1, 2).unwrap();
    assert!(projective_fixed_points(&lin, &HeisenbergElement::e1(5).unwrap()).is_err());
    assert!(HeisenbergElement::new(4, 0, 0, 0).is_err());
}

fn element(p: usize) -> impl Strategy<Value = HeisenbergElement> {
    (0..p as i64, 0..p as i64, 0..p as i64).prop_map(move |(a, b, k)| HeisenbergElement::new(p, a, b, k).unwrap())
}

proptest! {
    #[test]
    fn representation_is_a_homomorphism(g in element(5), h in element(5), i in 1i64..5) {
        let rep = SimpleRep::new(5, i).unwrap();
        let lhs = rep_matrix(&rep, &h_mul(&g, &h).unwrap()).unwrap();
        let rhs = cyc_mat_mul(&rep_matrix(&rep, &g).unwrap(), &rep_matrix(&rep, &h).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn group_axioms(g in element(3), h in element(3), k in element(3)) {
        let gh_k = h_mul(&h_mul(&g, &h).unwrap(), &k).unwrap();
        let g_hk = h_mul(&g, &h_mul(&h, &k).unwrap()).unwrap();
        prop_assert_eq!(gh_k, g_hk);
        prop_assert!(h_mul(&g, &g.inverse()).unwrap().is_identity());
        prop_assert!(g.pow(3).is_identity());
    }

    #[test]
    fn dual_character_is_conjugate(g in element(5), i in 1i64..5) {
        let rep = SimpleRep::new(5, i).unwrap();
        let chi: Cyclotomic = character(&rep, &g).unwrap();
        prop_assert_eq!(character(&rep.dual(), &g).unwrap(), chi.conjugate());
    }
}
