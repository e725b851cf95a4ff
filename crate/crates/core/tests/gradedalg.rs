use algtool::arith::{rat, Cyclotomic};
use algtool::gradedalg::*;
use algtool::heisenberg::{act_on_basis, conjugacy_classes, h_mul, HeisenbergElement, SimpleRep};
use algtool::koszul::{koszul_identity_check, quadratic_dual};
use algtool::Error;
use proptest::prelude::*;

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn exponent_vectors(p: usize, n: usize) -> Vec<Vec<usize>> {
    if p == 1 {
        return vec![vec![n]];
    }
    (0..=n)
        .flat_map(|e| exponent_vectors(p - 1, n - e).into_iter().map(move |mut rest| {
            rest.insert(0, e);
            rest
        }))
        .collect()
}

/// Trace of g on Sym^n V_i by enumerating monomials fixed up to scalar.
fn sym_trace(p: usize, index: usize, g: &HeisenbergElement, n: usize) -> Cyclotomic {
    let mut acc = Cyclotomic::zero(p);
    for e in exponent_vectors(p, n) {
        let mut image = vec![0; p];
        let mut phase = 0;
        for (j, &ej) in e.iter().enumerate() {
            let (t, w) = act_on_basis(index, g, j);
            image[t] += ej;
            phase += w * ej;
        }
        if image == e {
            acc = &acc + &Cyclotomic::omega_pow(p, phase as i64);
        }
    }
    acc
}

fn pres(spec: PresentationSpec) -> Presentation {
    make_presentation(&spec).unwrap()
}

#[test]
fn polynomial_ring_is_binomial() {
    for p in [3, 5] {
        let h = hilbert(&pres(PresentationSpec::Polynomial { p }), 5).unwrap();
        let expected: Vec<usize> = (0..=5).map(|n| binom(n + p - 1, p - 1)).collect();
        assert_eq!(h, expected);
    }
}

#[test]
fn polynomial_characters_match_symmetric_powers() {
    let p = 3;
    let pr = pres(PresentationSpec::Polynomial { p });
    for rep_index in [1, 2] {
        let rep = SimpleRep::new(p, rep_index).unwrap();
        for class in conjugacy_classes(p).unwrap() {
            let coeffs = character_coeffs(&pr, &class.representative, &rep, 5).unwrap();
            for (n, c) in coeffs.iter().enumerate() {
                assert_eq!(*c, sym_trace(p, rep_index as usize, &class.representative, n), "class {} degree {n}", class.representative);
            }
        }
    }
}

#[test]
fn identity_row_is_hilbert() {
    let pr = pres(PresentationSpec::Cycle { p: 5 });
    let rep = SimpleRep::new(5, 1).unwrap();
    let table = character_table(&pr, &rep, 4).unwrap();
    let id = &table.classes[0];
    assert_eq!(id.size, 1);
    let h: Vec<Cyclotomic> = table.hilbert.iter().map(|&d| Cyclotomic::from_int(5, d as i64)).collect();
    assert_eq!(id.coeffs, h);
    assert_eq!(table.hilbert, vec![1, 5, 10, 15, 20]);
}

#[test]
fn characters_are_class_functions() {
    let pr = pres(PresentationSpec::Sklyanin5 { a: rat(2, 1), b: rat(-3, 2) });
    let rep = SimpleRep::new(5, 1).unwrap();
    let e1 = HeisenbergElement::e1(5).unwrap();
    let base = character_coeffs(&pr, &e1, &rep, 3).unwrap();
    for h in [HeisenbergElement::e2(5).unwrap(), HeisenbergElement::new(5, 1, 3, 2).unwrap()] {
        let conj = h_mul(&h_mul(&h, &e1).unwrap(), &h.inverse()).unwrap();
        assert_ne!(conj, e1);
        assert_eq!(character_coeffs(&pr, &conj, &rep, 3).unwrap(), base);
    }
}

#[test]
fn quotient_generated_in_degree_one() {
    let specs = [
        PresentationSpec::Cycle { p: 7 },
        PresentationSpec::CurveCa { a: rat(1, 1) },
        PresentationSpec::Sklyanin3 { a: rat(1, 1), b: rat(2, 1), c: rat(3, 1) },
    ];
    for s in specs {
        let pr = pres(s);
        let h = hilbert(&pr, 4).unwrap();
        assert_eq!(h[0], 1);
        assert_eq!(h[1], pr.prime());
        for n in 1..h.len() {
            assert!(h[n] <= pr.prime() * h[n - 1]);
        }
    }
}

#[test]
fn sklyanin3_generic_is_polynomial_sized() {
    let h = hilbert(&pres(PresentationSpec::Sklyanin3 { a: rat(1, 1), b: rat(2, 1), c: rat(3, 1) }), 5).unwrap();
    assert_eq!(h, vec![1, 3, 6, 10, 15, 21]);
}

#[test]
fn cell_cap_is_a_resource_error() {
    let mut engine = GradedEngine::with_cap(pres(PresentationSpec::Polynomial { p: 5 }), 1000).unwrap();
    match engine.hilbert(6) {
        Err(Error::Resource { cap, .. }) => assert_eq!(cap, 1000),
        other => panic!("expected resource error, got {other:?}"),
    }
}

#[test]
fn unknown_kind_and_bad_arity() {
    assert!(matches!(PresentationSpec::parse("nope", Some(5), &[]), Err(Error::UnknownKind(_))));
    assert!(PresentationSpec::parse("sklyanin5", None, &[rat(1, 1)]).is_err());
    let four = PresentationSpec::parse("polynomial", Some(4), &[]).unwrap();
    assert!(matches!(make_presentation(&four), Err(Error::Modulus(4))));
}

#[test]
fn koszul_duals_pair_to_zero() {
    for s in [PresentationSpec::Polynomial { p: 5 }, PresentationSpec::Sklyanin5 { a: rat(2, 1), b: rat(-3, 2) }] {
        let pr = pres(s);
        let pair = quadratic_dual(&pr).unwrap();
        assert!(pair.pairing_is_zero());
        let total = pair.relation_basis.len() + pair.dual_basis.len();
        assert_eq!(total, 25);
    }
}

#[test]
fn polynomial_ring_is_koszul_for_every_class() {
    let pr = pres(PresentationSpec::Polynomial { p: 3 });
    let rep = SimpleRep::new(3, 1).unwrap();
    for class in conjugacy_classes(3).unwrap() {
        let res = koszul_identity_check(&pr, &rep, &class.representative, 5).unwrap();
        assert!(res.iter().all(Cyclotomic::is_zero));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn sklyanin3_identity_row_is_hilbert(a in 1i64..5, b in 1i64..5, c in 1i64..5) {
        let pr = pres(PresentationSpec::Sklyanin3 { a: rat(a, 1), b: rat(b, 1), c: rat(c, 1) });
        let h = hilbert(&pr, 3).unwrap();
        prop_assert!(h[2] >= 6);
        prop_assert!(h[3] >= h[2]);
        let rep = SimpleRep::new(3, 1).unwrap();
        let id = character_coeffs(&pr, &HeisenbergElement::identity(3).unwrap(), &rep, 3).unwrap();
        let hc: Vec<Cyclotomic> = h.iter().map(|&d| Cyclotomic::from_int(3, d as i64)).collect();
        prop_assert_eq!(id, hc);
    }
}
