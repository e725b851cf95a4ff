//! The acceptance checks, one function per criterion, shared by the CLI
//! `selftest` subcommand and the acceptance test target.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::{rat, ComplexF, Cyclotomic, Rational};
use crate::clifford::{
    anticommutation_residual, build_reps, det_zero_ranks, fat_profile, simple_profile, symmetric_rank_float,
    FatProfile, SimpleProfile, SymmetricForm,
};
use crate::error::Result;
use crate::gradedalg::{character_coeffs, character_table, hilbert, make_presentation, CharacterTable, PresentationSpec};
use crate::heisenberg::{character, conjugacy_classes, HeisenbergElement, SimpleRep};
use crate::koszul::{koszul_identity_check, quadratic_dual};
use crate::shioda5;
use crate::sklyanin2::{self, CurvePoint, Tolerances};

/// Number of criteria evaluated in-process; criterion 9 compares CLI runs.
pub const IN_PROCESS: std::ops::RangeInclusive<u8> = 1..=8;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: String,
    pub pass: bool,
    pub details: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct SelftestReport {
    pub criteria: Vec<CriterionResult>,
    pub pass: bool,
}

/// Named boolean checks; a criterion passes when all of them do.
#[derive(Default)]
struct Checks(Vec<(String, bool)>);

impl Checks {
    fn add(&mut self, name: impl Into<String>, ok: bool) {
        self.0.push((name.into(), ok));
    }

    fn all(&self) -> bool {
        self.0.iter().all(|c| c.1)
    }

    fn json(&self) -> Value {
        Value::Object(self.0.iter().map(|(k, v)| (k.clone(), Value::Bool(*v))).collect())
    }
}

pub fn criterion_name(id: u8) -> &'static str {
    match id {
        1 => "heisenberg structure",
        2 => "hilbert fixtures",
        3 => "character series fixtures",
        4 => "koszul identity",
        5 => "clifford profiles",
        6 => "order-2 sklyanin",
        7 => "one-dimensional representations",
        8 => "shioda surface",
        9 => "determinism",
        _ => "unknown",
    }
}

/// Runs one in-process criterion. Errors count as failures and are
/// reported in `details`.
pub fn run_criterion(id: u8) -> CriterionResult {
    let out = match id {
        1 => heisenberg_structure(),
        2 => hilbert_fixtures(),
        3 => character_fixtures(),
        4 => koszul_fixtures(),
        5 => clifford_fixtures(),
        6 => order_two_sklyanin(),
        7 => onedim_fixtures(),
        8 => shioda_fixtures(),
        _ => Ok((false, json!({"error": "not an in-process criterion"}))),
    };
    let (pass, details) = out.unwrap_or_else(|e| (false, json!({"error": {"code": e.code(), "message": e.to_string()}})));
    CriterionResult { id, name: criterion_name(id).to_string(), pass, details }
}

pub fn run_all() -> SelftestReport {
    let criteria: Vec<CriterionResult> = IN_PROCESS.collect::<Vec<_>>().into_par_iter().map(run_criterion).collect();
    let pass = criteria.iter().all(|c| c.pass);
    SelftestReport { criteria, pass }
}

fn pres(spec: PresentationSpec) -> Result<crate::gradedalg::Presentation> {
    make_presentation(&spec)
}

fn heisenberg_structure() -> Result<(bool, Value)> {
    let mut checks = Checks::default();
    let mut counts = Vec::new();
    for (p, expected) in [(3usize, 11usize), (5, 29)] {
        let classes = conjugacy_classes(p)?;
        counts.push(classes.len());
        checks.add(format!("classes_p{p}"), classes.len() == expected && expected == p * p + p - 1);
        checks.add(format!("sizes_p{p}"), classes.iter().map(|c| c.size).sum::<usize>() == p * p * p);
        let reps = SimpleRep::all(p)?;
        checks.add(format!("irreps_p{p}"), reps.len() == classes.len());
        let table = reps
            .iter()
            .map(|r| classes.iter().map(|c| character(r, &c.representative)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let order = Cyclotomic::from_int(p, (p * p * p) as i64);
        let mut orthogonal = true;
        for (i, ri) in table.iter().enumerate() {
            for (j, rj) in table.iter().enumerate() {
                let mut s = Cyclotomic::zero(p);
                for ((x, y), c) in ri.iter().zip(rj).zip(&classes) {
                    s = &s + &(x * &y.conjugate()).scale(&rat(c.size as i64, 1));
                }
                let want = if i == j { order.clone() } else { Cyclotomic::zero(p) };
                orthogonal &= s == want;
            }
        }
        checks.add(format!("orthogonality_p{p}"), orthogonal);
    }
    Ok((checks.all(), json!({"class_counts": counts, "checks": checks.json()})))
}

fn hilbert_fixtures() -> Result<(bool, Value)> {
    let r = |n: i64| rat(n, 1);
    let cases: Vec<(&str, PresentationSpec, usize, Vec<usize>)> = vec![
        ("polynomial_p5", PresentationSpec::Polynomial { p: 5 }, 4, vec![1, 5, 15, 35, 70]),
        ("cycle_p5", PresentationSpec::Cycle { p: 5 }, 4, vec![1, 5, 10, 15, 20]),
        ("sklyanin3_1_1_-1", PresentationSpec::Sklyanin3 { a: r(1), b: r(1), c: r(-1) }, 5, vec![1, 3, 6, 10, 15, 21]),
        ("cliffordC_5_1_2_3", PresentationSpec::CliffordC { p: 5, a: vec![r(1), r(2), r(3)] }, 4, vec![1, 5, 15, 35, 70]),
        ("sklyanin5_2_3", PresentationSpec::Sklyanin5 { a: r(2), b: r(3) }, 3, vec![1, 5, 15, 35]),
    ];
    let results = cases
        .into_par_iter()
        .map(|(name, spec, n, want)| Ok((name, hilbert(&pres(spec)?, n)?, want)))
        .collect::<Result<Vec<_>>>()?;
    let mut checks = Checks::default();
    let mut series = serde_json::Map::new();
    for (name, got, want) in results {
        checks.add(name, got == want);
        series.insert(name.to_string(), json!(got));
    }
    Ok((checks.all(), json!({"hilbert": series, "checks": checks.json()})))
}

/// Coefficients of `(1 + (p−2)x + x²)/(1 − x)²` with `x = λt`, `n = 0..=N`.
fn cycle_closed_form(p: usize, lambda: &Cyclotomic, max_degree: usize) -> Vec<Cyclotomic> {
    let num = [Cyclotomic::one(p), Cyclotomic::from_int(p, p as i64 - 2), Cyclotomic::one(p)];
    (0..=max_degree)
        .map(|n| {
            // 1/(1−x)² = Σ (m+1) x^m.
            let mut c = Cyclotomic::zero(p);
            for (j, a) in num.iter().enumerate().take(n + 1) {
                c = &c + &a.scale(&rat((n - j + 1) as i64, 1));
            }
            &c * &lambda.pow(n as u64)
        })
        .collect()
}

fn rows_by_class(table: &CharacterTable, p: usize) -> Result<Vec<(HeisenbergElement, Vec<Cyclotomic>)>> {
    Ok(conjugacy_classes(p)?.into_iter().map(|c| c.representative).zip(table.classes.iter().map(|r| r.coeffs.clone())).collect())
}

fn character_fixtures() -> Result<(bool, Value)> {
    let mut checks = Checks::default();
    let r = |n: i64| rat(n, 1);

    let poly3 = pres(PresentationSpec::Polynomial { p: 3 })?;
    let v3 = SimpleRep::new(3, 1)?;
    let e1 = character_coeffs(&poly3, &HeisenbergElement::e1(3)?, &v3, 3)?;
    checks.add("polynomial_p3_e1", e1 == [1, 0, 0, 1].map(|n| Cyclotomic::from_int(3, n)));

    for (name, spec, p, n) in [
        ("polynomial_p3", PresentationSpec::Polynomial { p: 3 }, 3usize, 4usize),
        ("cycle_p5", PresentationSpec::Cycle { p: 5 }, 5, 4),
    ] {
        let pr = pres(spec)?;
        let h = hilbert(&pr, n)?;
        let rep = SimpleRep::new(p, 1)?;
        let mut ok = true;
        for k in 1..p as i64 {
            let zk = HeisenbergElement::new(p, 0, 0, k)?;
            let ch = character_coeffs(&pr, &zk, &rep, n)?;
            ok &= ch.iter().enumerate().all(|(d, c)| *c == Cyclotomic::omega_pow(p, k * d as i64).scale(&r(h[d] as i64)));
        }
        checks.add(format!("{name}_center"), ok);
    }

    let cycle = character_table(&pres(PresentationSpec::Cycle { p: 5 })?, &SimpleRep::new(5, 1)?, 4)?;
    let trivial: Vec<Cyclotomic> = [1, 0, 0, 0, 0].map(|n| Cyclotomic::from_int(5, n)).to_vec();
    checks.add(
        "cycle_p5_noncentral",
        rows_by_class(&cycle, 5)?.iter().filter(|(g, _)| !g.is_central()).all(|(_, c)| *c == trivial),
    );

    let ca = character_table(&pres(PresentationSpec::CurveCa { a: r(1) })?, &SimpleRep::new(5, 1)?, 4)?;
    let ca_ok = rows_by_class(&ca, 5)?.iter().all(|(g, coeffs)| {
        let (_, _, k) = g.exponents();
        let want = if g.is_central() { cycle_closed_form(5, &Cyclotomic::omega_pow(5, k as i64), 4) } else { trivial.clone() };
        *coeffs == want
    });
    checks.add("curveCa_1_closed_forms", ca_ok);

    let reference = character_table(&poly3, &v3, 4)?;
    let points = [(1, 1, -1), (1, 2, 3), (2, -1, 1), (1, -3, 2), (3, 1, 1)];
    let same = points
        .par_iter()
        .map(|&(a, b, c)| {
            let t = character_table(&pres(PresentationSpec::Sklyanin3 { a: r(a), b: r(b), c: r(c) })?, &v3, 4)?;
            Ok(t.same_characters(&reference))
        })
        .collect::<Result<Vec<bool>>>()?;
    checks.add("sklyanin3_tables", same.iter().all(|&s| s));
    Ok((checks.all(), json!({"sklyanin3_points": points, "checks": checks.json()})))
}

fn koszul_fixtures() -> Result<(bool, Value)> {
    let mut checks = Checks::default();
    let poly3 = pres(PresentationSpec::Polynomial { p: 3 })?;
    let rep = SimpleRep::new(3, 1)?;
    for (name, g) in [("1", HeisenbergElement::identity(3)?), ("z", HeisenbergElement::z(3)?), ("e1", HeisenbergElement::e1(3)?)] {
        let res = koszul_identity_check(&poly3, &rep, &g, 4)?;
        checks.add(format!("residual_{name}"), res.iter().all(Cyclotomic::is_zero));
    }
    let dual = hilbert(&quadratic_dual(&poly3)?.dual, 4)?;
    checks.add("dual_hilbert", dual == [1, 3, 3, 1, 0]);
    Ok((checks.all(), json!({"dual_hilbert": dual, "checks": checks.json()})))
}

fn random_symmetric(rng: &mut ChaCha8Rng, n: usize, k: usize) -> DMatrix<ComplexF> {
    let a = DMatrix::from_fn(n, k, |_, _| ComplexF::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    &a * a.transpose()
}

fn clifford_fixtures() -> Result<(bool, Value)> {
    let mut checks = Checks::default();
    let simple = [(5, 5, 2, 4), (4, 5, 1, 4), (3, 5, 2, 2), (2, 5, 1, 2)];
    let fat = [(5, 1, 4), (4, 2, 2), (3, 1, 2), (2, 2, 1)];
    let mut rows_ok = true;
    for (k, n, count, dim) in simple {
        rows_ok &= simple_profile(k, n)? == SimpleProfile { count, dim };
    }
    for (k, count, multiplicity) in fat {
        rows_ok &= fat_profile(k)? == FatProfile { count, multiplicity };
    }
    checks.add("profile_rows", rows_ok);

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let shapes: Vec<(usize, usize)> = (2..=5).flat_map(|n| (1..=n).map(move |k| (n, k))).collect();
    let mut worst: f64 = 0.0;
    let mut shapes_ok = true;
    for i in 0..50 {
        let (n, k) = shapes[i % shapes.len()];
        let m = random_symmetric(&mut rng, n, k);
        let rank = symmetric_rank_float(&m, 1e-8)?.rank;
        let reps = build_reps(&m, rank, 1e-8)?;
        let prof = simple_profile(rank, n)?;
        shapes_ok &= rank == k && reps.len() == prof.count && reps.iter().all(|r| r.generators[0].nrows() == prof.dim);
        for r in &reps {
            worst = worst.max(anticommutation_residual(r, &m));
        }
    }
    checks.add("random_reps", shapes_ok && worst < 1e-9);

    let ranks = det_zero_ranks(&SymmetricForm::three_dim_example(&rat(1, 1))?, &[], 20, 3, 1e-8)?;
    let ranks: Vec<usize> = ranks.iter().map(|r| r.rank).collect();
    checks.add("three_dim_det_zeros", ranks.len() == 20 && ranks.iter().all(|&r| r <= 2));
    Ok((checks.all(), json!({"max_residual": worst, "det_zero_ranks": ranks, "checks": checks.json()})))
}

fn order_two_sklyanin() -> Result<(bool, Value)> {
    let mut checks = Checks::default();
    let tol = Tolerances::default();
    let elim = sklyanin2::eliminate_t()?;
    checks.add("elimination", elim.check);
    checks.add(
        "singular_point",
        sklyanin2::cprime_residual(&rat(2, 1), &rat(2, 1)) == rat(0, 1)
            && sklyanin2::t_param(&rat(2, 1), &rat(2, 1))? == sklyanin2::TParam::Indeterminate,
    );
    let points = sklyanin2::sample_curve_points(&sklyanin2::DEFAULT_GRID[..3])?;
    let per_point = points
        .par_iter()
        .map(|cp| {
            let pm = sklyanin2::point_module_check(cp, &tol)?;
            let st = sklyanin2::stratify(cp, 10, 0, &tol)?;
            let mi = sklyanin2::minor_ideal_checks(cp, &tol)?;
            let sc = sklyanin2::secant_check(cp, 1e-7)?;
            Ok((cp, pm, st, mi, sc))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut details = Vec::new();
    let (mut pm_ok, mut st_ok, mut mi_ok, mut sc_ok) = (true, true, true, true);
    for (cp, pm, st, mi, sc) in &per_point {
        pm_ok &= pm.pass;
        let expected = [(5, 1, 4), (4, 2, 2), (2, 2, 1)];
        st_ok &= st.strata.len() == 3
            && st.strata.iter().zip(expected).all(|(s, (rank, fat_count, multiplicity))| {
                s.pass && s.expected_rank == rank && s.profile.fat == Some(FatProfile { count: fat_count, multiplicity })
            });
        mi_ok &= mi.deg6 && mi.deg8;
        sc_ok &= sc.pass;
        details.push(json!({
            "a": cp.a, "b": cp.b, "t": pm.t, "max_minor": pm.max_minor,
            "secant_lambda": sc.lambda, "secant_residual": sc.residual,
            "span_dims": [mi.minor3_span_dim, mi.uq_span_dim, mi.minor4_span_dim, mi.qq_span_dim],
        }));
    }
    checks.add("point_modules", pm_ok);
    checks.add("stratification", st_ok);
    checks.add("minor_ideals", mi_ok);
    checks.add("secant", sc_ok);
    let (ca, cb) = (0.7, 0.3);
    let control = match sklyanin2::t_param_f64(ca, cb)? {
        sklyanin2::TParam::Value(t) => !sklyanin2::minor_ideal_checks_at(ca, cb, t, &tol)?.deg6,
        sklyanin2::TParam::Indeterminate => false,
    };
    checks.add("off_curve_control", control && CurvePoint::new(ca, cb).is_err());
    let det_deg = sklyanin2::det_q_symbolic().homogeneous_degree_in(&[2, 3, 4, 5, 6]).map(|d| 2 * d);
    checks.add("det_q_degree_10", det_deg == Some(10));
    Ok((checks.all(), json!({"points": details, "checks": checks.json()})))
}

fn onedim_fixtures() -> Result<(bool, Value)> {
    let mut checks = Checks::default();
    let r = |n: i64| rat(n, 1);
    let five = sklyanin2::onedim_reps(&sklyanin2::OrderTwoParams::new(5, vec![r(1), r(2), r(2)])?)?;
    let none = sklyanin2::onedim_reps(&sklyanin2::OrderTwoParams::new(5, vec![r(1), r(1), r(1)])?)?;
    checks.add("p5_1_2_2", five.len() == 5);
    checks.add("p5_1_1_1", none.is_empty());
    Ok((checks.all(), json!({"counts": [five.len(), none.len()], "checks": checks.json()})))
}

fn shioda_fixtures() -> Result<(bool, Value)> {
    let mut checks = Checks::default();
    checks.add("minor_count", shioda5::s15_minors().len() == 10);
    for a in [1, 2] {
        checks.add(format!("orbit_a{a}"), shioda5::ca_orbit_check(&Rational::from_integer(a.into()))?.pass);
    }
    let tt = shioda5::two_torsion_check(20, 0)?;
    checks.add("two_torsion", tt.pass);
    let sing = shioda5::singular_points_check()?;
    checks.add("singular_points", sing.pass);
    let fiber = shioda5::cycle_fiber_equivalence()?;
    checks.add("cycle_fiber", fiber.span_equal && fiber.hilbert == [1, 5, 10, 15]);
    checks.add("cusp_cycles", fiber.cusp_cycles == 12);
    Ok((
        checks.all(),
        json!({
            "two_torsion_max_residual": tt.max_residual,
            "two_torsion_control": tt.control_min_residual,
            "singular_points": sing.points.len(),
            "cusp_cycles": fiber.cusp_cycles,
            "checks": checks.json(),
        }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_identity_row() {
        let c = cycle_closed_form(5, &Cyclotomic::one(5), 4);
        assert_eq!(c, [1, 5, 10, 15, 20].map(|n| Cyclotomic::from_int(5, n)));
    }
}
