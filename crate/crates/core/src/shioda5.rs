//! Shioda's modular surface for p = 5: the determinantal surface S₁₅, the
//! curves C_a, 2-torsion, the 30 singular points and the cusp fibers.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, OnceLock};

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{rat, CyclotomicField, ComplexF, Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::gradedalg::{hilbert, make_presentation, word_letters, Presentation, PresentationSpec};
use crate::heisenberg::{
    act_on_vector, all_fixed_points, cyclic_subgroup_generators, normalize_projective, projective_fixed_points,
    HeisenbergElement, SimpleRep,
};
use crate::linalg::{numeric_rank_complex, real_poly_roots, Echelon};
use crate::poly::{mat_minors, MultiPoly, PolyMatrix, PolyRing};

const P: usize = 5;

fn ring() -> &'static Arc<PolyRing> {
    static R: OnceLock<Arc<PolyRing>> = OnceLock::new();
    R.get_or_init(|| PolyRing::indexed("x", P))
}

fn x(i: usize) -> MultiPoly {
    MultiPoly::var(ring(), i % P)
}

/// The 3×5 matrix with columns `(x_i², x_{i+2}x_{i+3}, x_{i+1}x_{i+4})`.
pub fn s15_matrix() -> PolyMatrix {
    PolyMatrix::from_fn(3, P, |r, i| match r {
        0 => x(i).pow(2),
        1 => &x(i + 2) * &x(i + 3),
        _ => &x(i + 1) * &x(i + 4),
    })
    .expect("3×5")
}

/// The 10 maximal minors, ordered by lexicographic column triple.
pub fn s15_minors() -> &'static [MultiPoly] {
    static M: OnceLock<Vec<MultiPoly>> = OnceLock::new();
    M.get_or_init(|| mat_minors(&s15_matrix(), 3).expect("3 ≤ 5"))
}

/// `a x_i² + a² x_{i+1}x_{i−1} − x_{i+2}x_{i−2}` for `i = 0..5`.
pub fn ca_relations(a: &Rational) -> Vec<MultiPoly> {
    (0..P)
        .map(|i| {
            let t1 = x(i).pow(2).scale(a);
            let t2 = (&x(i + 1) * &x(i + 4)).scale(&(a * a));
            &(&t1 + &t2) - &(&x(i + 2) * &x(i + 3))
        })
        .collect()
}

/// The 25 images of `O_a = (0:1:a:−a:−1)` under `e₁^A e₂^B`.
pub fn ca_orbit(a: &Rational) -> Vec<Vec<Cyclotomic>> {
    let c = |r: Rational| Cyclotomic::from_rational(P, r);
    let base = vec![c(rat(0, 1)), c(rat(1, 1)), c(a.clone()), c(-a.clone()), c(rat(-1, 1))];
    let mut out = Vec::with_capacity(P * P);
    for s in 0..P as i64 {
        for t in 0..P as i64 {
            let g = HeisenbergElement::new(P, s, t, 0).expect("5 is prime");
            out.push(act_on_vector(1, &g, &base));
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitReport {
    #[serde(serialize_with = "ser_rational")]
    pub a: Rational,
    pub points: usize,
    /// Points failing some `C_a` relation.
    pub relation_failures: usize,
    /// Points failing some S₁₅ minor.
    pub minor_failures: usize,
    pub pass: bool,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn vanishes_on(fs: &[MultiPoly], pt: &[Cyclotomic]) -> Result<bool> {
    for f in fs {
        if !f.eval_cyclotomic(pt)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact check that the orbit of `O_a` lies on `C_a` and on S₁₅.
pub fn ca_orbit_check(a: &Rational) -> Result<OrbitReport> {
    let rels = ca_relations(a);
    let orbit = ca_orbit(a);
    let flags = orbit
        .par_iter()
        .map(|pt| Ok((vanishes_on(&rels, pt)?, vanishes_on(s15_minors(), pt)?)))
        .collect::<Result<Vec<_>>>()?;
    let relation_failures = flags.iter().filter(|f| !f.0).count();
    let minor_failures = flags.iter().filter(|f| !f.1).count();
    Ok(OrbitReport {
        a: a.clone(),
        points: orbit.len(),
        relation_failures,
        minor_failures,
        pass: relation_failures == 0 && minor_failures == 0,
    })
}

fn embed(v: &[Cyclotomic]) -> Result<Vec<ComplexF>> {
    v.iter().map(|c| c.embed(1)).collect()
}

fn normalized(v: &[ComplexF]) -> Vec<ComplexF> {
    let n = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    v.iter().map(|z| z / n).collect()
}

/// Largest |minor| at a point scaled to max-norm 1.
pub fn max_minor_residual(pt: &[ComplexF]) -> Result<f64> {
    let u = normalized(pt);
    let mut worst: f64 = 0.0;
    for m in s15_minors() {
        worst = worst.max(m.eval_complex(&u)?.norm());
    }
    Ok(worst)
}

#[derive(Clone, Debug, Serialize)]
pub struct TwoTorsionReport {
    pub samples: usize,
    pub seed: u64,
    pub roots: usize,
    pub max_residual: f64,
    /// Over samples, the smallest of the largest residuals after moving one
    /// root by 1e−2 times the point's max-norm.
    pub control_min_residual: f64,
    /// Smallest residual over all perturbed points.
    pub control_worst_point: f64,
    pub pass: bool,
}

/// Tolerance for points found numerically on the 2-torsion curve.
pub const TORSION_TOL: f64 = 1e-7;
/// Residual a perturbed point must exceed.
pub const CONTROL_FLOOR: f64 = 1e-5;
const PERTURBATION: f64 = 1e-2;

/// Solves `x₁x₂x₀⁴ − x₁²x₂²x₀² − (x₁⁵+x₂⁵)x₀ + 2x₁³x₂³ = 0` for x₀ at random
/// `(x₁, x₂)` and checks the points `(x₀, x₁, x₂, x₂, x₁)` against S₁₅.
pub fn two_torsion_check(samples: usize, seed: u64) -> Result<TwoTorsionReport> {
    if samples == 0 {
        return Err(Error::Parameter("need at least one sample".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(f64, f64)> = (0..samples).map(|_| (rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
    let per_sample = pairs
        .par_iter()
        .map(|&(x1, x2)| {
            let coeffs = [2.0 * x1.powi(3) * x2.powi(3), -(x1.powi(5) + x2.powi(5)), -(x1 * x1 * x2 * x2), 0.0, x1 * x2];
            let roots = real_poly_roots(&coeffs)?;
            if roots.len() != 4 {
                return Err(Error::Sampling(format!("expected 4 roots at ({x1}, {x2}), got {}", roots.len())));
            }
            let (c1, c2) = (ComplexF::new(x1, 0.0), ComplexF::new(x2, 0.0));
            let mut worst: f64 = 0.0;
            let mut control: f64 = 0.0;
            let mut control_worst = f64::INFINITY;
            for x0 in roots {
                worst = worst.max(max_minor_residual(&[x0, c1, c2, c2, c1])?);
                let scale = [x0.norm(), x1.abs(), x2.abs()].into_iter().fold(0.0, f64::max);
                let r = max_minor_residual(&[x0 + PERTURBATION * scale, c1, c2, c2, c1])?;
                control = control.max(r);
                control_worst = control_worst.min(r);
            }
            Ok((worst, control, control_worst))
        })
        .collect::<Result<Vec<_>>>()?;
    let max_residual = per_sample.iter().map(|r| r.0).fold(0.0, f64::max);
    let control_min_residual = per_sample.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
    let control_worst_point = per_sample.iter().map(|r| r.2).fold(f64::INFINITY, f64::min);
    Ok(TwoTorsionReport {
        samples,
        seed,
        roots: 4 * samples,
        max_residual,
        control_min_residual,
        control_worst_point,
        pass: max_residual < TORSION_TOL && control_min_residual > CONTROL_FLOOR,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SingularPoint {
    pub coords: Vec<Cyclotomic>,
    pub on_surface: bool,
    pub jacobian_rank: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SingularReport {
    pub points: Vec<SingularPoint>,
    pub control_ranks: Vec<usize>,
    pub pass: bool,
}

/// Absolute singular-value cutoff for Jacobians at max-norm-1 points.
pub const JACOBIAN_TOL: f64 = 1e-8;

fn jacobian_rank(pt: &[ComplexF]) -> Result<usize> {
    static J: OnceLock<PolyMatrix> = OnceLock::new();
    let jac = J.get_or_init(|| PolyMatrix::jacobian(s15_minors(), &[0, 1, 2, 3, 4]).expect("10×5"));
    let m: DMatrix<ComplexF> = jac.eval_complex(&normalized(pt))?;
    Ok(numeric_rank_complex(&m, JACOBIAN_TOL, false).rank)
}

/// The points with nontrivial stabilizer in `H₅`: exactly on S₁₅ with
/// Jacobian rank below the codimension 2; smooth controls from the
/// orbit of `O₁` have rank 2.
pub fn singular_points_check() -> Result<SingularReport> {
    let pts = all_fixed_points(&SimpleRep::new(P, 1)?)?;
    let points = pts
        .into_par_iter()
        .map(|coords| {
            let on_surface = vanishes_on(s15_minors(), &coords)?;
            let jacobian_rank = jacobian_rank(&embed(&coords)?)?;
            Ok(SingularPoint { coords, on_surface, jacobian_rank })
        })
        .collect::<Result<Vec<_>>>()?;
    let control_ranks = ca_orbit(&rat(1, 1))
        .iter()
        .take(10)
        .map(|pt| jacobian_rank(&embed(pt)?))
        .collect::<Result<Vec<_>>>()?;
    let pass = points.len() == 30
        && points.iter().all(|s| s.on_surface && s.jacobian_rank < 2)
        && control_ranks.iter().all(|&r| r == 2);
    Ok(SingularReport { points, control_ranks, pass })
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberReport {
    pub span_equal: bool,
    pub hilbert: Vec<usize>,
    pub cusp_cycles: usize,
    pub pass: bool,
}

fn commutator_rels() -> Vec<Vec<(Vec<usize>, Cyclotomic)>> {
    let mut out = Vec::new();
    for i in 0..P {
        for j in i + 1..P {
            out.push(vec![(vec![i, j], Cyclotomic::one(P)), (vec![j, i], Cyclotomic::from_int(P, -1))]);
        }
    }
    out
}

/// The fiber of `S(5)` at `(A:B) = (0:1)`: commutators and `x_{i+2}x_{i−2}`.
pub fn cusp_fiber_presentation() -> Result<Presentation> {
    let mut rels = commutator_rels();
    for i in 0..P {
        rels.push(vec![(vec![(i + 2) % P, (i + 3) % P], Cyclotomic::one(P))]);
    }
    Presentation::custom(P, rels)
}

/// Applies `x_j ↦ x_{kj}` to every relation.
pub fn relabel(pres: &Presentation, k: usize) -> Result<Presentation> {
    let p = pres.prime();
    let rels = pres
        .relations()
        .iter()
        .map(|r| {
            r.terms
                .iter()
                .map(|(w, c)| (word_letters(*w, r.degree, p).into_iter().map(|l| (l * k) % p).collect(), c.clone()))
                .collect()
        })
        .collect();
    Presentation::custom(p, rels)
}

fn same_relation_span(a: &Presentation, b: &Presentation) -> Result<bool> {
    let f = CyclotomicField::new(P)?;
    let ea = Echelon::from_rows(f, P * P, a.relations().iter().map(|r| r.terms.clone()))?;
    let eb = Echelon::from_rows(f, P * P, b.relations().iter().map(|r| r.terms.clone()))?;
    Ok(ea.same_span(&eb))
}

/// A line through two of the 30 fixed points, by index, smaller first.
pub type Line = (usize, usize);

fn line(u: usize, v: usize) -> Line {
    (u.min(v), u.max(v))
}

/// Cycles of 5 lines forming an `H₅`-orbit: for each cyclic subgroup, its 5
/// fixed points joined to their translates by `h^k`, where h generates a
/// complement. Each candidate is checked to be `H₅`-stable with every point
/// on exactly 2 lines; distinct cycles are counted.
pub fn cusp_cycles() -> Result<Vec<BTreeSet<Line>>> {
    let rep = SimpleRep::new(P, 1)?;
    let all = all_fixed_points(&rep)?;
    let index: HashMap<Vec<Cyclotomic>, usize> = all.iter().cloned().zip(0..).collect();
    let lookup = |v: &[Cyclotomic]| -> Result<usize> {
        index
            .get(&normalize_projective(v)?)
            .copied()
            .ok_or_else(|| Error::Parameter("image of a fixed point is not a fixed point".into()))
    };
    let (e1, e2) = (HeisenbergElement::e1(P)?, HeisenbergElement::e2(P)?);
    let mut out: Vec<BTreeSet<Line>> = Vec::new();
    for g in cyclic_subgroup_generators(P)? {
        let h = if g.exponents().0 == 0 { &e1 } else { &e2 };
        let fixed = projective_fixed_points(&rep, &g)?;
        let ids = fixed.iter().map(|y| lookup(y)).collect::<Result<Vec<_>>>()?;
        for k in 1..P as u64 {
            let hk = h.pow(k);
            let cycle = fixed
                .iter()
                .zip(&ids)
                .map(|(y, &i)| Ok(line(i, lookup(&act_on_vector(1, &hk, y))?)))
                .collect::<Result<BTreeSet<Line>>>()?;
            let mut stable = true;
            for s in [&e1, &e2] {
                for &(u, v) in &cycle {
                    let m = line(lookup(&act_on_vector(1, s, &all[u]))?, lookup(&act_on_vector(1, s, &all[v]))?);
                    stable &= cycle.contains(&m);
                }
            }
            let degrees_ok = ids.iter().all(|&y| cycle.iter().filter(|l| l.0 == y || l.1 == y).count() == 2);
            if cycle.len() == P && stable && degrees_ok && !out.contains(&cycle) {
                out.push(cycle);
            }
        }
    }
    Ok(out)
}

/// The cycle presentation, relabeled by `x_j ↦ x_{2j}`, has the relation
/// span of the cusp fiber; its Hilbert series starts `1, 5, 10, 15`; the
/// number of cusp cycles is `(p+1)(p−1)/2 = 12`.
pub fn cycle_fiber_equivalence() -> Result<FiberReport> {
    let cycle = make_presentation(&PresentationSpec::Cycle { p: P })?;
    let span_equal = same_relation_span(&relabel(&cycle, 2)?, &cusp_fiber_presentation()?)?;
    let hilbert = hilbert(&cycle, 3)?;
    let cusp_cycles = cusp_cycles()?.len();
    let pass = span_equal && hilbert == [1, 5, 10, 15] && cusp_cycles == (P + 1) * (P - 1) / 2;
    Ok(FiberReport { span_equal, hilbert, cusp_cycles, pass })
}
