//! Five-dimensional Sklyanin algebras at points of order 2, viewed as the
//! Clifford algebras `C(1:a:b)` with quadratic form `Q(a, b)`.

use std::sync::OnceLock;

use nalgebra::DMatrix;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{rat, ComplexF, Cyclotomic, Rational};
use crate::clifford::{rank_profile, symmetric_rank_float, RankProfile, SymmetricForm};
use crate::error::{Error, Result};
use crate::gradedalg::{make_presentation, word_letters, PresentationSpec};
use crate::heisenberg::{act_on_basis, HeisenbergElement};
use crate::linalg::{bisect, line_search_root, numeric_rank_complex, real_poly_roots, span_equal_f64, span_membership_f64};
use crate::poly::{exact_divide, mat_det, mat_minors, resultant, MultiPoly, PolyMatrix, PolyRing};

/// Numeric tolerances used throughout this module.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    /// Relative singular-value cutoff for ranks.
    pub rank: f64,
    /// Relative cutoff for span comparisons.
    pub span: f64,
    /// Bound for minors and identity residuals.
    pub residual: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { rank: 1e-8, span: 1e-7, residual: 1e-8 }
    }
}

/// Grid of `a` values used to sample points of C′.
pub const DEFAULT_GRID: [f64; 5] = [1.0, 1.25, 1.5, 0.75, 3.0];

/// `C′(a,b) = −a³b³ + a⁵ + b⁵ + 2a²b² − 8ab` in the ring `[a, b]`.
pub fn cprime_poly() -> MultiPoly {
    let r = PolyRing::new(["a", "b"]);
    MultiPoly::from_terms(
        &r,
        [
            (vec![3, 3], rat(-1, 1)),
            (vec![5, 0], rat(1, 1)),
            (vec![0, 5], rat(1, 1)),
            (vec![2, 2], rat(2, 1)),
            (vec![1, 1], rat(-8, 1)),
        ],
    )
    .expect("fixed arity")
}

pub fn cprime_residual(a: &Rational, b: &Rational) -> Rational {
    cprime_poly().eval_rational(&[a.clone(), b.clone()]).expect("fixed arity")
}

pub fn cprime_residual_f64(a: f64, b: f64) -> f64 {
    -a.powi(3) * b.powi(3) + a.powi(5) + b.powi(5) + 2.0 * a * a * b * b - 8.0 * a * b
}

/// Value of `t = (a³b − b³ − 2a²)/(a⁴ − ab² − 4b)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum TParam<T> {
    Value(T),
    /// Numerator and denominator both vanish.
    Indeterminate,
}

pub fn t_param(a: &Rational, b: &Rational) -> Result<TParam<Rational>> {
    let num = a * a * a * b - b * b * b - rat(2, 1) * a * a;
    let den = a * a * a * a - a * b * b - rat(4, 1) * b;
    match (num.is_zero(), den.is_zero()) {
        (true, true) => Ok(TParam::Indeterminate),
        (false, true) => Err(Error::Pole(num.to_string())),
        _ => Ok(TParam::Value(num / den)),
    }
}

pub fn t_param_f64(a: f64, b: f64) -> Result<TParam<f64>> {
    let terms_n = [a.powi(3) * b, -b.powi(3), -2.0 * a * a];
    let terms_d = [a.powi(4), -a * b * b, -4.0 * b];
    let num: f64 = terms_n.iter().sum();
    let den: f64 = terms_d.iter().sum();
    let scale = terms_n.iter().chain(&terms_d).map(|x| x.abs()).fold(1.0, f64::max);
    let eps = 1e-12 * scale;
    match (num.abs() <= eps, den.abs() <= eps) {
        (true, true) => Ok(TParam::Indeterminate),
        (false, true) => Err(Error::Pole(format!("{num:e}"))),
        _ => Ok(TParam::Value(num / den)),
    }
}

/// A point of C′ with its residual.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CurvePoint {
    pub a: f64,
    pub b: f64,
    pub residual: f64,
}

impl CurvePoint {
    /// Accepts `(a, b)` when `|C′(a,b)| ≤ 1e−10` relative to its largest monomial.
    pub fn new(a: f64, b: f64) -> Result<Self> {
        let residual = cprime_residual_f64(a, b);
        let scale = [a.powi(3) * b.powi(3), a.powi(5), b.powi(5), 2.0 * a * a * b * b, 8.0 * a * b]
            .iter()
            .map(|x| x.abs())
            .fold(1.0, f64::max);
        if !residual.is_finite() || residual.abs() > 1e-10 * scale {
            return Err(Error::Parameter(format!("({a}, {b}) is not on C′ (residual {residual:e})")));
        }
        Ok(CurvePoint { a, b, residual })
    }

    /// Finite t, rejecting singular parameters.
    pub fn t(&self) -> Result<f64> {
        match t_param_f64(self.a, self.b)? {
            TParam::Value(t) => Ok(t),
            TParam::Indeterminate => Err(Error::SingularParameter(format!(
                "t is indeterminate at ({}, {}); this is a singular point of C′",
                self.a, self.b
            ))),
        }
    }
}

/// Real roots `b` of `C′(a, ·)`, ascending; companion-matrix roots refined
/// by bisection on a small bracket.
pub fn curve_roots(a: f64) -> Result<Vec<f64>> {
    let coeffs = [a.powi(5), -8.0 * a, 2.0 * a * a, -a.powi(3), 0.0, 1.0];
    let mut out = Vec::new();
    for z in real_poly_roots(&coeffs)? {
        if z.im.abs() > 1e-7 * (1.0 + z.re.abs()) {
            continue;
        }
        let f = |b: f64| cprime_residual_f64(a, b);
        let d = 1e-6 * (1.0 + z.re.abs());
        let b = bisect(f, z.re - d, z.re + d, 1e-15).unwrap_or(z.re);
        out.push(b);
    }
    out.sort_by(f64::total_cmp);
    Ok(out)
}

/// For each grid value of a, the smallest positive root b of `C′(a, ·)`.
pub fn sample_curve_points(grid: &[f64]) -> Result<Vec<CurvePoint>> {
    grid.iter()
        .map(|&a| {
            let b = curve_roots(a)?
                .into_iter()
                .find(|&b| b > 1e-9)
                .ok_or_else(|| Error::Sampling(format!("no positive root of C′ at a = {a}")))?;
            CurvePoint::new(a, b)
        })
        .collect()
}

/// `Q(a, b)` at exact parameters, over `u_k = x_k²`.
pub fn q5_form(a: &Rational, b: &Rational) -> Result<SymmetricForm> {
    SymmetricForm::heisenberg_clifford(5, &[Rational::one(), a.clone(), b.clone()])
}

struct Symbolic {
    q: SymmetricForm,
    det_q: MultiPoly,
    minors3: Vec<MultiPoly>,
    minors4: Vec<MultiPoly>,
    /// `q_i = t u_i² + t² u_{i+1}u_{i+4} − u_{i+2}u_{i+3}` in `[t, u0..u4]`.
    quadrics: Vec<MultiPoly>,
    /// `det(∂q_i/∂z_j) = t⁵ det(∂Q_i/∂z_j)` in `[t, z0..z4]`.
    jacobian_det: MultiPoly,
}

fn symbolic() -> &'static Symbolic {
    static CELL: OnceLock<Symbolic> = OnceLock::new();
    CELL.get_or_init(|| {
        let ring = PolyRing::new(["a", "b", "u0", "u1", "u2", "u3", "u4"]);
        let inv2 = 3;
        let m = PolyMatrix::from_fn(5, 5, |i, j| {
            let k = ((i + j) * inv2) % 5;
            let d = ((i + 5 - j) * inv2) % 5;
            let u = MultiPoly::var(&ring, 2 + k);
            match d.min(5 - d) {
                0 => u.scale(&rat(2, 1)),
                1 => &MultiPoly::var(&ring, 0) * &u,
                _ => &MultiPoly::var(&ring, 1) * &u,
            }
        })
        .expect("5×5");
        let q = SymmetricForm::new(m, (2..7).collect()).expect("Q is a symmetric form");
        let det_q = mat_det(q.matrix()).expect("square");
        let minors3 = mat_minors(q.matrix(), 3).expect("3 ≤ 5");
        let minors4 = mat_minors(q.matrix(), 4).expect("4 ≤ 5");
        let tr = PolyRing::new(["t", "z0", "z1", "z2", "z3", "z4"]);
        let t = MultiPoly::var(&tr, 0);
        let z = |i: usize| MultiPoly::var(&tr, 1 + i % 5);
        let quadrics: Vec<MultiPoly> = (0..5)
            .map(|i| &(&(&t * &z(i).pow(2)) + &(&t.pow(2) * &(&z(i + 1) * &z(i + 4)))) - &(&z(i + 2) * &z(i + 3)))
            .collect();
        let jac = PolyMatrix::jacobian(&quadrics, &[1, 2, 3, 4, 5]).expect("5×5");
        let jacobian_det = mat_det(&jac).expect("square");
        Symbolic { q, det_q, minors3, minors4, quadrics, jacobian_det }
    })
}

/// `Q` with symbolic parameters: ring `[a, b, u0..u4]`.
pub fn q5_symbolic() -> &'static SymmetricForm {
    &symbolic().q
}

/// `det Q` in `[a, b, u0..u4]`.
pub fn det_q_symbolic() -> &'static MultiPoly {
    &symbolic().det_q
}

/// The quadrics `q_i` defining `E′ = C_t` in `[t, u0..u4]`.
pub fn et_quadrics() -> &'static [MultiPoly] {
    &symbolic().quadrics
}

#[derive(Clone, Debug, Serialize)]
pub struct EliminationReport {
    #[serde(serialize_with = "ser_poly")]
    pub resultant: MultiPoly,
    #[serde(serialize_with = "ser_opt_poly")]
    pub cofactor: Option<MultiPoly>,
    pub check: bool,
}

fn ser_poly<S: serde::Serializer>(p: &MultiPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

fn ser_opt_poly<S: serde::Serializer>(p: &Option<MultiPoly>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match p {
        Some(p) => s.serialize_str(&p.to_string()),
        None => s.serialize_none(),
    }
}

/// Eliminates t from the two minors `−2b²t³ + 2ab²t − 2a²` and
/// `−a²bt² − ab²t + 2a²` and divides the result by C′.
pub fn eliminate_t() -> Result<EliminationReport> {
    let r = PolyRing::new(["t", "a", "b"]);
    let (t, a, b) = (MultiPoly::var(&r, 0), MultiPoly::var(&r, 1), MultiPoly::var(&r, 2));
    let f = &(&(&b.pow(2) * &t.pow(3)).scale(&rat(-2, 1)) + &(&(&a * &b.pow(2)) * &t).scale(&rat(2, 1)))
        - &a.pow(2).scale(&rat(2, 1));
    let g = &(&(&(&a.pow(2) * &b) * &t.pow(2)).scale(&rat(-1, 1)) - &(&(&a * &b.pow(2)) * &t)) + &a.pow(2).scale(&rat(2, 1));
    let res_tab = resultant(&f, &g, 0)?;
    let ab = PolyRing::new(["a", "b"]);
    let res = res_tab.compose(&[MultiPoly::zero(&ab), MultiPoly::var(&ab, 0), MultiPoly::var(&ab, 1)])?;
    let cofactor = exact_divide(&res, &cprime_poly())?;
    Ok(EliminationReport { check: cofactor.is_some(), resultant: res, cofactor })
}

fn omega5() -> ComplexF {
    ComplexF::from_polar(1.0, 2.0 * std::f64::consts::PI / 5.0)
}

/// The 25 images of `(0, 1, t, −t, −1)` under `e₁^A e₂^B`, in `(A, B)` order.
pub fn et_orbit(t: ComplexF) -> Vec<Vec<ComplexF>> {
    let base = [ComplexF::new(0.0, 0.0), ComplexF::new(1.0, 0.0), t, -t, ComplexF::new(-1.0, 0.0)];
    let w = omega5();
    let mut out = Vec::with_capacity(25);
    for a in 0..5 {
        for b in 0..5 {
            let g = HeisenbergElement::new(5, a, b, 0).expect("5 is prime");
            let mut v = vec![ComplexF::new(0.0, 0.0); 5];
            for (j, x) in base.iter().enumerate() {
                let (target, e) = act_on_basis(1, &g, j);
                v[target] = x * w.powu(e as u32);
            }
            out.push(v);
        }
    }
    out
}

/// The exact counterpart of [`et_orbit`] over ℚ(ω₅) for rational t.
pub fn et_orbit_exact(t: &Rational) -> Vec<Vec<Cyclotomic>> {
    let c = |r: Rational| Cyclotomic::from_rational(5, r);
    let base = [c(Rational::zero()), c(Rational::one()), c(t.clone()), c(-t.clone()), c(-Rational::one())];
    let mut out = Vec::with_capacity(25);
    for a in 0..5 {
        for b in 0..5 {
            let g = HeisenbergElement::new(5, a, b, 0).expect("5 is prime");
            let mut v = vec![Cyclotomic::zero(5); 5];
            for (j, x) in base.iter().enumerate() {
                let (target, e) = act_on_basis(1, &g, j);
                v[target] = x.mul_omega_pow(e as i64);
            }
            out.push(v);
        }
    }
    out
}

fn q_numeric(a: f64, b: f64, u: &[ComplexF]) -> DMatrix<ComplexF> {
    let ca = ComplexF::new(a, 0.0);
    let cb = ComplexF::new(b, 0.0);
    DMatrix::from_fn(5, 5, |i, j| {
        let k = ((i + j) * 3) % 5;
        let d = ((i + 5 - j) * 3) % 5;
        match d.min(5 - d) {
            0 => u[k] * 2.0,
            1 => ca * u[k],
            _ => cb * u[k],
        }
    })
}

fn max_norm(v: &[ComplexF]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn normalized(v: &[ComplexF]) -> Vec<ComplexF> {
    let n = max_norm(v);
    v.iter().map(|z| z / n).collect()
}

fn det3(m: &DMatrix<ComplexF>, r: &[usize], c: &[usize]) -> ComplexF {
    let e = |i: usize, j: usize| m[(r[i], c[j])];
    e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
        + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0))
}

#[derive(Clone, Debug, Serialize)]
pub struct PointModuleReport {
    pub a: f64,
    pub b: f64,
    pub t: f64,
    pub points: usize,
    pub minors_checked: usize,
    /// Largest |3×3 minor| with u scaled to max-norm 1 and relative to max|Q|³.
    pub max_minor: f64,
    pub ranks: Vec<usize>,
    pub pass: bool,
}

/// All 3×3 minors of `Q(a,b)` at the 25 orbit points of `(0,1,t,−t,−1)`.
pub fn point_module_check(cp: &CurvePoint, tol: &Tolerances) -> Result<PointModuleReport> {
    let t = cp.t()?;
    let combos = crate::poly::matrix_combinations(5, 3);
    let per_point: Vec<(f64, usize)> = et_orbit(ComplexF::new(t, 0.0))
        .par_iter()
        .map(|u| {
            let u = normalized(u);
            let m = q_numeric(cp.a, cp.b, &u);
            let scale = m.iter().map(|z| z.norm()).fold(0.0, f64::max);
            let mut worst: f64 = 0.0;
            for r in &combos {
                for c in &combos {
                    worst = worst.max(det3(&m, r, c).norm() / scale.powi(3));
                }
            }
            (worst, numeric_rank_complex(&m, tol.rank, true).rank)
        })
        .collect();
    let max_minor = per_point.iter().map(|x| x.0).fold(0.0, f64::max);
    let ranks: Vec<usize> = per_point.iter().map(|x| x.1).collect();
    let pass = max_minor < tol.residual && ranks.iter().all(|&r| r == 2);
    Ok(PointModuleReport {
        a: cp.a,
        b: cp.b,
        t,
        points: ranks.len(),
        minors_checked: ranks.len() * combos.len() * combos.len(),
        max_minor,
        ranks,
        pass,
    })
}

/// Exact variant at rational `(a, b)` on C′: every symbolic 3×3 minor is
/// evaluated in ℚ(ω₅) at the 25 orbit points. Returns the number of
/// nonzero evaluations.
pub fn point_module_check_exact(a: &Rational, b: &Rational) -> Result<usize> {
    if !cprime_residual(a, b).is_zero() {
        return Err(Error::Parameter(format!("({a}, {b}) is not on C′")));
    }
    let t = match t_param(a, b)? {
        TParam::Value(t) => t,
        TParam::Indeterminate => {
            return Err(Error::SingularParameter(format!("t is indeterminate at ({a}, {b})")))
        }
    };
    let c = |r: &Rational| Cyclotomic::from_rational(5, r.clone());
    let mut nonzero = 0;
    for u in et_orbit_exact(&t) {
        let mut pt = vec![c(a), c(b)];
        pt.extend(u);
        for m in &symbolic().minors3 {
            if !m.eval_cyclotomic(&pt)?.is_zero() {
                nonzero += 1;
            }
        }
    }
    Ok(nonzero)
}

#[derive(Clone, Debug, Serialize)]
pub struct Stratum {
    pub label: String,
    pub expected_rank: usize,
    pub ranks: Vec<usize>,
    pub profile: RankProfile,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct StratificationReport {
    pub a: f64,
    pub b: f64,
    pub t: f64,
    pub seed: u64,
    pub strata: Vec<Stratum>,
}

fn rank_at(cp: &CurvePoint, u: &[ComplexF], tol: f64) -> Result<usize> {
    let m = q_numeric(cp.a, cp.b, &normalized(u));
    Ok(symmetric_rank_float(&m, tol)?.rank)
}

fn det_q_real(cp: &CurvePoint, u: &[f64]) -> f64 {
    let uc: Vec<ComplexF> = u.iter().map(|&x| ComplexF::new(x, 0.0)).collect();
    q_numeric(cp.a, cp.b, &uc).map(|z| z.re).determinant()
}

/// Ranks of Q over random points, points of `V(det Q)` and the orbit on E′.
pub fn stratify(cp: &CurvePoint, samples: usize, seed: u64, tol: &Tolerances) -> Result<StratificationReport> {
    let t = cp.t()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let generic: Vec<Vec<ComplexF>> = (0..samples)
        .map(|_| (0..5).map(|_| ComplexF::new(rng.random_range(-1.0..1.0), 0.0)).collect())
        .collect();
    let on_det: Vec<Vec<ComplexF>> = (0..samples)
        .map(|_| line_search_root(|u| det_q_real(cp, u), 5, &mut rng, 20).map(|v| v.into_iter().map(|x| ComplexF::new(x, 0.0)).collect()))
        .collect::<Result<_>>()?;
    let orbit = et_orbit(ComplexF::new(t, 0.0));
    let mut strata = Vec::new();
    for (label, pts, expected) in
        [("generic", &generic, 5usize), ("det Q = 0 off E'", &on_det, 4), ("E' orbit", &orbit, 2)]
    {
        let ranks = pts.par_iter().map(|u| rank_at(cp, u, tol.rank)).collect::<Result<Vec<_>>>()?;
        strata.push(Stratum {
            label: label.to_string(),
            expected_rank: expected,
            pass: ranks.iter().all(|&r| r == expected),
            ranks,
            profile: rank_profile(expected, 5)?,
        });
    }
    Ok(StratificationReport { a: cp.a, b: cp.b, t, seed, strata })
}

/// Coefficient vector of `f` (parameters fixed) over the monomials of
/// degree `d` in the remaining 5 variables, in a fixed order.
fn coeff_vector(f: &MultiPoly, fixed: &[Option<f64>], d: u32) -> Result<Vec<f64>> {
    let spec = f.specialize_f64(fixed)?;
    let monos = monomials(5, d);
    Ok(monos.iter().map(|m| spec.get(m).copied().unwrap_or(0.0)).collect())
}

fn monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for e in (0..=d).rev() {
        for mut rest in monomials(n - 1, d - e) {
            rest.insert(0, e);
            out.push(rest);
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct MinorIdealReport {
    pub deg6: bool,
    pub deg8: bool,
    pub minor3_span_dim: usize,
    pub uq_span_dim: usize,
    pub minor4_span_dim: usize,
    pub qq_span_dim: usize,
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn unit(v: &[f64]) -> Vec<f64> {
    let n = norm(v);
    v.iter().map(|x| x / n).collect()
}

fn span_dim(vs: &[Vec<f64>], tol: f64) -> usize {
    let rows: Vec<Vec<f64>> = vs.iter().filter(|v| norm(v) > 0.0).map(|v| unit(v)).collect();
    if rows.is_empty() {
        return 0;
    }
    let m = DMatrix::from_fn(rows.len(), rows[0].len(), |i, j| rows[i][j]);
    crate::linalg::numeric_rank(&m, tol).rank
}

/// Degree-6 and degree-8 comparisons of minor ideals with the ideal of E′.
pub fn minor_ideal_checks(cp: &CurvePoint, tol: &Tolerances) -> Result<MinorIdealReport> {
    let t = cp.t()?;
    minor_ideal_checks_at(cp.a, cp.b, t, tol)
}

/// As [`minor_ideal_checks`] with an explicit t; used for off-curve controls.
pub fn minor_ideal_checks_at(a: f64, b: f64, t: f64, tol: &Tolerances) -> Result<MinorIdealReport> {
    let sym = symbolic();
    let ab = [Some(a), Some(b), None, None, None, None, None];
    let tf = [Some(t), None, None, None, None, None];
    let m3 = sym.minors3.iter().map(|m| coeff_vector(m, &ab, 3)).collect::<Result<Vec<_>>>()?;
    let m4 = sym.minors4.iter().map(|m| coeff_vector(m, &ab, 4)).collect::<Result<Vec<_>>>()?;
    let tr = sym.quadrics[0].ring().clone();
    let mut uq = Vec::new();
    for q in &sym.quadrics {
        for j in 0..5 {
            uq.push(coeff_vector(&(&MultiPoly::var(&tr, 1 + j) * q), &tf, 3)?);
        }
    }
    let mut qq = Vec::new();
    for i in 0..5 {
        for j in i..5 {
            qq.push(coeff_vector(&(&sym.quadrics[i] * &sym.quadrics[j]), &tf, 4)?);
        }
    }
    Ok(MinorIdealReport {
        deg6: span_equal_f64(&m3, &uq, tol.span)?,
        deg8: span_equal_f64(&m4, &qq, tol.span)?,
        minor3_span_dim: span_dim(&m3, tol.span),
        uq_span_dim: span_dim(&uq, tol.span),
        minor4_span_dim: span_dim(&m4, tol.span),
        qq_span_dim: span_dim(&qq, tol.span),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SecantReport {
    pub t: f64,
    pub lambda: f64,
    pub residual: f64,
    pub pass: bool,
}

/// Compares `J = det(∂Q_i/∂z_j)` for `Q_i = z_i² + t z_{i+1}z_{i+4} − (1/t) z_{i+2}z_{i+3}`
/// with `det Q(a, b)` under `u = z`: the best λ with `J ≈ λ·det Q` and the
/// relative residual `‖J − λ det Q‖ / ‖J‖`.
pub fn secant_check(cp: &CurvePoint, tol: f64) -> Result<SecantReport> {
    let t = cp.t()?;
    secant_check_at(cp.a, cp.b, t, tol)
}

pub fn secant_check_at(a: f64, b: f64, t: f64, tol: f64) -> Result<SecantReport> {
    if t == 0.0 {
        return Err(Error::SingularParameter("t = 0".into()));
    }
    let sym = symbolic();
    let j: Vec<f64> = coeff_vector(&sym.jacobian_det, &[Some(t), None, None, None, None, None], 5)?
        .into_iter()
        .map(|x| x / t.powi(5))
        .collect();
    let d = coeff_vector(&sym.det_q, &[Some(a), Some(b), None, None, None, None, None], 5)?;
    let dd: f64 = d.iter().map(|x| x * x).sum();
    if dd == 0.0 {
        return Err(Error::SingularParameter("det Q vanishes identically".into()));
    }
    let lambda = j.iter().zip(&d).map(|(x, y)| x * y).sum::<f64>() / dd;
    let jn = norm(&j);
    let r: Vec<f64> = j.iter().zip(&d).map(|(x, y)| x - lambda * y).collect();
    let residual = norm(&r) / jn.max(f64::MIN_POSITIVE);
    Ok(SecantReport { t, lambda, residual, pass: residual < tol && lambda != 0.0 })
}

/// Whether every `u_j q_i` lies in the span of the 3×3 minors; a cheaper
/// one-sided variant of the degree-6 check.
pub fn uq_in_minor_span(cp: &CurvePoint, tol: &Tolerances) -> Result<bool> {
    let t = cp.t()?;
    let sym = symbolic();
    let ab = [Some(cp.a), Some(cp.b), None, None, None, None, None];
    let m3 = sym.minors3.iter().map(|m| coeff_vector(m, &ab, 3)).collect::<Result<Vec<_>>>()?;
    let tr = sym.quadrics[0].ring().clone();
    for q in &sym.quadrics {
        for j in 0..5 {
            let v = coeff_vector(&(&MultiPoly::var(&tr, 1 + j) * q), &[Some(t), None, None, None, None, None], 3)?;
            if !span_membership_f64(&m3, &v, tol.span)?.member {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Projective parameters `(a₀ : … : a_{(p−1)/2})` of an order-2 Clifford algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct OrderTwoParams {
    pub p: usize,
    pub a: Vec<Rational>,
}

impl OrderTwoParams {
    pub fn new(p: usize, a: Vec<Rational>) -> Result<Self> {
        if !crate::arith::is_odd_prime(p as u64) {
            return Err(Error::Modulus(p as u64));
        }
        if a.len() != (p - 1) / 2 + 1 {
            return Err(Error::Arity { expected: (p - 1) / 2 + 1, got: a.len() });
        }
        if a.iter().all(Zero::is_zero) {
            return Err(Error::Parameter("all parameters vanish".into()));
        }
        Ok(OrderTwoParams { p, a })
    }
}

fn binom2(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

/// One-dimensional representations `x_j ↦ y_j` with `y₀ = 1`, each checked
/// exactly against every relation.
pub fn onedim_reps(params: &OrderTwoParams) -> Result<Vec<Vec<Cyclotomic>>> {
    let p = params.p;
    let Some(i) = (1..params.a.len()).find(|&i| !params.a[i].is_zero()) else {
        return Err(Error::Parameter("some a_i with i ≥ 1 must be nonzero".into()));
    };
    if params.a[0].is_zero() {
        // Every x_k² is then forced to vanish.
        return Ok(Vec::new());
    }
    let c = &params.a[i] / &params.a[0];
    let two = rat(2, 1);
    if num_traits::pow(c.clone(), p) != num_traits::pow(two.clone(), p) {
        return Ok(Vec::new());
    }
    let pres = make_presentation(&PresentationSpec::CliffordC { p, a: params.a.clone() })?;
    let ratio = &c / &two;
    let mut out = Vec::new();
    for m in 0..p {
        let mut y = vec![Cyclotomic::zero(p); p];
        for k in 0..p {
            let scale = num_traits::pow(ratio.clone(), binom2(k));
            y[(k * i) % p] = Cyclotomic::omega_pow(p, (m * k) as i64).scale(&scale);
        }
        let ok = pres.relations().iter().all(|r| {
            r.terms.iter().fold(Cyclotomic::zero(p), |acc, (w, coef)| {
                let l = word_letters(*w, 2, p);
                &acc + &(coef * &(&y[l[0]] * &y[l[1]]))
            })
            .is_zero()
        });
        if ok {
            out.push(y);
        }
    }
    Ok(out)
}
