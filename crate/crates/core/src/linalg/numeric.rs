use nalgebra::DMatrix;
use serde::Serialize;

use crate::arith::ComplexF;
use crate::error::{Error, Result};

/// Default relative rank tolerance.
pub const DEFAULT_RANK_TOL: f64 = 1e-8;

/// A numeric rank decision together with how far it sits from the threshold.
#[derive(Clone, Debug, Serialize)]
pub struct RankReport {
    pub rank: usize,
    pub threshold: f64,
    pub singular_values: Vec<f64>,
    /// σ_rank / threshold; large means the last kept value is safely nonzero.
    pub kept_margin: f64,
    /// threshold / σ_{rank+1}; large means the first dropped value is safely zero.
    pub dropped_margin: f64,
}

impl RankReport {
    fn from_singular_values(mut sv: Vec<f64>, threshold: f64) -> Self {
        sv.sort_by(|a, b| b.total_cmp(a));
        let rank = sv.iter().filter(|&&s| s > threshold).count();
        let kept_margin = if rank == 0 { f64::INFINITY } else { sv[rank - 1] / threshold };
        let dropped_margin = match sv.get(rank) {
            Some(&s) if s > 0.0 => threshold / s,
            _ => f64::INFINITY,
        };
        RankReport { rank, threshold, singular_values: sv, kept_margin, dropped_margin }
    }
}

/// Rank of a real matrix: singular values above `rel_tol·σ_max`.
pub fn numeric_rank(m: &DMatrix<f64>, rel_tol: f64) -> RankReport {
    if m.is_empty() {
        return RankReport::from_singular_values(Vec::new(), rel_tol);
    }
    let sv: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    let max = sv.iter().copied().fold(0.0, f64::max);
    RankReport::from_singular_values(sv, rel_tol * max.max(f64::MIN_POSITIVE))
}

/// Rank of a complex matrix. With `relative` the threshold is `tol·σ_max`,
/// otherwise `tol` itself.
pub fn numeric_rank_complex(m: &DMatrix<ComplexF>, tol: f64, relative: bool) -> RankReport {
    if m.is_empty() {
        return RankReport::from_singular_values(Vec::new(), tol);
    }
    let sv: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    let max = sv.iter().copied().fold(0.0, f64::max);
    let threshold = if relative { tol * max.max(f64::MIN_POSITIVE) } else { tol };
    RankReport::from_singular_values(sv, threshold)
}

/// Mutual span containment of two families of real vectors.
pub fn span_equal_f64(a: &[Vec<f64>], b: &[Vec<f64>], tol: f64) -> Result<bool> {
    for v in a {
        if !super::span_membership_f64(b, v, tol)?.member {
            return Ok(false);
        }
    }
    for v in b {
        if !super::span_membership_f64(a, v, tol)?.member {
            return Ok(false);
        }
    }
    Ok(true)
}

fn horner(coeffs: &[f64], z: ComplexF) -> (ComplexF, ComplexF) {
    let mut val = ComplexF::new(0.0, 0.0);
    let mut der = ComplexF::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        der = der * z + val;
        val = val * z + c;
    }
    (val, der)
}

/// All complex roots of `Σ coeffs[k] x^k` (real coefficients), from the
/// companion matrix eigenvalues followed by a few Newton steps.
pub fn real_poly_roots(coeffs: &[f64]) -> Result<Vec<ComplexF>> {
    let mut c = coeffs.to_vec();
    while c.last().is_some_and(|x| *x == 0.0) {
        c.pop();
    }
    if c.iter().any(|x| !x.is_finite()) {
        return Err(Error::Parameter("non-finite polynomial coefficient".into()));
    }
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = c[n];
    let mut comp = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        comp[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        comp[(i, n - 1)] = -c[i] / lead;
    }
    let mut roots: Vec<ComplexF> = comp.complex_eigenvalues().iter().copied().collect();
    for r in roots.iter_mut() {
        for _ in 0..4 {
            let (v, d) = horner(&c, *r);
            if d.norm() == 0.0 {
                break;
            }
            let step = v / d;
            if !step.re.is_finite() || !step.im.is_finite() {
                break;
            }
            let candidate = *r - step;
            if horner(&c, candidate).0.norm() <= v.norm() {
                *r = candidate;
            } else {
                break;
            }
        }
    }
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(roots)
}

/// Bisection on a sign change of `f` in `[lo, hi]`.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> Option<f64> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Some(lo);
    }
    if fhi == 0.0 {
        return Some(hi);
    }
    if flo.signum() == fhi.signum() {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 || (hi - lo).abs() < tol {
            return Some(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// A real zero of `f` on a random line through the cube `[−1, 1]^dim`,
/// located by a sign scan over `s ∈ [−4, 4]` followed by bisection.
pub fn line_search_root(
    f: impl Fn(&[f64]) -> f64,
    dim: usize,
    rng: &mut impl rand::Rng,
    retries: usize,
) -> Result<Vec<f64>> {
    const STEPS: usize = 400;
    let (lo, hi) = (-4.0, 4.0);
    let h = (hi - lo) / STEPS as f64;
    for _ in 0..retries {
        let p0: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();
        let dir: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();
        let at = |s: f64| -> Vec<f64> { p0.iter().zip(&dir).map(|(x, d)| x + s * d).collect() };
        let g = |s: f64| f(&at(s));
        let mut prev = g(lo);
        for k in 1..=STEPS {
            let s1 = lo + k as f64 * h;
            let cur = g(s1);
            if prev.signum() != cur.signum() {
                if let Some(s) = bisect(g, s1 - h, s1, 1e-15) {
                    return Ok(at(s));
                }
            }
            prev = cur;
        }
    }
    Err(Error::Sampling(format!("no sign change found on {retries} random lines")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_identity_and_outer_product() {
        assert_eq!(numeric_rank(&DMatrix::identity(5, 5), 1e-8).rank, 5);
        let v = nalgebra::DVector::from_vec(vec![1.0, 2.0, 3.0]);
        let outer = &v * v.transpose();
        let r = numeric_rank(&outer, 1e-8);
        assert_eq!(r.rank, 1);
        assert!(r.kept_margin > 1e6 && r.dropped_margin > 1e6);
    }

    #[test]
    fn roots_of_cubic() {
        // (x-1)(x-2)(x+3) = x^3 - 7x + 6
        let r = real_poly_roots(&[6.0, -7.0, 0.0, 1.0]).unwrap();
        let re: Vec<f64> = r.iter().map(|z| z.re).collect();
        for (got, want) in re.iter().zip([-3.0, 1.0, 2.0]) {
            assert!((got - want).abs() < 1e-12);
        }
        assert!(r.iter().all(|z| z.im.abs() < 1e-12));
    }

    #[test]
    fn complex_roots_of_x2_plus_1() {
        let r = real_poly_roots(&[1.0, 0.0, 1.0]).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|z| (z.im.abs() - 1.0).abs() < 1e-12 && z.re.abs() < 1e-12));
    }

    #[test]
    fn bisection_finds_sqrt2() {
        let x = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-15).unwrap();
        assert!((x - 2f64.sqrt()).abs() < 1e-14);
        assert!(bisect(|x| x * x + 1.0, -1.0, 1.0, 1e-12).is_none());
    }
}
