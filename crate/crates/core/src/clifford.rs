//! Graded Clifford algebras `x_i x_j + x_j x_i = M_{ij}` for symmetric
//! matrices `M` of central degree-2 elements.

use nalgebra::{DMatrix, SymmetricEigen};
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{ComplexF, Rational, RationalField};
use crate::error::{Error, Result};
use crate::linalg::{line_search_root, exact_rank, numeric_rank_complex, RankReport};
use crate::poly::{mat_det, MultiPoly, PolyMatrix, PolyRing};

/// Symmetric matrix whose entries are linear forms in the central variables
/// `y_vars` (each of x-degree 2), with coefficients that may involve the
/// parameter variables `param_vars`.
#[derive(Clone, Debug)]
pub struct SymmetricForm {
    matrix: PolyMatrix,
    y_vars: Vec<usize>,
    param_vars: Vec<usize>,
}

impl SymmetricForm {
    pub fn new(matrix: PolyMatrix, y_vars: Vec<usize>) -> Result<Self> {
        if matrix.rows() != matrix.cols() {
            return Err(Error::Dimension("a symmetric form must be square".into()));
        }
        if !matrix.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let nvars = matrix.ring().nvars();
        if y_vars.iter().any(|&v| v >= nvars) {
            return Err(Error::OutOfRange("central variable index".into()));
        }
        for e in matrix.entries() {
            if !e.is_zero() && e.homogeneous_degree_in(&y_vars) != Some(1) {
                return Err(Error::Degree(format!("entry {e} is not linear in the central variables")));
            }
        }
        if mat_det(&matrix)?.is_zero() {
            return Err(Error::SingularParameter("det(M) vanishes identically".into()));
        }
        let param_vars = (0..nvars).filter(|v| !y_vars.contains(v)).collect();
        Ok(SymmetricForm { matrix, y_vars, param_vars })
    }

    /// `diag(2y_1, …, 2y_n)`.
    pub fn diagonal(n: usize) -> Result<Self> {
        let ring = PolyRing::indexed("y", n);
        let m = PolyMatrix::from_fn(n, n, |i, j| {
            if i == j {
                MultiPoly::var(&ring, i).scale(&Rational::from_integer(2.into()))
            } else {
                MultiPoly::zero(&ring)
            }
        })?;
        Self::new(m, (0..n).collect())
    }

    /// The three-generator example `yz + zy = t x²` and its orbit, over
    /// central variables `(x², y², z²)`.
    pub fn three_dim_example(t: &Rational) -> Result<Self> {
        let ring = PolyRing::new(["x2", "y2", "z2"]);
        let v = |i: usize| MultiPoly::var(&ring, i);
        let two = Rational::from_integer(2.into());
        let m = PolyMatrix::new(
            3,
            3,
            vec![
                v(0).scale(&two),
                v(2).scale(t),
                v(1).scale(t),
                v(2).scale(t),
                v(1).scale(&two),
                v(0).scale(t),
                v(1).scale(t),
                v(0).scale(t),
                v(2).scale(&two),
            ],
        )?;
        Self::new(m, vec![0, 1, 2])
    }

    /// Form of the Heisenberg–Clifford relations `a₀{x_{k+i}, x_{k−i}} = a_i x_k²`
    /// over `u_k = x_k²`: `M_kk = 2u_k` and `M_{k+i,k−i} = (a_i/a₀) u_k`.
    pub fn heisenberg_clifford(p: usize, a: &[Rational]) -> Result<Self> {
        let half = (p - 1) / 2;
        if a.len() != half + 1 {
            return Err(Error::Arity { expected: half + 1, got: a.len() });
        }
        if a[0].is_zero() {
            return Err(Error::SingularParameter("a₀ = 0".into()));
        }
        let ring = PolyRing::indexed("u", p);
        let inv2 = p.div_ceil(2);
        let m = PolyMatrix::from_fn(p, p, |i, j| {
            let k = ((i + j) * inv2) % p;
            let d = ((i + p - j) * inv2) % p;
            let idx = d.min(p - d);
            let c = if idx == 0 { Rational::from_integer(2.into()) } else { &a[idx] / &a[0] };
            MultiPoly::var(&ring, k).scale(&c)
        })?;
        Self::new(m, (0..p).collect())
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    pub fn y_vars(&self) -> &[usize] {
        &self.y_vars
    }

    pub fn param_vars(&self) -> &[usize] {
        &self.param_vars
    }

    fn full_point<T: Clone>(&self, params: &[T], y: &[T], zero: T) -> Result<Vec<T>> {
        if y.len() != self.y_vars.len() {
            return Err(Error::Arity { expected: self.y_vars.len(), got: y.len() });
        }
        if params.len() != self.param_vars.len() {
            return Err(Error::Arity { expected: self.param_vars.len(), got: params.len() });
        }
        let mut pt = vec![zero; self.matrix.ring().nvars()];
        for (v, x) in self.y_vars.iter().zip(y) {
            pt[*v] = x.clone();
        }
        for (v, x) in self.param_vars.iter().zip(params) {
            pt[*v] = x.clone();
        }
        Ok(pt)
    }

    pub fn specialize_rational(&self, params: &[Rational], y: &[Rational]) -> Result<Vec<Vec<Rational>>> {
        self.matrix.eval_rational(&self.full_point(params, y, Rational::zero())?)
    }

    pub fn specialize_complex(&self, params: &[ComplexF], y: &[ComplexF]) -> Result<DMatrix<ComplexF>> {
        self.matrix.eval_complex(&self.full_point(params, y, ComplexF::new(0.0, 0.0))?)
    }
}

/// Reads `M` off relations of the shape `c·(x_u x_v + x_v x_u) + Σ d_k x_k²`
/// (u ≠ v), giving `M_uv = −(1/c) Σ d_k u_k` and `M_ii = 2u_i`.
pub fn form_from_presentation(pres: &crate::gradedalg::Presentation) -> Result<SymmetricForm> {
    use crate::gradedalg::word_letters;
    let p = pres.prime();
    let ring = PolyRing::indexed("u", p);
    let mut entries: Vec<Option<MultiPoly>> = vec![None; p * p];
    for i in 0..p {
        entries[i * p + i] = Some(MultiPoly::var(&ring, i).scale(&Rational::from_integer(2.into())));
    }
    let bad = || Error::Parameter("relation is not of anticommutator form".into());
    for rel in pres.relations() {
        if rel.degree != 2 {
            return Err(bad());
        }
        let mut anti: Option<(usize, usize, Rational)> = None;
        let mut rhs = MultiPoly::zero(&ring);
        for (w, c) in &rel.terms {
            let c = c.as_rational().ok_or_else(bad)?.clone();
            let l = word_letters(*w, 2, p);
            if l[0] == l[1] {
                rhs = &rhs - &MultiPoly::var(&ring, l[0]).scale(&c);
            } else {
                let (u, v) = (l[0].min(l[1]), l[0].max(l[1]));
                match &anti {
                    None => anti = Some((u, v, c)),
                    Some((u0, v0, c0)) if (*u0, *v0) == (u, v) && *c0 == c => {}
                    _ => return Err(bad()),
                }
            }
        }
        let (u, v, c) = anti.ok_or_else(bad)?;
        let entry = rhs.scale(&c.recip());
        if entries[u * p + v].is_some() {
            return Err(Error::Parameter(format!("two relations for {{x{u}, x{v}}}")));
        }
        entries[u * p + v] = Some(entry.clone());
        entries[v * p + u] = Some(entry);
    }
    let m = PolyMatrix::new(p, p, entries.into_iter().map(|e| e.unwrap_or_else(|| MultiPoly::zero(&ring))).collect())?;
    SymmetricForm::new(m, (0..p).collect())
}

/// Rank of an exact symmetric matrix.
pub fn symmetric_rank_exact(m: &[Vec<Rational>]) -> Result<usize> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension("matrix is not square".into()));
    }
    if (0..n).any(|i| (0..i).any(|j| m[i][j] != m[j][i])) {
        return Err(Error::NotSymmetric);
    }
    exact_rank(&RationalField, m)
}

/// Numeric rank of a complex symmetric matrix: singular values above
/// `tol·σ_max`.
pub fn symmetric_rank_float(m: &DMatrix<ComplexF>, tol: f64) -> Result<RankReport> {
    if !m.is_square() {
        return Err(Error::Dimension("matrix is not square".into()));
    }
    let scale = m.iter().map(|z| z.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    if (m - m.transpose()).iter().any(|z| z.norm() > 1e-12 * scale) {
        return Err(Error::NotSymmetric);
    }
    Ok(numeric_rank_complex(m, tol, true))
}

/// Ranks of `M` at `samples` real points of `V(det M)`, each found on a
/// random line in the central variables.
pub fn det_zero_ranks(form: &SymmetricForm, params: &[f64], samples: usize, seed: u64, tol: f64) -> Result<Vec<RankReport>> {
    let cparams: Vec<ComplexF> = params.iter().map(|&x| ComplexF::new(x, 0.0)).collect();
    let complex = |y: &[f64]| -> Result<DMatrix<ComplexF>> {
        let cy: Vec<ComplexF> = y.iter().map(|&x| ComplexF::new(x, 0.0)).collect();
        form.specialize_complex(&cparams, &cy)
    };
    // Fail early on arity before sampling.
    complex(&vec![0.0; form.size()])?;
    let det = |y: &[f64]| complex(y).map(|m| m.map(|z| z.re).determinant()).unwrap_or(f64::NAN);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            let y = line_search_root(det, form.size(), &mut rng, 20)?;
            symmetric_rank_float(&complex(&y)?, tol)
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SimpleProfile {
    pub count: usize,
    pub dim: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FatProfile {
    pub count: usize,
    pub multiplicity: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RankProfile {
    pub rank: usize,
    pub simple: SimpleProfile,
    /// `None` at rank 0.
    pub fat: Option<FatProfile>,
}

/// Simple representations over a point where `M` has rank k.
pub fn simple_profile(k: usize, n: usize) -> Result<SimpleProfile> {
    if k > n {
        return Err(Error::OutOfRange(format!("rank {k} of a {n}×{n} form")));
    }
    Ok(if k % 2 == 1 {
        SimpleProfile { count: 2, dim: 1 << ((k - 1) / 2) }
    } else {
        SimpleProfile { count: 1, dim: 1 << (k / 2) }
    })
}

/// Fat points of `Proj A(M)` over a point of rank k.
pub fn fat_profile(k: usize) -> Result<FatProfile> {
    match k {
        0 => Err(Error::OutOfRange("rank 0 carries no graded point".into())),
        k if k % 2 == 1 => Ok(FatProfile { count: 1, multiplicity: 1 << ((k - 1) / 2) }),
        k => Ok(FatProfile { count: 2, multiplicity: 1 << (k / 2 - 1) }),
    }
}

pub fn rank_profile(k: usize, n: usize) -> Result<RankProfile> {
    Ok(RankProfile { rank: k, simple: simple_profile(k, n)?, fat: if k == 0 { None } else { Some(fat_profile(k)?) } })
}

/// One simple representation: matrices `X_1 … X_n` and the sign of the top
/// Clifford product that labels it.
#[derive(Clone, Debug)]
pub struct CliffordRep {
    pub generators: Vec<DMatrix<ComplexF>>,
    pub sign: i8,
}

fn kron(a: &DMatrix<ComplexF>, b: &DMatrix<ComplexF>) -> DMatrix<ComplexF> {
    a.kronecker(b)
}

fn pauli() -> [DMatrix<ComplexF>; 4] {
    let c = |re: f64, im: f64| ComplexF::new(re, im);
    let o = c(0.0, 0.0);
    [
        DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), o, o, c(1.0, 0.0)]),
        DMatrix::from_row_slice(2, 2, &[o, c(1.0, 0.0), c(1.0, 0.0), o]),
        DMatrix::from_row_slice(2, 2, &[o, c(0.0, -1.0), c(0.0, 1.0), o]),
        DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), o, o, c(-1.0, 0.0)]),
    ]
}

/// `k` pairwise anticommuting matrices squaring to the identity, of size
/// `2^{⌊k/2⌋}`; for odd k the last one is `sign·i^m Γ_1⋯Γ_{2m}`.
pub fn gamma_matrices(k: usize, sign: i8) -> Vec<DMatrix<ComplexF>> {
    let m = k / 2;
    let [id, x, y, z] = pauli();
    let mut out = Vec::with_capacity(k);
    for j in 0..m {
        for s in [&x, &y] {
            let mut g = DMatrix::from_element(1, 1, ComplexF::new(1.0, 0.0));
            for q in 0..m {
                let f = if q < j {
                    &z
                } else if q == j {
                    s
                } else {
                    &id
                };
                g = kron(&g, f);
            }
            out.push(g);
        }
    }
    if k % 2 == 1 {
        let dim = 1usize << m;
        let mut prod = DMatrix::<ComplexF>::identity(dim, dim);
        for g in &out {
            prod = &prod * g;
        }
        let phase = ComplexF::new(0.0, 1.0).powu(m as u32) * sign as f64;
        out.push(prod * phase);
    }
    out
}

/// Takagi factorization `M = Σ σ_k u_k u_kᵀ`, σ descending, from the real
/// symmetric embedding `[[B, C], [C, −B]]` of `M = B + iC`.
pub fn takagi(m: &DMatrix<ComplexF>) -> (Vec<f64>, Vec<nalgebra::DVector<ComplexF>>) {
    let n = m.nrows();
    let mut k = DMatrix::<f64>::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let z = m[(i, j)];
            k[(i, j)] = z.re;
            k[(i, j + n)] = z.im;
            k[(i + n, j)] = z.im;
            k[(i + n, j + n)] = -z.re;
        }
    }
    let eig = SymmetricEigen::new(k);
    let mut idx: Vec<usize> = (0..2 * n).collect();
    idx.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let mut sigmas = Vec::with_capacity(n);
    let mut vecs = Vec::with_capacity(n);
    for &c in idx.iter().take(n) {
        sigmas.push(eig.eigenvalues[c].max(0.0));
        let col = eig.eigenvectors.column(c);
        vecs.push(nalgebra::DVector::from_fn(n, |i, _| ComplexF::new(col[i], col[i + n])));
    }
    (sigmas, vecs)
}

/// Simple representations at a complex symmetric matrix of the given rank:
/// one tuple for even rank, two (opposite top-product signs) for odd rank.
pub fn build_reps(m: &DMatrix<ComplexF>, rank: usize, tol: f64) -> Result<Vec<CliffordRep>> {
    let n = m.nrows();
    if !m.is_square() {
        return Err(Error::Dimension("matrix is not square".into()));
    }
    if rank > n {
        return Err(Error::OutOfRange(format!("rank {rank} of a {n}×{n} matrix")));
    }
    let scale = m.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if (m - m.transpose()).iter().any(|z| z.norm() > 1e-12 * scale.max(f64::MIN_POSITIVE)) {
        return Err(Error::NotSymmetric);
    }
    let (sigmas, vecs) = takagi(m);
    let smax = sigmas.first().copied().unwrap_or(0.0);
    if rank > 0 && sigmas[rank - 1] <= tol * smax {
        return Err(Error::Conditioning(format!(
            "singular value {:.3e} counted in rank {rank} is below {:.3e}",
            sigmas[rank - 1],
            tol * smax
        )));
    }
    // M = 2·C·Cᵀ with C = U·diag(√(σ/2)).
    let c = DMatrix::<ComplexF>::from_fn(n, rank, |i, a| vecs[a][i] * (sigmas[a] / 2.0).sqrt());
    let signs: &[i8] = if rank % 2 == 1 { &[1, -1] } else { &[1] };
    let dim = 1usize << (rank / 2);
    Ok(signs
        .iter()
        .map(|&sign| {
            let gammas = gamma_matrices(rank, sign);
            let generators = (0..n)
                .map(|i| {
                    let mut x = DMatrix::<ComplexF>::zeros(dim, dim);
                    for (a, g) in gammas.iter().enumerate() {
                        x += g * c[(i, a)];
                    }
                    x
                })
                .collect();
            CliffordRep { generators, sign }
        })
        .collect())
}

/// `max_{i,j} ‖X_iX_j + X_jX_i − M_ij·Id‖_F / (√dim · max(1, max|M|))`.
pub fn anticommutation_residual(rep: &CliffordRep, m: &DMatrix<ComplexF>) -> f64 {
    let n = m.nrows();
    let dim = rep.generators.first().map_or(1, |g| g.nrows());
    let id = DMatrix::<ComplexF>::identity(dim, dim);
    let scale = m.iter().map(|z| z.norm()).fold(1.0, f64::max) * (dim as f64).sqrt();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            let (xi, xj) = (&rep.generators[i], &rep.generators[j]);
            let r = xi * xj + xj * xi - &id * m[(i, j)];
            worst = worst.max(r.norm() / scale);
        }
    }
    worst
}

#[derive(Clone, Debug, Serialize)]
pub struct CenterData {
    #[serde(serialize_with = "ser_poly")]
    pub det: MultiPoly,
    /// Degree of det M in the generators `x_i` (each central variable has degree 2).
    pub det_degree: u32,
    pub n_odd: bool,
    pub description: String,
}

fn ser_poly<S: serde::Serializer>(p: &MultiPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

pub fn center_data(form: &SymmetricForm) -> Result<CenterData> {
    let det = mat_det(form.matrix())?;
    let ydeg = det
        .homogeneous_degree_in(form.y_vars())
        .ok_or_else(|| Error::Degree("det(M) is not homogeneous in the central variables".into()))?;
    let n = form.size();
    let det_degree = 2 * ydeg;
    let description = if n % 2 == 1 {
        format!("C[y_1..y_{n}, g] with deg g = {n} and g^2 = det(M)")
    } else {
        format!("C[y_1..y_{n}]")
    };
    Ok(CenterData { det, det_degree, n_odd: n % 2 == 1, description })
}
