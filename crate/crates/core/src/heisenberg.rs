//! The Heisenberg group `H_p` of order p³ and its representations.
//!
//! Elements are kept in the normal form `e₁^a e₂^b z^k` with `e₁e₂ = z e₂e₁`
//! and `z` central. In the simple representation `V_i` the group acts on the
//! basis `x_0 … x_{p−1}` by `e₁·x_j = x_{j−1}`, `e₂·x_j = ω^{ij} x_j` and
//! `z·x_j = ω^i x_j`.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::arith::{is_odd_prime, Cyclotomic};
use crate::error::{Error, Result};

/// Square matrix over ℚ(ω_p), row-major.
pub type CycMatrix = Vec<Vec<Cyclotomic>>;

fn check_prime(p: usize) -> Result<()> {
    if is_odd_prime(p as u64) {
        Ok(())
    } else {
        Err(Error::Modulus(p as u64))
    }
}

fn md(x: i64, p: usize) -> usize {
    x.rem_euclid(p as i64) as usize
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HeisenbergElement {
    p: usize,
    a: usize,
    b: usize,
    k: usize,
}

impl HeisenbergElement {
    /// `e₁^a e₂^b z^k`, exponents reduced mod p.
    pub fn new(p: usize, a: i64, b: i64, k: i64) -> Result<Self> {
        check_prime(p)?;
        Ok(HeisenbergElement { p, a: md(a, p), b: md(b, p), k: md(k, p) })
    }

    fn raw(p: usize, a: i64, b: i64, k: i64) -> Self {
        HeisenbergElement { p, a: md(a, p), b: md(b, p), k: md(k, p) }
    }

    pub fn identity(p: usize) -> Result<Self> {
        Self::new(p, 0, 0, 0)
    }

    pub fn e1(p: usize) -> Result<Self> {
        Self::new(p, 1, 0, 0)
    }

    pub fn e2(p: usize) -> Result<Self> {
        Self::new(p, 0, 1, 0)
    }

    pub fn z(p: usize) -> Result<Self> {
        Self::new(p, 0, 0, 1)
    }

    pub fn prime(&self) -> usize {
        self.p
    }

    /// `(a, b, k)`.
    pub fn exponents(&self) -> (usize, usize, usize) {
        (self.a, self.b, self.k)
    }

    pub fn is_identity(&self) -> bool {
        self.a == 0 && self.b == 0 && self.k == 0
    }

    pub fn is_central(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn inverse(&self) -> Self {
        let (a, b, k) = (self.a as i64, self.b as i64, self.k as i64);
        Self::raw(self.p, -a, -b, -k - a * b)
    }

    pub fn pow(&self, n: u64) -> Self {
        let mut acc = Self::raw(self.p, 0, 0, 0);
        for _ in 0..n % self.p as u64 {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    fn mul_unchecked(&self, h: &Self) -> Self {
        let (a, b, k) = (self.a as i64, self.b as i64, self.k as i64);
        let (c, d, l) = (h.a as i64, h.b as i64, h.k as i64);
        Self::raw(self.p, a + c, b + d, k + l - b * c)
    }

    /// Every element of the group.
    pub fn all(p: usize) -> Result<Vec<Self>> {
        check_prime(p)?;
        let q = p as i64;
        let mut out = Vec::with_capacity(p * p * p);
        for a in 0..q {
            for b in 0..q {
                for k in 0..q {
                    out.push(Self::raw(p, a, b, k));
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for HeisenbergElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e1^{} e2^{} z^{}", self.a, self.b, self.k)
    }
}

/// Product in normal form.
pub fn h_mul(g: &HeisenbergElement, h: &HeisenbergElement) -> Result<HeisenbergElement> {
    if g.p != h.p {
        return Err(Error::PrimeMismatch(g.p, h.p));
    }
    Ok(g.mul_unchecked(h))
}

/// An irreducible representation of `H_p`: one of the p-dimensional `V_i`
/// (central character `z ↦ ω^i`) or a linear character `χ_{a,b}` trivial on z.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SimpleRep {
    Full { p: usize, index: usize },
    Linear { p: usize, a: usize, b: usize },
}

impl SimpleRep {
    pub fn new(p: usize, index: i64) -> Result<Self> {
        check_prime(p)?;
        let i = md(index, p);
        if i == 0 {
            return Err(Error::Parameter(format!("representation index {index} is divisible by {p}")));
        }
        Ok(SimpleRep::Full { p, index: i })
    }

    pub fn linear(p: usize, a: i64, b: i64) -> Result<Self> {
        check_prime(p)?;
        Ok(SimpleRep::Linear { p, a: md(a, p), b: md(b, p) })
    }

    pub fn prime(&self) -> usize {
        match *self {
            SimpleRep::Full { p, .. } | SimpleRep::Linear { p, .. } => p,
        }
    }

    pub fn dim(&self) -> usize {
        match *self {
            SimpleRep::Full { p, .. } => p,
            SimpleRep::Linear { .. } => 1,
        }
    }

    /// Index i of `V_i` (0 for linear characters).
    pub fn index(&self) -> usize {
        match *self {
            SimpleRep::Full { index, .. } => index,
            SimpleRep::Linear { .. } => 0,
        }
    }

    /// The dual representation; `V_i* ≅ V_{p−i}` in the same basis.
    pub fn dual(&self) -> Self {
        match *self {
            SimpleRep::Full { p, index } => SimpleRep::Full { p, index: p - index },
            SimpleRep::Linear { p, a, b } => SimpleRep::Linear { p, a: (p - a) % p, b: (p - b) % p },
        }
    }

    /// All p² + p − 1 irreducibles: the `V_i` first, then the `χ_{a,b}`.
    pub fn all(p: usize) -> Result<Vec<Self>> {
        check_prime(p)?;
        let mut out: Vec<Self> = (1..p).map(|i| SimpleRep::Full { p, index: i }).collect();
        for a in 0..p {
            for b in 0..p {
                out.push(SimpleRep::Linear { p, a, b });
            }
        }
        Ok(out)
    }
}

fn check_same(rep: &SimpleRep, g: &HeisenbergElement) -> Result<()> {
    if rep.prime() != g.p {
        Err(Error::PrimeMismatch(rep.prime(), g.p))
    } else {
        Ok(())
    }
}

/// Image of `x_j` under `g` in `V_i`: `(j − a, exponent of ω)`.
pub fn act_on_basis(index: usize, g: &HeisenbergElement, j: usize) -> (usize, usize) {
    let p = g.p;
    let target = (j + p - g.a) % p;
    let e = (index * ((g.b * j + g.k) % p)) % p;
    (target, e)
}

/// `ρ(g)`; column j holds the image of basis vector j.
pub fn rep_matrix(rep: &SimpleRep, g: &HeisenbergElement) -> Result<CycMatrix> {
    check_same(rep, g)?;
    let p = g.p;
    match *rep {
        SimpleRep::Full { index, .. } => {
            let mut m = vec![vec![Cyclotomic::zero(p); p]; p];
            for j in 0..p {
                let (t, e) = act_on_basis(index, g, j);
                m[t][j] = Cyclotomic::omega_pow(p, e as i64);
            }
            Ok(m)
        }
        SimpleRep::Linear { a, b, .. } => Ok(vec![vec![Cyclotomic::omega_pow(p, (a * g.a + b * g.b) as i64)]]),
    }
}

pub fn cyc_mat_mul(x: &CycMatrix, y: &CycMatrix) -> CycMatrix {
    let p = x[0][0].prime();
    let n = x.len();
    let m = y[0].len();
    let mut out = vec![vec![Cyclotomic::zero(p); m]; n];
    for i in 0..n {
        for (k, yk) in y.iter().enumerate() {
            if x[i][k].is_zero() {
                continue;
            }
            for j in 0..m {
                if !yk[j].is_zero() {
                    out[i][j] = &out[i][j] + &(&x[i][k] * &yk[j]);
                }
            }
        }
    }
    out
}

pub fn trace(m: &CycMatrix) -> Cyclotomic {
    let p = m[0][0].prime();
    m.iter().enumerate().fold(Cyclotomic::zero(p), |acc, (i, row)| &acc + &row[i])
}

/// Character value, in closed form.
pub fn character(rep: &SimpleRep, g: &HeisenbergElement) -> Result<Cyclotomic> {
    check_same(rep, g)?;
    let p = g.p;
    Ok(match *rep {
        SimpleRep::Full { index, .. } => {
            if g.is_central() {
                Cyclotomic::omega_pow(p, (index * g.k) as i64).scale(&crate::arith::rat(p as i64, 1))
            } else {
                Cyclotomic::zero(p)
            }
        }
        SimpleRep::Linear { a, b, .. } => Cyclotomic::omega_pow(p, (a * g.a + b * g.b) as i64),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjugacyClass {
    pub representative: HeisenbergElement,
    pub size: usize,
}

/// The p central singletons `z^k`, then one class `{e₁^a e₂^b z^k : k}` per
/// `(a, b) ≠ (0, 0)` in lexicographic order.
pub fn conjugacy_classes(p: usize) -> Result<Vec<ConjugacyClass>> {
    check_prime(p)?;
    let q = p as i64;
    let mut out: Vec<ConjugacyClass> =
        (0..q).map(|k| ConjugacyClass { representative: HeisenbergElement::raw(p, 0, 0, k), size: 1 }).collect();
    for a in 0..q {
        for b in 0..q {
            if (a, b) != (0, 0) {
                out.push(ConjugacyClass { representative: HeisenbergElement::raw(p, a, b, 0), size: p });
            }
        }
    }
    Ok(out)
}

/// Homogeneous coordinates scaled so the first nonzero entry is 1.
pub fn normalize_projective(v: &[Cyclotomic]) -> Result<Vec<Cyclotomic>> {
    let lead = v
        .iter()
        .find(|x| !x.is_zero())
        .ok_or_else(|| Error::Parameter("zero vector is not a projective point".into()))?;
    let inv = lead.inverse()?;
    Ok(v.iter().map(|x| x * &inv).collect())
}

/// The p eigenlines of `ρ(g)` in `V_i` for non-central g, normalized.
///
/// For `a = 0` these are the coordinate points. Otherwise an eigenvector
/// with eigenvalue λ satisfies `c_{j−a} = s_j c_j / λ` where `s_j` is the
/// scalar `ρ(g)` attaches to `x_j`; λ runs over ω^m since `Π s_j = 1`.
pub fn projective_fixed_points(rep: &SimpleRep, g: &HeisenbergElement) -> Result<Vec<Vec<Cyclotomic>>> {
    check_same(rep, g)?;
    let p = g.p;
    let index = match *rep {
        SimpleRep::Full { index, .. } => index,
        SimpleRep::Linear { .. } => {
            return Err(Error::Parameter("fixed points need a p-dimensional representation".into()))
        }
    };
    if g.is_central() {
        return Err(Error::CentralElement(g.to_string()));
    }
    if g.a == 0 {
        return Ok((0..p)
            .map(|t| (0..p).map(|j| if j == t { Cyclotomic::one(p) } else { Cyclotomic::zero(p) }).collect())
            .collect());
    }
    let mut out = Vec::with_capacity(p);
    for m in 0..p {
        let mut c = vec![Cyclotomic::zero(p); p];
        let mut exps = vec![0usize; p];
        let mut j = 0usize;
        for _ in 0..p - 1 {
            let (t, e) = act_on_basis(index, g, j);
            exps[t] = (exps[j] + e + p - m) % p;
            j = t;
        }
        for (cj, e) in c.iter_mut().zip(&exps) {
            *cj = Cyclotomic::omega_pow(p, *e as i64);
        }
        out.push(normalize_projective(&c)?);
    }
    Ok(out)
}

/// Generators of the p + 1 cyclic subgroups of `H_p / ⟨z⟩`: `e₂` and `e₁e₂^b`.
pub fn cyclic_subgroup_generators(p: usize) -> Result<Vec<HeisenbergElement>> {
    check_prime(p)?;
    let mut out = vec![HeisenbergElement::raw(p, 0, 1, 0)];
    out.extend((0..p as i64).map(|b| HeisenbergElement::raw(p, 1, b, 0)));
    Ok(out)
}

/// Union of fixed points over all cyclic subgroups, deduplicated, in
/// subgroup order; p(p + 1) points.
pub fn all_fixed_points(rep: &SimpleRep) -> Result<Vec<Vec<Cyclotomic>>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for g in cyclic_subgroup_generators(rep.prime())? {
        for pt in projective_fixed_points(rep, &g)? {
            if seen.insert(pt.clone()) {
                out.push(pt);
            }
        }
    }
    Ok(out)
}

/// Applies `ρ(g)` to a coordinate vector.
pub fn act_on_vector(index: usize, g: &HeisenbergElement, v: &[Cyclotomic]) -> Vec<Cyclotomic> {
    let p = g.p;
    let mut out = vec![Cyclotomic::zero(p); p];
    for (j, c) in v.iter().enumerate() {
        let (t, e) = act_on_basis(index, g, j);
        out[t] = c.mul_omega_pow(e as i64);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(p: usize, a: i64, b: i64, k: i64) -> HeisenbergElement {
        HeisenbergElement::new(p, a, b, k).unwrap()
    }

    #[test]
    fn commutation_relation() {
        for p in [3, 5, 7] {
            let e1 = HeisenbergElement::e1(p).unwrap();
            let e2 = HeisenbergElement::e2(p).unwrap();
            assert_eq!(h_mul(&e2, &e1).unwrap(), el(p, 1, 1, p as i64 - 1));
            assert!(e1.pow(p as u64).is_identity());
        }
        assert!(h_mul(&el(3, 1, 0, 0), &el(5, 1, 0, 0)).is_err());
    }

    #[test]
    fn inverses() {
        for g in HeisenbergElement::all(5).unwrap() {
            assert!(h_mul(&g, &g.inverse()).unwrap().is_identity());
            assert!(h_mul(&g.inverse(), &g).unwrap().is_identity());
        }
    }

    #[test]
    fn shift_and_scalar_matrices() {
        let rep = SimpleRep::new(3, 1).unwrap();
        let m = rep_matrix(&rep, &el(3, 1, 0, 0)).unwrap();
        // x_0 ↦ x_2, x_1 ↦ x_0, x_2 ↦ x_1
        assert!(m[2][0].is_one() && m[0][1].is_one() && m[1][2].is_one());
        let rep5 = SimpleRep::new(5, 2).unwrap();
        let z = rep_matrix(&rep5, &el(5, 0, 0, 1)).unwrap();
        for i in 0..5 {
            assert_eq!(z[i][i], Cyclotomic::omega_pow(5, 2));
        }
        let t = trace(&rep_matrix(&SimpleRep::new(5, 1).unwrap(), &el(5, 1, 1, 0)).unwrap());
        assert!(t.is_zero());
    }

    #[test]
    fn characters() {
        let v1 = SimpleRep::new(3, 1).unwrap();
        assert_eq!(character(&v1, &el(3, 0, 0, 1)).unwrap(), Cyclotomic::omega_pow(3, 1).scale(&crate::arith::rat(3, 1)));
        assert_eq!(character(&v1, &el(3, 0, 0, 0)).unwrap(), Cyclotomic::from_int(3, 3));
        assert!(character(&SimpleRep::new(5, 1).unwrap(), &el(5, 2, 1, 0)).unwrap().is_zero());
        for rep in SimpleRep::all(5).unwrap() {
            for g in HeisenbergElement::all(5).unwrap() {
                assert_eq!(character(&rep, &g).unwrap(), trace(&rep_matrix(&rep, &g).unwrap()));
            }
        }
    }

    #[test]
    fn class_counts() {
        for p in [3, 5] {
            let cls = conjugacy_classes(p).unwrap();
            assert_eq!(cls.len(), p * p + p - 1);
            assert_eq!(cls.iter().map(|c| c.size).sum::<usize>(), p * p * p);
        }
        assert!(conjugacy_classes(9).is_err());
    }

    #[test]
    fn fixed_points_of_generators() {
        let rep = SimpleRep::new(5, 1).unwrap();
        let pts = projective_fixed_points(&rep, &el(5, 0, 1, 0)).unwrap();
        assert_eq!(pts.len(), 5);
        assert!(pts.iter().enumerate().all(|(t, v)| v[t].is_one()));
        let pts = projective_fixed_points(&rep, &el(5, 1, 0, 0)).unwrap();
        for (m, v) in pts.iter().enumerate() {
            for (j, c) in v.iter().enumerate() {
                assert_eq!(*c, Cyclotomic::omega_pow(5, (m * j) as i64));
            }
        }
        assert!(matches!(
            projective_fixed_points(&rep, &el(5, 0, 0, 2)),
            Err(Error::CentralElement(_))
        ));
        assert_eq!(all_fixed_points(&rep).unwrap().len(), 30);
    }

    #[test]
    fn fixed_points_are_eigenvectors() {
        let p = 5;
        for i in 1..p as i64 {
            let rep = SimpleRep::new(p, i).unwrap();
            for g in HeisenbergElement::all(p).unwrap().into_iter().filter(|g| !g.is_central()) {
                for v in projective_fixed_points(&rep, &g).unwrap() {
                    let w = act_on_vector(rep.index(), &g, &v);
                    // w is proportional to v; v[0] = 1 or v is a coordinate point.
                    let lead = v.iter().position(|x| !x.is_zero()).unwrap();
                    let lambda = w[lead].clone();
                    for (x, y) in v.iter().zip(&w) {
                        assert_eq!(&(x * &lambda), y);
                    }
                }
            }
        }
    }
}
