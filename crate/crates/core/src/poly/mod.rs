//! Sparse exact multivariate polynomials over ℚ and matrices of them.
//!
//! Coefficients are rational; values in ℚ(ω_p) or ℂ enter only through
//! evaluation points.

mod elim;
mod matrix;
mod serial;

pub use elim::{exact_divide, resultant};
pub use matrix::{mat_det, mat_minors, PolyMatrix};
pub(crate) use matrix::combinations as matrix_combinations;
pub use serial::{PolyJson, TermJson};

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::arith::{rational_to_f64, ArithKind, ComplexF, Cyclotomic, Rational};
use crate::error::{Error, Result};

/// Exponent vector, one entry per ring variable. Ordered graded
/// lexicographically: total degree first, then the exponent of the first
/// variable, and so on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Named variable list shared by every polynomial of a ring.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    vars: Vec<String>,
}

impl PolyRing {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = S>) -> Arc<PolyRing> {
        Arc::new(PolyRing { vars: vars.into_iter().map(Into::into).collect() })
    }

    /// Ring with variables `prefix0 … prefix{n-1}`.
    pub fn indexed(prefix: &str, n: usize) -> Arc<PolyRing> {
        Self::new((0..n).map(|i| format!("{prefix}{i}")))
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

/// Polynomial with rational coefficients; zero coefficients are never stored.
#[derive(Clone, Debug)]
pub struct MultiPoly {
    ring: Arc<PolyRing>,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl MultiPoly {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        MultiPoly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Rational) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ring.nvars()), c);
        }
        p
    }

    pub fn from_int(ring: &Arc<PolyRing>, c: i64) -> Self {
        Self::constant(ring, Rational::from_integer(c.into()))
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        assert!(i < ring.nvars(), "variable index out of range");
        let mut e = vec![0; ring.nvars()];
        e[i] = 1;
        Self::monomial(ring, e, Rational::one())
    }

    pub fn monomial(ring: &Arc<PolyRing>, exponents: Vec<u32>, c: Rational) -> Self {
        assert_eq!(exponents.len(), ring.nvars());
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Monomial(exponents), c);
        }
        p
    }

    pub fn from_terms(ring: &Arc<PolyRing>, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Result<Self> {
        let mut p = Self::zero(ring);
        for (e, c) in terms {
            if e.len() != ring.nvars() {
                return Err(Error::Arity { expected: ring.nvars(), got: e.len() });
            }
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> Rational {
        self.terms.get(&Monomial(exponents.to_vec())).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    /// Constant term.
    pub fn constant_term(&self) -> Rational {
        self.coefficient(&vec![0; self.nvars()])
    }

    /// `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Total degree restricted to the given variables, if homogeneous in them.
    pub fn homogeneous_degree_in(&self, vars: &[usize]) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| vars.iter().map(|&v| m.0[v]).sum::<u32>());
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    /// Variables that occur, in index order.
    pub fn occurring_vars(&self) -> Vec<usize> {
        (0..self.nvars()).filter(|&v| self.terms.keys().any(|m| m.0[v] > 0)).collect()
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = Self::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        MultiPoly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(&self.ring, Rational::one());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative.
    pub fn partial(&self, var: usize) -> Result<Self> {
        if var >= self.nvars() {
            return Err(Error::OutOfRange(format!("variable {var} of {}", self.nvars())));
        }
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut d = m.0.clone();
            d[var] -= 1;
            out.add_term(Monomial(d), c * Rational::from_integer(e.into()));
        }
        Ok(out)
    }

    /// Coefficients of `var^0, var^1, …` as polynomials free of `var`.
    pub fn coeffs_in(&self, var: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(var) as usize;
        let mut out = vec![Self::zero(&self.ring); deg + 1];
        for (m, c) in &self.terms {
            let k = m.0[var] as usize;
            let mut e = m.0.clone();
            e[var] = 0;
            out[k].add_term(Monomial(e), c.clone());
        }
        out
    }

    /// `self · var^k`.
    pub fn shift_var(&self, var: usize, k: u32) -> Self {
        MultiPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e[var] += k;
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// Substitutes a rational value for one variable (the variable stays in
    /// the ring but no longer occurs).
    pub fn substitute(&self, var: usize, value: &Rational) -> Self {
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = std::mem::take(&mut e[var]);
            out.add_term(Monomial(e), c * num_traits::pow(value.clone(), k as usize));
        }
        out
    }

    /// Substitutes polynomials (in a possibly different ring) for every variable.
    pub fn compose(&self, images: &[MultiPoly]) -> Result<MultiPoly> {
        if images.len() != self.nvars() {
            return Err(Error::Arity { expected: self.nvars(), got: images.len() });
        }
        let target = images.first().map(|p| p.ring.clone()).unwrap_or_else(|| self.ring.clone());
        let mut out = MultiPoly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(&target, c.clone());
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.try_mul(&images[v].pow(e))?;
                }
            }
            out = out.try_add(&t)?;
        }
        Ok(out)
    }

    fn check_arity(&self, n: usize) -> Result<()> {
        if n == self.nvars() {
            Ok(())
        } else {
            Err(Error::Arity { expected: self.nvars(), got: n })
        }
    }

    pub fn eval_rational(&self, point: &[Rational]) -> Result<Rational> {
        self.check_arity(point.len())?;
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Exact evaluation in ℚ(ω_p); every coordinate must share the prime.
    pub fn eval_cyclotomic(&self, point: &[Cyclotomic]) -> Result<Cyclotomic> {
        self.check_arity(point.len())?;
        let Some(p) = point.first().map(Cyclotomic::prime) else {
            return Err(Error::Parameter("cannot infer the prime of an empty point".into()));
        };
        if let Some(bad) = point.iter().find(|x| x.prime() != p) {
            return Err(Error::PrimeMismatch(p, bad.prime()));
        }
        let maxdeg: Vec<u32> = (0..self.nvars()).map(|v| self.degree_in(v)).collect();
        let powers: Vec<Vec<Cyclotomic>> = point
            .iter()
            .zip(&maxdeg)
            .map(|(x, &d)| {
                let mut pw = vec![Cyclotomic::one(p)];
                for k in 1..=d as usize {
                    let next = &pw[k - 1] * x;
                    pw.push(next);
                }
                pw
            })
            .collect();
        let mut acc = Cyclotomic::zero(p);
        for (m, c) in &self.terms {
            let mut t = Cyclotomic::from_rational(p, c.clone());
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = crate::arith::cyc_arith(ArithKind::Mul, &t, &powers[v][e as usize])?;
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    pub fn eval_complex(&self, point: &[ComplexF]) -> Result<ComplexF> {
        self.check_arity(point.len())?;
        let mut acc = ComplexF::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = ComplexF::new(rational_to_f64(c), 0.0);
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= x.powu(e);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn eval_f64(&self, point: &[f64]) -> Result<f64> {
        self.check_arity(point.len())?;
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut t = rational_to_f64(c);
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= x.powi(e as i32);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Fixes some variables at float values and collects the coefficients of
    /// the monomials in the remaining ones (keyed by their exponent vectors,
    /// restricted to the free variables in index order).
    pub fn specialize_f64(&self, values: &[Option<f64>]) -> Result<BTreeMap<Vec<u32>, f64>> {
        self.check_arity(values.len())?;
        let mut out: BTreeMap<Vec<u32>, f64> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut t = rational_to_f64(c);
            let mut key = Vec::new();
            for (v, &e) in m.0.iter().enumerate() {
                match values[v] {
                    Some(x) => t *= x.powi(e as i32),
                    None => key.push(e),
                }
            }
            *out.entry(key).or_insert(0.0) += t;
        }
        Ok(out)
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_add(rhs).expect("ring mismatch in polynomial addition")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_sub(rhs).expect("ring mismatch in polynomial subtraction")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_mul(rhs).expect("ring mismatch in polynomial multiplication")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

/// Operand of [`poly_arith`].
pub type PolyArithKind = ArithKind;

/// Ring arithmetic; `Div` is rejected (use [`exact_divide`]).
pub fn poly_arith(kind: PolyArithKind, f: &MultiPoly, g: &MultiPoly) -> Result<MultiPoly> {
    match kind {
        ArithKind::Add => f.try_add(g),
        ArithKind::Sub => f.try_sub(g),
        ArithKind::Mul => f.try_mul(g),
        ArithKind::Div => Err(Error::Parameter("polynomial division is exact_divide".into())),
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serial::to_text(self))
    }
}
