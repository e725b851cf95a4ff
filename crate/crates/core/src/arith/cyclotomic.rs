use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{is_odd_prime, rational_to_f64, Rational};
use super::ComplexF;
use crate::error::{Error, Result};

/// An element `c₀ + c₁ω + … + c_{p−2}ω^{p−2}` of ℚ(ω_p), ω a fixed primitive
/// p-th root of unity.
///
/// The coefficient vector always has length `p − 1`; it is the unique
/// remainder modulo `1 + ω + … + ω^{p−1}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Cyclotomic {
    p: usize,
    coeffs: Vec<Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
    Div,
}

fn check_prime(p: usize) -> Result<()> {
    if is_odd_prime(p as u64) {
        Ok(())
    } else {
        Err(Error::Modulus(p as u64))
    }
}

/// Canonical reduction of `Σ raw[k] ω^k`.
pub fn cyc_normalize(p: usize, raw: &[Rational]) -> Result<Cyclotomic> {
    check_prime(p)?;
    Ok(Cyclotomic::reduce(p, raw.iter().cloned().enumerate()))
}

pub fn cyc_arith(kind: ArithKind, a: &Cyclotomic, b: &Cyclotomic) -> Result<Cyclotomic> {
    if a.p != b.p {
        return Err(Error::PrimeMismatch(a.p, b.p));
    }
    Ok(match kind {
        ArithKind::Add => a + b,
        ArithKind::Sub => a - b,
        ArithKind::Mul => a * b,
        ArithKind::Div => a.checked_div(b)?,
    })
}

impl Cyclotomic {
    /// Folds exponents modulo p, then eliminates ω^{p−1}.
    pub(crate) fn reduce(p: usize, terms: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut buckets = vec![Rational::zero(); p];
        for (k, c) in terms {
            if !c.is_zero() {
                buckets[k % p] += c;
            }
        }
        let top = buckets.pop().expect("p >= 3");
        if !top.is_zero() {
            for b in buckets.iter_mut() {
                *b -= &top;
            }
        }
        Cyclotomic { p, coeffs: buckets }
    }

    pub fn zero(p: usize) -> Self {
        debug_assert!(is_odd_prime(p as u64));
        Cyclotomic { p, coeffs: vec![Rational::zero(); p - 1] }
    }

    pub fn one(p: usize) -> Self {
        Self::from_rational(p, Rational::one())
    }

    pub fn from_rational(p: usize, r: Rational) -> Self {
        let mut z = Self::zero(p);
        z.coeffs[0] = r;
        z
    }

    pub fn from_int(p: usize, n: i64) -> Self {
        Self::from_rational(p, Rational::from_integer(n.into()))
    }

    /// ω^k for any integer k.
    pub fn omega_pow(p: usize, k: i64) -> Self {
        let e = k.rem_euclid(p as i64) as usize;
        Self::reduce(p, [(e, Rational::one())])
    }

    pub fn prime(&self) -> usize {
        self.p
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if this element lies in ℚ.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| &self.coeffs[0])
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Cyclotomic { p: self.p, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    /// Multiplication by ω^k is a rotation in the basis {1, …, ω^{p−1}}.
    pub fn mul_omega_pow(&self, k: i64) -> Self {
        let p = self.p;
        let shift = k.rem_euclid(p as i64) as usize;
        Self::reduce(p, self.coeffs.iter().enumerate().map(|(i, c)| (i + shift, c.clone())))
    }

    /// The Galois automorphism ω ↦ ω^k (k coprime to p).
    pub fn galois(&self, k: i64) -> Self {
        let p = self.p as i64;
        debug_assert!(k.rem_euclid(p) != 0);
        Self::reduce(
            self.p,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (((i as i64) * k).rem_euclid(p) as usize, c.clone())),
        )
    }

    /// Complex conjugation, ω ↦ ω^{p−1}.
    pub fn conjugate(&self) -> Self {
        self.galois(-1)
    }

    /// Field norm down to ℚ: the product of all Galois conjugates.
    pub fn norm(&self) -> Rational {
        let mut acc = self.clone();
        for k in 2..self.p as i64 {
            acc = &acc * &self.galois(k);
        }
        acc.as_rational().cloned().expect("norm of a cyclotomic number is rational")
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(self.p, r.recip()));
        }
        // a⁻¹ = (Π_{k≥2} σ_k(a)) / N(a)
        let mut cofactor = Self::one(self.p);
        for k in 2..self.p as i64 {
            cofactor = &cofactor * &self.galois(k);
        }
        let norm = (&cofactor * self).as_rational().cloned().expect("rational norm");
        Ok(cofactor.scale(&norm.recip()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p, other.p));
        }
        Ok(self * &other.inverse()?)
    }

    pub fn pow(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.p);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Evaluates under ω ↦ e^{2πik/p}.
    pub fn embed(&self, k: i64) -> Result<ComplexF> {
        let p = self.p as i64;
        if k.rem_euclid(p) == 0 {
            return Err(Error::NotPrimitive { k, p: self.p });
        }
        let mut acc = ComplexF::new(0.0, 0.0);
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let angle = 2.0 * std::f64::consts::PI * (((j as i64) * k).rem_euclid(p) as f64) / p as f64;
            acc += ComplexF::from_polar(rational_to_f64(c), angle);
        }
        Ok(acc)
    }

    fn assert_same(&self, other: &Self) {
        assert_eq!(self.p, other.p, "cyclotomic prime mismatch");
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.assert_same(rhs);
        Cyclotomic { p: self.p, coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.assert_same(rhs);
        Cyclotomic { p: self.p, coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.assert_same(rhs);
        let p = self.p;
        let mut buckets = vec![Rational::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    buckets[(i + j) % p] += a * b;
                }
            }
        }
        Cyclotomic::reduce(p, buckets.into_iter().enumerate())
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { p: self.p, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
    };
}
/// JSON form `{"p": 5, "coeffs": ["1", "-1/2", "0", "0"]}`.
impl serde::Serialize for Cyclotomic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Cyclotomic", 2)?;
        st.serialize_field("p", &self.p)?;
        let coeffs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

impl<'de> serde::Deserialize<'de> for Cyclotomic {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        struct Raw {
            p: usize,
            coeffs: Vec<String>,
        }
        let raw = Raw::deserialize(d)?;
        let coeffs = raw
            .coeffs
            .iter()
            .map(|c| super::parse_rational(c))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        cyc_normalize(raw.p, &coeffs).map_err(serde::de::Error::custom)
    }
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*w")?,
                _ => write!(f, "{c}*w^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
