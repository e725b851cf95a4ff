use std::fmt::Debug;

use num_traits::{One, Zero};

use super::cyclotomic::Cyclotomic;
use super::rational::{is_odd_prime, Rational};
use crate::error::{Error, Result};

/// A coefficient field for the exact linear-algebra kernels.
///
/// Elements do not carry enough context to build constants on their own (a
/// cyclotomic zero needs its prime), so the field object hands them out.
pub trait Field: Clone + Send + Sync + Debug {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    /// Embeds a cyclotomic number, if it lies in this field.
    fn from_cyclotomic(&self, c: &Cyclotomic) -> Option<Self::Elem>;
    /// Maps an element into ℚ(ω_p).
    fn to_cyclotomic(&self, a: &Self::Elem, p: usize) -> Cyclotomic;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `a - c·b`, the elimination step.
    fn sub_mul(&self, a: &Self::Elem, c: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.sub(a, &self.mul(c, b))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RationalField;

impl Field for RationalField {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn inv(&self, a: &Rational) -> Result<Rational> {
        if a.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(a.recip())
        }
    }
    fn from_cyclotomic(&self, c: &Cyclotomic) -> Option<Rational> {
        c.as_rational().cloned()
    }
    fn to_cyclotomic(&self, a: &Rational, p: usize) -> Cyclotomic {
        Cyclotomic::from_rational(p, a.clone())
    }
    fn is_one(&self, a: &Rational) -> bool {
        a.is_one()
    }
}

/// ℚ(ω_p) for an odd prime p.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    p: usize,
}

impl CyclotomicField {
    pub fn new(p: usize) -> Result<Self> {
        if is_odd_prime(p as u64) {
            Ok(CyclotomicField { p })
        } else {
            Err(Error::Modulus(p as u64))
        }
    }

    pub fn prime(&self) -> usize {
        self.p
    }

    pub fn omega_pow(&self, k: i64) -> Cyclotomic {
        Cyclotomic::omega_pow(self.p, k)
    }

    pub fn from_rational(&self, r: Rational) -> Cyclotomic {
        Cyclotomic::from_rational(self.p, r)
    }
}

impl Field for CyclotomicField {
    type Elem = Cyclotomic;

    fn zero(&self) -> Cyclotomic {
        Cyclotomic::zero(self.p)
    }
    fn one(&self) -> Cyclotomic {
        Cyclotomic::one(self.p)
    }
    fn is_zero(&self, a: &Cyclotomic) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Cyclotomic, b: &Cyclotomic) -> Cyclotomic {
        a + b
    }
    fn sub(&self, a: &Cyclotomic, b: &Cyclotomic) -> Cyclotomic {
        a - b
    }
    fn mul(&self, a: &Cyclotomic, b: &Cyclotomic) -> Cyclotomic {
        a * b
    }
    fn neg(&self, a: &Cyclotomic) -> Cyclotomic {
        -a
    }
    fn inv(&self, a: &Cyclotomic) -> Result<Cyclotomic> {
        a.inverse()
    }
    fn from_cyclotomic(&self, c: &Cyclotomic) -> Option<Cyclotomic> {
        (c.prime() == self.p).then(|| c.clone())
    }
    fn to_cyclotomic(&self, a: &Cyclotomic, p: usize) -> Cyclotomic {
        assert_eq!(p, self.p, "cyclotomic prime mismatch");
        a.clone()
    }
    fn is_one(&self, a: &Cyclotomic) -> bool {
        a.is_one()
    }
}
