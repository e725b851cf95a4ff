//! Exact scalar arithmetic: rationals, the cyclotomic fields ℚ(ω_p), and a
//! complex floating view used for numeric rank and root computations.

mod cyclotomic;
mod field;
mod rational;

pub use cyclotomic::{cyc_arith, cyc_normalize, ArithKind, Cyclotomic};
pub use field::{CyclotomicField, Field, RationalField};
pub use rational::{is_odd_prime, parse_rational, rat, rational_to_f64, Rational};

/// Complex floating point scalar.
pub type ComplexF = num_complex::Complex64;

/// `true` when both parts are finite.
pub fn is_finite(z: ComplexF) -> bool {
    z.re.is_finite() && z.im.is_finite()
}
