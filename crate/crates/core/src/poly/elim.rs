use super::{mat_det, MultiPoly, PolyMatrix};
use crate::error::{Error, Result};

/// Determinant of the Sylvester matrix of `f` and `g` in `var`, with the
/// `deg g` rows of `f` coefficients first. Coefficients run from the leading
/// one leftwards, so `Res(t−a, t−b) = a − b`.
pub fn resultant(f: &MultiPoly, g: &MultiPoly, var: usize) -> Result<MultiPoly> {
    if f.ring() != g.ring() {
        return Err(Error::RingMismatch);
    }
    if var >= f.nvars() {
        return Err(Error::OutOfRange(format!("variable {var} of {}", f.nvars())));
    }
    let (m, n) = (f.degree_in(var) as usize, g.degree_in(var) as usize);
    if m == 0 || n == 0 {
        return Err(Error::Degree("resultant needs positive degree in the eliminated variable".into()));
    }
    let fc = f.coeffs_in(var);
    let gc = g.coeffs_in(var);
    let size = m + n;
    let zero = MultiPoly::zero(f.ring());
    let mut entries = vec![zero; size * size];
    for i in 0..n {
        for k in 0..=m {
            entries[i * size + i + k] = fc[m - k].clone();
        }
    }
    for i in 0..m {
        for k in 0..=n {
            entries[(n + i) * size + i + k] = gc[n - k].clone();
        }
    }
    mat_det(&PolyMatrix::new(size, size, entries)?)
}

/// Returns `q` with `f = q·g`, or `None` when `g` does not divide `f`.
///
/// Long division in the first variable occurring in `g`, with leading
/// coefficients divided recursively; the quotient is checked by
/// multiplying back.
pub fn exact_divide(f: &MultiPoly, g: &MultiPoly) -> Result<Option<MultiPoly>> {
    if f.ring() != g.ring() {
        return Err(Error::RingMismatch);
    }
    if g.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let q = match divide_rec(f, g) {
        Some(q) => q,
        None => return Ok(None),
    };
    Ok((&(&q * g) - f).is_zero().then_some(q))
}

fn divide_rec(f: &MultiPoly, g: &MultiPoly) -> Option<MultiPoly> {
    if f.is_zero() {
        return Some(MultiPoly::zero(f.ring()));
    }
    let Some(&x) = g.occurring_vars().first() else {
        let c = g.constant_term();
        return Some(f.scale(&c.recip()));
    };
    let dg = g.degree_in(x);
    let lc_g = g.coeffs_in(x).pop().expect("positive degree");
    let mut r = f.clone();
    let mut q = MultiPoly::zero(f.ring());
    while !r.is_zero() {
        let dr = r.degree_in(x);
        if dr < dg {
            return None;
        }
        let lc_r = r.coeffs_in(x).pop().expect("nonzero");
        let c = divide_rec(&lc_r, &lc_g)?;
        if !(&(&c * &lc_g) - &lc_r).is_zero() {
            return None;
        }
        let term = c.shift_var(x, dr - dg);
        r = &r - &(&term * g);
        q = &q + &term;
    }
    Some(q)
}
