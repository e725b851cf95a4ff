use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::{exact_divide, MultiPoly, PolyRing};
use crate::arith::{ComplexF, Rational};
use crate::error::{Error, Result};

const MAX_DET_SIZE: usize = 8;
const COFACTOR_MAX: usize = 5;

/// Dense row-major matrix of polynomials over one ring.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<MultiPoly>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension("matrix dimensions must be positive".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!("{} entries for a {rows}×{cols} matrix", entries.len())));
        }
        let ring = entries[0].ring().clone();
        if entries.iter().any(|e| e.ring() != &ring) {
            return Err(Error::RingMismatch);
        }
        Ok(PolyMatrix { rows, cols, entries })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> MultiPoly) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self::new(rows, cols, entries)
    }

    pub fn identity(ring: &Arc<PolyRing>, n: usize) -> Result<Self> {
        Self::from_fn(n, n, |i, j| MultiPoly::from_int(ring, (i == j) as i64))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.entries[0].ring()
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[MultiPoly] {
        &self.entries
    }

    pub fn transpose(&self) -> PolyMatrix {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone()).expect("shape preserved")
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<PolyMatrix> {
        if rows.iter().any(|&r| r >= self.rows) || cols.iter().any(|&c| c >= self.cols) {
            return Err(Error::OutOfRange("submatrix index".into()));
        }
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// Applies `f` entrywise.
    pub fn map(&self, f: impl Fn(&MultiPoly) -> Result<MultiPoly>) -> Result<PolyMatrix> {
        let entries = self.entries.iter().map(f).collect::<Result<Vec<_>>>()?;
        Self::new(self.rows, self.cols, entries)
    }

    pub fn eval_f64(&self, point: &[f64]) -> Result<nalgebra::DMatrix<f64>> {
        let vals = self.entries.iter().map(|e| e.eval_f64(point)).collect::<Result<Vec<_>>>()?;
        Ok(nalgebra::DMatrix::from_row_slice(self.rows, self.cols, &vals))
    }

    pub fn eval_complex(&self, point: &[ComplexF]) -> Result<nalgebra::DMatrix<ComplexF>> {
        let vals = self.entries.iter().map(|e| e.eval_complex(point)).collect::<Result<Vec<_>>>()?;
        Ok(nalgebra::DMatrix::from_row_slice(self.rows, self.cols, &vals))
    }

    pub fn eval_rational(&self, point: &[Rational]) -> Result<Vec<Vec<Rational>>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).eval_rational(point)).collect())
            .collect()
    }

    /// Jacobian `∂f_i/∂x_{vars[j]}`.
    pub fn jacobian(fs: &[MultiPoly], vars: &[usize]) -> Result<PolyMatrix> {
        let mut entries = Vec::with_capacity(fs.len() * vars.len());
        for f in fs {
            for &v in vars {
                entries.push(f.partial(v)?);
            }
        }
        Self::new(fs.len(), vars.len(), entries)
    }
}

/// Exact determinant: cofactor expansion with memoized column subsets up to
/// size 5, fraction-free Bareiss elimination above.
pub fn mat_det(m: &PolyMatrix) -> Result<MultiPoly> {
    if m.rows != m.cols {
        return Err(Error::Dimension(format!("determinant of a {}×{} matrix", m.rows, m.cols)));
    }
    if m.rows > MAX_DET_SIZE {
        return Err(Error::Dimension(format!("determinant size {} exceeds {MAX_DET_SIZE}", m.rows)));
    }
    if m.rows <= COFACTOR_MAX {
        Ok(det_cofactor(m))
    } else {
        det_bareiss(m)
    }
}

pub(crate) fn det_cofactor(m: &PolyMatrix) -> MultiPoly {
    let n = m.rows;
    let mut memo: HashMap<u32, MultiPoly> = HashMap::new();
    cofactor_rec(m, 0, (1u32 << n) - 1, &mut memo)
}

fn cofactor_rec(m: &PolyMatrix, row: usize, cols: u32, memo: &mut HashMap<u32, MultiPoly>) -> MultiPoly {
    if cols == 0 {
        return MultiPoly::from_int(m.ring(), 1);
    }
    if let Some(d) = memo.get(&cols) {
        return d.clone();
    }
    let mut acc = MultiPoly::zero(m.ring());
    let mut sign_pos = 0;
    for j in 0..m.cols {
        if cols & (1 << j) == 0 {
            continue;
        }
        let a = m.get(row, j);
        if !a.is_zero() {
            let minor = cofactor_rec(m, row + 1, cols & !(1 << j), memo);
            let term = a * &minor;
            acc = if sign_pos % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        sign_pos += 1;
    }
    memo.insert(cols, acc.clone());
    acc
}

pub(crate) fn det_bareiss(m: &PolyMatrix) -> Result<MultiPoly> {
    let n = m.rows;
    let mut a: Vec<Vec<MultiPoly>> = (0..n).map(|i| (0..n).map(|j| m.get(i, j).clone()).collect()).collect();
    let mut sign = false;
    let mut prev = MultiPoly::from_int(m.ring(), 1);
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = !sign;
                }
                None => return Ok(MultiPoly::zero(m.ring())),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = exact_divide(&num, &prev)?
                    .ok_or_else(|| Error::Parameter("Bareiss step was not exact".into()))?;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if sign { -&d } else { d })
}

/// Index sets of size `k` from `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// All `k×k` minors, ordered by row set and then column set, each
/// lexicographically.
pub fn mat_minors(m: &PolyMatrix, k: usize) -> Result<Vec<MultiPoly>> {
    if k == 0 || k > m.rows.min(m.cols) {
        return Err(Error::OutOfRange(format!("minor size {k} for a {}×{} matrix", m.rows, m.cols)));
    }
    let rs = combinations(m.rows, k);
    let cs = combinations(m.cols, k);
    let pairs: Vec<(&Vec<usize>, &Vec<usize>)> = rs.iter().flat_map(|r| cs.iter().map(move |c| (r, c))).collect();
    pairs.par_iter().map(|(r, c)| mat_det(&m.submatrix(r, c)?)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn identity_has_unit_determinant() {
        let r = PolyRing::new(["x"]);
        for n in [1, 5, 7] {
            let d = mat_det(&PolyMatrix::identity(&r, n).unwrap()).unwrap();
            assert_eq!(d, MultiPoly::from_int(&r, 1));
        }
    }

    #[test]
    fn minor_counts() {
        let r = PolyRing::indexed("u", 5);
        let m = PolyMatrix::from_fn(3, 5, |i, j| MultiPoly::var(&r, (i + j) % 5)).unwrap();
        assert_eq!(mat_minors(&m, 3).unwrap().len(), 10);
        let ones = mat_minors(&m, 1).unwrap();
        assert_eq!(ones, m.entries().to_vec());
        assert!(mat_minors(&m, 4).is_err());
        assert!(mat_minors(&m, 0).is_err());
    }

    #[test]
    fn non_square_determinant_errors() {
        let r = PolyRing::new(["x"]);
        let m = PolyMatrix::from_fn(2, 3, |_, _| MultiPoly::var(&r, 0)).unwrap();
        assert!(mat_det(&m).is_err());
    }

    #[test]
    fn bareiss_matches_cofactor_symbolically() {
        let r = PolyRing::indexed("x", 4);
        let m = PolyMatrix::from_fn(4, 4, |i, j| {
            let v = MultiPoly::var(&r, (i * 3 + j) % 4);
            &v.scale(&rat((i + 2 * j) as i64 - 3, 1)) + &MultiPoly::from_int(&r, (i * j) as i64)
        })
        .unwrap();
        assert_eq!(det_cofactor(&m), det_bareiss(&m).unwrap());
    }

    #[test]
    fn combinations_are_lexicographic() {
        let c = combinations(4, 2);
        assert_eq!(c, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
    }
}
