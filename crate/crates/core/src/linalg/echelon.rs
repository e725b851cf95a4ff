use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::arith::Field;
use crate::error::{Error, Result};

/// Sparse vector: `(column, value)` pairs sorted by column, no stored zeros.
pub type SparseVec<E> = Vec<(usize, E)>;

/// Reduced row-echelon basis of a subspace of `F^ncols`, stored sparsely.
///
/// Invariant: every row has a 1 at its pivot column and a 0 at every other
/// row's pivot column. The rows stay in insertion order; `pivot_row` maps a
/// pivot column to its row.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    ncols: usize,
    rows: Vec<SparseVec<F::Elem>>,
    pivots: Vec<usize>,
    pivot_row: HashMap<usize, usize>,
}

fn lookup<E>(row: &[(usize, E)], col: usize) -> Option<&E> {
    row.binary_search_by_key(&col, |(c, _)| *c).ok().map(|i| &row[i].1)
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, ncols: usize) -> Self {
        Echelon { field, ncols, rows: Vec::new(), pivots: Vec::new(), pivot_row: HashMap::new() }
    }

    /// Row-reduces the given vectors.
    pub fn from_rows<I>(field: F, ncols: usize, rows: I) -> Result<Self>
    where
        I: IntoIterator<Item = SparseVec<F::Elem>>,
    {
        let mut ech = Self::new(field, ncols);
        for r in rows {
            ech.insert(r)?;
        }
        Ok(ech)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<F::Elem>] {
        &self.rows
    }

    /// Pivot column of each row, in row order.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row.contains_key(&col)
    }

    pub fn entry(&self, row: usize, col: usize) -> Option<&F::Elem> {
        lookup(&self.rows[row], col)
    }

    fn check_len(&self, v: &SparseVec<F::Elem>) -> Result<()> {
        match v.last() {
            Some((c, _)) if *c >= self.ncols => {
                Err(Error::Dimension(format!("column {c} outside 0..{}", self.ncols)))
            }
            _ => Ok(()),
        }
    }

    /// Remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let f = &self.field;
        let mut acc: BTreeMap<usize, F::Elem> = v.iter().cloned().collect();
        for (c, coeff) in v {
            if let Some(&r) = self.pivot_row.get(c) {
                // Pivot rows vanish on the other pivots, so one pass suffices.
                for (col, val) in &self.rows[r] {
                    let e = acc.entry(*col).or_insert_with(|| f.zero());
                    *e = f.sub_mul(e, coeff, val);
                }
            }
        }
        acc.into_iter().filter(|(_, x)| !f.is_zero(x)).collect()
    }

    pub fn contains(&self, v: &SparseVec<F::Elem>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span; returns `false` when it was already contained.
    pub fn insert(&mut self, v: SparseVec<F::Elem>) -> Result<bool> {
        self.check_len(&v)?;
        let rem = self.reduce(&v);
        let Some((lead, lead_val)) = rem.first().cloned() else {
            return Ok(false);
        };
        let f = self.field.clone();
        let inv = f.inv(&lead_val)?;
        let new_row: SparseVec<F::Elem> = rem.into_iter().map(|(c, x)| (c, f.mul(&x, &inv))).collect();
        self.rows.par_iter_mut().for_each(|row| {
            if let Some(e) = lookup(row, lead).cloned() {
                *row = axpy(&f, row, &e, &new_row);
            }
        });
        self.pivot_row.insert(lead, self.rows.len());
        self.pivots.push(lead);
        self.rows.push(new_row);
        Ok(true)
    }

    /// Appends a row already known to be reduced against this basis and to
    /// vanish on every existing pivot, with existing rows vanishing on its
    /// pivot. Used for block-structured inputs such as `x_j ⊗ I`.
    pub(crate) fn push_reduced_unchecked(&mut self, row: SparseVec<F::Elem>) {
        let lead = row[0].0;
        debug_assert!(self.field.is_one(&row[0].1));
        debug_assert!(!self.pivot_row.contains_key(&lead));
        self.pivot_row.insert(lead, self.rows.len());
        self.pivots.push(lead);
        self.rows.push(row);
    }

    /// Coordinates of `v` in the row basis, or `None` when `v` is outside the span.
    pub fn coordinates(&self, v: &SparseVec<F::Elem>) -> Option<Vec<F::Elem>> {
        if !self.contains(v) {
            return None;
        }
        Some(
            self.pivots
                .iter()
                .map(|c| lookup(v, *c).cloned().unwrap_or_else(|| self.field.zero()))
                .collect(),
        )
    }

    /// Basis of `{x : Σ_j row_i[j] x_j = 0 for all i}`, one vector per free column.
    pub fn null_space(&self) -> Vec<SparseVec<F::Elem>> {
        let f = &self.field;
        let mut out = Vec::new();
        for free in (0..self.ncols).filter(|c| !self.is_pivot(*c)) {
            let mut v: SparseVec<F::Elem> = vec![(free, f.one())];
            for (r, row) in self.rows.iter().enumerate() {
                if let Some(x) = lookup(row, free) {
                    v.push((self.pivots[r], f.neg(x)));
                }
            }
            v.sort_by_key(|(c, _)| *c);
            out.push(v);
        }
        out
    }

    /// Same span with rows ordered by pivot column (canonical RREF).
    pub fn canonical_rows(&self) -> Vec<SparseVec<F::Elem>> {
        let mut idx: Vec<usize> = (0..self.rows.len()).collect();
        idx.sort_by_key(|&i| self.pivots[i]);
        idx.into_iter().map(|i| self.rows[i].clone()).collect()
    }

    /// Exact equality of spans.
    pub fn same_span(&self, other: &Echelon<F>) -> bool {
        self.ncols == other.ncols
            && self.rank() == other.rank()
            && other.rows.iter().all(|r| self.contains(r))
    }
}

/// `a − c·b` for sorted sparse vectors.
pub(crate) fn axpy<F: Field>(f: &F, a: &[(usize, F::Elem)], c: &F::Elem, b: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            let x = f.neg(&f.mul(c, &b[j].1));
            if !f.is_zero(&x) {
                out.push((b[j].0, x));
            }
            j += 1;
        } else {
            let x = f.sub_mul(&a[i].1, c, &b[j].1);
            if !f.is_zero(&x) {
                out.push((a[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Drops zeros and sorts a dense row into sparse form.
pub fn sparse_from_dense<F: Field>(f: &F, dense: &[F::Elem]) -> SparseVec<F::Elem> {
    dense.iter().enumerate().filter(|(_, x)| !f.is_zero(x)).map(|(c, x)| (c, x.clone())).collect()
}

pub fn dense_from_sparse<F: Field>(f: &F, v: &SparseVec<F::Elem>, len: usize) -> Vec<F::Elem> {
    let mut out = vec![f.zero(); len];
    for (c, x) in v {
        out[*c] = x.clone();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, Rational, RationalField};

    fn row(d: &[i64]) -> SparseVec<Rational> {
        sparse_from_dense(&RationalField, &d.iter().map(|&x| rat(x, 1)).collect::<Vec<_>>())
    }

    #[test]
    fn rref_invariant_holds() {
        let ech = Echelon::from_rows(
            RationalField,
            4,
            [row(&[1, 2, 3, 4]), row(&[2, 4, 6, 8]), row(&[0, 1, 1, 0]), row(&[1, 0, 0, 1])],
        )
        .unwrap();
        assert_eq!(ech.rank(), 3);
        for (i, r) in ech.rows().iter().enumerate() {
            for (j, p) in ech.pivots().iter().enumerate() {
                let e = lookup(r, *p).cloned().unwrap_or_default();
                assert_eq!(e, if i == j { rat(1, 1) } else { rat(0, 1) });
            }
        }
    }

    #[test]
    fn null_space_is_annihilated() {
        let rows = [row(&[1, 2, 3, 4, 5]), row(&[0, 1, -1, 2, 0])];
        let ech = Echelon::from_rows(RationalField, 5, rows.clone()).unwrap();
        let ns = ech.null_space();
        assert_eq!(ns.len(), 3);
        for v in &ns {
            for r in &rows {
                let dot: Rational = r
                    .iter()
                    .map(|(c, x)| x * lookup(v, *c).cloned().unwrap_or_default())
                    .sum();
                assert_eq!(dot, rat(0, 1));
            }
        }
    }

    #[test]
    fn coordinates_reconstruct() {
        let ech = Echelon::from_rows(RationalField, 3, [row(&[1, 1, 0]), row(&[0, 1, 1])]).unwrap();
        assert!(ech.coordinates(&row(&[1, 0, 0])).is_none());
        let v = row(&[2, 5, 3]);
        let c = ech.coordinates(&v).unwrap();
        let mut acc = vec![rat(0, 1); 3];
        for (k, r) in ech.rows().iter().enumerate() {
            for (col, x) in r {
                acc[*col] += &c[k] * x;
            }
        }
        assert_eq!(sparse_from_dense(&RationalField, &acc), v);
    }

    #[test]
    fn rejects_out_of_range_columns() {
        let mut ech = Echelon::new(RationalField, 2);
        assert!(ech.insert(vec![(5, rat(1, 1))]).is_err());
    }
}
