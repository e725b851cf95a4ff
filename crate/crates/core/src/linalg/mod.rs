//! Exact and floating linear algebra shared by every module.

mod echelon;
mod numeric;

pub use echelon::{dense_from_sparse, sparse_from_dense, Echelon, SparseVec};
pub use numeric::{
    bisect, line_search_root, numeric_rank, numeric_rank_complex, real_poly_roots, span_equal_f64, RankReport,
    DEFAULT_RANK_TOL,
};

use crate::arith::Field;
use crate::error::{Error, Result};

/// Outcome of a span-membership query.
#[derive(Clone, Debug, PartialEq)]
pub struct Membership<E> {
    pub member: bool,
    /// Coefficients expressing the target in the given basis vectors.
    pub coordinates: Option<Vec<E>>,
}

/// Exact membership of `target` in the span of `basis`, by row reduction of
/// the basis augmented with an identity block that records coordinates.
pub fn span_membership<F: Field>(field: &F, basis: &[Vec<F::Elem>], target: &[F::Elem]) -> Result<Membership<F::Elem>> {
    let len = target.len();
    if let Some(bad) = basis.iter().find(|b| b.len() != len) {
        return Err(Error::Dimension(format!("basis vector of length {} vs target {}", bad.len(), len)));
    }
    let k = basis.len();
    let mut ech = Echelon::new(field.clone(), len + k);
    for (i, b) in basis.iter().enumerate() {
        let mut row = sparse_from_dense(field, b);
        row.push((len + i, field.one()));
        ech.insert(row)?;
    }
    let rem = ech.reduce(&sparse_from_dense(field, target));
    if rem.iter().any(|(c, _)| *c < len) {
        return Ok(Membership { member: false, coordinates: None });
    }
    let mut coords = vec![field.zero(); k];
    for (c, x) in rem {
        coords[c - len] = field.neg(&x);
    }
    Ok(Membership { member: true, coordinates: Some(coords) })
}

/// Float membership by rank comparison; vectors are normalized to unit
/// length first and singular values below `tol·σ_max` count as zero.
pub fn span_membership_f64(basis: &[Vec<f64>], target: &[f64], tol: f64) -> Result<Membership<f64>> {
    let len = target.len();
    if let Some(bad) = basis.iter().find(|b| b.len() != len) {
        return Err(Error::Dimension(format!("basis vector of length {} vs target {}", bad.len(), len)));
    }
    let tn = norm(target);
    if tn == 0.0 {
        return Ok(Membership { member: true, coordinates: Some(vec![0.0; basis.len()]) });
    }
    if basis.is_empty() {
        return Ok(Membership { member: false, coordinates: None });
    }
    let scaled: Vec<Vec<f64>> = basis.iter().map(|b| normalized(b)).collect();
    let b = nalgebra::DMatrix::from_fn(len, basis.len(), |i, j| scaled[j][i]);
    let rank_b = numeric_rank(&b, tol).rank;
    let mut aug = b.clone().insert_column(basis.len(), 0.0);
    for i in 0..len {
        aug[(i, basis.len())] = target[i] / tn;
    }
    let rank_aug = numeric_rank(&aug, tol).rank;
    if rank_aug > rank_b {
        return Ok(Membership { member: false, coordinates: None });
    }
    let svd = b.svd(true, true);
    let eps = tol * svd.singular_values.max();
    let t = nalgebra::DVector::from_column_slice(target);
    let x = svd.solve(&t, eps).map_err(|e| Error::Conditioning(e.to_string()))?;
    let coords = x
        .iter()
        .zip(basis)
        .map(|(xi, bv)| {
            let n = norm(bv);
            if n == 0.0 { 0.0 } else { xi / n }
        })
        .collect();
    Ok(Membership { member: true, coordinates: Some(coords) })
}

pub(crate) fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn normalized(v: &[f64]) -> Vec<f64> {
    let n = norm(v);
    if n == 0.0 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / n).collect()
    }
}

/// Exact rank of a dense matrix over `F`.
pub fn exact_rank<F: Field>(field: &F, rows: &[Vec<F::Elem>]) -> Result<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let ech = Echelon::from_rows(field.clone(), ncols, rows.iter().map(|r| sparse_from_dense(field, r)))?;
    Ok(ech.rank())
}
