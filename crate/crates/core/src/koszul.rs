//! Quadratic duals and the Koszul character identity
//! `Ch_A(g, t) · Ch_{(A^!)^*}(g, −t) = 1`.

use crate::arith::{Cyclotomic, CyclotomicField, Field};
use crate::error::{Error, Result};
use crate::gradedalg::{word_letters, GradedEngine, Presentation};
use crate::heisenberg::{HeisenbergElement, SimpleRep};
use crate::linalg::{Echelon, SparseVec};

/// A quadratic presentation, its dual, and bases of `R` and `R^⊥` whose
/// pairing matrix is zero.
#[derive(Clone, Debug)]
pub struct QuadraticDualPair {
    pub original: Presentation,
    pub dual: Presentation,
    pub relation_basis: Vec<SparseVec<Cyclotomic>>,
    pub dual_basis: Vec<SparseVec<Cyclotomic>>,
    /// `pairing[r][s] = Σ_w relation_basis[r][w] · dual_basis[s][w]`.
    pub pairing: Vec<Vec<Cyclotomic>>,
}

impl QuadraticDualPair {
    pub fn pairing_is_zero(&self) -> bool {
        self.pairing.iter().flatten().all(Cyclotomic::is_zero)
    }
}

fn dot(p: usize, a: &SparseVec<Cyclotomic>, b: &SparseVec<Cyclotomic>) -> Cyclotomic {
    let mut acc = Cyclotomic::zero(p);
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                acc = &acc + &(&a[i].1 * &b[j].1);
                i += 1;
                j += 1;
            }
        }
    }
    acc
}

/// Dual relations: the annihilator of `R` under
/// `(x_i*⊗x_j*)(x_k⊗x_l) = δ_{ik}δ_{jl}`.
pub fn quadratic_dual(pres: &Presentation) -> Result<QuadraticDualPair> {
    if !pres.is_quadratic() {
        return Err(Error::Degree("quadratic dual needs degree-2 relations".into()));
    }
    let p = pres.prime();
    let field = CyclotomicField::new(p)?;
    let ech = Echelon::from_rows(field, p * p, pres.relations().iter().map(|r| r.terms.clone()))?;
    let relation_basis = ech.canonical_rows();
    let dual_basis = ech.null_space();
    let rels = dual_basis
        .iter()
        .map(|v| v.iter().map(|(w, c)| (word_letters(*w, 2, p), c.clone())).collect())
        .collect();
    let dual = Presentation::custom(p, rels)?;
    let pairing = relation_basis.iter().map(|r| dual_basis.iter().map(|s| dot(p, r, s)).collect()).collect();
    Ok(QuadraticDualPair { original: pres.clone(), dual, relation_basis, dual_basis, pairing })
}

/// Coefficients `1..=N` of `Ch_A(g,t) · Ch_{(A^!)^*}(g,−t)`; all zero for
/// Koszul algebras. The dual is generated by `V* ≅ V_{p−i}`, and passing to
/// its graded dual conjugates the character.
pub fn koszul_identity_check(pres: &Presentation, rep: &SimpleRep, g: &HeisenbergElement, max_degree: usize) -> Result<Vec<Cyclotomic>> {
    let pair = quadratic_dual(pres)?;
    let p = pres.prime();
    let ch_a = GradedEngine::new(pres.clone())?.character_coeffs(rep, g, max_degree)?;
    let ch_dual = GradedEngine::new(pair.dual)?.character_coeffs(&rep.dual(), g, max_degree)?;
    let ch_dual_star: Vec<Cyclotomic> = ch_dual.iter().map(Cyclotomic::conjugate).collect();
    let f = CyclotomicField::new(p)?;
    Ok((1..=max_degree)
        .map(|n| {
            (0..=n).fold(f.zero(), |acc, j| {
                let term = &ch_a[j] * &ch_dual_star[n - j];
                if (n - j) % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                }
            })
        })
        .collect())
}
