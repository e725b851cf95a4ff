//! Degreewise computation of graded quotients `T(V)/I`: ideal pieces, Hilbert
//! functions and character series under the Heisenberg action.

mod presentation;

pub use presentation::{make_presentation, word_index, word_letters, FieldTag, Presentation, PresentationSpec, Relation};

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{Cyclotomic, CyclotomicField, Field, RationalField};
use crate::error::{Error, Result};
use crate::heisenberg::{character, conjugacy_classes, HeisenbergElement, SimpleRep};
use crate::linalg::{Echelon, SparseVec};

/// Default cap on the planned matrix cells `p^n · p^{n−1}` of one degree.
pub const DEFAULT_MAX_CELLS: u128 = 4_000_000;

/// Environment variable overriding [`DEFAULT_MAX_CELLS`].
pub const MAX_CELLS_ENV: &str = "ALGTOOL_MAX_CELLS";

pub fn default_max_cells() -> u128 {
    std::env::var(MAX_CELLS_ENV).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_MAX_CELLS)
}

/// Row-reduced basis of one ideal piece, over the presentation's field.
#[derive(Clone, Debug)]
pub enum IdealBasis {
    Rational(Echelon<RationalField>),
    Cyclotomic(Echelon<CyclotomicField>),
}

impl IdealBasis {
    pub fn rank(&self) -> usize {
        match self {
            IdealBasis::Rational(e) => e.rank(),
            IdealBasis::Cyclotomic(e) => e.rank(),
        }
    }

    pub fn ncols(&self) -> usize {
        match self {
            IdealBasis::Rational(e) => e.ncols(),
            IdealBasis::Cyclotomic(e) => e.ncols(),
        }
    }

    /// Rows in canonical RREF order, as cyclotomic vectors.
    pub fn rows_cyclotomic(&self, p: usize) -> Vec<SparseVec<Cyclotomic>> {
        match self {
            IdealBasis::Rational(e) => e
                .canonical_rows()
                .into_iter()
                .map(|r| r.into_iter().map(|(c, x)| (c, Cyclotomic::from_rational(p, x))).collect())
                .collect(),
            IdealBasis::Cyclotomic(e) => e.canonical_rows(),
        }
    }

    /// The same span over ℚ(ω_p); RREF survives field extension.
    pub fn to_cyclotomic(&self, p: usize) -> Result<Echelon<CyclotomicField>> {
        match self {
            IdealBasis::Cyclotomic(e) => Ok(e.clone()),
            IdealBasis::Rational(e) => {
                let mut out = Echelon::new(CyclotomicField::new(p)?, e.ncols());
                for r in e.rows() {
                    out.push_reduced_unchecked(r.iter().map(|(c, x)| (*c, Cyclotomic::from_rational(p, x.clone()))).collect());
                }
                Ok(out)
            }
        }
    }
}

/// One degree of the ideal.
#[derive(Clone, Debug)]
pub struct DegreePiece {
    pub degree: usize,
    pub ideal_rank: usize,
    pub quotient_dim: usize,
    pub ideal_basis: IdealBasis,
}

#[derive(Clone, Debug)]
enum Pieces {
    Rational(Vec<Echelon<RationalField>>),
    Cyclotomic(Vec<Echelon<CyclotomicField>>),
}

/// Incremental engine: `I_n = V⊗I_{n−1} + I_{n−1}⊗V + R_n`.
#[derive(Clone, Debug)]
pub struct GradedEngine {
    pres: Presentation,
    cap: u128,
    pieces: Pieces,
}

fn pow_usize(p: usize, n: usize) -> u128 {
    (p as u128).pow(n as u32)
}

fn extend<F: Field>(
    field: &F,
    pres: &Presentation,
    pieces: &mut Vec<Echelon<F>>,
    n: usize,
    cap: u128,
    convert: impl Fn(&Cyclotomic) -> F::Elem,
) -> Result<()> {
    let p = pres.prime();
    while pieces.len() <= n {
        let m = pieces.len();
        if m == 0 {
            pieces.push(Echelon::new(field.clone(), 1));
            continue;
        }
        let cells = pow_usize(p, m) * pow_usize(p, m - 1);
        if cells > cap {
            return Err(Error::Resource { degree: m, cells, cap });
        }
        let block = p.pow(m as u32 - 1);
        let prev = &pieces[m - 1];
        let mut ech = Echelon::new(field.clone(), block * p);
        for j in 0..p {
            for row in prev.rows() {
                ech.push_reduced_unchecked(row.iter().map(|(c, x)| (j * block + c, x.clone())).collect());
            }
        }
        for row in prev.rows() {
            for j in 0..p {
                ech.insert(row.iter().map(|(c, x)| (c * p + j, x.clone())).collect())?;
            }
        }
        for rel in pres.relations().iter().filter(|r| r.degree == m) {
            ech.insert(rel.terms.iter().map(|(c, x)| (*c, convert(x))).collect())?;
        }
        pieces.push(ech);
    }
    Ok(())
}

/// `tr(g | I_n)`: the coefficient of each basis row in `g·row` is the entry
/// of `g·row` at that row's pivot.
fn trace_on<F: Field>(ech: &Echelon<F>, p: usize, index: usize, g: &HeisenbergElement, n: usize) -> Cyclotomic {
    let (a, b, k) = g.exponents();
    let f = ech.field();
    let mut buckets = vec![f.zero(); p];
    for (r, &piv) in ech.pivots().iter().enumerate() {
        let mut src = 0usize;
        let mut letter_sum = 0usize;
        for l in word_letters(piv, n, p) {
            let s = (l + a) % p;
            src = src * p + s;
            letter_sum += s;
        }
        if let Some(x) = ech.entry(r, src) {
            let e = (index * ((b * letter_sum + n * k) % p)) % p;
            buckets[e] = f.add(&buckets[e], x);
        }
    }
    buckets
        .iter()
        .enumerate()
        .fold(Cyclotomic::zero(p), |acc, (e, x)| &acc + &f.to_cyclotomic(x, p).mul_omega_pow(e as i64))
}

/// `g` applied to a tensor in `V^{⊗n}` through `V_index`.
pub fn act_on_tensor(p: usize, index: usize, g: &HeisenbergElement, n: usize, v: &SparseVec<Cyclotomic>) -> SparseVec<Cyclotomic> {
    let (a, b, k) = g.exponents();
    let mut out: Vec<(usize, Cyclotomic)> = v
        .iter()
        .map(|(w, c)| {
            let letters = word_letters(*w, n, p);
            let sum: usize = letters.iter().sum();
            let target = letters.iter().fold(0, |acc, &l| acc * p + (l + p - a) % p);
            let e = (index * ((b * sum + n * k) % p)) % p;
            (target, c.mul_omega_pow(e as i64))
        })
        .collect();
    out.sort_by_key(|(c, _)| *c);
    out
}

/// One row of a character table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassRow {
    pub rep: String,
    pub size: usize,
    pub coeffs: Vec<Cyclotomic>,
}

/// Character series coefficients per conjugacy class, degrees `0..=N`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CharacterTable {
    pub kind: String,
    pub params: Vec<String>,
    #[serde(rename = "N")]
    pub max_degree: usize,
    pub rep_index: usize,
    pub hilbert: Vec<usize>,
    pub classes: Vec<ClassRow>,
}

impl CharacterTable {
    /// Equality of all character rows (ignores labels).
    pub fn same_characters(&self, other: &CharacterTable) -> bool {
        self.classes.len() == other.classes.len()
            && self.classes.iter().zip(&other.classes).all(|(x, y)| x.rep == y.rep && x.coeffs == y.coeffs)
    }
}

impl GradedEngine {
    pub fn new(pres: Presentation) -> Result<Self> {
        Self::with_cap(pres, default_max_cells())
    }

    pub fn with_cap(pres: Presentation, cap: u128) -> Result<Self> {
        let pieces = match pres.field_tag() {
            FieldTag::Rational => Pieces::Rational(Vec::new()),
            FieldTag::Cyclotomic => {
                CyclotomicField::new(pres.prime())?;
                Pieces::Cyclotomic(Vec::new())
            }
        };
        Ok(GradedEngine { pres, cap, pieces })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    /// Computes every piece up to degree `n`.
    pub fn ensure(&mut self, n: usize) -> Result<()> {
        let p = self.pres.prime();
        match &mut self.pieces {
            Pieces::Rational(v) => extend(&RationalField, &self.pres, v, n, self.cap, |c| {
                c.as_rational().cloned().expect("rational presentation")
            }),
            Pieces::Cyclotomic(v) => extend(&CyclotomicField::new(p)?, &self.pres, v, n, self.cap, Clone::clone),
        }
    }

    pub fn ideal_rank(&mut self, n: usize) -> Result<usize> {
        self.ensure(n)?;
        Ok(match &self.pieces {
            Pieces::Rational(v) => v[n].rank(),
            Pieces::Cyclotomic(v) => v[n].rank(),
        })
    }

    pub fn quotient_dim(&mut self, n: usize) -> Result<usize> {
        let r = self.ideal_rank(n)?;
        Ok(self.pres.prime().pow(n as u32) - r)
    }

    pub fn piece(&mut self, n: usize) -> Result<DegreePiece> {
        self.ensure(n)?;
        let ideal_basis = match &self.pieces {
            Pieces::Rational(v) => IdealBasis::Rational(v[n].clone()),
            Pieces::Cyclotomic(v) => IdealBasis::Cyclotomic(v[n].clone()),
        };
        let ideal_rank = ideal_basis.rank();
        Ok(DegreePiece { degree: n, ideal_rank, quotient_dim: ideal_basis.ncols() - ideal_rank, ideal_basis })
    }

    pub fn hilbert(&mut self, max_degree: usize) -> Result<Vec<usize>> {
        (0..=max_degree).map(|n| self.quotient_dim(n)).collect()
    }

    /// Errors unless `g·r` lies in the ideal for every relation `r`.
    pub fn check_stable(&mut self, rep: &SimpleRep, g: &HeisenbergElement) -> Result<()> {
        let p = self.pres.prime();
        let index = full_index(rep, p, g)?;
        let mut degrees: Vec<usize> = self.pres.relations().iter().map(|r| r.degree).collect();
        degrees.sort_unstable();
        degrees.dedup();
        for d in degrees {
            let ech = self.piece(d)?.ideal_basis.to_cyclotomic(p)?;
            for rel in self.pres.relations().iter().filter(|r| r.degree == d) {
                if !ech.contains(&act_on_tensor(p, index, g, d, &rel.terms)) {
                    return Err(Error::Unstable(format!("{g} in V_{index}")));
                }
            }
        }
        Ok(())
    }

    fn coeffs_unchecked(&self, index: usize, chi: &Cyclotomic, g: &HeisenbergElement, n_max: usize) -> Vec<Cyclotomic> {
        let p = self.pres.prime();
        (0..=n_max)
            .map(|n| {
                let tr = match &self.pieces {
                    Pieces::Rational(v) => trace_on(&v[n], p, index, g, n),
                    Pieces::Cyclotomic(v) => trace_on(&v[n], p, index, g, n),
                };
                &chi.pow(n as u64) - &tr
            })
            .collect()
    }

    /// `χ_{A_n}(g)` for `n = 0..=N`.
    pub fn character_coeffs(&mut self, rep: &SimpleRep, g: &HeisenbergElement, max_degree: usize) -> Result<Vec<Cyclotomic>> {
        let index = full_index(rep, self.pres.prime(), g)?;
        self.check_stable(rep, g)?;
        self.ensure(max_degree)?;
        let chi = character(rep, g)?;
        Ok(self.coeffs_unchecked(index, &chi, g, max_degree))
    }

    /// Rows for every conjugacy class; stability is checked on `e₁` and `e₂`.
    pub fn character_table(&mut self, rep: &SimpleRep, max_degree: usize) -> Result<CharacterTable> {
        let p = self.pres.prime();
        let e1 = HeisenbergElement::e1(p)?;
        let index = full_index(rep, p, &e1)?;
        self.check_stable(rep, &e1)?;
        self.check_stable(rep, &HeisenbergElement::e2(p)?)?;
        self.ensure(max_degree)?;
        let hilbert = self.hilbert(max_degree)?;
        let classes = conjugacy_classes(p)?;
        let this = &*self;
        let rows = classes
            .par_iter()
            .map(|cls| {
                let g = cls.representative;
                let chi = character(rep, &g)?;
                Ok(ClassRow { rep: g.to_string(), size: cls.size, coeffs: this.coeffs_unchecked(index, &chi, &g, max_degree) })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CharacterTable {
            kind: self.pres.kind().to_string(),
            params: self.pres.params().to_vec(),
            max_degree,
            rep_index: index,
            hilbert,
            classes: rows,
        })
    }
}

fn full_index(rep: &SimpleRep, p: usize, g: &HeisenbergElement) -> Result<usize> {
    if rep.prime() != p {
        return Err(Error::PrimeMismatch(p, rep.prime()));
    }
    if g.prime() != p {
        return Err(Error::PrimeMismatch(p, g.prime()));
    }
    match rep {
        SimpleRep::Full { index, .. } => Ok(*index),
        SimpleRep::Linear { .. } => Err(Error::Parameter("generators must span a p-dimensional representation".into())),
    }
}

/// Degree-n piece of the ideal.
pub fn ideal_piece(pres: &Presentation, n: usize) -> Result<DegreePiece> {
    GradedEngine::new(pres.clone())?.piece(n)
}

pub fn hilbert(pres: &Presentation, max_degree: usize) -> Result<Vec<usize>> {
    GradedEngine::new(pres.clone())?.hilbert(max_degree)
}

pub fn character_coeffs(pres: &Presentation, g: &HeisenbergElement, rep: &SimpleRep, max_degree: usize) -> Result<Vec<Cyclotomic>> {
    GradedEngine::new(pres.clone())?.character_coeffs(rep, g, max_degree)
}

pub fn character_table(pres: &Presentation, rep: &SimpleRep, max_degree: usize) -> Result<CharacterTable> {
    GradedEngine::new(pres.clone())?.character_table(rep, max_degree)
}
