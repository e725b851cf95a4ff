use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{is_odd_prime, Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::linalg::SparseVec;

/// Coefficient field of a presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FieldTag {
    Rational,
    Cyclotomic,
}

/// Homogeneous tensor: coefficients indexed by words of length `degree`.
///
/// A word `(j₀, …, j_{n−1})` has index `Σ j_s p^{n−1−s}`, so the first
/// letter is the most significant digit.
#[derive(Clone, Debug, PartialEq)]
pub struct Relation {
    pub degree: usize,
    pub terms: SparseVec<Cyclotomic>,
}

pub fn word_index(word: &[usize], p: usize) -> usize {
    word.iter().fold(0, |acc, &j| acc * p + j)
}

pub fn word_letters(mut idx: usize, n: usize, p: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for s in (0..n).rev() {
        out[s] = idx % p;
        idx /= p;
    }
    out
}

/// Quadratic (or higher) presentation of a quotient of the tensor algebra on
/// p generators.
#[derive(Clone, Debug, PartialEq)]
pub struct Presentation {
    kind: String,
    params: Vec<String>,
    p: usize,
    relations: Vec<Relation>,
}

impl Presentation {
    /// Relations given as `(word, coefficient)` lists.
    pub fn custom(p: usize, relations: Vec<Vec<(Vec<usize>, Cyclotomic)>>) -> Result<Self> {
        Self::build("custom", Vec::new(), p, relations)
    }

    fn build(kind: &str, params: Vec<String>, p: usize, relations: Vec<Vec<(Vec<usize>, Cyclotomic)>>) -> Result<Self> {
        if !is_odd_prime(p as u64) {
            return Err(Error::Modulus(p as u64));
        }
        let mut out = Vec::with_capacity(relations.len());
        for rel in relations {
            let degree = rel.first().map(|(w, _)| w.len()).unwrap_or(0);
            if degree == 0 {
                return Err(Error::Parameter("empty or degree-0 relation".into()));
            }
            let mut acc: BTreeMap<usize, Cyclotomic> = BTreeMap::new();
            for (w, c) in rel {
                if w.len() != degree {
                    return Err(Error::Degree("relation is not homogeneous".into()));
                }
                if w.iter().any(|&j| j >= p) {
                    return Err(Error::OutOfRange(format!("generator index in {w:?} for p = {p}")));
                }
                if c.prime() != p {
                    return Err(Error::PrimeMismatch(p, c.prime()));
                }
                let e = acc.entry(word_index(&w, p)).or_insert_with(|| Cyclotomic::zero(p));
                *e = &*e + &c;
            }
            let terms: SparseVec<Cyclotomic> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            if terms.is_empty() {
                return Err(Error::Parameter("relation is zero".into()));
            }
            out.push(Relation { degree, terms });
        }
        Ok(Presentation { kind: kind.into(), params, p, relations: out })
    }

    pub fn kind(&self) -> &str {
        &self.kind
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn prime(&self) -> usize {
        self.p
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn is_quadratic(&self) -> bool {
        self.relations.iter().all(|r| r.degree == 2)
    }

    pub fn field_tag(&self) -> FieldTag {
        let rational = self.relations.iter().all(|r| r.terms.iter().all(|(_, c)| c.as_rational().is_some()));
        if rational {
            FieldTag::Rational
        } else {
            FieldTag::Cyclotomic
        }
    }

    /// Human-readable relation, e.g. `x1*x2 - x2*x1`.
    pub fn relation_text(&self, r: &Relation) -> String {
        let parts: Vec<String> = r
            .terms
            .iter()
            .map(|(w, c)| {
                let word: Vec<String> = word_letters(*w, r.degree, self.p).iter().map(|j| format!("x{j}")).collect();
                format!("({c})*{}", word.join("*"))
            })
            .collect();
        parts.join(" + ")
    }
}

/// The catalog of presentations.
#[derive(Clone, Debug, PartialEq)]
pub enum PresentationSpec {
    /// Commutative polynomial ring on p generators.
    Polynomial { p: usize },
    /// Commutators plus `x_{k+i} x_{k−i}` for `1 ≤ i ≤ (p−3)/2`.
    Cycle { p: usize },
    /// `a x_{i+1}x_{i+2} + b x_{i+2}x_{i+1} + c x_i²` on three generators.
    Sklyanin3 { a: Rational, b: Rational, c: Rational },
    /// `a₀{x_{k+i}, x_{k−i}} − a_i x_k²` for `1 ≤ i ≤ (p−1)/2`.
    CliffordC { p: usize, a: Vec<Rational> },
    /// `CliffordC(5, (1, a, b))`.
    Sklyanin5 { a: Rational, b: Rational },
    /// Commutators plus `a x_i² + a² x_{i+1}x_{i−1} − x_{i+2}x_{i−2}` on five generators.
    CurveCa { a: Rational },
}

impl PresentationSpec {
    /// Parses a kind name with its parameters.
    pub fn parse(kind: &str, p: Option<usize>, params: &[Rational]) -> Result<Self> {
        let need = |n: usize| -> Result<()> {
            if params.len() == n {
                Ok(())
            } else {
                Err(Error::Arity { expected: n, got: params.len() })
            }
        };
        let prime = || p.ok_or_else(|| Error::Parameter(format!("'{kind}' needs a prime")));
        Ok(match kind {
            "polynomial" => {
                need(0)?;
                PresentationSpec::Polynomial { p: prime()? }
            }
            "cycle" => {
                need(0)?;
                PresentationSpec::Cycle { p: prime()? }
            }
            "sklyanin3" => {
                need(3)?;
                PresentationSpec::Sklyanin3 { a: params[0].clone(), b: params[1].clone(), c: params[2].clone() }
            }
            "cliffordC" | "cliffordc" => PresentationSpec::CliffordC { p: prime()?, a: params.to_vec() },
            "sklyanin5" => {
                need(2)?;
                PresentationSpec::Sklyanin5 { a: params[0].clone(), b: params[1].clone() }
            }
            "curveCa" | "curveca" => {
                need(1)?;
                PresentationSpec::CurveCa { a: params[0].clone() }
            }
            other => return Err(Error::UnknownKind(other.into())),
        })
    }
}

fn m(p: usize, k: i64) -> usize {
    k.rem_euclid(p as i64) as usize
}

fn commutators(p: usize) -> Vec<Vec<(Vec<usize>, Cyclotomic)>> {
    let mut out = Vec::new();
    for i in 0..p {
        for j in i + 1..p {
            out.push(vec![(vec![i, j], Cyclotomic::one(p)), (vec![j, i], Cyclotomic::from_int(p, -1))]);
        }
    }
    out
}

fn q(p: usize, r: &Rational) -> Cyclotomic {
    Cyclotomic::from_rational(p, r.clone())
}

fn check_prime(p: usize) -> Result<()> {
    if is_odd_prime(p as u64) {
        Ok(())
    } else {
        Err(Error::Modulus(p as u64))
    }
}

/// Builds the relations of a catalog presentation.
pub fn make_presentation(spec: &PresentationSpec) -> Result<Presentation> {
    match spec {
        PresentationSpec::Polynomial { p } => {
            check_prime(*p)?;
            Presentation::build("polynomial", Vec::new(), *p, commutators(*p))
        }
        PresentationSpec::Cycle { p } => {
            check_prime(*p)?;
            let p = *p;
            if p < 5 {
                return Err(Error::Parameter("the cycle presentation needs p ≥ 5".into()));
            }
            let mut rels = commutators(p);
            for i in 1..=((p - 3) / 2) as i64 {
                for k in 0..p as i64 {
                    rels.push(vec![(vec![m(p, k + i), m(p, k - i)], Cyclotomic::one(p))]);
                }
            }
            Presentation::build("cycle", Vec::new(), p, rels)
        }
        PresentationSpec::Sklyanin3 { a, b, c } => {
            let p = 3;
            let rels = (0..3)
                .map(|i| {
                    vec![
                        (vec![(i + 1) % 3, (i + 2) % 3], q(p, a)),
                        (vec![(i + 2) % 3, (i + 1) % 3], q(p, b)),
                        (vec![i, i], q(p, c)),
                    ]
                })
                .collect();
            Presentation::build("sklyanin3", vec![a.to_string(), b.to_string(), c.to_string()], p, rels)
        }
        PresentationSpec::CliffordC { p, a } => {
            check_prime(*p)?;
            clifford_relations("cliffordC", *p, a)
        }
        PresentationSpec::Sklyanin5 { a, b } => {
            let mut pres = clifford_relations("sklyanin5", 5, &[Rational::one(), a.clone(), b.clone()])?;
            pres.params = vec![a.to_string(), b.to_string()];
            Ok(pres)
        }
        PresentationSpec::CurveCa { a } => {
            let p = 5;
            let mut rels = commutators(p);
            let a2 = a * a;
            for i in 0..p as i64 {
                rels.push(vec![
                    (vec![m(p, i), m(p, i)], q(p, a)),
                    (vec![m(p, i + 1), m(p, i - 1)], q(p, &a2)),
                    (vec![m(p, i + 2), m(p, i - 2)], Cyclotomic::from_int(p, -1)),
                ]);
            }
            Presentation::build("curveCa", vec![a.to_string()], p, rels)
        }
    }
}

fn clifford_relations(kind: &str, p: usize, a: &[Rational]) -> Result<Presentation> {
    let half = (p - 1) / 2;
    if a.len() != half + 1 {
        return Err(Error::Arity { expected: half + 1, got: a.len() });
    }
    if a.iter().all(Zero::is_zero) {
        return Err(Error::Parameter("all Clifford parameters vanish".into()));
    }
    let mut rels = Vec::new();
    for i in 1..=half as i64 {
        for k in 0..p as i64 {
            let (u, v) = (m(p, k + i), m(p, k - i));
            rels.push(vec![
                (vec![u, v], q(p, &a[0])),
                (vec![v, u], q(p, &a[0])),
                (vec![m(p, k), m(p, k)], q(p, &-&a[i as usize])),
            ]);
        }
    }
    Presentation::build(kind, a.iter().map(ToString::to_string).collect(), p, rels)
}
