use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{MultiPoly, PolyRing};
use crate::arith::parse_rational;
use crate::error::{Error, Result};

/// One term of the JSON form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub exponents: Vec<u32>,
}

/// JSON form: variable names plus terms in descending graded-lex order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

/// Text form, descending graded-lex: `c * x^2 * y + c`.
pub(super) fn to_text(p: &MultiPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let vars = p.ring().vars();
    let parts: Vec<String> = p
        .terms()
        .rev()
        .map(|(m, c)| {
            let mut s = c.to_string();
            for (v, &e) in vars.iter().zip(m.exponents()) {
                match e {
                    0 => {}
                    1 => s.push_str(&format!(" * {v}")),
                    _ => s.push_str(&format!(" * {v}^{e}")),
                }
            }
            s
        })
        .collect();
    parts.join(" + ")
}

impl MultiPoly {
    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            vars: self.ring().vars().to_vec(),
            terms: self
                .terms()
                .rev()
                .map(|(m, c)| TermJson { coeff: c.to_string(), exponents: m.exponents().to_vec() })
                .collect(),
        }
    }

    /// Rebuilds a polynomial in `ring`, whose variable names must match.
    pub fn from_json(ring: &Arc<PolyRing>, j: &PolyJson) -> Result<MultiPoly> {
        if j.vars != ring.vars() {
            return Err(Error::RingMismatch);
        }
        let terms = j
            .terms
            .iter()
            .map(|t| Ok((t.exponents.clone(), parse_rational(&t.coeff)?)))
            .collect::<Result<Vec<_>>>()?;
        MultiPoly::from_terms(ring, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_and_json_round_trip() {
        let r = PolyRing::new(["a", "b"]);
        let (a, b) = (MultiPoly::var(&r, 0), MultiPoly::var(&r, 1));
        let f = &(&a.pow(2) - &(&a * &b).scale(&crate::arith::rat(3, 2))) + &MultiPoly::from_int(&r, 4);
        assert_eq!(f.to_string(), "1 * a^2 + -3/2 * a * b + 4");
        let back = MultiPoly::from_json(&r, &f.to_json()).unwrap();
        assert_eq!(back, f);
        assert_eq!(MultiPoly::zero(&r).to_string(), "0");
    }
}
