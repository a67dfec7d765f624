//! JSON forms of polynomials, matrices, words and witnesses.
//!
//! Coefficients travel as decimal strings (`"-3/4"`) so that arbitrary
//! precision survives the round trip; generator indices are 1-based.

use serde::{Deserialize, Serialize};

use crate::elementary::{ElemWord, Witness};
use crate::error::{Error, Result};
use crate::forms::GroupCase;
use crate::local::{FactorCertificate, LocRing, LocalizedPoly, PatchWitness};
use crate::matrix::{Matrix, MatrixG};
use crate::ring::{CoefficientRing, GradedPoly, PolyRing};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub ring: String,
    pub num_vars: usize,
    pub terms: Vec<(Vec<u32>, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub entries: Vec<Vec<PolyJson>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenJson {
    pub i: usize,
    pub j: usize,
    pub arg: PolyJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordJson {
    pub case: GroupCase,
    pub n: usize,
    pub gens: Vec<GenJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorJson {
    pub label: String,
    pub matrix: MatrixJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub target: MatrixJson,
    pub factors: Vec<FactorJson>,
    pub checked: bool,
}

/// An element `num / s^k` of a localization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalizedJson {
    pub num: PolyJson,
    pub k: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalGenJson {
    pub i: usize,
    pub j: usize,
    pub arg: LocalizedJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalWordJson {
    pub case: GroupCase,
    pub n: usize,
    pub s: String,
    pub gens: Vec<LocalGenJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalFactorJson {
    pub label: String,
    pub entries: Vec<Vec<LocalizedJson>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub s: String,
    pub required_l: u32,
    pub dilation_matches: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub local_word: Option<LocalWordJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub expansion: Option<Vec<LocalFactorJson>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatchFactorJson {
    pub matrix: MatrixJson,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate: Option<CertificateJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BEntryJson {
    pub s: String,
    pub l: u32,
    pub c: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatchWitnessJson {
    pub target: MatrixJson,
    pub b: Vec<BEntryJson>,
    pub factors: Vec<PatchFactorJson>,
    pub checked: bool,
}

impl From<&GradedPoly> for PolyJson {
    fn from(p: &GradedPoly) -> Self {
        PolyJson {
            ring: p.coeff_ring().to_string(),
            num_vars: p.num_vars(),
            terms: p
                .terms()
                .map(|(m, c)| (m.exponents().to_vec(), c.to_string()))
                .collect(),
        }
    }
}

impl PolyJson {
    pub fn poly_ring(&self) -> Result<PolyRing> {
        Ok(PolyRing::new(
            self.ring.parse::<CoefficientRing>()?,
            self.num_vars,
        ))
    }

    pub fn to_poly(&self) -> Result<GradedPoly> {
        let ring = self.poly_ring()?;
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| Ok((e.clone(), ring.coeffs.parse_coeff(c)?)))
            .collect::<Result<Vec<_>>>()?;
        GradedPoly::from_terms(ring, terms)
    }
}

impl From<&MatrixG> for MatrixJson {
    fn from(m: &MatrixG) -> Self {
        MatrixJson {
            n: m.n(),
            entries: m
                .rows()
                .iter()
                .map(|r| r.iter().map(PolyJson::from).collect())
                .collect(),
        }
    }
}

impl MatrixJson {
    pub fn to_matrix(&self) -> Result<MatrixG> {
        if self.entries.len() != self.n || self.n == 0 {
            return Err(Error::Malformed(format!(
                "{} rows for n = {}",
                self.entries.len(),
                self.n
            )));
        }
        let ring = self.entries[0]
            .first()
            .ok_or_else(|| Error::Malformed("empty row".into()))?
            .poly_ring()?;
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(PolyJson::to_poly).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(&ring, rows)
    }
}

impl From<&ElemWord<GradedPoly>> for WordJson {
    fn from(w: &ElemWord<GradedPoly>) -> Self {
        WordJson {
            case: w.case(),
            n: w.n(),
            gens: w
                .gens()
                .iter()
                .map(|g| GenJson {
                    i: g.i(),
                    j: g.j(),
                    arg: g.arg().into(),
                })
                .collect(),
        }
    }
}

impl WordJson {
    /// Parses the word; `ring` is needed only when the word is empty.
    pub fn to_word(&self, ring: Option<PolyRing>) -> Result<ElemWord<GradedPoly>> {
        let ring = match (self.gens.first(), ring) {
            (Some(g), _) => g.arg.poly_ring()?,
            (None, Some(r)) => r,
            (None, None) => {
                return Err(Error::Malformed("empty word without a ring".into()));
            }
        };
        let triples = self
            .gens
            .iter()
            .map(|g| Ok((g.i, g.j, g.arg.to_poly()?)))
            .collect::<Result<Vec<_>>>()?;
        ElemWord::from_triples(self.case, self.n, &ring, triples)
    }
}

impl From<&Witness<GradedPoly>> for WitnessJson {
    fn from(w: &Witness<GradedPoly>) -> Self {
        WitnessJson {
            target: (&w.target).into(),
            factors: w
                .factors
                .iter()
                .map(|(label, m)| FactorJson {
                    label: label.clone(),
                    matrix: m.into(),
                })
                .collect(),
            checked: w.checked,
        }
    }
}

impl From<&LocalizedPoly> for LocalizedJson {
    fn from(p: &LocalizedPoly) -> Self {
        LocalizedJson {
            num: p.num().into(),
            k: p.k(),
        }
    }
}

impl LocalizedJson {
    pub fn to_localized(&self, loc: &LocRing) -> Result<LocalizedPoly> {
        let num = self.num.to_poly()?;
        if num.ring() != loc.ring {
            return Err(Error::RingMismatch(format!(
                "{} vs {}",
                num.ring(),
                loc.ring
            )));
        }
        Ok(loc.element(num, self.k))
    }
}

impl From<&ElemWord<LocalizedPoly>> for LocalWordJson {
    fn from(w: &ElemWord<LocalizedPoly>) -> Self {
        LocalWordJson {
            case: w.case(),
            n: w.n(),
            s: w.ctx().s.to_string(),
            gens: w
                .gens()
                .iter()
                .map(|g| LocalGenJson {
                    i: g.i(),
                    j: g.j(),
                    arg: g.arg().into(),
                })
                .collect(),
        }
    }
}

impl From<&FactorCertificate> for CertificateJson {
    fn from(c: &FactorCertificate) -> Self {
        CertificateJson {
            s: c.s.to_string(),
            required_l: c.required_l,
            dilation_matches: c.dilation_matches,
            local_word: c.local_word.as_ref().map(LocalWordJson::from),
            expansion: c.expansion.as_ref().map(|e| {
                e.iter()
                    .map(|(label, m)| LocalFactorJson {
                        label: label.clone(),
                        entries: m
                            .rows()
                            .iter()
                            .map(|r| r.iter().map(LocalizedJson::from).collect())
                            .collect(),
                    })
                    .collect()
            }),
        }
    }
}

impl From<&PatchWitness> for PatchWitnessJson {
    fn from(w: &PatchWitness) -> Self {
        let d = &w.data;
        PatchWitnessJson {
            target: (&w.target).into(),
            b: (0..d.len())
                .map(|i| BEntryJson {
                    s: d.s[i].to_string(),
                    l: d.l[i],
                    c: d.c[i].to_string(),
                })
                .collect(),
            factors: w
                .factors
                .iter()
                .map(|f| PatchFactorJson {
                    matrix: (&f.matrix).into(),
                    certificate: f.certificate.as_ref().map(CertificateJson::from),
                })
                .collect(),
            checked: w.checked,
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elementary::word_eval;

    #[test]
    fn polynomial_round_trip() {
        let r = PolyRing::new(CoefficientRing::Rationals, 2);
        let p = r.parse("3/4*x^2*y - 2 + y").unwrap();
        let j = PolyJson::from(&p);
        assert_eq!(j.ring, "rat");
        let text = to_json(&j);
        let back: PolyJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_poly().unwrap(), p);
        assert!(text.contains("\"3/4\""));
    }

    #[test]
    fn reference_shape() {
        let r = PolyRing::new(CoefficientRing::Integers, 1);
        let j = PolyJson::from(&r.parse("2 + 3*x + x^2").unwrap());
        assert_eq!(
            to_json(&j),
            r#"{"ring":"int","num_vars":1,"terms":[[[0],"2"],[[1],"3"],[[2],"1"]]}"#
        );
    }

    #[test]
    fn malformed_polynomials() {
        let bad: PolyJson =
            serde_json::from_str(r#"{"ring":"int","num_vars":1,"terms":[[[0,1],"2"]]}"#).unwrap();
        assert!(bad.to_poly().is_err());
        let frac: PolyJson =
            serde_json::from_str(r#"{"ring":"int","num_vars":1,"terms":[[[1],"1/2"]]}"#).unwrap();
        assert!(frac.to_poly().is_err());
        let ring: PolyJson =
            serde_json::from_str(r#"{"ring":"fp:4","num_vars":1,"terms":[]}"#).unwrap();
        assert!(ring.to_poly().is_err());
    }

    #[test]
    fn word_and_matrix_round_trip() {
        let r = PolyRing::new(CoefficientRing::Integers, 2);
        let w = ElemWord::from_triples(
            GroupCase::Symplectic,
            6,
            &r,
            [(1, 3, r.parse("x + 1").unwrap()), (5, 2, r.var(1))],
        )
        .unwrap();
        let j = WordJson::from(&w);
        let back: WordJson = serde_json::from_str(&to_json(&j)).unwrap();
        assert_eq!(back.to_word(None).unwrap(), w);
        let m = word_eval(&w);
        let mj: MatrixJson = serde_json::from_str(&to_json(&MatrixJson::from(&m))).unwrap();
        assert_eq!(mj.to_matrix().unwrap(), m);
        assert!(to_json(&j).contains("\"case\":\"symplectic\""));
    }
}
