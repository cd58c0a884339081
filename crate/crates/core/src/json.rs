//! JSON exchange formats. Rationals are written as canonical `"p/q"` or
//! `"n"` strings; on input plain JSON integers are accepted as well.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{Element, Monomial, MultiIndex, Signature};
use crate::automorphism::{
    FunctionalMap, Generator, InnerExp, Mode, NormalFormAut, ShiftV, TauAut, VerificationReport,
};
use crate::classification::{FaithfulnessWitness, GrowthRow, IsoCandidate, IsoSearchResult};
use crate::error::{Result, WeylError};
use crate::lattice::{BlockMatrix, Character, Lattice};
use crate::linalg::Matrix;
use crate::rational::{format_rational, parse_rational, Rational};

/// A rational given either as a string or as a JSON integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalJson {
    Str(String),
    Int(i64),
}

impl RationalJson {
    pub fn from_rational(q: &Rational) -> RationalJson {
        RationalJson::Str(format_rational(q))
    }

    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            RationalJson::Str(s) => parse_rational(s),
            RationalJson::Int(n) => Ok(Rational::from_integer((*n).into())),
        }
    }
}

fn rationals_out(v: &[Rational]) -> Vec<RationalJson> {
    v.iter().map(RationalJson::from_rational).collect()
}

fn rationals_in(v: &[RationalJson]) -> Result<Vec<Rational>> {
    v.iter().map(RationalJson::to_rational).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub ambient_dim: usize,
    pub generators: Vec<Vec<RationalJson>>,
}

impl LatticeJson {
    pub fn from_lattice(l: &Lattice) -> LatticeJson {
        LatticeJson {
            ambient_dim: l.ambient_dim(),
            generators: l.generators().iter().map(|g| rationals_out(g)).collect(),
        }
    }

    pub fn to_lattice(&self) -> Result<Lattice> {
        let gens = self
            .generators
            .iter()
            .map(|g| rationals_in(g))
            .collect::<Result<Vec<_>>>()?;
        Lattice::from_generators(self.ambient_dim, gens)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureJson {
    pub ell1: usize,
    pub ell2: usize,
    pub lattice: LatticeJson,
}

impl SignatureJson {
    pub fn from_signature(sig: &Signature) -> SignatureJson {
        SignatureJson {
            ell1: sig.ell1(),
            ell2: sig.ell2(),
            lattice: LatticeJson::from_lattice(sig.lattice()),
        }
    }

    pub fn to_signature(&self) -> Result<Arc<Signature>> {
        Signature::new(self.ell1, self.ell2, self.lattice.to_lattice()?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub alpha: Vec<RationalJson>,
    pub i: Vec<u32>,
    pub mu: Vec<u32>,
    pub coeff: RationalJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub signature: SignatureJson,
    pub terms: Vec<TermJson>,
}

impl ElementJson {
    /// Terms in canonical order.
    pub fn from_element(e: &Element) -> ElementJson {
        let sig = e.signature();
        ElementJson {
            signature: SignatureJson::from_signature(sig),
            terms: e
                .terms()
                .map(|(m, c)| TermJson {
                    alpha: rationals_out(&sig.lattice().point(&m.alpha)),
                    i: m.i.entries().to_vec(),
                    mu: m.mu.entries().to_vec(),
                    coeff: RationalJson::from_rational(c),
                })
                .collect(),
        }
    }

    /// Reads the element; when `sig` is given the embedded signature must match it.
    pub fn to_element(&self, sig: Option<&Arc<Signature>>) -> Result<Element> {
        let own = self.signature.to_signature()?;
        let sig = match sig {
            Some(s) if Signature::same(s, &own) => s.clone(),
            Some(_) => return Err(WeylError::SignatureMismatch),
            None => own,
        };
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let alpha = sig.lattice().require_coordinates(&rationals_in(&t.alpha)?)?;
                Ok((
                    Monomial::new(alpha, MultiIndex(t.i.clone()), MultiIndex(t.mu.clone())),
                    t.coeff.to_rational()?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Element::from_terms(&sig, terms)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauJson {
    #[serde(rename = "G")]
    pub g: Vec<Vec<RationalJson>>,
    pub f: Vec<RationalJson>,
}

impl TauJson {
    pub fn new(g: &BlockMatrix, f: &Character) -> TauJson {
        TauJson {
            g: g.entries().to_rows().iter().map(|r| rationals_out(r)).collect(),
            f: rationals_out(f.values()),
        }
    }

    pub fn parts(&self, ell1: usize, ell2: usize) -> Result<(BlockMatrix, Character)> {
        let rows = self.g.iter().map(|r| rationals_in(r)).collect::<Result<Vec<_>>>()?;
        let g = BlockMatrix::new(ell1, ell2, Matrix::from_rows(rows)?)?;
        let f = Character::new(rationals_in(&self.f)?)?;
        Ok((g, f))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomorphismJson {
    pub tau: TauJson,
    pub u: ElementJson,
    pub v: Vec<RationalJson>,
    pub eps: u8,
    pub mode: Mode,
}

impl AutomorphismJson {
    pub fn from_normal_form(nf: &NormalFormAut, mode: Mode) -> AutomorphismJson {
        AutomorphismJson {
            tau: TauJson::new(nf.tau.g(), nf.tau.f()),
            u: ElementJson::from_element(nf.u.u()),
            v: rationals_out(nf.v.v()),
            eps: u8::from(nf.eps),
            mode,
        }
    }

    /// The signature is the one embedded in `u`.
    pub fn to_normal_form(&self, sig: Option<&Arc<Signature>>) -> Result<(NormalFormAut, Mode)> {
        let u = self.u.to_element(sig)?;
        let sig = u.signature().clone();
        let (g, f) = self.tau.parts(sig.ell1(), sig.ell2())?;
        let eps = match self.eps {
            0 => false,
            1 => true,
            other => return Err(WeylError::Json(format!("eps must be 0 or 1, got {other}"))),
        };
        let nf = NormalFormAut::new(
            TauAut::new(&sig, g, f)?,
            InnerExp::new(u)?,
            ShiftV::new(&sig, rationals_in(&self.v)?)?,
            eps,
        )?;
        Ok((nf, self.mode))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageJson {
    pub generator: String,
    pub image: ElementJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionalJson {
    pub source: SignatureJson,
    pub mode: Mode,
    pub images: Vec<ImageJson>,
}

pub fn parse_generator(s: &str) -> Result<Generator> {
    let idx = |t: &str| -> Result<usize> {
        t.parse::<usize>()
            .ok()
            .filter(|&k| k >= 1)
            .map(|k| k - 1)
            .ok_or_else(|| WeylError::Json(format!("bad generator name {s:?}")))
    };
    if s == "1" {
        Ok(Generator::Unit)
    } else if let Some(t) = s.strip_prefix("x^-b") {
        Ok(Generator::XInv(idx(t)?))
    } else if let Some(t) = s.strip_prefix("x^b") {
        Ok(Generator::X(idx(t)?))
    } else if let Some(t) = s.strip_prefix("x^1_[").and_then(|t| t.strip_suffix(']')) {
        Ok(Generator::XPoly(idx(t)?))
    } else if let Some(t) = s.strip_prefix('d') {
        Ok(Generator::D(idx(t)?))
    } else {
        Err(WeylError::Json(format!("bad generator name {s:?}")))
    }
}

impl FunctionalJson {
    pub fn from_map(map: &FunctionalMap) -> FunctionalJson {
        use crate::automorphism::WeylMap;
        FunctionalJson {
            source: SignatureJson::from_signature(map.source()),
            mode: map.mode(),
            images: map
                .images()
                .into_iter()
                .map(|(g, e)| ImageJson {
                    generator: g.to_string(),
                    image: ElementJson::from_element(e),
                })
                .collect(),
        }
    }

    pub fn to_map(&self) -> Result<FunctionalMap> {
        let src = self.source.to_signature()?;
        let mut dst: Option<Arc<Signature>> = None;
        let mut images = Vec::with_capacity(self.images.len());
        for img in &self.images {
            let e = img.image.to_element(dst.as_ref())?;
            dst.get_or_insert_with(|| e.signature().clone());
            images.push((parse_generator(&img.generator)?, e));
        }
        let dst = dst.unwrap_or_else(|| src.clone());
        let dst = if Signature::same(&dst, &src) { src.clone() } else { dst };
        FunctionalMap::from_images(&src, &dst, self.mode, images)
    }
}

/// Session configuration file: `{"ell1", "ell2", "gamma_generators"}` plus
/// optional defaults.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigJson {
    pub ell1: usize,
    pub ell2: usize,
    pub gamma_generators: Vec<Vec<RationalJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
}

impl ConfigJson {
    pub fn signature(&self) -> Result<Arc<Signature>> {
        let gens = self
            .gamma_generators
            .iter()
            .map(|g| rationals_in(g))
            .collect::<Result<Vec<_>>>()?;
        Signature::new(self.ell1, self.ell2, Lattice::from_generators(self.ell1 + self.ell2, gens)?)
    }
}

pub fn element_value(e: &Element) -> Value {
    serde_json::to_value(ElementJson::from_element(e)).expect("serializable")
}

pub fn verification_report_value(r: &VerificationReport) -> Value {
    json!({
        "passed": r.passed,
        "mode": r.mode,
        "trials": r.trials,
        "seed": r.seed,
        "checked": r.checked,
        "counterexample": r.counterexample.as_ref().map(|cx| json!({
            "a": element_value(&cx.a),
            "b": element_value(&cx.b),
            "lhs": element_value(&cx.lhs),
            "rhs": element_value(&cx.rhs),
        })),
    })
}

pub fn candidate_value(c: &IsoCandidate) -> Value {
    serde_json::to_value(TauJson::new(&c.g, &c.f)).expect("serializable")
}

pub fn iso_result_value(r: &IsoSearchResult) -> Value {
    match r {
        IsoSearchResult::Found { candidate, tried } => json!({
            "result": "found",
            "tried": tried,
            "candidate": candidate_value(candidate),
        }),
        IsoSearchResult::Impossible(why) => json!({"result": "impossible", "reason": why}),
        IsoSearchResult::Unknown { tried } => json!({"result": "unknown", "tried": tried}),
    }
}

pub fn witness_value(w: &FaithfulnessWitness) -> Value {
    json!({
        "n": w.n,
        "alpha": rationals_out(&w.alpha),
        "image": element_value(&w.image),
    })
}

pub fn growth_value(rows: &[GrowthRow]) -> Value {
    serde_json::to_value(rows).expect("serializable")
}

pub fn to_pretty<T: Serialize>(t: &T) -> String {
    serde_json::to_string_pretty(t).expect("serializable")
}

pub fn from_str<'a, T: Deserialize<'a>>(s: &'a str) -> Result<T> {
    serde_json::from_str(s).map_err(WeylError::from)
}
