use std::sync::Arc;

use num_traits::{One, Zero};

use super::tau::check_len;
use super::{check_source, extend, GeneratorImages, WeylMap};
use crate::algebra::{Element, Monomial, MultiIndex, Signature};
use crate::error::Result;
use crate::rational::Rational;

/// `sigma_v`: `x^alpha` fixed, `x^{1_[p]} -> x^{1_[p]} + v_p` for `p < l1`,
/// `d_q -> d_q + v_q` for `q >= l1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ShiftV {
    sig: Arc<Signature>,
    v: Vec<Rational>,
}

impl ShiftV {
    pub fn new(sig: &Arc<Signature>, v: Vec<Rational>) -> Result<ShiftV> {
        check_len(sig, &v)?;
        Ok(ShiftV { sig: sig.clone(), v })
    }

    pub fn identity(sig: &Arc<Signature>) -> ShiftV {
        ShiftV {
            sig: sig.clone(),
            v: vec![Rational::zero(); sig.ell()],
        }
    }

    pub fn v(&self) -> &[Rational] {
        &self.v
    }

    pub fn v1(&self) -> &[Rational] {
        &self.v[..self.sig.ell1()]
    }

    pub fn v2(&self) -> &[Rational] {
        &self.v[self.sig.ell1()..]
    }

    pub fn is_identity(&self) -> bool {
        self.v.iter().all(Zero::is_zero)
    }

    pub fn compose(&self, other: &ShiftV) -> ShiftV {
        ShiftV {
            sig: self.sig.clone(),
            v: self.v.iter().zip(&other.v).map(|(a, b)| a + b).collect(),
        }
    }
}

impl WeylMap for ShiftV {
    fn source(&self) -> &Arc<Signature> {
        &self.sig
    }

    fn apply(&self, w: &Element) -> Result<Element> {
        check_source(self, w)?;
        if self.is_identity() {
            return Ok(w.clone());
        }
        let sig = &self.sig;
        let l = sig.ell();
        let ell1 = sig.ell1();
        let x_poly = (0..ell1)
            .map(|p| Ok(Element::x_poly(sig, p)?.add_unchecked(&Element::scalar(sig, self.v[p].clone()), &Rational::one())))
            .collect::<Result<Vec<_>>>()?;
        let d = (0..l)
            .map(|q| {
                let dq = Element::d(sig, q, 1)?;
                Ok(if q < ell1 {
                    dq
                } else {
                    dq.add_unchecked(&Element::scalar(sig, self.v[q].clone()), &Rational::one())
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let images = GeneratorImages {
            target: sig,
            x_lattice: |alpha: &[i64]| {
                Element::monomial(
                    sig,
                    Monomial::new(alpha.to_vec(), MultiIndex::zero(l), MultiIndex::zero(l)),
                    Rational::one(),
                )
            },
            x_poly: &x_poly,
            d: &d,
        };
        extend(&images, w, false)
    }
}
