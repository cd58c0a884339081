use std::sync::Arc;

use num_traits::One;

use super::{check_source, monomial_element, WeylMap};
use crate::algebra::{Element, Monomial, MultiIndex, Signature};
use crate::error::Result;
use crate::rational::Rational;

/// The order-two Lie automorphism `x^{alpha,i} d^mu -> -(-d)^mu * x^{alpha,i}`.
///
/// It is not multiplicative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sigma1 {
    sig: Arc<Signature>,
}

impl Sigma1 {
    pub fn new(sig: &Arc<Signature>) -> Sigma1 {
        Sigma1 { sig: sig.clone() }
    }
}

impl WeylMap for Sigma1 {
    fn source(&self) -> &Arc<Signature> {
        &self.sig
    }

    fn apply(&self, w: &Element) -> Result<Element> {
        check_source(self, w)?;
        let l = self.sig.ell();
        w.map_terms(|m, c| {
            let x = monomial_element(&self.sig, &Monomial::new(m.alpha.clone(), m.i.clone(), MultiIndex::zero(l)));
            let d = Element::d_mono(&self.sig, &m.mu)?;
            let sign = if m.level() % 2 == 0 { -Rational::one() } else { Rational::one() };
            Ok(d.mul(&x)?.scale(&(sign * c)))
        })
    }
}
