use std::sync::Arc;

use num_traits::One;

use super::{check_source, WeylMap};
use crate::algebra::{Element, Signature};
use crate::error::{Result, WeylError};
use crate::rational::Rational;

/// `sigma_u = exp(ad u)` for `u` in `A`, with `ad u (w) = [u, w]`.
///
/// `u` is stored with its constant term removed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InnerExp {
    u: Element,
}

impl InnerExp {
    pub fn new(u: Element) -> Result<InnerExp> {
        if !u.is_in_a() {
            return Err(WeylError::NotInA);
        }
        Ok(InnerExp {
            u: u.without_constant(),
        })
    }

    pub fn identity(sig: &Arc<Signature>) -> InnerExp {
        InnerExp {
            u: Element::zero(sig),
        }
    }

    pub fn u(&self) -> &Element {
        &self.u
    }

    pub fn is_identity(&self) -> bool {
        self.u.is_zero()
    }

    /// `(ad u)^s (w)`.
    pub fn ad_power(&self, w: &Element, s: u32) -> Result<Element> {
        let mut cur = w.clone();
        for _ in 0..s {
            if cur.is_zero() {
                break;
            }
            cur = self.u.bracket(&cur)?;
        }
        Ok(cur)
    }
}

impl WeylMap for InnerExp {
    fn source(&self) -> &Arc<Signature> {
        self.u.signature()
    }

    fn apply(&self, w: &Element) -> Result<Element> {
        check_source(self, w)?;
        if self.u.is_zero() {
            return Ok(w.clone());
        }
        let mut out = w.clone();
        let mut term = w.clone();
        let mut s = 0u32;
        loop {
            s += 1;
            term = self.u.bracket(&term)?;
            if term.is_zero() {
                break;
            }
            let k = Rational::one() / Rational::from_integer(s.into());
            term = term.scale(&k);
            out = out.add_unchecked(&term, &Rational::one());
        }
        Ok(out)
    }
}
