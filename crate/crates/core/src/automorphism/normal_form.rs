use std::sync::Arc;

use num_traits::One;

use super::{InnerExp, ShiftV, Sigma1, TauAut, WeylMap};
use crate::algebra::{Element, Signature};
use crate::error::{Result, WeylError};
use crate::rational::Rational;

/// `sigma_tau o sigma_u o sigma_v o sigma_1^eps`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NormalFormAut {
    pub tau: TauAut,
    pub u: InnerExp,
    pub v: ShiftV,
    pub eps: bool,
}

impl NormalFormAut {
    pub fn new(tau: TauAut, u: InnerExp, v: ShiftV, eps: bool) -> Result<NormalFormAut> {
        let sig = tau.signature();
        if !Signature::same(sig, u.source()) || !Signature::same(sig, v.source()) {
            return Err(WeylError::SignatureMismatch);
        }
        Ok(NormalFormAut { tau, u, v, eps })
    }

    pub fn identity(sig: &Arc<Signature>) -> NormalFormAut {
        NormalFormAut {
            tau: TauAut::identity(sig),
            u: InnerExp::identity(sig),
            v: ShiftV::identity(sig),
            eps: false,
        }
    }

    pub fn from_tau(tau: TauAut) -> NormalFormAut {
        let sig = tau.signature().clone();
        NormalFormAut {
            tau,
            ..NormalFormAut::identity(&sig)
        }
    }

    pub fn from_inner(u: InnerExp) -> NormalFormAut {
        let sig = u.source().clone();
        NormalFormAut {
            u,
            ..NormalFormAut::identity(&sig)
        }
    }

    pub fn from_shift(v: ShiftV) -> NormalFormAut {
        let sig = v.source().clone();
        NormalFormAut {
            v,
            ..NormalFormAut::identity(&sig)
        }
    }

    pub fn sigma1(sig: &Arc<Signature>) -> NormalFormAut {
        NormalFormAut {
            eps: true,
            ..NormalFormAut::identity(sig)
        }
    }

    pub fn signature(&self) -> &Arc<Signature> {
        self.tau.signature()
    }

    pub fn is_identity(&self) -> bool {
        self.tau.is_identity() && self.u.is_identity() && self.v.is_identity() && !self.eps
    }
}

impl WeylMap for NormalFormAut {
    fn source(&self) -> &Arc<Signature> {
        self.tau.signature()
    }

    fn apply(&self, w: &Element) -> Result<Element> {
        let mut out = w.clone();
        if self.eps {
            out = Sigma1::new(self.signature()).apply(&out)?;
        }
        out = self.v.apply(&out)?;
        out = self.u.apply(&out)?;
        self.tau.apply(&out)
    }
}

/// `sigma_tau^-1 sigma_v sigma_tau = sigma_{u} sigma_{v'}`; returns `(u, v')`
/// with `u = -tau[v]` and `v' = tau(v)`.
pub fn conjugate_shift(tau: &TauAut, v: &[Rational]) -> Result<(Element, Vec<Rational>)> {
    let u = tau.bracket_shift(v)?.scale(&-Rational::one());
    Ok((u, tau.shift_image(v)?))
}

/// Normal form of `a o b` for two automorphisms without a `sigma_1` factor:
/// `(tau tau', sigma_tau'^-1(u) - tau'[v] + sigma_{tau'(v)}(u'), tau'(v) + v')`.
pub fn compose_normal_forms(a: &NormalFormAut, b: &NormalFormAut) -> Result<NormalFormAut> {
    if a.eps || b.eps {
        return Err(WeylError::Sigma1NotSupported);
    }
    if !Signature::same(a.signature(), b.signature()) {
        return Err(WeylError::SignatureMismatch);
    }
    let sig = a.signature();
    let tau = a.tau.compose(&b.tau)?;
    let (conj_u, conj_v) = conjugate_shift(&b.tau, a.v.v())?;
    let shifted = ShiftV::new(sig, conj_v)?;
    let u = b
        .tau
        .inverse()?
        .apply(a.u.u())?
        .add_unchecked(&conj_u, &Rational::one())
        .add_unchecked(&shifted.apply(b.u.u())?, &Rational::one());
    let v = shifted.compose(&b.v);
    NormalFormAut::new(tau, InnerExp::new(u)?, v, false)
}
