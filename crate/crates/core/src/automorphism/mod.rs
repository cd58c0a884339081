//! Automorphisms of `W` in both of its structures.
//!
//! The associative automorphism group is generated by the lattice/character
//! symmetries `sigma_tau`, the inner exponentials `sigma_u = exp(ad u)` for
//! `u` in `A`, and the affine shifts `sigma_v`; the Lie automorphism group
//! adds the order-two twist `sigma_1`. Every automorphism is represented in
//! the normal form `sigma_tau sigma_u sigma_v sigma_1^eps`
//! ([`NormalFormAut`]) or extensionally by its images on generators
//! ([`FunctionalAut`]).

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Element, Monomial, Signature};
use crate::error::{Result, WeylError};

mod decompose;
mod functional;
mod inner;
mod normal_form;
mod shift;
mod sigma1;
mod tau;
mod verify;

pub use decompose::decompose_automorphism;
pub use functional::{first_disagreement, FunctionalAut, FunctionalMap, Generator};
pub use inner::InnerExp;
pub use normal_form::{compose_normal_forms, conjugate_shift, NormalFormAut};
pub use shift::ShiftV;
pub use sigma1::Sigma1;
pub use tau::TauAut;
pub use verify::{verify_automorphism, Counterexample, VerificationReport};

/// Which structure of `W` a map is meant to preserve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Lie,
    Assoc,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Lie => "lie",
            Mode::Assoc => "assoc",
        })
    }
}

impl FromStr for Mode {
    type Err = WeylError;

    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "lie" => Ok(Mode::Lie),
            "assoc" => Ok(Mode::Assoc),
            other => Err(WeylError::Parse(format!("unknown mode {other:?} (expected lie|assoc)"))),
        }
    }
}

/// A linear map between algebras of Weyl type.
pub trait WeylMap {
    fn source(&self) -> &Arc<Signature>;

    fn target(&self) -> &Arc<Signature> {
        self.source()
    }

    fn apply(&self, w: &Element) -> Result<Element>;
}

pub(crate) fn check_source(map: &dyn WeylMap, w: &Element) -> Result<()> {
    if Signature::same(map.source(), w.signature()) {
        Ok(())
    } else {
        Err(WeylError::SignatureMismatch)
    }
}

/// Images of the associative generators used to extend a map to monomials.
pub(crate) struct GeneratorImages<'a, F: Fn(&[i64]) -> Result<Element>> {
    pub target: &'a Arc<Signature>,
    pub x_lattice: F,
    pub x_poly: &'a [Element],
    pub d: &'a [Element],
}

/// Extends generator images to `w` monomial by monomial.
///
/// Each `x^{alpha,i} d^mu` is factored as `x^alpha * prod_p (x^{1_[p]})^{i_p} * prod_q d_q^{mu_q}`
/// and the images are multiplied in that order, or in the opposite order
/// when `reverse` is set (anti-homomorphic extension).
pub(crate) fn extend<F: Fn(&[i64]) -> Result<Element>>(
    images: &GeneratorImages<'_, F>,
    w: &Element,
    reverse: bool,
) -> Result<Element> {
    let mut powers: HashMap<(bool, usize, u32), Element> = HashMap::new();
    let mut power = |is_d: bool, idx: usize, k: u32| -> Element {
        powers
            .entry((is_d, idx, k))
            .or_insert_with(|| {
                let base = if is_d { &images.d[idx] } else { &images.x_poly[idx] };
                base.pow(k)
            })
            .clone()
    };
    let mut acc = crate::algebra::Accumulator::new();
    for (m, c) in w.terms() {
        let mut factors: Vec<Element> = vec![(images.x_lattice)(&m.alpha)?];
        for (p, &k) in m.i.entries().iter().enumerate() {
            if k > 0 {
                factors.push(power(false, p, k));
            }
        }
        for (q, &k) in m.mu.entries().iter().enumerate() {
            if k > 0 {
                factors.push(power(true, q, k));
            }
        }
        if reverse {
            factors.reverse();
        }
        let mut img = factors[0].clone();
        for f in &factors[1..] {
            img = img.mul(f)?;
        }
        for (m2, c2) in img.terms() {
            acc.add(m2.clone(), c2 * c);
        }
    }
    Ok(acc.finish(images.target))
}

pub(crate) fn monomial_element(sig: &Arc<Signature>, m: &Monomial) -> Element {
    Element::from_terms_unchecked(sig, [(m.clone(), num_traits::One::one())])
}

/// `outer o inner`.
#[derive(Clone, Debug)]
pub struct Composed<A, B>(pub A, pub B);

impl<A: WeylMap, B: WeylMap> WeylMap for Composed<A, B> {
    fn source(&self) -> &Arc<Signature> {
        self.1.source()
    }

    fn target(&self) -> &Arc<Signature> {
        self.0.target()
    }

    fn apply(&self, w: &Element) -> Result<Element> {
        self.0.apply(&self.1.apply(w)?)
    }
}

impl<T: WeylMap + ?Sized> WeylMap for &T {
    fn source(&self) -> &Arc<Signature> {
        (**self).source()
    }

    fn target(&self) -> &Arc<Signature> {
        (**self).target()
    }

    fn apply(&self, w: &Element) -> Result<Element> {
        (**self).apply(w)
    }
}
