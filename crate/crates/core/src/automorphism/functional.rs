use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed};

use super::{extend, GeneratorImages, Mode, WeylMap};
use crate::algebra::{Element, Signature};
use crate::error::{Result, WeylError};
use crate::rational::{format_rational, Rational};

/// One member of the generating set: `1`, `x^{b_k}`, `x^{-b_k}`, `x^{1_[p]}`, `d_q` (0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    Unit,
    X(usize),
    XInv(usize),
    XPoly(usize),
    D(usize),
}

impl Generator {
    /// Every generator of `sig` in a fixed order: derivations first.
    pub fn all(sig: &Signature) -> Vec<Generator> {
        let l = sig.ell();
        let mut out: Vec<Generator> = (0..l).map(Generator::D).collect();
        out.extend((0..sig.ell1()).map(Generator::XPoly));
        for k in 0..l {
            out.push(Generator::X(k));
            out.push(Generator::XInv(k));
        }
        out.push(Generator::Unit);
        out
    }

    pub fn element(&self, sig: &Arc<Signature>) -> Result<Element> {
        let l = sig.ell();
        let unit = |k: usize, s: i64| {
            let mut c = vec![0; l];
            c[k] = s;
            c
        };
        match *self {
            Generator::Unit => Ok(Element::one(sig)),
            Generator::X(k) => Element::x(sig, &unit(k, 1)),
            Generator::XInv(k) => Element::x(sig, &unit(k, -1)),
            Generator::XPoly(p) => Element::x_poly(sig, p),
            Generator::D(q) => Element::d(sig, q, 1),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Unit => write!(f, "1"),
            Generator::X(k) => write!(f, "x^b{}", k + 1),
            Generator::XInv(k) => write!(f, "x^-b{}", k + 1),
            Generator::XPoly(p) => write!(f, "x^1_[{}]", p + 1),
            Generator::D(q) => write!(f, "d{}", q + 1),
        }
    }
}

/// A map presented by its images on the generating set.
///
/// In associative mode the images are extended multiplicatively. In Lie
/// mode the image of `1` must be `c0 = +-1`; for `c0 = 1` the extension is
/// multiplicative and for `c0 = -1` the map is `-chi` where `chi` is the
/// anti-multiplicative extension of `g -> -phi(g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionalMap {
    src: Arc<Signature>,
    dst: Arc<Signature>,
    mode: Mode,
    unit: Element,
    x_basis: Vec<Element>,
    x_basis_inv: Vec<Element>,
    x_poly: Vec<Element>,
    d: Vec<Element>,
}

/// A [`FunctionalMap`] from an algebra to itself.
pub type FunctionalAut = FunctionalMap;

impl FunctionalMap {
    pub fn from_map(map: &dyn WeylMap, mode: Mode) -> Result<FunctionalMap> {
        let src = map.source().clone();
        let dst = map.target().clone();
        let img = |g: Generator| map.apply(&g.element(&src)?);
        let l = src.ell();
        Ok(FunctionalMap {
            unit: img(Generator::Unit)?,
            x_basis: (0..l).map(|k| img(Generator::X(k))).collect::<Result<_>>()?,
            x_basis_inv: (0..l).map(|k| img(Generator::XInv(k))).collect::<Result<_>>()?,
            x_poly: (0..src.ell1()).map(|p| img(Generator::XPoly(p))).collect::<Result<_>>()?,
            d: (0..l).map(|q| img(Generator::D(q))).collect::<Result<_>>()?,
            src,
            dst,
            mode,
        })
    }

    /// Builds a map from an explicit image table.
    pub fn from_images(
        src: &Arc<Signature>,
        dst: &Arc<Signature>,
        mode: Mode,
        images: impl IntoIterator<Item = (Generator, Element)>,
    ) -> Result<FunctionalMap> {
        let mut table: HashMap<Generator, Element> = images.into_iter().collect();
        let mut take = |g: Generator| -> Result<Element> {
            let e = table
                .remove(&g)
                .ok_or_else(|| WeylError::InvalidSignature(format!("missing image of {g}")))?;
            if !Signature::same(e.signature(), dst) {
                return Err(WeylError::SignatureMismatch);
            }
            Ok(e)
        };
        let l = src.ell();
        let unit = take(Generator::Unit)?;
        let x_basis = (0..l).map(|k| take(Generator::X(k))).collect::<Result<_>>()?;
        let x_basis_inv = (0..l).map(|k| take(Generator::XInv(k))).collect::<Result<_>>()?;
        let x_poly = (0..src.ell1()).map(|p| take(Generator::XPoly(p))).collect::<Result<_>>()?;
        let d = (0..l).map(|q| take(Generator::D(q))).collect::<Result<_>>()?;
        if let Some(g) = table.keys().next() {
            return Err(WeylError::InvalidSignature(format!("generator {g} does not exist")));
        }
        Ok(FunctionalMap {
            src: src.clone(),
            dst: dst.clone(),
            mode,
            unit,
            x_basis,
            x_basis_inv,
            x_poly,
            d,
        })
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn with_mode(mut self, mode: Mode) -> FunctionalMap {
        self.mode = mode;
        self
    }

    pub fn image(&self, g: Generator) -> &Element {
        match g {
            Generator::Unit => &self.unit,
            Generator::X(k) => &self.x_basis[k],
            Generator::XInv(k) => &self.x_basis_inv[k],
            Generator::XPoly(p) => &self.x_poly[p],
            Generator::D(q) => &self.d[q],
        }
    }

    /// `(generator, image)` pairs in [`Generator::all`] order.
    pub fn images(&self) -> Vec<(Generator, &Element)> {
        Generator::all(&self.src)
            .into_iter()
            .map(|g| (g, self.image(g)))
            .collect()
    }

    /// `psi o self`, computed on the image table.
    pub fn then(&self, psi: &dyn WeylMap) -> Result<FunctionalMap> {
        let map = |e: &Element| psi.apply(e);
        Ok(FunctionalMap {
            src: self.src.clone(),
            dst: psi.target().clone(),
            mode: self.mode,
            unit: map(&self.unit)?,
            x_basis: self.x_basis.iter().map(map).collect::<Result<_>>()?,
            x_basis_inv: self.x_basis_inv.iter().map(map).collect::<Result<_>>()?,
            x_poly: self.x_poly.iter().map(map).collect::<Result<_>>()?,
            d: self.d.iter().map(map).collect::<Result<_>>()?,
        })
    }

    /// True when every generator is mapped to itself.
    pub fn is_identity_on_generators(&self) -> Result<bool> {
        if !Signature::same(&self.src, &self.dst) {
            return Ok(false);
        }
        for g in Generator::all(&self.src) {
            if *self.image(g) != g.element(&self.src)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `+1` for a multiplicative extension, `-1` for the twisted one.
    fn orientation(&self) -> Result<Rational> {
        if self.mode == Mode::Assoc {
            return Ok(Rational::one());
        }
        match self.unit.as_scalar() {
            Some(c) if c.abs().is_one() => Ok(c),
            _ => Err(WeylError::NotAnAutomorphism(format!(
                "image of 1 is {:?}, expected +1 or -1",
                self.unit
            ))),
        }
    }
}

impl WeylMap for FunctionalMap {
    fn source(&self) -> &Arc<Signature> {
        &self.src
    }

    fn target(&self) -> &Arc<Signature> {
        &self.dst
    }

    fn apply(&self, w: &Element) -> Result<Element> {
        if !Signature::same(&self.src, w.signature()) {
            return Err(WeylError::SignatureMismatch);
        }
        let c0 = self.orientation()?;
        let twisted = !c0.is_one();
        let adjust = |e: &Element| if twisted { -e } else { e.clone() };
        let x_basis: Vec<Element> = self.x_basis.iter().map(adjust).collect();
        let x_basis_inv: Vec<Element> = self.x_basis_inv.iter().map(adjust).collect();
        let x_poly: Vec<Element> = self.x_poly.iter().map(adjust).collect();
        let d: Vec<Element> = self.d.iter().map(adjust).collect();
        let cache: RefCell<HashMap<(usize, i64), Element>> = RefCell::new(HashMap::new());
        let dst = &self.dst;
        let images = GeneratorImages {
            target: dst,
            x_lattice: |alpha: &[i64]| {
                let mut acc = Element::one(dst);
                for (k, &n) in alpha.iter().enumerate() {
                    if n == 0 {
                        continue;
                    }
                    let p = cache
                        .borrow_mut()
                        .entry((k, n))
                        .or_insert_with(|| {
                            if n > 0 {
                                x_basis[k].pow(n as u32)
                            } else {
                                x_basis_inv[k].pow(n.unsigned_abs() as u32)
                            }
                        })
                        .clone();
                    acc = acc.mul(&p)?;
                }
                Ok(acc)
            },
            x_poly: &x_poly,
            d: &d,
        };
        let out = extend(&images, w, twisted)?;
        Ok(if twisted { -&out } else { out })
    }
}

/// The first generator on which `a` and `b` differ, with both images.
pub fn first_disagreement(a: &dyn WeylMap, b: &dyn WeylMap) -> Result<Option<(Generator, Element, Element)>> {
    if !Signature::same(a.source(), b.source()) {
        return Err(WeylError::SignatureMismatch);
    }
    for g in Generator::all(a.source()) {
        let e = g.element(a.source())?;
        let (ia, ib) = (a.apply(&e)?, b.apply(&e)?);
        if ia != ib {
            return Ok(Some((g, ia, ib)));
        }
    }
    Ok(None)
}

pub(crate) fn describe(e: &Element) -> String {
    match e.as_scalar() {
        Some(c) => format_rational(&c),
        None => format!("{e:?}"),
    }
}
