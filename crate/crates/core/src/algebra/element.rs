use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::multi_index::MultiIndex;
use super::product;
use crate::error::{Result, WeylError};
use crate::lattice::Lattice;
use crate::rational::{format_rational, format_vector, Rational};

/// The triple `(l1, l2, Gamma)` identifying one algebra `W(l1, l2, Gamma)`.
///
/// Derivations `d_p` with `p < l1` (0-based) are locally finite and act on
/// both the lattice part and the polynomial part; the remaining `l2` are
/// semisimple.
#[derive(Clone, PartialEq, Eq)]
pub struct Signature {
    ell1: usize,
    ell2: usize,
    lattice: Lattice,
}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W({}, {}, {:?})", self.ell1, self.ell2, self.lattice.basis())
    }
}

impl Signature {
    pub fn new(ell1: usize, ell2: usize, lattice: Lattice) -> Result<Arc<Signature>> {
        if ell1 + ell2 == 0 {
            return Err(WeylError::InvalidSignature("l1 + l2 must be positive".into()));
        }
        if lattice.ambient_dim() != ell1 + ell2 {
            return Err(WeylError::InvalidSignature(format!(
                "lattice has ambient dimension {} but l1 + l2 = {}",
                lattice.ambient_dim(),
                ell1 + ell2
            )));
        }
        Ok(Arc::new(Signature { ell1, ell2, lattice }))
    }

    pub fn ell1(&self) -> usize {
        self.ell1
    }

    pub fn ell2(&self) -> usize {
        self.ell2
    }

    pub fn ell(&self) -> usize {
        self.ell1 + self.ell2
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn same(a: &Arc<Signature>, b: &Arc<Signature>) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }
}

/// Basis symbol `x^{alpha, i} d^mu`; `alpha` is stored by its integer
/// coordinates in the canonical basis of `Gamma`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub alpha: Vec<i64>,
    pub i: MultiIndex,
    pub mu: MultiIndex,
}

impl Monomial {
    pub fn new(alpha: Vec<i64>, i: MultiIndex, mu: MultiIndex) -> Monomial {
        Monomial { alpha, i, mu }
    }

    pub fn one(ell: usize) -> Monomial {
        Monomial {
            alpha: vec![0; ell],
            i: MultiIndex::zero(ell),
            mu: MultiIndex::zero(ell),
        }
    }

    pub fn level(&self) -> u32 {
        self.mu.level()
    }

    pub fn is_in_a(&self) -> bool {
        self.mu.is_zero()
    }

    pub fn is_pure_derivation(&self) -> bool {
        self.alpha.iter().all(|&a| a == 0) && self.i.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.is_pure_derivation() && self.mu.is_zero()
    }

    fn validate(&self, sig: &Signature) -> Result<()> {
        let l = sig.ell();
        for len in [self.alpha.len(), self.i.len(), self.mu.len()] {
            if len != l {
                return Err(WeylError::DimensionMismatch { expected: l, got: len });
            }
        }
        if self.i.entries()[sig.ell1()..].iter().any(|&x| x != 0) {
            return Err(WeylError::InvalidSignature(format!(
                "polynomial index {:?} is not supported on the first {} positions",
                self.i,
                sig.ell1()
            )));
        }
        Ok(())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.alpha
            .cmp(&other.alpha)
            .then_with(|| self.i.cmp(&other.i))
            .then_with(|| self.mu.cmp(&other.mu))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^{{{:?},{:?}}}d^{:?}", self.alpha, self.i, self.mu)
    }
}

/// A finite linear combination of monomials with nonzero rational coefficients.
#[derive(Clone)]
pub struct Element {
    sig: Arc<Signature>,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        Signature::same(&self.sig, &other.sig) && self.terms == other.terms
    }
}

impl Eq for Element {}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let alpha = self.sig.lattice().point(&m.alpha);
                format!(
                    "{}*x^{{{},{:?}}}d^{:?}",
                    format_rational(c),
                    format_vector(&alpha),
                    m.i,
                    m.mu
                )
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Element {
    pub fn zero(sig: &Arc<Signature>) -> Element {
        Element {
            sig: sig.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(sig: &Arc<Signature>, c: Rational) -> Element {
        Element::from_terms_unchecked(sig, [(Monomial::one(sig.ell()), c)])
    }

    pub fn one(sig: &Arc<Signature>) -> Element {
        Element::scalar(sig, Rational::one())
    }

    pub fn monomial(sig: &Arc<Signature>, m: Monomial, c: Rational) -> Result<Element> {
        m.validate(sig)?;
        Ok(Element::from_terms_unchecked(sig, [(m, c)]))
    }

    pub fn from_terms(
        sig: &Arc<Signature>,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Result<Element> {
        let mut acc = Accumulator::new();
        for (m, c) in terms {
            m.validate(sig)?;
            acc.add(m, c);
        }
        Ok(acc.finish(sig))
    }

    pub(crate) fn from_terms_unchecked(
        sig: &Arc<Signature>,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Element {
        let mut acc = Accumulator::new();
        for (m, c) in terms {
            acc.add(m, c);
        }
        acc.finish(sig)
    }

    /// `x^alpha` for `alpha` given by basis coordinates.
    pub fn x(sig: &Arc<Signature>, alpha: &[i64]) -> Result<Element> {
        let l = sig.ell();
        Element::monomial(
            sig,
            Monomial::new(alpha.to_vec(), MultiIndex::zero(l), MultiIndex::zero(l)),
            Rational::one(),
        )
    }

    /// `x^{alpha, i}` for a rational lattice point `alpha`.
    pub fn x_at(sig: &Arc<Signature>, alpha: &[Rational], i: &MultiIndex) -> Result<Element> {
        let coords = sig.lattice().require_coordinates(alpha)?;
        Element::monomial(
            sig,
            Monomial::new(coords, i.clone(), MultiIndex::zero(sig.ell())),
            Rational::one(),
        )
    }

    /// `x^{1_[p]}` for `p < l1` (0-based).
    pub fn x_poly(sig: &Arc<Signature>, p: usize) -> Result<Element> {
        if p >= sig.ell1() {
            return Err(WeylError::IndexOutOfRange {
                index: p + 1,
                dim: sig.ell1(),
            });
        }
        let l = sig.ell();
        Element::monomial(
            sig,
            Monomial::new(vec![0; l], MultiIndex::unit(l, p, 1), MultiIndex::zero(l)),
            Rational::one(),
        )
    }

    /// `d_q^k` for `q < l` (0-based).
    pub fn d(sig: &Arc<Signature>, q: usize, k: u32) -> Result<Element> {
        if q >= sig.ell() {
            return Err(WeylError::IndexOutOfRange {
                index: q + 1,
                dim: sig.ell(),
            });
        }
        let l = sig.ell();
        Element::monomial(
            sig,
            Monomial::new(vec![0; l], MultiIndex::zero(l), MultiIndex::unit(l, q, k)),
            Rational::one(),
        )
    }

    /// `d^mu`.
    pub fn d_mono(sig: &Arc<Signature>, mu: &MultiIndex) -> Result<Element> {
        let l = sig.ell();
        Element::monomial(
            sig,
            Monomial::new(vec![0; l], MultiIndex::zero(l), mu.clone()),
            Rational::one(),
        )
    }

    /// `sum_q coeffs[q] d_q`.
    pub fn derivation(sig: &Arc<Signature>, coeffs: &[Rational]) -> Result<Element> {
        if coeffs.len() != sig.ell() {
            return Err(WeylError::DimensionMismatch {
                expected: sig.ell(),
                got: coeffs.len(),
            });
        }
        let l = sig.ell();
        Ok(Element::from_terms_unchecked(
            sig,
            coeffs.iter().enumerate().map(|(q, c)| {
                (
                    Monomial::new(vec![0; l], MultiIndex::zero(l), MultiIndex::unit(l, q, 1)),
                    c.clone(),
                )
            }),
        ))
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.sig.ell()))
    }

    pub fn without_constant(&self) -> Element {
        let mut e = self.clone();
        e.terms.remove(&Monomial::one(self.sig.ell()));
        e
    }

    /// `Some(c)` when the element is `c * 1` (including `c = 0`).
    pub fn as_scalar(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().expect("one term");
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_in_a(&self) -> bool {
        self.terms.keys().all(Monomial::is_in_a)
    }

    /// Every term is `d^mu` with `alpha = 0`, `i = 0`.
    pub fn is_in_fd(&self) -> bool {
        self.terms.keys().all(Monomial::is_pure_derivation)
    }

    pub fn max_level(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::level).max()
    }

    fn check_same(&self, other: &Element) -> Result<()> {
        if Signature::same(&self.sig, &other.sig) {
            Ok(())
        } else {
            Err(WeylError::SignatureMismatch)
        }
    }

    pub fn try_add(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        Ok(self.add_unchecked(other, &Rational::one()))
    }

    pub fn try_sub(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        Ok(self.add_unchecked(other, &-Rational::one()))
    }

    /// `self + k * other`.
    pub(crate) fn add_unchecked(&self, other: &Element, k: &Rational) -> Element {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let v = c * k;
            match terms.get_mut(m) {
                Some(slot) => {
                    *slot += v;
                    if slot.is_zero() {
                        terms.remove(m);
                    }
                }
                None => {
                    if !v.is_zero() {
                        terms.insert(m.clone(), v);
                    }
                }
            }
        }
        Element {
            sig: self.sig.clone(),
            terms,
        }
    }

    pub fn scale(&self, k: &Rational) -> Element {
        if k.is_zero() {
            return Element::zero(&self.sig);
        }
        Element {
            sig: self.sig.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    /// Associative product.
    pub fn mul(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        Ok(product::mul_elements(self, other))
    }

    /// Commutator `ab - ba`.
    pub fn bracket(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        Ok(product::mul_elements(self, other).add_unchecked(&product::mul_elements(other, self), &-Rational::one()))
    }

    pub fn pow(&self, k: u32) -> Element {
        let mut acc = Element::one(&self.sig);
        for _ in 0..k {
            acc = product::mul_elements(&acc, self);
        }
        acc
    }

    /// Applies `f` to every term and sums the results.
    pub fn map_terms(&self, mut f: impl FnMut(&Monomial, &Rational) -> Result<Element>) -> Result<Element> {
        let mut acc = Accumulator::new();
        for (m, c) in &self.terms {
            let img = f(m, c)?;
            for (m2, c2) in img.terms {
                acc.add(m2, c2);
            }
        }
        Ok(acc.finish(&self.sig))
    }
}

impl Add for &Element {
    type Output = Element;

    /// Panics on mismatched signatures; see [`Element::try_add`].
    fn add(self, rhs: &Element) -> Element {
        self.try_add(rhs).expect("signature mismatch in +")
    }
}

impl Sub for &Element {
    type Output = Element;

    fn sub(self, rhs: &Element) -> Element {
        self.try_sub(rhs).expect("signature mismatch in -")
    }
}

impl Mul for &Element {
    type Output = Element;

    fn mul(self, rhs: &Element) -> Element {
        Element::mul(self, rhs).expect("signature mismatch in *")
    }
}

impl Neg for &Element {
    type Output = Element;

    fn neg(self) -> Element {
        self.scale(&-Rational::one())
    }
}

/// Sparse coefficient accumulator that prunes zeros on `finish`.
#[derive(Default)]
pub(crate) struct Accumulator {
    terms: BTreeMap<Monomial, Rational>,
}

impl Accumulator {
    pub(crate) fn new() -> Accumulator {
        Accumulator::default()
    }

    pub(crate) fn add(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => *slot += c,
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub(crate) fn finish(mut self, sig: &Arc<Signature>) -> Element {
        self.terms.retain(|_, c| !c.is_zero());
        Element {
            sig: sig.clone(),
            terms: self.terms,
        }
    }
}
