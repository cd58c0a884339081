//! Rewriting between derivation bases of `F[D]`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::element::{Element, Monomial, Signature};
use super::multi_index::MultiIndex;
use crate::error::{Result, WeylError};
use crate::linalg::Matrix;
use crate::rational::Rational;

type Poly = BTreeMap<Vec<u32>, Rational>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert_with(Rational::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Interprets every `d^mu` of `w` as `d'^mu`, where `d'_q = sum_p c[q][p] d_p`
/// (row `q` of `c` expresses `d'_q` in the standard basis), and expands the
/// result in the standard basis.
///
/// Rows of [`crate::Lattice::dual_derivation_basis`] can be passed directly.
pub fn change_d_basis(sig: &Arc<Signature>, c: &Matrix, w: &Element) -> Result<Element> {
    let l = sig.ell();
    if c.rows() != l || c.cols() != l {
        return Err(WeylError::DimensionMismatch {
            expected: l,
            got: c.rows().max(c.cols()),
        });
    }
    if !Signature::same(sig, w.signature()) {
        return Err(WeylError::SignatureMismatch);
    }
    if c.determinant()?.is_zero() {
        return Err(WeylError::SingularMatrix);
    }
    let linear: Vec<Poly> = (0..l)
        .map(|q| {
            (0..l)
                .filter(|&p| !c.get(q, p).is_zero())
                .map(|p| (MultiIndex::unit(l, p, 1).0, c.get(q, p).clone()))
                .collect()
        })
        .collect();
    let mut cache: BTreeMap<MultiIndex, Poly> = BTreeMap::new();
    w.map_terms(|m, coeff| {
        let expanded = cache.entry(m.mu.clone()).or_insert_with(|| {
            let mut acc: Poly = [(vec![0; l], Rational::one())].into_iter().collect();
            for (q, &k) in m.mu.entries().iter().enumerate() {
                for _ in 0..k {
                    acc = poly_mul(&acc, &linear[q]);
                }
            }
            acc
        });
        Ok(Element::from_terms_unchecked(
            sig,
            expanded.iter().map(|(e, c2)| {
                (
                    Monomial::new(m.alpha.clone(), m.i.clone(), MultiIndex(e.clone())),
                    c2 * coeff,
                )
            }),
        ))
    })
}
