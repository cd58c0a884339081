use std::sync::Arc;

use crate::algebra::{act_on_a, Element, MultiIndex, Signature};
use crate::error::{Result, WeylError};
use crate::rational::Rational;

/// A lattice point `alpha = sum_q n_q b_q` with `theta(u)(x^alpha) != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaithfulnessWitness {
    pub n: Vec<u32>,
    pub alpha: Vec<Rational>,
    pub image: Element,
}

/// Searches `0 <= n_q <= deg(u)` in graded lexicographic order for a point
/// on which `u` in `F[D]` acts nontrivially.
pub fn faithfulness_witness(sig: &Arc<Signature>, u: &Element) -> Result<FaithfulnessWitness> {
    if !Signature::same(sig, u.signature()) {
        return Err(WeylError::SignatureMismatch);
    }
    if u.is_zero() {
        return Err(WeylError::ZeroElement);
    }
    if !u.is_in_fd() {
        return Err(WeylError::NotInFD);
    }
    let degree = u.max_level().unwrap_or(0);
    let mut grid = MultiIndex::boxed(sig.ell(), degree);
    grid.sort_by(|a, b| a.level().cmp(&b.level()).then_with(|| a.entries().cmp(b.entries())));
    for n in grid {
        let coords: Vec<i64> = n.entries().iter().map(|&k| i64::from(k)).collect();
        let image = act_on_a(u, &Element::x(sig, &coords)?)?;
        if !image.is_zero() {
            return Ok(FaithfulnessWitness {
                alpha: sig.lattice().point(&coords),
                n: n.entries().to_vec(),
                image,
            });
        }
    }
    Err(WeylError::InvariantMismatch(format!(
        "no witness for {u:?} within the degree bound"
    )))
}
