//! Combinatorial identities behind the twist automorphism `sigma_1`.

use std::sync::Arc;

use num_traits::One;

use super::element::{Element, Monomial, Signature};
use super::multi_index::{binomial, MultiIndex};
use super::product::derivation_apply;
use crate::error::{Result, WeylError};
use crate::rational::Rational;

/// Generalized binomial with integer arguments; zero outside `0 <= k <= n`.
fn binom_i(n: i64, k: i64) -> i128 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    i128::from(binomial(n as u32, k as u32))
}

/// `sum_{lambda' <= mu} (-1)^{|lambda'|} binom(mu, nu - lambda') binom(mu + lambda' - nu, lambda')`.
///
/// Evaluated term by term over all `lambda' <= mu`; the closed form `delta_{nu,0}`
/// is what the tests check, not what this computes.
pub fn alternating_binomial_sum(mu: &MultiIndex, nu: &MultiIndex) -> i128 {
    assert_eq!(mu.len(), nu.len(), "multi-index lengths differ");
    let mut total: i128 = 0;
    for lam in mu.below() {
        let mut term: i128 = if lam.level() % 2 == 0 { 1 } else { -1 };
        for p in 0..mu.len() {
            let (m, n, l) = (i64::from(mu.0[p]), i64::from(nu.0[p]), i64::from(lam.0[p]));
            term *= binom_i(m, n - l) * binom_i(m + l - n, l);
            if term == 0 {
                break;
            }
        }
        total += term;
    }
    total
}

/// `(-d)^mu` as an element.
pub fn neg_d_power(sig: &Arc<Signature>, mu: &MultiIndex) -> Result<Element> {
    let sign = if mu.level().is_multiple_of(2) { Rational::one() } else { -Rational::one() };
    Ok(Element::d_mono(sig, mu)?.scale(&sign))
}

/// Both sides of the reordering identity
/// `sum_{lambda <= mu} binom(mu, lambda) (-d)^{mu-lambda} * d^lambda(x) = x (-d)^mu`
/// for `x = x^{beta, j}`.
pub fn reordering_sides(sig: &Arc<Signature>, mu: &MultiIndex, x: &Element) -> Result<(Element, Element)> {
    if !x.is_in_a() {
        return Err(WeylError::NotInA);
    }
    let mut lhs = Element::zero(sig);
    for lam in mu.below() {
        let rest = mu.checked_sub(&lam).expect("lambda <= mu");
        let c = Rational::from_integer(super::multi_index::multi_binomial(mu, &lam).into());
        let dx = derivation_apply(sig, &lam, x)?;
        let term = neg_d_power(sig, &rest)?.mul(&dx)?;
        lhs = lhs.add_unchecked(&term, &c);
    }
    let rhs = x.mul(&neg_d_power(sig, mu)?)?;
    Ok((lhs, rhs))
}

/// `x^{beta, j}` as an element (helper for identity checks).
pub fn x_monomial(sig: &Arc<Signature>, beta: Vec<i64>, j: MultiIndex) -> Result<Element> {
    let l = sig.ell();
    Element::monomial(sig, Monomial::new(beta, j, MultiIndex::zero(l)), Rational::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Lattice;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex(v.to_vec())
    }

    #[test]
    fn alternating_examples() {
        assert_eq!(alternating_binomial_sum(&mi(&[0]), &mi(&[0])), 1);
        assert_eq!(alternating_binomial_sum(&mi(&[2]), &mi(&[1])), 0);
        assert_eq!(alternating_binomial_sum(&mi(&[1]), &mi(&[0])), 1);
    }

    #[test]
    fn alternating_exhaustive_small() {
        for mu in MultiIndex::boxed(2, 3) {
            for nu in MultiIndex::boxed(2, 3) {
                let expect = i128::from(nu.is_zero());
                assert_eq!(alternating_binomial_sum(&mu, &nu), expect, "mu={mu:?} nu={nu:?}");
            }
        }
    }

    #[test]
    fn reordering_on_polynomial_monomial() {
        let s = Signature::new(1, 1, Lattice::integer(2)).unwrap();
        let x = x_monomial(&s, vec![1, -2], mi(&[2, 0])).unwrap();
        for mu in MultiIndex::up_to_level(2, 3) {
            let (lhs, rhs) = reordering_sides(&s, &mu, &x).unwrap();
            assert_eq!(lhs, rhs, "mu={mu:?}");
        }
    }
}
