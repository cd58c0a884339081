//! The product `u d^mu * v d^nu = sum_lambda binom(mu, lambda) u d^lambda(v) d^{mu+nu-lambda}`
//! and the action of `F[D]` on `A`.
//!
//! Every derivation `d_p` acts on `x^{beta, j}` through coordinate `p` only
//! (`d_p = d_p^- + d_p^+` for `p < l1`, `d_p = d_p^+` otherwise), so both the
//! product and `d^lambda` factor over coordinates; the kernels below expand one
//! coordinate at a time and take the Cartesian product.

use std::sync::Arc;

use num_traits::{One, Zero};

use super::element::{Accumulator, Element, Monomial, Signature};
use super::multi_index::{binomial, MultiIndex};
use crate::error::{Result, WeylError};
use crate::rational::Rational;

/// Falling factorial `n (n-1) ... (n-k+1)`.
fn falling(n: u32, k: u32) -> Rational {
    (0..k).fold(Rational::one(), |acc, j| acc * Rational::from_integer((n - j).into()))
}

/// Expansion of `d_p^k (x^{beta, j})` in coordinate `p`: pairs `(drop, coeff)`
/// meaning `coeff * x^{beta, j - drop*1_[p]}`.
fn dpow_coordinate(k: u32, beta_p: &Rational, j_p: u32) -> Vec<(u32, Rational)> {
    let mut out = Vec::new();
    for drop in 0..=k.min(j_p) {
        let rest = k - drop;
        if rest > 0 && beta_p.is_zero() {
            continue;
        }
        let mut c = Rational::from_integer(binomial(k, drop).into()) * falling(j_p, drop);
        for _ in 0..rest {
            c *= beta_p;
        }
        out.push((drop, c));
    }
    out
}

/// Cartesian product over coordinates of per-coordinate option lists.
fn combine<T: Clone>(per_coord: Vec<Vec<(T, Rational)>>) -> Vec<(Vec<T>, Rational)> {
    let mut acc: Vec<(Vec<T>, Rational)> = vec![(Vec::new(), Rational::one())];
    for options in per_coord {
        let mut next = Vec::with_capacity(acc.len() * options.len());
        for (prefix, c) in &acc {
            for (t, c2) in &options {
                let mut p = prefix.clone();
                p.push(t.clone());
                next.push((p, c * c2));
            }
        }
        acc = next;
    }
    acc
}

/// `d^lambda (x^{beta, j})` as a list of `(new j, coeff)`.
pub(crate) fn dpow_on_x(lambda: &MultiIndex, beta: &[Rational], j: &MultiIndex) -> Vec<(MultiIndex, Rational)> {
    let per: Vec<Vec<(u32, Rational)>> = (0..lambda.len())
        .map(|p| {
            dpow_coordinate(lambda.0[p], &beta[p], j.0[p])
                .into_iter()
                .map(|(drop, c)| (j.0[p] - drop, c))
                .collect()
        })
        .collect();
    combine(per)
        .into_iter()
        .map(|(v, c)| (MultiIndex(v), c))
        .collect()
}

/// Product of two basis monomials; `beta` is the rational point of `b.alpha`.
pub(crate) fn mul_monomials(a: &Monomial, b: &Monomial, beta: &[Rational]) -> Vec<(Monomial, Rational)> {
    let l = a.mu.len();
    // per coordinate: (lambda_p, drop) -> coefficient binom(mu_p, lambda_p) * [d_p^lambda_p x]_drop
    let per: Vec<Vec<((u32, u32), Rational)>> = (0..l)
        .map(|p| {
            let mut opts = Vec::new();
            for lam in 0..=a.mu.0[p] {
                let outer = Rational::from_integer(binomial(a.mu.0[p], lam).into());
                for (drop, c) in dpow_coordinate(lam, &beta[p], b.i.0[p]) {
                    opts.push(((lam, drop), &outer * c));
                }
            }
            opts
        })
        .collect();
    let alpha: Vec<i64> = a.alpha.iter().zip(&b.alpha).map(|(x, y)| x + y).collect();
    combine(per)
        .into_iter()
        .map(|(choice, c)| {
            let i = (0..l).map(|p| a.i.0[p] + b.i.0[p] - choice[p].1).collect();
            let mu = (0..l).map(|p| a.mu.0[p] + b.mu.0[p] - choice[p].0).collect();
            (Monomial::new(alpha.clone(), MultiIndex(i), MultiIndex(mu)), c)
        })
        .collect()
}

pub(crate) fn mul_elements(a: &Element, b: &Element) -> Element {
    let sig = a.signature();
    let lattice = sig.lattice();
    let b_terms: Vec<(&Monomial, &Rational, Vec<Rational>)> = b
        .terms()
        .map(|(m, c)| (m, c, lattice.point(&m.alpha)))
        .collect();
    let mut acc = Accumulator::new();
    for (ma, ca) in a.terms() {
        for (mb, cb, beta) in &b_terms {
            let k = ca * *cb;
            for (m, c) in mul_monomials(ma, mb, beta) {
                acc.add(m, c * &k);
            }
        }
    }
    acc.finish(sig)
}

/// `theta(w)(a)`: the natural action of `W` on `A`.
pub fn act_on_a(w: &Element, a: &Element) -> Result<Element> {
    if !Signature::same(w.signature(), a.signature()) {
        return Err(WeylError::SignatureMismatch);
    }
    if !a.is_in_a() {
        return Err(WeylError::NotInA);
    }
    let sig = w.signature();
    let lattice = sig.lattice();
    let a_terms: Vec<(&Monomial, &Rational, Vec<Rational>)> =
        a.terms().map(|(m, c)| (m, c, lattice.point(&m.alpha))).collect();
    let l = sig.ell();
    let mut acc = Accumulator::new();
    for (mw, cw) in w.terms() {
        for (ma, ca, beta) in &a_terms {
            let k = cw * *ca;
            let alpha: Vec<i64> = mw.alpha.iter().zip(&ma.alpha).map(|(x, y)| x + y).collect();
            for (j, c) in dpow_on_x(&mw.mu, beta, &ma.i) {
                acc.add(
                    Monomial::new(alpha.clone(), mw.i.add(&j), MultiIndex::zero(l)),
                    c * &k,
                );
            }
        }
    }
    Ok(acc.finish(sig))
}

/// `d^lambda (target)` for `target` in `A`.
pub fn derivation_apply(sig: &Arc<Signature>, lambda: &MultiIndex, target: &Element) -> Result<Element> {
    if lambda.len() != sig.ell() {
        return Err(WeylError::DimensionMismatch {
            expected: sig.ell(),
            got: lambda.len(),
        });
    }
    if !Signature::same(sig, target.signature()) {
        return Err(WeylError::SignatureMismatch);
    }
    act_on_a(&Element::d_mono(sig, lambda)?, target)
}

/// `d_q (a)` for `a` in `A`.
pub fn partial(a: &Element, q: usize) -> Result<Element> {
    let sig = a.signature().clone();
    derivation_apply(&sig, &MultiIndex::unit(sig.ell(), q, 1), a)
}

/// Commutator of two elements (free-function form).
pub fn bracket(a: &Element, b: &Element) -> Result<Element> {
    a.bracket(b)
}

/// Product of two elements (free-function form).
pub fn mul(a: &Element, b: &Element) -> Result<Element> {
    a.mul(b)
}
