#![allow(dead_code)]

use std::sync::Arc;

use proptest::prelude::*;
use weyl_core::rational::{int, rat};
use weyl_core::{Element, Lattice, Monomial, MultiIndex, Rational, Signature};

/// `W(1, 1, Gamma)` with `Gamma` generated by `(1,0), (0,1), (1/2,1/2)`.
pub fn desk() -> Arc<Signature> {
    let gens = vec![vec![int(1), int(0)], vec![int(0), int(1)], vec![rat(1, 2), rat(1, 2)]];
    Signature::new(1, 1, Lattice::from_generators(2, gens).unwrap()).unwrap()
}

pub fn integer_sig(l1: usize, l2: usize) -> Arc<Signature> {
    Signature::new(l1, l2, Lattice::integer(l1 + l2)).unwrap()
}

pub fn coeff() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3)
        .prop_filter("nonzero", |(n, _)| *n != 0)
        .prop_map(|(n, d)| rat(n, d))
}

/// Multi-index of length `len`, supported on the first `support` slots, level at most `max`.
pub fn multi_index(len: usize, support: usize, max: u32) -> impl Strategy<Value = MultiIndex> {
    prop::collection::vec(0u32..=max, len).prop_map(move |raw| {
        let mut left = max;
        let v = raw
            .iter()
            .enumerate()
            .map(|(p, &k)| {
                if p >= support {
                    return 0;
                }
                let k = k.min(left);
                left -= k;
                k
            })
            .collect();
        MultiIndex(v)
    })
}

pub fn monomial(sig: &Signature, in_a: bool) -> impl Strategy<Value = Monomial> {
    let l = sig.ell();
    let ell1 = sig.ell1();
    let mu_max = if in_a { 0 } else { 3 };
    (
        prop::collection::vec(-2i64..=2, l),
        multi_index(l, ell1, 3),
        multi_index(l, l, mu_max),
    )
        .prop_map(|(a, i, mu)| Monomial::new(a, i, mu))
}

fn build(sig: Arc<Signature>, terms: Vec<(Monomial, Rational)>) -> Element {
    Element::from_terms(&sig, terms).unwrap()
}

/// Random elements with at most three terms, `|mu|, |i| <= 3`, coordinates in `[-2, 2]`.
pub fn element(sig: Arc<Signature>) -> impl Strategy<Value = Element> {
    prop::collection::vec((monomial(&sig, false), coeff()), 1..=3).prop_map(move |t| build(sig.clone(), t))
}

pub fn element_in_a(sig: Arc<Signature>) -> impl Strategy<Value = Element> {
    prop::collection::vec((monomial(&sig, true), coeff()), 1..=3).prop_map(move |t| build(sig.clone(), t))
}

pub fn monomial_element(sig: Arc<Signature>) -> impl Strategy<Value = Element> {
    monomial(&sig, false).prop_map(move |m| Element::monomial(&sig, m, int(1)).unwrap())
}

pub fn rational_vector(len: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(prop_oneof![Just(int(0)), coeff()], len)
}
