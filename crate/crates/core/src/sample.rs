//! Seeded random generation of elements, characters and automorphisms.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Element, Monomial, MultiIndex, Signature};
use crate::automorphism::{InnerExp, NormalFormAut, ShiftV, TauAut};
use crate::error::Result;
use crate::lattice::{BlockMatrix, Character, Lattice};
use crate::linalg::{integer_determinant, Matrix};
use crate::rational::{rat, Rational};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shape limits for random elements.
#[derive(Clone, Debug)]
pub struct ElementSampler {
    pub max_terms: usize,
    pub max_level: u32,
    pub max_i: u32,
    pub coord_range: i64,
    pub max_numerator: i64,
    pub max_denominator: i64,
}

impl Default for ElementSampler {
    fn default() -> Self {
        ElementSampler {
            max_terms: 3,
            max_level: 3,
            max_i: 3,
            coord_range: 2,
            max_numerator: 4,
            max_denominator: 3,
        }
    }
}

/// A random multi-index of total level at most `max` supported on the first `support` slots.
fn spread<R: Rng>(rng: &mut R, len: usize, support: usize, max: u32) -> MultiIndex {
    let mut out = vec![0u32; len];
    if support > 0 {
        let level = rng.gen_range(0..=max);
        for _ in 0..level {
            out[rng.gen_range(0..support)] += 1;
        }
    }
    MultiIndex(out)
}

fn spread_exact<R: Rng>(rng: &mut R, len: usize, support: usize, level: u32) -> MultiIndex {
    let mut out = vec![0u32; len];
    for _ in 0..level {
        out[rng.gen_range(0..support)] += 1;
    }
    MultiIndex(out)
}

impl ElementSampler {
    pub fn coefficient<R: Rng>(&self, rng: &mut R) -> Rational {
        let n = loop {
            let n = rng.gen_range(-self.max_numerator..=self.max_numerator);
            if n != 0 {
                break n;
            }
        };
        rat(n, rng.gen_range(1..=self.max_denominator))
    }

    pub fn alpha<R: Rng>(&self, sig: &Signature, rng: &mut R) -> Vec<i64> {
        (0..sig.ell())
            .map(|_| rng.gen_range(-self.coord_range..=self.coord_range))
            .collect()
    }

    pub fn monomial<R: Rng>(&self, sig: &Signature, rng: &mut R) -> Monomial {
        let l = sig.ell();
        Monomial::new(
            self.alpha(sig, rng),
            spread(rng, l, sig.ell1(), self.max_i),
            spread(rng, l, l, self.max_level),
        )
    }

    pub fn monomial_in_a<R: Rng>(&self, sig: &Signature, rng: &mut R) -> Monomial {
        let l = sig.ell();
        Monomial::new(self.alpha(sig, rng), spread(rng, l, sig.ell1(), self.max_i), MultiIndex::zero(l))
    }

    fn build<R: Rng>(
        &self,
        sig: &Arc<Signature>,
        rng: &mut R,
        mut mono: impl FnMut(&mut R) -> Monomial,
    ) -> Element {
        loop {
            let n = rng.gen_range(1..=self.max_terms);
            let terms: Vec<(Monomial, Rational)> = (0..n).map(|_| (mono(rng), self.coefficient(rng))).collect();
            let e = Element::from_terms(sig, terms).expect("sampled monomials are valid");
            if !e.is_zero() {
                return e;
            }
        }
    }

    /// A nonzero random element.
    pub fn element<R: Rng>(&self, sig: &Arc<Signature>, rng: &mut R) -> Element {
        self.build(sig, rng, |r| self.monomial(sig, r))
    }

    /// A nonzero random element of `A`.
    pub fn element_in_a<R: Rng>(&self, sig: &Arc<Signature>, rng: &mut R) -> Element {
        self.build(sig, rng, |r| self.monomial_in_a(sig, r))
    }

    /// A nonzero random element of `F[D]` with degree at most `max_degree`.
    pub fn element_in_fd<R: Rng>(&self, sig: &Arc<Signature>, rng: &mut R, max_degree: u32, max_terms: usize) -> Element {
        let l = sig.ell();
        let sampler = ElementSampler {
            max_terms,
            ..self.clone()
        };
        sampler.build(sig, rng, |r| {
            Monomial::new(vec![0; l], MultiIndex::zero(l), spread(r, l, l, max_degree))
        })
    }

    pub fn vector<R: Rng>(&self, len: usize, rng: &mut R) -> Vec<Rational> {
        (0..len)
            .map(|_| {
                if rng.gen_bool(0.25) {
                    Rational::from_integer(0.into())
                } else {
                    self.coefficient(rng)
                }
            })
            .collect()
    }

    /// Up to two random terms of level below `n`.
    fn lower_terms<R: Rng>(&self, sig: &Signature, rng: &mut R, n: u32) -> Vec<(Monomial, Rational)> {
        let l = sig.ell();
        (0..rng.gen_range(0..=2))
            .map(|_| {
                let level = rng.gen_range(0..n);
                let m = Monomial::new(
                    self.alpha(sig, rng),
                    spread(rng, l, sig.ell1(), 2),
                    spread_exact(rng, l, l, level),
                );
                (m, self.coefficient(rng))
            })
            .collect()
    }

    /// A wild element whose top-level terms all have lattice degree 0.
    pub fn wild_case_one<R: Rng>(&self, sig: &Arc<Signature>, rng: &mut R) -> Element {
        let l = sig.ell();
        loop {
            let low = if sig.ell1() > 0 { 1 } else { 2 };
            let n = rng.gen_range(low..=self.max_level.max(2));
            let mut terms: Vec<(Monomial, Rational)> = (0..rng.gen_range(1..=2))
                .map(|_| {
                    let i = if n == 1 {
                        let level = rng.gen_range(1..=2);
                        spread_exact(rng, l, sig.ell1(), level)
                    } else {
                        spread(rng, l, sig.ell1(), 2)
                    };
                    (Monomial::new(vec![0; l], i, spread_exact(rng, l, l, n)), self.coefficient(rng))
                })
                .collect();
            terms.extend(self.lower_terms(sig, rng, n));
            let e = Element::from_terms(sig, terms).expect("valid monomials");
            if e.max_level() == Some(n) {
                return e;
            }
        }
    }

    /// A wild element with a single top-level term `x^{beta, j} d^mu`,
    /// `beta != 0` and `beta_q != 0` for some `q` in the support of `mu`.
    pub fn wild_case_two<R: Rng>(&self, sig: &Arc<Signature>, rng: &mut R) -> Element {
        let l = sig.ell();
        loop {
            let beta = self.alpha(sig, rng);
            let point = sig.lattice().point(&beta);
            let support: Vec<usize> = (0..l).filter(|&q| point[q] != Rational::from_integer(0.into())).collect();
            let Some(&q) = support.choose(rng) else {
                continue;
            };
            let n = rng.gen_range(1..=self.max_level.max(1));
            let mu = spread_exact(rng, l, l, n - 1).add(&MultiIndex::unit(l, q, 1));
            let top = Monomial::new(beta, spread(rng, l, sig.ell1(), 2), mu);
            let mut terms = vec![(top, self.coefficient(rng))];
            terms.extend(self.lower_terms(sig, rng, n));
            let e = Element::from_terms(sig, terms).expect("valid monomials");
            if e.max_level() == Some(n) {
                return e;
            }
        }
    }

    /// Random character with values in `{+-1, +-2, +-1/2, 3}`.
    pub fn character<R: Rng>(&self, rank: usize, rng: &mut R) -> Character {
        let pool = [rat(1, 1), rat(-1, 1), rat(2, 1), rat(-2, 1), rat(1, 2), rat(-1, 2), rat(3, 1)];
        Character::new((0..rank).map(|_| pool.choose(rng).expect("nonempty").clone()).collect())
            .expect("pool has no zero")
    }
}

pub(crate) fn unimodular_matrices(l: usize, bound: i64) -> Vec<Vec<Vec<i64>>> {
    let n = l * l;
    let width = (2 * bound + 1) as u64;
    let total = width.pow(n as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let mut entries = Vec::with_capacity(n);
        for _ in 0..n {
            entries.push((c % width) as i64 - bound);
            c /= width;
        }
        let rows: Vec<Vec<i64>> = entries.chunks(l).map(<[i64]>::to_vec).collect();
        if integer_determinant(&rows).abs() == 1 {
            out.push(rows);
        }
    }
    out
}

/// Block matrices `G = B^-1 U B` with `U` unimodular, entries in
/// `[-bound, bound]`, in enumeration order without duplicates.
pub fn aut2_catalog(lattice: &Lattice, ell1: usize, ell2: usize, bound: i64) -> Vec<BlockMatrix> {
    let l = ell1 + ell2;
    let b = lattice.basis();
    let b_inv = b.inverse().expect("basis is invertible");
    let mut out: Vec<BlockMatrix> = Vec::new();
    for u in unimodular_matrices(l, bound) {
        let u = Matrix::from_i64_rows(&u).expect("rectangular");
        let g = b_inv.mul(&u).and_then(|x| x.mul(b)).expect("square");
        if let Ok(bm) = BlockMatrix::new(ell1, ell2, g) {
            if !out.contains(&bm) {
                out.push(bm);
            }
        }
    }
    out
}

/// Random `(G, f)` with `G` drawn from `catalog`.
pub fn random_tau<R: Rng>(sig: &Arc<Signature>, catalog: &[BlockMatrix], rng: &mut R) -> Result<TauAut> {
    let g = catalog.choose(rng).cloned().unwrap_or_else(|| BlockMatrix::identity(sig.ell1(), sig.ell2()));
    let f = ElementSampler::default().character(sig.ell(), rng);
    TauAut::new(sig, g, f)
}

/// Random normal form; `eps` is set with probability one half when `allow_eps`.
pub fn random_normal_form<R: Rng>(
    sig: &Arc<Signature>,
    catalog: &[BlockMatrix],
    allow_eps: bool,
    rng: &mut R,
) -> Result<NormalFormAut> {
    let sampler = ElementSampler {
        max_i: 2,
        coord_range: 2,
        ..ElementSampler::default()
    };
    let tau = random_tau(sig, catalog, rng)?;
    let u = InnerExp::new(sampler.element_in_a(sig, rng))?;
    let v = ShiftV::new(sig, sampler.vector(sig.ell(), rng))?;
    let eps = allow_eps && rng.gen_bool(0.5);
    NormalFormAut::new(tau, u, v, eps)
}
