use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::{Element, Monomial, MultiIndex, Signature};
use crate::automorphism::{verify_automorphism, FunctionalMap, Generator, Mode};
use crate::error::{Result, WeylError};
use crate::lattice::{BlockMatrix, Character};
use crate::linalg::Matrix;
use crate::rational::{format_rational, pow_i64, Rational};
use crate::sample::unimodular_matrices;

/// Maximum number of coordinate changes tried by [`iso_search_bounded`].
pub const SEARCH_BUDGET: usize = 200_000;

const SEARCH_TRIALS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureInvariants {
    pub ell1: usize,
    pub ell2: usize,
    pub basis: Matrix,
}

pub fn signature_invariants(sig: &Signature) -> SignatureInvariants {
    SignatureInvariants {
        ell1: sig.ell1(),
        ell2: sig.ell2(),
        basis: sig.lattice().basis().clone(),
    }
}

/// A reason why the two algebras cannot be isomorphic, if one is visible
/// from `(l1, l2)` alone.
pub fn invariant_mismatch(src: &Signature, dst: &Signature) -> Option<String> {
    ((src.ell1(), src.ell2()) != (dst.ell1(), dst.ell2())).then(|| {
        format!(
            "(l1, l2) = ({}, {}) differs from ({}, {})",
            src.ell1(),
            src.ell2(),
            dst.ell1(),
            dst.ell2()
        )
    })
}

/// `(G, f)`: `x^alpha -> f(alpha) x'^{alpha G^-1}`, `d-row -> d'-row * G`,
/// `x^{1}-row -> x'^{1}-row * (M^t)^-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoCandidate {
    pub g: BlockMatrix,
    pub f: Character,
}

impl IsoCandidate {
    pub fn identity(sig: &Signature) -> IsoCandidate {
        IsoCandidate {
            g: BlockMatrix::identity(sig.ell1(), sig.ell2()),
            f: Character::trivial(sig.ell()),
        }
    }
}

/// The generator table of the map defined by `cand`.
pub fn iso_map(src: &Arc<Signature>, dst: &Arc<Signature>, cand: &IsoCandidate) -> Result<FunctionalMap> {
    if let Some(why) = invariant_mismatch(src, dst) {
        return Err(WeylError::InvariantMismatch(why));
    }
    let l = src.ell();
    let ell1 = src.ell1();
    if cand.g.ell1() != ell1 || cand.g.ell2() != src.ell2() {
        return Err(WeylError::BlockShapeViolation(format!(
            "candidate has blocks ({}, {}) but the algebra has ({}, {})",
            cand.g.ell1(),
            cand.g.ell2(),
            ell1,
            src.ell2()
        )));
    }
    if cand.f.values().len() != l {
        return Err(WeylError::DimensionMismatch {
            expected: l,
            got: cand.f.values().len(),
        });
    }
    let g_inv = cand.g.inverse();
    let not_mapped = || WeylError::LatticeNotMapped(format!("{:?} * G^-1 is not the target lattice", src.lattice()));
    if !src.lattice().maps_onto(g_inv.entries(), dst.lattice())? {
        return Err(not_mapped());
    }
    let coords = src
        .lattice()
        .image_coordinates(g_inv.entries(), dst.lattice())?
        .ok_or_else(not_mapped)?;
    let x_mono = |n: Vec<i64>, c: Rational| {
        Element::monomial(dst, Monomial::new(n, MultiIndex::zero(l), MultiIndex::zero(l)), c)
    };
    let mut images: Vec<(Generator, Element)> = vec![(Generator::Unit, Element::one(dst))];
    for (k, row) in coords.iter().enumerate() {
        let fk = cand.f.values()[k].clone();
        images.push((Generator::X(k), x_mono(row.clone(), fk.clone())?));
        images.push((Generator::XInv(k), x_mono(row.iter().map(|x| -x).collect(), pow_i64(&fk, -1))?));
    }
    let m_inv_t = cand.g.m_inv_transpose();
    for q in 0..ell1 {
        let mut acc = Element::zero(dst);
        for s in 0..ell1 {
            acc = acc.try_add(&Element::x_poly(dst, s)?.scale(m_inv_t.get(s, q)))?;
        }
        images.push((Generator::XPoly(q), acc));
    }
    for q in 0..l {
        images.push((Generator::D(q), Element::derivation(dst, &cand.g.entries().column(q))?));
    }
    FunctionalMap::from_images(src, dst, Mode::Assoc, images)
}

/// Checks the defining relations on generator images:
/// `[phi(d_q), phi(x^{b_k})] = (b_k)_q phi(x^{b_k})` and
/// `[phi(d_q), phi(x^{1_[p]})] = delta_{p,q}`.
fn check_duality(src: &Arc<Signature>, map: &FunctionalMap) -> Result<()> {
    let l = src.ell();
    for q in 0..l {
        let dq = map.image(Generator::D(q));
        for k in 0..l {
            let xk = map.image(Generator::X(k));
            let lhs = dq.bracket(xk)?;
            let rhs = xk.scale(&src.lattice().basis_row(k)[q]);
            if lhs != rhs {
                return Err(WeylError::HomomorphismCounterexample(format!(
                    "[phi(d{}), phi(x^b{})] = {:?}, expected {:?}",
                    q + 1,
                    k + 1,
                    lhs,
                    rhs
                )));
            }
        }
        for p in 0..src.ell1() {
            let lhs = dq.bracket(map.image(Generator::XPoly(p)))?;
            let expect = if p == q { Rational::one() } else { Rational::zero() };
            if lhs.as_scalar() != Some(expect.clone()) {
                return Err(WeylError::HomomorphismCounterexample(format!(
                    "[phi(d{}), phi(x^1_[{}])] = {:?}, expected {}",
                    q + 1,
                    p + 1,
                    lhs,
                    format_rational(&expect)
                )));
            }
        }
    }
    Ok(())
}

/// Builds the map of `cand`, checks the generator relations exactly and the
/// multiplicativity on generator pairs plus `trials` random products.
pub fn iso_verify(
    src: &Arc<Signature>,
    dst: &Arc<Signature>,
    cand: &IsoCandidate,
    trials: usize,
    seed: u64,
) -> Result<FunctionalMap> {
    let map = iso_map(src, dst, cand)?;
    check_duality(src, &map)?;
    let report = verify_automorphism(&map, Mode::Assoc, trials, seed)?;
    if let Some(cx) = report.counterexample {
        return Err(WeylError::HomomorphismCounterexample(format!(
            "phi({:?} * {:?}) = {:?} but phi(a) * phi(b) = {:?}",
            cx.a, cx.b, cx.lhs, cx.rhs
        )));
    }
    Ok(map)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoSearchResult {
    Found { candidate: IsoCandidate, tried: usize },
    Impossible(String),
    Unknown { tried: usize },
}

/// Unimodular `U` ordered by height (largest entry), identity first.
fn by_height(l: usize, bound: i64) -> impl Iterator<Item = Vec<Vec<i64>>> {
    let identity: Vec<Vec<i64>> = (0..l).map(|r| (0..l).map(|c| i64::from(r == c)).collect()).collect();
    let first = std::iter::once(identity.clone());
    let rest = (1..=bound).flat_map(move |h| {
        let identity = identity.clone();
        unimodular_matrices(l, h)
            .into_iter()
            .filter(move |u| u.iter().flatten().any(|x| x.abs() == h) && *u != identity)
    });
    first.chain(rest)
}

/// Searches `G = B'^-1 U^-1 B` over unimodular `U` with entries in
/// `[-bound, bound]` for a block-form `G` accepted by [`iso_verify`].
pub fn iso_search_bounded(src: &Arc<Signature>, dst: &Arc<Signature>, bound: i64) -> Result<IsoSearchResult> {
    if let Some(why) = invariant_mismatch(src, dst) {
        return Ok(IsoSearchResult::Impossible(why));
    }
    let l = src.ell();
    let b = src.lattice().basis();
    let b_dst_inv = dst.lattice().basis().inverse()?;
    let mut tried = 0;
    for u in by_height(l, bound.max(0)) {
        if tried >= SEARCH_BUDGET {
            break;
        }
        tried += 1;
        let u_inv = Matrix::from_i64_rows(&u)?.inverse()?;
        let g = b_dst_inv.mul(&u_inv)?.mul(b)?;
        let Ok(g) = BlockMatrix::new(src.ell1(), src.ell2(), g) else {
            continue;
        };
        let candidate = IsoCandidate {
            g,
            f: Character::trivial(l),
        };
        if iso_verify(src, dst, &candidate, SEARCH_TRIALS, 0).is_ok() {
            return Ok(IsoSearchResult::Found { candidate, tried });
        }
    }
    Ok(IsoSearchResult::Unknown { tried })
}
