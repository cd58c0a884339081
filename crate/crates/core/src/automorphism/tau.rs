use std::sync::Arc;

use num_traits::Zero;

use super::{check_source, extend, GeneratorImages, WeylMap};
use crate::algebra::{Element, MultiIndex, Signature};
use crate::error::{Result, WeylError};
use crate::lattice::{aut2_membership, BlockMatrix, Character};
use crate::linalg::Matrix;
use crate::rational::Rational;

/// `sigma_tau` for `tau = (G, f)`: `x^alpha -> f(alpha) x^{alpha G^-1}`,
/// `d-row -> d-row * G`, `x^{1}-row -> x^{1}-row * (M^t)^-1`.
#[derive(Clone)]
pub struct TauAut {
    sig: Arc<Signature>,
    g: BlockMatrix,
    f: Character,
    /// Row `k`: basis coordinates of `b_k G^-1`.
    inv_coords: Vec<Vec<i64>>,
    x_poly: Vec<Element>,
    d: Vec<Element>,
}

impl PartialEq for TauAut {
    fn eq(&self, other: &Self) -> bool {
        Signature::same(&self.sig, &other.sig) && self.g == other.g && self.f == other.f
    }
}

impl Eq for TauAut {}

impl std::fmt::Debug for TauAut {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Tau(G = {:?}, f = {:?})", self.g.entries(), self.f)
    }
}

impl TauAut {
    pub fn new(sig: &Arc<Signature>, g: BlockMatrix, f: Character) -> Result<TauAut> {
        let l = sig.ell();
        if g.ell1() != sig.ell1() || g.ell2() != sig.ell2() {
            return Err(WeylError::DimensionMismatch {
                expected: l,
                got: g.ell1() + g.ell2(),
            });
        }
        if f.values().len() != l {
            return Err(WeylError::DimensionMismatch {
                expected: l,
                got: f.values().len(),
            });
        }
        if !aut2_membership(sig.lattice(), &g)? {
            return Err(WeylError::NotInAut2(format!("{:?}", g.entries())));
        }
        let g_inv = g.inverse();
        let inv_coords = sig
            .lattice()
            .image_coordinates(g_inv.entries(), sig.lattice())?
            .ok_or_else(|| WeylError::NotInAut2(format!("{:?}", g.entries())))?;
        let ell1 = sig.ell1();
        let m_inv_t = g.m_inv_transpose();
        let x_poly = (0..ell1)
            .map(|q| {
                let mut acc = Element::zero(sig);
                for s in 0..ell1 {
                    let c = m_inv_t.get(s, q);
                    if !c.is_zero() {
                        acc = acc.add_unchecked(&Element::x_poly(sig, s)?, c);
                    }
                }
                Ok(acc)
            })
            .collect::<Result<Vec<_>>>()?;
        let d = (0..l)
            .map(|q| Element::derivation(sig, &g.entries().column(q)))
            .collect::<Result<Vec<_>>>()?;
        Ok(TauAut {
            sig: sig.clone(),
            g,
            f,
            inv_coords,
            x_poly,
            d,
        })
    }

    pub fn identity(sig: &Arc<Signature>) -> TauAut {
        TauAut::new(
            sig,
            BlockMatrix::identity(sig.ell1(), sig.ell2()),
            Character::trivial(sig.ell()),
        )
        .expect("identity is in Aut2")
    }

    /// `sigma_(I, f)`.
    pub fn character(sig: &Arc<Signature>, f: Character) -> Result<TauAut> {
        TauAut::new(sig, BlockMatrix::identity(sig.ell1(), sig.ell2()), f)
    }

    pub fn g(&self) -> &BlockMatrix {
        &self.g
    }

    pub fn f(&self) -> &Character {
        &self.f
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn is_identity(&self) -> bool {
        self.g.entries().is_identity() && self.f.is_trivial()
    }

    fn coords_times(&self, n: &[i64], rows: &[Vec<i64>]) -> Result<Vec<i64>> {
        let l = self.sig.ell();
        let mut out = vec![0i64; l];
        for (k, &nk) in n.iter().enumerate() {
            if nk == 0 {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                *o = nk
                    .checked_mul(rows[k][c])
                    .and_then(|t| o.checked_add(t))
                    .ok_or(WeylError::CoordinateOverflow)?;
            }
        }
        Ok(out)
    }

    /// Basis coordinates of `tau*(alpha) = alpha G^-1`.
    pub fn star(&self, alpha: &[i64]) -> Result<Vec<i64>> {
        self.coords_times(alpha, &self.inv_coords)
    }

    /// `tau tau' = (G G', alpha -> f'(alpha) f(alpha G'^-1))`.
    pub fn compose(&self, other: &TauAut) -> Result<TauAut> {
        if !Signature::same(&self.sig, &other.sig) {
            return Err(WeylError::SignatureMismatch);
        }
        let g = self.g.mul(&other.g)?;
        let values = (0..self.sig.ell())
            .map(|k| &other.f.values()[k] * self.f.eval_coords(&other.inv_coords[k]))
            .collect();
        TauAut::new(&self.sig, g, Character::new(values)?)
    }

    /// `(G^-1, alpha -> 1 / f(alpha G))`.
    pub fn inverse(&self) -> Result<TauAut> {
        let g_inv = self.g.inverse();
        let fwd = self
            .sig
            .lattice()
            .image_coordinates(self.g.entries(), self.sig.lattice())?
            .ok_or_else(|| WeylError::NotInAut2(format!("{:?}", self.g.entries())))?;
        let values = fwd.iter().map(|n| self.f.eval_coords(n).recip()).collect();
        TauAut::new(&self.sig, g_inv, Character::new(values)?)
    }

    /// `tau[v] = sum_{p < l1} (sum_{r >= l1} v_r G[r][p]) x^{1_[p]}`.
    pub fn bracket_shift(&self, v: &[Rational]) -> Result<Element> {
        check_len(&self.sig, v)?;
        let ell1 = self.sig.ell1();
        let mut acc = Element::zero(&self.sig);
        for p in 0..ell1 {
            let c: Rational = (ell1..self.sig.ell())
                .map(|r| &v[r] * self.g.entries().get(r, p))
                .sum();
            if !c.is_zero() {
                acc = acc.add_unchecked(&Element::x_poly(&self.sig, p)?, &c);
            }
        }
        Ok(acc)
    }

    /// `tau(v) = v * diag((M^t)^-1, Q)`.
    pub fn shift_image(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        check_len(&self.sig, v)?;
        let ell1 = self.sig.ell1();
        let mut out = self.g.m_inv_transpose().left_apply(&v[..ell1])?;
        out.extend(self.g.q().left_apply(&v[ell1..])?);
        Ok(out)
    }

    pub fn g_matrix(&self) -> &Matrix {
        self.g.entries()
    }
}

pub(crate) fn check_len(sig: &Signature, v: &[Rational]) -> Result<()> {
    if v.len() != sig.ell() {
        return Err(WeylError::DimensionMismatch {
            expected: sig.ell(),
            got: v.len(),
        });
    }
    Ok(())
}

impl WeylMap for TauAut {
    fn source(&self) -> &Arc<Signature> {
        &self.sig
    }

    fn apply(&self, w: &Element) -> Result<Element> {
        check_source(self, w)?;
        if self.is_identity() {
            return Ok(w.clone());
        }
        let l = self.sig.ell();
        let images = GeneratorImages {
            target: &self.sig,
            x_lattice: |alpha: &[i64]| {
                let img = self.star(alpha)?;
                Element::monomial(
                    &self.sig,
                    crate::algebra::Monomial::new(img, MultiIndex::zero(l), MultiIndex::zero(l)),
                    self.f.eval_coords(alpha),
                )
            },
            x_poly: &self.x_poly,
            d: &self.d,
        };
        extend(&images, w, false)
    }
}

