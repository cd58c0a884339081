use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::functional::{describe, Generator};
use super::{
    compose_normal_forms, FunctionalAut, InnerExp, Mode, NormalFormAut, ShiftV, Sigma1, TauAut, WeylMap,
};
use crate::algebra::{Accumulator, Element, Monomial, MultiIndex, Signature};
use crate::error::{Result, WeylError};
use crate::lattice::{BlockMatrix, Character};
use crate::linalg::Matrix;
use crate::rational::Rational;

fn bad(msg: impl Into<String>) -> WeylError {
    WeylError::NotAnAutomorphism(msg.into())
}

/// `s` with `d_q(s) = x^{alpha, i}` when `alpha_q != 0`:
/// `s(i) = alpha_q^-1 (x^{alpha,i} - i_q s(i - 1_[q]))`.
fn integrate_graded(acc: &mut Accumulator, m: &Monomial, c: &Rational, alpha_q: &Rational, q: usize) {
    let inv = alpha_q.recip();
    let mut coeff = c * &inv;
    let mut i = m.i.clone();
    loop {
        acc.add(Monomial::new(m.alpha.clone(), i.clone(), m.mu.clone()), coeff.clone());
        let iq = i.0[q];
        if iq == 0 {
            break;
        }
        coeff = -coeff * Rational::from_integer(iq.into()) * &inv;
        i.0[q] -= 1;
    }
}

/// Images of the derivations, minus the derivations themselves.
fn derivation_defect(cur: &FunctionalAut, sig: &Arc<Signature>, q: usize) -> Result<Element> {
    let w = cur.image(Generator::D(q)).try_sub(&Element::d(sig, q, 1)?)?;
    if !w.is_in_a() {
        return Err(bad(format!("image of d{} is not in D + A", q + 1)));
    }
    Ok(w)
}

/// Factors a Lie (or associative) automorphism given on generators into
/// `sigma_tau sigma_u sigma_v sigma_1^eps`.
pub fn decompose_automorphism(phi: &FunctionalAut) -> Result<NormalFormAut> {
    let sig = phi.source().clone();
    if !Signature::same(&sig, phi.target()) {
        return Err(WeylError::SignatureMismatch);
    }
    let l = sig.ell();
    let ell1 = sig.ell1();
    let lattice = sig.lattice();

    // G from the D-parts of phi(d_q).
    let mut g = Matrix::zeros(l, l);
    for q in 0..l {
        for (m, c) in phi.image(Generator::D(q)).terms() {
            match m.level() {
                0 => {}
                1 if m.is_pure_derivation() => {
                    let p = m.mu.entries().iter().position(|&k| k == 1).expect("level one");
                    g.set(p, q, c.clone());
                }
                _ => return Err(bad(format!("image of d{} is not in D + A", q + 1))),
            }
        }
    }
    let g = BlockMatrix::new(ell1, sig.ell2(), g).map_err(|e| bad(e.to_string()))?;
    let tau0 = TauAut::new(&sig, g, Character::trivial(l)).map_err(|e| bad(e.to_string()))?;
    let mut factors = vec![NormalFormAut::from_tau(tau0.clone())];
    let mut cur = phi.then(&tau0.inverse()?)?;

    for q in 0..l {
        let w = derivation_defect(&cur, &sig, q)?;
        let mut graded = Accumulator::new();
        let mut rest = Accumulator::new();
        let mut has_graded = false;
        for (m, c) in w.terms() {
            let alpha_q = lattice.point(&m.alpha)[q].clone();
            if alpha_q.is_zero() {
                rest.add(m.clone(), c.clone());
            } else {
                has_graded = true;
                integrate_graded(&mut graded, m, c, &alpha_q, q);
            }
        }
        if has_graded {
            let s = graded.finish(&sig);
            cur = cur.then(&InnerExp::new(s.clone())?)?;
            factors.push(NormalFormAut::from_inner(InnerExp::new(-&s)?));
        }
        let rest = rest.finish(&sig);
        if !rest.is_zero() {
            if q < ell1 {
                let s = Element::from_terms(
                    &sig,
                    rest.terms().map(|(m, c)| {
                        let iq = m.i.0[q];
                        let i = m.i.add(&MultiIndex::unit(l, q, 1));
                        (
                            Monomial::new(m.alpha.clone(), i, m.mu.clone()),
                            c / Rational::from_integer((iq + 1).into()),
                        )
                    }),
                )?;
                cur = cur.then(&InnerExp::new(s.clone())?)?;
                factors.push(NormalFormAut::from_inner(InnerExp::new(-&s)?));
            } else {
                let c = rest
                    .as_scalar()
                    .ok_or_else(|| bad(format!("degree-zero part of the image of d{} is not constant", q + 1)))?;
                let mut v = vec![Rational::zero(); l];
                v[q] = c;
                let shift = ShiftV::new(&sig, v.clone())?;
                cur = cur.then(&ShiftV::new(&sig, v.iter().map(|x| -x).collect())?)?;
                factors.push(NormalFormAut::from_shift(shift));
            }
        }
        if !derivation_defect(&cur, &sig, q)?.is_zero() {
            return Err(bad(format!("could not normalize the image of d{}", q + 1)));
        }
    }

    let c0 = cur
        .image(Generator::Unit)
        .as_scalar()
        .filter(|c| c.abs().is_one())
        .ok_or_else(|| bad(format!("image of 1 is {}", describe(cur.image(Generator::Unit)))))?;
    let eps = !c0.is_one();
    if eps && phi.mode() == Mode::Assoc {
        return Err(bad("sigma_1 factor in an associative-mode map"));
    }

    let mut values = Vec::with_capacity(l);
    for k in 0..l {
        let xk = Generator::X(k).element(&sig)?;
        let img = cur.image(Generator::X(k));
        let c = img.terms().next().map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero);
        if c.is_zero() || *img != xk.scale(&c) {
            return Err(bad(format!("image of x^b{} is not a multiple of x^b{}", k + 1, k + 1)));
        }
        values.push(c / &c0);
    }
    let f = Character::new(values).map_err(|e| bad(e.to_string()))?;
    if !f.is_trivial() {
        let tf = TauAut::character(&sig, f)?;
        cur = cur.then(&tf.inverse()?)?;
        factors.push(NormalFormAut::from_tau(tf));
    }

    if eps {
        cur = cur.then(&Sigma1::new(&sig))?;
    }

    let mut v = vec![Rational::zero(); l];
    for (p, slot) in v.iter_mut().enumerate().take(ell1) {
        let img = cur.image(Generator::XPoly(p));
        let b = img.constant_term();
        if *img != Element::x_poly(&sig, p)?.try_add(&Element::scalar(&sig, b.clone()))? {
            return Err(bad(format!("image of x^1_[{}] is not a shift", p + 1)));
        }
        *slot = b;
    }
    if v.iter().any(|x| !x.is_zero()) {
        cur = cur.then(&ShiftV::new(&sig, v.iter().map(|x| -x).collect())?)?;
        factors.push(NormalFormAut::from_shift(ShiftV::new(&sig, v)?));
    }

    if !cur.with_mode(Mode::Assoc).is_identity_on_generators()? {
        return Err(bad("residual map is not the identity on generators"));
    }

    let mut acc = factors[0].clone();
    for f in &factors[1..] {
        acc = compose_normal_forms(&acc, f)?;
    }
    acc.eps = eps;
    Ok(acc)
}
