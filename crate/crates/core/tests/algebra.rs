mod common;

use std::cmp::Ordering;
use std::sync::Arc;

use common::{coeff, desk, element, element_in_a, integer_sig};
use proptest::prelude::*;
use weyl_core::algebra::{
    act_on_a, alternating_binomial_sum, change_d_basis, derivation_apply, filtration_data, multi_binomial,
    reordering_sides, total_order_cmp, x_monomial,
};
use weyl_core::rational::{int, rat};
use weyl_core::{Element, Lattice, Matrix, Monomial, MultiIndex, Rational, Signature, WeylError};

fn mi(v: &[u32]) -> MultiIndex {
    MultiIndex(v.to_vec())
}

fn term(sig: &Arc<Signature>, alpha: &[i64], i: &[u32], mu: &[u32], c: Rational) -> Element {
    Element::monomial(sig, Monomial::new(alpha.to_vec(), mi(i), mi(mu)), c).unwrap()
}

#[test]
fn multi_binomial_examples() {
    assert_eq!(multi_binomial(&mi(&[2, 1]), &mi(&[1, 0])), 2);
    assert_eq!(multi_binomial(&mi(&[3, 2]), &mi(&[3, 2])), 1);
    assert_eq!(multi_binomial(&mi(&[1, 0]), &mi(&[0, 2])), 0);
}

#[test]
fn derivation_apply_examples() {
    let s = integer_sig(1, 1);
    let x1 = Element::x_poly(&s, 0).unwrap();
    assert_eq!(derivation_apply(&s, &mi(&[1, 0]), &x1).unwrap(), Element::one(&s));

    let xa = Element::x(&s, &[3, -2]).unwrap();
    assert_eq!(derivation_apply(&s, &mi(&[1, 0]), &xa).unwrap(), xa.scale(&int(3)));
    assert_eq!(derivation_apply(&s, &mi(&[0, 1]), &xa).unwrap(), xa.scale(&int(-2)));

    let s = integer_sig(1, 0);
    let x = term(&s, &[1], &[2], &[0], int(1));
    let expect = &(&term(&s, &[1], &[2], &[0], int(1)) + &term(&s, &[1], &[1], &[0], int(4))) + &term(&s, &[1], &[0], &[0], int(2));
    assert_eq!(derivation_apply(&s, &mi(&[2]), &x).unwrap(), expect);

    let d = Element::d(&s, 0, 1).unwrap();
    assert_eq!(derivation_apply(&s, &mi(&[1]), &d), Err(WeylError::NotInA));
}

#[test]
fn mul_examples() {
    let s = integer_sig(1, 0);
    let d = Element::d(&s, 0, 1).unwrap();
    let x = Element::x_poly(&s, 0).unwrap();
    assert_eq!(&d * &x, &(&x * &d) + &Element::one(&s));

    let z = integer_sig(0, 1);
    let lhs = &Element::x(&z, &[1]).unwrap() * &Element::d(&z, 0, 1).unwrap();
    let x3 = Element::x(&z, &[3]).unwrap();
    let expect = &(&x3 * &Element::d(&z, 0, 1).unwrap()) + &x3.scale(&int(2));
    assert_eq!(&lhs * &Element::x(&z, &[2]).unwrap(), expect);

    let other = integer_sig(0, 1);
    assert_eq!(x.mul(&Element::one(&other)), Err(WeylError::SignatureMismatch));
}

#[test]
fn bracket_examples() {
    let s = integer_sig(1, 1);
    let xa = Element::x(&s, &[2, -3]).unwrap();
    for (p, a) in [(0, 2), (1, -3)] {
        assert_eq!(Element::d(&s, p, 1).unwrap().bracket(&xa).unwrap(), xa.scale(&int(a)));
    }
    let d1 = Element::d(&s, 0, 1).unwrap();
    assert_eq!(d1.bracket(&Element::x_poly(&s, 0).unwrap()).unwrap(), Element::one(&s));
    let w = &d1 + &xa;
    assert!(w.bracket(&w).unwrap().is_zero());
}

#[test]
fn act_on_a_examples() {
    let s = integer_sig(0, 2);
    let xa = Element::x(&s, &[2, 5]).unwrap();
    let w = &Element::x(&s, &[1, 1]).unwrap() * &Element::d(&s, 1, 1).unwrap();
    assert_eq!(act_on_a(&w, &xa).unwrap(), Element::x(&s, &[3, 6]).unwrap().scale(&int(5)));
    assert_eq!(act_on_a(&Element::one(&s), &xa).unwrap(), xa);

    let z = integer_sig(0, 1);
    let d = Element::d(&z, 0, 1).unwrap();
    let u = &d.pow(2) - &d;
    let x2 = Element::x(&z, &[2]).unwrap();
    assert_eq!(act_on_a(&u, &x2).unwrap(), x2.scale(&int(2)));
    assert!(act_on_a(&u, &Element::x(&z, &[1]).unwrap()).unwrap().is_zero());
    assert_eq!(act_on_a(&u, &d), Err(WeylError::NotInA));
}

#[test]
fn change_d_basis_examples() {
    let s = integer_sig(1, 1);
    let w = &Element::x(&s, &[1, 1]).unwrap() * &Element::d(&s, 0, 2).unwrap();
    assert_eq!(change_d_basis(&s, &Matrix::identity(2), &w).unwrap(), w);

    let z2 = Lattice::integer(2);
    let c = z2
        .dual_derivation_basis(&[vec![int(1), int(1)], vec![int(0), int(1)]])
        .unwrap();
    let d2 = Element::d(&s, 1, 1).unwrap();
    let expect = &d2 - &Element::d(&s, 0, 1).unwrap();
    assert_eq!(change_d_basis(&s, &c, &d2).unwrap(), expect);

    let z = integer_sig(0, 1);
    let c = Matrix::from_rows(vec![vec![rat(1, 2)]]).unwrap();
    let d = Element::d(&z, 0, 2).unwrap();
    assert_eq!(change_d_basis(&z, &c, &d).unwrap(), d.scale(&rat(1, 4)));

    let singular = Matrix::zeros(1, 1);
    assert_eq!(change_d_basis(&z, &singular, &d), Err(WeylError::SingularMatrix));
}

#[test]
fn total_order_examples() {
    assert_eq!(total_order_cmp(&mi(&[1, 0]), &mi(&[0, 1])), Ordering::Greater);
    assert_eq!(total_order_cmp(&mi(&[0, 2]), &mi(&[1, 0])), Ordering::Greater);
    assert_eq!(total_order_cmp(&mi(&[2, 1]), &mi(&[2, 1])), Ordering::Equal);
}

#[test]
fn alternating_sum_examples() {
    assert_eq!(alternating_binomial_sum(&mi(&[0]), &mi(&[0])), 1);
    assert_eq!(alternating_binomial_sum(&mi(&[2]), &mi(&[1])), 0);
    assert_eq!(alternating_binomial_sum(&mi(&[1]), &mi(&[0])), 1);
}

#[test]
fn alternating_sum_is_delta_exhaustively() {
    for mu in MultiIndex::boxed(2, 3) {
        for nu in MultiIndex::boxed(2, 3) {
            let expect = i128::from(nu.is_zero());
            assert_eq!(alternating_binomial_sum(&mu, &nu), expect, "mu={mu:?} nu={nu:?}");
        }
    }
}

#[test]
fn reordering_identity_exhaustively() {
    let s = desk();
    let xs = [
        x_monomial(&s, vec![1, -2], mi(&[2, 0])).unwrap(),
        x_monomial(&s, vec![0, 0], mi(&[0, 0])).unwrap(),
        x_monomial(&s, vec![-1, 2], mi(&[3, 0])).unwrap(),
    ];
    for mu in MultiIndex::up_to_level(2, 3) {
        for x in &xs {
            let (lhs, rhs) = reordering_sides(&s, &mu, x).unwrap();
            assert_eq!(lhs, rhs, "mu={mu:?}");
        }
    }
}

#[test]
fn filtration_examples() {
    let s = integer_sig(1, 1);
    let w = &(&Element::x(&s, &[1, 0]).unwrap() * &Element::d(&s, 0, 2).unwrap()) + &Element::d(&s, 0, 1).unwrap();
    assert_eq!(filtration_data(&w).level, Some(2));

    let z = filtration_data(&Element::zero(&s));
    assert!(z.is_sentinel());
    assert_eq!((z.gamma, z.i, z.level), (None, None, None));

    let w = &term(&s, &[1, 0], &[2, 0], &[1, 0], int(1)) + &term(&s, &[0, 1], &[1, 0], &[0, 0], int(1));
    assert_eq!(filtration_data(&w).i, Some(vec![2, 0]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn product_is_associative(a in element(desk()), b in element(desk()), c in element(desk())) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn one_is_the_identity(w in element(desk())) {
        let one = Element::one(w.signature());
        prop_assert_eq!(&one * &w, w.clone());
        prop_assert_eq!(&w * &one, w);
    }

    #[test]
    fn lie_axioms(a in element(desk()), b in element(desk()), c in element(desk()), k in coeff()) {
        prop_assert!(a.bracket(&a).unwrap().is_zero());
        prop_assert_eq!(a.bracket(&b).unwrap(), -&b.bracket(&a).unwrap());
        let jacobi = &(&a.bracket(&b.bracket(&c).unwrap()).unwrap() + &b.bracket(&c.bracket(&a).unwrap()).unwrap())
            + &c.bracket(&a.bracket(&b).unwrap()).unwrap();
        prop_assert!(jacobi.is_zero());
        prop_assert!(Element::scalar(a.signature(), k).bracket(&a).unwrap().is_zero());
    }

    #[test]
    fn theta_is_a_homomorphism(a in element(desk()), b in element(desk()), x in element_in_a(desk())) {
        let ab = &a * &b;
        prop_assert_eq!(act_on_a(&ab, &x).unwrap(), act_on_a(&a, &act_on_a(&b, &x).unwrap()).unwrap());
    }

    #[test]
    fn filtration_laws(a in element(desk()), b in element(desk())) {
        let c = a.bracket(&b).unwrap();
        let (fa, fb, fc) = (filtration_data(&a), filtration_data(&b), filtration_data(&c));
        if !fc.is_sentinel() {
            let ga = fa.gamma.unwrap();
            let gb = fb.gamma.unwrap();
            let sum: Vec<i64> = ga.iter().zip(&gb).map(|(x, y)| x + y).collect();
            prop_assert!(fc.gamma.unwrap() <= sum);
            let (la, lb) = (fa.level.unwrap(), fb.level.unwrap());
            if la >= 1 && lb >= 1 {
                prop_assert!(fc.level.unwrap() < la + lb);
            }
        }
    }

    #[test]
    fn change_d_basis_round_trip(w in element(desk()), m in prop::collection::vec(prop::collection::vec(-2i64..=2, 2), 2)) {
        let c = Matrix::from_i64_rows(&m).unwrap();
        if let Ok(inv) = c.inverse() {
            let s = w.signature();
            let there = change_d_basis(s, &c, &w).unwrap();
            prop_assert_eq!(change_d_basis(s, &inv, &there).unwrap(), w);
        }
    }

    #[test]
    fn reordering_identity_random_x(beta in prop::collection::vec(-2i64..=2, 2), j in 0u32..=3) {
        let s = desk();
        let x = x_monomial(&s, beta, mi(&[j, 0])).unwrap();
        for mu in MultiIndex::up_to_level(2, 3) {
            let (lhs, rhs) = reordering_sides(&s, &mu, &x).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
