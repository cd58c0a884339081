use proptest::prelude::*;
use weyl_core::lattice::{aut2_membership, char_eval, pairing};
use weyl_core::rational::{int, rat};
use weyl_core::sample::aut2_catalog;
use weyl_core::{BlockMatrix, Character, Lattice, Matrix, Rational, WeylError};

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

fn rows(m: &Matrix) -> Vec<Vec<Rational>> {
    m.to_rows()
}

fn desk_lattice() -> Lattice {
    Lattice::from_generators(2, vec![ints(&[1, 0]), ints(&[0, 1]), vec![rat(1, 2), rat(1, 2)]]).unwrap()
}

#[test]
fn from_generators_examples() {
    let l = Lattice::from_generators(2, vec![ints(&[1, 0]), ints(&[0, 1]), ints(&[1, 1])]).unwrap();
    assert_eq!(rows(l.basis()), vec![ints(&[1, 0]), ints(&[0, 1])]);

    let l = Lattice::from_generators(1, vec![ints(&[2]), ints(&[3])]).unwrap();
    assert_eq!(rows(l.basis()), vec![ints(&[1])]);

    assert!(matches!(
        Lattice::from_generators(2, vec![ints(&[1, 0])]),
        Err(WeylError::NondegenerateViolation { rank: 1, dim: 2 })
    ));
    assert!(matches!(Lattice::from_generators(2, vec![]), Err(WeylError::EmptyGenerators)));
}

#[test]
fn desk_basis_is_upper_triangular() {
    let l = desk_lattice();
    assert_eq!(rows(l.basis()), vec![vec![rat(1, 2), rat(1, 2)], ints(&[0, 1])]);
    assert_eq!(l.denominator(), &2.into());
}

#[test]
fn coordinates_examples() {
    let z2 = Lattice::integer(2);
    assert_eq!(z2.coordinates(&ints(&[3, -2])).unwrap(), Some(vec![3, -2]));
    assert_eq!(z2.coordinates(&[rat(1, 2), int(0)]).unwrap(), None);
    assert!(matches!(z2.coordinates(&ints(&[1])), Err(WeylError::DimensionMismatch { .. })));

    let half = Lattice::from_generators(2, vec![vec![rat(1, 2), int(0)], ints(&[0, 1])]).unwrap();
    assert_eq!(half.coordinates(&[rat(3, 2), int(1)]).unwrap(), Some(vec![3, 1]));
}

#[test]
fn dual_basis_examples() {
    let z2 = Lattice::integer(2);
    let c = z2.dual_derivation_basis(&[ints(&[1, 0]), ints(&[0, 1])]).unwrap();
    assert!(c.is_identity());

    let z = Lattice::integer(1);
    let c = z.dual_derivation_basis(&[ints(&[2])]).unwrap();
    assert_eq!(rows(&c), vec![vec![rat(1, 2)]]);

    let c = z2.dual_derivation_basis(&[ints(&[1, 1]), ints(&[0, 1])]).unwrap();
    assert_eq!(rows(&c), vec![ints(&[1, 0]), ints(&[-1, 1])]);

    assert!(matches!(
        z2.dual_derivation_basis(&[ints(&[1, 1]), ints(&[2, 2])]),
        Err(WeylError::SingularBasis)
    ));
}

#[test]
fn pairing_examples() {
    assert_eq!(pairing(&ints(&[1, 0]), &ints(&[1, 0])).unwrap(), int(1));
    assert_eq!(pairing(&ints(&[2, 3]), &ints(&[1, -1])).unwrap(), int(-1));
    assert_eq!(pairing(&ints(&[0, 0]), &ints(&[5, -7])).unwrap(), int(0));
    assert!(pairing(&ints(&[0, 0]), &ints(&[1])).is_err());
}

#[test]
fn aut2_examples() {
    let z2 = Lattice::integer(2);
    let g = |r: &[Vec<i64>]| BlockMatrix::new(1, 1, Matrix::from_i64_rows(r).unwrap()).unwrap();
    assert!(aut2_membership(&z2, &g(&[vec![1, 0], vec![1, 1]])).unwrap());
    assert!(!aut2_membership(&z2, &g(&[vec![2, 0], vec![0, 1]])).unwrap());
    let desk = desk_lattice();
    assert!(aut2_membership(&desk, &BlockMatrix::identity(1, 1)).unwrap());
    assert!(aut2_membership(&desk, &BlockMatrix::identity(0, 2)).unwrap());
}

#[test]
fn block_shape_is_enforced() {
    let m = Matrix::from_i64_rows(&[vec![1, 1], vec![0, 1]]).unwrap();
    assert!(matches!(BlockMatrix::new(1, 1, m.clone()), Err(WeylError::BlockShapeViolation(_))));
    assert!(BlockMatrix::new(0, 2, m).is_ok());
}

#[test]
fn char_eval_examples() {
    let z = Lattice::integer(1);
    let f = Character::new(vec![int(2)]).unwrap();
    assert_eq!(char_eval(&f, &z, &ints(&[-3])).unwrap(), rat(1, 8));

    let z2 = Lattice::integer(2);
    let f = Character::new(vec![int(2), int(3)]).unwrap();
    assert_eq!(char_eval(&f, &z2, &ints(&[1, 1])).unwrap(), int(6));

    let t = Character::trivial(2);
    assert_eq!(char_eval(&t, &z2, &ints(&[5, -4])).unwrap(), int(1));
    assert!(matches!(char_eval(&t, &z2, &[rat(1, 2), int(0)]), Err(WeylError::NotMember(_))));
    assert!(Character::new(vec![int(0)]).is_err());
}

fn unimodular() -> impl Strategy<Value = Vec<Vec<i64>>> {
    // products of elementary matrices
    prop::collection::vec((0usize..3, 0usize..3, -2i64..=2), 0..6).prop_map(|ops| {
        let mut u: Vec<Vec<i64>> = (0..3).map(|r| (0..3).map(|c| i64::from(r == c)).collect()).collect();
        for (a, b, k) in ops {
            if a != b {
                for c in 0..3 {
                    u[a][c] += k * u[b][c];
                }
            }
        }
        u
    })
}

fn base_generators() -> Vec<Vec<Rational>> {
    vec![vec![rat(1, 2), int(0), rat(1, 3)], vec![int(0), int(1), int(2)], vec![int(0), int(0), rat(3, 2)]]
}

proptest! {
    #[test]
    fn canonical_basis_ignores_generator_choice(u in unimodular(), extra in prop::collection::vec((-2i64..=2, -2i64..=2, -2i64..=2), 0..3)) {
        let b = base_generators();
        let mix = |coef: &[i64]| -> Vec<Rational> {
            (0..3).map(|c| (0..3).map(|r| int(coef[r]) * &b[r][c]).sum()).collect()
        };
        let mut gens: Vec<Vec<Rational>> = u.iter().map(|row| mix(row)).collect();
        for (x, y, z) in extra {
            gens.push(mix(&[x, y, z]));
        }
        let a = Lattice::from_generators(3, b.clone()).unwrap();
        let c = Lattice::from_generators(3, gens).unwrap();
        prop_assert_eq!(a.basis(), c.basis());
        prop_assert_eq!(a, c);
    }

    #[test]
    fn dual_basis_is_dual(a in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 3)) {
        let alphas: Vec<Vec<Rational>> = a.iter().map(|r| ints(r)).collect();
        let z3 = Lattice::integer(3);
        match z3.dual_derivation_basis(&alphas) {
            Ok(c) => {
                for p in 0..3 {
                    for q in 0..3 {
                        let expect = int(i64::from(p == q));
                        prop_assert_eq!(pairing(&alphas[p], c.row(q)).unwrap(), expect);
                    }
                }
            }
            Err(e) => {
                prop_assert_eq!(e, WeylError::SingularBasis);
                prop_assert!(Matrix::from_rows(alphas).unwrap().determinant().unwrap() == int(0));
            }
        }
    }

    #[test]
    fn aut2_is_a_group(i in 0usize..64, j in 0usize..64) {
        let desk = desk_lattice();
        let cat = aut2_catalog(&desk, 1, 1, 2);
        let (g, h) = (&cat[i % cat.len()], &cat[j % cat.len()]);
        prop_assert!(aut2_membership(&desk, g).unwrap());
        prop_assert!(aut2_membership(&desk, &g.mul(h).unwrap()).unwrap());
        prop_assert!(aut2_membership(&desk, &g.inverse()).unwrap());
    }

    #[test]
    fn characters_are_multiplicative(a in prop::collection::vec(-3i64..=3, 2), b in prop::collection::vec(-3i64..=3, 2), vals in prop::collection::vec(prop_oneof![Just(int(2)), Just(rat(-1, 3)), Just(int(5))], 2)) {
        let desk = desk_lattice();
        let f = Character::new(vals).unwrap();
        let (pa, pb) = (desk.point(&a), desk.point(&b));
        let sum: Vec<Rational> = pa.iter().zip(&pb).map(|(x, y)| x + y).collect();
        prop_assert_eq!(
            char_eval(&f, &desk, &sum).unwrap(),
            char_eval(&f, &desk, &pa).unwrap() * char_eval(&f, &desk, &pb).unwrap()
        );
    }
}
