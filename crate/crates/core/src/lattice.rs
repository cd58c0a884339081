//! Finitely generated nondegenerate subgroups of `Q^l`.
//!
//! A [`Lattice`] keeps the generators it was built from together with a
//! canonical `Z`-basis: the Hermite normal form of `d * generators`, divided
//! by `d`, where `d` clears every denominator. Two generator lists spanning
//! the same subgroup always produce identical bases, so lattice equality is
//! basis equality.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Result, WeylError};
use crate::linalg::Matrix;
use crate::rational::{format_vector, lcm_of_denominators, pow_i64, Rational};

#[derive(Clone)]
pub struct Lattice {
    ambient_dim: usize,
    generators: Vec<Vec<Rational>>,
    basis: Matrix,
    denominator: BigInt,
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis
    }
}

impl Eq for Lattice {}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lattice(basis = {:?})", self.basis)
    }
}

/// Row-style Hermite normal form: upper echelon, positive pivots, entries
/// above each pivot reduced into `[0, pivot)`. Zero rows are dropped.
pub fn hermite_normal_form(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..ncols {
        if pivot_row == m.len() {
            break;
        }
        // Euclid on the column until at most one nonzero entry remains below pivot_row.
        loop {
            let nonzero: Vec<usize> = (pivot_row..m.len()).filter(|&r| !m[r][col].is_zero()).collect();
            if nonzero.is_empty() {
                break;
            }
            let best = *nonzero
                .iter()
                .min_by_key(|&&r| m[r][col].abs())
                .expect("nonempty");
            m.swap(pivot_row, best);
            let mut done = true;
            for r in pivot_row + 1..m.len() {
                if m[r][col].is_zero() {
                    continue;
                }
                let q = m[r][col].div_floor(&m[pivot_row][col]);
                for c in col..ncols {
                    let v = &m[r][c] - &q * &m[pivot_row][c];
                    m[r][c] = v;
                }
                if !m[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if m[pivot_row][col].is_zero() {
            continue;
        }
        if m[pivot_row][col].is_negative() {
            for c in col..ncols {
                m[pivot_row][c] = -&m[pivot_row][c];
            }
        }
        for r in 0..pivot_row {
            let q = m[r][col].div_floor(&m[pivot_row][col]);
            if !q.is_zero() {
                for c in col..ncols {
                    let v = &m[r][c] - &q * &m[pivot_row][c];
                    m[r][c] = v;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    m.truncate(pivot_row);
    m
}

impl Lattice {
    /// Canonical lattice generated by `generators` inside `Q^ambient_dim`.
    pub fn from_generators(ambient_dim: usize, generators: Vec<Vec<Rational>>) -> Result<Lattice> {
        if ambient_dim == 0 {
            return Err(WeylError::DimensionMismatch { expected: 1, got: 0 });
        }
        if generators.is_empty() {
            return Err(WeylError::EmptyGenerators);
        }
        if let Some(g) = generators.iter().find(|g| g.len() != ambient_dim) {
            return Err(WeylError::DimensionMismatch {
                expected: ambient_dim,
                got: g.len(),
            });
        }
        let d = lcm_of_denominators(generators.iter().flatten());
        let scaled: Vec<Vec<BigInt>> = generators
            .iter()
            .map(|g| g.iter().map(|q| (q * &d).to_integer()).collect())
            .collect();
        let hnf = hermite_normal_form(&scaled);
        if hnf.len() < ambient_dim {
            return Err(WeylError::NondegenerateViolation {
                rank: hnf.len(),
                dim: ambient_dim,
            });
        }
        let rows: Vec<Vec<Rational>> = hnf
            .into_iter()
            .map(|r| r.into_iter().map(|x| Rational::new(x, d.clone())).collect())
            .collect();
        let denominator = lcm_of_denominators(rows.iter().flatten());
        let basis = Matrix::from_rows(rows)?;
        Ok(Lattice {
            ambient_dim,
            generators,
            basis,
            denominator,
        })
    }

    /// `Z^l` with the standard basis.
    pub fn integer(ambient_dim: usize) -> Lattice {
        let gens = Matrix::identity(ambient_dim).to_rows();
        Lattice::from_generators(ambient_dim, gens).expect("standard basis is nondegenerate")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn generators(&self) -> &[Vec<Rational>] {
        &self.generators
    }

    /// Rows are the canonical `Z`-basis.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_row(&self, k: usize) -> &[Rational] {
        self.basis.row(k)
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    fn check_dim(&self, len: usize) -> Result<()> {
        if len != self.ambient_dim {
            return Err(WeylError::DimensionMismatch {
                expected: self.ambient_dim,
                got: len,
            });
        }
        Ok(())
    }

    /// Integer coordinates `n` with `n * basis = v`, or `None` when `v` is not in the lattice.
    pub fn coordinates(&self, v: &[Rational]) -> Result<Option<Vec<i64>>> {
        self.check_dim(v.len())?;
        // The basis is upper triangular with the pivot of row k in column k.
        let mut n: Vec<BigInt> = Vec::with_capacity(self.ambient_dim);
        for col in 0..self.ambient_dim {
            let mut rest = v[col].clone();
            for (k, nk) in n.iter().enumerate() {
                rest -= self.basis.get(k, col) * Rational::from_integer(nk.clone());
            }
            let c = rest / self.basis.get(col, col);
            if !c.is_integer() {
                return Ok(None);
            }
            n.push(c.to_integer());
        }
        n.into_iter()
            .map(|x| x.to_i64().ok_or(WeylError::CoordinateOverflow))
            .collect::<Result<Vec<_>>>()
            .map(Some)
    }

    /// Like [`Lattice::coordinates`] but reports non-members as [`WeylError::NotMember`].
    pub fn require_coordinates(&self, v: &[Rational]) -> Result<Vec<i64>> {
        self.coordinates(v)?
            .ok_or_else(|| WeylError::NotMember(format_vector(v)))
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        matches!(self.coordinates(v), Ok(Some(_)))
    }

    /// The lattice point with the given basis coordinates.
    pub fn point(&self, coords: &[i64]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.ambient_dim];
        for (k, &n) in coords.iter().enumerate() {
            if n == 0 {
                continue;
            }
            let nq = Rational::from_integer(n.into());
            for (c, o) in out.iter_mut().enumerate() {
                *o += &nq * self.basis.get(k, c);
            }
        }
        out
    }

    /// Integer matrix whose rows are the coordinates of `b_k * g` in `target`,
    /// or `None` when some `b_k * g` leaves `target`.
    pub fn image_coordinates(&self, g: &Matrix, target: &Lattice) -> Result<Option<Vec<Vec<i64>>>> {
        let mut rows = Vec::with_capacity(self.ambient_dim);
        for k in 0..self.ambient_dim {
            let img = g.left_apply(self.basis.row(k))?;
            match target.coordinates(&img)? {
                Some(c) => rows.push(c),
                None => return Ok(None),
            }
        }
        Ok(Some(rows))
    }

    /// True iff `self * g == target` as sets.
    pub fn maps_onto(&self, g: &Matrix, target: &Lattice) -> Result<bool> {
        let Some(rows) = self.image_coordinates(g, target)? else {
            return Ok(false);
        };
        let det = Matrix::from_i64_rows(&rows)?.determinant()?;
        Ok(det.abs().is_one())
    }

    /// Rows express `d_1, ..., d_l` in the standard derivation basis, with
    /// `<alphas[p], d_q> = delta_{p,q}`.
    pub fn dual_derivation_basis(&self, alphas: &[Vec<Rational>]) -> Result<Matrix> {
        if alphas.len() != self.ambient_dim {
            return Err(WeylError::DimensionMismatch {
                expected: self.ambient_dim,
                got: alphas.len(),
            });
        }
        for a in alphas {
            self.require_coordinates(a)?;
        }
        let m = Matrix::from_rows(alphas.to_vec())?;
        let inv = m.inverse().map_err(|_| WeylError::SingularBasis)?;
        Ok(inv.transpose())
    }
}

/// `<alpha, del> = sum_p a_p alpha_p` for `del = sum_p a_p d_p`.
pub fn pairing(alpha: &[Rational], del: &[Rational]) -> Result<Rational> {
    if alpha.len() != del.len() {
        return Err(WeylError::DimensionMismatch {
            expected: alpha.len(),
            got: del.len(),
        });
    }
    Ok(alpha.iter().zip(del).map(|(a, b)| a * b).sum())
}

/// An invertible `l x l` matrix `(M 0; P Q)` with `M` of size `l1` and `Q` of size `l2`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BlockMatrix {
    ell1: usize,
    ell2: usize,
    entries: Matrix,
}

impl fmt::Debug for BlockMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BlockMatrix({}, {}, {:?})", self.ell1, self.ell2, self.entries)
    }
}

impl BlockMatrix {
    pub fn new(ell1: usize, ell2: usize, entries: Matrix) -> Result<BlockMatrix> {
        let l = ell1 + ell2;
        if entries.rows() != l || entries.cols() != l {
            return Err(WeylError::DimensionMismatch {
                expected: l,
                got: entries.rows().max(entries.cols()),
            });
        }
        for r in 0..ell1 {
            for c in ell1..l {
                if !entries.get(r, c).is_zero() {
                    return Err(WeylError::BlockShapeViolation(format!(
                        "entry ({}, {}) of the upper-right block is nonzero",
                        r + 1,
                        c + 1
                    )));
                }
            }
        }
        let b = BlockMatrix { ell1, ell2, entries };
        if b.m().determinant()?.is_zero() {
            return Err(WeylError::BlockShapeViolation("M is singular".into()));
        }
        if b.q().determinant()?.is_zero() {
            return Err(WeylError::BlockShapeViolation("Q is singular".into()));
        }
        Ok(b)
    }

    pub fn identity(ell1: usize, ell2: usize) -> BlockMatrix {
        BlockMatrix {
            ell1,
            ell2,
            entries: Matrix::identity(ell1 + ell2),
        }
    }

    pub fn ell1(&self) -> usize {
        self.ell1
    }

    pub fn ell2(&self) -> usize {
        self.ell2
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    pub fn m(&self) -> Matrix {
        self.entries.block(0, self.ell1, 0, self.ell1)
    }

    /// The lower-left `l2 x l1` block.
    pub fn p(&self) -> Matrix {
        let l = self.ell1 + self.ell2;
        self.entries.block(self.ell1, l, 0, self.ell1)
    }

    pub fn q(&self) -> Matrix {
        let l = self.ell1 + self.ell2;
        self.entries.block(self.ell1, l, self.ell1, l)
    }

    pub fn inverse(&self) -> BlockMatrix {
        let inv = self.entries.inverse().expect("block matrices are invertible");
        BlockMatrix {
            ell1: self.ell1,
            ell2: self.ell2,
            entries: inv,
        }
    }

    pub fn mul(&self, other: &BlockMatrix) -> Result<BlockMatrix> {
        if self.ell1 != other.ell1 || self.ell2 != other.ell2 {
            return Err(WeylError::DimensionMismatch {
                expected: self.ell1 + self.ell2,
                got: other.ell1 + other.ell2,
            });
        }
        Ok(BlockMatrix {
            ell1: self.ell1,
            ell2: self.ell2,
            entries: self.entries.mul(&other.entries)?,
        })
    }

    /// `(M^t)^{-1}`.
    pub fn m_inv_transpose(&self) -> Matrix {
        self.m()
            .transpose()
            .inverse()
            .expect("M is invertible")
    }
}

/// `Gamma * G == Gamma` for a block matrix `G`.
pub fn aut2_membership(lattice: &Lattice, g: &BlockMatrix) -> Result<bool> {
    if g.entries().rows() != lattice.ambient_dim() {
        return Err(WeylError::DimensionMismatch {
            expected: lattice.ambient_dim(),
            got: g.entries().rows(),
        });
    }
    lattice.maps_onto(g.entries(), lattice)
}

/// A multiplicative function `Gamma -> Q^*`, stored by its values on the
/// canonical basis rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Character {
    values: Vec<Rational>,
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Character{}", format_vector(&self.values))
    }
}

impl Character {
    pub fn new(values: Vec<Rational>) -> Result<Character> {
        if values.iter().any(Zero::is_zero) {
            return Err(WeylError::ZeroCharacterValue);
        }
        Ok(Character { values })
    }

    pub fn trivial(rank: usize) -> Character {
        Character {
            values: vec![Rational::one(); rank],
        }
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(One::is_one)
    }

    /// Value at the lattice point with basis coordinates `coords`.
    pub fn eval_coords(&self, coords: &[i64]) -> Rational {
        self.values
            .iter()
            .zip(coords)
            .map(|(v, &n)| pow_i64(v, n))
            .product()
    }

    pub fn eval(&self, lattice: &Lattice, alpha: &[Rational]) -> Result<Rational> {
        if self.values.len() != lattice.ambient_dim() {
            return Err(WeylError::DimensionMismatch {
                expected: lattice.ambient_dim(),
                got: self.values.len(),
            });
        }
        let n = lattice.require_coordinates(alpha)?;
        Ok(self.eval_coords(&n))
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Character) -> Character {
        Character {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect(),
        }
    }
}

/// Functional form of `char_eval`.
pub fn char_eval(f: &Character, lattice: &Lattice, alpha: &[Rational]) -> Result<Rational> {
    f.eval(lattice, alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn v(xs: &[(i64, i64)]) -> Vec<Rational> {
        xs.iter().map(|&(n, d)| rat(n, d)).collect()
    }

    fn iv(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&n| int(n)).collect()
    }

    #[test]
    fn from_generators_examples() {
        let l = Lattice::from_generators(2, vec![iv(&[1, 0]), iv(&[0, 1]), iv(&[1, 1])]).unwrap();
        assert_eq!(l.basis().to_rows(), vec![iv(&[1, 0]), iv(&[0, 1])]);

        let l = Lattice::from_generators(1, vec![iv(&[2]), iv(&[3])]).unwrap();
        assert_eq!(l.basis().to_rows(), vec![iv(&[1])]);

        assert_eq!(
            Lattice::from_generators(2, vec![iv(&[1, 0])]),
            Err(WeylError::NondegenerateViolation { rank: 1, dim: 2 })
        );
        assert_eq!(Lattice::from_generators(2, vec![]), Err(WeylError::EmptyGenerators));
    }

    #[test]
    fn half_integer_lattice() {
        let l = Lattice::from_generators(
            2,
            vec![iv(&[1, 0]), iv(&[0, 1]), v(&[(1, 2), (1, 2)])],
        )
        .unwrap();
        assert_eq!(l.basis().to_rows(), vec![v(&[(1, 2), (1, 2)]), iv(&[0, 1])]);
        assert_eq!(l.denominator(), &BigInt::from(2));
        assert_eq!(l.coordinates(&iv(&[1, 0])).unwrap(), Some(vec![2, -1]));
        assert_eq!(l.coordinates(&v(&[(1, 2), (0, 1)])).unwrap(), None);
    }

    #[test]
    fn coordinates_examples() {
        let z2 = Lattice::integer(2);
        assert_eq!(z2.coordinates(&iv(&[3, -2])).unwrap(), Some(vec![3, -2]));
        assert_eq!(z2.coordinates(&v(&[(1, 2), (0, 1)])).unwrap(), None);
        assert!(matches!(
            z2.coordinates(&iv(&[1])),
            Err(WeylError::DimensionMismatch { .. })
        ));

        let half = Lattice::from_generators(2, vec![v(&[(1, 2), (0, 1)]), iv(&[0, 1])]).unwrap();
        assert_eq!(half.coordinates(&v(&[(3, 2), (1, 1)])).unwrap(), Some(vec![3, 1]));
    }

    #[test]
    fn dual_basis_examples() {
        let z2 = Lattice::integer(2);
        let c = z2.dual_derivation_basis(&[iv(&[1, 0]), iv(&[0, 1])]).unwrap();
        assert!(c.is_identity());

        let z = Lattice::integer(1);
        let c = z.dual_derivation_basis(&[iv(&[2])]).unwrap();
        assert_eq!(c.get(0, 0), &rat(1, 2));

        let c = z2.dual_derivation_basis(&[iv(&[1, 1]), iv(&[0, 1])]).unwrap();
        assert_eq!(c.to_rows(), vec![iv(&[1, 0]), iv(&[-1, 1])]);

        assert_eq!(
            z2.dual_derivation_basis(&[iv(&[1, 1]), iv(&[2, 2])]),
            Err(WeylError::SingularBasis)
        );
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(pairing(&iv(&[1, 0]), &iv(&[1, 0])).unwrap(), int(1));
        assert_eq!(pairing(&iv(&[2, 3]), &iv(&[1, -1])).unwrap(), int(-1));
        assert_eq!(pairing(&iv(&[0, 0]), &iv(&[5, 7])).unwrap(), int(0));
        assert!(pairing(&iv(&[0]), &iv(&[5, 7])).is_err());
    }

    #[test]
    fn aut2_examples() {
        let z2 = Lattice::integer(2);
        let g = BlockMatrix::new(1, 1, Matrix::from_i64_rows(&[vec![1, 0], vec![1, 1]]).unwrap()).unwrap();
        assert!(aut2_membership(&z2, &g).unwrap());
        let g = BlockMatrix::new(1, 1, Matrix::from_i64_rows(&[vec![2, 0], vec![0, 1]]).unwrap()).unwrap();
        assert!(!aut2_membership(&z2, &g).unwrap());
        assert!(aut2_membership(&z2, &BlockMatrix::identity(1, 1)).unwrap());
        assert!(matches!(
            BlockMatrix::new(1, 1, Matrix::from_i64_rows(&[vec![1, 1], vec![0, 1]]).unwrap()),
            Err(WeylError::BlockShapeViolation(_))
        ));
    }

    #[test]
    fn character_examples() {
        let z = Lattice::integer(1);
        assert_eq!(Character::trivial(1).eval(&z, &iv(&[7])).unwrap(), int(1));
        let f = Character::new(iv(&[2])).unwrap();
        assert_eq!(f.eval(&z, &iv(&[-3])).unwrap(), rat(1, 8));
        let z2 = Lattice::integer(2);
        let f = Character::new(iv(&[2, 3])).unwrap();
        assert_eq!(f.eval(&z2, &iv(&[1, 1])).unwrap(), int(6));
        assert!(matches!(
            f.eval(&z2, &v(&[(1, 2), (0, 1)])),
            Err(WeylError::NotMember(_))
        ));
        assert_eq!(Character::new(iv(&[0])), Err(WeylError::ZeroCharacterValue));
    }
}
