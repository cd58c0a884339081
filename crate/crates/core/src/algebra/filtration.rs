use std::cmp::Ordering;

use super::element::Element;

/// Top degrees of an element. `None` fields are the `-infinity` sentinel of
/// the zero element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationData {
    /// Lexicographic maximum of the lattice coordinates over the support.
    pub gamma: Option<Vec<i64>>,
    /// Componentwise maximum of the polynomial indices.
    pub i: Option<Vec<u32>>,
    /// Maximal level `|mu|`.
    pub level: Option<u32>,
}

impl FiltrationData {
    pub fn is_sentinel(&self) -> bool {
        self.level.is_none()
    }
}

pub fn filtration_data(w: &Element) -> FiltrationData {
    let mut gamma: Option<Vec<i64>> = None;
    let mut i: Option<Vec<u32>> = None;
    let mut level: Option<u32> = None;
    for (m, _) in w.terms() {
        if gamma.as_ref().is_none_or(|g| m.alpha.cmp(g) == Ordering::Greater) {
            gamma = Some(m.alpha.clone());
        }
        i = Some(match i {
            None => m.i.entries().to_vec(),
            Some(cur) => cur.iter().zip(m.i.entries()).map(|(a, b)| *a.max(b)).collect(),
        });
        level = Some(level.map_or(m.level(), |l| l.max(m.level())));
    }
    FiltrationData { gamma, i, level }
}

/// Lexicographic minimum of the lattice coordinates over the support.
pub fn gamma_min(w: &Element) -> Option<Vec<i64>> {
    w.terms().map(|(m, _)| m.alpha.clone()).min()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Monomial, MultiIndex, Signature};
    use crate::lattice::Lattice;
    use crate::rational::int;

    #[test]
    fn examples() {
        let s = Signature::new(1, 1, Lattice::integer(2)).unwrap();
        let w = &(&Element::x(&s, &[1, 0]).unwrap() * &Element::d(&s, 0, 2).unwrap())
            + &Element::d(&s, 1, 1).unwrap();
        assert_eq!(filtration_data(&w).level, Some(2));
        assert_eq!(filtration_data(&w).gamma, Some(vec![1, 0]));

        let z = filtration_data(&Element::zero(&s));
        assert!(z.is_sentinel());
        assert_eq!(z.gamma, None);

        let w = Element::from_terms(
            &s,
            [
                (Monomial::new(vec![1, 0], MultiIndex(vec![2, 0]), MultiIndex(vec![1, 0])), int(1)),
                (Monomial::new(vec![0, 1], MultiIndex(vec![1, 0]), MultiIndex(vec![0, 0])), int(1)),
            ],
        )
        .unwrap();
        assert_eq!(filtration_data(&w).i, Some(vec![2, 0]));
    }
}
