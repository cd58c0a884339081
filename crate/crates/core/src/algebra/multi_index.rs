use std::cmp::Ordering;
use std::fmt;

/// A multi-index `mu = (mu_1, ..., mu_l)` of nonnegative integers.
///
/// Ordering is the total order on `J`: lower level `|mu|` first, ties broken
/// at the first differing coordinate (smaller entry is smaller).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zero(len: usize) -> MultiIndex {
        MultiIndex(vec![0; len])
    }

    /// `k` in position `p`, zero elsewhere (`k_[p]`, 0-based).
    pub fn unit(len: usize, p: usize, k: u32) -> MultiIndex {
        let mut v = vec![0; len];
        v[p] = k;
        MultiIndex(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn level(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise `self - other`, or `None` if some entry would go negative.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    /// Componentwise `self <= other`.
    pub fn le_componentwise(&self, other: &MultiIndex) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// All `lambda` with `lambda <= self` componentwise, in lexicographic order.
    pub fn below(&self) -> Vec<MultiIndex> {
        let mut out = vec![Vec::with_capacity(self.len())];
        for &m in &self.0 {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=m).map(move |k| {
                        let mut p = prefix.clone();
                        p.push(k);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(MultiIndex).collect()
    }

    /// All multi-indices of length `len` with every entry at most `max`.
    pub fn boxed(len: usize, max: u32) -> Vec<MultiIndex> {
        MultiIndex(vec![max; len]).below()
    }

    /// All multi-indices of length `len` with level at most `max_level`.
    pub fn up_to_level(len: usize, max_level: u32) -> Vec<MultiIndex> {
        let mut v: Vec<MultiIndex> = MultiIndex::boxed(len, max_level)
            .into_iter()
            .filter(|m| m.level() <= max_level)
            .collect();
        v.sort();
        v
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.level()
            .cmp(&other.level())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        MultiIndex(v)
    }
}

/// `total_order_cmp` on `J`.
pub fn total_order_cmp(mu: &MultiIndex, nu: &MultiIndex) -> Ordering {
    mu.cmp(nu)
}

pub fn binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 0..k {
        acc = acc * u128::from(n - j) / u128::from(j + 1);
    }
    u64::try_from(acc).expect("binomial coefficient overflows u64")
}

/// `prod_p binom(mu_p, nu_p)`; zero as soon as some `nu_p > mu_p`.
pub fn multi_binomial(mu: &MultiIndex, nu: &MultiIndex) -> u64 {
    mu.0.iter().zip(&nu.0).map(|(&m, &n)| binomial(m, n)).product()
}
