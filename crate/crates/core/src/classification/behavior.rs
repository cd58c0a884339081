use serde::{Deserialize, Serialize};

use crate::algebra::{change_d_basis, filtration_data, gamma_min, Element, MultiIndex};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AdTag {
    /// `ad w` is locally nilpotent.
    InA,
    /// `ad w` is locally finite.
    InDPlusA,
    Wild,
}

/// Filtration data of `(ad w)^step (probe)`; `None` is the zero sentinel.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthRow {
    pub step: usize,
    pub level: Option<u32>,
    pub gamma_max: Option<Vec<i64>>,
    pub gamma_min: Option<Vec<i64>>,
    pub i_max: Option<Vec<u32>>,
}

impl GrowthRow {
    pub fn is_zero(&self) -> bool {
        self.level.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdBehavior {
    pub tag: AdTag,
    /// Probe and growth table attached to wild elements.
    pub probe: Option<Element>,
    pub growth: Vec<GrowthRow>,
}

/// Rows for `(ad w)^s (probe)`, `s = 0..=steps`.
pub fn growth_probe(w: &Element, probe: &Element, steps: usize) -> Result<Vec<GrowthRow>> {
    let mut rows = Vec::with_capacity(steps + 1);
    let mut cur = probe.clone();
    for step in 0..=steps {
        if step > 0 {
            cur = w.bracket(&cur)?;
        }
        let fd = filtration_data(&cur);
        rows.push(GrowthRow {
            step,
            level: fd.level,
            gamma_max: fd.gamma,
            gamma_min: gamma_min(&cur),
            i_max: fd.i,
        });
    }
    Ok(rows)
}

/// Every step is nonzero and strictly larger than the previous one in at
/// least one of: level, total polynomial degree, top lattice degree, or
/// (towards `-infinity`) bottom lattice degree.
pub fn strictly_grows(rows: &[GrowthRow]) -> bool {
    let total = |r: &GrowthRow| r.i_max.as_ref().map(|i| i.iter().sum::<u32>());
    rows.windows(2).all(|p| {
        let (a, b) = (&p[0], &p[1]);
        !b.is_zero()
            && (b.level > a.level || total(b) > total(a) || b.gamma_max > a.gamma_max || b.gamma_min < a.gamma_min)
    })
}

fn top_level_alphas(w: &Element) -> Vec<Vec<i64>> {
    let top = w.max_level().unwrap_or(0);
    w.terms()
        .filter(|(m, _)| m.level() == top)
        .map(|(m, _)| m.alpha.clone())
        .collect()
}

/// The probe used to exhibit growth of a wild element.
///
/// When every top-level term has lattice degree 0, the probe is `x^{b_k}`
/// where `d_k` (dual to the lattice basis) occurs in the largest top-level
/// derivation monomial. Otherwise it is `x^{2 beta}` for `beta` the largest
/// top-level lattice degree, or the smallest when none is positive.
pub fn wild_probe(w: &Element) -> Result<Element> {
    let sig = w.signature().clone();
    let l = sig.ell();
    let alphas = top_level_alphas(w);
    let zero = vec![0i64; l];
    if alphas.iter().all(|a| *a == zero) {
        let rows: Vec<Vec<_>> = (0..l).map(|k| sig.lattice().basis_row(k).to_vec()).collect();
        let c = sig.lattice().dual_derivation_basis(&rows)?;
        let in_d = change_d_basis(&sig, &c.inverse()?, w)?;
        let top = in_d.max_level().unwrap_or(0);
        let lambda = in_d
            .terms()
            .filter(|(m, _)| m.level() == top)
            .map(|(m, _)| m.mu.clone())
            .max()
            .unwrap_or_else(|| MultiIndex::zero(l));
        let k = lambda.entries().iter().rposition(|&x| x != 0).unwrap_or(0);
        let mut coords = zero;
        coords[k] = 1;
        return Element::x(&sig, &coords);
    }
    let max = alphas.iter().max().expect("nonempty").clone();
    let beta = if max > zero {
        max
    } else {
        alphas.iter().min().expect("nonempty").clone()
    };
    let doubled: Vec<i64> = beta.iter().map(|x| 2 * x).collect();
    Element::x(&sig, &doubled)
}

/// Syntactic classification: `A`, `D + A`, or neither; wild elements carry
/// a five-step growth table from [`wild_probe`].
pub fn classify_ad_behavior(w: &Element) -> Result<AdBehavior> {
    if w.is_in_a() {
        return Ok(AdBehavior {
            tag: AdTag::InA,
            probe: None,
            growth: Vec::new(),
        });
    }
    let in_d_plus_a = w
        .terms()
        .all(|(m, _)| m.level() == 0 || (m.level() == 1 && m.is_pure_derivation()));
    if in_d_plus_a {
        return Ok(AdBehavior {
            tag: AdTag::InDPlusA,
            probe: None,
            growth: Vec::new(),
        });
    }
    let mut first = None;
    for probe in probe_candidates(w)? {
        let growth = growth_probe(w, &probe, 5)?;
        if strictly_grows(&growth) {
            return Ok(AdBehavior {
                tag: AdTag::Wild,
                probe: Some(probe),
                growth,
            });
        }
        first.get_or_insert((probe, growth));
    }
    let (probe, growth) = first.expect("at least one candidate");
    Ok(AdBehavior {
        tag: AdTag::Wild,
        probe: Some(probe),
        growth,
    })
}

/// [`wild_probe`] first, then `x^{2 beta + b_k}` and `x^{b_k}` over the
/// lattice basis.
fn probe_candidates(w: &Element) -> Result<Vec<Element>> {
    let sig = w.signature();
    let primary = wild_probe(w)?;
    let base = primary.terms().next().map(|(m, _)| m.alpha.clone()).expect("monomial probe");
    let mut out = vec![primary];
    for k in 0..sig.ell() {
        let mut shifted = base.clone();
        shifted[k] += 1;
        out.push(Element::x(sig, &shifted)?);
    }
    for k in 0..sig.ell() {
        let mut unit = vec![0; sig.ell()];
        unit[k] = 1;
        out.push(Element::x(sig, &unit)?);
    }
    Ok(out)
}
