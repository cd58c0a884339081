use super::functional::Generator;
use super::{Mode, WeylMap};
use crate::algebra::Element;
use crate::error::Result;
use crate::sample::{rng_from_seed, ElementSampler};

/// A pair on which the map fails to be a homomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub a: Element,
    pub b: Element,
    /// `phi(a * b)` or `phi([a, b])`.
    pub lhs: Element,
    /// `phi(a) * phi(b)` or `[phi(a), phi(b)]`.
    pub rhs: Element,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub passed: bool,
    pub mode: Mode,
    pub trials: usize,
    pub seed: u64,
    /// Number of pairs checked, generator pairs included.
    pub checked: usize,
    pub counterexample: Option<Counterexample>,
}

fn check_pair(phi: &dyn WeylMap, mode: Mode, a: &Element, b: &Element) -> Result<Option<Counterexample>> {
    let (pa, pb) = (phi.apply(a)?, phi.apply(b)?);
    let (lhs, rhs) = match mode {
        Mode::Assoc => (phi.apply(&a.mul(b)?)?, pa.mul(&pb)?),
        Mode::Lie => (phi.apply(&a.bracket(b)?)?, pa.bracket(&pb)?),
    };
    Ok((lhs != rhs).then(|| Counterexample {
        a: a.clone(),
        b: b.clone(),
        lhs,
        rhs,
    }))
}

/// Checks `phi` on every pair of generators, then on `trials` random pairs
/// drawn from `seed`.
pub fn verify_automorphism(phi: &dyn WeylMap, mode: Mode, trials: usize, seed: u64) -> Result<VerificationReport> {
    let sig = phi.source().clone();
    let mut report = VerificationReport {
        passed: true,
        mode,
        trials,
        seed,
        checked: 0,
        counterexample: None,
    };
    let gens = Generator::all(&sig)
        .into_iter()
        .map(|g| g.element(&sig))
        .collect::<Result<Vec<_>>>()?;
    for a in &gens {
        for b in &gens {
            report.checked += 1;
            if let Some(cx) = check_pair(phi, mode, a, b)? {
                report.passed = false;
                report.counterexample = Some(cx);
                return Ok(report);
            }
        }
    }
    let sampler = ElementSampler::default();
    let mut rng = rng_from_seed(seed);
    for _ in 0..trials {
        let a = sampler.element(&sig, &mut rng);
        let b = sampler.element(&sig, &mut rng);
        report.checked += 1;
        if let Some(cx) = check_pair(phi, mode, &a, &b)? {
            report.passed = false;
            report.counterexample = Some(cx);
            return Ok(report);
        }
    }
    Ok(report)
}
