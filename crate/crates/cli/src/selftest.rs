//! Property suites run by `weyl selftest` and by the acceptance tests.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use weyl_core::algebra::{alternating_binomial_sum, filtration_data, reordering_sides};
use weyl_core::automorphism::{
    compose_normal_forms, conjugate_shift, decompose_automorphism, first_disagreement, verify_automorphism, Composed,
    FunctionalAut, InnerExp, Mode, ShiftV, Sigma1, WeylMap,
};
use weyl_core::classification::{
    classify_ad_behavior, faithfulness_witness, growth_probe, iso_search_bounded, iso_verify, strictly_grows, AdTag,
    IsoCandidate, IsoSearchResult,
};
use weyl_core::rational::{int, rat};
use weyl_core::sample::{aut2_catalog, random_normal_form, random_tau, rng_from_seed, ElementSampler};
use weyl_core::{BlockMatrix, Element, Lattice, MultiIndex, Result, Signature};

use crate::eval::evaluate;
use crate::printer::print_element;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub summary: String,
    pub failure: Option<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    /// `PASS name (summary)` or `FAIL name (summary): reason`.
    pub fn line(&self) -> String {
        match &self.failure {
            None => format!("PASS {} ({})", self.name, self.summary),
            Some(why) => format!("FAIL {} ({}): {}", self.name, self.summary, why),
        }
    }
}

type Check = std::result::Result<String, String>;

pub struct Suite {
    pub name: &'static str,
    run: fn(&Arc<Signature>, &mut ChaCha8Rng) -> Check,
}

pub const SUITES: &[Suite] = &[
    Suite { name: "associativity", run: associativity },
    Suite { name: "lie-axioms", run: lie_axioms },
    Suite { name: "reordering", run: reordering },
    Suite { name: "sigma1", run: sigma1 },
    Suite { name: "exp-ad", run: exp_ad },
    Suite { name: "group-laws", run: group_laws },
    Suite { name: "decomposition", run: decomposition },
    Suite { name: "isomorphism", run: isomorphism },
    Suite { name: "faithfulness", run: faithfulness },
    Suite { name: "probes", run: probes },
    Suite { name: "parser", run: parser },
];

/// `W(1, 1, Gamma)` with `Gamma` generated by `(1,0), (0,1), (1/2,1/2)`.
pub fn desk_signature() -> Arc<Signature> {
    let gens = vec![vec![int(1), int(0)], vec![int(0), int(1)], vec![rat(1, 2), rat(1, 2)]];
    Signature::new(1, 1, Lattice::from_generators(2, gens).expect("nondegenerate")).expect("valid")
}

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.name).collect()
}

/// Runs one suite; each suite draws from its own stream so results do not
/// depend on which other suites run.
pub fn run_suite(name: &str, sig: &Arc<Signature>, seed: u64) -> Option<SuiteOutcome> {
    let (k, suite) = SUITES.iter().enumerate().find(|(_, s)| s.name == name)?;
    let mut rng = rng_from_seed(seed.wrapping_add((k as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)));
    let (summary, failure) = match (suite.run)(sig, &mut rng) {
        Ok(s) => (s, None),
        Err(why) => (String::from("stopped"), Some(why)),
    };
    Some(SuiteOutcome {
        name: suite.name,
        summary,
        failure,
    })
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn core<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn catalog(sig: &Signature) -> Vec<BlockMatrix> {
    aut2_catalog(sig.lattice(), sig.ell1(), sig.ell2(), 2)
}

fn associativity(sig: &Arc<Signature>, rng: &mut ChaCha8Rng) -> Check {
    let s = ElementSampler::default();
    for _ in 0..200 {
        let (a, b, c) = (s.element(sig, rng), s.element(sig, rng), s.element(sig, rng));
        let left = core(core(a.mul(&b))?.mul(&c))?;
        let right = core(a.mul(&core(b.mul(&c))?))?;
        ensure(left == right, || format!("(ab)c != a(bc) for a = {a:?}, b = {b:?}, c = {c:?}"))?;
    }
    Ok("200 triples".into())
}

fn lie_axioms(sig: &Arc<Signature>, rng: &mut ChaCha8Rng) -> Check {
    let s = ElementSampler::default();
    for _ in 0..200 {
        let (a, b, c) = (s.element(sig, rng), s.element(sig, rng), s.element(sig, rng));
        ensure(core(a.bracket(&a))?.is_zero(), || format!("[a, a] != 0 for a = {a:?}"))?;
        let ab = core(a.bracket(&b))?;
        ensure(ab == -&core(b.bracket(&a))?, || format!("[a, b] != -[b, a] for a = {a:?}, b = {b:?}"))?;
        let jacobi = core(core(a.bracket(&core(b.bracket(&c))?))?.try_add(&core(b.bracket(&core(c.bracket(&a))?))?))?;
        let jacobi = core(jacobi.try_add(&core(c.bracket(&ab))?))?;
        ensure(jacobi.is_zero(), || format!("Jacobi sum {jacobi:?} for {a:?}, {b:?}, {c:?}"))?;
        let k = Element::scalar(sig, s.coefficient(rng));
        ensure(core(k.bracket(&a))?.is_zero(), || format!("scalar does not commute with {a:?}"))?;
    }
    Ok("200 triples".into())
}

fn reordering(sig: &Arc<Signature>, rng: &mut ChaCha8Rng) -> Check {
    let s = ElementSampler::default();
    let xs: Vec<Element> = (0..20)
        .map(|_| Element::monomial(sig, s.monomial_in_a(sig, rng), int(1)))
        .collect::<Result<_>>()
        .map_err(|e| e.to_string())?;
    let mus = MultiIndex::up_to_level(sig.ell(), 3);
    for mu in &mus {
        for x in &xs {
            let (lhs, rhs) = core(reordering_sides(sig, mu, x))?;
            ensure(lhs == rhs, || format!("reordering fails for mu = {mu:?}, x = {x:?}"))?;
        }
    }
    let grid = MultiIndex::boxed(2, 3);
    for mu in &grid {
        for nu in &grid {
            let v = alternating_binomial_sum(mu, nu);
            ensure(v == i128::from(nu.is_zero()), || format!("alternating sum {v} at mu = {mu:?}, nu = {nu:?}"))?;
        }
    }
    Ok(format!(
        "{} multi-indices x {} elements, {} binomial pairs",
        mus.len(),
        xs.len(),
        grid.len() * grid.len()
    ))
}

fn sigma1(sig: &Arc<Signature>, rng: &mut ChaCha8Rng) -> Check {
    let s1 = Sigma1::new(sig);
    let seed = rng.gen();
    let lie = core(verify_automorphism(&s1, Mode::Lie, 100, seed))?;
    ensure(lie.passed, || format!("Lie-mode counterexample {:?}", lie.counterexample))?;
    let s = ElementSampler::default();
    for _ in 0..100 {
        let w = s.element(sig, rng);
        ensure(core(s1.apply(&core(s1.apply(&w))?))? == w, || format!("sigma1^2 moves {w:?}"))?;
    }
    let assoc = core(verify_automorphism(&s1, Mode::Assoc, 100, seed))?;
    let d = core(Element::d(sig, 0, 1))?;
    let d2 = d.pow(2);
    let expected = assoc
        .counterexample
        .as_ref()
        .is_some_and(|cx| cx.a == d && cx.b == d && cx.lhs == -&d2 && cx.rhs == d2);
    ensure(!assoc.passed && expected, || {
        format!("expected sigma1(d1^2) = -d1^2 != d1^2, got {:?}", assoc.counterexample)
    })?;
    Ok("100 pairs, 100 involutions, associative counterexample at (d1, d1)".into())
}

fn exp_ad(sig: &Arc<Signature>, rng: &mut ChaCha8Rng) -> Check {
    let s = ElementSampler::default();
    for _ in 0..100 {
        let u = core(InnerExp::new(s.element_in_a(sig, rng)))?;
        let m = core(Element::monomial(sig, s.monomial(sig, rng), int(1)))?;
        let level = m.max_level().unwrap_or(0);
        let top = core(u.ad_power(&m, level + 1))?;
        ensure(top.is_zero(), || format!("(ad u)^(L+1) m = {top:?} for u = {:?}, m = {m:?}", u.u()))?;
    }
    for _ in 0..5 {
        let u = core(InnerExp::new(s.element_in_a(sig, rng)))?;
        for mode in [Mode::Assoc, Mode::Lie] {
            let r = core(verify_automorphism(&u, mode, 100, rng.gen()))?;
            ensure(r.passed, || format!("exp(ad {:?}) fails in {mode} mode: {:?}", u.u(), r.counterexample))?;
        }
    }
    Ok("100 nilpotency checks, 5 maps x 2 modes x 100 pairs".into())
}

fn group_laws(sig: &Arc<Signature>, rng: &mut ChaCha8Rng) -> Check {
    let cat = catalog(sig);
    let s = ElementSampler::default();
    for _ in 0..50 {
        let tau = core(random_tau(sig, &cat, rng))?;
        let v = s.vector(sig.ell(), rng);
        let (u, v2) = core(conjugate_shift(&tau, &v))?;
        let tau_inv = core(tau.inverse())?;
        let sv = core(ShiftV::new(sig, v))?;
        let lhs = Composed(&tau_inv, Composed(&sv, &tau));
        let rhs = Composed(core(InnerExp::new(u))?, core(ShiftV::new(sig, v2))?);
        if let Some((g, a, b)) = core(first_disagreement(&lhs, &rhs))? {
            return Err(format!("conjugation law fails on {g}: {a:?} vs {b:?}"));
        }
    }
    for _ in 0..50 {
        let a = core(random_normal_form(sig, &cat, false, rng))?;
        let b = core(random_normal_form(sig, &cat, false, rng))?;
        let ab = core(compose_normal_forms(&a, &b))?;
        if let Some((g, x, y)) = core(first_disagreement(&ab, &Composed(&a, &b)))? {
            return Err(format!("composition law fails on {g}: {x:?} vs {y:?}"));
        }
    }
    Ok("50 conjugations, 50 compositions".into())
}

fn decomposition(sig: &Arc<Signature>, rng: &mut ChaCha8Rng) -> Check {
    let cat = catalog(sig);
    let mut with_eps = 0;
    for _ in 0..50 {
        let nf = core(random_normal_form(sig, &cat, true, rng))?;
        with_eps += usize::from(nf.eps);
        let f = core(FunctionalAut::from_map(&nf, Mode::Lie))?;
        let back = core(decompose_automorphism(&f))?;
        ensure(back == nf, || format!("decomposition of {nf:?} gave {back:?}"))?;
    }
    ensure(with_eps > 0, || "no sample had eps = 1".into())?;
    Ok(format!("50 automorphisms, {with_eps} with eps = 1"))
}

fn isomorphism(sig: &Arc<Signature>, rng: &mut ChaCha8Rng) -> Check {
    let cat = catalog(sig);
    let s = ElementSampler::default();
    for _ in 0..20 {
        let g = cat[rng.gen_range(0..cat.len())].clone();
        let cand = IsoCandidate {
            g,
            f: s.character(sig.ell(), rng),
        };
        let map = core(iso_verify(sig, sig, &cand, 100, rng.gen()))?;
        let r = core(verify_automorphism(&map, Mode::Assoc, 100, rng.gen()))?;
        ensure(r.passed, || format!("{cand:?} does not preserve products: {:?}", r.counterexample))?;
    }
    let z2 = Lattice::integer(2);
    let a = core(Signature::new(1, 1, z2.clone()))?;
    let b = core(Signature::new(2, 0, z2))?;
    let start = Instant::now();
    let r = core(iso_search_bounded(&a, &b, 2))?;
    let elapsed = start.elapsed();
    ensure(matches!(r, IsoSearchResult::Impossible(_)), || format!("(1,1) vs (2,0) gave {r:?}"))?;
    ensure(elapsed < Duration::from_millis(100), || format!("invariant rejection took {elapsed:?}"))?;
    Ok("20 candidates x 100 products, (1,1) vs (2,0) rejected by invariants".into())
}

fn faithfulness(sig: &Arc<Signature>, rng: &mut ChaCha8Rng) -> Check {
    let s = ElementSampler::default();
    for _ in 0..100 {
        let u = s.element_in_fd(sig, rng, 4, 5);
        let w = core(faithfulness_witness(sig, &u))?;
        ensure(w.n.iter().all(|&n| n <= 4) && !w.image.is_zero(), || format!("bad witness {w:?} for {u:?}"))?;
    }
    Ok("100 elements, all witnesses with n_q <= 4".into())
}

fn probes(sig: &Arc<Signature>, rng: &mut ChaCha8Rng) -> Check {
    let s = ElementSampler::default();
    for _ in 0..100 {
        let u = s.element_in_a(sig, rng);
        let probe = core(Element::monomial(sig, s.monomial(sig, rng), int(1)))?;
        let level = probe.max_level().unwrap_or(0) as usize;
        let tag = core(classify_ad_behavior(&u))?.tag;
        let rows = core(growth_probe(&u, &probe, level + 1))?;
        ensure(tag == AdTag::InA && rows[level + 1].is_zero(), || {
            format!("{u:?} does not annihilate {probe:?} by step {}", level + 1)
        })?;
    }
    for _ in 0..20 {
        for w in [s.wild_case_one(sig, rng), s.wild_case_two(sig, rng)] {
            let b = core(classify_ad_behavior(&w))?;
            ensure(b.tag == AdTag::Wild && b.growth.len() == 6 && strictly_grows(&b.growth), || {
                format!("{w:?} does not grow strictly: {:?}", b.growth)
            })?;
        }
    }
    for _ in 0..100 {
        let (a, b) = (s.element(sig, rng), s.element(sig, rng));
        let c = core(a.bracket(&b))?;
        let (fa, fb, fc) = (filtration_data(&a), filtration_data(&b), filtration_data(&c));
        if fc.is_sentinel() {
            continue;
        }
        let bound: Vec<i64> = fa.gamma.iter().flatten().zip(fb.gamma.iter().flatten()).map(|(x, y)| x + y).collect();
        ensure(fc.gamma.as_ref().is_some_and(|g| *g <= bound), || {
            format!("lattice degree of [{a:?}, {b:?}] exceeds the sum")
        })?;
        let (la, lb, lc) = (fa.level.unwrap_or(0), fb.level.unwrap_or(0), fc.level.unwrap_or(0));
        ensure(la == 0 || lb == 0 || lc < la + lb, || format!("level of [{a:?}, {b:?}] is {lc}"))?;
    }
    Ok("100 annihilations, 40 wild elements x 5 steps, 100 filtration pairs".into())
}

fn parser(sig: &Arc<Signature>, rng: &mut ChaCha8Rng) -> Check {
    let s = ElementSampler::default();
    let seed: u64 = rng.gen();
    let render = |seed: u64| -> std::result::Result<String, String> {
        let mut rng = rng_from_seed(seed);
        let mut out = String::new();
        for _ in 0..200 {
            let e = s.element(sig, &mut rng);
            let text = print_element(&e);
            let back = evaluate(&text, sig).map_err(|err| format!("{text:?} does not parse: {err}"))?;
            ensure(back == e, || format!("{text:?} parses to {back:?}, expected {e:?}"))?;
            ensure(print_element(&back) == text, || format!("{text:?} is not printed back identically"))?;
            out.push_str(&text);
            out.push('\n');
        }
        Ok(out)
    };
    let first = render(seed)?;
    ensure(render(seed)? == first, || "rerun with the same seed printed different text".into())?;
    Ok("200 round trips, identical rerun".into())
}
