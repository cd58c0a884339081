use num_traits::{One, Signed};
use weyl_core::rational::format_rational;
use weyl_core::{Element, Monomial, Signature};

fn vector<T: ToString>(v: impl IntoIterator<Item = T>) -> String {
    let items: Vec<String> = v.into_iter().map(|x| x.to_string()).collect();
    format!("({})", items.join(","))
}

/// Factors of a monomial, without coefficient; empty for the unit.
pub fn print_monomial(sig: &Signature, m: &Monomial) -> String {
    let mut factors = Vec::new();
    if m.alpha.iter().any(|&a| a != 0) || !m.i.is_zero() {
        let alpha = sig.lattice().point(&m.alpha);
        factors.push(format!(
            "x[{};{}]",
            vector(alpha.iter().map(format_rational)),
            vector(m.i.entries())
        ));
    }
    for (q, &k) in m.mu.entries().iter().enumerate() {
        match k {
            0 => {}
            1 => factors.push(format!("d{}", q + 1)),
            k => factors.push(format!("d{}^{}", q + 1, k)),
        }
    }
    factors.join(" * ")
}

/// Canonical text form, terms in canonical order; `0` for the zero element.
pub fn print_element(e: &Element) -> String {
    let sig = e.signature();
    let mut out = String::new();
    for (k, (m, c)) in e.terms().enumerate() {
        let mono = print_monomial(sig, m);
        let shown = if k == 0 {
            c.clone()
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
            c.abs()
        };
        if mono.is_empty() {
            out.push_str(&format_rational(&shown));
        } else if shown.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{} * {}", format_rational(&shown), mono));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
