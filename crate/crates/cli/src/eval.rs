use std::sync::Arc;

use weyl_core::{Element, MultiIndex, Signature};

use crate::ast::{Expr, Sign};
use crate::error::{CliError, CliResult};

pub fn eval_expr(e: &Expr, sig: &Arc<Signature>) -> CliResult<Element> {
    Ok(match e {
        Expr::Sum(terms) => {
            let mut acc = Element::zero(sig);
            for (sign, t) in terms {
                let v = eval_expr(t, sig)?;
                acc = match sign {
                    Sign::Plus => acc.try_add(&v)?,
                    Sign::Minus => acc.try_sub(&v)?,
                };
            }
            acc
        }
        Expr::Product(fs) => {
            let mut acc = Element::one(sig);
            for f in fs {
                acc = acc.mul(&eval_expr(f, sig)?)?;
            }
            acc
        }
        Expr::Scalar(q) => Element::scalar(sig, q.clone()),
        Expr::GenX { alpha, i, pos } => {
            let i = MultiIndex(i.clone().unwrap_or_else(|| vec![0; sig.ell()]));
            Element::x_at(sig, alpha, &i).map_err(|source| CliError::Eval { pos: *pos, source })?
        }
        Expr::GenD { index, power } => Element::d(sig, index - 1, *power)?,
        Expr::Bracket(a, b) => eval_expr(a, sig)?.bracket(&eval_expr(b, sig)?)?,
        Expr::Paren(inner) => eval_expr(inner, sig)?,
    })
}

/// Parses and evaluates in one step.
pub fn evaluate(src: &str, sig: &Arc<Signature>) -> CliResult<Element> {
    eval_expr(&crate::parser::parse_element(src, sig)?, sig)
}
