use weyl_core::Rational;

use crate::lexer::Pos;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// Signed summands; a leading `-` shows up as `Minus` on the first entry.
    Sum(Vec<(Sign, Expr)>),
    Product(Vec<Expr>),
    Scalar(Rational),
    GenX {
        alpha: Vec<Rational>,
        i: Option<Vec<u32>>,
        pos: Pos,
    },
    GenD {
        index: usize,
        power: u32,
    },
    Bracket(Box<Expr>, Box<Expr>),
    Paren(Box<Expr>),
}

impl Expr {
    /// Same tree with positions erased, for structural comparisons.
    pub fn strip_positions(&self) -> Expr {
        let zero = Pos { line: 0, column: 0 };
        match self {
            Expr::Sum(ts) => Expr::Sum(ts.iter().map(|(s, e)| (*s, e.strip_positions())).collect()),
            Expr::Product(fs) => Expr::Product(fs.iter().map(Expr::strip_positions).collect()),
            Expr::GenX { alpha, i, .. } => Expr::GenX {
                alpha: alpha.clone(),
                i: i.clone(),
                pos: zero,
            },
            Expr::Bracket(a, b) => Expr::Bracket(Box::new(a.strip_positions()), Box::new(b.strip_positions())),
            Expr::Paren(e) => Expr::Paren(Box::new(e.strip_positions())),
            other => other.clone(),
        }
    }
}
