//! Recursive descent parser for element expressions.
//!
//! ```text
//! element := ("+" | "-")? term (("+" | "-") term)*
//! term    := scalar ("*" factor)* | factor ("*" factor)*
//! factor  := "x[" vector (";" natvector)? "]" | "d" nat ("^" nat)?
//!          | "[" element "," element "]" | "(" element ")"
//! scalar  := int ("/" posint)?
//! vector  := "(" (rational ("," rational)*)? ")"
//! ```
//!
//! An empty vector `()` stands for the zero vector of the right length.

use weyl_core::{Rational, Signature};

use crate::ast::{Expr, Sign};
use crate::error::{CliError, CliResult, SyntaxError};
use crate::lexer::{tokenize, Pos, Tok, Token};

pub fn parse_element(src: &str, sig: &Signature) -> CliResult<Expr> {
    let tokens = tokenize(src)?;
    let mut p = Parser {
        tokens,
        at: 0,
        ell: sig.ell(),
    };
    let e = p.element()?;
    p.expect(Tok::Eof, &["`+`", "`-`", "`*`", "end of input"])?;
    Ok(e)
}

struct Parser {
    tokens: Vec<Token>,
    at: usize,
    ell: usize,
}

const FACTOR_START: [&str; 4] = ["`x[`", "`d<index>`", "`[`", "`(`"];

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.at]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.at].clone();
        if t.tok != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if &self.peek().tok == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn fail<T>(&self, expected: &[&str]) -> CliResult<T> {
        let t = self.peek();
        Err(SyntaxError {
            pos: t.pos,
            found: t.tok.to_string(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
        .into())
    }

    fn expect(&mut self, tok: Tok, expected: &[&str]) -> CliResult<Pos> {
        if self.peek().tok == tok {
            Ok(self.bump().pos)
        } else {
            self.fail(expected)
        }
    }

    fn element(&mut self) -> CliResult<Expr> {
        let mut sign = Sign::Plus;
        let mut explicit = false;
        if self.eat(&Tok::Minus) {
            sign = Sign::Minus;
            explicit = true;
        } else if self.eat(&Tok::Plus) {
            explicit = true;
        }
        let mut terms = vec![(sign, self.term()?)];
        loop {
            let sign = match self.peek().tok {
                Tok::Plus => Sign::Plus,
                Tok::Minus => Sign::Minus,
                _ => break,
            };
            self.bump();
            terms.push((sign, self.term()?));
        }
        if terms.len() == 1 && !explicit {
            Ok(terms.pop().expect("one term").1)
        } else {
            Ok(Expr::Sum(terms))
        }
    }

    fn term(&mut self) -> CliResult<Expr> {
        let mut factors = Vec::new();
        if matches!(self.peek().tok, Tok::Int(_)) {
            factors.push(Expr::Scalar(self.scalar()?));
            if !self.eat(&Tok::Star) {
                return Ok(factors.pop().expect("scalar"));
            }
        } else if !self.starts_factor() {
            let mut exp = vec!["an integer"];
            exp.extend(FACTOR_START);
            return self.fail(&exp);
        }
        factors.push(self.factor()?);
        while self.eat(&Tok::Star) {
            factors.push(self.factor()?);
        }
        if factors.len() == 1 {
            Ok(factors.pop().expect("one factor"))
        } else {
            Ok(Expr::Product(factors))
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek().tok, Tok::XOpen | Tok::D(_) | Tok::LBracket | Tok::LParen)
    }

    fn factor(&mut self) -> CliResult<Expr> {
        let t = self.peek().clone();
        match t.tok {
            Tok::XOpen => {
                self.bump();
                let (alpha, apos) = self.vector(|p| p.rational())?;
                let alpha = self.fit(alpha, apos, "lattice degree", Rational::from_integer(0.into()))?;
                let i = if self.eat(&Tok::Semi) {
                    let (i, ipos) = self.vector(|p| p.nat())?;
                    Some(self.fit(i, ipos, "polynomial degree", 0)?)
                } else {
                    None
                };
                self.expect(Tok::RBracket, &["`;`", "`]`"])?;
                Ok(Expr::GenX { alpha, i, pos: t.pos })
            }
            Tok::D(index) => {
                self.bump();
                if index == 0 || index > self.ell {
                    return Err(CliError::Eval {
                        pos: t.pos,
                        source: weyl_core::WeylError::IndexOutOfRange { index, dim: self.ell },
                    });
                }
                let power = if self.eat(&Tok::Caret) { self.nat()? } else { 1 };
                Ok(Expr::GenD { index, power })
            }
            Tok::LBracket => {
                self.bump();
                let a = self.element()?;
                self.expect(Tok::Comma, &["`,`", "`+`", "`-`", "`*`"])?;
                let b = self.element()?;
                self.expect(Tok::RBracket, &["`]`", "`+`", "`-`", "`*`"])?;
                Ok(Expr::Bracket(Box::new(a), Box::new(b)))
            }
            Tok::LParen => {
                self.bump();
                let e = self.element()?;
                self.expect(Tok::RParen, &["`)`", "`+`", "`-`", "`*`"])?;
                Ok(Expr::Paren(Box::new(e)))
            }
            _ => self.fail(&FACTOR_START),
        }
    }

    /// Empty vectors become zero vectors; otherwise the length must be `l`.
    fn fit<T: Clone>(&self, v: Vec<T>, pos: Pos, what: &'static str, zero: T) -> CliResult<Vec<T>> {
        if v.is_empty() {
            return Ok(vec![zero; self.ell]);
        }
        if v.len() != self.ell {
            return Err(CliError::Dimension {
                pos,
                what,
                got: v.len(),
                expected: self.ell,
            });
        }
        Ok(v)
    }

    fn vector<T>(&mut self, mut item: impl FnMut(&mut Self) -> CliResult<T>) -> CliResult<(Vec<T>, Pos)> {
        let pos = self.expect(Tok::LParen, &["`(`"])?;
        let mut out = Vec::new();
        if self.eat(&Tok::RParen) {
            return Ok((out, pos));
        }
        out.push(item(self)?);
        while self.eat(&Tok::Comma) {
            out.push(item(self)?);
        }
        self.expect(Tok::RParen, &["`,`", "`)`"])?;
        Ok((out, pos))
    }

    fn int(&mut self) -> CliResult<u64> {
        match self.peek().tok {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            _ => self.fail(&["an integer"]),
        }
    }

    fn nat(&mut self) -> CliResult<u32> {
        let pos = self.peek().pos;
        let n = self.int()?;
        u32::try_from(n).map_err(|_| {
            SyntaxError {
                pos,
                found: format!("`{n}`"),
                expected: vec!["an integer below 2^32".into()],
            }
            .into()
        })
    }

    fn scalar(&mut self) -> CliResult<Rational> {
        let n = self.int()?;
        let mut q = Rational::from_integer(n.into());
        if self.eat(&Tok::Slash) {
            let pos = self.peek().pos;
            let d = self.int()?;
            if d == 0 {
                return Err(SyntaxError {
                    pos,
                    found: "`0`".into(),
                    expected: vec!["a positive denominator".into()],
                }
                .into());
            }
            q /= Rational::from_integer(d.into());
        }
        Ok(q)
    }

    fn rational(&mut self) -> CliResult<Rational> {
        let neg = self.eat(&Tok::Minus);
        let q = self.scalar()?;
        Ok(if neg { -q } else { q })
    }
}
