use std::fmt;

use crate::error::SyntaxError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Int(u64),
    /// `d` immediately followed by a 1-based index.
    D(usize),
    /// `x[`
    XOpen,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Comma,
    Semi,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::D(q) => write!(f, "`d{q}`"),
            Tok::XOpen => f.write_str("`x[`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBracket => f.write_str("`[`"),
            Tok::RBracket => f.write_str("`]`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

/// 1-based line and column.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, SyntaxError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut k = 0;
    let digits = |k: &mut usize, column: &mut usize| -> String {
        let start = *k;
        while *k < chars.len() && chars[*k].is_ascii_digit() {
            *k += 1;
            *column += 1;
        }
        chars[start..*k].iter().collect()
    };
    while k < chars.len() {
        let c = chars[k];
        let pos = Pos { line, column };
        if c == '\n' {
            line += 1;
            column = 1;
            k += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            k += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            ',' => Some(Tok::Comma),
            ';' => Some(Tok::Semi),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Token { tok, pos });
            k += 1;
            column += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let text = digits(&mut k, &mut column);
            let n = text.parse::<u64>().map_err(|_| SyntaxError {
                pos,
                found: format!("`{text}`"),
                expected: vec!["an integer below 2^64".into()],
            })?;
            out.push(Token { tok: Tok::Int(n), pos });
            continue;
        }
        if c == 'x' && chars.get(k + 1) == Some(&'[') {
            out.push(Token { tok: Tok::XOpen, pos });
            k += 2;
            column += 2;
            continue;
        }
        if c == 'd' && chars.get(k + 1).is_some_and(char::is_ascii_digit) {
            k += 1;
            column += 1;
            let text = digits(&mut k, &mut column);
            let q = text.parse::<usize>().unwrap_or(usize::MAX);
            out.push(Token { tok: Tok::D(q), pos });
            continue;
        }
        return Err(SyntaxError {
            pos,
            found: format!("`{c}`"),
            expected: vec![
                "`x[`".into(),
                "`d<index>`".into(),
                "an integer".into(),
                "an operator".into(),
            ],
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        pos: Pos { line, column },
    });
    Ok(out)
}
