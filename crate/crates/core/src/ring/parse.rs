//! Tokenizer and polynomial expression parser.
//!
//! Grammar for expressions:
//!
//! ```text
//! expr   := ["+"|"-"] term (("+"|"-") term)*
//! term   := factor (("*"|"/") factor)*
//! factor := atom ["^" integer]
//! atom   := integer | identifier | "(" expr ")" | "-" factor
//! ```
//!
//! Division is only allowed by nonzero constants.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::poly::Poly;
use super::ring::Ring;
use super::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    Int(BigInt),
    Sym(char),
    Eof,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub line: usize,
    pub col: usize,
}

impl Token {
    pub fn is_sym(&self, c: char) -> bool {
        self.kind == TokenKind::Sym(c)
    }

    pub fn describe(&self) -> String {
        match &self.kind {
            TokenKind::Ident(s) => format!("`{s}`"),
            TokenKind::Int(n) => format!("`{n}`"),
            TokenKind::Sym(c) => format!("`{c}`"),
            TokenKind::Eof => "end of input".into(),
        }
    }
}

const SYMBOLS: &str = "+-*/^(),;:=|[]";

/// Split text into tokens. `#` and `//` start comments running to end of line.
pub fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' || (c == '/' && chars.get(i + 1) == Some(&'/')) {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let start_col = col;
        if c.is_ascii_digit() {
            let s = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[s..i].iter().collect();
            col += i - s;
            out.push(Token {
                kind: TokenKind::Int(digits.parse().expect("digits")),
                line,
                col: start_col,
            });
        } else if c.is_alphabetic() || c == '_' {
            let s = i;
            while i < chars.len()
                && (chars[i].is_alphanumeric() || chars[i] == '_')
            {
                i += 1;
            }
            let word: String = chars[s..i].iter().collect();
            col += i - s;
            out.push(Token { kind: TokenKind::Ident(word), line, col: start_col });
        } else if SYMBOLS.contains(c) {
            i += 1;
            col += 1;
            out.push(Token { kind: TokenKind::Sym(c), line, col: start_col });
        } else {
            return Err(Error::Syntax { line, col, msg: format!("unexpected character `{c}`") });
        }
    }
    out.push(Token { kind: TokenKind::Eof, line, col });
    Ok(out)
}

/// Cursor over a token slice, shared by the expression and file parsers.
pub struct Cursor<'a> {
    toks: &'a [Token],
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(toks: &'a [Token]) -> Self {
        Cursor { toks, pos: 0 }
    }

    pub fn peek(&self) -> &Token {
        &self.toks[self.pos.min(self.toks.len() - 1)]
    }

    pub fn peek_at(&self, k: usize) -> &Token {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)]
    }

    pub fn next(&mut self) -> Token {
        let t = self.peek().clone();
        if self.pos < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub fn at_eof(&self) -> bool {
        self.peek().kind == TokenKind::Eof
    }

    pub fn eat_sym(&mut self, c: char) -> bool {
        if self.peek().is_sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`, found {}", self.peek().describe())))
        }
    }

    pub fn expect_ident(&mut self) -> Result<(String, usize, usize)> {
        let t = self.peek().clone();
        match t.kind {
            TokenKind::Ident(s) => {
                self.pos += 1;
                Ok((s, t.line, t.col))
            }
            _ => Err(self.error(format!("expected identifier, found {}", t.describe()))),
        }
    }

    pub fn eat_keyword(&mut self, kw: &str) -> bool {
        if matches!(&self.peek().kind, TokenKind::Ident(s) if s == kw) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn error(&self, msg: impl Into<String>) -> Error {
        let t = self.peek();
        Error::Syntax { line: t.line, col: t.col, msg: msg.into() }
    }

    /// Parse an expression over `ring`; identifiers are resolved by name.
    pub fn expr(&mut self, ring: &Ring) -> Result<Poly> {
        let mut acc = if self.eat_sym('-') {
            -self.term(ring)?
        } else {
            self.eat_sym('+');
            self.term(ring)?
        };
        loop {
            if self.eat_sym('+') {
                acc = &acc + &self.term(ring)?;
            } else if self.eat_sym('-') {
                acc = &acc - &self.term(ring)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self, ring: &Ring) -> Result<Poly> {
        let mut acc = self.factor(ring)?;
        loop {
            if self.eat_sym('*') {
                acc = &acc * &self.factor(ring)?;
            } else if self.peek().is_sym('/') {
                let (line, col) = (self.peek().line, self.peek().col);
                self.pos += 1;
                let d = self.factor(ring)?;
                if !d.is_constant() || d.is_zero() {
                    return Err(Error::Syntax {
                        line,
                        col,
                        msg: "division only by nonzero constants".into(),
                    });
                }
                acc = acc.scale(&d.constant_term().recip());
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self, ring: &Ring) -> Result<Poly> {
        let base = self.atom(ring)?;
        if self.eat_sym('^') {
            let t = self.next();
            match t.kind {
                TokenKind::Int(n) => {
                    let k = n.to_u32().filter(|&k| k <= 10_000).ok_or(Error::Syntax {
                        line: t.line,
                        col: t.col,
                        msg: "exponent too large".into(),
                    })?;
                    Ok(base.pow(k))
                }
                _ => Err(Error::Syntax {
                    line: t.line,
                    col: t.col,
                    msg: format!("expected integer exponent, found {}", t.describe()),
                }),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self, ring: &Ring) -> Result<Poly> {
        let t = self.next();
        match t.kind {
            TokenKind::Int(n) => Ok(ring.constant(Rational::from_integer(n))),
            TokenKind::Ident(name) => match ring.var_index(&name) {
                Some(i) => Ok(ring.var(i)),
                None => Err(Error::Undeclared { name, line: t.line, col: t.col }),
            },
            TokenKind::Sym('(') => {
                let e = self.expr(ring)?;
                self.expect_sym(')')?;
                Ok(e)
            }
            TokenKind::Sym('-') => Ok(-self.factor(ring)?),
            _ => Err(Error::Syntax {
                line: t.line,
                col: t.col,
                msg: format!("expected expression, found {}", t.describe()),
            }),
        }
    }
}

/// Parse a complete polynomial expression.
pub fn parse_poly(ring: &Ring, text: &str) -> Result<Poly> {
    let toks = tokenize(text)?;
    let mut cur = Cursor::new(&toks);
    let p = cur.expr(ring)?;
    if !cur.at_eof() {
        return Err(cur.error(format!("unexpected {}", cur.peek().describe())));
    }
    Ok(p)
}

/// Parse `a` or `a/b` into a rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (text.trim().parse::<BigInt>().ok()?, BigInt::from(1)),
    };
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}
