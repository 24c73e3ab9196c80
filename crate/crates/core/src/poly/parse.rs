//! Text grammar for polynomials and ring headers.
//!
//! Identifiers are `[A-Za-z][A-Za-z0-9_]*`, literals are integers or `p/q`,
//! operators are `+ - * ^` with parentheses. Juxtaposition is not
//! multiplication and whitespace is insignificant.

use std::sync::Arc;

use num::{BigInt, BigRational, Zero};

use crate::error::{Error, Result};

use super::polynomial::Polynomial;
use super::ring::{Field, PolyRing, TermOrder};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub line: usize,
    pub column: usize,
}

pub fn tokenize(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut col = 1;
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        let simple = match c {
            '+' => Some(TokenKind::Plus),
            '-' => Some(TokenKind::Minus),
            '*' => Some(TokenKind::Star),
            '^' => Some(TokenKind::Caret),
            '/' => Some(TokenKind::Slash),
            '(' => Some(TokenKind::LParen),
            ')' => Some(TokenKind::RParen),
            '[' => Some(TokenKind::LBracket),
            ']' => Some(TokenKind::RBracket),
            '{' => Some(TokenKind::LBrace),
            '}' => Some(TokenKind::RBrace),
            ',' => Some(TokenKind::Comma),
            ';' => Some(TokenKind::Semi),
            '=' => Some(TokenKind::Eq),
            _ => None,
        };
        if let Some(kind) = simple {
            out.push(Token {
                kind,
                line: tl,
                column: tc,
            });
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token {
                kind: TokenKind::Int(s.parse().expect("digits")),
                line: tl,
                column: tc,
            });
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token {
                kind: TokenKind::Ident(s),
                line: tl,
                column: tc,
            });
            continue;
        }
        return Err(Error::Parse {
            line: tl,
            column: tc,
            message: format!("unexpected character `{c}`"),
        });
    }
    Ok(out)
}

/// Cursor over a token stream.
pub struct TokenStream<'a> {
    tokens: &'a [Token],
    pos: usize,
    end: (usize, usize),
}

impl<'a> TokenStream<'a> {
    pub fn new(tokens: &'a [Token]) -> Self {
        let end = tokens.last().map(|t| (t.line, t.column + 1)).unwrap_or((1, 1));
        TokenStream { tokens, pos: 0, end }
    }

    pub fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos)
    }

    pub fn advance(&mut self) -> Option<&'a Token> {
        let t = self.tokens.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    pub fn error_here(&self, message: impl Into<String>) -> Error {
        let (line, column) = self
            .peek()
            .map(|t| (t.line, t.column))
            .unwrap_or(self.end);
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    pub fn expect(&mut self, kind: &TokenKind, what: &str) -> Result<&'a Token> {
        match self.peek() {
            Some(t) if &t.kind == kind => Ok(self.advance().unwrap()),
            _ => Err(self.error_here(format!("expected {what}"))),
        }
    }

    pub fn expect_ident(&mut self, what: &str) -> Result<(String, &'a Token)> {
        match self.peek() {
            Some(t) => match &t.kind {
                TokenKind::Ident(s) => {
                    self.advance();
                    Ok((s.clone(), t))
                }
                _ => Err(self.error_here(format!("expected {what}"))),
            },
            None => Err(self.error_here(format!("expected {what}"))),
        }
    }

    pub fn expect_keyword(&mut self, kw: &str) -> Result<()> {
        match self.peek() {
            Some(Token {
                kind: TokenKind::Ident(s),
                ..
            }) if s == kw => {
                self.advance();
                Ok(())
            }
            _ => Err(self.error_here(format!("expected `{kw}`"))),
        }
    }

    pub fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.peek().map(|t| &t.kind == kind).unwrap_or(false) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    /// Signed integer literal.
    pub fn expect_int(&mut self) -> Result<i64> {
        let neg = self.eat(&TokenKind::Minus);
        match self.peek() {
            Some(Token {
                kind: TokenKind::Int(v),
                ..
            }) => {
                let v: i64 = v
                    .try_into()
                    .map_err(|_| self.error_here("integer out of range"))?;
                self.advance();
                Ok(if neg { -v } else { v })
            }
            _ => Err(self.error_here("expected integer")),
        }
    }

    /// Parses one polynomial expression over `ring`.
    pub fn parse_expr(&mut self, ring: &Arc<PolyRing>) -> Result<Polynomial> {
        let mut acc = match self.peek().map(|t| &t.kind) {
            Some(TokenKind::Minus) => {
                self.advance();
                -self.parse_term(ring)?
            }
            Some(TokenKind::Plus) => {
                self.advance();
                self.parse_term(ring)?
            }
            _ => self.parse_term(ring)?,
        };
        loop {
            match self.peek().map(|t| &t.kind) {
                Some(TokenKind::Plus) => {
                    self.advance();
                    acc = &acc + &self.parse_term(ring)?;
                }
                Some(TokenKind::Minus) => {
                    self.advance();
                    acc = &acc - &self.parse_term(ring)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_term(&mut self, ring: &Arc<PolyRing>) -> Result<Polynomial> {
        let mut acc = self.parse_factor(ring)?;
        while self.eat(&TokenKind::Star) {
            acc = &acc * &self.parse_factor(ring)?;
        }
        if let Some(t) = self.peek() {
            if matches!(
                t.kind,
                TokenKind::Ident(_) | TokenKind::Int(_) | TokenKind::LParen
            ) {
                return Err(self.error_here("juxtaposition is not multiplication; use `*`"));
            }
        }
        Ok(acc)
    }

    fn parse_factor(&mut self, ring: &Arc<PolyRing>) -> Result<Polynomial> {
        let base = self.parse_base(ring)?;
        if self.eat(&TokenKind::Caret) {
            match self.peek() {
                Some(Token {
                    kind: TokenKind::Int(v),
                    ..
                }) => {
                    let e: u32 = v
                        .try_into()
                        .map_err(|_| self.error_here("exponent out of range"))?;
                    self.advance();
                    Ok(base.pow(e))
                }
                _ => Err(self.error_here("expected non-negative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn parse_base(&mut self, ring: &Arc<PolyRing>) -> Result<Polynomial> {
        let Some(t) = self.peek() else {
            return Err(self.error_here("unexpected end of input"));
        };
        match &t.kind {
            TokenKind::Int(n) => {
                self.advance();
                let mut value = BigRational::from_integer(n.clone());
                if self.eat(&TokenKind::Slash) {
                    match self.peek() {
                        Some(Token {
                            kind: TokenKind::Int(d),
                            ..
                        }) => {
                            if d.is_zero() {
                                return Err(self.error_here("zero denominator"));
                            }
                            value = BigRational::new(n.clone(), d.clone());
                            self.advance();
                        }
                        _ => return Err(self.error_here("expected denominator")),
                    }
                }
                Ok(Polynomial::constant(ring, value))
            }
            TokenKind::Ident(name) => {
                self.advance();
                match ring.var_index(name) {
                    Some(i) => Ok(Polynomial::var(ring, i)),
                    None => Err(Error::Parse {
                        line: t.line,
                        column: t.column,
                        message: format!("unknown variable `{name}`"),
                    }),
                }
            }
            TokenKind::LParen => {
                self.advance();
                let p = self.parse_expr(ring)?;
                self.expect(&TokenKind::RParen, "`)`")?;
                Ok(p)
            }
            _ => Err(self.error_here("expected number, variable or `(`")),
        }
    }
}

/// Parses a complete polynomial expression.
pub fn parse_polynomial(ring: &Arc<PolyRing>, src: &str) -> Result<Polynomial> {
    let tokens = tokenize(src)?;
    let mut ts = TokenStream::new(&tokens);
    let p = ts.parse_expr(ring)?;
    if !ts.at_end() {
        return Err(ts.error_here("trailing input"));
    }
    Ok(p)
}

/// Parses `ring <name> = QQ[<v1>,...,<vk>] order grevlex;` from the stream.
pub fn parse_ring_header(ts: &mut TokenStream<'_>) -> Result<Arc<PolyRing>> {
    ts.expect_keyword("ring")?;
    let (name, _) = ts.expect_ident("ring name")?;
    ts.expect(&TokenKind::Eq, "`=`")?;
    let (field, _) = ts.expect_ident("coefficient field")?;
    if field != "QQ" {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: format!("unsupported coefficient field `{field}`; only QQ is accepted"),
        });
    }
    ts.expect(&TokenKind::LBracket, "`[`")?;
    let mut vars = Vec::new();
    loop {
        let (v, tok) = ts.expect_ident("variable name")?;
        if vars.contains(&v) {
            return Err(Error::Parse {
                line: tok.line,
                column: tok.column,
                message: format!("duplicate variable `{v}`"),
            });
        }
        vars.push(v);
        if ts.eat(&TokenKind::Comma) {
            continue;
        }
        ts.expect(&TokenKind::RBracket, "`,` or `]`")?;
        break;
    }
    ts.expect_keyword("order")?;
    let (order, _) = ts.expect_ident("term order")?;
    if order != "grevlex" {
        return Err(ts.error_here(format!("unsupported term order `{order}`")));
    }
    ts.expect(&TokenKind::Semi, "`;`")?;
    let weights = vec![1; vars.len()];
    PolyRing::with_options(&name, vars, weights, TermOrder::GrevLex, Field::Rationals, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Arc<PolyRing> {
        PolyRing::new("R", &["x", "y", "z"]).unwrap()
    }

    #[test]
    fn parses_and_prints_canonically() {
        let r = ring();
        let p = parse_polynomial(&r, " (x + 1/2*y)^2 - 3*z ").unwrap();
        assert_eq!(p.to_string(), "x^2 + x*y + 1/4*y^2 - 3*z");
        assert_eq!(parse_polynomial(&r, &p.to_string()).unwrap(), p);
    }

    #[test]
    fn rejects_juxtaposition() {
        let r = ring();
        let e = parse_polynomial(&r, "2x").unwrap_err();
        assert!(matches!(e, Error::Parse { column: 2, .. }), "{e:?}");
        assert!(parse_polynomial(&r, "x y").is_err());
    }

    #[test]
    fn reports_unknown_variable() {
        let r = ring();
        match parse_polynomial(&r, "x + w").unwrap_err() {
            Error::Parse { message, column, .. } => {
                assert!(message.contains('w'));
                assert_eq!(column, 5);
            }
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn ring_header() {
        let toks = tokenize("ring R = QQ[x,y,z] order grevlex;").unwrap();
        let mut ts = TokenStream::new(&toks);
        let r = parse_ring_header(&mut ts).unwrap();
        assert_eq!(r.vars(), &["x", "y", "z"]);
        assert_eq!(r.to_string(), "ring R = QQ[x,y,z] order grevlex;");
    }
}
