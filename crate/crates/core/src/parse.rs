//! ASCII polynomial syntax: variables from the ring header, `^` power, `*`
//! product, integer and `a/b` rational literals, optional `s` for the
//! adjoined square root. Whitespace insensitive.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::polyring::{Poly, Ring};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

struct Lexer {
    tokens: Vec<(Token, usize)>, // (token, 1-based column)
}

fn lex(line_no: usize, text: &str) -> Result<Lexer> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let col = i + 1;
        let c = chars[i];
        match c {
            ' ' | '\t' => {
                i += 1;
            }
            '+' => {
                tokens.push((Token::Plus, col));
                i += 1;
            }
            '-' => {
                tokens.push((Token::Minus, col));
                i += 1;
            }
            '*' => {
                tokens.push((Token::Star, col));
                i += 1;
            }
            '^' => {
                tokens.push((Token::Caret, col));
                i += 1;
            }
            '/' => {
                tokens.push((Token::Slash, col));
                i += 1;
            }
            '(' => {
                tokens.push((Token::LParen, col));
                i += 1;
            }
            ')' => {
                tokens.push((Token::RParen, col));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let lit: String = chars[start..i].iter().collect();
                let n = lit
                    .parse::<BigInt>()
                    .map_err(|_| Error::parse(line_no, col, "bad integer literal"))?;
                tokens.push((Token::Int(n), col));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || chars[i] == '_')
                {
                    i += 1;
                }
                tokens.push((Token::Ident(chars[start..i].iter().collect()), col));
            }
            other => {
                return Err(Error::parse(
                    line_no,
                    col,
                    format!("unexpected character '{}'", other),
                ));
            }
        }
    }
    Ok(Lexer { tokens })
}

struct Parser<'r, F: Field> {
    ring: &'r Ring<F>,
    tokens: Vec<(Token, usize)>,
    pos: usize,
    line: usize,
}

impl<'r, F: Field> Parser<'r, F> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|&(_, c)| c)
            .unwrap_or_else(|| self.tokens.last().map(|&(_, c)| c + 1).unwrap_or(1))
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.line, self.col(), msg)
    }

    fn expr(&mut self) -> Result<Poly<F>> {
        let mut negate = false;
        if self.peek() == Some(&Token::Minus) {
            self.bump();
            negate = true;
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.add(&t)?;
                }
                Some(Token::Minus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.sub(&t)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly<F>> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Token::Star) {
            self.bump();
            let f = self.factor()?;
            acc = acc.mul(&f)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly<F>> {
        let base = self.base()?;
        if self.peek() == Some(&Token::Caret) {
            self.bump();
            match self.bump() {
                Some(Token::Int(n)) => {
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| self.err("exponent out of range"))?;
                    return Ok(base.pow(e)?);
                }
                _ => return Err(self.err("expected an integer exponent after '^'")),
            }
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Poly<F>> {
        let start_col = self.col();
        match self.bump() {
            Some(Token::Int(num)) => {
                // optional rational literal a/b
                let mut den = BigInt::one();
                if self.peek() == Some(&Token::Slash) {
                    self.bump();
                    match self.bump() {
                        Some(Token::Int(d)) => den = d,
                        _ => return Err(self.err("expected a denominator after '/'")),
                    }
                }
                if den.is_zero() {
                    return Err(self.err("zero denominator"));
                }
                let r = BigRational::new(num, den);
                let c = self
                    .ring
                    .field()
                    .from_rational(&r)
                    .ok_or_else(|| self.err("literal denominator not invertible here"))?;
                Ok(self.ring.constant(c))
            }
            Some(Token::Ident(name)) => {
                if let Some(i) = self.ring.var_index(&name) {
                    Ok(self.ring.var(i))
                } else if name == "s" {
                    let c = self
                        .ring
                        .field()
                        .from_quad(&BigRational::from(BigInt::from(0)), &BigRational::one())
                        .ok_or_else(|| {
                            Error::parse(
                                self.line,
                                start_col,
                                "symbol 's' needs an adjoined square root in the field",
                            )
                        })?;
                    Ok(self.ring.constant(c))
                } else {
                    Err(Error::parse(
                        self.line,
                        start_col,
                        format!("unknown variable '{}'", name),
                    ))
                }
            }
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(self.err("expected ')'")),
                }
            }
            Some(Token::Minus) => {
                let inner = self.base()?;
                Ok(inner.neg())
            }
            other => Err(self.err(format!(
                "expected a term, found {}",
                match other {
                    Some(t) => format!("{:?}", t),
                    None => "end of input".to_string(),
                }
            ))),
        }
    }
}

/// Parse one polynomial. Errors carry line/column positions; `line_no` is
/// the 1-based line of `text` inside its enclosing file.
pub fn parse_poly_at<F: Field>(ring: &Ring<F>, text: &str, line_no: usize) -> Result<Poly<F>> {
    let lexer = lex(line_no, text)?;
    if lexer.tokens.is_empty() {
        return Err(Error::parse(line_no, 1, "empty polynomial"));
    }
    let mut p = Parser {
        ring,
        tokens: lexer.tokens,
        pos: 0,
        line: line_no,
    };
    let poly = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(p.err("trailing input after polynomial"));
    }
    Ok(poly)
}

pub fn parse_poly<F: Field>(ring: &Ring<F>, text: &str) -> Result<Poly<F>> {
    parse_poly_at(ring, text, 1)
}
