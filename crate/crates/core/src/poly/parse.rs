//! The polynomial text grammar:
//!
//! ```text
//! poly   := ["-" | "+"] term (("+" | "-") term)*
//! term   := factor ("*" factor)*
//! factor := INT | "w" ["^" INT] | "X" INDEX ["^" INT]
//! ```
//!
//! Whitespace is insignificant. Integer literals may be arbitrarily long;
//! they are reduced modulo p^N only when a context is attached.

use crate::error::{Error, Result};
use crate::padic::{PAdicContext, PAdicElement};
use crate::poly::MPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedTerm {
    pub negative: bool,
    /// decimal literals multiplied together
    pub integers: Vec<String>,
    pub w_exponent: u32,
    pub exponents: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedPoly {
    pub nvars: usize,
    pub terms: Vec<ParsedTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Plus,
    Minus,
    Star,
    Caret,
    Int(String),
    W,
    Var(String),
}

fn err(position: usize, message: impl Into<String>) -> Error {
    Error::Parse { position, message: message.into() }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let digits = |mut j: usize| {
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            j
        };
        let tok = match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'+' => Token::Plus,
            b'-' => Token::Minus,
            b'*' => Token::Star,
            b'^' => Token::Caret,
            b'w' => Token::W,
            b'0'..=b'9' => {
                i = digits(i);
                out.push((start, Token::Int(text[start..i].to_string())));
                continue;
            }
            b'X' => {
                i = digits(i + 1);
                if i == start + 1 {
                    return Err(err(start, "X must be followed by a variable index"));
                }
                out.push((start, Token::Var(text[start + 1..i].to_string())));
                continue;
            }
            _ => return Err(err(start, format!("unexpected character {:?}", c as char))),
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
    nvars: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn small_int(&mut self, what: &str) -> Result<u32> {
        let at = self.offset();
        match self.tokens.get(self.pos) {
            Some((_, Token::Int(s))) => {
                let v = s.parse().map_err(|_| err(at, format!("{what} {s} is too large")))?;
                self.pos += 1;
                Ok(v)
            }
            _ => Err(err(at, format!("expected {what}"))),
        }
    }

    fn optional_exponent(&mut self) -> Result<u32> {
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            self.small_int("exponent")
        } else {
            Ok(1)
        }
    }

    fn term(&mut self, negative: bool) -> Result<ParsedTerm> {
        let mut term = ParsedTerm { negative, integers: Vec::new(), w_exponent: 0, exponents: vec![0; self.nvars] };
        loop {
            let at = self.offset();
            match self.tokens.get(self.pos).cloned() {
                Some((_, Token::Int(s))) => {
                    self.pos += 1;
                    term.integers.push(s);
                }
                Some((_, Token::W)) => {
                    self.pos += 1;
                    term.w_exponent += self.optional_exponent()?;
                }
                Some((_, Token::Var(idx))) => {
                    self.pos += 1;
                    let i: usize = idx.parse().map_err(|_| err(at, "variable index too large"))?;
                    if i >= self.nvars {
                        return Err(err(at, format!("variable X{i} out of range for dimension {}", self.nvars)));
                    }
                    term.exponents[i] += self.optional_exponent()?;
                }
                _ => return Err(err(at, "expected a number, w, or a variable")),
            }
            if self.peek() == Some(&Token::Star) {
                self.pos += 1;
            } else {
                return Ok(term);
            }
        }
    }
}

/// Parse a polynomial in `nvars` variables X0..X{nvars-1}.
pub fn parse_poly(text: &str, nvars: usize) -> Result<ParsedPoly> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(err(0, "empty polynomial"));
    }
    let mut parser = Parser { tokens, pos: 0, end: text.len(), nvars };
    let mut terms = Vec::new();
    let mut negative = match parser.peek() {
        Some(Token::Minus) => {
            parser.pos += 1;
            true
        }
        Some(Token::Plus) => {
            parser.pos += 1;
            false
        }
        _ => false,
    };
    loop {
        terms.push(parser.term(negative)?);
        match parser.peek() {
            None => break,
            Some(Token::Plus) => negative = false,
            Some(Token::Minus) => negative = true,
            Some(_) => return Err(err(parser.offset(), "expected + or -")),
        }
        parser.pos += 1;
    }
    Ok(ParsedPoly { nvars, terms })
}

fn decimal_mod(s: &str, m: u64) -> u64 {
    s.bytes().fold(0u128, |acc, b| (acc * 10 + (b - b'0') as u128) % m as u128) as u64
}

impl ParsedTerm {
    fn coefficient(&self, ctx: &PAdicContext) -> Result<PAdicElement> {
        let m = ctx.modulus_power();
        let mut c = ctx.one();
        for s in &self.integers {
            // decimal_mod < p^N < 2^63
            c = &c * &ctx.from_int(decimal_mod(s, m) as i64);
        }
        if self.w_exponent > 0 {
            if ctx.degree() == 1 {
                return Err(Error::GeneratorInPrimeField);
            }
            c = &c * &ctx.generator().pow(self.w_exponent as u64);
        }
        Ok(if self.negative { -&c } else { c })
    }
}

impl ParsedPoly {
    pub fn to_padic(&self, ctx: &PAdicContext) -> Result<MPoly<PAdicElement>> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            terms.push((t.exponents.clone(), t.coefficient(ctx)?));
        }
        Ok(MPoly::from_terms(self.nvars, terms))
    }

    /// Whether any term uses the extension generator.
    pub fn uses_generator(&self) -> bool {
        self.terms.iter().any(|t| t.w_exponent > 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_spec_style_inputs() {
        let p = parse_poly("X0^3 + 3*X0*X1", 2).unwrap();
        assert_eq!(p.terms.len(), 2);
        assert_eq!(p.terms[1].exponents, vec![1, 1]);
        assert_eq!(p.terms[1].integers, vec!["3".to_string()]);
        let q = parse_poly("  w * X0 ^ 2 ", 1).unwrap();
        assert_eq!(q.terms[0].w_exponent, 1);
        assert_eq!(q.terms[0].exponents, vec![2]);
        let r = parse_poly("-X0 - 2", 1).unwrap();
        assert!(r.terms.iter().all(|t| t.negative));
    }

    #[test]
    fn rejects_malformed_inputs() {
        for (text, nvars) in
            [("", 1), ("X", 1), ("X2", 2), ("X0 +", 1), ("X0 X1", 2), ("X0^", 1), ("3 % X0", 1), ("X0^-1", 1)]
        {
            assert!(matches!(parse_poly(text, nvars), Err(Error::Parse { .. })), "{text:?}");
        }
    }

    #[test]
    fn long_literals_reduce_modulo_p_power() {
        let ctx = PAdicContext::new(2, 1, 8).unwrap();
        let f = parse_poly("123456789012345678901234567890", 1).unwrap().to_padic(&ctx).unwrap();
        // 123456789012345678901234567890 mod 256 = 210
        assert_eq!(f.coefficient(&[0]), Some(&ctx.from_int(210)));
    }

    #[test]
    fn generator_needs_an_extension() {
        let ctx = PAdicContext::new(2, 1, 8).unwrap();
        assert_eq!(parse_poly("w*X0", 1).unwrap().to_padic(&ctx).unwrap_err(), Error::GeneratorInPrimeField);
    }
}
