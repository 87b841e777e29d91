//! Polynomial strings with exact rational coefficients.
//!
//! ```text
//! expr    := sign? term (('+' | '-') term)*
//! term    := power ('*' power)*
//! power   := primary ('^' integer)?
//! primary := integer ('/' integer)? | variable | '(' expr ')'
//! ```
//!
//! `−` (U+2212) is accepted as a minus sign. Floating-point literals are
//! rejected. Errors carry the 1-based line and column of the offending
//! character.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::qlinalg::{MPoly, Poly, Rational};

pub fn parse_mpoly(src: &str, vars: &[&str]) -> Result<MPoly> {
    let mut p = Parser::new(src, vars);
    p.skip_ws();
    let out = p.expr()?;
    p.skip_ws();
    if let Some(c) = p.peek() {
        return Err(p.error(format!("unexpected `{c}`")));
    }
    Ok(out)
}

/// Parses a polynomial in the single variable `var`.
pub fn parse_poly(src: &str, var: &str) -> Result<Poly> {
    Ok(parse_mpoly(src, &[var])?
        .to_univariate(0)
        .expect("one-variable polynomial"))
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    vars: &'a [&'a str],
}

impl<'a> Parser<'a> {
    fn new(src: &str, vars: &'a [&'a str]) -> Self {
        Parser {
            chars: src.chars().collect(),
            pos: 0,
            vars,
        }
    }

    fn nvars(&self) -> usize {
        self.vars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn position(&self) -> (usize, usize) {
        let mut line = 1;
        let mut col = 1;
        for &c in &self.chars[..self.pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        (line, col)
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        let (line, col) = self.position();
        Error::parse(line, col, msg)
    }

    fn sign(&mut self) -> Option<bool> {
        match self.peek() {
            Some('+') => {
                self.pos += 1;
                Some(true)
            }
            Some('-') | Some('\u{2212}') => {
                self.pos += 1;
                Some(false)
            }
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<MPoly> {
        let negate = self.sign() == Some(false);
        self.skip_ws();
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            self.skip_ws();
            match self.sign() {
                Some(plus) => {
                    self.skip_ws();
                    let t = self.term()?;
                    acc = if plus { &acc + &t } else { &acc - &t };
                }
                None => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.power()?;
        loop {
            self.skip_ws();
            if self.peek() == Some('*') {
                self.pos += 1;
                self.skip_ws();
                let f = self.power()?;
                acc = &acc * &f;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<MPoly> {
        let base = self.primary()?;
        self.skip_ws();
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<MPoly> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let save = self.pos;
                self.skip_ws();
                if self.peek() == Some('/') {
                    self.pos += 1;
                    self.skip_ws();
                    let d = self.integer()?;
                    if d.is_zero() {
                        return Err(self.error("zero denominator"));
                    }
                    return Ok(MPoly::constant(self.nvars(), Rational::new(n, d)));
                }
                self.pos = save;
                Ok(MPoly::constant(self.nvars(), Rational::from_integer(n)))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self
                    .peek()
                    .is_some_and(|c| c.is_alphanumeric() || c == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(MPoly::var(self.nvars(), i)),
                    None => {
                        self.pos = start;
                        Err(self.error(format!(
                            "unknown variable `{name}` (expected one of {})",
                            self.vars.join(", ")
                        )))
                    }
                }
            }
            Some('(') => {
                self.pos += 1;
                self.skip_ws();
                let inner = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        if matches!(self.peek(), Some('.') | Some('e') | Some('E')) {
            return Err(self.error("floating-point literals are not accepted; write p/q"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        Ok(digits.parse().expect("ascii digits"))
    }
}
