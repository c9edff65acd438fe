//! Text syntax for polynomials:
//!
//! ```text
//! poly   := term ('+' term)*
//! term   := factor ('*' factor)*
//! factor := ident ('^' integer)? | '1'
//! ```
//!
//! Integers may carry a leading `-`. Whitespace between tokens is ignored.
//! The whole input `0` denotes the zero polynomial.

use thiserror::Error;

use super::{ExponentVector, LaurentPoly, VariableList};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable `{name}` at byte {position}")]
    UnknownVariable { name: String, position: usize },
    #[error("exponent overflow at byte {position}")]
    Overflow { position: usize },
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a VariableList,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            position: self.pos,
            message: message.into(),
        })
    }

    fn poly(&mut self) -> Result<Vec<ExponentVector>, ParseError> {
        let mut terms = vec![self.term()?];
        while self.peek() == Some(b'+') {
            self.pos += 1;
            terms.push(self.term()?);
        }
        match self.peek() {
            None => Ok(terms),
            Some(c) => self.syntax(format!("unexpected `{}`", c as char)),
        }
    }

    fn term(&mut self) -> Result<ExponentVector, ParseError> {
        let mut exps = vec![0i64; self.vars.len()];
        self.factor(&mut exps)?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            self.factor(&mut exps)?;
        }
        Ok(ExponentVector::new(exps))
    }

    fn factor(&mut self, exps: &mut [i64]) -> Result<(), ParseError> {
        match self.peek() {
            Some(b'1') => {
                self.pos += 1;
                if matches!(self.src.get(self.pos), Some(c) if c.is_ascii_alphanumeric()) {
                    return self.syntax("constant factor must be exactly `1`");
                }
                Ok(())
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                // identifier bytes are ASCII, so this slice is valid UTF-8
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default();
                let index =
                    self.vars
                        .index_of(name)
                        .ok_or_else(|| ParseError::UnknownVariable {
                            name: name.to_string(),
                            position: start,
                        })?;
                let power = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.integer()?
                } else {
                    1
                };
                exps[index] = exps[index]
                    .checked_add(power)
                    .ok_or(ParseError::Overflow { position: start })?;
                Ok(())
            }
            Some(c) => self.syntax(format!("expected variable or `1`, found `{}`", c as char)),
            None => self.syntax("unexpected end of input"),
        }
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        let negative = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.syntax("expected integer exponent");
        }
        let mut value: i64 = 0;
        for &d in &self.src[start..self.pos] {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(i64::from(d - b'0')))
                .ok_or(ParseError::Overflow { position: start })?;
        }
        Ok(if negative { -value } else { value })
    }
}

/// Parses `text` over `vars` and cancels repeated terms in pairs.
pub fn parse_poly(text: &str, vars: &VariableList) -> Result<LaurentPoly, ParseError> {
    if text.trim() == "0" {
        return Ok(LaurentPoly::zero(vars));
    }
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars,
    };
    let terms = parser.poly()?;
    Ok(LaurentPoly::from_terms(vars, terms).expect("terms built with the list's arity"))
}
