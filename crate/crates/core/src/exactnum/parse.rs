//! Text grammar for scalars:
//!
//! ```text
//! scalar := rat | rat sign rat "s3" | rat "s3"
//! rat    := ["-"] int ["/" posint]
//! sign   := "+" | "-"
//! ```

use std::fmt;

use num::{BigInt, Zero};

use super::{Qs3, Rat};

/// A malformed scalar, with the 0-based byte column where parsing stopped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    fn at(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }

    /// Shifts the reported column, for scalars embedded in larger text.
    pub fn offset(mut self, by: usize) -> Self {
        self.position += by;
        self
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<BigInt, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.unexpected("expected digits"));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digit run parses"))
    }

    fn unexpected(&self, what: &str) -> ParseError {
        match self.peek() {
            Some(b'.') => ParseError::at(
                self.pos,
                "decimal notation is not accepted; write exact rationals such as 3/10",
            ),
            Some(c) => ParseError::at(self.pos, format!("{what}, found '{}'", c as char)),
            None => ParseError::at(self.pos, format!("{what}, found end of input")),
        }
    }

    fn rat(&mut self) -> Result<Rat, ParseError> {
        let negative = self.eat(b'-');
        let mut numer = self.digits()?;
        if negative {
            numer = -numer;
        }
        if self.eat(b'/') {
            let denom_pos = self.pos;
            let denom = self.digits()?;
            if denom.is_zero() {
                return Err(ParseError::at(denom_pos, "zero denominator"));
            }
            Ok(Rat::new(numer, denom))
        } else {
            Ok(Rat::from_integer(numer))
        }
    }

    fn s3(&mut self) -> Result<(), ParseError> {
        if self.eat(b's') && self.eat(b'3') {
            Ok(())
        } else {
            Err(self.unexpected("expected 's3'"))
        }
    }
}

/// Parses a single rational in the `rat` production.
pub fn parse_rat(text: &str) -> Result<Rat, ParseError> {
    let mut cur = Cursor {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let r = cur.rat()?;
    if cur.peek().is_some() {
        return Err(cur.unexpected("expected end of rational"));
    }
    Ok(r)
}

pub(crate) fn parse_scalar(text: &str) -> Result<Qs3, ParseError> {
    let mut cur = Cursor {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let first = cur.rat()?;
    match cur.peek() {
        None => Ok(Qs3::from_rat(first)),
        Some(b's') => {
            cur.s3()?;
            if cur.peek().is_some() {
                return Err(cur.unexpected("expected end of scalar"));
            }
            Ok(Qs3::new(Rat::zero(), first))
        }
        Some(sign @ (b'+' | b'-')) => {
            // '-' is both the infix sign and the rat's own sign; consume only '+'
            // and let rat() read a leading '-'.
            if sign == b'+' {
                cur.pos += 1;
            }
            let second = cur.rat()?;
            cur.s3()?;
            if cur.peek().is_some() {
                return Err(cur.unexpected("expected end of scalar"));
            }
            Ok(Qs3::new(first, second))
        }
        Some(_) => Err(cur.unexpected("expected '+', '-', 's3' or end of scalar")),
    }
}
