//! Text input for polynomials in `x`.
//!
//! ```text
//! poly     = [ sign ] term { sign term } ;
//! sign     = "+" | "-" ;
//! term     = coeff [ [ "*" ] monomial ] | monomial ;
//! coeff    = integer [ "/" integer ] ;
//! monomial = "x" [ "^" integer ] ;
//! integer  = digit { digit } ;
//! ```
//!
//! Whitespace is ignored everywhere and repeated powers are summed.

use num_bigint::BigInt;
use num_traits::Zero;
use splitrec_core::{PolyQ, Rat};

use crate::error::{CliError, CliResult};

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, what: &str) -> CliError {
        CliError::Parse(format!("{what} at position {} in {:?}", self.pos, self.src))
    }

    fn integer(&mut self) -> CliResult<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a digit"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn exponent(&mut self) -> CliResult<usize> {
        let e = self.integer()?;
        usize::try_from(e).ok().filter(|&e| e <= 1 << 16).ok_or_else(|| self.error("exponent too large"))
    }

    fn monomial(&mut self) -> CliResult<usize> {
        if !self.eat('x') {
            return Err(self.error("expected x"));
        }
        if self.eat('^') {
            self.exponent()
        } else {
            Ok(1)
        }
    }

    fn term(&mut self) -> CliResult<(Rat, usize)> {
        if self.peek() == Some('x') {
            return Ok((Rat::from_integer(1.into()), self.monomial()?));
        }
        let num = self.integer()?;
        let coeff = if self.eat('/') {
            let den = self.integer()?;
            if den.is_zero() {
                return Err(self.error("zero denominator"));
            }
            Rat::new(num, den)
        } else {
            Rat::from_integer(num)
        };
        if self.eat('*') {
            return Ok((coeff, self.monomial()?));
        }
        if self.peek() == Some('x') {
            return Ok((coeff, self.monomial()?));
        }
        Ok((coeff, 0))
    }
}

/// Parses the grammar above into a polynomial with rational coefficients.
pub fn parse_poly(src: &str) -> CliResult<PolyQ> {
    let chars: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).collect();
    let mut cur = Cursor { chars, pos: 0, src };
    if cur.peek().is_none() {
        return Err(CliError::Parse("empty polynomial".into()));
    }
    let mut coeffs: Vec<Rat> = Vec::new();
    let mut first = true;
    while cur.peek().is_some() {
        let negative = if cur.eat('-') {
            true
        } else if cur.eat('+') {
            false
        } else if first {
            false
        } else {
            return Err(cur.error("expected + or -"));
        };
        first = false;
        let (c, k) = cur.term()?;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, Rat::zero());
        }
        if negative {
            coeffs[k] -= c;
        } else {
            coeffs[k] += c;
        }
    }
    Ok(PolyQ::from_coeffs(coeffs))
}
