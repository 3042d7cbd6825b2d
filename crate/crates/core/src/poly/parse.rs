use num_bigint::BigInt;

use super::{Exponent, Polynomial, Ring};
use crate::error::{Error, Result};

/// Parses `term (('+'|'-') term)*` where a term is
/// `coeff? ('*'? var ('^' nat)?)*` and `coeff` is `int` or `int/int`.
/// Variables are matched greedily against the ring's names, so `x1x2`
/// reads as `x1*x2`. Errors report line 1 and a 1-based column.
pub fn parse_polynomial(ring: &Ring, text: &str) -> Result<Polynomial> {
    Parser {
        ring,
        src: text.as_bytes(),
        text,
        pos: 0,
    }
    .polynomial()
}

struct Parser<'a> {
    ring: &'a Ring,
    src: &'a [u8],
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        let column = self.text[..self.pos.min(self.text.len())].chars().count() + 1;
        Error::parse(1, column, msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn polynomial(mut self) -> Result<Polynomial> {
        let mut terms = Vec::new();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            None => return Err(self.err("empty polynomial")),
            _ => 1,
        };
        loop {
            let (c, e) = self.term(sign)?;
            terms.push((c, e));
            match self.peek() {
                None => break,
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                Some(ch) => return Err(self.err(format!("unexpected character {:?}", ch as char))),
            }
            self.pos += 1;
        }
        Polynomial::from_terms(self.ring, terms)
    }

    fn number(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.text[start..self.pos].parse().expect("digits"))
    }

    fn term(&mut self, sign: i64) -> Result<(super::Coefficient, Exponent)> {
        let field = self.ring.field();
        let mut num = BigInt::from(sign);
        let mut den = BigInt::from(1);
        let mut seen = false;
        if let Some(n) = self.number() {
            num *= n;
            seen = true;
            if self.peek() == Some(b'/') {
                self.pos += 1;
                den = self.number().ok_or_else(|| self.err("expected denominator"))?;
            }
        }
        let mut exp = vec![0u32; self.ring.nvars()];
        loop {
            let save = self.pos;
            let star = self.peek() == Some(b'*');
            if star {
                self.pos += 1;
            }
            match self.variable() {
                Some(i) => {
                    let mut k = 1u32;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        let n = self.number().ok_or_else(|| self.err("expected exponent"))?;
                        k = u32::try_from(n).map_err(|_| self.err("exponent too large"))?;
                    }
                    exp[i] += k;
                    seen = true;
                }
                None if star => return Err(self.err("expected variable after '*'")),
                None => {
                    self.pos = save;
                    break;
                }
            }
        }
        if !seen {
            return Err(self.err("expected coefficient or variable"));
        }
        let c = field
            .from_fraction(&num, &den)
            .map_err(|_| self.err("denominator vanishes in the field"))?;
        Ok((c, Exponent::new(exp)))
    }

    fn variable(&mut self) -> Option<usize> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let best = self
            .ring
            .vars()
            .iter()
            .enumerate()
            .filter(|(_, v)| rest.starts_with(v.as_str()))
            .max_by_key(|(_, v)| v.len())?;
        self.pos += best.1.len();
        Some(best.0)
    }
}
