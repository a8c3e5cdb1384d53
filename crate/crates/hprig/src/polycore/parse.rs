//! Text input for polynomials and rational literals.
//!
//! Two forms are accepted: a monomial-sum expression in one variable
//! (`x^3+0.9x^2-5.2x+3.3`) and a bracketed descending coefficient list
//! (`[1, 0, -1]`). Coefficient literals are integers, fractions `p/q`, or
//! finite decimals; decimals convert exactly (`0.9` is `9/10`). Whitespace is
//! insignificant. Errors carry the byte position of the offending character.

use super::{Poly, Rat};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

// Degrees beyond this are almost certainly a typo in the exponent, and dense
// storage would allocate that many coefficients.
const MAX_DEGREE: usize = 100_000;

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Cursor<'a> {
        Cursor {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek()?;
        self.pos += 1;
        Some(b)
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn digits(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            None
        } else {
            Some(String::from_utf8_lossy(&self.bytes[start..self.pos]).into_owned())
        }
    }

    /// Unsigned rational literal: digits, optionally followed by `/digits`
    /// (fraction) or `.digits` (exact decimal).
    fn unsigned_rat(&mut self) -> Result<Rat> {
        let int_part = match self.digits() {
            Some(d) => d,
            None => return self.err("expected a number"),
        };
        let numer: BigInt = int_part.parse().expect("digits parse as integer");
        if self.eat(b'/') {
            let denom_digits = match self.digits() {
                Some(d) => d,
                None => return self.err("expected denominator digits after '/'"),
            };
            let denom: BigInt = denom_digits.parse().expect("digits parse as integer");
            if denom.is_zero() {
                return self.err("zero denominator");
            }
            return Ok(Rat::new(numer, denom));
        }
        if self.pos < self.bytes.len() && self.bytes[self.pos] == b'.' {
            self.pos += 1;
            let frac_digits = match self.digits() {
                Some(d) => d,
                None => return self.err("expected digits after decimal point"),
            };
            let scale = BigInt::from(10u32).pow(frac_digits.len() as u32);
            let frac: BigInt = frac_digits.parse().expect("digits parse as integer");
            return Ok(Rat::new(numer * &scale + frac, scale));
        }
        Ok(Rat::from_integer(numer))
    }

    /// Signed rational literal.
    fn signed_rat(&mut self) -> Result<Rat> {
        let negative = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let r = self.unsigned_rat()?;
        Ok(if negative { -r } else { r })
    }

    fn uint(&mut self) -> Result<usize> {
        match self.digits() {
            Some(d) => d
                .parse::<usize>()
                .ok()
                .filter(|&n| n <= MAX_DEGREE)
                .map_or_else(|| self.err("exponent too large"), Ok),
            None => self.err("expected an exponent"),
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

/// Parse a standalone rational literal (used for coefficient lists and
/// moduli inputs).
pub fn parse_rat(text: &str) -> Result<Rat> {
    let mut cur = Cursor::new(text);
    if cur.at_end() {
        return Err(Error::EmptyInput);
    }
    let r = cur.signed_rat()?;
    if !cur.at_end() {
        return cur.err("trailing input after number");
    }
    Ok(r)
}

pub(super) fn poly(text: &str) -> Result<Poly> {
    let mut cur = Cursor::new(text);
    if cur.at_end() {
        return Err(Error::EmptyInput);
    }
    if cur.peek() == Some(b'[') {
        coeff_list(&mut cur)
    } else {
        expression(&mut cur)
    }
}

fn coeff_list(cur: &mut Cursor) -> Result<Poly> {
    cur.eat(b'[');
    let mut coeffs = vec![cur.signed_rat()?];
    while cur.eat(b',') {
        coeffs.push(cur.signed_rat()?);
    }
    if !cur.eat(b']') {
        return cur.err("expected ',' or ']'");
    }
    if !cur.at_end() {
        return cur.err("trailing input after ']'");
    }
    if coeffs[0].is_zero() {
        return Err(Error::ZeroLeadingCoefficient);
    }
    Poly::new(coeffs)
}

fn expression(cur: &mut Cursor) -> Result<Poly> {
    // powers[k] accumulates the coefficient of x^k
    let mut powers: Vec<Rat> = Vec::new();
    let mut first = true;
    loop {
        let negative = if cur.eat(b'-') {
            true
        } else if cur.eat(b'+') || first {
            false
        } else if cur.at_end() {
            break;
        } else {
            return cur.err("expected '+' or '-' between terms");
        };
        first = false;
        let (mut coeff, power) = term(cur)?;
        if negative {
            coeff = -coeff;
        }
        if power >= powers.len() {
            powers.resize(power + 1, Rat::zero());
        }
        powers[power] += coeff;
        if cur.at_end() {
            break;
        }
    }
    // Degree is the highest power with a nonzero total coefficient; written
    // terms may cancel.
    while powers.len() > 1 && powers.last().is_some_and(Zero::is_zero) {
        powers.pop();
    }
    if powers.iter().all(Zero::is_zero) {
        return Err(Error::ZeroLeadingCoefficient);
    }
    powers.reverse();
    Poly::new(powers)
}

/// One term: `coeff`, `x`, `x^k`, `coeff x`, or `coeff x^k`.
fn term(cur: &mut Cursor) -> Result<(Rat, usize)> {
    let coeff = match cur.peek() {
        Some(b) if b.is_ascii_digit() => Some(cur.unsigned_rat()?),
        _ => None,
    };
    let power = match cur.peek() {
        Some(b'x') => {
            cur.bump();
            if cur.eat(b'^') {
                cur.uint()?
            } else {
                1
            }
        }
        Some(c) if coeff.is_none() => {
            return cur.err(format!("unknown symbol {:?}", char::from(c)));
        }
        _ => 0,
    };
    Ok((coeff.unwrap_or_else(Rat::one), power))
}
