//! Exact rational univariate polynomials and coefficient-sign machinery.
//!
//! `Poly` stores coefficients descending from the leading one; the leading
//! coefficient is never zero and the zero polynomial is not representable.
//! Polynomials are not forced monic: the reversion and argument-negation
//! transforms produce non-monic results and that is fine. Sign patterns are
//! read from the leading coefficient down and always start with `+`;
//! extraction refuses a negative leading coefficient instead of silently
//! normalizing.

mod parse;

pub use parse::parse_rat;

use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

/// Exact rational scalar used for every coefficient and root bound.
pub type Rat = BigRational;

/// Convenience constructor for small rationals.
pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

/// Sign of a coefficient. `Zero` is only meaningful inside patterns that
/// admit zeros.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
    Zero,
}

impl Sign {
    pub fn of(value: &Rat) -> Sign {
        if value.is_zero() {
            Sign::Zero
        } else if value.is_positive() {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// `+` and `-` swap; `0` is fixed.
    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
            Sign::Zero => Sign::Zero,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
            Sign::Zero => '0',
        }
    }

    fn from_char(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Plus),
            // ASCII hyphen-minus and the typographic minus both parse.
            '-' | '\u{2212}' => Some(Sign::Minus),
            '0' => Some(Sign::Zero),
            _ => None,
        }
    }
}

/// A sequence of coefficient signs read from the leading coefficient.
///
/// With `allows_zero` unset this is a strict sign pattern (no zeros); with it
/// set, zeros may appear and sign changes/preservations are counted after
/// erasing them. The first sign is always `+`.
#[derive(Clone, Debug)]
pub struct SignPattern {
    signs: Vec<Sign>,
    allows_zero: bool,
}

impl PartialEq for SignPattern {
    /// Equality is by sign sequence; whether zeros were *permitted* is not
    /// part of the value.
    fn eq(&self, other: &Self) -> bool {
        self.signs == other.signs
    }
}

impl Eq for SignPattern {}

impl PartialOrd for SignPattern {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SignPattern {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.signs.cmp(&other.signs)
    }
}

impl std::hash::Hash for SignPattern {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.signs.hash(state);
    }
}

impl SignPattern {
    pub fn new(signs: Vec<Sign>, allows_zero: bool) -> Result<SignPattern> {
        if signs.is_empty() {
            return Err(Error::EmptyInput);
        }
        if signs[0] != Sign::Plus {
            return Err(Error::NegativeLeadingCoefficient);
        }
        if !allows_zero && signs.contains(&Sign::Zero) {
            return Err(Error::ZeroCoefficient);
        }
        Ok(SignPattern { signs, allows_zero })
    }

    /// Strict pattern: zeros rejected.
    pub fn strict(signs: Vec<Sign>) -> Result<SignPattern> {
        SignPattern::new(signs, false)
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        false // invariant: at least one sign
    }

    pub fn allows_zero(&self) -> bool {
        self.allows_zero
    }

    pub fn has_zero(&self) -> bool {
        self.signs.contains(&Sign::Zero)
    }

    /// Number of sign changes `c` and sign preservations `p`, with zeros
    /// erased first. For a strict pattern of length d+1, `c + p = d`.
    pub fn descartes_counts(&self) -> (usize, usize) {
        let mut changes = 0;
        let mut keeps = 0;
        let mut prev: Option<Sign> = None;
        for &s in &self.signs {
            if s == Sign::Zero {
                continue;
            }
            if let Some(p) = prev {
                if p == s {
                    keeps += 1;
                } else {
                    changes += 1;
                }
            }
            prev = Some(s);
        }
        (changes, keeps)
    }

    /// Lengths of the maximal runs of equal signs. Errors when the pattern
    /// contains zeros: run lengths are a strict-pattern notion.
    pub fn run_lengths(&self) -> Result<Vec<usize>> {
        if self.has_zero() {
            return Err(Error::SpazInput);
        }
        let mut runs = Vec::new();
        let mut current = 1usize;
        for pair in self.signs.windows(2) {
            if pair[0] == pair[1] {
                current += 1;
            } else {
                runs.push(current);
                current = 1;
            }
        }
        runs.push(current);
        Ok(runs)
    }
}

impl fmt::Display for SignPattern {
    /// Space-separated signs, e.g. `+ + - +`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.signs.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for SignPattern {
    type Err = Error;

    /// Accepts space- or comma-separated signs, with or without surrounding
    /// parentheses: `+ + - +` and `(+,+,-,+)` both parse. ASCII `-` and the
    /// typographic minus are interchangeable.
    fn from_str(text: &str) -> Result<SignPattern> {
        let mut signs = Vec::new();
        let mut allows_zero = false;
        for (pos, c) in text.chars().enumerate() {
            if c.is_whitespace() || c == ',' || c == '(' || c == ')' {
                continue;
            }
            match Sign::from_char(c) {
                Some(s) => {
                    if s == Sign::Zero {
                        allows_zero = true;
                    }
                    signs.push(s);
                }
                None => {
                    return Err(Error::Parse {
                        pos,
                        msg: format!("expected '+', '-' or '0', found {c:?}"),
                    })
                }
            }
        }
        SignPattern::new(signs, allows_zero)
    }
}

impl Serialize for SignPattern {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// A univariate polynomial over Q with nonzero leading coefficient,
/// coefficients stored descending from the leading one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    /// Coefficients descending from the leading one. The leading coefficient
    /// must be nonzero; degree 0 (a nonzero constant) is allowed.
    pub fn new(coeffs: Vec<Rat>) -> Result<Poly> {
        if coeffs.is_empty() {
            return Err(Error::EmptyInput);
        }
        if coeffs[0].is_zero() {
            return Err(Error::ZeroLeadingCoefficient);
        }
        Ok(Poly { coeffs })
    }

    pub fn from_coeffs_i64(coeffs: &[i64]) -> Result<Poly> {
        Poly::new(coeffs.iter().map(|&c| rat(c, 1)).collect())
    }

    /// The constant polynomial 1.
    pub fn one() -> Poly {
        Poly {
            coeffs: vec![Rat::one()],
        }
    }

    pub fn constant(c: Rat) -> Result<Poly> {
        Poly::new(vec![c])
    }

    /// The monic linear polynomial x - r.
    pub fn x_minus(r: &Rat) -> Poly {
        Poly {
            coeffs: vec![Rat::one(), -r.clone()],
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading(&self) -> &Rat {
        &self.coeffs[0]
    }

    pub fn constant_term(&self) -> &Rat {
        self.coeffs.last().expect("coeffs nonempty")
    }

    /// Coefficient of x^power (zero beyond the degree).
    pub fn coeff_at(&self, power: usize) -> Rat {
        if power > self.degree() {
            Rat::zero()
        } else {
            self.coeffs[self.degree() - power].clone()
        }
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in &self.coeffs {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_sign(&self, x: &Rat) -> Sign {
        Sign::of(&self.eval(x))
    }

    /// Exact coefficient convolution; degrees add.
    pub fn multiply(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len();
        let m = other.coeffs.len();
        let mut out = vec![Rat::zero(); n + m - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] += a * b;
            }
        }
        Poly { coeffs: out }
    }

    /// Scale by a nonzero constant.
    pub fn scaled(&self, c: &Rat) -> Result<Poly> {
        if c.is_zero() {
            return Err(Error::ZeroCoefficient);
        }
        Ok(Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        })
    }

    pub fn neg(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|a| -a.clone()).collect(),
        }
    }

    /// Multiplied by -1 when the leading coefficient is negative. Roots and
    /// moduli order are unchanged; this is the explicit normalization step
    /// required before sign-pattern extraction.
    pub fn with_positive_leading(&self) -> Poly {
        if self.leading().is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn monic(&self) -> Poly {
        let lead = self.leading().clone();
        Poly {
            coeffs: self.coeffs.iter().map(|a| a / &lead).collect(),
        }
    }

    /// (-1)^d * Q(-x): roots are negated, the leading coefficient keeps its
    /// sign. In descending storage this flips the sign of every odd-index
    /// coefficient.
    pub fn negate_arg(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() })
            .collect();
        Poly { coeffs }
    }

    /// x^d * Q(1/x): the coefficient sequence reversed, roots reciprocated.
    /// Requires a nonzero constant term so the degree does not drop.
    pub fn revert(&self) -> Result<Poly> {
        if self.constant_term().is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Ok(Poly { coeffs })
    }

    pub fn derivative(&self) -> Option<Poly> {
        let d = self.degree();
        if d == 0 {
            return None;
        }
        let coeffs = self
            .coeffs
            .iter()
            .take(d)
            .enumerate()
            .map(|(i, c)| c * Rat::from_integer(BigInt::from(d - i)))
            .collect();
        Some(Poly { coeffs })
    }

    /// True when Q(-x) = Q(x).
    pub fn is_even_function(&self) -> bool {
        self.degree().is_multiple_of(2) && self.negate_arg() == *self
    }

    /// Signs of the coefficients from leading to constant. A negative leading
    /// coefficient is rejected in both modes; a zero coefficient is rejected
    /// unless `allow_zero` is set.
    pub fn sign_pattern(&self, allow_zero: bool) -> Result<SignPattern> {
        if self.leading().is_negative() {
            return Err(Error::NegativeLeadingCoefficient);
        }
        let signs: Vec<Sign> = self.coeffs.iter().map(Sign::of).collect();
        if !allow_zero && signs.contains(&Sign::Zero) {
            return Err(Error::ZeroCoefficient);
        }
        SignPattern::new(signs, allow_zero)
    }

    pub fn has_zero_coeff(&self) -> bool {
        self.coeffs.iter().any(|c| c.is_zero())
    }

    /// Strict upper bound on every root modulus: 1 + max |a_j| / |a_d|.
    pub fn cauchy_bound(&self) -> Rat {
        let lead = self.leading().abs();
        let mut max = Rat::zero();
        for c in &self.coeffs[1..] {
            let q = c.abs() / &lead;
            if q > max {
                max = q;
            }
        }
        max + Rat::one()
    }

    /// Strict lower bound on every root modulus, via the Cauchy bound of the
    /// reverted polynomial. Requires a nonzero constant term.
    pub fn min_modulus_bound(&self) -> Result<Rat> {
        let tail = self.constant_term();
        if tail.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let tail = tail.abs();
        let mut max = Rat::zero();
        let d = self.degree();
        for c in &self.coeffs[..d] {
            let q = c.abs() / &tail;
            if q > max {
                max = q;
            }
        }
        Ok((max + Rat::one()).recip())
    }

    /// Parse either a monomial-sum expression (`x^3+0.9x^2-5.2x+3.3`) or a
    /// bracketed descending coefficient list (`[1, 0, -1]`). Decimal literals
    /// convert exactly.
    pub fn parse(text: &str) -> Result<Poly> {
        parse::poly(text)
    }
}

impl fmt::Display for Poly {
    /// Canonical expression form, fractions in lowest terms:
    /// `x^3+9/10x^2-26/5x+33/10`. Re-parsing the output reproduces the value.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let power = d - i;
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let mag = c.abs();
            if power == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}")?;
                }
                if power == 1 {
                    write!(f, "x")?;
                } else {
                    write!(f, "x^{power}")?;
                }
            }
        }
        if first {
            // unreachable by the invariant (leading coefficient nonzero)
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl FromStr for Poly {
    type Err = Error;

    fn from_str(text: &str) -> Result<Poly> {
        Poly::parse(text)
    }
}

impl Serialize for Poly {
    /// Canonical JSON form: `{"degree": d, "coeffs": ["1","9/10",...]}` with
    /// coefficients descending, rationals rendered in lowest terms.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Poly", 2)?;
        s.serialize_field("degree", &self.degree())?;
        let coeffs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        s.serialize_field("coeffs", &coeffs)?;
        s.end()
    }
}
