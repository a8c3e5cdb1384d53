//! Integer-polynomial kernel for exact root counting.
//!
//! Rational input polynomials are cleared to primitive integer polynomials
//! (same roots), and all Sturm-chain work happens over the integers: the
//! remainder sequence uses pseudo-division with a *positive* multiplier at
//! every step, so the sign behaviour of the chain at any point matches the
//! rational chain exactly, while primitive-part reduction keeps coefficients
//! from exploding.

use crate::polycore::{Poly, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense integer polynomial, coefficients descending. The zero polynomial is
/// the empty vector; otherwise the leading coefficient is nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub(crate) fn zero() -> ZPoly {
        ZPoly { coeffs: Vec::new() }
    }

    fn from_raw(mut coeffs: Vec<BigInt>) -> ZPoly {
        let lead = coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => ZPoly::zero(),
            Some(k) => {
                coeffs.drain(..k);
                ZPoly { coeffs }
            }
        }
    }

    /// Clear denominators and divide out the content; the sign of the leading
    /// coefficient is preserved.
    pub(crate) fn from_poly(p: &Poly) -> ZPoly {
        let mut lcm = BigInt::one();
        for c in p.coeffs() {
            lcm = lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = p
            .coeffs()
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        ZPoly::from_raw(ints).primitive()
    }

    /// Back to a rational polynomial (monic when `monic` is set, otherwise
    /// the primitive integer coefficients).
    pub(crate) fn to_poly_monic(&self) -> Poly {
        assert!(!self.is_zero());
        let lead = BigRational::from_integer(self.coeffs[0].clone());
        let coeffs: Vec<Rat> = self
            .coeffs
            .iter()
            .map(|c| BigRational::from_integer(c.clone()) / &lead)
            .collect();
        Poly::new(coeffs).expect("leading coefficient is 1")
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has none.
    pub(crate) fn degree(&self) -> usize {
        debug_assert!(!self.is_zero());
        self.coeffs.len() - 1
    }

    pub(crate) fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    fn leading(&self) -> &BigInt {
        &self.coeffs[0]
    }

    /// Divide by the (positive) content. Signs of all coefficients are
    /// preserved.
    pub(crate) fn primitive(mut self) -> ZPoly {
        if self.is_zero() {
            return self;
        }
        let mut content = BigInt::zero();
        for c in &self.coeffs {
            content = content.gcd(c);
            if content.is_one() {
                return self;
            }
        }
        for c in &mut self.coeffs {
            *c = &*c / &content;
        }
        self
    }

    pub(crate) fn neg(mut self) -> ZPoly {
        for c in &mut self.coeffs {
            *c = -std::mem::take(c);
        }
        self
    }

    /// Positive leading coefficient, same roots.
    pub(crate) fn abs_normalized(self) -> ZPoly {
        if !self.is_zero() && self.leading().is_negative() {
            self.neg()
        } else {
            self
        }
    }

    pub(crate) fn derivative(&self) -> ZPoly {
        if self.is_constant() {
            return ZPoly::zero();
        }
        let d = self.degree();
        let coeffs: Vec<BigInt> = self
            .coeffs
            .iter()
            .take(d)
            .enumerate()
            .map(|(i, c)| c * BigInt::from(d - i))
            .collect();
        ZPoly::from_raw(coeffs)
    }

    /// Sign of the value at the rational point `num/den` (`den > 0`), via
    /// homogeneous integer Horner evaluation.
    pub(crate) fn sign_at(&self, num: &BigInt, den: &BigInt) -> i8 {
        debug_assert!(den.is_positive());
        if self.is_zero() {
            return 0;
        }
        let mut acc = self.coeffs[0].clone();
        let mut den_pow = BigInt::one();
        for c in &self.coeffs[1..] {
            den_pow *= den;
            acc = acc * num + c * &den_pow;
        }
        match acc.sign() {
            num_bigint::Sign::Plus => 1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Minus => -1,
        }
    }

    pub(crate) fn sign_at_rat(&self, x: &Rat) -> i8 {
        self.sign_at(x.numer(), x.denom())
    }

    /// Remainder of `m * self` divided by `other`, where `m` is a positive
    /// integer (a power of |lc(other)|). Every reduction step multiplies by a
    /// positive constant, so the result has the same sign behaviour as the
    /// true rational remainder.
    fn prem_positive(&self, other: &ZPoly) -> ZPoly {
        debug_assert!(!other.is_zero());
        let db = other.degree();
        let lead_abs = other.leading().abs();
        let lead_sign_negative = other.leading().is_negative();
        let mut rem = self.coeffs.clone();
        while rem.len() > db {
            let factor = rem[0].clone();
            if factor.is_zero() {
                rem.remove(0);
                continue;
            }
            // rem <- |lc_b| * rem - q * other (top-aligned), with q chosen
            // so the leading terms cancel: q = factor * sgn(lc_b).
            let q = if lead_sign_negative { -factor } else { factor };
            for c in rem.iter_mut() {
                *c *= &lead_abs;
            }
            for (i, bc) in other.coeffs.iter().enumerate() {
                rem[i] -= &q * bc;
            }
            debug_assert!(rem[0].is_zero());
            rem.remove(0);
        }
        ZPoly::from_raw(rem)
    }

    /// Exact division, valid when `other` divides `self` in Z[x] (the use
    /// sites guarantee it via Gauss's lemma). Panics on inexact division.
    fn div_exact(&self, other: &ZPoly) -> ZPoly {
        assert!(!other.is_zero());
        let db = other.degree();
        let mut rem = self.coeffs.clone();
        let mut quot: Vec<BigInt> = Vec::new();
        while rem.len() > db {
            let (q, r) = rem[0].div_rem(other.leading());
            assert!(r.is_zero(), "inexact polynomial division");
            for (i, bc) in other.coeffs.iter().enumerate() {
                rem[i] -= &q * bc;
            }
            debug_assert!(rem[0].is_zero());
            rem.remove(0);
            quot.push(q);
        }
        assert!(
            rem.iter().all(|c| c.is_zero()),
            "inexact polynomial division"
        );
        ZPoly::from_raw(quot)
    }
}

/// Primitive gcd in Z[x] with positive leading coefficient; 1 for coprime
/// inputs.
pub(crate) fn gcd_primitive(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let mut f = a.clone();
    let mut g = b.clone();
    if f.is_zero() {
        return g.abs_normalized();
    }
    if g.is_zero() {
        return f.abs_normalized();
    }
    if f.degree() < g.degree() {
        std::mem::swap(&mut f, &mut g);
    }
    loop {
        let r = f.prem_positive(&g).primitive();
        if r.is_zero() {
            return g.abs_normalized();
        }
        if r.is_constant() {
            return ZPoly {
                coeffs: vec![BigInt::one()],
            };
        }
        f = g;
        g = r;
    }
}

/// A Sturm chain over the integers. Built from a squarefree polynomial; the
/// difference of sign variations at two non-root points counts the distinct
/// real roots strictly between them.
pub(crate) struct SturmChain {
    polys: Vec<ZPoly>,
}

impl SturmChain {
    /// Builds the remainder chain of `p`. The returned second value is the
    /// final nonzero element, which is gcd(p, p') up to a positive constant:
    /// constant for squarefree `p`.
    pub(crate) fn build(p: &ZPoly) -> (SturmChain, ZPoly) {
        assert!(!p.is_zero());
        let mut polys = vec![p.clone()];
        let deriv = p.derivative().primitive();
        if deriv.is_zero() {
            let tail = polys[0].clone();
            return (SturmChain { polys }, tail);
        }
        polys.push(deriv);
        loop {
            let k = polys.len();
            let r = polys[k - 2].prem_positive(&polys[k - 1]);
            if r.is_zero() {
                break;
            }
            polys.push(r.neg().primitive());
        }
        let tail = polys.last().expect("chain nonempty").clone();
        (SturmChain { polys }, tail)
    }

    /// Number of sign variations of the chain at `x`, zeros skipped.
    pub(crate) fn variations_at(&self, x: &Rat) -> usize {
        let mut count = 0usize;
        let mut prev: i8 = 0;
        for p in &self.polys {
            let s = p.sign_at_rat(x);
            if s == 0 {
                continue;
            }
            if prev != 0 && s != prev {
                count += 1;
            }
            prev = s;
        }
        count
    }
}

/// Squarefree part of `p` (primitive, leading sign preserved), reusing the
/// gcd computed as the Sturm-chain tail when available.
pub(crate) fn squarefree_part(p: &ZPoly, gcd_with_deriv: &ZPoly) -> ZPoly {
    if gcd_with_deriv.is_constant() {
        p.clone()
    } else {
        p.div_exact(gcd_with_deriv).primitive()
    }
}

/// Floor of log2 of a positive rational.
pub(crate) fn floor_log2(q: &Rat) -> i64 {
    debug_assert!(q.is_positive());
    let mut e = q.numer().bits() as i64 - q.denom().bits() as i64;
    // correct the estimate: want 2^e <= q < 2^(e+1)
    while pow2(e) > *q {
        e -= 1;
    }
    while pow2(e + 1) <= *q {
        e += 1;
    }
    e
}

/// 2^k as an exact rational, k possibly negative.
pub(crate) fn pow2(k: i64) -> Rat {
    if k >= 0 {
        Rat::from_integer(BigInt::one() << k as u64)
    } else {
        Rat::new(BigInt::one(), BigInt::one() << (-k) as u64)
    }
}

/// Largest power of two not exceeding `q` (q > 0).
pub(crate) fn pow2_floor(q: &Rat) -> Rat {
    pow2(floor_log2(q))
}

/// Smallest power of two not less than `q` (q > 0).
pub(crate) fn pow2_ceil(q: &Rat) -> Rat {
    let e = floor_log2(q);
    if pow2(e) == *q {
        pow2(e)
    } else {
        pow2(e + 1)
    }
}
