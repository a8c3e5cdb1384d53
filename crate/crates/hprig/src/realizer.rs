//! Constructive realization of sign patterns and moduli orders.
//!
//! The workhorse is multiplication by a near-degenerate linear factor: for a
//! small enough positive rational eps, `(x - eps)Q` and `(x + eps)Q` prepend
//! a letter to the moduli order (a new smallest modulus), while
//! `(eps x - 1)Q` and `(eps x + 1)Q` append one (a new largest modulus,
//! `-(1 - eps x)` is already written with positive leading coefficient).
//! "Small enough" is made concrete by an exact schedule derived from root
//! bounds, and every product is validated by recomputing the moduli order
//! and sign pattern; a failed validation shrinks eps and retries.
//!
//! On top of that sit the canonical realization of a sign pattern, the
//! realization of an arbitrary moduli order, and the two-polynomial
//! witnesses certifying that a non-alternating order admits two different
//! sign patterns.

use crate::isolator::{self, Letter, ModuliOrder};
use crate::polycore::{Poly, Rat, Sign, SignPattern};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Roots with multiplicities for explicit products. Zero roots are rejected
/// at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootList {
    entries: Vec<(Rat, u32)>,
}

impl RootList {
    pub fn new(entries: Vec<(Rat, u32)>) -> Result<RootList> {
        if entries.is_empty() {
            return Err(Error::EmptyInput);
        }
        for (root, mult) in &entries {
            if root.is_zero() {
                return Err(Error::RootAtZero);
            }
            if *mult == 0 {
                return Err(Error::Precondition("multiplicity must be >= 1".into()));
            }
        }
        Ok(RootList { entries })
    }

    pub fn simple(roots: Vec<Rat>) -> Result<RootList> {
        RootList::new(roots.into_iter().map(|r| (r, 1)).collect())
    }

    pub fn entries(&self) -> &[(Rat, u32)] {
        &self.entries
    }
}

/// Exact monic expansion of the product of `(x - root)^multiplicity`.
pub fn from_roots(roots: &RootList) -> Poly {
    let mut acc = Poly::one();
    for (root, mult) in &roots.entries {
        let lin = Poly::x_minus(root);
        for _ in 0..*mult {
            acc = acc.multiply(&lin);
        }
    }
    acc
}

/// Which end of the moduli order an extension targets: `Left` adds a new
/// smallest modulus, `Right` a new largest one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

const RETRY_CAP: u32 = 64;

/// Polynomial together with its validated strict moduli order and sign
/// pattern; the chain builders thread this through extensions so nothing is
/// recomputed needlessly.
///
/// The modulus bounds drive the eps schedule. Chained extensions know the
/// extreme moduli exactly (a left extension's smallest modulus *is* its
/// eps), which keeps the scale of successive eps values linear instead of
/// compounding; the entry state falls back to the Cauchy-style bounds.
#[derive(Clone, Debug)]
struct Grown {
    poly: Poly,
    mo: ModuliOrder,
    sp: SignPattern,
    /// positive lower bound on every root modulus (1 when there are none)
    min_mod: Rat,
    /// upper bound on every root modulus, at least 1
    max_mod: Rat,
}

fn checked_state(q: &Poly) -> Result<Grown> {
    let sp = q.sign_pattern(false)?;
    if !isolator::is_hyperbolic(q) {
        return Err(Error::NotHyperbolic);
    }
    let mo = if q.degree() == 0 {
        ModuliOrder::empty()
    } else {
        isolator::strict_moduli_order(q)?
    };
    let min_mod = if q.degree() == 0 {
        Rat::one()
    } else {
        q.min_modulus_bound()?
    };
    let cauchy = q.cauchy_bound();
    let max_mod = if cauchy > Rat::one() {
        cauchy
    } else {
        Rat::one()
    };
    Ok(Grown {
        poly: q.clone(),
        mo,
        sp,
        min_mod,
        max_mod,
    })
}

/// The multiplier realizing one extension at scale `eps`.
fn multiplier(side: Side, letter: Letter, eps: &Rat) -> Poly {
    let coeffs = match (side, letter) {
        (Side::Left, Letter::P) => vec![Rat::one(), -eps.clone()],
        (Side::Left, Letter::N) => vec![Rat::one(), eps.clone()],
        (Side::Right, Letter::P) => vec![eps.clone(), -Rat::one()],
        (Side::Right, Letter::N) => vec![eps.clone(), Rat::one()],
    };
    Poly::new(coeffs).expect("eps > 0")
}

/// The exact sign-pattern contract of one extension:
/// - left extensions append one sign at the constant end: the flipped last
///   sign for `P` (a new sign change), the repeated last sign for `N`;
/// - a right `N` extension prepends `+` and keeps the rest;
/// - a right `P` extension prepends `+` to the flipped pattern (the
///   normalizing `-1` in `-(1 - eps x)` flips every old coefficient).
fn expected_sp_after(sp: &SignPattern, side: Side, letter: Letter) -> SignPattern {
    let mut signs: Vec<Sign>;
    match (side, letter) {
        (Side::Left, Letter::P) => {
            signs = sp.signs().to_vec();
            signs.push(sp.signs().last().unwrap().flipped());
        }
        (Side::Left, Letter::N) => {
            signs = sp.signs().to_vec();
            signs.push(*sp.signs().last().unwrap());
        }
        (Side::Right, Letter::N) => {
            signs = Vec::with_capacity(sp.len() + 1);
            signs.push(Sign::Plus);
            signs.extend_from_slice(sp.signs());
        }
        (Side::Right, Letter::P) => {
            signs = Vec::with_capacity(sp.len() + 1);
            signs.push(Sign::Plus);
            signs.extend(sp.signs().iter().map(|s| s.flipped()));
        }
    }
    SignPattern::strict(signs).expect("extension of a strict pattern is strict")
}

/// Initial eps: a power of two at most 1/100 of the relevant exact root
/// bound, so the new root's modulus provably clears the existing ones.
fn eps_schedule(state: &Grown, side: Side) -> Rat {
    let hundredth = Rat::new(BigInt::one(), BigInt::from(100));
    let raw = match side {
        Side::Left => {
            let one = Rat::one();
            let m = if state.min_mod < one {
                state.min_mod.clone()
            } else {
                one
            };
            m * hundredth
        }
        Side::Right => (&state.max_mod * Rat::from_integer(BigInt::from(100))).recip(),
    };
    pow2_floor_rat(&raw)
}

fn pow2_floor_rat(q: &Rat) -> Rat {
    crate::isolator::pow2(crate::isolator::floor_log2(q))
}

fn shrink_eps(eps: &Rat) -> Rat {
    pow2_floor_rat(&(eps / Rat::from_integer(BigInt::from(100))))
}

/// One validated extension attempt: multiply, then recompute the moduli
/// order and sign pattern of the product and compare with the stated
/// contracts. `None` means this eps was not small enough.
fn try_step(state: &Grown, side: Side, letter: Letter, eps: &Rat) -> Option<Grown> {
    let product = state.poly.multiply(&multiplier(side, letter, eps));
    let expected_mo = match side {
        Side::Left => state.mo.extended_left(letter),
        Side::Right => state.mo.extended_right(letter),
    };
    let expected_sp = expected_sp_after(&state.sp, side, letter);
    let actual_sp = product.sign_pattern(false).ok()?;
    if actual_sp != expected_sp {
        return None;
    }
    let actual_mo = isolator::strict_moduli_order(&product).ok()?;
    if actual_mo != expected_mo {
        return None;
    }
    let (min_mod, max_mod) = match side {
        Side::Left => (eps.clone(), state.max_mod.clone()),
        Side::Right => (state.min_mod.clone(), eps.recip()),
    };
    Some(Grown {
        poly: product,
        mo: expected_mo,
        sp: expected_sp,
        min_mod,
        max_mod,
    })
}

fn grow(state: &Grown, side: Side, letter: Letter) -> Result<Grown> {
    let mut eps = eps_schedule(state, side);
    for _ in 0..RETRY_CAP {
        if let Some(next) = try_step(state, side, letter, &eps) {
            return Ok(next);
        }
        eps = shrink_eps(&eps);
    }
    Err(Error::Falsified(format!(
        "extension of {} by {:?}/{:?} failed validation at every eps",
        state.poly, side, letter
    )))
}

/// Multiply `q` by a validated near-degenerate factor so the moduli order
/// gains one letter on the chosen side. The input must have a positive
/// leading coefficient, no zero coefficient, a nonzero constant term, and a
/// strict moduli order; the output's order and sign pattern are recomputed
/// and asserted, with eps shrunk and the product retried on any mismatch.
pub fn extend_mo(q: &Poly, side: Side, letter: Letter) -> Result<Poly> {
    let state = checked_state(q)?;
    Ok(grow(&state, side, letter)?.poly)
}

/// The canonical moduli order of a strict sign pattern: reading the pattern
/// from the constant end, each pair of equal consecutive signs contributes
/// `N` and each pair of different signs contributes `P`, in that order.
pub fn canonical_mo(sp: &SignPattern) -> Result<ModuliOrder> {
    if sp.has_zero() {
        return Err(Error::SpazInput);
    }
    if sp.len() < 2 {
        return Err(Error::Precondition(
            "canonical order needs a pattern of length >= 2".into(),
        ));
    }
    let signs = sp.signs();
    let mut letters = Vec::with_capacity(signs.len() - 1);
    for j in (1..signs.len()).rev() {
        letters.push(if signs[j] == signs[j - 1] {
            Letter::N
        } else {
            Letter::P
        });
    }
    Ok(ModuliOrder::new(letters))
}

/// A hyperbolic polynomial whose sign pattern is `sp` and whose moduli order
/// is the canonical one, built by iterated left extensions: `P` on each sign
/// change, `N` on each preservation.
pub fn realize_sp(sp: &SignPattern) -> Result<Poly> {
    if sp.has_zero() {
        return Err(Error::SpazInput);
    }
    let signs = sp.signs();
    let mut state = Grown {
        poly: Poly::one(),
        mo: ModuliOrder::empty(),
        sp: SignPattern::strict(vec![Sign::Plus]).expect("valid"),
        min_mod: Rat::one(),
        max_mod: Rat::one(),
    };
    for i in 1..signs.len() {
        let letter = if signs[i] != signs[i - 1] {
            Letter::P
        } else {
            Letter::N
        };
        state = grow(&state, Side::Left, letter)?;
    }
    debug_assert_eq!(&state.sp, sp);
    if sp.len() >= 2 {
        debug_assert_eq!(state.mo, canonical_mo(sp)?);
    }
    Ok(state.poly)
}

/// A hyperbolic polynomial realizing the given moduli order, built from a
/// degree-one seed by iterated right extensions; the order of the result is
/// verified along the way.
pub fn realize_mo(mo: &ModuliOrder) -> Result<Poly> {
    let letters = mo.letters();
    if letters.is_empty() {
        return Err(Error::EmptyInput);
    }
    let seed = match letters[0] {
        Letter::P => Poly::x_minus(&Rat::one()),
        Letter::N => Poly::x_minus(&(-Rat::one())),
    };
    let mut state = checked_state(&seed)?;
    for &letter in &letters[1..] {
        state = grow(&state, Side::Right, letter)?;
    }
    debug_assert_eq!(&state.mo, mo);
    Ok(state.poly)
}

/// Two hyperbolic polynomials with the same strict moduli order and
/// different sign patterns.
#[derive(Clone, Debug)]
pub struct WitnessPair {
    pub first: Poly,
    pub second: Poly,
    pub mo: ModuliOrder,
}

impl WitnessPair {
    /// Recompute both moduli orders and sign patterns and check the defining
    /// invariants.
    pub fn validate(&self) -> Result<()> {
        let mo_a = isolator::strict_moduli_order(&self.first)?;
        let mo_b = isolator::strict_moduli_order(&self.second)?;
        if mo_a != self.mo || mo_b != self.mo {
            return Err(Error::Falsified(format!(
                "witness moduli orders differ from {}: got {} and {}",
                self.mo, mo_a, mo_b
            )));
        }
        let sp_a = self.first.sign_pattern(false)?;
        let sp_b = self.second.sign_pattern(false)?;
        if sp_a == sp_b {
            return Err(Error::Falsified(format!(
                "witness pair for {} collapsed to one sign pattern {}",
                self.mo, sp_a
            )));
        }
        Ok(())
    }
}

/// The four base pairs, one per forbidden three-letter window. Each is a
/// transform of the first pair; leading coefficients are normalized positive
/// (for the reverted-and-negated pair that normalization is a sign flip,
/// which changes neither roots nor moduli order).
fn base_pair(window: [Letter; 3]) -> (Poly, Poly) {
    let p1 = from_roots(
        &RootList::simple(vec![
            Rat::one(),
            Rat::new(BigInt::from(11), BigInt::from(10)),
            -Rat::from_integer(BigInt::from(3)),
        ])
        .expect("nonzero roots"),
    );
    let p2 = from_roots(
        &RootList::simple(vec![
            Rat::one(),
            Rat::from_integer(BigInt::from(3)),
            -Rat::new(BigInt::from(31), BigInt::from(10)),
        ])
        .expect("nonzero roots"),
    );
    use Letter::{N, P};
    match window {
        [P, P, N] => (p1, p2),
        [N, N, P] => (p1.negate_arg(), p2.negate_arg()),
        [N, P, P] => (
            p1.revert()
                .expect("nonzero constant")
                .with_positive_leading(),
            p2.revert()
                .expect("nonzero constant")
                .with_positive_leading(),
        ),
        [P, N, N] => (
            p1.negate_arg()
                .revert()
                .expect("nonzero constant")
                .with_positive_leading(),
            p2.negate_arg()
                .revert()
                .expect("nonzero constant")
                .with_positive_leading(),
        ),
        _ => unreachable!("callers pass a forbidden window"),
    }
}

fn grow_pair(
    a: &Grown,
    b: &Grown,
    side: Side,
    letter: Letter,
    mo: &ModuliOrder,
) -> Result<(Grown, Grown)> {
    let ea = eps_schedule(a, side);
    let eb = eps_schedule(b, side);
    let mut eps = if ea < eb { ea } else { eb };
    for _ in 0..RETRY_CAP {
        if let (Some(na), Some(nb)) = (
            try_step(a, side, letter, &eps),
            try_step(b, side, letter, &eps),
        ) {
            if na.sp != nb.sp {
                return Ok((na, nb));
            }
            // Equal sign patterns after a shared multiplication would refute
            // the claim the witness construction rests on; surface loudly
            // rather than papering over it.
            return Err(Error::Falsified(format!(
                "witness construction for {mo}: multiplying {} and {} \
                 ({:?}/{letter:?}, eps = {eps}) produced equal sign patterns {}",
                a.poly, b.poly, side, na.sp
            )));
        }
        eps = shrink_eps(&eps);
    }
    Err(Error::Falsified(format!(
        "witness construction for {mo}: no eps validated a shared \
         {side:?}/{letter:?} extension of {} and {}",
        a.poly, b.poly
    )))
}

/// For a non-alternating moduli order with both letters present, build two
/// polynomials realizing it with different sign patterns. The base pair for
/// the leftmost forbidden window is extended identically on both sides, one
/// letter at a time, with a shared validated eps per step.
pub fn witness_pair(mo: &ModuliOrder) -> Result<WitnessPair> {
    let letters = mo.letters();
    if letters.len() < 3 {
        return Err(Error::Precondition(
            "witness orders must have length >= 3".into(),
        ));
    }
    let (p_count, n_count) = mo.counts();
    if p_count == 0 || n_count == 0 {
        return Err(Error::Precondition(
            "witness orders must contain both letters".into(),
        ));
    }
    // leftmost window with exactly one adjacent equal pair: one of PPN,
    // NNP, NPP, PNN (a mixed non-alternating order always contains one)
    let k = (0..letters.len() - 2)
        .find(|&k| {
            let w = &letters[k..k + 3];
            (w[0] == w[1]) != (w[1] == w[2])
        })
        .ok_or_else(|| {
            Error::Precondition("alternating orders are rigid and admit no witness".into())
        })?;
    let window = [letters[k], letters[k + 1], letters[k + 2]];
    let (first, second) = base_pair(window);
    let mut a = checked_state(&first)?;
    let mut b = checked_state(&second)?;
    debug_assert_eq!(a.mo.letters(), window);
    debug_assert_eq!(b.mo.letters(), window);

    for i in (0..k).rev() {
        let (na, nb) = grow_pair(&a, &b, Side::Left, letters[i], mo)?;
        a = na;
        b = nb;
    }
    for &letter in &letters[k + 3..] {
        let (na, nb) = grow_pair(&a, &b, Side::Right, letter, mo)?;
        a = na;
        b = nb;
    }

    let pair = WitnessPair {
        first: a.poly,
        second: b.poly,
        mo: mo.clone(),
    };
    if a.mo != *mo || b.mo != *mo || a.sp == b.sp {
        return Err(Error::Falsified(format!(
            "witness invariants failed for {mo}: orders {} / {}, patterns {} / {}",
            a.mo, b.mo, a.sp, b.sp
        )));
    }
    Ok(pair)
}

/// Deterministic seed derivation for case `index` of a harness seeded with
/// `base` (splitmix64 finalizer over `base XOR index * golden`).
pub fn derive_seed(base: u64, index: u64) -> u64 {
    let mut z = base ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A pseudo-random hyperbolic polynomial realizing `mo` by construction:
/// strictly increasing positive moduli are drawn as cumulative sums of
/// ratios `(1 + a)/(1 + b)` with `a` uniform in 0..1000 and `b` uniform in
/// 0..100 from a ChaCha8 stream seeded with `seed`, then signed by the
/// letters.
pub fn sample_hp_with_mo(mo: &ModuliOrder, seed: u64) -> Poly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = Rat::zero();
    let mut roots = Vec::with_capacity(mo.len());
    for &letter in mo.letters() {
        let num = 1 + rng.gen_range(0..1000u32);
        let den = 1 + rng.gen_range(0..100u32);
        acc += Rat::new(BigInt::from(num), BigInt::from(den));
        roots.push(match letter {
            Letter::P => acc.clone(),
            Letter::N => -acc.clone(),
        });
    }
    from_roots(&RootList::simple(roots).expect("moduli are positive"))
}

/// Monic product of `(x^2 - a^2)` over the given positive moduli (repeats
/// allowed). The result is an even polynomial whose pattern of coefficient
/// signs alternates `+, 0, -, 0, ...`.
pub fn even_hp(moduli: &[Rat]) -> Result<Poly> {
    if moduli.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut acc = Poly::one();
    for a in moduli {
        if a.is_zero() {
            return Err(Error::ZeroModulus);
        }
        if a.is_negative() {
            return Err(Error::Precondition("moduli must be positive".into()));
        }
        let square = a * a;
        let factor = Poly::new(vec![Rat::one(), Rat::zero(), -square]).expect("monic");
        acc = acc.multiply(&factor);
    }
    debug_assert!(acc.is_even_function());
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::rat;

    fn p(text: &str) -> Poly {
        Poly::parse(text).unwrap()
    }

    fn sp(text: &str) -> SignPattern {
        text.parse().unwrap()
    }

    fn mo(text: &str) -> ModuliOrder {
        text.parse().unwrap()
    }

    #[test]
    fn from_roots_examples() {
        let q = from_roots(&RootList::simple(vec![rat(1, 1), rat(11, 10), rat(-3, 1)]).unwrap());
        assert_eq!(q, p("x^3+9/10x^2-26/5x+33/10"));

        let sq = from_roots(&RootList::new(vec![(rat(1, 1), 2)]).unwrap());
        assert_eq!(sq, p("x^2-2x+1"));

        let c = from_roots(&RootList::simple(vec![rat(-1, 1), rat(2, 1), rat(-3, 1)]).unwrap());
        assert_eq!(c, p("x^3+2x^2-5x-6"));

        assert!(RootList::simple(vec![rat(0, 1)]).is_err());
    }

    #[test]
    fn extend_left_p_from_linear() {
        let q = p("x+2");
        let out = extend_mo(&q, Side::Left, Letter::P).unwrap();
        assert_eq!(out.sign_pattern(false).unwrap(), sp("+ + -"));
        assert_eq!(isolator::strict_moduli_order(&out).unwrap(), mo("P<N"));
    }

    #[test]
    fn extend_right_n_from_cubic() {
        let q = p("x^3+9/10x^2-26/5x+33/10");
        let out = extend_mo(&q, Side::Right, Letter::N).unwrap();
        assert_eq!(isolator::strict_moduli_order(&out).unwrap(), mo("P<P<N<N"));
    }

    #[test]
    fn extend_left_n_from_linear() {
        let q = p("x-1");
        let out = extend_mo(&q, Side::Left, Letter::N).unwrap();
        assert_eq!(out.sign_pattern(false).unwrap(), sp("+ - -"));
        assert_eq!(isolator::strict_moduli_order(&out).unwrap(), mo("N<P"));
    }

    #[test]
    fn extend_rejects_zero_coefficient_inputs() {
        // (x-1)(x+3/2)(x+3) is hyperbolic with a strict order but its
        // x-coefficient vanishes, so there is no strict sign pattern to
        // extend.
        let q = from_roots(&RootList::simple(vec![rat(1, 1), rat(-3, 2), rat(-3, 1)]).unwrap());
        assert!(q.has_zero_coeff());
        assert_eq!(
            extend_mo(&q, Side::Left, Letter::P),
            Err(Error::ZeroCoefficient)
        );
    }

    #[test]
    fn canonical_mo_examples() {
        assert_eq!(
            canonical_mo(&sp("+ + - - + - + + -")).unwrap(),
            mo("P<N<P<P<P<N<P<N")
        );
        assert_eq!(canonical_mo(&sp("+ + -")).unwrap(), mo("P<N"));
        assert_eq!(canonical_mo(&sp("+ + + +")).unwrap(), mo("N<N<N"));
        assert_eq!(canonical_mo(&sp("+ 0 -")), Err(Error::SpazInput));
    }

    #[test]
    fn realize_sp_examples() {
        let q = realize_sp(&sp("+ + -")).unwrap();
        assert_eq!(q.sign_pattern(false).unwrap(), sp("+ + -"));
        assert_eq!(isolator::strict_moduli_order(&q).unwrap(), mo("P<N"));

        let q = realize_sp(&sp("+ - - +")).unwrap();
        assert_eq!(q.sign_pattern(false).unwrap(), sp("+ - - +"));
        assert_eq!(isolator::strict_moduli_order(&q).unwrap(), mo("P<N<P"));

        assert_eq!(realize_sp(&sp("+")).unwrap(), Poly::one());
    }

    #[test]
    fn realize_mo_examples() {
        let q = realize_mo(&mo("P<N")).unwrap();
        assert_eq!(isolator::strict_moduli_order(&q).unwrap(), mo("P<N"));
        assert_eq!(q.sign_pattern(false).unwrap(), sp("+ + -"));

        let q = realize_mo(&mo("N<P<N")).unwrap();
        assert_eq!(isolator::strict_moduli_order(&q).unwrap(), mo("N<P<N"));
        assert_eq!(q.sign_pattern(false).unwrap(), sp("+ + - -"));

        // non-rigid order: only the order itself is part of the contract
        let q = realize_mo(&mo("P<P<N")).unwrap();
        assert_eq!(isolator::strict_moduli_order(&q).unwrap(), mo("P<P<N"));
    }

    #[test]
    fn witness_base_pairs_match_fixtures() {
        let w = witness_pair(&mo("P<P<N")).unwrap();
        assert_eq!(w.first.sign_pattern(false).unwrap(), sp("+ + - +"));
        assert_eq!(w.second.sign_pattern(false).unwrap(), sp("+ - - +"));
        w.validate().unwrap();

        let w = witness_pair(&mo("N<N<P")).unwrap();
        assert_eq!(w.first.sign_pattern(false).unwrap(), sp("+ - - -"));
        assert_eq!(w.second.sign_pattern(false).unwrap(), sp("+ + - -"));
        w.validate().unwrap();

        let w = witness_pair(&mo("N<P<P")).unwrap();
        assert_eq!(w.first.sign_pattern(false).unwrap(), sp("+ - + +"));
        assert_eq!(w.second.sign_pattern(false).unwrap(), sp("+ - - +"));
        w.validate().unwrap();

        let w = witness_pair(&mo("P<N<N")).unwrap();
        assert_eq!(w.first.sign_pattern(false).unwrap(), sp("+ + + -"));
        assert_eq!(w.second.sign_pattern(false).unwrap(), sp("+ + - -"));
        w.validate().unwrap();
    }

    #[test]
    fn witness_extends_to_longer_orders() {
        let w = witness_pair(&mo("P<P<N<N")).unwrap();
        w.validate().unwrap();
        assert_eq!(
            isolator::strict_moduli_order(&w.first).unwrap(),
            mo("P<P<N<N")
        );
    }

    #[test]
    fn witness_preconditions() {
        assert!(witness_pair(&mo("P<N<P")).is_err());
        assert!(witness_pair(&mo("P<P")).is_err());
        assert!(witness_pair(&mo("P<P<P")).is_err());
    }

    #[test]
    fn sampling_is_deterministic_and_on_order() {
        let a = sample_hp_with_mo(&mo("N<P<N"), 1);
        let b = sample_hp_with_mo(&mo("N<P<N"), 1);
        assert_eq!(a, b);
        assert_eq!(a.sign_pattern(false).unwrap(), sp("+ + - -"));
        assert_eq!(isolator::strict_moduli_order(&a).unwrap(), mo("N<P<N"));

        for seed in [2u64, 7, 99] {
            let q = sample_hp_with_mo(&mo("P<N"), seed);
            assert_eq!(q.sign_pattern(false).unwrap(), sp("+ + -"));
        }
    }

    #[test]
    fn even_hp_examples() {
        assert_eq!(even_hp(&[rat(2, 1)]).unwrap(), p("x^2-4"));
        assert_eq!(even_hp(&[rat(1, 1), rat(2, 1)]).unwrap(), p("x^4-5x^2+4"));
        assert_eq!(even_hp(&[rat(1, 1), rat(1, 1)]).unwrap(), p("x^4-2x^2+1"));
        assert_eq!(even_hp(&[rat(0, 1)]), Err(Error::ZeroModulus));

        let spaz = even_hp(&[rat(1, 1), rat(2, 1)])
            .unwrap()
            .sign_pattern(true)
            .unwrap();
        assert_eq!(spaz, "+ 0 - 0 +".parse().unwrap());
    }
}
