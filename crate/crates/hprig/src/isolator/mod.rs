//! Exact real-root isolation, hyperbolicity testing, and moduli orders.
//!
//! Root counting is Sturm-based on the squarefree part, with multiplicities
//! reattached from the squarefree decomposition. Equal-moduli detection is
//! algebraic (a gcd with the argument-negated polynomial certifies every
//! opposite-root pair); interval refinement is only ever used to separate
//! moduli that are genuinely distinct, so it terminates.
//!
//! The moduli order lists roots by increasing modulus as letters `P`
//! (positive root) and `N` (negative root). The strict order separates all
//! letters by `<`; the variant admitting equalities also uses `=` between a
//! certified opposite pair and between the repeats of a multiple root.
//! Inside an `=` group the letter `N` is emitted before `P` (a fixed,
//! documented convention — the weak order itself does not prescribe one).

mod sturm;

use crate::polycore::{Poly, Rat, Sign};
use crate::{Error, Result};
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use sturm::{gcd_primitive, pow2_ceil, pow2_floor, squarefree_part, SturmChain, ZPoly};

pub(crate) use sturm::{floor_log2, pow2};

/// One letter of a moduli order: `P` marks a positive root, `N` a negative
/// one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    P,
    N,
}

impl Letter {
    pub fn flipped(self) -> Letter {
        match self {
            Letter::P => Letter::N,
            Letter::N => Letter::P,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::P => 'P',
            Letter::N => 'N',
        }
    }

    pub fn of_root(r: &Rat) -> Letter {
        debug_assert!(!r.is_zero());
        if r.is_positive() {
            Letter::P
        } else {
            Letter::N
        }
    }
}

/// Separator between adjacent letters of a moduli order admitting
/// equalities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Separator {
    Lt,
    Eq,
}

/// A strict moduli order: letters by strictly increasing root modulus.
///
/// The empty order belongs to a constant polynomial; parsing rejects it, but
/// it is a legal intermediate value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModuliOrder {
    letters: Vec<Letter>,
}

impl ModuliOrder {
    pub fn new(letters: Vec<Letter>) -> ModuliOrder {
        ModuliOrder { letters }
    }

    pub fn empty() -> ModuliOrder {
        ModuliOrder {
            letters: Vec::new(),
        }
    }

    /// The alternating order of the given length starting with `start`.
    pub fn alternating(start: Letter, len: usize) -> ModuliOrder {
        let mut letters = Vec::with_capacity(len);
        let mut cur = start;
        for _ in 0..len {
            letters.push(cur);
            cur = cur.flipped();
        }
        ModuliOrder { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Counts of (P, N) letters.
    pub fn counts(&self) -> (usize, usize) {
        let p = self.letters.iter().filter(|&&l| l == Letter::P).count();
        (p, self.letters.len() - p)
    }

    /// All letters equal (and at least one).
    pub fn is_single_letter(&self) -> bool {
        !self.letters.is_empty() && self.letters.windows(2).all(|w| w[0] == w[1])
    }

    /// No two adjacent letters equal (single letters of length 1 count).
    pub fn is_alternating(&self) -> bool {
        !self.letters.is_empty() && self.letters.windows(2).all(|w| w[0] != w[1])
    }

    pub fn extended_left(&self, letter: Letter) -> ModuliOrder {
        let mut letters = Vec::with_capacity(self.letters.len() + 1);
        letters.push(letter);
        letters.extend_from_slice(&self.letters);
        ModuliOrder { letters }
    }

    pub fn extended_right(&self, letter: Letter) -> ModuliOrder {
        let mut letters = self.letters.clone();
        letters.push(letter);
        ModuliOrder { letters }
    }

    pub fn flipped(&self) -> ModuliOrder {
        ModuliOrder {
            letters: self.letters.iter().map(|l| l.flipped()).collect(),
        }
    }

    pub fn reversed(&self) -> ModuliOrder {
        let mut letters = self.letters.clone();
        letters.reverse();
        ModuliOrder { letters }
    }
}

impl fmt::Display for ModuliOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, "<")?;
            }
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for ModuliOrder {
    type Err = Error;

    fn from_str(text: &str) -> Result<ModuliOrder> {
        let ae: ModuliOrderAE = text.parse()?;
        ae.as_strict().ok_or_else(|| {
            Error::Precondition("moduli order contains '=' where a strict order is required".into())
        })
    }
}

impl Serialize for ModuliOrder {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// A moduli order admitting equalities: letters plus a separator between
/// each adjacent pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuliOrderAE {
    letters: Vec<Letter>,
    seps: Vec<Separator>,
}

impl ModuliOrderAE {
    pub fn new(letters: Vec<Letter>, seps: Vec<Separator>) -> Result<ModuliOrderAE> {
        if !letters.is_empty() && seps.len() + 1 != letters.len() {
            return Err(Error::Precondition(
                "separator count must be one less than letter count".into(),
            ));
        }
        if letters.is_empty() && !seps.is_empty() {
            return Err(Error::Precondition("separators without letters".into()));
        }
        Ok(ModuliOrderAE { letters, seps })
    }

    pub fn empty() -> ModuliOrderAE {
        ModuliOrderAE {
            letters: Vec::new(),
            seps: Vec::new(),
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn separators(&self) -> &[Separator] {
        &self.seps
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn has_equalities(&self) -> bool {
        self.seps.contains(&Separator::Eq)
    }

    /// The strict order, when no equality occurs.
    pub fn as_strict(&self) -> Option<ModuliOrder> {
        if self.has_equalities() {
            None
        } else {
            Some(ModuliOrder::new(self.letters.clone()))
        }
    }

    /// Maximal `=`-joined groups of letters, in modulus order.
    pub fn groups(&self) -> Vec<Vec<Letter>> {
        let mut out = Vec::new();
        if self.letters.is_empty() {
            return out;
        }
        let mut cur = vec![self.letters[0]];
        for (i, sep) in self.seps.iter().enumerate() {
            match sep {
                Separator::Eq => cur.push(self.letters[i + 1]),
                Separator::Lt => {
                    out.push(std::mem::replace(&mut cur, vec![self.letters[i + 1]]));
                }
            }
        }
        out.push(cur);
        out
    }
}

impl From<ModuliOrder> for ModuliOrderAE {
    fn from(mo: ModuliOrder) -> ModuliOrderAE {
        let n = mo.letters.len();
        ModuliOrderAE {
            letters: mo.letters,
            seps: vec![Separator::Lt; n.saturating_sub(1)],
        }
    }
}

impl fmt::Display for ModuliOrderAE {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                let c = match self.seps[i - 1] {
                    Separator::Lt => '<',
                    Separator::Eq => '=',
                };
                write!(f, "{c}")?;
            }
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for ModuliOrderAE {
    type Err = Error;

    /// Exactly the emitted grammar: letters `P`/`N` joined by `<` or `=`,
    /// no whitespace.
    fn from_str(text: &str) -> Result<ModuliOrderAE> {
        if text.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut letters = Vec::new();
        let mut seps = Vec::new();
        let mut expect_letter = true;
        for (pos, c) in text.char_indices() {
            if expect_letter {
                match c {
                    'P' => letters.push(Letter::P),
                    'N' => letters.push(Letter::N),
                    _ => {
                        return Err(Error::Parse {
                            pos,
                            msg: format!("expected 'P' or 'N', found {c:?}"),
                        })
                    }
                }
            } else {
                match c {
                    '<' => seps.push(Separator::Lt),
                    '=' => seps.push(Separator::Eq),
                    _ => {
                        return Err(Error::Parse {
                            pos,
                            msg: format!("expected '<' or '=', found {c:?}"),
                        })
                    }
                }
            }
            expect_letter = !expect_letter;
        }
        if expect_letter {
            return Err(Error::Parse {
                pos: text.len(),
                msg: "dangling separator".into(),
            });
        }
        ModuliOrderAE::new(letters, seps)
    }
}

impl Serialize for ModuliOrderAE {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// A certified isolating interval for one distinct real root.
///
/// The open interval `(lo, hi)` contains exactly one distinct root of the
/// target polynomial, never contains 0, and the squarefree part changes sign
/// across it. `multiplicity` is the root's multiplicity in the target;
/// `root_sign` is `P` for a positive root, `N` for a negative one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoBox {
    pub lo: Rat,
    pub hi: Rat,
    pub multiplicity: u32,
    pub root_sign: Letter,
}

impl IsoBox {
    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    /// Closed interval of possible moduli for the root in this box.
    pub fn modulus_interval(&self) -> (Rat, Rat) {
        match self.root_sign {
            Letter::P => (self.lo.clone(), self.hi.clone()),
            Letter::N => (-self.hi.clone(), -self.lo.clone()),
        }
    }
}

/// Number of distinct real roots of `q` in `(a, b]`, by sign-variation
/// differences of the Sturm chain of the squarefree part. Errors when an
/// endpoint is a root (no silent perturbation).
pub fn sturm_count(q: &Poly, a: &Rat, b: &Rat) -> Result<usize> {
    if a >= b {
        return Err(Error::Precondition("need a < b".into()));
    }
    let mut an = Analysis::new(q);
    if an.sqf_sign(a) == 0 || an.sqf_sign(b) == 0 {
        return Err(Error::EndpointIsRoot);
    }
    Ok(an.count_open(a, b))
}

/// True when every root of `q` is real (with any multiplicities): the number
/// of distinct real roots equals the degree of the squarefree part. Constants
/// are vacuously hyperbolic.
pub fn is_hyperbolic(q: &Poly) -> bool {
    if q.degree() == 0 {
        return true;
    }
    let mut an = Analysis::new(q);
    an.distinct_real_roots() == an.sqf_degree()
}

/// Squarefree decomposition: pairwise-coprime squarefree monic factors with
/// their multiplicities, ascending by multiplicity; the product of
/// `factor^multiplicity` is `q` up to a positive constant. Constants
/// decompose to nothing.
pub fn squarefree_multiplicities(q: &Poly) -> Vec<(Poly, u32)> {
    if q.degree() == 0 {
        return Vec::new();
    }
    yun(q)
}

/// The even certificate polynomial for equal opposite moduli:
/// gcd(Q(x), (-1)^d Q(-x)) normalized monic. Its root pairs {a, -a} are
/// exactly the opposite-root pairs of `q`; the constant 1 means no positive
/// root of `q` has a negative root of equal modulus.
pub fn equal_moduli_pairs(q: &Poly) -> Result<Poly> {
    if q.constant_term().is_zero() {
        return Err(Error::RootAtZero);
    }
    if q.degree() == 0 {
        return Ok(Poly::one());
    }
    let a = ZPoly::from_poly(q);
    let b = ZPoly::from_poly(&q.negate_arg());
    let g = gcd_primitive(&a, &b);
    if g.is_constant() {
        Ok(Poly::one())
    } else {
        let even = g.to_poly_monic();
        debug_assert!(even.is_even_function());
        Ok(even)
    }
}

/// One box per distinct root of a hyperbolic polynomial with nonzero
/// constant term, sorted by root position.
pub fn isolate_roots(q: &Poly) -> Result<Vec<IsoBox>> {
    if q.degree() == 0 {
        if q.constant_term().is_zero() {
            return Err(Error::RootAtZero);
        }
        return Ok(Vec::new());
    }
    if q.constant_term().is_zero() {
        return Err(Error::RootAtZero);
    }
    let mut an = Analysis::new(q);
    if an.distinct_real_roots() != an.sqf_degree() {
        return Err(Error::NotHyperbolic);
    }
    let mut boxes = an.isolate(q)?;
    boxes.sort_by(|a, b| a.lo.cmp(&b.lo));
    let with_mult: u32 = boxes.iter().map(|b| b.multiplicity).sum();
    debug_assert_eq!(with_mult as usize, q.degree());
    Ok(boxes)
}

/// A sub-box for the same root with width at most `width_bound`, by repeated
/// exact bisection of the squarefree part.
pub fn refine_box(q: &Poly, b: &IsoBox, width_bound: &Rat) -> Result<IsoBox> {
    if !width_bound.is_positive() {
        return Err(Error::Precondition("width bound must be positive".into()));
    }
    if b.lo >= b.hi {
        return Err(Error::InvalidBox);
    }
    // 0 must not lie in (lo, hi]
    if b.lo.is_negative() && !b.hi.is_negative() {
        return Err(Error::InvalidBox);
    }
    let mut an = Analysis::new(q);
    if an.sqf_sign(&b.lo) == 0 || an.sqf_sign(&b.hi) == 0 {
        return Err(Error::InvalidBox);
    }
    if an.count_open(&b.lo, &b.hi) != 1 {
        return Err(Error::InvalidBox);
    }
    let (lo, hi) = an.refine(b.lo.clone(), b.hi.clone(), width_bound);
    Ok(IsoBox {
        lo,
        hi,
        multiplicity: b.multiplicity,
        root_sign: b.root_sign,
    })
}

/// The moduli order admitting equalities of a hyperbolic polynomial with
/// nonzero constant term. `=` appears exactly between a certified opposite
/// pair and between the repeated letters of a multiple root; everything else
/// is separated by `<` once interval refinement certifies strict order.
pub fn moduli_order(q: &Poly) -> Result<ModuliOrderAE> {
    if q.degree() == 0 {
        if q.constant_term().is_zero() {
            return Err(Error::RootAtZero);
        }
        return Ok(ModuliOrderAE::empty());
    }
    if q.constant_term().is_zero() {
        return Err(Error::RootAtZero);
    }
    let mut an = Analysis::new(q);
    if an.distinct_real_roots() != an.sqf_degree() {
        return Err(Error::NotHyperbolic);
    }
    let mut boxes = an.isolate(q)?;

    // Certificate for equal opposite moduli, computed lazily: most inputs
    // have all-distinct moduli and never need the gcd.
    let mut pair_flags: Option<Vec<bool>> = None;
    let pairs: Vec<(usize, usize)> = 'outer: {
        for _round in 0..4096 {
            let intervals: Vec<(Rat, Rat)> = boxes.iter().map(|b| b.modulus_interval()).collect();
            let mut overlaps: Vec<(usize, usize)> = Vec::new();
            for i in 0..boxes.len() {
                for j in (i + 1)..boxes.len() {
                    if boxes[i].root_sign == boxes[j].root_sign {
                        continue;
                    }
                    let (alo, ahi) = &intervals[i];
                    let (blo, bhi) = &intervals[j];
                    if alo <= bhi && blo <= ahi {
                        overlaps.push((i, j));
                    }
                }
            }
            if overlaps.is_empty() {
                break 'outer Vec::new();
            }
            let flags = pair_flags.get_or_insert_with(|| an.opposite_pair_flags(q, &boxes));
            let mut to_refine: Vec<usize> = Vec::new();
            let mut partner_count = vec![0usize; boxes.len()];
            for &(i, j) in &overlaps {
                if flags[i] && flags[j] {
                    partner_count[i] += 1;
                    partner_count[j] += 1;
                } else {
                    to_refine.push(i);
                    to_refine.push(j);
                }
            }
            if to_refine.is_empty() {
                if overlaps
                    .iter()
                    .all(|&(i, j)| partner_count[i] == 1 && partner_count[j] == 1)
                {
                    break 'outer overlaps;
                }
                for &(i, j) in &overlaps {
                    if partner_count[i] > 1 || partner_count[j] > 1 {
                        to_refine.push(i);
                        to_refine.push(j);
                    }
                }
            }
            to_refine.sort_unstable();
            to_refine.dedup();
            for idx in to_refine {
                let b = &boxes[idx];
                let half = b.width() / pow2(1);
                let (lo, hi) = an.refine(b.lo.clone(), b.hi.clone(), &half);
                boxes[idx].lo = lo;
                boxes[idx].hi = hi;
            }
        }
        return Err(Error::Falsified(
            "moduli separation did not converge (internal bug)".into(),
        ));
    };

    // Assemble groups in increasing modulus order.
    let paired: HashMap<usize, usize> = pairs.iter().flat_map(|&(i, j)| [(i, j), (j, i)]).collect();
    let mut groups: Vec<(Rat, Vec<usize>)> = Vec::new();
    for i in 0..boxes.len() {
        let (mlo, _) = boxes[i].modulus_interval();
        match paired.get(&i) {
            None => groups.push((mlo, vec![i])),
            Some(&j) if i < j => {
                let (olo, _) = boxes[j].modulus_interval();
                let key = if mlo > olo { mlo } else { olo };
                // negative-root member listed first
                let members = if boxes[i].root_sign == Letter::N {
                    vec![i, j]
                } else {
                    vec![j, i]
                };
                groups.push((key, members));
            }
            Some(_) => {}
        }
    }
    groups.sort_by(|a, b| a.0.cmp(&b.0));

    let mut letters = Vec::new();
    let mut seps = Vec::new();
    for (gi, (_, members)) in groups.iter().enumerate() {
        let mut first = true;
        for &idx in members {
            for _ in 0..boxes[idx].multiplicity {
                if !first {
                    seps.push(Separator::Eq);
                } else if gi > 0 {
                    seps.push(Separator::Lt);
                }
                letters.push(boxes[idx].root_sign);
                first = false;
            }
        }
    }
    debug_assert_eq!(letters.len(), q.degree());
    ModuliOrderAE::new(letters, seps)
}

/// The strict moduli order; errors when any two moduli coincide.
pub fn strict_moduli_order(q: &Poly) -> Result<ModuliOrder> {
    moduli_order(q)?.as_strict().ok_or_else(|| {
        Error::Precondition("polynomial has equal moduli; no strict order exists".into())
    })
}

/// Exact root-counting session: primitive integer squarefree part, its Sturm
/// chain, and a memo of sign variations per evaluation point.
struct Analysis {
    z: ZPoly,
    sqf: ZPoly,
    chain: SturmChain,
    squarefree: bool,
    bound_hi: Rat,
    var_cache: HashMap<Rat, usize>,
}

impl Analysis {
    fn new(q: &Poly) -> Analysis {
        let z = ZPoly::from_poly(q);
        let (chain0, tail) = SturmChain::build(&z);
        let squarefree = tail.is_constant();
        let (sqf, chain) = if squarefree {
            (z.clone(), chain0)
        } else {
            let sqf = squarefree_part(&z, &tail);
            let (chain, _) = SturmChain::build(&sqf);
            (sqf, chain)
        };
        let bound_hi = pow2_ceil(&zpoly_cauchy_bound(&sqf));
        Analysis {
            z,
            sqf,
            chain,
            squarefree,
            bound_hi,
            var_cache: HashMap::new(),
        }
    }

    fn sqf_degree(&self) -> usize {
        if self.sqf.is_constant() {
            0
        } else {
            self.sqf.degree()
        }
    }

    fn sqf_sign(&self, x: &Rat) -> i8 {
        self.sqf.sign_at_rat(x)
    }

    fn variations(&mut self, x: &Rat) -> usize {
        if let Some(&v) = self.var_cache.get(x) {
            return v;
        }
        let v = self.chain.variations_at(x);
        self.var_cache.insert(x.clone(), v);
        v
    }

    /// Distinct roots in the open interval (a, b); endpoints must not be
    /// roots.
    fn count_open(&mut self, a: &Rat, b: &Rat) -> usize {
        debug_assert!(a < b);
        debug_assert!(self.sqf_sign(a) != 0 && self.sqf_sign(b) != 0);
        let va = self.variations(a);
        let vb = self.variations(b);
        debug_assert!(va >= vb);
        va - vb
    }

    fn distinct_real_roots(&mut self) -> usize {
        let hi = self.bound_hi.clone();
        let lo = -hi.clone();
        self.count_open(&lo, &hi)
    }

    /// Bisection midpoint. Within an octave the arithmetic mean; across many
    /// octaves a power of two near the geometric mean, so widely separated
    /// moduli split in logarithmically many probes.
    fn midpoint(lo: &Rat, hi: &Rat) -> Rat {
        debug_assert!(lo < hi);
        let negative = !hi.is_positive();
        let (alo, ahi) = if negative {
            (-hi.clone(), -lo.clone())
        } else {
            (lo.clone(), hi.clone())
        };
        debug_assert!(alo.is_positive());
        let e_lo = floor_log2(&alo);
        let e_hi = floor_log2(&ahi);
        let m = if e_hi - e_lo >= 3 {
            let cand = pow2((e_lo + e_hi).div_euclid(2));
            if cand > alo && cand < ahi {
                cand
            } else {
                (&alo + &ahi) / pow2(1)
            }
        } else {
            (&alo + &ahi) / pow2(1)
        };
        if negative {
            -m
        } else {
            m
        }
    }

    /// Shrink (lo, hi) around its single root until the width is at most
    /// `bound`.
    fn refine(&mut self, mut lo: Rat, mut hi: Rat, bound: &Rat) -> (Rat, Rat) {
        debug_assert_eq!(self.count_open(&lo, &hi), 1);
        while &(&hi - &lo) > bound {
            let m = (&lo + &hi) / pow2(1);
            if self.sqf_sign(&m) == 0 {
                // the root is exactly m: certify a tiny interval around it
                let mut w = std::cmp::min(&m - &lo, &hi - &m) / pow2(2);
                let target = bound / pow2(1);
                if w > target {
                    w = target;
                }
                loop {
                    let a = &m - &w;
                    let b = &m + &w;
                    if self.sqf_sign(&a) != 0 && self.sqf_sign(&b) != 0 {
                        return (a, b);
                    }
                    w /= pow2(1);
                }
            }
            if self.count_open(&lo, &m) == 1 {
                hi = m;
            } else {
                lo = m;
            }
        }
        (lo, hi)
    }

    /// Isolating boxes for every distinct root, multiplicities attached.
    /// Requires no root at zero (checked by callers via the constant term).
    fn isolate(&mut self, q: &Poly) -> Result<Vec<IsoBox>> {
        let hi = self.bound_hi.clone();
        let lo_mag = pow2_floor(&zpoly_min_modulus_bound(&self.sqf)?);
        let mut intervals: Vec<(Rat, Rat)> = Vec::new();

        for (a, b) in [(lo_mag.clone(), hi.clone()), (-hi.clone(), -lo_mag.clone())] {
            let n = self.count_open(&a, &b);
            let mut stack = vec![(a, b, n)];
            while let Some((lo, hi, n)) = stack.pop() {
                match n {
                    0 => {}
                    1 => intervals.push((lo, hi)),
                    _ => {
                        let m = Self::midpoint(&lo, &hi);
                        if self.sqf_sign(&m) == 0 {
                            // exact rational root at the probe point
                            let mut w = std::cmp::min(&m - &lo, &hi - &m) / pow2(2);
                            loop {
                                let a = &m - &w;
                                let b = &m + &w;
                                if self.sqf_sign(&a) != 0
                                    && self.sqf_sign(&b) != 0
                                    && self.count_open(&a, &b) == 1
                                {
                                    intervals.push((a.clone(), b.clone()));
                                    let left = self.count_open(&lo, &a);
                                    stack.push((lo, a, left));
                                    let right = self.count_open(&b, &hi);
                                    stack.push((b, hi, right));
                                    break;
                                }
                                w /= pow2(1);
                            }
                        } else {
                            let left = self.count_open(&lo, &m);
                            stack.push((lo, m.clone(), left));
                            stack.push((m, hi, n - left));
                        }
                    }
                }
            }
        }

        // multiplicities from the squarefree decomposition
        let decomposition = if self.squarefree { None } else { Some(yun(q)) };
        let mut out = Vec::with_capacity(intervals.len());
        for (lo, hi) in intervals {
            let root_sign = if lo.is_negative() {
                Letter::N
            } else {
                Letter::P
            };
            let multiplicity = match &decomposition {
                None => 1,
                Some(factors) => {
                    let mut found = None;
                    for (factor, mult) in factors {
                        let sa = factor.eval_sign(&lo);
                        let sb = factor.eval_sign(&hi);
                        debug_assert!(sa != Sign::Zero && sb != Sign::Zero);
                        if sa != sb {
                            found = Some(*mult);
                            break;
                        }
                    }
                    found.ok_or_else(|| {
                        Error::Falsified("no squarefree factor changes sign on a box".into())
                    })?
                }
            };
            out.push(IsoBox {
                lo,
                hi,
                multiplicity,
                root_sign,
            });
        }
        Ok(out)
    }

    /// For each box, whether its root also has its negation as a root
    /// (certified by the gcd with the argument-negated polynomial).
    fn opposite_pair_flags(&mut self, q: &Poly, boxes: &[IsoBox]) -> Vec<bool> {
        let reflected = ZPoly::from_poly(&q.negate_arg());
        let g = gcd_primitive(&self.z, &reflected);
        if g.is_constant() {
            return vec![false; boxes.len()];
        }
        let (_, tail) = SturmChain::build(&g);
        let g_sqf = squarefree_part(&g, &tail);
        let (g_chain, _) = SturmChain::build(&g_sqf);
        boxes
            .iter()
            .map(|b| {
                debug_assert!(g_sqf.sign_at_rat(&b.lo) != 0 && g_sqf.sign_at_rat(&b.hi) != 0);
                g_chain.variations_at(&b.lo) > g_chain.variations_at(&b.hi)
            })
            .collect()
    }
}

fn zpoly_cauchy_bound(z: &ZPoly) -> Rat {
    z.to_poly_monic().cauchy_bound()
}

fn zpoly_min_modulus_bound(z: &ZPoly) -> Result<Rat> {
    z.to_poly_monic().min_modulus_bound()
}

/// Yun's squarefree decomposition over Q. Factors come out monic, ascending
/// by multiplicity; trivial (constant) factors are dropped.
fn yun(q: &Poly) -> Vec<(Poly, u32)> {
    let d = q.derivative().expect("decomposition needs degree >= 1");
    let g = gcd_q(q, &d);
    if g.degree() == 0 {
        return vec![(q.monic(), 1)];
    }
    let mut out = Vec::new();
    let mut b = div_exact_q(q.coeffs(), g.coeffs());
    let mut c = div_exact_q(d.coeffs(), g.coeffs());
    let mut d1 = raw_sub(&c, &raw_derivative(&b));
    let mut i: u32 = 1;
    while raw_degree(&b) > 0 {
        let a = if raw_is_zero(&d1) {
            b.clone()
        } else {
            let pa = Poly::new(b.clone()).expect("nonzero");
            let pb = Poly::new(d1.clone()).expect("nonzero");
            gcd_q(&pa, &pb).coeffs().to_vec()
        };
        if raw_degree(&a) > 0 {
            out.push((Poly::new(a.clone()).expect("nonzero").monic(), i));
        }
        b = div_exact_q(&b, &a);
        if raw_is_zero(&d1) {
            break;
        }
        c = div_exact_q(&d1, &a);
        d1 = raw_sub(&c, &raw_derivative(&b));
        i += 1;
    }
    out
}

/// Monic gcd over Q, via the primitive integer gcd.
fn gcd_q(a: &Poly, b: &Poly) -> Poly {
    let g = gcd_primitive(&ZPoly::from_poly(a), &ZPoly::from_poly(b));
    if g.is_constant() {
        Poly::one()
    } else {
        g.to_poly_monic()
    }
}

// Raw helpers on descending coefficient vectors (the zero polynomial is
// representable here, unlike in `Poly`).

fn raw_trim(mut v: Vec<Rat>) -> Vec<Rat> {
    let lead = v.iter().position(|c| !c.is_zero());
    match lead {
        None => Vec::new(),
        Some(k) => {
            v.drain(..k);
            v
        }
    }
}

fn raw_is_zero(v: &[Rat]) -> bool {
    v.is_empty()
}

fn raw_degree(v: &[Rat]) -> usize {
    v.len().saturating_sub(1)
}

fn raw_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    let mut out = vec![Rat::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[n - a.len() + i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[n - b.len() + i] -= c;
    }
    raw_trim(out)
}

fn raw_derivative(v: &[Rat]) -> Vec<Rat> {
    if v.len() <= 1 {
        return Vec::new();
    }
    let d = v.len() - 1;
    v.iter()
        .take(d)
        .enumerate()
        .map(|(i, c)| c * Rat::from_integer((d - i).into()))
        .collect()
}

/// Exact long division; the use sites guarantee divisibility.
fn div_exact_q(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    assert!(!b.is_empty());
    let mut rem: Vec<Rat> = a.to_vec();
    let mut quot: Vec<Rat> = Vec::new();
    while rem.len() >= b.len() {
        let q = &rem[0] / &b[0];
        for (i, bc) in b.iter().enumerate() {
            let prod = &q * bc;
            rem[i] -= prod;
        }
        debug_assert!(rem[0].is_zero());
        rem.remove(0);
        quot.push(q);
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()), "inexact division");
    raw_trim(quot)
}
