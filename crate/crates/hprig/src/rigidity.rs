//! Rigidity analysis: which moduli orders force a unique sign pattern, what
//! that pattern is, and desk-scale verification harnesses for the
//! classification, the two-letter witness sweep, the even/odd
//! vanishing-coefficient dichotomy, and the coefficient homotopy argument.
//!
//! A verdict of rigidity is always *by theorem* (the alternating orders);
//! sampling only ever serves as a consistency check, never as the basis of
//! the verdict.

use crate::isolator::{self, Letter, ModuliOrder, ModuliOrderAE};
use crate::polycore::{Poly, Rat, Sign, SignPattern};
use crate::realizer::{self, derive_seed, WitnessPair};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

/// The sign pattern `+ + - - + + - - ...` truncated to `len`.
pub fn sigma_plus(len: usize) -> SignPattern {
    let signs = (0..len)
        .map(|i| if i % 4 < 2 { Sign::Plus } else { Sign::Minus })
        .collect();
    SignPattern::strict(signs).expect("starts with +")
}

/// The sign pattern `+ - - + + - - + ...` truncated to `len`.
pub fn sigma_minus(len: usize) -> SignPattern {
    let signs = (0..len)
        .map(|i| {
            if i % 4 == 0 || i % 4 == 3 {
                Sign::Plus
            } else {
                Sign::Minus
            }
        })
        .collect();
    SignPattern::strict(signs).expect("starts with +")
}

/// The pattern `+ 0 - 0 + 0 - 0 ...` of an even product, truncated to `len`.
pub fn even_spaz(len: usize) -> SignPattern {
    let signs = (0..len)
        .map(|i| {
            if i % 2 == 1 {
                Sign::Zero
            } else if i % 4 == 0 {
                Sign::Plus
            } else {
                Sign::Minus
            }
        })
        .collect();
    SignPattern::new(signs, true).expect("starts with +")
}

/// The unique sign pattern of a rigid moduli order.
///
/// For a mixed alternating order the rule is a single test on the letter of
/// largest modulus: ending in `N` forces the `+ + - -` pattern, ending in
/// `P` the `+ - - +` pattern. Single-letter orders are the trivial rigid
/// cases: all-`N` gives all pluses, all-`P` strictly alternating signs.
pub fn expected_sp(mo: &ModuliOrder) -> Result<SignPattern> {
    let letters = mo.letters();
    if letters.is_empty() {
        return Err(Error::EmptyInput);
    }
    let len = letters.len() + 1;
    if mo.is_single_letter() {
        let signs = match letters[0] {
            Letter::N => vec![Sign::Plus; len],
            Letter::P => (0..len)
                .map(|i| if i % 2 == 0 { Sign::Plus } else { Sign::Minus })
                .collect(),
        };
        return SignPattern::strict(signs);
    }
    if !mo.is_alternating() {
        return Err(Error::NotAlternating);
    }
    Ok(match letters.last().unwrap() {
        Letter::N => sigma_plus(len),
        Letter::P => sigma_minus(len),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VerdictStatus {
    RigidByTheorem,
    NonrigidWitnessed,
    TrivialSingleSign,
}

/// Outcome of classifying one moduli order.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub status: VerdictStatus,
    pub predicted_sp: Option<SignPattern>,
    pub witness: Option<WitnessPair>,
}

/// Classify a moduli order: single-letter orders are trivially rigid, mixed
/// alternating orders are rigid with a predicted pattern, and everything
/// else is certified non-rigid by an explicit witness pair. With `validate`
/// set, the witness invariants are recomputed from scratch.
pub fn classify(mo: &ModuliOrder, validate: bool) -> Result<Verdict> {
    if mo.is_empty() {
        return Err(Error::EmptyInput);
    }
    if mo.is_single_letter() {
        return Ok(Verdict {
            status: VerdictStatus::TrivialSingleSign,
            predicted_sp: Some(expected_sp(mo)?),
            witness: None,
        });
    }
    if mo.is_alternating() {
        return Ok(Verdict {
            status: VerdictStatus::RigidByTheorem,
            predicted_sp: Some(expected_sp(mo)?),
            witness: None,
        });
    }
    let witness = realizer::witness_pair(mo)?;
    if validate {
        witness.validate()?;
    }
    Ok(Verdict {
        status: VerdictStatus::NonrigidWitnessed,
        predicted_sp: None,
        witness: Some(witness),
    })
}

/// Empirical set of sign patterns realized by `mo`: seeded random
/// realizations (re-drawn deterministically in the rare case a sample has a
/// vanishing coefficient and hence no strict pattern), plus the witness
/// patterns whenever the order admits a witness pair.
pub fn realizable_sps(mo: &ModuliOrder, samples: u32, seed: u64) -> Result<BTreeSet<SignPattern>> {
    if samples == 0 {
        return Err(Error::Precondition("need at least one sample".into()));
    }
    let mut out = BTreeSet::new();
    for i in 0..samples {
        let case_seed = derive_seed(seed, u64::from(i));
        let mut attempt = 0u64;
        loop {
            let q = realizer::sample_hp_with_mo(mo, derive_seed(case_seed, attempt));
            if !q.has_zero_coeff() {
                out.insert(q.sign_pattern(false)?);
                break;
            }
            attempt += 1;
            if attempt > 1000 {
                return Err(Error::Falsified(
                    "could not sample a realization without vanishing coefficients".into(),
                ));
            }
        }
    }
    let (p_count, n_count) = mo.counts();
    if mo.len() >= 3 && p_count > 0 && n_count > 0 && !mo.is_alternating() {
        let w = realizer::witness_pair(mo)?;
        out.insert(w.first.sign_pattern(false)?);
        out.insert(w.second.sign_pattern(false)?);
    }
    Ok(out)
}

/// Necessary condition for a sign pattern to be canonical (realizable only
/// by its canonical moduli order): among the run lengths, no two consecutive
/// entries exceed 1, and no interior entry equals 2. Necessary, not
/// sufficient.
pub fn canonical_sp_necessary(sp: &SignPattern) -> Result<bool> {
    let runs = sp.run_lengths()?;
    let consecutive_big = runs.windows(2).any(|w| w[0] > 1 && w[1] > 1);
    let interior_two = runs.len() >= 3 && runs[1..runs.len() - 1].contains(&2);
    Ok(!consecutive_big && !interior_two)
}

/// One verification failure, with enough reproduction data to re-check it
/// independently.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub input: String,
    pub expected: String,
    pub observed: String,
}

/// Aggregated outcome of a verification run.
#[derive(Clone, Debug)]
pub struct Report {
    pub cases_run: u64,
    pub cases_passed: u64,
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
    pub elapsed: Duration,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl Serialize for Report {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Report", 5)?;
        s.serialize_field("cases_run", &self.cases_run)?;
        s.serialize_field("cases_passed", &self.cases_passed)?;
        s.serialize_field("failures", &self.failures)?;
        s.serialize_field("notes", &self.notes)?;
        s.serialize_field("elapsed_s", &self.elapsed.as_secs_f64())?;
        s.end()
    }
}

struct Recorder {
    cases_run: u64,
    failures: Vec<Failure>,
    notes: Vec<String>,
    start: Instant,
}

impl Recorder {
    fn new() -> Recorder {
        Recorder {
            cases_run: 0,
            failures: Vec::new(),
            notes: Vec::new(),
            start: Instant::now(),
        }
    }

    fn pass(&mut self) {
        self.cases_run += 1;
    }

    fn fail(
        &mut self,
        input: impl Into<String>,
        expected: impl Into<String>,
        observed: impl Into<String>,
    ) {
        self.cases_run += 1;
        self.failures.push(Failure {
            input: input.into(),
            expected: expected.into(),
            observed: observed.into(),
        });
    }

    fn check(&mut self, ok: bool, fail: impl FnOnce() -> Failure) {
        if ok {
            self.pass();
        } else {
            self.cases_run += 1;
            self.failures.push(fail());
        }
    }

    fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    fn absorb(&mut self, r: Report) {
        self.cases_run += r.cases_run;
        self.failures.extend(r.failures);
        self.notes.extend(r.notes);
    }

    fn finish(self) -> Report {
        Report {
            cases_run: self.cases_run,
            cases_passed: self.cases_run - self.failures.len() as u64,
            failures: self.failures,
            notes: self.notes,
            elapsed: self.start.elapsed(),
        }
    }
}

/// One row of the rigid-order correspondence table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub d_mod_4: usize,
    pub mo_name: String,
    pub sp_name: String,
    pub last_three: String,
}

fn alternating_name(start: Letter, len: usize) -> String {
    let end = if len % 2 == 1 { start } else { start.flipped() };
    format!("r_{}{}", start.as_char(), end.as_char())
}

/// The eight (d mod 4, order, pattern, last-three-signs) rows, computed from
/// the `expected_sp` rule at representative degrees 4..7. Each residue row
/// lists the order ending in `P` (the `+ - - +` column) first, then the one
/// ending in `N`.
pub fn theorem1_rows() -> Vec<TableRow> {
    let mut rows = Vec::new();
    for residue in 0..4usize {
        let d = residue + 4;
        for end in [Letter::P, Letter::N] {
            let start = if d % 2 == 1 { end } else { end.flipped() };
            let mo = ModuliOrder::alternating(start, d);
            let sp = expected_sp(&mo).expect("alternating");
            let sp_name = if sp == sigma_plus(d + 1) {
                "Sigma+"
            } else {
                "Sigma-"
            };
            let signs = sp.signs();
            let last_three: Vec<String> = signs[signs.len() - 3..]
                .iter()
                .map(|s| s.as_char().to_string())
                .collect();
            rows.push(TableRow {
                d_mod_4: residue,
                mo_name: alternating_name(start, d),
                sp_name: sp_name.to_string(),
                last_three: last_three.join(" "),
            });
        }
    }
    rows
}

/// Plain-text rendering of the correspondence table, one line per residue
/// with both orders.
pub fn theorem1_table_text() -> String {
    let rows = theorem1_rows();
    let mut out = String::from("d mod 4 | MO    SP      last three | MO    SP      last three\n");
    for residue in 0..4 {
        let a = &rows[residue * 2];
        let b = &rows[residue * 2 + 1];
        out.push_str(&format!(
            "{:7} | {:5} {:7} {:10} | {:5} {:7} {:10}\n",
            residue, a.mo_name, a.sp_name, a.last_three, b.mo_name, b.sp_name, b.last_three
        ));
    }
    out
}

/// Sampling check of the rigid-order correspondence: for every degree up to
/// `max_degree` and both alternating orders of that degree, every seeded
/// realization must show exactly the predicted sign pattern; the eight
/// computed table rows are also checked against the fixed table.
pub fn verify_theorem1(max_degree: usize, samples: u32, seed: u64) -> Report {
    let mut rec = Recorder::new();
    let mut case_index: u64 = 0;
    for d in 1..=max_degree {
        for start in [Letter::P, Letter::N] {
            let mo = ModuliOrder::alternating(start, d);
            let expected = expected_sp(&mo).expect("alternating orders have a prediction");
            for _ in 0..samples {
                let s = derive_seed(seed, case_index);
                case_index += 1;
                let q = realizer::sample_hp_with_mo(&mo, s);
                match q.sign_pattern(false) {
                    Ok(sp) => rec.check(sp == expected, || Failure {
                        input: format!("mo={mo} seed={s} poly={q}"),
                        expected: expected.to_string(),
                        observed: sp.to_string(),
                    }),
                    Err(e) => rec.fail(
                        format!("mo={mo} seed={s} poly={q}"),
                        expected.to_string(),
                        format!("no strict sign pattern: {e}"),
                    ),
                }
            }
        }
    }
    let fixture: [(usize, &str, &str, &str); 8] = [
        (0, "r_NP", "Sigma-", "- + +"),
        (0, "r_PN", "Sigma+", "- - +"),
        (1, "r_PP", "Sigma-", "+ + -"),
        (1, "r_NN", "Sigma+", "- + +"),
        (2, "r_NP", "Sigma-", "+ - -"),
        (2, "r_PN", "Sigma+", "+ + -"),
        (3, "r_PP", "Sigma-", "- - +"),
        (3, "r_NN", "Sigma+", "+ - -"),
    ];
    let rows = theorem1_rows();
    for ((residue, mo_name, sp_name, last3), row) in fixture.iter().zip(rows.iter()) {
        let ok = row.d_mod_4 == *residue
            && row.mo_name == *mo_name
            && row.sp_name == *sp_name
            && row.last_three == *last3;
        rec.check(ok, || Failure {
            input: format!("table row d mod 4 = {residue}, {mo_name}"),
            expected: format!("{mo_name} {sp_name} {last3}"),
            observed: format!("{} {} {}", row.mo_name, row.sp_name, row.last_three),
        });
    }
    rec.finish()
}

/// Exhaustive witness sweep: every mixed non-alternating order of length 3
/// up to `max_len` must admit a validated witness pair.
pub fn verify_witnesses(max_len: usize) -> Report {
    let mut rec = Recorder::new();
    for len in 3..=max_len {
        for bits in 0u32..(1 << len) {
            let letters: Vec<Letter> = (0..len)
                .map(|i| {
                    if bits >> i & 1 == 1 {
                        Letter::P
                    } else {
                        Letter::N
                    }
                })
                .collect();
            let mo = ModuliOrder::new(letters);
            let (p_count, n_count) = mo.counts();
            if p_count == 0 || n_count == 0 || mo.is_alternating() {
                continue;
            }
            match realizer::witness_pair(&mo).and_then(|w| {
                w.validate()?;
                Ok(w)
            }) {
                Ok(_) => rec.pass(),
                Err(e) => rec.fail(format!("mo={mo}"), "validated witness pair", e.to_string()),
            }
        }
    }
    rec.finish()
}

/// Exact check of one homotopy step of the rigidity induction.
///
/// `v` must be hyperbolic with a strict alternating (or empty) moduli order
/// and the matching predicted pattern; `psi` is nonzero, strictly smaller in
/// modulus than every root of `v`, and of a sign whose letter may be
/// prepended to `v`'s order keeping it alternating. The family
/// `(x + t psi)(x - psi) v` is expanded exactly on the grid
/// `t = 1/grid ... 1`; each point must show the predicted pattern of the
/// extended order, except that a grid point where some coefficient is
/// exactly zero is recorded as an exception rather than a failure. At
/// `t = 1` the coefficient-sign identity
/// `sgn(c_j - psi^2 c_{j+2}) = sgn(c_j)` is asserted for every coefficient
/// of `v`.
pub fn verify_homotopy_step(v: &Poly, psi: &Rat, grid: u32) -> Result<Report> {
    if grid == 0 {
        return Err(Error::Precondition("grid must be >= 1".into()));
    }
    if psi.is_zero() {
        return Err(Error::Precondition("psi must be nonzero".into()));
    }
    let v_sp = v.sign_pattern(false)?;
    if !isolator::is_hyperbolic(v) {
        return Err(Error::NotHyperbolic);
    }
    let mo_v = if v.degree() == 0 {
        ModuliOrder::empty()
    } else {
        isolator::strict_moduli_order(v)?
    };
    if !mo_v.is_empty() {
        if !mo_v.is_alternating() {
            return Err(Error::Precondition(
                "the base polynomial must have an alternating moduli order".into(),
            ));
        }
        if v_sp != expected_sp(&mo_v)? {
            return Err(Error::Falsified(format!(
                "base polynomial {v} realizes {v_sp}, not the predicted pattern of {mo_v}"
            )));
        }
    }
    let psi_letter = Letter::of_root(psi);
    if let Some(&first) = mo_v.letters().first() {
        if first == psi_letter {
            return Err(Error::Precondition(
                "prepending the letter of psi must keep the order alternating".into(),
            ));
        }
        let abs_psi = psi.abs();
        if v.eval(&abs_psi).is_zero() || v.eval(&(-abs_psi.clone())).is_zero() {
            return Err(Error::Precondition(
                "psi must be smaller in modulus than every root of the base polynomial".into(),
            ));
        }
        if isolator::sturm_count(v, &(-abs_psi.clone()), &abs_psi)? != 0 {
            return Err(Error::Precondition(
                "psi must be smaller in modulus than every root of the base polynomial".into(),
            ));
        }
    }

    let end_letter = *mo_v.letters().last().unwrap_or(&psi_letter);
    let total_len = v.degree() + 3;
    let expected = match end_letter {
        Letter::N => sigma_plus(total_len),
        Letter::P => sigma_minus(total_len),
    };

    let mut rec = Recorder::new();
    let minus_psi_factor = Poly::new(vec![Rat::one(), -psi.clone()]).expect("monic");
    for k in 1..=grid {
        let t = Rat::new(BigInt::from(k), BigInt::from(grid));
        let plus_t_psi = Poly::new(vec![Rat::one(), &t * psi]).expect("monic");
        let z = v.multiply(&minus_psi_factor).multiply(&plus_t_psi);
        if z.has_zero_coeff() {
            rec.note(format!(
                "zero coefficient at t = {k}/{grid}: {z} (recorded exception)"
            ));
            rec.pass();
            continue;
        }
        let sp = z.sign_pattern(false)?;
        rec.check(sp == expected, || Failure {
            input: format!("v={v} psi={psi} t={k}/{grid} z={z}"),
            expected: expected.to_string(),
            observed: sp.to_string(),
        });
    }

    // t = 1 coefficient-sign identity
    let psi_sq = psi * psi;
    for j in 0..=v.degree() {
        let c_j = v.coeff_at(j);
        let c_j2 = v.coeff_at(j + 2);
        let lhs = &c_j - &psi_sq * &c_j2;
        rec.check(Sign::of(&lhs) == Sign::of(&c_j), || Failure {
            input: format!("v={v} psi={psi} j={j}"),
            expected: format!("sgn(c_{j} - psi^2 c_{}) = sgn(c_{j})", j + 2),
            observed: format!("c_{j}={c_j}, difference {lhs}"),
        });
    }
    Ok(rec.finish())
}

fn rand_rat(rng: &mut ChaCha8Rng) -> Rat {
    let num = 1 + rng.gen_range(0..1000u32);
    let den = 1 + rng.gen_range(0..100u32);
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Randomized harness over `verify_homotopy_step`: `samples` seeded
/// instances with admissible `(v, psi)` drawn at each degree.
pub fn verify_homotopy_random(samples: u32, grid: u32, seed: u64) -> Report {
    let mut rec = Recorder::new();
    for i in 0..samples {
        let s = derive_seed(seed, u64::from(i));
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let v_degree = rng.gen_range(0..=7usize);
        let (v, psi_letter) = if v_degree == 0 {
            let letter = if rng.gen_range(0..2u32) == 0 {
                Letter::P
            } else {
                Letter::N
            };
            (Poly::one(), letter)
        } else {
            let start = if rng.gen_range(0..2u32) == 0 {
                Letter::P
            } else {
                Letter::N
            };
            let mo = ModuliOrder::alternating(start, v_degree);
            let v = realizer::sample_hp_with_mo(&mo, derive_seed(s, 1));
            (v, start.flipped())
        };
        let bound = v
            .min_modulus_bound()
            .expect("sampled polynomials have nonzero constant term");
        let frac = Rat::new(
            BigInt::from(1 + rng.gen_range(0..99u32)),
            BigInt::from(101u32),
        );
        let magnitude = bound * frac;
        let psi = match psi_letter {
            Letter::P => magnitude,
            Letter::N => -magnitude,
        };
        match verify_homotopy_step(&v, &psi, grid) {
            Ok(r) => rec.absorb(r),
            Err(e) => rec.fail(
                format!("seed={s} v={v} psi={psi}"),
                "admissible homotopy instance",
                e.to_string(),
            ),
        }
    }
    rec.finish()
}

/// The two branches of the even-degree dichotomy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Theorem2Case {
    EvenCase,
    FullSpCase,
}

/// Can the letters of this weak order be arranged (permuting only within
/// `=`-groups) into the strictly alternating sequence starting with
/// `start`?
fn matches_weak_alternating(moae: &ModuliOrderAE, start: Letter) -> bool {
    let mut expected = start;
    for group in moae.groups() {
        let len = group.len();
        let p = group.iter().filter(|&&l| l == Letter::P).count();
        let n = len - p;
        let (have_first, have_second) = if expected == Letter::P {
            (p, n)
        } else {
            (n, p)
        };
        let need_first = len.div_ceil(2);
        let need_second = len / 2;
        if have_first != need_first || have_second != need_second {
            return false;
        }
        if len % 2 == 1 {
            expected = expected.flipped();
        }
    }
    true
}

/// For an even-degree hyperbolic polynomial whose moduli order matches an
/// alternating pattern under weak inequalities: decide whether it is the
/// even product (pattern `+ 0 - 0 ...`) or the mixed case with no vanishing
/// coefficient and the full predicted pattern, asserting the respective
/// contract.
pub fn classify_theorem2(q: &Poly) -> Result<Theorem2Case> {
    let d = q.degree();
    if d == 0 || !d.is_multiple_of(2) {
        return Err(Error::Precondition("even degree >= 2 required".into()));
    }
    if q.constant_term().is_zero() {
        return Err(Error::RootAtZero);
    }
    if q.leading().is_negative() {
        return Err(Error::NegativeLeadingCoefficient);
    }
    if !isolator::is_hyperbolic(q) {
        return Err(Error::NotHyperbolic);
    }
    let moae = isolator::moduli_order(q)?;
    let matches_p = matches_weak_alternating(&moae, Letter::P);
    let matches_n = matches_weak_alternating(&moae, Letter::N);
    if !matches_p && !matches_n {
        return Err(Error::Precondition(format!(
            "moduli order {moae} does not match an alternating weak pattern"
        )));
    }
    if q.is_even_function() {
        let spaz = q.sign_pattern(true)?;
        if spaz != even_spaz(d + 1) {
            return Err(Error::Falsified(format!(
                "even polynomial {q} shows {spaz}, not the alternating-with-zeros pattern"
            )));
        }
        return Ok(Theorem2Case::EvenCase);
    }
    let start = match (matches_p, matches_n) {
        (true, false) => Letter::P,
        (false, true) => Letter::N,
        _ => {
            return Err(Error::Falsified(format!(
                "non-even polynomial {q} matches both weak patterns"
            )))
        }
    };
    if q.has_zero_coeff() {
        return Err(Error::Falsified(format!(
            "mixed-case polynomial {q} has a vanishing coefficient"
        )));
    }
    let expected = expected_sp(&ModuliOrder::alternating(start, d))?;
    let sp = q.sign_pattern(false)?;
    if sp != expected {
        return Err(Error::Falsified(format!(
            "mixed-case polynomial {q} shows {sp}, expected {expected}"
        )));
    }
    Ok(Theorem2Case::FullSpCase)
}

/// Draw a positive pair modulus distinct from every root modulus of
/// `inner`.
fn fresh_pair_modulus(inner: &Poly, rng: &mut ChaCha8Rng) -> Rat {
    loop {
        let a = rand_rat(rng);
        if !inner.eval(&a).is_zero() && !inner.eval(&(-a.clone())).is_zero() {
            return a;
        }
    }
}

/// Sampling harness for the weak-order statements: odd degrees get products
/// `(x^2 - a^2) * Q` with `Q` realizing the alternating order two degrees
/// down (no vanishing coefficient, table pattern, and the coefficient-sign
/// identity); even degrees get both even products (alternating-with-zeros
/// pattern) and mixed products (full-pattern contract).
pub fn verify_theorem2(max_degree: usize, samples: u32, seed: u64) -> Report {
    let mut rec = Recorder::new();
    let mut case_index: u64 = 0;
    for d in 2..=max_degree {
        for i in 0..samples {
            let s = derive_seed(seed, case_index);
            case_index += 1;
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let start = if i % 2 == 0 { Letter::P } else { Letter::N };
            if d % 2 == 1 {
                let inner_mo = ModuliOrder::alternating(start, d - 2);
                let inner = realizer::sample_hp_with_mo(&inner_mo, derive_seed(s, 17));
                let a = fresh_pair_modulus(&inner, &mut rng);
                let square = &a * &a;
                let pair =
                    Poly::new(vec![Rat::one(), Rat::zero(), -square.clone()]).expect("monic");
                let product = inner.multiply(&pair);
                let expected =
                    expected_sp(&ModuliOrder::alternating(start, d)).expect("alternating");
                match product.sign_pattern(false) {
                    Ok(sp) => rec.check(sp == expected, || Failure {
                        input: format!("d={d} seed={s} a={a} poly={product}"),
                        expected: expected.to_string(),
                        observed: sp.to_string(),
                    }),
                    Err(e) => rec.fail(
                        format!("d={d} seed={s} a={a} poly={product}"),
                        "no vanishing coefficient",
                        e.to_string(),
                    ),
                }
                // the sign identity behind the expansion of the product
                let identity_holds = (0..=inner.degree()).all(|j| {
                    let c_j = inner.coeff_at(j);
                    let diff = &c_j - &square * inner.coeff_at(j + 2);
                    Sign::of(&diff) == Sign::of(&c_j)
                });
                rec.check(identity_holds, || Failure {
                    input: format!("d={d} seed={s} a={a} inner={inner}"),
                    expected: "sgn(q_j - a^2 q_(j+2)) = sgn(q_j) for all j".into(),
                    observed: "sign flip".into(),
                });
                if i % 25 == 0 {
                    let ok = isolator::moduli_order(&product)
                        .map(|moae| matches_weak_alternating(&moae, start))
                        .unwrap_or(false);
                    rec.check(ok, || Failure {
                        input: format!("d={d} seed={s} poly={product}"),
                        expected: format!("weak alternating order starting {}", start.as_char()),
                        observed: "mismatch".into(),
                    });
                }
            } else if i % 2 == 0 {
                // even product, occasionally with a repeated modulus
                let mut moduli: Vec<Rat> = (0..d / 2).map(|_| rand_rat(&mut rng)).collect();
                if i % 4 == 0 && moduli.len() >= 2 {
                    moduli[1] = moduli[0].clone();
                }
                let q = realizer::even_hp(&moduli).expect("positive moduli");
                let spaz = q.sign_pattern(true).expect("positive leading");
                rec.check(spaz == even_spaz(d + 1), || Failure {
                    input: format!("d={d} seed={s} poly={q}"),
                    expected: even_spaz(d + 1).to_string(),
                    observed: spaz.to_string(),
                });
                if i % 10 == 0 {
                    match classify_theorem2(&q) {
                        Ok(Theorem2Case::EvenCase) => rec.pass(),
                        other => rec.fail(
                            format!("d={d} seed={s} poly={q}"),
                            "EvenCase",
                            format!("{other:?}"),
                        ),
                    }
                }
            } else {
                // mixed: an alternating core, plus one opposite pair when
                // the degree allows
                let product = if d == 2 {
                    realizer::sample_hp_with_mo(
                        &ModuliOrder::alternating(start, 2),
                        derive_seed(s, 17),
                    )
                } else {
                    let inner_mo = ModuliOrder::alternating(start, d - 2);
                    let inner = realizer::sample_hp_with_mo(&inner_mo, derive_seed(s, 17));
                    let a = fresh_pair_modulus(&inner, &mut rng);
                    let square = &a * &a;
                    let pair = Poly::new(vec![Rat::one(), Rat::zero(), -square]).expect("monic");
                    inner.multiply(&pair)
                };
                match classify_theorem2(&product) {
                    Ok(Theorem2Case::FullSpCase) => rec.pass(),
                    other => rec.fail(
                        format!("d={d} seed={s} poly={product}"),
                        "FullSpCase",
                        format!("{other:?}"),
                    ),
                }
            }
        }
    }
    rec.finish()
}

/// Consistency sweep of the canonicity necessary condition over all strict
/// patterns with degree up to `max_degree`: the rigid patterns must fail it
/// from degree 3 on (and pass at 1 and 2), and the families known to be
/// canonical must pass it.
pub fn verify_canonical_necessary(max_degree: usize) -> Report {
    let mut rec = Recorder::new();
    let mut passing = 0u64;
    let mut total = 0u64;
    for d in 1..=max_degree {
        let len = d + 1;
        for bits in 0u64..(1 << d) {
            let mut signs = vec![Sign::Plus];
            for i in 0..d {
                signs.push(if bits >> i & 1 == 1 {
                    Sign::Minus
                } else {
                    Sign::Plus
                });
            }
            let sp = SignPattern::strict(signs).expect("starts with +");
            let verdict = canonical_sp_necessary(&sp).expect("strict pattern");
            total += 1;
            if verdict {
                passing += 1;
            }
            let runs = sp.run_lengths().expect("strict pattern");
            if sp == sigma_plus(len) || sp == sigma_minus(len) {
                let expected = d <= 2;
                rec.check(verdict == expected, || Failure {
                    input: format!("sp={sp}"),
                    expected: format!("necessary condition = {expected}"),
                    observed: format!("{verdict}"),
                });
            }
            let known_canonical = runs.len() == 1
                || (runs.len() == 2 && (runs[0] == 1 || runs[1] == 1))
                || (runs.len() == 3 && runs[0] == 1 && runs[2] == 1 && runs[1] >= 3)
                || (runs.len() == 3 && runs[1] == 1);
            if known_canonical {
                rec.check(verdict, || Failure {
                    input: format!("sp={sp} runs={runs:?}"),
                    expected: "necessary condition holds for a known-canonical family".into(),
                    observed: "condition failed".into(),
                });
            }
        }
    }
    rec.note(format!(
        "{passing} of {total} strict patterns up to degree {max_degree} satisfy the necessary condition"
    ));
    rec.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::rat;

    fn sp(text: &str) -> SignPattern {
        text.parse().unwrap()
    }

    fn mo(text: &str) -> ModuliOrder {
        text.parse().unwrap()
    }

    #[test]
    fn sigma_fixtures() {
        assert_eq!(sigma_plus(5), sp("+ + - - +"));
        assert_eq!(sigma_minus(4), sp("+ - - +"));
        assert_eq!(even_spaz(5), sp("+ 0 - 0 +"));
    }

    #[test]
    fn expected_sp_examples() {
        assert_eq!(expected_sp(&mo("P<N")).unwrap(), sp("+ + -"));
        assert_eq!(expected_sp(&mo("N<P<N")).unwrap(), sp("+ + - -"));
        assert_eq!(expected_sp(&mo("N<N<N")).unwrap(), sp("+ + + +"));
        assert_eq!(expected_sp(&mo("P<P<N")), Err(Error::NotAlternating));
        assert_eq!(expected_sp(&mo("P")).unwrap(), sp("+ -"));
        assert_eq!(expected_sp(&mo("P<P<P")).unwrap(), sp("+ - + -"));
    }

    #[test]
    fn classify_examples() {
        let v = classify(&mo("P<N<P<N"), false).unwrap();
        assert_eq!(v.status, VerdictStatus::RigidByTheorem);
        assert_eq!(v.predicted_sp.unwrap(), sp("+ + - - +"));
        assert!(v.witness.is_none());

        let v = classify(&mo("P<P<N"), true).unwrap();
        assert_eq!(v.status, VerdictStatus::NonrigidWitnessed);
        let w = v.witness.unwrap();
        assert_eq!(w.first.sign_pattern(false).unwrap(), sp("+ + - +"));
        assert_eq!(w.second.sign_pattern(false).unwrap(), sp("+ - - +"));

        let v = classify(&mo("P"), false).unwrap();
        assert_eq!(v.status, VerdictStatus::TrivialSingleSign);
        assert_eq!(v.predicted_sp.unwrap(), sp("+ -"));
    }

    #[test]
    fn realizable_sps_examples() {
        let set = realizable_sps(&mo("N<P<N"), 100, 7).unwrap();
        assert_eq!(set.len(), 1);
        assert!(set.contains(&sp("+ + - -")));

        let set = realizable_sps(&mo("P<P<N"), 100, 7).unwrap();
        assert!(set.contains(&sp("+ + - +")));
        assert!(set.contains(&sp("+ - - +")));
        assert!(set.len() >= 2);

        let set = realizable_sps(&mo("P"), 5, 1).unwrap();
        assert_eq!(set.len(), 1);
        assert!(set.contains(&sp("+ -")));
    }

    #[test]
    fn canonical_condition_examples() {
        assert!(!canonical_sp_necessary(&sp("+ + - -")).unwrap());
        assert!(canonical_sp_necessary(&sp("+ - - - +")).unwrap());
        assert!(canonical_sp_necessary(&sp("+ +")).unwrap());
        assert_eq!(canonical_sp_necessary(&sp("+ 0 -")), Err(Error::SpazInput));
    }

    #[test]
    fn sigma_canonicity_by_length() {
        for d in 1..=9usize {
            let expected = d <= 2;
            assert_eq!(
                canonical_sp_necessary(&sigma_plus(d + 1)).unwrap(),
                expected,
                "sigma_plus at degree {d}"
            );
            assert_eq!(
                canonical_sp_necessary(&sigma_minus(d + 1)).unwrap(),
                expected,
                "sigma_minus at degree {d}"
            );
        }
    }

    #[test]
    fn theorem1_small_run_passes() {
        let r = verify_theorem1(2, 10, 1);
        assert!(r.passed(), "failures: {:?}", r.failures);
        assert_eq!(r.cases_run, 2 * 2 * 10 + 8);
        assert_eq!(r.cases_passed, r.cases_run);
    }

    #[test]
    fn table_text_has_four_rows() {
        let text = theorem1_table_text();
        assert_eq!(text.lines().count(), 5);
        assert!(text.contains("r_NP"));
        assert!(text.contains("Sigma+"));
    }

    #[test]
    fn homotopy_degree_zero_example() {
        // (x - t)(x + 1): pattern + + - on the whole grid, with the even
        // product at t = 1 recorded as a zero-coefficient exception
        let r = verify_homotopy_step(&Poly::one(), &rat(-1, 1), 4).unwrap();
        assert!(r.passed(), "failures: {:?}", r.failures);
        assert_eq!(r.notes.len(), 1);
        assert!(r.notes[0].contains("t = 4/4"));
    }

    #[test]
    fn homotopy_cubic_example() {
        // v = x + 3, psi = 1: (x + t)(x - 1)(x + 3) stays + + - - on the
        // grid; derived by direct expansion x^3+(2+t)x^2+(2t-3)x-3t
        let v = Poly::parse("x+3").unwrap();
        let r = verify_homotopy_step(&v, &rat(1, 1), 8).unwrap();
        assert!(r.passed(), "failures: {:?}", r.failures);
        assert!(r.notes.is_empty());
    }

    #[test]
    fn homotopy_grid_one_checks_only_endpoint() {
        let v = Poly::parse("x+3").unwrap();
        let r = verify_homotopy_step(&v, &rat(1, 1), 1).unwrap();
        // one grid case plus the coefficient-identity cases for c_0, c_1
        assert_eq!(r.cases_run, 3);
        assert!(r.passed());
    }

    #[test]
    fn homotopy_preconditions() {
        let v = Poly::parse("x+3").unwrap();
        // wrong sign: prepending N to the order "N" is not alternating
        assert!(verify_homotopy_step(&v, &rat(-1, 1), 4).is_err());
        // modulus too large
        assert!(verify_homotopy_step(&v, &rat(5, 1), 4).is_err());
        assert!(verify_homotopy_step(&v, &rat(0, 1), 4).is_err());
    }

    #[test]
    fn classify_theorem2_examples() {
        let even = Poly::parse("x^4-5x^2+4").unwrap();
        assert_eq!(classify_theorem2(&even).unwrap(), Theorem2Case::EvenCase);

        // (x^2-1)(x-2)(x+3) = x^4+x^3-7x^2-x+6
        let mixed = Poly::parse("x^4+x^3-7x^2-x+6").unwrap();
        assert_eq!(classify_theorem2(&mixed).unwrap(), Theorem2Case::FullSpCase);

        let square = Poly::parse("x^2-1").unwrap();
        let repeated = square.multiply(&square);
        assert_eq!(
            classify_theorem2(&repeated).unwrap(),
            Theorem2Case::EvenCase
        );

        // odd degree rejected
        assert!(classify_theorem2(&Poly::parse("x^3-x").unwrap()).is_err());
    }

    #[test]
    fn theorem2_small_run_passes() {
        let r = verify_theorem2(4, 8, 1);
        assert!(r.passed(), "failures: {:?}", r.failures);
    }

    #[test]
    fn witness_sweep_small() {
        let r = verify_witnesses(4);
        assert!(r.passed(), "failures: {:?}", r.failures);
        assert_eq!(r.cases_run, (8 - 4) + (16 - 4));
    }

    #[test]
    fn canonical_sweep_small() {
        let r = verify_canonical_necessary(5);
        assert!(r.passed(), "failures: {:?}", r.failures);
        assert_eq!(r.notes.len(), 1);
    }

    #[test]
    fn report_json_shape() {
        let r = verify_theorem1(1, 1, 1);
        let v = serde_json::to_value(&r).unwrap();
        assert!(v.get("cases_run").is_some());
        assert!(v.get("cases_passed").is_some());
        assert!(v.get("failures").is_some());
        assert!(v.get("elapsed_s").is_some());
    }
}
