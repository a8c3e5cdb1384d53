//! Shared helpers for the integration suites: an independent moduli-order
//! oracle over known roots and seeded root-set generators.
//!
//! The oracle never touches the isolation machinery: it sorts the known
//! roots by exact modulus and renders the letter string directly, so it can
//! stand as independent evidence against `isolator::moduli_order`.

#![allow(dead_code)]

use hprig::polycore::{rat, Poly, Rat};
use hprig::realizer::{from_roots, RootList};
use num_traits::Signed;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// Moduli-order string (grammar of `ModuliOrderAE`) computed directly from
/// known distinct roots with multiplicities: sorted by modulus, `=` inside
/// an equal-modulus group, negative root listed first within a group.
pub fn oracle_mo(roots: &[(Rat, u32)]) -> String {
    let mut items: Vec<(Rat, bool, u32)> = roots
        .iter()
        .map(|(r, m)| (r.abs(), r.is_negative(), *m))
        .collect();
    // modulus ascending; within a tie the negative root first
    items.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
    let mut out = String::new();
    let mut prev: Option<Rat> = None;
    for (modulus, negative, mult) in items {
        for _ in 0..mult {
            match &prev {
                None => {}
                Some(m) if *m == modulus => out.push('='),
                Some(_) => out.push('<'),
            }
            out.push(if negative { 'N' } else { 'P' });
            prev = Some(modulus.clone());
        }
    }
    out
}

pub fn rand_nonzero_rat(rng: &mut ChaCha8Rng) -> Rat {
    let n = 1 + rng.gen_range(0..60i64);
    let d = 1 + rng.gen_range(0..12i64);
    if rng.gen_range(0..2u32) == 0 {
        rat(n, d)
    } else {
        rat(-n, d)
    }
}

/// A set of distinct nonzero roots with multiplicities, total degree between
/// 1 and `max_degree`. `allow_mult` permits double roots;
/// `pair_percent` is the chance (per drawn root) of also inserting its
/// negation, which manufactures equal-modulus pairs.
pub fn random_root_set(
    rng: &mut ChaCha8Rng,
    max_degree: u32,
    allow_mult: bool,
    pair_percent: u32,
) -> Vec<(Rat, u32)> {
    let target = 1 + rng.gen_range(0..max_degree);
    let mut map: BTreeMap<Rat, u32> = BTreeMap::new();
    let mut total = 0u32;
    while total < target {
        let r = rand_nonzero_rat(rng);
        let mult = if allow_mult && rng.gen_range(0..4u32) == 0 && total + 2 <= target {
            2
        } else {
            1
        };
        *map.entry(r.clone()).or_insert(0) += mult;
        total += mult;
        if total < target && rng.gen_range(0..100u32) < pair_percent {
            *map.entry(-r).or_insert(0) += 1;
            total += 1;
        }
    }
    map.into_iter().collect()
}

/// A hyperbolic polynomial with all coefficients nonzero, plus its root
/// set; redraws until no coefficient vanishes.
pub fn random_hyperbolic_strict(
    rng: &mut ChaCha8Rng,
    max_degree: u32,
    allow_mult: bool,
) -> (Poly, Vec<(Rat, u32)>) {
    loop {
        let roots = random_root_set(rng, max_degree, allow_mult, 0);
        let q = from_roots(&RootList::new(roots.clone()).expect("nonzero roots"));
        if !q.has_zero_coeff() {
            return (q, roots);
        }
    }
}
