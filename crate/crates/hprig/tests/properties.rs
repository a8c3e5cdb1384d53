//! Property-based invariants across the library, checked on randomized
//! inputs. Root-built polynomials are compared against the independent
//! oracle in `common`.

mod common;

use hprig::isolator::{self, Letter, ModuliOrder, ModuliOrderAE};
use hprig::polycore::{rat, Poly, Rat, Sign, SignPattern};
use hprig::realizer::{self, from_roots, RootList, Side};
use hprig::rigidity;
use proptest::prelude::*;
use std::collections::BTreeMap;

fn arb_rat() -> impl Strategy<Value = Rat> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

fn arb_nonzero_rat() -> impl Strategy<Value = Rat> {
    (prop_oneof![-40i64..=-1, 1i64..=40], 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

fn arb_poly() -> impl Strategy<Value = Poly> {
    (
        arb_nonzero_rat(),
        proptest::collection::vec(arb_rat(), 0..=6),
    )
        .prop_map(|(lead, rest)| {
            let mut coeffs = vec![lead];
            coeffs.extend(rest);
            Poly::new(coeffs).expect("leading nonzero")
        })
}

/// All coefficients nonzero, leading positive.
fn arb_strict_poly() -> impl Strategy<Value = Poly> {
    (
        (1i64..=40, 1i64..=12).prop_map(|(n, d)| rat(n, d)),
        proptest::collection::vec(arb_nonzero_rat(), 0..=6),
    )
        .prop_map(|(lead, rest)| {
            let mut coeffs = vec![lead];
            coeffs.extend(rest);
            Poly::new(coeffs).expect("leading nonzero")
        })
}

/// Distinct nonzero roots with multiplicities (degree <= 7).
fn arb_root_set() -> impl Strategy<Value = Vec<(Rat, u32)>> {
    proptest::collection::vec((arb_nonzero_rat(), 1u32..=2), 1..=4).prop_map(|entries| {
        let mut map: BTreeMap<Rat, u32> = BTreeMap::new();
        for (r, m) in entries {
            *map.entry(r).or_insert(0) += m;
        }
        map.into_iter().collect()
    })
}

fn arb_letters(max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    proptest::collection::vec(prop_oneof![Just(Letter::P), Just(Letter::N)], 1..=max_len)
}

/// Per-group (n_count, p_count) summaries of a weak order, in modulus
/// order. Group-level comparison sidesteps the fixed N-before-P display
/// convention inside `=` groups.
fn group_counts(ae: &ModuliOrderAE) -> Vec<(usize, usize)> {
    ae.groups()
        .iter()
        .map(|g| {
            let p = g.iter().filter(|&&l| l == Letter::P).count();
            (g.len() - p, p)
        })
        .collect()
}

proptest! {
    #[test]
    fn render_parse_identity(p in arb_poly()) {
        let text = p.to_string();
        prop_assert_eq!(Poly::parse(&text).unwrap(), p);
    }

    #[test]
    fn json_is_valid_and_descending(p in arb_poly()) {
        let v = serde_json::to_value(&p).unwrap();
        prop_assert_eq!(v["degree"].as_u64().unwrap() as usize, p.degree());
        prop_assert_eq!(v["coeffs"].as_array().unwrap().len(), p.degree() + 1);
    }

    #[test]
    fn negate_arg_involution(p in arb_poly()) {
        prop_assert_eq!(p.negate_arg().negate_arg(), p);
    }

    #[test]
    fn revert_involution(p in arb_poly()) {
        prop_assume!(!p.constant_term().eq(&rat(0, 1)));
        prop_assert_eq!(p.revert().unwrap().revert().unwrap(), p);
    }

    #[test]
    fn negate_arg_swaps_descartes_counts(p in arb_strict_poly()) {
        let (c, k) = p.sign_pattern(false).unwrap().descartes_counts();
        let flipped = p.negate_arg();
        let (c2, k2) = flipped.sign_pattern(false).unwrap().descartes_counts();
        prop_assert_eq!((c, k), (k2, c2));
    }

    #[test]
    fn multiplication_degree_and_evaluation(a in arb_poly(), b in arb_poly(), x in arb_rat()) {
        let prod = a.multiply(&b);
        prop_assert_eq!(prod.degree(), a.degree() + b.degree());
        prop_assert_eq!(prod.eval(&x), a.eval(&x) * b.eval(&x));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn moduli_order_matches_root_oracle(roots in arb_root_set()) {
        let q = from_roots(&RootList::new(roots.clone()).unwrap());
        let ae = isolator::moduli_order(&q).unwrap();
        prop_assert_eq!(ae.to_string(), common::oracle_mo(&roots));
    }

    #[test]
    fn hyperbolic_spaz_has_no_adjacent_zeros(roots in arb_root_set()) {
        let q = from_roots(&RootList::new(roots).unwrap());
        let spaz = q.sign_pattern(true).unwrap();
        let no_adjacent = spaz
            .signs()
            .windows(2)
            .all(|w| !(w[0] == Sign::Zero && w[1] == Sign::Zero));
        prop_assert!(no_adjacent);
    }

    #[test]
    fn descartes_counts_roots_of_hyperbolic(roots in arb_root_set()) {
        let q = from_roots(&RootList::new(roots.clone()).unwrap());
        prop_assume!(!q.has_zero_coeff());
        let (c, p) = q.sign_pattern(false).unwrap().descartes_counts();
        let pos: u32 = roots.iter().filter(|(r, _)| r > &rat(0, 1)).map(|(_, m)| m).sum();
        let neg: u32 = roots.iter().filter(|(r, _)| r < &rat(0, 1)).map(|(_, m)| m).sum();
        prop_assert_eq!((c, p), (pos as usize, neg as usize));
    }

    #[test]
    fn moduli_letters_count_descartes(roots in arb_root_set()) {
        let q = from_roots(&RootList::new(roots).unwrap());
        prop_assume!(!q.has_zero_coeff());
        let (c, p) = q.sign_pattern(false).unwrap().descartes_counts();
        let ae = isolator::moduli_order(&q).unwrap();
        let p_letters = ae.letters().iter().filter(|&&l| l == Letter::P).count();
        prop_assert_eq!((p_letters, ae.len() - p_letters), (c, p));
    }

    #[test]
    fn negate_arg_flips_moduli_order(roots in arb_root_set()) {
        let q = from_roots(&RootList::new(roots).unwrap());
        let ae = isolator::moduli_order(&q).unwrap();
        let flipped = isolator::moduli_order(&q.negate_arg()).unwrap();
        let expect: Vec<(usize, usize)> =
            group_counts(&ae).into_iter().map(|(n, p)| (p, n)).collect();
        prop_assert_eq!(group_counts(&flipped), expect);
    }

    #[test]
    fn revert_reverses_moduli_order(roots in arb_root_set()) {
        let q = from_roots(&RootList::new(roots).unwrap());
        let reverted = q.revert().unwrap().with_positive_leading();
        let ae = isolator::moduli_order(&q).unwrap();
        let rev = isolator::moduli_order(&reverted).unwrap();
        let mut expect = group_counts(&ae);
        expect.reverse();
        prop_assert_eq!(group_counts(&rev), expect);
    }

    #[test]
    fn strict_pairs_certificate_is_trivial(roots in arb_root_set()) {
        let q = from_roots(&RootList::new(roots.clone()).unwrap());
        let pairs = isolator::equal_moduli_pairs(&q).unwrap();
        let has_pair = roots.iter().any(|(r, _)| {
            roots.iter().any(|(s, _)| *s == -r.clone())
        });
        prop_assert_eq!(pairs.degree() > 0, has_pair);
        if pairs.degree() == 0 {
            let ae = isolator::moduli_order(&q).unwrap();
            let all_groups_single_root = ae.groups().iter().all(|g| {
                g.iter().all(|&l| l == g[0])
            });
            prop_assert!(all_groups_single_root);
        }
    }

    #[test]
    fn squarefree_decomposition_reassembles(roots in arb_root_set()) {
        let q = from_roots(&RootList::new(roots).unwrap());
        let factors = isolator::squarefree_multiplicities(&q);
        let mut acc = Poly::one();
        for (f, m) in &factors {
            for _ in 0..*m {
                acc = acc.multiply(f);
            }
        }
        // q is monic, factors are monic: the product is exactly q
        prop_assert_eq!(acc, q);
    }

    #[test]
    fn moae_text_round_trip(letters in arb_letters(8), bits in any::<u16>()) {
        let seps: Vec<_> = (0..letters.len().saturating_sub(1))
            .map(|i| if bits >> i & 1 == 1 {
                hprig::Separator::Eq
            } else {
                hprig::Separator::Lt
            })
            .collect();
        let ae = ModuliOrderAE::new(letters, seps).unwrap();
        let text = ae.to_string();
        prop_assert_eq!(text.parse::<ModuliOrderAE>().unwrap(), ae);
    }

    #[test]
    fn canonical_mo_counts_match_descartes(letters in arb_letters(9)) {
        // build a random strict pattern instead: reuse letters as sign seeds
        let mut signs = vec![Sign::Plus];
        signs.extend(letters.iter().map(|&l| if l == Letter::P { Sign::Plus } else { Sign::Minus }));
        let sp = SignPattern::strict(signs).unwrap();
        let mo = realizer::canonical_mo(&sp).unwrap();
        let (c, p) = sp.descartes_counts();
        let p_letters = mo.letters().iter().filter(|&&l| l == Letter::P).count();
        prop_assert_eq!((p_letters, mo.len() - p_letters), (c, p));
    }
}

/// Exhaustive realization round trip over every order of length 1..=8.
#[test]
fn realize_mo_round_trip_exhaustive_to_len_8() {
    for len in 1..=8usize {
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
            let q = realizer::realize_mo(&mo).unwrap();
            assert_eq!(
                isolator::strict_moduli_order(&q).unwrap(),
                mo,
                "round trip failed"
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn realize_sp_round_trip(letters in arb_letters(7)) {
        let mut signs = vec![Sign::Plus];
        signs.extend(letters.iter().map(|&l| if l == Letter::P { Sign::Plus } else { Sign::Minus }));
        let sp = SignPattern::strict(signs).unwrap();
        let q = realizer::realize_sp(&sp).unwrap();
        prop_assert_eq!(q.sign_pattern(false).unwrap(), sp.clone());
        prop_assert_eq!(
            isolator::strict_moduli_order(&q).unwrap(),
            realizer::canonical_mo(&sp).unwrap()
        );
    }

    #[test]
    fn realize_mo_round_trip(letters in arb_letters(6)) {
        let mo = ModuliOrder::new(letters);
        let q = realizer::realize_mo(&mo).unwrap();
        prop_assert_eq!(isolator::strict_moduli_order(&q).unwrap(), mo);
    }

    #[test]
    fn extend_mo_contract(
        letters in arb_letters(5),
        seed in any::<u64>(),
        left in any::<bool>(),
        p_letter in any::<bool>(),
    ) {
        let mo = ModuliOrder::new(letters);
        let mut attempt = 0u64;
        let q = loop {
            let q = realizer::sample_hp_with_mo(&mo, realizer::derive_seed(seed, attempt));
            if !q.has_zero_coeff() {
                break q;
            }
            attempt += 1;
        };
        let side = if left { Side::Left } else { Side::Right };
        let letter = if p_letter { Letter::P } else { Letter::N };
        let out = realizer::extend_mo(&q, side, letter).unwrap();
        let expected_mo = match side {
            Side::Left => mo.extended_left(letter),
            Side::Right => mo.extended_right(letter),
        };
        prop_assert_eq!(isolator::strict_moduli_order(&out).unwrap(), expected_mo);
        let sp_in = q.sign_pattern(false).unwrap();
        let sp_out = out.sign_pattern(false).unwrap();
        prop_assert_eq!(sp_out.len(), sp_in.len() + 1);
        match side {
            Side::Left => {
                prop_assert_eq!(&sp_out.signs()[..sp_in.len()], sp_in.signs());
                let last_in = *sp_in.signs().last().unwrap();
                let appended = *sp_out.signs().last().unwrap();
                let expected_sign = if letter == Letter::P { last_in.flipped() } else { last_in };
                prop_assert_eq!(appended, expected_sign);
            }
            Side::Right => {
                prop_assert_eq!(sp_out.signs()[0], Sign::Plus);
                let tail = &sp_out.signs()[1..];
                if letter == Letter::N {
                    prop_assert_eq!(tail, sp_in.signs());
                } else {
                    let flipped: Vec<Sign> = sp_in.signs().iter().map(|s| s.flipped()).collect();
                    prop_assert_eq!(tail, &flipped[..]);
                }
            }
        }
    }

    #[test]
    fn alternating_samples_match_prediction(start in any::<bool>(), len in 1usize..=10, seed in any::<u64>()) {
        let letter = if start { Letter::P } else { Letter::N };
        let mo = ModuliOrder::alternating(letter, len);
        let q = realizer::sample_hp_with_mo(&mo, seed);
        let expected = rigidity::expected_sp(&mo).unwrap();
        prop_assert_eq!(q.sign_pattern(false).unwrap(), expected);
    }
}
