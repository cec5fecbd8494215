//! Cross-module invariants.

mod common;

use itertools::Itertools;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use splitcode::acode::{code_from_design, SplittingACode};
use splitcode::construct::{develop_cyclic, family_u2};
use splitcode::design::{Block, Point};
use splitcode::params::{binomial, check_divisibility, lambda_level, Check};
use splitcode::rational::{from_int, normalize, ratio};
use splitcode::security::{
    deception_probability, message_marginal, perfect_secrecy_check, spoofing_bound,
};
use splitcode::verify::{count_covering_blocks, downgrade_check, verify_design};

#[test]
fn developed_family_matches_golden_rows() {
    let d1 = develop_cyclic(&family_u2(2, 1).unwrap()).unwrap();
    assert_eq!(d1.blocks, common::golden_design(1).blocks);
    let d2 = develop_cyclic(&family_u2(2, 2).unwrap()).unwrap();
    assert_eq!(d2.blocks, common::golden_design(2).blocks);
}

#[test]
fn family_designs_verify() {
    for c in 1..=3u32 {
        for n in 1..=3u32 {
            let d = develop_cyclic(&family_u2(c, n).unwrap()).unwrap();
            let r = verify_design(&d, 2).unwrap();
            let p = r
                .params
                .unwrap_or_else(|| panic!("c={c} n={n}: {:?}", r.witness));
            assert_eq!(
                (p.v, p.b, p.l, p.lambda),
                (
                    u64::from(2 * c * c * n + 1),
                    u64::from((2 * c * c * n + 1) * n),
                    u64::from(2 * c),
                    1
                )
            );
            assert!(downgrade_check(&d, 2).unwrap());
        }
    }
}

#[test]
fn level_counts_match_brute_force() {
    for (c, n) in [(1, 2), (2, 1), (2, 2), (3, 1)] {
        let d = develop_cyclic(&family_u2(c, n).unwrap()).unwrap();
        let p = verify_design(&d, 2).unwrap().params.unwrap();
        for s in 1..=2u64 {
            let expected = lambda_level(&p, s).unwrap();
            for subset in (1..=d.v).combinations(s as usize) {
                assert_eq!(
                    from_int(count_covering_blocks(&d, &subset).unwrap()),
                    expected
                );
            }
        }
        assert!(check_divisibility(&p).iter().all(|&(_, ok)| ok));
        assert_eq!(splitcode::params::check_fisher(&p), Check::Pass);
    }
}

#[test]
fn pair_coverage_total() {
    // Σ over t-subsets of coverage = b·c^t·C(u,t)
    for (c, n) in [(2, 1), (2, 2), (3, 1)] {
        let d = develop_cyclic(&family_u2(c, n).unwrap()).unwrap();
        let total: u64 = (1..=d.v)
            .combinations(2)
            .map(|s| count_covering_blocks(&d, &s).unwrap())
            .sum();
        assert_eq!(
            u128::from(total),
            d.b() as u128 * u128::from(c * c) * binomial(2, 2)
        );
    }
}

#[test]
fn lambda_one_codes_meet_spoofing_bounds() {
    for (c, n) in [(1, 1), (1, 3), (2, 1), (3, 2)] {
        let code = code_from_design(&develop_cyclic(&family_u2(c, n).unwrap()).unwrap()).unwrap();
        let (v, u, c) = (code.v() as i64, code.u() as i64, code.c() as i64);
        assert_eq!(deception_probability(&code, 0).unwrap(), ratio(c * u, v));
        assert_eq!(
            deception_probability(&code, 1).unwrap(),
            ratio(c * (u - 1), v - 1)
        );
    }
}

/// A random c-splitting code: each rule is a random arrangement of `u·c`
/// distinct messages.
fn arb_code() -> impl Strategy<Value = SplittingACode> {
    (2usize..=3, 1usize..=2, 1usize..=8)
        .prop_flat_map(|(u, c, b)| {
            let v = (u * c + 3) as u32;
            let rule = Just((1..=v).collect::<Vec<Point>>())
                .prop_shuffle()
                .prop_map(move |pts| {
                    Block::new(pts.chunks(c).take(u).map(|p| p.to_vec()).collect())
                });
            (
                Just(v),
                prop::collection::vec(rule, b),
                prop::collection::vec(0i64..5, b),
                prop::collection::vec(1i64..5, u),
                prop::collection::vec(1i64..5, b * u * c),
            )
        })
        .prop_map(|(v, rules, keys, sources, splits)| {
            let code = SplittingACode::new(v, rules).unwrap();
            let w = |xs: &[i64]| normalize(&xs.iter().map(|&x| ratio(x, 1)).collect::<Vec<_>>());
            let mut keys = keys;
            if keys.iter().all(|&k| k == 0) {
                keys[0] = 1;
            }
            let (u, c) = (code.u(), code.c());
            let split = splits
                .chunks(u * c)
                .map(|r| r.chunks(c).map(|x| w(x).unwrap()).collect())
                .collect();
            code.with_key_dist(w(&keys).unwrap())
                .unwrap()
                .with_source_dist(w(&sources).unwrap())
                .unwrap()
                .with_split_dist(split)
                .unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn deception_never_beats_the_lower_bound(code in arb_code()) {
        for i in 0..=code.u() {
            let pd = deception_probability(&code, i).unwrap();
            let bound = spoofing_bound(&code, i).unwrap();
            prop_assert!(pd >= bound, "order {}: {} < {}", i, pd, bound);
            prop_assert!(pd <= BigRational::one());
        }
    }

    #[test]
    fn posteriors_are_distributions(code in arb_code()) {
        let table = perfect_secrecy_check(&code);
        let total: BigRational = (1..=code.v()).map(|m| message_marginal(&code, m).unwrap()).sum();
        prop_assert!(total.is_one());
        prop_assert_eq!(table.message_marginals.iter().sum::<BigRational>(), total);
        for (row, pm) in table.posteriors.iter().zip(&table.message_marginals) {
            if pm.is_zero() {
                prop_assert!(row.iter().all(Option::is_none));
            } else {
                let s: BigRational = row.iter().map(|p| p.clone().unwrap()).sum();
                prop_assert!(s.is_one());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Uniform pair coverage forces uniform point coverage, so a mutant that
    /// still verifies at strength 2 must also pass the downgrade check.
    #[test]
    fn strength_two_implies_strength_one(
        row in 0usize..9,
        part in 0usize..2,
        slot in 0usize..2,
        to in 1u32..=9,
    ) {
        let mut d = common::golden_design(1);
        let mut parts = d.blocks[row].parts().to_vec();
        parts[part][slot] = to;
        d.blocks[row] = Block::new(parts);
        if verify_design(&d, 2).unwrap().ok {
            prop_assert!(downgrade_check(&d, 2).unwrap());
        }
    }
}
