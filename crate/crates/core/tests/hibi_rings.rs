use proptest::prelude::*;

use edgering::arith::RatPoly;
use edgering::canonical::is_gorenstein_direct;
use edgering::hibi::{
    hibi_hilbert_series_prefix, is_level_hibi, make_poset, max_r_value, pi_poset, pi_prime_poset,
    r_value, upper_interval_pure_sufficient, ConditionNSequence, Hat, Poset,
};
use edgering::multipartite::Partition;
use edgering::polytope::Budget;

fn poset_strategy(max_n: usize) -> impl Strategy<Value = Poset> {
    (1..=max_n)
        .prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (
                Just(n),
                prop::collection::vec(prop::bool::weighted(0.3), pairs),
            )
        })
        .prop_map(|(n, bits)| {
            let mut rel = Vec::new();
            let mut it = bits.into_iter();
            for a in 0..n {
                for b in a + 1..n {
                    if it.next().unwrap() {
                        rel.push((a, b));
                    }
                }
            }
            make_poset(n, &rel).unwrap()
        })
}

/// Multichains of ideals by direct enumeration.
fn multichains_oracle(p: &Poset, m: u64) -> u128 {
    let ideals = p.ideals().unwrap();
    fn rec(ideals: &[u32], last: u32, left: u64) -> u128 {
        if left == 0 {
            return 1;
        }
        ideals
            .iter()
            .filter(|&&i| i & last == last)
            .map(|&i| rec(ideals, i, left - 1))
            .sum()
    }
    rec(&ideals, 0, m)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn upper_interval_purity_implies_level(p in poset_strategy(8)) {
        if upper_interval_pure_sufficient(&p) {
            prop_assert!(is_level_hibi(&p).unwrap());
        }
    }

    #[test]
    fn pure_posets_are_level(p in poset_strategy(8)) {
        if p.is_pure() {
            prop_assert!(is_level_hibi(&p).unwrap());
        }
    }

    #[test]
    fn max_r_value_witness_is_valid(p in poset_strategy(8)) {
        let (r, seq) = max_r_value(&p).unwrap();
        prop_assert_eq!(r_value(&p, &seq).unwrap(), r);
        prop_assert!(r >= p.rank_hat() as i64);
    }

    #[test]
    fn closing_with_the_top_does_not_change_r(p in poset_strategy(7)) {
        let (_, seq) = max_r_value(&p).unwrap();
        let r = r_value(&p, &seq).unwrap();
        let last = seq.pairs.last().map_or(Hat::Bottom, |&(_, x)| x);
        for x in 0..p.len() {
            let mut pairs = seq.pairs.clone();
            pairs.push((Hat::Top, Hat::Elem(x)));
            if let Ok(r2) = r_value(&p, &ConditionNSequence::new(pairs)) {
                prop_assert_eq!(r2, r, "{} then (1^, {})", last, x);
            }
        }
    }

    #[test]
    fn hilbert_function_counts_multichains(p in poset_strategy(6)) {
        let fast = hibi_hilbert_series_prefix(&p, 4).unwrap();
        for (m, &v) in fast.iter().enumerate() {
            prop_assert_eq!(v, multichains_oracle(&p, m as u64));
        }
    }

    #[test]
    fn hilbert_polynomial_degree_is_poset_size(p in poset_strategy(7)) {
        let n = p.len();
        let values = hibi_hilbert_series_prefix(&p, n as u64 + 2).unwrap();
        let values: Vec<_> = values.into_iter().map(num_bigint::BigInt::from).collect();
        let poly = RatPoly::interpolate(0, &values);
        prop_assert_eq!(poly.degree(), Some(n));
    }

    #[test]
    fn text_format_round_trip(p in poset_strategy(9)) {
        let q: Poset = p.to_string().parse().unwrap();
        prop_assert_eq!(p, q);
    }
}

#[test]
fn purity_of_two_chains_matches_gorenstein_edge_rings() {
    let b = Budget::default();
    for m in 1..=4 {
        for n in 1..=4 {
            let pure = pi_poset(m, n).unwrap().is_pure();
            assert_eq!(pure, m == n);
            let k = Partition::new(&[m + 1, n + 1]).unwrap();
            assert_eq!(pure, is_gorenstein_direct(&k, &b).unwrap(), "{k}");
        }
    }
}

#[test]
fn purity_of_primed_posets_matches_gorenstein_edge_rings() {
    let b = Budget::default();
    for m in 1..=4 {
        for n in 1..=4 {
            let pure = pi_prime_poset(m, n).unwrap().is_pure();
            let k = Partition::new(&[1, m, n]).unwrap();
            assert_eq!(pure, is_gorenstein_direct(&k, &b).unwrap(), "{k}");
        }
    }
}

#[test]
fn primed_levelness_is_symmetric() {
    for m in 1..=5 {
        for n in 1..=5 {
            assert_eq!(
                is_level_hibi(&pi_prime_poset(m, n).unwrap()).unwrap(),
                is_level_hibi(&pi_prime_poset(n, m).unwrap()).unwrap()
            );
        }
    }
}
