use num_bigint::BigInt;
use proptest::prelude::*;

use edgering::characterize::{
    almost_gorenstein_characterized, characterized_verdict, lemma_rephrase,
};
use edgering::hilbert::{ehrhart_closed_form_value, interior_by_reciprocity};
use edgering::multipartite::{brute_force_matching, Partition};
use edgering::polytope::{rho, Budget, LatticePoint, SupportSystem};

fn partition_strategy(max_n: usize, max_r: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1..=max_r, 2..=max_n).prop_map(|v| Partition::new(&v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn matching_criterion_agrees_with_backtracking(p in partition_strategy(5, 4)) {
        prop_assume!(p.d() <= 14);
        let found = brute_force_matching(&p, 14).unwrap();
        prop_assert_eq!(found.is_some(), p.has_perfect_matching());
        if let Some(m) = found {
            prop_assert_eq!(m.len() * 2, p.d());
        }
    }

    #[test]
    fn edge_count_is_sum_of_block_products(p in partition_strategy(6, 6)) {
        let r = p.parts();
        let mut expected = 0;
        for i in 0..r.len() {
            for j in i + 1..r.len() {
                expected += r[i] * r[j];
            }
        }
        prop_assert_eq!(p.edges().len(), expected);
    }

    #[test]
    fn parse_display_round_trip(v in prop::collection::vec(1usize..9, 2..6)) {
        let p = Partition::new(&v).unwrap();
        let q: Partition = p.to_string().parse().unwrap();
        prop_assert_eq!(p, q);
    }

    #[test]
    fn counts_match_closed_form_and_grow(p in partition_strategy(4, 3), m in 0u64..5) {
        let sys = SupportSystem::new(&p);
        let here = sys.count_points(m, false).unwrap();
        let next = sys.count_points(m + 1, false).unwrap();
        prop_assert!(here <= next);
        prop_assert_eq!(BigInt::from(here), ehrhart_closed_form_value(&p, m));
    }

    #[test]
    fn reciprocity_counts_interior_points(p in partition_strategy(4, 3), m in 1u64..6) {
        prop_assume!(p.n() >= 3);
        let sys = SupportSystem::new(&p);
        let interior = sys.count_points(m, true).unwrap();
        prop_assert_eq!(BigInt::from(interior), interior_by_reciprocity(&p, m).unwrap());
    }

    #[test]
    fn adding_an_edge_keeps_interior_points_interior(
        p in partition_strategy(4, 3),
        m in 1u64..5,
        pick in any::<prop::sample::Index>(),
        edge in any::<prop::sample::Index>(),
    ) {
        let sys = SupportSystem::new(&p);
        let pts = sys.enumerate_points(m, true, &Budget::default()).unwrap();
        prop_assume!(!pts.is_empty());
        let x = pick.get(&pts);
        let e = *edge.get(&p.edges());
        let y = x.plus_edge(e);
        prop_assert!(sys.membership(&y, m + 1, true).unwrap());
        prop_assert!(sys.membership(x, m, false).unwrap());
        let sum: Vec<u32> = x.coords.iter().zip(&rho(&p, e).coords).map(|(a, b)| a + b).collect();
        prop_assert_eq!(y, LatticePoint::new(sum));
    }

    #[test]
    fn characterized_gorenstein_is_level_and_almost_gorenstein(p in partition_strategy(9, 8)) {
        let v = characterized_verdict(&p);
        prop_assert!(!v.gorenstein || (v.level && v.almost_gorenstein));
    }
}

#[test]
fn lemma_rephrase_matches_characterization_up_to_d14() {
    let mut checked = 0;
    for p in Partition::all_up_to(14) {
        if p.d() % 2 != 0 || !p.in_main_range() {
            assert!(lemma_rephrase(&p).is_err());
            continue;
        }
        checked += 1;
        assert_eq!(
            lemma_rephrase(&p).unwrap(),
            almost_gorenstein_characterized(&p),
            "{p}"
        );
    }
    assert!(checked > 100);
}
