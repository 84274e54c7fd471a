mod common;

use common::{copy_sets, graph_from_bits, has_perfect_tiling, max_packing, small_patterns};
use proptest::prelude::*;
use tiling_core::tiling::{enumerate_copies, max_tiling, perfect_tiling, verify_certificate, Budget};
use tiling_core::{Graph, GraphBuilder};

fn host() -> impl Strategy<Value = Graph> {
    (1usize..=9).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |b| graph_from_bits(n, &b))
    })
}

fn dense_host() -> impl Strategy<Value = Graph> {
    (1usize..=9).prop_flat_map(|n| {
        proptest::collection::vec(proptest::bool::weighted(0.75), n * (n - 1) / 2)
            .prop_map(move |b| graph_from_bits(n, &b))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn enumeration_matches_subset_scan(g in host(), which in 0usize..10) {
        let (_, h) = &small_patterns()[which];
        let got: Vec<Vec<usize>> = enumerate_copies(&g, h, None, None).copies.iter().map(|c| c.image()).collect();
        prop_assert_eq!(got, copy_sets(&g, h));
    }

    #[test]
    fn anchored_enumeration_matches(g in host(), which in 0usize..10, a in 0usize..9) {
        let (_, h) = &small_patterns()[which];
        let a = a % g.n();
        let got: Vec<Vec<usize>> = enumerate_copies(&g, h, Some(a), None).copies.iter().map(|c| c.image()).collect();
        let want: Vec<Vec<usize>> = copy_sets(&g, h).into_iter().filter(|s| s.contains(&a)).collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn perfect_matches_partition_oracle(g in dense_host(), which in 0usize..10) {
        let (_, h) = &small_patterns()[which];
        let got = perfect_tiling(&g, h).unwrap();
        prop_assert_eq!(got.is_some(), has_perfect_tiling(&g, h));
        if let Some(c) = got {
            prop_assert!(verify_certificate(&g, h, &c));
            prop_assert!(c.is_perfect(&g));
        }
    }

    #[test]
    fn max_matches_packing_oracle(g in host(), which in 0usize..10) {
        let (_, h) = &small_patterns()[which];
        let m = max_tiling(&g, h, Budget::unlimited()).unwrap();
        prop_assert!(m.optimal);
        prop_assert!(verify_certificate(&g, h, &m.certificate));
        prop_assert_eq!(m.certificate.size(), max_packing(&g, h));
        prop_assert!(m.certificate.size() * h.n() <= g.n());
        let perfect = perfect_tiling(&g, h).unwrap().is_some();
        prop_assert_eq!(perfect, m.certificate.is_perfect(&g));
    }

    #[test]
    fn adding_edges_keeps_yes(g in dense_host(), which in 0usize..10, extra in proptest::collection::vec((0usize..9, 0usize..9), 0..6)) {
        let (_, h) = &small_patterns()[which];
        if perfect_tiling(&g, h).unwrap().is_some() {
            let mut b = GraphBuilder::new(g.n());
            for (u, v) in g.edges() {
                b.add_edge(u, v).unwrap();
            }
            for (u, v) in extra {
                let (u, v) = (u % g.n(), v % g.n());
                if u != v {
                    b.add_edge(u, v).unwrap();
                }
            }
            prop_assert!(perfect_tiling(&b.build(), h).unwrap().is_some());
        }
    }
}
