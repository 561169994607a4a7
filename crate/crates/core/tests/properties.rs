mod common;

use num_bigint::BigInt;
use proptest::prelude::*;

use ehrhart_forge::ehrhart::{
    count_points, counts, order_reversing_count, series_by_counting, series_by_triangulation,
};
use ehrhart_forge::families::{
    birkhoff, linear_extensions, matching_polytope, monoid_generation_check, order_polytope,
    MultiGraph, Poset,
};
use ehrhart_forge::polytope::{
    faces_of, read_polytope, validate_polytope, write_polytope, Inequality, IntegerPolytope,
    PolytopeData,
};
use ehrhart_forge::triangulation::{
    is_unimodular_triangulation, pulling_triangulation, pulling_triangulation_by_flags,
    PolytopalComplex, SimplicialComplex, VertexOrder,
};
use ehrhart_forge::Budgets;

fn budgets() -> Budgets {
    Budgets::default()
}

#[test]
fn complete_bipartite_matchings_are_birkhoff() {
    for n in 1..=3 {
        let b = birkhoff(n).unwrap();
        let g = MultiGraph::complete_bipartite(n, n);
        let mp = matching_polytope(&g, &budgets()).unwrap();
        // edge a * n + b joins a to n + b, matching entry (a, b)
        assert_eq!(mp.polytope.vertices(), b.polytope.vertices(), "n = {n}");
        assert_eq!(mp.polytope.dim(), b.polytope.dim());
    }
}

#[test]
fn containment_order_triangulation_counts_linear_extensions() {
    for p in common::small_posets(5) {
        let op = order_polytope(&p, &budgets()).unwrap();
        let lattice = faces_of(&op.polytope, 100_000).unwrap();
        let delta = pulling_triangulation(
            &PolytopalComplex::of_polytope(&lattice),
            &op.default_order(),
        );
        let ext = linear_extensions(&p, 1_000_000).unwrap();
        assert_eq!(
            delta.num_maximal_faces(),
            ext.len(),
            "poset {:?}",
            p.covers()
        );
    }
}

#[test]
fn birkhoff_validates_and_is_compressed_under_default_orders() {
    for n in 1..=4 {
        let b = birkhoff(n).unwrap();
        validate_polytope(b.polytope.data()).unwrap();
        let lattice = faces_of(&b.polytope, 100_000).unwrap();
        let order = b.order_with_simplex(&b.cyclic_simplex()).unwrap();
        let delta = pulling_triangulation(&PolytopalComplex::of_polytope(&lattice), &order);
        assert!(is_unimodular_triangulation(&b.polytope, &delta).unwrap());
    }
}

#[test]
fn polytope_files_round_trip() {
    let polytopes = [
        birkhoff(3).unwrap().polytope,
        order_polytope(&Poset::grid(2, 2).unwrap(), &budgets())
            .unwrap()
            .polytope,
        matching_polytope(&MultiGraph::cycle(6), &budgets())
            .unwrap()
            .polytope,
    ];
    for p in polytopes {
        let text = write_polytope(p.data());
        let back = read_polytope(&text).unwrap();
        assert_eq!(&back, p.data());
    }
}

#[test]
fn monoid_generation_on_corpus() {
    let b = budgets();
    let k33 = matching_polytope(&MultiGraph::complete_bipartite(3, 3), &b).unwrap();
    assert_eq!(monoid_generation_check(&k33.polytope, 2, &b).unwrap(), None);
    let op = order_polytope(&Poset::grid(2, 2).unwrap(), &b).unwrap();
    assert_eq!(monoid_generation_check(&op.polytope, 3, &b).unwrap(), None);
}

fn random_poset() -> impl Strategy<Value = Poset> {
    (1usize..=5).prop_flat_map(|m| {
        let pairs: Vec<(usize, usize)> = (1..=m)
            .flat_map(|i| (i + 1..=m).map(move |j| (i, j)))
            .collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            let rel: Vec<(usize, usize)> = pairs
                .iter()
                .zip(&keep)
                .filter(|(_, &k)| k)
                .map(|(&p, _)| p)
                .collect();
            Poset::from_relations(m, &rel).unwrap()
        })
    })
}

fn box_polytope(sides: &[i64]) -> IntegerPolytope {
    let q = sides.len();
    let mut vertices = vec![vec![]];
    for &s in sides {
        vertices = vertices
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                [0, s].into_iter().map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    let mut facets = Vec::new();
    for k in 0..q {
        let mut lo = vec![0; q];
        lo[k] = -1;
        let mut hi = vec![0; q];
        hi[k] = 1;
        facets.push(Inequality {
            normal: lo,
            offset: 0,
        });
        facets.push(Inequality {
            normal: hi,
            offset: sides[k],
        });
    }
    IntegerPolytope::new(PolytopeData {
        ambient_dim: q,
        vertices,
        facets,
        equalities: vec![],
    })
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn order_polytope_counts_are_monotone_order_reversing_maps(p in random_poset()) {
        let b = budgets();
        let op = order_polytope(&p, &b).unwrap();
        let c = counts(&op.polytope, 4, &b).unwrap();
        prop_assert!(c.windows(2).all(|w| w[0] <= w[1]));
        for r in 0..=4u64 {
            prop_assert_eq!(&c[r as usize], &order_reversing_count(&p, r, &b).unwrap());
        }
    }

    #[test]
    fn box_counts_are_products(sides in proptest::collection::vec(1i64..=3, 1..=3), r in 0u64..5) {
        let p = box_polytope(&sides);
        let want: BigInt = sides.iter().map(|&s| BigInt::from(s * r as i64 + 1)).product();
        prop_assert_eq!(count_points(&p, r, &budgets()).unwrap(), want);
    }

    #[test]
    fn random_orders_of_b3_agree(seq in Just((0..6usize).collect::<Vec<_>>()).prop_shuffle()) {
        let b = birkhoff(3).unwrap();
        let lattice = faces_of(&b.polytope, 10_000).unwrap();
        let order = VertexOrder::new(seq).unwrap();
        let full = PolytopalComplex::of_polytope(&lattice);
        let delta = pulling_triangulation(&full, &order);
        prop_assert_eq!(&delta, &pulling_triangulation_by_flags(&full, &order));
        let tri = series_by_triangulation(&b.polytope, &lattice, &order).unwrap();
        prop_assert_eq!(tri, series_by_counting(&b.polytope, &budgets()).unwrap());
        let text = delta.export(6);
        let (back, n) = SimplicialComplex::import(&text).unwrap();
        prop_assert_eq!(n, 6);
        prop_assert_eq!(back, delta);
    }
}
