use std::collections::BTreeSet;

use hyperocta::census::{count_factorizations, FactorizationQuery};
use hyperocta::decide::{has_signed_fcpo, non_full_ordering};
use hyperocta::halgebra::{
    classify_full_cycle, cycle_decompose, cycle_type, normal_form, phi_project, psi_sign,
    recompose_cycles, FullCycleClass, GeneratorSet, Sign, SignedPermutation,
};
use hyperocta::ordering::{visit_orderings, EdgeOrdering};
use hyperocta::sgraph::{Edge, SignedGraph};
use proptest::prelude::*;

fn signed_perm(n: usize) -> impl Strategy<Value = SignedPermutation> {
    (
        Just((1..=n as i64).collect::<Vec<_>>()).prop_shuffle(),
        prop::collection::vec(any::<bool>(), n),
    )
        .prop_map(|(mut images, flips)| {
            for (v, f) in images.iter_mut().zip(flips) {
                if f {
                    *v = -*v;
                }
            }
            SignedPermutation::from_images(&images).unwrap()
        })
}

fn triple() -> impl Strategy<Value = (SignedPermutation, SignedPermutation, SignedPermutation)> {
    (1usize..=8).prop_flat_map(|n| (signed_perm(n), signed_perm(n), signed_perm(n)))
}

fn pair() -> impl Strategy<Value = (SignedPermutation, SignedPermutation)> {
    (1usize..=8).prop_flat_map(|n| (signed_perm(n), signed_perm(n)))
}

/// Signed graph on `1..=max_n` vertices with at most `max_edges` edges.
fn graph(max_n: usize, max_edges: usize) -> impl Strategy<Value = SignedGraph> {
    (1usize..=max_n).prop_flat_map(move |n| {
        let edge =
            (0u8..3, 1..=n, 1..=n).prop_filter_map("self pair", move |(kind, i, j)| match kind {
                0 if i != j => Edge::pos(i, j).ok(),
                1 if i != j => Edge::neg(i, j).ok(),
                2 => Edge::loop_at(i).ok(),
                _ => None,
            });
        prop::collection::vec(edge, 0..=max_edges).prop_map(move |edges| {
            let edges: Vec<Edge> = edges
                .into_iter()
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            SignedGraph::from_edges(n, &edges).unwrap()
        })
    })
}

fn ordering(max_n: usize, max_edges: usize) -> impl Strategy<Value = EdgeOrdering> {
    graph(max_n, max_edges).prop_flat_map(|g| {
        Just(g.edges())
            .prop_shuffle()
            .prop_map(move |seq| EdgeOrdering::new(&g, seq).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn composition_is_associative((a, b, c) in triple()) {
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn identity_and_inverse((a, _b) in pair()) {
        let e = SignedPermutation::identity(a.degree()).unwrap();
        prop_assert_eq!(a.compose(&e).unwrap(), a);
        prop_assert_eq!(e.compose(&a).unwrap(), a);
        prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
        prop_assert!(a.inverse().compose(&a).unwrap().is_identity());
    }

    #[test]
    fn conjugation_preserves_cycle_type((a, g) in pair()) {
        prop_assert_eq!(cycle_type(&a.conjugate_by(&g).unwrap()), cycle_type(&a));
    }

    #[test]
    fn cycle_decomposition_round_trips((a, _b) in pair()) {
        let cycles = cycle_decompose(&a);
        prop_assert_eq!(recompose_cycles(&cycles, a.degree()).unwrap(), a);
        let ty = cycle_type(&a);
        prop_assert_eq!(ty.lambda.iter().sum::<usize>() + ty.mu.iter().sum::<usize>(), a.degree());
    }

    #[test]
    fn normal_form_round_trips((a, _b) in pair()) {
        let nf = normal_form(&a);
        prop_assert_eq!(nf.recompose(), a);
        prop_assert_eq!(nf.base, phi_project(&a));
        prop_assert_eq!(Sign::from_parity(nf.flip_set.len() % 2 == 1), psi_sign(&a));
    }

    #[test]
    fn projections_are_homomorphisms((a, b) in pair()) {
        let ab = a.compose(&b).unwrap();
        prop_assert_eq!(phi_project(&ab), phi_project(&a).compose(&phi_project(&b)).unwrap());
        prop_assert_eq!(psi_sign(&ab), psi_sign(&a) * psi_sign(&b));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn phi_commutes_with_product(w in ordering(6, 8)) {
        prop_assert_eq!(phi_project(&w.pi()), w.phi().pi());
        prop_assert_eq!(
            psi_sign(&w.pi()),
            Sign::from_parity(w.graph().loop_count() % 2 == 1)
        );
    }

    #[test]
    fn decomposition_recomposes(w in ordering(6, 8)) {
        let d = w.decompose();
        prop_assert_eq!(d.recompose_rewrite(), w.pi());
        prop_assert_eq!(d.recompose(), w.pi());
        prop_assert_eq!(d.base_product, w.phi().pi().to_signed());
    }

    #[test]
    fn rotation_preserves_cycle_type(w in ordering(6, 8), k in 1usize..=8) {
        prop_assume!(!w.is_empty());
        let k = (k - 1) % w.len() + 1;
        prop_assert_eq!(cycle_type(&w.rotate(k).unwrap().pi()), cycle_type(&w.pi()));
    }

    #[test]
    fn witnesses_reverify(g in graph(5, 7)) {
        let report = has_signed_fcpo(&g, 9).unwrap();
        prop_assert_eq!(report.witness_even.is_some(), report.even_exists);
        prop_assert_eq!(report.witness_odd.is_some(), report.odd_exists);
        if let Some(w) = &report.witness_even {
            prop_assert_eq!(w.graph(), &g);
            prop_assert_eq!(classify_full_cycle(&w.pi()), FullCycleClass::EvenFull);
        }
        if let Some(w) = &report.witness_odd {
            prop_assert_eq!(w.graph(), &g);
            prop_assert_eq!(classify_full_cycle(&w.pi()), FullCycleClass::OddFull);
        }
        let bar = g.underlying();
        if bar.is_connected() && !bar.is_tree() {
            let w = non_full_ordering(&g).unwrap();
            prop_assert_eq!(classify_full_cycle(&w.pi()), FullCycleClass::NotFull);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn factorization_count_is_a_class_function(
        (a, g) in (1usize..=4).prop_flat_map(|n| (signed_perm(n), signed_perm(n))),
        k in 0usize..=5,
    ) {
        prop_assume!(k <= a.degree() + 1);
        let count = |t: SignedPermutation| {
            count_factorizations(&FactorizationQuery::new(t, k, GeneratorSet::AllSigned))
                .unwrap()
                .count
        };
        prop_assert_eq!(count(a.conjugate_by(&g).unwrap()), count(a));
    }
}

/// The inversion count of an ordering's normal form has the parity of the
/// loop count; checked over every ordering of small graphs.
#[test]
fn inversion_parity_over_all_orderings() {
    let graphs = hyperocta::sgraph::enumerate_signed_graphs(3, 4, 2).unwrap();
    let mut checked = 0usize;
    for g in graphs.iter().filter(|g| g.edge_count() <= 6) {
        let loops_odd = g.loop_count() % 2 == 1;
        visit_orderings(g, |_, p| {
            assert_eq!(normal_form(p).flip_set.len() % 2 == 1, loops_odd, "{g:?}");
            checked += 1;
            true
        });
    }
    assert!(checked > 10_000, "{checked}");
}
