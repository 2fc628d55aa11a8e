mod common;

use std::sync::Arc;

use common::{naive_diameter, naive_is_cover, naive_two_cover_exists};
use mpcover::construct::{multipartite_cover, star_doublestar_search, tc2_cover, two_stars_at, GroupingStrategy};
use mpcover::cover::{verify_cover, Cover, MonoSubgraph, UNBOUNDED};
use mpcover::families::{gen_fig4, gen_thm31};
use mpcover::graph::{
    bfs_layers, bilayer_partition, clone_profile, color_diameter, ColorClass, EdgeColoring, Grouping,
    MultipartiteShape, VertexSet,
};
use mpcover::ryser::graph_to_hypergraph;
use mpcover::search::{canonical_key, compute_d, cover_exists, prune_with_constructions, SearchConfig};
use proptest::prelude::*;

fn shape_strategy(max_parts: usize, max_size: usize) -> impl Strategy<Value = Arc<MultipartiteShape>> {
    prop::collection::vec(1..=max_size, 2..=max_parts).prop_map(|mut sizes| {
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        Arc::new(MultipartiteShape::new(&sizes).unwrap())
    })
}

fn coloring_strategy(max_parts: usize, max_size: usize) -> impl Strategy<Value = EdgeColoring> {
    shape_strategy(max_parts, max_size).prop_flat_map(|shape| {
        prop::collection::vec(any::<bool>(), shape.edge_count())
            .prop_map(move |bits| EdgeColoring::from_edge_bits(shape.clone(), |i| bits[i]))
    })
}

/// A random permutation of vertices that maps parts onto parts of equal size.
fn symmetry(chi: &EdgeColoring, seed: u64) -> Vec<usize> {
    let shape = chi.shape();
    let mut state = seed | 1;
    let mut next = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let mut part_order: Vec<usize> = (0..shape.k()).collect();
    for i in (1..part_order.len()).rev() {
        let j = (next() % (i as u64 + 1)) as usize;
        if shape.part_sizes()[i] == shape.part_sizes()[j] {
            part_order.swap(i, j);
        }
    }
    let mut perm = vec![0; shape.n()];
    for (p, &q) in part_order.iter().enumerate() {
        let mut targets: Vec<usize> = shape.part_range(q).collect();
        for i in (1..targets.len()).rev() {
            let j = (next() % (i as u64 + 1)) as usize;
            targets.swap(i, j);
        }
        for (v, t) in shape.part_range(p).zip(targets) {
            perm[v] = t;
        }
    }
    perm
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn verifier_matches_oracle(chi in coloring_strategy(4, 3), masks in prop::collection::vec((any::<bool>(), 1u64..512), 1..=3), d in 0u32..4) {
        let full = chi.shape().vertices().bits();
        let subgraphs: Vec<MonoSubgraph> = masks
            .iter()
            .filter(|(_, m)| m & full != 0)
            .map(|&(blue, m)| MonoSubgraph::new(ColorClass::from_bit(blue), VertexSet(m & full)))
            .collect();
        prop_assume!(!subgraphs.is_empty());
        let cover = Cover::new(subgraphs);
        let ok = verify_cover(&chi, &cover, d, 2).unwrap().is_ok();
        prop_assert_eq!(ok, naive_is_cover(&chi, &cover, Some(d), 2));
    }

    #[test]
    fn diameter_matches_oracle(chi in coloring_strategy(4, 3), blue in any::<bool>(), mask in 1u64..512) {
        let set = VertexSet(mask & chi.shape().vertices().bits());
        prop_assume!(!set.is_empty());
        let c = ColorClass::from_bit(blue);
        let d = color_diameter(&chi, c, set).unwrap();
        prop_assert_eq!(d.value(), naive_diameter(&chi, c, &set.to_vec()));
    }

    #[test]
    fn existence_matches_oracle(chi in coloring_strategy(4, 2), d in 0u32..4) {
        let found = cover_exists(&chi, 2, d).unwrap();
        prop_assert_eq!(found.is_some(), naive_two_cover_exists(&chi, d));
        if let Some(cover) = found {
            prop_assert!(naive_is_cover(&chi, &cover, Some(d), 2));
        }
    }

    #[test]
    fn existence_is_orbit_invariant(chi in coloring_strategy(4, 3), seed in any::<u64>(), swap in any::<bool>(), d in 1u32..4) {
        let mut image = chi.permuted(&symmetry(&chi, seed)).unwrap();
        if swap {
            image = image.swapped();
        }
        prop_assert_eq!(canonical_key(&chi), canonical_key(&image));
        prop_assert_eq!(cover_exists(&chi, 2, d).unwrap().is_some(), cover_exists(&image, 2, d).unwrap().is_some());
    }

    #[test]
    fn constructions_verify(chi in coloring_strategy(6, 5)) {
        if chi.shape().k() >= 3 {
            let c = multipartite_cover(&chi, GroupingStrategy::FirstFit).unwrap();
            prop_assert!(naive_is_cover(&chi, &c.cover, Some(3), 2));
        }
        let tc = tc2_cover(&chi).unwrap();
        prop_assert!(naive_is_cover(&chi, &tc, None, 2));
        prop_assert_eq!(verify_cover(&chi, &tc, UNBOUNDED, 2).unwrap(), Ok(()));
    }

    #[test]
    fn star_covers_verify(chi in coloring_strategy(5, 3), u in 0usize..64) {
        let u = u % chi.n();
        let cover = two_stars_at(&chi, u).unwrap();
        let universal = chi.shape().part_size_of(u) == 1;
        if universal {
            prop_assert!(naive_is_cover(&chi, &cover, Some(2), 2));
        }
        if let Some(c) = star_doublestar_search(&chi, 3) {
            prop_assert!(naive_is_cover(&chi, &c, Some(3), 2));
        }
    }

    #[test]
    fn prune_certificates_verify(bits in prop::collection::vec(any::<bool>(), 40)) {
        let shape = Arc::new(MultipartiteShape::pairs(5).unwrap());
        let chi = EdgeColoring::from_edge_bits(shape, |i| bits[i]);
        if let Some((cover, _)) = prune_with_constructions(&chi, 2) {
            prop_assert!(naive_is_cover(&chi, &cover, Some(2), 2));
        }
    }

    #[test]
    fn layers_follow_bfs(chi in coloring_strategy(3, 4), root in 0usize..64, blue in any::<bool>()) {
        let root = root % chi.n();
        let c = ColorClass::from_bit(blue);
        let grouping = Grouping::identity(chi.shape()).unwrap();
        let lp = bfs_layers(&chi, c, root, &grouping).unwrap();
        prop_assert_eq!(lp.layer(root), 0);
        for u in 0..chi.n() {
            if u == root {
                continue;
            }
            let nbr_layers: Vec<u32> = chi.neighbors(c, u).iter().map(|w| lp.layer(w)).collect();
            let want = nbr_layers.iter().min().map_or(4, |&m| (m + 1).min(4));
            prop_assert_eq!(lp.layer(u), want);
        }
    }

    #[test]
    fn clone_structures_partition(chi in coloring_strategy(5, 2)) {
        let shape = chi.shape();
        for x in 0..chi.n() {
            if shape.part_size_of(x) != 2 {
                continue;
            }
            let rest = shape.vertices().without(x).without(shape.clone_of(x).unwrap());
            let profile = clone_profile(&chi, x).unwrap();
            let mut union = VertexSet::EMPTY;
            let mut total = 0;
            for i in ColorClass::BOTH {
                for j in ColorClass::BOTH {
                    union |= profile.x(i, j);
                    total += profile.x(i, j).len();
                }
            }
            prop_assert_eq!((union, total), (rest, rest.len()));
            let bl = bilayer_partition(&chi, x).unwrap();
            let mut union = VertexSet::EMPTY;
            let mut total = 0;
            for i in 1..=3 {
                for j in 1..=3 {
                    union |= bl.a(i, j);
                    total += bl.a(i, j).len();
                }
            }
            prop_assert_eq!((union, total), (rest, rest.len()));
        }
    }

    #[test]
    fn component_hypergraph_is_bipartite(chi in coloring_strategy(4, 3)) {
        let h = graph_to_hypergraph(&chi);
        prop_assert!(h.edges.len() <= chi.n());
        let class = h.class_of().unwrap();
        for e in &h.edges {
            prop_assert_eq!(e.len(), 2);
            prop_assert_ne!(class[e[0]], class[e[1]]);
        }
    }
}

#[test]
fn witnesses_are_tight() {
    for parts in [[3usize, 1, 1].as_slice(), &[2, 2, 1], &[2, 2], &[3, 2]] {
        let r = compute_d(&mpcover::graph::build_shape(parts).unwrap(), &SearchConfig::default()).unwrap();
        let w = r.witness().unwrap().unwrap();
        let d = r.d();
        assert!(cover_exists(&w, 2, d).unwrap().is_some());
        if d > 0 {
            assert!(cover_exists(&w, 2, d - 1).unwrap().is_none(), "{parts:?}");
        }
    }
}

#[test]
fn named_colorings() {
    let fig4 = gen_fig4().unwrap();
    assert!(cover_exists(&fig4, 2, 2).unwrap().is_none());
    assert!(!naive_two_cover_exists(&fig4, 2));
    assert!(cover_exists(&fig4, 2, 3).unwrap().is_some());
    let thm = gen_thm31(2).unwrap();
    assert!(!naive_two_cover_exists(&thm, 2));
    let blue = EdgeColoring::monochromatic(Arc::new(MultipartiteShape::new(&[3, 2]).unwrap()), ColorClass::Blue);
    assert!(cover_exists(&blue, 2, 2).unwrap().is_some());
}

#[test]
fn small_shape_values() {
    let d = |parts: &[usize]| compute_d(&mpcover::graph::build_shape(parts).unwrap(), &SearchConfig::default()).unwrap().d();
    assert_eq!(d(&[2, 1, 1]), 1);
    assert_eq!(d(&[3, 1, 1]), 2);
    assert_eq!(d(&[2, 2, 2]), 2);
}
