use crate::cover::{is_valid, Cover, MonoSubgraph, UNBOUNDED};
use crate::error::{Error, Exhausted, Result};
use crate::graph::{ball, ColorClass, EdgeColoring, VertexSet};

use super::CaseTrace;

/// At most two connected monochromatic subgraphs covering every vertex.
///
/// Works in the complete bipartite graph between the first part `A` and the
/// rest `B`, around a vertex `v` of `A` that has a red edge when one exists.
pub fn tc2_cover(chi: &EdgeColoring) -> Result<Cover> {
    let shape = chi.shape();
    if shape.k() < 2 {
        return Err(Error::InvalidParameter("need at least 2 parts".into()));
    }
    let full = chi.adjacency();
    let a = shape.part_set(0);
    let b = shape.vertices().difference(a);
    let side: Vec<usize> = (0..shape.n()).map(|u| usize::from(!a.contains(u))).collect();
    let bip = full.restricted_to_groups(&side);
    let all = shape.vertices();

    let cover = match a.iter().find(|&u| !(bip.neighbors(ColorClass::Red, u)).is_empty()) {
        // No red edge between A and B: the blue bipartite graph is complete.
        None => Cover::new(vec![MonoSubgraph::new(ColorClass::Blue, all)]),
        Some(v) => {
            let n = shape.n() as u32;
            let red_comp = VertexSet(ball(bip.raw(ColorClass::Red.index()), v, all.bits(), n));
            let (a1, b1) = (red_comp & a, red_comp & b);
            if a1 == a {
                let blue_comp = VertexSet(ball(bip.raw(ColorClass::Blue.index()), v, all.bits(), n));
                Cover::new(vec![
                    MonoSubgraph::new(ColorClass::Red, red_comp),
                    MonoSubgraph::new(ColorClass::Blue, blue_comp),
                ])
            } else if b1 == b {
                Cover::new(vec![
                    MonoSubgraph::new(ColorClass::Red, red_comp),
                    MonoSubgraph::new(ColorClass::Blue, a.difference(a1) | b),
                ])
            } else {
                Cover::new(vec![
                    MonoSubgraph::new(ColorClass::Blue, a.difference(a1) | b1),
                    MonoSubgraph::new(ColorClass::Blue, a1 | b.difference(b1)),
                ])
            }
        }
    }
    .without_redundant();

    if is_valid(full, &cover, UNBOUNDED, 2) {
        Ok(cover)
    } else {
        let mut trace = CaseTrace::default();
        trace.push("connected two-subgraph cover (rejected)", vec![]);
        Err(Error::ConstructionExhausted(Box::new(Exhausted { coloring: chi.clone(), trace })))
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::cover::verify_cover;
    use crate::graph::build_shape;

    #[test]
    fn single_red_edge() {
        let chi = EdgeColoring::monochromatic(Arc::new(build_shape(&[1, 1]).unwrap()), ColorClass::Red);
        let cover = tc2_cover(&chi).unwrap();
        assert_eq!(cover.len(), 1);
        assert_eq!(cover.subgraphs[0].color, ColorClass::Red);
    }

    #[test]
    fn exhaustive_small_shapes() {
        for parts in [&[2, 2][..], &[3, 2], &[2, 1, 1], &[3, 3]] {
            let shape = Arc::new(build_shape(parts).unwrap());
            let e = shape.edge_count();
            for code in 0u64..(1 << e) {
                let chi = EdgeColoring::from_edge_bits(shape.clone(), |i| code >> i & 1 == 1);
                let cover = tc2_cover(&chi).unwrap();
                assert_eq!(verify_cover(&chi, &cover, UNBOUNDED, 2).unwrap(), Ok(()), "{parts:?} {code}");
            }
        }
    }
}
