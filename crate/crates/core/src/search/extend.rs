use std::sync::Arc;

use crate::error::Result;
use crate::graph::{EdgeColoring, MultipartiteShape};

/// Adds a clone `y` of `x` to `x`'s part. Every edge `wy` takes the color of
/// `wx`; all other edges keep their colors.
///
/// Parts are re-sorted (stably) after the growth, so vertex ids may shift.
pub fn check_monotone_extension(chi: &EdgeColoring, x: usize) -> Result<EdgeColoring> {
    extend_with_map(chi, x).map(|(ext, _)| ext)
}

/// [`check_monotone_extension`] plus the new id of every old vertex, with
/// `y` as the last entry.
pub fn extend_with_map(chi: &EdgeColoring, x: usize) -> Result<(EdgeColoring, Vec<usize>)> {
    let shape = chi.shape();
    shape.check_vertex(x)?;
    let grown = shape.part_of(x);
    let mut sizes = shape.part_sizes().to_vec();
    sizes[grown] += 1;
    let mut order: Vec<usize> = (0..sizes.len()).collect();
    order.sort_by_key(|&p| std::cmp::Reverse(sizes[p]));
    let new_shape = Arc::new(MultipartiteShape::new(&order.iter().map(|&p| sizes[p]).collect::<Vec<_>>())?);

    // New id of every old vertex, then of y.
    let mut map = vec![0; shape.n() + 1];
    for (new_p, &old_p) in order.iter().enumerate() {
        let start = new_shape.part_range(new_p).start;
        for (off, v) in shape.part_range(old_p).enumerate() {
            map[v] = start + off;
        }
        if old_p == grown {
            map[shape.n()] = start + shape.part_sizes()[old_p];
        }
    }
    let mut old_of = vec![0; shape.n() + 1];
    for (old, &new) in map.iter().enumerate() {
        old_of[new] = old;
    }
    let y = shape.n();
    let lift = |v: usize| if v == y { x } else { v };
    let ext = EdgeColoring::from_fn(new_shape, |u, v| {
        let (a, b) = (lift(old_of[u]), lift(old_of[v]));
        chi.color(a, b).expect("lifted pair is an edge")
    });
    Ok((ext, map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_shape, ColorClass};

    #[test]
    fn monochromatic_stays_monochromatic() {
        let chi = EdgeColoring::monochromatic(Arc::new(build_shape(&[2, 2, 1]).unwrap()), ColorClass::Red);
        for x in 0..5 {
            let ext = check_monotone_extension(&chi, x).unwrap();
            assert_eq!(ext.n(), 6);
            assert_eq!(ext.count(ColorClass::Blue), 0);
        }
    }

    #[test]
    fn colors_are_copied() {
        let shape = Arc::new(build_shape(&[2, 2, 1]).unwrap());
        let chi = EdgeColoring::from_edge_bits(shape, |i| i % 3 == 0);
        for x in 0..5 {
            let (ext, map) = extend_with_map(&chi, x).unwrap();
            assert_eq!(ext.shape().part_sizes().iter().sum::<usize>(), 6);
            let y = map[5];
            for u in 0..5 {
                assert_eq!(ext.color(map[u], y), chi.color(u, x));
                for v in 0..5 {
                    assert_eq!(ext.color(map[u], map[v]), chi.color(u, v));
                }
            }
        }
    }

    #[test]
    fn out_of_range() {
        let chi = EdgeColoring::monochromatic(Arc::new(build_shape(&[1, 1]).unwrap()), ColorClass::Red);
        assert!(check_monotone_extension(&chi, 2).is_err());
    }
}
