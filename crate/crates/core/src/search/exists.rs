use crate::construct::{star_doublestar_on, star_pair_on};
use crate::cover::{Cover, MonoSubgraph};
use crate::error::{Error, Result};
use crate::graph::{diameter_at_most, ColorAdjacency, ColorClass, EdgeColoring};

/// Largest vertex count for the exhaustive subset-lattice search.
pub const EXACT_VERTEX_LIMIT: usize = 22;

/// Whether `chi` has a cover by at most `t` monochromatic subgraphs of
/// diameter at most `d`; returns a witness cover when it does.
pub fn cover_exists(chi: &EdgeColoring, t: usize, d: u32) -> Result<Option<Cover>> {
    match t {
        0 => return Err(Error::InvalidParameter("t must be at least 1".into())),
        1 | 2 => {}
        _ => return Err(Error::Unsupported(format!("covers with t = {t} > 2 subgraphs"))),
    }
    exists_on(chi.adjacency(), t, d)
}

pub(crate) fn exists_on(adj: &ColorAdjacency, t: usize, d: u32) -> Result<Option<Cover>> {
    let n = adj.n();
    if n == 0 {
        return Ok(Some(Cover::default()));
    }
    for c in ColorClass::BOTH {
        if diameter_at_most(adj.raw(c.index()), adj.vertices().bits(), d) {
            return Ok(Some(Cover::new(vec![MonoSubgraph::new(c, adj.vertices())])));
        }
    }
    if t == 1 {
        return Ok(None);
    }
    if d == 0 {
        return Ok((n <= 2).then(|| Cover::new((0..n).map(MonoSubgraph::singleton).collect())));
    }
    if d >= 2 {
        if let Some(cover) = star_pair_on(adj, d) {
            return Ok(Some(cover));
        }
    }
    if d >= 3 {
        if let Some(cover) = star_doublestar_on(adj, d) {
            return Ok(Some(cover));
        }
    }
    if n > EXACT_VERTEX_LIMIT {
        return Err(Error::CapExceeded {
            what: "vertices for exhaustive cover search",
            limit: EXACT_VERTEX_LIMIT as u64,
            requested: n as u64,
            estimated_classes: None,
        });
    }
    let (best, cover) = exact_min_diameter(adj, t, d.saturating_add(1));
    Ok(if best <= d { cover } else { None })
}

/// Smallest `d < cap` admitting a cover by at most `t` subgraphs, or `cap`
/// when there is none, with a witness for the former.
///
/// Every vertex set gets its diameter (capped) in both colors; a two-subgraph
/// cover is a set `S` in one color whose complement lies inside some set of
/// the other color, so a superset-minimum transform finishes the job.
pub(crate) fn exact_min_diameter(adj: &ColorAdjacency, t: usize, cap: u32) -> (u32, Option<Cover>) {
    let n = adj.n();
    assert!(n <= EXACT_VERTEX_LIMIT, "exact search limited to {EXACT_VERTEX_LIMIT} vertices");
    let cap = cap.min(u8::MAX as u32) as u8;
    let full = (1usize << n) - 1;
    if t == 1 || n <= 1 {
        let mut best = (cap as u32, None);
        for c in ColorClass::BOTH {
            let dc = capped_diameter(adj.raw(c.index()), full as u64, cap) as u32;
            if dc < best.0 {
                best = (dc, Some(Cover::new(vec![MonoSubgraph::new(c, adj.vertices())])));
            }
        }
        return best;
    }

    let tables: Vec<Vec<u8>> = ColorClass::BOTH
        .iter()
        .map(|&c| {
            let row = adj.raw(c.index());
            let mut tab = vec![0u8; 1 << n];
            for (s, slot) in tab.iter_mut().enumerate().skip(1) {
                *slot = capped_diameter(row, s as u64, cap);
            }
            tab
        })
        .collect();
    let supmin: Vec<Vec<u8>> = tables.iter().map(|t| superset_min(t, n)).collect();

    let mut best = (cap as u32, None);
    for (c1, c2) in [(ColorClass::Blue, ColorClass::Red), (ColorClass::Blue, ColorClass::Blue), (ColorClass::Red, ColorClass::Red)] {
        let first = &tables[c1.index()];
        let second = &supmin[c2.index()];
        for s in 1..=full {
            let rest = full & !s;
            let value = first[s].max(second[rest]) as u32;
            if value < best.0 {
                let mut subgraphs = vec![MonoSubgraph::new(c1, crate::graph::VertexSet(s as u64))];
                if rest != 0 {
                    let target = second[rest];
                    let u = superset_with(&tables[c2.index()], rest, full, target);
                    subgraphs.push(MonoSubgraph::new(c2, crate::graph::VertexSet(u as u64)));
                }
                best = (value, Some(Cover::new(subgraphs)));
                if value == 0 {
                    return best;
                }
            }
        }
    }
    best
}

/// Diameter of the color graph induced on `set`, or `cap` if it is at least
/// `cap` or disconnected.
#[inline]
pub(crate) fn capped_diameter(row: &[u64; 64], set: u64, cap: u8) -> u8 {
    let mut worst = 0u8;
    let mut s = set;
    while s != 0 {
        let v = s.trailing_zeros() as usize;
        s &= s - 1;
        let mut seen = 1u64 << v;
        let mut frontier = seen;
        let mut steps = 0u8;
        while seen != set {
            if steps >= cap {
                return cap;
            }
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let w = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= row[w];
            }
            next &= set & !seen;
            if next == 0 {
                return cap;
            }
            seen |= next;
            frontier = next;
            steps += 1;
        }
        worst = worst.max(steps);
        if worst >= cap {
            return cap;
        }
    }
    worst
}

/// `out[s] = min over u ⊇ s of table[u]`, with the empty set free.
fn superset_min(table: &[u8], n: usize) -> Vec<u8> {
    let mut out = table.to_vec();
    for i in 0..n {
        let bit = 1usize << i;
        for s in 0..out.len() {
            if s & bit == 0 {
                let up = out[s | bit];
                if up < out[s] {
                    out[s] = up;
                }
            }
        }
    }
    out[0] = 0;
    out
}

/// Some superset of `s` within `full` whose table value is `target`.
fn superset_with(table: &[u8], s: usize, full: usize, target: u8) -> usize {
    let free = full & !s;
    let mut extra = free;
    loop {
        if table[s | extra] == target {
            return s | extra;
        }
        if extra == 0 {
            unreachable!("superset minimum not attained");
        }
        extra = (extra - 1) & free;
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::cover::verify_cover;
    use crate::graph::build_shape;

    fn brute_min(chi: &EdgeColoring, cap: u32) -> u32 {
        let n = chi.n();
        let full = (1u64 << n) - 1;
        let mut best = cap;
        for c1 in ColorClass::BOTH {
            for c2 in ColorClass::BOTH {
                for s in 1..=full {
                    for u in 1..=full {
                        if s | u != full {
                            continue;
                        }
                        let cover = Cover::new(vec![
                            MonoSubgraph::new(c1, crate::graph::VertexSet(s)),
                            MonoSubgraph::new(c2, crate::graph::VertexSet(u)),
                        ]);
                        for d in 0..best {
                            if verify_cover(chi, &cover, d, 2).unwrap().is_ok() {
                                best = d;
                                break;
                            }
                        }
                    }
                }
            }
        }
        best
    }

    #[test]
    fn lattice_search_matches_brute_force() {
        let shape = Arc::new(build_shape(&[2, 2, 1]).unwrap());
        for code in (0u64..(1 << shape.edge_count())).step_by(7) {
            let chi = EdgeColoring::from_edge_bits(shape.clone(), |i| code >> i & 1 == 1);
            let (best, cover) = exact_min_diameter(chi.adjacency(), 2, 5);
            assert_eq!(best, brute_min(&chi, 5), "code {code}");
            if best < 5 {
                assert_eq!(verify_cover(&chi, &cover.unwrap(), best, 2).unwrap(), Ok(()));
            }
        }
    }

    #[test]
    fn t_above_two_is_unsupported() {
        let chi = EdgeColoring::monochromatic(Arc::new(build_shape(&[2, 2]).unwrap()), ColorClass::Red);
        assert!(matches!(cover_exists(&chi, 3, 2), Err(Error::Unsupported(_))));
        assert!(cover_exists(&chi, 2, 2).unwrap().is_some());
        assert!(cover_exists(&chi, 1, 1).unwrap().is_none());
    }
}
