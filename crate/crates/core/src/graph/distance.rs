use crate::error::{Error, Result};
use crate::graph::{ColorAdjacency, ColorClass, Distance, EdgeColoring, VertexSet};

/// Color-`c` BFS from `root` inside `within`; returns distances for every
/// vertex of the graph (infinite outside `within` or when unreachable).
pub(crate) fn bfs(adj: &ColorAdjacency, c: ColorClass, root: usize, within: VertexSet) -> Vec<Distance> {
    let mut dist = vec![Distance::INFINITE; adj.n()];
    if !within.contains(root) {
        return dist;
    }
    let row = adj.raw(c.index());
    let mut seen = 1u64 << root;
    let mut frontier = seen;
    let mut level = 0;
    dist[root] = Distance::ZERO;
    while frontier != 0 {
        level += 1;
        let mut next = 0u64;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= row[v];
        }
        next &= within.bits() & !seen;
        seen |= next;
        frontier = next;
        let mut g = next;
        while g != 0 {
            let v = g.trailing_zeros() as usize;
            g &= g - 1;
            dist[v] = Distance::finite(level);
        }
    }
    dist
}

/// Vertices of `within` reachable from `root` in at most `radius` color-`c`
/// steps that stay inside `within`.
#[inline]
pub(crate) fn ball(row: &[u64; 64], root: usize, within: u64, radius: u32) -> u64 {
    let mut seen = 1u64 << root;
    let mut frontier = seen;
    for _ in 0..radius {
        let mut next = 0u64;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= row[v];
        }
        next &= within & !seen;
        if next == 0 {
            break;
        }
        seen |= next;
        frontier = next;
    }
    seen
}

/// Whether the color-`c` graph induced on `set` is connected with diameter at
/// most `d`. The empty set is rejected.
#[inline]
pub(crate) fn diameter_at_most(row: &[u64; 64], set: u64, d: u32) -> bool {
    if set == 0 {
        return false;
    }
    let mut s = set;
    while s != 0 {
        let v = s.trailing_zeros() as usize;
        s &= s - 1;
        if ball(row, v, set, d) != set {
            return false;
        }
    }
    true
}

/// Eccentricity of `v` in the color-`c` graph induced on `within`.
pub fn eccentricity(adj: &ColorAdjacency, c: ColorClass, v: usize, within: VertexSet) -> Distance {
    let dist = bfs(adj, c, v, within);
    within.iter().map(|u| dist[u]).max().unwrap_or(Distance::ZERO)
}

/// Diameter of the color-`c` graph induced on `set` (all color-`c` edges with
/// both ends in `set`).
pub fn set_diameter(adj: &ColorAdjacency, c: ColorClass, set: VertexSet) -> Distance {
    let mut worst = Distance::ZERO;
    for v in set.iter() {
        let e = eccentricity(adj, c, v, set);
        if !e.is_finite() {
            return e;
        }
        worst = worst.max(e);
    }
    worst
}

/// Length of a shortest color-`c` path from `u` to `v` in the whole graph.
pub fn color_distance(chi: &EdgeColoring, c: ColorClass, u: usize, v: usize) -> Result<Distance> {
    chi.shape().check_vertex(u)?;
    chi.shape().check_vertex(v)?;
    Ok(bfs(chi.adjacency(), c, u, chi.shape().vertices())[v])
}

/// Diameter of the color-`c` graph induced on `set`.
pub fn color_diameter(chi: &EdgeColoring, c: ColorClass, set: VertexSet) -> Result<Distance> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    if let Some(bad) = set.difference(chi.shape().vertices()).first() {
        return Err(Error::InvalidVertex { vertex: bad, n: chi.n() });
    }
    Ok(set_diameter(chi.adjacency(), c, set))
}
