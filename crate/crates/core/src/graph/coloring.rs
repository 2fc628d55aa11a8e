use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{ColorClass, MultipartiteShape, VertexSet, MAX_VERTICES};

/// Per-color neighbor masks of a 2-edge-colored graph on at most 64 vertices.
///
/// This is the working representation for every algorithm in the crate. It is
/// not tied to a multipartite shape, so restricted views (e.g. with the edges
/// inside a group of parts removed) are just another `ColorAdjacency`.
#[derive(Clone, PartialEq, Eq)]
pub struct ColorAdjacency {
    n: usize,
    nbr: [[u64; MAX_VERTICES]; 2],
}

impl ColorAdjacency {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "at most {MAX_VERTICES} vertices");
        ColorAdjacency { n, nbr: [[0; MAX_VERTICES]; 2] }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Builds an adjacency from per-vertex red and blue masks.
    pub(crate) fn from_masks(n: usize, red: &[u64], blue: &[u64]) -> Self {
        let mut adj = ColorAdjacency::empty(n);
        adj.nbr[0][..n].copy_from_slice(&red[..n]);
        adj.nbr[1][..n].copy_from_slice(&blue[..n]);
        adj
    }

    /// Adds (or recolors) the edge `uv`.
    #[inline]
    pub fn set_edge(&mut self, u: usize, v: usize, c: ColorClass) {
        let (bu, bv) = (1u64 << u, 1u64 << v);
        let o = c.swap().index();
        self.nbr[o][u] &= !bv;
        self.nbr[o][v] &= !bu;
        self.nbr[c.index()][u] |= bv;
        self.nbr[c.index()][v] |= bu;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        for c in 0..2 {
            self.nbr[c][u] &= !(1u64 << v);
            self.nbr[c][v] &= !(1u64 << u);
        }
    }

    #[inline]
    pub fn neighbors(&self, c: ColorClass, v: usize) -> VertexSet {
        VertexSet(self.nbr[c.index()][v])
    }

    /// Neighbors of `v` in either color.
    #[inline]
    pub fn all_neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.nbr[0][v] | self.nbr[1][v])
    }

    #[inline]
    pub(crate) fn raw(&self, c: usize) -> &[u64; MAX_VERTICES] {
        &self.nbr[c]
    }

    /// Color of edge `uv`, or `None` if `uv` is not an edge.
    #[inline]
    pub fn color(&self, u: usize, v: usize) -> Option<ColorClass> {
        if self.nbr[1][u] >> v & 1 == 1 {
            Some(ColorClass::Blue)
        } else if self.nbr[0][u] >> v & 1 == 1 {
            Some(ColorClass::Red)
        } else {
            None
        }
    }

    /// Union of the color-`c` neighborhoods of the vertices in `set`.
    #[inline]
    pub fn neighbors_of_set(&self, c: ColorClass, set: VertexSet) -> VertexSet {
        let row = &self.nbr[c.index()];
        let mut acc = 0u64;
        for v in set.iter() {
            acc |= row[v];
        }
        VertexSet(acc)
    }

    /// Star at `v` in color `c`: `v` together with its color-`c` neighbors.
    #[inline]
    pub fn star(&self, c: ColorClass, v: usize) -> VertexSet {
        self.neighbors(c, v).with(v)
    }

    /// Copy with every edge between two vertices of the same group removed.
    pub fn restricted_to_groups(&self, vertex_group: &[usize]) -> ColorAdjacency {
        let mut out = self.clone();
        let n = self.n;
        let mut group_mask = vec![0u64; n];
        for v in 0..n {
            for u in 0..n {
                if vertex_group[u] == vertex_group[v] {
                    group_mask[v] |= 1u64 << u;
                }
            }
        }
        for c in 0..2 {
            for v in 0..n {
                out.nbr[c][v] &= !group_mask[v];
            }
        }
        out
    }

    /// Copy with the two colors exchanged.
    pub fn swapped(&self) -> ColorAdjacency {
        ColorAdjacency { n: self.n, nbr: [self.nbr[1], self.nbr[0]] }
    }
}

impl fmt::Debug for ColorAdjacency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for v in 0..self.n {
            m.entry(&v, &(VertexSet(self.nbr[0][v]), VertexSet(self.nbr[1][v])));
        }
        m.finish()
    }
}

/// A red/blue coloring of every edge of a complete multipartite graph.
#[derive(Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    shape: Arc<MultipartiteShape>,
    /// Edge `i` (lexicographic order) is blue iff bit `i` is set.
    blue_bits: Vec<u64>,
    adj: ColorAdjacency,
}

impl EdgeColoring {
    /// Colors every edge `uv` (`u < v`) with `color(u, v)`.
    pub fn from_fn(shape: Arc<MultipartiteShape>, mut color: impl FnMut(usize, usize) -> ColorClass) -> Self {
        let e = shape.edge_count();
        let mut blue_bits = vec![0u64; e.div_ceil(64).max(1)];
        let mut adj = ColorAdjacency::empty(shape.n());
        for (i, &(u, v)) in shape.edges().iter().enumerate() {
            let c = color(u, v);
            if c == ColorClass::Blue {
                blue_bits[i / 64] |= 1u64 << (i % 64);
            }
            adj.set_edge(u, v, c);
        }
        EdgeColoring { shape, blue_bits, adj }
    }

    pub fn monochromatic(shape: Arc<MultipartiteShape>, c: ColorClass) -> Self {
        Self::from_fn(shape, |_, _| c)
    }

    /// Colors edge `i` blue iff `bit(i)`.
    pub fn from_edge_bits(shape: Arc<MultipartiteShape>, bit: impl Fn(usize) -> bool) -> Self {
        let s = shape.clone();
        Self::from_fn(shape, |u, v| ColorClass::from_bit(bit(s.edge_index(u, v).unwrap())))
    }

    /// Builds a coloring from explicit `(u, v, color)` triples; every edge of
    /// the shape must be listed exactly once.
    pub fn from_edge_list(shape: Arc<MultipartiteShape>, edges: &[(usize, usize, ColorClass)]) -> Result<Self> {
        let mut colors: Vec<Option<ColorClass>> = vec![None; shape.edge_count()];
        for &(u, v, c) in edges {
            shape.check_vertex(u)?;
            shape.check_vertex(v)?;
            let idx = shape.edge_index(u, v).ok_or_else(|| {
                Error::InvalidColoring(format!("{u}{v} is not an edge (same part or loop)"))
            })?;
            if colors[idx].replace(c).is_some() {
                return Err(Error::InvalidColoring(format!("edge {u}{v} listed twice")));
            }
        }
        if let Some(missing) = colors.iter().position(Option::is_none) {
            let (u, v) = shape.edges()[missing];
            return Err(Error::InvalidColoring(format!("edge {u}{v} has no color")));
        }
        Ok(Self::from_edge_bits(shape, |i| colors[i] == Some(ColorClass::Blue)))
    }

    pub fn shape(&self) -> &MultipartiteShape {
        &self.shape
    }

    pub fn shape_arc(&self) -> &Arc<MultipartiteShape> {
        &self.shape
    }

    pub fn n(&self) -> usize {
        self.shape.n()
    }

    pub fn adjacency(&self) -> &ColorAdjacency {
        &self.adj
    }

    /// Color of the `i`-th edge in lexicographic order.
    pub fn edge_color(&self, i: usize) -> ColorClass {
        ColorClass::from_bit(self.blue_bits[i / 64] >> (i % 64) & 1 == 1)
    }

    /// Color of `uv`, or `None` when `u` and `v` share a part.
    pub fn color(&self, u: usize, v: usize) -> Option<ColorClass> {
        self.shape.edge_index(u, v).map(|i| self.edge_color(i))
    }

    pub fn neighbors(&self, c: ColorClass, v: usize) -> VertexSet {
        self.adj.neighbors(c, v)
    }

    pub fn count(&self, c: ColorClass) -> usize {
        let blue: usize = self.blue_bits.iter().map(|w| w.count_ones() as usize).sum();
        match c {
            ColorClass::Blue => blue,
            ColorClass::Red => self.shape.edge_count() - blue,
        }
    }

    /// Edge colors as little-endian packed bytes (bit `i` of the stream is
    /// edge `i`, 1 = blue).
    pub fn to_bytes(&self) -> Vec<u8> {
        let e = self.shape.edge_count();
        let mut bytes = vec![0u8; e.div_ceil(8)];
        for i in 0..e {
            if self.edge_color(i) == ColorClass::Blue {
                bytes[i / 8] |= 1 << (i % 8);
            }
        }
        bytes
    }

    pub fn from_bytes(shape: Arc<MultipartiteShape>, bytes: &[u8]) -> Result<Self> {
        let e = shape.edge_count();
        if bytes.len() != e.div_ceil(8) {
            return Err(Error::InvalidColoring(format!(
                "{} bytes of color bits for {e} edges",
                bytes.len()
            )));
        }
        if e % 8 != 0 && bytes[e / 8] >> (e % 8) != 0 {
            return Err(Error::InvalidColoring("padding bits must be zero".into()));
        }
        Ok(Self::from_edge_bits(shape, |i| bytes[i / 8] >> (i % 8) & 1 == 1))
    }

    pub fn to_hex(&self) -> String {
        hex::encode(self.to_bytes())
    }

    pub fn from_hex(shape: Arc<MultipartiteShape>, s: &str) -> Result<Self> {
        let bytes = hex::decode(s).map_err(|e| Error::Parse(format!("bad hex color bits: {e}")))?;
        Self::from_bytes(shape, &bytes)
    }

    /// The same coloring with red and blue exchanged.
    pub fn swapped(&self) -> EdgeColoring {
        Self::from_fn(self.shape.clone(), |u, v| self.adj.color(u, v).unwrap().swap())
    }

    /// Relabels vertices: the result colors `perm[u] perm[v]` like `uv`.
    /// `perm` must map parts onto parts of the same shape.
    pub fn permuted(&self, perm: &[usize]) -> Result<EdgeColoring> {
        let n = self.n();
        if perm.len() != n {
            return Err(Error::InvalidParameter("permutation length mismatch".into()));
        }
        let mut inv = vec![usize::MAX; n];
        for (u, &pu) in perm.iter().enumerate() {
            if pu >= n || inv[pu] != usize::MAX {
                return Err(Error::InvalidParameter("not a permutation".into()));
            }
            inv[pu] = u;
        }
        for u in 0..n {
            for v in (u + 1)..n {
                if self.shape.is_edge(u, v) != self.shape.is_edge(perm[u], perm[v]) {
                    return Err(Error::InvalidParameter("permutation does not preserve parts".into()));
                }
            }
        }
        Ok(Self::from_fn(self.shape.clone(), |x, y| self.adj.color(inv[x], inv[y]).unwrap()))
    }
}

impl fmt::Debug for EdgeColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EdgeColoring({:?}, bits={})", self.shape, self.to_hex())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_shape;

    #[test]
    fn every_edge_gets_one_color() {
        let shape = Arc::new(build_shape(&[3, 2, 2]).unwrap());
        let chi = EdgeColoring::from_fn(shape.clone(), |u, v| ColorClass::from_bit((u + v) % 3 == 0));
        for u in 0..shape.n() {
            for v in 0..shape.n() {
                let a = chi.adjacency();
                let red = a.neighbors(ColorClass::Red, u).contains(v);
                let blue = a.neighbors(ColorClass::Blue, u).contains(v);
                assert_eq!(red || blue, shape.is_edge(u, v));
                assert!(!(red && blue));
            }
        }
        assert_eq!(chi.count(ColorClass::Red) + chi.count(ColorClass::Blue), 16);
    }

    #[test]
    fn hex_round_trip() {
        let shape = Arc::new(build_shape(&[4, 3, 2]).unwrap());
        let chi = EdgeColoring::from_fn(shape.clone(), |u, v| ColorClass::from_bit(u * v % 5 < 2));
        let back = EdgeColoring::from_hex(shape, &chi.to_hex()).unwrap();
        assert_eq!(chi, back);
    }

    #[test]
    fn edge_list_must_be_complete() {
        let shape = Arc::new(build_shape(&[1, 1]).unwrap());
        assert!(EdgeColoring::from_edge_list(shape.clone(), &[]).is_err());
        assert!(EdgeColoring::from_edge_list(shape.clone(), &[(0, 0, ColorClass::Red)]).is_err());
        let ok = EdgeColoring::from_edge_list(shape, &[(0, 1, ColorClass::Red)]).unwrap();
        assert_eq!(ok.color(1, 0), Some(ColorClass::Red));
    }

    #[test]
    fn permutation_must_respect_parts() {
        let shape = Arc::new(build_shape(&[2, 2]).unwrap());
        let chi = EdgeColoring::from_fn(shape, |u, _| ColorClass::from_bit(u == 0));
        assert!(chi.permuted(&[1, 0, 2, 3]).is_ok());
        assert!(chi.permuted(&[2, 3, 0, 1]).is_ok());
        assert!(chi.permuted(&[0, 2, 1, 3]).is_err());
    }
}
