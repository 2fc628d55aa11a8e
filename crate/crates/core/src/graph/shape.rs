use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{VertexSet, MAX_VERTICES};

const NO_EDGE: u32 = u32::MAX;

/// The complete multipartite graph `K_{a_1, ..., a_k}` in canonical form.
///
/// Part sizes are non-increasing and each part occupies a contiguous block of
/// vertex ids. Edges are numbered in lexicographic `(u, v)`, `u < v` order; that
/// numbering is what the `bits` file format and the search engine refer to.
#[derive(Clone, PartialEq, Eq)]
pub struct MultipartiteShape {
    part_sizes: Vec<usize>,
    part_start: Vec<usize>,
    part_of: Vec<usize>,
    edges: Vec<(usize, usize)>,
    edge_index: Vec<u32>,
}

/// Builds the canonical shape for the given part sizes (in any order).
pub fn build_shape(part_sizes: &[usize]) -> Result<MultipartiteShape> {
    MultipartiteShape::new(part_sizes)
}

impl MultipartiteShape {
    pub fn new(part_sizes: &[usize]) -> Result<Self> {
        if part_sizes.is_empty() {
            return Err(Error::InvalidShape("no parts given".into()));
        }
        if part_sizes.contains(&0) {
            return Err(Error::InvalidShape("part sizes must be positive".into()));
        }
        let n: usize = part_sizes.iter().sum();
        if n > MAX_VERTICES {
            return Err(Error::InvalidShape(format!(
                "{n} vertices; at most {MAX_VERTICES} are supported"
            )));
        }
        let mut sizes = part_sizes.to_vec();
        sizes.sort_unstable_by(|a, b| b.cmp(a));

        let mut part_start = Vec::with_capacity(sizes.len());
        let mut part_of = Vec::with_capacity(n);
        let mut next = 0;
        for (p, &size) in sizes.iter().enumerate() {
            part_start.push(next);
            part_of.extend(std::iter::repeat_n(p, size));
            next += size;
        }

        let mut edges = Vec::new();
        let mut edge_index = vec![NO_EDGE; n * n];
        for u in 0..n {
            for v in (u + 1)..n {
                if part_of[u] != part_of[v] {
                    let id = edges.len() as u32;
                    edge_index[u * n + v] = id;
                    edge_index[v * n + u] = id;
                    edges.push((u, v));
                }
            }
        }

        Ok(MultipartiteShape {
            part_sizes: sizes,
            part_start,
            part_of,
            edges,
            edge_index,
        })
    }

    /// The shape `G_k`: `k` parts of size two.
    pub fn pairs(k: usize) -> Result<Self> {
        Self::new(&vec![2; k])
    }

    pub fn part_sizes(&self) -> &[usize] {
        &self.part_sizes
    }

    pub fn n(&self) -> usize {
        self.part_of.len()
    }

    pub fn k(&self) -> usize {
        self.part_sizes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    #[inline]
    pub fn part_of(&self, v: usize) -> usize {
        self.part_of[v]
    }

    pub fn part_range(&self, p: usize) -> std::ops::Range<usize> {
        let start = self.part_start[p];
        start..start + self.part_sizes[p]
    }

    pub fn part_set(&self, p: usize) -> VertexSet {
        self.part_range(p).collect()
    }

    pub fn part_size_of(&self, v: usize) -> usize {
        self.part_sizes[self.part_of[v]]
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    #[inline]
    pub fn is_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.part_of[u] != self.part_of[v]
    }

    /// Index of edge `uv` in lexicographic order, if `uv` is an edge.
    #[inline]
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let n = self.n();
        if u >= n || v >= n {
            return None;
        }
        let id = self.edge_index[u * n + v];
        (id != NO_EDGE).then_some(id as usize)
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::InvalidVertex { vertex: v, n: self.n() })
        }
    }

    /// The other vertex of `v`'s part, when that part has exactly two vertices.
    pub fn clone_of(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        let p = self.part_of[v];
        if self.part_sizes[p] != 2 {
            return Err(Error::NoUniqueClone { vertex: v, part_size: self.part_sizes[p] });
        }
        let start = self.part_start[p];
        Ok(if v == start { start + 1 } else { start })
    }

    /// Vertices of every other part.
    pub fn neighborhood(&self, v: usize) -> VertexSet {
        self.vertices().difference(self.part_set(self.part_of[v]))
    }

    /// True when `self` is contained in `other` as a subgraph, i.e. the sorted
    /// part sizes are dominated componentwise.
    pub fn embeds_in(&self, other: &MultipartiteShape) -> bool {
        self.k() <= other.k()
            && self.part_sizes.iter().zip(&other.part_sizes).all(|(a, b)| a <= b)
    }
}

impl fmt::Debug for MultipartiteShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K{:?}", self.part_sizes)
    }
}

impl fmt::Display for MultipartiteShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.part_sizes.iter().map(|s| s.to_string()).collect();
        write!(f, "K_{{{}}}", parts.join(","))
    }
}

/// An assignment of parts to at most three groups, used to view a
/// multipartite graph as a complete tripartite one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grouping {
    groups: Vec<Vec<usize>>,
}

impl Grouping {
    pub fn new(shape: &MultipartiteShape, groups: Vec<Vec<usize>>) -> Result<Self> {
        if groups.is_empty() || groups.len() > 3 {
            return Err(Error::InvalidParameter(format!(
                "a grouping needs between 1 and 3 groups, got {}",
                groups.len()
            )));
        }
        let mut seen = vec![false; shape.k()];
        for g in &groups {
            if g.is_empty() {
                return Err(Error::InvalidParameter("empty group".into()));
            }
            for &p in g {
                if p >= shape.k() || seen[p] {
                    return Err(Error::InvalidParameter(format!("part {p} missing or repeated")));
                }
                seen[p] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidParameter("grouping does not cover every part".into()));
        }
        Ok(Grouping { groups })
    }

    /// One group per part; requires exactly three parts.
    pub fn identity(shape: &MultipartiteShape) -> Result<Self> {
        Self::new(shape, (0..shape.k()).map(|p| vec![p]).collect())
    }

    /// Parts in canonical (descending size) order, each placed into the group
    /// with the fewest vertices so far.
    pub fn balanced(shape: &MultipartiteShape) -> Result<Self> {
        if shape.k() < 3 {
            return Err(Error::InvalidParameter(format!(
                "need at least 3 parts to form 3 groups, got {}",
                shape.k()
            )));
        }
        let mut groups: Vec<Vec<usize>> = vec![Vec::new(); 3];
        let mut load = [0usize; 3];
        for p in 0..shape.k() {
            // Empty groups first so all three are used.
            let g = (0..3)
                .min_by_key(|&g| (!groups[g].is_empty(), load[g], g))
                .unwrap();
            groups[g].push(p);
            load[g] += shape.part_sizes()[p];
        }
        Self::new(shape, groups)
    }

    /// The first two parts on their own, everything else in the third group.
    pub fn first_fit(shape: &MultipartiteShape) -> Result<Self> {
        if shape.k() < 3 {
            return Err(Error::InvalidParameter(format!(
                "need at least 3 parts to form 3 groups, got {}",
                shape.k()
            )));
        }
        Self::new(shape, vec![vec![0], vec![1], (2..shape.k()).collect()])
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// Group index of every vertex.
    pub fn vertex_groups(&self, shape: &MultipartiteShape) -> Vec<usize> {
        let mut part_group = vec![0; shape.k()];
        for (g, parts) in self.groups.iter().enumerate() {
            for &p in parts {
                part_group[p] = g;
            }
        }
        (0..shape.n()).map(|v| part_group[shape.part_of(v)]).collect()
    }

    pub fn group_sets(&self, shape: &MultipartiteShape) -> Vec<VertexSet> {
        self.groups
            .iter()
            .map(|parts| parts.iter().fold(VertexSet::EMPTY, |acc, &p| acc | shape.part_set(p)))
            .collect()
    }
}
