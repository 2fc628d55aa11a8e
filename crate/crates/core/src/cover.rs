//! Covers by monochromatic subgraphs and their independent verification.
//!
//! A [`MonoSubgraph`] is a vertex set plus a color; it stands for every edge of
//! that color with both ends in the set. Among all subgraphs of one color on a
//! fixed vertex set this one has the smallest distances, so nothing is lost by
//! only ever checking it.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bfs, ColorAdjacency, ColorClass, Distance, EdgeColoring, VertexSet};

/// Diameter bound meaning "connected is enough".
pub const UNBOUNDED: u32 = u32::MAX - 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonoSubgraph {
    pub color: ColorClass,
    pub vertices: VertexSet,
}

impl MonoSubgraph {
    pub fn new(color: ColorClass, vertices: VertexSet) -> Self {
        MonoSubgraph { color, vertices }
    }

    pub fn singleton(v: usize) -> Self {
        MonoSubgraph::new(ColorClass::Red, VertexSet::singleton(v))
    }

    /// The color-`c` star at `v` in `adj`.
    pub fn star(adj: &ColorAdjacency, c: ColorClass, v: usize) -> Self {
        MonoSubgraph::new(c, adj.star(c, v))
    }

    pub fn swapped(self) -> Self {
        MonoSubgraph::new(self.color.swap(), self.vertices)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cover {
    pub subgraphs: Vec<MonoSubgraph>,
}

impl Cover {
    pub fn new(subgraphs: Vec<MonoSubgraph>) -> Self {
        Cover { subgraphs }
    }

    pub fn len(&self) -> usize {
        self.subgraphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgraphs.is_empty()
    }

    pub fn union(&self) -> VertexSet {
        self.subgraphs.iter().fold(VertexSet::EMPTY, |acc, g| acc | g.vertices)
    }

    /// Every subgraph with its color exchanged.
    pub fn swapped(&self) -> Cover {
        Cover::new(self.subgraphs.iter().map(|g| g.swapped()).collect())
    }

    /// Drops subgraphs whose vertices are already covered by an earlier one.
    pub fn without_redundant(mut self) -> Cover {
        let mut kept: Vec<MonoSubgraph> = Vec::new();
        for g in self.subgraphs.drain(..) {
            if !kept.iter().any(|k| g.vertices.is_subset(k.vertices)) {
                kept.push(g);
            }
        }
        Cover::new(kept)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ViolationKind {
    TooManySubgraphs,
    Disconnected,
    DiameterExceeded,
    CoverageGap,
}

/// Why a cover fails. The witness is a vertex (coverage), a vertex pair
/// (connectivity, diameter) or empty (count); `subgraph` names the offender.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub witness: Vec<usize>,
    pub subgraph: Option<usize>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} witness {:?}", self.kind, self.witness)?;
        if let Some(i) = self.subgraph {
            write!(f, " in subgraph {i}")?;
        }
        Ok(())
    }
}

/// Checks `cover` against `chi`: at most `t` subgraphs, each connected in its
/// color with diameter at most `d`, together covering every vertex.
///
/// Returns the first violation in scan order: count, then subgraphs by index,
/// then uncovered vertices by id.
pub fn verify_cover(chi: &EdgeColoring, cover: &Cover, d: u32, t: usize) -> Result<Result<(), Violation>> {
    verify_on(chi.adjacency(), cover, d, t)
}

pub(crate) fn verify_on(adj: &ColorAdjacency, cover: &Cover, d: u32, t: usize) -> Result<Result<(), Violation>> {
    let all = adj.vertices();
    for (i, g) in cover.subgraphs.iter().enumerate() {
        if g.vertices.is_empty() {
            return Err(Error::InvalidCover(format!("subgraph {i} is empty")));
        }
        if let Some(bad) = g.vertices.difference(all).first() {
            return Err(Error::InvalidVertex { vertex: bad, n: adj.n() });
        }
    }
    if cover.len() > t {
        return Ok(Err(Violation { kind: ViolationKind::TooManySubgraphs, witness: vec![], subgraph: None }));
    }
    for (i, g) in cover.subgraphs.iter().enumerate() {
        if let Some((kind, u, v)) = check_subgraph(adj, g, d) {
            return Ok(Err(Violation { kind, witness: vec![u, v], subgraph: Some(i) }));
        }
    }
    if let Some(v) = all.difference(cover.union()).first() {
        return Ok(Err(Violation { kind: ViolationKind::CoverageGap, witness: vec![v], subgraph: None }));
    }
    Ok(Ok(()))
}

/// Convenience form of [`verify_on`] for covers built in-crate.
pub(crate) fn is_valid(adj: &ColorAdjacency, cover: &Cover, d: u32, t: usize) -> bool {
    matches!(verify_on(adj, cover, d, t), Ok(Ok(())))
}

fn check_subgraph(adj: &ColorAdjacency, g: &MonoSubgraph, d: u32) -> Option<(ViolationKind, usize, usize)> {
    for u in g.vertices.iter() {
        let dist = bfs(adj, g.color, u, g.vertices);
        for v in g.vertices.iter() {
            if !dist[v].is_finite() {
                return Some((ViolationKind::Disconnected, u, v));
            }
            if !dist[v].at_most(d) {
                return Some((ViolationKind::DiameterExceeded, u, v));
            }
        }
    }
    None
}

/// Diameter of the subgraph's color class induced on its vertex set.
pub fn subgraph_diameter(chi: &EdgeColoring, g: &MonoSubgraph) -> Result<Distance> {
    crate::graph::color_diameter(chi, g.color, g.vertices)
}

/// Largest subgraph diameter in a cover.
pub fn cover_diameter(chi: &EdgeColoring, cover: &Cover) -> Result<Distance> {
    let mut worst = Distance::ZERO;
    for g in &cover.subgraphs {
        worst = worst.max(subgraph_diameter(chi, g)?);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::graph::build_shape;

    fn chi(parts: &[usize], f: impl Fn(usize, usize) -> bool) -> EdgeColoring {
        EdgeColoring::from_fn(Arc::new(build_shape(parts).unwrap()), |u, v| ColorClass::from_bit(f(u, v)))
    }

    #[test]
    fn two_stars_at_universal_vertex() {
        let c = chi(&[3, 1, 1], |u, v| (u + v) % 2 == 0);
        let adj = c.adjacency();
        let cover = Cover::new(vec![
            MonoSubgraph::star(adj, ColorClass::Red, 3),
            MonoSubgraph::star(adj, ColorClass::Blue, 3),
        ]);
        assert_eq!(verify_cover(&c, &cover, 2, 2).unwrap(), Ok(()));
    }

    #[test]
    fn reports_gap_disconnection_and_count() {
        let c = chi(&[2, 2], |u, v| (u, v) == (0, 2));
        let gap = Cover::new(vec![MonoSubgraph::new(ColorClass::Red, VertexSet(0b1110))]);
        let v = verify_cover(&c, &gap, 5, 2).unwrap().unwrap_err();
        assert_eq!(v.kind, ViolationKind::CoverageGap);
        assert_eq!(v.witness, vec![0]);

        let split = Cover::new(vec![MonoSubgraph::new(ColorClass::Red, VertexSet(0b0101))]);
        let v = verify_cover(&c, &split, 5, 2).unwrap().unwrap_err();
        assert_eq!((v.kind, v.subgraph), (ViolationKind::Disconnected, Some(0)));

        let many = Cover::new((0..4).map(MonoSubgraph::singleton).collect());
        let v = verify_cover(&c, &many, 0, 3).unwrap().unwrap_err();
        assert_eq!(v.kind, ViolationKind::TooManySubgraphs);
        assert_eq!(verify_cover(&c, &many, 0, 4).unwrap(), Ok(()));
    }

    #[test]
    fn diameter_bound_is_enforced() {
        let c = chi(&[2, 2], |_, _| false);
        let all = Cover::new(vec![MonoSubgraph::new(ColorClass::Red, VertexSet(0b1111))]);
        assert_eq!(verify_cover(&c, &all, 1, 1).unwrap().unwrap_err().kind, ViolationKind::DiameterExceeded);
        assert_eq!(verify_cover(&c, &all, 2, 1).unwrap(), Ok(()));
        assert_eq!(cover_diameter(&c, &all).unwrap(), Distance::finite(2));
    }

    #[test]
    fn empty_subgraph_is_malformed() {
        let c = chi(&[1, 1], |_, _| false);
        let bad = Cover::new(vec![MonoSubgraph::new(ColorClass::Red, VertexSet::EMPTY)]);
        assert!(matches!(verify_cover(&c, &bad, 3, 2), Err(Error::InvalidCover(_))));
    }

    #[test]
    fn json_shape() {
        let cover = Cover::new(vec![MonoSubgraph::new(ColorClass::Blue, VertexSet(0b101))]);
        let s = serde_json::to_string(&cover).unwrap();
        assert_eq!(s, r#"{"subgraphs":[{"color":"blue","vertices":[0,2]}]}"#);
        assert_eq!(serde_json::from_str::<Cover>(&s).unwrap(), cover);
    }
}
