//! Constructive covers: two subgraphs of diameter at most 3 for colorings of
//! complete multipartite graphs with at least three parts, and two connected
//! monochromatic subgraphs for any complete multipartite graph.
//!
//! Every cover is checked against the full coloring before it is returned.

mod pipeline;
mod tc2;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cover::{is_valid, Cover, MonoSubgraph};
use crate::error::{Error, Result};
use crate::graph::{set_diameter, ColorAdjacency, ColorClass, EdgeColoring, Grouping};

pub use pipeline::{multipartite_cover, tripartite_cover, A2Split, FinalCase};
pub use tc2::tc2_cover;

/// One step of a construction: a case label and the vertices it used.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseStep {
    pub label: String,
    pub witnesses: Vec<usize>,
}

/// Audit trail of a construction.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseTrace {
    pub cases: Vec<CaseStep>,
}

impl CaseTrace {
    pub fn push(&mut self, label: impl Into<String>, witnesses: Vec<usize>) {
        self.cases.push(CaseStep { label: label.into(), witnesses });
    }

    /// Label of the step that produced the cover.
    pub fn last_label(&self) -> Option<&str> {
        self.cases.last().map(|c| c.label.as_str())
    }
}

/// A verified cover together with how it was found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Construction {
    pub cover: Cover,
    pub trace: CaseTrace,
    /// Largest diameter among the emitted subgraphs.
    pub diameter: u32,
    /// Details of the last case of the layered analysis, when it fired.
    pub final_case: Option<FinalCase>,
}

impl Construction {
    pub(crate) fn new(adj: &ColorAdjacency, cover: Cover, trace: CaseTrace) -> Self {
        let diameter = achieved_diameter(adj, &cover);
        Construction { cover, trace, diameter, final_case: None }
    }
}

pub(crate) fn achieved_diameter(adj: &ColorAdjacency, cover: &Cover) -> u32 {
    cover
        .subgraphs
        .iter()
        .map(|g| set_diameter(adj, g.color, g.vertices).value().unwrap_or(u32::MAX))
        .max()
        .unwrap_or(0)
}

/// How parts are merged into three groups before the tripartite analysis.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum GroupingStrategy {
    #[default]
    Balanced,
    FirstFit,
}

impl GroupingStrategy {
    pub fn grouping(self, chi: &EdgeColoring) -> Result<Grouping> {
        match self {
            GroupingStrategy::Balanced => Grouping::balanced(chi.shape()),
            GroupingStrategy::FirstFit => Grouping::first_fit(chi.shape()),
        }
    }
}

impl FromStr for GroupingStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "balanced" => Ok(GroupingStrategy::Balanced),
            "first-fit" => Ok(GroupingStrategy::FirstFit),
            other => Err(Error::Parse(format!("unknown grouping {other:?}"))),
        }
    }
}

impl fmt::Display for GroupingStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupingStrategy::Balanced => "balanced",
            GroupingStrategy::FirstFit => "first-fit",
        })
    }
}

/// The red and blue stars centred at `u`. They cover everything exactly when
/// `u` is alone in its part.
pub fn two_stars_at(chi: &EdgeColoring, u: usize) -> Result<Cover> {
    chi.shape().check_vertex(u)?;
    Ok(two_stars_on(chi.adjacency(), u))
}

pub(crate) fn two_stars_on(adj: &ColorAdjacency, u: usize) -> Cover {
    Cover::new(vec![
        MonoSubgraph::star(adj, ColorClass::Red, u),
        MonoSubgraph::star(adj, ColorClass::Blue, u),
    ])
}

/// Searches every pair (star, double star) for a two-subgraph cover of
/// diameter at most `d`.
pub fn star_doublestar_search(chi: &EdgeColoring, d: u32) -> Option<Cover> {
    star_doublestar_on(chi.adjacency(), d)
}

pub(crate) fn star_doublestar_on(adj: &ColorAdjacency, d: u32) -> Option<Cover> {
    let n = adj.n();
    let all = adj.vertices();
    let mut doubles: Vec<MonoSubgraph> = Vec::new();
    for c in ColorClass::BOTH {
        for w1 in 0..n {
            for w2 in adj.neighbors(c, w1).iter().filter(|&w2| w2 > w1) {
                doubles.push(MonoSubgraph::new(c, adj.star(c, w1) | adj.star(c, w2)));
            }
        }
    }
    for c in ColorClass::BOTH {
        for u in 0..n {
            let star = MonoSubgraph::star(adj, c, u);
            let need = all.difference(star.vertices);
            if need.is_empty() {
                let cover = Cover::new(vec![star]);
                if is_valid(adj, &cover, d, 2) {
                    return Some(cover);
                }
                continue;
            }
            for ds in doubles.iter().filter(|ds| need.is_subset(ds.vertices)) {
                let cover = Cover::new(vec![star, *ds]);
                if is_valid(adj, &cover, d, 2) {
                    return Some(cover);
                }
            }
        }
    }
    None
}

/// Pairs of stars, any centres and colors, checked at diameter `d`.
pub(crate) fn star_pair_on(adj: &ColorAdjacency, d: u32) -> Option<Cover> {
    let n = adj.n();
    let all = adj.vertices();
    let stars: Vec<MonoSubgraph> = ColorClass::BOTH
        .iter()
        .flat_map(|&c| (0..n).map(move |u| (c, u)))
        .map(|(c, u)| MonoSubgraph::star(adj, c, u))
        .collect();
    for (i, a) in stars.iter().enumerate() {
        let need = all.difference(a.vertices);
        for b in &stars[i..] {
            if need.is_subset(b.vertices) {
                let cover = Cover::new(vec![*a, *b]).without_redundant();
                if is_valid(adj, &cover, d, 2) {
                    return Some(cover);
                }
            }
        }
    }
    None
}

/// Best-effort cover at diameter `d` for shapes outside the three-part
/// guarantee: spanning subgraphs, star pairs, star plus double star, then an
/// exact search on small graphs.
pub fn best_effort_cover(chi: &EdgeColoring, d: u32) -> Result<Option<Construction>> {
    let adj = chi.adjacency();
    let mut trace = CaseTrace::default();
    for c in ColorClass::BOTH {
        let cover = Cover::new(vec![MonoSubgraph::new(c, adj.vertices())]);
        if is_valid(adj, &cover, d, 2) {
            trace.push(format!("spanning {c} subgraph"), vec![]);
            return Ok(Some(Construction::new(adj, cover, trace)));
        }
    }
    if let Some(cover) = star_pair_on(adj, d) {
        trace.push("two stars", centres(adj, &cover));
        return Ok(Some(Construction::new(adj, cover, trace)));
    }
    if let Some(cover) = star_doublestar_on(adj, d) {
        trace.push("star and double star", vec![]);
        return Ok(Some(Construction::new(adj, cover, trace)));
    }
    if adj.n() <= pipeline::EXACT_FALLBACK_LIMIT {
        let (best, cover) = crate::search::exact_min_diameter(adj, 2, d + 1);
        if best <= d {
            trace.push("exhaustive search", vec![]);
            return Ok(cover.map(|c| Construction::new(adj, c, trace)));
        }
        return Ok(None);
    }
    Err(Error::CapExceeded {
        what: "vertices for exhaustive cover search",
        limit: pipeline::EXACT_FALLBACK_LIMIT as u64,
        requested: adj.n() as u64,
        estimated_classes: None,
    })
}

fn centres(adj: &ColorAdjacency, cover: &Cover) -> Vec<usize> {
    cover
        .subgraphs
        .iter()
        .filter_map(|g| g.vertices.iter().find(|&u| adj.star(g.color, u) == g.vertices))
        .collect()
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::cover::verify_cover;
    use crate::graph::build_shape;

    #[test]
    fn two_stars_at_singleton_part() {
        let shape = Arc::new(build_shape(&[5, 1, 1]).unwrap());
        let chi = EdgeColoring::from_fn(shape, |u, v| ColorClass::from_bit((u ^ v) & 1 == 1));
        for u in [5, 6] {
            assert_eq!(verify_cover(&chi, &two_stars_at(&chi, u).unwrap(), 2, 2).unwrap(), Ok(()));
        }
    }

    #[test]
    fn two_stars_miss_the_clone() {
        let shape = Arc::new(build_shape(&[2, 2, 2]).unwrap());
        let chi = EdgeColoring::monochromatic(shape, ColorClass::Red);
        let v = verify_cover(&chi, &two_stars_at(&chi, 0).unwrap(), 2, 2).unwrap().unwrap_err();
        assert_eq!(v.kind, crate::cover::ViolationKind::CoverageGap);
        assert_eq!(v.witness, vec![1]);
    }

    #[test]
    fn star_doublestar_on_monochromatic() {
        let shape = Arc::new(build_shape(&[3, 3]).unwrap());
        let chi = EdgeColoring::monochromatic(shape, ColorClass::Blue);
        let cover = star_doublestar_search(&chi, 3).unwrap();
        assert_eq!(verify_cover(&chi, &cover, 3, 2).unwrap(), Ok(()));
    }

    #[test]
    fn grouping_names_round_trip() {
        for g in [GroupingStrategy::Balanced, GroupingStrategy::FirstFit] {
            assert_eq!(g.to_string().parse::<GroupingStrategy>().unwrap(), g);
        }
    }
}
