//! Cheap certified covers tried before exhaustive search, mostly built from
//! the structure around clone pairs (the two vertices of a part of size 2).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cover::{is_valid, Cover, MonoSubgraph};
use crate::graph::{
    BiLayerPartition, CloneProfile, ColorAdjacency, ColorClass, EdgeColoring, MultipartiteShape,
    VertexSet,
};

/// Which certificate settled a coloring class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    Spanning,
    TwoStars,
    CloneProfile,
    CloneEccentric,
    CloneC5,
    Exhaustive,
}

impl Rule {
    pub const ALL: [Rule; 6] =
        [Rule::Spanning, Rule::TwoStars, Rule::CloneProfile, Rule::CloneEccentric, Rule::CloneC5, Rule::Exhaustive];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Rule::Spanning => "spanning",
            Rule::TwoStars => "two-stars",
            Rule::CloneProfile => "clone-profile",
            Rule::CloneEccentric => "clone-eccentric",
            Rule::CloneC5 => "clone-c5",
            Rule::Exhaustive => "exhaustive",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which families of cheap certificates to try.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PruneConfig {
    pub stars: bool,
    pub clones: bool,
}

impl Default for PruneConfig {
    fn default() -> Self {
        PruneConfig { stars: true, clones: true }
    }
}

impl PruneConfig {
    pub fn none() -> Self {
        PruneConfig { stars: false, clones: false }
    }
}

/// Tries the star and clone certificates at diameter `d`, returning the first
/// one that verifies.
pub fn prune_with_constructions(chi: &EdgeColoring, d: u32) -> Option<(Cover, Rule)> {
    let clones = clone_table(chi.shape());
    prune_on(chi.adjacency(), &clones, d, PruneConfig::default())
}

/// Clone of every vertex in a part of size 2.
pub(crate) fn clone_table(shape: &MultipartiteShape) -> Vec<Option<usize>> {
    (0..shape.n()).map(|v| shape.clone_of(v).ok()).collect()
}

pub(crate) fn prune_on(
    adj: &ColorAdjacency,
    clones: &[Option<usize>],
    d: u32,
    config: PruneConfig,
) -> Option<(Cover, Rule)> {
    let all = adj.vertices();
    let ok = |cover: &Cover| is_valid(adj, cover, d, 2);
    if config.stars {
        for u in 0..adj.n() {
            if adj.all_neighbors(u).with(u) == all {
                let cover = crate::construct::two_stars_on(adj, u);
                if ok(&cover) {
                    return Some((cover, Rule::TwoStars));
                }
            }
        }
    }
    if !config.clones {
        return None;
    }
    for (v, clone) in clones.iter().enumerate() {
        let Some(w) = *clone else { continue };
        let profile = CloneProfile::compute(adj, v, w);
        for i in ColorClass::BOTH {
            for j in ColorClass::BOTH {
                if profile.x(i, j).is_empty() {
                    let cover = Cover::new(vec![
                        MonoSubgraph::star(adj, i.swap(), v),
                        MonoSubgraph::star(adj, j.swap(), w),
                    ]);
                    if ok(&cover) {
                        return Some((cover, Rule::CloneProfile));
                    }
                }
            }
        }
    }
    for swap in [false, true] {
        let view = if swap { adj.swapped() } else { adj.clone() };
        for x in 0..adj.n() {
            let Some(xc) = clones[x] else { continue };
            let bl = BiLayerPartition::compute(&view, x, xc);
            for cover in eccentric_candidates(&view, clones, &bl) {
                let cover = if swap { cover.swapped() } else { cover };
                if ok(&cover) {
                    return Some((cover, Rule::CloneEccentric));
                }
            }
            for cover in c5_candidates(&view, clones, &bl) {
                let cover = if swap { cover.swapped() } else { cover };
                if ok(&cover) {
                    return Some((cover, Rule::CloneC5));
                }
            }
        }
    }
    None
}

fn red_star(adj: &ColorAdjacency, v: usize) -> VertexSet {
    adj.star(ColorClass::Red, v)
}

fn blue_star(adj: &ColorAdjacency, v: usize) -> VertexSet {
    adj.star(ColorClass::Blue, v)
}

fn pair(a: (ColorClass, VertexSet), b: (ColorClass, VertexSet)) -> Cover {
    Cover::new(vec![MonoSubgraph::new(a.0, a.1), MonoSubgraph::new(b.0, b.1)])
}

/// Candidates for a vertex far from `x` in blue.
fn eccentric_candidates(adj: &ColorAdjacency, clones: &[Option<usize>], bl: &BiLayerPartition) -> Vec<Cover> {
    use ColorClass::{Blue, Red};
    let (x, xc) = (bl.x, bl.clone);
    let mut out = Vec::new();
    let far = bl.a(3, 2) | bl.a(3, 3);
    let near_x = bl.row(1);
    for y in far.iter() {
        out.push(pair((Red, red_star(adj, x)), (Red, red_star(adj, y))));
        let Some(yc) = clones[y] else { continue };
        if bl.a(1, 1).contains(yc) {
            out.push(pair((Red, red_star(adj, xc).with(x)), (Blue, blue_star(adj, xc))));
        } else if near_x.contains(yc) {
            out.push(pair((Red, red_star(adj, yc).with(y).with(x)), (Blue, blue_star(adj, yc))));
            out.push(pair((Red, red_star(adj, y)), (Blue, blue_star(adj, yc))));
        }
    }
    out
}

/// Candidates around the red five-cycle blow-up through `x`, `A_{2,2}`, `x'`.
fn c5_candidates(adj: &ColorAdjacency, clones: &[Option<usize>], bl: &BiLayerPartition) -> Vec<Cover> {
    use ColorClass::{Blue, Red};
    let (x, xc) = (bl.x, bl.clone);
    let mut out = Vec::new();
    let a22 = bl.a(2, 2);
    let far_from_x = bl.a(2, 1) | bl.a(3, 1);
    for y in bl.a(1, 3).iter() {
        let yc = clones[y];
        let rest = match yc {
            Some(c) => far_from_x.without(c),
            None => far_from_x,
        };
        let c5 = a22 | rest | VertexSet::singleton(x).with(xc).with(y);
        out.push(pair((Blue, blue_star(adj, x)), (Red, c5)));
        if let Some(c) = yc {
            out.push(pair((Red, red_star(adj, c)), (Red, c5)));
            out.push(pair((Red, red_star(adj, c)), (Red, red_star(adj, xc))));
        }
    }
    out
}

/// Which clone-pair properties a coloring satisfies. Colorings that need
/// diameter 3 with two subgraphs must satisfy all three.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CloneProperties {
    /// Every clone pair has all four two-step color patterns.
    pub all_patterns: bool,
    /// No vertex is at blue distance 3 from one of `x`, `x'` and 2 or more
    /// from the other.
    pub no_far_sets: bool,
    /// Clones of `A_{1,3}` lie in `A_{2,1}`, clones of `A_{3,1}` in `A_{1,2}`.
    pub clone_positions: bool,
}

impl CloneProperties {
    pub fn all(&self) -> bool {
        self.all_patterns && self.no_far_sets && self.clone_positions
    }
}

pub(crate) fn clone_properties(adj: &ColorAdjacency, clones: &[Option<usize>]) -> CloneProperties {
    let mut props = CloneProperties { all_patterns: true, no_far_sets: true, clone_positions: true };
    for (v, clone) in clones.iter().enumerate() {
        let Some(w) = *clone else { continue };
        let profile = CloneProfile::compute(adj, v, w);
        if ColorClass::BOTH.iter().any(|&i| ColorClass::BOTH.iter().any(|&j| profile.x(i, j).is_empty())) {
            props.all_patterns = false;
        }
        let bl = BiLayerPartition::compute(adj, v, w);
        if !(bl.a(2, 3) | bl.a(3, 2) | bl.a(3, 3)).is_empty() {
            props.no_far_sets = false;
        }
        let clone_in = |u: usize, target: VertexSet| clones[u].is_none_or(|c| target.contains(c));
        if !bl.a(1, 3).iter().all(|y| clone_in(y, bl.a(2, 1))) || !bl.a(3, 1).iter().all(|z| clone_in(z, bl.a(1, 2)))
        {
            props.clone_positions = false;
        }
    }
    props
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::cover::verify_cover;
    use crate::graph::MultipartiteShape;

    #[test]
    fn all_red_pairs_settle_by_profile() {
        let chi = EdgeColoring::monochromatic(Arc::new(MultipartiteShape::pairs(4).unwrap()), ColorClass::Red);
        let (cover, rule) = prune_with_constructions(&chi, 2).unwrap();
        assert_eq!(rule, Rule::CloneProfile);
        assert_eq!(verify_cover(&chi, &cover, 2, 2).unwrap(), Ok(()));
    }

    #[test]
    fn empty_profile_equal_colors() {
        // v = 0 sends only red, v' = 1 sends only red, except one blue edge at v':
        // no vertex sends blue to both, so the blue/blue pattern is empty.
        let shape = Arc::new(MultipartiteShape::pairs(3).unwrap());
        let chi = EdgeColoring::from_fn(shape, |u, v| ColorClass::from_bit((u, v) == (1, 2)));
        let clones = clone_table(chi.shape());
        let profile = CloneProfile::compute(chi.adjacency(), 0, 1);
        assert!(profile.x(ColorClass::Blue, ColorClass::Blue).is_empty());
        let (cover, _) = prune_on(chi.adjacency(), &clones, 2, PruneConfig::default()).unwrap();
        assert_eq!(verify_cover(&chi, &cover, 2, 2).unwrap(), Ok(()));
    }

    #[test]
    fn random_certificates_verify() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let shape = Arc::new(MultipartiteShape::pairs(5).unwrap());
        for _ in 0..500 {
            let p: f64 = rng.random_range(0.2..0.8);
            let chi = EdgeColoring::from_fn(shape.clone(), |_, _| ColorClass::from_bit(rng.random_bool(p)));
            if let Some((cover, _)) = prune_with_constructions(&chi, 2) {
                assert_eq!(verify_cover(&chi, &cover, 2, 2).unwrap(), Ok(()));
            }
        }
    }
}
