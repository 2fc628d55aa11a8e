use serde::{Deserialize, Serialize};

use super::{star_doublestar_on, two_stars_on, CaseTrace, Construction, GroupingStrategy};
use crate::cover::{is_valid, Cover, MonoSubgraph};
use crate::error::{Error, Exhausted, Result};
use crate::graph::{eccentricity, ColorAdjacency, ColorClass, EdgeColoring, Grouping, LayerPartition, VertexSet};

/// Largest graph handed to the exhaustive fallback.
pub(crate) const EXACT_FALLBACK_LIMIT: usize = 20;

/// Candidates tried per case and root before moving on.
const CANDIDATE_BUDGET: usize = 256;

const D: u32 = 3;

/// The split of the root group's layer-2 vertices used by the last case.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct A2Split {
    /// Only red edges to `B_1`.
    pub x1: VertexSet,
    /// Only red edges to `C_1`, not already in `x1`.
    pub x2: VertexSet,
    /// A red neighbor in both `B_1` and `C_1`, not in `x1` or `x2`.
    pub x3: VertexSet,
    pub red: VertexSet,
    pub blue: VertexSet,
}

impl A2Split {
    fn compute(adj: &ColorAdjacency, a2: VertexSet, b1: VertexSet, c1: VertexSet) -> Self {
        let (mut x1, mut x2, mut x3) = (VertexSet::EMPTY, VertexSet::EMPTY, VertexSet::EMPTY);
        for x in a2.iter() {
            let blue = adj.neighbors(ColorClass::Blue, x);
            let red = adj.neighbors(ColorClass::Red, x);
            if (blue & b1).is_empty() {
                x1.insert(x);
            } else if (blue & c1).is_empty() {
                x2.insert(x);
            } else if !(red & b1).is_empty() && !(red & c1).is_empty() {
                x3.insert(x);
            }
        }
        let red = x1 | x2 | x3;
        A2Split { x1, x2, x3, red, blue: a2.difference(red) }
    }
}

/// What the last case saw.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinalCase {
    pub root: usize,
    /// The color renamed to red for the layered analysis.
    pub color: ColorClass,
    pub split: A2Split,
    /// Every edge between `B_1` and `C_1` is red.
    pub red_b1_c1_complete: bool,
    /// `A_3`, `B_2`, `C_2`, `B_4`, `C_4` are all empty, which is the situation
    /// the layered argument reduces to.
    pub reduced_structure: bool,
}

/// A verified cover with at most two subgraphs of diameter at most 3.
///
/// `grouping` must have three groups; edges inside a group are ignored while
/// building candidates but count when verifying.
pub fn tripartite_cover(chi: &EdgeColoring, grouping: &Grouping) -> Result<Construction> {
    if grouping.len() != 3 {
        return Err(Error::InvalidParameter(format!("need 3 groups, got {}", grouping.len())));
    }
    let vgroups = grouping.vertex_groups(chi.shape());
    let gsets = grouping.group_sets(chi.shape());
    Pipeline::new(chi, &vgroups, gsets).run()
}

/// [`tripartite_cover`] after merging the parts into three groups.
pub fn multipartite_cover(chi: &EdgeColoring, strategy: GroupingStrategy) -> Result<Construction> {
    if chi.shape().k() < 3 {
        return Err(Error::InvalidParameter(format!(
            "need at least 3 parts, got {}",
            chi.shape().k()
        )));
    }
    tripartite_cover(chi, &strategy.grouping(chi)?)
}

struct Pipeline<'a> {
    chi: &'a EdgeColoring,
    full: &'a ColorAdjacency,
    restricted: ColorAdjacency,
    groups: Vec<VertexSet>,
    vgroups: &'a [usize],
    attempts: CaseTrace,
}

enum Step {
    Done(Box<Construction>),
    Next,
}

impl<'a> Pipeline<'a> {
    fn new(chi: &'a EdgeColoring, vgroups: &'a [usize], groups: Vec<VertexSet>) -> Self {
        let full = chi.adjacency();
        Pipeline {
            chi,
            full,
            restricted: full.restricted_to_groups(vgroups),
            groups,
            vgroups,
            attempts: CaseTrace::default(),
        }
    }

    /// Verifies `cover` (given in the colors of `swap`-renamed adjacency)
    /// against the full coloring.
    fn attempt(&mut self, swap: bool, label: &str, witnesses: Vec<usize>, cover: Cover) -> Option<Construction> {
        let cover = if swap { cover.swapped() } else { cover };
        let cover = cover.without_redundant();
        if is_valid(self.full, &cover, D, 2) {
            let mut trace = CaseTrace::default();
            trace.push(label, witnesses);
            Some(Construction::new(self.full, cover, trace))
        } else {
            self.attempts.push(format!("{label} (rejected)"), witnesses);
            None
        }
    }

    fn run(mut self) -> Result<Construction> {
        if let Some(c) = self.small_cases() {
            return Ok(c);
        }
        for color in ColorClass::BOTH {
            let swap = color == ColorClass::Blue;
            let adj = if swap { self.restricted.swapped() } else { self.restricted.clone() };
            for v in 0..adj.n() {
                if eccentricity(&adj, ColorClass::Red, v, adj.vertices()).at_most(3) {
                    continue;
                }
                if let Step::Done(mut c) = self.rooted(&adj, swap, v) {
                    if let Some(fc) = c.final_case.as_mut() {
                        fc.color = color;
                    }
                    let mut trace = CaseTrace::default();
                    trace.push(format!("root with {color} eccentricity at least 4"), vec![v]);
                    trace.cases.extend(c.trace.cases);
                    c.trace = trace;
                    return Ok(*c);
                }
            }
        }
        self.fallbacks()
    }

    fn small_cases(&mut self) -> Option<Construction> {
        let shape = self.chi.shape();
        for u in 0..shape.n() {
            if shape.part_size_of(u) == 1 || self.groups[self.vgroups[u]].len() == 1 {
                let cover = two_stars_on(self.full, u);
                if let Some(c) = self.attempt(false, "single-vertex part: two stars", vec![u], cover) {
                    return Some(c);
                }
            }
        }
        for c in ColorClass::BOTH {
            if crate::graph::diameter_at_most(self.full.raw(c.index()), self.full.vertices().bits(), D) {
                let cover = Cover::new(vec![MonoSubgraph::new(c, self.full.vertices())]);
                if let Some(found) = self.attempt(false, &format!("spanning {c} subgraph"), vec![], cover) {
                    return Some(found);
                }
            }
        }
        if let Some((u, g)) = self.dominating_vertex() {
            if let Some(cover) = star_doublestar_on(self.full, D) {
                return self.attempt(false, "monochromatic domination: star and double star", vec![u, g], cover);
            }
            self.attempts.push("monochromatic domination: no star and double star", vec![u, g]);
        }
        None
    }

    /// A vertex sending one color to every vertex of another group.
    fn dominating_vertex(&self) -> Option<(usize, usize)> {
        for u in 0..self.restricted.n() {
            for (g, &set) in self.groups.iter().enumerate() {
                if g == self.vgroups[u] {
                    continue;
                }
                for c in ColorClass::BOTH {
                    if set.is_subset(self.restricted.neighbors(c, u)) {
                        return Some((u, g));
                    }
                }
            }
        }
        None
    }

    /// Cases driven by the red layers around `v` (red after renaming).
    fn rooted(&mut self, adj: &ColorAdjacency, swap: bool, v: usize) -> Step {
        let a = self.vgroups[v];
        let order: Vec<usize> = std::iter::once(a).chain((0..3).filter(|&g| g != a)).collect();
        let sets: Vec<VertexSet> = order.iter().map(|&g| self.groups[g]).collect();
        let lp = LayerPartition::compute(adj, ColorClass::Red, v, &sets);
        let all = adj.vertices();
        let blue = |x: usize| adj.neighbors(ColorClass::Blue, x);
        let red = |x: usize| adj.neighbors(ColorClass::Red, x);

        // Far vertices in B or C: two blue double stars.
        let mut budget = CANDIDATE_BUDGET;
        for g in [1, 2] {
            let other = 3 - g;
            let far_ac = lp.view_at_least(0, 3) | lp.view_at_least(other, 3);
            for u4 in lp.view(g, 4).iter() {
                if adj.color(v, u4) != Some(ColorClass::Blue) {
                    continue;
                }
                for u1 in lp.view(g, 1).iter() {
                    for u3 in far_ac.iter() {
                        if adj.color(u1, u3) != Some(ColorClass::Blue) {
                            continue;
                        }
                        if budget == 0 {
                            break;
                        }
                        budget -= 1;
                        let s1 = blue(v) | blue(u4) | VertexSet::singleton(v).with(u4);
                        let s2 = blue(u1) | blue(u3) | VertexSet::singleton(u1).with(u3);
                        let cover = Cover::new(vec![
                            MonoSubgraph::new(ColorClass::Blue, s1),
                            MonoSubgraph::new(ColorClass::Blue, s2),
                        ]);
                        if let Some(c) = self.attempt(swap, "far vertex: two blue double stars", vec![u4, u1, u3], cover)
                        {
                            return Step::Done(Box::new(c));
                        }
                    }
                }
            }
        }

        // Layer 2 outside the root group.
        let a23 = lp.a(2) | lp.a(3);
        for x in (lp.b(2) | lp.c(2)).iter() {
            let h = all.difference(a23) | blue(x);
            let cover = Cover::new(vec![
                MonoSubgraph::new(ColorClass::Blue, h),
                MonoSubgraph::new(ColorClass::Red, red(x).with(x)),
            ]);
            if let Some(c) = self.attempt(swap, "layer-2 vertex outside root group: blue graph plus red star", vec![x], cover)
            {
                return Step::Done(Box::new(c));
            }
        }

        let (b1, c1, a2) = (lp.b(1), lp.c(1), lp.a(2));
        let core = all.difference(a2);

        // A blue edge between B_1 and C_1.
        for (x, other) in b1.iter().map(|x| (x, c1)).chain(c1.iter().map(|x| (x, b1))) {
            if (blue(x) & other).is_empty() {
                continue;
            }
            let cover = Cover::new(vec![
                MonoSubgraph::new(ColorClass::Blue, core | blue(x)),
                MonoSubgraph::new(ColorClass::Red, red(x).with(x)),
            ]);
            if let Some(c) = self.attempt(swap, "blue edge between first layers: blue graph plus red star", vec![x], cover) {
                return Step::Done(Box::new(c));
            }
        }

        // Final case: blue blow-up cycle with part of A_2, red path blow-up with the rest.
        let split = A2Split::compute(adj, a2, b1, c1);
        let red_b1_c1_complete = b1.iter().all(|b| c1.is_subset(red(b)));
        let reduced_structure = [lp.a(3), lp.b(2), lp.c(2), lp.b(4), lp.c(4)].iter().all(|s| s.is_empty());
        let mut subgraphs = vec![MonoSubgraph::new(ColorClass::Blue, all.difference(split.red))];
        let red_part = b1 | c1 | split.red;
        if !red_part.is_empty() {
            subgraphs.push(MonoSubgraph::new(ColorClass::Red, red_part));
        }
        let witnesses = vec![v];
        match self.attempt(swap, "final case: blue cycle blow-up and red path blow-up", witnesses, Cover::new(subgraphs)) {
            Some(mut c) => {
                c.final_case = Some(FinalCase {
                    root: v,
                    color: ColorClass::Red,
                    split,
                    red_b1_c1_complete,
                    reduced_structure,
                });
                Step::Done(Box::new(c))
            }
            None => Step::Next,
        }
    }

    fn fallbacks(mut self) -> Result<Construction> {
        if let Some(cover) = star_doublestar_on(self.full, D) {
            if let Some(c) = self.attempt(false, "star and double star search", vec![], cover) {
                return Ok(c);
            }
        }
        if self.full.n() <= EXACT_FALLBACK_LIMIT {
            let (best, cover) = crate::search::exact_min_diameter(self.full, 2, D + 1);
            if best <= D {
                if let Some(c) = cover.and_then(|cv| self.attempt(false, "exhaustive search", vec![], cv)) {
                    return Ok(c);
                }
            }
            self.attempts.push("exhaustive search found nothing", vec![]);
        }
        Err(Error::ConstructionExhausted(Box::new(Exhausted {
            coloring: self.chi.clone(),
            trace: self.attempts,
        })))
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::cover::verify_cover;
    use crate::graph::build_shape;

    fn random(parts: &[usize], seed: u64) -> EdgeColoring {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p: f64 = rng.random_range(0.1..0.9);
        EdgeColoring::from_fn(Arc::new(build_shape(parts).unwrap()), |_, _| ColorClass::from_bit(rng.random_bool(p)))
    }

    #[test]
    fn all_red_uses_spanning_red() {
        let chi = EdgeColoring::monochromatic(Arc::new(build_shape(&[4, 3, 2]).unwrap()), ColorClass::Red);
        let c = multipartite_cover(&chi, GroupingStrategy::Balanced).unwrap();
        assert_eq!(c.trace.last_label(), Some("spanning red subgraph"));
        assert_eq!(c.diameter, 2);
    }

    #[test]
    fn triangle_uses_two_stars() {
        let chi = random(&[1, 1, 1], 3);
        let c = multipartite_cover(&chi, GroupingStrategy::Balanced).unwrap();
        assert!(c.diameter <= 2);
        assert_eq!(c.trace.last_label(), Some("single-vertex part: two stars"));
    }

    #[test]
    fn random_covers_verify() {
        for seed in 0..300 {
            let parts: &[usize] = match seed % 4 {
                0 => &[3, 3, 3],
                1 => &[4, 3, 2],
                2 => &[2, 2, 2, 2],
                _ => &[5, 4, 3, 2],
            };
            let chi = random(parts, seed);
            let c = multipartite_cover(&chi, GroupingStrategy::Balanced).unwrap();
            assert_eq!(verify_cover(&chi, &c.cover, 3, 2).unwrap(), Ok(()), "seed {seed}");
        }
    }

    #[test]
    fn rejects_two_parts() {
        let chi = random(&[3, 3], 1);
        assert!(matches!(multipartite_cover(&chi, GroupingStrategy::Balanced), Err(Error::InvalidParameter(_))));
    }
}
