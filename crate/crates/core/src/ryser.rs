//! The two translations between covers of colored graphs by monochromatic
//! components and covers/matchings of r-partite hypergraphs, with exact
//! brute-force values of `tau`, `nu`, `alpha` and `tc` on small inputs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ColorClass, EdgeColoring};

/// An r-partite hypergraph. Vertex ids are `0..vertex_count()`; every vertex
/// lies in exactly one class and every edge meets each class at most once.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypergraph {
    pub classes: Vec<Vec<usize>>,
    pub edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Validates and normalizes: edges sorted, duplicates dropped.
    pub fn new(classes: Vec<Vec<usize>>, edges: Vec<Vec<usize>>) -> Result<Self> {
        let mut h = Hypergraph { classes, edges };
        let class = h.class_of()?;
        for e in &mut h.edges {
            e.sort_unstable();
            if e.is_empty() {
                return Err(Error::InvalidParameter("hypergraph edge is empty".into()));
            }
            let mut seen = vec![false; h.classes.len()];
            for &v in e.iter() {
                let c = *class.get(v).ok_or(Error::InvalidVertex { vertex: v, n: class.len() })?;
                if std::mem::replace(&mut seen[c], true) {
                    return Err(Error::InvalidParameter(format!("edge {e:?} meets class {c} twice")));
                }
            }
        }
        h.edges.sort();
        h.edges.dedup();
        Ok(h)
    }

    pub fn r(&self) -> usize {
        self.classes.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.classes.iter().map(Vec::len).sum()
    }

    /// Class index of every vertex.
    pub fn class_of(&self) -> Result<Vec<usize>> {
        let n = self.vertex_count();
        let mut class = vec![usize::MAX; n];
        for (c, members) in self.classes.iter().enumerate() {
            for &v in members {
                if v >= n {
                    return Err(Error::InvalidVertex { vertex: v, n });
                }
                if class[v] != usize::MAX {
                    return Err(Error::InvalidParameter(format!("vertex {v} is in two classes")));
                }
                class[v] = c;
            }
        }
        Ok(class)
    }

    fn edge_masks(&self) -> Vec<u64> {
        self.edges.iter().map(|e| e.iter().fold(0u64, |m, &v| m | 1 << v)).collect()
    }
}

/// A general graph whose edges carry a color in `0..colors`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredGraph {
    pub n: usize,
    pub colors: usize,
    pub edges: Vec<(usize, usize, usize)>,
}

impl ColoredGraph {
    /// Color 0 is blue, color 1 red, matching the class order of
    /// [`graph_to_hypergraph`].
    pub fn from_coloring(chi: &EdgeColoring) -> Self {
        let edges = chi
            .shape()
            .edges()
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| (u, v, color_index(chi.edge_color(i))))
            .collect();
        ColoredGraph { n: chi.n(), colors: 2, edges }
    }

    fn adjacency(&self) -> Vec<u64> {
        let mut adj = vec![0u64; self.n];
        for &(u, v, _) in &self.edges {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        adj
    }

    /// Component id of every vertex in every color, with singletons for
    /// vertices that have no edge of that color.
    pub fn components(&self) -> Vec<Vec<usize>> {
        (0..self.colors)
            .map(|c| {
                let mut parent: Vec<usize> = (0..self.n).collect();
                fn find(p: &mut [usize], x: usize) -> usize {
                    let mut r = x;
                    while p[r] != r {
                        r = p[r];
                    }
                    let mut x = x;
                    while p[x] != r {
                        let next = p[x];
                        p[x] = r;
                        x = next;
                    }
                    r
                }
                for &(u, v, col) in &self.edges {
                    if col == c {
                        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                        parent[a.max(b)] = a.min(b);
                    }
                }
                let mut ids = vec![usize::MAX; self.n];
                let mut next = 0;
                let roots: Vec<usize> = (0..self.n).map(|v| find(&mut parent, v)).collect();
                let mut out = vec![0; self.n];
                for v in 0..self.n {
                    let r = roots[v];
                    if ids[r] == usize::MAX {
                        ids[r] = next;
                        next += 1;
                    }
                    out[v] = ids[r];
                }
                out
            })
            .collect()
    }
}

fn color_index(c: ColorClass) -> usize {
    match c {
        ColorClass::Blue => 0,
        ColorClass::Red => 1,
    }
}

/// Hypergraph of monochromatic components: class 0 holds the blue
/// components, class 1 the red ones, and every vertex of `chi` gives the edge
/// {its blue component, its red component}.
pub fn graph_to_hypergraph(chi: &EdgeColoring) -> Hypergraph {
    colored_graph_to_hypergraph(&ColoredGraph::from_coloring(chi))
}

pub fn colored_graph_to_hypergraph(g: &ColoredGraph) -> Hypergraph {
    let comps = g.components();
    let mut offset = 0;
    let mut classes = Vec::with_capacity(g.colors);
    let mut starts = Vec::with_capacity(g.colors);
    for ids in &comps {
        let count = ids.iter().max().map_or(0, |m| m + 1);
        starts.push(offset);
        classes.push((offset..offset + count).collect());
        offset += count;
    }
    let edges = (0..g.n).map(|v| (0..g.colors).map(|c| starts[c] + comps[c][v]).collect()).collect();
    Hypergraph::new(classes, edges).expect("component hypergraph is r-partite")
}

/// Graph on the edges of `h`: two edges are adjacent when they meet, colored
/// by the smallest class in which they meet.
pub fn hypergraph_to_graph(h: &Hypergraph) -> Result<ColoredGraph> {
    let class = h.class_of()?;
    let masks = h.edge_masks();
    let mut edges = Vec::new();
    for i in 0..masks.len() {
        for j in i + 1..masks.len() {
            let common = masks[i] & masks[j];
            if common != 0 {
                let c = (0..64).filter(|&v| common >> v & 1 == 1).map(|v| class[v]).min().unwrap();
                edges.push((i, j, c));
            }
        }
    }
    Ok(ColoredGraph { n: masks.len(), colors: h.r(), edges })
}

/// Size limits for the exact solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub max_vertices: usize,
    pub max_edges: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_vertices: 16, max_edges: 24 }
    }
}

/// An optimum with a witness: vertex ids for covers and independent sets,
/// edge indices for matchings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Optimum {
    pub value: usize,
    pub witness: Vec<usize>,
}

/// One part of a component cover: a color and a connected vertex set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentPart {
    pub color: usize,
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeCover {
    pub value: usize,
    pub witness: Vec<ComponentPart>,
}

/// Exact values for whichever side was supplied.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverStats {
    pub tau: Option<Optimum>,
    pub nu: Option<Optimum>,
    pub alpha: Option<Optimum>,
    pub tc: Option<TreeCover>,
}

#[derive(Debug, Clone, Copy)]
pub enum StatsInput<'a> {
    Hypergraph(&'a Hypergraph),
    Graph(&'a ColoredGraph),
}

pub fn exact_stats(input: StatsInput<'_>, caps: Caps) -> Result<CoverStats> {
    let check = |what: &'static str, limit: usize, got: usize| {
        if got > limit {
            Err(Error::CapExceeded { what, limit: limit as u64, requested: got as u64, estimated_classes: None })
        } else {
            Ok(())
        }
    };
    match input {
        StatsInput::Hypergraph(h) => {
            check("hypergraph vertices", caps.max_vertices, h.vertex_count())?;
            check("hypergraph edges", caps.max_edges, h.edges.len())?;
            let masks = h.edge_masks();
            Ok(CoverStats {
                tau: Some(min_transversal(h.vertex_count(), &masks)),
                nu: Some(max_matching(&masks)),
                ..Default::default()
            })
        }
        StatsInput::Graph(g) => {
            check("graph vertices", caps.max_vertices, g.n)?;
            check("graph edges", caps.max_edges, g.edges.len())?;
            Ok(CoverStats { alpha: Some(max_independent(g)), tc: Some(min_tree_cover(g)), ..Default::default() })
        }
    }
}

fn bits(mask: u64) -> Vec<usize> {
    (0..64).filter(|&v| mask >> v & 1 == 1).collect()
}

fn min_transversal(n: usize, edges: &[u64]) -> Optimum {
    let best = (0u64..1 << n)
        .filter(|&s| edges.iter().all(|&e| e & s != 0))
        .min_by_key(|s| (s.count_ones(), *s))
        .expect("the full vertex set hits every edge");
    Optimum { value: best.count_ones() as usize, witness: bits(best) }
}

fn max_matching(edges: &[u64]) -> Optimum {
    fn go(edges: &[u64], i: usize, used: u64, cur: &mut Vec<usize>, best: &mut Vec<usize>) {
        if cur.len() + (edges.len() - i) <= best.len() {
            return;
        }
        if i == edges.len() {
            *best = cur.clone();
            return;
        }
        if edges[i] & used == 0 {
            cur.push(i);
            go(edges, i + 1, used | edges[i], cur, best);
            cur.pop();
        }
        go(edges, i + 1, used, cur, best);
    }
    let mut best = Vec::new();
    go(edges, 0, 0, &mut Vec::new(), &mut best);
    Optimum { value: best.len(), witness: best }
}

fn max_independent(g: &ColoredGraph) -> Optimum {
    let adj = g.adjacency();
    let best = (0u64..1 << g.n)
        .filter(|&s| bits(s).iter().all(|&v| adj[v] & s == 0))
        .max_by_key(|s| (s.count_ones(), std::cmp::Reverse(*s)))
        .unwrap_or(0);
    Optimum { value: best.count_ones() as usize, witness: bits(best) }
}

/// Fewest monochromatic components covering every vertex. Any connected
/// monochromatic subgraph sits inside one component, so components suffice.
fn min_tree_cover(g: &ColoredGraph) -> TreeCover {
    let comps = g.components();
    let members = |c: usize, id: usize| -> u64 { (0..g.n).filter(|&v| comps[c][v] == id).fold(0, |m, v| m | 1 << v) };
    let full = if g.n == 0 { 0 } else { u64::MAX >> (64 - g.n) };

    fn go(
        g: &ColoredGraph,
        comps: &[Vec<usize>],
        members: &dyn Fn(usize, usize) -> u64,
        full: u64,
        covered: u64,
        cur: &mut Vec<(usize, usize)>,
        best: &mut Option<Vec<(usize, usize)>>,
    ) {
        if best.as_ref().is_some_and(|b| cur.len() >= b.len()) {
            return;
        }
        if covered == full {
            *best = Some(cur.clone());
            return;
        }
        let v = (!covered & full).trailing_zeros() as usize;
        for (c, ids) in comps.iter().enumerate().take(g.colors) {
            cur.push((c, ids[v]));
            go(g, comps, members, full, covered | members(c, ids[v]), cur, best);
            cur.pop();
        }
    }
    let mut best = None;
    go(g, &comps, &members, full, 0, &mut Vec::new(), &mut best);
    let best = best.unwrap_or_default();
    TreeCover {
        value: best.len(),
        witness: best.into_iter().map(|(c, id)| ComponentPart { color: c, vertices: bits(members(c, id)) }).collect(),
    }
}

/// The edge of the component hypergraph that vertex `v` maps to.
fn comps_edge(g: &ColoredGraph, h: &Hypergraph, v: usize) -> Vec<usize> {
    let comps = g.components();
    let mut start = 0;
    let mut e = Vec::with_capacity(g.colors);
    for (c, ids) in comps.iter().enumerate() {
        e.push(start + ids[v]);
        start += h.classes[c].len();
    }
    e
}

/// Largest matching of a 2-partite hypergraph by augmenting paths; edges
/// inside one class get a private partner in the other.
pub fn bipartite_matching_number(h: &Hypergraph) -> Result<usize> {
    if h.r() != 2 {
        return Err(Error::InvalidParameter(format!("augmenting-path matching needs r = 2, got {}", h.r())));
    }
    let class = h.class_of()?;
    let n = h.vertex_count();
    let mut left_adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut right_count = n;
    for e in &h.edges {
        let l = e.iter().find(|&&v| class[v] == 0).copied();
        let r = e.iter().find(|&&v| class[v] == 1).copied();
        let (l, r) = match (l, r) {
            (Some(l), Some(r)) => (l, r),
            (Some(l), None) => {
                right_count += 1;
                (l, right_count - 1)
            }
            (None, Some(r)) => {
                left_adj.push(Vec::new());
                (left_adj.len() - 1, r)
            }
            (None, None) => unreachable!("edges are non-empty"),
        };
        left_adj[l].push(r);
    }
    let mut owner = vec![usize::MAX; right_count];
    fn augment(u: usize, adj: &[Vec<usize>], owner: &mut [usize], seen: &mut [bool]) -> bool {
        for &w in &adj[u] {
            if !std::mem::replace(&mut seen[w], true)
                && (owner[w] == usize::MAX || augment(owner[w], adj, owner, seen))
            {
                owner[w] = u;
                return true;
            }
        }
        false
    }
    let mut size = 0;
    for u in 0..left_adj.len() {
        let mut seen = vec![false; right_count];
        if augment(u, &left_adj, &mut owner, &mut seen) {
            size += 1;
        }
    }
    Ok(size)
}

/// One line of an equivalence report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityCheck {
    pub inequality: String,
    pub lhs: usize,
    pub rhs: usize,
    pub ok: bool,
}

fn le(name: &str, lhs: usize, rhs: usize) -> InequalityCheck {
    InequalityCheck { inequality: name.into(), lhs, rhs, ok: lhs <= rhs }
}

/// Every inequality between a coloring and its component hypergraph.
pub fn equivalence_report(chi: &EdgeColoring, caps: Caps) -> Result<Vec<InequalityCheck>> {
    let g = ColoredGraph::from_coloring(chi);
    let h = colored_graph_to_hypergraph(&g);
    let gs = exact_stats(StatsInput::Graph(&g), caps)?;
    let hs = exact_stats(StatsInput::Hypergraph(&h), caps)?;
    let (tc, alpha) = (gs.tc.unwrap(), gs.alpha.unwrap());
    let (tau, nu) = (hs.tau.unwrap(), hs.nu.unwrap());
    let mut report = vec![
        le("tc(G) <= tau(H)", tc.value, tau.value),
        le("tau(H) <= nu(H)", tau.value, nu.value),
        le("nu(H) <= alpha(G)", nu.value, alpha.value),
    ];
    // Vertices whose edges form a matching share no component, so no edge of
    // either color joins them.
    let adj = g.adjacency();
    let vertex_of = |e: usize| (0..g.n).find(|&v| comps_edge(&g, &h, v) == h.edges[e]).expect("every edge comes from a vertex");
    let lifted: Vec<usize> = nu.witness.iter().map(|&e| vertex_of(e)).collect();
    let independent = lifted.iter().all(|&u| lifted.iter().all(|&v| adj[u] >> v & 1 == 0));
    report.push(le("nu(H) <= independent set from its matching", nu.value, if independent { lifted.len() } else { 0 }));
    report.push(le("augmenting-path matching <= nu(H)", bipartite_matching_number(&h)?, nu.value));
    report.push(le("nu(H) <= augmenting-path matching", nu.value, bipartite_matching_number(&h)?));
    Ok(report)
}

/// Every inequality between a hypergraph and its intersection graph.
pub fn hypergraph_report(h: &Hypergraph, caps: Caps) -> Result<Vec<InequalityCheck>> {
    let g = hypergraph_to_graph(h)?;
    let gs = exact_stats(StatsInput::Graph(&g), caps)?;
    let hs = exact_stats(StatsInput::Hypergraph(h), caps)?;
    let (tc, alpha) = (gs.tc.unwrap(), gs.alpha.unwrap());
    let (tau, nu) = (hs.tau.unwrap(), hs.nu.unwrap());
    let mut report = vec![le("tau(H) <= tc(G)", tau.value, tc.value), le("alpha(G) <= nu(H)", alpha.value, nu.value)];
    // Pairwise non-adjacent vertices of G are pairwise disjoint edges of H.
    let masks = h.edge_masks();
    let w = &alpha.witness;
    let disjoint = w.iter().enumerate().all(|(i, &a)| w[i + 1..].iter().all(|&b| masks[a] & masks[b] == 0));
    report.push(le("alpha(G) <= matching from its independent set", alpha.value, if disjoint { w.len() } else { 0 }));
    if h.r() == 2 {
        report.push(le("tc(G) <= alpha(G)", tc.value, alpha.value));
        report.push(le("tau(H) <= nu(H)", tau.value, nu.value));
        report.push(le("augmenting-path matching <= nu(H)", bipartite_matching_number(h)?, nu.value));
    }
    Ok(report)
}

fn fail_on_violation(report: Vec<InequalityCheck>) -> Result<Vec<InequalityCheck>> {
    match report.iter().find(|c| !c.ok) {
        Some(c) => Err(Error::InequalityViolated(format!("{}: {} > {}", c.inequality, c.lhs, c.rhs))),
        None => Ok(report),
    }
}

/// [`equivalence_report`], failing on the first violated inequality.
pub fn verify_equivalence_chain(chi: &EdgeColoring) -> Result<Vec<InequalityCheck>> {
    fail_on_violation(equivalence_report(chi, Caps::default())?)
}

/// [`hypergraph_report`], failing on the first violated inequality.
pub fn verify_hypergraph_chain(h: &Hypergraph) -> Result<Vec<InequalityCheck>> {
    fail_on_violation(hypergraph_report(h, Caps::default())?)
}
