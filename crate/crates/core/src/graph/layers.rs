use crate::error::Result;
use crate::graph::distance::bfs;
use crate::graph::{ColorAdjacency, ColorClass, Distance, EdgeColoring, Grouping, VertexSet};

/// Highest layer bucket; every distance from 4 up (including infinity) lands here.
pub const LAST_BUCKET: u32 = 4;

/// Color-`c` BFS layers from a root, with per-group views.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerPartition {
    root: usize,
    color: ColorClass,
    dist: Vec<Distance>,
    groups: Vec<VertexSet>,
    /// `buckets[g][i]`: vertices of group `g` in layer bucket `i`.
    buckets: Vec<[VertexSet; 5]>,
}

impl LayerPartition {
    pub(crate) fn compute(adj: &ColorAdjacency, c: ColorClass, root: usize, groups: &[VertexSet]) -> Self {
        let dist = bfs(adj, c, root, adj.vertices());
        let mut buckets = vec![[VertexSet::EMPTY; 5]; groups.len()];
        for (g, set) in groups.iter().enumerate() {
            for u in set.iter() {
                buckets[g][bucket_of(dist[u]) as usize].insert(u);
            }
        }
        LayerPartition { root, color: c, dist, groups: groups.to_vec(), buckets }
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn color(&self) -> ColorClass {
        self.color
    }

    /// Exact color distance from the root.
    pub fn distance(&self, u: usize) -> Distance {
        self.dist[u]
    }

    /// Layer bucket of `u`: the distance, with everything at least 4 mapped to 4.
    pub fn layer(&self, u: usize) -> u32 {
        bucket_of(self.dist[u])
    }

    pub fn group_count(&self) -> usize {
        self.groups.len()
    }

    pub fn group(&self, g: usize) -> VertexSet {
        self.groups[g]
    }

    /// Vertices of group `g` in bucket `i` (`0..=4`).
    pub fn view(&self, g: usize, i: u32) -> VertexSet {
        self.buckets[g][i.min(LAST_BUCKET) as usize]
    }

    /// Vertices of group `g` in bucket `i` or higher.
    pub fn view_at_least(&self, g: usize, i: u32) -> VertexSet {
        (i.min(LAST_BUCKET)..=LAST_BUCKET).fold(VertexSet::EMPTY, |acc, j| acc | self.view(g, j))
    }

    /// All vertices in bucket `i`, any group.
    pub fn layer_set(&self, i: u32) -> VertexSet {
        (0..self.groups.len()).fold(VertexSet::EMPTY, |acc, g| acc | self.view(g, i))
    }

    pub fn a(&self, i: u32) -> VertexSet {
        self.view(0, i)
    }

    pub fn b(&self, i: u32) -> VertexSet {
        self.view(1, i)
    }

    pub fn c(&self, i: u32) -> VertexSet {
        self.view(2, i)
    }
}

fn bucket_of(d: Distance) -> u32 {
    d.value().map_or(LAST_BUCKET, |v| v.min(LAST_BUCKET))
}

/// BFS layers of color `c` from `root`, viewed through the groups of `grouping`.
pub fn bfs_layers(chi: &EdgeColoring, c: ColorClass, root: usize, grouping: &Grouping) -> Result<LayerPartition> {
    chi.shape().check_vertex(root)?;
    let groups = grouping.group_sets(chi.shape());
    Ok(LayerPartition::compute(chi.adjacency(), c, root, &groups))
}

/// How the common neighbors of `v` and its clone `v'` see the pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CloneProfile {
    pub vertex: usize,
    pub clone: usize,
    /// `sets[i][j]`: vertices sending color index `i` to `v` and `j` to `v'`.
    sets: [[VertexSet; 2]; 2],
}

impl CloneProfile {
    pub(crate) fn compute(adj: &ColorAdjacency, v: usize, clone: usize) -> Self {
        let mut sets = [[VertexSet::EMPTY; 2]; 2];
        for i in ColorClass::BOTH {
            for j in ColorClass::BOTH {
                sets[i.index()][j.index()] = adj.neighbors(i, v) & adj.neighbors(j, clone);
            }
        }
        CloneProfile { vertex: v, clone, sets }
    }

    /// Vertices `w` with `vw` colored `i` and `v'w` colored `j`.
    pub fn x(&self, i: ColorClass, j: ColorClass) -> VertexSet {
        self.sets[i.index()][j.index()]
    }
}

/// The four clone sets of `v`, whose part must have exactly two vertices.
pub fn clone_profile(chi: &EdgeColoring, v: usize) -> Result<CloneProfile> {
    let clone = chi.shape().clone_of(v)?;
    Ok(CloneProfile::compute(chi.adjacency(), v, clone))
}

/// Blue distances from a clone pair `(x, x')`, with 3 standing for "at least 3".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiLayerPartition {
    pub x: usize,
    pub clone: usize,
    /// `sets[i-1][j-1]` is `A_{i,j}`.
    sets: [[VertexSet; 3]; 3],
}

impl BiLayerPartition {
    pub(crate) fn compute(adj: &ColorAdjacency, x: usize, clone: usize) -> Self {
        let all = adj.vertices();
        let dx = bfs(adj, ColorClass::Blue, x, all);
        let dy = bfs(adj, ColorClass::Blue, clone, all);
        let clamp = |d: Distance| d.value().map_or(3, |v| v.clamp(1, 3)) as usize;
        let mut sets = [[VertexSet::EMPTY; 3]; 3];
        for u in all.without(x).without(clone).iter() {
            sets[clamp(dx[u]) - 1][clamp(dy[u]) - 1].insert(u);
        }
        BiLayerPartition { x, clone, sets }
    }

    /// `A_{i,j}` for `i, j` in `1..=3`.
    pub fn a(&self, i: usize, j: usize) -> VertexSet {
        self.sets[i - 1][j - 1]
    }

    /// `A_{i,*}`.
    pub fn row(&self, i: usize) -> VertexSet {
        (1..=3).fold(VertexSet::EMPTY, |acc, j| acc | self.a(i, j))
    }

    /// `A_{*,j}`.
    pub fn col(&self, j: usize) -> VertexSet {
        (1..=3).fold(VertexSet::EMPTY, |acc, i| acc | self.a(i, j))
    }
}

/// Blue bilayers around `x` and its clone.
pub fn bilayer_partition(chi: &EdgeColoring, x: usize) -> Result<BiLayerPartition> {
    let clone = chi.shape().clone_of(x)?;
    Ok(BiLayerPartition::compute(chi.adjacency(), x, clone))
}
