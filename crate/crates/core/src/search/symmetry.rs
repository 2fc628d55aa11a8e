//! Orbit-leader enumeration of colorings under vertex symmetries of the host
//! graph and the global color swap.
//!
//! Colorings are written as bitstrings in a key order: vertices are listed
//! round-robin across parts (first vertex of every part, then second, ...),
//! and edge `{i, j}` (`i < j` in key order) sits in row `j` at column `i`. Rows
//! are concatenated with row 1 first, so lexicographic order on bitstrings is
//! integer order on the packed code with the first position most significant.
//! The canonical key of a coloring is the smallest bitstring over its orbit.

use std::cmp::Ordering;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::graph::{ColorAdjacency, ColorClass, EdgeColoring, MultipartiteShape};

/// Fixed per-shape data for the key order.
#[derive(Debug, Clone)]
pub struct KeyLayout {
    shape: Arc<MultipartiteShape>,
    n: usize,
    /// Vertex id at each key position.
    key_vertex: Vec<usize>,
    /// Key position of each vertex id.
    key_index: Vec<usize>,
    key_part: Vec<usize>,
    /// Key-space mask of every part.
    part_members: Vec<u64>,
    part_size: Vec<usize>,
    /// Columns of row `j`: earlier key positions in other parts.
    row_cols: Vec<Vec<u8>>,
    row_start: Vec<usize>,
    edge_count: usize,
}

impl KeyLayout {
    pub fn new(shape: Arc<MultipartiteShape>) -> Self {
        let n = shape.n();
        let k = shape.k();
        let mut key_vertex = Vec::with_capacity(n);
        let max = shape.part_sizes()[0];
        for r in 0..max {
            for p in 0..k {
                if r < shape.part_sizes()[p] {
                    key_vertex.push(shape.part_range(p).start + r);
                }
            }
        }
        let mut key_index = vec![0; n];
        for (i, &v) in key_vertex.iter().enumerate() {
            key_index[v] = i;
        }
        let key_part: Vec<usize> = key_vertex.iter().map(|&v| shape.part_of(v)).collect();
        let mut part_members = vec![0u64; k];
        for (i, &p) in key_part.iter().enumerate() {
            part_members[p] |= 1u64 << i;
        }
        let mut row_cols = Vec::with_capacity(n);
        let mut row_start = Vec::with_capacity(n);
        let mut pos = 0;
        for j in 0..n {
            let cols: Vec<u8> = (0..j).filter(|&i| key_part[i] != key_part[j]).map(|i| i as u8).collect();
            row_start.push(pos);
            pos += cols.len();
            row_cols.push(cols);
        }
        KeyLayout {
            part_size: shape.part_sizes().to_vec(),
            shape,
            n,
            key_vertex,
            key_index,
            key_part,
            part_members,
            row_cols,
            row_start,
            edge_count: pos,
        }
    }

    pub fn shape(&self) -> &Arc<MultipartiteShape> {
        &self.shape
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    fn row_len(&self, j: usize) -> usize {
        self.row_cols[j].len()
    }

    /// Key-space blue adjacency of a packed code (`edge_count <= 64`).
    pub(crate) fn blue_from_code(&self, code: u64) -> [u64; 64] {
        let mut blue = [0u64; 64];
        let e = self.edge_count;
        for j in 1..self.n {
            let start = self.row_start[j];
            for (c, &i) in self.row_cols[j].iter().enumerate() {
                let bit = e - 1 - (start + c);
                if code >> bit & 1 == 1 {
                    blue[j] |= 1u64 << i;
                    blue[i as usize] |= 1u64 << j;
                }
            }
        }
        blue
    }

    fn blue_from_coloring(&self, chi: &EdgeColoring) -> [u64; 64] {
        let mut blue = [0u64; 64];
        for (i, &u) in self.key_vertex.iter().enumerate() {
            for w in chi.neighbors(ColorClass::Blue, u).iter() {
                blue[i] |= 1u64 << self.key_index[w];
            }
        }
        blue
    }

    fn rows(&self, blue: &[u64; 64]) -> Vec<u64> {
        (0..self.n)
            .map(|j| self.row_cols[j].iter().fold(0u64, |r, &i| r << 1 | (blue[j] >> i & 1)))
            .collect()
    }

    fn code_from_rows(&self, rows: &[u64]) -> u64 {
        rows.iter().enumerate().skip(1).fold(0u64, |acc, (j, &r)| {
            let len = self.row_len(j);
            if len == 0 {
                acc
            } else {
                acc << len | r
            }
        })
    }

    /// Adjacency of a packed code with vertices renamed to key positions.
    pub(crate) fn key_adjacency(&self, code: u64) -> ColorAdjacency {
        let blue = self.blue_from_code(code);
        let full = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        let mut red = [0u64; 64];
        for i in 0..self.n {
            red[i] = full & !self.part_members[self.key_part[i]] & !blue[i];
        }
        ColorAdjacency::from_masks(self.n, &red, &blue)
    }

    /// Clone of every key position whose part has size 2.
    pub(crate) fn key_clones(&self) -> Vec<Option<usize>> {
        (0..self.n)
            .map(|i| {
                let m = self.part_members[self.key_part[i]];
                (m.count_ones() == 2).then(|| (m & !(1u64 << i)).trailing_zeros() as usize)
            })
            .collect()
    }

    /// The coloring a packed code stands for.
    pub fn coloring_from_code(&self, code: u64) -> EdgeColoring {
        let blue = self.blue_from_code(code);
        EdgeColoring::from_fn(self.shape.clone(), |u, v| {
            ColorClass::from_bit(blue[self.key_index[u]] >> self.key_index[v] & 1 == 1)
        })
    }

    /// Packed code of a coloring, when it has at most 64 edges.
    pub fn code_from_coloring(&self, chi: &EdgeColoring) -> Option<u64> {
        (self.edge_count <= 64).then(|| self.code_from_rows(&self.rows(&self.blue_from_coloring(chi))))
    }

    /// Whether `code` is the smallest code in its orbit. Codes must have at
    /// most 64 positions.
    pub fn is_canonical(&self, code: u64) -> bool {
        if self.edge_count == 0 {
            return true;
        }
        if code >> (self.edge_count - 1) & 1 == 1 {
            return false;
        }
        let blue = self.blue_from_code(code);
        let rows = self.rows(&blue);
        let mut search = Search::new(self, &blue, rows, true);
        !search.run()
    }

    /// Smallest code rows over the orbit of a key-space coloring.
    fn minimum_rows(&self, blue: &[u64; 64]) -> Vec<u64> {
        let rows = self.rows(blue);
        let mut search = Search::new(self, blue, rows, false);
        search.run();
        search.best
    }

    /// Order of the symmetry group: color swap, permutations inside parts and
    /// permutations of equal-size parts. `None` on overflow.
    pub fn group_order(&self) -> Option<u128> {
        let mut order: u128 = 2;
        for &s in &self.part_size {
            order = order.checked_mul(factorial(s)?)?;
        }
        let mut i = 0;
        while i < self.part_size.len() {
            let run = self.part_size[i..].iter().take_while(|&&s| s == self.part_size[i]).count();
            order = order.checked_mul(factorial(run)?)?;
            i += run;
        }
        Some(order)
    }
}

fn factorial(m: usize) -> Option<u128> {
    (1..=m as u128).try_fold(1u128, |acc, x| acc.checked_mul(x))
}

/// Backtracking over key-position assignments, row by row.
struct Search<'a> {
    lay: &'a KeyLayout,
    blue: &'a [u64; 64],
    best: Vec<u64>,
    check_only: bool,
    flip: bool,
    pi: [u8; 64],
    used: u64,
    /// Original part assigned to each part of the image, or `NONE`.
    part_map: Vec<u8>,
    taken_parts: u64,
}

const NONE: u8 = u8::MAX;

impl<'a> Search<'a> {
    fn new(lay: &'a KeyLayout, blue: &'a [u64; 64], rows: Vec<u64>, check_only: bool) -> Self {
        Search {
            lay,
            blue,
            best: rows,
            check_only,
            flip: false,
            pi: [0; 64],
            used: 0,
            part_map: vec![NONE; lay.part_size.len()],
            taken_parts: 0,
        }
    }

    /// Runs both color passes; in check mode returns true as soon as a
    /// strictly smaller image is found.
    fn run(&mut self) -> bool {
        for flip in [false, true] {
            self.flip = flip;
            if self.go(0) {
                return true;
            }
        }
        false
    }

    fn go(&mut self, j: usize) -> bool {
        let lay = self.lay;
        if j == lay.n {
            return false;
        }
        let q = lay.key_part[j];
        let mapped = self.part_map[q];
        let candidates = if mapped != NONE {
            lay.part_members[mapped as usize] & !self.used
        } else {
            let mut c = 0u64;
            for (p, &m) in lay.part_members.iter().enumerate() {
                if self.taken_parts >> p & 1 == 0 && lay.part_size[p] == lay.part_size[q] {
                    c |= m;
                }
            }
            c
        };
        let len = lay.row_len(j);
        let mask = if len == 0 { 0 } else { u64::MAX >> (64 - len) };
        let mut tried: [(u8, u64); 64] = [(0, 0); 64];
        let mut n_tried = 0;
        let mut cand = candidates;
        while cand != 0 {
            let w = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            let wp = lay.key_part[w] as u8;
            let sig = (wp, self.blue[w]);
            if tried[..n_tried].contains(&sig) {
                continue;
            }
            tried[n_tried] = sig;
            n_tried += 1;

            let mut r = 0u64;
            for &i in &lay.row_cols[j] {
                r = r << 1 | (self.blue[w] >> self.pi[i as usize] & 1);
            }
            if self.flip {
                r = !r & mask;
            }
            match r.cmp(&self.best[j]) {
                Ordering::Greater => continue,
                Ordering::Less => {
                    if self.check_only {
                        return true;
                    }
                    self.best[j] = r;
                    for b in &mut self.best[j + 1..] {
                        *b = u64::MAX;
                    }
                }
                Ordering::Equal => {}
            }
            self.pi[j] = w as u8;
            self.used |= 1u64 << w;
            let newly = mapped == NONE;
            if newly {
                self.part_map[q] = wp;
                self.taken_parts |= 1u64 << wp;
            }
            let found = self.go(j + 1);
            self.used &= !(1u64 << w);
            if newly {
                self.part_map[q] = NONE;
                self.taken_parts &= !(1u64 << wp);
            }
            if found {
                return true;
            }
        }
        false
    }
}

/// The smallest key-order bitstring over the orbit of a coloring, one entry
/// per row.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalKey {
    pub parts: Vec<usize>,
    pub rows: Vec<u64>,
}

impl CanonicalKey {
    /// The key as one packed integer, when it fits.
    pub fn code(&self, layout: &KeyLayout) -> Option<u64> {
        (layout.edge_count() <= 64).then(|| layout.code_from_rows(&self.rows))
    }
}

pub fn canonical_key(chi: &EdgeColoring) -> CanonicalKey {
    let layout = KeyLayout::new(chi.shape_arc().clone());
    canonical_key_with(&layout, chi)
}

pub fn canonical_key_with(layout: &KeyLayout, chi: &EdgeColoring) -> CanonicalKey {
    let blue = layout.blue_from_coloring(chi);
    CanonicalKey { parts: chi.shape().part_sizes().to_vec(), rows: layout.minimum_rows(&blue) }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use proptest::prelude::*;

    use super::*;
    use crate::graph::build_shape;

    fn layout(parts: &[usize]) -> KeyLayout {
        KeyLayout::new(Arc::new(build_shape(parts).unwrap()))
    }

    /// Every image of the coloring under the full group, by brute force.
    fn orbit_codes(lay: &KeyLayout, code: u64) -> BTreeSet<u64> {
        let chi = lay.coloring_from_code(code);
        let shape = lay.shape().clone();
        let n = shape.n();
        let mut out = BTreeSet::new();
        let mut perm: Vec<usize> = (0..n).collect();
        permute_all(&mut perm, 0, &mut |p| {
            if let Ok(img) = chi.permuted(p) {
                out.insert(lay.code_from_coloring(&img).unwrap());
                out.insert(lay.code_from_coloring(&img.swapped()).unwrap());
            }
        });
        out
    }

    fn permute_all(p: &mut [usize], i: usize, f: &mut impl FnMut(&[usize])) {
        if i == p.len() {
            f(p);
            return;
        }
        for j in i..p.len() {
            p.swap(i, j);
            permute_all(p, i + 1, f);
            p.swap(i, j);
        }
    }

    #[test]
    fn code_round_trip() {
        let lay = layout(&[3, 2, 1]);
        for code in [0u64, 1, 0b1011_0110_101, (1 << lay.edge_count()) - 1] {
            assert_eq!(lay.code_from_coloring(&lay.coloring_from_code(code)), Some(code));
        }
    }

    #[test]
    fn two_one_has_two_classes() {
        let lay = layout(&[2, 1]);
        let canon: Vec<u64> = (0..4).filter(|&c| lay.is_canonical(c)).collect();
        assert_eq!(canon.len(), 2);
    }

    #[test]
    fn color_swap_and_vertex_swap_share_keys() {
        let shape = Arc::new(build_shape(&[2, 2]).unwrap());
        let red = EdgeColoring::monochromatic(shape.clone(), ColorClass::Red);
        let blue = EdgeColoring::monochromatic(shape.clone(), ColorClass::Blue);
        assert_eq!(canonical_key(&red), canonical_key(&blue));
        let chi = EdgeColoring::from_fn(shape, |u, v| ColorClass::from_bit((u, v) == (0, 2)));
        let moved = chi.permuted(&[1, 0, 2, 3]).unwrap();
        assert_ne!(chi, moved);
        assert_eq!(canonical_key(&chi), canonical_key(&moved));
    }

    #[test]
    fn canonical_is_orbit_minimum() {
        for parts in [&[2, 2, 1][..], &[2, 1, 1, 1], &[3, 2], &[2, 2, 2]] {
            let lay = layout(parts);
            let e = lay.edge_count();
            let mut classes = 0u64;
            let mut orbit_total = 0u64;
            let step = if e > 10 { 37 } else { 1 };
            for code in (0..1u64 << e).step_by(step) {
                let orbit = orbit_codes(&lay, code);
                let min = *orbit.iter().next().unwrap();
                assert_eq!(lay.is_canonical(code), code == min, "{parts:?} code {code:b}");
                let key = canonical_key_with(&lay, &lay.coloring_from_code(code));
                assert_eq!(key.code(&lay), Some(min));
                if code == min {
                    classes += 1;
                    orbit_total += orbit.len() as u64;
                }
            }
            if step == 1 {
                assert_eq!(orbit_total, 1 << e, "orbits partition the codes for {parts:?}");
                assert!(classes as u128 * lay.group_order().unwrap() >= 1 << e);
            }
        }
    }

    #[test]
    fn group_orders() {
        assert_eq!(layout(&[2, 1]).group_order(), Some(4));
        assert_eq!(layout(&[2, 2, 2]).group_order(), Some(2 * 8 * 6));
        assert_eq!(layout(&[4, 3, 2]).group_order(), Some(2 * 24 * 6 * 2));
    }

    proptest! {
        #[test]
        fn keys_are_orbit_invariant(code in 0u64..(1 << 16), swap in any::<bool>(), seed in 0usize..1000) {
            let lay = layout(&[3, 2, 2]);
            let chi = lay.coloring_from_code(code);
            // Swap the two size-2 parts, rotate inside the size-3 part.
            let perms = [
                vec![1, 2, 0, 5, 6, 3, 4],
                vec![0, 1, 2, 4, 3, 6, 5],
                vec![2, 0, 1, 3, 4, 5, 6],
            ];
            let mut img = chi.permuted(&perms[seed % 3]).unwrap();
            if swap {
                img = img.swapped();
            }
            prop_assert_eq!(canonical_key_with(&lay, &chi), canonical_key_with(&lay, &img));
        }
    }
}
