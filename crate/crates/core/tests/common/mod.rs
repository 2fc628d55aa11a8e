//! Slow reference implementations used as oracles. They read colors one edge
//! at a time and share no code with the library's bitset routines.
#![allow(dead_code)]

use std::collections::VecDeque;

use mpcover::cover::Cover;
use mpcover::graph::{ColorClass, EdgeColoring};

/// Diameter of the color-`c` graph induced on `set`, or `None` when it is
/// disconnected or empty.
pub fn naive_diameter(chi: &EdgeColoring, c: ColorClass, set: &[usize]) -> Option<u32> {
    if set.is_empty() {
        return None;
    }
    let mut worst = 0;
    for &s in set {
        let mut dist = vec![u32::MAX; chi.n()];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in set {
                if dist[w] == u32::MAX && chi.color(u, w) == Some(c) {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        for &w in set {
            if dist[w] == u32::MAX {
                return None;
            }
            worst = worst.max(dist[w]);
        }
    }
    Some(worst)
}

fn members(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|&v| mask >> v & 1 == 1).collect()
}

/// Whether `cover` has at most `t` subgraphs, each connected with diameter at
/// most `d` (`None` = any connected), and covers every vertex.
pub fn naive_is_cover(chi: &EdgeColoring, cover: &Cover, d: Option<u32>, t: usize) -> bool {
    if cover.subgraphs.len() > t {
        return false;
    }
    let mut covered = vec![false; chi.n()];
    for g in &cover.subgraphs {
        let set = g.vertices.to_vec();
        match naive_diameter(chi, g.color, &set) {
            Some(diam) if d.is_none_or(|d| diam <= d) => set.iter().for_each(|&v| covered[v] = true),
            _ => return false,
        }
    }
    covered.iter().all(|&c| c)
}

/// Whether some cover by at most two subgraphs of diameter at most `d`
/// exists, by listing every good vertex set. Meant for at most 13 vertices.
pub fn naive_two_cover_exists(chi: &EdgeColoring, d: u32) -> bool {
    let n = chi.n();
    assert!(n <= 13, "oracle is exponential");
    let full = (1u64 << n) - 1;
    // good[s]: some color makes s a subgraph of diameter <= d.
    let mut good = vec![false; 1 << n];
    for s in 1..=full {
        let set = members(s, n);
        good[s as usize] = ColorClass::BOTH.iter().any(|&c| naive_diameter(chi, c, &set).is_some_and(|x| x <= d));
    }
    if good[full as usize] {
        return true;
    }
    // up[s]: s lies inside some good set.
    let mut up = good.clone();
    for s in (1..=full).rev() {
        if !up[s as usize] {
            up[s as usize] = (0..n).any(|v| s >> v & 1 == 0 && up[(s | 1 << v) as usize]);
        }
    }
    (1..full).any(|s| good[s as usize] && up[(full & !s) as usize])
}
