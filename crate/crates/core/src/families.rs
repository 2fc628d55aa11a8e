//! Explicit colorings with no cover by two monochromatic subgraphs of
//! diameter at most 2. Each generator checks distance facts about its own
//! output and refuses to return a coloring that fails them, so a wrong
//! transcription cannot go unnoticed.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{color_distance, ColorClass, Distance, EdgeColoring, MultipartiteShape};

/// A named coloring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyId {
    /// `K_{2k+1, 2, ..., 2}` with `k` parts of size two.
    Thm31(usize),
    /// The nine-vertex coloring of `K_{4,3,2}`.
    Fig4,
    /// Same coloring as `Thm31(2)`.
    Fig3,
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fig4" => Ok(FamilyId::Fig4),
            "fig3" => Ok(FamilyId::Fig3),
            _ => {
                let k = s
                    .strip_prefix("thm31:k=")
                    .ok_or_else(|| Error::Parse(format!("unknown family {s:?} (expected thm31:k=K, fig4 or fig3)")))?;
                let k = k.parse().map_err(|_| Error::Parse(format!("bad k in {s:?}")))?;
                Ok(FamilyId::Thm31(k))
            }
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyId::Thm31(k) => write!(f, "thm31:k={k}"),
            FamilyId::Fig4 => f.write_str("fig4"),
            FamilyId::Fig3 => f.write_str("fig3"),
        }
    }
}

/// A generated coloring with a human-readable name for every vertex id.
#[derive(Debug, Clone)]
pub struct Family {
    pub id: FamilyId,
    pub coloring: EdgeColoring,
    pub labels: Vec<String>,
}

impl FamilyId {
    pub fn generate(self) -> Result<Family> {
        let (coloring, labels) = match self {
            FamilyId::Thm31(k) => (gen_thm31(k)?, thm31_labels(k)),
            FamilyId::Fig3 => (gen_thm31(2)?, thm31_labels(2)),
            FamilyId::Fig4 => (gen_fig4()?, FIG4_LABELS.iter().map(|s| s.to_string()).collect()),
        };
        Ok(Family { id: self, coloring, labels })
    }
}

fn thm31_labels(k: usize) -> Vec<String> {
    let mut labels: Vec<String> = (1..=2 * k).map(|i| format!("a{i}")).collect();
    labels.push("c".into());
    labels.extend((1..=2 * k).map(|i| format!("b{i}")));
    labels
}

fn checksum(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidColoring(format!("generated coloring fails its checksum: {}", what())))
    }
}

/// Big part `a_1..a_{2k}, c` (ids `0..=2k`, `c = 2k`), then `b_1..b_{2k}`
/// (ids `2k+1..=4k`) in parts `{b_1, b_2}, {b_3, b_4}, ...`. Blue edges are
/// `a_i b_i`, `c b_i` and every `b_i b_j`; the rest are red.
pub fn gen_thm31(k: usize) -> Result<EdgeColoring> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k = {k}; the family starts at k = 2")));
    }
    let mut parts = vec![2 * k + 1];
    parts.extend(std::iter::repeat_n(2, k));
    let shape = Arc::new(MultipartiteShape::new(&parts)?);
    let c = 2 * k;
    let b = |i: usize| 2 * k + i;
    let is_b = |v: usize| v > c;
    let chi = EdgeColoring::from_fn(shape, |u, v| {
        let blue = if is_b(u) && is_b(v) {
            true
        } else if is_b(v) {
            u == c || v == b(u + 1)
        } else {
            false
        };
        ColorClass::from_bit(blue)
    });

    checksum(chi.neighbors(ColorClass::Red, c).is_empty(), || "c has a red edge".into())?;
    for a in 0..c {
        checksum(chi.neighbors(ColorClass::Blue, a).len() == 1, || format!("a{} has blue degree != 1", a + 1))?;
    }
    checksum(
        (0..c).all(|a| (0..c).filter(|&x| x != a).all(|x| chi.neighbors(ColorClass::Blue, x) != chi.neighbors(ColorClass::Blue, a))),
        || "blue edges at the a_i are not a matching".into(),
    )?;
    checksum(color_distance(&chi, ColorClass::Red, 0, b(1))? == Distance::finite(3), || "d_red(a1, b1) != 3".into())?;
    checksum(color_distance(&chi, ColorClass::Blue, 0, b(2))? == Distance::finite(3), || "d_blue(a1, b2) != 3".into())?;
    Ok(chi)
}

/// Vertex names of the `K_{4,3,2}` coloring by id.
pub const FIG4_LABELS: [&str; 9] = ["v0", "v1", "v2", "v3", "v6", "v7", "v8", "v4", "v5"];

const FIG4_BLUE: [(usize, usize); 12] =
    [(0, 4), (0, 5), (0, 7), (0, 8), (1, 4), (1, 6), (1, 7), (2, 4), (2, 8), (3, 5), (5, 7), (5, 8)];

fn fig4_id(label: usize) -> usize {
    FIG4_LABELS.iter().position(|s| s[1..].parse::<usize>().unwrap() == label).unwrap()
}

/// The `K_{4,3,2}` coloring with parts `{v0..v3}`, `{v6, v7, v8}`,
/// `{v4, v5}`; see [`FIG4_LABELS`] for the ids.
pub fn gen_fig4() -> Result<EdgeColoring> {
    let shape = Arc::new(MultipartiteShape::new(&[4, 3, 2])?);
    let blue: Vec<(usize, usize)> = FIG4_BLUE.iter().map(|&(a, b)| (fig4_id(a), fig4_id(b))).collect();
    let chi = EdgeColoring::from_fn(shape, |u, v| ColorClass::from_bit(blue.contains(&(u, v)) || blue.contains(&(v, u))));

    checksum(chi.count(ColorClass::Blue) == 12 && chi.count(ColorClass::Red) == 14, || "edge counts".into())?;
    let v = fig4_id;
    for (x, y) in [(2, 3), (2, 6), (3, 6)] {
        let d = color_distance(&chi, ColorClass::Blue, v(x), v(y))?;
        checksum(!d.at_most(2), || format!("d_blue(v{x}, v{y}) = {d}"))?;
    }
    for (x, y) in [(0, 1), (0, 7), (1, 7)] {
        let d = color_distance(&chi, ColorClass::Red, v(x), v(y))?;
        checksum(d == Distance::finite(3), || format!("d_red(v{x}, v{y}) = {d}"))?;
    }
    let middles = |c: ColorClass, x: usize, y: usize| (chi.neighbors(c, v(x)) & chi.neighbors(c, v(y))).to_vec();
    checksum(middles(ColorClass::Blue, 1, 5) == vec![v(7)], || "blue 2-paths from v1 to v5".into())?;
    checksum(middles(ColorClass::Red, 7, 5) == vec![v(2)], || "red 2-paths from v7 to v5".into())?;
    Ok(chi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thm31_checksums_hold() {
        for k in 2..=6 {
            let chi = gen_thm31(k).unwrap();
            assert_eq!(chi.shape().part_sizes()[0], 2 * k + 1);
            assert_eq!(chi.n(), 4 * k + 1);
        }
        assert!(matches!(gen_thm31(1), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn thm31_k2_edge_counts() {
        let chi = gen_thm31(2).unwrap();
        assert_eq!((chi.count(ColorClass::Blue), chi.count(ColorClass::Red)), (12, 12));
    }

    #[test]
    fn fig3_is_thm31_k2() {
        let a = FamilyId::Fig3.generate().unwrap();
        let b = FamilyId::Thm31(2).generate().unwrap();
        assert_eq!(a.coloring, b.coloring);
        assert_eq!(a.labels, b.labels);
    }

    #[test]
    fn fig4_labels_and_parts() {
        let f = FamilyId::Fig4.generate().unwrap();
        let shape = f.coloring.shape();
        assert_eq!(shape.part_sizes(), &[4, 3, 2]);
        assert_eq!(shape.part_of(fig4_id(7)), 1);
        assert_eq!(shape.part_of(fig4_id(4)), 2);
        assert_eq!(f.coloring.color(fig4_id(5), fig4_id(7)), Some(ColorClass::Blue));
        assert_eq!(f.coloring.color(fig4_id(4), fig4_id(6)), Some(ColorClass::Red));
    }

    #[test]
    fn family_names_round_trip() {
        for id in [FamilyId::Thm31(3), FamilyId::Fig4, FamilyId::Fig3] {
            assert_eq!(id.to_string().parse::<FamilyId>().unwrap(), id);
        }
        assert!("thm31".parse::<FamilyId>().is_err());
    }
}
