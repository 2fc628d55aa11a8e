//! Run configuration, the closed-form tripartite classification, and seeded
//! fuzz drivers for the constructive and bridging results.
//!
//! Iteration `i` of a fuzz run draws from ChaCha8 seeded with the run seed on
//! stream `i`, so a run is reproducible from its seed alone and independent
//! of the thread count.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::construct::{multipartite_cover, tc2_cover, GroupingStrategy};
use crate::cover::{verify_cover, UNBOUNDED};
use crate::error::{Error, Result};
use crate::graph::{color_diameter, ColorClass, EdgeColoring, MultipartiteShape};
use crate::io;
use crate::par::Parallelism;
use crate::ryser::{verify_equivalence_chain, verify_hypergraph_chain, Hypergraph};
use crate::search::{prune_with_constructions, PruneConfig};

/// Everything that determines a run; embedded in every report.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parts: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_max: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prune: Option<PruneConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checkpoint: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cap_edges: Option<usize>,
}

/// `D` for two subgraphs on a three-part graph, from the part sizes alone:
/// 1 for `K_3` and `K_{2,1,1}`, 3 when the graph contains `K_{5,2,2}` or
/// `K_{4,3,2}`, and 2 otherwise.
pub fn classify(parts: &[usize]) -> Result<u32> {
    let shape = MultipartiteShape::new(parts)?;
    if shape.k() != 3 {
        return Err(Error::Unsupported(format!(
            "classification is known for three parts only, got {} parts",
            shape.k()
        )));
    }
    let sizes = shape.part_sizes();
    if sizes == [1, 1, 1] || sizes == [2, 1, 1] {
        return Ok(1);
    }
    let contains = |small: [usize; 3]| sizes.iter().zip(small).all(|(&a, b)| a >= b);
    Ok(if contains([5, 2, 2]) || contains([4, 3, 2]) { 3 } else { 2 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FuzzMode {
    Construct,
    Tc2,
    Prune,
    Equivalence,
}

impl FromStr for FuzzMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "construct" => Ok(FuzzMode::Construct),
            "tc2" => Ok(FuzzMode::Tc2),
            "prune" => Ok(FuzzMode::Prune),
            "equivalence" => Ok(FuzzMode::Equivalence),
            _ => Err(Error::Parse(format!("unknown fuzz mode {s:?}"))),
        }
    }
}

impl fmt::Display for FuzzMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FuzzMode::Construct => "construct",
            FuzzMode::Tc2 => "tc2",
            FuzzMode::Prune => "prune",
            FuzzMode::Equivalence => "equivalence",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzViolation {
    pub iteration: u64,
    pub message: String,
    /// File holding the failing input, when dumps are on.
    pub reproducer: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzReport {
    pub mode: FuzzMode,
    pub seed: u64,
    pub iterations: u64,
    /// Inputs on which the checked object was produced and verified (covers
    /// built, certificates found, chains checked).
    pub checked: u64,
    pub exhausted: u64,
    pub violations: Vec<FuzzViolation>,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

const HARD_FLIPS: usize = 400;

pub fn iteration_rng(seed: u64, iteration: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(iteration);
    rng
}

/// Part sizes drawn uniformly from `1..=max_part`, with parts shrunk (largest
/// first) until there are at most `max_n` vertices.
pub fn random_shape(rng: &mut impl Rng, parts: std::ops::RangeInclusive<usize>, max_part: usize, max_n: usize) -> MultipartiteShape {
    let k = rng.random_range(parts);
    let mut sizes: Vec<usize> = (0..k).map(|_| rng.random_range(1..=max_part)).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    while sizes.iter().sum::<usize>() > max_n {
        sizes[0] -= 1;
        sizes.sort_unstable_by(|a, b| b.cmp(a));
    }
    MultipartiteShape::new(&sizes).expect("sizes are positive")
}

/// Each edge blue with a probability drawn once per coloring.
pub fn random_coloring(rng: &mut impl Rng, shape: Arc<MultipartiteShape>) -> EdgeColoring {
    let p: f64 = rng.random_range(0.05..0.95);
    EdgeColoring::from_fn(shape, |_, _| ColorClass::from_bit(rng.random_bool(p)))
}

/// Local search for a coloring where neither color has spanning diameter at
/// most 3 and no vertex sends a single color to a whole other part. Returns
/// the last coloring visited and whether it got there.
pub fn hard_coloring(rng: &mut impl Rng, shape: Arc<MultipartiteShape>, max_flips: usize) -> (EdgeColoring, bool) {
    let e = shape.edge_count();
    let mut bits: Vec<bool> = (0..e).map(|_| rng.random_bool(0.5)).collect();
    let build = |bits: &[bool]| EdgeColoring::from_edge_bits(shape.clone(), |j| bits[j]);
    let mut cur = easiness(&build(&bits));
    for _ in 0..max_flips {
        if cur == 0 {
            break;
        }
        let j = rng.random_range(0..e);
        bits[j] = !bits[j];
        let s = easiness(&build(&bits));
        if s <= cur {
            cur = s;
        } else {
            bits[j] = !bits[j];
        }
    }
    (build(&bits), cur == 0)
}

fn easiness(chi: &EdgeColoring) -> usize {
    let shape = chi.shape();
    let all = shape.vertices();
    let mut score = 0;
    for c in ColorClass::BOTH {
        if color_diameter(chi, c, all).is_ok_and(|d| d.at_most(3)) {
            score += 4;
        }
    }
    for u in 0..shape.n() {
        for p in 0..shape.k() {
            let part = shape.part_set(p);
            if part.contains(u) {
                continue;
            }
            for c in ColorClass::BOTH {
                if part.is_subset(chi.neighbors(c, u)) {
                    score += 1;
                }
            }
        }
    }
    score
}

/// A 2-partite hypergraph on at most 6 vertices with at most 6 edges.
pub fn random_hypergraph(rng: &mut impl Rng) -> Hypergraph {
    let n = rng.random_range(2..=6);
    let split = rng.random_range(1..n);
    let classes = vec![(0..split).collect::<Vec<_>>(), (split..n).collect()];
    let m = rng.random_range(1..=6);
    let edges = (0..m)
        .map(|_| {
            let mut e = Vec::new();
            let pick = rng.random_range(0..3);
            if pick != 1 {
                e.push(rng.random_range(0..split));
            }
            if pick != 0 {
                e.push(rng.random_range(split..n));
            }
            e
        })
        .collect();
    Hypergraph::new(classes, edges).expect("edges meet each class once")
}

enum Input {
    Coloring(EdgeColoring),
    Hypergraph(Hypergraph),
}

struct Outcome {
    checked: bool,
    exhausted: bool,
    failure: Option<(String, Input)>,
}

impl Outcome {
    fn ok(checked: bool) -> Self {
        Outcome { checked, exhausted: false, failure: None }
    }

    fn fail(message: String, input: Input) -> Self {
        Outcome { checked: false, exhausted: false, failure: Some((message, input)) }
    }
}

fn run_one(mode: FuzzMode, seed: u64, i: u64) -> Outcome {
    let mut rng = iteration_rng(seed, i);
    match mode {
        FuzzMode::Construct => {
            // Odd iterations search for colorings that skip the easy cases.
            let chi = if i % 2 == 0 {
                let shape = Arc::new(random_shape(&mut rng, 3..=6, 10, 30));
                random_coloring(&mut rng, shape)
            } else {
                let mut sizes: Vec<usize> = (0..3).map(|_| rng.random_range(2..=6)).collect();
                sizes.sort_unstable_by(|a, b| b.cmp(a));
                let shape = Arc::new(MultipartiteShape::new(&sizes).expect("sizes are positive"));
                hard_coloring(&mut rng, shape, HARD_FLIPS).0
            };
            match multipartite_cover(&chi, GroupingStrategy::Balanced) {
                Ok(c) => match verify_cover(&chi, &c.cover, 3, 2) {
                    Ok(Ok(())) => Outcome::ok(true),
                    Ok(Err(v)) => Outcome::fail(format!("cover fails verification: {v}"), Input::Coloring(chi)),
                    Err(e) => Outcome::fail(e.to_string(), Input::Coloring(chi)),
                },
                Err(e) => {
                    let exhausted = matches!(e, Error::ConstructionExhausted(_));
                    let mut out = Outcome::fail(e.to_string(), Input::Coloring(chi));
                    out.exhausted = exhausted;
                    out
                }
            }
        }
        FuzzMode::Tc2 => {
            let shape = Arc::new(random_shape(&mut rng, 2..=6, 10, 30));
            let chi = random_coloring(&mut rng, shape);
            match tc2_cover(&chi).and_then(|c| verify_cover(&chi, &c, UNBOUNDED, 2)) {
                Ok(Ok(())) => Outcome::ok(true),
                Ok(Err(v)) => Outcome::fail(format!("cover fails verification: {v}"), Input::Coloring(chi)),
                Err(e) => Outcome::fail(e.to_string(), Input::Coloring(chi)),
            }
        }
        FuzzMode::Prune => {
            let shape = Arc::new(MultipartiteShape::pairs(5).expect("valid shape"));
            let chi = random_coloring(&mut rng, shape);
            match prune_with_constructions(&chi, 2) {
                None => Outcome::ok(false),
                Some((cover, rule)) => match verify_cover(&chi, &cover, 2, 2) {
                    Ok(Ok(())) => Outcome::ok(true),
                    Ok(Err(v)) => Outcome::fail(format!("{rule} certificate fails: {v}"), Input::Coloring(chi)),
                    Err(e) => Outcome::fail(e.to_string(), Input::Coloring(chi)),
                },
            }
        }
        FuzzMode::Equivalence => {
            let h = random_hypergraph(&mut rng);
            if let Err(e) = verify_hypergraph_chain(&h) {
                return Outcome::fail(e.to_string(), Input::Hypergraph(h));
            }
            let shape = Arc::new(random_shape(&mut rng, 2..=4, 3, 7));
            let chi = random_coloring(&mut rng, shape);
            match verify_equivalence_chain(&chi) {
                Ok(_) => Outcome::ok(true),
                Err(e) => Outcome::fail(e.to_string(), Input::Coloring(chi)),
            }
        }
    }
}

fn dump(dir: &Path, mode: FuzzMode, seed: u64, i: u64, input: &Input) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(format!("{mode}-seed{seed}-iter{i}.json"));
    let text = match input {
        Input::Coloring(chi) => io::coloring_to_json(chi),
        Input::Hypergraph(h) => io::to_json(h),
    };
    std::fs::write(&path, text)?;
    Ok(path)
}

/// Runs `iterations` seeded cases of `mode`. Failing inputs are written to
/// `dump_dir` when one is given.
pub fn fuzz(
    mode: FuzzMode,
    seed: u64,
    iterations: u64,
    dump_dir: Option<&Path>,
    parallelism: Parallelism,
) -> Result<FuzzReport> {
    let outcomes = parallelism.install(|| parallelism.map((0..iterations).collect(), |i| (i, run_one(mode, seed, i))));
    let mut report = FuzzReport { mode, seed, iterations, checked: 0, exhausted: 0, violations: Vec::new() };
    for (i, out) in outcomes {
        report.checked += u64::from(out.checked);
        report.exhausted += u64::from(out.exhausted);
        if let Some((message, input)) = out.failure {
            let reproducer = dump_dir.map(|d| dump(d, mode, seed, i, &input)).transpose()?;
            log::warn!("{mode} iteration {i}: {message}");
            report.violations.push(FuzzViolation { iteration: i, message, reproducer });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hard_colorings_avoid_easy_cases() {
        let shape = Arc::new(MultipartiteShape::new(&[4, 4, 3]).unwrap());
        let mut reached = 0;
        for i in 0..20 {
            let (chi, ok) = hard_coloring(&mut iteration_rng(1, i), shape.clone(), HARD_FLIPS);
            if ok {
                reached += 1;
                assert_eq!(easiness(&chi), 0);
                let again = hard_coloring(&mut iteration_rng(1, i), shape.clone(), HARD_FLIPS).0;
                assert_eq!(chi, again);
            }
        }
        assert!(reached > 0);
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify(&[5, 2, 2]).unwrap(), 3);
        assert_eq!(classify(&[2, 1, 1]).unwrap(), 1);
        assert_eq!(classify(&[1, 1, 1]).unwrap(), 1);
        assert_eq!(classify(&[4, 2, 2]).unwrap(), 2);
        assert_eq!(classify(&[7, 3, 2]).unwrap(), 3);
        assert_eq!(classify(&[3, 3, 3]).unwrap(), 2);
        assert!(matches!(classify(&[2, 2]), Err(Error::Unsupported(_))));
    }

    #[test]
    fn random_shapes_respect_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let s = random_shape(&mut rng, 3..=6, 10, 30);
            assert!((3..=6).contains(&s.k()) && s.n() <= 30);
        }
    }

    #[test]
    fn fuzz_is_reproducible() {
        for mode in [FuzzMode::Construct, FuzzMode::Tc2, FuzzMode::Prune, FuzzMode::Equivalence] {
            let a = fuzz(mode, 11, 40, None, Parallelism::Sequential).unwrap();
            let b = fuzz(mode, 11, 40, None, Parallelism::Auto).unwrap();
            assert_eq!(a, b);
            assert!(a.passed(), "{mode}: {:?}", a.violations);
        }
    }

    #[test]
    fn mode_names() {
        for m in ["construct", "tc2", "prune", "equivalence"] {
            assert_eq!(m.parse::<FuzzMode>().unwrap().to_string(), m);
        }
    }
}
