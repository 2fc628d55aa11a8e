//! Exact `D` for small shapes: every coloring class is settled by a
//! certificate or by exhaustive search, and the worst class wins.
//!
//! The code space is split into a fixed set of cursor ranges that are advanced
//! in waves. Per-range results merge through a commutative monoid (maximum
//! diameter, ties to the smaller code, summed counters), so the outcome does
//! not depend on the number of threads or where a run was interrupted.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::exists::{exact_min_diameter, EXACT_VERTEX_LIMIT};
use super::prune::{clone_properties, prune_on, PruneConfig, Rule};
use super::symmetry::KeyLayout;
use crate::error::{Error, Result};
use crate::graph::{diameter_at_most, ColorAdjacency, ColorClass, EdgeColoring, MultipartiteShape};
use crate::par::Parallelism;

pub const DEFAULT_CAP_EDGES: usize = 28;
pub const CAP_ENV: &str = "MPCOVER_CAP_EDGES";
pub const CHECKPOINT_VERSION: u32 = 1;

const RANGES: u64 = 1024;
const WAVE_STEP: u64 = 1 << 14;
/// Codes are packed into `u64` and the range bound needs one more bit.
const HARD_EDGE_LIMIT: usize = 63;

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub t: usize,
    pub d_max: u32,
    pub symmetry: bool,
    pub prune: PruneConfig,
    pub parallelism: Parallelism,
    /// Edge cap; `None` reads the environment, then the default.
    pub cap_edges: Option<usize>,
    pub checkpoint: Option<PathBuf>,
    /// Stop (with a checkpoint) after scanning this many codes.
    pub max_codes: Option<u64>,
    /// Codes per range per wave.
    pub wave_step: u64,
    /// Record clone-pair properties of classes no certificate settles.
    pub survey: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            t: 2,
            d_max: 4,
            symmetry: true,
            prune: PruneConfig::default(),
            parallelism: Parallelism::Auto,
            cap_edges: None,
            checkpoint: None,
            max_codes: None,
            wave_step: WAVE_STEP,
            survey: false,
        }
    }
}

impl SearchConfig {
    pub fn effective_cap(&self) -> usize {
        self.cap_edges
            .or_else(|| std::env::var(CAP_ENV).ok().and_then(|v| v.trim().parse().ok()))
            .unwrap_or(DEFAULT_CAP_EDGES)
    }
}

/// Classes that no certificate settled at diameter 2.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyCounts {
    pub survivors: u64,
    pub survivors_needing_three: u64,
    pub property_violations: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub codes_scanned: u64,
    pub classes: u64,
    /// Classes per settling rule.
    pub pruned_by_rule: BTreeMap<String, u64>,
    /// Classes per minimum diameter; the last slot is "above `d_max`".
    pub by_diameter: Vec<u64>,
    pub survey: SurveyCounts,
}

impl Counts {
    fn new(d_max: u32) -> Self {
        Counts { by_diameter: vec![0; d_max as usize + 2], ..Default::default() }
    }

    fn merge(&mut self, other: &Counts) {
        self.codes_scanned += other.codes_scanned;
        self.classes += other.classes;
        for (k, v) in &other.pruned_by_rule {
            *self.pruned_by_rule.entry(k.clone()).or_default() += v;
        }
        for (a, b) in self.by_diameter.iter_mut().zip(&other.by_diameter) {
            *a += b;
        }
        self.survey.survivors += other.survey.survivors;
        self.survey.survivors_needing_three += other.survey.survivors_needing_three;
        self.survey.property_violations += other.survey.property_violations;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Best {
    d: u32,
    code: u64,
}

impl Best {
    fn better(a: Option<Best>, b: Option<Best>) -> Option<Best> {
        match (a, b) {
            (None, x) | (x, None) => x,
            (Some(a), Some(b)) => Some(if (b.d, std::cmp::Reverse(b.code)) > (a.d, std::cmp::Reverse(a.code)) {
                b
            } else {
                a
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Agg {
    counts: Counts,
    best: Option<Best>,
}

impl Agg {
    fn new(d_max: u32) -> Self {
        Agg { counts: Counts::new(d_max), best: None }
    }

    fn merge(&mut self, other: &Agg) {
        self.counts.merge(&other.counts);
        self.best = Best::better(self.best, other.best);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CursorRange {
    pub lo: u64,
    pub hi: u64,
    pub pos: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BestRecord {
    pub d: u32,
    pub witness_bits: String,
    pub witness_cursor: u64,
}

/// Resumable state of a search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub version: u32,
    pub shape: Vec<usize>,
    pub t: usize,
    pub d_max: u32,
    pub symmetry: bool,
    pub prune: PruneConfig,
    pub survey: bool,
    #[serde(with = "range_triples")]
    pub cursor_ranges: Vec<CursorRange>,
    pub best: Option<BestRecord>,
    pub counts: Counts,
}

mod range_triples {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::CursorRange;

    pub fn serialize<S: Serializer>(r: &[CursorRange], s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<[u64; 3]> = r.iter().map(|r| [r.lo, r.hi, r.pos]).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<CursorRange>, D::Error> {
        let v = Vec::<[u64; 3]>::deserialize(d)?;
        v.into_iter()
            .map(|[lo, hi, pos]| {
                if lo <= pos && pos <= hi {
                    Ok(CursorRange { lo, hi, pos })
                } else {
                    Err(serde::de::Error::custom(format!("cursor {pos} outside [{lo}, {hi}]")))
                }
            })
            .collect()
    }
}

impl Checkpoint {
    pub fn load(path: &Path) -> Result<Checkpoint> {
        let text = std::fs::read_to_string(path)?;
        let cp: Checkpoint = serde_json::from_str(&text)?;
        if cp.version != CHECKPOINT_VERSION {
            return Err(Error::CheckpointMismatch(format!("version {} (expected {CHECKPOINT_VERSION})", cp.version)));
        }
        Ok(cp)
    }

    /// Writes through a temporary file so an interrupted write leaves the old
    /// checkpoint intact.
    pub fn save(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, serde_json::to_string_pretty(self)?)?;
        std::fs::rename(&tmp, path)?;
        Ok(())
    }
}

/// Deterministic part of a search result.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub shape: Vec<usize>,
    pub t: usize,
    pub d_max: u32,
    pub symmetry: bool,
    /// False when the code budget ran out first.
    pub finished: bool,
    /// Maximum over classes of the minimum cover diameter; `d_max + 1`
    /// means some class has no cover within `d_max`.
    pub d: u32,
    pub exceeds_d_max: bool,
    /// Worst class, as lexicographic edge bits in hex.
    pub witness_bits: Option<String>,
    pub witness_cursor: Option<u64>,
    pub counts: Counts,
}

/// A search outcome plus wall-clock time. Equality ignores the time.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchResult {
    pub outcome: SearchOutcome,
    pub elapsed_secs: f64,
}

impl PartialEq for SearchResult {
    fn eq(&self, other: &Self) -> bool {
        self.outcome == other.outcome
    }
}

impl SearchResult {
    pub fn d(&self) -> u32 {
        self.outcome.d
    }

    pub fn witness(&self) -> Result<Option<EdgeColoring>> {
        let shape = Arc::new(MultipartiteShape::new(&self.outcome.shape)?);
        self.outcome.witness_bits.as_deref().map(|b| EdgeColoring::from_hex(shape, b)).transpose()
    }
}

struct Ctx {
    layout: KeyLayout,
    clones: Vec<Option<usize>>,
    t: usize,
    d_max: u32,
    symmetry: bool,
    prune: PruneConfig,
    survey: bool,
    lower_bound: u32,
}

impl Ctx {
    fn evaluate(&self, code: u64, agg: &mut Agg) {
        agg.counts.codes_scanned += 1;
        if self.symmetry && !self.layout.is_canonical(code) {
            return;
        }
        agg.counts.classes += 1;
        let adj = self.layout.key_adjacency(code);
        let (d, rule) = self.class_value(&adj);
        if rule == Rule::Exhaustive && self.survey {
            let s = &mut agg.counts.survey;
            s.survivors += 1;
            if d >= 3 {
                s.survivors_needing_three += 1;
            }
            if !clone_properties(&adj, &self.clones).all() {
                s.property_violations += 1;
            }
        }
        *agg.counts.pruned_by_rule.entry(rule.name().to_string()).or_default() += 1;
        agg.counts.by_diameter[d as usize] += 1;
        agg.best = Best::better(agg.best, Some(Best { d, code }));
    }

    /// Minimum cover diameter of one class (capped at `d_max + 1`) and the
    /// rule that settled it.
    fn class_value(&self, adj: &ColorAdjacency) -> (u32, Rule) {
        let cap = self.d_max + 1;
        let mut certified = None;
        if self.d_max >= 2 {
            let all = adj.vertices().bits();
            if ColorClass::BOTH.iter().any(|c| diameter_at_most(adj.raw(c.index()), all, 2)) {
                certified = Some(Rule::Spanning);
            } else if self.t == 2 {
                certified = prune_on(adj, &self.clones, 2, self.prune).map(|(_, rule)| rule);
            }
        }
        match certified {
            Some(rule) if self.lower_bound >= 2 => (2, rule),
            Some(rule) => (exact_min_diameter(adj, self.t, 2).0, rule),
            None => (exact_min_diameter(adj, self.t, cap).0, Rule::Exhaustive),
        }
    }

    fn run_range(&self, range: CursorRange, step: u64) -> (CursorRange, Agg) {
        let mut agg = Agg::new(self.d_max);
        let end = range.pos.saturating_add(step).min(range.hi);
        for code in range.pos..end {
            self.evaluate(code, &mut agg);
        }
        (CursorRange { pos: end, ..range }, agg)
    }
}

/// Lower bound on the cover diameter of any coloring: diameter 0 needs
/// singletons only, diameter 1 needs cliques, which take one vertex per part.
fn lower_bound(shape: &MultipartiteShape, t: usize) -> u32 {
    if shape.n() <= t {
        0
    } else if shape.n() <= t * shape.k() {
        1
    } else {
        2
    }
}

/// Roughly how many classes a shape has.
pub fn estimated_classes(shape: &MultipartiteShape) -> Option<f64> {
    let layout = KeyLayout::new(Arc::new(shape.clone()));
    layout.group_order().map(|g| 2f64.powi(shape.edge_count() as i32) / g as f64)
}

/// Computes `D` for `shape` with at most `config.t` subgraphs.
pub fn compute_d(shape: &MultipartiteShape, config: &SearchConfig) -> Result<SearchResult> {
    let started = Instant::now();
    if config.t == 0 || config.t > 2 {
        return Err(Error::Unsupported(format!("t = {} (only 1 and 2 are supported)", config.t)));
    }
    let e = shape.edge_count();
    let cap = config.effective_cap().min(HARD_EDGE_LIMIT);
    if e > cap {
        return Err(Error::CapExceeded {
            what: "edges for enumeration",
            limit: cap as u64,
            requested: e as u64,
            estimated_classes: estimated_classes(shape),
        });
    }
    let singleton_part = shape.part_sizes().contains(&1);
    if shape.n() > EXACT_VERTEX_LIMIT && !(singleton_part && config.prune.stars && config.t == 2 && config.d_max >= 2) {
        return Err(Error::CapExceeded {
            what: "vertices for exhaustive cover search",
            limit: EXACT_VERTEX_LIMIT as u64,
            requested: shape.n() as u64,
            estimated_classes: estimated_classes(shape),
        });
    }

    let layout = KeyLayout::new(Arc::new(shape.clone()));
    let ctx = Ctx {
        clones: layout.key_clones(),
        layout,
        t: config.t,
        d_max: config.d_max,
        symmetry: config.symmetry,
        prune: config.prune,
        survey: config.survey,
        lower_bound: lower_bound(shape, config.t),
    };

    let fresh = fresh_checkpoint(shape, config);
    let mut cp = match &config.checkpoint {
        Some(path) if path.exists() => {
            let cp = Checkpoint::load(path)?;
            check_compatible(&cp, &fresh)?;
            log::info!("resuming from {}", path.display());
            cp
        }
        _ => fresh,
    };
    let mut agg = Agg { counts: cp.counts.clone(), best: restore_best(&cp)? };
    let mut budget = config.max_codes;
    let step = config.wave_step.max(1);

    config.parallelism.install(|| -> Result<()> {
        loop {
            let mut work = Vec::new();
            for (idx, r) in cp.cursor_ranges.iter().enumerate() {
                if r.pos == r.hi {
                    continue;
                }
                let mut s = step.min(r.hi - r.pos);
                if let Some(b) = budget.as_mut() {
                    s = s.min(*b);
                    *b -= s;
                }
                if s > 0 {
                    work.push((idx, *r, s));
                }
            }
            if work.is_empty() {
                break;
            }
            let results = config.parallelism.map(work, |(idx, r, s)| (idx, ctx.run_range(r, s)));
            for (idx, (r, part)) in results {
                cp.cursor_ranges[idx] = r;
                agg.merge(&part);
            }
            cp.counts = agg.counts.clone();
            cp.best = agg.best.map(|b| best_record(&ctx.layout, b));
            if let Some(path) = &config.checkpoint {
                cp.save(path)?;
            }
            log::debug!("wave done: {} codes scanned", agg.counts.codes_scanned);
            if budget == Some(0) {
                break;
            }
        }
        Ok(())
    })?;

    let finished = cp.cursor_ranges.iter().all(|r| r.pos == r.hi);
    let best = agg.best.map(|b| best_record(&ctx.layout, b));
    let d = best.as_ref().map_or(0, |b| b.d);
    let outcome = SearchOutcome {
        shape: shape.part_sizes().to_vec(),
        t: config.t,
        d_max: config.d_max,
        symmetry: config.symmetry,
        finished,
        d,
        exceeds_d_max: d > config.d_max,
        witness_bits: best.as_ref().map(|b| b.witness_bits.clone()),
        witness_cursor: best.as_ref().map(|b| b.witness_cursor),
        counts: agg.counts,
    };
    Ok(SearchResult { outcome, elapsed_secs: started.elapsed().as_secs_f64() })
}

/// [`compute_d`] on `k` parts of size two, with clone certificates and the
/// survey counters on. A checkpoint path is required.
pub fn gk_survey(k: usize, config: &SearchConfig) -> Result<SearchResult> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!("k = {k}; the survey needs k >= 3")));
    }
    if config.checkpoint.is_none() {
        return Err(Error::InvalidParameter("the survey needs a checkpoint path".into()));
    }
    let config = SearchConfig { survey: true, prune: PruneConfig { clones: true, ..config.prune }, ..config.clone() };
    compute_d(&MultipartiteShape::pairs(k)?, &config)
}

fn fresh_checkpoint(shape: &MultipartiteShape, config: &SearchConfig) -> Checkpoint {
    let e = shape.edge_count();
    // Canonical codes start with a 0 bit (the color swap flips it).
    let span: u64 = if config.symmetry && e > 0 { 1u64 << (e - 1) } else { 1u64 << e };
    let ranges = RANGES.min(span);
    let cursor_ranges = (0..ranges)
        .map(|i| {
            let lo = span / ranges * i + i.min(span % ranges);
            let hi = lo + span / ranges + u64::from(i < span % ranges);
            CursorRange { lo, hi, pos: lo }
        })
        .collect();
    Checkpoint {
        version: CHECKPOINT_VERSION,
        shape: shape.part_sizes().to_vec(),
        t: config.t,
        d_max: config.d_max,
        symmetry: config.symmetry,
        prune: config.prune,
        survey: config.survey,
        cursor_ranges,
        best: None,
        counts: Counts::new(config.d_max),
    }
}

fn check_compatible(cp: &Checkpoint, fresh: &Checkpoint) -> Result<()> {
    let same = cp.shape == fresh.shape
        && cp.t == fresh.t
        && cp.d_max == fresh.d_max
        && cp.symmetry == fresh.symmetry
        && cp.prune == fresh.prune
        && cp.survey == fresh.survey
        && cp.cursor_ranges.len() == fresh.cursor_ranges.len()
        && cp.cursor_ranges.iter().zip(&fresh.cursor_ranges).all(|(a, b)| a.lo == b.lo && a.hi == b.hi)
        && cp.counts.by_diameter.len() == fresh.counts.by_diameter.len();
    if same {
        Ok(())
    } else {
        Err(Error::CheckpointMismatch(format!(
            "checkpoint is for parts {:?}, t={}, d_max={}, symmetry={}; this run is parts {:?}, t={}, d_max={}, symmetry={}",
            cp.shape, cp.t, cp.d_max, cp.symmetry, fresh.shape, fresh.t, fresh.d_max, fresh.symmetry
        )))
    }
}

fn best_record(layout: &KeyLayout, b: Best) -> BestRecord {
    BestRecord { d: b.d, witness_bits: layout.coloring_from_code(b.code).to_hex(), witness_cursor: b.code }
}

fn restore_best(cp: &Checkpoint) -> Result<Option<Best>> {
    Ok(cp.best.as_ref().map(|b| Best { d: b.d, code: b.witness_cursor }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_shape;

    fn run(parts: &[usize], symmetry: bool) -> SearchResult {
        let config = SearchConfig { symmetry, parallelism: Parallelism::Sequential, ..Default::default() };
        compute_d(&build_shape(parts).unwrap(), &config).unwrap()
    }

    #[test]
    fn tiny_shapes() {
        assert_eq!(run(&[1, 1, 1], true).d(), 1);
        assert_eq!(run(&[2, 1, 1], true).d(), 1);
        assert_eq!(run(&[3, 1, 1], true).d(), 2);
        assert_eq!(run(&[1, 1], true).d(), 0);
    }

    #[test]
    fn symmetry_matches_raw() {
        for parts in [&[2, 1, 1][..], &[2, 2], &[3, 2], &[2, 1, 1, 1]] {
            let a = run(parts, true);
            let b = run(parts, false);
            assert_eq!(a.d(), b.d(), "{parts:?}");
            assert_eq!(b.outcome.counts.classes, 1 << build_shape(parts).unwrap().edge_count());
        }
    }

    #[test]
    fn cap_is_enforced() {
        let config = SearchConfig { cap_edges: Some(10), ..Default::default() };
        let err = compute_d(&build_shape(&[4, 3, 2]).unwrap(), &config).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { limit: 10, requested: 26, estimated_classes: Some(_), .. }));
    }

    #[test]
    fn budget_stops_early() {
        let config =
            SearchConfig { max_codes: Some(100), parallelism: Parallelism::Sequential, ..Default::default() };
        let r = compute_d(&build_shape(&[2, 2, 2]).unwrap(), &config).unwrap();
        assert!(!r.outcome.finished);
        assert_eq!(r.outcome.counts.codes_scanned, 100);
    }
}
