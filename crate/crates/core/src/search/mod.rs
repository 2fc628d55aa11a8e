//! Cover existence, orbit-leader enumeration and the exact `D` engine.

mod engine;
mod exists;
mod extend;
mod prune;
mod symmetry;

pub use engine::{
    compute_d, estimated_classes, gk_survey, BestRecord, Checkpoint, Counts, CursorRange, SearchConfig,
    SearchOutcome, SearchResult, SurveyCounts, CAP_ENV, CHECKPOINT_VERSION, DEFAULT_CAP_EDGES,
};
pub use exists::{cover_exists, EXACT_VERTEX_LIMIT};
pub(crate) use exists::exact_min_diameter;
pub use extend::{check_monotone_extension, extend_with_map};
pub use prune::{prune_with_constructions, CloneProperties, PruneConfig, Rule};
pub use symmetry::{canonical_key, canonical_key_with, CanonicalKey, KeyLayout};
