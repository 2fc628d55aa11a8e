//! Monochromatic low-diameter covers of 2-edge-colored complete multipartite
//! graphs: constructions, an exact search for the diameter cover number of
//! small graphs, explicit extremal colorings and the bridge to the
//! hypergraph formulation of Ryser's conjecture.

pub mod construct;
pub mod cover;
pub mod error;
pub mod families;
pub mod graph;
pub mod harness;
pub mod io;
pub mod par;
pub mod ryser;
pub mod search;

pub use error::{Error, Result};
