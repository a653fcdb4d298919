//! Closed-form verdicts on when braid groups and cyclic right-angled Artin
//! groups embed in mapping class groups, plus a small curves-on-surfaces engine
//! that certifies the witness chains behind the sharp bounds.
//!
//! Layout:
//! - [`surface`]: Euler characteristic arithmetic and cut bookkeeping.
//! - [`graph`]: finite simple graphs and full-subgraph search.
//! - [`bounds`]: maximal chain lengths as functions of the surface.
//! - [`decide`]: embedding verdicts, extension routes and the audit.
//! - [`engine`]: normal coordinates on ideal triangulations.
//! - [`witness`]: chain constructions and certifiers.

pub mod bounds;
pub mod decide;
pub mod engine;
pub mod error;
pub mod graph;
pub mod surface;
pub mod witness;

pub use bounds::{Bound, BoundKind, PathMode, TripleVariant};
pub use decide::{EmbeddingRoute, RouteStep, StepKind, Answer, Verdict};
pub use engine::{CurveFile, NormalCurveSystem, Triangulation};
pub use error::{Error, Result};
pub use graph::{FiniteGraph, FullEmbeddingWitness, SearchOutcome};
pub use surface::{CutKind, CutOutcome, Partition, Surface};
pub use witness::{ChainCertificate, ChainKind, SearchSpace, Witness};
