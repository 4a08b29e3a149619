//! Indexing and ranking engine for entity-temporal queries over annotated
//! document archives.
//!
//! An archive here is a set of dated documents, each carrying per-entity
//! mention counts produced by an entity-linking pipeline. Queries name a set
//! of entity IRIs, a date interval, and AND/OR semantics; the engine retrieves
//! the matching documents and orders them with one of two rankers:
//!
//! * [`prob`] — a probabilistic model multiplying up to three normalized
//!   factors: how much of a document's mention mass belongs to the query
//!   entities, how busy its publication bucket is, and how strongly its other
//!   entities co-occur with the query entities over time.
//! * [`rwr`] — a random walk with restart over a query-entity / document /
//!   related-entity transition graph whose edge weights reuse the same factor
//!   scores.
//!
//! [`eval`] scores ranked runs against graded judgments (NDCG@k, P@k),
//! generates averaged random baselines, runs paired t-tests, and sweeps the
//! walk parameters.
//!
//! All score computations are generic over the scalar type via [`Real`];
//! structs default to `f64` and the I/O layer (snapshots, TREC files,
//! reports) is fixed at `f64`.

pub mod corpus;
pub mod error;
pub mod eval;
pub mod prob;
pub mod query;
pub mod rwr;
pub mod scalar;
pub mod snapshot;

pub use corpus::{
    build_index, bucketize, CorpusIndex, DocId, Document, EntityId, Granularity, TimeBucket,
};
pub use error::{Error, Result};
pub use prob::{rank_probabilistic, FactorSelection, ScoredDoc};
pub use query::{match_query, Query, QueryType, ResultSet, Semantics};
pub use rwr::{rank_stochastic, RwrParams, TransitionGraph};
pub use scalar::Real;

/// Scalar the CLI, snapshots, and evaluation reports run at.
pub type DefaultScalar = f64;
