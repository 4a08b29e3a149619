//! Document collections and the inverted indexes the rankers read.
//!
//! Two ingestion formats are supported: newline-delimited JSON records
//! ([`records`]) and a line-oriented triple subset ([`triples`]). Both
//! produce [`Document`]s; [`build_index`] then derives the immutable
//! docs-by-entity and docs-by-bucket mappings.

mod records;
mod triples;

pub use records::{ingest_records, parse_record_line, record_line, ingest_records_from};
pub use triples::{ingest_triples, ingest_triples_from, TripleVocabulary};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use chrono::{Datelike, NaiveDate};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Entity identity: an absolute IRI in the reference knowledge base.
///
/// Compared byte-exactly; the only normalization is surrounding-whitespace
/// trimming at construction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EntityId(String);

impl EntityId {
    pub fn new(uri: impl AsRef<str>) -> Result<Self> {
        let trimmed = uri.as_ref().trim();
        if trimmed.is_empty() {
            return Err(Error::EmptyEntityIri);
        }
        Ok(EntityId(trimmed.to_string()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for EntityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Opaque document identifier, unique within a corpus.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DocId(String);

impl DocId {
    pub fn new(id: impl Into<String>) -> Result<Self> {
        let id = id.into();
        if id.is_empty() {
            return Err(Error::EmptyDocId);
        }
        Ok(DocId(id))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for DocId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A dated bag of entity-mention counts; the unit of retrieval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    id: DocId,
    date: NaiveDate,
    title: Option<String>,
    mentions: BTreeMap<EntityId, u64>,
}

impl Document {
    /// Builds a document, rejecting zero mention counts.
    pub fn new(
        id: DocId,
        date: NaiveDate,
        title: Option<String>,
        mentions: BTreeMap<EntityId, u64>,
    ) -> Result<Self> {
        if let Some((entity, _)) = mentions.iter().find(|(_, &c)| c == 0) {
            return Err(Error::InvalidParameter(format!(
                "document `{}`: mention count for `{}` must be >= 1",
                id, entity
            )));
        }
        Ok(Document {
            id,
            date,
            title,
            mentions,
        })
    }

    pub fn id(&self) -> &DocId {
        &self.id
    }

    pub fn date(&self) -> NaiveDate {
        self.date
    }

    pub fn title(&self) -> Option<&str> {
        self.title.as_deref()
    }

    /// Entity → occurrence count; keys are `ents(d)`.
    pub fn mentions(&self) -> &BTreeMap<EntityId, u64> {
        &self.mentions
    }

    /// Occurrences of `entity` in this document (0 when absent).
    pub fn count(&self, entity: &EntityId) -> u64 {
        self.mentions.get(entity).copied().unwrap_or(0)
    }

    /// Total mention mass over all entities.
    pub fn total_mentions(&self) -> u64 {
        self.mentions.values().sum()
    }

    /// Number of distinct entities mentioned.
    pub fn entity_count(&self) -> usize {
        self.mentions.len()
    }
}

/// Time-bucket granularity for publication dates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Granularity {
    Day,
    Month,
    Year,
}

impl fmt::Display for Granularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Granularity::Day => f.write_str("day"),
            Granularity::Month => f.write_str("month"),
            Granularity::Year => f.write_str("year"),
        }
    }
}

impl FromStr for Granularity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "day" => Ok(Granularity::Day),
            "month" => Ok(Granularity::Month),
            "year" => Ok(Granularity::Year),
            other => Err(Error::InvalidParameter(format!(
                "unknown granularity `{other}` (expected day, month, or year)"
            ))),
        }
    }
}

/// A publication-date bucket with canonical key
/// (`YYYY-MM-DD` / `YYYY-MM` / `YYYY`).
///
/// Buckets order lexicographically by key, which coincides with
/// chronological order within one granularity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TimeBucket {
    key: String,
    granularity: Granularity,
}

impl TimeBucket {
    pub fn key(&self) -> &str {
        &self.key
    }

    pub fn granularity(&self) -> Granularity {
        self.granularity
    }
}

impl fmt::Display for TimeBucket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key)
    }
}

/// Truncates a date to the given granularity.
pub fn bucketize(date: NaiveDate, granularity: Granularity) -> TimeBucket {
    let key = match granularity {
        Granularity::Day => format!("{:04}-{:02}-{:02}", date.year(), date.month(), date.day()),
        Granularity::Month => format!("{:04}-{:02}", date.year(), date.month()),
        Granularity::Year => format!("{:04}", date.year()),
    };
    TimeBucket { key, granularity }
}

/// Strict ISO calendar date: exactly `YYYY-MM-DD`, valid in the proleptic
/// Gregorian calendar.
pub fn parse_iso_date(s: &str) -> Option<NaiveDate> {
    let b = s.as_bytes();
    if b.len() != 10 || b[4] != b'-' || b[7] != b'-' {
        return None;
    }
    if !b
        .iter()
        .enumerate()
        .all(|(i, &c)| i == 4 || i == 7 || c.is_ascii_digit())
    {
        return None;
    }
    NaiveDate::parse_from_str(s, "%Y-%m-%d").ok()
}

/// Immutable inverted structures over a document collection.
///
/// Built once by [`build_index`]; safely shareable across ranking workers.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusIndex {
    documents: BTreeMap<DocId, Document>,
    docs_by_entity: BTreeMap<EntityId, BTreeSet<DocId>>,
    docs_by_bucket: BTreeMap<TimeBucket, BTreeSet<DocId>>,
    granularity: Granularity,
}

impl CorpusIndex {
    pub fn granularity(&self) -> Granularity {
        self.granularity
    }

    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    pub fn document(&self, id: &DocId) -> Option<&Document> {
        self.documents.get(id)
    }

    pub fn documents(&self) -> impl Iterator<Item = &Document> {
        self.documents.values()
    }

    /// `docs(e)`: ids of documents mentioning `entity`.
    pub fn docs_with_entity(&self, entity: &EntityId) -> Option<&BTreeSet<DocId>> {
        self.docs_by_entity.get(entity)
    }

    /// `docs(t)`: ids of documents published within `bucket`.
    pub fn docs_in_bucket(&self, bucket: &TimeBucket) -> Option<&BTreeSet<DocId>> {
        self.docs_by_bucket.get(bucket)
    }

    pub fn entities(&self) -> impl Iterator<Item = &EntityId> {
        self.docs_by_entity.keys()
    }

    pub fn buckets(&self) -> impl Iterator<Item = (&TimeBucket, &BTreeSet<DocId>)> {
        self.docs_by_bucket.iter()
    }

    /// Bucket a document falls into under this index's granularity.
    pub fn bucket_of(&self, doc: &Document) -> TimeBucket {
        bucketize(doc.date(), self.granularity)
    }

    /// `count(e, d)` via the document table; 0 when either side is unknown.
    pub fn count(&self, entity: &EntityId, doc: &DocId) -> u64 {
        self.documents
            .get(doc)
            .map(|d| d.count(entity))
            .unwrap_or(0)
    }
}

/// Builds the inverted index over `docs` at the given granularity.
///
/// Documents with empty mentions are retained; they can never match a query
/// but they keep the corpus statistics honest.
pub fn build_index(docs: Vec<Document>, granularity: Granularity) -> Result<CorpusIndex> {
    let mut documents = BTreeMap::new();
    let mut docs_by_entity: BTreeMap<EntityId, BTreeSet<DocId>> = BTreeMap::new();
    let mut docs_by_bucket: BTreeMap<TimeBucket, BTreeSet<DocId>> = BTreeMap::new();

    for doc in docs {
        let id = doc.id().clone();
        let bucket = bucketize(doc.date(), granularity);
        for entity in doc.mentions().keys() {
            docs_by_entity
                .entry(entity.clone())
                .or_default()
                .insert(id.clone());
        }
        docs_by_bucket.entry(bucket).or_default().insert(id.clone());
        if documents.insert(id.clone(), doc).is_some() {
            return Err(Error::DuplicateDocId(id.to_string()));
        }
    }

    Ok(CorpusIndex {
        documents,
        docs_by_entity,
        docs_by_bucket,
        granularity,
    })
}
