//! Newline-delimited JSON record corpus.
//!
//! One record per line: `id` (required), `date` (`YYYY-MM-DD`, required),
//! `title` (optional), `mentions` (array of `{entity, count}`, required,
//! may be empty). Unknown fields are ignored; duplicate entity entries
//! within one record are summed.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use serde::Deserialize;

use crate::corpus::{parse_iso_date, DocId, Document, EntityId};
use crate::error::{Error, Result};

#[derive(Debug, Deserialize)]
struct RawRecord {
    id: String,
    date: String,
    #[serde(default)]
    title: Option<String>,
    mentions: Vec<RawMention>,
}

#[derive(Debug, Deserialize)]
struct RawMention {
    entity: String,
    count: u64,
}

/// Parses one record line into a [`Document`].
pub fn parse_record_line(line: &str) -> Result<Document, String> {
    let raw: RawRecord = serde_json::from_str(line).map_err(|e| e.to_string())?;
    let id = DocId::new(raw.id).map_err(|e| e.to_string())?;
    let date = parse_iso_date(&raw.date).ok_or_else(|| {
        format!("document `{}`: unparseable date `{}`", id, raw.date)
    })?;
    let mut mentions: BTreeMap<EntityId, u64> = BTreeMap::new();
    for m in raw.mentions {
        if m.count == 0 {
            return Err(format!(
                "document `{}`: mention count for `{}` must be >= 1",
                id, m.entity
            ));
        }
        let entity = EntityId::new(&m.entity).map_err(|e| e.to_string())?;
        *mentions.entry(entity).or_insert(0) += m.count;
    }
    Document::new(id, date, raw.title, mentions).map_err(|e| e.to_string())
}

/// Reads a record corpus, preserving file order.
///
/// Blank lines are skipped. Errors carry the 1-based line number; a repeated
/// document id is rejected naming the id.
pub fn ingest_records(path: impl AsRef<Path>) -> Result<Vec<Document>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    ingest_records_from(file, &path.display().to_string())
}

/// [`ingest_records`] over any reader; `source` labels error messages.
pub fn ingest_records_from(reader: impl Read, source: &str) -> Result<Vec<Document>> {
    let reader = BufReader::new(reader);
    let mut docs = Vec::new();
    let mut seen: BTreeSet<DocId> = BTreeSet::new();
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| Error::parse(source, lineno, e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let doc = parse_record_line(&line).map_err(|msg| Error::parse(source, lineno, msg))?;
        if !seen.insert(doc.id().clone()) {
            return Err(Error::DuplicateDocId(doc.id().to_string()));
        }
        docs.push(doc);
    }
    Ok(docs)
}

/// Serializes a document back to one record line (mentions in entity order).
pub fn record_line(doc: &Document) -> String {
    let mentions: Vec<serde_json::Value> = doc
        .mentions()
        .iter()
        .map(|(e, c)| serde_json::json!({"entity": e.as_str(), "count": c}))
        .collect();
    let mut obj = serde_json::Map::new();
    obj.insert("id".into(), serde_json::json!(doc.id().as_str()));
    obj.insert(
        "date".into(),
        serde_json::json!(doc.date().format("%Y-%m-%d").to_string()),
    );
    if let Some(title) = doc.title() {
        obj.insert("title".into(), serde_json::json!(title));
    }
    obj.insert("mentions".into(), serde_json::Value::Array(mentions));
    serde_json::Value::Object(obj).to_string()
}
