//! Structured queries and result-set computation.
//!
//! A query names an ordered entity set `E_Q`, an inclusive date interval
//! `T_Q`, and AND/OR semantics. Category queries expand a category IRI to
//! its member entities (from a local membership file) and force OR
//! semantics. Matching yields the document set `D_Q` plus the candidate
//! related entities mentioned alongside the query entities.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;
use std::str::FromStr;

use chrono::NaiveDate;
use serde::Deserialize;

use crate::corpus::{parse_iso_date, CorpusIndex, DocId, EntityId};
use crate::error::{Error, Result};

/// Match semantics: all query entities vs at least one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Semantics {
    And,
    Or,
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Semantics::And => f.write_str("and"),
            Semantics::Or => f.write_str("or"),
        }
    }
}

/// Report-grouping label for a query. Inferred from structure when the
/// query file does not declare one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum QueryType {
    Single,
    And,
    Or,
    Category,
}

impl fmt::Display for QueryType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QueryType::Single => f.write_str("single"),
            QueryType::And => f.write_str("and"),
            QueryType::Or => f.write_str("or"),
            QueryType::Category => f.write_str("category"),
        }
    }
}

impl FromStr for QueryType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "single" => Ok(QueryType::Single),
            "and" => Ok(QueryType::And),
            "or" => Ok(QueryType::Or),
            "category" => Ok(QueryType::Category),
            other => Err(Error::InvalidParameter(format!(
                "unknown query type `{other}`"
            ))),
        }
    }
}

/// An entity-temporal query: `E_Q`, `T_Q`, and semantics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Query {
    id: String,
    semantics: Semantics,
    entities: Vec<EntityId>,
    time_start: NaiveDate,
    time_end: NaiveDate,
    category: Option<EntityId>,
    query_type: QueryType,
}

impl Query {
    /// Builds a query. `entities` keeps first-occurrence order with
    /// duplicates dropped; category members are unioned in by
    /// [`Query::with_category`] before this validation applies.
    pub fn new(
        id: impl Into<String>,
        semantics: Semantics,
        entities: Vec<EntityId>,
        time_start: NaiveDate,
        time_end: NaiveDate,
    ) -> Result<Self> {
        let id = id.into();
        if time_start > time_end {
            return Err(Error::InvalidTimeInterval {
                id,
                start: time_start.format("%Y-%m-%d").to_string(),
                end: time_end.format("%Y-%m-%d").to_string(),
            });
        }
        let mut seen = BTreeSet::new();
        let entities: Vec<EntityId> = entities
            .into_iter()
            .filter(|e| seen.insert(e.clone()))
            .collect();
        if entities.is_empty() {
            return Err(Error::EmptyEntitySet(id));
        }
        let query_type = if entities.len() == 1 {
            QueryType::Single
        } else if semantics == Semantics::And {
            QueryType::And
        } else {
            QueryType::Or
        };
        Ok(Query {
            id,
            semantics,
            entities,
            time_start,
            time_end,
            category: None,
            query_type,
        })
    }

    /// Builds a category query: members are unioned into the explicit
    /// entity list and semantics is forced to OR.
    pub fn with_category(
        id: impl Into<String>,
        entities: Vec<EntityId>,
        category: EntityId,
        members: &BTreeSet<EntityId>,
        time_start: NaiveDate,
        time_end: NaiveDate,
    ) -> Result<Self> {
        let mut all = entities;
        all.extend(members.iter().cloned());
        let mut q = Query::new(id, Semantics::Or, all, time_start, time_end)?;
        q.category = Some(category);
        q.query_type = QueryType::Category;
        Ok(q)
    }

    /// Overrides the report-grouping label (query files may declare one).
    pub fn set_query_type(&mut self, qt: QueryType) {
        self.query_type = qt;
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn semantics(&self) -> Semantics {
        self.semantics
    }

    /// `E_Q`, in first-occurrence order.
    pub fn entities(&self) -> &[EntityId] {
        &self.entities
    }

    pub fn entity_set(&self) -> BTreeSet<EntityId> {
        self.entities.iter().cloned().collect()
    }

    pub fn contains_entity(&self, e: &EntityId) -> bool {
        self.entities.iter().any(|q| q == e)
    }

    pub fn time_start(&self) -> NaiveDate {
        self.time_start
    }

    pub fn time_end(&self) -> NaiveDate {
        self.time_end
    }

    pub fn category(&self) -> Option<&EntityId> {
        self.category.as_ref()
    }

    pub fn query_type(&self) -> QueryType {
        self.query_type
    }

    fn in_interval(&self, date: NaiveDate) -> bool {
        self.time_start <= date && date <= self.time_end
    }
}

/// Matched documents `D_Q` plus the candidate related entities
/// `E_{D_Q} \ E_Q`.
#[derive(Debug, Clone)]
pub struct ResultSet {
    query: Query,
    doc_ids: BTreeSet<DocId>,
    related_entities: BTreeSet<EntityId>,
}

impl ResultSet {
    pub fn query(&self) -> &Query {
        &self.query
    }

    pub fn doc_ids(&self) -> &BTreeSet<DocId> {
        &self.doc_ids
    }

    pub fn related_entities(&self) -> &BTreeSet<EntityId> {
        &self.related_entities
    }

    pub fn len(&self) -> usize {
        self.doc_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.doc_ids.is_empty()
    }
}

/// Computes `D_Q` (set intersection or union over `docs(e)`, filtered to
/// `T_Q`) and the related-entity candidates. An empty result is a valid
/// outcome.
pub fn match_query(index: &CorpusIndex, query: &Query) -> ResultSet {
    let mut matched: Option<BTreeSet<DocId>> = None;
    for entity in query.entities() {
        let docs = index
            .docs_with_entity(entity)
            .cloned()
            .unwrap_or_default();
        matched = Some(match (matched, query.semantics()) {
            (None, _) => docs,
            (Some(acc), Semantics::And) => acc.intersection(&docs).cloned().collect(),
            (Some(acc), Semantics::Or) => acc.union(&docs).cloned().collect(),
        });
    }

    let doc_ids: BTreeSet<DocId> = matched
        .unwrap_or_default()
        .into_iter()
        .filter(|id| {
            index
                .document(id)
                .map(|d| query.in_interval(d.date()))
                .unwrap_or(false)
        })
        .collect();

    let mut related_entities = BTreeSet::new();
    for id in &doc_ids {
        if let Some(doc) = index.document(id) {
            for entity in doc.mentions().keys() {
                if !query.contains_entity(entity) {
                    related_entities.insert(entity.clone());
                }
            }
        }
    }

    ResultSet {
        query: query.clone(),
        doc_ids,
        related_entities,
    }
}

/// Category → member entities, loaded from a membership file.
#[derive(Debug, Clone, Default)]
pub struct CategoryTable {
    members: BTreeMap<EntityId, BTreeSet<EntityId>>,
}

impl CategoryTable {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        Self::from_reader(file, &path.display().to_string())
    }

    pub fn from_reader(reader: impl Read, source: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Line {
            category: String,
            members: Vec<String>,
        }

        let reader = BufReader::new(reader);
        let mut table = CategoryTable::default();
        for (idx, line) in reader.lines().enumerate() {
            let lineno = idx + 1;
            let line = line.map_err(|e| Error::parse(source, lineno, e.to_string()))?;
            if line.trim().is_empty() {
                continue;
            }
            let parsed: Line = serde_json::from_str(&line)
                .map_err(|e| Error::parse(source, lineno, e.to_string()))?;
            let category = EntityId::new(&parsed.category)
                .map_err(|e| Error::parse(source, lineno, e.to_string()))?;
            let entry = table.members.entry(category).or_default();
            for m in parsed.members {
                entry.insert(
                    EntityId::new(&m).map_err(|e| Error::parse(source, lineno, e.to_string()))?,
                );
            }
        }
        Ok(table)
    }

    /// Member entities of `category`; empty when the category is unknown
    /// (the caller then reports an unanswerable query).
    pub fn expand(&self, category: &EntityId) -> BTreeSet<EntityId> {
        self.members.get(category).cloned().unwrap_or_default()
    }
}

/// Reads a category membership file and expands one category.
pub fn expand_category(category: &EntityId, path: impl AsRef<Path>) -> Result<BTreeSet<EntityId>> {
    Ok(CategoryTable::load(path)?.expand(category))
}

/// Outcome of loading one query-file line: a valid query, or an
/// unanswerable one (empty entity set after category expansion) the caller
/// should warn about and skip.
#[derive(Debug)]
pub enum LoadedQuery {
    Valid(Query),
    Unanswerable { id: String },
}

/// Loads a newline-delimited query file, expanding categories through
/// `categories` when given.
pub fn load_queries(
    path: impl AsRef<Path>,
    categories: Option<&CategoryTable>,
) -> Result<Vec<LoadedQuery>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    load_queries_from(file, &path.display().to_string(), categories)
}

/// [`load_queries`] over any reader.
pub fn load_queries_from(
    reader: impl Read,
    source: &str,
    categories: Option<&CategoryTable>,
) -> Result<Vec<LoadedQuery>> {
    #[derive(Deserialize)]
    struct TimeSpec {
        start: String,
        end: String,
    }

    #[derive(Deserialize)]
    struct Line {
        id: String,
        semantics: String,
        #[serde(default)]
        entities: Vec<String>,
        #[serde(default)]
        category: Option<String>,
        time: TimeSpec,
        #[serde(default, rename = "type")]
        query_type: Option<String>,
    }

    let reader = BufReader::new(reader);
    let mut queries = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let err = |msg: String| Error::parse(source, lineno, msg);
        let line = line.map_err(|e| err(e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let parsed: Line = serde_json::from_str(&line).map_err(|e| err(e.to_string()))?;
        let semantics = match parsed.semantics.as_str() {
            "and" => Semantics::And,
            "or" => Semantics::Or,
            other => return Err(err(format!("unknown semantics `{other}`"))),
        };
        let start = parse_iso_date(&parsed.time.start)
            .ok_or_else(|| err(format!("unparseable date `{}`", parsed.time.start)))?;
        let end = parse_iso_date(&parsed.time.end)
            .ok_or_else(|| err(format!("unparseable date `{}`", parsed.time.end)))?;
        let entities = parsed
            .entities
            .iter()
            .map(EntityId::new)
            .collect::<Result<Vec<_>>>()
            .map_err(|e| err(e.to_string()))?;

        let built = match &parsed.category {
            Some(cat) => {
                let category = EntityId::new(cat).map_err(|e| err(e.to_string()))?;
                let members = categories
                    .map(|t| t.expand(&category))
                    .unwrap_or_default();
                Query::with_category(&parsed.id, entities, category, &members, start, end)
            }
            None => Query::new(&parsed.id, semantics, entities, start, end),
        };

        match built {
            Ok(mut q) => {
                if let Some(tag) = &parsed.query_type {
                    q.set_query_type(tag.parse().map_err(|e: Error| err(e.to_string()))?);
                }
                queries.push(LoadedQuery::Valid(q));
            }
            Err(Error::EmptyEntitySet(id)) => {
                queries.push(LoadedQuery::Unanswerable { id });
            }
            Err(e) => return Err(err(e.to_string())),
        }
    }
    Ok(queries)
}
