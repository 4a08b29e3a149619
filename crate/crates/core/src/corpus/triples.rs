//! Line-oriented triple subset: `<s> <p> <o> .`, one per line.
//!
//! Documents are reconstructed from a restricted vocabulary: a date literal,
//! an optional title literal, mention-node links, and each mention node's
//! matched entity IRI. `count(e, d)` is the number of mention nodes of `d`
//! resolving to `e`. Everything else (confidence scores, character
//! positions, unknown predicates) is ignored.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use crate::corpus::{parse_iso_date, DocId, Document, EntityId};
use crate::error::{Error, Result};

/// Predicate IRIs the parser recognizes, keyed by role.
///
/// The defaults cover the `dc:`, `schema:`, and `oae:` spellings commonly
/// used by annotated-archive layers; `schema:mentions` and `oae:mentions`
/// are accepted interchangeably. Additional IRIs can be registered per role.
#[derive(Debug, Clone)]
pub struct TripleVocabulary {
    date: BTreeSet<String>,
    title: BTreeSet<String>,
    mentions: BTreeSet<String>,
    matched_uri: BTreeSet<String>,
}

impl Default for TripleVocabulary {
    fn default() -> Self {
        let mut v = TripleVocabulary {
            date: BTreeSet::new(),
            title: BTreeSet::new(),
            mentions: BTreeSet::new(),
            matched_uri: BTreeSet::new(),
        };
        v.add_date("http://purl.org/dc/elements/1.1/date");
        v.add_date("http://purl.org/dc/terms/date");
        v.add_title("http://purl.org/dc/elements/1.1/title");
        v.add_title("http://purl.org/dc/terms/title");
        v.add_mentions("http://schema.org/mentions");
        v.add_mentions("http://www.ics.forth.gr/isl/oae/core#mentions");
        v.add_matched_uri("http://www.ics.forth.gr/isl/oae/core#hasMatchedURI");
        v
    }
}

impl TripleVocabulary {
    pub fn add_date(&mut self, iri: impl Into<String>) -> &mut Self {
        self.date.insert(iri.into());
        self
    }

    pub fn add_title(&mut self, iri: impl Into<String>) -> &mut Self {
        self.title.insert(iri.into());
        self
    }

    pub fn add_mentions(&mut self, iri: impl Into<String>) -> &mut Self {
        self.mentions.insert(iri.into());
        self
    }

    pub fn add_matched_uri(&mut self, iri: impl Into<String>) -> &mut Self {
        self.matched_uri.insert(iri.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Term {
    Iri(String),
    Blank(String),
    Literal(String),
}

impl Term {
    fn node_id(&self) -> Option<String> {
        match self {
            Term::Iri(s) => Some(s.clone()),
            Term::Blank(s) => Some(format!("_:{s}")),
            Term::Literal(_) => None,
        }
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor {
            bytes: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && (self.bytes[self.pos] as char).is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn term(&mut self) -> Result<Term, String> {
        self.skip_ws();
        match self.peek() {
            Some(b'<') => {
                self.pos += 1;
                let start = self.pos;
                while self.pos < self.bytes.len() && self.bytes[self.pos] != b'>' {
                    self.pos += 1;
                }
                if self.pos == self.bytes.len() {
                    return Err("unterminated IRI".into());
                }
                let iri = std::str::from_utf8(&self.bytes[start..self.pos])
                    .map_err(|_| "invalid UTF-8 in IRI".to_string())?
                    .to_string();
                self.pos += 1;
                if iri.is_empty() {
                    return Err("empty IRI".into());
                }
                Ok(Term::Iri(iri))
            }
            Some(b'_') => {
                if self.bytes.get(self.pos + 1) != Some(&b':') {
                    return Err("expected `_:` blank node label".into());
                }
                self.pos += 2;
                let start = self.pos;
                while self
                    .peek()
                    .map(|c| !(c as char).is_ascii_whitespace())
                    .unwrap_or(false)
                {
                    self.pos += 1;
                }
                if self.pos == start {
                    return Err("empty blank node label".into());
                }
                Ok(Term::Blank(
                    std::str::from_utf8(&self.bytes[start..self.pos])
                        .map_err(|_| "invalid UTF-8 in blank node label".to_string())?
                        .to_string(),
                ))
            }
            Some(b'"') => {
                self.pos += 1;
                let mut value = String::new();
                loop {
                    match self.peek() {
                        None => return Err("unterminated literal".into()),
                        Some(b'"') => {
                            self.pos += 1;
                            break;
                        }
                        Some(b'\\') => {
                            self.pos += 1;
                            let esc = self.peek().ok_or("dangling escape")?;
                            self.pos += 1;
                            match esc {
                                b'"' => value.push('"'),
                                b'\\' => value.push('\\'),
                                b'n' => value.push('\n'),
                                b'r' => value.push('\r'),
                                b't' => value.push('\t'),
                                b'u' | b'U' => {
                                    let len = if esc == b'u' { 4 } else { 8 };
                                    if self.pos + len > self.bytes.len() {
                                        return Err("truncated unicode escape".into());
                                    }
                                    let hex =
                                        std::str::from_utf8(&self.bytes[self.pos..self.pos + len])
                                            .map_err(|_| "bad unicode escape".to_string())?;
                                    let cp = u32::from_str_radix(hex, 16)
                                        .map_err(|_| "bad unicode escape".to_string())?;
                                    value.push(
                                        char::from_u32(cp).ok_or("invalid unicode code point")?,
                                    );
                                    self.pos += len;
                                }
                                other => {
                                    return Err(format!("unknown escape `\\{}`", other as char))
                                }
                            }
                        }
                        Some(_) => {
                            // advance one UTF-8 character
                            let rest = std::str::from_utf8(&self.bytes[self.pos..])
                                .map_err(|_| "invalid UTF-8 in literal".to_string())?;
                            let ch = rest.chars().next().unwrap();
                            value.push(ch);
                            self.pos += ch.len_utf8();
                        }
                    }
                }
                // datatype suffix or language tag is stripped
                match self.peek() {
                    Some(b'^') => {
                        if self.bytes.get(self.pos + 1) != Some(&b'^') {
                            return Err("malformed datatype suffix".into());
                        }
                        self.pos += 2;
                        match self.term()? {
                            Term::Iri(_) => {}
                            _ => return Err("datatype must be an IRI".into()),
                        }
                    }
                    Some(b'@') => {
                        self.pos += 1;
                        let start = self.pos;
                        while self
                            .peek()
                            .map(|c| (c as char).is_ascii_alphanumeric() || c == b'-')
                            .unwrap_or(false)
                        {
                            self.pos += 1;
                        }
                        if self.pos == start {
                            return Err("empty language tag".into());
                        }
                    }
                    _ => {}
                }
                Ok(Term::Literal(value))
            }
            Some(c) => Err(format!("unexpected character `{}`", c as char)),
            None => Err("unexpected end of line".into()),
        }
    }

    fn expect_terminator(&mut self) -> Result<(), String> {
        self.skip_ws();
        if self.peek() != Some(b'.') {
            return Err("missing ` .` terminator".into());
        }
        self.pos += 1;
        self.skip_ws();
        if self.pos != self.bytes.len() {
            return Err("trailing content after `.`".into());
        }
        Ok(())
    }
}

fn parse_triple_line(line: &str) -> Result<(Term, String, Term), String> {
    let mut cur = Cursor::new(line);
    let subject = cur.term()?;
    if matches!(subject, Term::Literal(_)) {
        return Err("literal subject".into());
    }
    let predicate = match cur.term()? {
        Term::Iri(iri) => iri,
        _ => return Err("predicate must be an IRI".into()),
    };
    let object = cur.term()?;
    cur.expect_terminator()?;
    Ok((subject, predicate, object))
}

#[derive(Default)]
struct Collected {
    dates: BTreeMap<String, String>,
    titles: BTreeMap<String, String>,
    // (doc id, mention node id), set semantics over repeated triples
    mention_links: BTreeSet<(String, String)>,
    // mention node id -> matched entity IRI (first wins)
    matched: BTreeMap<String, String>,
    // first-appearance order of document subjects
    doc_order: Vec<String>,
    seen_docs: BTreeSet<String>,
}

impl Collected {
    fn touch_doc(&mut self, id: &str) {
        if self.seen_docs.insert(id.to_string()) {
            self.doc_order.push(id.to_string());
        }
    }
}

/// Reads a triple corpus with the default vocabulary.
pub fn ingest_triples(path: impl AsRef<Path>) -> Result<Vec<Document>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    ingest_triples_from(file, &path.display().to_string(), &TripleVocabulary::default())
}

/// [`ingest_triples`] over any reader with an explicit vocabulary.
pub fn ingest_triples_from(
    reader: impl Read,
    source: &str,
    vocab: &TripleVocabulary,
) -> Result<Vec<Document>> {
    let reader = BufReader::new(reader);
    let mut col = Collected::default();

    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| Error::parse(source, lineno, e.to_string()))?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (subject, predicate, object) =
            parse_triple_line(trimmed).map_err(|msg| Error::parse(source, lineno, msg))?;
        let subject_id = subject.node_id().expect("non-literal subject");

        if vocab.date.contains(&predicate) {
            if let Term::Literal(value) = object {
                col.touch_doc(&subject_id);
                match col.dates.get(&subject_id) {
                    None => {
                        col.dates.insert(subject_id, value);
                    }
                    Some(existing) if *existing == value => {}
                    Some(existing) => {
                        return Err(Error::ConflictingDates {
                            id: subject_id,
                            first: existing.clone(),
                            second: value,
                        })
                    }
                }
            }
        } else if vocab.title.contains(&predicate) {
            if let Term::Literal(value) = object {
                col.touch_doc(&subject_id);
                col.titles.entry(subject_id).or_insert(value);
            }
        } else if vocab.mentions.contains(&predicate) {
            if let Some(node) = object.node_id() {
                col.touch_doc(&subject_id);
                col.mention_links.insert((subject_id, node));
            }
        } else if vocab.matched_uri.contains(&predicate) {
            if let Term::Iri(entity) = object {
                col.matched.entry(subject_id).or_insert(entity);
            }
        }
    }

    let mut docs = Vec::with_capacity(col.doc_order.len());
    for doc_id in &col.doc_order {
        let date_literal = col
            .dates
            .get(doc_id)
            .ok_or_else(|| Error::MissingDate(doc_id.clone()))?;
        let date = parse_iso_date(date_literal).ok_or_else(|| Error::InvalidDate {
            id: doc_id.clone(),
            value: date_literal.clone(),
        })?;
        let mut mentions: BTreeMap<EntityId, u64> = BTreeMap::new();
        for (d, node) in col.mention_links.range((doc_id.clone(), String::new())..) {
            if d != doc_id {
                break;
            }
            if let Some(entity) = col.matched.get(node) {
                *mentions.entry(EntityId::new(entity)?).or_insert(0) += 1;
            }
        }
        docs.push(Document::new(
            DocId::new(doc_id.clone())?,
            date,
            col.titles.get(doc_id).cloned(),
            mentions,
        )?);
    }
    Ok(docs)
}
