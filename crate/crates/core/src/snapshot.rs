//! Persisted index snapshots.
//!
//! Line-delimited: a JSON header with a format/version tag and the build
//! granularity, then one record line per document in id order. Loading
//! refuses mismatched tags and rebuilds the inverted maps from the
//! documents, so a loaded index equals the in-memory build exactly.

use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::corpus::{build_index, parse_record_line, record_line, CorpusIndex, Granularity};
use crate::error::{Error, Result};

const FORMAT: &str = "archrank-index";
const VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
struct Header {
    format: String,
    version: u32,
    granularity: Granularity,
    documents: usize,
}

/// Writes a snapshot of `index` to `writer`.
pub fn write_snapshot(index: &CorpusIndex, mut writer: impl Write) -> Result<()> {
    let header = Header {
        format: FORMAT.to_string(),
        version: VERSION,
        granularity: index.granularity(),
        documents: index.len(),
    };
    let io_err = |e: std::io::Error| Error::Io {
        path: "<snapshot>".to_string(),
        source: e,
    };
    writeln!(writer, "{}", serde_json::to_string(&header).expect("header serializes"))
        .map_err(io_err)?;
    for doc in index.documents() {
        writeln!(writer, "{}", record_line(doc)).map_err(io_err)?;
    }
    Ok(())
}

/// Writes a snapshot to a file path.
pub fn save_index(index: &CorpusIndex, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_snapshot(index, std::io::BufWriter::new(file))
}

/// Reads a snapshot, verifying the embedded format and version tags.
pub fn read_snapshot(reader: impl Read, source: &str) -> Result<CorpusIndex> {
    let mut reader = BufReader::new(reader);
    let mut first = String::new();
    reader
        .read_line(&mut first)
        .map_err(|e| Error::parse(source, 1, e.to_string()))?;
    let header: Header = serde_json::from_str(first.trim())
        .map_err(|e| Error::parse(source, 1, format!("invalid snapshot header: {e}")))?;
    if header.format != FORMAT {
        return Err(Error::SnapshotFormat {
            expected: FORMAT.to_string(),
            found: header.format,
        });
    }
    if header.version != VERSION {
        return Err(Error::SnapshotVersion {
            expected: VERSION,
            found: header.version,
        });
    }

    let mut docs = Vec::with_capacity(header.documents);
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 2;
        let line = line.map_err(|e| Error::parse(source, lineno, e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        docs.push(parse_record_line(&line).map_err(|msg| Error::parse(source, lineno, msg))?);
    }
    if docs.len() != header.documents {
        return Err(Error::parse(
            source,
            1,
            format!(
                "header declares {} documents, found {}",
                header.documents,
                docs.len()
            ),
        ));
    }
    build_index(docs, header.granularity)
}

/// Loads a snapshot from a file path.
pub fn load_index(path: impl AsRef<Path>) -> Result<CorpusIndex> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_snapshot(file, &path.display().to_string())
}
