//! TREC-style run and qrels files.
//!
//! Qrels: whitespace-separated `queryId 0 docId grade` lines, grades in
//! 0..=3. Runs: `queryId Q0 docId rank score tag` lines with 1-based ranks
//! and non-increasing scores. Lines starting with `#` are a comment channel
//! (verbose rankers emit factor breakdowns there) and are skipped.

use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use crate::corpus::DocId;
use crate::error::{Error, Result};
use crate::eval::{Qrels, RankedRun};

pub fn parse_qrels_file(path: impl AsRef<Path>) -> Result<Qrels> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    parse_qrels(file, &path.display().to_string())
}

pub fn parse_qrels(reader: impl Read, source: &str) -> Result<Qrels> {
    let reader = BufReader::new(reader);
    let mut qrels = Qrels::default();
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let err = |msg: String| Error::parse(source, lineno, msg);
        let line = line.map_err(|e| err(e.to_string()))?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(err(format!(
                "expected `queryId 0 docId grade`, got {} fields",
                fields.len()
            )));
        }
        let grade: u8 = fields[3]
            .parse()
            .map_err(|_| err(format!("unparseable grade `{}`", fields[3])))?;
        if grade > 3 {
            return Err(err(format!("grade {grade} outside 0..=3")));
        }
        let doc = DocId::new(fields[2]).map_err(|e| err(e.to_string()))?;
        qrels.insert(fields[0], doc, grade);
    }
    Ok(qrels)
}

pub fn parse_run_file(path: impl AsRef<Path>) -> Result<RankedRun> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    parse_run(file, &path.display().to_string())
}

pub fn parse_run(reader: impl Read, source: &str) -> Result<RankedRun> {
    let reader = BufReader::new(reader);
    let mut per_query: std::collections::BTreeMap<String, Vec<(u64, DocId, f64)>> =
        std::collections::BTreeMap::new();
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let err = |msg: String| Error::parse(source, lineno, msg);
        let line = line.map_err(|e| err(e.to_string()))?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if fields.len() != 6 {
            return Err(err(format!(
                "expected `queryId Q0 docId rank score tag`, got {} fields",
                fields.len()
            )));
        }
        let rank: u64 = fields[3]
            .parse()
            .map_err(|_| err(format!("unparseable rank `{}`", fields[3])))?;
        if rank == 0 {
            return Err(err("ranks are 1-based".to_string()));
        }
        let score: f64 = fields[4]
            .parse()
            .map_err(|_| err(format!("unparseable score `{}`", fields[4])))?;
        let doc = DocId::new(fields[2]).map_err(|e| err(e.to_string()))?;
        per_query
            .entry(fields[0].to_string())
            .or_default()
            .push((rank, doc, score));
    }

    let mut run = RankedRun::default();
    for (query, mut entries) in per_query {
        entries.sort_by_key(|&(rank, _, _)| rank);
        let ranked: Vec<(DocId, f64)> = entries
            .into_iter()
            .map(|(_, doc, score)| (doc, score))
            .collect();
        run.insert(&query, ranked)?;
    }
    Ok(run)
}

/// One run-file line. Scores print in shortest round-trip form, so written
/// runs parse back to the exact in-memory values.
pub fn format_run_line(query: &str, doc: &DocId, rank: usize, score: f64, tag: &str) -> String {
    format!("{query} Q0 {doc} {rank} {score} {tag}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qrels_round_trip() {
        let text = "q1 0 d1 3\nq1 0 d2 0\nq2 0 d1 2\n";
        let qrels = parse_qrels(text.as_bytes(), "test").unwrap();
        assert_eq!(qrels.grade("q1", &DocId::new("d1").unwrap()), 3);
        assert_eq!(qrels.grade("q1", &DocId::new("d9").unwrap()), 0);
        assert_eq!(qrels.grade("q2", &DocId::new("d1").unwrap()), 2);
    }

    #[test]
    fn qrels_rejects_out_of_scale_grades() {
        let err = parse_qrels("q1 0 d1 4\n".as_bytes(), "test").unwrap_err();
        assert!(err.to_string().contains("0..=3"), "{err}");
    }

    #[test]
    fn run_parses_by_rank_and_skips_comments() {
        let text = "# breakdown d2 rel=0.5\n\
                    q1 Q0 d2 2 0.25 tag\n\
                    q1 Q0 d1 1 0.75 tag\n";
        let run = parse_run(text.as_bytes(), "test").unwrap();
        let docs: Vec<_> = run.ranking("q1").unwrap().iter().map(|(d, _)| d.as_str()).collect();
        assert_eq!(docs, vec!["d1", "d2"]);
    }

    #[test]
    fn run_rejects_increasing_scores() {
        let text = "q1 Q0 d1 1 0.25 tag\nq1 Q0 d2 2 0.75 tag\n";
        let err = parse_run(text.as_bytes(), "test").unwrap_err();
        assert!(matches!(err, Error::InvalidRun { .. }), "{err}");
    }

    #[test]
    fn run_rejects_duplicate_docs() {
        let text = "q1 Q0 d1 1 0.75 tag\nq1 Q0 d1 2 0.25 tag\n";
        assert!(parse_run(text.as_bytes(), "test").is_err());
    }

    #[test]
    fn malformed_run_line_reports_line_number() {
        let text = "q1 Q0 d1 1 0.75 tag\nq1 Q0 d2 two 0.25 tag\n";
        match parse_run(text.as_bytes(), "test") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn format_line_round_trips_scores_exactly() {
        let score = 1.0 / 3.0;
        let line = format_run_line("q1", &DocId::new("d1").unwrap(), 1, score, "t");
        let run = parse_run(line.as_bytes(), "test").unwrap();
        assert_eq!(run.ranking("q1").unwrap()[0].1, score);
    }
}
