//! Evaluation harness: graded judgments, ranked runs, NDCG/P@k metrics,
//! random baselines, paired significance tests, and parameter sweeps.

mod baseline;
mod metrics;
mod sweep;
mod trec;
mod ttest;

pub use baseline::{random_baseline, random_baseline_for_docs, random_permutation};
pub use metrics::{ndcg_all, ndcg_at_k, precision_at_k, RELEVANT_GRADE};
pub use sweep::{sweep, SweepCell, SweepConfig, SweepResult};
pub use trec::{format_run_line, parse_qrels, parse_qrels_file, parse_run, parse_run_file};
pub use ttest::{paired_t_test, PairedTTest};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::corpus::DocId;
use crate::error::{Error, Result};

/// A rank-quality measure over graded lists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Metric {
    /// NDCG truncated at k.
    Ndcg(usize),
    /// NDCG over the full list.
    NdcgAll,
    /// Precision (grade >= 2) at k.
    Precision(usize),
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Metric::Ndcg(k) => write!(f, "ndcg@{k}"),
            Metric::NdcgAll => f.write_str("ndcg@all"),
            Metric::Precision(k) => write!(f, "p@{k}"),
        }
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        if lower == "ndcg@all" {
            return Ok(Metric::NdcgAll);
        }
        if let Some(k) = lower.strip_prefix("ndcg@") {
            return k
                .parse()
                .map(Metric::Ndcg)
                .map_err(|_| Error::InvalidParameter(format!("unknown metric `{s}`")));
        }
        if let Some(k) = lower.strip_prefix("p@") {
            return k
                .parse()
                .map(Metric::Precision)
                .map_err(|_| Error::InvalidParameter(format!("unknown metric `{s}`")));
        }
        Err(Error::InvalidParameter(format!("unknown metric `{s}`")))
    }
}

/// Applies one metric to a ranked grade list.
pub fn apply_metric(grades: &[u8], metric: Metric) -> f64 {
    match metric {
        Metric::Ndcg(k) => ndcg_at_k(grades, k),
        Metric::NdcgAll => ndcg_all(grades),
        Metric::Precision(k) => precision_at_k(grades, k),
    }
}

/// The measure set used throughout: NDCG@5, NDCG@10, NDCG@all, P@5, P@10.
pub fn standard_metrics() -> Vec<Metric> {
    standard_metrics_for(&[5, 10])
}

/// NDCG@k and P@k for each requested k, plus NDCG@all.
pub fn standard_metrics_for(ks: &[usize]) -> Vec<Metric> {
    let mut metrics: Vec<Metric> = ks.iter().map(|&k| Metric::Ndcg(k)).collect();
    metrics.push(Metric::NdcgAll);
    metrics.extend(ks.iter().map(|&k| Metric::Precision(k)));
    metrics.sort();
    metrics.dedup();
    metrics
}

/// Graded relevance judgments; unjudged pairs read as grade 0.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Qrels {
    grades: BTreeMap<String, BTreeMap<DocId, u8>>,
}

impl Qrels {
    pub fn insert(&mut self, query: &str, doc: DocId, grade: u8) {
        self.grades
            .entry(query.to_string())
            .or_default()
            .insert(doc, grade.min(3));
    }

    pub fn grade(&self, query: &str, doc: &DocId) -> u8 {
        self.grades
            .get(query)
            .and_then(|m| m.get(doc))
            .copied()
            .unwrap_or(0)
    }

    pub fn has_query(&self, query: &str) -> bool {
        self.grades.contains_key(query)
    }

    pub fn queries(&self) -> impl Iterator<Item = &str> {
        self.grades.keys().map(String::as_str)
    }
}

/// Scored document lists per query; scores non-increasing, doc ids unique.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RankedRun {
    runs: BTreeMap<String, Vec<(DocId, f64)>>,
}

impl RankedRun {
    /// Adds one query's ranked list, validating the run invariants.
    pub fn insert(&mut self, query: &str, ranked: Vec<(DocId, f64)>) -> Result<()> {
        let mut seen = std::collections::BTreeSet::new();
        for window in ranked.windows(2) {
            if window[1].1 > window[0].1 {
                return Err(Error::InvalidRun {
                    query: query.to_string(),
                    message: format!(
                        "scores increase at `{}` ({} > {})",
                        window[1].0, window[1].1, window[0].1
                    ),
                });
            }
        }
        for (doc, _) in &ranked {
            if !seen.insert(doc.clone()) {
                return Err(Error::InvalidRun {
                    query: query.to_string(),
                    message: format!("duplicate document `{doc}`"),
                });
            }
        }
        self.runs.insert(query.to_string(), ranked);
        Ok(())
    }

    pub fn ranking(&self, query: &str) -> Option<&[(DocId, f64)]> {
        self.runs.get(query).map(Vec::as_slice)
    }

    pub fn queries(&self) -> impl Iterator<Item = &str> {
        self.runs.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.runs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }
}

/// Per-query and macro-averaged metric values. `unjudged_queries` lists run
/// queries absent from the qrels (scored as all-zero grades; callers warn).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MetricReport {
    pub per_query: BTreeMap<String, BTreeMap<Metric, f64>>,
    pub mean: BTreeMap<Metric, f64>,
    pub unjudged_queries: Vec<String>,
}

/// Scores a run against judgments.
pub fn evaluate(run: &RankedRun, qrels: &Qrels, metrics: &[Metric]) -> MetricReport {
    let mut report = MetricReport::default();
    for query in run.queries() {
        if !qrels.has_query(query) {
            report.unjudged_queries.push(query.to_string());
        }
        let grades: Vec<u8> = run
            .ranking(query)
            .unwrap()
            .iter()
            .map(|(doc, _)| qrels.grade(query, doc))
            .collect();
        let values: BTreeMap<Metric, f64> = metrics
            .iter()
            .map(|&m| (m, apply_metric(&grades, m)))
            .collect();
        report.per_query.insert(query.to_string(), values);
    }

    let n = report.per_query.len();
    if n > 0 {
        for &metric in metrics {
            let sum: f64 = report.per_query.values().map(|v| v[&metric]).sum();
            report.mean.insert(metric, sum / n as f64);
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(s: &str) -> DocId {
        DocId::new(s).unwrap()
    }

    #[test]
    fn perfect_order_scores_full_ndcg() {
        let mut run = RankedRun::default();
        run.insert("q1", vec![(doc("a"), 0.9), (doc("b"), 0.5), (doc("c"), 0.1)])
            .unwrap();
        let mut qrels = Qrels::default();
        qrels.insert("q1", doc("a"), 3);
        qrels.insert("q1", doc("b"), 2);
        qrels.insert("q1", doc("c"), 0);
        let report = evaluate(&run, &qrels, &standard_metrics());
        assert_eq!(report.per_query["q1"][&Metric::NdcgAll], 1.0);
        assert!(report.unjudged_queries.is_empty());
    }

    #[test]
    fn unjudged_queries_score_zero_and_are_listed() {
        let mut run = RankedRun::default();
        run.insert("qX", vec![(doc("a"), 1.0)]).unwrap();
        let report = evaluate(&run, &Qrels::default(), &standard_metrics());
        assert_eq!(report.unjudged_queries, vec!["qX".to_string()]);
        assert_eq!(report.per_query["qX"][&Metric::NdcgAll], 0.0);
    }

    #[test]
    fn mean_is_macro_average() {
        let mut run = RankedRun::default();
        run.insert("q1", vec![(doc("a"), 1.0)]).unwrap();
        run.insert("q2", vec![(doc("b"), 1.0)]).unwrap();
        let mut qrels = Qrels::default();
        qrels.insert("q1", doc("a"), 3);
        qrels.insert("q2", doc("b"), 0);
        let report = evaluate(&run, &qrels, &[Metric::NdcgAll]);
        assert_eq!(report.mean[&Metric::NdcgAll], 0.5);
    }

    #[test]
    fn metric_strings_parse_and_display() {
        assert_eq!("ndcg@5".parse::<Metric>().unwrap(), Metric::Ndcg(5));
        assert_eq!("NDCG@all".parse::<Metric>().unwrap(), Metric::NdcgAll);
        assert_eq!("p@10".parse::<Metric>().unwrap(), Metric::Precision(10));
        assert!("map".parse::<Metric>().is_err());
        assert_eq!(Metric::Ndcg(5).to_string(), "ndcg@5");
    }

    #[test]
    fn standard_metric_set_matches_the_measure_list() {
        let metrics = standard_metrics();
        assert_eq!(
            metrics,
            vec![
                Metric::Ndcg(5),
                Metric::Ndcg(10),
                Metric::NdcgAll,
                Metric::Precision(5),
                Metric::Precision(10),
            ]
        );
    }
}
