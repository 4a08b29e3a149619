//! Parameter sweep over the walk's restart and p1 grids.

use std::collections::BTreeMap;

use crate::corpus::CorpusIndex;
use crate::error::Result;
use crate::eval::{apply_metric, standard_metrics_for, Metric, Qrels};
use crate::query::{match_query, Query, QueryType};
use crate::rwr::{rank_stochastic, RwrParams};

/// Sweep grids; defaults cover restart in {0, 0.2, 0.4, 0.6, 0.8} and p1 in
/// {0, 0.2, 0.4, 0.6, 0.8, 1.0} at 30 iterations.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub restart_grid: Vec<f64>,
    pub p1_grid: Vec<f64>,
    pub iterations: usize,
    pub ks: Vec<usize>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            restart_grid: vec![0.0, 0.2, 0.4, 0.6, 0.8],
            p1_grid: vec![0.0, 0.2, 0.4, 0.6, 0.8, 1.0],
            iterations: 30,
            ks: vec![5, 10],
        }
    }
}

/// Averaged metrics of one grid cell for one query-type group.
#[derive(Debug, Clone)]
pub struct SweepCell {
    pub restart: f64,
    pub p1: f64,
    pub group: QueryType,
    pub query_count: usize,
    pub means: BTreeMap<Metric, f64>,
}

/// Full sweep outcome; queries matching nothing are skipped and listed.
#[derive(Debug, Clone)]
pub struct SweepResult {
    pub cells: Vec<SweepCell>,
    pub skipped_queries: Vec<String>,
}

/// Ranks every query at every (restart, p1) cell with the stochastic model
/// and reports macro-averaged metrics per query-type group.
pub fn sweep(
    index: &CorpusIndex,
    queries: &[Query],
    qrels: &Qrels,
    config: &SweepConfig,
) -> Result<SweepResult> {
    let metrics = standard_metrics_for(&config.ks);
    let mut skipped_queries = Vec::new();
    let mut matched = Vec::new();
    for query in queries {
        let rs = match_query(index, query);
        if rs.is_empty() {
            skipped_queries.push(query.id().to_string());
        } else {
            matched.push(rs);
        }
    }

    let mut cells = Vec::new();
    for &restart in &config.restart_grid {
        for &p1 in &config.p1_grid {
            let params = RwrParams {
                restart,
                p1,
                iterations: config.iterations,
                convergence: None,
            };
            // group -> (count, metric sums)
            let mut groups: BTreeMap<QueryType, (usize, BTreeMap<Metric, f64>)> = BTreeMap::new();
            for rs in &matched {
                let ranked = rank_stochastic::<f64>(index, rs, &params)?;
                let grades: Vec<u8> = ranked
                    .iter()
                    .map(|s| qrels.grade(rs.query().id(), &s.doc_id))
                    .collect();
                let entry = groups
                    .entry(rs.query().query_type())
                    .or_insert_with(|| (0, metrics.iter().map(|&m| (m, 0.0)).collect()));
                entry.0 += 1;
                for &metric in &metrics {
                    *entry.1.get_mut(&metric).unwrap() += apply_metric(&grades, metric);
                }
            }
            for (group, (count, sums)) in groups {
                cells.push(SweepCell {
                    restart,
                    p1,
                    group,
                    query_count: count,
                    means: sums
                        .into_iter()
                        .map(|(m, v)| (m, v / count as f64))
                        .collect(),
                });
            }
        }
    }

    Ok(SweepResult {
        cells,
        skipped_queries,
    })
}
