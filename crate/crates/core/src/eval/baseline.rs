//! Averaged random-ranking baseline.
//!
//! Each trial uniformly permutes the matched set and scores it; the report
//! carries per-metric means over the trials. The generator is seeded per
//! (query, trial), so trials are independent of evaluation order and the
//! whole report is deterministic for a fixed seed.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::corpus::DocId;
use crate::error::{Error, Result};
use crate::eval::{apply_metric, Metric, MetricReport, Qrels};
use crate::query::ResultSet;

/// Stable string hash for per-query stream derivation (FNV-1a, fixed for
/// all time; the std hasher may change across releases).
fn fnv1a(s: &str) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for byte in s.bytes() {
        hash ^= u64::from(byte);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

fn trial_rng(seed: u64, query_id: &str, trial: u64) -> ChaCha8Rng {
    let mut bytes = [0u8; 32];
    bytes[0..8].copy_from_slice(&seed.to_le_bytes());
    bytes[8..16].copy_from_slice(&fnv1a(query_id).to_le_bytes());
    bytes[16..24].copy_from_slice(&trial.to_le_bytes());
    ChaCha8Rng::from_seed(bytes)
}

/// One seeded uniform permutation of `docs` (trial 0 of the baseline); the
/// deterministic "random" ranker.
pub fn random_permutation(query_id: &str, docs: &[DocId], seed: u64) -> Vec<DocId> {
    random_trial(query_id, docs, seed, 0)
}

fn random_trial(query_id: &str, docs: &[DocId], seed: u64, trial: u64) -> Vec<DocId> {
    let mut permuted: Vec<DocId> = docs.to_vec();
    permuted.shuffle(&mut trial_rng(seed, query_id, trial));
    permuted
}

/// Per-metric means over `trials` random permutations of `docs`.
pub fn random_baseline_for_docs(
    query_id: &str,
    docs: &[DocId],
    qrels: &Qrels,
    metrics: &[Metric],
    trials: usize,
    seed: u64,
) -> Result<BTreeMap<Metric, f64>> {
    if trials == 0 {
        return Err(Error::InvalidParameter(
            "random baseline needs at least 1 trial".to_string(),
        ));
    }
    let mut sums: BTreeMap<Metric, f64> = metrics.iter().map(|&m| (m, 0.0)).collect();
    for trial in 0..trials {
        let permuted = random_trial(query_id, docs, seed, trial as u64);
        let grades: Vec<u8> = permuted.iter().map(|d| qrels.grade(query_id, d)).collect();
        for &metric in metrics {
            *sums.get_mut(&metric).unwrap() += apply_metric(&grades, metric);
        }
    }
    let n = trials as f64;
    Ok(sums.into_iter().map(|(m, v)| (m, v / n)).collect())
}

/// Averaged random baseline for one result set, over the standard metric
/// set (NDCG@5/10/all, P@5/10).
pub fn random_baseline(
    rs: &ResultSet,
    qrels: &Qrels,
    trials: usize,
    seed: u64,
) -> Result<MetricReport> {
    let docs: Vec<DocId> = rs.doc_ids().iter().cloned().collect();
    let metrics = crate::eval::standard_metrics();
    let means = random_baseline_for_docs(rs.query().id(), &docs, qrels, &metrics, trials, seed)?;
    let mut report = MetricReport::default();
    report.per_query.insert(rs.query().id().to_string(), means.clone());
    report.mean = means;
    Ok(report)
}
