//! Probabilistic ranking: three factor scores and their joined product.
//!
//! Per matched document the model multiplies up to three normalized factors:
//!
//! * relativeness — the share of the document's mention mass belonging to
//!   query entities (OR semantics additionally weights by query-entity
//!   coverage);
//! * timeliness — how concentrated the matched set is in the document's
//!   publication bucket;
//! * relatedness — the idf-damped, temporally weighted co-occurrence
//!   strength of the document's non-query entities with the query entities.
//!
//! Each factor normalizes to a probability distribution over the matched
//! set; the joined score is the product of the selected factors (the global
//! normalizer is rank-irrelevant and dropped).

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::corpus::{CorpusIndex, DocId, Document, EntityId, TimeBucket};
use crate::error::{Error, Result};
use crate::query::{Query, ResultSet, Semantics};
use crate::scalar::Real;

/// Which factors participate in the joined score (model combinations
/// `[A]`, `[B]`, `[C]`, and their products).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorSelection {
    pub relativeness: bool,
    pub timeliness: bool,
    pub relatedness: bool,
}

impl FactorSelection {
    pub const ALL: FactorSelection = FactorSelection {
        relativeness: true,
        timeliness: true,
        relatedness: true,
    };

    pub fn new(relativeness: bool, timeliness: bool, relatedness: bool) -> Result<Self> {
        if !(relativeness || timeliness || relatedness) {
            return Err(Error::InvalidFactorSelection(String::new()));
        }
        Ok(FactorSelection {
            relativeness,
            timeliness,
            relatedness,
        })
    }
}

impl FromStr for FactorSelection {
    type Err = Error;

    /// Parses a combination string over `{A, B, C}` (case-insensitive),
    /// e.g. `"AC"`.
    fn from_str(s: &str) -> Result<Self> {
        let mut sel = FactorSelection {
            relativeness: false,
            timeliness: false,
            relatedness: false,
        };
        for c in s.chars() {
            match c.to_ascii_uppercase() {
                'A' => sel.relativeness = true,
                'B' => sel.timeliness = true,
                'C' => sel.relatedness = true,
                _ => return Err(Error::InvalidFactorSelection(s.to_string())),
            }
        }
        if !(sel.relativeness || sel.timeliness || sel.relatedness) {
            return Err(Error::InvalidFactorSelection(s.to_string()));
        }
        Ok(sel)
    }
}

impl fmt::Display for FactorSelection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.relativeness {
            f.write_str("A")?;
        }
        if self.timeliness {
            f.write_str("B")?;
        }
        if self.relatedness {
            f.write_str("C")?;
        }
        Ok(())
    }
}

/// One factor, for [`factor_probability`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    Relativeness,
    Timeliness,
    Relatedness,
}

/// A ranked document with its joined score and raw per-factor scores.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoredDoc<S = f64> {
    pub doc_id: DocId,
    pub score: S,
    pub breakdown: FactorBreakdown<S>,
}

/// Raw (unnormalized) factor scores of one document.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorBreakdown<S = f64> {
    pub relativeness: S,
    pub timeliness: S,
    pub relatedness: S,
}

/// A per-factor probability distribution over the matched set.
///
/// Sums to 1 unless the factor is degenerate (all raw scores zero), in
/// which case the uniform distribution is substituted and flagged.
#[derive(Debug, Clone)]
pub struct FactorDistribution<S = f64> {
    pub probs: BTreeMap<DocId, S>,
    pub degenerate: bool,
}

/// Relativeness of a matched document: the query entities' share of its
/// mention mass; OR semantics multiplies by query-entity coverage.
///
/// Errors when the document has zero total mentions (it then cannot be in
/// the matched set).
pub fn relativeness<S: Real>(doc: &Document, query: &Query) -> Result<S> {
    let total = doc.total_mentions();
    if total == 0 {
        return Err(Error::InvalidParameter(format!(
            "document `{}` has no mentions; it cannot match a query",
            doc.id()
        )));
    }
    let query_mass: u64 = query.entities().iter().map(|e| doc.count(e)).sum();
    let base = S::from_u64(query_mass).unwrap() / S::from_u64(total).unwrap();
    match query.semantics() {
        Semantics::And => Ok(base),
        Semantics::Or => {
            let covered = coverage(doc, query);
            Ok(base * S::from_count(covered) / S::from_count(query.entities().len()))
        }
    }
}

/// Distinct query entities mentioned by `doc`.
fn coverage(doc: &Document, query: &Query) -> usize {
    doc.mentions()
        .keys()
        .filter(|e| query.contains_entity(e))
        .count()
}

/// Per-bucket statistics of the matched set: matched-document count and the
/// average query-entity coverage of those documents.
#[derive(Debug, Clone, Copy)]
struct BucketStat<S> {
    count: usize,
    coverage_mean: S,
}

fn bucket_stats<S: Real>(index: &CorpusIndex, rs: &ResultSet) -> BTreeMap<TimeBucket, BucketStat<S>> {
    let query = rs.query();
    let eq_len = S::from_count(query.entities().len());
    let mut acc: BTreeMap<TimeBucket, (usize, S)> = BTreeMap::new();
    for id in rs.doc_ids() {
        let doc = index.document(id).expect("matched doc in index");
        let bucket = index.bucket_of(doc);
        let cov = S::from_count(coverage(doc, query)) / eq_len;
        let entry = acc.entry(bucket).or_insert((0, S::zero()));
        entry.0 += 1;
        entry.1 += cov;
    }
    acc.into_iter()
        .map(|(bucket, (count, cov_sum))| {
            (
                bucket,
                BucketStat {
                    count,
                    coverage_mean: cov_sum / S::from_count(count),
                },
            )
        })
        .collect()
}

/// Timeliness of a time bucket: the fraction of matched documents published
/// in it; OR semantics multiplies by the bucket's average query-entity
/// coverage. Buckets holding no matched document score 0.
pub fn timeliness_bucket<S: Real>(bucket: &TimeBucket, rs: &ResultSet, index: &CorpusIndex) -> S {
    timeliness_from_stats(bucket, rs, &bucket_stats(index, rs))
}

fn timeliness_from_stats<S: Real>(
    bucket: &TimeBucket,
    rs: &ResultSet,
    stats: &BTreeMap<TimeBucket, BucketStat<S>>,
) -> S {
    let Some(stat) = stats.get(bucket) else {
        return S::zero();
    };
    let fraction = S::from_count(stat.count) / S::from_count(rs.len());
    match rs.query().semantics() {
        Semantics::And => fraction,
        Semantics::Or => fraction * stat.coverage_mean,
    }
}

/// Documents mentioning the query entities anywhere in the corpus: the
/// intersection (AND) or union (OR) of `docs(e)` over the query entities,
/// not restricted to the query interval. The idf reference set.
fn idf_reference_set(index: &CorpusIndex, query: &Query) -> BTreeSet<DocId> {
    let mut acc: Option<BTreeSet<DocId>> = None;
    for entity in query.entities() {
        let docs = index.docs_with_entity(entity).cloned().unwrap_or_default();
        acc = Some(match (acc, query.semantics()) {
            (None, _) => docs,
            (Some(a), Semantics::And) => a.intersection(&docs).cloned().collect(),
            (Some(a), Semantics::Or) => a.union(&docs).cloned().collect(),
        });
    }
    acc.unwrap_or_default()
}

/// Relatedness of a non-query entity: idf-damped, temporally weighted
/// co-occurrence with the query entities across the matched set.
///
/// An entity co-occurring with the query entities in every document of the
/// idf reference set scores 0.
pub fn relatedness<S: Real>(entity: &EntityId, rs: &ResultSet, index: &CorpusIndex) -> S {
    let b = idf_reference_set(index, rs.query());
    let stats = bucket_stats(index, rs);
    relatedness_inner(entity, rs, index, &b, &stats)
}

fn relatedness_inner<S: Real>(
    entity: &EntityId,
    rs: &ResultSet,
    index: &CorpusIndex,
    idf_reference: &BTreeSet<DocId>,
    stats: &BTreeMap<TimeBucket, BucketStat<S>>,
) -> S {
    let query = rs.query();
    let corpus_docs = match index.docs_with_entity(entity) {
        Some(docs) => docs,
        None => return S::zero(),
    };
    if idf_reference.is_empty() {
        return S::zero();
    }

    let in_reference = corpus_docs.intersection(idf_reference).count();
    let idf = S::one() - S::from_count(in_reference) / S::from_count(idf_reference.len());

    // docs(e) ∩ D_Q, grouped by bucket
    let matched: Vec<&Document> = corpus_docs
        .intersection(rs.doc_ids())
        .map(|id| index.document(id).expect("matched doc in index"))
        .collect();
    if matched.is_empty() {
        return S::zero();
    }
    let mut per_bucket: BTreeMap<TimeBucket, usize> = BTreeMap::new();
    for doc in &matched {
        *per_bucket.entry(index.bucket_of(doc)).or_insert(0) += 1;
    }

    let n_dq = S::from_count(rs.len());
    match query.semantics() {
        Semantics::And => {
            let temporal_sum: S = per_bucket
                .values()
                .map(|&c| S::from_count(c) / n_dq)
                .sum();
            idf * temporal_sum
        }
        Semantics::Or => {
            let eq_len = S::from_count(query.entities().len());
            let coverage_sum: S = matched
                .iter()
                .map(|d| S::from_count(coverage(d, query)) / eq_len)
                .sum();
            let entity_coverage = coverage_sum / S::from_count(matched.len());
            let temporal_sum: S = per_bucket
                .iter()
                .map(|(bucket, &c)| {
                    let n_t = stats
                        .get(bucket)
                        .map(|s| s.coverage_mean)
                        .unwrap_or_else(S::zero);
                    n_t * S::from_count(c) / n_dq
                })
                .sum();
            idf * entity_coverage * temporal_sum
        }
    }
}

/// Raw factor scores of one result set, computed once and shared by the
/// probabilistic ranker and the transition-graph builder.
#[derive(Debug, Clone)]
pub struct FactorScores<S = f64> {
    relativeness: BTreeMap<DocId, S>,
    timeliness: BTreeMap<TimeBucket, S>,
    relatedness: BTreeMap<EntityId, S>,
}

impl<S: Real> FactorScores<S> {
    /// Computes all raw scores for a non-empty result set.
    pub fn compute(index: &CorpusIndex, rs: &ResultSet) -> Result<Self> {
        if rs.is_empty() {
            return Err(Error::EmptyResultSet);
        }
        let query = rs.query();
        let stats = bucket_stats::<S>(index, rs);

        let mut rel = BTreeMap::new();
        for id in rs.doc_ids() {
            let doc = index.document(id).expect("matched doc in index");
            rel.insert(id.clone(), relativeness::<S>(doc, query)?);
        }

        let timeliness: BTreeMap<TimeBucket, S> = stats
            .keys()
            .map(|bucket| (bucket.clone(), timeliness_from_stats(bucket, rs, &stats)))
            .collect();

        let idf_reference = idf_reference_set(index, query);
        let relatedness: BTreeMap<EntityId, S> = rs
            .related_entities()
            .iter()
            .map(|e| {
                (
                    e.clone(),
                    relatedness_inner(e, rs, index, &idf_reference, &stats),
                )
            })
            .collect();

        Ok(FactorScores {
            relativeness: rel,
            timeliness,
            relatedness,
        })
    }

    /// Raw relativeness of a matched document.
    pub fn doc_relativeness(&self, id: &DocId) -> S {
        self.relativeness.get(id).copied().unwrap_or_else(S::zero)
    }

    /// Raw timeliness of a bucket (0 for buckets without matched docs).
    pub fn bucket_timeliness(&self, bucket: &TimeBucket) -> S {
        self.timeliness.get(bucket).copied().unwrap_or_else(S::zero)
    }

    /// Raw relatedness of a candidate related entity.
    pub fn entity_relatedness(&self, entity: &EntityId) -> S {
        self.relatedness.get(entity).copied().unwrap_or_else(S::zero)
    }

    pub fn relatedness_scores(&self) -> &BTreeMap<EntityId, S> {
        &self.relatedness
    }

    /// Sum of relatedness over a document's non-query entities (the raw
    /// numerator of the relatedness distribution).
    pub fn doc_relatedness_sum(&self, doc: &Document) -> S {
        doc.mentions()
            .keys()
            .filter_map(|e| self.relatedness.get(e))
            .fold(S::zero(), |acc, &v| acc + v)
    }
}

fn normalize<S: Real>(raw: BTreeMap<DocId, S>) -> FactorDistribution<S> {
    let total: S = raw.values().copied().sum();
    if total > S::zero() {
        FactorDistribution {
            probs: raw.into_iter().map(|(id, v)| (id, v / total)).collect(),
            degenerate: false,
        }
    } else {
        let n = S::from_count(raw.len());
        FactorDistribution {
            probs: raw.into_keys().map(|id| (id, S::one() / n)).collect(),
            degenerate: true,
        }
    }
}

fn raw_factor<S: Real>(
    index: &CorpusIndex,
    rs: &ResultSet,
    scores: &FactorScores<S>,
    factor: Factor,
) -> BTreeMap<DocId, S> {
    rs.doc_ids()
        .iter()
        .map(|id| {
            let doc = index.document(id).expect("matched doc in index");
            let raw = match factor {
                Factor::Relativeness => scores.doc_relativeness(id),
                Factor::Timeliness => scores.bucket_timeliness(&index.bucket_of(doc)),
                Factor::Relatedness => scores.doc_relatedness_sum(doc),
            };
            (id.clone(), raw)
        })
        .collect()
}

/// Normalizes one factor into a probability distribution over the matched
/// set (the degenerate all-zero case yields the uniform distribution,
/// flagged).
pub fn factor_probability<S: Real>(
    index: &CorpusIndex,
    rs: &ResultSet,
    factor: Factor,
) -> Result<FactorDistribution<S>> {
    let scores = FactorScores::compute(index, rs)?;
    Ok(normalize(raw_factor(index, rs, &scores, factor)))
}

/// Deterministic order: joined score, then raw relativeness, then raw
/// timeliness (all descending), then ascending doc id.
fn rank_order<S: Real>(a: &ScoredDoc<S>, b: &ScoredDoc<S>) -> Ordering {
    b.score
        .partial_cmp(&a.score)
        .unwrap_or(Ordering::Equal)
        .then_with(|| {
            b.breakdown
                .relativeness
                .partial_cmp(&a.breakdown.relativeness)
                .unwrap_or(Ordering::Equal)
        })
        .then_with(|| {
            b.breakdown
                .timeliness
                .partial_cmp(&a.breakdown.timeliness)
                .unwrap_or(Ordering::Equal)
        })
        .then_with(|| a.doc_id.cmp(&b.doc_id))
}

/// Ranks the matched set by the product of the selected factor
/// probabilities.
pub fn rank_probabilistic<S: Real>(
    index: &CorpusIndex,
    rs: &ResultSet,
    selection: FactorSelection,
) -> Result<Vec<ScoredDoc<S>>> {
    let (ranked, _) = rank_probabilistic_full(index, rs, selection)?;
    Ok(ranked)
}

/// [`rank_probabilistic`] also reporting which factors were degenerate
/// (all-zero raw scores replaced by the uniform distribution).
pub fn rank_probabilistic_full<S: Real>(
    index: &CorpusIndex,
    rs: &ResultSet,
    selection: FactorSelection,
) -> Result<(Vec<ScoredDoc<S>>, Vec<Factor>)> {
    let scores = FactorScores::compute(index, rs)?;

    let raw_rel = raw_factor(index, rs, &scores, Factor::Relativeness);
    let raw_time = raw_factor(index, rs, &scores, Factor::Timeliness);
    let raw_relat = raw_factor(index, rs, &scores, Factor::Relatedness);

    let dist_rel = normalize(raw_rel.clone());
    let dist_time = normalize(raw_time.clone());
    let dist_relat = normalize(raw_relat.clone());

    let mut degenerate = Vec::new();
    if selection.relativeness && dist_rel.degenerate {
        degenerate.push(Factor::Relativeness);
    }
    if selection.timeliness && dist_time.degenerate {
        degenerate.push(Factor::Timeliness);
    }
    if selection.relatedness && dist_relat.degenerate {
        degenerate.push(Factor::Relatedness);
    }

    let mut ranked: Vec<ScoredDoc<S>> = rs
        .doc_ids()
        .iter()
        .map(|id| {
            let mut score = S::one();
            if selection.relativeness {
                score = score * dist_rel.probs[id];
            }
            if selection.timeliness {
                score = score * dist_time.probs[id];
            }
            if selection.relatedness {
                score = score * dist_relat.probs[id];
            }
            ScoredDoc {
                doc_id: id.clone(),
                score,
                breakdown: FactorBreakdown {
                    relativeness: raw_rel[id],
                    timeliness: raw_time[id],
                    relatedness: raw_relat[id],
                },
            }
        })
        .collect();
    ranked.sort_by(rank_order);
    Ok((ranked, degenerate))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{build_index, parse_iso_date, Granularity};
    use crate::query::match_query;
    use approx::assert_abs_diff_eq;

    fn entity(s: &str) -> EntityId {
        EntityId::new(s).unwrap()
    }

    fn doc(id: &str, d: &str, mentions: &[(&str, u64)]) -> Document {
        let map = mentions
            .iter()
            .map(|(e, c)| (entity(e), *c))
            .collect::<BTreeMap<_, _>>();
        Document::new(
            DocId::new(id).unwrap(),
            parse_iso_date(d).unwrap(),
            None,
            map,
        )
        .unwrap()
    }

    fn query(semantics: Semantics, ents: &[&str]) -> Query {
        Query::new(
            "q",
            semantics,
            ents.iter().map(|e| entity(e)).collect(),
            parse_iso_date("1990-01-01").unwrap(),
            parse_iso_date("1990-12-31").unwrap(),
        )
        .unwrap()
    }

    fn setup(docs: Vec<Document>, semantics: Semantics, ents: &[&str]) -> (CorpusIndex, ResultSet) {
        let index = build_index(docs, Granularity::Day).unwrap();
        let rs = match_query(&index, &query(semantics, ents));
        (index, rs)
    }

    #[test]
    fn relativeness_and_is_query_mass_fraction() {
        let d = doc("d", "1990-01-01", &[("e1", 3), ("e2", 2)]);
        let score: f64 = relativeness(&d, &query(Semantics::And, &["e1"])).unwrap();
        assert_abs_diff_eq!(score, 0.6, epsilon = 1e-12);
    }

    #[test]
    fn relativeness_is_one_for_pure_query_documents() {
        let d = doc("d", "1990-01-01", &[("e1", 4)]);
        let score: f64 = relativeness(&d, &query(Semantics::And, &["e1"])).unwrap();
        assert_abs_diff_eq!(score, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn relativeness_or_weights_by_coverage() {
        let d = doc("d", "1990-01-01", &[("e1", 2), ("e3", 2)]);
        let score: f64 = relativeness(&d, &query(Semantics::Or, &["e1", "e2"])).unwrap();
        assert_abs_diff_eq!(score, 0.25, epsilon = 1e-12);
    }

    #[test]
    fn relativeness_rejects_empty_documents() {
        let d = doc("d", "1990-01-01", &[]);
        assert!(relativeness::<f64>(&d, &query(Semantics::And, &["e1"])).is_err());
    }

    #[test]
    fn timeliness_and_is_bucket_fraction() {
        let (index, rs) = setup(
            vec![
                doc("a", "1990-02-01", &[("e1", 1)]),
                doc("b", "1990-02-01", &[("e1", 1)]),
                doc("c", "1990-03-01", &[("e1", 1)]),
                doc("d", "1990-04-01", &[("e1", 1)]),
            ],
            Semantics::And,
            &["e1"],
        );
        let bucket = crate::corpus::bucketize(parse_iso_date("1990-02-01").unwrap(), Granularity::Day);
        let score: f64 = timeliness_bucket(&bucket, &rs, &index);
        assert_abs_diff_eq!(score, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn timeliness_or_weights_by_bucket_coverage() {
        let (index, rs) = setup(
            vec![
                doc("a", "1990-02-01", &[("e1", 1), ("e2", 1)]),
                doc("b", "1990-03-01", &[("e1", 1)]),
                doc("c", "1990-04-01", &[("e2", 1)]),
                doc("d", "1990-05-01", &[("e1", 1)]),
            ],
            Semantics::Or,
            &["e1", "e2"],
        );
        assert_eq!(rs.len(), 4);
        let bucket = crate::corpus::bucketize(parse_iso_date("1990-02-01").unwrap(), Granularity::Day);
        let score: f64 = timeliness_bucket(&bucket, &rs, &index);
        assert_abs_diff_eq!(score, 0.25, epsilon = 1e-12);
    }

    #[test]
    fn timeliness_zero_outside_matched_buckets() {
        let (index, rs) = setup(
            vec![doc("a", "1990-02-01", &[("e1", 1)])],
            Semantics::And,
            &["e1"],
        );
        let bucket = crate::corpus::bucketize(parse_iso_date("1990-07-01").unwrap(), Granularity::Day);
        let score: f64 = timeliness_bucket(&bucket, &rs, &index);
        assert_eq!(score, 0.0);
    }

    #[test]
    fn relatedness_and_example() {
        let (index, rs) = setup(
            vec![
                doc("d1", "1990-02-01", &[("e1", 1), ("e2", 1)]),
                doc("d2", "1990-02-01", &[("e1", 1)]),
            ],
            Semantics::And,
            &["e1"],
        );
        let score: f64 = relatedness(&entity("e2"), &rs, &index);
        assert_abs_diff_eq!(score, 0.25, epsilon = 1e-12);
    }

    #[test]
    fn ubiquitous_entity_scores_zero() {
        let (index, rs) = setup(
            vec![
                doc("d1", "1990-02-01", &[("e1", 1), ("e2", 1)]),
                doc("d2", "1990-02-01", &[("e1", 1), ("e2", 3)]),
            ],
            Semantics::And,
            &["e1"],
        );
        let score: f64 = relatedness(&entity("e2"), &rs, &index);
        assert_eq!(score, 0.0);
    }

    #[test]
    fn relatedness_or_example() {
        // d1{e1,e3}, d2{e2,e3}, d3{e1}: score^r(e3) = (1/3)·(1/2)·(1/3) = 1/18
        let (index, rs) = setup(
            vec![
                doc("d1", "1990-02-01", &[("e1", 1), ("e3", 1)]),
                doc("d2", "1990-02-01", &[("e2", 1), ("e3", 1)]),
                doc("d3", "1990-02-01", &[("e1", 1)]),
            ],
            Semantics::Or,
            &["e1", "e2"],
        );
        let score: f64 = relatedness(&entity("e3"), &rs, &index);
        assert_abs_diff_eq!(score, 1.0 / 18.0, epsilon = 1e-12);
    }

    #[test]
    fn factor_probability_normalizes_relativeness() {
        // relativeness 0.6 and 0.2 → probabilities 0.75 and 0.25
        let (index, rs) = setup(
            vec![
                doc("a", "1990-02-01", &[("e1", 3), ("x", 2)]),
                doc("b", "1990-03-01", &[("e1", 1), ("y", 4)]),
            ],
            Semantics::And,
            &["e1"],
        );
        let dist: FactorDistribution = factor_probability(&index, &rs, Factor::Relativeness).unwrap();
        assert!(!dist.degenerate);
        assert_abs_diff_eq!(dist.probs[&DocId::new("a").unwrap()], 0.75, epsilon = 1e-12);
        assert_abs_diff_eq!(dist.probs[&DocId::new("b").unwrap()], 0.25, epsilon = 1e-12);
    }

    #[test]
    fn same_bucket_timeliness_is_uniform() {
        let (index, rs) = setup(
            vec![
                doc("a", "1990-02-01", &[("e1", 1)]),
                doc("b", "1990-02-01", &[("e1", 2)]),
                doc("c", "1990-02-01", &[("e1", 3)]),
            ],
            Semantics::And,
            &["e1"],
        );
        let dist: FactorDistribution = factor_probability(&index, &rs, Factor::Timeliness).unwrap();
        for p in dist.probs.values() {
            assert_abs_diff_eq!(*p, 1.0 / 3.0, epsilon = 1e-12);
        }
        assert!(!dist.degenerate);
    }

    #[test]
    fn pure_query_doc_gets_zero_relatedness_mass() {
        let (index, rs) = setup(
            vec![
                doc("a", "1990-02-01", &[("e1", 1)]),
                doc("b", "1990-02-01", &[("e1", 1), ("e2", 1)]),
                doc("c", "1990-03-01", &[("e1", 1)]),
            ],
            Semantics::And,
            &["e1"],
        );
        let dist: FactorDistribution = factor_probability(&index, &rs, Factor::Relatedness).unwrap();
        assert!(!dist.degenerate);
        assert_eq!(dist.probs[&DocId::new("a").unwrap()], 0.0);
        assert!(dist.probs[&DocId::new("b").unwrap()] > 0.0);
    }

    #[test]
    fn all_zero_relatedness_degenerates_to_uniform() {
        let (index, rs) = setup(
            vec![
                doc("a", "1990-02-01", &[("e1", 1)]),
                doc("b", "1990-03-01", &[("e1", 2)]),
            ],
            Semantics::And,
            &["e1"],
        );
        let dist: FactorDistribution = factor_probability(&index, &rs, Factor::Relatedness).unwrap();
        assert!(dist.degenerate);
        for p in dist.probs.values() {
            assert_abs_diff_eq!(*p, 0.5, epsilon = 1e-12);
        }
    }

    #[test]
    fn single_factor_rank_matches_relativeness_order() {
        let (index, rs) = setup(
            vec![
                doc("a", "1990-02-01", &[("e1", 1), ("x", 3)]),
                doc("b", "1990-02-02", &[("e1", 3), ("y", 1)]),
                doc("c", "1990-02-03", &[("e1", 1), ("z", 1)]),
            ],
            Semantics::And,
            &["e1"],
        );
        let sel = "A".parse().unwrap();
        let ranked: Vec<ScoredDoc> = rank_probabilistic(&index, &rs, sel).unwrap();
        let order: Vec<_> = ranked.iter().map(|s| s.doc_id.as_str()).collect();
        assert_eq!(order, vec!["b", "c", "a"]);
    }

    #[test]
    fn singleton_result_scores_one() {
        let (index, rs) = setup(
            vec![doc("a", "1990-02-01", &[("e1", 1)])],
            Semantics::And,
            &["e1"],
        );
        let ranked: Vec<ScoredDoc> =
            rank_probabilistic(&index, &rs, FactorSelection::ALL).unwrap();
        assert_eq!(ranked.len(), 1);
        assert_abs_diff_eq!(ranked[0].score, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn empty_result_set_is_an_error() {
        let (index, rs) = setup(
            vec![doc("a", "1991-02-01", &[("e1", 1)])],
            Semantics::And,
            &["e1"],
        );
        assert!(rs.is_empty());
        assert!(matches!(
            rank_probabilistic::<f64>(&index, &rs, FactorSelection::ALL),
            Err(Error::EmptyResultSet)
        ));
    }

    #[test]
    fn factor_selection_parses_combination_strings() {
        let sel: FactorSelection = "ac".parse().unwrap();
        assert!(sel.relativeness && !sel.timeliness && sel.relatedness);
        assert_eq!(sel.to_string(), "AC");
        assert!("".parse::<FactorSelection>().is_err());
        assert!("AD".parse::<FactorSelection>().is_err());
    }
}
