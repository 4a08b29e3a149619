//! Stochastic ranking: biased random walk with restart over the
//! query-entity / document / related-entity transition graph.
//!
//! Edge weights reuse the probabilistic factor scores: query entities send
//! mass to their matched documents in proportion to relativeness ×
//! timeliness and to co-occurring related entities in proportion to
//! relatedness, mixed by `p1`; documents and related entities forward mass
//! by normalized mention frequency. The walk restarts to a uniform
//! distribution over the query-entity nodes with probability `restart`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::corpus::{CorpusIndex, DocId, EntityId};
use crate::error::{Error, Result};
use crate::prob::{FactorBreakdown, FactorScores, ScoredDoc};
use crate::query::ResultSet;
use crate::scalar::Real;

/// Walk parameters. `restart` must stay below 1 (the walker would never
/// reach document nodes); iteration count defaults to 30 with an optional
/// L1 early stop that is off by default.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RwrParams<S = f64> {
    /// Probability of jumping back to a query entity.
    pub restart: S,
    /// Mass a query-entity node sends to document targets (vs related
    /// entities).
    pub p1: S,
    pub iterations: usize,
    /// L1-change threshold for early stopping, when set.
    pub convergence: Option<S>,
}

impl<S: Real> Default for RwrParams<S> {
    fn default() -> Self {
        RwrParams {
            restart: S::from_f64(0.2).unwrap(),
            p1: S::one(),
            iterations: 30,
            convergence: None,
        }
    }
}

impl<S: Real> RwrParams<S> {
    pub fn validate(&self) -> Result<()> {
        if !(self.restart >= S::zero() && self.restart < S::one()) {
            return Err(Error::InvalidParameter(format!(
                "restart probability must be in [0, 1), got {}",
                self.restart
            )));
        }
        if !(self.p1 >= S::zero() && self.p1 <= S::one()) {
            return Err(Error::InvalidParameter(format!(
                "p1 must be in [0, 1], got {}",
                self.p1
            )));
        }
        if self.iterations == 0 {
            return Err(Error::InvalidParameter(
                "iterations must be >= 1".to_string(),
            ));
        }
        Ok(())
    }
}

/// Graph node: a query entity, a matched document, or a related entity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Node {
    QueryEntity(EntityId),
    Doc(DocId),
    RelatedEntity(EntityId),
}

impl Node {
    fn dump_label(&self) -> String {
        match self {
            Node::QueryEntity(e) => format!("q:{e}"),
            Node::Doc(d) => format!("d:{d}"),
            Node::RelatedEntity(e) => format!("r:{e}"),
        }
    }
}

/// Weighted directed transition graph; out-edge weights of every node sum
/// to 1.
#[derive(Debug, Clone)]
pub struct TransitionGraph<S = f64> {
    nodes: Vec<Node>,
    out_edges: Vec<Vec<(usize, S)>>,
    query_entity_nodes: Vec<usize>,
    doc_nodes: Vec<usize>,
}

impl<S: Real> TransitionGraph<S> {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node_index(&self, node: &Node) -> Option<usize> {
        self.nodes.iter().position(|n| n == node)
    }

    pub fn out_edges(&self, node: usize) -> &[(usize, S)] {
        &self.out_edges[node]
    }

    pub fn query_entity_nodes(&self) -> &[usize] {
        &self.query_entity_nodes
    }

    pub fn doc_nodes(&self) -> &[usize] {
        &self.doc_nodes
    }

    /// One synchronous walk update: restart mass to the query entities plus
    /// forwarded mass along the out-edges of the previous vector.
    pub fn step(&self, scores: &[S], restart: S) -> Vec<S> {
        let jump_share = restart / S::from_count(self.query_entity_nodes.len());
        let mut next = vec![S::zero(); self.nodes.len()];
        for &q in &self.query_entity_nodes {
            next[q] = jump_share;
        }
        let keep = S::one() - restart;
        for (from, edges) in self.out_edges.iter().enumerate() {
            let outgoing = keep * scores[from];
            for &(to, weight) in edges {
                next[to] += weight * outgoing;
            }
        }
        next
    }

    /// Line-oriented `src dst weight` dump for debugging; node labels carry
    /// a `q:`/`d:`/`r:` kind prefix.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (from, edges) in self.out_edges.iter().enumerate() {
            for &(to, weight) in edges {
                let _ = writeln!(
                    out,
                    "{}\t{}\t{}",
                    self.nodes[from].dump_label(),
                    self.nodes[to].dump_label(),
                    weight
                );
            }
        }
        out
    }
}

/// Node scores after the walk; sums to 1.
#[derive(Debug, Clone)]
pub struct RwrState<S = f64> {
    scores: Vec<S>,
    iterations_run: usize,
}

impl<S: Real> RwrState<S> {
    pub fn score(&self, node: usize) -> S {
        self.scores[node]
    }

    pub fn scores(&self) -> &[S] {
        &self.scores
    }

    pub fn iterations_run(&self) -> usize {
        self.iterations_run
    }

    pub fn mass(&self) -> S {
        self.scores.iter().copied().sum()
    }
}

/// Builds the transition graph for a non-empty result set.
///
/// Query entities matching no document of the result set (possible under
/// OR/category semantics) are excluded from the node set and the restart
/// support. When a query entity has no positively scored related-entity
/// target, its document edges absorb the full unit mass instead of `p1`.
pub fn build_graph<S: Real>(
    index: &CorpusIndex,
    rs: &ResultSet,
    scores: &FactorScores<S>,
    params: &RwrParams<S>,
) -> Result<TransitionGraph<S>> {
    params.validate()?;
    if rs.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let query = rs.query();

    let kept_query_entities: Vec<EntityId> = query
        .entities()
        .iter()
        .filter(|e| {
            index
                .docs_with_entity(e)
                .map(|docs| docs.intersection(rs.doc_ids()).next().is_some())
                .unwrap_or(false)
        })
        .cloned()
        .collect();
    if kept_query_entities.is_empty() {
        return Err(Error::EmptyGraph);
    }

    let mut nodes: Vec<Node> = Vec::new();
    let mut entity_index: BTreeMap<EntityId, usize> = BTreeMap::new();
    let mut doc_index: BTreeMap<DocId, usize> = BTreeMap::new();

    let mut query_entity_nodes = Vec::new();
    for e in &kept_query_entities {
        query_entity_nodes.push(nodes.len());
        entity_index.insert(e.clone(), nodes.len());
        nodes.push(Node::QueryEntity(e.clone()));
    }
    let mut doc_nodes = Vec::new();
    for d in rs.doc_ids() {
        doc_nodes.push(nodes.len());
        doc_index.insert(d.clone(), nodes.len());
        nodes.push(Node::Doc(d.clone()));
    }
    for e in rs.related_entities() {
        entity_index.insert(e.clone(), nodes.len());
        nodes.push(Node::RelatedEntity(e.clone()));
    }

    let mut out_edges: Vec<Vec<(usize, S)>> = vec![Vec::new(); nodes.len()];

    // query entity → documents (relativeness × timeliness) and
    // query entity → related entities (relatedness), mixed by p1
    for e in &kept_query_entities {
        let from = entity_index[e];
        let matched: Vec<&DocId> = index
            .docs_with_entity(e)
            .map(|docs| docs.intersection(rs.doc_ids()).collect())
            .unwrap_or_default();

        let doc_raw: Vec<(usize, S)> = matched
            .iter()
            .map(|id| {
                let doc = index.document(id).expect("matched doc in index");
                let raw = scores.doc_relativeness(id)
                    * scores.bucket_timeliness(&index.bucket_of(doc));
                (doc_index[*id], raw)
            })
            .collect();
        let doc_total: S = doc_raw.iter().map(|&(_, w)| w).sum();

        let mut co_occurring: BTreeSet<EntityId> = BTreeSet::new();
        for id in &matched {
            let doc = index.document(id).expect("matched doc in index");
            for other in doc.mentions().keys() {
                if rs.related_entities().contains(other) {
                    co_occurring.insert(other.clone());
                }
            }
        }
        let ent_raw: Vec<(usize, S)> = co_occurring
            .iter()
            .map(|e2| (entity_index[e2], scores.entity_relatedness(e2)))
            .filter(|&(_, w)| w > S::zero())
            .collect();
        let ent_total: S = ent_raw.iter().map(|&(_, w)| w).sum();

        let doc_branch = doc_total > S::zero();
        let ent_branch = ent_total > S::zero();
        let doc_scale = if ent_branch { params.p1 } else { S::one() };
        let ent_scale = if doc_branch {
            S::one() - params.p1
        } else {
            S::one()
        };

        let mut edges = Vec::new();
        if doc_branch && doc_scale > S::zero() {
            for (to, w) in doc_raw {
                edges.push((to, doc_scale * w / doc_total));
            }
        }
        if ent_branch && ent_scale > S::zero() {
            for (to, w) in ent_raw {
                edges.push((to, ent_scale * w / ent_total));
            }
        }
        out_edges[from] = edges;
    }

    // document → entities present as graph nodes, by normalized frequency
    for id in rs.doc_ids() {
        let from = doc_index[id];
        let doc = index.document(id).expect("matched doc in index");
        let targets: Vec<(usize, u64)> = doc
            .mentions()
            .iter()
            .filter_map(|(e, &c)| entity_index.get(e).map(|&to| (to, c)))
            .collect();
        let total: u64 = targets.iter().map(|&(_, c)| c).sum();
        out_edges[from] = targets
            .into_iter()
            .map(|(to, c)| (to, S::from_u64(c).unwrap() / S::from_u64(total).unwrap()))
            .collect();
    }

    // related entity → matched documents, by normalized frequency
    for e in rs.related_entities() {
        let from = entity_index[e];
        let matched: Vec<&DocId> = index
            .docs_with_entity(e)
            .map(|docs| docs.intersection(rs.doc_ids()).collect())
            .unwrap_or_default();
        let total: u64 = matched
            .iter()
            .map(|id| index.document(id).expect("matched doc in index").count(e))
            .sum();
        out_edges[from] = matched
            .iter()
            .map(|id| {
                let c = index.document(id).expect("matched doc in index").count(e);
                (
                    doc_index[*id],
                    S::from_u64(c).unwrap() / S::from_u64(total).unwrap(),
                )
            })
            .collect();
    }

    Ok(TransitionGraph {
        nodes,
        out_edges,
        query_entity_nodes,
        doc_nodes,
    })
}

/// Runs the walk: uniform initialization over the query-entity nodes, then
/// synchronous updates for `iterations` rounds (or until the optional L1
/// early stop fires).
pub fn run_rwr<S: Real>(graph: &TransitionGraph<S>, params: &RwrParams<S>) -> Result<RwrState<S>> {
    params.validate()?;
    let n_q = graph.query_entity_nodes.len();
    if n_q == 0 {
        return Err(Error::EmptyGraph);
    }

    let mut scores = vec![S::zero(); graph.node_count()];
    let init = S::one() / S::from_count(n_q);
    for &q in &graph.query_entity_nodes {
        scores[q] = init;
    }

    let mut iterations_run = 0;
    for _ in 0..params.iterations {
        let next = graph.step(&scores, params.restart);
        iterations_run += 1;
        let done = params.convergence.map_or(false, |threshold| {
            let change: S = scores
                .iter()
                .zip(next.iter())
                .map(|(&a, &b)| (a - b).abs())
                .sum();
            change < threshold
        });
        scores = next;
        if done {
            break;
        }
    }

    Ok(RwrState {
        scores,
        iterations_run,
    })
}

/// Ranks the matched documents by their walk scores (ties broken by
/// ascending doc id). The breakdown carries the raw factor scores for
/// explainability.
pub fn rank_stochastic<S: Real>(
    index: &CorpusIndex,
    rs: &ResultSet,
    params: &RwrParams<S>,
) -> Result<Vec<ScoredDoc<S>>> {
    let scores = FactorScores::compute(index, rs)?;
    let graph = build_graph(index, rs, &scores, params)?;
    let state = run_rwr(&graph, params)?;

    let mut ranked: Vec<ScoredDoc<S>> = graph
        .doc_nodes
        .iter()
        .map(|&idx| {
            let Node::Doc(id) = &graph.nodes[idx] else {
                unreachable!("doc_nodes index a document node");
            };
            let doc = index.document(id).expect("matched doc in index");
            ScoredDoc {
                doc_id: id.clone(),
                score: state.score(idx),
                breakdown: FactorBreakdown {
                    relativeness: scores.doc_relativeness(id),
                    timeliness: scores.bucket_timeliness(&index.bucket_of(doc)),
                    relatedness: scores.doc_relatedness_sum(doc),
                },
            }
        })
        .collect();
    ranked.sort_by(|a, b| {
        b.score
            .partial_cmp(&a.score)
            .unwrap_or(Ordering::Equal)
            .then_with(|| a.doc_id.cmp(&b.doc_id))
    });
    Ok(ranked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{build_index, parse_iso_date, Document, Granularity};
    use crate::query::{match_query, Query, Semantics};
    use approx::assert_abs_diff_eq;
    use std::collections::BTreeMap;

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

    fn graph_for(
        docs: Vec<Document>,
        semantics: Semantics,
        ents: &[&str],
        params: &RwrParams,
    ) -> (CorpusIndex, ResultSet, TransitionGraph) {
        let index = build_index(docs, Granularity::Day).unwrap();
        let rs = match_query(&index, &query(semantics, ents));
        let scores = FactorScores::compute(&index, &rs).unwrap();
        let graph = build_graph(&index, &rs, &scores, params).unwrap();
        (index, rs, graph)
    }

    fn edge_weight(g: &TransitionGraph, from: &Node, to: &Node) -> Option<f64> {
        let f = g.node_index(from)?;
        let t = g.node_index(to)?;
        g.out_edges(f).iter().find(|&&(n, _)| n == t).map(|&(_, w)| w)
    }

    #[test]
    fn single_pair_graph_has_unit_edges() {
        let (_, _, g) = graph_for(
            vec![doc("d1", "1990-02-01", &[("e1", 1)])],
            Semantics::And,
            &["e1"],
            &RwrParams::default(),
        );
        assert_eq!(g.node_count(), 2);
        let e = Node::QueryEntity(entity("e1"));
        let d = Node::Doc(DocId::new("d1").unwrap());
        assert_abs_diff_eq!(edge_weight(&g, &e, &d).unwrap(), 1.0);
        assert_abs_diff_eq!(edge_weight(&g, &d, &e).unwrap(), 1.0);
    }

    #[test]
    fn doc_edges_use_normalized_frequency() {
        let (_, _, g) = graph_for(
            vec![
                doc("d1", "1990-02-01", &[("e1", 3), ("x", 1)]),
                doc("d2", "1990-02-01", &[("e1", 1), ("x", 1)]),
            ],
            Semantics::And,
            &["e1"],
            &RwrParams::default(),
        );
        let d = Node::Doc(DocId::new("d1").unwrap());
        let q = Node::QueryEntity(entity("e1"));
        let r = Node::RelatedEntity(entity("x"));
        assert_abs_diff_eq!(edge_weight(&g, &d, &q).unwrap(), 0.75, epsilon = 1e-12);
        assert_abs_diff_eq!(edge_weight(&g, &d, &r).unwrap(), 0.25, epsilon = 1e-12);
    }

    #[test]
    fn related_entity_edges_use_normalized_frequency() {
        let (_, _, g) = graph_for(
            vec![
                doc("d1", "1990-02-01", &[("e1", 1), ("x", 1)]),
                doc("d2", "1990-03-01", &[("e1", 1), ("x", 3)]),
            ],
            Semantics::And,
            &["e1"],
            &RwrParams::default(),
        );
        let r = Node::RelatedEntity(entity("x"));
        let d1 = Node::Doc(DocId::new("d1").unwrap());
        let d2 = Node::Doc(DocId::new("d2").unwrap());
        assert_abs_diff_eq!(edge_weight(&g, &r, &d1).unwrap(), 0.25, epsilon = 1e-12);
        assert_abs_diff_eq!(edge_weight(&g, &r, &d2).unwrap(), 0.75, epsilon = 1e-12);
    }

    #[test]
    fn out_weights_are_stochastic() {
        let (_, _, g) = graph_for(
            vec![
                doc("d1", "1990-02-01", &[("e1", 2), ("x", 1), ("y", 4)]),
                doc("d2", "1990-03-01", &[("e1", 1), ("x", 3)]),
                doc("d3", "1990-03-02", &[("e1", 5)]),
            ],
            Semantics::And,
            &["e1"],
            &RwrParams {
                p1: 0.6,
                ..RwrParams::default()
            },
        );
        for node in 0..g.node_count() {
            let total: f64 = g.out_edges(node).iter().map(|&(_, w)| w).sum();
            assert_abs_diff_eq!(total, 1.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn two_node_walk_reaches_analytic_fixed_point() {
        let (_, _, g) = graph_for(
            vec![doc("d1", "1990-02-01", &[("e1", 1)])],
            Semantics::And,
            &["e1"],
            &RwrParams::default(),
        );
        let params = RwrParams {
            iterations: 200,
            ..RwrParams::default()
        };
        let state = run_rwr(&g, &params).unwrap();
        let e = g.node_index(&Node::QueryEntity(entity("e1"))).unwrap();
        let d = g.node_index(&Node::Doc(DocId::new("d1").unwrap())).unwrap();
        assert_abs_diff_eq!(state.score(e), 5.0 / 9.0, epsilon = 1e-9);
        assert_abs_diff_eq!(state.score(d), 4.0 / 9.0, epsilon = 1e-9);
        // the contraction rate is (1-restart) per iteration, so 30 rounds
        // land within ~6e-4 of the fixed point, not closer
        let thirty = run_rwr(&g, &RwrParams::default()).unwrap();
        assert_abs_diff_eq!(thirty.score(e), 5.0 / 9.0, epsilon = 1e-3);
        assert!((thirty.score(e) - 5.0 / 9.0).abs() > 1e-7);
    }

    #[test]
    fn zero_restart_converges_to_stationary_distribution() {
        // aperiodic: e1→e2 (related-entity edge) creates an odd cycle
        let (_, _, g) = graph_for(
            vec![
                doc("d1", "1990-02-01", &[("e1", 1), ("e2", 1)]),
                doc("d2", "1990-02-01", &[("e1", 2)]),
            ],
            Semantics::And,
            &["e1"],
            &RwrParams {
                p1: 0.5,
                ..RwrParams::default()
            },
        );
        let params = RwrParams {
            restart: 0.0,
            iterations: 2000,
            ..RwrParams::default()
        };
        let state = run_rwr(&g, &params).unwrap();
        let next = g.step(state.scores(), 0.0);
        let residual: f64 = state
            .scores()
            .iter()
            .zip(next.iter())
            .map(|(a, b)| (a - b).abs())
            .sum();
        assert!(residual < 1e-9, "not stationary: residual {residual}");
        assert_abs_diff_eq!(state.mass(), 1.0, epsilon = 1e-9);
    }

    #[test]
    fn mass_is_conserved_every_iteration() {
        let (_, _, g) = graph_for(
            vec![
                doc("d1", "1990-02-01", &[("e1", 2), ("x", 1)]),
                doc("d2", "1990-03-01", &[("e1", 1), ("e2", 2)]),
                doc("d3", "1990-03-05", &[("e2", 1), ("x", 2)]),
            ],
            Semantics::Or,
            &["e1", "e2"],
            &RwrParams {
                p1: 0.4,
                ..RwrParams::default()
            },
        );
        let mut r = vec![0.0; g.node_count()];
        for &q in g.query_entity_nodes() {
            r[q] = 1.0 / g.query_entity_nodes().len() as f64;
        }
        for _ in 0..10 {
            r = g.step(&r, 0.2);
            let mass: f64 = r.iter().sum();
            assert_abs_diff_eq!(mass, 1.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn p1_extremes_gate_query_entity_edges() {
        let docs = vec![
            doc("d1", "1990-02-01", &[("e1", 1), ("x", 1)]),
            doc("d2", "1990-03-01", &[("e1", 2)]),
        ];
        let (_, _, g1) = graph_for(docs.clone(), Semantics::And, &["e1"], &RwrParams {
            p1: 1.0,
            ..RwrParams::default()
        });
        let q = Node::QueryEntity(entity("e1"));
        let r = Node::RelatedEntity(entity("x"));
        assert!(edge_weight(&g1, &q, &r).is_none());

        let (_, _, g0) = graph_for(docs, Semantics::And, &["e1"], &RwrParams {
            p1: 0.0,
            ..RwrParams::default()
        });
        let d1 = Node::Doc(DocId::new("d1").unwrap());
        assert!(edge_weight(&g0, &q, &d1).is_none());
        assert_abs_diff_eq!(edge_weight(&g0, &q, &r).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn no_related_entities_renormalizes_doc_branch() {
        let (_, _, g) = graph_for(
            vec![doc("d1", "1990-02-01", &[("e1", 1)])],
            Semantics::And,
            &["e1"],
            &RwrParams {
                p1: 0.3,
                ..RwrParams::default()
            },
        );
        let q = Node::QueryEntity(entity("e1"));
        let d = Node::Doc(DocId::new("d1").unwrap());
        assert_abs_diff_eq!(edge_weight(&g, &q, &d).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn dangling_query_entities_are_excluded() {
        // e2 only matches outside the interval; kept support is {e1}
        let index = build_index(
            vec![
                doc("d1", "1990-02-01", &[("e1", 1)]),
                doc("d2", "1991-02-01", &[("e2", 1)]),
            ],
            Granularity::Day,
        )
        .unwrap();
        let rs = match_query(&index, &query(Semantics::Or, &["e1", "e2"]));
        let scores = FactorScores::compute(&index, &rs).unwrap();
        let g = build_graph(&index, &rs, &scores, &RwrParams::default()).unwrap();
        assert!(g.node_index(&Node::QueryEntity(entity("e2"))).is_none());
        assert_eq!(g.query_entity_nodes().len(), 1);
    }

    #[test]
    fn empty_result_set_is_empty_graph() {
        let index = build_index(
            vec![doc("d1", "1991-02-01", &[("e1", 1)])],
            Granularity::Day,
        )
        .unwrap();
        let rs = match_query(&index, &query(Semantics::And, &["e1"]));
        let err = rank_stochastic::<f64>(&index, &rs, &RwrParams::default());
        assert!(matches!(err, Err(Error::EmptyGraph | Error::EmptyResultSet)));
    }

    #[test]
    fn single_document_is_ranked_first() {
        let index = build_index(
            vec![doc("d1", "1990-02-01", &[("e1", 1)])],
            Granularity::Day,
        )
        .unwrap();
        let rs = match_query(&index, &query(Semantics::And, &["e1"]));
        let ranked: Vec<ScoredDoc> = rank_stochastic(&index, &rs, &RwrParams::default()).unwrap();
        assert_eq!(ranked.len(), 1);
        assert_eq!(ranked[0].doc_id.as_str(), "d1");
    }

    #[test]
    fn structurally_identical_docs_tie_break_by_id() {
        let index = build_index(
            vec![
                doc("b", "1990-02-01", &[("e1", 2), ("x", 1)]),
                doc("a", "1990-02-01", &[("e1", 2), ("x", 1)]),
            ],
            Granularity::Day,
        )
        .unwrap();
        let rs = match_query(&index, &query(Semantics::And, &["e1"]));
        let ranked: Vec<ScoredDoc> = rank_stochastic(&index, &rs, &RwrParams::default()).unwrap();
        assert_abs_diff_eq!(ranked[0].score, ranked[1].score, epsilon = 1e-15);
        assert_eq!(ranked[0].doc_id.as_str(), "a");
        assert_eq!(ranked[1].doc_id.as_str(), "b");
    }

    #[test]
    fn invalid_params_rejected() {
        let p = RwrParams::<f64> {
            restart: 1.0,
            ..RwrParams::default()
        };
        assert!(p.validate().is_err());
        let p = RwrParams::<f64> {
            p1: 1.5,
            ..RwrParams::default()
        };
        assert!(p.validate().is_err());
    }

    #[test]
    fn dump_lists_every_edge_with_kind_prefixes() {
        let (_, _, g) = graph_for(
            vec![doc("d1", "1990-02-01", &[("e1", 1), ("x", 2)])],
            Semantics::And,
            &["e1"],
            &RwrParams {
                p1: 0.5,
                ..RwrParams::default()
            },
        );
        let dump = g.dump();
        let edge_count: usize = (0..g.node_count()).map(|n| g.out_edges(n).len()).sum();
        assert_eq!(dump.lines().count(), edge_count);
        assert!(dump.contains("q:e1\td:d1\t"));
        assert!(dump.contains("d:d1\tr:x\t"));
    }
}
