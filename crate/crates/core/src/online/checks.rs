//! Runtime assertions for checked mode.
//!
//! Two structural properties of the greedy swap rule are verified after
//! every reveal:
//!
//! * unseen-edge dominance: if an edge `e'` outside the working tree closes
//!   a cycle containing an unseen edge `e` of the initial prediction tree,
//!   then `ŵ(e) ≤ ŵ(e')`;
//! * post-rejection dominance: once `e'` has been rejected, every unseen
//!   edge on its current cycle has `ŵ(e) < w(e')`.
//!
//! Violations signal implementation bugs, not bad input.

use crate::error::{Result, WmstError};
use crate::graph::{EdgeId, Graph, SpanningTree};
use crate::mst::UnionFind;
use crate::online::{Decision, OnlineAlgorithm};
use crate::weight::Weight;

#[derive(Clone)]
pub(crate) struct LemmaChecker<W> {
    initial_tree: Option<Vec<bool>>,
    /// Working-tree membership after the previous step.
    previous_tree: Option<Vec<bool>>,
    rejected: Vec<(EdgeId, W)>,
}

impl<W: Weight> LemmaChecker<W> {
    pub(crate) fn new(graph: &Graph, tree: Option<&SpanningTree>) -> Self {
        let members = tree.map(|t| (0..graph.m()).map(|id| t.contains(id)).collect::<Vec<_>>());
        LemmaChecker {
            initial_tree: members.clone(),
            previous_tree: members,
            rejected: Vec::new(),
        }
    }

    /// Validates a single decision against the tree held before it.
    pub(crate) fn record(
        &mut self,
        edge: EdgeId,
        weight: &W,
        decision: Decision,
        seen: &[bool],
    ) -> Result<()> {
        match decision {
            Decision::Swap { evicted } => {
                if let Some(previous) = &self.previous_tree {
                    if !previous[evicted] {
                        return Err(WmstError::LemmaViolation(format!(
                            "edge {edge} evicted {evicted}, which was not in the working tree"
                        )));
                    }
                }
                if evicted == edge || seen[evicted] {
                    return Err(WmstError::LemmaViolation(format!(
                        "edge {edge} evicted already-seen edge {evicted}"
                    )));
                }
            }
            Decision::Reject => self.rejected.push((edge, weight.clone())),
            Decision::Accept => {}
        }
        Ok(())
    }

    pub(crate) fn after_step<A: OnlineAlgorithm<W> + ?Sized>(
        &mut self,
        graph: &Graph,
        predicted: &[W],
        algorithm: &A,
        seen: &[bool],
    ) -> Result<()> {
        let Some(tree) = algorithm.working_tree() else {
            return Ok(());
        };
        check_spanning(graph, tree)?;
        if let Some(previous) = self.previous_tree.as_mut() {
            for (id, member) in previous.iter_mut().enumerate() {
                *member = tree.contains(id);
            }
        }
        if let Some(initial) = &self.initial_tree {
            // an edge can only be violated by an unseen initial edge heavier than it
            let heaviest = (0..graph.m()).filter(|&e| initial[e] && !seen[e]).map(|e| &predicted[e]).max();
            let candidates = graph
                .edges()
                .iter()
                .filter(|e| !tree.contains(e.id) && heaviest.is_some_and(|h| *h > predicted[e.id]));
            for outside in candidates {
                for e in tree.path(outside.u, outside.v) {
                    if initial[e] && !seen[e] && predicted[e] > predicted[outside.id] {
                        return Err(WmstError::LemmaViolation(format!(
                            "unseen prediction-tree edge {e} (ŵ = {}) lies on the cycle of edge {} (ŵ = {})",
                            predicted[e], outside.id, predicted[outside.id]
                        )));
                    }
                }
            }
        }
        if algorithm.rejects_only_dominated() {
            let heaviest = (0..graph.m()).filter(|&e| !seen[e]).map(|e| &predicted[e]).max();
            for (rejected, w) in &self.rejected {
                let r = graph.edge(*rejected);
                if tree.contains(r.id) {
                    return Err(WmstError::LemmaViolation(format!(
                        "rejected edge {rejected} is in the working tree"
                    )));
                }
                if heaviest.is_none_or(|h| h < w) {
                    continue;
                }
                for e in tree.path(r.u, r.v) {
                    if !seen[e] && predicted[e] >= *w {
                        return Err(WmstError::LemmaViolation(format!(
                            "unseen edge {e} (ŵ = {}) on the cycle of rejected edge {rejected} (w = {w})",
                            predicted[e]
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The working tree has n − 1 edges and no cycle.
fn check_spanning(graph: &Graph, tree: &SpanningTree) -> Result<()> {
    let mut uf = UnionFind::new(graph.n());
    let mut count = 0;
    for e in graph.edges().iter().filter(|e| tree.contains(e.id)) {
        count += 1;
        if !uf.union(e.u, e.v) {
            return Err(WmstError::LemmaViolation(format!("working tree has a cycle through edge {}", e.id)));
        }
    }
    if count + 1 != graph.n() {
        return Err(WmstError::LemmaViolation(format!(
            "working tree has {count} edges, {} required",
            graph.n() - 1
        )));
    }
    Ok(())
}
