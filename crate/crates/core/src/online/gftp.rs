use std::sync::Arc;

use crate::graph::{EdgeId, Graph, SpanningTree};
use crate::mst::mst;
use crate::online::{Decision, OnlineAlgorithm};
use crate::weight::Weight;

/// Greedy Follow-the-Predictions.
///
/// Starts from the MST under the predicted weights. When a non-tree edge is
/// revealed, it looks at the still-unseen edges on the cycle it closes and
/// swaps out the one with the largest prediction (smallest id on ties) if the
/// revealed weight does not exceed that prediction.
#[derive(Clone, Debug, Default)]
pub struct GreedyFollowThePredictions<W> {
    state: Option<State<W>>,
}

#[derive(Clone, Debug)]
struct State<W> {
    graph: Arc<Graph>,
    predicted: Arc<[W]>,
    tree: SpanningTree,
    unseen: Vec<bool>,
}

impl<W: Weight> GreedyFollowThePredictions<W> {
    pub fn new() -> Self {
        GreedyFollowThePredictions { state: None }
    }
}

impl<W: Weight> OnlineAlgorithm<W> for GreedyFollowThePredictions<W> {
    fn name(&self) -> &'static str {
        "gftp"
    }

    fn initialize(&mut self, graph: &Graph, predicted: &[W]) {
        self.state = Some(State {
            graph: Arc::new(graph.clone()),
            predicted: predicted.into(),
            tree: mst(graph, predicted),
            unseen: vec![true; graph.m()],
        });
    }

    fn reveal(&mut self, edge: EdgeId, weight: &W) -> Decision {
        let s = self.state.as_mut().expect("initialize before reveal");
        s.unseen[edge] = false;
        if s.tree.contains(edge) {
            return Decision::Accept;
        }
        let e = *s.graph.edge(edge);
        let mut heaviest: Option<EdgeId> = None;
        for candidate in s.tree.path(e.u, e.v) {
            if !s.unseen[candidate] {
                continue;
            }
            heaviest = match heaviest {
                Some(h)
                    if s.predicted[h] > s.predicted[candidate]
                        || (s.predicted[h] == s.predicted[candidate] && h < candidate) =>
                {
                    Some(h)
                }
                _ => Some(candidate),
            };
        }
        match heaviest {
            Some(h) if *weight <= s.predicted[h] => {
                let out = *s.graph.edge(h);
                s.tree.swap(&out, &e);
                Decision::Swap { evicted: h }
            }
            _ => Decision::Reject,
        }
    }

    fn working_tree(&self) -> Option<&SpanningTree> {
        self.state.as_ref().map(|s| &s.tree)
    }

    fn rejects_only_dominated(&self) -> bool {
        true
    }
}
