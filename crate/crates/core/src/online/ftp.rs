use crate::graph::{EdgeId, Graph, SpanningTree};
use crate::mst::mst;
use crate::online::{Decision, OnlineAlgorithm};
use crate::weight::Weight;

/// Follow-the-Predictions: commit to the MST under the predicted weights and
/// accept exactly its edges.
#[derive(Clone, Debug, Default)]
pub struct FollowThePredictions {
    tree: Option<SpanningTree>,
}

impl FollowThePredictions {
    pub fn new() -> Self {
        Self::default()
    }
}

impl<W: Weight> OnlineAlgorithm<W> for FollowThePredictions {
    fn name(&self) -> &'static str {
        "ftp"
    }

    fn initialize(&mut self, graph: &Graph, predicted: &[W]) {
        self.tree = Some(mst(graph, predicted));
    }

    fn reveal(&mut self, edge: EdgeId, _weight: &W) -> Decision {
        let tree = self.tree.as_ref().expect("initialize before reveal");
        if tree.contains(edge) {
            Decision::Accept
        } else {
            Decision::Reject
        }
    }

    fn working_tree(&self) -> Option<&SpanningTree> {
        self.tree.as_ref()
    }
}
