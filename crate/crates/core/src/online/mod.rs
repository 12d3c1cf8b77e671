//! The weight-arrival execution model.
//!
//! The graph and the predicted weights are known up front. True weights are
//! then revealed one edge at a time, and the algorithm must irrevocably
//! accept or reject each edge as it arrives. [`Session`] drives a single
//! execution and owns all validation; algorithms only make decisions.

mod checks;
mod ftp;
mod gftp;
mod trace;

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

pub use ftp::FollowThePredictions;
pub use gftp::GreedyFollowThePredictions;
pub use trace::{Step, RunTrace};

use crate::error::{Result, WmstError};
use crate::graph::{EdgeId, Graph, SpanningTree, WmstInstance};
use crate::mst::UnionFind;
use crate::weight::Weight;
use checks::LemmaChecker;

/// Response to a single reveal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Decision {
    Accept,
    /// Accept after evicting `evicted` from the working tree.
    Swap { evicted: EdgeId },
    Reject,
}

impl Decision {
    pub fn is_accept(&self) -> bool {
        !matches!(self, Decision::Reject)
    }

    pub fn swapped_out(&self) -> Option<EdgeId> {
        match self {
            Decision::Swap { evicted } => Some(*evicted),
            _ => None,
        }
    }
}

/// A deterministic online algorithm for the weight-arrival model.
///
/// Decisions are irrevocable. Implementations may keep any state derived
/// from the predictions and from previously revealed true weights.
pub trait OnlineAlgorithm<W: Weight> {
    fn name(&self) -> &'static str;

    fn initialize(&mut self, graph: &Graph, predicted: &[W]);

    fn reveal(&mut self, edge: EdgeId, weight: &W) -> Decision;

    /// The tree the algorithm is currently committed to, if it keeps one.
    /// Exposing it enables the unseen-edge dominance check in checked mode.
    fn working_tree(&self) -> Option<&SpanningTree> {
        None
    }

    /// Whether every rejection leaves only cheaper-predicted unseen edges on
    /// the rejected edge's cycle. Enables the post-rejection check.
    fn rejects_only_dominated(&self) -> bool {
        false
    }
}

impl<W: Weight, A: OnlineAlgorithm<W> + ?Sized> OnlineAlgorithm<W> for Box<A> {
    fn name(&self) -> &'static str {
        (**self).name()
    }

    fn initialize(&mut self, graph: &Graph, predicted: &[W]) {
        (**self).initialize(graph, predicted)
    }

    fn reveal(&mut self, edge: EdgeId, weight: &W) -> Decision {
        (**self).reveal(edge, weight)
    }

    fn working_tree(&self) -> Option<&SpanningTree> {
        (**self).working_tree()
    }

    fn rejects_only_dominated(&self) -> bool {
        (**self).rejects_only_dominated()
    }
}

/// The algorithms shipped with this crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlgorithmKind {
    Ftp,
    Gftp,
}

impl AlgorithmKind {
    pub const ALL: [AlgorithmKind; 2] = [AlgorithmKind::Ftp, AlgorithmKind::Gftp];

    pub fn name(self) -> &'static str {
        match self {
            AlgorithmKind::Ftp => "ftp",
            AlgorithmKind::Gftp => "gftp",
        }
    }

    pub fn build<W: Weight>(self) -> Box<dyn OnlineAlgorithm<W> + Send> {
        match self {
            AlgorithmKind::Ftp => Box::new(FollowThePredictions::new()),
            AlgorithmKind::Gftp => Box::new(GreedyFollowThePredictions::new()),
        }
    }
}

impl fmt::Display for AlgorithmKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgorithmKind {
    type Err = WmstError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ftp" => Ok(AlgorithmKind::Ftp),
            "gftp" => Ok(AlgorithmKind::Gftp),
            other => Err(WmstError::BadParameter(format!(
                "unknown algorithm {other:?} (expected ftp or gftp)"
            ))),
        }
    }
}

/// A permutation of all edge ids: the reveal sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ArrivalOrder(Vec<EdgeId>);

impl ArrivalOrder {
    pub fn new(ids: Vec<EdgeId>, m: usize) -> Result<Self> {
        if ids.len() != m {
            return Err(WmstError::BadOrder(format!("{} ids for {m} edges", ids.len())));
        }
        let mut seen = vec![false; m];
        for &id in &ids {
            if id >= m {
                return Err(WmstError::BadOrder(format!("edge {id} out of range")));
            }
            if std::mem::replace(&mut seen[id], true) {
                return Err(WmstError::BadOrder(format!("edge {id} repeated")));
            }
        }
        Ok(ArrivalOrder(ids))
    }

    pub fn identity(m: usize) -> Self {
        ArrivalOrder((0..m).collect())
    }

    /// A uniformly random permutation (Fisher–Yates).
    pub fn random<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Self {
        let mut ids: Vec<EdgeId> = (0..m).collect();
        ids.shuffle(rng);
        ArrivalOrder(ids)
    }

    pub fn as_slice(&self) -> &[EdgeId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Whitespace-separated edge ids.
    pub fn parse(text: &str, m: usize) -> Result<Self> {
        let ids = text
            .split_whitespace()
            .map(|t| {
                t.parse::<EdgeId>()
                    .map_err(|_| WmstError::BadOrder(format!("not an edge id: {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        ArrivalOrder::new(ids, m)
    }

    /// One edge id per line.
    pub fn to_text(&self) -> String {
        self.0.iter().map(|id| format!("{id}\n")).collect()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// Assert the structural lemmas after every reveal.
    pub checked: bool,
}

impl RunOptions {
    pub fn checked() -> Self {
        RunOptions { checked: true }
    }
}

/// One execution in progress. Reveals may come from a fixed order ([`run`])
/// or from an adaptive adversary choosing weights as it goes. Cloning a
/// session forks the run, algorithm state included.
#[derive(Clone)]
pub struct Session<'g, W: Weight, A: OnlineAlgorithm<W>> {
    graph: &'g Graph,
    predicted: &'g [W],
    algorithm: A,
    seen: Vec<bool>,
    accepted: UnionFind,
    accepted_count: usize,
    steps: Vec<Step<W>>,
    checker: Option<LemmaChecker<W>>,
}

impl<'g, W: Weight, A: OnlineAlgorithm<W>> Session<'g, W, A> {
    pub fn new(mut algorithm: A, graph: &'g Graph, predicted: &'g [W], options: RunOptions) -> Result<Self> {
        algorithm.initialize(graph, predicted);
        let checker = if options.checked {
            let mut checker = LemmaChecker::new(graph, algorithm.working_tree());
            checker.after_step(graph, predicted, &algorithm, &vec![false; graph.m()])?;
            Some(checker)
        } else {
            None
        };
        Ok(Session {
            graph,
            predicted,
            algorithm,
            seen: vec![false; graph.m()],
            accepted: UnionFind::new(graph.n()),
            accepted_count: 0,
            steps: Vec::with_capacity(graph.m()),
            checker,
        })
    }

    pub fn algorithm(&self) -> &A {
        &self.algorithm
    }

    pub fn steps(&self) -> &[Step<W>] {
        &self.steps
    }

    /// Reveals the true weight of `edge` and records the algorithm's decision.
    pub fn reveal(&mut self, edge: EdgeId, weight: W) -> Result<Decision> {
        if edge >= self.graph.m() {
            return Err(WmstError::BadOrder(format!("edge {edge} out of range")));
        }
        if self.seen[edge] {
            return Err(WmstError::BadOrder(format!("edge {edge} revealed twice")));
        }
        if !weight.is_positive() {
            return Err(WmstError::NonpositiveWeight { edge, which: "actual" });
        }
        let decision = self.algorithm.reveal(edge, &weight);
        self.seen[edge] = true;
        if decision.is_accept() {
            let e = self.graph.edge(edge);
            if !self.accepted.union(e.u, e.v) {
                return Err(self.not_spanning(format!("accepting edge {edge} closes a cycle")));
            }
            self.accepted_count += 1;
        }
        if let Some(checker) = self.checker.as_mut() {
            checker.record(edge, &weight, decision, &self.seen)?;
            checker.after_step(self.graph, self.predicted, &self.algorithm, &self.seen)?;
        }
        self.steps.push(Step { edge, weight, decision });
        Ok(decision)
    }

    /// Ends the run once every edge has been revealed.
    pub fn finish(self) -> Result<(RunTrace<W>, A)> {
        if self.steps.len() != self.graph.m() {
            return Err(WmstError::BadOrder(format!(
                "{} of {} edges revealed",
                self.steps.len(),
                self.graph.m()
            )));
        }
        if self.accepted_count != self.graph.n() - 1 {
            return Err(self.not_spanning(format!(
                "{} edges accepted, {} required",
                self.accepted_count,
                self.graph.n() - 1
            )));
        }
        let mut accepted: Vec<EdgeId> = self
            .steps
            .iter()
            .filter(|s| s.decision.is_accept())
            .map(|s| s.edge)
            .collect();
        accepted.sort_unstable();
        if self.checker.is_some() {
            if let Some(tree) = self.algorithm.working_tree() {
                if tree.edge_ids() != accepted {
                    return Err(WmstError::LemmaViolation(format!(
                        "final working tree {:?} differs from accepted set {accepted:?}",
                        tree.edge_ids()
                    )));
                }
            }
        }
        let cost = self
            .steps
            .iter()
            .filter(|s| s.decision.is_accept())
            .fold(W::zero(), |acc, s| acc + s.weight.clone());
        let trace = RunTrace {
            algorithm: self.algorithm.name().to_string(),
            steps: self.steps,
            accepted,
            cost,
        };
        Ok((trace, self.algorithm))
    }

    fn not_spanning(&self, detail: String) -> WmstError {
        WmstError::NotSpanning {
            algorithm: self.algorithm.name().to_string(),
            detail,
        }
    }
}

/// Replays `instance` in `order` against `algorithm`.
pub fn run<W: Weight, A: OnlineAlgorithm<W>>(
    algorithm: A,
    instance: &WmstInstance<W>,
    order: &ArrivalOrder,
    options: RunOptions,
) -> Result<RunTrace<W>> {
    if order.len() != instance.graph().m() {
        return Err(WmstError::BadOrder(format!(
            "order has {} ids for {} edges",
            order.len(),
            instance.graph().m()
        )));
    }
    let mut session = Session::new(algorithm, instance.graph(), instance.predicted(), options)?;
    for &edge in order.as_slice() {
        session.reveal(edge, instance.actual()[edge].clone())?;
    }
    Ok(session.finish()?.0)
}

#[cfg(test)]
mod tests;
