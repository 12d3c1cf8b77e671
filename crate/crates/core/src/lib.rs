//! Online minimum spanning trees with weight predictions.
//!
//! The graph and a predicted weight for every edge are known in advance;
//! true weights arrive one edge at a time and each edge must be accepted or
//! rejected on the spot. This crate provides
//!
//! * exact-rational graph primitives and a deterministic Kruskal ([`graph`], [`mst`](mod@mst)),
//! * the prediction error measures η₁, η₂ and η ([`metrics`]),
//! * the execution engine with the FtP and GFtP algorithms ([`online`]),
//! * generators for the lower-bound families and adaptive adversaries ([`adversaries`]),
//! * random-order analysis by Monte Carlo and exhaustive enumeration ([`random_order`]),
//! * reusable fuzz campaigns over the algorithms' guarantees ([`campaigns`]).
//!
//! Everything is generic over the [`Weight`] scalar. [`Rational`] is the
//! arbitrary-precision default; [`Rational64`] is a fast alternative for
//! inputs with bounded denominators.

pub mod adversaries;
pub mod campaigns;
mod error;
pub mod graph;
pub mod io;
pub mod metrics;
pub mod mst;
pub mod online;
pub mod random_order;
pub mod weight;

pub use error::{Result, WmstError};
pub use graph::{exchange_witness, tree_cost, tree_cycle, Edge, EdgeId, Graph, SpanningTree, VertexId, WmstInstance};
pub use metrics::{error_report, eta, eta1, eta2, ErrorReport};
pub use mst::{brute_force_mst, mst, opt};
pub use online::{
    run, AlgorithmKind, ArrivalOrder, Decision, FollowThePredictions, GreedyFollowThePredictions,
    OnlineAlgorithm, RunOptions, RunTrace, Session,
};
pub use weight::Weight;

/// Arbitrary-precision rational; never overflows.
pub type Rational = num_rational::BigRational;
/// 64-bit rational for fuzzing and Monte Carlo over bounded-denominator inputs.
pub type Rational64 = num_rational::Ratio<i64>;
/// 128-bit rational.
pub type Rational128 = num_rational::Ratio<i128>;

pub type Instance = WmstInstance<Rational>;
pub type Instance64 = WmstInstance<Rational64>;
pub type Trace = RunTrace<Rational>;
