//! Prediction error measures.
//!
//! * `eta1`: total absolute discrepancy over all edges.
//! * `eta2`: OPT under the pointwise-maximal weights minus OPT under the
//!   pointwise-minimal weights.
//! * `eta`: sum of the n−1 largest discrepancies; the measure the
//!   algorithms' guarantees are stated in.

use serde::Serialize;

use crate::graph::WmstInstance;
use crate::mst::opt;
use crate::weight::{format_fraction, Weight};

pub fn eta1<W: Weight>(instance: &WmstInstance<W>) -> W {
    instance
        .discrepancies()
        .into_iter()
        .fold(W::zero(), |acc, d| acc + d)
}

pub fn eta2<W: Weight>(instance: &WmstInstance<W>) -> W {
    let (hi, lo): (Vec<W>, Vec<W>) = instance
        .predicted()
        .iter()
        .zip(instance.actual())
        .map(|(p, a)| (p.max(a).clone(), p.min(a).clone()))
        .unzip();
    let graph = instance.graph();
    opt(graph, &hi) - opt(graph, &lo)
}

pub fn eta<W: Weight>(instance: &WmstInstance<W>) -> W {
    let mut d = instance.discrepancies();
    d.sort_unstable_by(|a, b| b.cmp(a));
    d.into_iter()
        .take(instance.graph().n() - 1)
        .fold(W::zero(), |acc, x| acc + x)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErrorReport<W> {
    pub eta1: W,
    pub eta2: W,
    pub eta: W,
    /// OPT(w)
    pub opt_actual: W,
    /// OPT(ŵ)
    pub opt_predicted: W,
    /// η / OPT(w)
    pub epsilon: W,
}

pub fn error_report<W: Weight>(instance: &WmstInstance<W>) -> ErrorReport<W> {
    let eta = eta(instance);
    let opt_actual = opt(instance.graph(), instance.actual());
    let opt_predicted = opt(instance.graph(), instance.predicted());
    ErrorReport {
        eta1: eta1(instance),
        eta2: eta2(instance),
        epsilon: eta.clone() / opt_actual.clone(),
        eta,
        opt_actual,
        opt_predicted,
    }
}

/// Fraction-string rendering of an [`ErrorReport`] for machine-readable output.
#[derive(Clone, Debug, Serialize)]
pub struct ErrorReportRecord {
    pub eta1: String,
    pub eta2: String,
    pub eta: String,
    pub opt_actual: String,
    pub opt_predicted: String,
    pub epsilon: String,
}

impl<W: Weight> From<&ErrorReport<W>> for ErrorReportRecord {
    fn from(r: &ErrorReport<W>) -> Self {
        ErrorReportRecord {
            eta1: format_fraction(&r.eta1),
            eta2: format_fraction(&r.eta2),
            eta: format_fraction(&r.eta),
            opt_actual: format_fraction(&r.opt_actual),
            opt_predicted: format_fraction(&r.opt_predicted),
            epsilon: format_fraction(&r.epsilon),
        }
    }
}
