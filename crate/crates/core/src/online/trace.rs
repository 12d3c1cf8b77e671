use std::fmt::Write as _;

use crate::error::{Result, WmstError};
use crate::graph::EdgeId;
use crate::online::Decision;
use crate::weight::{format_fraction, parse_weight, Weight};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step<W> {
    pub edge: EdgeId,
    /// The revealed true weight.
    pub weight: W,
    pub decision: Decision,
}

/// Record of one complete execution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunTrace<W> {
    pub algorithm: String,
    pub steps: Vec<Step<W>>,
    /// Accepted edge ids, ascending.
    pub accepted: Vec<EdgeId>,
    /// Σ w(e) over accepted edges.
    pub cost: W,
}

impl<W: Weight> RunTrace<W> {
    pub fn swaps(&self) -> impl Iterator<Item = (EdgeId, EdgeId)> + '_ {
        self.steps
            .iter()
            .filter_map(|s| s.decision.swapped_out().map(|out| (s.edge, out)))
    }

    pub fn swap_count(&self) -> usize {
        self.swaps().count()
    }

    pub fn decision_for(&self, edge: EdgeId) -> Option<Decision> {
        self.steps.iter().find(|s| s.edge == edge).map(|s| s.decision)
    }

    /// Line-oriented record: `<edge> <weight> ACCEPT|REJECT [SWAP=<id>]`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            let _ = write!(out, "{} {} ", s.edge, format_fraction(&s.weight));
            match s.decision {
                Decision::Accept => out.push_str("ACCEPT"),
                Decision::Reject => out.push_str("REJECT"),
                Decision::Swap { evicted } => {
                    let _ = write!(out, "ACCEPT SWAP={evicted}");
                }
            }
            out.push('\n');
        }
        out
    }

    /// Parses the steps of a [`RunTrace::to_text`] record. Blank lines and
    /// lines starting with `#` are skipped.
    pub fn parse_steps(text: &str) -> Result<Vec<Step<W>>> {
        let mut steps = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |detail: &str| WmstError::TraceParse {
                line: i + 1,
                detail: detail.to_string(),
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            let (edge, weight, verdict) = match fields.as_slice() {
                [e, w, v] | [e, w, v, _] => (*e, *w, *v),
                _ => return Err(err("expected 3 or 4 fields")),
            };
            let edge: EdgeId = edge.parse().map_err(|_| err("bad edge id"))?;
            let weight: W = parse_weight(weight).map_err(|_| err("bad weight"))?;
            let decision = match (verdict, fields.get(3)) {
                ("REJECT", None) => Decision::Reject,
                ("ACCEPT", None) => Decision::Accept,
                ("ACCEPT", Some(swap)) => {
                    let evicted = swap
                        .strip_prefix("SWAP=")
                        .and_then(|id| id.parse().ok())
                        .ok_or_else(|| err("bad SWAP field"))?;
                    Decision::Swap { evicted }
                }
                _ => return Err(err("bad decision")),
            };
            steps.push(Step { edge, weight, decision });
        }
        Ok(steps)
    }
}
