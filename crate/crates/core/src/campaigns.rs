//! Seeded fuzz campaigns over the algorithms' guarantees.
//!
//! Each campaign draws its cases from ChaCha8 seeded with the given seed and
//! returns a [`CampaignReport`] counting cases and violations. Comparisons are
//! exact; instances use [`Rational64`] weights on a bounded-denominator grid.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::adversaries::random_instance;
use crate::graph::{exchange_witness, tree_cycle, Graph, SpanningTree, WmstInstance};
use crate::metrics::eta;
use crate::mst::{brute_force_mst, mst, opt, spanning_trees};
use crate::online::{run, AlgorithmKind, ArrivalOrder, FollowThePredictions, GreedyFollowThePredictions, RunOptions};
use crate::random_order::{exact_expectation, HarmonicBounds, EXACT_MAX_EDGES};
use crate::{Rational, Rational64, Weight, WmstError};

#[derive(Clone, Debug, Default)]
pub struct CampaignReport {
    pub name: &'static str,
    pub cases: u64,
    /// Failed bound or oracle checks.
    pub violations: u64,
    /// Runtime dominance-check failures raised in checked mode.
    pub lemma_violations: u64,
    pub first_failure: Option<String>,
}

impl CampaignReport {
    fn new(name: &'static str) -> Self {
        CampaignReport { name, ..Default::default() }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        if !ok {
            self.violations += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(detail());
            }
        }
    }

    fn error(&mut self, err: WmstError, context: impl FnOnce() -> String) {
        if matches!(err, WmstError::LemmaViolation(_)) {
            self.lemma_violations += 1;
        } else {
            self.violations += 1;
        }
        if self.first_failure.is_none() {
            self.first_failure = Some(format!("{}: {err}", context()));
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0 && self.lemma_violations == 0
    }
}

impl fmt::Display for CampaignReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} cases, {} violations, {} lemma violations",
            self.name, self.cases, self.violations, self.lemma_violations
        )?;
        if let Some(first) = &self.first_failure {
            write!(f, " (first: {first})")?;
        }
        Ok(())
    }
}

/// A random connected instance with `n` in `min_n..=max_n` and at most
/// `max_edges` edges. Half the draws use small integer weights so ties are
/// common; the rest use the fine grid of [`random_instance`] with noise.
pub fn fuzz_instance(rng: &mut ChaCha8Rng, min_n: usize, max_n: usize, max_edges: usize) -> WmstInstance<Rational64> {
    loop {
        let n = rng.gen_range(min_n..=max_n);
        let p = Rational64::new(rng.gen_range(30..=100), 100);
        let inst = if rng.gen_bool(0.5) {
            let noise = *[0, 1, 8, 64].choose(rng).unwrap();
            random_instance(n, &p, &Rational64::new(noise, 64), rng.gen()).expect("valid parameters")
        } else {
            integer_instance(rng, n, p.as_f64())
        };
        if inst.graph().m() <= max_edges {
            return inst;
        }
    }
}

fn integer_instance(rng: &mut ChaCha8Rng, n: usize, p: f64) -> WmstInstance<Rational64> {
    let graph = random_graph(rng, n, p);
    let max = rng.gen_range(1..=6);
    let correlated = rng.gen_bool(0.5);
    let mut predicted = Vec::with_capacity(graph.m());
    let mut actual = Vec::with_capacity(graph.m());
    for _ in 0..graph.m() {
        let w = rng.gen_range(1..=max);
        let p = if correlated && rng.gen_bool(0.7) { w } else { rng.gen_range(1..=max) };
        actual.push(Rational64::from_int(w));
        predicted.push(Rational64::from_int(p));
    }
    WmstInstance::new(graph, predicted, actual).expect("positive weights")
}

/// Connected G(n, p), resampled until connected.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    loop {
        let pairs: Vec<_> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .collect::<Vec<_>>()
            .into_iter()
            .filter(|_| rng.gen_bool(p))
            .collect();
        if let Ok(g) = Graph::new(n, &pairs) {
            return g;
        }
    }
}

/// mst() cost equals the enumeration oracle's on random graphs with n ≤ 7.
pub fn mst_oracle(graphs: u64, seed: u64) -> CampaignReport {
    let mut report = CampaignReport::new("mst-vs-brute-force");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..graphs {
        let inst = fuzz_instance(&mut rng, 2, 7, 24);
        let (g, w) = (inst.graph(), inst.actual());
        let tree = mst(g, w);
        let again = mst(g, w);
        report.cases += 1;
        match brute_force_mst(g, w) {
            Ok((best, _)) => {
                let cost = tree.cost(w);
                report.check(cost == best && tree == again, || {
                    format!("case {case}: mst cost {cost}, brute force {best}")
                });
            }
            Err(e) => report.error(e, || format!("case {case}")),
        }
    }
    report
}

/// For every pair of spanning trees and every `e1 ∈ t1 \ t2`, the exchange
/// witness `e2` lies in `t2 \ t1`, on e1's cycle in t2, with e1 on e2's
/// cycle in t1, and both swaps give spanning trees.
pub fn exchange_witnesses(graphs: u64, seed: u64) -> CampaignReport {
    let mut report = CampaignReport::new("exchange-witness");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..graphs {
        let n = rng.gen_range(3..=5);
        let p = rng.gen_range(0.4..=1.0);
        let g = random_graph(&mut rng, n, p);
        let trees = match spanning_trees(&g) {
            Ok(t) => t,
            Err(e) => {
                report.error(e, || format!("graph {case}"));
                continue;
            }
        };
        for t1 in &trees {
            for t2 in &trees {
                for e1 in t1.edge_ids() {
                    if t2.contains(e1) {
                        continue;
                    }
                    report.cases += 1;
                    match exchange_witness(&g, t1, t2, e1) {
                        Ok(e2) => {
                            let ok = witness_holds(&g, t1, t2, e1, e2);
                            report.check(ok, || format!("graph {case}: e1 {e1}, witness {e2}"));
                        }
                        Err(e) => report.error(e, || format!("graph {case}: e1 {e1}")),
                    }
                }
            }
        }
    }
    report
}

fn witness_holds(g: &Graph, t1: &SpanningTree, t2: &SpanningTree, e1: usize, e2: usize) -> bool {
    if !t2.contains(e2) || t1.contains(e2) {
        return false;
    }
    let on_t2_cycle = tree_cycle(t2, g.edge(e1)).is_ok_and(|c| c.contains(&e2));
    let on_t1_cycle = tree_cycle(t1, g.edge(e2)).is_ok_and(|c| c.contains(&e1));
    let swapped = |t: &SpanningTree, out: usize, inn: usize| {
        let mut ids: Vec<_> = t.edge_ids().into_iter().filter(|&x| x != out).collect();
        ids.push(inn);
        SpanningTree::new(g, &ids).is_ok()
    };
    on_t2_cycle && on_t1_cycle && swapped(t1, e1, e2) && swapped(t2, e2, e1)
}

/// On random (instance, order) pairs: FtP and GFtP cost ≤ OPT + 2η, and
/// GFtP cost ≤ ĉ(T_FtP) + η. In checked mode every run also asserts the
/// dominance invariants; their failures count as lemma violations.
pub fn competitive_bounds(pairs: u64, seed: u64, checked: bool) -> CampaignReport {
    let mut report = CampaignReport::new("competitive-bounds");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let options = RunOptions { checked };
    for case in 0..pairs {
        let inst = fuzz_instance(&mut rng, 2, 8, 28);
        let order = ArrivalOrder::random(inst.graph().m(), &mut rng);
        let (opt_w, eta) = (opt(inst.graph(), inst.actual()), eta(&inst));
        let ftp_predicted = opt(inst.graph(), inst.predicted());
        let two_eta = opt_w + eta + eta;
        report.cases += 1;
        for kind in AlgorithmKind::ALL {
            match run(kind.build::<Rational64>(), &inst, &order, options) {
                Ok(trace) => {
                    report.check(trace.cost <= two_eta, || {
                        format!("case {case}: {kind} cost {} > OPT + 2η = {two_eta}", trace.cost)
                    });
                    if kind == AlgorithmKind::Gftp {
                        let lemma = ftp_predicted + eta;
                        report.check(trace.cost <= lemma, || {
                            format!("case {case}: gftp cost {} > ĉ(T_FtP) + η = {lemma}", trace.cost)
                        });
                    }
                    if eta.is_zero() {
                        report.check(trace.cost == opt_w, || {
                            format!("case {case}: {kind} not consistent: {} vs {opt_w}", trace.cost)
                        });
                    }
                }
                Err(e) => report.error(e, || format!("case {case}: {kind}")),
            }
        }
    }
    report
}

/// Chains of random prediction corrections (ŵ(e) := w(e) on a random
/// subset) never increase η.
pub fn eta_monotonicity(steps: u64, seed: u64) -> CampaignReport {
    let mut report = CampaignReport::new("eta-monotonicity");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while report.cases < steps {
        let mut inst = fuzz_instance(&mut rng, 2, 8, 28);
        let mut current = eta(&inst);
        let chain = rng.gen_range(1..=inst.graph().m());
        for _ in 0..chain {
            if report.cases == steps {
                break;
            }
            report.cases += 1;
            let p = rng.gen_range(0.05..0.6);
            let subset: Vec<_> = (0..inst.graph().m()).filter(|_| rng.gen_bool(p)).collect();
            let corrected = inst.with_corrected(&subset);
            let next = eta(&corrected);
            let step = report.cases;
            report.check(next <= current, || format!("step {step}: η rose from {current} to {next}"));
            inst = corrected;
            current = next;
        }
    }
    report
}

/// |OPT(ŵ) − OPT(w)| ≤ η, with both optima from the enumeration oracle.
pub fn eta_lipschitz(instances: u64, seed: u64) -> CampaignReport {
    let mut report = CampaignReport::new("eta-lipschitz");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..instances {
        let inst = fuzz_instance(&mut rng, 2, 6, 15);
        let g = inst.graph();
        report.cases += 1;
        let (opt_p, opt_a) = match (brute_force_mst(g, inst.predicted()), brute_force_mst(g, inst.actual())) {
            (Ok(p), Ok(a)) => (p.0, a.0),
            (Err(e), _) | (_, Err(e)) => {
                report.error(e, || format!("case {case}"));
                continue;
            }
        };
        let eta = eta(&inst);
        let gap = (opt_p - opt_a).abs();
        report.check(gap <= eta, || format!("case {case}: |OPT(ŵ) − OPT(w)| = {gap} > η = {eta}"));
    }
    report
}

/// Exhaustive random-order expectation of GFtP stays within
/// OPT + (1 + 0.6932)·η on instances with m ≤ 9.
pub fn random_order_bound(instances: u64, seed: u64, checked: bool) -> CampaignReport {
    let mut report = CampaignReport::new("random-order-bound");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let factor = Rational64::new(16932, 10000);
    let options = RunOptions { checked };
    for case in 0..instances {
        let inst = fuzz_instance(&mut rng, 2, 5, EXACT_MAX_EDGES);
        report.cases += 1;
        let bound = opt(inst.graph(), inst.actual()) + factor * eta(&inst);
        match exact_expectation(GreedyFollowThePredictions::new, &inst, options) {
            Ok(mean) => report.check(mean <= bound, || {
                format!("case {case}: E[gftp] = {mean} > {bound}")
            }),
            Err(e) => report.error(e, || format!("case {case}")),
        }
    }
    report
}

/// FtP's random-order expectation equals its fixed cost.
pub fn ftp_order_invariance(instances: u64, seed: u64) -> CampaignReport {
    let mut report = CampaignReport::new("ftp-order-invariance");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..instances {
        let inst = fuzz_instance(&mut rng, 2, 4, 7);
        report.cases += 1;
        let fixed = mst(inst.graph(), inst.predicted()).cost(inst.actual());
        match exact_expectation(FollowThePredictions::new, &inst, RunOptions::default()) {
            Ok(mean) => report.check(mean == fixed, || format!("case {case}: {mean} vs {fixed}")),
            Err(e) => report.error(e, || format!("case {case}")),
        }
    }
    report
}

/// The blame factor f(n) is strictly increasing on `2..=max_n` and stays
/// below 1 + ln 2 (checked against a rational lower bound on ln 2).
pub fn harmonic(max_n: usize) -> CampaignReport {
    let mut report = CampaignReport::new("harmonic-bound");
    let seq = HarmonicBounds::new(max_n);
    let common = seq.common_denominator().clone();
    let (ln2_num, ln2_den) = crate::random_order::LN2_LOWER;
    // f < 1 + a/b  ⇔  numer·b < (a + b)·L
    let limit = BigInt::from(ln2_num + ln2_den) * &common;
    let den = BigInt::from(ln2_den);
    let mut prev: Option<BigInt> = None;
    for (n, numer) in seq {
        report.cases += 1;
        if let Some(p) = &prev {
            report.check(numer > *p, || format!("f({n}) ≤ f({})", n - 1));
        }
        report.check(&numer * &den < limit, || format!("f({n}) ≥ 1 + ln 2"));
        prev = Some(numer);
    }
    report
}

/// Whether `f(n) > value` exactly.
pub fn harmonic_exceeds(n: usize, value: &Rational) -> crate::Result<bool> {
    Ok(crate::random_order::harmonic_bound(n)? > *value)
}

/// Every campaign at the given scale, as run by the CLI self-test.
pub fn full_suite(scale: u64, seed: u64, checked: bool) -> Vec<CampaignReport> {
    vec![
        mst_oracle(scale / 10, seed),
        exchange_witnesses((scale / 100).max(1), seed),
        competitive_bounds(scale, seed, checked),
        eta_monotonicity(scale, seed),
        eta_lipschitz(scale / 2, seed),
        random_order_bound((scale / 20).max(1), seed, checked),
        ftp_order_invariance((scale / 100).max(1), seed),
        harmonic(scale as usize),
    ]
}
