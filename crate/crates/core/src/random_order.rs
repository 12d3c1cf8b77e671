//! Random-order analysis.
//!
//! The random order ratio replaces the adversarial reveal order with a
//! uniformly random permutation. [`mc_estimate`] samples permutations,
//! [`exact_expectation`] enumerates all of them for small instances, and
//! [`harmonic_bound`] is the per-edge blame factor that bounds GFtP's
//! expected excess cost.
//!
//! Permutations come from ChaCha8 seeded with the user seed; trial `t` uses
//! stream `t`, so each trial's order depends only on `(seed, t)` and results
//! do not change with the number of worker threads.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Result, WmstError};
use crate::graph::WmstInstance;
use crate::metrics::{error_report, ErrorReport};
use crate::online::{run, ArrivalOrder, OnlineAlgorithm, RunOptions, RunTrace, Session};
use crate::weight::{format_fraction, Weight};
use crate::Rational;

/// Largest edge count [`exact_expectation`] enumerates (9! = 362 880 orders).
pub const EXACT_MAX_EDGES: usize = 9;

/// Upper bound used for the 1 + ln 2 curve when a rational is needed.
pub const LN2_UPPER: (i64, i64) = (6932, 10000);
/// Lower bound for ln 2, for strict "< 1 + ln 2" checks on exact values.
pub const LN2_LOWER: (i64, i64) = (693_147_180_559_945, 1_000_000_000_000_000);

/// Reference curves at a given ε.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReferenceBounds {
    /// 1 + ε: the random-order lower bound for GFtP.
    pub one_eps: f64,
    /// 1 + (1 + ln 2)·ε: the random-order upper bound for GFtP.
    pub ln2: f64,
    /// 1 + 2ε: the competitive ratio of both algorithms.
    pub two_eps: f64,
}

impl ReferenceBounds {
    pub fn at(epsilon: f64) -> Self {
        ReferenceBounds {
            one_eps: 1.0 + epsilon,
            ln2: 1.0 + (1.0 + std::f64::consts::LN_2) * epsilon,
            two_eps: 1.0 + 2.0 * epsilon,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RoEstimate<W> {
    pub algorithm: String,
    pub mean_cost: f64,
    /// Sample standard deviation / √trials; zero for exact results.
    pub std_error: f64,
    pub trials: u64,
    /// `None` for exhaustive enumeration.
    pub seed: Option<u64>,
    /// The exact mean, when every order was enumerated or every sampled
    /// cost was identical.
    pub exact_mean: Option<W>,
    pub opt: W,
    pub eta: W,
    pub epsilon: W,
    /// mean_cost / opt
    pub ratio: f64,
    pub bounds: ReferenceBounds,
}

impl<W: Weight> RoEstimate<W> {
    fn new(
        algorithm: &str,
        report: &ErrorReport<W>,
        mean_cost: f64,
        std_error: f64,
        trials: u64,
        seed: Option<u64>,
        exact_mean: Option<W>,
    ) -> Self {
        let opt = report.opt_actual.as_f64();
        RoEstimate {
            algorithm: algorithm.to_string(),
            mean_cost,
            std_error,
            trials,
            seed,
            exact_mean,
            opt: report.opt_actual.clone(),
            eta: report.eta.clone(),
            epsilon: report.epsilon.clone(),
            ratio: mean_cost / opt,
            bounds: ReferenceBounds::at(report.epsilon.as_f64()),
        }
    }

    /// Standard error of `ratio`.
    pub fn ratio_std_error(&self) -> f64 {
        self.std_error / self.opt.as_f64()
    }
}

/// Runs `trials` independent uniformly random orders.
pub fn mc_estimate<W, A, F>(
    factory: F,
    instance: &WmstInstance<W>,
    trials: u64,
    seed: u64,
    options: RunOptions,
) -> Result<RoEstimate<W>>
where
    W: Weight,
    A: OnlineAlgorithm<W>,
    F: Fn() -> A + Sync,
{
    if trials == 0 {
        return Err(WmstError::BadParameter("trials must be at least 1".into()));
    }
    let m = instance.graph().m();
    let costs: Vec<W> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let order = ArrivalOrder::random(m, &mut trial_rng(seed, trial));
            run(factory(), instance, &order, options).map(|t| t.cost)
        })
        .collect::<Result<_>>()?;
    let samples: Vec<f64> = costs.iter().map(Weight::as_f64).collect();
    let (mean, std_error) = mean_and_std_error(&samples);
    // every sample equal (e.g. an order-oblivious algorithm): the mean is exact
    let exact = costs.iter().all(|c| *c == costs[0]).then(|| costs[0].clone());
    let name = factory().name();
    Ok(RoEstimate::new(name, &error_report(instance), mean, std_error, trials, Some(seed), exact))
}

/// One statistic per sampled order, in trial order.
pub fn mc_sample<W, A, F, S>(
    factory: F,
    instance: &WmstInstance<W>,
    trials: u64,
    seed: u64,
    options: RunOptions,
    stat: S,
) -> Result<Vec<f64>>
where
    W: Weight,
    A: OnlineAlgorithm<W>,
    F: Fn() -> A + Sync,
    S: Fn(&RunTrace<W>) -> f64 + Sync,
{
    if trials == 0 {
        return Err(WmstError::BadParameter("trials must be at least 1".into()));
    }
    let m = instance.graph().m();
    (0..trials)
        .into_par_iter()
        .map(|trial| {
            let order = ArrivalOrder::random(m, &mut trial_rng(seed, trial));
            run(factory(), instance, &order, options).map(|t| stat(&t))
        })
        .collect()
}

/// The generator behind trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Sample mean and standard error of the mean.
pub fn mean_and_std_error(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mut mean = 0.0;
    let mut m2 = 0.0;
    for (i, &x) in xs.iter().enumerate() {
        let delta = x - mean;
        mean += delta / (i + 1) as f64;
        m2 += delta * (x - mean);
    }
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = m2 / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Exact `E_σ[cost]` over all m! orders.
pub fn exact_expectation<W, A, F>(factory: F, instance: &WmstInstance<W>, options: RunOptions) -> Result<W>
where
    W: Weight,
    A: OnlineAlgorithm<W> + Clone,
    F: Fn() -> A + Sync,
{
    exact_average_by(factory, instance, options, |t| t.cost.clone())
}

/// Exact average of `stat` over all m! orders.
///
/// Walks the tree of order prefixes depth-first, forking the session at
/// each branch, so a shared prefix is revealed (and checked) only once.
pub fn exact_average_by<W, A, F, S>(factory: F, instance: &WmstInstance<W>, options: RunOptions, stat: S) -> Result<W>
where
    W: Weight,
    A: OnlineAlgorithm<W> + Clone,
    F: Fn() -> A + Sync,
    S: Fn(&RunTrace<W>) -> W + Sync,
{
    let m = instance.graph().m();
    if m > EXACT_MAX_EDGES {
        return Err(WmstError::TooLarge {
            what: "edge count for exhaustive orders",
            size: m,
            limit: EXACT_MAX_EDGES,
        });
    }
    // one task per first edge
    let parts: Vec<W> = (0..m)
        .into_par_iter()
        .map(|first| {
            let mut session = Session::new(factory(), instance.graph(), instance.predicted(), options)?;
            session.reveal(first, instance.actual()[first].clone())?;
            let mut rest: Vec<usize> = (0..m).filter(|&e| e != first).collect();
            let mut total = W::zero();
            walk_orders(session, &mut rest, instance.actual(), &stat, &mut total)?;
            Ok(total)
        })
        .collect::<Result<_>>()?;
    let total = parts.into_iter().fold(W::zero(), |acc, x| acc + x);
    let count: i64 = (1..=m as i64).product();
    Ok(total / W::from_int(count.max(1)))
}

fn walk_orders<W, A, S>(
    session: Session<'_, W, A>,
    rest: &mut Vec<usize>,
    actual: &[W],
    stat: &S,
    total: &mut W,
) -> Result<()>
where
    W: Weight,
    A: OnlineAlgorithm<W> + Clone,
    S: Fn(&RunTrace<W>) -> W,
{
    if rest.is_empty() {
        let (trace, _) = session.finish()?;
        *total = total.clone() + stat(&trace);
        return Ok(());
    }
    for i in 0..rest.len() {
        let edge = rest.swap_remove(i);
        let mut fork = session.clone();
        fork.reveal(edge, actual[edge].clone())?;
        let outcome = walk_orders(fork, rest, actual, stat, total);
        // undo swap_remove so the next iteration sees the same set
        rest.push(edge);
        let last = rest.len() - 1;
        rest.swap(i, last);
        outcome?;
    }
    Ok(())
}

/// [`RoEstimate`] for an exhaustively enumerated instance.
pub fn exact_estimate<W, A, F>(factory: F, instance: &WmstInstance<W>, options: RunOptions) -> Result<RoEstimate<W>>
where
    W: Weight,
    A: OnlineAlgorithm<W> + Clone,
    F: Fn() -> A + Sync,
{
    let name = factory().name();
    let mean = exact_expectation(&factory, instance, options)?;
    let trials: u64 = (1..=instance.graph().m() as u64).product();
    Ok(RoEstimate::new(
        name,
        &error_report(instance),
        mean.as_f64(),
        0.0,
        trials,
        None,
        Some(mean),
    ))
}

/// `f(n) = 1 + Σ_{i=0}^{n−2} 1/(2n−2−i)`, the expected blame per tree edge.
pub fn harmonic_bound(n: usize) -> Result<Rational> {
    if n < 2 {
        return Err(WmstError::BadParameter(format!("harmonic bound needs n >= 2, got {n}")));
    }
    let mut seq = HarmonicBounds::new(n);
    let mut last = None;
    for (k, numer) in seq.by_ref() {
        if k == n {
            last = Some(numer);
        }
    }
    let numer = last.expect("sequence reaches n");
    Ok(Rational::new(numer, seq.common_denominator().clone()))
}

/// Iterates `(n, f(n)·L)` for `n = 2, …, max_n`, where `L = lcm(1, …, 2·max_n − 2)`
/// is a shared denominator. Comparing numerators compares the bounds exactly
/// without reducing thousands of large fractions.
pub struct HarmonicBounds {
    common: BigInt,
    sum: BigInt,
    next: usize,
    max_n: usize,
}

impl HarmonicBounds {
    pub fn new(max_n: usize) -> Self {
        let top = (2 * max_n).saturating_sub(2).max(2);
        let mut common = BigInt::one();
        for j in 1..=top as u64 {
            let rem = (&common % j).to_u64().expect("remainder below j");
            let g = rem.gcd(&j);
            common *= j / g;
        }
        // sum for n = 2 is L/2
        let sum = &common / 2u32;
        HarmonicBounds { common, sum, next: 2, max_n }
    }

    pub fn common_denominator(&self) -> &BigInt {
        &self.common
    }
}

impl Iterator for HarmonicBounds {
    type Item = (usize, BigInt);

    fn next(&mut self) -> Option<Self::Item> {
        let n = self.next;
        if n > self.max_n || n < 2 {
            return None;
        }
        let item = (n, &self.common + &self.sum);
        // Σ_{j=n}^{2n−2} 1/j  →  Σ_{j=n+1}^{2n} 1/j
        if n < self.max_n {
            self.sum -= &self.common / n as u64;
            self.sum += &self.common / (2 * n - 1) as u64;
            self.sum += &self.common / (2 * n) as u64;
        }
        self.next += 1;
        Some(item)
    }
}

/// A ratio estimate plus its reference curves and bound checks.
#[derive(Clone, Debug)]
pub struct RatioReport<W> {
    pub instance_id: String,
    pub estimate: RoEstimate<W>,
    /// Measured ratio exceeds 1 + (1 + ln 2)ε by more than 3 standard errors
    /// (only checked for GFtP).
    pub exceeds_ln2_bound: bool,
    /// Measured ratio exceeds 1 + 2ε by more than 3 standard errors.
    pub exceeds_two_eps_bound: bool,
}

pub fn ratio_report<W: Weight>(instance_id: &str, estimate: RoEstimate<W>) -> RatioReport<W> {
    let slack = 3.0 * estimate.ratio_std_error();
    // relative tolerance for the f64 rendering of exact values
    let tol = 1e-12 * estimate.bounds.two_eps.abs().max(1.0);
    let exceeds_ln2_bound =
        estimate.algorithm == "gftp" && estimate.ratio > estimate.bounds.ln2 + slack + tol;
    let exceeds_two_eps_bound = estimate.ratio > estimate.bounds.two_eps + slack + tol;
    RatioReport {
        instance_id: instance_id.to_string(),
        estimate,
        exceeds_ln2_bound,
        exceeds_two_eps_bound,
    }
}

pub const CSV_HEADER: &str =
    "instance_id,algorithm,trials,seed,mean,stderr,opt,eta,epsilon,ratio,bound_1e,bound_ln2,bound_2e";

impl<W: Weight> RatioReport<W> {
    pub fn flagged(&self) -> bool {
        self.exceeds_ln2_bound || self.exceeds_two_eps_bound
    }

    /// One CSV row matching [`CSV_HEADER`]. Exact quantities are written as
    /// fractions; the mean is a fraction when every order was enumerated.
    pub fn to_csv_row(&self) -> String {
        let e = &self.estimate;
        let mut row = String::new();
        let mean = match &e.exact_mean {
            Some(m) => format_fraction(m),
            None => format_decimal(e.mean_cost),
        };
        let seed = e.seed.map(|s| s.to_string()).unwrap_or_else(|| "exact".into());
        let _ = write!(
            row,
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            csv_field(&self.instance_id),
            e.algorithm,
            e.trials,
            seed,
            mean,
            format_decimal(e.std_error),
            format_fraction(&e.opt),
            format_fraction(&e.eta),
            format_fraction(&e.epsilon),
            format_decimal(e.ratio),
            format_decimal(e.bounds.one_eps),
            format_decimal(e.bounds.ln2),
            format_decimal(e.bounds.two_eps),
        );
        row
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Renders with 12 significant digits, trailing zeros trimmed.
pub fn format_decimal(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() { "0".into() } else { x.to_string() };
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Whether `value < 1 + ln 2`, decided exactly via a rational lower bound on ln 2.
pub fn below_one_plus_ln2(value: &Rational) -> bool {
    let bound = Rational::new(
        BigInt::from(LN2_LOWER.0 + LN2_LOWER.1),
        BigInt::from(LN2_LOWER.1),
    );
    *value < bound
}
