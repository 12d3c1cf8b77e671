//! Instance families that make the algorithms' guarantees tight.
//!
//! Fixed-weight families ([`gen_ftp_lb`], [`gen_ro_lb`]) first ask the
//! deterministic [`mst`] which star edges the prediction tree uses and only
//! then assign true weights, so the constructions hold under this crate's
//! tie-breaking rule rather than an assumed one. The adaptive games
//! ([`gen_eta2_game`], [`gen_general_lb_game`]) fix each true weight only
//! after seeing the opponent's decision on the previous reveal.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, WmstError};
use crate::graph::{EdgeId, Graph, WmstInstance};
use crate::mst::mst;
use crate::online::{run, ArrivalOrder, OnlineAlgorithm, RunOptions, RunTrace, Session};
use crate::weight::Weight;

/// Denominator of every weight drawn by [`random_instance`].
pub const RANDOM_WEIGHT_DENOMINATOR: i64 = 1 << 16;

/// An instance together with its two interesting reveal orders.
#[derive(Clone, Debug)]
pub struct LowerBoundInstance<W> {
    pub instance: WmstInstance<W>,
    /// Edge-id order; FtP's cost does not depend on it.
    pub arbitrary_order: ArrivalOrder,
    /// Every prediction-tree edge first, which leaves GFtP no swap.
    pub defeating_order: ArrivalOrder,
}

/// The outcome of an adaptive game.
#[derive(Clone, Debug)]
pub struct AdversarialGame<W> {
    pub instance: WmstInstance<W>,
    pub order: ArrivalOrder,
    pub trace: RunTrace<W>,
}

impl<W: Weight> AdversarialGame<W> {
    /// Re-runs the realized instance non-adaptively in the recorded order.
    pub fn replay<A: OnlineAlgorithm<W>>(&self, algorithm: A, options: RunOptions) -> Result<RunTrace<W>> {
        run(algorithm, &self.instance, &self.order, options)
    }
}

/// Star edges of the two-hub families: `(hub_u edge, hub_v edge)` for star
/// `i`, i.e. ids `(2i + 1, 2i + 2)`.
pub fn star_edge_pairs(l: usize) -> Vec<(EdgeId, EdgeId)> {
    (0..l).map(|i| (2 * i + 1, 2 * i + 2)).collect()
}

/// Two hubs `u = 0`, `v = 1` joined by edge 0, and `l` leaves `z_i = i + 1`
/// each joined to both hubs. Hub edge gets `hub_weight` (exact prediction);
/// star edges are predicted `k + 1`; the prediction tree's star edges are
/// then made expensive (`2k + 1`) and the others cheap (`1`).
fn two_hub_family<W: Weight>(k: &W, hub_weight: &W, l: usize) -> Result<LowerBoundInstance<W>> {
    let mut pairs = vec![(0, 1)];
    for i in 0..l {
        pairs.push((0, i + 2));
        pairs.push((1, i + 2));
    }
    let graph = Graph::new(l + 2, &pairs)?;
    let one = W::one();
    let mut predicted = vec![k.clone() + one.clone(); graph.m()];
    predicted[0] = hub_weight.clone();
    let tree = mst(&graph, &predicted);
    let expensive = k.clone() + k.clone() + one.clone();
    let actual: Vec<W> = (0..graph.m())
        .map(|id| match id {
            0 => hub_weight.clone(),
            _ if tree.contains(id) => expensive.clone(),
            _ => one.clone(),
        })
        .collect();
    let (mut first, rest): (Vec<_>, Vec<_>) = (0..graph.m()).partition(|&id| tree.contains(id));
    first.extend(rest);
    let m = graph.m();
    Ok(LowerBoundInstance {
        instance: WmstInstance::new(graph, predicted, actual)?,
        arbitrary_order: ArrivalOrder::identity(m),
        defeating_order: ArrivalOrder::new(first, m)?,
    })
}

/// The tight instance for FtP's competitive ratio: prediction error `k` on
/// every star edge, OPT = `l + 1`, FtP = `l(2k + 1) + 1`.
pub fn gen_ftp_lb<W: Weight>(k: &W, l: usize) -> Result<LowerBoundInstance<W>> {
    if *k <= W::one() {
        return Err(WmstError::BadParameter(format!("k must exceed 1, got {k}")));
    }
    if l < 1 {
        return Err(WmstError::BadParameter("l must be at least 1".into()));
    }
    two_hub_family(k, &W::one(), l)
}

/// The random-order lower bound for GFtP: the two-hub family with the hub
/// edge weighted `delta` (predicted exactly), so GFtP never evicts it.
pub fn gen_ro_lb<W: Weight>(k: &W, delta: &W, l: usize) -> Result<WmstInstance<W>> {
    if *k <= W::one() {
        return Err(WmstError::BadParameter(format!("k must exceed 1, got {k}")));
    }
    if !delta.is_positive() || *delta >= W::one() {
        return Err(WmstError::BadParameter(format!("delta must lie in (0, 1), got {delta}")));
    }
    if l < 1 {
        return Err(WmstError::BadParameter("l must be at least 1".into()));
    }
    Ok(two_hub_family(k, delta, l)?.instance)
}

/// Triangle game showing η₂ cannot bound the competitive ratio.
///
/// All predictions are 1. Edge `(v1,v2)` is revealed first with weight `k`;
/// if the opponent accepts it the third edge gets weight 1, otherwise
/// `big_k`. Edges: 0 = (v1,v2), 1 = (v1,v3), 2 = (v2,v3), revealed in id order.
pub fn gen_eta2_game<W: Weight, A: OnlineAlgorithm<W>>(
    k: i64,
    big_k: i64,
    algorithm: A,
    options: RunOptions,
) -> Result<AdversarialGame<W>> {
    if k <= 1 {
        return Err(WmstError::BadParameter(format!("k must exceed 1, got {k}")));
    }
    if big_k <= k {
        return Err(WmstError::BadParameter(format!("K must exceed k, got K = {big_k}, k = {k}")));
    }
    let graph = Graph::new(3, &[(0, 1), (0, 2), (1, 2)])?;
    let predicted = vec![W::one(); 3];
    let mut session = Session::new(algorithm, &graph, &predicted, options)?;
    let first = session.reveal(0, W::from_int(k))?;
    let third = if first.is_accept() { 1 } else { big_k };
    session.reveal(1, W::one())?;
    session.reveal(2, W::from_int(third))?;
    let (trace, _) = session.finish()?;
    let actual = vec![W::from_int(k), W::one(), W::from_int(third)];
    Ok(AdversarialGame {
        instance: WmstInstance::new(graph.clone(), predicted, actual)?,
        order: ArrivalOrder::identity(3),
        trace,
    })
}

/// Edge id of `(z_j, v_i)` in [`gen_general_lb_game`] (1-based `i`, `j`).
pub fn general_lb_star_edge(k: usize, j: usize, i: usize) -> EdgeId {
    (2 * k - 1) + (j - 1) * 2 * k + (i - 1)
}

/// Adaptive lower bound against any deterministic algorithm.
///
/// A path `v_1 … v_2k` with exact unit weights, plus `l` stars `z_j` joined
/// to every path vertex with predictions `ŵ(z_j, v_i) = k + i − 1`. Path
/// edges are revealed first; then, star by star, `(z_j, v_1)` is fixed to
/// `2k` and each subsequent `(z_j, v_{i+1})` is set to `i` if the opponent
/// accepted `(z_j, v_i)` and to `2k + i` otherwise.
///
/// Vertex `v_i` is `i − 1`, `z_j` is `2k + j − 1`.
pub fn gen_general_lb_game<W: Weight, A: OnlineAlgorithm<W>>(
    k: usize,
    l: usize,
    algorithm: A,
    options: RunOptions,
) -> Result<AdversarialGame<W>> {
    if k <= 1 {
        return Err(WmstError::BadParameter(format!("k must exceed 1, got {k}")));
    }
    if l < 1 {
        return Err(WmstError::BadParameter("l must be at least 1".into()));
    }
    let path_len = 2 * k;
    let mut pairs: Vec<_> = (0..path_len - 1).map(|i| (i, i + 1)).collect();
    for j in 0..l {
        pairs.extend((0..path_len).map(|i| (path_len + j, i)));
    }
    let graph = Graph::new(path_len + l, &pairs)?;
    let mut predicted = vec![W::one(); graph.m()];
    for j in 1..=l {
        for i in 1..=path_len {
            predicted[general_lb_star_edge(k, j, i)] = W::from_int((k + i - 1) as i64);
        }
    }
    let mut actual = vec![W::one(); graph.m()];
    let mut order = Vec::with_capacity(graph.m());
    let mut session = Session::new(algorithm, &graph, &predicted, options)?;
    for id in 0..path_len - 1 {
        session.reveal(id, W::one())?;
        order.push(id);
    }
    let two_k = (2 * k) as i64;
    for j in 1..=l {
        actual[general_lb_star_edge(k, j, 1)] = W::from_int(two_k);
        for i in 1..path_len {
            let id = general_lb_star_edge(k, j, i);
            let decision = session.reveal(id, actual[id].clone())?;
            order.push(id);
            let next = if decision.is_accept() { i as i64 } else { two_k + i as i64 };
            actual[general_lb_star_edge(k, j, i + 1)] = W::from_int(next);
        }
        let last = general_lb_star_edge(k, j, path_len);
        session.reveal(last, actual[last].clone())?;
        order.push(last);
    }
    let (trace, _) = session.finish()?;
    let m = graph.m();
    Ok(AdversarialGame {
        instance: WmstInstance::new(graph, predicted, actual)?,
        order: ArrivalOrder::new(order, m)?,
        trace,
    })
}

/// Seeded Erdős–Rényi instance, resampled until connected.
///
/// True weights are uniform on `{1, …, 2^16} / 2^16`; each prediction is the
/// true weight plus uniform noise on the same grid within
/// `[-noise_scale, noise_scale]`, clamped to at least `1 / 2^16`.
pub fn random_instance<W: Weight>(n: usize, edge_prob: &W, noise_scale: &W, seed: u64) -> Result<WmstInstance<W>> {
    if n < 2 {
        return Err(WmstError::TooFewVertices(n));
    }
    if !edge_prob.is_positive() || *edge_prob > W::one() {
        return Err(WmstError::BadParameter(format!("edge probability must lie in (0, 1], got {edge_prob}")));
    }
    if noise_scale.is_negative() {
        return Err(WmstError::BadParameter(format!("noise scale must be non-negative, got {noise_scale}")));
    }
    let p = edge_prob.as_f64();
    let denom = RANDOM_WEIGHT_DENOMINATOR;
    let noise_units = {
        let (num, den) = (noise_scale.clone() * W::from_int(denom)).to_fraction();
        let units = num / den;
        i64::try_from(units).unwrap_or(i64::MAX / 4).min(1 << 40)
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let graph = loop {
        let pairs: Vec<_> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|_| p >= 1.0 || rng.gen_bool(p))
            .collect();
        match Graph::new(n, &pairs) {
            Ok(g) => break g,
            Err(WmstError::DisconnectedGraph) => continue,
            Err(e) => return Err(e),
        }
    };
    let mut predicted = Vec::with_capacity(graph.m());
    let mut actual = Vec::with_capacity(graph.m());
    for _ in 0..graph.m() {
        let w = rng.gen_range(1..=denom);
        let noise = if noise_units > 0 { rng.gen_range(-noise_units..=noise_units) } else { 0 };
        let p = (w + noise).max(1);
        actual.push(W::ratio(w, denom));
        predicted.push(W::ratio(p, denom));
    }
    WmstInstance::new(graph, predicted, actual)
}

/// Closed forms for the lower-bound families.
pub mod closed_form {
    use crate::weight::Weight;

    /// FtP/OPT on [`super::gen_ftp_lb`]: `1 + (2 − 2/(l+1))·ε` with `ε = k`.
    pub fn ftp_lb_ratio<W: Weight>(k: &W, l: usize) -> W {
        let l1 = W::from_int(l as i64 + 1);
        let two = W::from_int(2);
        W::one() + (two.clone() - two / l1) * k.clone()
    }

    /// OPT of the two-hub families: `l + hub weight`.
    pub fn two_hub_opt<W: Weight>(hub_weight: &W, l: usize) -> W {
        W::from_int(l as i64) + hub_weight.clone()
    }

    /// η of the two-hub families: `(l + 1)·k`.
    pub fn two_hub_eta<W: Weight>(k: &W, l: usize) -> W {
        W::from_int(l as i64 + 1) * k.clone()
    }

    /// `E_σ[GFtP]` on [`super::gen_ro_lb`]: `OPT + l·k`; each star swaps to its
    /// cheap edge in exactly half of all orders.
    pub fn ro_lb_gftp_expectation<W: Weight>(k: &W, delta: &W, l: usize) -> W {
        two_hub_opt(delta, l) + W::from_int(l as i64) * k.clone()
    }

    /// `E_σ[GFtP]/OPT` on [`super::gen_ro_lb`]: `1 + (1 − δ/(l+δ))·k`.
    pub fn ro_lb_gftp_ratio<W: Weight>(k: &W, delta: &W, l: usize) -> W {
        let opt = two_hub_opt(delta, l);
        W::one() + (W::one() - delta.clone() / opt) * k.clone()
    }

    /// ALG − OPT forced by the adaptive general lower bound: `l(2k − 1)`.
    pub fn general_lb_gap(k: usize, l: usize) -> i64 {
        (l * (2 * k - 1)) as i64
    }

    /// η of the realized general lower-bound instance: `(2k + l − 1)·k`.
    pub fn general_lb_eta(k: usize, l: usize) -> i64 {
        ((2 * k + l - 1) * k) as i64
    }
}
