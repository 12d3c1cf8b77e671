use super::*;
use crate::graph::Graph;
use crate::{Rational64, Weight};

fn ints(xs: &[i64]) -> Vec<Rational64> {
    xs.iter().map(|&x| Rational64::from_int(x)).collect()
}

/// u1u2 = e0 (2→1), u2u3 = e1 (3→1), u1u3 = e2 (2→2)
fn section_triangle() -> WmstInstance<Rational64> {
    let g = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
    WmstInstance::new(g, ints(&[2, 3, 2]), ints(&[1, 1, 2])).unwrap()
}

fn all_orders(m: usize) -> Vec<ArrivalOrder> {
    fn rec(prefix: &mut Vec<usize>, left: &mut Vec<usize>, out: &mut Vec<ArrivalOrder>) {
        if left.is_empty() {
            out.push(ArrivalOrder(prefix.clone()));
        }
        for i in 0..left.len() {
            let x = left.remove(i);
            prefix.push(x);
            rec(prefix, left, out);
            prefix.pop();
            left.insert(i, x);
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut (0..m).collect(), &mut out);
    out
}

#[test]
fn ftp_on_triangle_is_order_invariant() {
    let inst = section_triangle();
    for order in all_orders(3) {
        let t = run(FollowThePredictions::new(), &inst, &order, RunOptions::checked()).unwrap();
        assert_eq!(t.accepted, vec![0, 2]);
        assert_eq!(t.cost, Rational64::from_int(3));
        assert_eq!(t.swap_count(), 0);
    }
}

#[test]
fn gftp_swaps_on_triangle() {
    let inst = section_triangle();
    let order = ArrivalOrder::new(vec![1, 2, 0], 3).unwrap();
    let t = run(GreedyFollowThePredictions::new(), &inst, &order, RunOptions::checked()).unwrap();
    assert_eq!(t.steps[0].decision, Decision::Swap { evicted: 0 });
    assert_eq!(t.accepted, vec![1, 2]);
    assert_eq!(t.cost, Rational64::from_int(3));
    assert_eq!(t.to_text(), "1 1/1 ACCEPT SWAP=0\n2 2/1 ACCEPT\n0 1/1 REJECT\n");
}

#[test]
fn trace_text_parses_back() {
    let inst = section_triangle();
    let order = ArrivalOrder::new(vec![1, 2, 0], 3).unwrap();
    let t = run(GreedyFollowThePredictions::new(), &inst, &order, RunOptions::default()).unwrap();
    let steps = RunTrace::<Rational64>::parse_steps(&t.to_text()).unwrap();
    assert_eq!(steps, t.steps);
    assert!(RunTrace::<Rational64>::parse_steps("0 1/1 MAYBE\n").is_err());
    assert!(RunTrace::<Rational64>::parse_steps("0 1/1 ACCEPT SWOP=2\n").is_err());
}

#[test]
fn tree_graphs_accept_everything() {
    let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
    let inst = WmstInstance::new(g, ints(&[5, 1, 2]), ints(&[1, 4, 9])).unwrap();
    for kind in AlgorithmKind::ALL {
        for order in all_orders(3) {
            let t = run(kind.build(), &inst, &order, RunOptions::checked()).unwrap();
            assert_eq!(t.accepted, vec![0, 1, 2]);
            assert_eq!(t.cost, Rational64::from_int(14));
        }
    }
}

#[test]
fn perfect_predictions_give_opt() {
    let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
    let w = ints(&[3, 1, 4, 1, 5]);
    let inst = WmstInstance::new(g.clone(), w.clone(), w.clone()).unwrap();
    let opt = crate::mst::opt(&g, &w);
    for kind in AlgorithmKind::ALL {
        for order in all_orders(5) {
            let t = run(kind.build(), &inst, &order, RunOptions::checked()).unwrap();
            assert_eq!(t.cost, opt);
        }
    }
}

#[test]
fn arrival_order_validation() {
    assert!(ArrivalOrder::new(vec![0, 1, 1], 3).is_err());
    assert!(ArrivalOrder::new(vec![0, 3, 1], 3).is_err());
    assert!(ArrivalOrder::new(vec![0, 1], 3).is_err());
    let o = ArrivalOrder::parse("2 0\n1", 3).unwrap();
    assert_eq!(o.as_slice(), &[2, 0, 1]);
    assert_eq!(ArrivalOrder::parse(&o.to_text(), 3).unwrap(), o);
    assert!(ArrivalOrder::parse("0 x 1", 3).is_err());
}

#[test]
fn run_rejects_short_orders() {
    let inst = section_triangle();
    let order = ArrivalOrder::identity(2);
    assert!(matches!(
        run(FollowThePredictions::new(), &inst, &order, RunOptions::default()),
        Err(WmstError::BadOrder(_))
    ));
}

/// Accepts everything: closes a cycle on the triangle.
struct Greedy;

impl<W: Weight> OnlineAlgorithm<W> for Greedy {
    fn name(&self) -> &'static str {
        "accept-all"
    }
    fn initialize(&mut self, _: &Graph, _: &[W]) {}
    fn reveal(&mut self, _: EdgeId, _: &W) -> Decision {
        Decision::Accept
    }
}

/// Rejects everything: never spans.
struct Lazy;

impl<W: Weight> OnlineAlgorithm<W> for Lazy {
    fn name(&self) -> &'static str {
        "reject-all"
    }
    fn initialize(&mut self, _: &Graph, _: &[W]) {}
    fn reveal(&mut self, _: EdgeId, _: &W) -> Decision {
        Decision::Reject
    }
}

#[test]
fn engine_catches_broken_algorithms() {
    let inst = section_triangle();
    let order = ArrivalOrder::identity(3);
    assert!(matches!(
        run(Greedy, &inst, &order, RunOptions::default()),
        Err(WmstError::NotSpanning { .. })
    ));
    assert!(matches!(
        run(Lazy, &inst, &order, RunOptions::default()),
        Err(WmstError::NotSpanning { .. })
    ));
}

/// GFtP variant that evicts the lightest unseen cycle edge; must trip the
/// checked-mode dominance check.
struct EvictLightest {
    graph: Option<Graph>,
    predicted: Vec<Rational64>,
    tree: Option<SpanningTree>,
    unseen: Vec<bool>,
}

impl OnlineAlgorithm<Rational64> for EvictLightest {
    fn name(&self) -> &'static str {
        "evict-lightest"
    }
    fn initialize(&mut self, graph: &Graph, predicted: &[Rational64]) {
        self.tree = Some(crate::mst::mst(graph, predicted));
        self.graph = Some(graph.clone());
        self.predicted = predicted.to_vec();
        self.unseen = vec![true; graph.m()];
    }
    fn reveal(&mut self, edge: EdgeId, weight: &Rational64) -> Decision {
        self.unseen[edge] = false;
        let (graph, tree) = (self.graph.as_ref().unwrap(), self.tree.as_mut().unwrap());
        if tree.contains(edge) {
            return Decision::Accept;
        }
        let e = *graph.edge(edge);
        let lightest = tree
            .path(e.u, e.v)
            .into_iter()
            .filter(|&c| self.unseen[c])
            .min_by_key(|&c| self.predicted[c]);
        match lightest {
            Some(l) if *weight <= self.predicted[l] => {
                tree.swap(graph.edge(l), &e);
                Decision::Swap { evicted: l }
            }
            _ => Decision::Reject,
        }
    }
    fn working_tree(&self) -> Option<&SpanningTree> {
        self.tree.as_ref()
    }
}

#[test]
fn checked_mode_flags_a_broken_swap_rule() {
    let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
    let inst = WmstInstance::new(g, ints(&[1, 2, 3, 10, 10]), ints(&[5, 5, 5, 1, 5])).unwrap();
    let order = ArrivalOrder::new(vec![3, 0, 1, 2, 4], 5).unwrap();
    let alg = || EvictLightest { graph: None, predicted: vec![], tree: None, unseen: vec![] };
    assert!(run(alg(), &inst, &order, RunOptions::default()).is_ok());
    assert!(matches!(
        run(alg(), &inst, &order, RunOptions::checked()),
        Err(WmstError::LemmaViolation(_))
    ));
    // the real rule passes on the same input
    assert!(run(GreedyFollowThePredictions::new(), &inst, &order, RunOptions::checked()).is_ok());
}
