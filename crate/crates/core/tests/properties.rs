use proptest::prelude::*;

use wmst::graph::tree_cycle;
use wmst::*;

type Q = Rational64;

/// Connected graph: a random spanning tree plus random extra edges, with
/// integer weights in 1..=8 (ties are common) for both weight maps.
fn instance(max_n: usize) -> impl Strategy<Value = WmstInstance<Q>> {
    (2..=max_n)
        .prop_flat_map(|n| {
            let parents: Vec<_> = (1..n).map(|v| 0..v).collect();
            let extra = proptest::collection::vec((0..n, 0..n), 0..n * 2);
            (Just(n), parents, extra)
        })
        .prop_flat_map(|(n, parents, extra)| {
            let mut pairs: Vec<(usize, usize)> = parents.iter().enumerate().map(|(i, &p)| (p, i + 1)).collect();
            for (a, b) in extra {
                let key = (a.min(b), a.max(b));
                if a != b && !pairs.iter().any(|&(x, y)| (x.min(y), x.max(y)) == key) {
                    pairs.push(key);
                }
            }
            let m = pairs.len();
            let weights = proptest::collection::vec(1i64..=8, m);
            (Just(n), Just(pairs), weights.clone(), weights)
        })
        .prop_map(|(n, pairs, p, a)| {
            let g = Graph::new(n, &pairs).expect("connected by construction");
            let to_q = |v: Vec<i64>| v.into_iter().map(Q::from_int).collect();
            WmstInstance::new(g, to_q(p), to_q(a)).expect("positive weights")
        })
}

fn instance_and_order(max_n: usize) -> impl Strategy<Value = (WmstInstance<Q>, Vec<usize>)> {
    instance(max_n).prop_flat_map(|inst| {
        let ids: Vec<usize> = (0..inst.graph().m()).collect();
        (Just(inst), Just(ids).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn rational_arithmetic_is_exact(a in -1_000_000i64..1_000_000, b in 1i64..10_000, c in -1_000_000i64..1_000_000, d in 1i64..10_000) {
        let (x, y) = (Rational::ratio(a, b), Rational::ratio(c, d));
        prop_assert_eq!((x.clone() + y.clone()) - y.clone(), x.clone());
        prop_assert_eq!(x < y, (a as i128) * (d as i128) < (c as i128) * (b as i128));
    }

    #[test]
    fn mst_is_deterministic_and_spanning(inst in instance(8)) {
        let a = mst(inst.graph(), inst.actual());
        let b = mst(inst.graph(), inst.actual());
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.len(), inst.graph().n() - 1);
    }

    #[test]
    fn cycle_exchange_gives_spanning_trees(inst in instance(8)) {
        let g = inst.graph();
        let tree = mst(g, inst.predicted());
        for e in g.edges().iter().filter(|e| !tree.contains(e.id)) {
            let cycle = tree_cycle(&tree, e).unwrap();
            prop_assert!(!cycle.is_empty());
            for &c in &cycle {
                let mut ids: Vec<_> = tree.edge_ids().into_iter().filter(|&x| x != c).collect();
                ids.push(e.id);
                prop_assert!(SpanningTree::new(g, &ids).is_ok());
            }
        }
    }

    #[test]
    fn online_runs_respect_their_guarantees((inst, order) in instance_and_order(7)) {
        let order = ArrivalOrder::new(order, inst.graph().m()).unwrap();
        let o = opt(inst.graph(), inst.actual());
        let e = eta(&inst);
        let bound = o + e * Q::from_int(2);
        let ftp = run(FollowThePredictions::new(), &inst, &order, RunOptions::checked()).unwrap();
        let gftp = run(GreedyFollowThePredictions::new(), &inst, &order, RunOptions::checked()).unwrap();
        prop_assert!(ftp.cost <= bound);
        prop_assert!(gftp.cost <= bound);
        prop_assert!(gftp.cost <= opt(inst.graph(), inst.predicted()) + e);
        prop_assert_eq!(ftp.accepted.len(), inst.graph().n() - 1);
        prop_assert_eq!(gftp.accepted.len(), inst.graph().n() - 1);
    }

    #[test]
    fn perfect_predictions_are_optimal((inst, order) in instance_and_order(7)) {
        let perfect = WmstInstance::new(inst.graph().clone(), inst.actual().to_vec(), inst.actual().to_vec()).unwrap();
        let order = ArrivalOrder::new(order, inst.graph().m()).unwrap();
        let o = opt(perfect.graph(), perfect.actual());
        for kind in AlgorithmKind::ALL {
            prop_assert_eq!(run(kind.build::<Q>(), &perfect, &order, RunOptions::checked()).unwrap().cost, o);
        }
    }

    #[test]
    fn correcting_predictions_never_raises_eta(inst in instance(8), mask in proptest::collection::vec(any::<bool>(), 64)) {
        let subset: Vec<_> = (0..inst.graph().m()).filter(|&i| mask[i % mask.len()]).collect();
        let corrected = inst.with_corrected(&subset);
        prop_assert!(eta(&corrected) <= eta(&inst));
        let gap = opt(inst.graph(), inst.predicted()) - opt(inst.graph(), inst.actual());
        let gap = if gap < Q::from_int(0) { -gap } else { gap };
        prop_assert!(gap <= eta(&inst));
    }

    #[test]
    fn instance_json_round_trips(inst in instance(6)) {
        let json = io::instance_to_json(&inst);
        let back: WmstInstance<Rational> = io::parse_instance(&json).unwrap();
        prop_assert_eq!(io::instance_to_json(&back), json);
    }

    #[test]
    fn traces_round_trip_through_text((inst, order) in instance_and_order(6)) {
        let order = ArrivalOrder::new(order, inst.graph().m()).unwrap();
        let t = run(GreedyFollowThePredictions::new(), &inst, &order, RunOptions::default()).unwrap();
        prop_assert_eq!(RunTrace::<Q>::parse_steps(&t.to_text()).unwrap(), t.steps);
    }
}
