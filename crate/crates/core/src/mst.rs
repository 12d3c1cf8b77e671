//! Deterministic Kruskal and a brute-force enumeration oracle.

use crate::error::{Result, WmstError};
use crate::graph::{EdgeId, Graph, SpanningTree};
use crate::weight::Weight;

/// Largest edge count [`brute_force_mst`] will enumerate.
pub const BRUTE_FORCE_MAX_EDGES: usize = 24;

/// Disjoint-set forest with path halving and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the sets of `a` and `b`; false if they were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

/// Kruskal's algorithm scanning edges by `(weight, EdgeId)` ascending.
///
/// Equal-weight edges are considered in id order, so the result is a pure
/// function of the inputs.
pub fn mst<W: Weight>(graph: &Graph, weights: &[W]) -> SpanningTree {
    assert_eq!(weights.len(), graph.m(), "weight map must cover every edge");
    let mut order: Vec<EdgeId> = (0..graph.m()).collect();
    // stable sort keeps ids ascending within a weight class
    order.sort_by(|&a, &b| weights[a].cmp(&weights[b]));
    let mut uf = UnionFind::new(graph.n());
    let mut chosen = Vec::with_capacity(graph.n() - 1);
    for id in order {
        let e = graph.edge(id);
        if uf.union(e.u, e.v) {
            chosen.push(id);
            if chosen.len() == graph.n() - 1 {
                break;
            }
        }
    }
    SpanningTree::new(graph, &chosen).expect("graph is connected")
}

/// OPT under `weights`: the cost of [`mst`].
pub fn opt<W: Weight>(graph: &Graph, weights: &[W]) -> W {
    mst(graph, weights).cost(weights)
}

/// Calls `visit` with every spanning tree of `graph`, as ascending edge-id
/// lists in lexicographic order. Stops early when `visit` returns false.
pub fn for_each_spanning_tree(graph: &Graph, mut visit: impl FnMut(&[EdgeId]) -> bool) {
    let m = graph.m();
    let k = graph.n() - 1;
    if k > m {
        return;
    }
    let mut combo: Vec<EdgeId> = (0..k).collect();
    loop {
        let mut uf = UnionFind::new(graph.n());
        let acyclic = combo.iter().all(|&id| {
            let e = graph.edge(id);
            uf.union(e.u, e.v)
        });
        if acyclic && !visit(&combo) {
            return;
        }
        // next k-combination of 0..m in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if combo[i] != i + m - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        combo[i] += 1;
        for j in i + 1..k {
            combo[j] = combo[j - 1] + 1;
        }
    }
}

/// All spanning trees of a graph with at most [`BRUTE_FORCE_MAX_EDGES`] edges.
pub fn spanning_trees(graph: &Graph) -> Result<Vec<SpanningTree>> {
    guard(graph)?;
    let mut trees = Vec::new();
    for_each_spanning_tree(graph, |ids| {
        trees.push(SpanningTree::new(graph, ids).expect("enumerated tree is valid"));
        true
    });
    Ok(trees)
}

/// Enumerates every (n−1)-edge subset and returns the minimum cost together
/// with the lexicographically smallest minimizer.
pub fn brute_force_mst<W: Weight>(graph: &Graph, weights: &[W]) -> Result<(W, SpanningTree)> {
    guard(graph)?;
    let mut best: Option<(W, Vec<EdgeId>)> = None;
    for_each_spanning_tree(graph, |ids| {
        let cost = ids.iter().fold(W::zero(), |acc, &id| acc + weights[id].clone());
        if best.as_ref().is_none_or(|(b, _)| cost < *b) {
            best = Some((cost, ids.to_vec()));
        }
        true
    });
    let (cost, ids) = best.expect("connected graph has a spanning tree");
    Ok((cost, SpanningTree::new(graph, &ids)?))
}

fn guard(graph: &Graph) -> Result<()> {
    if graph.m() > BRUTE_FORCE_MAX_EDGES {
        return Err(WmstError::TooLarge {
            what: "edge count for enumeration",
            size: graph.m(),
            limit: BRUTE_FORCE_MAX_EDGES,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Rational64, Weight};

    fn w(xs: &[i64]) -> Vec<Rational64> {
        xs.iter().map(|&x| Rational64::from_int(x)).collect()
    }

    fn triangle() -> Graph {
        Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn triangle_msts_match_enumeration() {
        let g = triangle();
        let predicted = w(&[2, 3, 2]);
        let actual = w(&[1, 1, 2]);
        // hand enumeration of the 3 spanning trees
        let trees = spanning_trees(&g).unwrap();
        assert_eq!(trees.len(), 3);
        let costs: Vec<_> = trees.iter().map(|t| t.cost(&actual)).collect();
        assert_eq!(costs, w(&[2, 3, 3]));

        let tp = mst(&g, &predicted);
        assert_eq!(tp.edge_ids(), vec![0, 2]);
        assert_eq!(tp.cost(&predicted), Rational64::from_int(4));
        assert_eq!(tp.cost(&actual), Rational64::from_int(3));

        let ta = mst(&g, &actual);
        assert_eq!(ta.edge_ids(), vec![0, 1]);
        assert_eq!(ta.cost(&actual), Rational64::from_int(2));

        let (cost, tree) = brute_force_mst(&g, &actual).unwrap();
        assert_eq!(cost, Rational64::from_int(2));
        assert_eq!(tree.edge_ids(), vec![0, 1]);
    }

    #[test]
    fn ties_break_toward_smaller_ids() {
        let g = triangle();
        let t = mst(&g, &w(&[1, 1, 1]));
        assert_eq!(t.edge_ids(), vec![0, 1]);
        let (_, bf) = brute_force_mst(&g, &w(&[1, 1, 1])).unwrap();
        assert_eq!(bf.edge_ids(), vec![0, 1]);
    }

    #[test]
    fn path_graph_has_a_unique_tree() {
        let g = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let t = mst(&g, &w(&[9, 1, 5, 2]));
        assert_eq!(t.edge_ids(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn single_edge() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let (cost, _) = brute_force_mst(&g, &w(&[7])).unwrap();
        assert_eq!(cost, Rational64::from_int(7));
    }

    #[test]
    fn enumeration_guard() {
        let n = 8;
        let pairs: Vec<_> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let g = Graph::new(n, &pairs).unwrap();
        assert_eq!(g.m(), 28);
        assert!(matches!(
            brute_force_mst(&g, &vec![Rational64::from_int(1); 28]),
            Err(WmstError::TooLarge { .. })
        ));
    }

    #[test]
    fn counts_complete_graph_trees() {
        // Cayley: K5 has 5^3 spanning trees
        let pairs: Vec<_> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
        let g = Graph::new(5, &pairs).unwrap();
        assert_eq!(spanning_trees(&g).unwrap().len(), 125);
    }
}
