//! Simple connected undirected graphs, WMST instances and spanning trees.

use std::collections::HashMap;

use crate::error::{Result, WmstError};
use crate::weight::Weight;

pub type EdgeId = usize;
pub type VertexId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
}

impl Edge {
    /// The endpoint opposite to `x`.
    pub fn other(&self, x: VertexId) -> VertexId {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }

    fn key(&self) -> (VertexId, VertexId) {
        (self.u.min(self.v), self.u.max(self.v))
    }
}

/// A simple, connected, undirected graph with dense 0-based edge ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
}

impl Graph {
    /// Builds a graph from endpoint pairs; the position of a pair is its `EdgeId`.
    pub fn new(n: usize, pairs: &[(VertexId, VertexId)]) -> Result<Self> {
        if n < 2 {
            return Err(WmstError::TooFewVertices(n));
        }
        let mut seen: HashMap<(VertexId, VertexId), EdgeId> = HashMap::with_capacity(pairs.len());
        let mut edges = Vec::with_capacity(pairs.len());
        for (id, &(u, v)) in pairs.iter().enumerate() {
            for vertex in [u, v] {
                if vertex >= n {
                    return Err(WmstError::VertexOutOfRange { edge: id, vertex, n });
                }
            }
            if u == v {
                return Err(WmstError::SelfLoop { edge: id, vertex: u });
            }
            let edge = Edge { id, u, v };
            if let Some(&first) = seen.get(&edge.key()) {
                return Err(WmstError::DuplicateEdge { edge: id, first, u, v });
            }
            seen.insert(edge.key(), id);
            edges.push(edge);
        }
        let graph = Graph { n, edges };
        if !graph.is_connected() {
            return Err(WmstError::DisconnectedGraph);
        }
        Ok(graph)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id]
    }

    fn is_connected(&self) -> bool {
        let mut uf = crate::mst::UnionFind::new(self.n);
        let mut components = self.n;
        for e in &self.edges {
            if uf.union(e.u, e.v) {
                components -= 1;
            }
        }
        components == 1
    }
}

/// The triple (graph, predicted weights, true weights).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WmstInstance<W> {
    graph: Graph,
    predicted: Vec<W>,
    actual: Vec<W>,
}

impl<W: Weight> WmstInstance<W> {
    pub fn new(graph: Graph, predicted: Vec<W>, actual: Vec<W>) -> Result<Self> {
        let m = graph.m();
        for (which, map) in [("predicted", &predicted), ("actual", &actual)] {
            if map.len() < m {
                return Err(WmstError::MissingWeight { edge: map.len(), which });
            }
            if map.len() > m {
                return Err(WmstError::BadParameter(format!(
                    "{which} weight map has {} entries for {m} edges",
                    map.len()
                )));
            }
            if let Some(edge) = map.iter().position(|w| !w.is_positive()) {
                return Err(WmstError::NonpositiveWeight { edge, which });
            }
        }
        Ok(WmstInstance { graph, predicted, actual })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn predicted(&self) -> &[W] {
        &self.predicted
    }

    pub fn actual(&self) -> &[W] {
        &self.actual
    }

    /// |ŵ(e) − w(e)| for every edge, indexed by `EdgeId`.
    pub fn discrepancies(&self) -> Vec<W> {
        self.predicted
            .iter()
            .zip(&self.actual)
            .map(|(p, a)| (p.clone() - a.clone()).abs())
            .collect()
    }

    /// Copy of the instance with ŵ(e) := w(e) for every edge in `edges`.
    pub fn with_corrected(&self, edges: &[EdgeId]) -> Self {
        let mut predicted = self.predicted.clone();
        for &e in edges {
            predicted[e] = self.actual[e].clone();
        }
        WmstInstance { predicted, ..self.clone() }
    }

    /// Relabels edges so that old edge `perm[i]` becomes new edge `i`.
    pub fn relabel_edges(&self, perm: &[EdgeId]) -> Result<Self> {
        let pairs: Vec<_> = perm
            .iter()
            .map(|&old| (self.graph.edges[old].u, self.graph.edges[old].v))
            .collect();
        let graph = Graph::new(self.graph.n, &pairs)?;
        let predicted = perm.iter().map(|&old| self.predicted[old].clone()).collect();
        let actual = perm.iter().map(|&old| self.actual[old].clone()).collect();
        WmstInstance::new(graph, predicted, actual)
    }
}

/// A spanning tree of some graph, with an adjacency index for path queries.
#[derive(Clone, Debug)]
pub struct SpanningTree {
    n: usize,
    in_tree: Vec<bool>,
    adjacency: Vec<Vec<(VertexId, EdgeId)>>,
}

impl PartialEq for SpanningTree {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.in_tree == other.in_tree
    }
}

impl Eq for SpanningTree {}

impl SpanningTree {
    /// Validates that `ids` is an acyclic edge set spanning every vertex.
    pub fn new(graph: &Graph, ids: &[EdgeId]) -> Result<Self> {
        let n = graph.n();
        if ids.len() != n - 1 {
            return Err(WmstError::NotSpanningTree(format!(
                "{} edges given, {} required",
                ids.len(),
                n - 1
            )));
        }
        let mut in_tree = vec![false; graph.m()];
        let mut adjacency = vec![Vec::new(); n];
        let mut uf = crate::mst::UnionFind::new(n);
        for &id in ids {
            let Some(e) = graph.edges.get(id) else {
                return Err(WmstError::NotSpanningTree(format!("unknown edge {id}")));
            };
            if in_tree[id] {
                return Err(WmstError::NotSpanningTree(format!("edge {id} listed twice")));
            }
            if !uf.union(e.u, e.v) {
                return Err(WmstError::NotSpanningTree(format!("edge {id} closes a cycle")));
            }
            in_tree[id] = true;
            adjacency[e.u].push((e.v, id));
            adjacency[e.v].push((e.u, id));
        }
        Ok(SpanningTree { n, in_tree, adjacency })
    }

    pub fn contains(&self, id: EdgeId) -> bool {
        self.in_tree.get(id).copied().unwrap_or(false)
    }

    /// Tree edge ids in ascending order.
    pub fn edge_ids(&self) -> Vec<EdgeId> {
        self.in_tree
            .iter()
            .enumerate()
            .filter_map(|(id, &t)| t.then_some(id))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.n - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Edges of the unique tree path from `a` to `b`, in walking order.
    pub fn path(&self, a: VertexId, b: VertexId) -> Vec<EdgeId> {
        if a == b {
            return Vec::new();
        }
        // parent[x] = (previous vertex, edge used to reach x)
        let mut parent: Vec<Option<(VertexId, EdgeId)>> = vec![None; self.n];
        let mut stack = vec![a];
        let mut visited = vec![false; self.n];
        visited[a] = true;
        while let Some(x) = stack.pop() {
            if x == b {
                break;
            }
            for &(y, id) in &self.adjacency[x] {
                if !visited[y] {
                    visited[y] = true;
                    parent[y] = Some((x, id));
                    stack.push(y);
                }
            }
        }
        let mut path = Vec::new();
        let mut cur = b;
        while cur != a {
            let (prev, id) = parent[cur].expect("spanning tree is connected");
            path.push(id);
            cur = prev;
        }
        path.reverse();
        path
    }

    /// Vertices reachable from `start` without crossing edge `cut`.
    pub fn side_of_cut(&self, start: VertexId, cut: EdgeId) -> Vec<bool> {
        let mut side = vec![false; self.n];
        side[start] = true;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &(y, id) in &self.adjacency[x] {
                if id != cut && !side[y] {
                    side[y] = true;
                    stack.push(y);
                }
            }
        }
        side
    }

    /// Replaces tree edge `out` with non-tree edge `incoming`.
    ///
    /// The caller guarantees that `out` lies on the cycle `incoming` closes.
    pub fn swap(&mut self, out: &Edge, incoming: &Edge) {
        debug_assert!(self.in_tree[out.id] && !self.in_tree[incoming.id]);
        self.in_tree[out.id] = false;
        self.adjacency[out.u].retain(|&(_, id)| id != out.id);
        self.adjacency[out.v].retain(|&(_, id)| id != out.id);
        self.in_tree[incoming.id] = true;
        self.adjacency[incoming.u].push((incoming.v, incoming.id));
        self.adjacency[incoming.v].push((incoming.u, incoming.id));
    }

    /// Exact cost of the tree under `weights`.
    pub fn cost<W: Weight>(&self, weights: &[W]) -> W {
        tree_cost(self, weights)
    }
}

/// `Σ weights[e]` over the tree's edges.
pub fn tree_cost<W: Weight>(tree: &SpanningTree, weights: &[W]) -> W {
    tree.in_tree
        .iter()
        .zip(weights)
        .filter(|(t, _)| **t)
        .fold(W::zero(), |acc, (_, w)| acc + w.clone())
}

/// The tree path between the endpoints of non-tree edge `e`: the cycle `e`
/// closes in `tree`, minus `e` itself.
pub fn tree_cycle(tree: &SpanningTree, e: &Edge) -> Result<Vec<EdgeId>> {
    if tree.contains(e.id) {
        return Err(WmstError::EdgeInTree(e.id));
    }
    Ok(tree.path(e.u, e.v))
}

/// Given `e1 ∈ t1 \ t2`, returns some `e2 ∈ t2 \ t1` such that `e2` closes a
/// cycle through `e1` in `t1` and `e1` closes a cycle through `e2` in `t2`.
///
/// Cuts `t1` at `e1` and walks the `t2` path between `e1`'s endpoints until
/// it crosses the cut.
pub fn exchange_witness(
    graph: &Graph,
    t1: &SpanningTree,
    t2: &SpanningTree,
    e1: EdgeId,
) -> Result<EdgeId> {
    if !t1.contains(e1) || t2.contains(e1) {
        return Err(WmstError::Precondition(format!(
            "edge {e1} must lie in t1 and not in t2"
        )));
    }
    let edge = graph.edge(e1);
    let side = t1.side_of_cut(edge.u, e1);
    t2.path(edge.u, edge.v)
        .into_iter()
        .find(|&id| {
            let f = graph.edge(id);
            side[f.u] != side[f.v]
        })
        .ok_or_else(|| WmstError::Precondition("trees do not span the same graph".into()))
}
