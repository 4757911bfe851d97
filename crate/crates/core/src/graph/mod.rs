//! Undirected graphs on dense vertex indices `0..n`, plus the structural
//! algorithms the covers and protocols are built on.

mod connectivity;
mod ear;
mod generate;
mod io;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use connectivity::{components, connectivity_report, ConnectivityReport};
pub use ear::{
    open_ear_decomposition, sparse_2connected_spanning, sparse_2connected_spanning_edges, Ear,
    EarDecomposition,
};
pub use generate::{all_connected_graphs, generate, grid_coords, grid_index, Family};
pub use io::{parse_graph, parse_json, parse_text, to_dot, to_json, to_text};

/// Undirected graph without self-loops. Parallel edges are only allowed when
/// the graph was built as a multigraph (contractions produce those).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<(usize, usize)>>,
    multigraph: bool,
}

impl Graph {
    /// Simple graph; rejects loops, duplicate edges and out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        Self::build(n, edges, false)
    }

    /// Multigraph; parallel edges are kept, loops are still rejected.
    pub fn new_multigraph(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Graph> {
        Self::build(n, edges, true)
    }

    pub fn empty(n: usize) -> Graph {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
            multigraph: false,
        }
    }

    fn build(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        multigraph: bool,
    ) -> Result<Graph> {
        let mut g = Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
            multigraph,
        };
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) out of range for n = {n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            if !multigraph && g.has_edge(u, v) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({u}, {v})")));
            }
            let id = g.edges.len();
            g.edges.push((u.min(v), u.max(v)));
            g.adj[u].push((v, id));
            g.adj[v].push((u, id));
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(min, max)` pairs; the position is the edge id.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> (usize, usize) {
        self.edges[id]
    }

    pub fn is_multigraph(&self) -> bool {
        self.multigraph
    }

    /// `(neighbor, edge id)` pairs around `v`; neighbors repeat on parallel edges.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().map(|&(u, _)| u)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// `Some(d)` when every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        if self.n == 0 {
            return None;
        }
        let d = self.degree(0);
        (0..self.n).all(|v| self.degree(v) == d).then_some(d)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.adj[a].iter().any(|&(w, _)| w == b)
    }

    /// Number of parallel edges between `u` and `v`.
    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.adj[u].iter().filter(|&&(w, _)| w == v).count()
    }

    pub fn require_simple(&self) -> Result<()> {
        if self.multigraph {
            Err(Error::Multigraph)
        } else {
            Ok(())
        }
    }

    /// Spanning subgraph keeping the given edge ids (in the order given).
    pub fn with_edges(&self, ids: impl IntoIterator<Item = usize>) -> Graph {
        Self::build(self.n, ids.into_iter().map(|id| self.edges[id]), self.multigraph)
            .expect("edges of a valid graph")
    }

    /// Neighborhood bitmask of every vertex; only for `n <= 64`.
    pub fn neighbor_masks(&self) -> Vec<u64> {
        assert!(self.n <= 64, "bitmask views need n <= 64");
        (0..self.n)
            .map(|v| self.neighbors(v).fold(0u64, |m, u| m | (1 << u)))
            .collect()
    }

    /// Same vertex count and the same edge multiset, ignoring edge order.
    pub fn same_edges(&self, other: &Graph) -> bool {
        let mut a = self.edges.clone();
        let mut b = other.edges.clone();
        a.sort_unstable();
        b.sort_unstable();
        self.n == other.n && a == b
    }
}

/// A set of vertices of a graph with `parent_n` vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexSet {
    members: Vec<usize>,
    parent_n: usize,
}

impl VertexSet {
    pub fn new(parent_n: usize, members: impl IntoIterator<Item = usize>) -> Result<VertexSet> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if let Some(&v) = members.last() {
            if v >= parent_n {
                return Err(Error::InvalidVertexSet(format!(
                    "vertex {v} out of range for n = {parent_n}"
                )));
            }
        }
        Ok(VertexSet { members, parent_n })
    }

    pub fn empty(parent_n: usize) -> VertexSet {
        VertexSet {
            members: Vec::new(),
            parent_n,
        }
    }

    pub fn full(parent_n: usize) -> VertexSet {
        VertexSet {
            members: (0..parent_n).collect(),
            parent_n,
        }
    }

    pub fn from_mask(parent_n: usize, mask: u64) -> VertexSet {
        VertexSet {
            members: (0..parent_n).filter(|&v| mask >> v & 1 == 1).collect(),
            parent_n,
        }
    }

    pub fn to_mask(&self) -> u64 {
        assert!(self.parent_n <= 64);
        self.members.iter().fold(0, |m, &v| m | 1 << v)
    }

    pub fn parent_n(&self) -> usize {
        self.parent_n
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn indicator(&self) -> Vec<bool> {
        let mut ind = vec![false; self.parent_n];
        for &v in &self.members {
            ind[v] = true;
        }
        ind
    }

    pub fn complement(&self) -> VertexSet {
        let ind = self.indicator();
        VertexSet {
            members: (0..self.parent_n).filter(|&v| !ind[v]).collect(),
            parent_n: self.parent_n,
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        assert_eq!(self.parent_n, other.parent_n);
        VertexSet::new(self.parent_n, self.iter().chain(other.iter())).unwrap()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    fn check_parent(&self, g: &Graph) -> Result<()> {
        if self.parent_n != g.n() {
            return Err(Error::InvalidVertexSet(format!(
                "set refers to n = {} but graph has n = {}",
                self.parent_n,
                g.n()
            )));
        }
        Ok(())
    }
}

/// The vertices incident to the cut `E(S, V \ S)`.
pub fn boundary(g: &Graph, s: &VertexSet) -> Result<VertexSet> {
    s.check_parent(g)?;
    if s.is_empty() || s.len() == g.n() {
        return Err(Error::InvalidVertexSet(
            "boundary needs a nonempty proper subset".into(),
        ));
    }
    let ind = s.indicator();
    let mut members = Vec::new();
    for &(u, v) in g.edges() {
        if ind[u] != ind[v] {
            members.push(u);
            members.push(v);
        }
    }
    VertexSet::new(g.n(), members)
}

/// Spanning subgraph made of every edge with at least one endpoint in `s`.
pub fn edge_incident_subgraph(g: &Graph, s: &VertexSet) -> Result<Graph> {
    s.check_parent(g)?;
    let ind = s.indicator();
    let ids: Vec<usize> = (0..g.edge_count())
        .filter(|&id| {
            let (u, v) = g.edge(id);
            ind[u] || ind[v]
        })
        .collect();
    Ok(g.with_edges(ids))
}

/// Result of contracting the parts of a partition.
#[derive(Clone, Debug)]
pub struct Contraction {
    /// One vertex per part, one edge per crossing edge of the original graph.
    pub graph: Graph,
    /// Part index of every original vertex.
    pub part_of: Vec<usize>,
    /// Original edge id behind each contracted edge.
    pub edge_origin: Vec<usize>,
}

/// Contracts every part into a single vertex. Parallel edges are kept and
/// edges inside a part are dropped.
pub fn contract_partition(g: &Graph, parts: &[VertexSet]) -> Result<Contraction> {
    let mut part_of = vec![usize::MAX; g.n()];
    for (idx, part) in parts.iter().enumerate() {
        part.check_parent(g)?;
        if part.is_empty() {
            return Err(Error::InvalidPartition(format!("part {idx} is empty")));
        }
        for v in part.iter() {
            if part_of[v] != usize::MAX {
                return Err(Error::InvalidPartition(format!("vertex {v} in two parts")));
            }
            part_of[v] = idx;
        }
    }
    if let Some(v) = part_of.iter().position(|&p| p == usize::MAX) {
        return Err(Error::InvalidPartition(format!("vertex {v} in no part")));
    }
    let mut edges = Vec::new();
    let mut edge_origin = Vec::new();
    for (id, &(u, v)) in g.edges().iter().enumerate() {
        if part_of[u] != part_of[v] {
            edges.push((part_of[u], part_of[v]));
            edge_origin.push(id);
        }
    }
    Ok(Contraction {
        graph: Graph::new_multigraph(parts.len(), edges)?,
        part_of,
        edge_origin,
    })
}

/// Edge ids of a BFS spanning tree rooted at vertex 0.
pub fn spanning_tree_edges(g: &Graph) -> Result<Vec<usize>> {
    if g.n() == 0 {
        return Ok(Vec::new());
    }
    let mut seen = vec![false; g.n()];
    let mut tree = Vec::with_capacity(g.n() - 1);
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(u) = queue.pop_front() {
        for &(w, id) in g.incident(u) {
            if !seen[w] {
                seen[w] = true;
                tree.push(id);
                queue.push_back(w);
            }
        }
    }
    if tree.len() + 1 != g.n() {
        return Err(Error::NotConnected);
    }
    Ok(tree)
}

pub fn spanning_tree(g: &Graph) -> Result<Graph> {
    let ids = spanning_tree_edges(g)?;
    Ok(g.with_edges(ids))
}

/// Connected, acyclic and simple.
pub fn is_tree(g: &Graph) -> bool {
    !g.is_multigraph()
        && g.n() >= 1
        && g.edge_count() + 1 == g.n()
        && connectivity_report(g).connected
}

/// Visits perfect matchings (as sorted edge ids) in a fixed order until
/// `visit` returns `false`.
pub fn for_each_perfect_matching(g: &Graph, mut visit: impl FnMut(&[usize]) -> bool) {
    fn rec(
        g: &Graph,
        matched: &mut [bool],
        chosen: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let Some(u) = matched.iter().position(|&m| !m) else {
            let mut sorted = chosen.clone();
            sorted.sort_unstable();
            return visit(&sorted);
        };
        matched[u] = true;
        for &(w, id) in g.incident(u) {
            if !matched[w] {
                matched[w] = true;
                chosen.push(id);
                let go_on = rec(g, matched, chosen, visit);
                chosen.pop();
                matched[w] = false;
                if !go_on {
                    matched[u] = false;
                    return false;
                }
            }
        }
        matched[u] = false;
        true
    }
    if g.n() % 2 == 1 {
        return;
    }
    let mut matched = vec![false; g.n()];
    rec(g, &mut matched, &mut Vec::new(), &mut visit);
}

/// First perfect matching found by backtracking, as edge ids.
pub fn perfect_matching(g: &Graph) -> Option<Vec<usize>> {
    let mut found = None;
    for_each_perfect_matching(g, |m| {
        found = Some(m.to_vec());
        false
    });
    found
}

pub fn is_perfect_matching(g: &Graph, ids: &[usize]) -> bool {
    let mut hit = vec![0usize; g.n()];
    for &id in ids {
        if id >= g.edge_count() {
            return false;
        }
        let (u, v) = g.edge(id);
        hit[u] += 1;
        hit[v] += 1;
    }
    hit.iter().all(|&c| c == 1)
}

/// Length of a shortest cycle, `None` for forests. Parallel edges form
/// cycles of length 2.
pub fn girth(g: &Graph) -> Option<usize> {
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; g.n()];
    let mut parent_edge = vec![usize::MAX; g.n()];
    for root in 0..g.n() {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &(w, id) in g.incident(u) {
                if id == parent_edge[u] {
                    continue;
                }
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent_edge[w] = id;
                    queue.push_back(w);
                } else {
                    let len = dist[u] + dist[w] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
        parent_edge.iter_mut().for_each(|p| *p = usize::MAX);
    }
    best
}
