use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use super::{connectivity_report, Graph};
use crate::error::{Error, Result};

/// A path (or, for the initial cycle, a closed walk) given by its vertex
/// sequence and the ids of the edges between consecutive vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ear {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl Ear {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// `initial_cycle.vertices` lists the cycle without repeating the start;
/// its last edge closes the cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EarDecomposition {
    pub initial_cycle: Ear,
    pub ears: Vec<Ear>,
}

impl EarDecomposition {
    /// Checks that every ear is open, attaches to earlier vertices only, and
    /// that cycle plus ears use every edge of `g` exactly once.
    pub fn verify(&self, g: &Graph) -> bool {
        let mut in_h = vec![false; g.n()];
        let mut used = vec![false; g.edge_count()];
        let use_edge = |id: usize, a: usize, b: usize, used: &mut Vec<bool>| {
            if id >= g.edge_count() || used[id] {
                return false;
            }
            used[id] = true;
            let (u, v) = g.edge(id);
            (u, v) == (a.min(b), a.max(b))
        };

        let cyc = &self.initial_cycle;
        let len = cyc.vertices.len();
        if len < 2 || cyc.edges.len() != len {
            return false;
        }
        for (i, &v) in cyc.vertices.iter().enumerate() {
            if v >= g.n() || in_h[v] {
                return false;
            }
            in_h[v] = true;
            let next = cyc.vertices[(i + 1) % len];
            if !use_edge(cyc.edges[i], v, next, &mut used) {
                return false;
            }
        }

        for ear in &self.ears {
            let k = ear.vertices.len();
            if k < 2 || ear.edges.len() + 1 != k {
                return false;
            }
            let (first, last) = (ear.vertices[0], ear.vertices[k - 1]);
            if first == last || first >= g.n() || last >= g.n() || !in_h[first] || !in_h[last] {
                return false;
            }
            for &v in &ear.vertices[1..k - 1] {
                if v >= g.n() || in_h[v] {
                    return false;
                }
                in_h[v] = true;
            }
            for (i, &id) in ear.edges.iter().enumerate() {
                if !use_edge(id, ear.vertices[i], ear.vertices[i + 1], &mut used) {
                    return false;
                }
            }
        }
        used.iter().all(|&u| u) && in_h.iter().all(|&h| h)
    }
}

/// Open ear decomposition of a 2-connected graph. Multigraphs are accepted;
/// a two-vertex multigraph starts from a cycle of two parallel edges.
pub fn open_ear_decomposition(g: &Graph) -> Result<EarDecomposition> {
    if !connectivity_report(g).two_connected {
        return Err(Error::NotTwoConnected);
    }
    let n = g.n();
    let mut in_h = vec![false; n];
    let mut used = vec![false; g.edge_count()];

    // Cycle through edge 0: edge 0 plus a shortest path back that avoids it.
    let (a, b) = g.edge(0);
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[b] = true;
    let mut queue = VecDeque::from([b]);
    while let Some(u) = queue.pop_front() {
        if u == a {
            break;
        }
        for &(w, id) in g.incident(u) {
            if id != 0 && !seen[w] {
                seen[w] = true;
                prev[w] = Some((u, id));
                queue.push_back(w);
            }
        }
    }
    let mut vertices = vec![a];
    let mut edges = vec![0];
    let mut cur = a;
    while cur != b {
        let (p, id) = prev[cur].expect("edge 0 lies on a cycle");
        vertices.push(p);
        edges.push(id);
        cur = p;
    }
    // vertices: a, ..., b; edges[0] = a-b closes, so rotate to keep pairs aligned
    vertices.reverse();
    edges.remove(0);
    edges.reverse();
    edges.push(0);
    let initial_cycle = Ear { vertices, edges };

    let mut heap = BinaryHeap::new();
    let enter = |v: usize, in_h: &mut Vec<bool>, heap: &mut BinaryHeap<Reverse<usize>>| {
        in_h[v] = true;
        for &(_, id) in g.incident(v) {
            heap.push(Reverse(id));
        }
    };
    for &id in &initial_cycle.edges {
        used[id] = true;
    }
    for &v in &initial_cycle.vertices {
        enter(v, &mut in_h, &mut heap);
    }

    let mut ears = Vec::new();
    while let Some(Reverse(id)) = heap.pop() {
        if used[id] {
            continue;
        }
        used[id] = true;
        let (x, y) = g.edge(id);
        if in_h[x] && in_h[y] {
            ears.push(Ear { vertices: vec![x, y], edges: vec![id] });
            continue;
        }
        let (u, w) = if in_h[x] { (x, y) } else { (y, x) };
        // Walk from w through new vertices to some H vertex other than u.
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[w] = true;
        let mut queue = VecDeque::from([w]);
        let mut hit = None;
        'bfs: while let Some(p) = queue.pop_front() {
            for &(q, eid) in g.incident(p) {
                if q == u || seen[q] || used[eid] {
                    continue;
                }
                if in_h[q] {
                    hit = Some((p, q, eid));
                    break 'bfs;
                }
                seen[q] = true;
                prev[q] = Some((p, eid));
                queue.push_back(q);
            }
        }
        let (p, q, eid) = hit.ok_or(Error::NotTwoConnected)?;
        let mut tail = vec![q];
        let mut tail_edges = vec![eid];
        let mut cur = p;
        while cur != w {
            let (pp, e) = prev[cur].expect("bfs tree");
            tail.push(cur);
            tail_edges.push(e);
            cur = pp;
        }
        tail.push(w);
        tail.push(u);
        tail_edges.push(id);
        tail.reverse();
        tail_edges.reverse();
        for &e in &tail_edges {
            used[e] = true;
        }
        for &v in &tail[1..tail.len() - 1] {
            enter(v, &mut in_h, &mut heap);
        }
        ears.push(Ear { vertices: tail, edges: tail_edges });
    }
    Ok(EarDecomposition { initial_cycle, ears })
}

/// Edge ids (sorted) of a 2-connected spanning subgraph: the initial cycle
/// and every ear longer than one edge.
pub fn sparse_2connected_spanning_edges(g: &Graph) -> Result<Vec<usize>> {
    let dec = open_ear_decomposition(g)?;
    let mut ids = dec.initial_cycle.edges.clone();
    for ear in dec.ears.iter().filter(|e| e.len() >= 2) {
        ids.extend_from_slice(&ear.edges);
    }
    ids.sort_unstable();
    Ok(ids)
}

/// 2-connected spanning subgraph with at most `2n - 3` edges (`n >= 3`).
pub fn sparse_2connected_spanning(g: &Graph) -> Result<Graph> {
    Ok(g.with_edges(sparse_2connected_spanning_edges(g)?))
}
