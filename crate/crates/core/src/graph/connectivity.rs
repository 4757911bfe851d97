use super::{Graph, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectivityReport {
    pub connected: bool,
    /// Connected, at least two vertices and no bridge.
    pub two_edge_connected: bool,
    /// Connected, no cut vertex, and either `n >= 3` or two vertices joined
    /// by at least two parallel edges.
    pub two_connected: bool,
    pub cut_vertices: VertexSet,
    /// Edge ids of the bridges.
    pub bridges: Vec<usize>,
}

/// Connected components as sorted vertex lists, ordered by smallest vertex.
pub fn components(g: &Graph) -> Vec<Vec<usize>> {
    let mut label = vec![usize::MAX; g.n()];
    let mut out = Vec::new();
    for root in 0..g.n() {
        if label[root] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut comp = vec![root];
        label[root] = id;
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for w in g.neighbors(u) {
                if label[w] == usize::MAX {
                    label[w] = id;
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Cut vertices and bridges via an iterative lowpoint DFS. Parallel edges are
/// distinguished by edge id, so a doubled edge is never a bridge.
pub fn connectivity_report(g: &Graph) -> ConnectivityReport {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut is_cut = vec![false; n];
    let mut bridges = Vec::new();
    let mut timer = 0;
    let mut roots = 0;

    // (vertex, parent edge id, next incident index)
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        roots += 1;
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        let mut root_children = 0;
        stack.push((root, usize::MAX, 0));
        while let Some(&mut (u, pe, ref mut next)) = stack.last_mut() {
            if let Some(&(w, id)) = g.incident(u).get(*next) {
                *next += 1;
                if id == pe {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    if u == root {
                        root_children += 1;
                    }
                    stack.push((w, id, 0));
                } else {
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[u]);
                    if p != root && low[u] >= disc[p] {
                        is_cut[p] = true;
                    }
                    if low[u] > disc[p] {
                        bridges.push(pe);
                    }
                }
            }
        }
        if root_children >= 2 {
            is_cut[root] = true;
        }
    }
    bridges.sort_unstable();

    let connected = roots <= 1;
    let cut_vertices = VertexSet::new(n, (0..n).filter(|&v| is_cut[v])).unwrap();
    let two_edge_connected = connected && n >= 2 && bridges.is_empty();
    let two_connected = connected
        && cut_vertices.is_empty()
        && (n >= 3 || (n == 2 && g.edge_count() >= 2));
    ConnectivityReport {
        connected,
        two_edge_connected,
        two_connected,
        cut_vertices,
        bridges,
    }
}
