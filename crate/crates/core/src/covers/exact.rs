use super::{verify_cover, CoverCertificate, CoverKind};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::{connectivity_report, Graph, VertexSet};

pub fn minimum_cover_exact(g: &Graph, kind: CoverKind) -> Result<CoverCertificate> {
    minimum_cover_exact_with(g, kind, &Caps::default())
}

/// Minimum cover of the given kind; among minimum sets the lexicographically
/// smallest sorted member list is returned.
pub fn minimum_cover_exact_with(
    g: &Graph,
    kind: CoverKind,
    caps: &Caps,
) -> Result<CoverCertificate> {
    g.require_simple()?;
    let n = g.n();
    let cap = match kind {
        CoverKind::VertexCover => caps.exact_vertex_cover,
        _ => caps.exact_cover,
    };
    if n > cap.min(64) {
        return Err(Error::CapExceeded { what: "exact cover", size: n, cap: cap.min(64) });
    }
    if n == 0 {
        return Err(Error::InvalidGraph("empty graph".into()));
    }
    match kind {
        CoverKind::WeaklyConnectedDominating if !connectivity_report(g).connected => {
            return Err(Error::NotConnected)
        }
        CoverKind::TvcDownWitness if !connectivity_report(g).two_connected => {
            return Err(Error::NotTwoConnected)
        }
        CoverKind::TotalDominating | CoverKind::TotalVertexCover
            if (0..n).any(|v| g.degree(v) == 0) =>
        {
            return Err(Error::Infeasible(kind.to_string()))
        }
        _ => {}
    }

    let open = g.neighbor_masks();
    let closed: Vec<u64> = (0..n).map(|v| open[v] | 1 << v).collect();
    let edges: Vec<u64> = g.edges().iter().map(|&(u, v)| 1 << u | 1 << v).collect();
    let constraints: Vec<u64> = match kind {
        CoverKind::Dominating
        | CoverKind::WeaklyConnectedDominating
        | CoverKind::TvcDownWitness => closed,
        CoverKind::TotalDominating => open,
        CoverKind::VertexCover => edges,
        CoverKind::TotalVertexCover => edges.into_iter().chain(open).collect(),
    };
    let mut by_max = vec![Vec::new(); n];
    for &c in &constraints {
        by_max[63 - c.leading_zeros() as usize].push(c);
    }
    let needs_check = matches!(
        kind,
        CoverKind::WeaklyConnectedDominating | CoverKind::TvcDownWitness
    );
    let valid = |mask: u64| {
        constraints.iter().all(|&c| c & mask != 0)
            && (!needs_check || verify_cover(g, &VertexSet::from_mask(n, mask), kind))
    };

    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut incumbent = full;
    for v in 0..n {
        let trial = incumbent & !(1 << v);
        if valid(trial) {
            incumbent = trial;
        }
    }
    let ub = incumbent.count_ones() as usize;
    let lb = lower_bound(g, kind).min(ub);

    let search = Search { n, by_max: &by_max, valid: &valid };
    for k in lb..=ub {
        if let Some(mask) = search.dfs(k, 0, 0, 0) {
            return Ok(CoverCertificate::new(kind, VertexSet::from_mask(n, mask)));
        }
    }
    unreachable!("the greedy incumbent has size {ub}")
}

struct Search<'a, F: Fn(u64) -> bool> {
    n: usize,
    by_max: &'a [Vec<u64>],
    valid: &'a F,
}

impl<F: Fn(u64) -> bool> Search<'_, F> {
    /// Include-first DFS over vertices in index order for sets of size `k`.
    fn dfs(&self, k: usize, i: usize, mask: u64, count: usize) -> Option<u64> {
        if count == k {
            return (self.valid)(mask).then_some(mask);
        }
        if i == self.n || count + (self.n - i) < k {
            return None;
        }
        let with = mask | 1 << i;
        if self.by_max[i].iter().all(|&c| c & with != 0) {
            if let Some(found) = self.dfs(k, i + 1, with, count + 1) {
                return Some(found);
            }
        }
        if self.by_max[i].iter().all(|&c| c & mask != 0) {
            return self.dfs(k, i + 1, mask, count);
        }
        None
    }
}

fn lower_bound(g: &Graph, kind: CoverKind) -> usize {
    let n = g.n();
    let delta = g.max_degree().max(1);
    let matching = || {
        let mut used = vec![false; n];
        let mut size = 0;
        for &(u, v) in g.edges() {
            if !used[u] && !used[v] {
                used[u] = true;
                used[v] = true;
                size += 1;
            }
        }
        size
    };
    match kind {
        CoverKind::Dominating
        | CoverKind::WeaklyConnectedDominating
        | CoverKind::TvcDownWitness => n.div_ceil(delta + 1),
        CoverKind::TotalDominating => n.div_ceil(delta),
        CoverKind::VertexCover => matching(),
        CoverKind::TotalVertexCover => matching().max(n.div_ceil(delta)),
    }
}
