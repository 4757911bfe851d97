use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::{spanning_tree_edges, Graph};
use crate::lp::{lower_bound_opt_with, Rational};

use super::Protocol;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CostRow {
    pub k: usize,
    pub senders: usize,
    pub total_bits: usize,
    pub per_bit_cost: Rational,
    pub lower_bound: Rational,
}

/// One row per `k`: bits of the protocol built for `k` against the LP lower
/// bound of `g`.
pub fn per_bit_cost_table(
    g: &Graph,
    ks: &[usize],
    caps: &Caps,
    mut build: impl FnMut(usize) -> Result<Box<dyn Protocol>>,
) -> Result<Vec<CostRow>> {
    let lower_bound = lower_bound_opt_with(g, caps)?.value;
    ks.iter()
        .map(|&k| {
            let p = build(k)?;
            if !p.graph().same_edges(g) || p.k() != k {
                return Err(Error::InvalidParams(format!("builder returned a protocol for another graph or k at k = {k}")));
            }
            let total_bits = p.total_bits();
            Ok(CostRow {
                k,
                senders: p.senders().len(),
                total_bits,
                per_bit_cost: Rational::new((total_bits as i64).into(), (k as i64).into()),
                lower_bound: lower_bound.clone(),
            })
        })
        .collect()
}

/// Spreading the verdict so every vertex learns it: one bit up a spanning
/// tree from every non-root, then one bit down from every vertex with
/// children. Not part of the per-bit cost.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Epilogue {
    pub all_accept: bool,
    pub bits: usize,
}

pub fn outcome_epilogue(g: &Graph, accepts: &[bool]) -> Result<Epilogue> {
    if accepts.len() != g.n() {
        return Err(Error::AssignmentMismatch(format!("{} decisions for {} vertices", accepts.len(), g.n())));
    }
    let tree = spanning_tree_edges(g)?;
    let mut parent = vec![usize::MAX; g.n()];
    let mut adj = vec![Vec::new(); g.n()];
    for &e in &tree {
        let (u, v) = g.edge(e);
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut order = vec![0];
    parent[0] = 0;
    let mut i = 0;
    while i < order.len() {
        let u = order[i];
        i += 1;
        for &w in &adj[u] {
            if parent[w] == usize::MAX {
                parent[w] = u;
                order.push(w);
            }
        }
    }
    let mut subtree = accepts.to_vec();
    for &v in order.iter().skip(1).rev() {
        subtree[parent[v]] &= subtree[v];
    }
    let internal = (0..g.n()).filter(|&v| order.iter().skip(1).any(|&w| parent[w] == v)).count();
    Ok(Epilogue { all_accept: subtree[0], bits: g.n() - 1 + internal })
}
