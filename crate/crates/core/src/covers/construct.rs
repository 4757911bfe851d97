use std::collections::VecDeque;

use super::{verify_cover, CoverCertificate, CoverKind};
use crate::error::{Error, Result};
use crate::graph::{
    components, connectivity_report, contract_partition, edge_incident_subgraph,
    for_each_perfect_matching, generate, grid_index, is_tree, sparse_2connected_spanning_edges,
    spanning_tree_edges, Family, Graph, VertexSet,
};

fn postcondition(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Construction(what.to_string()))
    }
}

/// Grows a dominating set into a weakly connected dominating set by adding
/// the smaller endpoint of one connector edge per extra component of `G_D`.
pub fn wcds_from_dominating(g: &Graph, d: &VertexSet) -> Result<CoverCertificate> {
    g.require_simple()?;
    if !connectivity_report(g).connected {
        return Err(Error::NotConnected);
    }
    if !verify_cover(g, d, CoverKind::Dominating) {
        return Err(Error::NotDominating);
    }
    let comps = components(&edge_incident_subgraph(g, d)?);
    let mut comp_of = vec![0; g.n()];
    for (c, members) in comps.iter().enumerate() {
        for &v in members {
            comp_of[v] = c;
        }
    }
    let mut reached = vec![false; comps.len()];
    let mut extra = Vec::new();
    let mut queue = VecDeque::from([comp_of[0]]);
    reached[comp_of[0]] = true;
    while let Some(c) = queue.pop_front() {
        for &u in &comps[c] {
            for w in g.neighbors(u) {
                if !reached[comp_of[w]] {
                    reached[comp_of[w]] = true;
                    extra.push(u.min(w));
                    queue.push_back(comp_of[w]);
                }
            }
        }
    }
    let set = VertexSet::new(g.n(), d.iter().chain(extra))?;
    let cert = CoverCertificate::new(CoverKind::WeaklyConnectedDominating, set);
    postcondition(cert.verify(g), "result is not weakly connected dominating")?;
    postcondition(cert.size() + 1 <= 2 * d.len(), "result exceeds 2|D| - 1")?;
    Ok(cert)
}

/// Minimum vertex cover of a tree: leaves upward, take the parent of every
/// uncovered child edge.
pub fn tree_vertex_cover(t: &Graph) -> Result<CoverCertificate> {
    if !is_tree(t) {
        return Err(Error::NotATree);
    }
    let n = t.n();
    let mut parent = vec![usize::MAX; n];
    let mut order = vec![0];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for w in t.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = u;
                order.push(w);
            }
        }
    }
    let mut in_s = vec![false; n];
    for &v in order.iter().skip(1).rev() {
        if !in_s[v] && !in_s[parent[v]] {
            in_s[parent[v]] = true;
        }
    }
    let set = VertexSet::new(n, (0..n).filter(|&v| in_s[v]))?;
    Ok(CoverCertificate::new(CoverKind::VertexCover, set))
}

/// Positions `0..len` of a cycle kept in a total vertex cover of size
/// `ceil(2 len / 3)`: position `i` is dropped when `i % 3 == 0` and
/// `i + 3 <= len`.
pub fn cycle_order_tvc(len: usize) -> Vec<usize> {
    (0..len).filter(|&i| !(i % 3 == 0 && i + 3 <= len)).collect()
}

/// Total vertex cover of `C_n` with `ceil(2n/3)` vertices.
pub fn cycle_tvc(n: usize) -> Result<CoverCertificate> {
    if n < 3 {
        return Err(Error::InvalidParams("cycle needs n >= 3".into()));
    }
    let set = VertexSet::new(n, cycle_order_tvc(n))?;
    Ok(CoverCertificate::new(CoverKind::TotalVertexCover, set))
}

/// Outer ring plus the cells with `i mod 5` in `{3j - 2, 3j - 1} mod 5`.
/// Returns the set (a total vertex cover of `H`) and `H = G_S`.
pub fn grid_tvc(n: usize) -> Result<(CoverCertificate, Graph)> {
    if n < 3 {
        return Err(Error::InvalidParams("grid needs n >= 3".into()));
    }
    let g = generate(&Family::Grid(n))?;
    let mut members = Vec::new();
    for j in 1..=n {
        for i in 1..=n {
            let ring = i == 1 || j == 1 || i == n || j == n;
            let r = i % 5;
            if ring || r == (3 * j + 3) % 5 || r == (3 * j + 4) % 5 {
                members.push(grid_index(n, i, j));
            }
        }
    }
    let set = VertexSet::new(n * n, members)?;
    let h = edge_incident_subgraph(&g, &set)?;
    postcondition(connectivity_report(&h).two_connected, "G_S is not 2-connected")?;
    let cert = CoverCertificate::new(CoverKind::TotalVertexCover, set);
    postcondition(cert.verify(&h), "S is not a total vertex cover of G_S")?;
    postcondition(5 * cert.size() <= 2 * n * n + 20 * n, "|S| > 2n^2/5 + 4n")?;
    Ok((cert, h))
}

/// Output of [`hypercube_tvc`].
#[derive(Clone, Debug)]
pub struct HypercubeTvc {
    pub dimension: usize,
    /// The coset union before augmentation.
    pub base: VertexSet,
    /// Components of the edge-incident subgraph of `base`.
    pub base_components: usize,
    pub cert: CoverCertificate,
    pub h: Graph,
}

/// Total vertex cover of a spanning 2-connected subgraph of `Q_d`,
/// `d = 2^l - 1`, from two cosets of the Hamming code (`l` in `2..=4`).
pub fn hypercube_tvc(l: usize) -> Result<HypercubeTvc> {
    if !(2..=4).contains(&l) {
        return Err(Error::InvalidParams("hypercube_tvc supports l in 2..=4".into()));
    }
    let d = (1usize << l) - 1;
    let ones = d;
    // column 0 is the all-ones vector, then the other nonzero vectors
    let cols: Vec<usize> = std::iter::once(ones).chain((1..=d).filter(|&c| c != ones)).collect();
    let mut coord_of_col = vec![usize::MAX; d + 1];
    for (i, &c) in cols.iter().enumerate() {
        coord_of_col[c] = i;
    }
    let syndrome = |x: usize| (0..d).filter(|&i| x >> i & 1 == 1).fold(0, |s, i| s ^ cols[i]);

    let q = generate(&Family::Hypercube(d))?;
    let n = q.n();
    let base = VertexSet::new(n, (0..n).filter(|&x| syndrome(x) == 0 || syndrome(x) == ones))?;
    let gs = edge_incident_subgraph(&q, &base)?;
    let comps = components(&gs);

    let mut members = base.members().to_vec();
    if comps.len() > 1 {
        let parts: Vec<VertexSet> = comps
            .iter()
            .map(|c| VertexSet::new(n, c.iter().copied()))
            .collect::<Result<_>>()?;
        let contracted = contract_partition(&q, &parts)?;
        for tid in spanning_tree_edges(&contracted.graph)? {
            let (x, y) = q.edge(contracted.edge_origin[tid]);
            let s = coord_of_col[syndrome(x)];
            let t = coord_of_col[syndrome(y)];
            let shift = 1 << s | 1 << t;
            let (x2, y2) = (x ^ shift, y ^ shift);
            postcondition(
                contracted.part_of[x2] == contracted.part_of[x]
                    && contracted.part_of[y2] == contracted.part_of[y]
                    && q.has_edge(x2, y2),
                "translated edge e' leaves the components",
            )?;
            members.push(x.min(y));
            members.push(x2.min(y2));
        }
    }
    let set = VertexSet::new(n, members)?;
    let h = edge_incident_subgraph(&q, &set)?;
    postcondition(connectivity_report(&h).two_connected, "G_S' is not 2-connected")?;
    let cert = CoverCertificate::new(CoverKind::TotalVertexCover, set);
    postcondition(cert.verify(&h), "S' is not a total vertex cover of G_S'")?;
    postcondition(within_hypercube_bound(cert.size(), d, l), "|S'| above the size bound")?;
    Ok(HypercubeTvc { dimension: d, base, base_components: comps.len(), cert, h })
}

/// `size <= 2 (2^(d-l) + 2^(d/2-l))`, decided exactly.
pub(crate) fn within_hypercube_bound(size: usize, d: usize, l: usize) -> bool {
    let main = 1u128 << (d - l + 1);
    let size = size as u128;
    // remaining slack must satisfy slack <= 2^(d/2 - l + 1), i.e. slack^2 <= 2^(d - 2l + 2)
    size <= main || {
        let slack = size - main;
        slack * slack <= 1u128 << (d + 2 - 2 * l)
    }
}

/// Output of [`cubic_large_girth_tvc`].
#[derive(Clone, Debug)]
pub struct CubicTvc {
    /// Edge ids of the perfect matching used.
    pub matching: Vec<usize>,
    /// Cycles of `G - M` as vertex sequences.
    pub cycles: Vec<Vec<usize>>,
    /// Spanning 2-connected subgraph made of the cycles plus connector edges.
    pub g_prime: Graph,
    /// Total vertex cover of `g_prime`.
    pub cert: CoverCertificate,
    /// `sum ceil(2|C_i|/3) + 2l - 2`.
    pub bound: usize,
}

/// Total vertex cover of a spanning 2-connected subgraph of a 2-connected
/// cubic graph: cycles of `G - M` covered by the cycle rule, joined by a
/// sparse 2-connected subgraph of the contracted multigraph.
///
/// Perfect matchings are tried in a fixed order until the contraction is
/// 2-connected (or a single cycle remains).
pub fn cubic_large_girth_tvc(g: &Graph) -> Result<CubicTvc> {
    g.require_simple()?;
    if g.regular_degree() != Some(3) {
        return Err(Error::InvalidGraph("graph is not cubic".into()));
    }
    if !connectivity_report(g).two_connected {
        return Err(Error::NotTwoConnected);
    }
    let mut outcome = None;
    let mut failure = None;
    for_each_perfect_matching(g, |m| match cubic_with_matching(g, m) {
        Ok(Some(found)) => {
            outcome = Some(found);
            false
        }
        Ok(None) => true,
        Err(e) => {
            failure = Some(e);
            false
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    outcome.ok_or_else(|| {
        Error::NoPerfectMatching("no matching leaves a 2-connected cycle contraction".into())
    })
}

fn cubic_with_matching(g: &Graph, matching: &[usize]) -> Result<Option<CubicTvc>> {
    let n = g.n();
    let mut in_m = vec![false; g.edge_count()];
    for &id in matching {
        in_m[id] = true;
    }
    let rest: Vec<usize> = (0..g.edge_count()).filter(|&id| !in_m[id]).collect();
    let two_factor = g.with_edges(rest.iter().copied());

    let mut cycles = Vec::new();
    let mut seen = vec![false; n];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut cyc = vec![start];
        seen[start] = true;
        let mut cur = two_factor.neighbors(start).min().expect("2-regular");
        while cur != start {
            seen[cur] = true;
            cyc.push(cur);
            let prev = cyc[cyc.len() - 2];
            cur = two_factor.neighbors(cur).find(|&w| w != prev).expect("2-regular");
        }
        cycles.push(cyc);
    }

    let mut members = Vec::new();
    let mut bound = 0;
    for cyc in &cycles {
        members.extend(cycle_order_tvc(cyc.len()).into_iter().map(|p| cyc[p]));
        bound += (2 * cyc.len()).div_ceil(3);
    }
    let mut kept: Vec<usize> = rest.clone();
    let l = cycles.len();
    if l > 1 {
        let parts: Vec<VertexSet> = cycles
            .iter()
            .map(|c| VertexSet::new(n, c.iter().copied()))
            .collect::<Result<_>>()?;
        let contracted = contract_partition(g, &parts)?;
        if !connectivity_report(&contracted.graph).two_connected {
            return Ok(None);
        }
        for hid in sparse_2connected_spanning_edges(&contracted.graph)? {
            let id = contracted.edge_origin[hid];
            let (u, v) = g.edge(id);
            members.push(u.min(v));
            kept.push(id);
        }
        bound += 2 * l - 2;
    }
    kept.sort_unstable();
    let g_prime = g.with_edges(kept);
    let cert = CoverCertificate::new(CoverKind::TotalVertexCover, VertexSet::new(n, members)?);
    postcondition(connectivity_report(&g_prime).two_connected, "G' is not 2-connected")?;
    postcondition(cert.verify(&g_prime), "S is not a total vertex cover of G'")?;
    postcondition(cert.size() <= bound, "|S| above sum ceil(2|C_i|/3) + 2l - 2")?;
    Ok(Some(CubicTvc { matching: matching.to_vec(), cycles, g_prime, cert, bound }))
}
