use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{CopyId, Host};
use crate::error::{Error, Result};
use crate::graph::{connectivity_report, Graph};

type HostEdge = (usize, usize, usize, usize);

fn normalize(i: usize, p: usize, j: usize, q: usize) -> HostEdge {
    if i <= j {
        (i, p, j, q)
    } else {
        (j, q, i, p)
    }
}

/// Host given by its edge list and its list of special copies.
#[derive(Clone, Debug)]
pub struct ExplicitHost {
    pattern: Graph,
    class_size: usize,
    edges: BTreeSet<HostEdge>,
    copies: Vec<Vec<usize>>,
    owner: HashMap<HostEdge, usize>,
}

#[derive(Serialize, Deserialize)]
struct ExplicitHostJson {
    pattern_n: usize,
    pattern_edges: Vec<[usize; 2]>,
    class_size: usize,
    edges: Vec<[usize; 4]>,
    copies: Vec<Vec<usize>>,
}

impl ExplicitHost {
    /// Edges are `(i, p, j, q)`: position `p` of class `i` joined to position
    /// `q` of class `j`.
    pub fn new(
        pattern: Graph,
        class_size: usize,
        edges: impl IntoIterator<Item = HostEdge>,
        copies: Vec<Vec<usize>>,
    ) -> Result<ExplicitHost> {
        pattern.require_simple()?;
        let n = pattern.n();
        let mut set = BTreeSet::new();
        for (i, p, j, q) in edges {
            if i >= n || j >= n || i == j || p >= class_size || q >= class_size {
                return Err(Error::InvalidParams(format!("host edge ({i},{p})-({j},{q}) out of range")));
            }
            set.insert(normalize(i, p, j, q));
        }
        for copy in &copies {
            if copy.len() != n || copy.iter().any(|&p| p >= class_size) {
                return Err(Error::InvalidParams(format!("malformed copy {copy:?}")));
            }
        }
        let mut owner = HashMap::new();
        for (c, copy) in copies.iter().enumerate() {
            for &(i, j) in pattern.edges() {
                owner.entry(normalize(i, copy[i], j, copy[j])).or_insert(c);
            }
        }
        Ok(ExplicitHost { pattern, class_size, edges: set, copies, owner })
    }

    /// Host whose edges are exactly the edges of the given copies.
    pub fn from_copies(pattern: Graph, class_size: usize, copies: Vec<Vec<usize>>) -> Result<ExplicitHost> {
        let edges: Vec<HostEdge> = copies
            .iter()
            .flat_map(|c| pattern.edges().iter().map(move |&(i, j)| (i, c[i], j, c[j])))
            .collect();
        ExplicitHost::new(pattern, class_size, edges, copies)
    }

    pub fn edges(&self) -> impl Iterator<Item = HostEdge> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn copies(&self) -> &[Vec<usize>] {
        &self.copies
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ExplicitHostJson {
            pattern_n: self.pattern.n(),
            pattern_edges: self.pattern.edges().iter().map(|&(u, v)| [u, v]).collect(),
            class_size: self.class_size,
            edges: self.edges.iter().map(|&(i, p, j, q)| [i, p, j, q]).collect(),
            copies: self.copies.clone(),
        })
        .expect("host serializes")
    }

    pub fn from_json(src: &str) -> Result<ExplicitHost> {
        let raw: ExplicitHostJson = serde_json::from_str(src).map_err(|e| Error::Parse(e.to_string()))?;
        let pattern = Graph::new(raw.pattern_n, raw.pattern_edges.into_iter().map(|[u, v]| (u, v)))?;
        ExplicitHost::new(
            pattern,
            raw.class_size,
            raw.edges.into_iter().map(|[i, p, j, q]| (i, p, j, q)),
            raw.copies,
        )
    }

    fn lookup(&self, i: usize, p: u128, j: usize, q: u128) -> Option<HostEdge> {
        let (p, q) = (usize::try_from(p).ok()?, usize::try_from(q).ok()?);
        let key = normalize(i, p, j, q);
        self.edges.contains(&key).then_some(key)
    }
}

impl Host for ExplicitHost {
    fn pattern(&self) -> &Graph {
        &self.pattern
    }

    fn class_size(&self) -> u128 {
        self.class_size as u128
    }

    fn num_copies(&self) -> u128 {
        self.copies.len() as u128
    }

    fn place(&self, copy: CopyId, class: usize) -> u128 {
        self.copies[copy as usize][class] as u128
    }

    fn is_edge(&self, i: usize, p: u128, j: usize, q: u128) -> bool {
        self.lookup(i, p, j, q).is_some()
    }

    fn edge_copy(&self, i: usize, p: u128, j: usize, q: u128) -> Option<CopyId> {
        self.lookup(i, p, j, q).and_then(|key| self.owner.get(&key)).map(|&c| c as CopyId)
    }
}

/// Limits for the exhaustive faithfulness check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HostCaps {
    pub max_class_size: usize,
    pub max_classes: usize,
}

impl Default for HostCaps {
    fn default() -> Self {
        HostCaps { max_class_size: 128, max_classes: 8 }
    }
}

pub fn verify_faithful(host: &ExplicitHost) -> Result<bool> {
    verify_faithful_with(host, &HostCaps::default())
}

/// Checks that the listed copies partition the host edges and that a
/// backtracking search (pattern vertices in BFS order, extending along host
/// edges) finds no special copy outside the list.
pub fn verify_faithful_with(host: &ExplicitHost, caps: &HostCaps) -> Result<bool> {
    let pattern = &host.pattern;
    let n = pattern.n();
    if host.class_size > caps.max_class_size {
        return Err(Error::CapExceeded { what: "host class size", size: host.class_size, cap: caps.max_class_size });
    }
    if n > caps.max_classes {
        return Err(Error::CapExceeded { what: "host classes", size: n, cap: caps.max_classes });
    }
    if n < 2 || !connectivity_report(pattern).connected {
        return Err(Error::InvalidParams("pattern must be connected with n >= 2".into()));
    }

    let mut seen = HashSet::new();
    for copy in &host.copies {
        for &(i, j) in pattern.edges() {
            let key = normalize(i, copy[i], j, copy[j]);
            if !host.edges.contains(&key) || !seen.insert(key) {
                return Ok(false);
            }
        }
    }
    if seen.len() != host.edges.len() {
        return Ok(false);
    }
    Ok(find_special_copy(host, |tuple| !host.copies.iter().any(|c| c == tuple)).is_none())
}

/// First special copy (in search order) satisfying `wanted`.
fn find_special_copy(host: &ExplicitHost, mut wanted: impl FnMut(&[usize]) -> bool) -> Option<Vec<usize>> {
    let pattern = &host.pattern;
    let n = pattern.n();
    let mut order = vec![0];
    let mut pos_in_order = vec![usize::MAX; n];
    pos_in_order[0] = 0;
    let mut queue = VecDeque::from([0]);
    while let Some(u) = queue.pop_front() {
        for w in pattern.neighbors(u) {
            if pos_in_order[w] == usize::MAX {
                pos_in_order[w] = order.len();
                order.push(w);
                queue.push_back(w);
            }
        }
    }
    // pattern neighbors placed earlier, for every vertex in order
    let earlier: Vec<Vec<usize>> = order
        .iter()
        .map(|&v| pattern.neighbors(v).filter(|&u| pos_in_order[u] < pos_in_order[v]).collect())
        .collect();
    let mut adj: HashMap<(usize, usize), Vec<(usize, usize)>> = HashMap::new();
    for &(i, p, j, q) in &host.edges {
        adj.entry((i, p)).or_default().push((j, q));
        adj.entry((j, q)).or_default().push((i, p));
    }

    fn rec(
        t: usize,
        order: &[usize],
        earlier: &[Vec<usize>],
        host: &ExplicitHost,
        adj: &HashMap<(usize, usize), Vec<(usize, usize)>>,
        tuple: &mut Vec<usize>,
        wanted: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if t == order.len() {
            return wanted(tuple);
        }
        let v = order[t];
        let candidates: Vec<usize> = match earlier[t].first() {
            None => (0..host.class_size).collect(),
            Some(&u) => adj
                .get(&(u, tuple[u]))
                .map(|l| l.iter().filter(|&&(c, _)| c == v).map(|&(_, q)| q).collect())
                .unwrap_or_default(),
        };
        for q in candidates {
            if earlier[t].iter().all(|&u| host.edges.contains(&normalize(u, tuple[u], v, q))) {
                tuple[v] = q;
                if rec(t + 1, order, earlier, host, adj, tuple, wanted) {
                    return true;
                }
            }
        }
        false
    }

    let mut tuple = vec![usize::MAX; n];
    rec(0, &order, &earlier, host, &adj, &mut tuple, &mut wanted).then_some(tuple)
}

/// `c` vertex-disjoint copies of `h`: copy `t` uses position `t` everywhere.
pub fn disjoint_copies_host(h: &Graph, c: usize) -> Result<ExplicitHost> {
    if c == 0 || !connectivity_report(h).connected {
        return Err(Error::InvalidParams("need a connected pattern and c >= 1".into()));
    }
    ExplicitHost::from_copies(h.clone(), c, (0..c).map(|t| vec![t; h.n()]).collect())
}

const SEARCH_BUDGET: usize = 200_000;

/// Depth-first search for a faithful host with at least `min_copies` copies,
/// adding candidate copies in lexicographic order. `None` when the node
/// budget runs out first.
pub fn brute_force_host_search(h: &Graph, class_size: usize, min_copies: usize) -> Result<Option<ExplicitHost>> {
    let n = h.n();
    if n > 5 || class_size > 6 {
        return Err(Error::CapExceeded { what: "brute-force host", size: n.max(class_size), cap: 5 });
    }
    if n < 2 || class_size == 0 || !connectivity_report(h).connected {
        return Err(Error::InvalidParams("need a connected pattern with n >= 2".into()));
    }
    let tuples: Vec<Vec<usize>> = (0..class_size.pow(n as u32))
        .map(|mut code| {
            let mut t = vec![0; n];
            for slot in t.iter_mut().rev() {
                *slot = code % class_size;
                code /= class_size;
            }
            t
        })
        .collect();

    struct State<'a> {
        h: &'a Graph,
        class_size: usize,
        tuples: &'a [Vec<usize>],
        min_copies: usize,
        nodes: usize,
    }

    fn rec(st: &mut State, start: usize, chosen: &mut Vec<usize>, used: &mut HashSet<HostEdge>) -> Option<ExplicitHost> {
        st.nodes += 1;
        if st.nodes > SEARCH_BUDGET {
            return None;
        }
        let copies: Vec<Vec<usize>> = chosen.iter().map(|&c| st.tuples[c].clone()).collect();
        let host = ExplicitHost::from_copies(st.h.clone(), st.class_size, copies).ok()?;
        if !chosen.is_empty() && find_special_copy(&host, |t| !host.copies.iter().any(|c| c == t)).is_some() {
            return None;
        }
        if chosen.len() >= st.min_copies {
            return Some(host);
        }
        for next in start..st.tuples.len() {
            let t = &st.tuples[next];
            let keys: Vec<HostEdge> = st.h.edges().iter().map(|&(i, j)| normalize(i, t[i], j, t[j])).collect();
            if keys.iter().any(|k| used.contains(k)) {
                continue;
            }
            used.extend(keys.iter().copied());
            chosen.push(next);
            let found = rec(st, next + 1, chosen, used);
            chosen.pop();
            for k in &keys {
                used.remove(k);
            }
            if found.is_some() || st.nodes > SEARCH_BUDGET {
                return found;
            }
        }
        None
    }

    let mut st = State { h, class_size, tuples: &tuples, min_copies, nodes: 0 };
    Ok(rec(&mut st, 0, &mut Vec::new(), &mut HashSet::new()))
}
