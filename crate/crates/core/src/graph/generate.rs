use std::collections::HashSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{connectivity_report, Graph};
use crate::error::{Error, Result};

const MAX_ATTEMPTS: usize = 100_000;

/// Graph families with their vertex numbering.
///
/// Grids use 1-based coordinates `(i, j)` with `i` the column and `j` the
/// row; `(i, j)` is vertex `(j - 1) * n + (i - 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// `i -- i+1 mod n`.
    Cycle(usize),
    Path(usize),
    Complete(usize),
    /// Parts `0..a` and `a..a+b`.
    CompleteBipartite(usize, usize),
    /// Center 0 with `k` leaves.
    Star(usize),
    /// Vertices are bitmasks, edges flip one bit.
    Hypercube(usize),
    Grid(usize),
    /// Square grid plus the diagonals `(i, j) -- (i+1, j+1)`.
    TriangularGrid(usize),
    /// Square grid plus both diagonals (strong product of two paths).
    KingGrid(usize),
    /// Two `n`-cycles `0..n` and `n..2n` joined by the rungs `i -- n+i`.
    Prism(usize),
    /// Outer cycle `0..5`, spokes `i -- i+5`, inner pentagram.
    Petersen,
    /// Pairing model with rejection of loops and multi-edges.
    RandomRegular { n: usize, d: usize, seed: u64 },
    /// Uniform labelled tree from a random Prüfer sequence.
    RandomTree { n: usize, seed: u64 },
    /// `G(n, p)` with `p = p_percent / 100`, resampled until connected.
    RandomConnected { n: usize, p_percent: u32, seed: u64 },
}

impl Family {
    /// Builds a family from a CLI style name and integer parameters.
    pub fn parse(name: &str, params: &[usize], seed: u64) -> Result<Family> {
        let want = |k: usize| -> Result<()> {
            if params.len() == k {
                Ok(())
            } else {
                Err(Error::InvalidParams(format!(
                    "family `{name}` takes {k} parameter(s), got {}",
                    params.len()
                )))
            }
        };
        let fam = match name {
            "cycle" => { want(1)?; Family::Cycle(params[0]) }
            "path" => { want(1)?; Family::Path(params[0]) }
            "complete" => { want(1)?; Family::Complete(params[0]) }
            "bipartite" | "complete-bipartite" => {
                want(2)?;
                Family::CompleteBipartite(params[0], params[1])
            }
            "star" => { want(1)?; Family::Star(params[0]) }
            "hypercube" => { want(1)?; Family::Hypercube(params[0]) }
            "grid" => { want(1)?; Family::Grid(params[0]) }
            "triangular" => { want(1)?; Family::TriangularGrid(params[0]) }
            "king" => { want(1)?; Family::KingGrid(params[0]) }
            "prism" => { want(1)?; Family::Prism(params[0]) }
            "petersen" => { want(0)?; Family::Petersen }
            "regular" => {
                want(2)?;
                Family::RandomRegular { n: params[0], d: params[1], seed }
            }
            "tree" => { want(1)?; Family::RandomTree { n: params[0], seed } }
            "gnp" => {
                want(2)?;
                let p_percent = u32::try_from(params[1])
                    .map_err(|_| Error::InvalidParams("p_percent too large".into()))?;
                Family::RandomConnected { n: params[0], p_percent, seed }
            }
            other => return Err(Error::InvalidParams(format!("unknown family `{other}`"))),
        };
        Ok(fam)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Cycle(n) => write!(f, "cycle-{n}"),
            Family::Path(n) => write!(f, "path-{n}"),
            Family::Complete(n) => write!(f, "complete-{n}"),
            Family::CompleteBipartite(a, b) => write!(f, "bipartite-{a}-{b}"),
            Family::Star(k) => write!(f, "star-{k}"),
            Family::Hypercube(d) => write!(f, "hypercube-{d}"),
            Family::Grid(n) => write!(f, "grid-{n}"),
            Family::TriangularGrid(n) => write!(f, "triangular-{n}"),
            Family::KingGrid(n) => write!(f, "king-{n}"),
            Family::Prism(n) => write!(f, "prism-{n}"),
            Family::Petersen => write!(f, "petersen"),
            Family::RandomRegular { n, d, seed } => write!(f, "regular-{n}-{d}-s{seed}"),
            Family::RandomTree { n, seed } => write!(f, "tree-{n}-s{seed}"),
            Family::RandomConnected { n, p_percent, seed } => {
                write!(f, "gnp-{n}-{p_percent}-s{seed}")
            }
        }
    }
}

/// Vertex index of grid coordinates `(i, j)`, both in `1..=n`.
pub fn grid_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!((1..=n).contains(&i) && (1..=n).contains(&j));
    (j - 1) * n + (i - 1)
}

/// Inverse of [`grid_index`].
pub fn grid_coords(n: usize, v: usize) -> (usize, usize) {
    (v % n + 1, v / n + 1)
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParams(msg.into())
}

pub fn generate(family: &Family) -> Result<Graph> {
    match *family {
        Family::Cycle(n) => {
            if n < 3 {
                return Err(invalid("cycle needs n >= 3"));
            }
            Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
        }
        Family::Path(n) => {
            if n < 1 {
                return Err(invalid("path needs n >= 1"));
            }
            Graph::new(n, (1..n).map(|i| (i - 1, i)))
        }
        Family::Complete(n) => {
            if n < 1 {
                return Err(invalid("complete graph needs n >= 1"));
            }
            Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
        }
        Family::CompleteBipartite(a, b) => {
            if a < 1 || b < 1 {
                return Err(invalid("both parts must be nonempty"));
            }
            Graph::new(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
        }
        Family::Star(k) => Graph::new(k + 1, (1..=k).map(|v| (0, v))),
        Family::Hypercube(d) => {
            if d > 20 {
                return Err(invalid("hypercube dimension above 20"));
            }
            let n = 1usize << d;
            Graph::new(
                n,
                (0..n).flat_map(|x| {
                    (0..d).filter(move |b| x >> b & 1 == 0).map(move |b| (x, x | 1 << b))
                }),
            )
        }
        Family::Grid(n) => grid_like(n, false, false),
        Family::TriangularGrid(n) => grid_like(n, true, false),
        Family::KingGrid(n) => grid_like(n, true, true),
        Family::Prism(n) => {
            if n < 3 {
                return Err(invalid("prism needs n >= 3"));
            }
            let mut edges = Vec::new();
            for i in 0..n {
                edges.push((i, (i + 1) % n));
                edges.push((n + i, n + (i + 1) % n));
                edges.push((i, n + i));
            }
            Graph::new(2 * n, edges)
        }
        Family::Petersen => {
            let mut edges = Vec::new();
            for i in 0..5 {
                edges.push((i, (i + 1) % 5));
                edges.push((i, i + 5));
                edges.push((i + 5, (i + 2) % 5 + 5));
            }
            Graph::new(10, edges)
        }
        Family::RandomRegular { n, d, seed } => random_regular(n, d, seed),
        Family::RandomTree { n, seed } => random_tree(n, seed),
        Family::RandomConnected { n, p_percent, seed } => random_connected(n, p_percent, seed),
    }
}

fn grid_like(n: usize, diag: bool, anti: bool) -> Result<Graph> {
    if n < 2 {
        return Err(invalid("grid needs n >= 2"));
    }
    let idx = |i, j| grid_index(n, i, j);
    let mut edges = Vec::new();
    for j in 1..=n {
        for i in 1..=n {
            if i < n {
                edges.push((idx(i, j), idx(i + 1, j)));
            }
            if j < n {
                edges.push((idx(i, j), idx(i, j + 1)));
            }
            if diag && i < n && j < n {
                edges.push((idx(i, j), idx(i + 1, j + 1)));
            }
            if anti && i < n && j < n {
                edges.push((idx(i + 1, j), idx(i, j + 1)));
            }
        }
    }
    Graph::new(n * n, edges)
}

fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph> {
    if d >= n || (n * d) % 2 == 1 {
        return Err(invalid(format!("no simple {d}-regular graph on {n} vertices")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<usize> = (0..n * d).map(|p| p / d).collect();
    'attempt: for _ in 0..MAX_ATTEMPTS {
        points.shuffle(&mut rng);
        let mut seen = HashSet::new();
        let mut edges = Vec::with_capacity(n * d / 2);
        for pair in points.chunks(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u == v || !seen.insert((u, v)) {
                continue 'attempt;
            }
            edges.push((u, v));
        }
        edges.sort_unstable();
        return Graph::new(n, edges);
    }
    Err(Error::Construction(format!(
        "pairing model rejected {MAX_ATTEMPTS} pairings for n = {n}, d = {d}"
    )))
}

fn random_tree(n: usize, seed: u64) -> Result<Graph> {
    match n {
        0 => return Err(invalid("tree needs n >= 1")),
        1 => return Ok(Graph::empty(1)),
        2 => return Graph::new(2, [(0, 1)]),
        _ => {}
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let prufer: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &v in &prufer {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &v in &prufer {
        let leaf = (0..n).find(|&u| degree[u] == 1).expect("a leaf exists");
        edges.push((leaf, v));
        degree[leaf] -= 1;
        degree[v] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&u| degree[u] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::new(n, edges)
}

fn random_connected(n: usize, p_percent: u32, seed: u64) -> Result<Graph> {
    if n < 1 || p_percent == 0 || p_percent > 100 {
        return Err(invalid("gnp needs n >= 1 and 0 < p_percent <= 100"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_range(0..100) < p_percent {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::new(n, edges)?;
        if connectivity_report(&g).connected {
            return Ok(g);
        }
    }
    Err(Error::Construction(format!(
        "no connected G({n}, {p_percent}%) sample in {MAX_ATTEMPTS} attempts"
    )))
}

/// Every connected simple graph on `n <= 6` vertices up to isomorphism, each
/// in its lexicographically smallest labelling.
pub fn all_connected_graphs(n: usize) -> Result<Vec<Graph>> {
    if n == 0 || n > 6 {
        return Err(invalid("all_connected_graphs supports 1 <= n <= 6"));
    }
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let pair_index = |u: usize, v: usize| {
        pairs.iter().position(|&p| p == (u.min(v), u.max(v))).unwrap()
    };
    let mut perms = Vec::new();
    permutations(&mut (0..n).collect(), 0, &mut perms);
    // image of each pair bit under each permutation
    let maps: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| pairs.iter().map(|&(u, v)| pair_index(p[u], p[v])).collect())
        .collect();

    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let canonical = maps.iter().all(|map| {
            (0..pairs.len())
                .filter(|&b| mask >> b & 1 == 1)
                .fold(0u32, |acc, b| acc | 1 << map[b])
                >= mask
        });
        if !canonical {
            continue;
        }
        let g = Graph::new(
            n,
            (0..pairs.len()).filter(|&b| mask >> b & 1 == 1).map(|b| pairs[b]),
        )?;
        if connectivity_report(&g).connected {
            out.push(g);
        }
    }
    Ok(out)
}

fn permutations(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, out);
        items.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::girth;

    #[test]
    fn basic_families() {
        let c5 = generate(&Family::Cycle(5)).unwrap();
        assert_eq!((c5.n(), c5.edge_count(), c5.regular_degree()), (5, 5, Some(2)));
        let q3 = generate(&Family::Hypercube(3)).unwrap();
        assert_eq!((q3.n(), q3.edge_count(), q3.regular_degree()), (8, 12, Some(3)));
        let pet = generate(&Family::Petersen).unwrap();
        assert_eq!((pet.edge_count(), pet.regular_degree(), girth(&pet)), (15, Some(3), Some(5)));
        let prism = generate(&Family::Prism(3)).unwrap();
        assert_eq!(prism.regular_degree(), Some(3));
        let k23 = generate(&Family::CompleteBipartite(2, 3)).unwrap();
        assert_eq!(k23.edge_count(), 6);
        assert!(generate(&Family::Cycle(2)).is_err());
    }

    #[test]
    fn grid_numbering() {
        assert_eq!(grid_index(5, 1, 1), 0);
        assert_eq!(grid_index(5, 2, 1), 1);
        assert_eq!(grid_index(5, 1, 2), 5);
        for v in 0..25 {
            let (i, j) = grid_coords(5, v);
            assert_eq!(grid_index(5, i, j), v);
        }
        let g = generate(&Family::Grid(4)).unwrap();
        assert_eq!(g.edge_count(), 2 * 4 * 3);
        assert!(g.has_edge(grid_index(4, 1, 1), grid_index(4, 2, 1)));
        let t = generate(&Family::TriangularGrid(4)).unwrap();
        assert_eq!(t.edge_count(), 24 + 9);
        assert!(t.has_edge(grid_index(4, 1, 1), grid_index(4, 2, 2)));
        let k = generate(&Family::KingGrid(4)).unwrap();
        assert_eq!(k.edge_count(), 24 + 18);
        assert_eq!(k.max_degree(), 8);
    }

    #[test]
    fn random_regular_is_simple_and_deterministic() {
        for seed in 0..20 {
            let f = Family::RandomRegular { n: 10, d: 3, seed };
            let g = generate(&f).unwrap();
            assert_eq!(g.regular_degree(), Some(3));
            assert!(!g.is_multigraph());
            assert_eq!(g, generate(&f).unwrap());
        }
        assert!(generate(&Family::RandomRegular { n: 7, d: 3, seed: 0 }).is_err());
    }

    #[test]
    fn random_trees_are_trees() {
        for seed in 0..20 {
            let g = generate(&Family::RandomTree { n: 14, seed }).unwrap();
            assert!(crate::graph::is_tree(&g));
        }
    }

    #[test]
    fn connected_graph_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| all_connected_graphs(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn parse_names() {
        assert_eq!(Family::parse("cycle", &[9], 1).unwrap(), Family::Cycle(9));
        assert_eq!(
            Family::parse("regular", &[10, 3], 7).unwrap(),
            Family::RandomRegular { n: 10, d: 3, seed: 7 }
        );
        assert!(Family::parse("cycle", &[], 1).is_err());
        assert!(Family::parse("moebius", &[3], 1).is_err());
    }
}
