//! Doubly periodic total vertex cover patterns on grid lattices.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use super::{CoverCertificate, CoverKind};
use crate::error::{Error, Result};
use crate::graph::{connectivity_report, edge_incident_subgraph, generate, grid_index, Family, Graph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Lattice {
    Square,
    /// Square plus the `(1, 1)` diagonal.
    Triangular,
    /// Square plus both diagonals.
    King,
}

impl Lattice {
    /// One offset per undirected neighbor pair.
    fn forward_offsets(self) -> &'static [(i64, i64)] {
        match self {
            Lattice::Square => &[(1, 0), (0, 1)],
            Lattice::Triangular => &[(1, 0), (0, 1), (1, 1)],
            Lattice::King => &[(1, 0), (0, 1), (1, 1), (1, -1)],
        }
    }

    fn offsets(self) -> impl Iterator<Item = (i64, i64)> {
        self.forward_offsets().iter().flat_map(|&(x, y)| [(x, y), (-x, -y)])
    }

    pub fn family(self, n: usize) -> Family {
        match self {
            Lattice::Square => Family::Grid(n),
            Lattice::Triangular => Family::TriangularGrid(n),
            Lattice::King => Family::KingGrid(n),
        }
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Lattice::Square => "square",
            Lattice::Triangular => "triangular",
            Lattice::King => "king",
        })
    }
}

impl FromStr for Lattice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Lattice> {
        match s {
            "square" | "grid" => Ok(Lattice::Square),
            "triangular" => Ok(Lattice::Triangular),
            "king" => Ok(Lattice::King),
            other => Err(Error::Parse(format!("unknown lattice `{other}`"))),
        }
    }
}

/// A subset of `Z^2` invariant under the lattice spanned by `(p, 0)` and
/// `(shear, q)`, stored by its cells in the box `[0, p) x [0, q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    pub lattice: Lattice,
    pub p: usize,
    pub q: usize,
    pub shear: usize,
    /// Box cells `(x, y)`, sorted by `y * p + x`.
    pub cells: Vec<(usize, usize)>,
}

impl Pattern {
    pub fn area(&self) -> usize {
        self.p * self.q
    }

    pub fn density(&self) -> Ratio<u64> {
        Ratio::new(self.cells.len() as u64, self.area() as u64)
    }

    fn reduce(p: usize, q: usize, shear: usize, x: i64, y: i64) -> usize {
        let (p, q, a) = (p as i64, q as i64, shear as i64);
        let k = y.div_euclid(q);
        let y0 = y - k * q;
        let x0 = (x - k * a).rem_euclid(p);
        (y0 * p + x0) as usize
    }

    fn mask(&self) -> Vec<bool> {
        let mut m = vec![false; self.area()];
        for &(x, y) in &self.cells {
            m[y * self.p + x] = true;
        }
        m
    }

    pub fn contains(&self, x: i64, y: i64) -> bool {
        let idx = Self::reduce(self.p, self.q, self.shear, x, y);
        self.cells.contains(&(idx % self.p, idx / self.p))
    }

    /// Checks the pattern on an `size x size` torus: `S` totally dominates,
    /// and the edges touching `S` form a 2-connected spanning subgraph.
    /// `size` must be a multiple of `p * q`.
    pub fn check_torus(&self, size: usize) -> bool {
        assert!(size % self.area() == 0 && size >= 3);
        let mut edges = Vec::new();
        for y in 0..size {
            for x in 0..size {
                for &(dx, dy) in self.lattice.forward_offsets() {
                    let tx = (x as i64 + dx).rem_euclid(size as i64) as usize;
                    let ty = (y as i64 + dy).rem_euclid(size as i64) as usize;
                    edges.push((y * size + x, ty * size + tx));
                }
            }
        }
        let torus = Graph::new(size * size, edges).expect("torus is simple for size >= 3");
        let members = (0..size * size).filter(|&v| self.contains((v % size) as i64, (v / size) as i64));
        let s = VertexSet::new(size * size, members).unwrap();
        let h = edge_incident_subgraph(&torus, &s).unwrap();
        connectivity_report(&h).two_connected
            && super::verify_cover(&h, &s, CoverKind::TotalVertexCover)
    }

    fn torus_size(&self) -> usize {
        let area = self.area();
        let need = (3 * self.p.max(self.q)).max(6);
        need.div_ceil(area) * area
    }
}

/// Lowest density periodic pattern (fundamental area at most `max_period`,
/// density at most `target`) whose cells totally dominate the lattice and
/// whose touching edges are 2-connected on a torus.
pub fn periodic_pattern_search(
    lattice: Lattice,
    max_period: usize,
    target: Ratio<u64>,
) -> Result<Option<Pattern>> {
    if max_period == 0 || max_period > 12 {
        return Err(Error::InvalidParams("max_period must be in 1..=12".into()));
    }
    let mut budgets: Vec<(usize, usize)> = Vec::new();
    for area in 1..=max_period {
        let most = (target * Ratio::from_integer(area as u64)).to_integer() as usize;
        budgets.extend((1..=most.min(area)).map(|k| (k, area)));
    }
    budgets.sort_by(|&(k1, a1), &(k2, a2)| (k1 * a2).cmp(&(k2 * a1)).then(a1.cmp(&a2)));

    for (k, area) in budgets {
        for p in (1..=area).filter(|p| area % p == 0) {
            let q = area / p;
            for shear in 0..p {
                if let Some(found) = search_shape(lattice, p, q, shear, k) {
                    return Ok(Some(found));
                }
            }
        }
    }
    Ok(None)
}

fn search_shape(lattice: Lattice, p: usize, q: usize, shear: usize, k: usize) -> Option<Pattern> {
    let area = p * q;
    let neighbors: Vec<Vec<usize>> = (0..area)
        .map(|c| {
            let (x, y) = ((c % p) as i64, (c / p) as i64);
            lattice.offsets().map(|(dx, dy)| Pattern::reduce(p, q, shear, x + dx, y + dy)).collect()
        })
        .collect();
    let mut chosen = vec![0usize];
    let mut found = None;
    choose(area, k, &mut chosen, &mut |cells: &[usize]| {
        let mut in_s = vec![false; area];
        for &c in cells {
            in_s[c] = true;
        }
        if !(0..area).all(|c| neighbors[c].iter().any(|&u| in_s[u])) {
            return false;
        }
        let pat = Pattern {
            lattice,
            p,
            q,
            shear,
            cells: cells.iter().map(|&c| (c % p, c / p)).collect(),
        };
        if pat.check_torus(pat.torus_size()) {
            found = Some(pat);
            return true;
        }
        false
    });
    found
}

/// Extends `chosen` (sorted, starting with cell 0) to `k` cells in
/// lexicographic order, stopping when `visit` returns true.
fn choose(area: usize, k: usize, chosen: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if chosen.len() == k {
        return visit(chosen);
    }
    let start = chosen.last().map_or(0, |&c| c + 1);
    for c in start..area {
        if area - c < k - chosen.len() {
            break;
        }
        chosen.push(c);
        let stop = choose(area, k, chosen, visit);
        chosen.pop();
        if stop {
            return true;
        }
    }
    false
}

/// Fills the `n x n` grid of the pattern's lattice with the pattern and adds
/// the outer ring. Among all translations of the pattern the smallest
/// passing set is kept (first one on ties).
pub fn finite_grid_from_pattern(pattern: &Pattern, n: usize) -> Result<(CoverCertificate, Graph)> {
    if n < 3 {
        return Err(Error::InvalidParams("grid needs n >= 3".into()));
    }
    let g = generate(&pattern.lattice.family(n))?;
    let mask = pattern.mask();
    let (k, area) = (pattern.cells.len(), pattern.area());
    let mut best: Option<(CoverCertificate, Graph)> = None;
    for ty in 0..pattern.q {
        for tx in 0..pattern.p {
            let mut members = Vec::new();
            for j in 1..=n {
                for i in 1..=n {
                    let ring = i == 1 || j == 1 || i == n || j == n;
                    let x = (i - 1) as i64 - tx as i64;
                    let y = (j - 1) as i64 - ty as i64;
                    let cell = Pattern::reduce(pattern.p, pattern.q, pattern.shear, x, y);
                    if ring || mask[cell] {
                        members.push(grid_index(n, i, j));
                    }
                }
            }
            let size = members.len();
            if best.as_ref().is_some_and(|(b, _)| b.size() <= size) {
                continue;
            }
            if size * area > k * n * n + 4 * n * area {
                continue;
            }
            let set = VertexSet::new(n * n, members)?;
            let h = edge_incident_subgraph(&g, &set)?;
            let cert = CoverCertificate::new(CoverKind::TotalVertexCover, set);
            if connectivity_report(&h).two_connected && cert.verify(&h) {
                best = Some((cert, h));
            }
        }
    }
    best.ok_or_else(|| {
        Error::Construction(format!("no translation of the pattern works on the {n} x {n} grid"))
    })
}
