//! Covering structures: verification, exact minimum, and constructions.

mod construct;
mod exact;
mod pattern;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{connectivity_report, edge_incident_subgraph, Graph, VertexSet};

pub use construct::{
    cubic_large_girth_tvc, cycle_order_tvc, cycle_tvc, grid_tvc, hypercube_tvc,
    tree_vertex_cover, wcds_from_dominating, CubicTvc, HypercubeTvc,
};
pub use exact::{minimum_cover_exact, minimum_cover_exact_with};
pub use pattern::{finite_grid_from_pattern, periodic_pattern_search, Lattice, Pattern};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverKind {
    Dominating,
    TotalDominating,
    VertexCover,
    TotalVertexCover,
    /// Edges touching the set form a spanning connected subgraph.
    #[serde(rename = "wcds")]
    WeaklyConnectedDominating,
    /// Edges touching the set form a spanning 2-connected subgraph.
    #[serde(rename = "tvc_down")]
    TvcDownWitness,
}

impl CoverKind {
    pub const ALL: [CoverKind; 6] = [
        CoverKind::Dominating,
        CoverKind::TotalDominating,
        CoverKind::VertexCover,
        CoverKind::TotalVertexCover,
        CoverKind::WeaklyConnectedDominating,
        CoverKind::TvcDownWitness,
    ];

    pub fn short_name(self) -> &'static str {
        match self {
            CoverKind::Dominating => "dom",
            CoverKind::TotalDominating => "tdom",
            CoverKind::VertexCover => "vc",
            CoverKind::TotalVertexCover => "tvc",
            CoverKind::WeaklyConnectedDominating => "wcds",
            CoverKind::TvcDownWitness => "tvcdown",
        }
    }
}

impl fmt::Display for CoverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for CoverKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<CoverKind> {
        let kind = match s {
            "dom" | "dominating" => CoverKind::Dominating,
            "tdom" | "total_dominating" => CoverKind::TotalDominating,
            "vc" | "vertex_cover" => CoverKind::VertexCover,
            "tvc" | "total_vertex_cover" => CoverKind::TotalVertexCover,
            "wcds" | "wds" => CoverKind::WeaklyConnectedDominating,
            "tvcdown" | "tvc_down" => CoverKind::TvcDownWitness,
            other => return Err(Error::Parse(format!("unknown cover kind `{other}`"))),
        };
        Ok(kind)
    }
}

/// A vertex set together with the kind of cover it claims to be.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverCertificate {
    pub kind: CoverKind,
    pub set: VertexSet,
}

#[derive(Serialize, Deserialize)]
struct CertificateJson {
    kind: CoverKind,
    set: Vec<usize>,
    size: usize,
}

impl CoverCertificate {
    pub fn new(kind: CoverKind, set: VertexSet) -> Self {
        CoverCertificate { kind, set }
    }

    pub fn size(&self) -> usize {
        self.set.len()
    }

    pub fn verify(&self, g: &Graph) -> bool {
        verify_cover(g, &self.set, self.kind)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&CertificateJson {
            kind: self.kind,
            set: self.set.members().to_vec(),
            size: self.size(),
        })
        .expect("certificate serializes")
    }

    /// Parses the JSON form for a graph on `n` vertices.
    pub fn from_json(src: &str, n: usize) -> Result<CoverCertificate> {
        let raw: CertificateJson =
            serde_json::from_str(src).map_err(|e| Error::Parse(e.to_string()))?;
        let set = VertexSet::new(n, raw.set)?;
        if set.len() != raw.size {
            return Err(Error::Parse(format!(
                "size field {} disagrees with {} listed vertices",
                raw.size,
                set.len()
            )));
        }
        Ok(CoverCertificate { kind: raw.kind, set })
    }
}

fn dominated(g: &Graph, ind: &[bool], v: usize) -> bool {
    ind[v] || g.neighbors(v).any(|u| ind[u])
}

fn totally_dominated(g: &Graph, ind: &[bool], v: usize) -> bool {
    g.neighbors(v).any(|u| ind[u])
}

/// Whether `s` is a cover of the given kind. Never errors: malformed input
/// (wrong `parent_n`, multigraph for the simple kinds) is just `false`.
pub fn verify_cover(g: &Graph, s: &VertexSet, kind: CoverKind) -> bool {
    if s.parent_n() != g.n() {
        return false;
    }
    let ind = s.indicator();
    let n = g.n();
    let is_dom = || (0..n).all(|v| dominated(g, &ind, v));
    let is_tdom = || (0..n).all(|v| totally_dominated(g, &ind, v));
    let is_vc = || g.edges().iter().all(|&(u, v)| ind[u] || ind[v]);
    match kind {
        CoverKind::Dominating => is_dom(),
        CoverKind::TotalDominating => is_tdom(),
        CoverKind::VertexCover => is_vc(),
        CoverKind::TotalVertexCover => is_vc() && is_tdom(),
        CoverKind::WeaklyConnectedDominating => {
            is_dom() && connectivity_report(&edge_incident_subgraph(g, s).unwrap()).connected
        }
        CoverKind::TvcDownWitness => {
            connectivity_report(&edge_incident_subgraph(g, s).unwrap()).two_connected
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    fn set(n: usize, v: &[usize]) -> VertexSet {
        VertexSet::new(n, v.iter().copied()).unwrap()
    }

    #[test]
    fn verify_examples() {
        let c6 = generate(&Family::Cycle(6)).unwrap();
        assert!(verify_cover(&c6, &set(6, &[1, 2, 4, 5]), CoverKind::TotalVertexCover));
        let k23 = generate(&Family::CompleteBipartite(2, 3)).unwrap();
        assert!(verify_cover(&k23, &set(5, &[0, 1, 2]), CoverKind::TotalVertexCover));
        assert!(!verify_cover(&k23, &set(5, &[0, 1]), CoverKind::TotalVertexCover));
        let p3 = generate(&Family::Path(3)).unwrap();
        assert!(!verify_cover(&p3, &set(3, &[1]), CoverKind::TotalDominating));
        assert!(verify_cover(&p3, &set(3, &[1]), CoverKind::Dominating));
        assert!(verify_cover(&p3, &set(3, &[1]), CoverKind::WeaklyConnectedDominating));
        assert!(!verify_cover(&c6, &set(6, &[0, 3]), CoverKind::WeaklyConnectedDominating));
        assert!(verify_cover(&c6, &set(6, &[0, 2, 4]), CoverKind::TvcDownWitness));
        assert!(!verify_cover(&c6, &set(5, &[0]), CoverKind::Dominating));
        let lonely = Graph::new(3, [(0, 1)]).unwrap();
        assert!(!verify_cover(&lonely, &VertexSet::full(3), CoverKind::TotalDominating));
    }

    #[test]
    fn kind_names_round_trip() {
        for kind in CoverKind::ALL {
            assert_eq!(kind.short_name().parse::<CoverKind>().unwrap(), kind);
            let js = serde_json::to_string(&kind).unwrap();
            assert_eq!(serde_json::from_str::<CoverKind>(&js).unwrap(), kind);
        }
        assert!("nope".parse::<CoverKind>().is_err());
    }

    #[test]
    fn certificate_json() {
        let cert = CoverCertificate::new(CoverKind::TotalVertexCover, set(6, &[1, 2, 4, 5]));
        let js = cert.to_json();
        assert_eq!(js, r#"{"kind":"total_vertex_cover","set":[1,2,4,5],"size":4}"#);
        assert_eq!(CoverCertificate::from_json(&js, 6).unwrap(), cert);
        assert!(CoverCertificate::from_json(r#"{"kind":"wcds","set":[1],"size":2}"#, 6).is_err());
    }
}
