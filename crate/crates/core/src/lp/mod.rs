//! Exact fractional cut-boundary and ball bounds.
//!
//! The covering programs put a weight `x(v)` on every vertex so that every
//! boundary (resp. closed neighborhood) receives total weight at least 1; the
//! packing programs are their duals. Both are solved by one exact simplex
//! run on the packing side, whose final tableau also yields the covering
//! solution.

mod simplex;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::{connectivity_report, Graph, VertexSet};

pub type Rational = BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Always `num/den`, even for integers.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    let (num, den) = s.trim().split_once('/').unwrap_or((s.trim(), "1"));
    let num: BigInt = num.trim().parse().map_err(|_| bad())?;
    let den: BigInt = den.trim().parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LpProgram {
    CovBnd,
    PackBnd,
    CovBalls,
    PackBalls,
}

impl fmt::Display for LpProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LpProgram::CovBnd => "cov_bnd",
            LpProgram::PackBnd => "pack_bnd",
            LpProgram::CovBalls => "cov_balls",
            LpProgram::PackBalls => "pack_balls",
        })
    }
}

impl FromStr for LpProgram {
    type Err = Error;

    fn from_str(s: &str) -> Result<LpProgram> {
        match s {
            "cov_bnd" => Ok(LpProgram::CovBnd),
            "pack_bnd" => Ok(LpProgram::PackBnd),
            "cov_balls" => Ok(LpProgram::CovBalls),
            "pack_balls" => Ok(LpProgram::PackBalls),
            other => Err(Error::Parse(format!("unknown program `{other}`"))),
        }
    }
}

/// What an LP variable is attached to.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LpObject {
    Vertex(usize),
    Boundary(Vec<usize>),
    /// Closed neighborhood of a vertex.
    Ball(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub program: LpProgram,
    pub objective: Rational,
    /// Nonzero primal values only.
    pub values: Vec<(LpObject, Rational)>,
    /// Optimal solution of the dual program (nonzero values only).
    pub dual: Option<Vec<(LpObject, Rational)>>,
}

#[derive(Serialize, Deserialize)]
struct ValueJson {
    object: LpObject,
    value: String,
}

#[derive(Serialize, Deserialize)]
struct SolutionJson {
    program: LpProgram,
    objective: String,
    values: Vec<ValueJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dual: Option<Vec<ValueJson>>,
}

fn values_to_json(v: &[(LpObject, Rational)]) -> Vec<ValueJson> {
    v.iter()
        .map(|(o, r)| ValueJson { object: o.clone(), value: format_rational(r) })
        .collect()
}

fn values_from_json(v: Vec<ValueJson>) -> Result<Vec<(LpObject, Rational)>> {
    v.into_iter().map(|e| Ok((e.object, parse_rational(&e.value)?))).collect()
}

impl LpSolution {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&SolutionJson {
            program: self.program,
            objective: format_rational(&self.objective),
            values: values_to_json(&self.values),
            dual: self.dual.as_deref().map(values_to_json),
        })
        .expect("solution serializes")
    }

    pub fn from_json(src: &str) -> Result<LpSolution> {
        let raw: SolutionJson = serde_json::from_str(src).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(LpSolution {
            program: raw.program,
            objective: parse_rational(&raw.objective)?,
            values: values_from_json(raw.values)?,
            dual: raw.dual.map(values_from_json).transpose()?,
        })
    }

    /// Exact check of nonnegativity, every constraint, the objective, and
    /// (when present) dual feasibility with an equal dual objective.
    pub fn verify(&self, g: &Graph) -> bool {
        let constraints = match self.program {
            LpProgram::CovBnd | LpProgram::PackBnd => match enumerate_boundaries(g) {
                Ok(b) => b,
                Err(_) => return false,
            },
            LpProgram::CovBalls | LpProgram::PackBalls => balls(g),
        };
        let covering = matches!(self.program, LpProgram::CovBnd | LpProgram::CovBalls);
        let (cover, pack) = if covering {
            (Some(&self.values), self.dual.as_ref())
        } else {
            (self.dual.as_ref(), Some(&self.values))
        };
        let sum = |v: &[(LpObject, Rational)]| v.iter().map(|(_, r)| r.clone()).sum::<Rational>();
        if sum(&self.values) != self.objective {
            return false;
        }
        if let Some(dual) = &self.dual {
            if sum(dual) != self.objective {
                return false;
            }
        }
        if let Some(x) = cover {
            if !covering_feasible(g, &constraints, x) {
                return false;
            }
        }
        if let Some(y) = pack {
            let is_bnd = matches!(self.program, LpProgram::CovBnd | LpProgram::PackBnd);
            if !packing_feasible(g, &constraints, y, is_bnd) {
                return false;
            }
        }
        true
    }
}

fn covering_feasible(g: &Graph, constraints: &[VertexSet], x: &[(LpObject, Rational)]) -> bool {
    let mut weight = vec![Rational::zero(); g.n()];
    for (obj, r) in x {
        match obj {
            LpObject::Vertex(v) if *v < g.n() && !r.is_negative() => weight[*v] += r,
            _ => return false,
        }
    }
    constraints
        .iter()
        .all(|c| c.iter().map(|v| weight[v].clone()).sum::<Rational>() >= Rational::one())
}

fn packing_feasible(g: &Graph, constraints: &[VertexSet], y: &[(LpObject, Rational)], bnd: bool) -> bool {
    let mut load = vec![Rational::zero(); g.n()];
    for (obj, r) in y {
        if r.is_negative() {
            return false;
        }
        let members: Vec<usize> = match (obj, bnd) {
            (LpObject::Boundary(b), true) => {
                match VertexSet::new(g.n(), b.iter().copied()) {
                    Ok(set) if constraints.contains(&set) => set.members().to_vec(),
                    _ => return false,
                }
            }
            (LpObject::Ball(v), false) if *v < g.n() => constraints[*v].members().to_vec(),
            _ => return false,
        };
        for v in members {
            load[v] += r;
        }
    }
    load.iter().all(|l| *l <= Rational::one())
}

fn balls(g: &Graph) -> Vec<VertexSet> {
    (0..g.n())
        .map(|v| VertexSet::new(g.n(), g.neighbors(v).chain([v])).unwrap())
        .collect()
}

fn boundary_masks(g: &Graph, caps: &Caps) -> Result<(Vec<u64>, Vec<u64>)> {
    g.require_simple()?;
    let n = g.n();
    if n > caps.lp_boundary.min(63) {
        return Err(Error::CapExceeded { what: "boundary LP", size: n, cap: caps.lp_boundary.min(63) });
    }
    if n < 2 || !connectivity_report(g).connected {
        return Err(Error::NotConnected);
    }
    let nb = g.neighbor_masks();
    let full = (1u64 << n) - 1;
    let mut raw = Vec::with_capacity((1 << (n - 1)) - 1);
    // S and its complement share a boundary; fix vertex n-1 outside S
    for s in 1u64..1 << (n - 1) {
        let out = full & !s;
        let b = (0..n).fold(0u64, |acc, v| {
            let inside = s >> v & 1 == 1;
            let other = if inside { out } else { s };
            if nb[v] & other != 0 {
                acc | 1 << v
            } else {
                acc
            }
        });
        raw.push(b);
    }
    let mut distinct: Vec<u64> = raw.iter().copied().collect::<HashSet<_>>().into_iter().collect();
    distinct.sort_by_key(|&b| (b.count_ones(), b));
    let mut minimal: Vec<u64> = Vec::new();
    for b in distinct {
        if !minimal.iter().any(|&m| m & b == m) {
            minimal.push(b);
        }
    }
    minimal.sort_unstable();
    Ok((raw, minimal))
}

/// Inclusion-minimal boundaries `B(S)` over all `{} != S != V`.
pub fn enumerate_boundaries(g: &Graph) -> Result<Vec<VertexSet>> {
    enumerate_boundaries_with(g, &Caps::default())
}

pub fn enumerate_boundaries_with(g: &Graph, caps: &Caps) -> Result<Vec<VertexSet>> {
    let (_, minimal) = boundary_masks(g, caps)?;
    Ok(minimal.into_iter().map(|m| VertexSet::from_mask(g.n(), m)).collect())
}

/// One boundary per cut `{S, V \ S}`, duplicates and supersets kept.
pub fn enumerate_boundaries_raw(g: &Graph) -> Result<Vec<VertexSet>> {
    let (raw, _) = boundary_masks(g, &Caps::default())?;
    Ok(raw.into_iter().map(|m| VertexSet::from_mask(g.n(), m)).collect())
}

fn nonzero<T>(objs: impl IntoIterator<Item = (T, Rational)>) -> Vec<(T, Rational)> {
    objs.into_iter().filter(|(_, r)| !r.is_zero()).collect()
}

fn solve_over(g: &Graph, sets: &[VertexSet]) -> simplex::PackingOptimum {
    let columns: Vec<Vec<usize>> = sets.iter().map(|s| s.members().to_vec()).collect();
    simplex::solve_packing(g.n(), &columns)
}

fn boundary_solution(g: &Graph, caps: &Caps, covering: bool) -> Result<LpSolution> {
    let sets = enumerate_boundaries_with(g, caps)?;
    let opt = solve_over(g, &sets);
    let x = nonzero(opt.dual.into_iter().enumerate().map(|(v, r)| (LpObject::Vertex(v), r)));
    let y = nonzero(
        sets.iter()
            .zip(opt.primal)
            .map(|(s, r)| (LpObject::Boundary(s.members().to_vec()), r)),
    );
    let (program, values, dual) = if covering {
        (LpProgram::CovBnd, x, y)
    } else {
        (LpProgram::PackBnd, y, x)
    };
    Ok(LpSolution { program, objective: opt.objective, values, dual: Some(dual) })
}

fn balls_solution(g: &Graph, covering: bool) -> Result<LpSolution> {
    g.require_simple()?;
    if g.n() == 0 || !connectivity_report(g).connected {
        return Err(Error::NotConnected);
    }
    let opt = solve_over(g, &balls(g));
    let x = nonzero(opt.dual.into_iter().enumerate().map(|(v, r)| (LpObject::Vertex(v), r)));
    let y = nonzero(opt.primal.into_iter().enumerate().map(|(v, r)| (LpObject::Ball(v), r)));
    let (program, values, dual) = if covering {
        (LpProgram::CovBalls, x, y)
    } else {
        (LpProgram::PackBalls, y, x)
    };
    Ok(LpSolution { program, objective: opt.objective, values, dual: Some(dual) })
}

/// Minimum fractional boundary transversal.
pub fn tau_bnd_star(g: &Graph) -> Result<LpSolution> {
    boundary_solution(g, &Caps::default(), true)
}

pub fn tau_bnd_star_with(g: &Graph, caps: &Caps) -> Result<LpSolution> {
    boundary_solution(g, caps, true)
}

/// Maximum fractional boundary packing.
pub fn nu_bnd_star(g: &Graph) -> Result<LpSolution> {
    boundary_solution(g, &Caps::default(), false)
}

/// Fractional domination number.
pub fn tau_balls_star(g: &Graph) -> Result<LpSolution> {
    balls_solution(g, true)
}

/// Maximum fractional packing of closed neighborhoods.
pub fn nu_balls_star(g: &Graph) -> Result<LpSolution> {
    balls_solution(g, false)
}

/// Packing value over an arbitrary list of vertex sets; used to compare the
/// reduced boundary family with the raw one.
pub fn packing_value(g: &Graph, sets: &[VertexSet]) -> Rational {
    solve_over(g, sets).objective
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundSource {
    Boundaries,
    /// The boundary program was over the cap; the ball program was used.
    BallsFallback,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerBound {
    pub value: Rational,
    pub source: BoundSource,
}

/// Lower bound on the per-bit cost of any protocol.
pub fn lower_bound_opt(g: &Graph) -> Result<LowerBound> {
    lower_bound_opt_with(g, &Caps::default())
}

pub fn lower_bound_opt_with(g: &Graph, caps: &Caps) -> Result<LowerBound> {
    if g.n() <= caps.lp_boundary.min(63) {
        Ok(LowerBound { value: tau_bnd_star_with(g, caps)?.objective, source: BoundSource::Boundaries })
    } else {
        Ok(LowerBound { value: tau_balls_star(g)?.objective, source: BoundSource::BallsFallback })
    }
}
