use std::fs;
use std::path::{Path, PathBuf};

use eqbcast::covers::{
    cubic_large_girth_tvc, cycle_tvc, grid_tvc, hypercube_tvc, minimum_cover_exact_with, tree_vertex_cover,
    wcds_from_dominating,
};
use eqbcast::graph::{generate, parse_graph, to_dot, to_json, to_text, Family};
use eqbcast::host::{brute_force_host_search, disjoint_copies_host, AnyHost, ExplicitHost, ImplicitCycleHost};
use eqbcast::lp::{format_rational, lower_bound_opt_with, tau_balls_star, tau_bnd_star_with, BoundSource};
use eqbcast::protocol::{
    check_protocol, run, simple_protocol, single_broadcaster_protocol, tvc_protocol, CheckMode, FailureKind,
    InputAssignment, Protocol,
};
use eqbcast::{BitString, Caps, CoverCertificate, CoverKind, Error, Graph, VertexSet};

use crate::{CheckArg, CliError, CliResult, GraphFormat};

pub fn read_file(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

pub fn write_output(out: Option<&Path>, content: &str) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, content).map_err(|source| CliError::Io { path: path.to_path_buf(), source }),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

pub fn load_graph(path: &Path) -> CliResult<Graph> {
    Ok(parse_graph(&read_file(path)?)?)
}

pub fn gen(family: &str, params: &[usize], seed: u64, format: GraphFormat, out: Option<&Path>) -> CliResult<()> {
    let g = generate(&Family::parse(family, params, seed)?)?;
    let text = match format {
        GraphFormat::Text => to_text(&g),
        GraphFormat::Json => to_json(&g) + "\n",
        GraphFormat::Dot => to_dot(&g),
    };
    write_output(out, &text)
}

pub fn bounds(path: &Path, json: bool, caps: &Caps) -> CliResult<()> {
    let g = load_graph(path)?;
    let balls = tau_balls_star(&g)?;
    let bnd = match tau_bnd_star_with(&g, caps) {
        Ok(s) => Some(s),
        Err(Error::CapExceeded { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let lower = lower_bound_opt_with(&g, caps)?;
    if json {
        let parse = |s: String| serde_json::from_str::<serde_json::Value>(&s).expect("valid json");
        let value = serde_json::json!({
            "n": g.n(),
            "tau_balls": parse(balls.to_json()),
            "tau_bnd": bnd.map_or(serde_json::Value::String("cap".into()), |s| parse(s.to_json())),
            "lower_bound": format_rational(&lower.value),
        });
        println!("{}", serde_json::to_string_pretty(&value).expect("json"));
    } else {
        println!("n: {}", g.n());
        println!("edges: {}", g.edge_count());
        println!("tau_balls*: {}", format_rational(&balls.objective));
        println!("tau_bnd*: {}", bnd.map_or("cap".into(), |s| format_rational(&s.objective)));
        let source = match lower.source {
            BoundSource::Boundaries => "boundaries",
            BoundSource::BallsFallback => "balls",
        };
        println!("lower_bound: {} ({source})", format_rational(&lower.value));
    }
    Ok(())
}

fn matches_family(g: &Graph, family: Family) -> bool {
    generate(&family).map_or(false, |h| h.n() == g.n() && h.same_edges(g))
}

fn construct(g: &Graph, name: &str, caps: &Caps) -> CliResult<VertexSet> {
    let n = g.n();
    let wrong = |what: &str| CliError::Usage(format!("graph is not {what} in the generator's labelling"));
    let set = match name {
        "cycle" => {
            if !matches_family(g, Family::Cycle(n)) {
                return Err(wrong("a cycle"));
            }
            cycle_tvc(n)?.set
        }
        "tree" => tree_vertex_cover(g)?.set,
        "grid" => {
            let side = (1..=n).find(|s| s * s >= n).unwrap_or(0);
            if side * side != n || !matches_family(g, Family::Grid(side)) {
                return Err(wrong("a square grid"));
            }
            grid_tvc(side)?.0.set
        }
        "hypercube" => {
            let d = n.trailing_zeros() as usize;
            let l = (d + 1).trailing_zeros() as usize;
            if !n.is_power_of_two() || (1 << l) != d + 1 || !matches_family(g, Family::Hypercube(d)) {
                return Err(wrong("a hypercube of dimension 2^l - 1"));
            }
            hypercube_tvc(l)?.cert.set
        }
        "cubic" => cubic_large_girth_tvc(g)?.cert.set,
        "wcds" => {
            let dom = minimum_cover_exact_with(g, CoverKind::Dominating, caps)?;
            wcds_from_dominating(g, &dom.set)?.set
        }
        other => return Err(CliError::Usage(format!("unknown construction `{other}`"))),
    };
    Ok(set)
}

pub fn cover(
    path: &Path,
    kind: &str,
    exact: bool,
    construction: Option<&str>,
    out: Option<&Path>,
    caps: &Caps,
) -> CliResult<()> {
    let g = load_graph(path)?;
    let kind: CoverKind = kind.parse()?;
    let cert = match (exact, construction) {
        (true, None) => minimum_cover_exact_with(&g, kind, caps)?,
        (false, Some(name)) => CoverCertificate::new(kind, construct(&g, name, caps)?),
        _ => return Err(CliError::Usage("pass exactly one of --exact or --construct".into())),
    };
    if !cert.verify(&g) {
        return Err(CliError::CheckFailed(format!(
            "set {:?} of size {} is not a valid {kind}",
            cert.set.members(),
            cert.size()
        )));
    }
    match out {
        Some(path) => {
            write_output(Some(path), &(cert.to_json() + "\n"))?;
            println!("{kind} size {}", cert.size());
            Ok(())
        }
        None => write_output(None, &(cert.to_json() + "\n")),
    }
}

pub struct SimulateOptions {
    pub protocol: String,
    pub k: usize,
    pub set: String,
    pub tvc: String,
    pub host: String,
    pub check: Option<CheckArg>,
    pub trials: usize,
    pub seed: u64,
    pub transcript: Option<PathBuf>,
}

fn load_set(g: &Graph, spec: &str, auto_kind: CoverKind, caps: &Caps) -> CliResult<VertexSet> {
    if spec == "auto" {
        return Ok(minimum_cover_exact_with(g, auto_kind, caps)?.set);
    }
    let src = read_file(Path::new(spec))?;
    if src.trim_start().starts_with('{') {
        return Ok(CoverCertificate::from_json(&src, g.n())?.set);
    }
    let members = src
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| CliError::Usage(format!("bad vertex `{t}` in {spec}"))))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(VertexSet::new(g.n(), members)?)
}

fn load_host(g: &Graph, spec: &str, k: usize) -> CliResult<AnyHost> {
    if let Some(params) = spec.strip_prefix("implicit:") {
        let parsed: Vec<u128> = params
            .split(',')
            .map(|t| t.trim().parse().map_err(|_| CliError::Usage(format!("bad implicit host `{spec}`"))))
            .collect::<CliResult<_>>()?;
        let [n, m] = parsed[..] else {
            return Err(CliError::Usage(format!("implicit host takes n,m: `{spec}`")));
        };
        return Ok(AnyHost::Cycle(ImplicitCycleHost::new(n as usize, m)?));
    }
    if spec != "auto" {
        return Ok(AnyHost::Explicit(ExplicitHost::from_json(&read_file(Path::new(spec))?)?));
    }
    if g.n() >= 3 && matches_family(g, Family::Cycle(g.n())) {
        return Ok(AnyHost::Cycle(ImplicitCycleHost::minimal_for(g.n(), k)?));
    }
    if k > 16 {
        return Err(CliError::Usage("no automatic host beyond k = 16 for non-cycle graphs".into()));
    }
    let copies = 1usize << k;
    if g.n() <= 5 && copies <= 6 {
        for class_size in copies.max(2)..=6 {
            if let Some(h) = brute_force_host_search(g, class_size, copies)? {
                return Ok(AnyHost::Explicit(h));
            }
        }
    }
    Ok(AnyHost::Explicit(disjoint_copies_host(g, copies)?))
}

fn build_protocol(g: &Graph, opts: &SimulateOptions, caps: &Caps) -> CliResult<Box<dyn Protocol>> {
    Ok(match opts.protocol.as_str() {
        "pi0" => {
            let s = load_set(g, &opts.set, CoverKind::WeaklyConnectedDominating, caps)?;
            Box::new(simple_protocol(g, &s, opts.k)?)
        }
        "pi2" => {
            let s = load_set(g, &opts.tvc, CoverKind::TotalVertexCover, caps)?;
            let host = load_host(g, &opts.host, opts.k)?;
            Box::new(tvc_protocol(g, &s, host, opts.k)?)
        }
        "single" => Box::new(single_broadcaster_protocol(g, opts.k)?),
        other => return Err(CliError::Usage(format!("unknown protocol `{other}` (pi0, pi2, single)"))),
    })
}

fn format_assignment(a: &InputAssignment) -> String {
    a.words().iter().enumerate().map(|(v, w)| format!("{v}:{w}")).collect::<Vec<_>>().join(" ")
}

pub fn simulate(path: &Path, opts: &SimulateOptions, caps: &Caps) -> CliResult<()> {
    let g = load_graph(path)?;
    let p = build_protocol(&g, opts, caps)?;
    let lower = lower_bound_opt_with(&g, caps)?;
    let total = p.total_bits();
    println!("protocol: {}", p.name());
    println!("graph: n={} m={}", g.n(), g.edge_count());
    println!("senders: {:?}", p.senders().members());
    println!("k: {}", opts.k);
    println!("total_bits: {total}");
    println!("per_bit_cost: {}", format_rational(&eqbcast::lp::rational(total as i64, opts.k as i64)));
    println!("lower_bound: {}", format_rational(&lower.value));

    let check = opts.check.unwrap_or(if g.n() * opts.k <= caps.exhaustive_log2 {
        CheckArg::Exhaustive
    } else {
        CheckArg::Random
    });
    let mode = match check {
        CheckArg::Exhaustive => Some(CheckMode::Exhaustive),
        CheckArg::Random => Some(CheckMode::Random { seed: opts.seed, trials: opts.trials }),
        CheckArg::None => None,
    };
    let verdict = mode.map(|m| check_protocol(p.as_ref(), m, caps)).transpose()?;
    let shown = match verdict.as_ref().and_then(|v| v.counterexample.as_ref()) {
        Some(cx) => cx.assignment.clone(),
        None => InputAssignment::uniform(g.n(), BitString::zeros(opts.k)),
    };
    if let Some(path) = &opts.transcript {
        let r = run(p.as_ref(), &shown)?;
        write_output(Some(path), &(r.transcript_json(p.as_ref(), &shown) + "\n"))?;
    }
    let Some(verdict) = verdict else {
        println!("check: skipped");
        return Ok(());
    };
    let label = match check {
        CheckArg::Exhaustive => "exhaustive",
        _ => "random",
    };
    match verdict.counterexample {
        None => {
            println!("check: {label}, {} assignments, pass", verdict.tested);
            Ok(())
        }
        Some(cx) => {
            let what = match cx.kind {
                FailureKind::Completeness => "completeness",
                FailureKind::Soundness => "soundness",
            };
            println!("check: {label}, {} assignments, FAIL ({what})", verdict.tested);
            println!("counterexample: {}", format_assignment(&cx.assignment));
            let accepts: Vec<&str> = cx.accepts.iter().map(|&a| if a { "accept" } else { "reject" }).collect();
            println!("decisions: {}", accepts.join(" "));
            Err(CliError::CheckFailed(format!("{what} violated")))
        }
    }
}
