//! Corpus tables.
//!
//! A corpus file lists one family per line, parameters given as integers or
//! inclusive ranges `a..b`, followed by options:
//!
//! ```text
//! # family params...    options
//! cycle 3..12           k=16,64
//! grid 3..5             k=8
//! regular 10 3          seed=1..5 k=8 protocol=pi0
//! ```
//!
//! Every combination becomes one graph. `protocol` is `pi0`, `pi2` or `all`
//! (the default); `pi2` rows are only produced for cycles.

use std::path::Path;

use eqbcast::covers::{cycle_tvc, minimum_cover_exact_with};
use eqbcast::graph::{generate, Family};
use eqbcast::host::ImplicitCycleHost;
use eqbcast::lp::{format_rational, rational, tau_balls_star, tau_bnd_star_with, Rational};
use eqbcast::protocol::{simple_protocol, tvc_protocol, Protocol};
use eqbcast::{Caps, CoverKind, Error, Graph, VertexSet};
use rayon::prelude::*;

use crate::commands::{read_file, write_output};
use crate::{CliError, CliResult};

const HEADER: [&str; 15] = [
    "graph", "family", "params", "n", "tau_balls", "tau_bnd", "wds", "vc", "tvc", "tvc_down", "protocol", "k",
    "total_bits", "per_bit_cost", "ratio",
];

#[derive(Clone, Copy, PartialEq, Eq)]
enum Protocols {
    Pi0,
    Pi2,
    All,
}

struct Item {
    family: Family,
    name: String,
    params: Vec<usize>,
    ks: Vec<usize>,
    protocols: Protocols,
}

fn parse_range(token: &str, line: usize) -> CliResult<Vec<u64>> {
    let bad = || CliError::Usage(format!("corpus line {line}: bad number or range `{token}`"));
    match token.split_once("..") {
        Some((a, b)) => {
            let (a, b): (u64, u64) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
            if a > b {
                return Err(bad());
            }
            Ok((a..=b).collect())
        }
        None => Ok(vec![token.parse().map_err(|_| bad())?]),
    }
}

fn parse_corpus(src: &str, default_seed: u64) -> CliResult<Vec<Item>> {
    let mut items = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        let mut tokens = line.split_whitespace();
        let Some(name) = tokens.next() else { continue };
        let mut params: Vec<Vec<u64>> = Vec::new();
        let mut ks = vec![8];
        let mut seeds = vec![default_seed];
        let mut protocols = Protocols::All;
        for token in tokens {
            match token.split_once('=') {
                Some(("k", v)) => {
                    ks = v
                        .split(',')
                        .map(|t| parse_range(t, line_no))
                        .collect::<CliResult<Vec<_>>>()?
                        .concat()
                        .into_iter()
                        .map(|k| k as usize)
                        .collect();
                }
                Some(("seed", v)) => seeds = parse_range(v, line_no)?,
                Some(("protocol", v)) => {
                    protocols = match v {
                        "pi0" => Protocols::Pi0,
                        "pi2" => Protocols::Pi2,
                        "all" => Protocols::All,
                        _ => return Err(CliError::Usage(format!("corpus line {line_no}: unknown protocol `{v}`"))),
                    }
                }
                Some((key, _)) => {
                    return Err(CliError::Usage(format!("corpus line {line_no}: unknown option `{key}`")));
                }
                None => params.push(parse_range(token, line_no)?),
            }
        }
        let mut combos: Vec<Vec<usize>> = vec![Vec::new()];
        for choices in &params {
            combos = combos
                .into_iter()
                .flat_map(|prefix| {
                    choices.iter().map(move |&c| {
                        let mut next = prefix.clone();
                        next.push(c as usize);
                        next
                    })
                })
                .collect();
        }
        for combo in combos {
            for &seed in &seeds {
                let family = Family::parse(name, &combo, seed)?;
                items.push(Item { family, name: name.to_string(), params: combo.clone(), ks: ks.clone(), protocols });
            }
        }
    }
    Ok(items)
}

fn size_cell(g: &Graph, kind: CoverKind, caps: &Caps) -> CliResult<(String, Option<VertexSet>)> {
    match minimum_cover_exact_with(g, kind, caps) {
        Ok(cert) => Ok((cert.size().to_string(), Some(cert.set))),
        Err(Error::CapExceeded { .. }) => Ok(("cap".into(), None)),
        Err(Error::Infeasible(_) | Error::NotConnected | Error::NotTwoConnected) => Ok(("-".into(), None)),
        Err(e) => Err(e.into()),
    }
}

fn rows_for(item: &Item, caps: &Caps) -> CliResult<Vec<Vec<String>>> {
    let g = generate(&item.family)?;
    let balls = format_rational(&tau_balls_star(&g)?.objective);
    let bnd: Option<Rational> = match tau_bnd_star_with(&g, caps) {
        Ok(s) => Some(s.objective),
        Err(Error::CapExceeded { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let (wds, wcds_set) = size_cell(&g, CoverKind::WeaklyConnectedDominating, caps)?;
    let (vc, _) = size_cell(&g, CoverKind::VertexCover, caps)?;
    let (tvc, _) = size_cell(&g, CoverKind::TotalVertexCover, caps)?;
    let (tvc_down, _) = size_cell(&g, CoverKind::TvcDownWitness, caps)?;
    let is_cycle = matches!(item.family, Family::Cycle(_));

    let mut protocols: Vec<Box<dyn Fn(usize) -> CliResult<Box<dyn Protocol>>>> = Vec::new();
    if item.protocols != Protocols::Pi2 {
        if let Some(s) = wcds_set {
            let g = g.clone();
            protocols.push(Box::new(move |k| Ok(Box::new(simple_protocol(&g, &s, k)?) as Box<dyn Protocol>)));
        }
    }
    if item.protocols != Protocols::Pi0 && is_cycle {
        let s = cycle_tvc(g.n())?.set;
        let g = g.clone();
        protocols.push(Box::new(move |k| {
            let host = ImplicitCycleHost::minimal_for(g.n(), k)?;
            Ok(Box::new(tvc_protocol(&g, &s, host, k)?) as Box<dyn Protocol>)
        }));
    }

    let mut rows = Vec::new();
    let base = vec![
        item.family.to_string(),
        item.name.clone(),
        item.params.iter().map(usize::to_string).collect::<Vec<_>>().join(" "),
        g.n().to_string(),
        balls,
        bnd.as_ref().map_or("cap".into(), format_rational),
        wds,
        vc,
        tvc,
        tvc_down,
    ];
    for build in &protocols {
        for &k in &item.ks {
            let p = build(k)?;
            let total = p.total_bits();
            let per_bit = rational(total as i64, k as i64);
            let ratio = bnd.as_ref().map_or("cap".into(), |b| format_rational(&(&per_bit / b)));
            let mut row = base.clone();
            row.extend([p.name(), k.to_string(), total.to_string(), format_rational(&per_bit), ratio]);
            rows.push(row);
        }
    }
    if protocols.is_empty() {
        let mut row = base;
        row.extend(["-".to_string(), "-".into(), "-".into(), "-".into(), "-".into()]);
        rows.push(row);
    }
    Ok(rows)
}

pub fn report(corpus: &Path, jobs: usize, seed: u64, out: Option<&Path>, caps: &Caps) -> CliResult<()> {
    let items = parse_corpus(&read_file(corpus)?, seed)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    let results: Vec<CliResult<Vec<Vec<String>>>> = pool.install(|| items.par_iter().map(|it| rows_for(it, caps)).collect());
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(HEADER).expect("in-memory write");
    for rows in results {
        for row in rows? {
            writer.write_record(&row).expect("in-memory write");
        }
    }
    let bytes = writer.into_inner().expect("in-memory flush");
    write_output(out, &String::from_utf8(bytes).expect("utf-8 csv"))
}
