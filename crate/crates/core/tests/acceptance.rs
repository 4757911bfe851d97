//! Acceptance suite: one line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so the lines are always shown.
//! A criterion listed in `KNOWN_FAILURES` is expected to fail with the given
//! reason prefix; anything else failing makes the process exit non-zero.

use std::process::ExitCode;
use std::time::Instant;

use eqbcast::covers::{
    cubic_large_girth_tvc, cycle_tvc, grid_tvc, hypercube_tvc, minimum_cover_exact, periodic_pattern_search,
    verify_cover, wcds_from_dominating, CoverKind, Lattice,
};
use eqbcast::graph::{all_connected_graphs, connectivity_report, generate, Family, Graph, VertexSet};
use eqbcast::host::{
    brute_force_host_search, crossover_k, disjoint_copies_host, verify_faithful, AnyHost, ExplicitHost, Host,
    ImplicitCycleHost,
};
use eqbcast::lp::{format_rational, nu_balls_star, nu_bnd_star, rational, tau_balls_star, tau_bnd_star, Rational};
use eqbcast::protocol::{check_protocol, simple_protocol, tvc_protocol, CheckMode, FailureKind, Protocol};
use eqbcast::Caps;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Failures = Vec<String>;

macro_rules! check {
    ($fails:expr, $cond:expr, $($msg:tt)+) => {
        if !$cond {
            $fails.push(format!($($msg)+));
        }
    };
}

/// Criterion 1 asks for exactly 3/2 on every `K_{2,t}`; the program's
/// optimum is `(3t - 2) / (2t - 1)`, which only tends to 3/2.
const KNOWN_FAILURES: &[(usize, &str)] = &[(1, "K_{2,")];

// --- independent oracles -------------------------------------------------

/// Minimum vertex cover of a tree by the classic two-state DP.
fn tree_vc_oracle(t: &Graph) -> usize {
    let n = t.n();
    let mut order = vec![0];
    let mut parent = vec![usize::MAX; n];
    parent[0] = 0;
    let mut i = 0;
    while i < order.len() {
        let u = order[i];
        i += 1;
        for w in t.neighbors(u) {
            if parent[w] == usize::MAX {
                parent[w] = u;
                order.push(w);
            }
        }
    }
    let (mut take, mut skip) = (vec![1usize; n], vec![0usize; n]);
    for &v in order.iter().rev() {
        for w in t.neighbors(v).filter(|&w| parent[w] == v && w != v) {
            take[v] += take[w].min(skip[w]);
            skip[v] += take[w];
        }
    }
    take[0].min(skip[0])
}

/// Whether the edges touching `s` reach every vertex and form one component.
fn wcds_oracle(g: &Graph, s: u64) -> bool {
    let n = g.n();
    let mut root: Vec<usize> = (0..n).collect();
    fn find(root: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while root[r] != r {
            r = root[r];
        }
        root[x] = r;
        r
    }
    let mut touched = 0u64;
    for &(u, v) in g.edges() {
        if (s >> u | s >> v) & 1 == 1 {
            touched |= 1 << u | 1 << v;
            let (a, b) = (find(&mut root, u), find(&mut root, v));
            root[a] = b;
        }
    }
    if n == 1 {
        return s == 1;
    }
    touched == (1 << n) - 1 && (0..n).all(|v| find(&mut root, v) == find(&mut root, 0))
}

fn dominating_oracle(g: &Graph, s: u64) -> bool {
    (0..g.n()).all(|v| s >> v & 1 == 1 || g.neighbors(v).any(|u| s >> u & 1 == 1))
}

fn min_size(n: usize, pred: impl Fn(u64) -> bool) -> usize {
    (0..1u64 << n).filter(|&s| pred(s)).map(|s| s.count_ones() as usize).min().expect("some set qualifies")
}

/// Covering program of `K_{2,t}` restricted to symmetric solutions: hubs get
/// `a`, leaves `b`, subject to `2a + b >= 1` and `a + t b >= 1`.
fn k2t_closed_form(t: i64) -> Rational {
    rational(3 * t - 2, 2 * t - 1)
}

// --- criteria -------------------------------------------------------------

fn criterion_1() -> Failures {
    let mut f = Failures::new();
    let duality = |g: &Graph, f: &mut Failures, name: &str| -> Rational {
        let tau = tau_bnd_star(g).unwrap();
        let nu = nu_bnd_star(g).unwrap();
        check!(f, tau.verify(g) && nu.verify(g), "{name}: certificate check failed");
        check!(f, tau.objective == nu.objective, "{name}: tau {} != nu {}", format_rational(&tau.objective), format_rational(&nu.objective));
        let (tb, nb) = (tau_balls_star(g).unwrap(), nu_balls_star(g).unwrap());
        check!(f, tb.objective == nb.objective, "{name}: balls duality gap");
        tau.objective
    };
    for n in 3..=12 {
        let g = generate(&Family::Cycle(n)).unwrap();
        let v = duality(&g, &mut f, &format!("C_{n}"));
        check!(f, v == rational(n as i64, 3), "C_{n}: got {}, want {n}/3", format_rational(&v));
    }
    let mut k2t = Vec::new();
    for t in 2..=6 {
        let g = generate(&Family::CompleteBipartite(2, t)).unwrap();
        let v = duality(&g, &mut f, &format!("K_2,{t}"));
        check!(f, v == k2t_closed_form(t as i64), "K_2,{t}: solver {} disagrees with the closed form", format_rational(&v));
        if v != rational(3, 2) {
            k2t.push(format!("t={t}: {}", format_rational(&v)));
        }
    }
    let mut trees = 0;
    for seed in 0..50u64 {
        let n = 2 + (seed as usize * 7) % 13;
        let t = generate(&Family::RandomTree { n, seed }).unwrap();
        let v = duality(&t, &mut f, &format!("tree n={n} seed={seed}"));
        let vc = tree_vc_oracle(&t);
        check!(f, v == rational(vc as i64, 1), "tree n={n} seed={seed}: {} != vc {vc}", format_rational(&v));
        trees += 1;
    }
    check!(f, trees == 50, "only {trees} trees");
    // reported last so the known failure is recognisable
    check!(f, k2t.is_empty(), "K_{{2,t}} optimum is (3t-2)/(2t-1), not 3/2: {}", k2t.join(", "));
    f
}

fn criterion_2() -> Failures {
    let mut f = Failures::new();
    let caps = Caps::default();
    let mut instances = 0;
    for n in 2..=6 {
        for g in all_connected_graphs(n).unwrap() {
            for mask in 0..1u64 << n {
                let s = VertexSet::from_mask(n, mask);
                let p = simple_protocol(&g, &s, 1).unwrap();
                let verdict = check_protocol(&p, CheckMode::Exhaustive, &caps).unwrap();
                let is_wcds = wcds_oracle(&g, mask);
                check!(f, verify_cover(&g, &s, CoverKind::WeaklyConnectedDominating) == is_wcds, "verifier disagrees on {:?}", g.edges());
                check!(f, verdict.passed == is_wcds, "n={n} edges={:?} S={:?}: passed={} wcds={is_wcds}", g.edges(), s.members(), verdict.passed);
                if let Some(cx) = &verdict.counterexample {
                    check!(f, cx.kind == FailureKind::Soundness, "completeness failure for S={:?}", s.members());
                }
                instances += 1;
            }
        }
    }
    check!(f, instances > 0, "no instances");
    f
}

fn criterion_3() -> Failures {
    let mut f = Failures::new();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for i in 0..200 {
        let n = rng.gen_range(2..=8);
        let p = rng.gen_range(20..=80);
        let g = generate(&Family::RandomConnected { n, p_percent: p, seed: i }).unwrap();
        let gamma = minimum_cover_exact(&g, CoverKind::Dominating).unwrap();
        let wds = minimum_cover_exact(&g, CoverKind::WeaklyConnectedDominating).unwrap();
        let gamma_oracle = min_size(n, |s| dominating_oracle(&g, s));
        let wds_oracle = min_size(n, |s| wcds_oracle(&g, s));
        check!(f, gamma.size() == gamma_oracle && wds.size() == wds_oracle, "graph {i}: exact solver disagrees with enumeration");
        check!(f, gamma.size() <= wds.size() && wds.size() < 2 * gamma.size(), "graph {i}: gamma {} wds {}", gamma.size(), wds.size());
        let built = wcds_from_dominating(&g, &gamma.set).unwrap();
        check!(f, wcds_oracle(&g, built.set.to_mask()), "graph {i}: constructed set is not a WCDS");
        check!(f, built.size() < 2 * gamma.size(), "graph {i}: constructed WCDS too large");
    }
    f
}

fn pi2_exhaustive(g: &Graph, host: AnyHost, k: usize, name: &str, f: &mut Failures) {
    let s = minimum_cover_exact(g, CoverKind::TotalVertexCover).unwrap().set;
    check!(f, verify_cover(g, &s, CoverKind::TotalVertexCover), "{name}: TVC not verified");
    let p = tvc_protocol(g, &s, host, k).unwrap();
    let v = check_protocol(&p, CheckMode::Exhaustive, &Caps::default()).unwrap();
    check!(f, v.passed, "{name} k={k}: {:?}", v.counterexample);
}

fn criterion_4() -> Failures {
    let mut f = Failures::new();
    for n in 4..=6 {
        let g = generate(&Family::Cycle(n)).unwrap();
        for k in 2..=3 {
            let host = ImplicitCycleHost::minimal_for(n, k).unwrap();
            if host.class_size() <= 128 {
                let explicit = host.materialize().unwrap();
                check!(f, verify_faithful(&explicit).unwrap(), "C_{n} k={k}: materialized host not faithful");
            }
            pi2_exhaustive(&g, AnyHost::Cycle(host), k, &format!("C_{n}"), &mut f);
        }
    }
    for fam in [Family::CompleteBipartite(2, 3), Family::Complete(4)] {
        let g = generate(&fam).unwrap();
        for k in 1..=2 {
            let copies = 1 << k;
            let host = (copies.max(2)..=6)
                .find_map(|cs| brute_force_host_search(&g, cs, copies).unwrap())
                .unwrap_or_else(|| disjoint_copies_host(&g, copies).unwrap());
            check!(f, verify_faithful(&host).unwrap(), "{fam} k={k}: host not faithful");
            pi2_exhaustive(&g, AnyHost::Explicit(host), k, &fam.to_string(), &mut f);
        }
    }
    let c6 = generate(&Family::Cycle(6)).unwrap();
    let s = VertexSet::new(6, [0, 3]).unwrap();
    check!(f, !verify_cover(&c6, &s, CoverKind::WeaklyConnectedDominating), "{{0,3}} should not be a WCDS of C_6");
    let v = check_protocol(&simple_protocol(&c6, &s, 1).unwrap(), CheckMode::Exhaustive, &Caps::default()).unwrap();
    check!(f, v.counterexample.map(|c| c.kind) == Some(FailureKind::Soundness), "no soundness witness for pi0 on C_6");
    let c5 = generate(&Family::Cycle(5)).unwrap();
    let s = VertexSet::new(5, [0, 2, 3]).unwrap();
    check!(f, verify_cover(&c5, &s, CoverKind::VertexCover), "{{0,2,3}} should cover C_5");
    check!(f, !verify_cover(&c5, &s, CoverKind::TotalVertexCover), "{{0,2,3}} should not be total");
    let host = ImplicitCycleHost::minimal_for(5, 3).unwrap();
    let v = check_protocol(&tvc_protocol(&c5, &s, host, 3).unwrap(), CheckMode::Exhaustive, &Caps::default()).unwrap();
    check!(f, v.counterexample.map(|c| c.kind) == Some(FailureKind::Soundness), "no soundness witness for pi2 on C_5");
    f
}

fn criterion_5() -> Failures {
    let mut f = Failures::new();
    for n in 3..=12 {
        let g = generate(&Family::Cycle(n)).unwrap();
        let s = cycle_tvc(n).unwrap().set;
        let tvc = minimum_cover_exact(&g, CoverKind::TotalVertexCover).unwrap().size();
        let Some(k0) = crossover_k(n, 100).unwrap() else {
            f.push(format!("C_{n}: no crossover below k = 100"));
            continue;
        };
        let mut costs = Vec::new();
        for k in [k0, 2 * k0, 4 * k0] {
            let host = ImplicitCycleHost::minimal_for(n, k).unwrap();
            let id = host.identity_length();
            let p = tvc_protocol(&g, &s, host, k).unwrap();
            let total = p.total_bits() as i64;
            let (k_, len) = (k as i64, s.len() as i64);
            let cost = rational(total, k_);
            check!(f, total == len * id as i64, "C_{n} k={k}: total bits {total} != |S| * {id}");
            // (n+1)/3 * 2 id / k
            check!(f, cost <= rational(2 * (n as i64 + 1) * id as i64, 3 * k_), "C_{n} k={k}: above (n+1)/3 bound");
            check!(f, cost >= rational(n as i64, 3) * (rational(1, 1) - rational(len, k_)), "C_{n} k={k}: below n/3 bound");
            if k == k0 {
                check!(f, cost < rational(tvc as i64, 1), "C_{n}: cost {} at K0={k0} not below tvc {tvc}", format_rational(&cost));
                let v = check_protocol(&p, CheckMode::Random { seed: n as u64, trials: 100 }, &Caps::default()).unwrap();
                check!(f, v.passed, "C_{n} K0={k0}: random check failed");
            }
            costs.push(cost);
        }
        check!(f, costs.windows(2).all(|w| w[1] < w[0]), "C_{n}: costs not decreasing");
    }
    f
}

fn criterion_6() -> Failures {
    let mut f = Failures::new();
    let q3 = generate(&Family::Hypercube(3)).unwrap();
    let small = hypercube_tvc(2).unwrap();
    check!(f, small.cert.size() == 4, "Q_3: |S'| = {}", small.cert.size());
    check!(f, small.h.n() == 8 && connectivity_report(&small.h).two_connected, "Q_3: H not spanning 2-connected");
    check!(f, small.cert.verify(&small.h), "Q_3: S' not a TVC of H");
    check!(f, verify_cover(&q3, &small.cert.set, CoverKind::TvcDownWitness), "Q_3: S' not a tvc-down witness");
    let exact = minimum_cover_exact(&q3, CoverKind::TvcDownWitness).unwrap();
    check!(f, exact.size() <= 4, "Q_3: exact tvc-down {}", exact.size());
    let big = hypercube_tvc(3).unwrap();
    let size = big.cert.size();
    check!(f, size <= 34, "Q_7: |S'| = {size}");
    check!(f, big.h.n() == 128 && connectivity_report(&big.h).two_connected, "Q_7: H not spanning 2-connected");
    check!(f, big.cert.verify(&big.h), "Q_7: S' not a TVC of H");
    // |S'|/2 <= 16 + 2^(7/2)/8  <=>  (4(|S'| - 32))^2 <= 2^7 when |S'| > 32
    let slack = size.saturating_sub(32);
    check!(f, (4 * slack) * (4 * slack) <= 128, "Q_7: per-bit bound fails for |S'| = {size}");
    f
}

fn criterion_7() -> Failures {
    let mut f = Failures::new();
    for n in 5..=12 {
        let (cert, h) = grid_tvc(n).unwrap();
        let g = generate(&Family::Grid(n)).unwrap();
        let size = cert.size();
        check!(f, h.n() == n * n && connectivity_report(&h).two_connected, "grid {n}: H not spanning 2-connected");
        check!(f, cert.verify(&h) && verify_cover(&g, &cert.set, CoverKind::TvcDownWitness), "grid {n}: S fails checks");
        check!(f, 5 * size <= 2 * n * n + 20 * n, "grid {n}: |S| = {size}");
        let balls = tau_balls_star(&g).unwrap().objective;
        let ratio = rational(size as i64, 2) / &balls;
        let bound = rational((n * n + 10 * n) as i64, (n * n) as i64);
        check!(f, ratio <= bound, "grid {n}: ratio {} above {}", format_rational(&ratio), format_rational(&bound));
    }
    for (lattice, target) in [(Lattice::Triangular, Ratio::new(2u64, 7)), (Lattice::King, Ratio::new(2, 9))] {
        match periodic_pattern_search(lattice, 12, target).unwrap() {
            Some(p) => {
                check!(f, p.density() <= target, "{lattice}: density {}", p.density());
                let torus = p.area() * 12usize.div_ceil(p.area());
                check!(f, p.check_torus(torus), "{lattice}: torus check failed");
            }
            None => f.push(format!("{lattice}: no pattern within period 12")),
        }
    }
    f
}

fn criterion_8() -> Failures {
    let mut f = Failures::new();
    for d in 3..=5usize {
        let mut found = 0;
        let mut seed = 0u64;
        while found < 100 {
            seed += 1;
            let n = {
                let mut rng = ChaCha8Rng::seed_from_u64(seed * 31 + d as u64);
                let mut n = rng.gen_range(d + 1..=14);
                if n * d % 2 == 1 {
                    n += 1;
                }
                n.min(14)
            };
            let Ok(g) = generate(&Family::RandomRegular { n, d, seed }) else { continue };
            if !connectivity_report(&g).connected {
                continue;
            }
            found += 1;
            let tvc = minimum_cover_exact(&g, CoverKind::TotalVertexCover).unwrap();
            check!(f, tvc.verify(&g), "d={d} seed={seed}: certificate");
            check!(f, tvc.size() * (d + 1) <= d * n, "d={d} n={n} seed={seed}: tvc {}", tvc.size());
            if d == 5 && n > 6 {
                // (5 - 1/11) n / 6 = 54 n / 66
                check!(f, tvc.size() * 66 <= 54 * n, "d=5 n={n} seed={seed}: tvc {}", tvc.size());
            }
            if connectivity_report(&g).two_connected {
                check!(f, tvc.size() * (2 * d + 2) <= 2 * d * n, "d={d} n={n}: per-bit bound");
            }
        }
    }
    for d in 3..=6 {
        let g = generate(&Family::Complete(d + 1)).unwrap();
        let t = minimum_cover_exact(&g, CoverKind::TotalVertexCover).unwrap().size();
        check!(f, t == d, "K_{}: tvc {t}", d + 1);
    }
    f
}

fn criterion_9() -> Failures {
    let mut f = Failures::new();
    let mut corpus: Vec<Graph> = Vec::new();
    let mut seed = 0u64;
    while corpus.len() < 500 {
        seed += 1;
        let n = [4, 6, 8, 10][seed as usize % 4];
        let g = generate(&Family::RandomRegular { n, d: 3, seed }).unwrap();
        if connectivity_report(&g).connected {
            corpus.push(g);
        }
    }
    corpus.push(generate(&Family::Petersen).unwrap());
    let mut constructed = 0;
    for g in &corpus {
        let n = g.n();
        let tvc = minimum_cover_exact(g, CoverKind::TotalVertexCover).unwrap().size();
        check!(f, 4 * tvc <= 3 * n, "cubic {:?}: tvc {tvc}", g.edges());
        if connectivity_report(g).two_edge_connected {
            match cubic_large_girth_tvc(g) {
                Ok(out) => {
                    constructed += 1;
                    check!(f, connectivity_report(&out.g_prime).two_connected && out.g_prime.n() == n, "G' fails on {:?}", g.edges());
                    check!(f, out.cert.verify(&out.g_prime), "S fails on {:?}", g.edges());
                    check!(f, out.cert.size() <= out.bound, "size above bound on {:?}", g.edges());
                }
                Err(e) => f.push(format!("construction failed on {:?}: {e}", g.edges())),
            }
        }
    }
    check!(f, constructed > 0, "no 2-edge-connected corpus members");
    f
}

fn criterion_10() -> Failures {
    let mut f = Failures::new();
    let mut accepted = 0;
    for (fam, c) in [
        (Family::Cycle(3), 4),
        (Family::Cycle(5), 4),
        (Family::Complete(4), 3),
        (Family::CompleteBipartite(2, 3), 5),
        (Family::Path(4), 6),
        (Family::Cycle(8), 2),
    ] {
        let h = generate(&fam).unwrap();
        let host = disjoint_copies_host(&h, c).unwrap();
        check!(f, verify_faithful(&host).unwrap(), "{fam} x{c}: rejected");
        accepted += 1;
    }
    let mut implicit = Vec::new();
    for n in 3..=6 {
        for m in 2..=12u128 {
            let host = ImplicitCycleHost::new(n, m).unwrap().materialize().unwrap();
            check!(f, verify_faithful(&host).unwrap(), "implicit n={n} m={m}: rejected");
            accepted += 1;
            implicit.push(host);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut rejected = 0;
    for t in 0..20 {
        let base = &implicit[rng.gen_range(0..implicit.len())];
        let (pattern, class_size) = (base.pattern().clone(), base.class_size() as usize);
        let mut edges: Vec<(usize, usize, usize, usize)> = base.edges().collect();
        let mut copies = base.copies().to_vec();
        match t % 3 {
            0 => {
                let e = rng.gen_range(0..edges.len());
                let (i, p, j, q) = edges[e];
                let q2 = (1..class_size).map(|s| (q + s) % class_size).find(|&q2| !base.is_edge(i, p as u128, j, q2 as u128));
                edges[e] = (i, p, j, q2.expect("a free position"));
            }
            1 => {
                copies.remove(rng.gen_range(0..copies.len()));
            }
            _ => loop {
                let i = rng.gen_range(0..pattern.n());
                let j = (i + 1) % pattern.n();
                let (p, q) = (rng.gen_range(0..class_size), rng.gen_range(0..class_size));
                if !base.is_edge(i, p as u128, j, q as u128) {
                    edges.push((i, p, j, q));
                    break;
                }
            },
        }
        let mutant = ExplicitHost::new(pattern, class_size, edges, copies).unwrap();
        if !verify_faithful(&mutant).unwrap() {
            rejected += 1;
        }
    }
    check!(f, rejected == 20, "only {rejected}/20 mutations rejected");
    check!(f, accepted == 6 + 4 * 11, "accepted {accepted} hosts");
    f
}

fn main() -> ExitCode {
    let criteria: [(usize, &str, fn() -> Failures); 10] = [
        (1, "LP exactness", criterion_1),
        (2, "pi0 passes iff S is a WCDS", criterion_2),
        (3, "domination vs weakly connected domination", criterion_3),
        (4, "pi2 correctness and soundness witnesses", criterion_4),
        (5, "cycle headline at K0, 2K0, 4K0", criterion_5),
        (6, "hypercube construction", criterion_6),
        (7, "grids and periodic patterns", criterion_7),
        (8, "regular graphs", criterion_8),
        (9, "cubic bound and large girth construction", criterion_9),
        (10, "faithful-host verifier discrimination", criterion_10),
    ];
    let results: Vec<(Failures, f64)> = std::thread::scope(|scope| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|&(_, _, run)| {
                scope.spawn(move || {
                    let start = Instant::now();
                    let fails = std::panic::catch_unwind(run).unwrap_or_else(|e| {
                        let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
                        vec![format!("panicked: {}", msg.unwrap_or_default())]
                    });
                    (fails, start.elapsed().as_secs_f64())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("criterion panicked")).collect()
    });
    let mut unexpected = 0;
    for ((id, title, _), (fails, secs)) in criteria.iter().zip(&results) {
        let known = KNOWN_FAILURES.iter().find(|(k, _)| k == id);
        if fails.is_empty() {
            println!("[PASS] criterion {id}: {title} ({secs:.1}s)");
            if known.is_some() {
                println!("       listed as a known failure but passed");
                unexpected += 1;
            }
            continue;
        }
        println!("[FAIL] criterion {id}: {title} ({secs:.1}s)");
        for msg in fails.iter().take(5) {
            println!("       {msg}");
        }
        match known {
            Some((_, prefix)) if fails.iter().all(|m| m.starts_with(prefix)) => println!("       known failure"),
            _ => unexpected += 1,
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} unexpected result(s)");
        ExitCode::FAILURE
    }
}
