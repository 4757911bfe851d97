use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{checked_message, decide_all, run, InputAssignment, Protocol};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::word::BitString;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    /// Every assignment; needs `n * k <= caps.exhaustive_log2`.
    Exhaustive,
    /// Equal words, single flips, two-block splits along BFS orders and
    /// seeded random assignments.
    Random { seed: u64, trials: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FailureKind {
    /// Equal words but some vertex rejects.
    Completeness,
    /// Differing words but every vertex accepts.
    Soundness,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub kind: FailureKind,
    pub assignment: InputAssignment,
    pub accepts: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub passed: bool,
    pub tested: u64,
    pub counterexample: Option<Counterexample>,
}

fn failure(assignment: &InputAssignment, accepts: &[bool]) -> Option<FailureKind> {
    let all_accept = accepts.iter().all(|&a| a);
    match (assignment.all_equal(), all_accept) {
        (true, false) => Some(FailureKind::Completeness),
        (false, true) => Some(FailureKind::Soundness),
        _ => None,
    }
}

/// Runs the protocol over a set of assignments and stops at the first
/// counterexample.
pub fn check_protocol<P: Protocol + ?Sized>(p: &P, mode: CheckMode, caps: &Caps) -> Result<Verdict> {
    match mode {
        CheckMode::Exhaustive => exhaustive(p, caps),
        CheckMode::Random { seed, trials } => randomized(p, seed, trials),
    }
}

fn exhaustive<P: Protocol + ?Sized>(p: &P, caps: &Caps) -> Result<Verdict> {
    let n = p.graph().n();
    let k = p.k();
    let bits = n * k;
    if bits > caps.exhaustive_log2 || bits >= 64 {
        return Err(Error::CapExceeded { what: "exhaustive assignments (log2)", size: bits, cap: caps.exhaustive_log2 });
    }
    let word_count = 1usize << k;
    let words: Vec<BitString> = (0..word_count).map(|c| BitString::from_u128(c as u128, k)).collect();
    let mut table: Vec<Option<Vec<BitString>>> = vec![None; n];
    for v in p.senders().iter() {
        table[v] = Some(words.iter().map(|w| checked_message(p, v, w)).collect::<Result<_>>()?);
    }
    let mut tested = 0u64;
    let mut codes = vec![0usize; n];
    let mut check = |codes: &[usize]| -> Result<Option<Counterexample>> {
        tested += 1;
        let ws: Vec<&BitString> = codes.iter().map(|&c| &words[c]).collect();
        let ms: Vec<Option<&BitString>> =
            (0..n).map(|v| table[v].as_ref().map(|msgs| &msgs[codes[v]])).collect();
        let accepts = decide_all(p, &ws, &ms)?;
        let all_equal = codes.windows(2).all(|c| c[0] == c[1]);
        let all_accept = accepts.iter().all(|&a| a);
        if all_equal != all_accept {
            let assignment = InputAssignment::from_codes(k, &codes.iter().map(|&c| c as u128).collect::<Vec<_>>());
            let kind = if all_equal { FailureKind::Completeness } else { FailureKind::Soundness };
            return Ok(Some(Counterexample { kind, assignment, accepts }));
        }
        Ok(None)
    };
    // equal words first so completeness failures are reported as such
    for c in 0..word_count {
        if let Some(cx) = check(&vec![c; n])? {
            return Ok(Verdict { passed: false, tested, counterexample: Some(cx) });
        }
    }
    for code in 0..1u64 << bits {
        for (v, slot) in codes.iter_mut().enumerate() {
            *slot = ((code >> (v * k)) as usize) & (word_count - 1);
        }
        if codes.windows(2).all(|c| c[0] == c[1]) {
            continue;
        }
        if let Some(cx) = check(&codes)? {
            return Ok(Verdict { passed: false, tested, counterexample: Some(cx) });
        }
    }
    Ok(Verdict { passed: true, tested, counterexample: None })
}

fn random_word(rng: &mut ChaCha8Rng, k: usize) -> BitString {
    BitString::new((0..k).map(|_| rng.gen()).collect())
}

fn distinct_word(rng: &mut ChaCha8Rng, w: &BitString) -> BitString {
    loop {
        let other = random_word(rng, w.len());
        if &other != w {
            return other;
        }
    }
}

fn bfs_order(p: &(impl Protocol + ?Sized), start: usize) -> Vec<usize> {
    let g = p.graph();
    let mut seen = vec![false; g.n()];
    let mut order = vec![start];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for w in g.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                order.push(w);
                queue.push_back(w);
            }
        }
    }
    order.extend((0..g.n()).filter(|&v| !seen[v]));
    order
}

fn randomized<P: Protocol + ?Sized>(p: &P, seed: u64, trials: usize) -> Result<Verdict> {
    let n = p.graph().n();
    let k = p.k();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tested = 0u64;
    let mut try_one = |a: InputAssignment| -> Result<Option<Counterexample>> {
        tested += 1;
        let r = run(p, &a)?;
        Ok(failure(&a, &r.accepts).map(|kind| Counterexample { kind, assignment: a, accepts: r.accepts }))
    };
    macro_rules! probe {
        ($a:expr) => {
            if let Some(cx) = try_one($a)? {
                return Ok(Verdict { passed: false, tested, counterexample: Some(cx) });
            }
        };
    }

    let mut bases = Vec::new();
    if k <= 16 {
        bases.extend((0..1u128 << k).map(|c| BitString::from_u128(c, k)));
    } else {
        bases.push(BitString::zeros(k));
        bases.push(BitString::new(vec![true; k]));
        bases.extend((0..trials.max(1)).map(|_| random_word(&mut rng, k)));
    }
    for w in &bases {
        probe!(InputAssignment::uniform(n, w.clone()));
    }

    let mut flip_bases = vec![BitString::zeros(k), BitString::new(vec![true; k])];
    flip_bases.extend((0..3).map(|_| random_word(&mut rng, k)));
    for base in &flip_bases {
        let positions: Vec<usize> =
            if k <= 8 { (0..k).collect() } else { [0, k - 1].into_iter().chain((0..4).map(|_| rng.gen_range(0..k))).collect() };
        for v in 0..n {
            for &bit in &positions {
                let mut words = vec![base.clone(); n];
                words[v].flip(bit);
                probe!(InputAssignment::new(k, words)?);
            }
        }
    }

    for start in 0..n {
        let order = bfs_order(p, start);
        for cut in 1..n {
            let w1 = random_word(&mut rng, k);
            let mut w2 = w1.clone();
            w2.flip(rng.gen_range(0..k));
            let w3 = distinct_word(&mut rng, &w1);
            for other in [w2, w3] {
                let mut words = vec![other; n];
                for &v in &order[..cut] {
                    words[v] = w1.clone();
                }
                probe!(InputAssignment::new(k, words)?);
            }
        }
    }

    for t in 0..trials {
        let words = if t % 2 == 0 {
            let palette = [random_word(&mut rng, k), random_word(&mut rng, k)];
            (0..n).map(|_| palette[rng.gen_range(0..2)].clone()).collect()
        } else {
            (0..n).map(|_| random_word(&mut rng, k)).collect()
        };
        probe!(InputAssignment::new(k, words)?);
    }
    Ok(Verdict { passed: true, tested, counterexample: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covers::{cycle_tvc, minimum_cover_exact, CoverKind};
    use crate::graph::{generate, Family, VertexSet};
    use crate::host::{disjoint_copies_host, ImplicitCycleHost};
    use crate::protocol::{simple_protocol, single_broadcaster_protocol, tvc_protocol};

    #[test]
    fn pi0_wcds_on_c5_passes() {
        let c5 = generate(&Family::Cycle(5)).unwrap();
        let s = minimum_cover_exact(&c5, CoverKind::WeaklyConnectedDominating).unwrap().set;
        let p = simple_protocol(&c5, &s, 2).unwrap();
        let v = check_protocol(&p, CheckMode::Exhaustive, &Caps::default()).unwrap();
        assert!(v.passed);
        assert_eq!(v.tested, 1 << 10);
    }

    #[test]
    fn pi0_non_wcds_on_c6_fails() {
        let c6 = generate(&Family::Cycle(6)).unwrap();
        let s = VertexSet::new(6, [0, 3]).unwrap();
        let p = simple_protocol(&c6, &s, 1).unwrap();
        let v = check_protocol(&p, CheckMode::Exhaustive, &Caps::default()).unwrap();
        let cx = v.counterexample.unwrap();
        assert_eq!(cx.kind, FailureKind::Soundness);
        assert!(!cx.assignment.all_equal());
        assert!(cx.accepts.iter().all(|&a| a));
        let r = check_protocol(&p, CheckMode::Random { seed: 1, trials: 50 }, &Caps::default()).unwrap();
        assert!(!r.passed);
    }

    #[test]
    fn pi2_on_c4_and_c5() {
        let c4 = generate(&Family::Cycle(4)).unwrap();
        let host = disjoint_copies_host(&c4, 4).unwrap();
        let p = tvc_protocol(&c4, &cycle_tvc(4).unwrap().set, host, 2).unwrap();
        assert!(check_protocol(&p, CheckMode::Exhaustive, &Caps::default()).unwrap().passed);

        let c5 = generate(&Family::Cycle(5)).unwrap();
        let host = ImplicitCycleHost::minimal_for(5, 3).unwrap();
        let p = tvc_protocol(&c5, &cycle_tvc(5).unwrap().set, host, 3).unwrap();
        assert!(check_protocol(&p, CheckMode::Exhaustive, &Caps::default()).unwrap().passed);
    }

    #[test]
    fn pi2_non_total_cover_fails() {
        let c5 = generate(&Family::Cycle(5)).unwrap();
        // vertex 0 has no neighbor in the set, and words sharing its
        // position in class 0 go unnoticed
        let s = VertexSet::new(5, [0, 2, 3]).unwrap();
        assert!(crate::covers::verify_cover(&c5, &s, CoverKind::VertexCover));
        assert!(!crate::covers::verify_cover(&c5, &s, CoverKind::TotalVertexCover));
        let host = ImplicitCycleHost::minimal_for(5, 3).unwrap();
        let p = tvc_protocol(&c5, &s, host, 3).unwrap();
        let v = check_protocol(&p, CheckMode::Exhaustive, &Caps::default()).unwrap();
        assert_eq!(v.counterexample.unwrap().kind, FailureKind::Soundness);
    }

    #[test]
    fn exhaustive_cap() {
        let c9 = generate(&Family::Cycle(9)).unwrap();
        let p = simple_protocol(&c9, &VertexSet::full(9), 3).unwrap();
        assert!(matches!(
            check_protocol(&p, CheckMode::Exhaustive, &Caps::default()),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn random_mode_passes_correct_protocols() {
        let k5 = generate(&Family::Complete(5)).unwrap();
        let p = single_broadcaster_protocol(&k5, 40).unwrap();
        let v = check_protocol(&p, CheckMode::Random { seed: 7, trials: 100 }, &Caps::default()).unwrap();
        assert!(v.passed && v.tested > 100);
        let again = check_protocol(&p, CheckMode::Random { seed: 7, trials: 100 }, &Caps::default()).unwrap();
        assert_eq!(v, again);
    }

    #[test]
    fn completeness_failure_is_labelled() {
        let p3 = generate(&Family::Path(3)).unwrap();
        // rejects every word starting with a one
        struct Grumpy(crate::protocol::SimpleProtocol);
        impl Protocol for Grumpy {
            fn name(&self) -> String {
                "grumpy".into()
            }
            fn graph(&self) -> &crate::graph::Graph {
                self.0.graph()
            }
            fn k(&self) -> usize {
                1
            }
            fn senders(&self) -> &VertexSet {
                self.0.senders()
            }
            fn message_length(&self, _v: usize) -> usize {
                1
            }
            fn message(&self, _v: usize, w: &BitString) -> Result<BitString> {
                Ok(w.clone())
            }
            fn decide(&self, _v: usize, w: &BitString, _r: &[(usize, &BitString)]) -> Result<bool> {
                Ok(!w.bits()[0])
            }
        }
        let p = Grumpy(simple_protocol(&p3, &VertexSet::full(3), 1).unwrap());
        let v = check_protocol(&p, CheckMode::Exhaustive, &Caps::default()).unwrap();
        assert_eq!(v.counterexample.unwrap().kind, FailureKind::Completeness);
    }
}
