//! One-round local broadcast protocols.
//!
//! A protocol fixes, independently of the inputs, which vertices broadcast
//! and how many bits each sends. A vertex decides from its own word and the
//! messages of its neighboring senders.

mod check;
mod cost;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::host::{consistency_check, identity_of, Host};
use crate::lp::{format_rational, Rational};
use crate::word::{ceil_log2, BitString};

pub use check::{check_protocol, CheckMode, Counterexample, FailureKind, Verdict};
pub use cost::{outcome_epilogue, per_bit_cost_table, CostRow, Epilogue};

pub trait Protocol {
    fn name(&self) -> String;

    fn graph(&self) -> &Graph;

    /// Input length the protocol was built for.
    fn k(&self) -> usize;

    fn senders(&self) -> &VertexSet;

    /// Declared message length of a sender.
    fn message_length(&self, v: usize) -> usize;

    fn message(&self, v: usize, word: &BitString) -> Result<BitString>;

    /// `received` holds `(sender, message)` for every neighboring sender.
    fn decide(&self, v: usize, word: &BitString, received: &[(usize, &BitString)]) -> Result<bool>;

    /// Bits broadcast in one run; the same for every assignment.
    fn total_bits(&self) -> usize {
        self.senders().iter().map(|v| self.message_length(v)).sum()
    }
}

/// One `k`-bit word per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InputAssignment {
    k: usize,
    words: Vec<BitString>,
}

impl InputAssignment {
    pub fn new(k: usize, words: Vec<BitString>) -> Result<InputAssignment> {
        if let Some((v, w)) = words.iter().enumerate().find(|(_, w)| w.len() != k) {
            return Err(Error::AssignmentMismatch(format!("vertex {v} has {} bits, expected {k}", w.len())));
        }
        Ok(InputAssignment { k, words })
    }

    pub fn uniform(n: usize, word: BitString) -> InputAssignment {
        InputAssignment { k: word.len(), words: vec![word; n] }
    }

    /// Word of vertex `v` is `codes[v]` on `k` bits.
    pub fn from_codes(k: usize, codes: &[u128]) -> InputAssignment {
        InputAssignment { k, words: codes.iter().map(|&c| BitString::from_u128(c, k)).collect() }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.words.len()
    }

    pub fn words(&self) -> &[BitString] {
        &self.words
    }

    pub fn word(&self, v: usize) -> &BitString {
        &self.words[v]
    }

    pub fn all_equal(&self) -> bool {
        self.words.windows(2).all(|w| w[0] == w[1])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunResult {
    pub accepts: Vec<bool>,
    pub total_bits: usize,
    pub per_bit_cost: Rational,
    pub messages: Vec<Option<BitString>>,
}

#[derive(Serialize)]
struct TranscriptVertex<'a> {
    vertex: usize,
    word: &'a BitString,
    message_hex: Option<String>,
    message_bits: Option<usize>,
    accept: bool,
}

#[derive(Serialize)]
struct Transcript<'a> {
    protocol: String,
    k: usize,
    total_bits: usize,
    per_bit_cost: String,
    all_accept: bool,
    vertices: Vec<TranscriptVertex<'a>>,
}

impl RunResult {
    pub fn all_accept(&self) -> bool {
        self.accepts.iter().all(|&a| a)
    }

    pub fn transcript_json<P: Protocol + ?Sized>(&self, protocol: &P, input: &InputAssignment) -> String {
        let vertices = (0..input.n())
            .map(|v| TranscriptVertex {
                vertex: v,
                word: input.word(v),
                message_hex: self.messages[v].as_ref().map(BitString::to_hex),
                message_bits: self.messages[v].as_ref().map(BitString::len),
                accept: self.accepts[v],
            })
            .collect();
        serde_json::to_string_pretty(&Transcript {
            protocol: protocol.name(),
            k: input.k(),
            total_bits: self.total_bits,
            per_bit_cost: format_rational(&self.per_bit_cost),
            all_accept: self.all_accept(),
            vertices,
        })
        .expect("transcript serializes")
    }
}

fn checked_message<P: Protocol + ?Sized>(p: &P, v: usize, word: &BitString) -> Result<BitString> {
    let msg = p.message(v, word)?;
    let declared = p.message_length(v);
    if msg.len() != declared {
        return Err(Error::StaticnessViolation { vertex: v, declared, got: msg.len() });
    }
    Ok(msg)
}

/// Runs one round: every sender broadcasts, every vertex decides.
pub fn run<P: Protocol + ?Sized>(p: &P, input: &InputAssignment) -> Result<RunResult> {
    let g = p.graph();
    if input.n() != g.n() {
        return Err(Error::AssignmentMismatch(format!("{} words for {} vertices", input.n(), g.n())));
    }
    if input.k() != p.k() {
        return Err(Error::AssignmentMismatch(format!("k = {} but protocol expects {}", input.k(), p.k())));
    }
    let mut messages = vec![None; g.n()];
    for v in p.senders().iter() {
        messages[v] = Some(checked_message(p, v, input.word(v))?);
    }
    let words: Vec<&BitString> = input.words().iter().collect();
    let refs: Vec<Option<&BitString>> = messages.iter().map(Option::as_ref).collect();
    let accepts = decide_all(p, &words, &refs)?;
    let total_bits = p.total_bits();
    Ok(RunResult {
        accepts,
        total_bits,
        per_bit_cost: Rational::new((total_bits as i64).into(), (p.k().max(1) as i64).into()),
        messages,
    })
}

fn decide_all<P: Protocol + ?Sized>(p: &P, words: &[&BitString], messages: &[Option<&BitString>]) -> Result<Vec<bool>> {
    let g = p.graph();
    (0..g.n())
        .map(|v| {
            let mut nbrs: Vec<usize> = g.neighbors(v).collect();
            nbrs.sort_unstable();
            nbrs.dedup();
            let received: Vec<(usize, &BitString)> =
                nbrs.into_iter().filter_map(|u| messages[u].map(|m| (u, m))).collect();
            p.decide(v, words[v], &received)
        })
        .collect()
}

fn require_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidParams("k must be at least 1".into()));
    }
    Ok(())
}

/// Senders broadcast their word; a vertex accepts when every word it hears
/// equals its own. Correct exactly when the senders form a weakly connected
/// dominating set, which is not checked here.
#[derive(Clone, Debug)]
pub struct SimpleProtocol {
    graph: Graph,
    senders: VertexSet,
    k: usize,
}

pub fn simple_protocol(g: &Graph, s: &VertexSet, k: usize) -> Result<SimpleProtocol> {
    require_k(k)?;
    if s.parent_n() != g.n() {
        return Err(Error::InvalidVertexSet(format!("set over {} vertices, graph has {}", s.parent_n(), g.n())));
    }
    Ok(SimpleProtocol { graph: g.clone(), senders: s.clone(), k })
}

impl Protocol for SimpleProtocol {
    fn name(&self) -> String {
        "pi0".into()
    }

    fn graph(&self) -> &Graph {
        &self.graph
    }

    fn k(&self) -> usize {
        self.k
    }

    fn senders(&self) -> &VertexSet {
        &self.senders
    }

    fn message_length(&self, _v: usize) -> usize {
        self.k
    }

    fn message(&self, _v: usize, word: &BitString) -> Result<BitString> {
        Ok(word.clone())
    }

    fn decide(&self, _v: usize, word: &BitString, received: &[(usize, &BitString)]) -> Result<bool> {
        Ok(received.iter().all(|(_, m)| *m == word))
    }
}

/// Senders broadcast their identity in the host; a vertex accepts when every
/// identity it hears is consistent with its own.
#[derive(Clone, Debug)]
pub struct TvcProtocol<H> {
    graph: Graph,
    senders: VertexSet,
    host: H,
    k: usize,
    width: usize,
}

pub fn tvc_protocol<H: Host>(g: &Graph, s: &VertexSet, host: H, k: usize) -> Result<TvcProtocol<H>> {
    require_k(k)?;
    if s.parent_n() != g.n() {
        return Err(Error::InvalidVertexSet(format!("set over {} vertices, graph has {}", s.parent_n(), g.n())));
    }
    if host.n_classes() != g.n() || !host.pattern().same_edges(g) {
        return Err(Error::PatternMismatch);
    }
    if k >= 128 || host.num_copies() < 1u128 << k {
        return Err(Error::TooFewCopies { copies: host.num_copies(), k });
    }
    let width = ceil_log2(host.class_size());
    Ok(TvcProtocol { graph: g.clone(), senders: s.clone(), host, k, width })
}

impl<H: Host> TvcProtocol<H> {
    pub fn host(&self) -> &H {
        &self.host
    }

    /// Bits per identity, `ceil(log2(class_size))`.
    pub fn identity_width(&self) -> usize {
        self.width
    }
}

impl<H: Host> Protocol for TvcProtocol<H> {
    fn name(&self) -> String {
        "pi2".into()
    }

    fn graph(&self) -> &Graph {
        &self.graph
    }

    fn k(&self) -> usize {
        self.k
    }

    fn senders(&self) -> &VertexSet {
        &self.senders
    }

    fn message_length(&self, _v: usize) -> usize {
        self.width
    }

    fn message(&self, v: usize, word: &BitString) -> Result<BitString> {
        Ok(BitString::from_u128(identity_of(&self.host, v, word)?, self.width))
    }

    fn decide(&self, v: usize, word: &BitString, received: &[(usize, &BitString)]) -> Result<bool> {
        let own = identity_of(&self.host, v, word)?;
        for &(u, msg) in received {
            if !consistency_check(&self.host, u, msg.to_u128(), v, own, word)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A universal vertex broadcasts its word and everyone else compares.
#[derive(Clone, Debug)]
pub struct SingleBroadcaster {
    graph: Graph,
    senders: VertexSet,
    center: usize,
    k: usize,
}

pub fn single_broadcaster_protocol(g: &Graph, k: usize) -> Result<SingleBroadcaster> {
    require_k(k)?;
    let center = (0..g.n())
        .find(|&u| (0..g.n()).all(|v| v == u || g.has_edge(u, v)))
        .ok_or(Error::NoUniversalVertex)?;
    Ok(SingleBroadcaster { graph: g.clone(), senders: VertexSet::new(g.n(), [center])?, center, k })
}

impl SingleBroadcaster {
    pub fn center(&self) -> usize {
        self.center
    }
}

impl Protocol for SingleBroadcaster {
    fn name(&self) -> String {
        "single".into()
    }

    fn graph(&self) -> &Graph {
        &self.graph
    }

    fn k(&self) -> usize {
        self.k
    }

    fn senders(&self) -> &VertexSet {
        &self.senders
    }

    fn message_length(&self, _v: usize) -> usize {
        self.k
    }

    fn message(&self, _v: usize, word: &BitString) -> Result<BitString> {
        Ok(word.clone())
    }

    fn decide(&self, v: usize, word: &BitString, received: &[(usize, &BitString)]) -> Result<bool> {
        if v == self.center {
            return Ok(true);
        }
        Ok(received.iter().all(|&(u, m)| u != self.center || m == word))
    }
}
