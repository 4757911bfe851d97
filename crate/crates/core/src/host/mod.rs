//! Faithful hosts.
//!
//! A host for a pattern graph `H` on classes `0..n` has `class_size`
//! positions per class and a family of special copies of `H`, one position
//! per class. It is faithful when the copies partition its edges and no other
//! selection of positions spans a copy of `H`. Words are mapped to copies, and
//! a vertex's identity is its position in the copy of its own word.

mod cycle;
mod explicit;
mod pfs;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::word::{floor_log2, BitString};

pub use cycle::{crossover_k, ImplicitCycleHost};
pub use explicit::{brute_force_host_search, disjoint_copies_host, verify_faithful, verify_faithful_with, ExplicitHost, HostCaps};
pub use pfs::{progression_free_set, PfsFamily, ProgressionFreeSet};

pub type CopyId = u128;

pub trait Host {
    /// Pattern graph; class `i` hosts pattern vertex `i`.
    fn pattern(&self) -> &Graph;

    fn n_classes(&self) -> usize {
        self.pattern().n()
    }

    fn class_size(&self) -> u128;

    fn num_copies(&self) -> u128;

    /// Position of class `class` in copy `copy`.
    fn place(&self, copy: CopyId, class: usize) -> u128;

    fn is_edge(&self, i: usize, p: u128, j: usize, q: u128) -> bool;

    /// Copy owning the host edge, `None` when there is no such edge.
    fn edge_copy(&self, i: usize, p: u128, j: usize, q: u128) -> Option<CopyId>;

    /// Longest word length the host can encode.
    fn capacity_bits(&self) -> usize {
        floor_log2(self.num_copies().max(1))
    }

    /// Copy with index equal to the value of `w`; injective on words of one
    /// fixed length.
    fn word_to_copy(&self, w: &BitString) -> Result<CopyId> {
        let max = self.capacity_bits();
        if w.len() > max {
            return Err(Error::WordTooLong { len: w.len(), max });
        }
        Ok(w.to_u128())
    }
}

/// Position of class `i` in the copy of word `w`.
pub fn identity_of<H: Host + ?Sized>(host: &H, i: usize, w: &BitString) -> Result<u128> {
    Ok(host.place(host.word_to_copy(w)?, i))
}

/// Whether identity `a_i` received from class `i` is consistent with identity
/// `a_j` of class `j` holding word `w_j`: the host edge exists and belongs to
/// the copy of `w_j`. Not symmetric.
pub fn consistency_check<H: Host + ?Sized>(
    host: &H,
    i: usize,
    a_i: u128,
    j: usize,
    a_j: u128,
    w_j: &BitString,
) -> Result<bool> {
    if i >= host.n_classes() || j >= host.n_classes() || !host.pattern().has_edge(i, j) {
        return Err(Error::NotPatternEdge(i, j));
    }
    let own = host.word_to_copy(w_j)?;
    Ok(host.edge_copy(i, a_i, j, a_j) == Some(own))
}

/// Runtime choice between the two host representations.
#[derive(Clone, Debug)]
pub enum AnyHost {
    Explicit(ExplicitHost),
    Cycle(ImplicitCycleHost),
}

impl Host for AnyHost {
    fn pattern(&self) -> &Graph {
        match self {
            AnyHost::Explicit(h) => h.pattern(),
            AnyHost::Cycle(h) => h.pattern(),
        }
    }

    fn class_size(&self) -> u128 {
        match self {
            AnyHost::Explicit(h) => h.class_size(),
            AnyHost::Cycle(h) => h.class_size(),
        }
    }

    fn num_copies(&self) -> u128 {
        match self {
            AnyHost::Explicit(h) => h.num_copies(),
            AnyHost::Cycle(h) => h.num_copies(),
        }
    }

    fn place(&self, copy: CopyId, class: usize) -> u128 {
        match self {
            AnyHost::Explicit(h) => h.place(copy, class),
            AnyHost::Cycle(h) => h.place(copy, class),
        }
    }

    fn is_edge(&self, i: usize, p: u128, j: usize, q: u128) -> bool {
        match self {
            AnyHost::Explicit(h) => h.is_edge(i, p, j, q),
            AnyHost::Cycle(h) => h.is_edge(i, p, j, q),
        }
    }

    fn edge_copy(&self, i: usize, p: u128, j: usize, q: u128) -> Option<CopyId> {
        match self {
            AnyHost::Explicit(h) => h.edge_copy(i, p, j, q),
            AnyHost::Cycle(h) => h.edge_copy(i, p, j, q),
        }
    }
}
