use serde::Serialize;

use super::explicit::ExplicitHost;
use super::pfs::{PfsFamily, ProgressionFreeSet, ShellParams};
use super::{CopyId, Host};
use crate::error::{Error, Result};
use crate::graph::{generate, Family, Graph};
use crate::word::ceil_log2;

/// Arithmetic faithful host for the cycle `C_n`.
///
/// Copy `(x, b)` with `b` in a progression-free set `B` of `[0, m)` and
/// offset `x < m + n - 1` sits at position `x + i*b` in class `i`. Copies are
/// numbered `rank(b) * range + x`.
#[derive(Clone, Debug)]
pub struct ImplicitCycleHost {
    n: usize,
    m: u128,
    range: u128,
    pattern: Graph,
    set: ProgressionFreeSet,
}

#[derive(Serialize)]
struct ImplicitJson {
    n: usize,
    m: u128,
    class_size: u128,
    offset_range: u128,
    num_copies: u128,
    progression_free: ShellParams,
}

impl ImplicitCycleHost {
    pub fn new(n: usize, m: u128) -> Result<ImplicitCycleHost> {
        if n < 3 {
            return Err(Error::InvalidParams(format!("cycle host needs n >= 3, got {n}")));
        }
        let family = PfsFamily::new(n as u32 - 1)?;
        Self::with_family(n, m, &family)
    }

    fn with_family(n: usize, m: u128, family: &PfsFamily) -> Result<ImplicitCycleHost> {
        if m < 2 {
            return Err(Error::InvalidParams(format!("cycle host needs m >= 2, got {m}")));
        }
        (n as u128)
            .checked_mul(m)
            .ok_or_else(|| Error::InvalidParams("class size overflows".into()))?;
        let set = family.set(m)?;
        let range = m + n as u128 - 1;
        let pattern = generate(&Family::Cycle(n))?;
        Ok(ImplicitCycleHost { n, m, range, pattern, set })
    }

    fn copy_count(n: usize, m: u128, family: &PfsFamily) -> Option<u128> {
        family.best(m).ok()?.size.checked_mul(m + n as u128 - 1)
    }

    /// Host with the smallest `m` giving at least `2^k` copies.
    pub fn minimal_for(n: usize, k: usize) -> Result<ImplicitCycleHost> {
        if n < 3 {
            return Err(Error::InvalidParams(format!("cycle host needs n >= 3, got {n}")));
        }
        if k > 100 {
            return Err(Error::CapExceeded { what: "cycle host word length", size: k, cap: 100 });
        }
        let family = PfsFamily::new(n as u32 - 1)?;
        let target = 1u128 << k;
        let enough = |m: u128| Self::copy_count(n, m, &family).map_or(true, |c| c >= target);
        let mut hi: u128 = 2;
        while !enough(hi) {
            hi *= 2;
        }
        let mut lo = hi / 2;
        // invariant: enough(hi), and lo < 2 or !enough(lo)
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if enough(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let m = if lo >= 2 && enough(lo) { lo } else { hi.max(2) };
        Self::with_family(n, m, &family)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> u128 {
        self.m
    }

    pub fn offset_range(&self) -> u128 {
        self.range
    }

    pub fn progression_free_set(&self) -> &ProgressionFreeSet {
        &self.set
    }

    /// Bits needed to name a position, `ceil(log2(n*m))`.
    pub fn identity_length(&self) -> usize {
        ceil_log2(self.class_size())
    }

    /// `(x, b)` of a copy index.
    pub fn decode(&self, copy: CopyId) -> (u128, u128) {
        let b = self.set.nth(copy / self.range).expect("copy index in range");
        (copy % self.range, b)
    }

    fn encode(&self, x: u128, b: u128) -> Option<CopyId> {
        if x >= self.range {
            return None;
        }
        Some(self.set.rank(b)? * self.range + x)
    }

    /// All copies and edges as an explicit host. Only sensible for small `m`.
    pub fn materialize(&self) -> Result<ExplicitHost> {
        let size = self.num_copies();
        if size > 1 << 16 {
            return Err(Error::CapExceeded { what: "materialized copies", size: size as usize, cap: 1 << 16 });
        }
        let copies = (0..size)
            .map(|c| (0..self.n).map(|i| self.place(c, i) as usize).collect())
            .collect();
        ExplicitHost::from_copies(self.pattern.clone(), self.class_size() as usize, copies)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ImplicitJson {
            n: self.n,
            m: self.m,
            class_size: self.class_size(),
            offset_range: self.range,
            num_copies: self.num_copies(),
            progression_free: self.set.params(),
        })
        .expect("host serializes")
    }
}

impl Host for ImplicitCycleHost {
    fn pattern(&self) -> &Graph {
        &self.pattern
    }

    fn class_size(&self) -> u128 {
        self.n as u128 * self.m
    }

    fn num_copies(&self) -> u128 {
        self.set.len() * self.range
    }

    fn place(&self, copy: CopyId, class: usize) -> u128 {
        let (x, b) = self.decode(copy);
        x + class as u128 * b
    }

    fn is_edge(&self, i: usize, p: u128, j: usize, q: u128) -> bool {
        self.edge_copy(i, p, j, q).is_some()
    }

    fn edge_copy(&self, i: usize, p: u128, j: usize, q: u128) -> Option<CopyId> {
        let n = self.n;
        if i >= n || j >= n || p >= self.class_size() || q >= self.class_size() {
            return None;
        }
        // orient as (class, position) pairs along the cycle
        let ((i, p), (_, q)) = if j == i + 1 {
            ((i, p), (j, q))
        } else if i == j + 1 {
            ((j, q), (i, p))
        } else if i == n - 1 && j == 0 {
            ((i, p), (j, q))
        } else if i == 0 && j == n - 1 {
            ((j, q), (i, p))
        } else {
            return None;
        };
        if i == n - 1 {
            // closing edge from class n-1 back to class 0
            let diff = p.checked_sub(q)?;
            let t = (n - 1) as u128;
            if diff % t != 0 {
                return None;
            }
            self.encode(q, diff / t)
        } else {
            let b = q.checked_sub(p)?;
            let x = p.checked_sub(i as u128 * b)?;
            self.encode(x, b)
        }
    }
}

/// Smallest `K0 <= k_max` such that every `k` in `K0..=k_max` has identity
/// length below `k` on the minimal host. `None` when even `k_max` fails.
pub fn crossover_k(n: usize, k_max: usize) -> Result<Option<usize>> {
    let mut k0 = None;
    for k in (1..=k_max).rev() {
        if ImplicitCycleHost::minimal_for(n, k)?.identity_length() < k {
            k0 = Some(k);
        } else {
            break;
        }
    }
    Ok(k0)
}
