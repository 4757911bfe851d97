use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const MAX_DIGIT: u32 = 16;

/// One sphere-shell candidate: digits `0..=r` in base `t*r + 1`, `k` digits,
/// shell `sum (2d - r)^2 = shell`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShellParams {
    pub base: u128,
    pub digit_max: u32,
    pub digits: u32,
    pub shell: u32,
    pub size: u128,
    pub max_value: u128,
}

/// All shell candidates for one `t`, so that the best set below any bound is
/// a lookup.
#[derive(Clone, Debug)]
pub struct PfsFamily {
    t: u32,
    options: Vec<ShellParams>,
}

fn weight(d: u32, r: u32) -> u32 {
    let c = 2 * d as i64 - r as i64;
    (c * c) as u32
}

/// `table[pos][s]`: digit strings of length `pos` with shell sum `s`.
fn count_table(r: u32, k: u32) -> Vec<Vec<u128>> {
    let width = (k * r * r + 1) as usize;
    let mut table = vec![vec![0u128; width]];
    table[0][0] = 1;
    for pos in 1..=k as usize {
        let mut row = vec![0u128; width];
        for (s, &c) in table[pos - 1].iter().enumerate() {
            if c == 0 {
                continue;
            }
            for d in 0..=r {
                row[s + weight(d, r) as usize] += c;
            }
        }
        table.push(row);
    }
    table
}

impl PfsFamily {
    pub fn new(t: u32) -> Result<PfsFamily> {
        if t < 2 {
            return Err(Error::InvalidParams("progression-free sets need t >= 2".into()));
        }
        let mut options = vec![ShellParams { base: 2, digit_max: 1, digits: 0, shell: 0, size: 1, max_value: 0 }];
        for r in 1..=MAX_DIGIT {
            let Some(base) = (t as u128).checked_mul(r as u128).map(|v| v + 1) else { break };
            let mut k_max = 0u32;
            let mut power: u128 = 1;
            while let Some(next) = power.checked_mul(base).filter(|&p| p < 1u128 << 127) {
                power = next;
                k_max += 1;
            }
            if k_max == 0 {
                continue;
            }
            let table = count_table(r, k_max);
            let mut power: u128 = 1;
            for k in 1..=k_max {
                power *= base;
                let (shell, &size) = table[k as usize]
                    .iter()
                    .enumerate()
                    .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
                    .expect("non-empty row");
                let max_value = r as u128 * ((power - 1) / (base - 1));
                options.push(ShellParams { base, digit_max: r, digits: k, shell: shell as u32, size, max_value });
            }
        }
        Ok(PfsFamily { t, options })
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    /// Largest candidate whose elements all lie below `m`; ties go to the
    /// smaller digit range, then fewer digits.
    pub fn best(&self, m: u128) -> Result<ShellParams> {
        if m == 0 {
            return Err(Error::InvalidParams("m must be positive".into()));
        }
        Ok(*self
            .options
            .iter()
            .filter(|o| o.max_value < m)
            .max_by(|a, b| {
                a.size
                    .cmp(&b.size)
                    .then(b.digit_max.cmp(&a.digit_max))
                    .then(b.digits.cmp(&a.digits))
            })
            .expect("the empty digit string is always available"))
    }

    pub fn set(&self, m: u128) -> Result<ProgressionFreeSet> {
        Ok(ProgressionFreeSet::from_params(self.t, self.best(m)?))
    }
}

/// Integers whose base-`D` digit vectors share a sphere shell, stored
/// implicitly and ranked in increasing order.
#[derive(Clone, Debug)]
pub struct ProgressionFreeSet {
    t: u32,
    params: ShellParams,
    table: Vec<Vec<u128>>,
}

impl ProgressionFreeSet {
    fn from_params(t: u32, params: ShellParams) -> ProgressionFreeSet {
        let table = count_table(params.digit_max, params.digits);
        ProgressionFreeSet { t, params, table }
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn params(&self) -> ShellParams {
        self.params
    }

    pub fn len(&self) -> u128 {
        self.params.size
    }

    pub fn is_empty(&self) -> bool {
        self.params.size == 0
    }

    pub fn max_value(&self) -> u128 {
        self.params.max_value
    }

    /// `index`-th smallest element.
    pub fn nth(&self, mut index: u128) -> Option<u128> {
        if index >= self.len() {
            return None;
        }
        let ShellParams { base, digit_max: r, digits: k, shell, .. } = self.params;
        let mut remaining = shell;
        let mut value = 0u128;
        for pos in (0..k).rev() {
            for d in 0..=r {
                let w = weight(d, r);
                let c = if w <= remaining { self.table[pos as usize][(remaining - w) as usize] } else { 0 };
                if index < c {
                    value = value * base + d as u128;
                    remaining -= w;
                    break;
                }
                index -= c;
            }
        }
        Some(value)
    }

    /// Position of `x` in increasing order, `None` when `x` is not a member.
    pub fn rank(&self, x: u128) -> Option<u128> {
        let ShellParams { base, digit_max: r, digits: k, shell, .. } = self.params;
        let mut digits = Vec::with_capacity(k as usize);
        let mut rest = x;
        for _ in 0..k {
            let d = (rest % base) as u32;
            if d > r {
                return None;
            }
            digits.push(d);
            rest /= base;
        }
        if rest != 0 || digits.iter().map(|&d| weight(d, r)).sum::<u32>() != shell {
            return None;
        }
        let mut remaining = shell;
        let mut rank = 0u128;
        for pos in (0..k).rev() {
            let top = digits[pos as usize];
            for d in 0..top {
                let w = weight(d, r);
                if w <= remaining {
                    rank += self.table[pos as usize][(remaining - w) as usize];
                }
            }
            remaining -= weight(top, r);
        }
        Some(rank)
    }

    pub fn contains(&self, x: u128) -> bool {
        self.rank(x).is_some()
    }

    pub fn iter(&self) -> impl Iterator<Item = u128> + '_ {
        (0..self.len()).map(move |i| self.nth(i).expect("index in range"))
    }
}

/// Subset of `[0, m)` with no solution of `x_1 + ... + x_t = t * x_{t+1}`
/// other than all-equal.
pub fn progression_free_set(m: u128, t: u32) -> Result<ProgressionFreeSet> {
    PfsFamily::new(t)?.set(m)
}
