//! Tableau simplex for packing programs `max 1.y  s.t.  M y <= 1, y >= 0`.
//!
//! The tableau is kept fraction free: every entry is an integer over the
//! common denominator `den` (the previous pivot), so each update is one exact
//! integer division and no gcd is ever taken.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Rational;

pub(crate) struct PackingOptimum {
    pub objective: Rational,
    /// Optimal `y`, one entry per column of `M`.
    pub primal: Vec<Rational>,
    /// Optimal covering dual `x`, one entry per row of `M`.
    pub dual: Vec<Rational>,
}

/// `columns[j]` lists the rows where column `j` of the 0/1 matrix `M` is 1.
/// The slack basis is feasible, so no phase one is needed; Bland's rule
/// prevents cycling.
pub(crate) fn solve_packing(rows: usize, columns: &[Vec<usize>]) -> PackingOptimum {
    let m = columns.len();
    let width = m + rows;
    let rhs = width;

    let mut tab = vec![vec![BigInt::zero(); width + 1]; rows];
    for (j, col) in columns.iter().enumerate() {
        for &r in col {
            tab[r][j] = BigInt::one();
        }
    }
    for (r, row) in tab.iter_mut().enumerate() {
        row[m + r] = BigInt::one();
        row[rhs] = BigInt::one();
    }
    // reduced costs, and minus the objective in the last slot
    let mut z: Vec<BigInt> = (0..=width).map(|j| if j < m { BigInt::one() } else { BigInt::zero() }).collect();
    let mut den = BigInt::one();
    let mut basis: Vec<usize> = (m..width).collect();

    while let Some(enter) = (0..width).find(|&j| z[j].is_positive()) {
        // min ratio tab[r][rhs] / tab[r][enter], ties to the smallest basic index
        let mut leave: Option<usize> = None;
        for r in 0..rows {
            if !tab[r][enter].is_positive() {
                continue;
            }
            leave = match leave {
                None => Some(r),
                Some(l) => {
                    let lhs = &tab[r][rhs] * &tab[l][enter];
                    let rhs_ = &tab[l][rhs] * &tab[r][enter];
                    if lhs < rhs_ || (lhs == rhs_ && basis[r] < basis[l]) {
                        Some(r)
                    } else {
                        Some(l)
                    }
                }
            };
        }
        let pr = leave.expect("packing programs are bounded");
        let pivot = tab[pr][enter].clone();
        let pivot_row = tab[pr].clone();
        let eliminate = |row: &mut Vec<BigInt>| {
            let f = row[enter].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                let t = &*v * &pivot - &f * p;
                *v = t / &den;
            }
        };
        for (r, row) in tab.iter_mut().enumerate() {
            if r != pr {
                eliminate(row);
            }
        }
        eliminate(&mut z);
        den = pivot;
        basis[pr] = enter;
    }

    let frac = |v: &BigInt| Rational::new(v.clone(), den.clone());
    let mut primal = vec![Rational::zero(); m];
    for (r, &b) in basis.iter().enumerate() {
        if b < m {
            primal[b] = frac(&tab[r][rhs]);
        }
    }
    let dual = (0..rows).map(|r| -frac(&z[m + r])).collect();
    PackingOptimum { objective: -frac(&z[rhs]), primal, dual }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn triangle_edges() {
        // rows: vertices of a triangle, columns: its edges; fractional matching 3/2
        let out = solve_packing(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]);
        assert_eq!(out.objective, r(3, 2));
        assert!(out.primal.iter().all(|v| *v == r(1, 2)));
        assert!(out.dual.iter().all(|v| *v == r(1, 2)));
    }

    #[test]
    fn degenerate_columns() {
        // identical columns and single-row columns
        let out = solve_packing(2, &[vec![0, 1], vec![0, 1], vec![0], vec![1]]);
        assert_eq!(out.objective, r(2, 1));
        let dual_sum: Rational = out.dual.iter().sum();
        assert_eq!(dual_sum, out.objective);
    }
}
