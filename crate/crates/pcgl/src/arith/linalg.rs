//! Dense exact linear algebra over the rationals.

use num_traits::{One, Zero};

use super::{qi, Q};

pub type QMatrix = Vec<Vec<Q>>;

/// Outcome of solving `A x = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<Q>),
    /// Consistent but underdetermined; carries the rank of `A`.
    Many(usize),
    Inconsistent,
}

pub fn zeros(rows: usize, cols: usize) -> QMatrix {
    vec![vec![Q::zero(); cols]; rows]
}

pub fn identity(n: usize) -> QMatrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Q::one();
    }
    m
}

pub fn from_int(m: &[Vec<i64>]) -> QMatrix {
    m.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect()
}

pub fn transpose(m: &QMatrix) -> QMatrix {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|r| r[j].clone()).collect())
        .collect()
}

pub fn mul(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let inner = b.len();
    let cols = b.first().map(|r| r.len()).unwrap_or(0);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut s = Q::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            s += &row[k] * &b[k][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

/// Row echelon reduction in place; returns the pivot columns.
fn reduce(m: &mut QMatrix, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot_row = m[row].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}

pub fn rank(m: &QMatrix) -> usize {
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut a = m.clone();
    reduce(&mut a, cols).len()
}

/// Solves `A x = b` exactly by Gauss-Jordan elimination on the augmented matrix.
pub fn solve(a: &QMatrix, b: &[Q]) -> Solution {
    let n = a.first().map(|r| r.len()).unwrap_or(0);
    let mut aug: QMatrix = a
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let pivots = reduce(&mut aug, n + 1);
    if pivots.last() == Some(&n) {
        return Solution::Inconsistent;
    }
    if pivots.len() < n {
        return Solution::Many(pivots.len());
    }
    Solution::Unique((0..n).map(|i| aug[i][n].clone()).collect())
}

/// Some solution of a consistent system `A x = b`, with free variables set
/// to zero; `None` when the system is inconsistent.
pub fn particular_solution(a: &QMatrix, b: &[Q]) -> Option<Vec<Q>> {
    let n = a.first().map(|r| r.len()).unwrap_or(0);
    let mut aug: QMatrix = a
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let pivots = reduce(&mut aug, n + 1);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut sol = vec![Q::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        sol[c] = aug[r][n].clone();
    }
    Some(sol)
}
