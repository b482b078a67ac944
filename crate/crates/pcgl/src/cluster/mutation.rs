//! Exchange matrices, compatible pairs and their mutations.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::arith::linalg::{self, QMatrix};
use crate::arith::{qi, Q};
use crate::error::{PcglError, Result};

/// An `N x |ex|` integer matrix whose columns are indexed by the
/// exchangeable indices `ex` (in increasing order).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExchangeMatrix {
    pub ex: Vec<usize>,
    /// Row-major, `rows[i][c]` is `b_{i, ex[c]}`.
    pub rows: Vec<Vec<i64>>,
}

impl ExchangeMatrix {
    pub fn new(ex: Vec<usize>, rows: Vec<Vec<i64>>) -> Result<Self> {
        if rows.iter().any(|r| r.len() != ex.len()) {
            return Err(PcglError::ShapeMismatch {
                detail: format!("every row of B must have {} entries", ex.len()),
            });
        }
        if ex.iter().any(|&k| k >= rows.len()) || ex.windows(2).any(|w| w[0] >= w[1]) {
            return Err(PcglError::ShapeMismatch {
                detail: "ex must be increasing and inside the row range".into(),
            });
        }
        Ok(ExchangeMatrix { ex, rows })
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// Position of `k` among the columns.
    pub fn col_of(&self, k: usize) -> Option<usize> {
        self.ex.binary_search(&k).ok()
    }

    /// `b_{ik}` for `k` in `ex`.
    pub fn entry(&self, i: usize, k: usize) -> i64 {
        self.col_of(k).map(|c| self.rows[i][c]).unwrap_or(0)
    }

    /// Column `b^k` as a vector of length `N`.
    pub fn column(&self, k: usize) -> Option<Vec<i64>> {
        let c = self.col_of(k)?;
        Some(self.rows.iter().map(|r| r[c]).collect())
    }

    pub fn to_q(&self) -> QMatrix {
        linalg::from_int(&self.rows)
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.to_q())
    }

    /// True when `d_i b_ij = -d_j b_ji` for all `i, j` in `ex`.
    pub fn is_skew_symmetrized_by(&self, d: impl Fn(usize) -> i64) -> bool {
        self.ex.iter().all(|&i| {
            self.ex
                .iter()
                .all(|&j| d(i) * self.entry(i, j) == -d(j) * self.entry(j, i))
        })
    }
}

/// `b'_ij = -b_ij` if `i = k` or `j = k`, and
/// `b'_ij = b_ij + (|b_ik| b_kj + b_ik |b_kj|) / 2` otherwise.
pub fn mutate_matrix(b: &ExchangeMatrix, k: usize) -> Result<ExchangeMatrix> {
    let ck = b.col_of(k).ok_or(PcglError::NotExchangeable { k })?;
    let mut rows = b.rows.clone();
    for (i, row) in rows.iter_mut().enumerate() {
        for (c, &j) in b.ex.iter().enumerate() {
            let bij = b.rows[i][c];
            row[c] = if i == k || j == k {
                -bij
            } else {
                let bik = b.rows[i][ck];
                let bkj = b.rows[k][c];
                bij + (bik.abs() * bkj + bik * bkj.abs()) / 2
            };
        }
    }
    Ok(ExchangeMatrix {
        ex: b.ex.clone(),
        rows,
    })
}

/// `E_eps` (`N x N`): identity except column `k`, which has `-1` at `k` and
/// `max(0, -eps b_ik)` elsewhere.
pub fn e_matrix(b: &ExchangeMatrix, k: usize, eps: i64) -> Result<QMatrix> {
    let ck = b.col_of(k).ok_or(PcglError::NotExchangeable { k })?;
    let n = b.n();
    let mut e = linalg::identity(n);
    for (i, row) in e.iter_mut().enumerate() {
        row[k] = if i == k {
            qi(-1)
        } else {
            qi((-eps * b.rows[i][ck]).max(0))
        };
    }
    Ok(e)
}

/// `F_eps` (`|ex| x |ex|`): identity except row `k`, which has `-1` at `k`
/// and `max(0, eps b_kj)` elsewhere.
pub fn f_matrix(b: &ExchangeMatrix, k: usize, eps: i64) -> Result<QMatrix> {
    let ck = b.col_of(k).ok_or(PcglError::NotExchangeable { k })?;
    let m = b.ex.len();
    let mut f = linalg::identity(m);
    for c in 0..m {
        f[ck][c] = if c == ck {
            qi(-1)
        } else {
            qi((eps * b.rows[k][c]).max(0))
        };
    }
    Ok(f)
}

/// `mu_k(r) = E_eps^T r E_eps` for one sign.
pub fn mutate_r_with(r: &QMatrix, b: &ExchangeMatrix, k: usize, eps: i64) -> Result<QMatrix> {
    let e = e_matrix(b, k, eps)?;
    Ok(linalg::mul(&linalg::mul(&linalg::transpose(&e), r), &e))
}

/// A skew-symmetric `r` together with an exchange matrix.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompatiblePair {
    #[serde(serialize_with = "crate::io::ser_qmatrix")]
    pub r: QMatrix,
    pub btilde: ExchangeMatrix,
}

/// Checks `sum_i b_ik r_ij = 0` for `k` in `ex`, `j != k`, and that the
/// diagonal entries `beta_k = (B^T r)_kk` are nonzero with
/// `beta_k b_kj = -beta_j b_jk`. Returns `beta` in column order.
pub fn check_compatible(r: &QMatrix, b: &ExchangeMatrix) -> Result<Vec<Q>> {
    let n = b.n();
    if r.len() != n || r.iter().any(|row| row.len() != n) {
        return Err(PcglError::ShapeMismatch {
            detail: format!("r must be {n} x {n}"),
        });
    }
    for i in 0..n {
        for j in 0..n {
            if r[i][j] != -r[j][i].clone() {
                return Err(PcglError::Input(format!(
                    "r is not skew-symmetric at ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let mut beta = Vec::with_capacity(b.ex.len());
    for (c, &k) in b.ex.iter().enumerate() {
        for j in 0..n {
            let v = (0..n).fold(Q::zero(), |acc, i| acc + qi(b.rows[i][c]) * &r[i][j]);
            if j == k {
                if v.is_zero() {
                    return Err(PcglError::CompatibilityFailure { k, j });
                }
                beta.push(v);
            } else if !v.is_zero() {
                return Err(PcglError::CompatibilityFailure { k, j });
            }
        }
    }
    for (a, &k) in b.ex.iter().enumerate() {
        for (c, &j) in b.ex.iter().enumerate() {
            if &beta[a] * qi(b.entry(k, j)) != -(&beta[c] * qi(b.entry(j, k))) {
                return Err(PcglError::CompatibilityFailure { k, j });
            }
        }
    }
    Ok(beta)
}

/// `B^T r` as an `|ex| x N` matrix.
pub fn bt_r(r: &QMatrix, b: &ExchangeMatrix) -> QMatrix {
    linalg::mul(&linalg::transpose(&b.to_q()), r)
}

/// Mutates a compatible pair at `k`. Both signs are computed and must agree,
/// `E B F` must equal the entry formula, the result must be compatible and
/// `B^T r` must be unchanged.
pub fn mutate_pair(pair: &CompatiblePair, k: usize) -> Result<CompatiblePair> {
    let b = &pair.btilde;
    let before = check_compatible(&pair.r, b)?;
    let plus = mutate_r_with(&pair.r, b, k, 1)?;
    let minus = mutate_r_with(&pair.r, b, k, -1)?;
    if plus != minus {
        return Err(PcglError::EpsilonMismatch { k });
    }
    let b2 = mutate_matrix(b, k)?;
    for eps in [1, -1] {
        let ebf = linalg::mul(
            &linalg::mul(&e_matrix(b, k, eps)?, &b.to_q()),
            &f_matrix(b, k, eps)?,
        );
        if ebf != b2.to_q() {
            return Err(PcglError::EpsilonMismatch { k });
        }
    }
    let out = CompatiblePair { r: plus, btilde: b2 };
    let after = check_compatible(&out.r, &out.btilde).map_err(|_| PcglError::CompatibilityLost { k })?;
    let skew_ok = before.iter().all(|x| x.is_positive()) || before.iter().all(|x| x.is_negative());
    if skew_ok && bt_r(&out.r, &out.btilde) != bt_r(&pair.r, b) {
        return Err(PcglError::CompatibilityLost { k });
    }
    debug_assert_eq!(after.len(), before.len());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m22_q() -> QMatrix {
        // q for O(M_{2,2}) in the basis y = (t11, t12, t21, Delta)
        linalg::from_int(&[
            vec![0, 1, 1, 0],
            vec![-1, 0, 0, 0],
            vec![-1, 0, 0, 0],
            vec![0, 0, 0, 0],
        ])
    }

    #[test]
    fn column_sign_flip() {
        let b = ExchangeMatrix::new(vec![0], vec![vec![0], vec![-1], vec![-1], vec![1]]).unwrap();
        let m = mutate_matrix(&b, 0).unwrap();
        assert_eq!(m.rows, vec![vec![0], vec![1], vec![1], vec![-1]]);
        let b2 = ExchangeMatrix::new(vec![0], vec![vec![0], vec![2]]).unwrap();
        assert_eq!(mutate_matrix(&b2, 0).unwrap().rows, vec![vec![0], vec![-2]]);
        assert_eq!(mutate_matrix(&b2, 1), Err(PcglError::NotExchangeable { k: 1 }));
    }

    #[test]
    fn compatible_pair_two_by_two() {
        let b = ExchangeMatrix::new(vec![0], vec![vec![0], vec![-1], vec![-1], vec![1]]).unwrap();
        assert_eq!(check_compatible(&m22_q(), &b).unwrap(), vec![qi(2)]);
        let flipped = mutate_matrix(&b, 0).unwrap();
        assert_eq!(check_compatible(&m22_q(), &flipped).unwrap(), vec![qi(-2)]);
        let pair = CompatiblePair {
            r: m22_q(),
            btilde: b,
        };
        let m = mutate_pair(&pair, 0).unwrap();
        assert_eq!(check_compatible(&m.r, &m.btilde).unwrap(), vec![qi(2)]);
        assert_eq!(mutate_pair(&m, 0).unwrap(), pair);
    }

    #[test]
    fn empty_exchange_part() {
        let b = ExchangeMatrix::new(vec![], vec![vec![], vec![]]).unwrap();
        let r = linalg::from_int(&[vec![0, 1], vec![-1, 0]]);
        assert!(check_compatible(&r, &b).unwrap().is_empty());
    }
}
