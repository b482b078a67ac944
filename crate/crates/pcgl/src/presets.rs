//! Canonical presentations: the matrix Poisson algebra and Poisson affine spaces,
//! together with a solid-minor generator used as a ground-truth oracle.

use std::collections::BTreeMap;

use crate::arith::linalg::QMatrix;
use crate::arith::{qi, Laurent, Q};
use crate::error::{PcglError, Result};
use crate::poisson::Presentation;

/// Index of `t_rc` (0-based `r`, `c`) in the generator order `x_{(r-1)n+c}`.
pub fn matrix_index(n: usize, r: usize, c: usize) -> usize {
    r * n + c
}

fn matrix_names(m: usize, n: usize) -> Vec<String> {
    let wide = m >= 10 || n >= 10;
    let mut names = Vec::with_capacity(m * n);
    for r in 1..=m {
        for c in 1..=n {
            names.push(if wide {
                format!("t{r}_{c}")
            } else {
                format!("t{r}{c}")
            });
        }
    }
    names
}

/// The Poisson algebra of `m x n` matrices with its standard bracket
///
/// ```text
/// {t_ij, t_kj} = t_ij t_kj        (i < k)
/// {t_ij, t_il} = t_ij t_il        (j < l)
/// {t_ij, t_kl} = 0                (i < k, j > l)
/// {t_ij, t_kl} = 2 t_il t_kj      (i < k, j < l)
/// ```
///
/// under the torus `(K^x)^{m+n}` with `chi(t_rc) = e_r - e_{m+c}`. The
/// vectors `h_rc = -e_r + e_{m+c}` give `lambda_k = -2`, and the reverse
/// vectors `h*_rc = e_r - e_{m+c}` give `lambda*_j = 2`.
pub fn build_matrix_poisson(m: usize, n: usize) -> Presentation {
    assert!(m >= 1 && n >= 1, "matrix dimensions must be positive");
    let big_n = m * n;
    let d = m + n;
    let mut weights = vec![vec![0i64; d]; big_n];
    let mut h = vec![vec![Q::from_integer(0.into()); d]; big_n];
    let mut h_star = h.clone();
    for r in 0..m {
        for c in 0..n {
            let k = matrix_index(n, r, c);
            weights[k][r] = 1;
            weights[k][m + c] = -1;
            h[k][r] = qi(-1);
            h[k][m + c] = qi(1);
            h_star[k][r] = qi(1);
            h_star[k][m + c] = qi(-1);
        }
    }
    let mut delta = BTreeMap::new();
    for r in 0..m {
        for c in 0..n {
            for r2 in 0..r {
                for c2 in 0..c {
                    // {t_rc, t_r2c2} = -2 t_{r2 c} t_{r c2}
                    let k = matrix_index(n, r, c);
                    let j = matrix_index(n, r2, c2);
                    let a = Laurent::var(big_n, matrix_index(n, r2, c));
                    let b = Laurent::var(big_n, matrix_index(n, r, c2));
                    delta.insert((k, j), (&a * &b).scale(&qi(-2)));
                }
            }
        }
    }
    Presentation::from_h(weights, h, Some(h_star), delta)
        .expect("matrix preset is well formed")
        .with_names(matrix_names(m, n))
}

/// Poisson affine space `{x_k, x_j} = q_kj x_k x_j` under the standard
/// action of `(K^x)^N`. The vectors are `h_k = (q_k1, ..., q_k,k-1, 1, 0, ..., 0)`
/// and `h*_j = (0, ..., 0, 1, q_j,j+1, ..., q_jN)`, so every `lambda_k` and
/// `lambda*_j` equals 1.
pub fn build_affine_space(q: &QMatrix) -> Result<Presentation> {
    let n = q.len();
    if q.iter().any(|r| r.len() != n) {
        return Err(PcglError::ShapeMismatch {
            detail: "q must be square".into(),
        });
    }
    for a in 0..n {
        for b in 0..n {
            if q[a][b] != -q[b][a].clone() {
                return Err(PcglError::Input("q must be skew-symmetric".into()));
            }
        }
    }
    let weights: Vec<Vec<i64>> = (0..n)
        .map(|k| (0..n).map(|j| i64::from(j == k)).collect())
        .collect();
    let h: Vec<Vec<Q>> = (0..n)
        .map(|k| {
            (0..n)
                .map(|j| match j.cmp(&k) {
                    std::cmp::Ordering::Less => q[k][j].clone(),
                    std::cmp::Ordering::Equal => qi(1),
                    std::cmp::Ordering::Greater => qi(0),
                })
                .collect()
        })
        .collect();
    let h_star: Vec<Vec<Q>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|k| match k.cmp(&j) {
                    std::cmp::Ordering::Greater => q[j][k].clone(),
                    std::cmp::Ordering::Equal => qi(1),
                    std::cmp::Ordering::Less => qi(0),
                })
                .collect()
        })
        .collect();
    Presentation::from_h(weights, h, Some(h_star), BTreeMap::new())
}

/// The solid minor `Delta_{rows, cols}` of the generic `m x n` matrix, as a
/// polynomial in `t_11, ..., t_mn`. Intervals are 1-based and inclusive.
pub fn solid_minor(m: usize, n: usize, rows: (usize, usize), cols: (usize, usize)) -> Result<Laurent> {
    let (r0, r1) = rows;
    let (c0, c1) = cols;
    if r0 < 1 || c0 < 1 || r1 < r0 || c1 < c0 || r1 > m || c1 > n || r1 - r0 != c1 - c0 {
        return Err(PcglError::ShapeMismatch {
            detail: format!("rows [{r0},{r1}] and cols [{c0},{c1}] inside {m}x{n}"),
        });
    }
    let rs: Vec<usize> = (r0 - 1..r1).collect();
    let cs: Vec<usize> = (c0 - 1..c1).collect();
    Ok(laplace(m * n, n, &rs, &cs))
}

fn laplace(big_n: usize, n: usize, rows: &[usize], cols: &[usize]) -> Laurent {
    if rows.is_empty() {
        return Laurent::one(big_n);
    }
    let r = rows[0];
    let mut out = Laurent::zero(big_n);
    for (idx, &c) in cols.iter().enumerate() {
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = laplace(big_n, n, &rows[1..], &rest);
        let term = &Laurent::var(big_n, matrix_index(n, r, c)) * &minor;
        out = if idx % 2 == 0 { &out + &term } else { &out - &term };
    }
    out
}
