//! The eta/p/s combinatorics and the sequence of homogeneous Poisson-prime
//! elements of a Poisson-CGL extension.
//!
//! Generators are processed in order. When the table row of `delta_k` is
//! zero, `x_k` opens a new level set of `eta`. Otherwise exactly one of the
//! current last elements `j` of the level sets has `delta_k(y_j) != 0`; that
//! `j` becomes `p(k)` and
//! `y_k = y_{p(k)} x_k - lambda_k^{-1} delta_k(y_{p(k)})`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::linalg::{self, QMatrix};
use crate::arith::{omega, ExpVec, Laurent, Q};
use crate::error::{PcglError, Result};
use crate::poisson::Presentation;

/// Level-set data of `eta` with predecessor and successor maps.
///
/// `pred[k] == None` stands for `p(k) = -infinity` and `succ[k] == None` for
/// `s(k) = +infinity`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EtaData {
    pub eta: Vec<usize>,
    pub pred: Vec<Option<usize>>,
    pub succ: Vec<Option<usize>>,
    pub exchangeable: Vec<usize>,
    pub rank: usize,
}

impl EtaData {
    /// Builds all derived data from the predecessor map. Labels are assigned
    /// 0, 1, 2, ... in order of first appearance.
    pub fn from_pred(pred: Vec<Option<usize>>) -> Self {
        let n = pred.len();
        let mut eta = vec![0; n];
        let mut succ = vec![None; n];
        let mut next = 0;
        for k in 0..n {
            match pred[k] {
                None => {
                    eta[k] = next;
                    next += 1;
                }
                Some(j) => {
                    eta[k] = eta[j];
                    succ[j] = Some(k);
                }
            }
        }
        let exchangeable = (0..n).filter(|&k| succ[k].is_some()).collect();
        EtaData {
            eta,
            rank: next,
            pred,
            succ,
            exchangeable,
        }
    }

    pub fn n(&self) -> usize {
        self.eta.len()
    }

    pub fn is_exchangeable(&self, k: usize) -> bool {
        self.succ[k].is_some()
    }

    /// The level set containing `k`, in increasing order.
    pub fn class_of(&self, k: usize) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.eta[i] == self.eta[k]).collect()
    }

    /// All level sets, ordered by label.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.rank];
        for (k, &a) in self.eta.iter().enumerate() {
            out[a].push(k);
        }
        out
    }

    /// `s^m(i)`, or `None` once the chain leaves the level set.
    pub fn s_pow(&self, i: usize, m: usize) -> Option<usize> {
        (0..m).try_fold(i, |acc, _| self.succ[acc])
    }

    pub fn p_pow(&self, i: usize, m: usize) -> Option<usize> {
        (0..m).try_fold(i, |acc, _| self.pred[acc])
    }

    /// `O_-(l)`: number of predecessors of `l` in its level set.
    pub fn o_minus(&self, l: usize) -> usize {
        let mut m = 0;
        let mut cur = l;
        while let Some(p) = self.pred[cur] {
            cur = p;
            m += 1;
        }
        m
    }

    /// `O_+(l)`: number of successors of `l` in its level set.
    pub fn o_plus(&self, l: usize) -> usize {
        let mut m = 0;
        let mut cur = l;
        while let Some(s) = self.succ[cur] {
            cur = s;
            m += 1;
        }
        m
    }

    /// `e-bar_k = sum_m e_{p^m(k)}`.
    pub fn ebar(&self, k: usize) -> ExpVec {
        let mut v = ExpVec::zero(self.n());
        let mut cur = Some(k);
        while let Some(c) = cur {
            v.0[c] = 1;
            cur = self.pred[c];
        }
        v
    }
}

/// The prime elements `y_k`, the subtracted terms `c_k`, and their leading data.
#[derive(Clone, Debug, PartialEq)]
pub struct PrimeSequence {
    pub y: Vec<Laurent>,
    pub c: Vec<Laurent>,
    pub leading_exponents: Vec<ExpVec>,
    pub weights: Vec<Vec<i64>>,
}

/// `delta_k(f) = {x_k, f} - sigma_k(f) x_k` for `f` in `R_{k-1}`.
pub fn delta(p: &Presentation, k: usize, f: &Laurent) -> Result<Laurent> {
    p.delta(k, f)
}

/// Runs the predecessor search and builds `y_1, ..., y_N`.
pub fn compute_eta_and_primes(p: &Presentation) -> Result<(EtaData, PrimeSequence)> {
    let n = p.n();
    let mut pred = vec![None; n];
    let mut open: Vec<usize> = Vec::new();
    let mut y: Vec<Laurent> = Vec::with_capacity(n);
    let mut c: Vec<Laurent> = Vec::with_capacity(n);
    for k in 0..n {
        if p.delta_row_is_zero(k) {
            y.push(p.x(k));
            c.push(Laurent::zero(n));
            open.push(k);
            continue;
        }
        let mut hits = Vec::new();
        for &j in &open {
            let d = p.delta(k, &y[j])?;
            if !d.is_zero() {
                hits.push((j, d));
            }
        }
        match hits.len() {
            0 => return Err(PcglError::NoPredecessor { k }),
            1 => {}
            _ => {
                let mut candidates: Vec<usize> = hits.iter().map(|(j, _)| *j).collect();
                candidates.sort_unstable();
                return Err(PcglError::AmbiguousPredecessor { k, candidates });
            }
        }
        let (j, d) = hits.pop().unwrap();
        let lk = &p.lambda_diag()[k];
        if lk.is_zero() {
            return Err(PcglError::ZeroEigenvalue { k });
        }
        let ck = d.scale(&lk.recip());
        let yk = &(&y[j] * &p.x(k)) - &ck;
        pred[k] = Some(j);
        open.retain(|&o| o != j);
        open.push(k);
        y.push(yk);
        c.push(ck);
    }
    let eta = EtaData::from_pred(pred);
    let leading_exponents = y
        .iter()
        .map(|f| f.leading_term().map(|(_, e)| e.clone()))
        .collect::<Result<Vec<_>>>()?;
    let weights = y.iter().map(|f| p.weight_of(f)).collect::<Result<Vec<_>>>()?;
    Ok((
        eta,
        PrimeSequence {
            y,
            c,
            leading_exponents,
            weights,
        },
    ))
}

/// The matrices `alpha_kj = Omega_lambda(e_k, ebar_j)` and
/// `q_kj = Omega_lambda(ebar_k, ebar_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct QData {
    pub alpha: QMatrix,
    pub q: QMatrix,
}

pub fn alpha_q_matrices(p: &Presentation, eta: &EtaData) -> QData {
    let n = p.n();
    let ebar: Vec<ExpVec> = (0..n).map(|k| eta.ebar(k)).collect();
    let mut alpha = linalg::zeros(n, n);
    let mut q = linalg::zeros(n, n);
    for k in 0..n {
        let ek = ExpVec::unit(n, k);
        for j in 0..n {
            alpha[k][j] = omega(p.lambda(), &ek, &ebar[j]);
            q[k][j] = omega(p.lambda(), &ebar[k], &ebar[j]);
        }
    }
    QData { alpha, q }
}

/// Summary of a successful certification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertReport {
    pub homogeneity_checks: usize,
    pub leading_term_checks: usize,
    pub normality_checks: usize,
    pub pair_checks: usize,
    pub recursion_checks: usize,
}

fn cert_fail(what: String, lhs: String, rhs: String) -> PcglError {
    PcglError::CertFailure { what, lhs, rhs }
}

/// Verifies homogeneity, leading terms `x^{ebar_k}` with coefficient 1,
/// `{y_j, x_k} = -alpha_kj y_j x_k` whenever `s(j) > k`,
/// `{y_k, y_j} = q_kj y_k y_j` for all pairs, and
/// `delta_k(y_{p(k)}) = lambda_k c_k`, `delta_k(c_k) = 0`.
pub fn certify_prime_sequence(p: &Presentation, eta: &EtaData, seq: &PrimeSequence) -> Result<CertReport> {
    let n = p.n();
    let qd = alpha_q_matrices(p, eta);
    let mut report = CertReport {
        homogeneity_checks: 0,
        leading_term_checks: 0,
        normality_checks: 0,
        pair_checks: 0,
        recursion_checks: 0,
    };
    for k in 0..n {
        p.weight_of(&seq.y[k])?;
        report.homogeneity_checks += 1;
        let (c, e) = seq.y[k].leading_term()?;
        let want = eta.ebar(k);
        if !c.is_one() || *e != want {
            return Err(cert_fail(
                format!("leading term of y{}", k + 1),
                p.render(&Laurent::monomial(n, c.clone(), e.clone())),
                p.render(&Laurent::monomial(n, Q::one(), want)),
            ));
        }
        report.leading_term_checks += 1;
    }
    for j in 0..n {
        for k in 0..n {
            if eta.succ[j].is_some_and(|s| s <= k) {
                continue;
            }
            let lhs = p.bracket(&seq.y[j], &p.x(k));
            let rhs = (&seq.y[j] * &p.x(k)).scale(&-qd.alpha[k][j].clone());
            if lhs != rhs {
                return Err(cert_fail(
                    format!("{{y{}, x{}}}", j + 1, k + 1),
                    p.render(&lhs),
                    p.render(&rhs),
                ));
            }
            report.normality_checks += 1;
        }
    }
    for k in 0..n {
        for j in 0..k {
            let lhs = p.bracket(&seq.y[k], &seq.y[j]);
            let rhs = (&seq.y[k] * &seq.y[j]).scale(&qd.q[k][j]);
            if lhs != rhs {
                return Err(cert_fail(
                    format!("{{y{}, y{}}}", k + 1, j + 1),
                    p.render(&lhs),
                    p.render(&rhs),
                ));
            }
            report.pair_checks += 1;
        }
    }
    for k in 0..n {
        if let Some(j) = eta.pred[k] {
            let lhs = p.delta(k, &seq.y[j])?;
            let rhs = seq.c[k].scale(&p.lambda_diag()[k]);
            if lhs != rhs {
                return Err(cert_fail(
                    format!("delta_{}(y{})", k + 1, j + 1),
                    p.render(&lhs),
                    p.render(&rhs),
                ));
            }
            let dc = p.delta(k, &seq.c[k])?;
            if !dc.is_zero() {
                return Err(cert_fail(
                    format!("delta_{}(c{})", k + 1, k + 1),
                    p.render(&dc),
                    "0".into(),
                ));
            }
            report.recursion_checks += 1;
        }
    }
    Ok(report)
}

/// The Cauchon map
/// `theta(f) = sum_n (1/n!) (-1/lambda_k)^n delta_k^n(f) x_k^{-n}`,
/// a finite sum because `delta_k` is locally nilpotent.
pub fn cauchon_theta(p: &Presentation, k: usize, f: &Laurent) -> Result<Laurent> {
    let n = p.n();
    let mut term = p.delta(k, f).map(|_| f.clone())?;
    let factor = -p.lambda_diag()[k].recip();
    let xinv = p.x(k).pow(-1)?;
    let bound = (f.total_degree().max(0) as usize + 1) * p.default_nilpotence_bound();
    let mut out = Laurent::zero(n);
    let mut coef = Q::one();
    let mut xpow = Laurent::one(n);
    let mut step = 0usize;
    while !term.is_zero() {
        if step > bound {
            return Err(PcglError::NilpotenceBoundExceeded {
                k,
                j: k,
                bound,
                witness: p.render(&term),
            });
        }
        out = &out + &(&term * &xpow).scale(&coef);
        step += 1;
        term = p.delta_unchecked(k, &term);
        coef = &coef * &factor / Q::from_integer((step as i64).into());
        xpow = &xpow * &xinv;
    }
    Ok(out)
}

/// One multiplicative relation `psi_k = psi_{j_k}^{-1} prod_i psi_i^{f_ki}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HmaxEquation {
    pub k: usize,
    pub j: usize,
    pub f: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HmaxData {
    pub equations: Vec<HmaxEquation>,
    pub dimension: usize,
    pub rank: usize,
}

/// Equations describing the maximal torus. For every `k` with `delta_k != 0`
/// the smallest `j_k` with `delta_k(x_{j_k}) != 0` is chosen and `f_k` is the
/// exponent of the revlex-leading monomial of `delta_k(x_{j_k})`.
pub fn hmax_equations(p: &Presentation, eta: &EtaData) -> Result<HmaxData> {
    let n = p.n();
    let mut equations = Vec::new();
    for k in 0..n {
        if p.delta_row_is_zero(k) {
            continue;
        }
        let (j, poly) = (0..k)
            .map(|j| (j, p.delta_entry(k, j)))
            .find(|(_, d)| !d.is_zero())
            .expect("nonzero row has a nonzero entry");
        let (_, e) = poly.leading_term()?;
        equations.push(HmaxEquation { k, j, f: e.0.clone() });
    }
    let dimension = n - equations.len();
    if dimension != eta.rank {
        return Err(cert_fail(
            "maximal torus dimension".into(),
            dimension.to_string(),
            eta.rank.to_string(),
        ));
    }
    Ok(HmaxData {
        equations,
        dimension,
        rank: eta.rank,
    })
}
