//! Symmetric Poisson-CGL extensions: reverse-order data, the permutation sets
//! `Xi_N` and `Gamma_N`, interval prime elements, per-permutation prime
//! sequences, u-elements and the normalizing rescaling of generators.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::linalg::{self, Solution};
use crate::arith::{omega, qi, ExpVec, Laurent, Q};
use crate::cgl::{compute_eta_and_primes, EtaData, PrimeSequence};
use crate::error::{PcglError, Result};
use crate::poisson::Presentation;

/// Result of the symmetry checks.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricReport {
    pub support_checks: usize,
    /// True when the reverse vectors had to be solved for.
    pub h_star_solved: bool,
    pub h_star: Option<Vec<Vec<Q>>>,
    pub lambda_star: Vec<Q>,
}

/// Checks that every `delta_k(x_j)` lies in the subalgebra generated by
/// `x_{j+1}, ..., x_{k-1}` and that reverse-order vectors `h*_j` exist with
/// `<h*_j, chi_k> = lambda_jk` for `k > j` and `lambda*_j = <h*_j, chi_j> != 0`.
/// Missing `h*` data is solved for.
pub fn validate_symmetric(p: &Presentation) -> Result<SymmetricReport> {
    let n = p.n();
    let mut support_checks = 0;
    for (&(k, j), poly) in p.delta_table() {
        if let Some(&v) = poly.variables().iter().find(|&&v| v <= j || v >= k) {
            return Err(PcglError::SupportViolation {
                k,
                j: Some(j),
                detail: format!(
                    "delta_{}(x{}) = {} involves x{}",
                    k + 1,
                    j + 1,
                    p.render(poly),
                    v + 1
                ),
            });
        }
        support_checks += 1;
    }
    if let Some(hs) = p.h_star() {
        for j in 0..n {
            for k in j + 1..n {
                let v = pair(&hs[j], &p.weights()[k]);
                if v != p.lambda()[j][k] {
                    return Err(PcglError::NoHStarSolution { j });
                }
            }
        }
        let ls = p.lambda_star().expect("h* implies lambda*").to_vec();
        if let Some(j) = ls.iter().position(|l| l.is_zero()) {
            return Err(PcglError::ZeroLambdaStar { j });
        }
        return Ok(SymmetricReport {
            support_checks,
            h_star_solved: false,
            h_star: Some(hs.to_vec()),
            lambda_star: ls,
        });
    }
    if let Some(ls) = p.lambda_star() {
        if let Some(j) = ls.iter().position(|l| l.is_zero()) {
            return Err(PcglError::ZeroLambdaStar { j });
        }
        return Ok(SymmetricReport {
            support_checks,
            h_star_solved: false,
            h_star: None,
            lambda_star: ls.to_vec(),
        });
    }
    let hs = solve_h_star(p)?;
    let lambda_star: Vec<Q> = (0..n).map(|j| pair(&hs[j], &p.weights()[j])).collect();
    Ok(SymmetricReport {
        support_checks,
        h_star_solved: true,
        h_star: Some(hs),
        lambda_star,
    })
}

fn pair(h: &[Q], w: &[i64]) -> Q {
    h.iter().zip(w).fold(Q::zero(), |acc, (a, &b)| acc + a * qi(b))
}

/// Solves `<h, chi_k> = lambda_jk` (`k > j`) for each `j`. When
/// `<h, chi_j>` is not forced by these equations, it is pinned to
/// `-lambda_{s(j)}` if `j` has a successor, and to `-lambda_j` otherwise.
fn solve_h_star(p: &Presentation) -> Result<Vec<Vec<Q>>> {
    let n = p.n();
    let d = p.torus_rank();
    let succ = compute_eta_and_primes(p).ok().map(|(eta, _)| eta.succ);
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let mut rows: Vec<Vec<Q>> = Vec::new();
        let mut rhs = Vec::new();
        for k in j + 1..n {
            rows.push(p.weights()[k].iter().map(|&w| qi(w)).collect());
            rhs.push(p.lambda()[j][k].clone());
        }
        let wj: Vec<Q> = p.weights()[j].iter().map(|&w| qi(w)).collect();
        let forced = {
            let mut with = rows.clone();
            with.push(wj.clone());
            linalg::rank(&with) == linalg::rank(&rows)
        };
        if !forced {
            let target = match succ.as_ref().and_then(|s| s[j]) {
                Some(s) => -p.lambda_diag()[s].clone(),
                None => -p.lambda_diag()[j].clone(),
            };
            rows.push(wj);
            rhs.push(target);
        }
        if rows.is_empty() {
            out.push(vec![Q::zero(); d]);
            continue;
        }
        let sol = match linalg::solve(&rows, &rhs) {
            Solution::Unique(v) => v,
            Solution::Many(_) => {
                linalg::particular_solution(&rows, &rhs).ok_or(PcglError::NoHStarSolution { j })?
            }
            Solution::Inconsistent => return Err(PcglError::NoHStarSolution { j }),
        };
        if pair(&sol, &p.weights()[j]).is_zero() {
            return Err(PcglError::ZeroLambdaStar { j });
        }
        out.push(sol);
    }
    Ok(out)
}

/// Returns the presentation with `h*` (or `lambda*`) attached, solving for it if needed.
pub fn with_reverse_data(p: &Presentation) -> Result<(Presentation, SymmetricReport)> {
    let report = validate_symmetric(p)?;
    let mut q = p.clone();
    if q.lambda_star().is_none() {
        match &report.h_star {
            Some(hs) => q.set_h_star(hs.clone()),
            None => q.set_lambda_star(report.lambda_star.clone()),
        }
    }
    Ok((q, report))
}

/// Positive integers `d_a` per level set containing exchangeable indices,
/// with `lambda*_l = d_{eta(l)} * scale` for every exchangeable `l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DIntegers {
    pub scale: Q,
    pub d: BTreeMap<usize, u64>,
}

impl DIntegers {
    pub fn for_index(&self, eta: &EtaData, k: usize) -> u64 {
        self.d.get(&eta.eta[k]).copied().unwrap_or(1)
    }
}

/// Finds the `d`-integers and checks the scalar chain
/// `lambda*_l = ... = lambda*_{s^{m-1}(l)} = -lambda_{s(l)} = ... = -lambda_{s^m(l)}`
/// on every level set with more than one element.
pub fn compute_d_integers(p: &Presentation, eta: &EtaData, lambda_star: &[Q]) -> Result<DIntegers> {
    for class in eta.classes() {
        if class.len() < 2 {
            continue;
        }
        let l = class[0];
        let v = &lambda_star[l];
        for (t, &k) in class.iter().enumerate() {
            if t + 1 < class.len() && lambda_star[k] != *v {
                return Err(PcglError::Incompatible {
                    l,
                    j: k,
                    reason: format!(
                        "lambda* differs along the level set ({} vs {})",
                        v, lambda_star[k]
                    ),
                });
            }
            if t >= 1 && -p.lambda_diag()[k].clone() != *v {
                return Err(PcglError::Incompatible {
                    l,
                    j: k,
                    reason: format!(
                        "lambda*_l = {} but -lambda_k = {}",
                        v,
                        -p.lambda_diag()[k].clone()
                    ),
                });
            }
        }
    }
    d_integers_for(eta, lambda_star)
}

/// The `d`-integers alone: finds `scale` and positive integers with
/// `lambda*_l = d_{eta(l)} * scale` for every exchangeable `l`.
pub fn d_integers_for(eta: &EtaData, lambda_star: &[Q]) -> Result<DIntegers> {
    let ex = &eta.exchangeable;
    let Some(&first) = ex.first() else {
        return Ok(DIntegers {
            scale: Q::one(),
            d: BTreeMap::new(),
        });
    };
    let sign_positive = lambda_star[first].is_positive();
    for &l in ex {
        if lambda_star[l].is_zero() || lambda_star[l].is_positive() != sign_positive {
            return Err(PcglError::Incompatible {
                l: first,
                j: l,
                reason: format!(
                    "ratio {}/{} is not a positive rational",
                    lambda_star[first], lambda_star[l]
                ),
            });
        }
    }
    let mut g = BigInt::zero();
    let mut lcm = BigInt::one();
    for &l in ex {
        g = g.gcd(lambda_star[l].numer());
        lcm = lcm.lcm(lambda_star[l].denom());
    }
    let mut scale = Q::new(g, lcm);
    if !sign_positive {
        scale = -scale;
    }
    let mut d = BTreeMap::new();
    for &l in ex {
        let m = &lambda_star[l] / &scale;
        debug_assert!(m.is_integer());
        let m: u64 = m.to_integer().try_into().map_err(|_| PcglError::Incompatible {
            l,
            j: l,
            reason: "d-integer too large".into(),
        })?;
        if d.insert(eta.eta[l], m).is_some_and(|prev| prev != m) {
            return Err(PcglError::Incompatible {
                l: first,
                j: l,
                reason: "lambda* differs inside one level set".into(),
            });
        }
    }
    Ok(DIntegers { scale, d })
}

/// True when every prefix `tau([1, k])` is an interval.
pub fn is_xi(tau: &[usize]) -> bool {
    let mut lo = usize::MAX;
    let mut hi = 0;
    for (k, &t) in tau.iter().enumerate() {
        lo = lo.min(t);
        hi = hi.max(t);
        if hi - lo != k {
            return false;
        }
    }
    let mut seen = vec![false; tau.len()];
    tau.iter()
        .all(|&t| t < seen.len() && !std::mem::replace(&mut seen[t], true))
}

/// Largest `N` for which `Xi_N` is enumerated in full.
pub const XI_ENUMERATION_CAP: usize = 20;

/// All of `Xi_N` (0-based one-line notation), in lexicographic order.
pub fn enumerate_xi(n: usize) -> Result<Vec<Vec<usize>>> {
    if n == 0 {
        return Ok(vec![Vec::new()]);
    }
    if n > XI_ENUMERATION_CAP {
        return Err(PcglError::Input(format!(
            "Xi_{n} has 2^{} elements; enumeration is capped at N = {XI_ENUMERATION_CAP}",
            n - 1
        )));
    }
    let mut out = Vec::with_capacity(1 << (n - 1));
    for start in 0..n {
        let mut cur = vec![start];
        extend_xi(n, start, start, &mut cur, &mut out);
    }
    Ok(out)
}

fn extend_xi(n: usize, lo: usize, hi: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == n {
        out.push(cur.clone());
        return;
    }
    if lo > 0 {
        cur.push(lo - 1);
        extend_xi(n, lo - 1, hi, cur, out);
        cur.pop();
    }
    if hi + 1 < n {
        cur.push(hi + 1);
        extend_xi(n, lo, hi + 1, cur, out);
        cur.pop();
    }
}

/// `tau_{i,j} = [i+1, ..., j, i, j+1, ..., N, i-1, ..., 1]` for 1-based `i <= j`.
pub fn tau_ij(n: usize, i: usize, j: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (i + 1..=j).collect();
    v.push(i);
    v.extend(j + 1..=n);
    v.extend((1..i).rev());
    v.into_iter().map(|x| x - 1).collect()
}

/// One step `tau -> tau' = tau (k, k+1)` of the chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaStep {
    /// Position `k` (0-based) of the swapped pair.
    pub k: usize,
    /// `tau(k)` and `tau(k+1)` before the swap (0-based values).
    pub left: usize,
    pub right: usize,
}

/// The linearly ordered subset `Gamma_N` of `Xi_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaChain {
    pub elements: Vec<Vec<usize>>,
    pub steps: Vec<GammaStep>,
}

impl GammaChain {
    /// For each step, whether the swapped values lie in one level set
    /// (the mutation case).
    pub fn mutation_flags(&self, eta: &EtaData) -> Vec<bool> {
        self.steps
            .iter()
            .map(|s| eta.eta[s.left] == eta.eta[s.right])
            .collect()
    }
}

/// `id = tau_{1,1} < tau_{1,2} < ... < tau_{1,N} = tau_{2,2} < ... < tau_{N-1,N} = w0`.
pub fn gamma_chain(n: usize) -> GammaChain {
    let mut elements = vec![(0..n).collect::<Vec<usize>>()];
    let mut steps = Vec::new();
    for i in 1..n {
        for j in i + 1..=n {
            let prev = elements.last().unwrap().clone();
            let next = tau_ij(n, i, j);
            let k = j - i - 1;
            debug_assert_eq!(
                {
                    let mut s = prev.clone();
                    s.swap(k, k + 1);
                    s
                },
                next
            );
            steps.push(GammaStep {
                k,
                left: prev[k],
                right: prev[k + 1],
            });
            elements.push(next);
        }
    }
    GammaChain { elements, steps }
}

pub fn invert(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &v) in perm.iter().enumerate() {
        inv[v] = i;
    }
    inv
}

/// Composition `(a b)(i) = a(b(i))`.
pub fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&i| a[i]).collect()
}

/// `tau_bullet`: for each level set `L`, the composite `tau_bullet tau` maps
/// `tau^{-1}(L)` increasingly onto `L`.
pub fn tau_bullet(tau: &[usize], eta: &EtaData) -> Vec<usize> {
    let bt = tau_bullet_tau(tau, eta);
    compose(&bt, &invert(tau))
}

/// The composite `tau_bullet tau`, sending positions to indices.
pub fn tau_bullet_tau(tau: &[usize], eta: &EtaData) -> Vec<usize> {
    let n = tau.len();
    let mut out = vec![0; n];
    for class in eta.classes() {
        let mut positions: Vec<usize> = (0..n).filter(|&a| eta.eta[tau[a]] == eta.eta[class[0]]).collect();
        positions.sort_unstable();
        for (pos, &target) in positions.iter().zip(&class) {
            out[*pos] = target;
        }
    }
    out
}

/// The interval prime `y_[i, s^m(i)]`.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalPrime {
    pub i: usize,
    pub m: usize,
    /// `i, s(i), ..., s^m(i)`.
    pub support: Vec<usize>,
    pub poly: Laurent,
    /// `e_[i, s^m(i)]`.
    pub exponent: ExpVec,
}

impl IntervalPrime {
    pub fn end(&self) -> usize {
        *self.support.last().unwrap()
    }
}

/// u-element data for `[i, s^m(i)]`.
#[derive(Clone, Debug, PartialEq)]
pub struct UElementData {
    pub i: usize,
    pub m: usize,
    pub u: Laurent,
    pub pi: Q,
    pub f: ExpVec,
    pub g: ExpVec,
}

/// A validated symmetric presentation with its level sets, prime sequence and
/// all interval primes.
#[derive(Clone, Debug)]
pub struct SymmetricCgl {
    pub p: Presentation,
    pub eta: EtaData,
    pub primes: PrimeSequence,
    pub lambda_star: Vec<Q>,
    pub report: SymmetricReport,
    intervals: BTreeMap<(usize, usize), IntervalPrime>,
}

impl SymmetricCgl {
    /// Computes `eta`, the primes, the reverse data and every interval prime.
    /// The axioms of the underlying Poisson algebra are not re-checked here;
    /// run [`crate::poisson::validate_algebra`] first for untrusted input.
    pub fn new(p: &Presentation) -> Result<Self> {
        let (p, report) = with_reverse_data(p)?;
        let (eta, primes) = compute_eta_and_primes(&p)?;
        let lambda_star = p.lambda_star().expect("reverse data attached").to_vec();
        let mut me = SymmetricCgl {
            p,
            eta,
            primes,
            lambda_star,
            report,
            intervals: BTreeMap::new(),
        };
        me.build_intervals()?;
        Ok(me)
    }

    pub fn n(&self) -> usize {
        self.p.n()
    }

    fn build_intervals(&mut self) -> Result<()> {
        let n = self.n();
        for i in 0..n {
            let mut poly = self.p.x(i);
            let mut support = vec![i];
            let mut m = 0;
            loop {
                let exponent = ExpVec::indicator(n, support.iter().copied());
                let (c, e) = poly.leading_term()?;
                if !c.is_one() || *e != exponent {
                    return Err(PcglError::CertFailure {
                        what: format!("leading term of y_[{}, s^{}({})]", i + 1, m, i + 1),
                        lhs: self.p.render(&Laurent::monomial(n, c.clone(), e.clone())),
                        rhs: self.p.render(&Laurent::monomial(n, Q::one(), exponent)),
                    });
                }
                self.intervals.insert(
                    (i, m),
                    IntervalPrime {
                        i,
                        m,
                        support: support.clone(),
                        poly: poly.clone(),
                        exponent,
                    },
                );
                let last = *support.last().unwrap();
                let Some(next) = self.eta.succ[last] else { break };
                let lk = &self.p.lambda_diag()[next];
                let corr = self.p.delta(next, &poly)?.scale(&lk.recip());
                poly = &(&poly * &self.p.x(next)) - &corr;
                support.push(next);
                m += 1;
            }
        }
        Ok(())
    }

    /// `y_[i, s^m(i)]`.
    pub fn interval_prime(&self, i: usize, m: usize) -> Result<&IntervalPrime> {
        self.intervals.get(&(i, m)).ok_or(PcglError::IndexError { i, m })
    }

    /// The interval prime with support running from `i` to `j` inside one level set.
    pub fn interval_between(&self, i: usize, j: usize) -> Option<&IntervalPrime> {
        let mut m = 0;
        let mut cur = i;
        while cur != j {
            cur = self.eta.succ[cur]?;
            m += 1;
        }
        self.intervals.get(&(i, m))
    }

    /// The interval primes selected for each position of `tau`:
    /// if `tau(k) >= tau(1)` the interval ends at `tau(k)` and reaches back
    /// along predecessors inside `tau([1, k])`; otherwise it starts at
    /// `tau(k)` and reaches forward along successors inside `tau([1, k])`.
    pub fn y_sequence_for_tau(&self, tau: &[usize]) -> Result<Vec<&IntervalPrime>> {
        if tau.len() != self.n() || !is_xi(tau) {
            return Err(PcglError::Input(format!(
                "{} is not an element of Xi_{}",
                one_line(tau),
                self.n()
            )));
        }
        let mut lo = tau[0];
        let mut hi = tau[0];
        let mut out = Vec::with_capacity(tau.len());
        for &t in tau {
            lo = lo.min(t);
            hi = hi.max(t);
            let (start, m) = if t >= tau[0] {
                let mut start = t;
                let mut m = 0;
                while let Some(pv) = self.eta.pred[start].filter(|&pv| pv >= lo) {
                    start = pv;
                    m += 1;
                }
                (start, m)
            } else {
                let mut end = t;
                let mut m = 0;
                while let Some(sv) = self.eta.succ[end].filter(|&sv| sv <= hi) {
                    end = sv;
                    m += 1;
                }
                (t, m)
            };
            out.push(self.interval_prime(start, m)?);
        }
        Ok(out)
    }

    /// `u = y_[i,s^{m-1}(i)] y_[s(i),s^m(i)] - y_[s(i),s^{m-1}(i)] y_[i,s^m(i)]`
    /// with its leading coefficient `pi`, leading exponent `f` and the
    /// decomposition `f = sum_k g_k e_[p^{O}(k), k]`.
    pub fn u_element_and_pi(&self, i: usize, m: usize) -> Result<UElementData> {
        let n = self.n();
        if m == 0 {
            return Err(PcglError::IndexError { i, m });
        }
        let big = self.interval_prime(i, m)?;
        let si = self.eta.succ[i].ok_or(PcglError::IndexError { i, m })?;
        let left = &self.interval_prime(i, m - 1)?.poly;
        let right = &self.interval_prime(si, m - 1)?.poly;
        let inner = if m >= 2 {
            self.interval_prime(si, m - 2)?.poly.clone()
        } else {
            Laurent::one(n)
        };
        let u = &(left * right) - &(&inner * &big.poly);
        let (pi, f) = {
            let (c, e) = u.leading_term()?;
            (c.clone(), e.clone())
        };
        let end = big.end();
        let class = self.eta.eta[i];
        for (k, &a) in f.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if k <= i || k >= end || self.eta.eta[k] == class {
                return Err(PcglError::LeadingFormViolation {
                    i,
                    m,
                    detail: format!("leading exponent {:?} touches index {}", f, k + 1),
                });
            }
        }
        let mut g = ExpVec::zero(n);
        let mut recon = ExpVec::zero(n);
        for k in i + 1..end {
            if self.eta.eta[k] == class || self.eta.succ[k].is_some_and(|s| s < end) {
                continue;
            }
            g.0[k] = f.0[k];
            let mut cur = Some(k);
            while let Some(c) = cur.filter(|&c| c > i) {
                recon.0[c] += f.0[k];
                cur = self.eta.pred[c];
            }
        }
        if recon != f {
            return Err(PcglError::LeadingFormViolation {
                i,
                m,
                detail: format!("leading exponent {:?} is not a sum of interval vectors", f),
            });
        }
        Ok(UElementData { i, m, u, pi, f, g })
    }

    /// All u-elements `[i, s^m(i)]` with `m >= 1`.
    pub fn all_u_elements(&self) -> Result<Vec<UElementData>> {
        let mut out = Vec::new();
        for &(i, m) in self.intervals.keys() {
            if m >= 1 {
                out.push(self.u_element_and_pi(i, m)?);
            }
        }
        Ok(out)
    }

    /// `Omega_lambda(e_I, e_J)`.
    pub fn omega_lambda(&self, a: &ExpVec, b: &ExpVec) -> Q {
        omega(self.p.lambda(), a, b)
    }
}

pub fn one_line(tau: &[usize]) -> String {
    let parts: Vec<String> = tau.iter().map(|t| (t + 1).to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// Normalizing rescaling data.
#[derive(Clone, Debug)]
pub struct Rescaling {
    /// New generators are `x'_j = gamma_j x_j`.
    pub gamma: Vec<Q>,
    pub presentation: Presentation,
}

/// Rescales generators so that every `pi_[i, s(i)]` equals 1, using
/// `gamma_i = gamma_{p(i)}^{-1} gamma^{f_[p(i),i]} pi_[p(i),i]^{-1}` and
/// `gamma_i = 1` when `p(i) = -infinity`. Afterwards every
/// `pi_[i, s^m(i)]` is checked to be 1.
pub fn rescale_generators(s: &SymmetricCgl) -> Result<Rescaling> {
    let n = s.n();
    let mut gamma = vec![Q::one(); n];
    for i in 0..n {
        let Some(pi_) = s.eta.pred[i] else { continue };
        let u = s.u_element_and_pi(pi_, 1)?;
        let mut g = gamma[pi_].recip() / &u.pi;
        for (j, &a) in u.f.0.iter().enumerate() {
            if a != 0 {
                g *= pow_q(&gamma[j], a);
            }
        }
        gamma[i] = g;
    }
    let presentation = s.p.rescaled(&gamma)?;
    let check = SymmetricCgl::new(&presentation)?;
    for u in check.all_u_elements()? {
        if !u.pi.is_one() {
            return Err(PcglError::CertFailure {
                what: format!("pi_[{}, s^{}({})] after rescaling", u.i + 1, u.m, u.i + 1),
                lhs: u.pi.to_string(),
                rhs: "1".into(),
            });
        }
    }
    Ok(Rescaling { gamma, presentation })
}

fn pow_q(x: &Q, e: i64) -> Q {
    let base = if e < 0 { x.recip() } else { x.clone() };
    (0..e.unsigned_abs()).fold(Q::one(), |acc, _| acc * &base)
}

/// The presentation obtained by adjoining generators in the order
/// `x_{tau(1)}, ..., x_{tau(N)}`. At each step the new generator uses `h` and
/// `delta` if it exceeds everything adjoined so far, and `h*`, `delta*`
/// otherwise. Generator `a` of the result is `x_{tau(a)}`.
pub fn permuted_presentation(s: &SymmetricCgl, tau: &[usize]) -> Result<Presentation> {
    let p = &s.p;
    let n = p.n();
    if tau.len() != n || !is_xi(tau) {
        return Err(PcglError::Input(format!("{} is not in Xi_{n}", one_line(tau))));
    }
    let inv = invert(tau);
    let rename: Vec<Laurent> = (0..n).map(|i| Laurent::var(n, inv[i])).collect();
    let mut delta = BTreeMap::new();
    for a in 0..n {
        for b in 0..a {
            let (ta, tb) = (tau[a], tau[b]);
            let lam = &p.lambda()[ta][tb];
            let d = p.generator_bracket(ta, tb) - &(&p.x(ta) * &p.x(tb)).scale(lam);
            if !d.is_zero() {
                delta.insert((a, b), d.substitute(&rename)?);
            }
        }
    }
    let weights: Vec<Vec<i64>> = tau.iter().map(|&t| p.weights()[t].clone()).collect();
    let mut hi = tau[0];
    let mut uses_h = vec![true; n];
    for a in 1..n {
        if tau[a] > hi {
            hi = tau[a];
        } else {
            uses_h[a] = false;
        }
    }
    let names: Vec<String> = tau.iter().map(|&t| p.names()[t].clone()).collect();
    let out = match (p.h(), p.h_star()) {
        (Some(h), Some(hs)) => {
            let rows: Vec<Vec<Q>> = (0..n)
                .map(|a| {
                    if uses_h[a] {
                        h[tau[a]].clone()
                    } else {
                        hs[tau[a]].clone()
                    }
                })
                .collect();
            Presentation::from_h(weights, rows, None, delta)?
        }
        _ => {
            let lam: Vec<Vec<Q>> = (0..n)
                .map(|a| (0..n).map(|b| p.lambda()[tau[a]][tau[b]].clone()).collect())
                .collect();
            let diag = (0..n)
                .map(|a| {
                    if uses_h[a] {
                        p.lambda_diag()[tau[a]].clone()
                    } else {
                        s.lambda_star[tau[a]].clone()
                    }
                })
                .collect();
            Presentation::from_lambda(weights, lam, diag, None, delta)?
        }
    };
    Ok(out.with_names(names))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;
    use crate::presets::{build_matrix_poisson, solid_minor};

    fn v(xs: &[usize]) -> Vec<usize> {
        xs.iter().map(|x| x - 1).collect()
    }

    #[test]
    fn xi_counts_and_membership() {
        assert_eq!(enumerate_xi(1).unwrap(), vec![vec![0]]);
        let x3 = enumerate_xi(3).unwrap();
        assert_eq!(x3.len(), 4);
        assert!(x3.iter().all(|t| is_xi(t)));
        assert_eq!(enumerate_xi(4).unwrap().len(), 8);
    }

    #[test]
    fn gamma_four() {
        let g = gamma_chain(4);
        let want: Vec<Vec<usize>> = [
            [1, 2, 3, 4],
            [2, 1, 3, 4],
            [2, 3, 1, 4],
            [2, 3, 4, 1],
            [3, 2, 4, 1],
            [3, 4, 2, 1],
            [4, 3, 2, 1],
        ]
        .iter()
        .map(|t| v(t))
        .collect();
        assert_eq!(g.elements, want);
        assert_eq!(g.steps.len(), 6);
    }

    #[test]
    fn tau_bullet_examples() {
        let s = SymmetricCgl::new(&build_matrix_poisson(2, 2)).unwrap();
        let id: Vec<usize> = (0..4).collect();
        assert_eq!(tau_bullet(&v(&[2, 3, 1, 4]), &s.eta), id);
        let bt = tau_bullet_tau(&v(&[2, 3, 4, 1]), &s.eta);
        // positions 3,4,1,2 map to 1,4,2,3
        assert_eq!(bt, v(&[2, 3, 1, 4]));
    }

    #[test]
    fn interval_primes_are_minors() {
        let s = SymmetricCgl::new(&build_matrix_poisson(2, 2)).unwrap();
        assert_eq!(
            s.interval_prime(0, 1).unwrap().poly,
            solid_minor(2, 2, (1, 2), (1, 2)).unwrap()
        );
        assert_eq!(s.interval_prime(1, 0).unwrap().poly, s.p.x(1));
        assert!(matches!(
            s.interval_prime(1, 1),
            Err(PcglError::IndexError { .. })
        ));
        let s3 = SymmetricCgl::new(&build_matrix_poisson(3, 3)).unwrap();
        assert_eq!(
            s3.interval_prime(0, 2).unwrap().poly,
            solid_minor(3, 3, (1, 3), (1, 3)).unwrap()
        );
    }

    #[test]
    fn tau_sequences() {
        let s = SymmetricCgl::new(&build_matrix_poisson(2, 2)).unwrap();
        let det = solid_minor(2, 2, (1, 2), (1, 2)).unwrap();
        let seq: Vec<Laurent> = s
            .y_sequence_for_tau(&v(&[2, 3, 4, 1]))
            .unwrap()
            .iter()
            .map(|ip| ip.poly.clone())
            .collect();
        assert_eq!(seq, vec![s.p.x(1), s.p.x(2), s.p.x(3), det.clone()]);
        let seq: Vec<Laurent> = s
            .y_sequence_for_tau(&v(&[2, 3, 1, 4]))
            .unwrap()
            .iter()
            .map(|ip| ip.poly.clone())
            .collect();
        assert_eq!(seq, vec![s.p.x(1), s.p.x(2), s.p.x(0), det]);
    }

    #[test]
    fn u_element_two_by_two() {
        let s = SymmetricCgl::new(&build_matrix_poisson(2, 2)).unwrap();
        let u = s.u_element_and_pi(0, 1).unwrap();
        assert_eq!(u.u, &s.p.x(1) * &s.p.x(2));
        assert!(u.pi.is_one());
        assert_eq!(u.f, ExpVec(vec![0, 1, 1, 0]));
        assert_eq!(u.g, ExpVec(vec![0, 1, 1, 0]));
    }

    #[test]
    fn rescaling_restores_pi() {
        let p = build_matrix_poisson(2, 2);
        // substitute x2 := 3 x2
        let pre = p.rescaled(&[q(1, 1), q(1, 3), q(1, 1), q(1, 1)]).unwrap();
        let s = SymmetricCgl::new(&pre).unwrap();
        assert_eq!(s.u_element_and_pi(0, 1).unwrap().pi, q(3, 1));
        let r = rescale_generators(&s).unwrap();
        assert_eq!(r.gamma, vec![q(1, 1), q(1, 1), q(1, 1), q(1, 3)]);
    }

    #[test]
    fn d_integers() {
        let s = SymmetricCgl::new(&build_matrix_poisson(2, 3)).unwrap();
        let d = compute_d_integers(&s.p, &s.eta, &s.lambda_star).unwrap();
        assert!(d.d.values().all(|&x| x == 1));
        assert_eq!(d.scale, q(2, 1));
    }
}
