//! Torus-graded Poisson algebras given by a bracket table on generators.
//!
//! A presentation fixes generators `x_1, ..., x_N`, their torus weights, the
//! vectors `h_k` acting diagonally and a table of `delta_k(x_j)` for `j < k`.
//! The bracket on generators is
//! `{x_k, x_j} = lambda_kj x_k x_j + delta_k(x_j)` for `k > j`, and it is
//! extended to all Laurent polynomials as a biderivation:
//! `{f, g} = sum_{a,b} (df/dx_a)(dg/dx_b) {x_a, x_b}`.
//! Because of that extension, the Jacobi identity only needs checking on
//! triples of generators.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::arith::linalg::{self, QMatrix};
use crate::arith::{default_names, qi, ExpVec, Laurent, Q};
use crate::error::{PcglError, Result};

/// Declarative presentation of an iterated Poisson-Ore extension with a torus action.
#[derive(Clone, Debug, PartialEq)]
pub struct Presentation {
    n: usize,
    torus_rank: usize,
    weights: Vec<Vec<i64>>,
    h: Option<Vec<Vec<Q>>>,
    h_star: Option<Vec<Vec<Q>>>,
    lambda: QMatrix,
    lambda_diag: Vec<Q>,
    lambda_star: Option<Vec<Q>>,
    delta: BTreeMap<(usize, usize), Laurent>,
    names: Vec<String>,
    table: Vec<Vec<Laurent>>,
}

impl Presentation {
    /// Builds a presentation from `h_k` vectors; `lambda_kj = <h_k, chi_j>`
    /// for `j < k` and `lambda_k = <h_k, chi_k>` are derived.
    pub fn from_h(
        weights: Vec<Vec<i64>>,
        h: Vec<Vec<Q>>,
        h_star: Option<Vec<Vec<Q>>>,
        delta: BTreeMap<(usize, usize), Laurent>,
    ) -> Result<Self> {
        let n = weights.len();
        let d = weights.first().map(|w| w.len()).unwrap_or(0);
        check_rows("weights", &weights, n, d)?;
        check_rows("h", &h, n, d)?;
        if let Some(hs) = &h_star {
            check_rows("h_star", hs, n, d)?;
        }
        let mut lambda = linalg::zeros(n, n);
        for k in 0..n {
            for j in 0..k {
                let v = pairing(&h[k], &weights[j]);
                lambda[j][k] = -v.clone();
                lambda[k][j] = v;
            }
        }
        let lambda_diag = (0..n).map(|k| pairing(&h[k], &weights[k])).collect();
        let lambda_star = h_star
            .as_ref()
            .map(|hs| (0..n).map(|j| pairing(&hs[j], &weights[j])).collect());
        Self::assemble(
            n,
            d,
            weights,
            Some(h),
            h_star,
            lambda,
            lambda_diag,
            lambda_star,
            delta,
        )
    }

    /// Raw mode: the scalars `lambda_kj`, `lambda_k` (and optionally
    /// `lambda*_j`) are supplied directly, so the condition that they come from
    /// the torus is asserted rather than verified.
    pub fn from_lambda(
        weights: Vec<Vec<i64>>,
        lambda: QMatrix,
        lambda_diag: Vec<Q>,
        lambda_star: Option<Vec<Q>>,
        delta: BTreeMap<(usize, usize), Laurent>,
    ) -> Result<Self> {
        let n = weights.len();
        let d = weights.first().map(|w| w.len()).unwrap_or(0);
        check_rows("weights", &weights, n, d)?;
        check_rows("lambda", &lambda, n, n)?;
        if lambda_diag.len() != n || lambda_star.as_ref().is_some_and(|s| s.len() != n) {
            return Err(PcglError::ShapeMismatch {
                detail: "eigenvalue vectors must have one entry per generator".into(),
            });
        }
        Self::assemble(n, d, weights, None, None, lambda, lambda_diag, lambda_star, delta)
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        n: usize,
        torus_rank: usize,
        weights: Vec<Vec<i64>>,
        h: Option<Vec<Vec<Q>>>,
        h_star: Option<Vec<Vec<Q>>>,
        lambda: QMatrix,
        lambda_diag: Vec<Q>,
        lambda_star: Option<Vec<Q>>,
        mut delta: BTreeMap<(usize, usize), Laurent>,
    ) -> Result<Self> {
        for (&(k, j), poly) in &delta {
            if j >= k || k >= n {
                return Err(PcglError::Input(format!(
                    "delta entry (k={}, j={}) must satisfy j < k <= {n}",
                    k + 1,
                    j + 1
                )));
            }
            if poly.nvars() != n {
                return Err(PcglError::ShapeMismatch {
                    detail: format!("delta entry (k={}, j={}) has wrong arity", k + 1, j + 1),
                });
            }
        }
        delta.retain(|_, p| !p.is_zero());
        let mut p = Presentation {
            n,
            torus_rank,
            weights,
            h,
            h_star,
            lambda,
            lambda_diag,
            lambda_star,
            delta,
            names: default_names(n),
            table: Vec::new(),
        };
        p.table = p.build_table();
        Ok(p)
    }

    fn build_table(&self) -> Vec<Vec<Laurent>> {
        let n = self.n;
        let mut t = vec![vec![Laurent::zero(n); n]; n];
        for k in 0..n {
            for j in 0..k {
                let mut v = (&Laurent::var(n, k) * &Laurent::var(n, j)).scale(&self.lambda[k][j]);
                if let Some(d) = self.delta.get(&(k, j)) {
                    v = &v + d;
                }
                t[j][k] = -&v;
                t[k][j] = v;
            }
        }
        t
    }

    /// Replaces the display names of the generators.
    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.n);
        self.names = names;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn torus_rank(&self) -> usize {
        self.torus_rank
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    pub fn h(&self) -> Option<&[Vec<Q>]> {
        self.h.as_deref()
    }

    pub fn h_star(&self) -> Option<&[Vec<Q>]> {
        self.h_star.as_deref()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// The skew-symmetric matrix `(lambda_kj)`.
    pub fn lambda(&self) -> &QMatrix {
        &self.lambda
    }

    /// `lambda_k`, the eigenvalue of `h_k` on `x_k`.
    pub fn lambda_diag(&self) -> &[Q] {
        &self.lambda_diag
    }

    /// `lambda*_j`, when reverse-order data is attached.
    pub fn lambda_star(&self) -> Option<&[Q]> {
        self.lambda_star.as_deref()
    }

    pub fn delta_table(&self) -> &BTreeMap<(usize, usize), Laurent> {
        &self.delta
    }

    /// `delta_k(x_j)` (zero when absent).
    pub fn delta_entry(&self, k: usize, j: usize) -> Laurent {
        self.delta
            .get(&(k, j))
            .cloned()
            .unwrap_or_else(|| Laurent::zero(self.n))
    }

    /// True when no table entry of row `k` is nonzero.
    pub fn delta_row_is_zero(&self, k: usize) -> bool {
        self.delta.range((k, 0)..(k + 1, 0)).next().is_none()
    }

    /// The bracket `{x_a, x_b}` of two generators.
    pub fn generator_bracket(&self, a: usize, b: usize) -> &Laurent {
        &self.table[a][b]
    }

    /// Attaches reverse-order data `h*_j`.
    pub fn set_h_star(&mut self, h_star: Vec<Vec<Q>>) {
        let ls = (0..self.n)
            .map(|j| pairing(&h_star[j], &self.weights[j]))
            .collect();
        self.h_star = Some(h_star);
        self.lambda_star = Some(ls);
    }

    /// Attaches `lambda*_j` directly (raw mode).
    pub fn set_lambda_star(&mut self, ls: Vec<Q>) {
        self.lambda_star = Some(ls);
    }

    pub fn x(&self, i: usize) -> Laurent {
        Laurent::var(self.n, i)
    }

    pub fn render(&self, f: &Laurent) -> String {
        f.to_string_with(&self.names)
    }

    /// Poisson bracket of two Laurent polynomials.
    pub fn bracket(&self, f: &Laurent, g: &Laurent) -> Laurent {
        let fv = f.variables();
        let gv = g.variables();
        let df: Vec<(usize, Laurent)> = fv.iter().map(|&a| (a, f.partial(a))).collect();
        let dg: Vec<(usize, Laurent)> = gv.iter().map(|&b| (b, g.partial(b))).collect();
        let mut out = Laurent::zero(self.n);
        for (a, fa) in &df {
            let mut inner = Laurent::zero(self.n);
            for (b, gb) in &dg {
                let t = &self.table[*a][*b];
                if !t.is_zero() {
                    inner = &inner + &(gb * t);
                }
            }
            if !inner.is_zero() {
                out = &out + &(fa * &inner);
            }
        }
        out
    }

    /// Torus weight of a homogeneous element.
    pub fn weight_of(&self, f: &Laurent) -> Result<Vec<i64>> {
        let mut it = f.terms();
        let (e0, _) = it.next().ok_or(PcglError::ZeroPolynomial)?;
        let w0 = self.weight_of_exp(e0);
        for (e, _) in it {
            if self.weight_of_exp(e) != w0 {
                return Err(PcglError::Inhomogeneous {
                    first: self.render(&Laurent::monomial(self.n, Q::one(), e0.clone())),
                    second: self.render(&Laurent::monomial(self.n, Q::one(), e.clone())),
                });
            }
        }
        Ok(w0)
    }

    /// `sum_j e_j chi_{x_j}`.
    pub fn weight_of_exp(&self, e: &ExpVec) -> Vec<i64> {
        let mut w = vec![0; self.torus_rank];
        for (j, &a) in e.0.iter().enumerate() {
            if a != 0 {
                for (t, &c) in self.weights[j].iter().enumerate() {
                    w[t] += a * c;
                }
            }
        }
        w
    }

    /// `sigma_k(f)`: the diagonal action of `h_k`, scaling `x^e` by `sum_j e_j lambda_kj`.
    pub fn sigma(&self, k: usize, f: &Laurent) -> Laurent {
        let row = &self.lambda[k];
        f.map_diagonal(|e| {
            let mut s = Q::zero();
            for (j, &a) in e.0.iter().enumerate() {
                if a != 0 {
                    s += &row[j] * qi(a);
                }
            }
            s
        })
    }

    /// `delta_k(f)` for `f` in the subalgebra generated by `x_1, ..., x_{k-1}`.
    ///
    /// `delta_k` is a derivation of the underlying commutative algebra, so it
    /// is determined by the table row `delta_k(x_j)`.
    pub fn delta(&self, k: usize, f: &Laurent) -> Result<Laurent> {
        if let Some(&v) = f.variables().iter().find(|&&v| v >= k) {
            return Err(PcglError::SupportViolation {
                k,
                j: Some(v),
                detail: format!("argument {} involves generators beyond x{}", self.render(f), k),
            });
        }
        Ok(self.delta_unchecked(k, f))
    }

    pub(crate) fn delta_unchecked(&self, k: usize, f: &Laurent) -> Laurent {
        if self.delta_row_is_zero(k) {
            return Laurent::zero(self.n);
        }
        let images: Vec<Laurent> = (0..self.n)
            .map(|j| {
                if j < k {
                    self.delta_entry(k, j)
                } else {
                    Laurent::zero(self.n)
                }
            })
            .collect();
        f.apply_derivation(&images)
    }

    /// Default bound on iterations in the local nilpotence check:
    /// `2 + N * (max total degree over the delta table)`.
    pub fn default_nilpotence_bound(&self) -> usize {
        let maxdeg = self
            .delta
            .values()
            .map(|p| p.total_degree().max(0))
            .max()
            .unwrap_or(0);
        2 + self.n * maxdeg as usize
    }

    /// The presentation in generators `x'_j = gamma_j x_j`.
    ///
    /// Brackets transform as `{x'_k, x'_j} = gamma_k gamma_j {x_k, x_j}`, so
    /// each table entry becomes `gamma_k gamma_j delta_k(x_j)` rewritten with
    /// `x_i = x'_i / gamma_i`.
    pub fn rescaled(&self, gamma: &[Q]) -> Result<Presentation> {
        if gamma.len() != self.n || gamma.iter().any(|g| g.is_zero()) {
            return Err(PcglError::Input("rescaling needs N nonzero factors".into()));
        }
        let images: Vec<Laurent> = (0..self.n).map(|i| self.x(i).scale(&gamma[i].recip())).collect();
        let mut delta = BTreeMap::new();
        for (&(k, j), poly) in &self.delta {
            let p = poly.substitute(&images)?.scale(&(&gamma[k] * &gamma[j]));
            delta.insert((k, j), p);
        }
        let mut out = self.clone();
        out.delta = delta;
        out.table = out.build_table();
        Ok(out)
    }
}

fn pairing(h: &[Q], w: &[i64]) -> Q {
    h.iter().zip(w).fold(Q::zero(), |acc, (a, &b)| acc + a * qi(b))
}

fn check_rows<T>(what: &str, rows: &[Vec<T>], n: usize, d: usize) -> Result<()> {
    if rows.len() != n || rows.iter().any(|r| r.len() != d) {
        return Err(PcglError::ShapeMismatch {
            detail: format!("{what} must be a {n} x {d} table"),
        });
    }
    Ok(())
}

/// Outcome of the axiom checks, one flag per axiom plus witnesses.
#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub support: bool,
    pub jacobi: bool,
    pub homogeneous: bool,
    pub eigenvalues: bool,
    pub nilpotent: bool,
    pub skew: bool,
    /// False in raw mode, where the eigenvalues are asserted by the input.
    pub eigenvalues_from_torus: bool,
    pub nilpotence_bound: usize,
    pub failures: Vec<PcglError>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn into_result(self) -> Result<ValidationReport> {
        match self.failures.first() {
            Some(e) => Err(e.clone()),
            None => Ok(self),
        }
    }
}

/// Checks the axioms of an iterated Poisson-Ore extension with torus action:
/// support of the table, Jacobi on generator triples, homogeneity of every
/// `delta_k(x_j)`, nonzero `lambda_k`, local nilpotence of each `delta_k`
/// and skew-symmetry of `lambda`.
pub fn validate_algebra(p: &Presentation, nilpotence_bound: Option<usize>) -> ValidationReport {
    let n = p.n();
    let bound = nilpotence_bound.unwrap_or_else(|| p.default_nilpotence_bound());
    let mut failures = Vec::new();

    let mut support = true;
    for (&(k, j), poly) in p.delta_table() {
        if let Some(&v) = poly.variables().iter().find(|&&v| v >= k) {
            support = false;
            failures.push(PcglError::SupportViolation {
                k,
                j: Some(j),
                detail: format!("delta_{}(x{}) involves x{}", k + 1, j + 1, v + 1),
            });
        }
    }

    let mut skew = true;
    for a in 0..n {
        for b in 0..n {
            if p.lambda[a][b] != -p.lambda[b][a].clone() {
                skew = false;
            }
        }
    }
    if !skew {
        failures.push(PcglError::Input("lambda matrix is not skew-symmetric".into()));
    }

    let mut eigenvalues = true;
    for k in 0..n {
        if p.lambda_diag[k].is_zero() {
            eigenvalues = false;
            failures.push(PcglError::ZeroEigenvalue { k });
        }
    }

    let mut homogeneous = true;
    for (&(k, j), poly) in p.delta_table() {
        let expected: Vec<i64> = p.weights[k]
            .iter()
            .zip(&p.weights[j])
            .map(|(a, b)| a + b)
            .collect();
        let ok = matches!(p.weight_of(poly), Ok(w) if w == expected);
        if !ok {
            homogeneous = false;
            failures.push(PcglError::InhomogeneousDelta {
                k,
                j,
                witness: p.render(poly),
            });
        }
    }

    let triples: Vec<(usize, usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| (i, j, k))))
        .collect();
    let jac: Vec<PcglError> = triples
        .par_iter()
        .filter_map(|&(i, j, k)| {
            let (xi, xj, xk) = (p.x(i), p.x(j), p.x(k));
            let s = &(&p.bracket(&xi, p.generator_bracket(j, k))
                + &p.bracket(&xj, p.generator_bracket(k, i)))
                + &p.bracket(&xk, p.generator_bracket(i, j));
            (!s.is_zero()).then(|| PcglError::JacobiFailure {
                i,
                j,
                k,
                witness: p.render(&s),
            })
        })
        .collect();
    let jacobi = jac.is_empty();
    failures.extend(jac);

    let mut nilpotent = true;
    if support {
        for k in 0..n {
            if p.delta_row_is_zero(k) {
                continue;
            }
            for j in 0..k {
                let mut f = p.x(j);
                let mut steps = 0;
                while !f.is_zero() && steps < bound {
                    f = p.delta_unchecked(k, &f);
                    steps += 1;
                }
                if !f.is_zero() {
                    nilpotent = false;
                    failures.push(PcglError::NilpotenceBoundExceeded {
                        k,
                        j,
                        bound,
                        witness: p.render(&f),
                    });
                }
            }
        }
    }

    ValidationReport {
        support,
        jacobi,
        homogeneous,
        eigenvalues,
        nilpotent,
        skew,
        eigenvalues_from_torus: p.h.is_some(),
        nilpotence_bound: bound,
        failures,
    }
}
