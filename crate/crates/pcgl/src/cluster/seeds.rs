//! Seeds attached to the permutations of `Xi_N`, the exchange-matrix solver,
//! one-step mutation links along `Gamma_N`, log-canonicality and membership
//! in the upper cluster algebra.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::mutation::{check_compatible, mutate_matrix, mutate_pair, CompatiblePair, ExchangeMatrix};
use crate::arith::linalg::{self, QMatrix, Solution};
use crate::arith::{omega, qi, ExpVec, Laurent, Q};
use crate::error::{PcglError, Result};
use crate::expr::Expr;
use crate::poisson::Presentation;
use crate::symmetric::{
    compute_d_integers, gamma_chain, one_line, rescale_generators, tau_bullet_tau, DIntegers, GammaStep,
    SymmetricCgl,
};

/// Solves, for every `l` in `ex`, the stacked rational system
/// `sum_i b_i r_ij = delta_jl lambda*_l` (all `j`) and
/// `sum_k b_k weight_k = 0`, requiring a unique integral solution.
pub fn solve_btilde(
    r: &QMatrix,
    weights: &[Vec<i64>],
    lambda_star: &[Q],
    ex: &[usize],
) -> Result<ExchangeMatrix> {
    let n = r.len();
    let d = weights.first().map(|w| w.len()).unwrap_or(0);
    let mut a: QMatrix = Vec::with_capacity(n + d);
    for j in 0..n {
        a.push((0..n).map(|i| r[i][j].clone()).collect());
    }
    for t in 0..d {
        a.push((0..n).map(|k| qi(weights[k][t])).collect());
    }
    let mut rows = vec![Vec::with_capacity(ex.len()); n];
    for &l in ex {
        let mut rhs = vec![Q::zero(); n + d];
        rhs[l] = lambda_star[l].clone();
        let sol = match linalg::solve(&a, &rhs) {
            Solution::Unique(v) => v,
            Solution::Many(rank) => return Err(PcglError::NonUnique { l, rank }),
            Solution::Inconsistent => return Err(PcglError::NoSolution { l }),
        };
        for (i, v) in sol.iter().enumerate() {
            if !v.is_integer() {
                return Err(PcglError::NonIntegral {
                    l,
                    value: format!("b_{} = {}", i + 1, v),
                });
            }
            let x: i64 = v.to_integer().try_into().map_err(|_| PcglError::NonIntegral {
                l,
                value: format!("b_{} = {} exceeds i64", i + 1, v),
            })?;
            rows[i].push(x);
        }
    }
    ExchangeMatrix::new(ex.to_vec(), rows)
}

/// Everything attached to one `tau` in `Xi_N`.
#[derive(Clone, Debug, PartialEq)]
pub struct TauSeedBundle {
    pub tau: Vec<usize>,
    /// `tau_bullet tau`, sending positions to indices.
    pub sigma: Vec<usize>,
    /// `ytilde_tau(e_j)` as polynomials in the generators.
    pub ytilde: Vec<Laurent>,
    /// Interval supports `e_[i, s^m(i)]` of the variables.
    pub supports: Vec<ExpVec>,
    pub r: QMatrix,
    pub btilde: ExchangeMatrix,
    pub weights: Vec<Vec<i64>>,
    /// Each generator `x_i` written as a Laurent polynomial in `ytilde_tau`.
    pub x_in_cluster: Vec<Laurent>,
}

impl TauSeedBundle {
    pub fn n(&self) -> usize {
        self.ytilde.len()
    }

    /// `Ytilde(v) = prod ytilde(e_i)^{v_i}` for `v >= 0`, as a polynomial in the generators.
    pub fn monomial(&self, v: &[i64]) -> Laurent {
        let n = self.n();
        let mut acc = Laurent::one(n);
        for (i, &a) in v.iter().enumerate() {
            for _ in 0..a {
                acc = &acc * &self.ytilde[i];
            }
        }
        acc
    }

    /// Rewrites a polynomial in the generators in the variables of this seed.
    pub fn express(&self, f: &Laurent) -> Result<Laurent> {
        f.substitute(&self.x_in_cluster)
    }

    pub fn pair(&self) -> CompatiblePair {
        CompatiblePair {
            r: self.r.clone(),
            btilde: self.btilde.clone(),
        }
    }
}

/// A validated, normalized symmetric presentation ready for seed synthesis.
#[derive(Clone, Debug)]
pub struct ClusterData {
    pub sym: SymmetricCgl,
    pub d: DIntegers,
    /// Rescaling applied to the input generators, `x'_j = gamma_j x_j`.
    pub gamma: Vec<Q>,
}

impl ClusterData {
    /// Rescales the generators so that all `pi` equal 1, then computes the
    /// `d`-integers. The Poisson axioms are assumed to hold.
    pub fn new(p: &Presentation) -> Result<Self> {
        let raw = SymmetricCgl::new(p)?;
        let resc = rescale_generators(&raw)?;
        let sym = if resc.gamma.iter().all(|g| g.is_one()) {
            raw
        } else {
            SymmetricCgl::new(&resc.presentation)?
        };
        let d = compute_d_integers(&sym.p, &sym.eta, &sym.lambda_star)?;
        Ok(ClusterData {
            sym,
            d,
            gamma: resc.gamma,
        })
    }

    pub fn n(&self) -> usize {
        self.sym.n()
    }

    pub fn ex(&self) -> &[usize] {
        &self.sym.eta.exchangeable
    }

    pub fn is_frozen(&self, j: usize) -> bool {
        !self.sym.eta.is_exchangeable(j)
    }

    /// The seed attached to `tau`.
    pub fn seed_for_tau(&self, tau: &[usize]) -> Result<TauSeedBundle> {
        let s = &self.sym;
        let n = s.n();
        let seq = s.y_sequence_for_tau(tau)?;
        let sigma = tau_bullet_tau(tau, &s.eta);
        let mut ytilde = vec![Laurent::zero(n); n];
        let mut supports = vec![ExpVec::zero(n); n];
        for (a, ip) in seq.iter().enumerate() {
            ytilde[sigma[a]] = ip.poly.clone();
            supports[sigma[a]] = ip.exponent.clone();
        }
        let r: QMatrix = (0..n)
            .map(|j| {
                (0..n)
                    .map(|l| omega(s.p.lambda(), &supports[j], &supports[l]))
                    .collect()
            })
            .collect();
        let weights: Vec<Vec<i64>> = supports.iter().map(|e| s.p.weight_of_exp(e)).collect();
        let btilde = solve_btilde(&r, &weights, &s.lambda_star, self.ex())?;
        let beta = check_compatible(&r, &btilde)?;
        for (c, &l) in btilde.ex.iter().enumerate() {
            if beta[c] != s.lambda_star[l] {
                return Err(PcglError::CertFailure {
                    what: format!("(B^T r)_{{{0},{0}}} for tau = {1}", l + 1, one_line(tau)),
                    lhs: beta[c].to_string(),
                    rhs: s.lambda_star[l].to_string(),
                });
            }
        }
        if btilde.rank() != btilde.ex.len() {
            return Err(PcglError::CertFailure {
                what: format!("rank of B for tau = {}", one_line(tau)),
                lhs: btilde.rank().to_string(),
                rhs: btilde.ex.len().to_string(),
            });
        }
        let eta = &s.eta;
        if !btilde.is_skew_symmetrized_by(|i| self.d.for_index(eta, i) as i64) {
            return Err(PcglError::CertFailure {
                what: format!("skew-symmetrizability of B for tau = {}", one_line(tau)),
                lhs: "d_i b_ij".into(),
                rhs: "-d_j b_ji".into(),
            });
        }
        let x_in_cluster = back_substitute(tau, &sigma, &seq.iter().map(|ip| &ip.poly).collect::<Vec<_>>())?;
        for (j, y) in ytilde.iter().enumerate() {
            if y.substitute(&x_in_cluster)? != Laurent::var(n, j) {
                return Err(PcglError::CertFailure {
                    what: format!("back-substitution for tau = {}", one_line(tau)),
                    lhs: format!("ytilde_{}", j + 1),
                    rhs: format!("Z_{}", j + 1),
                });
            }
        }
        Ok(TauSeedBundle {
            tau: tau.to_vec(),
            sigma,
            ytilde,
            supports,
            r,
            btilde,
            weights,
            x_in_cluster,
        })
    }

    pub fn initial_seed(&self) -> Result<TauSeedBundle> {
        self.seed_for_tau(&(0..self.n()).collect::<Vec<_>>())
    }

    /// Seeds for every element of `Gamma_N`, in chain order, computed in parallel.
    pub fn gamma_seeds(&self) -> Result<Vec<TauSeedBundle>> {
        gamma_chain(self.n())
            .elements
            .par_iter()
            .map(|t| self.seed_for_tau(t))
            .collect()
    }

    /// The variables of a seed written in the initial cluster `y_1, ..., y_N`.
    pub fn in_initial_coordinates(&self, initial: &TauSeedBundle, b: &TauSeedBundle) -> Result<Vec<Laurent>> {
        b.ytilde.iter().map(|y| initial.express(y)).collect()
    }

    /// Walks `Gamma_N` and verifies every adjacent pair.
    pub fn chain_verify(&self) -> Result<ChainReport> {
        let seeds = self.gamma_seeds()?;
        let chain = gamma_chain(self.n());
        let initial = &seeds[0];
        let links: Vec<LinkReport> = chain
            .steps
            .par_iter()
            .enumerate()
            .map(
                |(t, step)| match verify_one_step(self, initial, &seeds[t], &seeds[t + 1], step) {
                    Ok(r) => r,
                    Err(e) => LinkReport {
                        tau: seeds[t].tau.clone(),
                        tau_prime: seeds[t + 1].tau.clone(),
                        k: step.k,
                        k_bullet: None,
                        branch: LinkBranch::Failed,
                        verified: false,
                        failure: Some(e.to_string()),
                    },
                },
            )
            .collect();
        let all_verified = links.iter().all(|l| l.verified);
        Ok(ChainReport { links, all_verified })
    }
}

/// Writes every generator in the variables `Z_j = ytilde_tau(e_j)` by
/// peeling off `x_{tau(a)}` from `y_{tau,a} = A x_{tau(a)} + B`, where `A`
/// and `B` involve only `x_{tau(1)}, ..., x_{tau(a-1)}` and `A` becomes a
/// Laurent monomial in the `Z`.
fn back_substitute(tau: &[usize], sigma: &[usize], seq: &[&Laurent]) -> Result<Vec<Laurent>> {
    let n = tau.len();
    let mut images = vec![Laurent::zero(n); n];
    let mut known = vec![false; n];
    for (a, y) in seq.iter().enumerate() {
        let v = tau[a];
        let mut coef = Vec::new();
        let mut rest = Vec::new();
        for (e, c) in y.terms() {
            let bad =
                e.0.iter()
                    .enumerate()
                    .any(|(i, &x)| x != 0 && i != v && !known[i]);
            if bad || !(0..=1).contains(&e.0[v]) {
                return Err(PcglError::CertFailure {
                    what: format!("shape of y_{{tau,{}}} for tau = {}", a + 1, one_line(tau)),
                    lhs: format!("{e:?}"),
                    rhs: "linear in the new generator over earlier ones".into(),
                });
            }
            let mut f = e.clone();
            if f.0[v] == 1 {
                f.0[v] = 0;
                coef.push((c.clone(), f));
            } else {
                rest.push((c.clone(), f));
            }
        }
        let a_img = Laurent::from_terms(n, coef).substitute(&images)?;
        let b_img = Laurent::from_terms(n, rest).substitute(&images)?;
        let inv = a_img.inverse_monomial().map_err(|_| PcglError::CertFailure {
            what: format!(
                "leading coefficient of y_{{tau,{}}} for tau = {}",
                a + 1,
                one_line(tau)
            ),
            lhs: a_img.to_string(),
            rhs: "a cluster monomial".into(),
        })?;
        images[v] = &(&Laurent::var(n, sigma[a]) - &b_img) * &inv;
        known[v] = true;
    }
    Ok(images)
}

/// Checks `{ytilde(e_l), ytilde(e_j)} = (r_tau)_lj ytilde(e_l) ytilde(e_j)` for all pairs.
pub fn check_log_canonical(p: &Presentation, b: &TauSeedBundle) -> Result<usize> {
    let n = b.n();
    let mut count = 0;
    for l in 0..n {
        for j in l + 1..n {
            let lhs = p.bracket(&b.ytilde[l], &b.ytilde[j]);
            let rhs = (&b.ytilde[l] * &b.ytilde[j]).scale(&b.r[l][j]);
            if lhs != rhs {
                return Err(PcglError::LogCanonicalFailure { l, j });
            }
            count += 1;
        }
    }
    Ok(count)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinkBranch {
    /// `eta(tau(k)) != eta(tau(k+1))`: the two seeds coincide.
    Equal,
    /// Same level set: the seeds differ by one mutation.
    Mutation,
    Failed,
}

impl LinkBranch {
    pub fn as_str(&self) -> &'static str {
        match self {
            LinkBranch::Equal => "equal",
            LinkBranch::Mutation => "mutation",
            LinkBranch::Failed => "failed",
        }
    }
}

/// Outcome of one adjacent pair of `Gamma_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkReport {
    pub tau: Vec<usize>,
    pub tau_prime: Vec<usize>,
    /// Swapped position (0-based).
    pub k: usize,
    /// Mutation direction `tau_bullet tau (k)` in the mutation branch.
    pub k_bullet: Option<usize>,
    pub branch: LinkBranch,
    pub verified: bool,
    pub failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainReport {
    pub links: Vec<LinkReport>,
    pub all_verified: bool,
}

/// Verifies the relation between the seeds of `tau` and `tau' = tau (k, k+1)`.
/// In the mutation branch this covers `B' = mu(B)`, `r' = mu(r)`, the
/// exchange relation both in the generators and in the initial cluster,
/// and the column identity `b = -b' = e_p + e_s - g`.
pub fn verify_one_step(
    cd: &ClusterData,
    initial: &TauSeedBundle,
    a: &TauSeedBundle,
    b: &TauSeedBundle,
    step: &GammaStep,
) -> Result<LinkReport> {
    let eta = &cd.sym.eta;
    let k = step.k;
    let fail = |component: String| PcglError::LinkFailure { k, component };
    let mut swapped = a.tau.clone();
    swapped.swap(k, k + 1);
    if swapped != b.tau {
        return Err(fail("tau' is not tau (k, k+1)".into()));
    }
    let n = a.n();
    let mut report = LinkReport {
        tau: a.tau.clone(),
        tau_prime: b.tau.clone(),
        k,
        k_bullet: None,
        branch: LinkBranch::Equal,
        verified: false,
        failure: None,
    };
    if eta.eta[a.tau[k]] != eta.eta[a.tau[k + 1]] {
        if a.ytilde != b.ytilde {
            return Err(fail("cluster variables differ".into()));
        }
        if a.r != b.r {
            return Err(fail("r differs".into()));
        }
        if a.btilde != b.btilde {
            return Err(fail("exchange matrix differs".into()));
        }
        report.verified = true;
        return Ok(report);
    }
    report.branch = LinkBranch::Mutation;
    let kb = a.sigma[k];
    if b.sigma[k] != kb {
        return Err(fail("k_bullet differs between tau and tau'".into()));
    }
    report.k_bullet = Some(kb);
    if !eta.is_exchangeable(kb) {
        return Err(fail(format!("direction {} is frozen", kb + 1)));
    }
    if mutate_matrix(&a.btilde, kb)? != b.btilde {
        return Err(fail("B' != mu(B)".into()));
    }
    let mutated = mutate_pair(&a.pair(), kb)?;
    if mutated.r != b.r {
        return Err(fail("r' != mu(r)".into()));
    }
    for j in 0..n {
        if j != kb && a.ytilde[j] != b.ytilde[j] {
            return Err(fail(format!("variable {} changed", j + 1)));
        }
    }
    let col = a.btilde.column(kb).expect("kb is exchangeable");
    let plus: Vec<i64> = col.iter().map(|&x| x.max(0)).collect();
    let minus: Vec<i64> = col.iter().map(|&x| (-x).max(0)).collect();
    let rhs = &a.monomial(&plus) + &a.monomial(&minus);
    if &b.ytilde[kb] * &a.ytilde[kb] != rhs {
        return Err(fail("exchange relation in the generators".into()));
    }
    let ya: Vec<Laurent> = a
        .ytilde
        .iter()
        .map(|y| initial.express(y))
        .collect::<Result<_>>()?;
    let yb_new = initial.express(&b.ytilde[kb])?;
    let prod = |v: &[i64]| -> Laurent {
        let mut acc = Laurent::one(n);
        for (i, &e) in v.iter().enumerate() {
            for _ in 0..e {
                acc = &acc * &ya[i];
            }
        }
        acc
    };
    let via_mutation = (&prod(&plus) + &prod(&minus)).exact_divide(&ya[kb])?;
    if via_mutation != yb_new {
        return Err(fail("exchange relation in the initial cluster".into()));
    }
    let col_b = b.btilde.column(kb).expect("kb is exchangeable");
    if col.iter().zip(&col_b).any(|(x, y)| *x != -*y) {
        return Err(fail("b_tau != -b_tau' in column k_bullet".into()));
    }
    let mut g: Vec<i64> = col.iter().map(|x| -x).collect();
    if let Some(pk) = eta.pred[kb] {
        g[pk] += 1;
    }
    let sk = eta.succ[kb].expect("kb is exchangeable");
    g[sk] += 1;
    let class = eta.eta[kb];
    let mut seen = std::collections::BTreeSet::new();
    for (i, &x) in g.iter().enumerate() {
        if x < 0 {
            return Err(fail(format!("g has negative entry at {}", i + 1)));
        }
        if x > 0 && (eta.eta[i] == class || !seen.insert(eta.eta[i])) {
            return Err(fail(format!(
                "support of g at {} breaks the level-set rule",
                i + 1
            )));
        }
    }
    report.verified = true;
    Ok(report)
}

/// A seed stored in the coordinates of the initial cluster.
#[derive(Clone, Debug, PartialEq)]
pub struct Seed {
    pub vars: Vec<Laurent>,
    pub btilde: ExchangeMatrix,
}

impl Seed {
    /// The seed of `tau` in initial coordinates.
    pub fn from_bundle(initial: &TauSeedBundle, b: &TauSeedBundle) -> Result<Seed> {
        Ok(Seed {
            vars: b
                .ytilde
                .iter()
                .map(|y| initial.express(y))
                .collect::<Result<_>>()?,
            btilde: b.btilde.clone(),
        })
    }

    /// Leading exponents are linearly independent (so the variables are
    /// algebraically independent) and `B` has full rank.
    pub fn check_invariants(&self) -> Result<()> {
        let mut lead: QMatrix = Vec::new();
        for v in &self.vars {
            let (_, e) = v.leading_term()?;
            lead.push(e.0.iter().map(|&x| qi(x)).collect());
        }
        if linalg::rank(&lead) != self.vars.len() {
            return Err(PcglError::CertFailure {
                what: "independence of seed variables".into(),
                lhs: linalg::rank(&lead).to_string(),
                rhs: self.vars.len().to_string(),
            });
        }
        if self.btilde.rank() != self.btilde.ex.len() {
            return Err(PcglError::CertFailure {
                what: "rank of B".into(),
                lhs: self.btilde.rank().to_string(),
                rhs: self.btilde.ex.len().to_string(),
            });
        }
        Ok(())
    }
}

/// Mutation of a seed at `k`: `x'_k = (x^{[b^k]_+} + x^{[b^k]_-}) / x_k`.
pub fn mutate_seed(seed: &Seed, k: usize) -> Result<Seed> {
    let btilde = mutate_matrix(&seed.btilde, k)?;
    let col = seed.btilde.column(k).ok_or(PcglError::NotExchangeable { k })?;
    let n = seed.vars.len();
    let prod = |sign: i64| -> Laurent {
        let mut acc = Laurent::one(seed.vars.first().map(|v| v.nvars()).unwrap_or(n));
        for (i, &e) in col.iter().enumerate() {
            for _ in 0..(sign * e).max(0) {
                acc = &acc * &seed.vars[i];
            }
        }
        acc
    };
    let mut vars = seed.vars.clone();
    vars[k] = (&prod(1) + &prod(-1)).exact_divide(&seed.vars[k])?;
    Ok(Seed { vars, btilde })
}

/// Checks that a Laurent expression in a seed has no negative power of a
/// frozen variable outside `inv`.
pub fn frozen_positive(cd: &ClusterData, g: &Laurent, inv: &[usize]) -> Result<()> {
    for (e, _) in g.terms() {
        for (j, &a) in e.0.iter().enumerate() {
            if a < 0 && cd.is_frozen(j) && !inv.contains(&j) {
                return Err(PcglError::NotInRing { var: j });
            }
        }
    }
    Ok(())
}

/// Evaluates an element expression in the variables of one seed.
pub fn express_in_cluster(cd: &ClusterData, b: &TauSeedBundle, f: &Expr) -> Result<Laurent> {
    let n = cd.n();
    let names = cd.sym.p.names();
    f.eval(n, &|atom| match atom {
        crate::expr::Atom::X(i) if *i < n => b.express(&cd.sym.p.x(*i)),
        crate::expr::Atom::Y(i) if *i < n => b.express(&cd.sym.primes.y[*i]),
        crate::expr::Atom::Name(s) => match names.iter().position(|m| m == s) {
            Some(i) => b.express(&cd.sym.p.x(i)),
            None => Err(PcglError::Input(format!("unknown variable {s:?}"))),
        },
        other => Err(PcglError::Input(format!("variable out of range: {other:?}"))),
    })
}

/// Per-seed outcome of a membership test.
#[derive(Clone, Debug, PartialEq)]
pub struct MembershipWitness {
    pub tau: Vec<usize>,
    pub expression: Option<Laurent>,
    pub failure: Option<PcglError>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MembershipCertificate {
    pub certified: bool,
    pub inv: Vec<usize>,
    pub witnesses: Vec<MembershipWitness>,
}

/// Certifies `f` in the intersection of the mixed Laurent rings of all
/// seeds given (normally all of `Gamma_N`): in every seed `f` must be a
/// Laurent polynomial with frozen variables outside `inv` occurring only
/// with nonnegative exponents.
pub fn upper_membership(
    cd: &ClusterData,
    seeds: &[TauSeedBundle],
    f: &Expr,
    inv: &[usize],
) -> Result<MembershipCertificate> {
    for &j in inv {
        if j >= cd.n() || !cd.is_frozen(j) {
            return Err(PcglError::Input(format!("inv index {} is not frozen", j + 1)));
        }
    }
    let witnesses: Vec<MembershipWitness> = seeds
        .iter()
        .map(|b| {
            let res = express_in_cluster(cd, b, f).and_then(|g| frozen_positive(cd, &g, inv).map(|_| g));
            match res {
                Ok(g) => MembershipWitness {
                    tau: b.tau.clone(),
                    expression: Some(g),
                    failure: None,
                },
                Err(e) => MembershipWitness {
                    tau: b.tau.clone(),
                    expression: None,
                    failure: Some(e),
                },
            }
        })
        .collect();
    if let Some(err) = witnesses
        .iter()
        .filter_map(|w| w.failure.as_ref())
        .find(|e| matches!(e, PcglError::Input(_)))
    {
        return Err(err.clone());
    }
    Ok(MembershipCertificate {
        certified: witnesses.iter().all(|w| w.failure.is_none()),
        inv: inv.to_vec(),
        witnesses,
    })
}

/// Rewrites each variable of every seed in every other seed and checks the
/// frozen-positivity condition, returning the number of pairs examined.
pub fn laurent_phenomenon(cd: &ClusterData, seeds: &[TauSeedBundle]) -> Result<usize> {
    let mut count = 0;
    for a in seeds {
        for b in seeds {
            for y in &a.ytilde {
                let g = b.express(y)?;
                frozen_positive(cd, &g, &[])?;
                count += 1;
            }
        }
    }
    Ok(count)
}

/// True when `x > 0` for every entry; convenience for reports.
pub fn all_positive(v: &[Q]) -> bool {
    v.iter().all(|x| x.is_positive())
}
