//! JSON reports with a short human-readable summary, one per pipeline stage.
//! Every report is deterministic: iteration orders are fixed and all data
//! is exact.

use serde_json::{json, Map, Value};

use crate::arith::{format_rational, Laurent, Q};
use crate::cgl::{alpha_q_matrices, certify_prime_sequence, compute_eta_and_primes, hmax_equations};
use crate::cluster::{
    check_log_canonical, mutate_pair, mutate_seed, upper_membership, ClusterData, ExchangeMatrix, Seed,
    TauSeedBundle,
};
use crate::error::{PcglError, Result};
use crate::expr::Expr;
use crate::io::{one_based, poly_to_json, presentation_to_file, q_json, qmatrix_json};
use crate::poisson::{validate_algebra, Presentation};
use crate::symmetric::{gamma_chain, one_line, rescale_generators, tau_bullet, SymmetricCgl};

/// A finished report: JSON document, text summary, and whether every
/// verification it ran succeeded.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub json: Value,
    pub summary: String,
    pub verified: bool,
}

pub fn error_json(e: &PcglError) -> Value {
    json!({"code": e.code(), "message": e.to_string()})
}

fn poly_json(f: &Laurent, names: &[String]) -> Value {
    json!({"text": f.to_string_with(names), "terms": poly_to_json(f)})
}

fn y_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("y{i}")).collect()
}

fn opt_index(v: &[Option<usize>]) -> Value {
    Value::Array(
        v.iter()
            .map(|x| x.map_or(Value::Null, |i| json!(i + 1)))
            .collect(),
    )
}

fn q_list(v: &[Q]) -> Value {
    Value::Array(v.iter().map(q_json).collect())
}

fn btilde_json(b: &ExchangeMatrix) -> Value {
    json!({"ex": one_based(&b.ex), "rows": b.rows})
}

/// Axiom checks; input errors found here are reported, not raised.
pub fn validate_report(p: &Presentation, bound: Option<usize>) -> Report {
    let v = validate_algebra(p, bound);
    let json = json!({
        "n_gens": p.n(),
        "torus_rank": p.torus_rank(),
        "support": v.support,
        "jacobi": v.jacobi,
        "homogeneous": v.homogeneous,
        "eigenvalues_nonzero": v.eigenvalues,
        "locally_nilpotent": v.nilpotent,
        "lambda_skew": v.skew,
        "eigenvalues_from_torus": v.eigenvalues_from_torus,
        "nilpotence_bound": v.nilpotence_bound,
        "failures": v.failures.iter().map(error_json).collect::<Vec<_>>(),
    });
    let summary = if v.is_ok() {
        format!("valid presentation with {} generators", p.n())
    } else {
        let lines: Vec<String> = v.failures.iter().map(|e| format!("{}: {e}", e.code())).collect();
        lines.join("\n")
    };
    Report {
        json,
        summary,
        verified: v.is_ok(),
    }
}

/// Runs the axiom checks and turns the first failure into an error.
pub fn require_valid(p: &Presentation, bound: Option<usize>) -> Result<()> {
    validate_algebra(p, bound).into_result().map(|_| ())
}

/// `eta`, `p`, `s`, the primes, rank, `q` and the certification counts.
pub fn analyze_report(p: &Presentation, bound: Option<usize>) -> Result<Report> {
    require_valid(p, bound)?;
    let (eta, seq) = compute_eta_and_primes(p)?;
    let cert = certify_prime_sequence(p, &eta, &seq)?;
    let qd = alpha_q_matrices(p, &eta);
    let names = p.names();
    let hmax = hmax_equations(p, &eta)?;
    let primes: Vec<Value> = (0..p.n())
        .map(|k| {
            json!({
                "k": k + 1,
                "y": poly_json(&seq.y[k], names),
                "c": poly_json(&seq.c[k], names),
                "leading_exponent": seq.leading_exponents[k].0,
                "weight": seq.weights[k],
            })
        })
        .collect();
    let json = json!({
        "names": names,
        "eta": eta.eta.iter().map(|x| x + 1).collect::<Vec<_>>(),
        "p": opt_index(&eta.pred),
        "s": opt_index(&eta.succ),
        "rank": eta.rank,
        "ex": one_based(&eta.exchangeable),
        "primes": primes,
        "q": qmatrix_json(&qd.q),
        "alpha": qmatrix_json(&qd.alpha),
        "hmax": {
            "dimension": hmax.dimension,
            "rank": hmax.rank,
            "choice": "smallest j_k with delta_k(x_j) != 0; f_k is the revlex-leading exponent",
            "equations": hmax.equations.iter().map(|e| json!({
                "k": e.k + 1,
                "j": e.j + 1,
                "f": e.f,
            })).collect::<Vec<_>>(),
        },
        "certificate": cert,
    });
    let mut summary = format!("rank {}; ex = {}\n", eta.rank, one_line(&eta.exchangeable));
    for k in 0..p.n() {
        summary.push_str(&format!("y{} = {}\n", k + 1, seq.y[k].to_string_with(names)));
    }
    Ok(Report {
        json,
        summary: summary.trim_end().to_string(),
        verified: true,
    })
}

/// Reverse-order data, `d`-integers, interval primes and u-elements.
pub fn symmetric_report(p: &Presentation, bound: Option<usize>) -> Result<Report> {
    require_valid(p, bound)?;
    let s = SymmetricCgl::new(p)?;
    let d = crate::symmetric::compute_d_integers(&s.p, &s.eta, &s.lambda_star)?;
    let names = s.p.names();
    let mut intervals = Vec::new();
    for i in 0..s.n() {
        let mut m = 0;
        while let Ok(ip) = s.interval_prime(i, m) {
            intervals.push(json!({
                "i": i + 1,
                "m": m,
                "support": one_based(&ip.support),
                "y": poly_json(&ip.poly, names),
            }));
            m += 1;
        }
    }
    let us: Vec<Value> = s
        .all_u_elements()?
        .iter()
        .map(|u| {
            json!({
                "i": u.i + 1,
                "m": u.m,
                "u": poly_json(&u.u, names),
                "pi": q_json(&u.pi),
                "f": u.f.0,
                "g": u.g.0,
            })
        })
        .collect();
    let mut dmap = Map::new();
    for (label, val) in &d.d {
        dmap.insert((label + 1).to_string(), json!(val));
    }
    let json = json!({
        "support_checks": s.report.support_checks,
        "h_star_solved": s.report.h_star_solved,
        "h_star": s.report.h_star.as_ref().map(qmatrix_json),
        "lambda_star": q_list(&s.lambda_star),
        "d_integers": {"scale": q_json(&d.scale), "d": dmap},
        "interval_primes": intervals,
        "u_elements": us,
    });
    let summary = format!(
        "symmetric; lambda* = [{}]; d = {:?}",
        s.lambda_star
            .iter()
            .map(format_rational)
            .collect::<Vec<_>>()
            .join(", "),
        d.d.values().collect::<Vec<_>>()
    );
    Ok(Report {
        json,
        summary,
        verified: true,
    })
}

/// `gamma` and the rescaled presentation.
pub fn rescale_report(p: &Presentation, bound: Option<usize>) -> Result<(Report, Presentation)> {
    require_valid(p, bound)?;
    let s = SymmetricCgl::new(p)?;
    let r = rescale_generators(&s)?;
    let json = json!({
        "gamma": q_list(&r.gamma),
        "presentation": serde_json::to_value(presentation_to_file(&r.presentation)).expect("serializable"),
    });
    let summary = format!(
        "gamma = [{}]",
        r.gamma.iter().map(format_rational).collect::<Vec<_>>().join(", ")
    );
    Ok((
        Report {
            json,
            summary,
            verified: true,
        },
        r.presentation,
    ))
}

/// Validates and prepares seed synthesis.
pub fn prepare(p: &Presentation, bound: Option<usize>) -> Result<ClusterData> {
    require_valid(p, bound)?;
    ClusterData::new(p)
}

fn bundle_json(cd: &ClusterData, initial: &TauSeedBundle, b: &TauSeedBundle) -> Result<Value> {
    let names = cd.sym.p.names();
    let yn = y_names(cd.n());
    let vars: Vec<Value> = b
        .ytilde
        .iter()
        .map(|y| {
            let in_y = initial.express(y)?;
            Ok(json!({
                "x": poly_json(y, names),
                "y": poly_json(&in_y, &yn),
            }))
        })
        .collect::<Result<_>>()?;
    Ok(json!({
        "tau": one_based(&b.tau),
        "tau_bullet": one_based(&tau_bullet(&b.tau, &cd.sym.eta)),
        "variables": vars,
        "supports": b.supports.iter().map(|e| one_based(&e.support())).collect::<Vec<_>>(),
        "weights": b.weights,
        "r": qmatrix_json(&b.r),
        "btilde": btilde_json(&b.btilde),
    }))
}

fn header(cd: &ClusterData) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("gamma".into(), q_list(&cd.gamma));
    m.insert("ex".into(), one_based(cd.ex()));
    m.insert("names".into(), json!(cd.sym.p.names()));
    m
}

/// Seeds for the given permutations.
pub fn seeds_report(cd: &ClusterData, taus: &[Vec<usize>]) -> Result<Report> {
    let initial = cd.initial_seed()?;
    let mut out = Vec::new();
    let mut summary = String::new();
    for t in taus {
        let b = cd.seed_for_tau(t)?;
        check_log_canonical(&cd.sym.p, &b)?;
        Seed::from_bundle(&initial, &b)?.check_invariants()?;
        out.push(bundle_json(cd, &initial, &b)?);
        let vars: Vec<String> = b
            .ytilde
            .iter()
            .map(|y| y.to_string_with(cd.sym.p.names()))
            .collect();
        summary.push_str(&format!("tau = {}: ({})\n", one_line(t), vars.join(", ")));
    }
    let mut m = header(cd);
    m.insert("seeds".into(), Value::Array(out));
    Ok(Report {
        json: Value::Object(m),
        summary: summary.trim_end().to_string(),
        verified: true,
    })
}

pub fn btilde_report(cd: &ClusterData, tau: &[usize]) -> Result<Report> {
    let b = cd.seed_for_tau(tau)?;
    let mut m = header(cd);
    m.insert("tau".into(), one_based(tau));
    m.insert("btilde".into(), btilde_json(&b.btilde));
    let summary = b
        .btilde
        .rows
        .iter()
        .map(|r| r.iter().map(|x| format!("{x:>3}")).collect::<String>())
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Report {
        json: Value::Object(m),
        summary,
        verified: true,
    })
}

/// Mutates the seed of `tau` at `k`, in initial coordinates, together with its pair.
pub fn mutate_report(cd: &ClusterData, tau: &[usize], k: usize) -> Result<Report> {
    let initial = cd.initial_seed()?;
    let b = cd.seed_for_tau(tau)?;
    let seed = Seed::from_bundle(&initial, &b)?;
    let mutated = mutate_seed(&seed, k)?;
    mutated.check_invariants()?;
    let pair = mutate_pair(&b.pair(), k)?;
    let yn = y_names(cd.n());
    let mut m = header(cd);
    m.insert("tau".into(), one_based(tau));
    m.insert("at".into(), json!(k + 1));
    m.insert(
        "variables".into(),
        Value::Array(mutated.vars.iter().map(|v| poly_json(v, &yn)).collect()),
    );
    m.insert("btilde".into(), btilde_json(&mutated.btilde));
    m.insert("r".into(), qmatrix_json(&pair.r));
    Ok(Report {
        json: Value::Object(m),
        summary: format!("new variable {} = {}", k + 1, mutated.vars[k].to_string_with(&yn)),
        verified: true,
    })
}

/// The full walk along `Gamma_N`.
pub fn chain_report(cd: &ClusterData) -> Result<Report> {
    let report = cd.chain_verify()?;
    let mut lines = Vec::new();
    let links: Vec<Value> = report
        .links
        .iter()
        .map(|l| {
            lines.push(format!(
                "{} -> {}  k={} {}{}  {}",
                one_line(&l.tau),
                one_line(&l.tau_prime),
                l.k + 1,
                l.branch.as_str(),
                l.k_bullet.map(|x| format!(" at {}", x + 1)).unwrap_or_default(),
                if l.verified { "ok" } else { "FAILED" }
            ));
            json!({
                "tau": one_based(&l.tau),
                "tau_prime": one_based(&l.tau_prime),
                "k": l.k + 1,
                "k_bullet": l.k_bullet.map(|x| x + 1),
                "branch": l.branch.as_str(),
                "verified": l.verified,
                "failure": l.failure,
            })
        })
        .collect();
    let mut m = header(cd);
    m.insert("chain_length".into(), json!(gamma_chain(cd.n()).elements.len()));
    m.insert("links".into(), Value::Array(links));
    m.insert("all_verified".into(), json!(report.all_verified));
    lines.push(format!(
        "{} of {} links verified",
        report.links.iter().filter(|l| l.verified).count(),
        report.links.len()
    ));
    Ok(Report {
        json: Value::Object(m),
        summary: lines.join("\n"),
        verified: report.all_verified,
    })
}

/// Upper cluster membership over all of `Gamma_N`.
pub fn membership_report(cd: &ClusterData, elem: &str, inv: &[usize]) -> Result<Report> {
    let f = Expr::parse(elem)?;
    let seeds = cd.gamma_seeds()?;
    let cert = upper_membership(cd, &seeds, &f, inv)?;
    let yn = y_names(cd.n());
    let witnesses: Vec<Value> = cert
        .witnesses
        .iter()
        .map(|w| {
            json!({
                "tau": one_based(&w.tau),
                "expression": w.expression.as_ref().map(|g| poly_json(g, &yn)),
                "failure": w.failure.as_ref().map(error_json),
            })
        })
        .collect();
    let mut m = header(cd);
    m.insert("element".into(), json!(elem));
    m.insert("inv".into(), one_based(inv));
    m.insert("certified".into(), json!(cert.certified));
    m.insert("witnesses".into(), Value::Array(witnesses));
    let summary = if cert.certified {
        format!("{elem} certified in all {} seeds", seeds.len())
    } else {
        let bad = cert.witnesses.iter().find(|w| w.failure.is_some()).unwrap();
        format!(
            "{elem} not certified: tau = {} gives {}",
            one_line(&bad.tau),
            bad.failure.as_ref().unwrap()
        )
    };
    Ok(Report {
        json: Value::Object(m),
        summary,
        verified: cert.certified,
    })
}
