//! JSON reading and writing of presentations, polynomials and matrices.
//!
//! A presentation file looks like
//!
//! ```json
//! {
//!   "n_gens": 4,
//!   "torus_rank": 4,
//!   "weights": [[1, 0, -1, 0], ...],
//!   "h": [["-1", "0", "1", "0"], ...],
//!   "h_star": [["1", "0", "-1", "0"], ...],
//!   "delta": [{"k": 4, "j": 1, "poly": [[-2, 1, [0, 1, 1, 0]]]}],
//!   "names": ["t11", "t12", "t21", "t22"]
//! }
//! ```
//!
//! Indices `k`, `j` are 1-based, rationals are strings `"p"` or `"p/q"`, and
//! each polynomial term is `[numerator, denominator, exponents]`. Missing
//! delta entries are zero. Instead of `h` a file may give `"lambda"` (an
//! `N x N` matrix), `"lambda_diag"` and optionally `"lambda_star"`.

use std::collections::BTreeMap;
use std::io::Read;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize, Serializer};
use serde_json::{json, Value};

use crate::arith::linalg::QMatrix;
use crate::arith::{format_rational, parse_rational, ExpVec, Laurent, Q};
use crate::error::{PcglError, Result};
use crate::poisson::Presentation;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    pub n_gens: usize,
    pub torus_rank: usize,
    pub weights: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_star: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_diag: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_star: Option<Vec<String>>,
    #[serde(default)]
    pub delta: Vec<DeltaEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeltaEntry {
    pub k: usize,
    pub j: usize,
    pub poly: Value,
}

fn q_table(rows: &[Vec<String>]) -> Result<QMatrix> {
    rows.iter()
        .map(|r| r.iter().map(|s| parse_rational(s)).collect())
        .collect()
}

fn q_vec(v: &[String]) -> Result<Vec<Q>> {
    v.iter().map(|s| parse_rational(s)).collect()
}

fn s_table(m: &[Vec<Q>]) -> Vec<Vec<String>> {
    m.iter()
        .map(|r| r.iter().map(format_rational).collect())
        .collect()
}

fn json_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| PcglError::Input(format!("not an integer: {n}"))),
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| PcglError::Input(format!("not an integer: {s:?}"))),
        other => Err(PcglError::Input(format!("not an integer: {other}"))),
    }
}

/// Parses a `[[num, den, [exps]], ...]` term list.
pub fn poly_from_json(v: &Value, n: usize) -> Result<Laurent> {
    let terms = v
        .as_array()
        .ok_or_else(|| PcglError::Input("polynomial must be a list of terms".into()))?;
    let mut out = Laurent::zero(n);
    for t in terms {
        let parts = t
            .as_array()
            .filter(|p| p.len() == 3)
            .ok_or_else(|| PcglError::Input(format!("term must be [num, den, exps]: {t}")))?;
        let num = json_int(&parts[0])?;
        let den = json_int(&parts[1])?;
        if den == BigInt::from(0) {
            return Err(PcglError::Input("zero denominator in polynomial term".into()));
        }
        let exps: Vec<i64> = parts[2]
            .as_array()
            .ok_or_else(|| PcglError::Input("exponents must be a list".into()))?
            .iter()
            .map(|e| {
                e.as_i64()
                    .ok_or_else(|| PcglError::Input(format!("bad exponent {e}")))
            })
            .collect::<Result<_>>()?;
        if exps.len() != n {
            return Err(PcglError::ShapeMismatch {
                detail: format!("term has {} exponents, expected {n}", exps.len()),
            });
        }
        out.add_term(ExpVec(exps), Q::new(num, den));
    }
    Ok(out)
}

/// Term list of a Laurent polynomial, leading term first.
pub fn poly_to_json(f: &Laurent) -> Value {
    Value::Array(
        f.terms()
            .rev()
            .map(|(e, c)| json!([big_json(c.numer()), big_json(c.denom()), e.0]))
            .collect(),
    )
}

fn big_json(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

pub fn q_json(x: &Q) -> Value {
    Value::String(format_rational(x))
}

pub fn qmatrix_json(m: &QMatrix) -> Value {
    Value::Array(
        m.iter()
            .map(|r| Value::Array(r.iter().map(q_json).collect()))
            .collect(),
    )
}

/// `serialize_with` helper for rational matrices.
pub fn ser_qmatrix<S: Serializer>(m: &QMatrix, s: S) -> std::result::Result<S::Ok, S::Error> {
    qmatrix_json(m).serialize(s)
}

/// Builds a presentation from a parsed file.
pub fn presentation_from_file(f: &PresentationFile) -> Result<Presentation> {
    let n = f.n_gens;
    if f.weights.len() != n || f.weights.iter().any(|w| w.len() != f.torus_rank) {
        return Err(PcglError::ShapeMismatch {
            detail: format!("weights must be {n} x {}", f.torus_rank),
        });
    }
    let mut delta = BTreeMap::new();
    for e in &f.delta {
        if e.k == 0 || e.j == 0 || e.k > n || e.j >= e.k {
            return Err(PcglError::Input(format!(
                "delta entry (k={}, j={}) must satisfy 1 <= j < k <= {n}",
                e.k, e.j
            )));
        }
        let poly = poly_from_json(&e.poly, n)?;
        if delta.insert((e.k - 1, e.j - 1), poly).is_some() {
            return Err(PcglError::Input(format!(
                "duplicate delta entry (k={}, j={})",
                e.k, e.j
            )));
        }
    }
    let p = match (&f.h, &f.lambda) {
        (Some(h), None) => {
            if f.lambda_diag.is_some() || f.lambda_star.is_some() {
                return Err(PcglError::Input("give either h or lambda data, not both".into()));
            }
            let hs = f.h_star.as_deref().map(q_table).transpose()?;
            Presentation::from_h(f.weights.clone(), q_table(h)?, hs, delta)?
        }
        (None, Some(l)) => {
            if f.h_star.is_some() {
                return Err(PcglError::Input("h_star needs h".into()));
            }
            let diag = f
                .lambda_diag
                .as_deref()
                .ok_or_else(|| PcglError::Input("lambda needs lambda_diag".into()))?;
            let ls = f.lambda_star.as_deref().map(q_vec).transpose()?;
            Presentation::from_lambda(f.weights.clone(), q_table(l)?, q_vec(diag)?, ls, delta)?
        }
        _ => return Err(PcglError::Input("exactly one of h or lambda is required".into())),
    };
    match &f.names {
        Some(names) if names.len() != n => Err(PcglError::ShapeMismatch {
            detail: format!("names must have {n} entries"),
        }),
        Some(names) => Ok(p.with_names(names.clone())),
        None => Ok(p),
    }
}

pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let f: PresentationFile =
        serde_json::from_str(text).map_err(|e| PcglError::Input(format!("presentation JSON: {e}")))?;
    presentation_from_file(&f)
}

/// The file form of a presentation.
pub fn presentation_to_file(p: &Presentation) -> PresentationFile {
    let delta = p
        .delta_table()
        .iter()
        .map(|(&(k, j), poly)| DeltaEntry {
            k: k + 1,
            j: j + 1,
            poly: poly_to_json(poly),
        })
        .collect();
    let default = crate::arith::default_names(p.n());
    let names = (p.names() != default.as_slice()).then(|| p.names().to_vec());
    let (h, h_star, lambda, lambda_diag, lambda_star) = match p.h() {
        Some(h) => (Some(s_table(h)), p.h_star().map(s_table), None, None, None),
        None => (
            None,
            None,
            Some(s_table(p.lambda())),
            Some(p.lambda_diag().iter().map(format_rational).collect()),
            p.lambda_star().map(|v| v.iter().map(format_rational).collect()),
        ),
    };
    PresentationFile {
        n_gens: p.n(),
        torus_rank: p.torus_rank(),
        weights: p.weights().to_vec(),
        h,
        h_star,
        lambda,
        lambda_diag,
        lambda_star,
        delta,
        names,
    }
}

pub fn presentation_to_json(p: &Presentation) -> String {
    serde_json::to_string_pretty(&presentation_to_file(p)).expect("presentation serializes")
}

/// Reads a file, or standard input for `"-"`.
pub fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| PcglError::Input(format!("reading stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| PcglError::Input(format!("reading {path}: {e}")))
    }
}

/// Parses a comma-separated 1-based list such as `"2,3,4,1"`.
pub fn parse_index_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let v: usize = t
                .trim()
                .parse()
                .map_err(|_| PcglError::Input(format!("not a positive integer: {t:?}")))?;
            v.checked_sub(1)
                .ok_or_else(|| PcglError::Input("indices are 1-based".into()))
        })
        .collect()
}

/// 1-based JSON form of an index list.
pub fn one_based(v: &[usize]) -> Value {
    json!(v.iter().map(|x| x + 1).collect::<Vec<_>>())
}
