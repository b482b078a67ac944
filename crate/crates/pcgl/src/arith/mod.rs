//! Exact rational arithmetic, exponent vectors and sparse Laurent polynomials.

mod expvec;
mod laurent;
pub mod linalg;

pub use expvec::ExpVec;
pub use laurent::{default_names, Laurent};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{PcglError, Result};

/// Exact rational number; always stored in lowest terms with positive denominator.
pub type Q = BigRational;

/// Shorthand constructor `n/d`.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`. Anything else, including decimals and symbolic
/// irrationals, is rejected.
pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || PcglError::Input(format!("not a rational number: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(PcglError::Input(format!("zero denominator in {s:?}")));
    }
    Ok(Q::new(n, d))
}

/// Formats a rational as `"p/q"`, or `"p"` when integral.
pub fn format_rational(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// `Omega_m(f, g) = f^T m g` for a square matrix `m` and integer vectors.
pub fn omega(m: &[Vec<Q>], f: &ExpVec, g: &ExpVec) -> Q {
    let mut acc = Q::zero();
    for (i, &a) in f.0.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in g.0.iter().enumerate() {
            if b != 0 {
                acc += &m[i][j] * qi(a * b);
            }
        }
    }
    acc
}
