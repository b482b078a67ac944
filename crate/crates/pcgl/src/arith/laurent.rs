use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::expvec::ExpVec;
use super::Q;
use crate::error::{PcglError, Result};

/// Sparse multivariate Laurent polynomial with exact rational coefficients.
///
/// Terms are kept in a `BTreeMap` keyed by [`ExpVec`], whose order is
/// reverse lexicographic, so the leading term is the last entry. Zero
/// coefficients are never stored, which makes structural equality coincide
/// with equality of polynomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Laurent {
    nvars: usize,
    terms: BTreeMap<ExpVec, Q>,
}

impl Laurent {
    pub fn zero(nvars: usize) -> Self {
        Laurent {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Q::one())
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        Self::monomial(nvars, c, ExpVec::zero(nvars))
    }

    /// The generator `x_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(nvars, Q::one(), ExpVec::unit(nvars, i))
    }

    pub fn monomial(nvars: usize, c: Q, exp: ExpVec) -> Self {
        assert_eq!(exp.len(), nvars, "exponent length must match variable count");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Laurent { nvars, terms }
    }

    /// Builds a polynomial from possibly repeated terms, merging duplicates.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Q, ExpVec)>) -> Self {
        let mut out = Laurent::zero(nvars);
        for (c, e) in terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing revlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExpVec, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &ExpVec) -> Q {
        self.terms.get(e).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.is_nonnegative())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// The constant value if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.is_zero().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, e: ExpVec, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Leading term under the reverse lexicographic order.
    pub fn leading_term(&self) -> Result<(&Q, &ExpVec)> {
        self.terms
            .iter()
            .next_back()
            .map(|(e, c)| (c, e))
            .ok_or(PcglError::ZeroPolynomial)
    }

    pub fn total_degree(&self) -> i64 {
        self.terms.keys().map(|e| e.total_degree()).max().unwrap_or(0)
    }

    /// Indices of the variables that occur with a nonzero exponent.
    pub fn variables(&self) -> Vec<usize> {
        let mut seen = vec![false; self.nvars];
        for e in self.terms.keys() {
            for (i, &a) in e.0.iter().enumerate() {
                if a != 0 {
                    seen[i] = true;
                }
            }
        }
        (0..self.nvars).filter(|&i| seen[i]).collect()
    }

    /// Componentwise minimum of all exponents; zero vector for the zero polynomial.
    pub fn min_exponents(&self) -> ExpVec {
        let mut it = self.terms.keys();
        match it.next() {
            None => ExpVec::zero(self.nvars),
            Some(first) => it.fold(first.clone(), |acc, e| acc.min_with(e)),
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Laurent::zero(self.nvars);
        }
        Laurent {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    /// Multiplication by the Laurent monomial `x^e`.
    pub fn shift(&self, e: &ExpVec) -> Self {
        Laurent {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(f, a)| (f + e, a.clone())).collect(),
        }
    }

    /// Integer power. Negative powers exist only for single-term values.
    pub fn pow(&self, k: i64) -> Result<Self> {
        if k < 0 {
            return self.inverse_monomial()?.pow(-k);
        }
        let mut base = self.clone();
        let mut acc = Laurent::one(self.nvars);
        let mut k = k as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Inverse of a single-term value.
    pub fn inverse_monomial(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(PcglError::ZeroDivisor);
        }
        if self.terms.len() != 1 {
            return Err(PcglError::NotDivisible);
        }
        let (e, c) = self.terms.iter().next().unwrap();
        Ok(Laurent::monomial(self.nvars, c.recip(), -e))
    }

    /// Exact quotient `num / den` in the Laurent ring.
    ///
    /// Both operands are shifted by monomials until they are polynomials with
    /// no monomial factor; then ordinary division with remainder in the
    /// revlex (a lexicographic monomial order) decides divisibility.
    pub fn exact_divide(&self, den: &Laurent) -> Result<Self> {
        if den.is_zero() {
            return Err(PcglError::ZeroDivisor);
        }
        if self.is_zero() {
            return Ok(Laurent::zero(self.nvars));
        }
        if den.is_monomial() {
            return Ok(self * &den.inverse_monomial()?);
        }
        let a = self.min_exponents();
        let b = den.min_exponents();
        let mut rem = self.shift(&-&a);
        let d = den.shift(&-&b);
        let (dc, de) = {
            let (c, e) = d.leading_term()?;
            (c.clone(), e.clone())
        };
        let mut quot = Laurent::zero(self.nvars);
        while !rem.is_zero() {
            let (rc, re) = {
                let (c, e) = rem.leading_term()?;
                (c.clone(), e.clone())
            };
            let diff = &re - &de;
            if !diff.is_nonnegative() {
                return Err(PcglError::NotDivisible);
            }
            let t = Laurent::monomial(self.nvars, rc / &dc, diff);
            rem = &rem - &(&t * &d);
            quot = &quot + &t;
        }
        Ok(quot.shift(&(&a - &b)))
    }

    /// Homomorphic image under `x_i -> images[i]`.
    ///
    /// Negative powers are allowed on single-term images directly; for any
    /// other image the negative powers are collected into one denominator
    /// which must divide the numerator exactly.
    pub fn substitute(&self, images: &[Laurent]) -> Result<Laurent> {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut clear = ExpVec::zero(self.nvars);
        for e in self.terms.keys() {
            for (i, &a) in e.0.iter().enumerate() {
                if a < 0 && !images[i].is_monomial() {
                    clear.0[i] = clear.0[i].max(-a);
                }
            }
        }
        let mut cache: HashMap<(usize, i64), Laurent> = HashMap::new();
        let mut power = |i: usize, k: i64| -> Result<Laurent> {
            if let Some(p) = cache.get(&(i, k)) {
                return Ok(p.clone());
            }
            let p = images[i]
                .pow(k)
                .map_err(|_| PcglError::NonInvertibleImage { var: i })?;
            cache.insert((i, k), p.clone());
            Ok(p)
        };
        let mut num = Laurent::zero(target);
        for (e, c) in &self.terms {
            let mut t = Laurent::constant(target, c.clone());
            for (i, &a) in e.0.iter().enumerate() {
                let k = a + clear.0[i];
                if k != 0 {
                    t = &t * &power(i, k)?;
                }
            }
            num = &num + &t;
        }
        if clear.is_zero() {
            return Ok(num);
        }
        let mut den = Laurent::one(target);
        for (i, &k) in clear.0.iter().enumerate() {
            if k > 0 {
                den = &den * &power(i, k)?;
            }
        }
        num.exact_divide(&den).map_err(|_| PcglError::NonInvertibleImage {
            var: clear.0.iter().position(|&k| k > 0).unwrap_or(0),
        })
    }

    /// The derivation `D` with `D(x_i) = images[i]`, extended by linearity and
    /// the Leibniz rule (which also covers negative exponents).
    pub fn apply_derivation(&self, images: &[Laurent]) -> Laurent {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let mut out = Laurent::zero(self.nvars);
        for (e, c) in &self.terms {
            for (i, &a) in e.0.iter().enumerate() {
                if a == 0 || images[i].is_zero() {
                    continue;
                }
                let mut f = e.clone();
                f.0[i] -= 1;
                let coef = c * Q::from_integer(a.into());
                for (g, b) in images[i].terms() {
                    out.add_term(&f + g, &coef * b);
                }
            }
        }
        out
    }

    /// Partial derivative with respect to `x_i`.
    pub fn partial(&self, i: usize) -> Laurent {
        let mut out = Laurent::zero(self.nvars);
        for (e, c) in &self.terms {
            let a = e.0[i];
            if a != 0 {
                let mut f = e.clone();
                f.0[i] -= 1;
                out.add_term(f, c * Q::from_integer(a.into()));
            }
        }
        out
    }

    /// Diagonal operator `x^e -> w(e) x^e`.
    pub fn map_diagonal(&self, weight: impl Fn(&ExpVec) -> Q) -> Laurent {
        let mut out = Laurent::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * weight(e));
        }
        out
    }

    /// Renders the polynomial with `names[i]` for `x_i`, leading term first.
    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = render_monomial(e, names);
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{abs}*{mono}"));
            }
        }
        out
    }
}

fn render_monomial(e: &ExpVec, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &a) in e.0.iter().enumerate() {
        let name = names.get(i).cloned().unwrap_or_else(|| format!("x{}", i + 1));
        match a {
            0 => {}
            1 => parts.push(name),
            _ => parts.push(format!("{name}^{a}")),
        }
    }
    parts.join("*")
}

/// Default variable names `x1, ..., xN`.
pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&default_names(self.nvars)))
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({self})")
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        debug_assert_eq!(self.nvars, rhs.nvars);
        let (big, small) = if self.len() >= rhs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (e, c) in &small.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        debug_assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        debug_assert_eq!(self.nvars, rhs.nvars);
        let mut out = Laurent::zero(self.nvars);
        for (e, a) in &self.terms {
            for (f, b) in &rhs.terms {
                out.add_term(e + f, a * b);
            }
        }
        out
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for Laurent {
            type Output = Laurent;
            fn $m(self, rhs: Laurent) -> Laurent {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Laurent> for Laurent {
            type Output = Laurent;
            fn $m(self, rhs: &Laurent) -> Laurent {
                (&self).$m(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        -&self
    }
}
