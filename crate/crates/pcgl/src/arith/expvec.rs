use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// Exponent vector of a Laurent monomial `x^f`.
///
/// The ordering is reverse lexicographic: vectors are compared starting from
/// the last coordinate, and the first coordinate where they differ decides.
/// Under this order `x_N` dominates every monomial in `x_1, ..., x_{N-1}`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExpVec(pub Vec<i64>);

impl ExpVec {
    pub fn zero(n: usize) -> Self {
        ExpVec(vec![0; n])
    }

    /// The standard basis vector `e_i` (0-based).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        ExpVec(v)
    }

    /// Indicator vector of a set of indices.
    pub fn indicator(n: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        let mut v = vec![0; n];
        for i in idx {
            v[i] += 1;
        }
        ExpVec(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// Componentwise positive part `[f]_+`.
    pub fn positive_part(&self) -> Self {
        ExpVec(self.0.iter().map(|&e| e.max(0)).collect())
    }

    /// Componentwise negative part `[f]_-`, so that `f = [f]_+ + [f]_-`.
    pub fn negative_part(&self) -> Self {
        ExpVec(self.0.iter().map(|&e| e.min(0)).collect())
    }

    pub fn min_with(&self, other: &ExpVec) -> Self {
        ExpVec(self.0.iter().zip(&other.0).map(|(&a, &b)| a.min(b)).collect())
    }

    pub fn scaled(&self, c: i64) -> Self {
        ExpVec(self.0.iter().map(|&e| e * c).collect())
    }

    pub fn get(&self, i: usize) -> i64 {
        self.0[i]
    }
}

impl Ord for ExpVec {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.0.len(), other.0.len());
        for (a, b) in self.0.iter().rev().zip(other.0.iter().rev()) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for ExpVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &ExpVec {
    type Output = ExpVec;
    fn add(self, rhs: &ExpVec) -> ExpVec {
        ExpVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &ExpVec {
    type Output = ExpVec;
    fn sub(self, rhs: &ExpVec) -> ExpVec {
        ExpVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Add for ExpVec {
    type Output = ExpVec;
    fn add(self, rhs: ExpVec) -> ExpVec {
        &self + &rhs
    }
}

impl Sub for ExpVec {
    type Output = ExpVec;
    fn sub(self, rhs: ExpVec) -> ExpVec {
        &self - &rhs
    }
}

impl Neg for &ExpVec {
    type Output = ExpVec;
    fn neg(self) -> ExpVec {
        ExpVec(self.0.iter().map(|e| -e).collect())
    }
}

impl fmt::Debug for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<Vec<i64>> for ExpVec {
    fn from(v: Vec<i64>) -> Self {
        ExpVec(v)
    }
}
