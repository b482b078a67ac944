//! Error type shared by every module.
//!
//! Indices stored in the variants are 0-based like the rest of the library;
//! the `Display` output shifts them to the 1-based convention used in reports.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, PcglError>;

/// Which exit status a failure maps to on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// The input is malformed or does not satisfy a precondition.
    Input,
    /// A computed identity did not hold.
    Verification,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PcglError {
    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("division is not exact in the Laurent ring")]
    NotDivisible,
    #[error("division by zero")]
    ZeroDivisor,
    #[error("negative power of x{} meets a non-invertible image", .var + 1)]
    NonInvertibleImage { var: usize },
    #[error("Jacobi identity fails on generators ({}, {}, {}): {witness}", .i + 1, .j + 1, .k + 1)]
    JacobiFailure {
        i: usize,
        j: usize,
        k: usize,
        witness: String,
    },
    #[error("delta_{}(x{}) is not homogeneous of the expected weight: {witness}", .k + 1, .j + 1)]
    InhomogeneousDelta { k: usize, j: usize, witness: String },
    #[error("eigenvalue lambda_{} is zero", .k + 1)]
    ZeroEigenvalue { k: usize },
    #[error("delta_{} is not nilpotent on x{} within {bound} iterations: {witness}", .k + 1, .j + 1)]
    NilpotenceBoundExceeded {
        k: usize,
        j: usize,
        bound: usize,
        witness: String,
    },
    #[error("element is not homogeneous: monomials {first} and {second} have different weights")]
    Inhomogeneous { first: String, second: String },
    #[error("support violation at k={}{}: {detail}", .k + 1, .j.map(|j| format!(", j={}", j + 1)).unwrap_or_default())]
    SupportViolation {
        k: usize,
        j: Option<usize>,
        detail: String,
    },
    #[error("ambiguous predecessor for k={}: candidates {}", .k + 1, one_based(.candidates))]
    AmbiguousPredecessor { k: usize, candidates: Vec<usize> },
    #[error("no predecessor found for k={}", .k + 1)]
    NoPredecessor { k: usize },
    #[error("certificate failure in {what}: {lhs} != {rhs}")]
    CertFailure { what: String, lhs: String, rhs: String },
    #[error("no h* vector solves the reverse-order conditions for j={}", .j + 1)]
    NoHStarSolution { j: usize },
    #[error("lambda*_{} is zero", .j + 1)]
    ZeroLambdaStar { j: usize },
    #[error("incompatible scalars at ({}, {}): {reason}", .l + 1, .j + 1)]
    Incompatible { l: usize, j: usize, reason: String },
    #[error("interval [{}, s^{m}({})] leaves the index range", .i + 1, .i + 1)]
    IndexError { i: usize, m: usize },
    #[error("leading form violation for [{}, s^{m}({})]: {detail}", .i + 1, .i + 1)]
    LeadingFormViolation { i: usize, m: usize, detail: String },
    #[error("index {} is not exchangeable", .k + 1)]
    NotExchangeable { k: usize },
    #[error("mutation of r at {} depends on the sign choice", .k + 1)]
    EpsilonMismatch { k: usize },
    #[error("mutation at {} destroyed compatibility", .k + 1)]
    CompatibilityLost { k: usize },
    #[error("pair is not compatible at ({}, {})", .k + 1, .j + 1)]
    CompatibilityFailure { k: usize, j: usize },
    #[error("exchange column {} has no solution", .l + 1)]
    NoSolution { l: usize },
    #[error("exchange column {} is not unique (system rank {rank})", .l + 1)]
    NonUnique { l: usize, rank: usize },
    #[error("exchange column {} is not integral: {value}", .l + 1)]
    NonIntegral { l: usize, value: String },
    #[error("one-step link at position {} fails: {component}", .k + 1)]
    LinkFailure { k: usize, component: String },
    #[error("element is not in the ring: variable {} occurs with a negative exponent", .var + 1)]
    NotInRing { var: usize },
    #[error("bracket of seed variables {} and {} is not log-canonical", .l + 1, .j + 1)]
    LogCanonicalFailure { l: usize, j: usize },
    #[error("shape mismatch: {detail}")]
    ShapeMismatch { detail: String },
    #[error("input error: {0}")]
    Input(String),
}

fn one_based(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(|i| (i + 1).to_string()).collect();
    format!("[{}]", parts.join(", "))
}

impl PcglError {
    /// Stable machine-readable code, equal to the variant name.
    pub fn code(&self) -> &'static str {
        use PcglError::*;
        match self {
            ZeroPolynomial => "ZeroPolynomial",
            NotDivisible => "NotDivisible",
            ZeroDivisor => "ZeroDivisor",
            NonInvertibleImage { .. } => "NonInvertibleImage",
            JacobiFailure { .. } => "JacobiFailure",
            InhomogeneousDelta { .. } => "InhomogeneousDelta",
            ZeroEigenvalue { .. } => "ZeroEigenvalue",
            NilpotenceBoundExceeded { .. } => "NilpotenceBoundExceeded",
            Inhomogeneous { .. } => "Inhomogeneous",
            SupportViolation { .. } => "SupportViolation",
            AmbiguousPredecessor { .. } => "AmbiguousPredecessor",
            NoPredecessor { .. } => "NoPredecessor",
            CertFailure { .. } => "CertFailure",
            NoHStarSolution { .. } => "NoHStarSolution",
            ZeroLambdaStar { .. } => "ZeroLambdaStar",
            Incompatible { .. } => "Incompatible",
            IndexError { .. } => "IndexError",
            LeadingFormViolation { .. } => "LeadingFormViolation",
            NotExchangeable { .. } => "NotExchangeable",
            EpsilonMismatch { .. } => "EpsilonMismatch",
            CompatibilityLost { .. } => "CompatibilityLost",
            CompatibilityFailure { .. } => "CompatibilityFailure",
            NoSolution { .. } => "NoSolution",
            NonUnique { .. } => "NonUnique",
            NonIntegral { .. } => "NonIntegral",
            LinkFailure { .. } => "LinkFailure",
            NotInRing { .. } => "NotInRing",
            LogCanonicalFailure { .. } => "LogCanonicalFailure",
            ShapeMismatch { .. } => "ShapeMismatch",
            Input(_) => "Input",
        }
    }

    /// Errors that describe a bad presentation or argument map to
    /// [`ErrorClass::Input`]; failed identities map to
    /// [`ErrorClass::Verification`].
    pub fn class(&self) -> ErrorClass {
        use PcglError::*;
        match self {
            CertFailure { .. }
            | EpsilonMismatch { .. }
            | CompatibilityLost { .. }
            | CompatibilityFailure { .. }
            | LinkFailure { .. }
            | LogCanonicalFailure { .. }
            | NotInRing { .. } => ErrorClass::Verification,
            _ => ErrorClass::Input,
        }
    }
}
