//! Exact computations for symmetric Poisson-CGL extensions.
//!
//! Starting from a declarative presentation of an iterated Poisson-Ore
//! extension with a rational torus action, the crate
//!
//! * checks the axioms of the presentation ([`poisson::validate_algebra`]),
//! * finds the level sets `eta` and the homogeneous Poisson-prime elements
//!   `y_1, ..., y_N` ([`cgl::compute_eta_and_primes`]),
//! * handles the reverse presentation, interval primes and normalization of
//!   generators ([`symmetric`]),
//! * builds a seed for every permutation in `Gamma_N`, verifies the
//!   mutations linking them, log-canonicality and upper cluster membership
//!   ([`cluster`]).
//!
//! All arithmetic is exact over the rationals. Indices are 0-based in the
//! API and 1-based in reports and error messages.
//!
//! ```
//! use pcgl::presets::{build_matrix_poisson, solid_minor};
//! use pcgl::cgl::compute_eta_and_primes;
//!
//! let p = build_matrix_poisson(2, 2);
//! let (eta, primes) = compute_eta_and_primes(&p).unwrap();
//! assert_eq!(eta.rank, 3);
//! assert_eq!(primes.y[3], solid_minor(2, 2, (1, 2), (1, 2)).unwrap());
//! ```

#![allow(clippy::needless_range_loop)]

pub mod arith;
pub mod cgl;
pub mod cluster;
pub mod error;
pub mod expr;
pub mod io;
pub mod poisson;
pub mod presets;
pub mod report;
pub mod symmetric;

pub use arith::{ExpVec, Laurent, Q};
pub use error::{ErrorClass, PcglError, Result};
pub use poisson::Presentation;
