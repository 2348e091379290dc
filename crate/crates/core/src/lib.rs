//! Sum uncertainty bounds for finite sets of quantum observables.
//!
//! For a density matrix `rho` and observables `A_1, ..., A_N`, this crate
//! computes the two uncertainty sums
//!
//! * `sum_i (Delta A_i)^2`, the total variance, and
//! * `sum_i I_rho(A_i)`, the total Wigner-Yanase skew information,
//!   with `I_rho(A) = 1/2 ||[sqrt(rho), A]||_F^2`,
//!
//! together with a catalog of lower bounds on each (see [`bounds`]). The
//! modules build on one another:
//!
//! * [`linalg`]: small dense complex matrices, Jacobi eigensolver, PSD square root
//! * [`states`]: density matrices, Bloch vectors, seeded random ensembles
//! * [`measures`]: expectation, variance, skew information, amplitude vectors
//! * [`bounds`]: every lower bound plus [`bounds::evaluate_all`]
//! * [`scenarios`]: the three worked examples and parameter sweeps
//! * [`problem`], [`fuzz`], [`output`]: JSON input, randomized checks, CSV output
//!
//! ```
//! use sumbounds::bounds::{evaluate_all, BoundName, EvaluationOptions, ObservableSet};
//! use sumbounds::linalg::HermitianMatrix;
//! use sumbounds::states::{from_bloch, BlochVector};
//!
//! let rho = from_bloch(BlochVector::new(0.3, 0.4, 0.5)).unwrap();
//! let obs = ObservableSet::new(vec![
//!     HermitianMatrix::pauli_x(),
//!     HermitianMatrix::pauli_y(),
//!     HermitianMatrix::pauli_z(),
//! ])
//! .unwrap();
//! let report = evaluate_all(&rho, &obs, &EvaluationOptions::default()).unwrap();
//! assert!(report.violations.is_empty());
//! assert!(report.value(BoundName::Theorem1).unwrap() <= report.variance_sum);
//! ```

pub mod bounds;
pub mod error;
pub mod fuzz;
pub mod linalg;
pub mod measures;
pub mod output;
pub mod problem;
pub mod scenarios;
pub mod states;

pub use error::{Error, Result};

// The guide's code listings compile and run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/linear-algebra.md")]
    pub struct LinearAlgebra;
    #[doc = include_str!("../../../book/src/states.md")]
    pub struct States;
    #[doc = include_str!("../../../book/src/measures.md")]
    pub struct Measures;
    #[doc = include_str!("../../../book/src/variance-bounds.md")]
    pub struct VarianceBounds;
    #[doc = include_str!("../../../book/src/skew-bounds.md")]
    pub struct SkewBounds;
    #[doc = include_str!("../../../book/src/scenarios.md")]
    pub struct Scenarios;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct Cli;
}
