//! Certified computation of best approximations of the linear form
//! `m0 + m1*a1 + m2*a2` and of positive integer points `(x1, x2)` that make
//! `||a1*x1 + a2*x2||` small, with every inequality decided by exact
//! rational interval arithmetic.
//!
//! The library has three layers:
//!
//! * [`real`] / [`interval`] / [`golden`] — exact input reals (`rat:`,
//!   `alg:`, `dec:` descriptors), rational interval enclosures refinable to
//!   any precision, and exact golden-ratio-field arithmetic for the
//!   exponents used by the witness bounds;
//! * [`best_approx`] — enumeration of the complete sequence of best
//!   approximations up to a height bound, the Minkowski product check
//!   `zeta_nu * M_{nu+1}^2 <= 1`, and exact determinant tests on consecutive
//!   triples;
//! * [`witness`] / [`spectrum`] — search procedures that construct positive
//!   witness points with certified bound certificates, and the end-to-end
//!   verification run that checks
//!   `||a1*x1 + a2*x2|| * max(x1,x2)^g(gamma) <= C(Gamma)` for every
//!   produced witness.
//!
//! Everything is deterministic: identical inputs produce byte-identical
//! reports, and no floating point is used anywhere in branch logic.
//!
//! # Runnable examples
//!
//! One example per capability lives in `examples/`:
//!
//! ```text
//! cargo run --example enclosures            # descriptors and certified comparisons
//! cargo run --example best_approximations   # the sequence and its invariants
//! cargo run --example witness_points        # certified witness construction
//! cargo run --example exponent_constants    # g(gamma) and C(Gamma) tables
//! cargo run --example verify_run            # full verification report
//! ```
//!
//! # Command line
//!
//! The `linform` binary exposes the same pipeline as three subcommands
//! (`best-approx`, `witness`, `verify`); see the README for flags, the
//! descriptor grammar, output schemas and exit codes.

pub mod best_approx;
pub mod cli;
pub mod error;
pub mod golden;
pub mod interval;
mod poly;
pub mod real;
pub mod spectrum;
pub mod witness;

pub use best_approx::{
    d_nu, det_condition, enumerate_best_approximations, minkowski_check, BestApproxSequence,
    BestApproximation,
};
pub use error::Error;
pub use golden::GoldenExact;
pub use interval::{Rat, RationalInterval};
pub use real::{CertifiedReal, Comparison, Precision};
pub use spectrum::{
    badly_approx_check, bound_constant, improved_exponent, run_verification, GammaEstimate,
    RunReport, SpectrumParams,
};
pub use witness::{
    circle_search, construct_witness, golden_circle_witness, golden_witness, quadratic_witness,
    reverify, slab_search, BoundCertificate, FoundPoint, NuContext, SearchKind, WitnessCase,
    WitnessPoint,
};
