//! Exact symbolic-numeric tools for multidimensional system stabilization.
//!
//! Given polynomials `p_1, …, p_r` with rational coefficients generating a
//! zero-dimensional ideal `I`, this crate decides whether the variety `V(I)`
//! avoids the closed unit polydisc, and when it does, builds a polynomial
//! `s ∈ I` with no zeros in the polydisc together with cofactors
//! `s = Σ u_i p_i`.
//!
//! Layout, bottom-up:
//!
//! * [`poly`]: multivariate and univariate polynomials over `BigRational`,
//!   resultants, gcd, squarefree decomposition.
//! * [`interval`]: rational intervals, complex boxes, enclosure evaluation.
//! * [`roots`]: certified complex root isolation, real root isolation, and
//!   unit-circle root counting.
//! * [`zerodim`]: Gröbner bases with cofactor tracking, radicalization and
//!   univariate representations.
//! * [`stabilizability`] and [`stabilization`]: the two decision procedures.
//! * [`system`], [`report`], [`bench`]: problem files, reports and the
//!   random-instance harness behind the `polystab` binary.

pub mod bench;
pub mod error;
pub mod interval;
pub mod num;
pub mod poly;
pub mod report;
pub mod roots;
pub mod stabilizability;
pub mod stabilization;
pub mod system;
pub mod zerodim;

pub use error::{Error, Result};
pub use interval::{ComplexBox, RatInterval, Sign};
pub use num::{GaussRat, Rational};
pub use poly::{MultiPoly, UniPoly};
pub use roots::IsolationResult;
pub use stabilizability::{is_stabilizable, StabilizabilityVerdict};
pub use stabilization::{stable_polynomial, stable_polynomial_with, StabilityResult, StabilizationOptions};
pub use zerodim::{univ_r, GroebnerBasis, Ideal, UnivariateRepresentation};
