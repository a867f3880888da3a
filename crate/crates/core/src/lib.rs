//! Exact arithmetic for the modified q-Genocchi numbers and polynomials with
//! weight `(alpha, beta)`.
//!
//! The crate is split along the lines of the computations it performs:
//!
//! - [`scalar`]: exact rational helpers (powers, binomial rows, parsing).
//! - [`genocchi`]: q-brackets, the numbers `g_{n,q}`, the polynomials
//!   `g_{n,q}(x)` in the `y = q^x` representation, modified q-Euler numbers and
//!   the exactly checkable identities between them.
//! - [`series`]: truncated power series in `eps = q - 1`, used for the
//!   `q -> 1` limit and for the classical Genocchi numbers.
//! - [`padic`]: finite-precision p-adic numbers and exact Riemann sums of the
//!   fermionic p-adic q-integral.
//! - [`analytic`]: floating-point evaluation of the weighted q-zeta function,
//!   Abel radial summation and the Hurwitz-Euler limit.
//! - [`report`]: the [`IdentityReport`] type every check returns.

pub mod analytic;
pub mod error;
pub mod genocchi;
pub mod padic;
pub mod report;
pub mod scalar;
pub mod series;

pub use error::{Error, Result};
pub use genocchi::{Orientation, PolyArgument, QPoint, WeightPair};
pub use report::{IdentityReport, Measure};
pub use scalar::ExactScalar;
