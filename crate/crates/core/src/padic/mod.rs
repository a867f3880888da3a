//! Fermionic p-adic q-integration over `Z_p`.
//!
//! Riemann sums are evaluated either in exact rational arithmetic or term by
//! term modulo a power of `p`; closed forms are evaluated with tracked precision
//! loss. See [`integral`] for the checks built on top.

pub mod integral;
pub mod integrand;
pub mod number;

pub use integral::{
    lemma1_check, riemann_sum, riemann_sum_padic, twisted_moment, witt_check, ConvergenceReport,
    ConvergenceRow, PadicQ, CONVERGENCE_SLACK, DEFAULT_TERM_BUDGET,
};
pub use integrand::{IntegrandSpec, IntegrandTerm};
pub use number::{padic_reduce, PadicNumber};
