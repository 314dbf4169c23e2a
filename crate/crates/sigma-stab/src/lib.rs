//! Analysis of the sigma-parameterized family `M_sigma` of a real square
//! matrix `M`: the diagonal of `M` is scaled by a parameter `sigma`, and the
//! library studies how stability of `M_sigma` relates to the coefficients of
//! its characteristic polynomial.
//!
//! Each coefficient of the characteristic polynomial of `M_sigma` is itself a
//! polynomial `p_i` in `sigma`. The real roots of all the `p_i` form the set
//! `Omega`, and the library cross-checks two independent pipelines against
//! each other:
//!
//! - an eigenvalue pipeline ([`eig`]) that locates the critical `sigma*`
//!   where the spectral abscissa of `M_sigma` crosses zero, and
//! - a polynomial pipeline ([`sigmacharpoly`] + [`upoly`]) that recovers the
//!   `p_i` by interpolation and isolates their real roots with Sturm
//!   sequences.
//!
//! At a real crossing the two must agree (`max(Omega) = sigma*`); at a
//! complex-pair crossing `max(Omega) <= sigma*`. The [`stability`] module
//! turns these statements into executable checks, and [`oracle`] provides
//! exact brute-force references for testing.
//!
//! The crate ships runnable demos under `examples/` (one per capability) and
//! a thin `sigma-stab` binary with `analyze` and `sweep` subcommands; see the
//! README for a tour.

pub mod cli;
pub mod eig;
pub mod matcore;
pub mod oracle;
pub mod sigmacharpoly;
pub mod stability;
pub mod upoly;

pub use eig::{EigError, Spectrum};
pub use matcore::{MatError, Matrix, SigmaValue};
pub use sigmacharpoly::SigmaCharPoly;
pub use stability::{AnalyzeOptions, Crossing, StabilityError, StabilityReport};
pub use upoly::{PolyError, RealPoly, RootList};
