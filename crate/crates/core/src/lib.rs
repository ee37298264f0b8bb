//! Truncated Fourier expansions of degree-2 Siegel modular forms of even
//! weight for the full modular group, computed from Jacobi forms.
//!
//! The pipeline for a weight `k`:
//!
//! 1. [`jacobi::jacobi_basis`] produces bases of `J_{k,m}` for every index
//!    `m < B`, each as a truncated Fourier expansion in `(n, r)`.
//! 2. [`formal_fj::solve_fm_space`] imposes the Fourier-Jacobi symmetry
//!    `c(phi_m; n, r) = c(phi_n; m, r)` and solves for the space of
//!    truncated formal Fourier-Jacobi expansions.
//! 3. [`formal_fj::compute_siegel_space`] raises `B` until that space has
//!    the dimension of `M_k` (see [`oracles::dim_siegel_even`]).
//!
//! All arithmetic is exact over the rationals ([`linalg`]).

pub mod elliptic;
pub mod error;
pub mod formal_fj;
pub mod io;
pub mod jacobi;
pub mod linalg;
pub mod oracles;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::{rat, CoeffVector, EchelonBasis, Rational};
