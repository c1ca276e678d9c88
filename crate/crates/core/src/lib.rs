//! Exact lattice-point counting in Euclidean balls with certified error bounds.
//!
//! Given a real M×N matrix `A` of full column rank, the columns of `A` span a
//! rank-N lattice inside an N-dimensional subspace of R^M. This crate counts,
//! exactly, the lattice points `A(m + x)` (m integral) inside a closed ball of
//! radius `R` centered at a point `Ax` of that subspace, weighting points that
//! fall on the sphere by 1/2. The scaled count `sqrt(det AᵀA) · count` tracks
//! the ball volume `V_N R^N`, and the discrepancy between the two admits a
//! certified bound built from Bessel-function identities:
//!
//! ```text
//! | sqrt(det AᵀA) · Σ_m χ_R(A(m + x)) − V_N R^N | ≤ ω_{N−1} · u_ν(R, δ)
//! ```
//!
//! valid whenever the operator norm satisfies `|A| ≤ 1/δ`, with `2ν + 2 = N`.
//! The factor `u_ν` is the value of a one-sided band-limited approximation
//! problem and is computed here in closed form from a single Bessel bracket
//! evaluation; see [`extremal`].
//!
//! Modules:
//! - [`specfun`]: Bessel functions `J_ν` for integer and half-integer orders,
//!   the bracket combination, and its tail-integral identity.
//! - [`extremal`]: the dimensional constants `V_N`, `ω_{N−1}` and the bound
//!   factor `u_ν(R, δ)`.
//! - [`lattice`]: Gram matrix, symmetric square root `S`, operator norm.
//! - [`enumerate`]: sphere-decoder point enumeration, a brute-force oracle,
//!   and shortest-vector search.
//! - [`verify`]: inequality trials, randomized sweeps, and Poisson-summation
//!   checks on a band-limited test family.
//!
//! The crate is `no_std`-compatible (requires `alloc`); enable the `libm`
//! feature instead of `std` to build without the standard library.

#![no_std]
#![forbid(unsafe_code)]
// `!(x > 0.0)` is deliberate throughout: the negated form also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("latball-core requires either the `std` or the `libm` feature");

extern crate alloc;

#[cfg(any(test, feature = "std"))]
extern crate std;

mod error;
mod math;

pub mod enumerate;
pub mod extremal;
pub mod lattice;
pub mod rng;
pub mod specfun;
pub mod verify;

pub use error::Error;

/// Result alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
