//! Exact Hecke operators on vector-valued period functions for the Hecke
//! congruence subgroups `Γ₀(n)`.
//!
//! The crate is organised bottom-up:
//!
//! * [`exact`]: extended rationals, 2×2 integer matrices and formal sums of
//!   matrices (the integral group rings `R_n`).
//! * [`farey`]: Farey sequences, levels, left neighbor sequences and the
//!   formal sum `M(q)`.
//! * [`congruence`]: `Γ₀(n)` membership, right coset representatives and the
//!   induced permutation representation `ρ`.
//! * [`hecke`]: the Hecke sums `X_m`, `T(p)`, `U(q)`, `H̃(m)`, the coset maps
//!   `σ_g`, `φ_A` and the vector-valued Hecke operator matrix.
//! * [`numeric`]: floating-point slash action, three-term and transfer
//!   residuals, `R_ζ`, a finite-difference hyperbolic Laplacian and the
//!   `η` one-form.

pub mod congruence;
mod error;
pub mod exact;
pub mod farey;
pub mod hecke;
pub mod numeric;

pub use congruence::{coset_projection, gamma0_contains, CosetTable, PermutationMatrix};
pub use error::{Error, Result};
pub use exact::{ExtendedRational, FormalSum, IntMatrix2};
pub use farey::LeftNeighborSequence;
pub use hecke::{HeckeCosetRecord, HeckeOperatorMatrix};
