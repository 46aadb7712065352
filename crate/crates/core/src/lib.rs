//! Discrete Wigner functions on an `N × N` phase space over the finite field
//! `F_N`, `N = r^n`.
//!
//! Lines of phase space are assigned rank-one projectors (a *quantum net*)
//! covariant under the generalized Pauli translations; the net fixes the
//! phase-point operators `A_α` and with them the Wigner function
//! `W_α = Tr(ρ A_α)/N`, whose line sums are measurement probabilities.
//!
//! ```
//! use wignerff::{presets, wigner::{phase_point_operators, wigner_transform, DensityMatrix}};
//! use wignerff::linalg::{ONE, ZERO};
//!
//! let net = presets::net("paper-n4").unwrap();
//! let rho = DensityMatrix::pure(&[ONE, ZERO, ZERO, ZERO]).unwrap();
//! let w = wigner_transform(&rho, &phase_point_operators(&net)).unwrap();
//! assert!((w.total() - 1.0).abs() < 1e-12);
//! ```
//!
//! The `examples/` directory walks through each piece:
//!
//! - `fields`: `F_{r^n}` arithmetic, traces, dual bases
//! - `geometry`: lines, striations, `SL(2, F_N)`
//! - `translations`: translation operators from a field-basis pair
//! - `mubs`: the `N + 1` mutually unbiased bases
//! - `wigner_tables`: Wigner functions of two-qubit states
//! - `tomography`: reconstruction from line probabilities
//! - `classification`: the Γ invariant, similarity orbits, Burnside counts
//! - `special_nets`: the fully symmetric odd-prime net and the `N = 4` product nets
//! - `basis_changes`: rebasing a pair and the `w` census

pub mod classify;
pub mod error;
pub mod geometry;
pub mod gf;
pub mod io;
pub mod linalg;
pub mod mub;
pub mod net;
pub mod presets;
pub mod reproduce;
pub mod weylops;
pub mod wigner;

pub use error::{Error, Result};
pub use geometry::{Line, LinearMap, PhasePoint};
pub use gf::{make_field, Field, FieldBasis, FieldElement};
pub use linalg::{CMatrix, C64};
pub use net::{build_net, QuantumNet, RayChoice};
pub use weylops::BasisPair;
pub use wigner::{DensityMatrix, WignerMap};
