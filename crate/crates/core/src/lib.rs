//! Octon algebra and octonic electrodynamics.
//!
//! An octon is an eight-component element `d + a·i + b·j + c·k + D·E + A·I + B·J + C·K`
//! with complex coefficients: a scalar, a polar vector, a pseudoscalar and an axial
//! vector carried together. Their product is associative but not commutative, and the
//! single octonic first-order operator `(1/c)∂t ± ∇` packs all four Maxwell equations,
//! the wave equations, and the energy/momentum/invariant balance laws into grade
//! projections of one octon equation.
//!
//! The crate is organised bottom-up:
//!
//! - [`algebra`]: exact octon arithmetic, grade projection, and a 2×2 matrix-pair
//!   representation used as an independent oracle for the product table.
//! - [`fieldgrid`]: periodic 3D lattices, centred finite-difference stencils, the octonic
//!   operators, and a classical (real-valued div/curl/grad) path kept independent of them.
//! - [`electrodynamics`]: vacuum potentials, currents and field octons, with every
//!   residual computed both octonically and classically.
//! - [`matter`]: the four-field (E, D, H, B) formulation closed by an isotropic medium.
//! - [`solver`]: RK4 time evolution of (E, H) with conservation diagnostics.
//! - [`identities`]: refinement studies over all residual operations.

pub mod algebra;
pub mod analytic;
pub mod convergence;
pub mod electrodynamics;
mod error;
pub mod fieldgrid;
pub mod identities;
pub mod matter;
pub mod solver;
pub mod tolerance;

pub use algebra::{BasisUnit, Complex, Grade, GradedParts, Octon, XI};
pub use error::{Error, Result};
pub use fieldgrid::{
    Axis, Field, Grid3, OctonField, ScalarField, TimeSlice, TimeSlice2, VectorField,
};
