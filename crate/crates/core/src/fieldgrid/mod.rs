//! Periodic 3D lattices, centred second-order stencils, and the octonic operators
//! `(1/c)∂t ± ∇`.
//!
//! Grids are collocated and periodic. Time derivatives are never differenced: a
//! [`TimeSlice`] carries them alongside the field.

pub mod classical;
mod field;
mod grid;
pub mod ops;
pub mod snapshot;

pub use field::{Field, FieldValue, OctonField, ScalarField, TimeSlice, TimeSlice2, VectorField};
pub use grid::{Axis, Grid3};
pub use ops::{
    field_norms, field_norms_interior, laplacian, mixed_commutator_apply, nabla_apply, p_apply,
    p_conj_apply, partial, stencil_scale, Norms,
};
