//! Real-valued vector calculus on the same stencils, with no octon arithmetic. This is the
//! reference the octonic operators are compared against.

use super::ops::partial;
use super::{Axis, ScalarField, VectorField};

pub fn gradient(f: &ScalarField) -> VectorField {
    let [dx, dy, dz] = Axis::ALL.map(|a| partial(f, a));
    VectorField::from_components(&dx, &dy, &dz).expect("same grid")
}

/// `jacobian(v)[a]` holds `∂_a v` as a vector field, so `J[a][b] = ∂_a v_b`.
pub fn jacobian(v: &VectorField) -> [VectorField; 3] {
    Axis::ALL.map(|a| partial(v, a))
}

pub fn div_from_jacobian(j: &[VectorField; 3]) -> ScalarField {
    let grid = *j[0].grid();
    let data = (0..grid.len())
        .map(|n| j[0][n][0] + j[1][n][1] + j[2][n][2])
        .collect();
    ScalarField::new(grid, data).expect("same grid")
}

pub fn curl_from_jacobian(j: &[VectorField; 3]) -> VectorField {
    let grid = *j[0].grid();
    let data = (0..grid.len())
        .map(|n| {
            let (dx, dy, dz) = (j[0][n], j[1][n], j[2][n]);
            [dy[2] - dz[1], dz[0] - dx[2], dx[1] - dy[0]]
        })
        .collect();
    VectorField::new(grid, data).expect("same grid")
}

pub fn div(v: &VectorField) -> ScalarField {
    div_from_jacobian(&jacobian(v))
}

pub fn curl(v: &VectorField) -> VectorField {
    curl_from_jacobian(&jacobian(v))
}

/// Pointwise dot product.
pub fn dot(a: &VectorField, b: &VectorField) -> ScalarField {
    a.zip_map(b, |x, y| x[0] * y[0] + x[1] * y[1] + x[2] * y[2])
        .expect("same grid")
}

/// Pointwise cross product.
pub fn cross(a: &VectorField, b: &VectorField) -> VectorField {
    a.zip_map(b, cross3).expect("same grid")
}

#[inline]
pub fn cross3(x: [f64; 3], y: [f64; 3]) -> [f64; 3] {
    [
        x[1] * y[2] - x[2] * y[1],
        x[2] * y[0] - x[0] * y[2],
        x[0] * y[1] - x[1] * y[0],
    ]
}

#[inline]
pub fn dot3(x: [f64; 3], y: [f64; 3]) -> f64 {
    x[0] * y[0] + x[1] * y[1] + x[2] * y[2]
}
