//! Scalar and vector products of pure vectors and pseudovectors, and their
//! correspondence with Gibbs dot and cross products.
//!
//! For two pure vector/pseudovector octons the full product splits into a symmetric
//! part, which is a scalar (like kinds) or pseudoscalar (mixed kinds), and an
//! antisymmetric part, which is a pseudovector (like kinds) or vector (mixed kinds).

use super::{Complex, Grade, Octon, XI};
use crate::{Error, Result};

/// Whether a pure octon is a polar vector or an axial vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VectorKind {
    Polar,
    Axial,
}

impl VectorKind {
    /// Classifies `a`; the zero octon counts as polar.
    pub fn of(a: &Octon, operation: &'static str, operand: usize) -> Result<VectorKind> {
        let grades = a.grades_present();
        match grades.as_slice() {
            [] | [Grade::Vector] => Ok(VectorKind::Polar),
            [Grade::Pseudovector] => Ok(VectorKind::Axial),
            _ => Err(Error::MixedGrade {
                operation,
                operand,
                grades,
            }),
        }
    }

    fn components(self, a: &Octon) -> [Complex; 3] {
        match self {
            VectorKind::Polar => a.vector_part(),
            VectorKind::Axial => a.pseudovector_part(),
        }
    }
}

fn split_product(v1: &Octon, v2: &Octon, operation: &'static str) -> Result<(Octon, Octon)> {
    let k1 = VectorKind::of(v1, operation, 1)?;
    let k2 = VectorKind::of(v2, operation, 2)?;
    let full = *v1 * *v2;
    let (sym, anti) = if k1 == k2 {
        (Grade::Scalar, Grade::Pseudovector)
    } else {
        (Grade::Pseudoscalar, Grade::Vector)
    };
    Ok((full.grade_select(sym), full.grade_select(anti)))
}

/// Symmetric part of `v1·v2`: `(V1,V2)`, `(P1,P2)` scalar or `(V,P)` pseudoscalar.
pub fn scalar_product(v1: &Octon, v2: &Octon) -> Result<Octon> {
    split_product(v1, v2, "scalar_product").map(|(s, _)| s)
}

/// Antisymmetric part of `v1·v2`: `[V1,V2]`, `[P1,P2]` pseudovector or `[V,P]` vector.
pub fn vector_product(v1: &Octon, v2: &Octon) -> Result<Octon> {
    split_product(v1, v2, "vector_product").map(|(_, v)| v)
}

fn dot(a: [Complex; 3], b: [Complex; 3]) -> Complex {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: [Complex; 3], b: [Complex; 3]) -> [Complex; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Expected `(scalar product, vector product)` built from the Gibbs dot and cross of the
/// components, decorated with `E` and `ξ` according to the kinds of the operands.
fn gibbs_expected(
    k1: VectorKind,
    c1: [Complex; 3],
    k2: VectorKind,
    c2: [Complex; 3],
) -> (Octon, Octon) {
    let d = dot(c1, c2);
    let x = cross(c1, c2).map(|z| XI * z);
    match (k1, k2) {
        // (V1,V2) = V1·V2,  [V1,V2] = ξE(V1×V2)
        (VectorKind::Polar, VectorKind::Polar) | (VectorKind::Axial, VectorKind::Axial) => {
            (Octon::scalar(d), Octon::axial(x))
        }
        // (V,P) = E(V·P),  [V,P] = ξ(V×P)
        _ => (Octon::pseudoscalar(d), Octon::polar(x)),
    }
}

/// Largest coefficient discrepancy between the octonic scalar/vector products and their
/// Gibbs-algebra counterparts.
pub fn gibbs_correspondence_check(v1: &Octon, v2: &Octon) -> Result<f64> {
    let k1 = VectorKind::of(v1, "gibbs_correspondence_check", 1)?;
    let k2 = VectorKind::of(v2, "gibbs_correspondence_check", 2)?;
    let s = scalar_product(v1, v2)?;
    let v = vector_product(v1, v2)?;
    let (s_expected, v_expected) = gibbs_expected(k1, k1.components(v1), k2, k2.components(v2));
    Ok(s.max_abs_diff(&s_expected).max(v.max_abs_diff(&v_expected)))
}
