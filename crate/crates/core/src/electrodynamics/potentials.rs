use crate::algebra::{BasisUnit, Complex};
use crate::fieldgrid::classical::{curl, div, gradient};
use crate::fieldgrid::{
    laplacian, mixed_commutator_apply, nabla_apply, p_apply, p_conj_apply,
    stencil_scale, OctonField, ScalarField, TimeSlice,
};
use crate::tolerance;
use crate::{Error, Result};

use super::{require_agreement, CurrentOcton, FieldOcton, PotentialSlice, UnitsConfig};

/// Fields derived from potentials, with the gauge condition and the octonic cross-check.
#[derive(Clone, Debug)]
pub struct PotentialFields {
    pub fields: FieldOcton,
    /// `(1/c)∂φ/∂t + div A`; zero in the Lorenz gauge.
    pub gauge: ScalarField,
    /// `((1/c)∂t + ∇)Π`, computed octonically.
    pub p_potential: OctonField,
    /// Largest coefficient difference between `p_potential` and `−E + ξH + gauge`.
    pub discrepancy: f64,
}

/// `E = −(1/c)∂A/∂t − ∇φ`, `H = rot A`, checked against `((1/c)∂t + ∇)(φ + A)`.
pub fn field_from_potentials(pot: &PotentialSlice, units: &UnitsConfig) -> Result<PotentialFields> {
    pot.check()?;
    let c = units.c;
    let grad_phi = gradient(&pot.value.phi);
    let e = pot.d_dt.a.scale(-1.0 / c).sub(&grad_phi)?;
    let h = curl(&pot.value.a);
    let mut gauge = div(&pot.value.a);
    gauge.axpy(1.0 / c, &pot.d_dt.phi)?;
    let fields = FieldOcton { e, h };

    let slice = pot.octon_slice();
    let p_potential = p_apply(&slice, c);
    let expected = fields
        .octon()
        .add(&gauge.to_octon(BasisUnit::One, Complex::new(1.0, 0.0)))?;
    let discrepancy = p_potential.max_abs_diff(&expected)?;
    let scale = stencil_scale(&slice, c).max(1.0);
    require_agreement(
        "field_from_potentials",
        discrepancy,
        scale,
        tolerance::MAXWELL_PATH,
    )?;
    Ok(PotentialFields {
        fields,
        gauge,
        p_potential,
        discrepancy,
    })
}

/// The three forms of the second-order potential equation.
#[derive(Clone, Debug)]
pub struct GeneralizedResidual {
    /// `((1/c)∂t − ∇)((1/c)∂t + ∇)Π − J`, by composing the first-order operators.
    pub composed: OctonField,
    /// `((1/c²)∂tt − Δ)Π − J` with the seven-point Laplacian.
    pub wave_form: OctonField,
    /// The commutator part `[∇,∇]Π` that separates the two in the continuum argument.
    pub mixed: OctonField,
}

pub fn generalized_equation_residual(
    pot: &PotentialSlice,
    cur: &CurrentOcton,
    units: &UnitsConfig,
) -> Result<GeneralizedResidual> {
    pot.check()?;
    if pot.grid() != cur.grid() {
        return Err(Error::GridMismatch {
            left: "potential",
            right: "current",
        });
    }
    let d2 = pot
        .d2_dt2
        .as_ref()
        .ok_or(Error::MissingDerivative("generalized_equation_residual"))?;
    let c = units.c;
    let pi = pot.value.octon();
    let pi_t = pot.d_dt.octon();
    let pi_tt = d2.octon();
    let j = cur.octon(units);

    let first = p_apply(
        &TimeSlice {
            value: pi.clone(),
            d_dt: pi_t.clone(),
        },
        c,
    );
    let mut first_t = pi_tt.scale(1.0 / c);
    first_t.axpy(1.0, &nabla_apply(&pi_t))?;
    let composed = p_conj_apply(
        &TimeSlice {
            value: first,
            d_dt: first_t,
        },
        c,
    )
    .sub(&j)?;

    let wave_form = pi_tt.scale(1.0 / (c * c)).sub(&laplacian(&pi))?.sub(&j)?;
    let mixed = mixed_commutator_apply(&pi);
    Ok(GeneralizedResidual {
        composed,
        wave_form,
        mixed,
    })
}
