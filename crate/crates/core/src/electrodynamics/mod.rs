//! Vacuum electrodynamics in octon form.
//!
//! Potentials, currents and fields are stored as real scalar and 3-vector lattices. Their
//! octon views are built on demand:
//!
//! - potential `Π = φ + A`,
//! - current `J = 4πρ + (4π/c)j`,
//! - field `F = −E + ξH`, with `H` on the axial units.
//!
//! Every residual is computed twice: once by octonic multiplication and grade projection,
//! once with ordinary div/curl/grad, and the two are required to agree.

mod maxwell;
mod potentials;
mod relations;
mod report;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::algebra::{Octon, XI};
use crate::analytic::EmWave;
use crate::fieldgrid::{
    field_norms, Grid3, Norms, OctonField, ScalarField, TimeSlice, VectorField,
};
use crate::{Error, Result};

pub use maxwell::{
    field_wave_residuals, field_wave_residuals_octonic, maxwell_residual, MaxwellResidual,
    WaveOperatorSign, WaveResiduals,
};
pub use potentials::{
    field_from_potentials, generalized_equation_residual, GeneralizedResidual, PotentialFields,
};
pub use relations::{
    invariant_scalars, lorentz_invariant_relations, power_relations, Invariants, RelationCheck,
};
pub use report::ResidualReport;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitsConfig {
    /// Speed of light.
    pub c: f64,
}

impl UnitsConfig {
    pub fn new(c: f64) -> Result<Self> {
        let u = UnitsConfig { c };
        u.validate()?;
        Ok(u)
    }

    pub fn validate(&self) -> Result<()> {
        if self.c > 0.0 && self.c.is_finite() {
            Ok(())
        } else {
            Err(Error::Config(format!(
                "units.c must be positive, got {}",
                self.c
            )))
        }
    }
}

impl Default for UnitsConfig {
    fn default() -> Self {
        UnitsConfig { c: 1.0 }
    }
}

fn same_grid(a: &Grid3, b: &Grid3, left: &'static str, right: &'static str) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::GridMismatch { left, right })
    }
}

/// Scalar and vector potentials.
#[derive(Clone, Debug, PartialEq)]
pub struct PotentialOcton {
    pub phi: ScalarField,
    pub a: VectorField,
}

impl PotentialOcton {
    pub fn new(phi: ScalarField, a: VectorField) -> Result<Self> {
        same_grid(phi.grid(), a.grid(), "phi", "A")?;
        Ok(PotentialOcton { phi, a })
    }

    pub fn zeros(grid: Grid3) -> Self {
        PotentialOcton {
            phi: ScalarField::zeros(grid),
            a: VectorField::zeros(grid),
        }
    }

    pub fn grid(&self) -> &Grid3 {
        self.phi.grid()
    }

    /// `φ + A`.
    pub fn octon(&self) -> OctonField {
        self.phi
            .zip_map(&self.a, |p, a| {
                Octon::from_real([p, a[0], a[1], a[2], 0.0, 0.0, 0.0, 0.0])
            })
            .expect("checked at construction")
    }
}

/// Charge and current densities.
#[derive(Clone, Debug, PartialEq)]
pub struct CurrentOcton {
    pub rho: ScalarField,
    pub j: VectorField,
}

impl CurrentOcton {
    pub fn new(rho: ScalarField, j: VectorField) -> Result<Self> {
        same_grid(rho.grid(), j.grid(), "rho", "j")?;
        Ok(CurrentOcton { rho, j })
    }

    pub fn zeros(grid: Grid3) -> Self {
        CurrentOcton {
            rho: ScalarField::zeros(grid),
            j: VectorField::zeros(grid),
        }
    }

    pub fn grid(&self) -> &Grid3 {
        self.rho.grid()
    }

    /// `4πρ + (4π/c)j`.
    pub fn octon(&self, units: &UnitsConfig) -> OctonField {
        let s = 4.0 * PI / units.c;
        self.rho
            .zip_map(&self.j, |r, j| {
                Octon::from_real([
                    4.0 * PI * r,
                    s * j[0],
                    s * j[1],
                    s * j[2],
                    0.0,
                    0.0,
                    0.0,
                    0.0,
                ])
            })
            .expect("checked at construction")
    }
}

/// Electric field (polar) and magnetic field (axial).
#[derive(Clone, Debug, PartialEq)]
pub struct FieldOcton {
    pub e: VectorField,
    pub h: VectorField,
}

impl FieldOcton {
    pub fn new(e: VectorField, h: VectorField) -> Result<Self> {
        same_grid(e.grid(), h.grid(), "E", "H")?;
        Ok(FieldOcton { e, h })
    }

    pub fn zeros(grid: Grid3) -> Self {
        FieldOcton {
            e: VectorField::zeros(grid),
            h: VectorField::zeros(grid),
        }
    }

    pub fn grid(&self) -> &Grid3 {
        self.e.grid()
    }

    /// `−E + ξH`.
    pub fn octon(&self) -> OctonField {
        self.e
            .zip_map(&self.h, |e, h| {
                Octon::polar_real(e.map(|x| -x)) + Octon::axial(h.map(|x| XI * x))
            })
            .expect("checked at construction")
    }

    /// `E + ξH`, the left factor of the power relations.
    pub fn power_octon(&self) -> OctonField {
        self.e
            .zip_map(&self.h, |e, h| {
                Octon::polar_real(e) + Octon::axial(h.map(|x| XI * x))
            })
            .expect("checked at construction")
    }
}

/// A time-dependent potential: value, first and (optionally) second time derivative.
#[derive(Clone, Debug, PartialEq)]
pub struct PotentialSlice {
    pub value: PotentialOcton,
    pub d_dt: PotentialOcton,
    pub d2_dt2: Option<PotentialOcton>,
}

impl PotentialSlice {
    pub fn fixed(value: PotentialOcton) -> Self {
        let grid = *value.grid();
        PotentialSlice {
            value,
            d_dt: PotentialOcton::zeros(grid),
            d2_dt2: Some(PotentialOcton::zeros(grid)),
        }
    }

    fn check(&self) -> Result<()> {
        same_grid(
            self.value.grid(),
            self.d_dt.grid(),
            "potential",
            "∂t potential",
        )?;
        if let Some(d2) = &self.d2_dt2 {
            same_grid(self.value.grid(), d2.grid(), "potential", "∂tt potential")?;
        }
        Ok(())
    }

    pub fn grid(&self) -> &Grid3 {
        self.value.grid()
    }

    pub fn octon_slice(&self) -> TimeSlice<Octon> {
        TimeSlice {
            value: self.value.octon(),
            d_dt: self.d_dt.octon(),
        }
    }
}

/// A time-dependent field: value, first and (optionally) second time derivative.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldSlice {
    pub value: FieldOcton,
    pub d_dt: FieldOcton,
    pub d2_dt2: Option<FieldOcton>,
}

impl FieldSlice {
    pub fn fixed(value: FieldOcton) -> Self {
        let grid = *value.grid();
        FieldSlice {
            value,
            d_dt: FieldOcton::zeros(grid),
            d2_dt2: Some(FieldOcton::zeros(grid)),
        }
    }

    /// Samples an analytic wave, with exact time derivatives.
    pub fn from_wave(wave: &EmWave, grid: Grid3, t: f64) -> Self {
        let (e, h) = wave.sample(grid, t);
        FieldSlice {
            value: FieldOcton {
                e: e.value,
                h: h.value,
            },
            d_dt: FieldOcton {
                e: e.d_dt,
                h: h.d_dt,
            },
            d2_dt2: Some(FieldOcton {
                e: e.d2_dt2,
                h: h.d2_dt2,
            }),
        }
    }

    fn check(&self) -> Result<()> {
        same_grid(self.value.grid(), self.d_dt.grid(), "fields", "∂t fields")?;
        if let Some(d2) = &self.d2_dt2 {
            same_grid(self.value.grid(), d2.grid(), "fields", "∂tt fields")?;
        }
        Ok(())
    }

    pub fn grid(&self) -> &Grid3 {
        self.value.grid()
    }

    pub fn octon_slice(&self) -> TimeSlice<Octon> {
        TimeSlice {
            value: self.value.octon(),
            d_dt: self.d_dt.octon(),
        }
    }
}

/// Charge and current with their time derivatives.
#[derive(Clone, Debug, PartialEq)]
pub struct CurrentSlice {
    pub value: CurrentOcton,
    pub d_dt: CurrentOcton,
}

impl CurrentSlice {
    pub fn fixed(value: CurrentOcton) -> Self {
        let grid = *value.grid();
        CurrentSlice {
            value,
            d_dt: CurrentOcton::zeros(grid),
        }
    }

    pub fn zeros(grid: Grid3) -> Self {
        CurrentSlice::fixed(CurrentOcton::zeros(grid))
    }
}

/// Residual fields of one octon relation, one per grade, each as the LHS − RHS of the
/// corresponding classical equation.
#[derive(Clone, Debug, PartialEq)]
pub struct RelationResiduals {
    pub scalar: ScalarField,
    pub pseudoscalar: ScalarField,
    pub vector: VectorField,
    pub pseudovector: VectorField,
}

/// Norms of the four grades of a [`RelationResiduals`].
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct GradeNorms {
    pub scalar: Norms,
    pub pseudoscalar: Norms,
    pub vector: Norms,
    pub pseudovector: Norms,
}

impl GradeNorms {
    pub fn linf(&self) -> f64 {
        self.scalar
            .linf
            .max(self.pseudoscalar.linf)
            .max(self.vector.linf)
            .max(self.pseudovector.linf)
    }

    pub fn l2(&self) -> f64 {
        (self.scalar.l2.powi(2)
            + self.pseudoscalar.l2.powi(2)
            + self.vector.l2.powi(2)
            + self.pseudovector.l2.powi(2))
        .sqrt()
    }
}

impl RelationResiduals {
    pub fn zeros(grid: Grid3) -> Self {
        RelationResiduals {
            scalar: ScalarField::zeros(grid),
            pseudoscalar: ScalarField::zeros(grid),
            vector: VectorField::zeros(grid),
            pseudovector: VectorField::zeros(grid),
        }
    }

    pub fn grid(&self) -> &Grid3 {
        self.scalar.grid()
    }

    pub fn norms(&self) -> GradeNorms {
        GradeNorms {
            scalar: field_norms(&self.scalar),
            pseudoscalar: field_norms(&self.pseudoscalar),
            vector: field_norms(&self.vector),
            pseudovector: field_norms(&self.pseudovector),
        }
    }

    pub fn norms_interior(&self, band: usize) -> GradeNorms {
        use crate::fieldgrid::field_norms_interior as fi;
        GradeNorms {
            scalar: fi(&self.scalar, band),
            pseudoscalar: fi(&self.pseudoscalar, band),
            vector: fi(&self.vector, band),
            pseudovector: fi(&self.pseudovector, band),
        }
    }

    /// Largest pointwise difference over all grades.
    pub fn max_abs_diff(&self, other: &RelationResiduals) -> Result<f64> {
        Ok(self
            .scalar
            .max_abs_diff(&other.scalar)?
            .max(self.pseudoscalar.max_abs_diff(&other.pseudoscalar)?)
            .max(self.vector.max_abs_diff(&other.vector)?)
            .max(self.pseudovector.max_abs_diff(&other.pseudovector)?))
    }
}

/// Fails with [`Error::PathDisagreement`] when `discrepancy > tolerance·scale`.
pub fn require_agreement(
    relation: &'static str,
    discrepancy: f64,
    scale: f64,
    tolerance: f64,
) -> Result<()> {
    let allowed = tolerance * scale;
    if discrepancy <= allowed {
        Ok(())
    } else {
        Err(Error::PathDisagreement {
            relation,
            discrepancy,
            tolerance: allowed,
        })
    }
}
