//! Four-field electrodynamics in a medium.
//!
//! With `E`, `D` polar and `H`, `B` axial, three octons are formed:
//!
//! - `F_EB = −E + ξB`,
//! - `F_DH = −D + ξH`,
//! - `F₀ = ξH − ξE − B − D = ξF_EB + F_DH`.
//!
//! Conjugation separates the two pairs of Maxwell equations: the imaginary part of
//! `((1/c)∂t − ∇)F_EB` holds `div B` and Faraday's law, the real part of
//! `((1/c)∂t − ∇)F_DH` holds Gauss's and Ampère's laws, and the real part of
//! `((1/c)∂t − ∇)F₀` holds all four at once.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::algebra::{Octon, Phase, XI};
use crate::analytic::{EmWave, Medium};
use crate::electrodynamics::{require_agreement, CurrentOcton, RelationResiduals, UnitsConfig};
use crate::fieldgrid::classical::{curl, div};
use crate::fieldgrid::{
    field_norms, p_conj_apply, stencil_scale, Grid3, OctonField, ScalarField, TimeSlice,
    VectorField,
};
use crate::tolerance;
use crate::{Error, Result};

/// A homogeneous isotropic medium: `D = εE`, `B = μH`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstitutiveModel {
    pub epsilon: f64,
    pub mu: f64,
}

impl ConstitutiveModel {
    pub const VACUUM: ConstitutiveModel = ConstitutiveModel {
        epsilon: 1.0,
        mu: 1.0,
    };

    pub fn new(epsilon: f64, mu: f64) -> Result<Self> {
        let m = ConstitutiveModel { epsilon, mu };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::Config(format!(
                "epsilon must be positive, got {}",
                self.epsilon
            )));
        }
        if !(self.mu > 0.0 && self.mu.is_finite()) {
            return Err(Error::Config(format!(
                "mu must be positive, got {}",
                self.mu
            )));
        }
        Ok(())
    }

    pub fn medium(&self) -> Medium {
        Medium {
            eps: self.epsilon,
            mu: self.mu,
        }
    }

    /// Closes `(E, H)` into the four fields.
    pub fn close(&self, e: VectorField, h: VectorField) -> Result<MatterFields> {
        let d = e.scale(self.epsilon);
        let b = h.scale(self.mu);
        MatterFields::new(e, d, h, b)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MatterFields {
    pub e: VectorField,
    pub d: VectorField,
    pub h: VectorField,
    pub b: VectorField,
}

impl MatterFields {
    pub fn new(e: VectorField, d: VectorField, h: VectorField, b: VectorField) -> Result<Self> {
        for (other, name) in [(&d, "D"), (&h, "H"), (&b, "B")] {
            if e.grid() != other.grid() {
                return Err(Error::GridMismatch {
                    left: "E",
                    right: name,
                });
            }
        }
        Ok(MatterFields { e, d, h, b })
    }

    pub fn zeros(grid: Grid3) -> Self {
        let z = VectorField::zeros(grid);
        MatterFields {
            e: z.clone(),
            d: z.clone(),
            h: z.clone(),
            b: z,
        }
    }

    pub fn grid(&self) -> &Grid3 {
        self.e.grid()
    }

    fn pair(polar: &VectorField, axial: &VectorField) -> OctonField {
        polar
            .zip_map(axial, |p, a| {
                Octon::polar_real(p.map(|x| -x)) + Octon::axial(a.map(|x| XI * x))
            })
            .expect("checked at construction")
    }

    /// `−E + ξB`
    pub fn f_eb(&self) -> OctonField {
        Self::pair(&self.e, &self.b)
    }

    /// `−D + ξH`
    pub fn f_dh(&self) -> OctonField {
        Self::pair(&self.d, &self.h)
    }

    /// `ξH − ξE − B − D`, built directly from the four fields.
    pub fn f0(&self) -> OctonField {
        let grid = *self.grid();
        let data = (0..grid.len())
            .map(|n| {
                let (e, d, h, b) = (self.e[n], self.d[n], self.h[n], self.b[n]);
                let polar: [_; 3] = std::array::from_fn(|a| crate::Complex::new(-d[a], -e[a]));
                let axial: [_; 3] = std::array::from_fn(|a| crate::Complex::new(-b[a], h[a]));
                Octon::polar(polar) + Octon::axial(axial)
            })
            .collect();
        OctonField::new(grid, data).expect("sized to grid")
    }
}

/// The three matter octons.
#[derive(Clone, Debug)]
pub struct MatterOctons {
    pub f_eb: OctonField,
    pub f_dh: OctonField,
    pub f0: OctonField,
}

/// Builds `F_EB`, `F_DH` and `F₀`, checking `F₀ = ξF_EB + F_DH` coefficient by coefficient.
pub fn build_octons(m: &MatterFields) -> Result<MatterOctons> {
    let f_eb = m.f_eb();
    let f_dh = m.f_dh();
    let f0 = m.f0();
    let union = f_eb.zip_map(&f_dh, |a, b| {
        Octon::new(a.coeffs.map(|z| Phase::XI.apply(z))) + b
    })?;
    let discrepancy = f0.max_abs_diff(&union)?;
    require_agreement("build_octons", discrepancy, 1.0, 0.0)?;
    Ok(MatterOctons { f_eb, f_dh, f0 })
}

/// Four fields and their time derivatives.
#[derive(Clone, Debug, PartialEq)]
pub struct MatterSlice {
    pub value: MatterFields,
    pub d_dt: MatterFields,
}

impl MatterSlice {
    pub fn fixed(value: MatterFields) -> Self {
        let grid = *value.grid();
        MatterSlice {
            value,
            d_dt: MatterFields::zeros(grid),
        }
    }

    /// Samples a plane-wave superposition in the medium and closes it.
    pub fn from_wave(
        wave: &EmWave,
        grid: Grid3,
        t: f64,
        model: &ConstitutiveModel,
    ) -> Result<Self> {
        let (e, h) = wave.sample(grid, t);
        Ok(MatterSlice {
            value: model.close(e.value, h.value)?,
            d_dt: model.close(e.d_dt, h.d_dt)?,
        })
    }

    pub fn grid(&self) -> &Grid3 {
        self.value.grid()
    }

    fn check(&self) -> Result<()> {
        if self.value.grid() != self.d_dt.grid() {
            return Err(Error::GridMismatch {
                left: "matter fields",
                right: "∂t matter fields",
            });
        }
        Ok(())
    }

    fn slice(&self, build: fn(&MatterFields) -> OctonField) -> TimeSlice<Octon> {
        TimeSlice {
            value: build(&self.value),
            d_dt: build(&self.d_dt),
        }
    }
}

/// `div B` and `rot E + (1/c)∂B/∂t`, extracted as `P⁺F_EB − (P⁺F_EB)*`.
#[derive(Clone, Debug)]
pub struct FirstPair {
    pub div_b: ScalarField,
    pub faraday: VectorField,
    /// The octon `P⁺F_EB − (P⁺F_EB)*`.
    pub octon: OctonField,
    pub discrepancy: f64,
}

pub fn first_pair_residual(m: &MatterSlice, units: &UnitsConfig) -> Result<FirstPair> {
    m.check()?;
    let slice = m.slice(MatterFields::f_eb);
    let p = p_conj_apply(&slice, units.c);
    let octon = p.sub(&p.map(|o| o.conj()))?;
    // pseudoscalar −2ξ div B, pseudovector 2ξ(rot E + (1/c)∂B/∂t)
    let div_b = octon.map(|o| -0.5 * o.coeffs[4].im);
    let faraday = octon.map(|o| [5, 6, 7].map(|u| 0.5 * o.coeffs[u].im));

    let mut classical_faraday = curl(&m.value.e);
    classical_faraday.axpy(1.0 / units.c, &m.d_dt.b)?;
    let discrepancy = div_b
        .max_abs_diff(&div(&m.value.b))?
        .max(faraday.max_abs_diff(&classical_faraday)?);
    let scale = stencil_scale(&slice, units.c).max(1.0);
    require_agreement(
        "first_pair_residual",
        discrepancy,
        scale,
        tolerance::MAXWELL_PATH,
    )?;
    Ok(FirstPair {
        div_b,
        faraday,
        octon,
        discrepancy,
    })
}

/// `div D − 4πρ` and `rot H − (4π/c)j − (1/c)∂D/∂t`, extracted as
/// `P⁺F_DH + (P⁺F_DH)* − 2J`.
#[derive(Clone, Debug)]
pub struct SecondPair {
    pub gauss: ScalarField,
    pub ampere: VectorField,
    /// The octon `P⁺F_DH + (P⁺F_DH)* − 2J`.
    pub octon: OctonField,
    pub discrepancy: f64,
}

pub fn second_pair_residual(
    m: &MatterSlice,
    cur: &CurrentOcton,
    units: &UnitsConfig,
) -> Result<SecondPair> {
    m.check()?;
    if m.grid() != cur.grid() {
        return Err(Error::GridMismatch {
            left: "matter fields",
            right: "current",
        });
    }
    let slice = m.slice(MatterFields::f_dh);
    let p = p_conj_apply(&slice, units.c);
    let j = cur.octon(units);
    let octon = p.add(&p.map(|o| o.conj()))?.sub(&j.scale(2.0))?;
    let gauss = octon.map(|o| 0.5 * o.coeffs[0].re);
    let ampere = octon.map(|o| [1, 2, 3].map(|u| 0.5 * o.coeffs[u].re));

    let mut classical_gauss = div(&m.value.d);
    classical_gauss.axpy(-4.0 * PI, &cur.rho)?;
    let mut classical_ampere = curl(&m.value.h);
    classical_ampere.axpy(-4.0 * PI / units.c, &cur.j)?;
    classical_ampere.axpy(-1.0 / units.c, &m.d_dt.d)?;
    let discrepancy = gauss
        .max_abs_diff(&classical_gauss)?
        .max(ampere.max_abs_diff(&classical_ampere)?);
    let scale = stencil_scale(&slice, units.c)
        .max(field_norms(&j).linf)
        .max(1.0);
    require_agreement(
        "second_pair_residual",
        discrepancy,
        scale,
        tolerance::MAXWELL_PATH,
    )?;
    Ok(SecondPair {
        gauss,
        ampere,
        octon,
        discrepancy,
    })
}

/// All four equations from `Re{P⁺F₀} − J`, checked against the two pairs.
#[derive(Clone, Debug)]
pub struct CombinedResidual {
    /// The octon `Re{P⁺F₀} − J`: Gauss (scalar), Ampère (vector), `div B` (pseudoscalar)
    /// and minus Faraday (pseudovector).
    pub octon: OctonField,
    /// Scalar Gauss, pseudoscalar `div B`, vector Ampère, pseudovector Faraday.
    pub residuals: RelationResiduals,
    /// Largest difference from the union of [`first_pair_residual`] and
    /// [`second_pair_residual`].
    pub union_discrepancy: f64,
}

pub fn combined_residual(
    m: &MatterSlice,
    cur: &CurrentOcton,
    units: &UnitsConfig,
) -> Result<CombinedResidual> {
    let first = first_pair_residual(m, units)?;
    let second = second_pair_residual(m, cur, units)?;
    let slice = m.slice(MatterFields::f0);
    let p = p_conj_apply(&slice, units.c);
    let octon = p.map(|o| o.re()).sub(&cur.octon(units))?;
    let residuals = RelationResiduals {
        scalar: octon.map(|o| o.coeffs[0].re),
        pseudoscalar: octon.map(|o| o.coeffs[4].re),
        vector: octon.map(|o| [1, 2, 3].map(|u| o.coeffs[u].re)),
        pseudovector: octon.map(|o| [5, 6, 7].map(|u| -o.coeffs[u].re)),
    };
    let union = RelationResiduals {
        scalar: second.gauss,
        pseudoscalar: first.div_b,
        vector: second.ampere,
        pseudovector: first.faraday,
    };
    let union_discrepancy = residuals.max_abs_diff(&union)?;
    let scale = stencil_scale(&slice, units.c)
        .max(field_norms(&cur.octon(units)).linf)
        .max(1.0);
    require_agreement(
        "combined_residual",
        union_discrepancy,
        scale,
        tolerance::MAXWELL_PATH,
    )?;
    Ok(CombinedResidual {
        octon,
        residuals,
        union_discrepancy,
    })
}

/// `(P⁺F)* − P⁺(F*)`. Conjugation flips the sign of `ξ` in the product table, so it
/// does not commute with `∇` on fields that carry a curl or an axial divergence.
pub fn conjugation_commutator(f: &TimeSlice<Octon>, units: &UnitsConfig) -> OctonField {
    let lhs = p_conj_apply(f, units.c).map(|o| o.conj());
    let conj_slice = TimeSlice {
        value: f.value.map(|o| o.conj()),
        d_dt: f.d_dt.map(|o| o.conj()),
    };
    lhs.sub(&p_conj_apply(&conj_slice, units.c))
        .expect("same grid")
}
