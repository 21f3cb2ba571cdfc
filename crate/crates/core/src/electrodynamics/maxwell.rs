use std::f64::consts::PI;

use crate::algebra::Octon;
use crate::fieldgrid::classical::{curl, div, gradient};
use crate::fieldgrid::{
    field_norms, laplacian, nabla_apply, p_apply, p_conj_apply, partial, stencil_scale, Axis,
    Field, OctonField, ScalarField, TimeSlice, VectorField,
};
use crate::tolerance;
use crate::{Error, Result};

use super::{
    require_agreement, CurrentOcton, CurrentSlice, FieldSlice, RelationResiduals, UnitsConfig,
};

/// `((1/c)∂t − ∇)F − J` and its reading as the four classical equations.
#[derive(Clone, Debug)]
pub struct MaxwellResidual {
    /// The full octon residual.
    pub octon: OctonField,
    /// From the octon residual: `div E − 4πρ` (scalar), `div H` (pseudoscalar),
    /// `rot H − (4π/c)j − (1/c)∂E/∂t` (vector), `rot E + (1/c)∂H/∂t` (pseudovector).
    pub residuals: RelationResiduals,
    /// The same four residuals computed with ordinary div and curl.
    pub classical: RelationResiduals,
    pub discrepancy: f64,
    /// Largest imaginary part in the scalar/vector grades or real part in the
    /// pseudoscalar/pseudovector grades; zero for real inputs.
    pub reality_defect: f64,
}

/// Reads the four classical residuals off an octon `M = P⁺F − J`.
pub(crate) fn octon_to_maxwell_grades(m: &OctonField) -> RelationResiduals {
    RelationResiduals {
        scalar: m.map(|o| o.coeffs[0].re),
        vector: m.map(|o| [o.coeffs[1].re, o.coeffs[2].re, o.coeffs[3].re]),
        pseudoscalar: m.map(|o| -o.coeffs[4].im),
        pseudovector: m.map(|o| [o.coeffs[5].im, o.coeffs[6].im, o.coeffs[7].im]),
    }
}

fn reality_defect(m: &OctonField) -> f64 {
    m.data().iter().fold(0.0, |acc: f64, o| {
        let c = &o.coeffs;
        let im = [c[0].im, c[1].im, c[2].im, c[3].im];
        let re = [c[4].re, c[5].re, c[6].re, c[7].re];
        im.iter().chain(&re).fold(acc, |a, x| a.max(x.abs()))
    })
}

pub(crate) fn classical_maxwell(
    f: &FieldSlice,
    cur: &CurrentOcton,
    units: &UnitsConfig,
) -> Result<RelationResiduals> {
    let c = units.c;
    let (e, h) = (&f.value.e, &f.value.h);
    let mut scalar = div(e);
    scalar.axpy(-4.0 * PI, &cur.rho)?;
    let mut vector = curl(h);
    vector.axpy(-4.0 * PI / c, &cur.j)?;
    vector.axpy(-1.0 / c, &f.d_dt.e)?;
    let mut pseudovector = curl(e);
    pseudovector.axpy(1.0 / c, &f.d_dt.h)?;
    Ok(RelationResiduals {
        scalar,
        pseudoscalar: div(h),
        vector,
        pseudovector,
    })
}

pub fn maxwell_residual(
    f: &FieldSlice,
    cur: &CurrentOcton,
    units: &UnitsConfig,
) -> Result<MaxwellResidual> {
    f.check()?;
    if f.grid() != cur.grid() {
        return Err(Error::GridMismatch {
            left: "fields",
            right: "current",
        });
    }
    let slice = f.octon_slice();
    let p = p_conj_apply(&slice, units.c);
    let j = cur.octon(units);
    let octon = p.sub(&j)?;
    let residuals = octon_to_maxwell_grades(&octon);
    let classical = classical_maxwell(f, cur, units)?;
    let discrepancy = residuals.max_abs_diff(&classical)?;
    let scale = stencil_scale(&slice, units.c)
        .max(field_norms(&j).linf)
        .max(1.0);
    require_agreement(
        "maxwell_residual",
        discrepancy,
        scale,
        tolerance::MAXWELL_PATH,
    )?;
    Ok(MaxwellResidual {
        reality_defect: reality_defect(&octon),
        octon,
        residuals,
        classical,
        discrepancy,
    })
}

/// Sign of the Laplacian in the second-order field equations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WaveOperatorSign {
    /// `(1/c²)∂tt − Δ`, the d'Alembertian.
    MinusLaplacian,
    /// `(1/c²)∂tt + Δ`, kept only to show that travelling waves do not satisfy it.
    PlusLaplacian,
}

/// Residuals of the second-order equations implied by the Maxwell system.
#[derive(Clone, Debug)]
pub struct WaveResiduals {
    /// `(1/c²)∂ttE ∓ ΔE + 4π∇ρ + (4π/c²)∂t j`.
    pub wave_e: VectorField,
    /// `(1/c²)∂ttH ∓ ΔH − (4π/c) rot j`.
    pub wave_h: VectorField,
    /// `∂ρ/∂t + div j`.
    pub continuity: ScalarField,
}

fn wave_residuals_with(
    f: &FieldSlice,
    cur: &CurrentSlice,
    units: &UnitsConfig,
    lap_sign: f64,
    lap: impl Fn(&VectorField) -> VectorField,
) -> Result<WaveResiduals> {
    f.check()?;
    let d2 = f
        .d2_dt2
        .as_ref()
        .ok_or(Error::MissingDerivative("field_wave_residuals"))?;
    if f.grid() != cur.value.grid() || f.grid() != cur.d_dt.grid() {
        return Err(Error::GridMismatch {
            left: "fields",
            right: "current",
        });
    }
    let c = units.c;
    let mut wave_e = d2.e.scale(1.0 / (c * c));
    wave_e.axpy(lap_sign, &lap(&f.value.e))?;
    wave_e.axpy(4.0 * PI, &gradient(&cur.value.rho))?;
    wave_e.axpy(4.0 * PI / (c * c), &cur.d_dt.j)?;
    let mut wave_h = d2.h.scale(1.0 / (c * c));
    wave_h.axpy(lap_sign, &lap(&f.value.h))?;
    wave_h.axpy(-4.0 * PI / c, &curl(&cur.value.j))?;
    let mut continuity = cur.d_dt.rho.clone();
    continuity.axpy(1.0, &div(&cur.value.j))?;
    Ok(WaveResiduals {
        wave_e,
        wave_h,
        continuity,
    })
}

/// Second-order field equations with the seven-point Laplacian.
pub fn field_wave_residuals(
    f: &FieldSlice,
    cur: &CurrentSlice,
    units: &UnitsConfig,
    sign: WaveOperatorSign,
) -> Result<WaveResiduals> {
    let s = match sign {
        WaveOperatorSign::MinusLaplacian => -1.0,
        WaveOperatorSign::PlusLaplacian => 1.0,
    };
    wave_residuals_with(f, cur, units, s, laplacian)
}

/// Sum of second differences `∂a∂a` built from two centred first differences, which is
/// what composing `∇` with itself produces on the lattice.
fn wide_laplacian<T: crate::fieldgrid::FieldValue>(f: &Field<T>) -> Field<T> {
    let mut out = Field::zeros(*f.grid());
    for a in Axis::ALL {
        out.axpy(1.0, &partial(&partial(f, a), a))
            .expect("same grid");
    }
    out
}

/// The second-order equations obtained octonically: `((1/c)∂t + ∇)(((1/c)∂t − ∇)F − J)`.
/// Its vector part is `−wave_e`, its pseudovector part `ξ·wave_h`, and its scalar part
/// `−(4π/c)·continuity`; these are read off and checked against the classical expressions
/// built on the same (wide) stencil.
pub fn field_wave_residuals_octonic(
    f: &FieldSlice,
    cur: &CurrentSlice,
    units: &UnitsConfig,
) -> Result<WaveResiduals> {
    f.check()?;
    let d2 = f
        .d2_dt2
        .as_ref()
        .ok_or(Error::MissingDerivative("field_wave_residuals_octonic"))?;
    let c = units.c;
    let slice = f.octon_slice();
    let j = cur.value.octon(units);
    let j_t = cur.d_dt.octon(units);
    let m = p_conj_apply(&slice, c).sub(&j)?;
    // ∂t M = (1/c)F_tt − ∇F_t − J_t
    let mut m_t = d2.octon().scale(1.0 / c);
    m_t.axpy(-1.0, &nabla_apply(&slice.d_dt))?;
    m_t.axpy(-1.0, &j_t)?;
    let w = p_apply(
        &TimeSlice {
            value: m,
            d_dt: m_t,
        },
        c,
    );

    let out = WaveResiduals {
        wave_e: w.map(|o: Octon| [-o.coeffs[1].re, -o.coeffs[2].re, -o.coeffs[3].re]),
        wave_h: w.map(|o: Octon| [o.coeffs[5].im, o.coeffs[6].im, o.coeffs[7].im]),
        continuity: w.map(|o: Octon| -o.coeffs[0].re * c / (4.0 * PI)),
    };
    let reference = wave_residuals_with(f, cur, units, -1.0, wide_laplacian)?;
    let discrepancy = out
        .wave_e
        .max_abs_diff(&reference.wave_e)?
        .max(out.wave_h.max_abs_diff(&reference.wave_h)?)
        .max(out.continuity.max_abs_diff(&reference.continuity)?);
    // the second application sees the first one's inputs through another 1/h or 1/c
    let inv_h = f.grid().inverse_spacing_sum();
    let first = stencil_scale(&slice, c) + field_norms(&j).linf;
    let second = field_norms(&d2.octon()).linf / (c * c) + field_norms(&j_t).linf / c;
    let scale = (first * (inv_h + 1.0 / c) + second).max(1.0);
    require_agreement(
        "field_wave_residuals_octonic",
        discrepancy,
        scale,
        tolerance::RELATION_PATH,
    )?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{EmWave, Medium};
    use crate::electrodynamics::FieldOcton;
    use crate::fieldgrid::{field_norms_interior, Grid3};

    fn probe() -> Grid3 {
        Grid3::new([8, 8, 8], [0.25; 3], [-1.0; 3]).unwrap()
    }

    #[test]
    fn linear_field_with_matching_charge() {
        let g = probe();
        let f = FieldSlice::fixed(
            FieldOcton::new(VectorField::from_fn(g, |p| p), VectorField::zeros(g)).unwrap(),
        );
        let cur = CurrentOcton::new(
            ScalarField::constant(g, 3.0 / (4.0 * PI)),
            VectorField::zeros(g),
        )
        .unwrap();
        let r = maxwell_residual(&f, &cur, &UnitsConfig::default()).unwrap();
        assert!(r.residuals.norms_interior(1).linf() < 1e-12);
        assert_eq!(r.reality_defect, 0.0);
    }

    #[test]
    fn charge_alone() {
        let g = probe();
        let f = FieldSlice::fixed(FieldOcton::zeros(g));
        let rho = ScalarField::from_fn(g, |p| 1.0 + p[0]);
        let cur = CurrentOcton::new(rho.clone(), VectorField::zeros(g)).unwrap();
        let r = maxwell_residual(&f, &cur, &UnitsConfig::default()).unwrap();
        assert_eq!(r.residuals.scalar, rho.scale(-4.0 * PI));
        assert_eq!(field_norms(&r.residuals.vector).linf, 0.0);
        assert_eq!(field_norms(&r.residuals.pseudovector).linf, 0.0);
        assert_eq!(field_norms(&r.residuals.pseudoscalar).linf, 0.0);
    }

    #[test]
    fn grade_parts_recombine_to_octon() {
        let g = Grid3::cube(8, 2.0).unwrap();
        let w = EmWave::generic(2.0, 1.0, Medium::VACUUM);
        let f = FieldSlice::from_wave(&w, g, 0.3);
        let r = maxwell_residual(&f, &CurrentOcton::zeros(g), &UnitsConfig::default()).unwrap();
        let rebuilt = OctonField::from_fn(g, |_| Octon::ZERO);
        let rebuilt = Field::new(
            g,
            (0..g.len())
                .map(|n| {
                    let s = r.residuals.scalar[n];
                    let v = r.residuals.vector[n];
                    let ps = r.residuals.pseudoscalar[n];
                    let pv = r.residuals.pseudovector[n];
                    rebuilt[n]
                        + Octon::from_real([s, v[0], v[1], v[2], 0.0, 0.0, 0.0, 0.0])
                        + Octon::pseudoscalar(crate::algebra::XI * -ps)
                        + Octon::axial(pv.map(|x| crate::algebra::XI * x))
                })
                .collect(),
        )
        .unwrap();
        assert_eq!(rebuilt, r.octon);
    }

    #[test]
    fn static_coulomb_probe_satisfies_wave_equations() {
        let g = probe();
        let rho0 = 0.3;
        let e = VectorField::from_fn(g, |p| p.map(|x| x * rho0 * 4.0 * PI / 3.0));
        let f = FieldSlice::fixed(FieldOcton::new(e, VectorField::zeros(g)).unwrap());
        let cur = CurrentSlice::fixed(
            CurrentOcton::new(ScalarField::constant(g, rho0), VectorField::zeros(g)).unwrap(),
        );
        let w = field_wave_residuals(
            &f,
            &cur,
            &UnitsConfig::default(),
            WaveOperatorSign::MinusLaplacian,
        )
        .unwrap();
        assert!(field_norms_interior(&w.wave_e, 1).linf < 1e-12);
        assert_eq!(field_norms(&w.continuity).linf, 0.0);
    }

    #[test]
    fn constructed_continuity() {
        let g = Grid3::cube(8, 1.0).unwrap();
        // ρ(t) = t·s(x) with s = −div j for j = (sin 2πx, 0, 0)
        let k = 2.0 * PI;
        let j = VectorField::from_fn(g, |p| [(k * p[0]).sin(), 0.0, 0.0]);
        let s = div(&j).scale(-1.0);
        let cur = CurrentSlice {
            value: CurrentOcton::new(s.scale(0.5), j.clone()).unwrap(),
            d_dt: CurrentOcton::new(s, VectorField::zeros(g)).unwrap(),
        };
        let f = FieldSlice::fixed(FieldOcton::zeros(g));
        let w = field_wave_residuals(
            &f,
            &cur,
            &UnitsConfig::default(),
            WaveOperatorSign::MinusLaplacian,
        )
        .unwrap();
        assert!(field_norms(&w.continuity).linf < 1e-12);
    }

    #[test]
    fn octonic_wave_form_matches_classical_on_random_sources() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let g = Grid3::cube(8, 2.0).unwrap();
        let e = crate::analytic::random_vector_wave(&mut rng, [2.0; 3], 3, 2).sample(g, 0.1);
        let h = crate::analytic::random_vector_wave(&mut rng, [2.0; 3], 3, 2).sample(g, 0.1);
        let rho = crate::analytic::random_scalar_wave(&mut rng, [2.0; 3], 3, 2).sample(g, 0.1);
        let jv = crate::analytic::random_vector_wave(&mut rng, [2.0; 3], 3, 2).sample(g, 0.1);
        let f = FieldSlice {
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
        };
        let cur = CurrentSlice {
            value: CurrentOcton::new(rho.value, jv.value).unwrap(),
            d_dt: CurrentOcton::new(rho.d_dt, jv.d_dt).unwrap(),
        };
        field_wave_residuals_octonic(&f, &cur, &UnitsConfig { c: 1.5 }).unwrap();
    }
}
