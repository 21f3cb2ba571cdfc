//! Balance laws from multiplying the field equation on the left by `E + ξH` (energy and
//! momentum) or by `ξH − E` (the two Lorentz invariants).

use std::f64::consts::PI;

use crate::algebra::Octon;
use crate::fieldgrid::classical::{cross3, dot3, jacobian};
use crate::fieldgrid::{
    field_norms, p_conj_apply, stencil_scale, OctonField, ScalarField, VectorField,
};
use crate::tolerance;
use crate::{Error, Result};

use super::{
    require_agreement, CurrentOcton, FieldOcton, FieldSlice, RelationResiduals, UnitsConfig,
};

/// A relation evaluated by both paths.
#[derive(Clone, Debug)]
pub struct RelationCheck {
    /// Names of the scalar, pseudoscalar, vector and pseudovector relations.
    pub names: [&'static str; 4],
    /// Octonic path.
    pub residuals: RelationResiduals,
    /// Classical path.
    pub classical: RelationResiduals,
    pub discrepancy: f64,
    pub scale: f64,
}

pub const POWER_NAMES: [&str; 4] = [
    "energy_balance",
    "pseudoscalar_balance",
    "momentum_balance",
    "pseudovector_balance",
];
pub const INVARIANT_NAMES: [&str; 4] = [
    "first_invariant_rate",
    "second_invariant_rate",
    "first_invariant_gradient",
    "second_invariant_gradient",
];

fn add(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn sc(s: f64, a: [f64; 3]) -> [f64; 3] {
    a.map(|x| s * x)
}

/// Pointwise data the classical formulas need.
struct Site {
    e: [f64; 3],
    h: [f64; 3],
    et: [f64; 3],
    ht: [f64; 3],
    rho: f64,
    j: [f64; 3],
    /// `je[a][b] = ∂_a E_b`
    je: [[f64; 3]; 3],
    jh: [[f64; 3]; 3],
}

impl Site {
    fn rot(jm: &[[f64; 3]; 3]) -> [f64; 3] {
        [
            jm[1][2] - jm[2][1],
            jm[2][0] - jm[0][2],
            jm[0][1] - jm[1][0],
        ]
    }

    fn div(jm: &[[f64; 3]; 3]) -> f64 {
        jm[0][0] + jm[1][1] + jm[2][2]
    }

    /// `(v·∇)w` for `w` with jacobian `jm`.
    fn advect(v: [f64; 3], jm: &[[f64; 3]; 3]) -> [f64; 3] {
        std::array::from_fn(|b| (0..3).map(|a| v[a] * jm[a][b]).sum())
    }

    /// `∇(v·w)` given both jacobians, by the product rule.
    fn grad_dot(v: [f64; 3], jv: &[[f64; 3]; 3], w: [f64; 3], jw: &[[f64; 3]; 3]) -> [f64; 3] {
        std::array::from_fn(|a| (0..3).map(|b| jv[a][b] * w[b] + v[b] * jw[a][b]).sum())
    }

    /// `div(v × w)` by the product rule.
    fn div_cross(v: [f64; 3], jv: &[[f64; 3]; 3], w: [f64; 3], jw: &[[f64; 3]; 3]) -> f64 {
        (0..3)
            .map(|a| add(cross3(jv[a], w), cross3(v, jw[a]))[a])
            .sum()
    }
}

fn for_sites(
    f: &FieldSlice,
    cur: &CurrentOcton,
    mut eval: impl FnMut(&Site) -> (f64, f64, [f64; 3], [f64; 3]),
) -> RelationResiduals {
    let grid = *f.grid();
    let je = jacobian(&f.value.e);
    let jh = jacobian(&f.value.h);
    let mut out = RelationResiduals::zeros(grid);
    for n in 0..grid.len() {
        let site = Site {
            e: f.value.e[n],
            h: f.value.h[n],
            et: f.d_dt.e[n],
            ht: f.d_dt.h[n],
            rho: cur.rho[n],
            j: cur.j[n],
            je: [je[0][n], je[1][n], je[2][n]],
            jh: [jh[0][n], jh[1][n], jh[2][n]],
        };
        let (s, ps, v, pv) = eval(&site);
        out.scalar[n] = s;
        out.pseudoscalar[n] = ps;
        out.vector[n] = v;
        out.pseudovector[n] = pv;
    }
    out
}

/// Classical power relations: energy balance (Poynting theorem), its pseudoscalar
/// companion, momentum balance, and the pseudovector relation, each as LHS − RHS.
fn classical_power(f: &FieldSlice, cur: &CurrentOcton, c: f64) -> RelationResiduals {
    let k = 4.0 * PI;
    for_sites(f, cur, |s| {
        let (rot_e, rot_h) = (Site::rot(&s.je), Site::rot(&s.jh));
        let (div_e, div_h) = (Site::div(&s.je), Site::div(&s.jh));

        // ∂t((E²+H²)/8π) + (c/4π)div(E×H) + j·E
        let energy = (dot3(s.e, s.et) + dot3(s.h, s.ht)) / k
            + c / k * Site::div_cross(s.e, &s.je, s.h, &s.jh)
            + dot3(s.j, s.e);

        // (1/c)E·∂tH − (1/c)H·∂tE + H·rot H + E·rot E − (4π/c)j·H
        let pseudo = (dot3(s.e, s.ht) - dot3(s.h, s.et)) / c + dot3(s.h, rot_h) + dot3(s.e, rot_e)
            - k / c * dot3(s.j, s.h);

        // (1/4πc)∂t(E×H) + ∇((E²+H²)/8π) + ρE + (1/c)j×H
        //   − (1/4π){E div E + (E·∇)E + H div H + (H·∇)H}
        let dt_exh = add(cross3(s.et, s.h), cross3(s.e, s.ht));
        let grad_u = sc(
            0.5 / k,
            add(
                Site::grad_dot(s.e, &s.je, s.e, &s.je),
                Site::grad_dot(s.h, &s.jh, s.h, &s.jh),
            ),
        );
        let stress = add(
            add(sc(div_e, s.e), Site::advect(s.e, &s.je)),
            add(sc(div_h, s.h), Site::advect(s.h, &s.jh)),
        );
        let momentum = sub(
            add(
                add(sc(1.0 / (k * c), dt_exh), grad_u),
                add(sc(s.rho, s.e), sc(1.0 / c, cross3(s.j, s.h))),
            ),
            sc(1.0 / k, stress),
        );

        // E×rot H − H×rot E + H div E − E div H − (1/c)E×∂tE − (1/c)H×∂tH − 4πρH + (4π/c)j×E
        let lhs = add(
            add(
                sub(cross3(s.e, rot_h), cross3(s.h, rot_e)),
                sub(sc(div_e, s.h), sc(div_h, s.e)),
            ),
            sc(-1.0 / c, add(cross3(s.e, s.et), cross3(s.h, s.ht))),
        );
        let rhs = sub(sc(k * s.rho, s.h), sc(k / c, cross3(s.j, s.e)));
        (energy, pseudo, momentum, sub(lhs, rhs))
    })
}

/// Classical invariant relations, each as LHS − RHS: the rate of `(E²−H²)/8π`, the rate
/// of `E·H`, the gradient of `(E²−H²)/8π`, and the gradient of `E·H`.
fn classical_invariants(f: &FieldSlice, cur: &CurrentOcton, c: f64) -> RelationResiduals {
    let k = 4.0 * PI;
    for_sites(f, cur, |s| {
        let (rot_e, rot_h) = (Site::rot(&s.je), Site::rot(&s.jh));
        let (div_e, div_h) = (Site::div(&s.je), Site::div(&s.jh));

        // ∂t((E²−H²)/8π) − (c/4π){E·rot H + H·rot E} + j·E
        let first_rate = (dot3(s.e, s.et) - dot3(s.h, s.ht)) / k
            - c / k * (dot3(s.e, rot_h) + dot3(s.h, rot_e))
            + dot3(s.j, s.e);

        // (1/c)∂t(E·H) + E·rot E − H·rot H + (4π/c)j·H
        let second_rate = (dot3(s.et, s.h) + dot3(s.e, s.ht)) / c + dot3(s.e, rot_e)
            - dot3(s.h, rot_h)
            + k / c * dot3(s.j, s.h);

        // ∇((E²−H²)/8π) + (1/4πc){E×∂tH + H×∂tE} + ρE − (1/c)j×H
        //   − (1/4π){E div E + (E·∇)E − H div H − (H·∇)H}
        let grad_inv = sc(
            0.5 / k,
            sub(
                Site::grad_dot(s.e, &s.je, s.e, &s.je),
                Site::grad_dot(s.h, &s.jh, s.h, &s.jh),
            ),
        );
        let stress = sub(
            add(sc(div_e, s.e), Site::advect(s.e, &s.je)),
            add(sc(div_h, s.h), Site::advect(s.h, &s.jh)),
        );
        let first_gradient = sub(
            add(
                add(
                    grad_inv,
                    sc(1.0 / (k * c), add(cross3(s.e, s.ht), cross3(s.h, s.et))),
                ),
                sub(sc(s.rho, s.e), sc(1.0 / c, cross3(s.j, s.h))),
            ),
            sc(1.0 / k, stress),
        );

        // ∇(E·H) − {H div E + E div H + (E·∇)H + (H·∇)E − 4πρH − (4π/c)j×E
        //           − (1/c)H×∂tH + (1/c)E×∂tE}
        let rhs = add(
            add(
                add(sc(div_e, s.h), sc(div_h, s.e)),
                add(Site::advect(s.e, &s.jh), Site::advect(s.h, &s.je)),
            ),
            add(
                sub(sc(-k * s.rho, s.h), sc(k / c, cross3(s.j, s.e))),
                sub(
                    sc(1.0 / c, cross3(s.e, s.et)),
                    sc(1.0 / c, cross3(s.h, s.ht)),
                ),
            ),
        );
        let second_gradient = sub(Site::grad_dot(s.e, &s.je, s.h, &s.jh), rhs);
        (first_rate, second_rate, first_gradient, second_gradient)
    })
}

/// Multiplies `left · (P⁺F − J)` sitewise and reads the four residuals off the grades
/// with the given real factors: `(scalar·Re, pseudoscalar·Im, vector·Re, pseudovector·Im)`.
fn octonic_path(left: &OctonField, m: &OctonField, factors: [f64; 4]) -> Result<RelationResiduals> {
    let product = left.zip_map(m, |g, r| g * r)?;
    let [fs, fp, fv, fa] = factors;
    Ok(RelationResiduals {
        scalar: product.map(|o: Octon| fs * o.coeffs[0].re),
        pseudoscalar: product.map(|o: Octon| fp * o.coeffs[4].im),
        vector: product.map(|o: Octon| [1, 2, 3].map(|u| fv * o.coeffs[u].re)),
        pseudovector: product.map(|o: Octon| [5, 6, 7].map(|u| fa * o.coeffs[u].im)),
    })
}

fn relation_check(
    relation: &'static str,
    names: [&'static str; 4],
    f: &FieldSlice,
    cur: &CurrentOcton,
    units: &UnitsConfig,
    left: OctonField,
    factors: [f64; 4],
    classical: impl Fn(&FieldSlice, &CurrentOcton, f64) -> RelationResiduals,
) -> Result<RelationCheck> {
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
    let m = p.sub(&j)?;
    let residuals = octonic_path(&left, &m, factors)?;
    let classical = classical(f, cur, units.c);
    let discrepancy = residuals.max_abs_diff(&classical)?;
    let term = stencil_scale(&slice, units.c).max(field_norms(&j).linf);
    let scale = (field_norms(&left).linf * term * (units.c / (4.0 * PI)).max(1.0)).max(1.0);
    require_agreement(relation, discrepancy, scale, tolerance::RELATION_PATH)?;
    Ok(RelationCheck {
        names,
        residuals,
        classical,
        discrepancy,
        scale,
    })
}

/// Grades of `(E + ξH)(P⁺F − J)`, read as the energy balance, its pseudoscalar companion,
/// the momentum balance and the pseudovector relation.
pub fn power_relations(
    f: &FieldSlice,
    cur: &CurrentOcton,
    units: &UnitsConfig,
) -> Result<RelationCheck> {
    let k = 4.0 * PI;
    relation_check(
        "power_relations",
        POWER_NAMES,
        f,
        cur,
        units,
        f.value.power_octon(),
        [-units.c / k, 1.0, -1.0 / k, 1.0],
        classical_power,
    )
}

/// Grades of `(ξH − E)(P⁺F − J)`, read as the rate and gradient balances of the two
/// Lorentz invariants.
pub fn lorentz_invariant_relations(
    f: &FieldSlice,
    cur: &CurrentOcton,
    units: &UnitsConfig,
) -> Result<RelationCheck> {
    let k = 4.0 * PI;
    relation_check(
        "lorentz_invariant_relations",
        INVARIANT_NAMES,
        f,
        cur,
        units,
        f.value.octon(),
        [units.c / k, -1.0, 1.0 / k, -1.0],
        classical_invariants,
    )
}

/// Energy density, energy flux, and the two invariants.
#[derive(Clone, Debug)]
pub struct Invariants {
    /// `(E² + H²)/8π`
    pub u: ScalarField,
    /// `(c/4π) E × H`
    pub s: VectorField,
    /// `(E² − H²)/8π`
    pub inv1: ScalarField,
    /// `E·H`
    pub inv2: ScalarField,
}

pub fn invariant_scalars(f: &FieldOcton, units: &UnitsConfig) -> Invariants {
    let zip =
        |g: fn([f64; 3], [f64; 3]) -> f64| f.e.zip_map(&f.h, g).expect("checked at construction");
    Invariants {
        u: zip(|e, h| (dot3(e, e) + dot3(h, h)) / (8.0 * PI)),
        s: f.e
            .zip_map(&f.h, |e, h| sc(units.c / (4.0 * PI), cross3(e, h)))
            .expect("checked at construction"),
        inv1: zip(|e, h| (dot3(e, e) - dot3(h, h)) / (8.0 * PI)),
        inv2: zip(dot3),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{random_scalar_wave, random_vector_wave, EmWave, Medium};
    use crate::fieldgrid::{field_norms_interior, Grid3};
    use rand::SeedableRng;

    fn random_inputs(seed: u64, g: Grid3) -> (FieldSlice, CurrentOcton) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let l = g.lengths();
        let e = random_vector_wave(&mut rng, l, 3, 2).sample(g, 0.2);
        let h = random_vector_wave(&mut rng, l, 3, 2).sample(g, 0.2);
        let rho = random_scalar_wave(&mut rng, l, 2, 2).sample(g, 0.2);
        let j = random_vector_wave(&mut rng, l, 2, 2).sample(g, 0.2);
        (
            FieldSlice {
                value: FieldOcton {
                    e: e.value,
                    h: h.value,
                },
                d_dt: FieldOcton {
                    e: e.d_dt,
                    h: h.d_dt,
                },
                d2_dt2: None,
            },
            CurrentOcton::new(rho.value, j.value).unwrap(),
        )
    }

    #[test]
    fn paths_agree_on_random_fields() {
        let g = Grid3::cube(8, 2.0).unwrap();
        for seed in 0..4 {
            let (f, cur) = random_inputs(seed, g);
            for c in [1.0, 3.0] {
                let units = UnitsConfig { c };
                let p = power_relations(&f, &cur, &units).unwrap();
                let l = lorentz_invariant_relations(&f, &cur, &units).unwrap();
                assert!(p.discrepancy <= 1e-11 * p.scale, "{}", p.discrepancy);
                assert!(l.discrepancy <= 1e-11 * l.scale, "{}", l.discrepancy);
            }
        }
    }

    #[test]
    fn static_radial_field_has_no_energy_flow() {
        let g = Grid3::new([8, 8, 8], [0.25; 3], [-1.0; 3]).unwrap();
        let f = FieldSlice::fixed(
            FieldOcton::new(VectorField::from_fn(g, |p| p), VectorField::zeros(g)).unwrap(),
        );
        let cur = CurrentOcton::zeros(g);
        let p = power_relations(&f, &cur, &UnitsConfig::default()).unwrap();
        assert!(field_norms_interior(&p.residuals.scalar, 1).linf < 1e-12);
        let l = lorentz_invariant_relations(&f, &cur, &UnitsConfig::default()).unwrap();
        assert!(field_norms_interior(&l.residuals.pseudoscalar, 1).linf < 1e-12);
    }

    #[test]
    fn off_shell_current_drives_energy_residual() {
        let g = Grid3::new([8, 8, 8], [0.25; 3], [-1.0; 3]).unwrap();
        let f = FieldSlice::fixed(
            FieldOcton::new(
                VectorField::from_fn(g, |p| [p[0], 0.0, 0.0]),
                VectorField::zeros(g),
            )
            .unwrap(),
        );
        let cur = CurrentOcton::new(
            ScalarField::zeros(g),
            VectorField::constant(g, [1.0, 0.0, 0.0]),
        )
        .unwrap();
        let p = power_relations(&f, &cur, &UnitsConfig::default()).unwrap();
        let err = p
            .residuals
            .scalar
            .zip_map(&f.value.e, |r, e| r - e[0])
            .unwrap();
        assert!(field_norms_interior(&err, 1).linf < 1e-12);
    }

    #[test]
    fn crossed_uniform_fields_balance_product_gradient() {
        let g = Grid3::cube(6, 1.0).unwrap();
        let f = FieldSlice::fixed(
            FieldOcton::new(
                VectorField::constant(g, [0.7, 0.0, 0.0]),
                VectorField::constant(g, [0.0, 0.0, 1.3]),
            )
            .unwrap(),
        );
        let l = lorentz_invariant_relations(&f, &CurrentOcton::zeros(g), &UnitsConfig::default())
            .unwrap();
        assert_eq!(field_norms(&l.residuals.pseudovector).linf, 0.0);
    }

    #[test]
    fn invariants_of_simple_fields() {
        let g = Grid3::cube(4, 1.0).unwrap();
        let f = FieldOcton::new(
            VectorField::constant(g, [1.0, 0.0, 0.0]),
            VectorField::constant(g, [0.0, 1.0, 0.0]),
        )
        .unwrap();
        let inv = invariant_scalars(&f, &UnitsConfig { c: 2.0 });
        assert!((inv.u[0] - 1.0 / (4.0 * PI)).abs() < 1e-16);
        assert_eq!(inv.s[0], [0.0, 0.0, 2.0 / (4.0 * PI)]);
        assert_eq!((inv.inv1[0], inv.inv2[0]), (0.0, 0.0));
        let par = FieldOcton::new(
            VectorField::constant(g, [2.0, 0.0, 0.0]),
            VectorField::constant(g, [2.0, 0.0, 0.0]),
        )
        .unwrap();
        let inv = invariant_scalars(&par, &UnitsConfig::default());
        assert_eq!((inv.inv1[3], inv.inv2[3]), (0.0, 4.0));
    }

    #[test]
    fn plane_wave_invariants_vanish_pointwise() {
        let g = Grid3::cube(8, 2.0).unwrap();
        let w = EmWave::plane(
            [PI, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, 0.0, 0.5],
            1.0,
            Medium::VACUUM,
        );
        let f = FieldSlice::from_wave(&w, g, 0.3);
        let inv = invariant_scalars(&f.value, &UnitsConfig::default());
        assert!(field_norms(&inv.inv1).linf < 1e-16);
        assert!(field_norms(&inv.inv2).linf < 1e-16);
    }
}
