use serde::{Deserialize, Serialize};

use crate::algebra::{Octon, ProductTable};

use super::{Axis, Field, FieldValue, Grid3, OctonField, TimeSlice};

/// Visits every site with the indices of its `-1` and `+1` neighbours along `axis`.
#[inline]
fn for_each_pair(grid: &Grid3, axis: Axis, mut f: impl FnMut(usize, usize, usize)) {
    let [nx, ny, nz] = grid.n;
    let a = axis.index();
    let stride = grid.stride(axis);
    let m = grid.n[a];
    let mut idx = 0;
    for ix in 0..nx {
        for iy in 0..ny {
            for iz in 0..nz {
                let c = [ix, iy, iz][a];
                let minus = if c == 0 {
                    idx + (m - 1) * stride
                } else {
                    idx - stride
                };
                let plus = if c + 1 == m {
                    idx - (m - 1) * stride
                } else {
                    idx + stride
                };
                f(idx, minus, plus);
                idx += 1;
            }
        }
    }
}

/// Centred difference `(f[i+1] − f[i−1]) / 2h` along `axis`, periodic.
pub fn partial<T: FieldValue>(field: &Field<T>, axis: Axis) -> Field<T> {
    let grid = *field.grid();
    let inv = 0.5 / grid.h[axis.index()];
    let src = field.data();
    let mut out = vec![T::default(); grid.len()];
    for_each_pair(&grid, axis, |idx, minus, plus| {
        out[idx] = src[plus].sub(src[minus]).scale(inv);
    });
    Field::new(grid, out).expect("same grid")
}

/// Left octonic multiplication by the discrete `∇ = i∂x + j∂y + k∂z`.
pub fn nabla_apply(field: &OctonField) -> OctonField {
    let grid = *field.grid();
    let table = ProductTable::standard();
    let src = field.data();
    let mut out = vec![Octon::ZERO; grid.len()];
    for axis in Axis::ALL {
        let inv = 0.5 / grid.h[axis.index()];
        let unit = axis.unit();
        for_each_pair(&grid, axis, |idx, minus, plus| {
            let d = (src[plus] - src[minus]).scale_real(inv);
            out[idx] += table.left_mul_unit(unit, &d);
        });
    }
    Field::new(grid, out).expect("same grid")
}

fn time_term_plus_nabla(slice: &TimeSlice<Octon>, c: f64, sign: f64) -> OctonField {
    assert!(c > 0.0, "speed of light must be positive");
    let mut out = slice.d_dt.scale(1.0 / c);
    out.axpy(sign, &nabla_apply(&slice.value))
        .expect("time slice shares its grid");
    out
}

/// `(1/c)∂t + ∇`, acting from the left.
pub fn p_apply(slice: &TimeSlice<Octon>, c: f64) -> OctonField {
    time_term_plus_nabla(slice, c, 1.0)
}

/// `(1/c)∂t − ∇`, acting from the left.
pub fn p_conj_apply(slice: &TimeSlice<Octon>, c: f64) -> OctonField {
    time_term_plus_nabla(slice, c, -1.0)
}

/// Size of the terms that enter `(1/c)∂t ± ∇` on `slice`. Rounding in a centred difference
/// grows with `|F|/h`, not with the result, which may cancel to nothing.
pub fn stencil_scale(slice: &TimeSlice<Octon>, c: f64) -> f64 {
    field_norms(&slice.d_dt).linf / c
        + field_norms(&slice.value).linf * slice.value.grid().inverse_spacing_sum()
}

/// Seven-point Laplacian.
pub fn laplacian<T: FieldValue>(field: &Field<T>) -> Field<T> {
    let grid = *field.grid();
    let src = field.data();
    let mut out = vec![T::default(); grid.len()];
    for axis in Axis::ALL {
        let h = grid.h[axis.index()];
        let inv = 1.0 / (h * h);
        for_each_pair(&grid, axis, |idx, minus, plus| {
            let second = src[plus].sub(src[idx]).sub(src[idx].sub(src[minus]));
            out[idx] = out[idx].add(second.scale(inv));
        });
    }
    Field::new(grid, out).expect("same grid")
}

/// The discrete commutator part of `∇∇`: `Σ_{a<b} e_a e_b (∂a∂b − ∂b∂a)`. It vanishes in
/// the continuum for twice-differentiable fields; on the lattice it is pure roundoff.
pub fn mixed_commutator_apply(field: &OctonField) -> OctonField {
    let grid = *field.grid();
    let mut out = Field::zeros(grid);
    let firsts = Axis::ALL.map(|a| partial(field, a));
    for (a, b) in [(Axis::X, Axis::Y), (Axis::Y, Axis::Z), (Axis::X, Axis::Z)] {
        let ab = partial(&firsts[b.index()], a);
        let ba = partial(&firsts[a.index()], b);
        let diff = ab.sub(&ba).expect("same grid");
        let (phase, unit) = ProductTable::standard().entry(a.unit(), b.unit());
        let lifted = diff.map(|d| Octon::scale(&d.left_mul_unit(unit), phase.to_complex()));
        out.axpy(1.0, &lifted).expect("same grid");
    }
    out
}

/// Max norm and grid-weighted L2 norm `(Σ|·|²·hx·hy·hz)^½`.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Norms {
    pub linf: f64,
    pub l2: f64,
}

impl Norms {
    pub fn max(self, other: Norms) -> Norms {
        Norms {
            linf: self.linf.max(other.linf),
            l2: self.l2.max(other.l2),
        }
    }
}

fn norms_over<T: FieldValue>(field: &Field<T>, keep: impl Fn(usize) -> bool) -> Norms {
    let mut linf: f64 = 0.0;
    let mut sum = 0.0;
    for (idx, v) in field.data().iter().enumerate() {
        if keep(idx) {
            linf = linf.max(v.max_abs());
            sum += v.norm_sqr();
        }
    }
    Norms {
        linf,
        l2: (sum * field.grid().cell_volume()).sqrt(),
    }
}

pub fn field_norms<T: FieldValue>(field: &Field<T>) -> Norms {
    norms_over(field, |_| true)
}

/// Norms restricted to sites at least `band` points from every face; used with analytic
/// probes that are not periodic, where stencils of reach `band` would wrap.
pub fn field_norms_interior<T: FieldValue>(field: &Field<T>, band: usize) -> Norms {
    let grid = *field.grid();
    norms_over(field, |idx| grid.is_interior(idx, band))
}
