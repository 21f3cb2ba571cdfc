//! Closed-form fields with exact time derivatives: superpositions of travelling harmonics
//! and Gaussian pulses, sampled onto grids.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::fieldgrid::classical::{cross3, dot3};
use crate::fieldgrid::{Field, Grid3, ScalarField, TimeSlice2, VectorField};

/// `a·cos θ + b·sin θ` with `θ = k·x − ωt`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalarMode {
    pub k: [f64; 3],
    pub omega: f64,
    pub a: f64,
    pub b: f64,
}

/// `a·cos θ + b·sin θ` with `θ = k·x − ωt`, componentwise for vector amplitudes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VectorMode {
    pub k: [f64; 3],
    pub omega: f64,
    pub a: [f64; 3],
    pub b: [f64; 3],
}

/// Value and first two time derivatives at a point.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Jet<T> {
    pub value: T,
    pub d_dt: T,
    pub d2_dt2: T,
}

impl ScalarMode {
    pub fn jet(&self, x: [f64; 3], t: f64) -> Jet<f64> {
        let theta = dot3(self.k, x) - self.omega * t;
        let (s, c) = theta.sin_cos();
        let w = self.omega;
        let value = self.a * c + self.b * s;
        Jet {
            value,
            d_dt: w * (self.a * s - self.b * c),
            d2_dt2: -w * w * value,
        }
    }

    /// Exact gradient, for oracle checks.
    pub fn gradient(&self, x: [f64; 3], t: f64) -> [f64; 3] {
        let theta = dot3(self.k, x) - self.omega * t;
        let (s, c) = theta.sin_cos();
        let g = -self.a * s + self.b * c;
        self.k.map(|k| k * g)
    }
}

impl VectorMode {
    pub fn jet(&self, x: [f64; 3], t: f64) -> Jet<[f64; 3]> {
        let theta = dot3(self.k, x) - self.omega * t;
        let (s, c) = theta.sin_cos();
        let w = self.omega;
        let value: [f64; 3] = std::array::from_fn(|n| self.a[n] * c + self.b[n] * s);
        Jet {
            value,
            d_dt: std::array::from_fn(|n| w * (self.a[n] * s - self.b[n] * c)),
            d2_dt2: value.map(|v| -w * w * v),
        }
    }

    /// Exact `∂_a v_b` at a point.
    pub fn jacobian(&self, x: [f64; 3], t: f64) -> [[f64; 3]; 3] {
        let theta = dot3(self.k, x) - self.omega * t;
        let (s, c) = theta.sin_cos();
        std::array::from_fn(|a| {
            std::array::from_fn(|b| self.k[a] * (-self.a[b] * s + self.b[b] * c))
        })
    }

    /// Exact curl at a point.
    pub fn curl(&self, x: [f64; 3], t: f64) -> [f64; 3] {
        let j = self.jacobian(x, t);
        [j[1][2] - j[2][1], j[2][0] - j[0][2], j[0][1] - j[1][0]]
    }

    /// Exact divergence at a point.
    pub fn div(&self, x: [f64; 3], t: f64) -> f64 {
        let j = self.jacobian(x, t);
        j[0][0] + j[1][1] + j[2][2]
    }
}

fn sample<T: crate::fieldgrid::FieldValue>(
    grid: Grid3,
    t: f64,
    jet: impl Fn([f64; 3], f64) -> Jet<T>,
) -> TimeSlice2<T> {
    let jets: Vec<Jet<T>> = (0..grid.len())
        .map(|idx| jet(grid.position(idx), t))
        .collect();
    let pick = |f: fn(&Jet<T>) -> T| {
        Field::new(grid, jets.iter().map(f).collect()).expect("sized to grid")
    };
    TimeSlice2 {
        value: pick(|j| j.value),
        d_dt: pick(|j| j.d_dt),
        d2_dt2: pick(|j| j.d2_dt2),
    }
}

/// Sum of scalar modes.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct ScalarWave {
    pub modes: Vec<ScalarMode>,
}

impl ScalarWave {
    pub fn jet(&self, x: [f64; 3], t: f64) -> Jet<f64> {
        self.modes.iter().fold(Jet::default(), |acc, m| {
            let j = m.jet(x, t);
            Jet {
                value: acc.value + j.value,
                d_dt: acc.d_dt + j.d_dt,
                d2_dt2: acc.d2_dt2 + j.d2_dt2,
            }
        })
    }

    pub fn sample(&self, grid: Grid3, t: f64) -> TimeSlice2<f64> {
        sample(grid, t, |x, t| self.jet(x, t))
    }

    pub fn gradient(&self, x: [f64; 3], t: f64) -> [f64; 3] {
        self.modes.iter().fold([0.0; 3], |acc, m| {
            let g = m.gradient(x, t);
            [acc[0] + g[0], acc[1] + g[1], acc[2] + g[2]]
        })
    }

    /// Exact Laplacian, `−|k|²` times each mode.
    pub fn laplacian(&self, x: [f64; 3], t: f64) -> f64 {
        self.modes
            .iter()
            .map(|m| -dot3(m.k, m.k) * m.jet(x, t).value)
            .sum()
    }
}

/// Sum of vector modes.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct VectorWave {
    pub modes: Vec<VectorMode>,
}

impl VectorWave {
    pub fn jet(&self, x: [f64; 3], t: f64) -> Jet<[f64; 3]> {
        let add = |p: [f64; 3], q: [f64; 3]| [p[0] + q[0], p[1] + q[1], p[2] + q[2]];
        self.modes.iter().fold(Jet::default(), |acc, m| {
            let j = m.jet(x, t);
            Jet {
                value: add(acc.value, j.value),
                d_dt: add(acc.d_dt, j.d_dt),
                d2_dt2: add(acc.d2_dt2, j.d2_dt2),
            }
        })
    }

    pub fn value(&self, x: [f64; 3], t: f64) -> [f64; 3] {
        self.jet(x, t).value
    }

    pub fn sample(&self, grid: Grid3, t: f64) -> TimeSlice2<[f64; 3]> {
        sample(grid, t, |x, t| self.jet(x, t))
    }

    pub fn curl(&self, x: [f64; 3], t: f64) -> [f64; 3] {
        self.modes.iter().fold([0.0; 3], |acc, m| {
            let c = m.curl(x, t);
            [acc[0] + c[0], acc[1] + c[1], acc[2] + c[2]]
        })
    }

    pub fn div(&self, x: [f64; 3], t: f64) -> f64 {
        self.modes.iter().map(|m| m.div(x, t)).sum()
    }

    /// Exact Laplacian, `−|k|²` times each mode.
    pub fn laplacian(&self, x: [f64; 3], t: f64) -> [f64; 3] {
        self.modes.iter().fold([0.0; 3], |acc, m| {
            let v = m.jet(x, t).value;
            let s = -dot3(m.k, m.k);
            [acc[0] + s * v[0], acc[1] + s * v[1], acc[2] + s * v[2]]
        })
    }
}

/// A linear, isotropic, lossless medium; `(1, 1)` is vacuum.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Medium {
    pub eps: f64,
    pub mu: f64,
}

impl Medium {
    pub const VACUUM: Medium = Medium { eps: 1.0, mu: 1.0 };

    /// Phase speed `c/√(εμ)`.
    pub fn wave_speed(&self, c: f64) -> f64 {
        c / (self.eps * self.mu).sqrt()
    }

    /// Ratio `|H|/|E|` of a travelling wave, `√(ε/μ)`.
    pub fn admittance(&self) -> f64 {
        (self.eps / self.mu).sqrt()
    }
}

impl Default for Medium {
    fn default() -> Self {
        Medium::VACUUM
    }
}

/// A source-free electromagnetic wave: the `E` and `H` parts of a superposition of
/// transverse plane waves in a medium.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct EmWave {
    pub e: VectorWave,
    pub h: VectorWave,
}

impl EmWave {
    /// One plane wave `E = a cos θ + b sin θ` with `θ = k·x − ωt`, `ω = c|k|/√(εμ)` and
    /// `H = √(ε/μ) k̂ × E`. The polarisation vectors are projected transverse to `k`.
    pub fn plane(k: [f64; 3], a: [f64; 3], b: [f64; 3], c: f64, medium: Medium) -> EmWave {
        let mut w = EmWave::default();
        w.push_plane(k, a, b, c, medium);
        w
    }

    pub fn push_plane(&mut self, k: [f64; 3], a: [f64; 3], b: [f64; 3], c: f64, medium: Medium) {
        let kn = dot3(k, k).sqrt();
        assert!(kn > 0.0, "plane wave needs a nonzero wave vector");
        let khat = k.map(|x| x / kn);
        let transverse = |v: [f64; 3]| {
            let p = dot3(v, khat);
            [v[0] - p * khat[0], v[1] - p * khat[1], v[2] - p * khat[2]]
        };
        let (a, b) = (transverse(a), transverse(b));
        let omega = medium.wave_speed(c) * kn;
        let y = medium.admittance();
        self.e.modes.push(VectorMode { k, omega, a, b });
        self.h.modes.push(VectorMode {
            k,
            omega,
            a: cross3(khat, a).map(|x| y * x),
            b: cross3(khat, b).map(|x| y * x),
        });
    }

    pub fn sample(&self, grid: Grid3, t: f64) -> (TimeSlice2<[f64; 3]>, TimeSlice2<[f64; 3]>) {
        (self.e.sample(grid, t), self.h.sample(grid, t))
    }

    /// A fixed superposition of three plane waves fitting a periodic box of side `length`:
    /// mixed directions and a circular polarisation, so that no field component or
    /// residual vanishes identically.
    pub fn generic(length: f64, c: f64, medium: Medium) -> EmWave {
        let q = 2.0 * std::f64::consts::PI / length;
        let mut w = EmWave::default();
        w.push_plane(
            [q, 2.0 * q, 0.0],
            [0.0, 0.0, 1.0],
            [0.6, -0.3, 0.0],
            c,
            medium,
        );
        w.push_plane([0.0, q, q], [0.8, 0.0, 0.0], [0.0, 0.5, -0.5], c, medium);
        w.push_plane([-q, 0.0, q], [0.0, 0.7, 0.0], [0.3, 0.0, 0.3], c, medium);
        w
    }
}

/// Random trigonometric vector field on a periodic box of side lengths `lengths`:
/// `count` modes with integer wave numbers up to `max_wavenumber` and unrelated frequencies.
/// It solves no particular equation; it is a smooth test input.
pub fn random_vector_wave<R: Rng>(
    rng: &mut R,
    lengths: [f64; 3],
    count: usize,
    max_wavenumber: i32,
) -> VectorWave {
    let modes = (0..count)
        .map(|_| {
            let k = std::array::from_fn(|a| {
                let m = rng.gen_range(-max_wavenumber..=max_wavenumber) as f64;
                2.0 * std::f64::consts::PI * m / lengths[a]
            });
            VectorMode {
                k,
                omega: rng.gen_range(-2.0..2.0),
                a: std::array::from_fn(|_| rng.gen_range(-1.0..1.0)),
                b: std::array::from_fn(|_| rng.gen_range(-1.0..1.0)),
            }
        })
        .collect();
    VectorWave { modes }
}

pub fn random_scalar_wave<R: Rng>(
    rng: &mut R,
    lengths: [f64; 3],
    count: usize,
    max_wavenumber: i32,
) -> ScalarWave {
    let modes = (0..count)
        .map(|_| {
            let k = std::array::from_fn(|a| {
                let m = rng.gen_range(-max_wavenumber..=max_wavenumber) as f64;
                2.0 * std::f64::consts::PI * m / lengths[a]
            });
            ScalarMode {
                k,
                omega: rng.gen_range(-2.0..2.0),
                a: rng.gen_range(-1.0..1.0),
                b: rng.gen_range(-1.0..1.0),
            }
        })
        .collect();
    ScalarWave { modes }
}

/// A Gaussian pulse `E = amplitude·g(s − vt)·ê`, `H = √(ε/μ) d̂ × E`, travelling along the
/// unit direction `d̂` through a periodic box, where `s = d̂·x` and `ê ⟂ d̂`. Periodicity is
/// honoured by summing images along `d̂`, which must be a coordinate axis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaussianPulse {
    pub axis: usize,
    pub polarization: usize,
    pub center: f64,
    pub width: f64,
    pub amplitude: f64,
}

impl GaussianPulse {
    const IMAGES: i32 = 3;

    fn profile(&self, s: f64, period: f64) -> Jet<f64> {
        let mut out = Jet::default();
        for n in -Self::IMAGES..=Self::IMAGES {
            let u = (s - self.center + n as f64 * period) / self.width;
            let g = self.amplitude * (-0.5 * u * u).exp();
            out.value += g;
            // derivatives with respect to s
            out.d_dt += -u / self.width * g;
            out.d2_dt2 += (u * u - 1.0) / (self.width * self.width) * g;
        }
        out
    }

    pub fn fields(
        &self,
        grid: Grid3,
        t: f64,
        c: f64,
        medium: Medium,
    ) -> (TimeSlice2<[f64; 3]>, TimeSlice2<[f64; 3]>) {
        assert_ne!(self.axis, self.polarization, "pulse must be transverse");
        let period = grid.lengths()[self.axis];
        let v = medium.wave_speed(c);
        let y = medium.admittance();
        let mut d = [0.0; 3];
        d[self.axis] = 1.0;
        let mut e_hat = [0.0; 3];
        e_hat[self.polarization] = 1.0;
        let h_hat = cross3(d, e_hat).map(|x| x * y);
        let e = sample(grid, t, |x, t| {
            let p = self.profile(x[self.axis] - v * t, period);
            Jet {
                value: e_hat.map(|u| u * p.value),
                d_dt: e_hat.map(|u| -v * u * p.d_dt),
                d2_dt2: e_hat.map(|u| v * v * u * p.d2_dt2),
            }
        });
        let h = sample(grid, t, |x, t| {
            let p = self.profile(x[self.axis] - v * t, period);
            Jet {
                value: h_hat.map(|u| u * p.value),
                d_dt: h_hat.map(|u| -v * u * p.d_dt),
                d2_dt2: h_hat.map(|u| v * v * u * p.d2_dt2),
            }
        });
        (e, h)
    }
}

/// Samples a vector field given pointwise.
pub fn vector_field(grid: Grid3, f: impl Fn([f64; 3]) -> [f64; 3]) -> VectorField {
    VectorField::from_fn(grid, f)
}

/// Samples a scalar field given pointwise.
pub fn scalar_field(grid: Grid3, f: impl Fn([f64; 3]) -> f64) -> ScalarField {
    ScalarField::from_fn(grid, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn finite_difference_in_time(w: &VectorWave, x: [f64; 3], t: f64) -> ([f64; 3], [f64; 3]) {
        let dt = 1e-4;
        let (m, z, p) = (w.value(x, t - dt), w.value(x, t), w.value(x, t + dt));
        (
            std::array::from_fn(|n| (p[n] - m[n]) / (2.0 * dt)),
            std::array::from_fn(|n| (p[n] - 2.0 * z[n] + m[n]) / (dt * dt)),
        )
    }

    #[test]
    fn time_derivatives_match_differences() {
        let w = EmWave::generic(2.0, 1.0, Medium::VACUUM);
        let x = [0.3, -0.7, 1.1];
        for field in [&w.e, &w.h] {
            let jet = field.jet(x, 0.4);
            let (d1, d2) = finite_difference_in_time(field, x, 0.4);
            for n in 0..3 {
                assert!((jet.d_dt[n] - d1[n]).abs() < 1e-6);
                assert!((jet.d2_dt2[n] - d2[n]).abs() < 1e-5);
            }
        }
    }

    #[test]
    fn plane_waves_solve_the_source_free_equations_pointwise() {
        let c = 2.0;
        let medium = Medium { eps: 2.25, mu: 1.5 };
        let w = EmWave::generic(3.0, c, medium);
        for &x in &[[0.1, 0.2, 0.3], [1.0, -2.0, 0.5]] {
            let t = 0.7;
            let (e, h) = (w.e.jet(x, t), w.h.jet(x, t));
            let (ce, ch) = (w.e.curl(x, t), w.h.curl(x, t));
            for n in 0..3 {
                // c·rot H = ε ∂t E,  c·rot E = −μ ∂t H
                assert!((c * ch[n] - medium.eps * e.d_dt[n]).abs() < 1e-12);
                assert!((c * ce[n] + medium.mu * h.d_dt[n]).abs() < 1e-12);
            }
            assert!(w.e.div(x, t).abs() < 1e-12);
            assert!(w.h.div(x, t).abs() < 1e-12);
        }
    }

    #[test]
    fn pulse_travels_and_wraps() {
        let g = Grid3::periodic_box([32, 4, 4], [4.0, 1.0, 1.0]).unwrap();
        let p = GaussianPulse {
            axis: 0,
            polarization: 1,
            center: 1.0,
            width: 0.2,
            amplitude: 1.0,
        };
        let (e0, _) = p.fields(g, 0.0, 1.0, Medium::VACUUM);
        let (e1, h1) = p.fields(g, 4.0, 1.0, Medium::VACUUM);
        assert!(e0.value.max_abs_diff(&e1.value).unwrap() < 1e-12);
        assert!(
            e1.value
                .max_abs_diff(&h1.value.map(|h| [h[0], h[2], h[1]]))
                .unwrap()
                < 1e-15
        );
    }
}
