//! Time evolution of `(E, H)` on a periodic grid.
//!
//! The update solves the vector and pseudovector grades of `((1/c)∂t − ∇)F = J` for the
//! time derivatives, in a homogeneous medium:
//!
//! ```text
//! ∂E/∂t = (c rot H − 4πj)/ε
//! ∂H/∂t = −c rot E / μ
//! ```
//!
//! `rot H` and `rot E` are read off `∇F` with `F = −E + ξH` and the divergence
//! constraints are monitored, never enforced. Integration is classical RK4.

use std::f64::consts::PI;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::algebra::Octon;
use crate::analytic::{EmWave, GaussianPulse, Medium};
use crate::electrodynamics::{
    maxwell_residual, power_relations, CurrentOcton, CurrentSlice, FieldOcton, FieldSlice,
    RelationResiduals, UnitsConfig,
};
use crate::fieldgrid::classical::{cross, div, dot};
use crate::fieldgrid::snapshot::{read_snapshot, write_snapshot};
use crate::fieldgrid::{
    field_norms, nabla_apply, Axis, Grid3, OctonField, ScalarField, VectorField,
};
use crate::matter::{combined_residual, ConstitutiveModel, MatterSlice};
use crate::tolerance;
use crate::{Error, Result};

/// Grid as given in a configuration file: points and periodic side lengths.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub n: [usize; 3],
    pub lengths: [f64; 3],
    #[serde(default)]
    pub origin: [f64; 3],
}

impl GridSpec {
    pub fn build(&self) -> Result<Grid3> {
        if let Some(a) = self
            .lengths
            .iter()
            .position(|l| !(*l > 0.0 && l.is_finite()))
        {
            return Err(Error::Config(format!("grid.lengths[{a}] must be positive")));
        }
        if self.n.iter().any(|&m| m < Grid3::MIN_POINTS) {
            return Err(Error::Config(format!(
                "grid.n must be at least {} along every axis, got {:?}",
                Grid3::MIN_POINTS,
                self.n
            )));
        }
        Grid3::new(
            self.n,
            std::array::from_fn(|a| self.lengths[a] / self.n[a] as f64),
            self.origin,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Scenario {
    /// `E = amplitude·ê cos(k·x)` at t = 0 with `H = √(ε/μ) k̂ × E`.
    PlaneWave {
        amplitude: f64,
        wavevector: [f64; 3],
        /// Defaults to the coordinate axis least aligned with `k`, made transverse.
        #[serde(default)]
        polarization: Option<[f64; 3]>,
    },
    GaussianPulse {
        amplitude: f64,
        width: f64,
        axis: Axis,
        polarization: Axis,
        /// Position along `axis`; defaults to the middle of the box.
        #[serde(default)]
        center: Option<f64>,
    },
    /// `E = (x, y, z)` relative to the grid origin, `H = 0`, with the uniform charge
    /// `3/(4π)` that makes `div E = 4πρ` away from the periodic seam.
    StaticLinear,
    /// Fields read from an octon snapshot holding `−E + ξH`.
    Custom { snapshot: PathBuf },
}

/// Analytic sources: a uniform static charge and a uniform current `a sin(ωt)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SourceSpec {
    pub rho: f64,
    pub current_amplitude: [f64; 3],
    pub current_omega: f64,
}

impl SourceSpec {
    pub fn is_zero(&self) -> bool {
        self.rho == 0.0 && self.current_amplitude == [0.0; 3]
    }

    pub fn sample(&self, grid: Grid3, t: f64) -> CurrentSlice {
        let (s, c) = (self.current_omega * t).sin_cos();
        let a = self.current_amplitude;
        CurrentSlice {
            value: CurrentOcton {
                rho: ScalarField::constant(grid, self.rho),
                j: VectorField::constant(grid, a.map(|x| x * s)),
            },
            d_dt: CurrentOcton {
                rho: ScalarField::zeros(grid),
                j: VectorField::constant(grid, a.map(|x| x * self.current_omega * c)),
            },
        }
    }

    fn current(&self, t: f64) -> [f64; 3] {
        let s = (self.current_omega * t).sin();
        self.current_amplitude.map(|x| x * s)
    }
}

/// Exact solution attached to a scenario.
#[derive(Clone, Debug, PartialEq)]
pub enum Reference {
    Wave(EmWave),
    Pulse(GaussianPulse),
    Static { e: VectorField, h: VectorField },
}

impl Reference {
    pub fn fields(
        &self,
        grid: Grid3,
        t: f64,
        units: &UnitsConfig,
        medium: Medium,
    ) -> (VectorField, VectorField) {
        match self {
            Reference::Wave(w) => {
                let (e, h) = w.sample(grid, t);
                (e.value, h.value)
            }
            Reference::Pulse(p) => {
                let (e, h) = p.fields(grid, t, units.c, medium);
                (e.value, h.value)
            }
            Reference::Static { e, h } => (e.clone(), h.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolverState {
    pub time: f64,
    pub e: VectorField,
    pub h: VectorField,
}

impl SolverState {
    pub fn grid(&self) -> &Grid3 {
        self.e.grid()
    }

    pub fn field_octon(&self) -> OctonField {
        FieldOcton {
            e: self.e.clone(),
            h: self.h.clone(),
        }
        .octon()
    }

    fn is_finite(&self) -> bool {
        self.e.is_finite() && self.h.is_finite()
    }
}

/// Initial fields, sources and (when known) the exact solution.
#[derive(Clone, Debug)]
pub struct InitialState {
    pub state: SolverState,
    pub source: SourceSpec,
    pub medium: ConstitutiveModel,
    pub reference: Option<Reference>,
}

fn default_polarization(k: [f64; 3]) -> [f64; 3] {
    let a = (0..3)
        .min_by(|&p, &q| k[p].abs().total_cmp(&k[q].abs()))
        .expect("three axes");
    let mut e = [0.0; 3];
    e[a] = 1.0;
    e
}

pub fn init_scenario(
    scenario: &Scenario,
    grid: Grid3,
    units: &UnitsConfig,
    medium: ConstitutiveModel,
    source: SourceSpec,
) -> Result<InitialState> {
    units.validate()?;
    medium.validate()?;
    let m = medium.medium();
    let lengths = grid.lengths();
    let (state, reference, source) = match scenario {
        Scenario::PlaneWave {
            amplitude,
            wavevector,
            polarization,
        } => {
            let k = *wavevector;
            if k == [0.0; 3] || k.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidScenario(
                    "plane wave needs a finite nonzero wavevector".into(),
                ));
            }
            for a in 0..3 {
                let m = k[a] * lengths[a] / (2.0 * PI);
                if (m - m.round()).abs() > 1e-9 * m.abs().max(1.0) {
                    return Err(Error::InvalidScenario(format!(
                        "wavevector component {a} = {} is not a multiple of 2π/{}",
                        k[a], lengths[a]
                    )));
                }
            }
            let pol = polarization.unwrap_or_else(|| default_polarization(k));
            let kk = k.iter().map(|x| x * x).sum::<f64>();
            let p = pol.iter().zip(&k).map(|(a, b)| a * b).sum::<f64>() / kk;
            let t: [f64; 3] = std::array::from_fn(|a| pol[a] - p * k[a]);
            let tn = t.iter().map(|x| x * x).sum::<f64>().sqrt();
            if tn < 1e-12 {
                return Err(Error::InvalidScenario(
                    "polarization is parallel to the wavevector".into(),
                ));
            }
            let wave = EmWave::plane(k, t.map(|x| amplitude * x / tn), [0.0; 3], units.c, m);
            let (e, h) = wave.sample(grid, 0.0);
            (
                SolverState {
                    time: 0.0,
                    e: e.value,
                    h: h.value,
                },
                Some(Reference::Wave(wave)),
                source,
            )
        }
        Scenario::GaussianPulse {
            amplitude,
            width,
            axis,
            polarization,
            center,
        } => {
            let a = axis.index();
            if !(*width > 0.0) {
                return Err(Error::InvalidScenario(format!(
                    "pulse width must be positive, got {width}"
                )));
            }
            if *width < 4.0 * grid.h[a] {
                return Err(Error::InvalidScenario(format!(
                    "pulse width {width} is below 4h = {} along {:?}",
                    4.0 * grid.h[a],
                    axis
                )));
            }
            if axis == polarization {
                return Err(Error::InvalidScenario(
                    "pulse polarization must be transverse to its axis".into(),
                ));
            }
            let pulse = GaussianPulse {
                axis: a,
                polarization: polarization.index(),
                center: center.unwrap_or(grid.origin[a] + 0.5 * lengths[a]),
                width: *width,
                amplitude: *amplitude,
            };
            let (e, h) = pulse.fields(grid, 0.0, units.c, m);
            (
                SolverState {
                    time: 0.0,
                    e: e.value,
                    h: h.value,
                },
                Some(Reference::Pulse(pulse)),
                source,
            )
        }
        Scenario::StaticLinear => {
            let o = grid.origin;
            let e = VectorField::from_fn(grid, |x| [x[0] - o[0], x[1] - o[1], x[2] - o[2]]);
            let h = VectorField::zeros(grid);
            let mut source = source;
            source.rho += 3.0 / (4.0 * PI);
            (
                SolverState {
                    time: 0.0,
                    e: e.clone(),
                    h: h.clone(),
                },
                Some(Reference::Static { e, h }),
                source,
            )
        }
        Scenario::Custom { snapshot } => {
            let (f, _) = read_snapshot(snapshot)?;
            if f.grid().n != grid.n || f.grid().h != grid.h {
                return Err(Error::InvalidScenario(format!(
                    "snapshot grid {:?}/{:?} does not match the configured grid {:?}/{:?}",
                    f.grid().n,
                    f.grid().h,
                    grid.n,
                    grid.h
                )));
            }
            let e = VectorField::new(
                grid,
                f.data()
                    .iter()
                    .map(|o| [1, 2, 3].map(|u| -o.coeffs[u].re))
                    .collect(),
            )?;
            let h = VectorField::new(
                grid,
                f.data()
                    .iter()
                    .map(|o| [5, 6, 7].map(|u| o.coeffs[u].im))
                    .collect(),
            )?;
            (SolverState { time: 0.0, e, h }, None, source)
        }
    };
    // the references are source-free solutions; a driving current invalidates them
    let reference = if source.current_amplitude == [0.0; 3] {
        reference
    } else {
        None
    };
    Ok(InitialState {
        state,
        source,
        medium,
        reference,
    })
}

/// `rot E` and `rot H` read off `∇(−E + ξH)`.
pub fn octonic_curls(state: &SolverState) -> (VectorField, VectorField) {
    let n = nabla_apply(&state.field_octon());
    let rot_e = n.map(|o: Octon| [5, 6, 7].map(|u| -o.coeffs[u].im));
    let rot_h = n.map(|o: Octon| [1, 2, 3].map(|u| -o.coeffs[u].re));
    (rot_e, rot_h)
}

/// `(∂E/∂t, ∂H/∂t)` at `state`.
pub fn rhs(
    state: &SolverState,
    j: [f64; 3],
    units: &UnitsConfig,
    medium: &ConstitutiveModel,
) -> (VectorField, VectorField) {
    let (rot_e, rot_h) = octonic_curls(state);
    let (c, eps, mu) = (units.c, medium.epsilon, medium.mu);
    let de = rot_h.map(|r| std::array::from_fn(|a| (c * r[a] - 4.0 * PI * j[a]) / eps));
    let dh = rot_e.map(|r| r.map(|x| -c * x / mu));
    (de, dh)
}

/// Step size, step count and output cadence.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub grid: Grid3,
    pub dt: f64,
    pub steps: usize,
    /// Diagnostics every this many steps (and always at the first and last step).
    pub sample_every: usize,
    /// Snapshot every this many steps; 0 disables snapshots.
    pub snapshot_every: usize,
    pub allow_high_cfl: bool,
}

impl SolverConfig {
    /// `steps` steps at the default `dt = 0.25·min(h)/c`.
    pub fn new(grid: Grid3, units: &UnitsConfig, steps: usize) -> Self {
        let h = grid.h.iter().copied().fold(f64::INFINITY, f64::min);
        SolverConfig {
            grid,
            dt: 0.25 * h / units.c,
            steps,
            sample_every: 1,
            snapshot_every: 0,
            allow_high_cfl: false,
        }
    }

    /// Covers `duration` in whole steps no larger than the step at Courant number `cfl`.
    pub fn for_duration(grid: Grid3, units: &UnitsConfig, duration: f64, cfl: f64) -> Result<Self> {
        if !(duration > 0.0 && cfl > 0.0) {
            return Err(Error::Config("duration and cfl must be positive".into()));
        }
        let max_dt = cfl / (units.c * inverse_spacing(&grid));
        let steps = (duration / max_dt).ceil() as usize;
        let mut cfg = SolverConfig::new(grid, units, steps);
        cfg.dt = duration / steps as f64;
        Ok(cfg)
    }

    /// `dt·c·√(1/hx² + 1/hy² + 1/hz²)`
    pub fn cfl(&self, units: &UnitsConfig) -> f64 {
        self.dt * units.c * inverse_spacing(&self.grid)
    }

    pub fn validate(&self, units: &UnitsConfig) -> Result<()> {
        if !(self.dt.is_finite() && self.dt != 0.0) {
            return Err(Error::Config(format!(
                "solver.dt must be finite and nonzero, got {}",
                self.dt
            )));
        }
        if self.sample_every == 0 {
            return Err(Error::Config(
                "solver.sample_every must be at least 1".into(),
            ));
        }
        let cfl = self.cfl(units).abs();
        if cfl > tolerance::CFL_MAX && !self.allow_high_cfl {
            return Err(Error::Config(format!(
                "CFL number {cfl:.4} exceeds {} (pass --allow-high-cfl to override)",
                tolerance::CFL_MAX
            )));
        }
        Ok(())
    }
}

fn inverse_spacing(grid: &Grid3) -> f64 {
    grid.h.iter().map(|h| 1.0 / (h * h)).sum::<f64>().sqrt()
}

/// One diagnostics row. Residual columns are grid-weighted L2 norms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsRecord {
    pub step: usize,
    pub time: f64,
    pub energy: f64,
    #[serde(rename = "Sx")]
    pub sx: f64,
    #[serde(rename = "Sy")]
    pub sy: f64,
    #[serde(rename = "Sz")]
    pub sz: f64,
    pub inv1: f64,
    pub inv2: f64,
    pub res_scalar: f64,
    pub res_pseudoscalar: f64,
    pub res_vector: f64,
    pub res_pseudovector: f64,
    pub continuity: f64,
    pub poynting: f64,
    pub l2err: Option<f64>,
}

pub const CSV_COLUMNS: [&str; 15] = [
    "step",
    "time",
    "energy",
    "Sx",
    "Sy",
    "Sz",
    "inv1",
    "inv2",
    "res_scalar",
    "res_pseudoscalar",
    "res_vector",
    "res_pseudovector",
    "continuity",
    "poynting",
    "l2err",
];

pub fn write_csv<W: Write>(out: W, records: &[DiagnosticsRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    w.flush().map_err(|e| Error::io("<csv>", e))?;
    Ok(())
}

pub fn write_csv_file(path: &Path, records: &[DiagnosticsRecord]) -> Result<()> {
    let f = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    write_csv(std::io::BufWriter::new(f), records)
}

/// Root-mean-square over sites of `√(|E − E_ref|² + |H − H_ref|²)`.
pub fn l2_error(state: &SolverState, e_ref: &VectorField, h_ref: &VectorField) -> Result<f64> {
    let de = state.e.sub(e_ref)?;
    let dh = state.h.sub(h_ref)?;
    let sum: f64 = de
        .data()
        .iter()
        .zip(dh.data())
        .map(|(a, b)| a.iter().chain(b).map(|x| x * x).sum::<f64>())
        .sum();
    Ok((sum / state.grid().len() as f64).sqrt())
}

pub struct Simulation {
    pub initial: InitialState,
    pub config: SolverConfig,
    pub units: UnitsConfig,
    pub state: SolverState,
    pub step: usize,
}

impl Simulation {
    pub fn new(initial: InitialState, config: SolverConfig, units: UnitsConfig) -> Result<Self> {
        units.validate()?;
        config.validate(&units)?;
        if initial.state.grid() != &config.grid {
            return Err(Error::GridMismatch {
                left: "initial state",
                right: "solver grid",
            });
        }
        Ok(Simulation {
            state: initial.state.clone(),
            initial,
            config,
            units,
            step: 0,
        })
    }

    fn rhs_at(&self, s: &SolverState) -> (VectorField, VectorField) {
        rhs(
            s,
            self.initial.source.current(s.time),
            &self.units,
            &self.initial.medium,
        )
    }

    /// One RK4 step of size `dt` (which may be negative).
    pub fn step_by(&mut self, dt: f64) -> Result<()> {
        let s0 = &self.state;
        let stage = |k: &(VectorField, VectorField), w: f64| -> Result<SolverState> {
            let mut e = s0.e.clone();
            e.axpy(w * dt, &k.0)?;
            let mut h = s0.h.clone();
            h.axpy(w * dt, &k.1)?;
            Ok(SolverState {
                time: s0.time + w * dt,
                e,
                h,
            })
        };
        let k1 = self.rhs_at(s0);
        let k2 = self.rhs_at(&stage(&k1, 0.5)?);
        let k3 = self.rhs_at(&stage(&k2, 0.5)?);
        let k4 = self.rhs_at(&stage(&k3, 1.0)?);
        let mut e = s0.e.clone();
        let mut h = s0.h.clone();
        for (k, w) in [(&k1, 1.0), (&k2, 2.0), (&k3, 2.0), (&k4, 1.0)] {
            e.axpy(w * dt / 6.0, &k.0)?;
            h.axpy(w * dt / 6.0, &k.1)?;
        }
        let next = SolverState {
            time: s0.time + dt,
            e,
            h,
        };
        self.step += 1;
        if !next.is_finite() {
            return Err(Error::NumericalAbort {
                step: self.step,
                time: next.time,
                message: "non-finite field values".into(),
            });
        }
        self.state = next;
        Ok(())
    }

    pub fn step(&mut self) -> Result<()> {
        self.step_by(self.config.dt)
    }

    pub fn diagnostics(&self) -> Result<DiagnosticsRecord> {
        let s = &self.state;
        let grid = *s.grid();
        let dv = grid.cell_volume();
        let m = self.initial.medium;
        let (de, dh) = self.rhs_at(s);
        let cur = self.initial.source.sample(grid, s.time);

        let mut energy = 0.0;
        let mut flux = [0.0; 3];
        let (mut inv1, mut inv2) = (0.0, 0.0);
        let k = self.units.c / (4.0 * PI);
        for (e, h) in s.e.data().iter().zip(s.h.data()) {
            let e2 = e.iter().map(|x| x * x).sum::<f64>();
            let h2 = h.iter().map(|x| x * x).sum::<f64>();
            energy += (m.epsilon * e2 + m.mu * h2) / (8.0 * PI);
            let eh = [
                e[1] * h[2] - e[2] * h[1],
                e[2] * h[0] - e[0] * h[2],
                e[0] * h[1] - e[1] * h[0],
            ];
            for a in 0..3 {
                flux[a] += k * eh[a];
            }
            inv1 += (e2 - h2) / (8.0 * PI);
            inv2 += e.iter().zip(h).map(|(x, y)| x * y).sum::<f64>();
        }
        if !energy.is_finite() {
            // finite fields whose squares overflow: the run has blown up all the same
            return Err(Error::NumericalAbort {
                step: self.step,
                time: s.time,
                message: "field energy overflowed".into(),
            });
        }

        let residuals: RelationResiduals;
        let poynting: ScalarField;
        let field = FieldSlice {
            value: FieldOcton {
                e: s.e.clone(),
                h: s.h.clone(),
            },
            d_dt: FieldOcton {
                e: de.clone(),
                h: dh.clone(),
            },
            d2_dt2: None,
        };
        if m == ConstitutiveModel::VACUUM {
            residuals = maxwell_residual(&field, &cur.value, &self.units)?.residuals;
            poynting = power_relations(&field, &cur.value, &self.units)?
                .residuals
                .scalar;
        } else {
            let slice = MatterSlice {
                value: m.close(s.e.clone(), s.h.clone())?,
                d_dt: m.close(de.clone(), dh.clone())?,
            };
            residuals = combined_residual(&slice, &cur.value, &self.units)?.residuals;
            // ∂t((εE² + μH²)/8π) + div((c/4π)E×H) + j·E
            let mut p = dot(&s.e, &de).scale(m.epsilon / (4.0 * PI));
            p.axpy(m.mu / (4.0 * PI), &dot(&s.h, &dh))?;
            p.axpy(k, &div(&cross(&s.e, &s.h)))?;
            p.axpy(1.0, &dot(&cur.value.j, &s.e))?;
            poynting = p;
        }
        let mut continuity = cur.d_dt.rho.clone();
        continuity.axpy(1.0, &div(&cur.value.j))?;

        let l2err = match &self.initial.reference {
            Some(r) => {
                let (e, h) = r.fields(grid, s.time, &self.units, m.medium());
                Some(l2_error(s, &e, &h)?)
            }
            None => None,
        };
        let norms = residuals.norms();
        let record = DiagnosticsRecord {
            step: self.step,
            time: s.time,
            energy: energy * dv,
            sx: flux[0] * dv,
            sy: flux[1] * dv,
            sz: flux[2] * dv,
            inv1: inv1 * dv,
            inv2: inv2 * dv,
            res_scalar: norms.scalar.l2,
            res_pseudoscalar: norms.pseudoscalar.l2,
            res_vector: norms.vector.l2,
            res_pseudovector: norms.pseudovector.l2,
            continuity: field_norms(&continuity).l2,
            poynting: field_norms(&poynting).l2,
            l2err,
        };
        Ok(record)
    }

    /// Runs all configured steps, returning diagnostics at step 0, every `sample_every`
    /// steps, and the last step. Snapshots go to `snapshot_dir` when given.
    pub fn run(&mut self, snapshot_dir: Option<&Path>) -> Result<Vec<DiagnosticsRecord>> {
        let mut records = vec![self.diagnostics()?];
        self.snapshot(snapshot_dir)?;
        for _ in 0..self.config.steps {
            self.step()?;
            if self.step % self.config.sample_every == 0 || self.step == self.config.steps {
                records.push(self.diagnostics()?);
            }
            self.snapshot(snapshot_dir)?;
        }
        Ok(records)
    }

    fn snapshot(&self, dir: Option<&Path>) -> Result<()> {
        let every = self.config.snapshot_every;
        if let Some(dir) = dir {
            if every > 0 && self.step % every == 0 {
                let path = dir.join(format!("snapshot_{:06}.bin", self.step));
                write_snapshot(&path, &self.state.field_octon(), Some(self.state.time))?;
            }
        }
        Ok(())
    }
}

/// How the solver step is chosen in a configuration file.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct StepSpec {
    /// Explicit time step. Mutually exclusive with `cfl`.
    pub dt: Option<f64>,
    /// Courant number used to derive the step.
    pub cfl: Option<f64>,
    pub steps: Option<usize>,
    /// Total simulated time; overrides `steps` and shrinks `dt` to fit exactly.
    pub duration: Option<f64>,
    pub sample_every: Option<usize>,
    pub snapshot_every: usize,
    pub allow_high_cfl: bool,
}

/// A complete simulation configuration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulationConfig {
    pub grid: GridSpec,
    #[serde(default)]
    pub units: UnitsConfig,
    pub scenario: Scenario,
    #[serde(default = "vacuum")]
    pub medium: ConstitutiveModel,
    #[serde(default)]
    pub source: SourceSpec,
    #[serde(default)]
    pub solver: StepSpec,
}

fn vacuum() -> ConstitutiveModel {
    ConstitutiveModel::VACUUM
}

impl SimulationConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn solver_config(&self, grid: Grid3) -> Result<SolverConfig> {
        let s = &self.solver;
        let units = &self.units;
        units.validate()?;
        if s.dt.is_some() && s.cfl.is_some() {
            return Err(Error::Config(
                "solver.dt and solver.cfl are mutually exclusive".into(),
            ));
        }
        let mut cfg = match (s.duration, s.steps) {
            (Some(t), _) => {
                let cfl = match s.dt {
                    Some(dt) => dt * units.c * inverse_spacing(&grid),
                    None => s.cfl.unwrap_or(
                        0.25 * grid.h.iter().copied().fold(f64::INFINITY, f64::min)
                            * inverse_spacing(&grid),
                    ),
                };
                SolverConfig::for_duration(grid, units, t, cfl)?
            }
            (None, Some(n)) => {
                let mut cfg = SolverConfig::new(grid, units, n);
                if let Some(dt) = s.dt {
                    cfg.dt = dt;
                } else if let Some(cfl) = s.cfl {
                    cfg.dt = cfl / (units.c * inverse_spacing(&grid));
                }
                cfg
            }
            (None, None) => {
                return Err(Error::Config(
                    "solver: one of `steps` or `duration` is required".into(),
                ))
            }
        };
        cfg.sample_every = s.sample_every.unwrap_or(1);
        cfg.snapshot_every = s.snapshot_every;
        cfg.allow_high_cfl = s.allow_high_cfl;
        cfg.validate(units)?;
        Ok(cfg)
    }

    pub fn simulation(&self) -> Result<Simulation> {
        let grid = self.grid.build()?;
        let cfg = self.solver_config(grid)?;
        let init = init_scenario(&self.scenario, grid, &self.units, self.medium, self.source)?;
        Simulation::new(init, cfg, self.units)
    }
}

/// Relative change of the first record's energy over the run.
pub fn energy_drift(records: &[DiagnosticsRecord]) -> f64 {
    match (records.first(), records.last()) {
        (Some(a), Some(b)) if a.energy > 0.0 => (b.energy - a.energy) / a.energy,
        _ => 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldgrid::classical::curl;

    fn units() -> UnitsConfig {
        UnitsConfig::default()
    }

    #[test]
    fn octonic_curls_match_classical() {
        let g = Grid3::cube(8, 1.0).unwrap();
        let e = VectorField::from_fn(g, |p| {
            [(2.0 * PI * p[1]).sin(), (2.0 * PI * p[2]).cos(), p[0].sin()]
        });
        let h = VectorField::from_fn(g, |p| {
            [(2.0 * PI * p[2]).cos(), 0.3, (2.0 * PI * p[0]).sin()]
        });
        let (re, rh) = octonic_curls(&SolverState {
            time: 0.0,
            e: e.clone(),
            h: h.clone(),
        });
        assert!(re.max_abs_diff(&curl(&e)).unwrap() < 1e-13);
        assert!(rh.max_abs_diff(&curl(&h)).unwrap() < 1e-13);
    }

    #[test]
    fn rhs_of_a_sheared_magnetic_field() {
        let g = Grid3::cube(16, 1.0).unwrap();
        let f = |z: f64| (2.0 * PI * z).sin();
        let s = SolverState {
            time: 0.0,
            e: VectorField::zeros(g),
            h: VectorField::from_fn(g, |p| [0.0, f(p[2]), 0.0]),
        };
        let (de, dh) = rhs(
            &s,
            [0.0; 3],
            &UnitsConfig::new(2.0).unwrap(),
            &ConstitutiveModel::VACUUM,
        );
        // rot (0, f(z), 0) = (−f'(z), 0, 0)
        let expect = VectorField::from_fn(g, |p| {
            let dz = g.h[2];
            [-2.0 * (f(p[2] + dz) - f(p[2] - dz)) / (2.0 * dz), 0.0, 0.0]
        });
        assert!(de.max_abs_diff(&expect).unwrap() < 1e-12);
        assert_eq!(field_norms(&dh).linf, 0.0);
    }

    #[test]
    fn uniform_fields_are_stationary() {
        let g = Grid3::cube(4, 1.0).unwrap();
        let s = SolverState {
            time: 0.0,
            e: VectorField::constant(g, [1.0, -2.0, 0.5]),
            h: VectorField::constant(g, [0.0, 3.0, 1.0]),
        };
        let (de, dh) = rhs(&s, [0.0; 3], &units(), &ConstitutiveModel::VACUUM);
        assert_eq!(field_norms(&de).linf, 0.0);
        assert_eq!(field_norms(&dh).linf, 0.0);
    }

    #[test]
    fn zero_fields_stay_zero() {
        let g = Grid3::cube(4, 1.0).unwrap();
        let init = InitialState {
            state: SolverState {
                time: 0.0,
                e: VectorField::zeros(g),
                h: VectorField::zeros(g),
            },
            source: SourceSpec::default(),
            medium: ConstitutiveModel::VACUUM,
            reference: None,
        };
        let mut sim = Simulation::new(init, SolverConfig::new(g, &units(), 5), units()).unwrap();
        let rec = sim.run(None).unwrap();
        assert_eq!(rec.len(), 6);
        assert_eq!(field_norms(&sim.state.e).linf, 0.0);
        assert!(rec.iter().all(|r| r.energy == 0.0 && r.l2err.is_none()));
    }

    #[test]
    fn plane_wave_initial_fields() {
        let g = Grid3::cube(8, 1.0).unwrap();
        let s = Scenario::PlaneWave {
            amplitude: 1.0,
            wavevector: [0.0, 0.0, 2.0 * PI],
            polarization: None,
        };
        let init = init_scenario(
            &s,
            g,
            &units(),
            ConstitutiveModel::VACUUM,
            SourceSpec::default(),
        )
        .unwrap();
        let e = VectorField::from_fn(g, |p| [(2.0 * PI * p[2]).cos(), 0.0, 0.0]);
        let h = VectorField::from_fn(g, |p| [0.0, (2.0 * PI * p[2]).cos(), 0.0]);
        assert!(init.state.e.max_abs_diff(&e).unwrap() < 1e-15);
        assert!(init.state.h.max_abs_diff(&h).unwrap() < 1e-15);
    }

    #[test]
    fn scenario_validation() {
        let g = Grid3::cube(16, 1.0).unwrap();
        let bad_k = Scenario::PlaneWave {
            amplitude: 1.0,
            wavevector: [0.0, 0.0, 3.0],
            polarization: None,
        };
        let narrow = Scenario::GaussianPulse {
            amplitude: 1.0,
            width: 0.2,
            axis: Axis::Z,
            polarization: Axis::X,
            center: None,
        };
        for s in [bad_k, narrow] {
            let r = init_scenario(
                &s,
                g,
                &units(),
                ConstitutiveModel::VACUUM,
                SourceSpec::default(),
            );
            assert!(matches!(r, Err(Error::InvalidScenario(_))), "{r:?}");
        }
    }

    #[test]
    fn static_linear_stays_put() {
        let g = Grid3::cube(6, 1.0).unwrap();
        let init = init_scenario(
            &Scenario::StaticLinear,
            g,
            &units(),
            ConstitutiveModel::VACUUM,
            SourceSpec::default(),
        )
        .unwrap();
        let e0 = init.state.e.clone();
        let mut sim = Simulation::new(init, SolverConfig::new(g, &units(), 4), units()).unwrap();
        let rec = sim.run(None).unwrap();
        assert_eq!(sim.state.e, e0);
        assert_eq!(rec.last().unwrap().l2err, Some(0.0));
    }

    #[test]
    fn cfl_is_enforced() {
        let g = Grid3::cube(8, 1.0).unwrap();
        let mut cfg = SolverConfig::new(g, &units(), 1);
        assert!((cfg.cfl(&units()) - 0.25 * 3f64.sqrt()).abs() < 1e-15);
        cfg.dt *= 2.0;
        assert!(matches!(cfg.validate(&units()), Err(Error::Config(_))));
        cfg.allow_high_cfl = true;
        assert!(cfg.validate(&units()).is_ok());
    }

    #[test]
    fn blow_up_aborts() {
        let g = Grid3::cube(8, 1.0).unwrap();
        let s = Scenario::PlaneWave {
            amplitude: 1.0,
            wavevector: [0.0, 0.0, 2.0 * PI * 2.0],
            polarization: None,
        };
        let init = init_scenario(
            &s,
            g,
            &units(),
            ConstitutiveModel::VACUUM,
            SourceSpec::default(),
        )
        .unwrap();
        let mut cfg = SolverConfig::new(g, &units(), 100000);
        cfg.dt *= 40.0;
        cfg.allow_high_cfl = true;
        cfg.sample_every = 100000;
        let err = Simulation::new(init, cfg, units())
            .unwrap()
            .run(None)
            .unwrap_err();
        assert!(matches!(err, Error::NumericalAbort { .. }), "{err}");
    }

    #[test]
    fn time_reversal() {
        let g = Grid3::cube(16, 1.0).unwrap();
        let s = Scenario::GaussianPulse {
            amplitude: 1.0,
            width: 0.25,
            axis: Axis::Y,
            polarization: Axis::Z,
            center: None,
        };
        let init = init_scenario(
            &s,
            g,
            &units(),
            ConstitutiveModel::new(2.0, 1.5).unwrap(),
            SourceSpec::default(),
        )
        .unwrap();
        let start = init.state.clone();
        let mut sim = Simulation::new(init, SolverConfig::new(g, &units(), 0), units()).unwrap();
        let dt = sim.config.dt;
        for _ in 0..20 {
            sim.step_by(dt).unwrap();
        }
        for _ in 0..20 {
            sim.step_by(-dt).unwrap();
        }
        let scale = field_norms(&start.e).linf;
        let err = sim
            .state
            .e
            .max_abs_diff(&start.e)
            .unwrap()
            .max(sim.state.h.max_abs_diff(&start.h).unwrap());
        assert!(err <= 1e-8 * scale, "{err}");
    }

    #[test]
    fn csv_header() {
        let mut buf = Vec::new();
        let r = DiagnosticsRecord {
            step: 0,
            time: 0.0,
            energy: 1.0,
            sx: 0.0,
            sy: 0.0,
            sz: 0.0,
            inv1: 0.0,
            inv2: 0.0,
            res_scalar: 0.0,
            res_pseudoscalar: 0.0,
            res_vector: 0.0,
            res_pseudovector: 0.0,
            continuity: 0.0,
            poynting: 0.0,
            l2err: None,
        };
        write_csv(&mut buf, &[r]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next().unwrap(), CSV_COLUMNS.join(","));
        assert!(text.lines().nth(1).unwrap().ends_with(",0.0,0.0,"));
    }

    #[test]
    fn config_parsing() {
        let c = SimulationConfig::from_json(
            r#"{"grid": {"n": [8, 8, 8], "lengths": [1, 1, 1]},
                "scenario": {"kind": "plane_wave", "amplitude": 1, "wavevector": [0, 0, 6.283185307179586]},
                "solver": {"duration": 1.0, "cfl": 0.25}}"#,
        )
        .unwrap();
        let sim = c.simulation().unwrap();
        assert!((sim.config.dt * sim.config.steps as f64 - 1.0).abs() < 1e-14);
        assert!(sim.config.cfl(&c.units) <= 0.25 + 1e-12);

        let err =
            SimulationConfig::from_json(r#"{"scenario": {"kind": "static_linear"}}"#).unwrap_err();
        assert!(err.to_string().contains("grid"), "{err}");
    }
}
