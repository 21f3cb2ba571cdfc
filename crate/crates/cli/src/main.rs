use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use octonic::algebra::verify::verify_algebra;
use octonic::algebra::{Phase, ProductTable};
use octonic::convergence::{Expectation, RefinementStudy};
use octonic::electrodynamics::UnitsConfig;
use octonic::identities::{check_identities, IdentityConfig};
use octonic::matter::ConstitutiveModel;
use octonic::solver::{energy_drift, write_csv_file, DiagnosticsRecord, SimulationConfig};
use octonic::{tolerance, BasisUnit, Error};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(
    name = "octonic",
    version,
    about = "Octon algebra and octonic electrodynamics checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone, Debug)]
struct Common {
    /// JSON configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory for reports, CSV files and snapshots.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Seed for randomized checks; overrides the config file.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Comma-separated refinement levels, e.g. 16,32,64.
    #[arg(long, global = true, value_delimiter = ',')]
    levels: Option<Vec<usize>>,
    /// Permit time steps above the CFL ceiling.
    #[arg(long, global = true)]
    allow_high_cfl: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Basis table, associativity, matrix oracle and dot/cross correspondence.
    VerifyAlgebra {
        /// Number of random octon pairs and triples.
        #[arg(long)]
        random_count: Option<usize>,
        /// Corrupt the (i, j) table entry to exercise the failure path.
        #[arg(long, hide = true)]
        corrupt_table: bool,
    },
    /// Refinement studies of every residual operation on analytic fields.
    CheckIdentities,
    /// Time-domain run writing CSV diagnostics.
    Simulate,
    /// Solver error under grid refinement.
    Convergence,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct IdentitySection {
    length: f64,
    units: UnitsConfig,
    medium: ConstitutiveModel,
    time: f64,
}

impl Default for IdentitySection {
    fn default() -> Self {
        let d = IdentityConfig::default();
        IdentitySection {
            length: d.length,
            units: d.units,
            medium: d.medium,
            time: d.time,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct ToleranceSection {
    order_pass: f64,
}

impl Default for ToleranceSection {
    fn default() -> Self {
        ToleranceSection {
            order_pass: tolerance::ORDER_PASS,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct RunConfig {
    seed: u64,
    random_count: usize,
    levels: Vec<usize>,
    identities: IdentitySection,
    simulation: Option<SimulationConfig>,
    tolerances: ToleranceSection,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            random_count: 10_000,
            levels: vec![16, 32, 64],
            identities: IdentitySection::default(),
            simulation: None,
            tolerances: ToleranceSection::default(),
        }
    }
}

#[derive(Serialize)]
struct ToleranceSet {
    exact: f64,
    oracle_relative: f64,
    gibbs: f64,
    maxwell_path: f64,
    relation_path: f64,
    nominal_order: f64,
    order_pass: f64,
    roundoff_floor: f64,
    cfl_max: f64,
}

#[derive(Serialize)]
struct Report<'a, T: Serialize> {
    command: &'a str,
    version: &'a str,
    config_hash: String,
    seed: u64,
    tolerances: ToleranceSet,
    passed: bool,
    result: T,
}

/// Failure classes, mapped to exit codes.
enum Failure {
    Verification(String),
    Config(String),
    Numerical(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Config(_) => 2,
            Failure::Numerical(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Verification(m) | Failure::Config(m) | Failure::Numerical(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let m = e.to_string();
        match e {
            Error::NumericalAbort { .. } => Failure::Numerical(m),
            Error::PathDisagreement { .. } => Failure::Verification(m),
            _ => Failure::Config(m),
        }
    }
}

fn load_config(common: &Common) -> Result<RunConfig, Failure> {
    let mut cfg = match &common.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Failure::Config(format!("cannot read config {}: {e}", path.display()))
            })?;
            serde_json::from_str(&text)
                .map_err(|e| Failure::Config(format!("config {}: {e}", path.display())))?
        }
        None => RunConfig::default(),
    };
    if let Some(seed) = common.seed {
        cfg.seed = seed;
    }
    if let Some(levels) = &common.levels {
        cfg.levels = levels.clone();
    }
    if common.allow_high_cfl {
        if let Some(sim) = &mut cfg.simulation {
            sim.solver.allow_high_cfl = true;
        }
    }
    if cfg.levels.len() < 2 {
        return Err(Failure::Config(
            "levels: at least two refinement levels are needed".into(),
        ));
    }
    if cfg.levels.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Failure::Config(
            "levels: must be strictly increasing".into(),
        ));
    }
    Ok(cfg)
}

fn config_hash(cfg: &RunConfig) -> String {
    let text = serde_json::to_string(cfg).expect("config serializes");
    hex::encode(Sha256::digest(text.as_bytes()))
}

fn tolerance_set(cfg: &RunConfig) -> ToleranceSet {
    ToleranceSet {
        exact: tolerance::EXACT,
        oracle_relative: tolerance::ORACLE_RELATIVE,
        gibbs: tolerance::GIBBS,
        maxwell_path: tolerance::MAXWELL_PATH,
        relation_path: tolerance::RELATION_PATH,
        nominal_order: tolerance::NOMINAL_ORDER,
        order_pass: cfg.tolerances.order_pass,
        roundoff_floor: tolerance::ROUNDOFF_FLOOR,
        cfl_max: tolerance::CFL_MAX,
    }
}

fn write_report<T: Serialize>(
    out: &Path,
    command: &str,
    cfg: &RunConfig,
    passed: bool,
    result: T,
) -> Result<(), Failure> {
    let report = Report {
        command,
        version: VERSION,
        config_hash: config_hash(cfg),
        seed: cfg.seed,
        tolerances: tolerance_set(cfg),
        passed,
        result,
    };
    let path = out.join(format!("{command}.json"));
    let text = serde_json::to_string_pretty(&report).expect("report serializes");
    std::fs::write(&path, text)
        .map_err(|e| Failure::Config(format!("cannot write {}: {e}", path.display())))?;
    println!("report: {}", path.display());
    Ok(())
}

fn prepare_out(out: &Path) -> Result<(), Failure> {
    std::fs::create_dir_all(out)
        .map_err(|e| Failure::Config(format!("cannot create {}: {e}", out.display())))
}

fn simulation_section(cfg: &RunConfig) -> Result<&SimulationConfig, Failure> {
    cfg.simulation
        .as_ref()
        .ok_or_else(|| Failure::Config("simulation: missing section in config".into()))
}

fn run_verify_algebra(
    common: &Common,
    random_count: Option<usize>,
    corrupt: bool,
) -> Result<(), Failure> {
    let mut cfg = load_config(common)?;
    if let Some(n) = random_count {
        cfg.random_count = n;
    }
    prepare_out(&common.out)?;
    let table = if corrupt {
        ProductTable::standard().with_entry(
            BasisUnit::PolarI,
            BasisUnit::PolarJ,
            (Phase::NEG_XI, BasisUnit::AxialK),
        )
    } else {
        ProductTable::standard().clone()
    };
    let report = verify_algebra(&table, cfg.seed, cfg.random_count);
    println!("{}", report.summary());
    for f in &report.failures {
        println!("  {f}");
    }
    let passed = report.passed();
    write_report(&common.out, "verify-algebra", &cfg, passed, &report)?;
    if passed {
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "{} algebra check(s) failed",
            report.failures.len()
        )))
    }
}

fn run_check_identities(common: &Common) -> Result<(), Failure> {
    let cfg = load_config(common)?;
    prepare_out(&common.out)?;
    let s = &cfg.identities;
    let ic = IdentityConfig {
        levels: cfg.levels.clone(),
        length: s.length,
        units: s.units,
        medium: s.medium,
        seed: cfg.seed,
        time: s.time,
    };
    let report = check_identities(&ic, cfg.tolerances.order_pass)?;
    for st in &report.studies {
        println!("{}", st.summary());
    }
    for p in &report.probes {
        println!("{}", p.summary());
    }
    let passed = report.passed();
    write_report(&common.out, "check-identities", &cfg, passed, &report)?;
    if passed {
        println!("all identities: PASS");
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "failing identities:\n  {}",
            report.failures().join("\n  ")
        )))
    }
}

#[derive(Serialize)]
struct SimulationSummary {
    steps: usize,
    dt: f64,
    cfl: f64,
    energy_drift: f64,
    max_residuals: [f64; 4],
    max_continuity: f64,
    max_poynting: f64,
    final_l2err: Option<f64>,
    csv: PathBuf,
}

fn summarize(
    records: &[DiagnosticsRecord],
    sim: &octonic::solver::Simulation,
    csv: PathBuf,
) -> SimulationSummary {
    let max = |f: fn(&DiagnosticsRecord) -> f64| records.iter().map(f).fold(0.0, f64::max);
    SimulationSummary {
        steps: sim.config.steps,
        dt: sim.config.dt,
        cfl: sim.config.cfl(&sim.units),
        energy_drift: energy_drift(records),
        max_residuals: [
            max(|r| r.res_scalar),
            max(|r| r.res_pseudoscalar),
            max(|r| r.res_vector),
            max(|r| r.res_pseudovector),
        ],
        max_continuity: max(|r| r.continuity),
        max_poynting: max(|r| r.poynting),
        final_l2err: records.last().and_then(|r| r.l2err),
        csv,
    }
}

fn run_simulate(common: &Common) -> Result<(), Failure> {
    let cfg = load_config(common)?;
    let sim_cfg = simulation_section(&cfg)?;
    let mut sim = sim_cfg.simulation()?;
    prepare_out(&common.out)?;
    println!(
        "simulating {} steps of dt = {:.6e} (CFL {:.4})",
        sim.config.steps,
        sim.config.dt,
        sim.config.cfl(&sim.units)
    );
    let records = sim.run(Some(&common.out))?;
    let csv = common.out.join("diagnostics.csv");
    write_csv_file(&csv, &records)?;
    let summary = summarize(&records, &sim, csv);
    println!("energy drift {:.3e}", summary.energy_drift);
    println!(
        "max residual L2 norms: scalar {:.3e}, pseudoscalar {:.3e}, vector {:.3e}, pseudovector {:.3e}",
        summary.max_residuals[0], summary.max_residuals[1], summary.max_residuals[2], summary.max_residuals[3]
    );
    if let Some(e) = summary.final_l2err {
        println!("final L2 error vs analytic {e:.3e}");
    }
    write_report(&common.out, "simulate", &cfg, true, &summary)
}

fn run_convergence(common: &Common) -> Result<(), Failure> {
    let cfg = load_config(common)?;
    let base = simulation_section(&cfg)?;
    prepare_out(&common.out)?;
    let mut errors = Vec::new();
    let mut h = Vec::new();
    for &n in &cfg.levels {
        let mut level = base.clone();
        // axes configured at the minimum size are invariant directions and stay thin
        let refined: Vec<usize> = (0..3)
            .filter(|&a| base.grid.n[a] > octonic::Grid3::MIN_POINTS)
            .collect();
        if refined.is_empty() {
            return Err(Failure::Config(
                "convergence: every grid axis is at the minimum size".into(),
            ));
        }
        for &a in &refined {
            level.grid.n[a] = n;
        }
        let mut sim = level.simulation()?;
        sim.config.sample_every = sim.config.steps.max(1);
        let records = sim.run(None)?;
        let err = records.last().and_then(|r| r.l2err).ok_or_else(|| {
            Failure::Config("convergence: scenario has no analytic reference".into())
        })?;
        let spacing = refined
            .iter()
            .map(|&a| sim.config.grid.h[a])
            .fold(0.0, f64::max);
        println!(
            "N = {n}: h = {spacing:.4e}, steps = {}, L2 error {err:.4e}",
            sim.config.steps
        );
        errors.push(err);
        h.push(spacing);
    }
    let study = RefinementStudy::new(
        "solver_l2_error",
        cfg.levels.clone(),
        h,
        errors,
        vec![1.0; cfg.levels.len()],
        Expectation::AtLeast {
            order: cfg.tolerances.order_pass,
        },
    );
    println!("{}", study.summary());
    let passed = study.passed;
    write_report(&common.out, "convergence", &cfg, passed, &study)?;
    if passed {
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "solver order {:.3} below {}",
            study.order, cfg.tolerances.order_pass
        )))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::VerifyAlgebra {
            random_count,
            corrupt_table,
        } => run_verify_algebra(&cli.common, *random_count, *corrupt_table),
        Command::CheckIdentities => run_check_identities(&cli.common),
        Command::Simulate => run_simulate(&cli.common),
        Command::Convergence => run_convergence(&cli.common),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
