//! Named tolerances shared by the runtime path checks, the verification suites and
//! the CLI report.

/// Absolute agreement for exact algebraic identities on O(1) data.
pub const EXACT: f64 = 1e-12;

/// Random-octon oracle and associativity checks, relative to operand norms.
pub const ORACLE_RELATIVE: f64 = 1e-12;

/// Classical dot/cross correspondence for scalar and vector products.
pub const GIBBS: f64 = 1e-13;

/// Octonic vs classical residual paths for the Maxwell grades and the matter pairs,
/// scaled by the magnitude of the terms entering the residual.
pub const MAXWELL_PATH: f64 = 1e-12;

/// Octonic vs classical paths for the quadratic energy/momentum/invariant relations,
/// scaled by the product of field and residual-term magnitudes.
pub const RELATION_PATH: f64 = 1e-11;

/// Nominal order of every stencil in the crate.
pub const NOMINAL_ORDER: f64 = 2.0;

/// Allowed deviation of an observed order from [`NOMINAL_ORDER`] in the acceptance suite.
pub const ORDER_BAND: f64 = 0.2;

/// Minimum observed order for a PASS in `check-identities`.
pub const ORDER_PASS: f64 = 1.8;

/// Below this relative size a residual is indistinguishable from round-off and is
/// classed as identically zero instead of fitted for an order.
pub const ROUNDOFF_FLOOR: f64 = 1e-9;

/// Default CFL ceiling enforced by the solver.
pub const CFL_MAX: f64 = 0.5;
