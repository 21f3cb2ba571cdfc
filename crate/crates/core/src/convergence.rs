//! Observed order of accuracy from errors measured on a sequence of grids.

use serde::Serialize;

use crate::tolerance;

/// Least-squares slope of `log(error)` against `log(h)`.
pub fn fit_order(h: &[f64], errors: &[f64]) -> f64 {
    assert_eq!(h.len(), errors.len(), "one error per spacing");
    assert!(h.len() >= 2, "need at least two levels");
    let xs: Vec<f64> = h.iter().map(|v| v.ln()).collect();
    let ys: Vec<f64> = errors.iter().map(|v| v.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Orders between consecutive levels, `log(e_k/e_{k+1}) / log(h_k/h_{k+1})`.
pub fn pairwise_orders(h: &[f64], errors: &[f64]) -> Vec<f64> {
    h.windows(2)
        .zip(errors.windows(2))
        .map(|(hw, ew)| (ew[0] / ew[1]).ln() / (hw[0] / hw[1]).ln())
        .collect()
}

/// What a refinement study is expected to show.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    /// Observed order within the band around the nominal order.
    Order { nominal: f64, band: f64 },
    /// Observed order at least this, or every level already at roundoff.
    AtLeast { order: f64 },
    /// The error must not shrink: the configuration is not a solution of the operator.
    Divergent { min_error: f64 },
}

impl Expectation {
    pub fn nominal_second_order() -> Self {
        Expectation::Order {
            nominal: tolerance::NOMINAL_ORDER,
            band: tolerance::ORDER_BAND,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RefinementStudy {
    pub name: String,
    pub levels: Vec<usize>,
    pub h: Vec<f64>,
    pub errors: Vec<f64>,
    /// Magnitude of the terms the error is measured against, per level.
    pub scale: Vec<f64>,
    pub order: f64,
    pub pairwise: Vec<f64>,
    pub at_roundoff: bool,
    pub expectation: Expectation,
    pub passed: bool,
}

impl RefinementStudy {
    pub fn new(
        name: impl Into<String>,
        levels: Vec<usize>,
        h: Vec<f64>,
        errors: Vec<f64>,
        scale: Vec<f64>,
        expectation: Expectation,
    ) -> Self {
        let at_roundoff = errors
            .iter()
            .zip(&scale)
            .all(|(e, s)| *e <= tolerance::ROUNDOFF_FLOOR * s.max(1.0));
        let positive = errors.iter().all(|e| *e > 0.0 && e.is_finite());
        let (order, pairwise) = if positive {
            (fit_order(&h, &errors), pairwise_orders(&h, &errors))
        } else {
            (f64::NAN, vec![f64::NAN; h.len().saturating_sub(1)])
        };
        let passed = match expectation {
            Expectation::Order { nominal, band } => positive && (order - nominal).abs() <= band,
            Expectation::AtLeast { order: min } => at_roundoff || (positive && order >= min),
            Expectation::Divergent { min_error } => {
                errors.iter().all(|e| *e >= min_error) && (!positive || order < 0.5)
            }
        };
        RefinementStudy {
            name: name.into(),
            levels,
            h,
            errors,
            scale,
            order,
            pairwise,
            at_roundoff,
            expectation,
            passed,
        }
    }

    pub fn summary(&self) -> String {
        let errs: Vec<String> = self.errors.iter().map(|e| format!("{e:.3e}")).collect();
        let note = if self.at_roundoff { " (roundoff)" } else { "" };
        format!(
            "{}: errors [{}], order {:.3}{}: {}",
            self.name,
            errs.join(", "),
            self.order,
            note,
            if self.passed { "PASS" } else { "FAIL" }
        )
    }
}
