//! Brute-force grid oracle for the boost angle: scans the jump margin over a
//! dense angle grid, independently of the closed-form construction.
//!
//! The scan exists to cross-validate [`crate::lock::lock_angle`]: on an
//! admissible interface the grid's best margin can exceed the closed form's
//! by at most the grid resolution times a local Lipschitz constant of the
//! margin. On an inadmissible interface (e.g. an incoming k-trace too large
//! to absorb) the scan demonstrates non-existence numerically by reporting a
//! best margin that stays negative.

use crate::chain::{defect_ledger, CornerChain};
use crate::lock::{self, jump_margin, Boost, LorentzVec};

/// Result of scanning one interface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridScan {
    pub best_theta: f64,
    pub best_margin: f64,
    /// Grid spacing of the scan.
    pub step: f64,
}

/// `min` over the paired samples of the jump margin at angle `theta`.
pub fn margin_at(theta: f64, samples: &[(f64, f64)], a: f64, xi_out: f64) -> f64 {
    let boost = Boost::new(theta);
    samples
        .iter()
        .map(|&(h_minus, h_plus)| {
            let boosted = boost.apply(LorentzVec::new(h_minus, a));
            jump_margin(LorentzVec::new(boosted.t - h_plus, boosted.s - xi_out))
        })
        .fold(f64::INFINITY, f64::min)
}

/// Scans `theta` over `steps` equispaced points in `[lo, hi]` and returns
/// the margin-maximizing grid point.
pub fn scan(
    samples: &[(f64, f64)],
    a: f64,
    xi_out: f64,
    lo: f64,
    hi: f64,
    steps: usize,
) -> GridScan {
    assert!(steps >= 2 && hi > lo, "need a real grid");
    let step = (hi - lo) / (steps - 1) as f64;
    let mut best_theta = lo;
    let mut best_margin = f64::NEG_INFINITY;
    for k in 0..steps {
        let theta = lo + step * k as f64;
        let m = margin_at(theta, samples, a, xi_out);
        if m > best_margin {
            best_margin = m;
            best_theta = theta;
        }
    }
    GridScan {
        best_theta,
        best_margin,
        step,
    }
}

/// Local Lipschitz constant of the margin in `theta`, valid on a
/// neighborhood of `theta_ref` of radius `step`:
/// `|d margin / d theta| <= 2 (max H_minus + a) cosh(theta)`.
pub fn margin_lipschitz(samples: &[(f64, f64)], a: f64, theta_ref: f64, step: f64) -> f64 {
    let h_max = samples
        .iter()
        .map(|&(h_minus, _)| h_minus.abs())
        .fold(0.0_f64, f64::max);
    2.0 * (h_max + a.abs()) * (theta_ref.abs() + step).cosh()
}

/// Per-interface oracle report.
#[derive(Debug, Clone, PartialEq)]
pub struct InterfaceReport {
    pub name: String,
    pub a: f64,
    pub xi_target: f64,
    /// Closed-form angle and its margin; `None` when the closed-form
    /// construction is inapplicable (with the reason).
    pub closed: Option<(f64, f64)>,
    pub closed_error: Option<String>,
    pub grid: GridScan,
    pub lipschitz: f64,
    pub resolution_bound: f64,
    /// The closed-form angle lies outside the scanned range.
    pub range_too_narrow: bool,
    /// The grid beat the closed form by more than the resolution bound.
    pub grid_beats_closed: bool,
}

impl InterfaceReport {
    pub fn flagged(&self) -> bool {
        self.range_too_narrow || self.grid_beats_closed
    }
}

/// Runs the grid oracle on every interface of a chain.
///
/// The ledger supplies the incoming trace `a = c_{l-1}` and the target
/// outgoing trace `xi = c_l` exactly as certificate assembly would; the
/// chain is not required to pass the hypothesis check, so the oracle can
/// probe rejected configurations.
pub fn scan_chain(
    chain: &CornerChain,
    theta_range: f64,
    steps: usize,
    tol: f64,
) -> Vec<InterfaceReport> {
    let ledger = defect_ledger(chain, tol);
    let mut reports = Vec::with_capacity(chain.len());
    for (idx, iface) in chain.interfaces().iter().enumerate() {
        let ell = idx + 1;
        let (lo_bound, _) = chain.bounds()[idx];
        let a = ledger.c[ell - 1];
        let xi_target = ledger.c[ell];
        let samples: Vec<(f64, f64)> = iface
            .samples_minus
            .iter()
            .copied()
            .zip(iface.samples_plus.iter().copied())
            .collect();

        // The effective upper bound the engine would use; fall back to the
        // raw bound when the adjusted radicand is negative so the scan can
        // still run.
        let eff_up = match crate::chain::effective_upper(ell, chain, &ledger, tol) {
            Ok(v) => v,
            Err(_) => chain.bounds()[idx].1,
        };
        let closed_result = lock::lock_angle(lo_bound, eff_up, a, tol);
        let (closed, closed_error) = match closed_result {
            Ok(theta) => (
                Some((theta, margin_at(theta, &samples, a, xi_target))),
                None,
            ),
            Err(e) => (None, Some(e.to_string())),
        };

        let grid = scan(&samples, a, xi_target, -theta_range, theta_range, steps);
        let theta_ref = closed
            .map(|(t, _)| t.abs())
            .unwrap_or(0.0)
            .max(grid.best_theta.abs());
        let lipschitz = margin_lipschitz(&samples, a, theta_ref, grid.step);
        let resolution_bound = lipschitz * grid.step;
        let range_too_narrow = closed
            .map(|(t, _)| t < -theta_range || t > theta_range)
            .unwrap_or(false);
        let grid_beats_closed = closed
            .map(|(_, m)| grid.best_margin - m > resolution_bound)
            .unwrap_or(false);
        reports.push(InterfaceReport {
            name: iface.name.clone(),
            a,
            xi_target,
            closed,
            closed_error,
            grid,
            lipschitz,
            resolution_bound,
            range_too_narrow,
            grid_beats_closed,
        });
    }
    reports
}
