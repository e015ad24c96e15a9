//! Orchestrates the full corner-chain certification procedure: hypothesis
//! checking, the defect ledger, the piecewise k-tensor constants,
//! per-interface effective bounds, and assembly plus independent
//! re-verification of the lock certificate.

use thiserror::Error;

use crate::lock::{self, jump_margin, jump_vector, LemmaInput, LockError};

/// Errors from chain construction and certificate assembly.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChainError {
    #[error("chain needs at least 2 interfaces, got {got}")]
    TooFewInterfaces { got: usize },
    #[error("manifold dimension must be >= 3, got {got}")]
    BadDimension { got: u32 },
    #[error("lambda = {lambda} out of range: need 1 <= lambda < {n_interfaces}")]
    BadLambda { lambda: usize, n_interfaces: usize },
    #[error("interface {interface}: empty samples")]
    EmptySamples { interface: usize },
    #[error("interface {interface}: samples_minus and samples_plus lengths differ ({minus} vs {plus})")]
    MismatchedSamples {
        interface: usize,
        minus: usize,
        plus: usize,
    },
    #[error("interface {interface}: non-finite sample or bound")]
    NonFiniteData { interface: usize },
    #[error(
        "interface {interface}: override {which} = {value} is inconsistent with the samples \
         (would exclude sample {sample})"
    )]
    OverrideInconsistent {
        interface: usize,
        which: &'static str,
        value: f64,
        sample: f64,
    },
    #[error("hypotheses not checked: {reason}")]
    HypothesesNotChecked { reason: String },
    #[error(
        "invariant breach at interface {interface}: adjusted upper bound \
         (radicand {radicand}) conflicts with the ledger"
    )]
    InvariantBreach { interface: usize, radicand: f64 },
    #[error("interface {interface}: {source}")]
    Interface {
        interface: usize,
        #[source]
        source: LockError,
    },
    #[error("certificate and chain are structurally inconsistent: {what}")]
    StructuralMismatch { what: String },
}

/// One corner hypersurface: paired one-sided mean-curvature samples plus
/// optional bound overrides.
#[derive(Debug, Clone, PartialEq)]
pub struct InterfaceData {
    pub name: String,
    pub samples_minus: Vec<f64>,
    pub samples_plus: Vec<f64>,
    /// Override for `min(samples_minus)`; must not exceed it.
    pub bound_low_minus: Option<f64>,
    /// Override for `max(samples_plus)`; must not fall below it.
    pub bound_up_plus: Option<f64>,
}

impl InterfaceData {
    pub fn new(name: impl Into<String>, samples_minus: Vec<f64>, samples_plus: Vec<f64>) -> Self {
        Self {
            name: name.into(),
            samples_minus,
            samples_plus,
            bound_low_minus: None,
            bound_up_plus: None,
        }
    }

    pub fn sample_count(&self) -> usize {
        self.samples_minus.len()
    }

    fn validate(&self, interface: usize) -> Result<(), ChainError> {
        if self.samples_minus.is_empty() || self.samples_plus.is_empty() {
            return Err(ChainError::EmptySamples { interface });
        }
        if self.samples_minus.len() != self.samples_plus.len() {
            return Err(ChainError::MismatchedSamples {
                interface,
                minus: self.samples_minus.len(),
                plus: self.samples_plus.len(),
            });
        }
        let finite = self
            .samples_minus
            .iter()
            .chain(self.samples_plus.iter())
            .all(|v| v.is_finite())
            && self.bound_low_minus.is_none_or(f64::is_finite)
            && self.bound_up_plus.is_none_or(f64::is_finite);
        if !finite {
            return Err(ChainError::NonFiniteData { interface });
        }
        self.effective_bounds_impl(interface)?;
        Ok(())
    }

    fn effective_bounds_impl(&self, interface: usize) -> Result<(f64, f64), ChainError> {
        let min_minus = self
            .samples_minus
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        let max_plus = self
            .samples_plus
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max);
        if self.samples_minus.is_empty() || self.samples_plus.is_empty() {
            return Err(ChainError::EmptySamples { interface });
        }
        let low = match self.bound_low_minus {
            Some(b) if b > min_minus => {
                return Err(ChainError::OverrideInconsistent {
                    interface,
                    which: "bound_low_minus",
                    value: b,
                    sample: min_minus,
                })
            }
            Some(b) => b,
            None => min_minus,
        };
        let up = match self.bound_up_plus {
            Some(b) if b < max_plus => {
                return Err(ChainError::OverrideInconsistent {
                    interface,
                    which: "bound_up_plus",
                    value: b,
                    sample: max_plus,
                })
            }
            Some(b) => b,
            None => max_plus,
        };
        Ok((low, up))
    }

    /// Effective `(H_low_minus, H_bar_plus)`: sample min/max unless widened
    /// by an override.
    pub fn effective_bounds(&self) -> Result<(f64, f64), ChainError> {
        self.effective_bounds_impl(0)
    }
}

/// Effective bounds of one interface (free-function form of
/// [`InterfaceData::effective_bounds`]).
pub fn effective_bounds(iface: &InterfaceData) -> Result<(f64, f64), ChainError> {
    iface.effective_bounds()
}

/// The full decomposition: dimension, inner-to-outer interface list, and an
/// optional split index Lambda (1-based; auto-detected when absent).
#[derive(Debug, Clone, PartialEq)]
pub struct CornerChain {
    n: u32,
    interfaces: Vec<InterfaceData>,
    lambda: Option<usize>,
    bounds: Vec<(f64, f64)>,
}

impl CornerChain {
    pub fn new(
        n: u32,
        interfaces: Vec<InterfaceData>,
        lambda: Option<usize>,
    ) -> Result<Self, ChainError> {
        if n < 3 {
            return Err(ChainError::BadDimension { got: n });
        }
        if interfaces.len() < 2 {
            return Err(ChainError::TooFewInterfaces {
                got: interfaces.len(),
            });
        }
        if let Some(l) = lambda {
            if l < 1 || l >= interfaces.len() {
                return Err(ChainError::BadLambda {
                    lambda: l,
                    n_interfaces: interfaces.len(),
                });
            }
        }
        let mut bounds = Vec::with_capacity(interfaces.len());
        for (i, iface) in interfaces.iter().enumerate() {
            iface.validate(i + 1)?;
            bounds.push(iface.effective_bounds_impl(i + 1)?);
        }
        Ok(Self {
            n,
            interfaces,
            lambda,
            bounds,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of interfaces N.
    pub fn len(&self) -> usize {
        self.interfaces.len()
    }

    pub fn is_empty(&self) -> bool {
        false // N >= 2 by construction
    }

    pub fn interfaces(&self) -> &[InterfaceData] {
        &self.interfaces
    }

    pub fn lambda(&self) -> Option<usize> {
        self.lambda
    }

    /// Cached effective bounds, one pair per interface.
    pub fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    /// One tolerance scale per chain: `max(1, all effective bounds)`.
    pub fn scale(&self) -> f64 {
        self.bounds
            .iter()
            .fold(1.0_f64, |acc, &(lo, up)| acc.max(lo).max(up))
    }

    /// `sum_i (H_low_minus_i^2 - H_bar_plus_i^2)`.
    pub fn square_sum(&self) -> f64 {
        self.bounds
            .iter()
            .map(|&(lo, up)| lo * lo - up * up)
            .sum()
    }
}

/// Why a chain fails the theorem hypotheses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RejectReason {
    /// Some mean-curvature sample or bound is not strictly positive.
    Positivity,
    /// No split index gives the concave-then-convex bound pattern.
    NoValidLambda,
    /// The square-sum condition fails.
    SquareSum,
}

impl RejectReason {
    pub fn token(&self) -> &'static str {
        match self {
            RejectReason::Positivity => "rejected-positivity",
            RejectReason::NoValidLambda => "rejected-no-valid-lambda",
            RejectReason::SquareSum => "rejected-square-sum",
        }
    }
}

impl std::fmt::Display for RejectReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RejectReason::Positivity => write!(f, "mean curvatures must be strictly positive"),
            RejectReason::NoValidLambda => write!(
                f,
                "no split index Lambda gives the concave-then-convex bound pattern"
            ),
            RejectReason::SquareSum => {
                write!(f, "sum of squared-bound differences is negative")
            }
        }
    }
}

/// Overall classification of a chain.
#[derive(Debug, Clone, PartialEq)]
pub enum ChainClass {
    /// Hypotheses hold and some defect is positive: the boost construction
    /// is needed.
    TheoremApplies,
    /// Hypotheses hold and every defect is nonpositive: the time-symmetric
    /// fallback suffices, no boost needed.
    MiaoCase,
    Rejected(RejectReason),
}

/// Result of checking the theorem hypotheses on a chain.
#[derive(Debug, Clone, PartialEq)]
pub struct HypothesisReport {
    pub positivity_ok: bool,
    pub lambda_pattern_ok: bool,
    /// The split index in effect (given or smallest valid).
    pub lambda: Option<usize>,
    /// All valid split indices; more than one means flat jumps made the
    /// choice ambiguous.
    pub lambda_candidates: Vec<usize>,
    pub square_sum: f64,
    pub square_sum_ok: bool,
    pub overall: ChainClass,
}

/// Checks strict positivity, the two-sided Lambda pattern, and the
/// square-sum condition; classifies the chain.
pub fn check_hypotheses(chain: &CornerChain, tol: f64) -> HypothesisReport {
    let scale = chain.scale();
    let slack = tol * scale;

    let positivity_ok = chain.interfaces.iter().all(|iface| {
        iface
            .samples_minus
            .iter()
            .chain(iface.samples_plus.iter())
            .all(|&v| v > 0.0)
    }) && chain.bounds.iter().all(|&(lo, up)| lo > 0.0 && up > 0.0);

    let n_ifaces = chain.len();
    let pattern_holds = |lambda: usize| -> bool {
        chain.bounds.iter().enumerate().all(|(idx, &(lo, up))| {
            if idx < lambda {
                lo <= up + slack
            } else {
                lo >= up - slack
            }
        })
    };
    let lambda_candidates: Vec<usize> = (1..n_ifaces).filter(|&l| pattern_holds(l)).collect();
    let (lambda, lambda_pattern_ok) = match chain.lambda {
        Some(l) => (Some(l), pattern_holds(l)),
        None => (lambda_candidates.first().copied(), !lambda_candidates.is_empty()),
    };

    let square_sum = chain.square_sum();
    let square_sum_ok = square_sum >= -tol * scale * scale;

    let overall = if !positivity_ok {
        ChainClass::Rejected(RejectReason::Positivity)
    } else if !lambda_pattern_ok {
        ChainClass::Rejected(RejectReason::NoValidLambda)
    } else if !square_sum_ok {
        ChainClass::Rejected(RejectReason::SquareSum)
    } else if defect_ledger(chain, tol).lambda_prime.is_none() {
        ChainClass::MiaoCase
    } else {
        ChainClass::TheoremApplies
    };

    HypothesisReport {
        positivity_ok,
        lambda_pattern_ok,
        lambda,
        lambda_candidates,
        square_sum,
        square_sum_ok,
        overall,
    }
}

/// The defect sequences `d_0..d_N`, `c_0..c_N` and the last index with
/// positive defect.
#[derive(Debug, Clone, PartialEq)]
pub struct DefectLedger {
    /// Raw prefix sums of `H_bar_plus^2 - H_low_minus^2`, `d_0 = 0`.
    pub d: Vec<f64>,
    /// `c_l = sqrt(max(d_l, 0))`, with defects inside the tolerance band
    /// treated as zero so `c_N` closes exactly.
    pub c: Vec<f64>,
    /// Maximal index with `d > 0` (beyond tolerance); absent when every
    /// defect is nonpositive.
    pub lambda_prime: Option<usize>,
}

/// Builds the defect ledger from the chain's effective bounds.
pub fn defect_ledger(chain: &CornerChain, tol: f64) -> DefectLedger {
    let scale = chain.scale();
    let snap = tol * scale * scale;
    let mut d = Vec::with_capacity(chain.len() + 1);
    let mut c = Vec::with_capacity(chain.len() + 1);
    d.push(0.0);
    c.push(0.0);
    let mut acc = 0.0;
    let mut lambda_prime = None;
    for (idx, &(lo, up)) in chain.bounds.iter().enumerate() {
        acc += up * up - lo * lo;
        d.push(acc);
        if acc > snap {
            c.push(acc.sqrt());
            lambda_prime = Some(idx + 1);
        } else {
            c.push(0.0);
        }
    }
    DefectLedger { d, c, lambda_prime }
}

/// `c_l / (n - 1)` for `l = 0..=N`: the constants scaling the round metric
/// into the piecewise tensor k.
pub fn k_constants(ledger: &DefectLedger, n: u32) -> Vec<f64> {
    let denom = f64::from(n - 1);
    ledger.c.iter().map(|c| c / denom).collect()
}

/// Effective upper bound fed to the boost construction at interface `ell`
/// (1-based): the raw bound up to lambda_prime, the adjusted
/// `sqrt(H_low_minus^2 - c_{l-1}^2)` past it.
pub fn effective_upper(
    ell: usize,
    chain: &CornerChain,
    ledger: &DefectLedger,
    tol: f64,
) -> Result<f64, ChainError> {
    assert!(ell >= 1 && ell <= chain.len(), "interface index out of range");
    let (lo, up) = chain.bounds[ell - 1];
    if ledger.lambda_prime.is_some_and(|lp| ell <= lp) {
        return Ok(up);
    }
    let a = ledger.c[ell - 1];
    let radicand = lo * lo - a * a;
    if radicand < 0.0 {
        return Err(ChainError::InvariantBreach {
            interface: ell,
            radicand,
        });
    }
    let adjusted = radicand.sqrt();
    let scale = chain.scale();
    if adjusted < up - tol * scale {
        // The adjusted bound must dominate the raw one whenever the
        // hypotheses hold; falling below it means the ledger is corrupt.
        return Err(ChainError::InvariantBreach {
            interface: ell,
            radicand,
        });
    }
    Ok(adjusted)
}

/// Per-interface certificate record.
#[derive(Debug, Clone, PartialEq)]
pub struct InterfaceRecord {
    pub name: String,
    /// Incoming k-trace constant `c_{l-1}`.
    pub a: f64,
    /// The upper bound the boost construction used (raw or adjusted).
    pub effective_up: f64,
    /// Outgoing k-trace `c_l`.
    pub xi: f64,
    pub theta: f64,
    pub min_margin: f64,
    pub sample_count: usize,
}

/// Chain verdict carried by a certificate.
#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Certified,
    /// All defects nonpositive; no boost needed. `bound_level_interfaces`
    /// lists interfaces whose pointwise margin was negative, i.e. that rely
    /// on the bound-level (not pointwise) reduction; empty in practice.
    CertifiedMiaoCase { bound_level_interfaces: Vec<usize> },
    Failed { interface: usize, reason: String },
}

impl Verdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, Verdict::Certified | Verdict::CertifiedMiaoCase { .. })
    }

    pub fn token(&self) -> &'static str {
        match self {
            Verdict::Certified => "certified",
            Verdict::CertifiedMiaoCase { .. } => "certified-miao-case",
            Verdict::Failed { .. } => "failed",
        }
    }
}

/// The lock-principle initial data for a chain: boost angles, k-tensor
/// constants, per-interface jump margins, and the verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct LockCertificate {
    pub n: u32,
    pub tol: f64,
    /// Chain-level tolerance scale the verdict used.
    pub scale: f64,
    pub square_sum: f64,
    pub lambda: Option<usize>,
    pub ledger: DefectLedger,
    pub interfaces: Vec<InterfaceRecord>,
    pub k_factors: Vec<f64>,
    pub verdict: Verdict,
}

impl LockCertificate {
    pub fn sample_counts(&self) -> Vec<usize> {
        self.interfaces.iter().map(|r| r.sample_count).collect()
    }
}

/// Runs the full certification procedure on a chain.
///
/// Refuses chains that fail [`check_hypotheses`]; otherwise always returns a
/// certificate, whose verdict is `Failed` if any interface margin falls
/// below tolerance (which the lemma rules out for admissible inputs — a
/// `Failed` verdict on a hypothesis-passing chain indicates a bug).
pub fn build_certificate(chain: &CornerChain, tol: f64) -> Result<LockCertificate, ChainError> {
    let report = check_hypotheses(chain, tol);
    let class = match report.overall {
        ChainClass::Rejected(reason) => {
            return Err(ChainError::HypothesesNotChecked {
                reason: reason.to_string(),
            })
        }
        class => class,
    };
    let ledger = defect_ledger(chain, tol);
    let k_factors = k_constants(&ledger, chain.n());
    let scale = chain.scale();
    let mut records = Vec::with_capacity(chain.len());

    match class {
        ChainClass::MiaoCase => {
            for (idx, iface) in chain.interfaces.iter().enumerate() {
                let (_, up) = chain.bounds[idx];
                let min_margin = iface
                    .samples_minus
                    .iter()
                    .zip(&iface.samples_plus)
                    .map(|(m, p)| m - p)
                    .fold(f64::INFINITY, f64::min);
                records.push(InterfaceRecord {
                    name: iface.name.clone(),
                    a: 0.0,
                    effective_up: up,
                    xi: 0.0,
                    theta: 0.0,
                    min_margin,
                    sample_count: iface.sample_count(),
                });
            }
            let bound_level_interfaces: Vec<usize> = records
                .iter()
                .enumerate()
                .filter(|(_, r)| r.min_margin < -tol * scale)
                .map(|(idx, _)| idx + 1)
                .collect();
            Ok(LockCertificate {
                n: chain.n(),
                tol,
                scale,
                square_sum: report.square_sum,
                lambda: report.lambda,
                ledger,
                interfaces: records,
                k_factors,
                verdict: Verdict::CertifiedMiaoCase {
                    bound_level_interfaces,
                },
            })
        }
        ChainClass::TheoremApplies => {
            for (idx, iface) in chain.interfaces.iter().enumerate() {
                let ell = idx + 1;
                let tag = |source: LockError| ChainError::Interface {
                    interface: ell,
                    source,
                };
                let (lo, _) = chain.bounds[idx];
                let a = ledger.c[ell - 1];
                let eff_up = effective_upper(ell, chain, &ledger, tol)?;
                let xi_out = lock::xi(eff_up, lo, a, tol).map_err(tag)?;
                let samples: Vec<(f64, f64)> = iface
                    .samples_minus
                    .iter()
                    .copied()
                    .zip(iface.samples_plus.iter().copied())
                    .collect();
                let input = LemmaInput::new(lo, eff_up, a, samples).map_err(tag)?;
                let verdict = lock::verify_interface(&input, xi_out, tol).map_err(tag)?;
                records.push(InterfaceRecord {
                    name: iface.name.clone(),
                    a,
                    effective_up: eff_up,
                    xi: xi_out,
                    theta: verdict.theta,
                    min_margin: verdict.min_margin,
                    sample_count: iface.sample_count(),
                });
            }
            let verdict = match records
                .iter()
                .position(|r| r.min_margin < -tol * scale)
            {
                None => Verdict::Certified,
                Some(idx) => Verdict::Failed {
                    interface: idx + 1,
                    reason: format!(
                        "jump margin {} below tolerance at interface {}",
                        records[idx].min_margin,
                        idx + 1
                    ),
                },
            };
            Ok(LockCertificate {
                n: chain.n(),
                tol,
                scale,
                square_sum: report.square_sum,
                lambda: report.lambda,
                ledger,
                interfaces: records,
                k_factors,
                verdict,
            })
        }
        ChainClass::Rejected(_) => unreachable!("rejected chains returned above"),
    }
}

/// Independently re-checks a certificate against a chain.
///
/// Trusts only the jump inequality: every jump vector is recomputed from the
/// certificate's recorded `(a, xi, theta)` against the chain's samples,
/// without re-deriving the angle, and the ledger invariants
/// (`c_l^2 = max(d_l, 0)`, `k_N = 0`, the defect recursion) are re-checked
/// from the chain's bounds.
pub fn verify_certificate(
    cert: &LockCertificate,
    chain: &CornerChain,
) -> Result<bool, ChainError> {
    let n_ifaces = chain.len();
    if cert.interfaces.len() != n_ifaces {
        return Err(ChainError::StructuralMismatch {
            what: format!(
                "certificate has {} interfaces, chain has {}",
                cert.interfaces.len(),
                n_ifaces
            ),
        });
    }
    if cert.ledger.d.len() != n_ifaces + 1
        || cert.ledger.c.len() != n_ifaces + 1
        || cert.k_factors.len() != n_ifaces + 1
    {
        return Err(ChainError::StructuralMismatch {
            what: "ledger or k-factor length does not match the chain".into(),
        });
    }
    for (idx, (rec, iface)) in cert.interfaces.iter().zip(chain.interfaces()).enumerate() {
        if rec.sample_count != iface.sample_count() {
            return Err(ChainError::StructuralMismatch {
                what: format!("sample count mismatch at interface {}", idx + 1),
            });
        }
    }

    let tol = cert.tol;
    let scale = chain.scale();
    let snap = tol * scale * scale;

    // Ledger invariants, re-derived from the chain.
    if cert.ledger.d[0] != 0.0 || cert.ledger.c[0] != 0.0 {
        return Ok(false);
    }
    for (idx, &(lo, up)) in chain.bounds().iter().enumerate() {
        let increment = up * up - lo * lo;
        let d_prev = cert.ledger.d[idx];
        let d_here = cert.ledger.d[idx + 1];
        if (d_here - d_prev - increment).abs() > snap {
            return Ok(false);
        }
        let c_here = cert.ledger.c[idx + 1];
        if (c_here * c_here - d_here.max(0.0)).abs() > snap {
            return Ok(false);
        }
    }
    let denom = f64::from(cert.n - 1);
    for (k, c) in cert.k_factors.iter().zip(&cert.ledger.c) {
        if (k - c / denom).abs() > tol * scale {
            return Ok(false);
        }
    }
    if cert.k_factors[n_ifaces].abs() > tol * scale {
        return Ok(false);
    }

    // Jump margins from the recorded data, at every sample.
    for (rec, iface) in cert.interfaces.iter().zip(chain.interfaces()) {
        let min_margin = iface
            .samples_minus
            .iter()
            .zip(&iface.samples_plus)
            .map(|(&h_minus, &h_plus)| {
                jump_margin(jump_vector(rec.theta, h_minus, rec.a, h_plus, rec.xi))
            })
            .fold(f64::INFINITY, f64::min);
        if min_margin < -tol * scale {
            return Ok(false);
        }
    }
    Ok(true)
}
