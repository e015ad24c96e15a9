//! Exact algebra of the Minkowski plane and the closed-form construction of
//! the hyperbolic boost angle that makes a mean-curvature jump satisfy the
//! weak dominant energy condition.
//!
//! The jump condition across a corner is `X1 >= |X2|` for the vector
//! `X = F_theta * (H_minus, a) - (H_plus, xi)`, where `F_theta` is the
//! hyperbolic rotation with `-sinh` off-diagonal entries, `a` is the incoming
//! k-trace constant and `xi` the outgoing one. [`lock_angle`] produces the
//! angle in closed form; [`verify_interface`] checks the inequality at every
//! sample point of the corner hypersurface.

use thiserror::Error;

/// Default relative tolerance for all pass/fail decisions.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Per-interface tolerance scale: `max(1, h_bar_plus)`.
///
/// Degree-1 quantities (margins, jump components) are compared against
/// `tol * scale`; degree-2 quantities (radicands, squared-bound sums,
/// quotient denominators) against `tol * scale^2`.
pub fn bound_scale(h_bar_plus: f64) -> f64 {
    h_bar_plus.max(1.0)
}

/// Errors from the boost-angle construction and interface verification.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LockError {
    #[error("non-finite {what}")]
    NonFinite { what: &'static str },
    #[error("{what} must be strictly positive, got {value}")]
    NonPositiveBound { what: &'static str, value: f64 },
    #[error("incoming trace constant a must be nonnegative, got {value}")]
    NegativeTrace { value: f64 },
    #[error("radicand h_bar_plus^2 - h_low_minus^2 + a^2 = {radicand} is negative")]
    RadicandNegative { radicand: f64 },
    #[error(
        "degenerate angle: a and xi vanish but bounds differ \
         (h_low_minus = {h_low_minus}, h_bar_plus = {h_bar_plus})"
    )]
    DegenerateAngle { h_low_minus: f64, h_bar_plus: f64 },
    #[error(
        "sample {index} out of bounds: H_minus = {h_minus} must be >= {h_low_minus}, \
         H_plus = {h_plus} must be <= {h_bar_plus}"
    )]
    SampleOutOfBounds {
        index: usize,
        h_minus: f64,
        h_plus: f64,
        h_low_minus: f64,
        h_bar_plus: f64,
    },
}

/// A point of the Minkowski plane R^{1,1}.
///
/// The first slot carries mean curvature, the second the k-trace, matching
/// the frame `nu_plus = (1,0)`, `tau_plus = (0,1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzVec {
    pub t: f64,
    pub s: f64,
}

impl LorentzVec {
    pub fn new(t: f64, s: f64) -> Self {
        Self { t, s }
    }

    /// Quadratic form `t^2 - s^2` of R^{1,1}.
    pub fn norm_sq(&self) -> f64 {
        self.t * self.t - self.s * self.s
    }
}

/// Quadratic form `t^2 - s^2` of R^{1,1}.
pub fn lorentz_norm_sq(v: LorentzVec) -> f64 {
    v.norm_sq()
}

/// A hyperbolic rotation of the Minkowski plane with cached cosh/sinh.
#[derive(Debug, Clone, Copy)]
pub struct Boost {
    theta: f64,
    cosh_theta: f64,
    sinh_theta: f64,
}

impl Boost {
    pub fn new(theta: f64) -> Self {
        let sinh_theta = theta.sinh();
        // cosh via sqrt(1 + sinh^2) so the hyperbola relation is exact in
        // the same arithmetic the jump evaluation uses.
        let cosh_theta = sinh_theta.mul_add(sinh_theta, 1.0).sqrt();
        Self {
            theta,
            cosh_theta,
            sinh_theta,
        }
    }

    /// Boost with a prescribed `sinh theta`, bypassing the `asinh`/`sinh`
    /// round trip.
    pub fn from_sinh(sinh_theta: f64) -> Self {
        Self {
            theta: sinh_theta.asinh(),
            cosh_theta: sinh_theta.mul_add(sinh_theta, 1.0).sqrt(),
            sinh_theta,
        }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn cosh_theta(&self) -> f64 {
        self.cosh_theta
    }

    pub fn sinh_theta(&self) -> f64 {
        self.sinh_theta
    }

    /// Applies the matrix with `-sinh theta` off-diagonal entries:
    /// `(cosh t - sinh s, -sinh t + cosh s)`.
    pub fn apply(&self, v: LorentzVec) -> LorentzVec {
        LorentzVec {
            t: self.cosh_theta * v.t - self.sinh_theta * v.s,
            s: -self.sinh_theta * v.t + self.cosh_theta * v.s,
        }
    }
}

/// Applies the boost of angle `theta` to `v`.
pub fn boost_apply(theta: f64, v: LorentzVec) -> LorentzVec {
    Boost::new(theta).apply(v)
}

/// Outgoing k-trace `xi = sqrt(h_bar_plus^2 - h_low_minus^2 + a^2)`.
///
/// A radicand within `tol * scale^2` of zero snaps to exactly zero, so that
/// adjusted interfaces (whose radicand vanishes identically in real
/// arithmetic) record `xi = 0` rather than sqrt of rounding noise.
pub fn xi(h_bar_plus: f64, h_low_minus: f64, a: f64, tol: f64) -> Result<f64, LockError> {
    let radicand = h_bar_plus * h_bar_plus - h_low_minus * h_low_minus + a * a;
    let scale = bound_scale(h_bar_plus);
    let snap = tol * scale * scale;
    if radicand < -snap {
        return Err(LockError::RadicandNegative { radicand });
    }
    if radicand <= snap {
        return Ok(0.0);
    }
    Ok(radicand.sqrt())
}

/// `sinh theta` of the lock angle, via the conjugate-multiplied form
/// `(h_low^2 - h_bar^2) / (a h_bar + xi h_low)`.
///
/// This is the algebraic unification of the two closed-form branches: it is
/// regular at `h_low = a` (where the raw quotient is 0/0) and reproduces
/// `theta = ln h_low - ln h_bar` there. The raw quotient
/// `(a h_bar - xi h_low) / (h_low^2 - a^2)` is used only when the conjugate
/// denominator vanishes, which requires both `a` and `xi` near zero.
fn lock_angle_sinh(
    h_low_minus: f64,
    h_bar_plus: f64,
    a: f64,
    xi_val: f64,
    tol: f64,
) -> Result<f64, LockError> {
    let scale = bound_scale(h_bar_plus);
    let denom_stable = a * h_bar_plus + xi_val * h_low_minus;
    if denom_stable > tol * scale * scale {
        return Ok((h_low_minus * h_low_minus - h_bar_plus * h_bar_plus) / denom_stable);
    }
    // a ~ 0 and xi ~ 0: consistent inputs force h_low ~ h_bar.
    if (h_low_minus - h_bar_plus).abs() > tol * scale {
        return Err(LockError::DegenerateAngle {
            h_low_minus,
            h_bar_plus,
        });
    }
    let denom_raw = h_low_minus * h_low_minus - a * a;
    Ok((a * h_bar_plus - xi_val * h_low_minus) / denom_raw)
}

/// The hyperbolic lock angle for bounds `(h_low_minus, h_bar_plus)` and
/// incoming trace `a`.
pub fn lock_angle(h_low_minus: f64, h_bar_plus: f64, a: f64, tol: f64) -> Result<f64, LockError> {
    let xi_val = xi(h_bar_plus, h_low_minus, a, tol)?;
    Ok(lock_angle_sinh(h_low_minus, h_bar_plus, a, xi_val, tol)?.asinh())
}

/// Jump vector `X = F_theta (h_minus, a) - (h_plus, xi_out)`.
pub fn jump_vector(theta: f64, h_minus: f64, a: f64, h_plus: f64, xi_out: f64) -> LorentzVec {
    jump_vector_boosted(&Boost::new(theta), h_minus, a, h_plus, xi_out)
}

fn jump_vector_boosted(b: &Boost, h_minus: f64, a: f64, h_plus: f64, xi_out: f64) -> LorentzVec {
    let boosted = b.apply(LorentzVec::new(h_minus, a));
    LorentzVec::new(boosted.t - h_plus, boosted.s - xi_out)
}

/// Weak dominant-energy jump condition `X1 >= |X2|`, up to `tol * scale`.
pub fn dec_jump_holds(x: LorentzVec, tol: f64, scale: f64) -> bool {
    x.t - x.s.abs() >= -tol * scale
}

/// Margin `X1 - |X2|` of the jump condition.
pub fn jump_margin(x: LorentzVec) -> f64 {
    x.t - x.s.abs()
}

/// One corner's lemma data: curvature bounds, incoming trace constant, and
/// the paired one-sided mean-curvature samples along the hypersurface.
#[derive(Debug, Clone, PartialEq)]
pub struct LemmaInput {
    pub h_low_minus: f64,
    pub h_bar_plus: f64,
    pub a: f64,
    pub samples: Vec<(f64, f64)>,
}

impl LemmaInput {
    /// Validates finiteness, positivity of the bounds and `a >= 0`.
    ///
    /// The theorem only ever uses `a = c_{l-1} >= 0`; negative `a` is
    /// rejected rather than guessed at. The radicand condition and sample
    /// bounds are checked where they are consumed ([`xi`],
    /// [`verify_interface`]).
    pub fn new(
        h_low_minus: f64,
        h_bar_plus: f64,
        a: f64,
        samples: Vec<(f64, f64)>,
    ) -> Result<Self, LockError> {
        if !h_low_minus.is_finite() || !h_bar_plus.is_finite() || !a.is_finite() {
            return Err(LockError::NonFinite { what: "bounds" });
        }
        if samples.iter().any(|(m, p)| !m.is_finite() || !p.is_finite()) {
            return Err(LockError::NonFinite { what: "samples" });
        }
        if h_low_minus <= 0.0 {
            return Err(LockError::NonPositiveBound {
                what: "h_low_minus",
                value: h_low_minus,
            });
        }
        if h_bar_plus <= 0.0 {
            return Err(LockError::NonPositiveBound {
                what: "h_bar_plus",
                value: h_bar_plus,
            });
        }
        if a < 0.0 {
            return Err(LockError::NegativeTrace { value: a });
        }
        Ok(Self {
            h_low_minus,
            h_bar_plus,
            a,
            samples,
        })
    }
}

/// Outcome of verifying the jump condition at every sample of one corner.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterfaceVerdict {
    pub theta: f64,
    pub xi: f64,
    /// `min` over samples of `X1 - |X2|`.
    pub min_margin: f64,
    pub pass: bool,
}

/// Computes the lock angle for `input` and evaluates the jump vector at every
/// sample, using `xi_out` as the outgoing k-trace.
///
/// `xi_out` is a caller-supplied value (in the chain it is the ledger
/// constant `c_l`); it must agree with `xi(h_bar_plus, h_low_minus, a)` for
/// the pass guarantee to apply.
pub fn verify_interface(
    input: &LemmaInput,
    xi_out: f64,
    tol: f64,
) -> Result<InterfaceVerdict, LockError> {
    let scale = bound_scale(input.h_bar_plus);
    let slack = tol * scale;
    for (index, &(h_minus, h_plus)) in input.samples.iter().enumerate() {
        if h_minus < input.h_low_minus - slack || h_plus > input.h_bar_plus + slack {
            return Err(LockError::SampleOutOfBounds {
                index,
                h_minus,
                h_plus,
                h_low_minus: input.h_low_minus,
                h_bar_plus: input.h_bar_plus,
            });
        }
    }
    let xi_val = xi(input.h_bar_plus, input.h_low_minus, input.a, tol)?;
    let boost = Boost::from_sinh(lock_angle_sinh(
        input.h_low_minus,
        input.h_bar_plus,
        input.a,
        xi_val,
        tol,
    )?);
    let min_margin = input
        .samples
        .iter()
        .map(|&(h_minus, h_plus)| {
            jump_margin(jump_vector_boosted(&boost, h_minus, input.a, h_plus, xi_out))
        })
        .fold(f64::INFINITY, f64::min);
    Ok(InterfaceVerdict {
        theta: boost.theta(),
        xi: xi_out,
        min_margin,
        pass: min_margin >= -tol * scale,
    })
}
