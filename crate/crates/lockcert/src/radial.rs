//! Desk-scale corner chains from piecewise rotationally symmetric metrics
//! `g = ds^2 + f(s)^2 * (round sphere metric)`.
//!
//! Spheres of constant `s` have mean curvature `(n-1) f'/f` with respect to
//! the outward normal, and the scalar curvature is
//! `R = (n-1) [-2 f''/f + (n-2)(1 - f'^2)/f^2]`, so curvature hypotheses and
//! mass are exactly computable for fixtures and end-to-end tests.

use thiserror::Error;

use crate::chain::{ChainError, CornerChain, InterfaceData};

/// Points per piece for the sampled scalar-curvature check.
pub const CURVATURE_SAMPLES_PER_PIECE: usize = 1024;

/// RK4 step target for warping-function integration on implicit pieces.
const INTEGRATION_STEP: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RadialError {
    #[error("profile needs at least one piece")]
    EmptyProfile,
    #[error("manifold dimension must be >= 3, got {got}")]
    BadDimension { got: u32 },
    #[error("spherical cap must be the first piece")]
    CapNotFirst,
    #[error("spherical cap must end inside (0, pi), got s_end = {s_end}")]
    CapRange { s_end: f64 },
    #[error("piece {piece} must be the last piece to be semi-infinite")]
    UnboundedInterior { piece: usize },
    #[error("the implicitly-defined end must be the last piece")]
    EndNotLast,
    #[error("piece {piece} has nonpositive extent")]
    NonPositiveExtent { piece: usize },
    #[error("warping function reaches {value} on piece {piece}; it must stay positive")]
    NonPositiveWarp { piece: usize, value: f64 },
    #[error("non-finite parameter in piece {piece}")]
    NonFiniteParameter { piece: usize },
    #[error("end piece starts at f = {f} inside the horizon for mass {mass}")]
    HorizonReached { f: f64, mass: f64 },
    #[error("s = {s} outside piece {piece}")]
    OutOfDomain { piece: usize, s: f64 },
    #[error("s = {s} outside the profile")]
    OutsideProfile { s: f64 },
    #[error("mass functional implemented for n = 3 only, got n = {got}")]
    DimensionUnsupported { got: u32 },
    #[error("last piece is not asymptotically flat")]
    NotAsymptoticallyFlat,
    #[error("profile declares an inner boundary; chains require a smoothly closed center")]
    InnerBoundary,
    #[error("scalar curvature {value} < -tol on piece {piece} at s = {s}")]
    CurvatureHypothesisViolated { piece: usize, s: f64, value: f64 },
    #[error("nonpositive mean curvature {value} on the {side} side of junction {junction}")]
    NonpositiveMeanCurvature {
        junction: usize,
        side: &'static str,
        value: f64,
    },
    #[error(transparent)]
    Chain(#[from] ChainError),
}

/// Warping-function shape of one radial piece.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PieceKind {
    /// `f = f_start + slope * (s - s_start)`.
    Linear { slope: f64 },
    /// `f = sin(s)`; first piece only, starting at the center.
    SphericalCap,
    /// `f` defined by `f' = sqrt(1 - 2 m / f^{n-2})`; last piece,
    /// semi-infinite.
    SchwarzschildEnd { mass: f64 },
}

/// Where a bounded piece stops.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PieceStop {
    AtS(f64),
    /// Stop when the warping function reaches this value (linear pieces).
    AtWarp(f64),
}

/// Builder-facing description of one piece.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PieceSpec {
    Linear {
        slope: f64,
        /// `None` makes this a semi-infinite last piece.
        stop: Option<PieceStop>,
    },
    SphericalCap { s_end: f64 },
    SchwarzschildEnd { mass: f64 },
}

#[derive(Debug, Clone, PartialEq)]
struct Piece {
    kind: PieceKind,
    s_start: f64,
    f_start: f64,
    /// `None` for the semi-infinite last piece.
    s_end: Option<f64>,
}

impl Piece {
    fn contains(&self, s: f64) -> bool {
        s >= self.s_start && self.s_end.is_none_or(|e| s <= e)
    }
}

/// A piecewise rotationally symmetric profile, continuous across junctions
/// by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialProfile {
    n: u32,
    pieces: Vec<Piece>,
    inner_boundary: bool,
}

impl RadialProfile {
    /// Profile closed at the center: the first piece starts at `s = 0` with
    /// `f = 0`.
    pub fn new(n: u32, specs: Vec<PieceSpec>) -> Result<Self, RadialError> {
        Self::build(n, 0.0, false, specs)
    }

    /// Profile with an inner boundary sphere of warping value `f0 > 0` at
    /// `s = 0`. Rejected by [`chain_from_profile`].
    pub fn with_inner_boundary(
        n: u32,
        f0: f64,
        specs: Vec<PieceSpec>,
    ) -> Result<Self, RadialError> {
        if !f0.is_finite() || f0 <= 0.0 {
            return Err(RadialError::NonPositiveWarp { piece: 1, value: f0 });
        }
        Self::build(n, f0, true, specs)
    }

    fn build(
        n: u32,
        f0: f64,
        inner_boundary: bool,
        specs: Vec<PieceSpec>,
    ) -> Result<Self, RadialError> {
        if n < 3 {
            return Err(RadialError::BadDimension { got: n });
        }
        if specs.is_empty() {
            return Err(RadialError::EmptyProfile);
        }
        let last_idx = specs.len() - 1;
        let mut pieces = Vec::with_capacity(specs.len());
        let mut s_cursor = 0.0;
        let mut f_cursor = f0;
        for (idx, spec) in specs.iter().enumerate() {
            let piece_no = idx + 1;
            let is_last = idx == last_idx;
            let piece = match *spec {
                PieceSpec::SphericalCap { s_end } => {
                    if idx != 0 || inner_boundary {
                        return Err(RadialError::CapNotFirst);
                    }
                    if !s_end.is_finite() || s_end <= 0.0 || s_end >= std::f64::consts::PI {
                        return Err(RadialError::CapRange { s_end });
                    }
                    Piece {
                        kind: PieceKind::SphericalCap,
                        s_start: 0.0,
                        f_start: 0.0,
                        s_end: Some(s_end),
                    }
                }
                PieceSpec::Linear { slope, stop } => {
                    if !slope.is_finite() {
                        return Err(RadialError::NonFiniteParameter { piece: piece_no });
                    }
                    let s_end = match stop {
                        None => {
                            if !is_last {
                                return Err(RadialError::UnboundedInterior { piece: piece_no });
                            }
                            if slope < 0.0 {
                                // f eventually turns negative on an
                                // unbounded piece.
                                return Err(RadialError::NonPositiveWarp {
                                    piece: piece_no,
                                    value: f64::NEG_INFINITY,
                                });
                            }
                            None
                        }
                        Some(PieceStop::AtS(s)) => {
                            if !s.is_finite() || s <= s_cursor {
                                return Err(RadialError::NonPositiveExtent { piece: piece_no });
                            }
                            Some(s)
                        }
                        Some(PieceStop::AtWarp(f_target)) => {
                            if !f_target.is_finite() || slope == 0.0 {
                                return Err(RadialError::NonFiniteParameter { piece: piece_no });
                            }
                            let span = (f_target - f_cursor) / slope;
                            if span <= 0.0 {
                                return Err(RadialError::NonPositiveExtent { piece: piece_no });
                            }
                            Some(s_cursor + span)
                        }
                    };
                    // f = 0 is allowed only at the closed center.
                    if f_cursor < 0.0 || (f_cursor == 0.0 && idx != 0) {
                        return Err(RadialError::NonPositiveWarp {
                            piece: piece_no,
                            value: f_cursor,
                        });
                    }
                    if let Some(e) = s_end {
                        let f_end = f_cursor + slope * (e - s_cursor);
                        if f_end <= 0.0 {
                            return Err(RadialError::NonPositiveWarp {
                                piece: piece_no,
                                value: f_end,
                            });
                        }
                    }
                    Piece {
                        kind: PieceKind::Linear { slope },
                        s_start: s_cursor,
                        f_start: f_cursor,
                        s_end,
                    }
                }
                PieceSpec::SchwarzschildEnd { mass } => {
                    if !is_last {
                        return Err(RadialError::EndNotLast);
                    }
                    if !mass.is_finite() {
                        return Err(RadialError::NonFiniteParameter { piece: piece_no });
                    }
                    if f_cursor <= 0.0 {
                        return Err(RadialError::NonPositiveWarp {
                            piece: piece_no,
                            value: f_cursor,
                        });
                    }
                    if schwarzschild_slope_sq(n, mass, f_cursor) <= 0.0 {
                        return Err(RadialError::HorizonReached {
                            f: f_cursor,
                            mass,
                        });
                    }
                    Piece {
                        kind: PieceKind::SchwarzschildEnd { mass },
                        s_start: s_cursor,
                        f_start: f_cursor,
                        s_end: None,
                    }
                }
            };
            if let Some(e) = piece.s_end {
                f_cursor = warp_closed_form(&piece, n, e);
                s_cursor = e;
            }
            pieces.push(piece);
        }
        Ok(Self {
            n,
            pieces,
            inner_boundary,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn piece_count(&self) -> usize {
        self.pieces.len()
    }

    pub fn has_inner_boundary(&self) -> bool {
        self.inner_boundary
    }

    /// `(s, f)` at each interior junction, innermost first.
    pub fn junctions(&self) -> Vec<(f64, f64)> {
        self.pieces
            .windows(2)
            .map(|w| (w[1].s_start, w[1].f_start))
            .collect()
    }

    fn piece(&self, piece: usize) -> Result<&Piece, RadialError> {
        self.pieces
            .get(piece)
            .ok_or(RadialError::OutOfDomain { piece, s: f64::NAN })
    }

    /// Warping value `f(s)` evaluated on the given piece (0-based).
    pub fn warp(&self, piece: usize, s: f64) -> Result<f64, RadialError> {
        let p = self.piece(piece)?;
        if !p.contains(s) {
            return Err(RadialError::OutOfDomain { piece, s });
        }
        Ok(match p.kind {
            PieceKind::Linear { .. } | PieceKind::SphericalCap => {
                warp_closed_form(p, self.n, s)
            }
            PieceKind::SchwarzschildEnd { mass } => {
                integrate_warp(self.n, mass, p.f_start, s - p.s_start)
            }
        })
    }

    /// One-sided `f'(s)` from the given piece.
    pub fn warp_deriv(&self, piece: usize, s: f64) -> Result<f64, RadialError> {
        let p = self.piece(piece)?;
        if !p.contains(s) {
            return Err(RadialError::OutOfDomain { piece, s });
        }
        Ok(match p.kind {
            PieceKind::Linear { slope } => slope,
            PieceKind::SphericalCap => s.cos(),
            PieceKind::SchwarzschildEnd { mass } => {
                let f = integrate_warp(self.n, mass, p.f_start, s - p.s_start);
                schwarzschild_slope_sq(self.n, mass, f).sqrt()
            }
        })
    }

    fn warp_second(&self, p: &Piece, s: f64, f: f64) -> f64 {
        match p.kind {
            PieceKind::Linear { .. } => 0.0,
            PieceKind::SphericalCap => -s.sin(),
            // Differentiating f'^2 = 1 - 2m/f^{n-2}.
            PieceKind::SchwarzschildEnd { mass } => {
                mass * f64::from(self.n - 2) / f.powi(self.n as i32 - 1)
            }
        }
    }

    /// Index of the piece whose domain contains `s`, preferring the outer
    /// piece at junctions.
    pub fn outer_piece_at(&self, s: f64) -> Result<usize, RadialError> {
        self.pieces
            .iter()
            .rposition(|p| p.contains(s))
            .ok_or(RadialError::OutsideProfile { s })
    }
}

fn warp_closed_form(p: &Piece, _n: u32, s: f64) -> f64 {
    match p.kind {
        PieceKind::Linear { slope } => p.f_start + slope * (s - p.s_start),
        PieceKind::SphericalCap => s.sin(),
        PieceKind::SchwarzschildEnd { .. } => unreachable!("no closed form for the end piece"),
    }
}

fn schwarzschild_slope_sq(n: u32, mass: f64, f: f64) -> f64 {
    1.0 - 2.0 * mass / f.powi(n as i32 - 2)
}

/// Fixed-step RK4 for `df/ds = sqrt(1 - 2m/f^{n-2})` over `span`, from
/// `f_start`. The step keeps the mass functional flat to well below 1e-8
/// over desk-scale spans.
fn integrate_warp(n: u32, mass: f64, f_start: f64, span: f64) -> f64 {
    if span == 0.0 {
        return f_start;
    }
    let steps = (span / INTEGRATION_STEP).ceil().max(1.0) as usize;
    let h = span / steps as f64;
    let g = |f: f64| schwarzschild_slope_sq(n, mass, f).max(0.0).sqrt();
    let mut f = f_start;
    for _ in 0..steps {
        let k1 = g(f);
        let k2 = g(f + 0.5 * h * k1);
        let k3 = g(f + 0.5 * h * k2);
        let k4 = g(f + h * k3);
        f += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    f
}

/// Mean curvature `(n-1) f'/f` of the sphere at `s`, one-sided from the
/// named piece, with respect to the outward normal.
pub fn sphere_mean_curvature(
    profile: &RadialProfile,
    piece: usize,
    s: f64,
) -> Result<f64, RadialError> {
    let f = profile.warp(piece, s)?;
    if f <= 0.0 {
        return Err(RadialError::NonPositiveWarp {
            piece: piece + 1,
            value: f,
        });
    }
    let fp = profile.warp_deriv(piece, s)?;
    Ok(f64::from(profile.n() - 1) * fp / f)
}

/// Mean curvature of a constant-`f` sphere in the implicitly-defined end,
/// bypassing the integration.
pub fn schwarzschild_mean_curvature_at_f(n: u32, mass: f64, f: f64) -> Result<f64, RadialError> {
    if n < 3 {
        return Err(RadialError::BadDimension { got: n });
    }
    if !f.is_finite() || f <= 0.0 || !mass.is_finite() {
        return Err(RadialError::HorizonReached { f, mass });
    }
    let slope_sq = schwarzschild_slope_sq(n, mass, f);
    if slope_sq <= 0.0 {
        return Err(RadialError::HorizonReached { f, mass });
    }
    Ok(f64::from(n - 1) * slope_sq.sqrt() / f)
}

/// Scalar curvature `R = (n-1) [-2 f''/f + (n-2)(1 - f'^2)/f^2]` at `s` on
/// the named piece.
pub fn warped_scalar_curvature(
    profile: &RadialProfile,
    piece: usize,
    s: f64,
) -> Result<f64, RadialError> {
    let p = profile.piece(piece)?.clone();
    let f = profile.warp(piece, s)?;
    if f <= 0.0 {
        return Err(RadialError::NonPositiveWarp {
            piece: piece + 1,
            value: f,
        });
    }
    let fp = profile.warp_deriv(piece, s)?;
    let fpp = profile.warp_second(&p, s, f);
    Ok(scalar_curvature_from(profile.n(), f, fp, fpp))
}

fn scalar_curvature_from(n: u32, f: f64, fp: f64, fpp: f64) -> f64 {
    let n1 = f64::from(n - 1);
    let n2 = f64::from(n - 2);
    n1 * (-2.0 * fpp / f + n2 * (1.0 - fp * fp) / (f * f))
}

/// Quasi-local mass `(f/2)(1 - f'^2)` at `s` (n = 3 only), with the
/// one-sided outer derivative at junctions.
pub fn hawking_mass(profile: &RadialProfile, s: f64) -> Result<f64, RadialError> {
    if profile.n() != 3 {
        return Err(RadialError::DimensionUnsupported { got: profile.n() });
    }
    let piece = profile.outer_piece_at(s)?;
    let f = profile.warp(piece, s)?;
    let fp = profile.warp_deriv(piece, s)?;
    Ok(f / 2.0 * (1.0 - fp * fp))
}

/// Limit of the quasi-local mass along the end: the total mass of the
/// profile (n = 3 only).
pub fn adm_mass_limit(profile: &RadialProfile) -> Result<f64, RadialError> {
    if profile.n() != 3 {
        return Err(RadialError::DimensionUnsupported { got: profile.n() });
    }
    let last = profile.pieces.last().expect("profile is non-empty");
    match last.kind {
        PieceKind::SchwarzschildEnd { mass } => Ok(mass),
        PieceKind::Linear { slope } => {
            if last.s_end.is_some() || (slope - 1.0).abs() > 1e-12 {
                Err(RadialError::NotAsymptoticallyFlat)
            } else {
                Ok(0.0)
            }
        }
        PieceKind::SphericalCap => Err(RadialError::NotAsymptoticallyFlat),
    }
}

/// Span used to sample the semi-infinite last piece.
fn sampled_span(p: &Piece) -> f64 {
    8.0 * p.f_start.max(1.0)
}

/// Builds the corner chain of a profile: one interface per interior
/// junction, with the one-sided mean curvatures as samples (constant along
/// each round sphere, repeated `samples_per_interface` times).
///
/// Theorem-mode validation: the profile must close smoothly at the center,
/// the scalar curvature must be `>= -tol` on every piece (exact sign checks
/// where closed forms allow, dense sampling everywhere), and both one-sided
/// mean curvatures must be strictly positive at every junction.
pub fn chain_from_profile(
    profile: &RadialProfile,
    samples_per_interface: usize,
    tol: f64,
) -> Result<CornerChain, RadialError> {
    assert!(samples_per_interface >= 1, "need at least one sample");
    if profile.has_inner_boundary() {
        return Err(RadialError::InnerBoundary);
    }
    if let Some(first) = profile.pieces.first() {
        // Smooth closing: f(0) = 0 with unit slope. The cap does this by
        // construction; a linear first piece must be f = s.
        if let PieceKind::Linear { slope } = first.kind {
            if (slope - 1.0).abs() > 1e-12 {
                return Err(RadialError::NonpositiveMeanCurvature {
                    junction: 0,
                    side: "center",
                    value: slope,
                });
            }
        }
    }

    // Scalar-curvature hypothesis, exact where possible.
    for (idx, p) in profile.pieces.iter().enumerate() {
        match p.kind {
            // R = (n-1)(n-2)(1 - slope^2)/f^2: sign is that of 1 - slope^2.
            PieceKind::Linear { slope } => {
                if slope * slope > 1.0 + tol {
                    let s = p.s_end.unwrap_or(p.s_start + sampled_span(p));
                    return Err(RadialError::CurvatureHypothesisViolated {
                        piece: idx + 1,
                        s,
                        value: warped_scalar_curvature(profile, idx, s).unwrap_or(f64::NAN),
                    });
                }
            }
            // Round sphere: R = n(n-1) > 0. Exterior end: R = 0.
            PieceKind::SphericalCap | PieceKind::SchwarzschildEnd { .. } => {}
        }
        let span_end = p.s_end.unwrap_or(p.s_start + sampled_span(p));
        let lo = if idx == 0 {
            // Skip the coordinate center where f = 0.
            p.s_start + (span_end - p.s_start) / CURVATURE_SAMPLES_PER_PIECE as f64
        } else {
            p.s_start
        };
        // Single forward pass: the implicitly-defined end piece is
        // integrated segment by segment rather than from the junction for
        // every sample.
        let mut s_cursor = p.s_start;
        let mut f_cursor = p.f_start;
        for k in 0..CURVATURE_SAMPLES_PER_PIECE {
            let s = lo + (span_end - lo) * k as f64 / (CURVATURE_SAMPLES_PER_PIECE - 1) as f64;
            let (f, fp, fpp) = match p.kind {
                PieceKind::Linear { slope } => (warp_closed_form(p, profile.n, s), slope, 0.0),
                PieceKind::SphericalCap => (s.sin(), s.cos(), -s.sin()),
                PieceKind::SchwarzschildEnd { mass } => {
                    f_cursor = integrate_warp(profile.n, mass, f_cursor, s - s_cursor);
                    s_cursor = s;
                    let fp = schwarzschild_slope_sq(profile.n, mass, f_cursor).sqrt();
                    let fpp =
                        mass * f64::from(profile.n - 2) / f_cursor.powi(profile.n as i32 - 1);
                    (f_cursor, fp, fpp)
                }
            };
            let r = scalar_curvature_from(profile.n, f, fp, fpp);
            if r < -tol * r.abs().max(1.0) {
                return Err(RadialError::CurvatureHypothesisViolated {
                    piece: idx + 1,
                    s,
                    value: r,
                });
            }
        }
    }

    let mut interfaces = Vec::new();
    for (j, w) in profile.pieces.windows(2).enumerate() {
        let s_j = w[1].s_start;
        let h_minus = sphere_mean_curvature(profile, j, s_j)?;
        let h_plus = sphere_mean_curvature(profile, j + 1, s_j)?;
        if h_minus <= 0.0 {
            return Err(RadialError::NonpositiveMeanCurvature {
                junction: j + 1,
                side: "inner",
                value: h_minus,
            });
        }
        if h_plus <= 0.0 {
            return Err(RadialError::NonpositiveMeanCurvature {
                junction: j + 1,
                side: "outer",
                value: h_plus,
            });
        }
        interfaces.push(InterfaceData::new(
            format!("sigma_{}", j + 1),
            vec![h_minus; samples_per_interface],
            vec![h_plus; samples_per_interface],
        ));
    }
    Ok(CornerChain::new(profile.n(), interfaces, None)?)
}
