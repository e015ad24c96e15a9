//! lockcert — certify weak dominant-energy jump conditions across chains of
//! corner hypersurfaces in asymptotically flat manifolds.
//!
//! A chain decomposes a manifold along corner hypersurfaces carrying
//! one-sided mean curvatures. When the hypotheses hold (strict positivity, a
//! concave-then-convex bound pattern split at some index, and a nonnegative
//! sum of squared-bound differences), the engine constructs hyperbolic boost
//! angles and a piecewise-constant k-tensor in closed form, then verifies
//! pointwise that the jump vector satisfies `X1 >= |X2|` across every
//! corner. Certificates are machine-checkable and independently re-verified.
//!
//! The crate splits into:
//!
//! - [`lock`] — Minkowski-plane algebra and the closed-form boost angle for
//!   a single interface;
//! - [`chain`] — hypothesis checks, the defect ledger, k-tensor constants,
//!   certificate assembly and re-verification;
//! - [`radial`] — piecewise rotationally symmetric fixtures with exact
//!   curvature and mass;
//! - [`oracle`] — brute-force angle-grid cross-validation;
//! - [`sweep`] — deterministic feasibility sweeps to CSV;
//! - [`docs`], [`cli`] — JSON document schemas and the command-line front
//!   end.
//!
//! Quick start — certify a two-jump chain whose inner corner is
//! mean-concave:
//!
//! ```
//! use lockcert::{build_certificate, verify_certificate, CornerChain, InterfaceData, DEFAULT_TOL};
//!
//! let chain = CornerChain::new(
//!     3,
//!     vec![
//!         InterfaceData::new("sigma_1", vec![1.0], vec![2.0]),
//!         InterfaceData::new("sigma_2", vec![3.0], vec![2.0]),
//!     ],
//!     None,
//! )?;
//! let cert = build_certificate(&chain, DEFAULT_TOL)?;
//! assert_eq!(cert.verdict.token(), "certified");
//! assert!(verify_certificate(&cert, &chain)?);
//! # Ok::<(), lockcert::ChainError>(())
//! ```
//!
//! Each major capability also has a runnable example:
//!
//! ```bash
//! cargo run -p lockcert --example boost_algebra
//! cargo run -p lockcert --example single_corner
//! cargo run -p lockcert --example chain_certificate
//! cargo run -p lockcert --example euclidean_annuli
//! cargo run -p lockcert --example cap_cone_schwarzschild
//! cargo run -p lockcert --example theta_oracle
//! cargo run -p lockcert --example two_jump_sweep
//! ```

pub mod chain;
pub mod cli;
pub mod docs;
pub mod lock;
pub mod oracle;
pub mod radial;
pub mod sweep;

pub use chain::{
    build_certificate, check_hypotheses, defect_ledger, effective_upper, k_constants,
    verify_certificate, ChainClass, ChainError, CornerChain, DefectLedger, HypothesisReport,
    InterfaceData, InterfaceRecord, LockCertificate, RejectReason, Verdict,
};
pub use lock::{
    boost_apply, dec_jump_holds, jump_margin, jump_vector, lock_angle, lorentz_norm_sq,
    verify_interface, xi, Boost, InterfaceVerdict, LemmaInput, LockError, LorentzVec, DEFAULT_TOL,
};
pub use radial::{
    adm_mass_limit, chain_from_profile, hawking_mass, sphere_mean_curvature,
    warped_scalar_curvature, PieceSpec, PieceStop, RadialError, RadialProfile,
};
