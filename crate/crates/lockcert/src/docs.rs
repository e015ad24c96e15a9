//! JSON document schemas for chain specs, profile specs and certificates,
//! plus deterministic serialization and atomic file output.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chain::{
    ChainError, CornerChain, DefectLedger, InterfaceData, InterfaceRecord, LockCertificate,
    Verdict,
};
use crate::lock::DEFAULT_TOL;
use crate::radial::{PieceSpec, PieceStop, RadialError, RadialProfile};

/// Schema version accepted and emitted by every document type.
pub const SCHEMA_VERSION: u32 = 1;

/// Frame convention note carried by certificates.
pub const CONVENTION_NOTE: &str = "frame nu_plus = (1,0), tau_plus = (0,1); beta terms \
     identically zero; slot 1 carries mean curvature, slot 2 the k-trace";

/// Hypotheses a certificate cannot check for abstract chains.
pub const UNCHECKED_HYPOTHESES: &[&str] = &["spin structure of the underlying manifold"];

/// Floats in CSV output: 17 significant digits, enough to round-trip every
/// double exactly.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Error)]
pub enum DocError {
    #[error("io: {0}")]
    Io(#[from] io::Error),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported schema_version {found} (expected {SCHEMA_VERSION})")]
    UnsupportedSchema { found: u32 },
    #[error("validation: {0}")]
    Validation(String),
}

impl From<serde_json::Error> for DocError {
    fn from(e: serde_json::Error) -> Self {
        DocError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

impl From<ChainError> for DocError {
    fn from(e: ChainError) -> Self {
        DocError::Validation(e.to_string())
    }
}

impl From<RadialError> for DocError {
    fn from(e: RadialError) -> Self {
        DocError::Validation(e.to_string())
    }
}

/// Writes `bytes` to `path` via a temp file in the same directory plus
/// rename, so readers never observe a partial document.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let stem = path
        .file_name()
        .and_then(|n| n.to_str())
        .unwrap_or("out");
    let tmp = dir.join(format!(".{stem}.tmp.{}", std::process::id()));
    fs::write(&tmp, bytes)?;
    match fs::rename(&tmp, path) {
        Ok(()) => Ok(()),
        Err(e) => {
            let _ = fs::remove_file(&tmp);
            Err(e)
        }
    }
}

// ---------------------------------------------------------------------------
// Chain specs
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InterfaceSpec {
    pub name: String,
    pub samples_minus: Vec<f64>,
    pub samples_plus: Vec<f64>,
    #[serde(default)]
    pub bound_low_minus: Option<f64>,
    #[serde(default)]
    pub bound_up_plus: Option<f64>,
}

/// On-disk description of a corner chain.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainSpecDocument {
    pub schema_version: u32,
    pub n: u32,
    #[serde(default)]
    pub lambda: Option<usize>,
    #[serde(default)]
    pub tol: Option<f64>,
    pub interfaces: Vec<InterfaceSpec>,
}

impl ChainSpecDocument {
    pub fn from_chain(chain: &CornerChain, tol: Option<f64>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            n: chain.n(),
            lambda: chain.lambda(),
            tol,
            interfaces: chain
                .interfaces()
                .iter()
                .map(|i| InterfaceSpec {
                    name: i.name.clone(),
                    samples_minus: i.samples_minus.clone(),
                    samples_plus: i.samples_plus.clone(),
                    bound_low_minus: i.bound_low_minus,
                    bound_up_plus: i.bound_up_plus,
                })
                .collect(),
        }
    }

    pub fn to_chain(&self) -> Result<CornerChain, DocError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(DocError::UnsupportedSchema {
                found: self.schema_version,
            });
        }
        let interfaces = self
            .interfaces
            .iter()
            .map(|spec| InterfaceData {
                name: spec.name.clone(),
                samples_minus: spec.samples_minus.clone(),
                samples_plus: spec.samples_plus.clone(),
                bound_low_minus: spec.bound_low_minus,
                bound_up_plus: spec.bound_up_plus,
            })
            .collect();
        Ok(CornerChain::new(self.n, interfaces, self.lambda)?)
    }
}

/// Parses and validates a chain spec document.
pub fn parse_chain_spec(bytes: &[u8]) -> Result<CornerChain, DocError> {
    let doc: ChainSpecDocument = serde_json::from_slice(bytes)?;
    doc.to_chain()
}

/// Parses the document form, keeping its optional tolerance.
pub fn parse_chain_spec_document(bytes: &[u8]) -> Result<ChainSpecDocument, DocError> {
    let doc: ChainSpecDocument = serde_json::from_slice(bytes)?;
    doc.to_chain()?;
    Ok(doc)
}

pub fn render_json<T: Serialize>(doc: &T) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(doc).expect("documents serialize");
    bytes.push(b'\n');
    bytes
}

// ---------------------------------------------------------------------------
// Profile specs
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PieceDoc {
    /// Linear warping; give exactly one of `s_end`/`f_end`, or neither for
    /// a semi-infinite last piece.
    Linear {
        slope: f64,
        #[serde(default)]
        s_end: Option<f64>,
        #[serde(default)]
        f_end: Option<f64>,
    },
    SphericalCap { s_end: f64 },
    SchwarzschildEnd { mass: f64 },
}

/// On-disk description of a piecewise radial profile.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileSpecDocument {
    pub schema_version: u32,
    pub n: u32,
    #[serde(default)]
    pub inner_boundary: Option<f64>,
    #[serde(default)]
    pub tol: Option<f64>,
    pub pieces: Vec<PieceDoc>,
}

impl ProfileSpecDocument {
    pub fn to_profile(&self) -> Result<RadialProfile, DocError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(DocError::UnsupportedSchema {
                found: self.schema_version,
            });
        }
        let mut specs = Vec::with_capacity(self.pieces.len());
        for (idx, piece) in self.pieces.iter().enumerate() {
            specs.push(match *piece {
                PieceDoc::Linear { slope, s_end, f_end } => {
                    let stop = match (s_end, f_end) {
                        (Some(_), Some(_)) => {
                            return Err(DocError::Validation(format!(
                                "piece {}: give s_end or f_end, not both",
                                idx + 1
                            )))
                        }
                        (Some(s), None) => Some(PieceStop::AtS(s)),
                        (None, Some(f)) => Some(PieceStop::AtWarp(f)),
                        (None, None) => None,
                    };
                    PieceSpec::Linear { slope, stop }
                }
                PieceDoc::SphericalCap { s_end } => PieceSpec::SphericalCap { s_end },
                PieceDoc::SchwarzschildEnd { mass } => PieceSpec::SchwarzschildEnd { mass },
            });
        }
        Ok(match self.inner_boundary {
            Some(f0) => RadialProfile::with_inner_boundary(self.n, f0, specs)?,
            None => RadialProfile::new(self.n, specs)?,
        })
    }
}

pub fn parse_profile_spec(bytes: &[u8]) -> Result<(RadialProfile, Option<f64>), DocError> {
    let doc: ProfileSpecDocument = serde_json::from_slice(bytes)?;
    let tol = doc.tol;
    Ok((doc.to_profile()?, tol))
}

// ---------------------------------------------------------------------------
// Certificates
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LedgerDoc {
    pub d: Vec<f64>,
    pub c: Vec<f64>,
    pub lambda_prime: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InterfaceCertDoc {
    pub name: String,
    pub a: f64,
    pub effective_up: f64,
    pub xi: f64,
    pub theta: f64,
    pub min_margin: f64,
    pub sample_count: usize,
}

/// On-disk certificate. Also written for rejected and failed chains so
/// negative results stay auditable; `interfaces` is empty for rejections.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub schema_version: u32,
    pub verdict: String,
    pub reason: Option<String>,
    pub failed_interface: Option<usize>,
    pub miao_bound_level_interfaces: Vec<usize>,
    pub n: u32,
    pub tol: f64,
    pub scale: f64,
    pub square_sum: f64,
    pub lambda: Option<usize>,
    pub ledger: LedgerDoc,
    pub interfaces: Vec<InterfaceCertDoc>,
    pub k_factors: Vec<f64>,
    pub convention: String,
    pub unchecked_hypotheses: Vec<String>,
}

impl CertificateDocument {
    pub fn from_certificate(cert: &LockCertificate) -> Self {
        let (verdict, reason, failed_interface, warnings) = match &cert.verdict {
            Verdict::Certified => ("certified".to_string(), None, None, vec![]),
            Verdict::CertifiedMiaoCase {
                bound_level_interfaces,
            } => (
                "certified-miao-case".to_string(),
                None,
                None,
                bound_level_interfaces.clone(),
            ),
            Verdict::Failed { interface, reason } => (
                "failed".to_string(),
                Some(reason.clone()),
                Some(*interface),
                vec![],
            ),
        };
        Self {
            schema_version: SCHEMA_VERSION,
            verdict,
            reason,
            failed_interface,
            miao_bound_level_interfaces: warnings,
            n: cert.n,
            tol: cert.tol,
            scale: cert.scale,
            square_sum: cert.square_sum,
            lambda: cert.lambda,
            ledger: LedgerDoc {
                d: cert.ledger.d.clone(),
                c: cert.ledger.c.clone(),
                lambda_prime: cert.ledger.lambda_prime,
            },
            interfaces: cert
                .interfaces
                .iter()
                .map(|r| InterfaceCertDoc {
                    name: r.name.clone(),
                    a: r.a,
                    effective_up: r.effective_up,
                    xi: r.xi,
                    theta: r.theta,
                    min_margin: r.min_margin,
                    sample_count: r.sample_count,
                })
                .collect(),
            k_factors: cert.k_factors.clone(),
            convention: CONVENTION_NOTE.to_string(),
            unchecked_hypotheses: UNCHECKED_HYPOTHESES
                .iter()
                .map(|s| s.to_string())
                .collect(),
        }
    }

    /// Document for a chain that failed hypothesis checking or certificate
    /// assembly; the ledger and square sum are still recorded.
    pub fn rejected(
        chain: &CornerChain,
        ledger: &DefectLedger,
        k_factors: Vec<f64>,
        tol: f64,
        verdict: &str,
        reason: String,
    ) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            verdict: verdict.to_string(),
            reason: Some(reason),
            failed_interface: None,
            miao_bound_level_interfaces: vec![],
            n: chain.n(),
            tol,
            scale: chain.scale(),
            square_sum: chain.square_sum(),
            lambda: chain.lambda(),
            ledger: LedgerDoc {
                d: ledger.d.clone(),
                c: ledger.c.clone(),
                lambda_prime: ledger.lambda_prime,
            },
            interfaces: vec![],
            k_factors,
            convention: CONVENTION_NOTE.to_string(),
            unchecked_hypotheses: UNCHECKED_HYPOTHESES
                .iter()
                .map(|s| s.to_string())
                .collect(),
        }
    }

    /// Rebuilds the in-memory certificate for re-verification; `None` for
    /// rejection documents, which carry no per-interface records.
    pub fn to_certificate(&self) -> Option<LockCertificate> {
        let verdict = match self.verdict.as_str() {
            "certified" => Verdict::Certified,
            "certified-miao-case" => Verdict::CertifiedMiaoCase {
                bound_level_interfaces: self.miao_bound_level_interfaces.clone(),
            },
            "failed" => Verdict::Failed {
                interface: self.failed_interface?,
                reason: self.reason.clone().unwrap_or_default(),
            },
            _ => return None,
        };
        Some(LockCertificate {
            n: self.n,
            tol: self.tol,
            scale: self.scale,
            square_sum: self.square_sum,
            lambda: self.lambda,
            ledger: DefectLedger {
                d: self.ledger.d.clone(),
                c: self.ledger.c.clone(),
                lambda_prime: self.ledger.lambda_prime,
            },
            interfaces: self
                .interfaces
                .iter()
                .map(|r| InterfaceRecord {
                    name: r.name.clone(),
                    a: r.a,
                    effective_up: r.effective_up,
                    xi: r.xi,
                    theta: r.theta,
                    min_margin: r.min_margin,
                    sample_count: r.sample_count,
                })
                .collect(),
            k_factors: self.k_factors.clone(),
            verdict,
        })
    }
}

/// Tolerance in effect for a run: CLI flag, then document value, then the
/// default.
pub fn effective_tol(flag: Option<f64>, doc: Option<f64>) -> f64 {
    flag.or(doc).unwrap_or(DEFAULT_TOL)
}
