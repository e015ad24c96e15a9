//! Command-line front end: `verify`, `profile`, `sweep`, `oracle`.
//!
//! Exit codes, for every subcommand:
//!   0 — certified (or: no oracle flags, sweep/profile written)
//!   1 — rejected, failed, or oracle flags raised (outputs still written)
//!   2 — input error (unreadable, unparseable, or invalid documents)

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::chain::{build_certificate, check_hypotheses, defect_ledger, k_constants, ChainClass};
use crate::docs::{
    atomic_write, effective_tol, fmt_f64, parse_chain_spec_document, parse_profile_spec,
    render_json, CertificateDocument, ChainSpecDocument,
};
use crate::lock::DEFAULT_TOL;
use crate::radial::chain_from_profile;
use crate::{oracle, sweep};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REJECTED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser)]
#[command(
    name = "lockcert",
    version,
    about = "Certify weak dominant-energy jump conditions across corner chains"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a chain spec and write the certificate document.
    Verify {
        /// Chain spec (JSON).
        #[arg(long)]
        chain: PathBuf,
        /// Relative tolerance; overrides the document's value.
        #[arg(long)]
        tol: Option<f64>,
        /// Certificate output path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Build the corner chain of a radial profile spec.
    Profile {
        /// Profile spec (JSON).
        #[arg(long)]
        spec: PathBuf,
        /// Samples per interface in the emitted chain.
        #[arg(long)]
        samples: usize,
        /// Chain spec output path.
        #[arg(long = "emit-chain")]
        emit_chain: PathBuf,
    },
    /// Sweep a parameter grid and write one CSV row per cell.
    Sweep {
        /// Sweep template; only `two-jump` exists.
        #[arg(long)]
        template: String,
        /// Grid spec `start:stop:steps` x4, comma-separated, over
        /// h1_low, h1_up, h2_low, h2_up.
        #[arg(long)]
        grid: String,
        /// CSV output path.
        #[arg(long)]
        csv: PathBuf,
    },
    /// Brute-force angle scan per interface, cross-checking the closed form.
    Oracle {
        /// Chain spec (JSON).
        #[arg(long)]
        chain: PathBuf,
        /// Scan theta over [-range, range].
        #[arg(long)]
        range: f64,
        /// Number of grid points.
        #[arg(long)]
        steps: usize,
    },
}

/// Parses `argv` and runs; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version; real usage errors are input
            // errors under the exit contract.
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match cli.command {
        Command::Verify { chain, tol, out } => run_verify(&chain, tol, &out),
        Command::Profile {
            spec,
            samples,
            emit_chain,
        } => run_profile(&spec, samples, &emit_chain),
        Command::Sweep {
            template,
            grid,
            csv,
        } => run_sweep(&template, &grid, &csv),
        Command::Oracle {
            chain,
            range,
            steps,
        } => run_oracle(&chain, range, steps),
    }
}

fn read_input(path: &Path) -> Result<Vec<u8>, i32> {
    fs::read(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        EXIT_INPUT
    })
}

fn run_verify(chain_path: &Path, tol_flag: Option<f64>, out: &Path) -> i32 {
    let bytes = match read_input(chain_path) {
        Ok(b) => b,
        Err(code) => return code,
    };
    let doc = match parse_chain_spec_document(&bytes) {
        Ok(doc) => doc,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    let chain = doc.to_chain().expect("validated above");
    let tol = effective_tol(tol_flag, doc.tol);
    if !tol.is_finite() || tol <= 0.0 {
        eprintln!("error: tolerance must be a positive real, got {tol}");
        return EXIT_INPUT;
    }

    let report = check_hypotheses(&chain, tol);
    let (cert_doc, code) = match report.overall {
        ChainClass::Rejected(reason) => {
            let ledger = defect_ledger(&chain, tol);
            let k = k_constants(&ledger, chain.n());
            (
                CertificateDocument::rejected(&chain, &ledger, k, tol, "rejected", reason.to_string()),
                EXIT_REJECTED,
            )
        }
        _ => match build_certificate(&chain, tol) {
            Ok(cert) => {
                let code = if cert.verdict.is_certified() {
                    EXIT_OK
                } else {
                    EXIT_REJECTED
                };
                (CertificateDocument::from_certificate(&cert), code)
            }
            Err(e) => {
                let ledger = defect_ledger(&chain, tol);
                let k = k_constants(&ledger, chain.n());
                (
                    CertificateDocument::rejected(&chain, &ledger, k, tol, "failed", e.to_string()),
                    EXIT_REJECTED,
                )
            }
        },
    };
    if let Err(e) = atomic_write(out, &render_json(&cert_doc)) {
        eprintln!("error: cannot write {}: {e}", out.display());
        return EXIT_INPUT;
    }
    println!("{}", cert_doc.verdict);
    code
}

fn run_profile(spec_path: &Path, samples: usize, emit_chain: &Path) -> i32 {
    if samples == 0 {
        eprintln!("error: --samples must be >= 1");
        return EXIT_INPUT;
    }
    let bytes = match read_input(spec_path) {
        Ok(b) => b,
        Err(code) => return code,
    };
    let (profile, tol_doc) = match parse_profile_spec(&bytes) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    let tol = tol_doc.unwrap_or(DEFAULT_TOL);
    let chain = match chain_from_profile(&profile, samples, tol) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("profile rejected: {e}");
            return EXIT_REJECTED;
        }
    };
    let doc = ChainSpecDocument::from_chain(&chain, tol_doc);
    if let Err(e) = atomic_write(emit_chain, &render_json(&doc)) {
        eprintln!("error: cannot write {}: {e}", emit_chain.display());
        return EXIT_INPUT;
    }
    println!("chain with {} interfaces written", chain.len());
    EXIT_OK
}

fn run_sweep(template: &str, grid_spec: &str, csv: &Path) -> i32 {
    if template != "two-jump" {
        eprintln!("error: {}", sweep::SweepError::UnknownTemplate(template.into()));
        return EXIT_INPUT;
    }
    let grid = match sweep::parse_grid(grid_spec) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    let rows = sweep::run(&grid, DEFAULT_TOL, sweep::worker_count());
    let mut buf = Vec::new();
    sweep::write_csv(&rows, &mut buf).expect("in-memory write");
    if let Err(e) = atomic_write(csv, &buf) {
        eprintln!("error: cannot write {}: {e}", csv.display());
        return EXIT_INPUT;
    }
    println!("{} rows written", rows.len());
    EXIT_OK
}

fn run_oracle(chain_path: &Path, range: f64, steps: usize) -> i32 {
    if !range.is_finite() || range <= 0.0 || steps < 2 {
        eprintln!("error: need --range > 0 and --steps >= 2");
        return EXIT_INPUT;
    }
    let bytes = match read_input(chain_path) {
        Ok(b) => b,
        Err(code) => return code,
    };
    let doc = match parse_chain_spec_document(&bytes) {
        Ok(doc) => doc,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    let chain = doc.to_chain().expect("validated above");
    let tol = effective_tol(None, doc.tol);
    let reports = oracle::scan_chain(&chain, range, steps, tol);
    let mut any_flag = false;
    for (idx, r) in reports.iter().enumerate() {
        let closed_desc = match (r.closed, &r.closed_error) {
            (Some((theta, margin)), _) => format!(
                "closed_theta={} closed_margin={}",
                fmt_f64(theta),
                fmt_f64(margin)
            ),
            (None, Some(err)) => format!("closed_form=none ({err})"),
            (None, None) => "closed_form=none".to_string(),
        };
        let mut flags = Vec::new();
        if r.range_too_narrow {
            flags.push("RangeTooNarrow");
        }
        if r.grid_beats_closed {
            flags.push("GridBeatsClosedForm");
        }
        any_flag |= r.flagged();
        println!(
            "interface {} ({}): a={} xi_target={} {} grid_theta={} grid_margin={} lipschitz={} resolution_bound={} flags={}",
            idx + 1,
            r.name,
            fmt_f64(r.a),
            fmt_f64(r.xi_target),
            closed_desc,
            fmt_f64(r.grid.best_theta),
            fmt_f64(r.grid.best_margin),
            fmt_f64(r.lipschitz),
            fmt_f64(r.resolution_bound),
            if flags.is_empty() {
                "-".to_string()
            } else {
                flags.join(",")
            }
        );
    }
    if any_flag {
        EXIT_REJECTED
    } else {
        EXIT_OK
    }
}
