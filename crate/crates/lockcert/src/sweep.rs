//! Deterministic feasibility sweeps over the two-jump template: a grid over
//! the four bound parameters of a two-interface chain, one CSV row per cell.

use std::io::Write;

use thiserror::Error;

use crate::chain::{build_certificate, check_hypotheses, ChainClass, CornerChain, InterfaceData};
use crate::docs::fmt_f64;

/// Environment variable overriding the sweep worker count.
pub const WORKERS_ENV: &str = "LOCKCERT_WORKERS";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SweepError {
    #[error("unknown sweep template '{0}' (only 'two-jump' is supported)")]
    UnknownTemplate(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}

/// One linspace axis: `steps` points from `start` to `stop` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridAxis {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl GridAxis {
    pub fn value(&self, k: usize) -> f64 {
        if self.steps == 1 {
            self.start
        } else {
            self.start + (self.stop - self.start) * k as f64 / (self.steps - 1) as f64
        }
    }
}

/// Parameter grid of the two-jump template, in declared order
/// `h1_low, h1_up, h2_low, h2_up`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoJumpGrid {
    pub h1_low: GridAxis,
    pub h1_up: GridAxis,
    pub h2_low: GridAxis,
    pub h2_up: GridAxis,
}

impl TwoJumpGrid {
    pub fn cells(&self) -> usize {
        self.h1_low.steps * self.h1_up.steps * self.h2_low.steps * self.h2_up.steps
    }

    /// Parameters of the cell at flat row-major index `idx`
    /// (`h1_low` outermost, `h2_up` innermost).
    pub fn cell(&self, idx: usize) -> [f64; 4] {
        let k3 = idx % self.h2_up.steps;
        let idx = idx / self.h2_up.steps;
        let k2 = idx % self.h2_low.steps;
        let idx = idx / self.h2_low.steps;
        let k1 = idx % self.h1_up.steps;
        let k0 = idx / self.h1_up.steps;
        [
            self.h1_low.value(k0),
            self.h1_up.value(k1),
            self.h2_low.value(k2),
            self.h2_up.value(k3),
        ]
    }
}

fn parse_axis(text: &str) -> Result<GridAxis, SweepError> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(SweepError::InvalidGrid(format!(
            "axis '{text}' is not of the form start:stop:steps"
        )));
    }
    let start: f64 = parts[0]
        .parse()
        .map_err(|_| SweepError::InvalidGrid(format!("bad start in '{text}'")))?;
    let stop: f64 = parts[1]
        .parse()
        .map_err(|_| SweepError::InvalidGrid(format!("bad stop in '{text}'")))?;
    let steps: usize = parts[2]
        .parse()
        .map_err(|_| SweepError::InvalidGrid(format!("bad step count in '{text}'")))?;
    if steps == 0 {
        return Err(SweepError::InvalidGrid(format!(
            "axis '{text}' has zero steps"
        )));
    }
    if !start.is_finite() || !stop.is_finite() {
        return Err(SweepError::InvalidGrid(format!(
            "axis '{text}' has non-finite endpoints"
        )));
    }
    Ok(GridAxis { start, stop, steps })
}

/// Parses a grid spec of the form
/// `start:stop:steps,start:stop:steps,start:stop:steps,start:stop:steps`
/// over the parameters `h1_low, h1_up, h2_low, h2_up`.
pub fn parse_grid(spec: &str) -> Result<TwoJumpGrid, SweepError> {
    let axes: Vec<&str> = spec.split(',').collect();
    if axes.len() != 4 {
        return Err(SweepError::InvalidGrid(format!(
            "expected 4 comma-separated axes, got {}",
            axes.len()
        )));
    }
    Ok(TwoJumpGrid {
        h1_low: parse_axis(axes[0])?,
        h1_up: parse_axis(axes[1])?,
        h2_low: parse_axis(axes[2])?,
        h2_up: parse_axis(axes[3])?,
    })
}

/// One evaluated grid cell.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub params: [f64; 4],
    pub square_sum: f64,
    pub verdict: &'static str,
    /// `min` over interfaces of the interface margin; absent for rejected
    /// cells.
    pub min_margin: Option<f64>,
}

/// Evaluates one two-jump cell: a fresh n = 3 chain whose single sample per
/// interface sits at the bounds.
pub fn evaluate_cell(params: [f64; 4], tol: f64) -> SweepRow {
    let [h1_low, h1_up, h2_low, h2_up] = params;
    let square_sum =
        (h1_low * h1_low - h1_up * h1_up) + (h2_low * h2_low - h2_up * h2_up);
    let chain = CornerChain::new(
        3,
        vec![
            InterfaceData::new("sigma_1", vec![h1_low], vec![h1_up]),
            InterfaceData::new("sigma_2", vec![h2_low], vec![h2_up]),
        ],
        None,
    );
    let chain = match chain {
        Ok(c) => c,
        Err(_) => {
            return SweepRow {
                params,
                square_sum,
                verdict: "invalid",
                min_margin: None,
            }
        }
    };
    let report = check_hypotheses(&chain, tol);
    if let ChainClass::Rejected(reason) = report.overall {
        return SweepRow {
            params,
            square_sum: report.square_sum,
            verdict: reason.token(),
            min_margin: None,
        };
    }
    match build_certificate(&chain, tol) {
        Ok(cert) => SweepRow {
            params,
            square_sum: cert.square_sum,
            verdict: cert.verdict.token(),
            min_margin: Some(
                cert.interfaces
                    .iter()
                    .map(|r| r.min_margin)
                    .fold(f64::INFINITY, f64::min),
            ),
        },
        Err(_) => SweepRow {
            params,
            square_sum,
            verdict: "failed",
            min_margin: None,
        },
    }
}

/// Worker count for sweeps: the override variable if set, otherwise the
/// available parallelism.
pub fn worker_count() -> usize {
    if let Ok(text) = std::env::var(WORKERS_ENV) {
        if let Ok(n) = text.trim().parse::<usize>() {
            if n >= 1 {
                return n;
            }
        }
    }
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

/// Evaluates every cell of the grid, fanning out over `workers` threads.
/// Row order is row-major over the declared parameter order regardless of
/// the worker count.
pub fn run(grid: &TwoJumpGrid, tol: f64, workers: usize) -> Vec<SweepRow> {
    let cells = grid.cells();
    let mut rows: Vec<Option<SweepRow>> = vec![None; cells];
    let workers = workers.max(1).min(cells.max(1));
    let chunk = cells.div_ceil(workers);
    std::thread::scope(|scope| {
        for (chunk_idx, slot) in rows.chunks_mut(chunk).enumerate() {
            let base = chunk_idx * chunk;
            scope.spawn(move || {
                for (offset, out) in slot.iter_mut().enumerate() {
                    *out = Some(evaluate_cell(grid.cell(base + offset), tol));
                }
            });
        }
    });
    rows.into_iter().map(|r| r.expect("all cells computed")).collect()
}

/// CSV header and rows: comma-separated, LF line endings, floats at 17
/// significant digits, empty margin field for rejected cells.
pub fn write_csv<W: Write>(rows: &[SweepRow], mut out: W) -> std::io::Result<()> {
    out.write_all(b"h1_low,h1_up,h2_low,h2_up,square_sum,verdict,min_margin\n")?;
    for row in rows {
        let margin = row.min_margin.map(fmt_f64).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            fmt_f64(row.params[0]),
            fmt_f64(row.params[1]),
            fmt_f64(row.params[2]),
            fmt_f64(row.params[3]),
            fmt_f64(row.square_sum),
            row.verdict,
            margin
        )?;
    }
    Ok(())
}
