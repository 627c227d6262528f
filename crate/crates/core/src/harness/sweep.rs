use std::fs::File;
use std::io::{BufWriter, Write};

use super::{lookup, run, ScenarioKind, SideConfigs};
use crate::error::{Error, Result};
use crate::quadrature::Execution;

pub const CSV_HEADER: &str =
    "scenario,kind,variant,m,mesh,value,abs_error,gap,symdiff_total,deleted_count,seed";

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub m: usize,
    pub seed: u64,
    pub mesh: f64,
    pub value: f64,
    pub abs_error: f64,
    pub gap: Option<f64>,
    pub symdiff_total: f64,
    pub deleted_count: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub scenario: &'static str,
    pub kind: ScenarioKind,
    pub exact: f64,
    pub sides: SideConfigs,
    pub seeds: Vec<u64>,
    /// Sorted by `m`, then by position in `seeds`.
    pub rows: Vec<SweepRow>,
    /// Slope of `log error` against `log mesh`.
    pub fitted_rate: Option<f64>,
}

impl ConvergenceReport {
    /// Worst error (and gap) per `m`, ascending in `m`.
    pub fn worst_by_m(&self) -> Vec<(usize, f64, f64, Option<f64>)> {
        let mut out: Vec<(usize, f64, f64, Option<f64>)> = Vec::new();
        for r in &self.rows {
            match out.last_mut() {
                Some(last) if last.0 == r.m => {
                    last.2 = last.2.max(r.abs_error);
                    last.3 = match (last.3, r.gap) {
                        (Some(a), Some(b)) => Some(a.max(b)),
                        (a, b) => a.or(b),
                    };
                }
                _ => out.push((r.m, r.mesh, r.abs_error, r.gap)),
            }
        }
        out
    }
}

/// Run `scenario` at every `m` of `m_list` and every seed.
///
/// With an empty `seeds` the seed already in `sides` is used. The rate is
/// fitted on the last `max(3, ⌈n/2⌉)` resolutions using the worst error
/// per resolution.
pub fn run_sweep(
    scenario: &str,
    sides: &SideConfigs,
    m_list: &[usize],
    seeds: &[u64],
    boundary_factor: Option<f64>,
    exec: Execution,
) -> Result<ConvergenceReport> {
    let sc = lookup(scenario)?;
    if m_list.len() < 3 || m_list.windows(2).any(|w| w[1] <= w[0]) || m_list[0] == 0 {
        return Err(Error::NonMonotoneMList);
    }
    let seeds = if seeds.is_empty() {
        vec![sides.lhs.seed]
    } else {
        seeds.to_vec()
    };
    let mut rows = Vec::with_capacity(m_list.len() * seeds.len());
    for &m in m_list {
        let bm = boundary_factor.map(|f| (f * m as f64).round().max(1.0) as usize);
        for &seed in &seeds {
            let e = run(sc, &sides.with_seed(seed), m, bm, exec)?;
            rows.push(SweepRow {
                m,
                seed,
                mesh: e.mesh(),
                value: e.value(),
                abs_error: e.abs_error(),
                gap: e.gap(),
                symdiff_total: e.symdiff_total(),
                deleted_count: e.deleted_count(),
            });
        }
    }
    let mut report = ConvergenceReport {
        scenario: sc.name,
        kind: sc.kind(),
        exact: sc.exact,
        sides: *sides,
        seeds,
        rows,
        fitted_rate: None,
    };
    let floor = 1e-13 * (1.0 + sc.exact.abs());
    let worst = report.worst_by_m();
    let keep = 3.max(worst.len().div_ceil(2)).min(worst.len());
    let pts: Vec<(f64, f64)> = worst[worst.len() - keep..]
        .iter()
        .map(|&(_, mesh, err, _)| (mesh, err.max(floor)))
        .collect();
    report.fitted_rate = fit_rate(&pts);
    Ok(report)
}

/// Least-squares slope of `ln err` against `ln mesh`; `None` below three
/// points or for a degenerate fit.
pub fn fit_rate(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 3 {
        return None;
    }
    let xy: Vec<(f64, f64)> = points.iter().map(|&(h, e)| (h.ln(), e.ln())).collect();
    let n = xy.len() as f64;
    let mx = xy.iter().map(|p| p.0).sum::<f64>() / n;
    let my = xy.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = xy.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = xy.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    slope.is_finite().then_some(slope)
}

fn io(e: impl std::fmt::Display) -> Error {
    Error::IoFailure(e.to_string())
}

/// Header plus one line per row, LF-terminated, shortest round-trip floats.
pub fn emit_csv<W: Write>(report: &ConvergenceReport, out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(CSV_HEADER.split(',')).map_err(io)?;
    let variant = report.sides.label(report.kind.is_two_sided());
    for r in &report.rows {
        w.write_record([
            report.scenario.to_string(),
            report.kind.to_string(),
            variant.clone(),
            r.m.to_string(),
            r.mesh.to_string(),
            r.value.to_string(),
            r.abs_error.to_string(),
            r.gap.map(|g| g.to_string()).unwrap_or_default(),
            r.symdiff_total.to_string(),
            r.deleted_count.to_string(),
            r.seed.to_string(),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(io)
}

pub fn emit_csv_file(report: &ConvergenceReport, path: &std::path::Path) -> Result<()> {
    let f = File::create(path).map_err(|e| Error::IoFailure(format!("{}: {e}", path.display())))?;
    let mut w = BufWriter::new(f);
    emit_csv(report, &mut w)?;
    w.flush().map_err(io)
}
