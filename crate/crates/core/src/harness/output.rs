//! UTF-8 CSV writers. Reals are printed in scientific notation with 17
//! significant digits, which round-trips every `f64`.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::agent::DecisionRecord;
use crate::error::{Error, Result};
use crate::harness::{Axis, RunTrace, SweepRow};
use crate::metrics::MetricSeries;

pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

fn write_with<F>(path: &Path, body: F) -> Result<()>
where
    F: FnOnce(&mut BufWriter<File>) -> std::io::Result<()>,
{
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    body(&mut w)
        .and_then(|_| w.flush())
        .map_err(|e| Error::io(path, e))
}

/// Columns `j,M,rho,cdr`, one row per decision.
pub fn write_metrics_csv(path: &Path, series: &MetricSeries) -> Result<()> {
    write_with(path, |w| {
        writeln!(w, "j,M,rho,cdr")?;
        for j in 0..series.len() {
            writeln!(
                w,
                "{},{},{},{}",
                j + 1,
                format_float(series.m[j]),
                format_float(series.rho[j]),
                format_float(series.cdr[j])
            )?;
        }
        Ok(())
    })
}

/// Columns `axis,value,M_J,rho_J,max_cdr`. `T` values are written as integers.
pub fn write_sweep_csv(path: &Path, rows: &[SweepRow]) -> Result<()> {
    write_with(path, |w| {
        writeln!(w, "axis,value,M_J,rho_J,max_cdr")?;
        for r in rows {
            let value = match r.axis {
                Axis::T => format!("{}", r.value as u64),
                _ => format_float(r.value),
            };
            writeln!(
                w,
                "{},{},{},{},{}",
                r.axis,
                value,
                format_float(r.summary.final_reward),
                format_float(r.summary.final_regret),
                format_float(r.summary.max_cdr)
            )?;
        }
        Ok(())
    })
}

/// Columns `j,chosen,reward`.
pub fn write_trace_decisions_csv(path: &Path, records: &[DecisionRecord]) -> Result<()> {
    write_with(path, |w| {
        writeln!(w, "j,chosen,reward")?;
        for r in records {
            writeln!(w, "{},{},{}", r.j, r.chosen, r.reward.value())?;
        }
        Ok(())
    })
}

/// Columns `j,x,prob`, one row per vertex for each requested decision.
pub fn write_trace_dist_csv(path: &Path, trace: &RunTrace, decisions: &[u32]) -> Result<()> {
    write_with(path, |w| {
        writeln!(w, "j,x,prob")?;
        for (j, dist) in trace.distributions_at(decisions) {
            for (x, p) in dist.iter().enumerate() {
                writeln!(w, "{},{},{}", j, x, format_float(*p))?;
            }
        }
        Ok(())
    })
}
