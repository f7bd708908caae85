use std::io::{BufRead, Write};

use super::{CascadeTrace, StepRecord};
use crate::error::{Error, Result};
use crate::num::Real;

pub const TRACE_HEADER: &str = "run,step,activated,coverage";

/// One row per (run, step), step 0 included, LF line endings.
pub fn write_traces<R: Real, W: Write>(traces: &[CascadeTrace<R>], mut w: W) -> Result<()> {
    writeln!(w, "{TRACE_HEADER}")?;
    for t in traces {
        for s in &t.steps {
            writeln!(w, "{},{},{},{}", t.run_index, s.step, s.activated, s.coverage)?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn read_traces<R: Real, B: BufRead>(r: B) -> Result<Vec<CascadeTrace<R>>> {
    let mut traces: Vec<CascadeTrace<R>> = Vec::new();
    let mut lines = r.lines();
    let header = lines.next().transpose()?;
    if header.as_deref().map(str::trim_end) != Some(TRACE_HEADER) {
        return Err(Error::parse(1, format!("expected header '{TRACE_HEADER}'")));
    }
    for (i, line) in lines.enumerate() {
        let line_no = i as u64 + 2;
        let line = line?;
        let text = line.trim_end();
        if text.is_empty() {
            continue;
        }
        let cols: Vec<&str> = text.split(',').collect();
        if cols.len() != 4 {
            return Err(Error::parse(
                line_no,
                format!("expected 4 columns, found {}", cols.len()),
            ));
        }
        let int = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| Error::parse(line_no, format!("bad integer '{s}'")))
        };
        let (run, step, activated) = (int(cols[0])?, int(cols[1])?, int(cols[2])?);
        let coverage = cols[3]
            .parse::<f64>()
            .map_err(|_| Error::parse(line_no, format!("bad coverage '{}'", cols[3])))?;
        let rec = StepRecord {
            step,
            activated,
            coverage: R::lit(coverage),
        };
        match traces.last_mut() {
            Some(t) if t.run_index == run => {
                if step != t.steps.len() {
                    return Err(Error::parse(line_no, "steps out of order"));
                }
                t.steps.push(rec);
            }
            _ => {
                if step != 0 {
                    return Err(Error::parse(line_no, "run does not start at step 0"));
                }
                traces.push(CascadeTrace {
                    run_index: run,
                    seed_count: activated,
                    steps: vec![rec],
                });
            }
        }
    }
    Ok(traces)
}
