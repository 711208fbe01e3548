//! CSV emission. Headers are mandatory and floats carry 17 significant digits.

use std::io::{Read, Write};

use ddpe_core::{Field64, ProfileTable64};

use crate::error::{HarnessError, Result};

/// 17 significant digits, enough to round-trip any `f64`.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Columns `t,x,u`, one row per node per snapshot.
pub fn write_snapshots<W: Write>(out: W, fields: &[Field64]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t", "x", "u"])?;
    for f in fields {
        for (x, u) in f.grid.nodes().zip(&f.u) {
            w.write_record([fmt_f64(f.t), fmt_f64(x), fmt_f64(*u)])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Columns `t,eta`; an empty `eta` means no interface was found.
pub fn write_track<W: Write>(out: W, track: &[(f64, Option<f64>)]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t", "eta"])?;
    for &(t, eta) in track {
        w.write_record([fmt_f64(t), eta.map(fmt_f64).unwrap_or_default()])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_track<R: Read>(input: R) -> Result<Vec<(f64, Option<f64>)>> {
    let mut r = csv::Reader::from_reader(input);
    let headers = r.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != ["t", "eta"] {
        return Err(HarnessError::Invalid(format!("expected header `t,eta`, got `{}`", headers.iter().collect::<Vec<_>>().join(","))));
    }
    let parse = |s: &str, row: usize| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| HarnessError::Invalid(format!("row {row}: cannot parse `{s}`")))
    };
    let mut out = Vec::new();
    for (k, rec) in r.records().enumerate() {
        let rec = rec?;
        let row = k + 2;
        let t = parse(rec.get(0).unwrap_or(""), row)?;
        let eta = match rec.get(1).map(str::trim) {
            None | Some("") => None,
            Some(s) => Some(parse(s, row)?),
        };
        out.push((t, eta));
    }
    Ok(out)
}

/// Columns `xi,f`.
pub fn write_profile<W: Write>(out: W, table: &ProfileTable64) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["xi", "f"])?;
    for &(xi, f) in &table.samples {
        w.write_record([fmt_f64(xi), fmt_f64(f)])?;
    }
    w.flush()?;
    Ok(())
}
