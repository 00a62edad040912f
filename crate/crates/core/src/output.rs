//! Plot-ready CSV writers.

use std::io::Write;

use crate::error::Result;

/// Two-column CSV with a header row.
pub fn write_curve<W: Write, I: IntoIterator<Item = (f64, f64)>>(w: W, header: (&str, &str), rows: I) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record([header.0, header.1])?;
    for (a, b) in rows {
        out.write_record([a.to_string(), b.to_string()])?;
    }
    out.flush()?;
    Ok(())
}

/// CSV with named columns; each row must match the header length.
pub fn write_table<W: Write>(w: W, header: &[&str], rows: &[Vec<f64>]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(header)?;
    for row in rows {
        out.write_record(row.iter().map(|v| v.to_string()))?;
    }
    out.flush()?;
    Ok(())
}
