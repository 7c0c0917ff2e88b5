//! Deterministic CSV/JSON rendering of result rows.

use std::io::{self, Write};

use atomphase::sweep::BranchRow;
use atomphase::ResultRow;

/// 17 significant digits in scientific notation; round-trips every f64.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_float).unwrap_or_default()
}

fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

fn write_comments<W: Write>(out: &mut W, comments: &[(String, String)]) -> io::Result<()> {
    for (key, value) in comments {
        writeln!(out, "# {key}: {value}")?;
    }
    Ok(())
}

pub fn write_rows_csv<W: Write>(mut out: W, rows: &[ResultRow], comments: &[(String, String)]) -> io::Result<()> {
    write_comments(&mut out, comments)?;
    let mut w = csv_writer(out);
    w.write_record(ResultRow::COLUMNS)?;
    for r in rows {
        w.write_record([
            fmt_float(r.swept),
            fmt_float(r.delta),
            fmt_float(r.s0),
            fmt_float(r.s),
            fmt_opt(r.phi_rad),
            fmt_opt(r.phi_deg),
            r.branch.to_string(),
            fmt_float(r.p_sc_over_p),
            fmt_float(r.coherent_fraction),
            r.model.to_string(),
        ])?;
    }
    w.flush()
}

pub fn write_branch_csv<W: Write>(mut out: W, rows: &[BranchRow], comments: &[(String, String)]) -> io::Result<()> {
    write_comments(&mut out, comments)?;
    let mut w = csv_writer(out);
    w.write_record(BranchRow::COLUMNS)?;
    for r in rows {
        w.write_record([
            fmt_float(r.omega_n_eta_sq),
            fmt_float(r.s0),
            r.branch.to_string(),
            fmt_opt(r.critical_s0),
        ])?;
    }
    w.flush()
}

pub fn write_json<W: Write, T: serde::Serialize + ?Sized>(mut out: W, value: &T) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)
}
