//! CSV emitters. Columns are fixed, decimals use '.', records end with a
//! line feed and reals carry 12 significant digits.

use super::sweep::SweepRow;
use super::tables::TableRow;
use crate::Result;
use std::io::Write;

/// Formats like C's `%.12g`.
pub fn fmt_sig(v: f64) -> String {
    const DIGITS: i32 = 12;
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, v);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if !(-5..DIGITS).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (DIGITS - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, v)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

pub const SWEEP_COLUMNS: [&str; 7] = [
    "side_lambda",
    "psi_s_deg",
    "r_over_lambda",
    "strategy",
    "N",
    "loss_db",
    "normalized_db",
];

pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = writer(out);
    w.write_record(SWEEP_COLUMNS)?;
    for r in rows {
        w.write_record([
            fmt_sig(r.side_lambda),
            fmt_sig(r.psi_s_deg),
            fmt_sig(r.r_over_lambda),
            r.strategy.to_string(),
            r.n.to_string(),
            fmt_sig(r.loss_db),
            fmt_sig(r.normalized_db),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub const TABLE_COLUMNS: [&str; 7] = [
    "case",
    "frequency_hz",
    "fe_m",
    "side_m",
    "side_lambda",
    "side_m_rounded",
    "side_lambda_rounded",
];

pub fn write_table_csv<W: Write>(rows: &[TableRow], out: W) -> Result<()> {
    let mut w = writer(out);
    w.write_record(TABLE_COLUMNS)?;
    for r in rows {
        w.write_record([
            r.case.to_string(),
            fmt_sig(r.frequency_hz),
            fmt_sig(r.fe_m),
            fmt_sig(r.side_m),
            fmt_sig(r.side_lambda),
            format!("{:.1}", r.side_m),
            format!("{:.1}", r.side_lambda),
        ])?;
    }
    w.flush()?;
    Ok(())
}
