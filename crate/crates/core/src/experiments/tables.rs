//! RIS side lengths at which the far-case channel matches the specular
//! (equal-length free-space) channel.

use crate::farfield::required_area;
use crate::pattern::Q0;
use crate::{Error, Result};
use std::fmt;
use std::str::FromStr;

pub const TABLE_FREQUENCIES_HZ: [f64; 6] = [0.8e9, 1.9e9, 2.4e9, 5.8e9, 28.0e9, 60.0e9];
pub const TABLE_FOCAL_LENGTHS_M: [f64; 2] = [100.0, 1000.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableCase {
    /// Broadside incidence and scattering, lossless elements.
    Minimum,
    /// 60° incidence and scattering with 50 % efficiency.
    Typical,
}

impl TableCase {
    /// (u_i, u_s, ε_p)
    pub fn presets(&self) -> (f64, f64, f64) {
        match self {
            TableCase::Minimum => (1.0, 1.0, 1.0),
            TableCase::Typical => (0.5, 0.5, 0.5),
        }
    }
}

impl fmt::Display for TableCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableCase::Minimum => "minimum",
            TableCase::Typical => "typical",
        })
    }
}

impl FromStr for TableCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "minimum" => Ok(TableCase::Minimum),
            "typical" => Ok(TableCase::Typical),
            other => Err(Error::invalid(format!(
                "unknown table case `{other}` (expected minimum or typical)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub case: TableCase,
    pub frequency_hz: f64,
    pub fe_m: f64,
    pub side_m: f64,
    pub side_lambda: f64,
    /// Zero focal length gives a zero-size surface.
    pub degenerate: bool,
}

/// Rows ordered by frequency, then focal length.
pub fn make_tables(
    case: TableCase,
    focal_lengths_m: &[f64],
    frequencies_hz: &[f64],
    speed_of_light: f64,
) -> Result<Vec<TableRow>> {
    let (u_inc, u_sca, eps) = case.presets();
    let mut rows = Vec::with_capacity(focal_lengths_m.len() * frequencies_hz.len());
    for &f in frequencies_hz {
        if !(f > 0.0) {
            return Err(Error::invalid(format!(
                "frequency must be positive, got {f}"
            )));
        }
        let lambda = speed_of_light / f;
        for &fe in focal_lengths_m {
            let size = required_area(fe, lambda, u_inc, u_sca, eps, Q0)?;
            let degenerate = fe == 0.0;
            if degenerate {
                log::warn!("zero effective focal length at {f} Hz gives a zero-size RIS");
            }
            rows.push(TableRow {
                case,
                frequency_hz: f,
                fe_m: fe,
                side_m: size.side,
                side_lambda: size.side_over_lambda,
                degenerate,
            });
        }
    }
    Ok(rows)
}
