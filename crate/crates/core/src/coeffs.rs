//! Element control coefficients b_n.

use crate::geometry::{LinkGeometry, Vec3};
use crate::link::{path_phases, Scenario};
use crate::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Focusing,
    Beamforming,
    Uniform,
    Custom,
}

impl Strategy {
    pub fn as_str(&self) -> &'static str {
        match self {
            Strategy::Focusing => "focusing",
            Strategy::Beamforming => "beamforming",
            Strategy::Uniform => "uniform",
            Strategy::Custom => "custom",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "focusing" => Ok(Strategy::Focusing),
            "beamforming" => Ok(Strategy::Beamforming),
            "uniform" => Ok(Strategy::Uniform),
            "custom" => Ok(Strategy::Custom),
            other => Err(Error::invalid(format!("unknown strategy `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSet {
    values: Vec<Complex64>,
    strategy: Strategy,
}

impl CoefficientSet {
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Every coefficient multiplied by e^{jθ}.
    pub fn rotated(&self, theta: f64) -> CoefficientSet {
        let w = Complex64::from_polar(1.0, theta);
        CoefficientSet {
            values: self.values.iter().map(|b| b * w).collect(),
            strategy: self.strategy,
        }
    }
}

/// b_n = e^{−jφ_n}: every element path arrives at the receiver in phase.
pub fn focusing(s: &Scenario) -> Result<CoefficientSet> {
    let geom = s.geometry()?;
    Ok(focusing_from_geometry(&geom, s.wavelength()))
}

pub fn focusing_from_geometry(geom: &LinkGeometry, wavelength: f64) -> CoefficientSet {
    let values = path_phases(geom, wavelength)
        .into_iter()
        .map(|phi| Complex64::from_polar(1.0, -phi))
        .collect();
    CoefficientSet {
        values,
        strategy: Strategy::Focusing,
    }
}

/// Direction-only phasing (focusing at infinity).
///
/// b_n = e^{jk p_n·t̂}·e^{jk p_n·ŝ} where p_n is measured from the RIS
/// reference point, t̂ points from it toward the transmitter and ŝ toward
/// the receiver. In terms of the incident propagation direction r̂_i = −t̂
/// this is e^{−jk p_n·r̂_i}·e^{+jk p_n·r̂_s}, which tends to focusing as
/// both terminals recede.
pub fn beamforming(s: &Scenario) -> Result<CoefficientSet> {
    // validates that both terminals are in front of the surface
    s.geometry()?;
    let origin = s.ris().origin();
    let to_tx = (s.tx().position() - origin).unit()?;
    let to_rx = (s.rx().position() - origin).unit()?;
    let k = 2.0 * PI / s.wavelength();
    let steer: Vec3 = to_tx + to_rx;
    let values = s
        .ris()
        .positions()
        .iter()
        .map(|&p| Complex64::from_polar(1.0, k * (p - origin).dot(steer)))
        .collect();
    Ok(CoefficientSet {
        values,
        strategy: Strategy::Beamforming,
    })
}

/// All b_n = 1.
pub fn uniform(n: usize) -> CoefficientSet {
    CoefficientSet {
        values: vec![Complex64::new(1.0, 0.0); n],
        strategy: Strategy::Uniform,
    }
}

/// User-supplied coefficients for an `expected_len`-element RIS.
/// Magnitudes are not clamped; the link evaluation flags coefficients that
/// exceed the passive limit.
pub fn custom(values: Vec<Complex64>, expected_len: usize) -> Result<CoefficientSet> {
    if values.len() != expected_len {
        return Err(Error::invalid(format!(
            "got {} custom coefficients for {expected_len} elements",
            values.len()
        )));
    }
    if values
        .iter()
        .any(|z| !(z.re.is_finite() && z.im.is_finite()))
    {
        return Err(Error::invalid("custom coefficients must be finite"));
    }
    Ok(CoefficientSet {
        values,
        strategy: Strategy::Custom,
    })
}

/// Reads a two-column `real,imag` CSV, one row per element in row-major
/// order. A header row is optional.
pub fn load_csv(path: &Path, expected_len: usize) -> Result<CoefficientSet> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_path(path)?;
    let mut values = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        if record.len() != 2 {
            return Err(Error::config(
                format!("{}:{}", path.display(), i + 1),
                format!("expected 2 columns (real, imag), found {}", record.len()),
            ));
        }
        let parsed: std::result::Result<Vec<f64>, _> =
            record.iter().map(|f| f.parse::<f64>()).collect();
        match parsed {
            Ok(v) => values.push(Complex64::new(v[0], v[1])),
            Err(_) if i == 0 => continue,
            Err(e) => {
                return Err(Error::config(
                    format!("{}:{}", path.display(), i + 1),
                    e.to_string(),
                ))
            }
        }
    }
    custom(values, expected_len)
}
